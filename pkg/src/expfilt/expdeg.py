"""Truncated exponentials of p-nilpotent matrices and the exponential-degree
filtration.

For a p-nilpotent B the truncated exponential is
exp_B(T) = 1 + TB + (TB)^2/2 + ... + (TB)^{p-1}/(p-1)!, a one-parameter
subgroup of GL_N.  Pulling a function f back along it gives a polynomial in T;
quantifying over all B (symbolically, for N <= p, where the p-nilpotent
strictly upper triangular matrices form the full linear space) yields the
filtration piece (k[G])_{[d]} = {f : every pullback has T-degree <= d} and the
module filtration M_{[d]} = {m : Delta_M(m) lands in M (x) (k[G])_{[d]}}.

Membership in M_{[d]} is decided through the coefficientwise criterion: all
T^j-coefficients, j > d, of (1 (x) pullback) Delta_M(m) vanish identically in
the symbolic entries.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import coalgebras, linalg
from .comodule import CoalgebraSubspace, Comodule
from .fpcomb import PrimeField
from .ga import GaUFamily, derived_v
from .linalg import Matrix, Subspace
from .polyring import MultiPoly
from .un import UNContext, degree_piece

# An exponential pullback is a MultiPoly in T with coefficients in the
# b-variables (one joint alphabet).
ExpPullback = MultiPoly


@dataclass
class NilpotentMatrix:
    """An N x N matrix over F_p with B^p = 0 (checked at construction)."""

    field: PrimeField
    N: int
    entries: Matrix

    def __post_init__(self):
        if len(self.entries) != self.N or any(len(r) != self.N for r in self.entries):
            raise ValueError("entries must be N x N")
        self.entries = linalg.mat_mod(self.entries, self.field)
        if not linalg.is_zero_matrix(
            linalg.mat_pow(self.entries, self.field.p, self.field), self.field
        ):
            raise ValueError("matrix is not p-nilpotent")


@dataclass(frozen=True)
class SymbolicNilpotentDomain:
    """The generic strictly upper triangular matrix with entries b{i}_{j}.

    Needs N <= p so that B^p = 0 holds identically and the p-nilpotent cone
    is the whole linear space.
    """

    field: PrimeField
    N: int

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("N must be >= 2")
        if self.N > self.field.p:
            raise ValueError(
                f"symbolic domain needs N <= p, got N={self.N}, p={self.field.p}"
            )

    def variables(self) -> tuple:
        return tuple(
            f"b{i}_{j}" for i in range(1, self.N + 1) for j in range(i + 1, self.N + 1)
        )


def truncated_exp(B: NilpotentMatrix) -> list:
    """exp_B(T) as an N x N matrix of polynomials in T."""
    fld = B.field
    N = B.N
    out = [[MultiPoly.zero(fld) for _ in range(N)] for _ in range(N)]
    power = linalg.identity(N)
    for k in range(fld.p):
        c = fld.inv_factorial(k)
        for i in range(N):
            for j in range(N):
                v = power[i][j] * c % fld.p
                if v:
                    term = (
                        MultiPoly.variable(fld, "T", k, v) if k else MultiPoly.constant(fld, v)
                    )
                    out[i][j] = out[i][j] + term
        power = linalg.mat_mul(power, B.entries, fld)
        if linalg.is_zero_matrix(power, fld):
            break
    return out


@lru_cache(maxsize=None)
def _symbolic_exp(field: PrimeField, N: int) -> tuple:
    """exp of the generic strictly upper triangular matrix, entries in b and T."""
    zero = MultiPoly.zero(field)
    B = [[zero for _ in range(N)] for _ in range(N)]
    for i in range(N):
        for j in range(i + 1, N):
            B[i][j] = MultiPoly.variable(field, f"b{i + 1}_{j + 1}")
    out = [[zero for _ in range(N)] for _ in range(N)]
    power = [[MultiPoly.one(field) if i == j else zero for j in range(N)] for i in range(N)]
    t = MultiPoly.variable(field, "T")
    tpow = MultiPoly.one(field)
    for k in range(field.p):
        c = field.inv_factorial(k)
        for i in range(N):
            for j in range(N):
                if not power[i][j].is_zero():
                    out[i][j] = out[i][j] + power[i][j].scale(c) * tpow
        if k + 1 >= N:
            break  # B^N = 0 for strictly upper triangular B
        new = [[zero for _ in range(N)] for _ in range(N)]
        for i in range(N):
            for j in range(N):
                acc = zero
                for s in range(N):
                    if not power[i][s].is_zero() and not B[s][j].is_zero():
                        acc = acc + power[i][s] * B[s][j]
                new[i][j] = acc
        power = new
        tpow = tpow * t
    return tuple(tuple(row) for row in out)


def _exp_assignment(exp_matrix, field: PrimeField, N: int) -> dict:
    return {
        f"x{i + 1}_{j + 1}": exp_matrix[i][j] for i in range(N) for j in range(N)
    }


def exp_pullback(f: MultiPoly, B) -> ExpPullback:
    """Substitute x_{i,j} -> (exp_B(T))_{i,j}.

    ``B`` is a :class:`NilpotentMatrix` (numeric pullback, a polynomial in T)
    or a :class:`SymbolicNilpotentDomain` (coefficients polynomial in the
    b-variables).  Functions on the full matrix space use the convention that
    absent entries of a triangular exponential are 1 on the diagonal and 0
    below it.
    """
    for v in f.variables():
        if not v.startswith("x"):
            raise ValueError(f"exp_pullback expects matrix coordinates, got {v!r}")
    if isinstance(B, SymbolicNilpotentDomain):
        exp_matrix = _symbolic_exp(B.field, B.N)
        assignment = _exp_assignment(exp_matrix, B.field, B.N)
    elif isinstance(B, NilpotentMatrix):
        exp_matrix = truncated_exp(B)
        assignment = _exp_assignment(exp_matrix, B.field, B.N)
    else:
        raise TypeError("B must be a NilpotentMatrix or a SymbolicNilpotentDomain")
    return f.substitute(assignment)


def t_degree(pullback: ExpPullback) -> int:
    return pullback.degree_in("T")


def coalg_exp_degree(f: MultiPoly, domain: SymbolicNilpotentDomain) -> int:
    """Minimal d with f in (k[G])_{[d]}: the T-degree of the symbolic pullback."""
    return t_degree(exp_pullback(f, domain))


def enumerate_nilpotent_upper(field: PrimeField, N: int) -> list:
    """All strictly upper triangular F_p points with B^p = 0 (exhaustive).

    Desk-scale sampling pool; guarded to N <= 4 and p in {2, 3}.
    """
    if N > 4 or field.p > 3:
        raise ValueError("exhaustive enumeration is guarded to N <= 4, p in {2,3}")
    slots = [(i, j) for i in range(N) for j in range(i + 1, N)]
    out = []
    for values in itertools.product(range(field.p), repeat=len(slots)):
        mat = linalg.zeros(N, N)
        for (i, j), v in zip(slots, values):
            mat[i][j] = v
        if linalg.is_zero_matrix(linalg.mat_pow(mat, field.p, field), field):
            out.append(NilpotentMatrix(field, N, mat))
    return out


def coalg_exp_degree_sampled(f: MultiPoly, field: PrimeField, N: int) -> dict:
    """Max pullback T-degree over the enumerated F_p points with B^p = 0.

    For N > p this is a lower bound only (membership needs all k-bar points);
    the verdict is labeled accordingly.
    """
    best = 0
    for B in enumerate_nilpotent_upper(field, N):
        best = max(best, t_degree(exp_pullback(f, B)))
    return {"degree_lower_bound": best, "label": "sampled: necessary conditions only"}


def unipotent_p_points(field: PrimeField, N: int) -> list:
    """The F_p points g of U_N with g^p = 1, as coordinate dictionaries.

    Sampled consequence of the degree-0 piece: a function with constant
    pullbacks along every enumerated exponential takes its identity value on
    each of these points (the exponentials of the enumerated B's sweep them
    out).  Guarded like :func:`enumerate_nilpotent_upper`.
    """
    if N > 4 or field.p > 3:
        raise ValueError("exhaustive enumeration is guarded to N <= 4, p in {2,3}")
    slots = [(i, j) for i in range(N) for j in range(i + 1, N)]
    out = []
    for values in itertools.product(range(field.p), repeat=len(slots)):
        g = linalg.identity(N)
        for (i, j), v in zip(slots, values):
            g[i][j] = v
        if linalg.mat_equal(linalg.mat_pow(g, field.p, field), linalg.identity(N), field):
            out.append(
                {
                    f"x{i + 1}_{j + 1}": g[i][j]
                    for i in range(N)
                    for j in range(i + 1, N)
                }
            )
    return out


def coalg_filtration_piece(ctx: UNContext, d: int, Dmax: int) -> CoalgebraSubspace:
    """Basis of {f of degree <= Dmax : coalg_exp_degree(f) <= d}.

    Kernel of the linear map sending f's coefficients to the
    (b-monomial, T^j)-coefficients for all j > d.
    """
    if d < 0 or Dmax < 0:
        raise ValueError("d and Dmax must be nonnegative")
    domain = SymbolicNilpotentDomain(ctx.field, ctx.N)
    basis = degree_piece(ctx, Dmax + 1)
    constraints = {}  # (j, b-monomial) -> row over basis coordinates
    for col, mono in enumerate(basis):
        pb = exp_pullback(MultiPoly.from_monomial(ctx.field, mono), domain)
        for pmono, c in pb.terms.items():
            j = 0
            rest = []
            for v, e in pmono:
                if v == "T":
                    j = e
                else:
                    rest.append((v, e))
            if j <= d:
                continue
            key = (j, tuple(rest))
            row = constraints.setdefault(key, [0] * len(basis))
            row[col] = (row[col] + c) % ctx.field.p
    kernel = linalg.kernel_of(list(constraints.values()), len(basis), ctx.field)
    return CoalgebraSubspace(ctx.field, ctx.coalgebra, tuple(basis), kernel)


def _entry_pullbacks(M: Comodule) -> list:
    if M.coalgebra.kind != "UNPoly":
        raise ValueError("exponential filtration needs a comodule over k[U_N]")
    domain = SymbolicNilpotentDomain(M.field, M.coalgebra.N)
    cache = {}

    def pull(f):
        if f not in cache:
            cache[f] = exp_pullback(f, domain)
        return cache[f]

    return [[pull(f) for f in row] for row in M.coaction]


def module_exp_filtration(M: Comodule, d: int) -> Subspace:
    """M_{[d]}: vectors whose coaction pullbacks have no T^j term, j > d."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    pulled = _entry_pullbacks(M)
    n = M.dim
    fld = M.field
    constraints = {}  # (module row, T power, b-monomial) -> row over c
    for j in range(n):
        for i in range(n):
            for pmono, c in pulled[j][i].terms.items():
                k = 0
                rest = []
                for v, e in pmono:
                    if v == "T":
                        k = e
                    else:
                        rest.append((v, e))
                if k <= d:
                    continue
                key = (j, k, tuple(rest))
                row = constraints.setdefault(key, [0] * n)
                row[i] = (row[i] + c) % fld.p
    return linalg.kernel_of(list(constraints.values()), n, fld)


def exponential_degree(M) -> int:
    """Minimal d with M_{[d]} = M.

    Equals the largest T-degree among the pullbacks of the coaction entries
    (for the additive group: the largest T-exponent in the coaction).
    Accepts a Comodule over k[Ga] or k[U_N] (N <= p), or a GaUFamily.
    """
    if isinstance(M, GaUFamily):
        return ga_exponential_degree(M)
    if M.coalgebra.kind == "GaPoly":
        best = 0
        for row in M.coaction:
            for f in row:
                best = max(best, f.degree_in("T"))
        return best
    pulled = _entry_pullbacks(M)
    return max((t_degree(f) for row in pulled for f in row), default=0)


def exponential_height(degree: int, field: PrimeField) -> int:
    """Minimal r >= 0 with degree <= p^r (a base-p scale for the raw degree)."""
    r = 0
    while field.p**r < degree:
        r += 1
    return r


def ga_exp_filtration(U: GaUFamily, d: int) -> Subspace:
    """Intersection of ker v_j over j > d; equals the degree filtration at d+1."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    fld = U.field
    supp = U.support()
    rows = []
    for combo in itertools.product(range(fld.p), repeat=len(supp)):
        j = sum(js * fld.p**s for js, s in zip(combo, supp))
        if j <= d:
            continue
        mat = derived_v(U, j)
        rows.extend(r for r in mat if any(r))
    return linalg.kernel_of(rows, U.dim, fld)


def ga_exponential_degree(U: GaUFamily) -> int:
    """Largest j with v_j nonzero (0 for the trivial family)."""
    fld = U.field
    supp = U.support()
    best = 0
    for combo in itertools.product(range(fld.p), repeat=len(supp)):
        j = sum(js * fld.p**s for js, s in zip(combo, supp))
        if j > best and not linalg.is_zero_matrix(derived_v(U, j), fld):
            best = j
    return best


def frobenius_twist(M: Comodule) -> Comodule:
    """Replace every coaction entry by its p-th power (coefficients fixed)."""
    coaction = [[f.frobenius() for f in row] for row in M.coaction]
    if M.coalgebra.is_truncated():
        coaction = [
            [coalgebras.reduce_poly(M.coalgebra, M.field, f) for f in row]
            for row in coaction
        ]
    return Comodule(M.field, M.coalgebra, M.dim, coaction)


def relate_inclusions_check(ctx: UNContext, d: int, e: int, Dmax: int) -> dict:
    """Verify the two filtration comparisons on the degree <= Dmax span.

    Degree piece into exponential piece: every monomial of degree < d has
    pullback degree <= (p-1)(d-1).  Exponential piece at e-1 into the degree
    piece: needs e(N-1) < d, which is a precondition, not a counterexample.
    Returns {"ok": bool, "counterexample": poly text or None}.
    """
    p = ctx.field.p
    if ctx.N > p:
        raise ValueError("relate_inclusions_check needs N <= p")
    if d < 1 or e < 1:
        raise ValueError("d and e must be >= 1")
    if e * (ctx.N - 1) >= d:
        raise ValueError(f"precondition e(N-1) < d violated: {e}*({ctx.N}-1) >= {d}")
    domain = SymbolicNilpotentDomain(ctx.field, ctx.N)
    bound = (p - 1) * (d - 1)
    for mono in degree_piece(ctx, min(d, Dmax + 1)):
        f = MultiPoly.from_monomial(ctx.field, mono)
        if coalg_exp_degree(f, domain) > bound:
            return {"ok": False, "counterexample": str(f), "side": "degree-into-exp"}
    piece = coalg_filtration_piece(ctx, e - 1, Dmax)
    for f in piece.basis_polys():
        if f.total_degree() >= d:
            return {"ok": False, "counterexample": str(f), "side": "exp-into-degree"}
    return {"ok": True, "counterexample": None}


def mock_trivial_check(M) -> bool:
    """M = M_{[0]}: every one-parameter pullback acts trivially."""
    if isinstance(M, GaUFamily):
        return M.is_trivial()
    if M.coalgebra.kind == "GaPoly":
        return exponential_degree(M) == 0
    return module_exp_filtration(M, 0).is_full()
