"""Structures specific to the additive group: the divided-power family u_s/v_j,
rationality checks, the degree filtration, generated submodules, the carries
basis, Frobenius-kernel restriction and the coalgebra splitting.

A module is primarily a :class:`GaUFamily` (the matrices of the generators
u_s); the coaction form Delta(m) = sum_j v_j(m) (x) T^j is derived on demand,
with v_j = prod_s u_s^{j_s} / prod_s j_s! over the base-p digits of j.
"""

import itertools
from dataclasses import dataclass, field as dc_field

from . import coalgebras, linalg
from .comodule import CoalgebraSubspace, Comodule, action_matrix, coideal_preimage
from .fpcomb import PrimeField, binom_mod, binom_row_mod, digit_dominates, digits
from .linalg import Matrix, Subspace
from .polyring import MultiPoly, monomial


@dataclass
class GaUFamily:
    """A module for the additive group given by commuting p-nilpotent u_s."""

    field: PrimeField
    dim: int
    u_mats: dict = dc_field(default_factory=dict)  # s -> dim x dim matrix

    def support(self) -> list:
        """Indices s with a nonzero u_s, sorted."""
        return sorted(
            s for s, m in self.u_mats.items() if not linalg.is_zero_matrix(m, self.field)
        )

    def u(self, s: int) -> Matrix:
        return self.u_mats.get(s, linalg.zeros(self.dim, self.dim))

    def is_trivial(self) -> bool:
        return not self.support()

    def __repr__(self):
        return f"GaUFamily(dim {self.dim}, support {self.support()}, F_{self.field.p})"


def validate_family(U: GaUFamily) -> list:
    """Violations of the family invariants (empty list when valid)."""
    out = []
    fld = U.field
    mats = {s: m for s, m in U.u_mats.items()}
    for s, m in mats.items():
        if len(m) != U.dim or any(len(r) != U.dim for r in m):
            out.append(f"u_{s} is not {U.dim}x{U.dim}")
            continue
        if not linalg.is_zero_matrix(linalg.mat_pow(m, fld.p, fld), fld):
            out.append(f"u_{s}^p != 0")
    keys = sorted(mats)
    for a_idx, s in enumerate(keys):
        for t in keys[a_idx + 1 :]:
            if not linalg.mats_commute(mats[s], mats[t], fld):
                out.append(f"u_{s} and u_{t} do not commute")
    return out


def require_valid_family(U: GaUFamily):
    bad = validate_family(U)
    if bad:
        raise ValueError("invalid u-family: " + "; ".join(bad))


def y_r_family(field: PrimeField, R: int) -> GaUFamily:
    """The 2-dimensional module with basis (v, w): u_s(v) = w for s <= R, else 0."""
    if R < 1:
        raise ValueError("R must be >= 1")
    e21 = [[0, 0], [1, 0]]
    return GaUFamily(field, 2, {s: [row[:] for row in e21] for s in range(R + 1)})


# -- the divided-power action on polynomials ----------------------------------


def v_on_poly(j: int, f: MultiPoly) -> MultiPoly:
    """v_j acting on a polynomial in T: sum_{n>=j} a_n C(n,j) T^{n-j}."""
    if not f.variables() <= {"T"}:
        raise ValueError("v_on_poly needs a univariate polynomial in T")
    fld = f.field
    terms = {}
    for mono, a in f.terms.items():
        n = mono[0][1] if mono else 0
        if n < j:
            continue
        c = a * binom_mod(n, j, fld) % fld.p
        if c:
            new = monomial({"T": n - j})
            terms[new] = (terms.get(new, 0) + c) % fld.p
    return MultiPoly(fld, terms)


def derived_v(U: GaUFamily, j: int) -> Matrix:
    """The matrix of v_j = prod_s u_s^{j_s} / prod_s j_s! (base-p digits of j)."""
    fld = U.field
    if j == 0:
        return linalg.identity(U.dim)
    result = linalg.identity(U.dim)
    scalar = 1
    for s, js in enumerate(digits(j, fld.p)):
        if js == 0:
            continue
        us = U.u_mats.get(s)
        if us is None:
            return linalg.zeros(U.dim, U.dim)
        result = linalg.mat_mul(result, linalg.mat_pow(us, js, fld), fld)
        scalar = scalar * fld.inv_factorial(js) % fld.p
    return linalg.mat_scale(result, scalar, fld)


def u_degree_bound(U: GaUFamily) -> int:
    """Largest j with a possibly nonzero v_j: sum over support of (p-1) p^s."""
    return sum((U.field.p - 1) * U.field.p**s for s in U.support())


def family_to_comodule(U: GaUFamily) -> Comodule:
    """Coaction f_{ji} = sum_k (v_k)_{ji} T^k; finite by finite support."""
    require_valid_family(U)
    fld = U.field
    n = U.dim
    supp = U.support()
    coaction = [[{} for _ in range(n)] for _ in range(n)]
    for combo in itertools.product(range(fld.p), repeat=len(supp)):
        k = sum(js * fld.p**s for js, s in zip(combo, supp))
        mat = derived_v(U, k)
        if linalg.is_zero_matrix(mat, fld) and k != 0:
            continue
        mono = monomial({"T": k})
        for j in range(n):
            for i in range(n):
                if mat[j][i]:
                    coaction[j][i][mono] = mat[j][i]
    polys = [[MultiPoly(fld, coaction[j][i]) for i in range(n)] for j in range(n)]
    return Comodule(fld, coalgebras.ga_poly(), n, polys)


def comodule_to_family(M: Comodule) -> GaUFamily:
    """Extract u_s as the coefficient matrices of T^{p^s}.

    Raises when the extracted family violates its invariants or fails the
    consistency identity (which signals a non-comodule input).
    """
    if M.coalgebra.kind != "GaPoly":
        raise ValueError("comodule_to_family needs a comodule over k[Ga]")
    fld = M.field
    if any(not f.variables() <= {"T"} for row in M.coaction for f in row):
        raise ValueError("coaction entries must be polynomials in T")
    maxdeg = max((m[0][1] if m else 0 for row in M.coaction for f in row for m in f.terms), default=0)
    u_mats = {}
    s = 0
    while fld.p**s <= maxdeg:
        mat = action_matrix(M, monomial({"T": fld.p**s}))
        if not linalg.is_zero_matrix(mat, fld):
            u_mats[s] = mat
        s += 1
    fam = GaUFamily(fld, M.dim, u_mats)
    bad = validate_family(fam)
    if bad:
        raise ValueError("extracted family is invalid: " + "; ".join(bad))
    for j in range(maxdeg + 1):
        if not linalg.mat_equal(action_matrix(M, monomial({"T": j})), derived_v(fam, j), fld):
            raise ValueError(f"coefficient of T^{j} disagrees with the divided-power formula")
    if not linalg.mat_equal(action_matrix(M, ()), linalg.identity(M.dim), fld):
        raise ValueError("coefficient of T^0 is not the identity")
    return fam


# -- standard modules ----------------------------------------------------------


def regular_comodule(field: PrimeField, D: int) -> Comodule:
    """k[T]_{<D} with basis 1, T, ..., T^{D-1}: f_{l,n} = C(n, n-l) T^{n-l}."""
    if D < 1:
        raise ValueError("D must be >= 1")
    rows = [binom_row_mod(n, field) for n in range(D)]
    coaction = []
    for l in range(D):
        row = []
        for n in range(D):
            if l > n:
                row.append(MultiPoly.zero(field))
            else:
                row.append(MultiPoly.variable(field, "T", n - l, rows[n][n - l]) if n > l
                           else MultiPoly.constant(field, 1))
        coaction.append(row)
    return Comodule(field, coalgebras.ga_poly(), D, coaction)


def regular_trunc_comodule(field: PrimeField, r: int) -> Comodule:
    """k[T]/T^{p^r} as a comodule over itself (dimension p^r)."""
    M = restrict_frobenius_ga(regular_comodule(field, field.p**r), r)
    return M


# -- filtrations and submodules -------------------------------------------------


def ga_degree_piece(field: PrimeField, d: int) -> CoalgebraSubspace:
    """The span of 1, T, ..., T^{d-1} inside k[Ga]."""
    monos = [monomial({"T": k}) for k in range(d)]
    return CoalgebraSubspace.full_span(field, coalgebras.ga_poly(), monos)


def degree_filtration_ga(M: Comodule, d: int) -> Subspace:
    """M_{<d} = {m : v_j(m) = 0 for j >= d} via the coideal preimage."""
    if M.coalgebra.kind != "GaPoly":
        raise ValueError("degree_filtration_ga needs a comodule over k[Ga]")
    if d < 1:
        raise ValueError("d must be >= 1")
    return coideal_preimage(M, ga_degree_piece(M.field, d))


def generated_submodule(M: Comodule, S) -> Subspace:
    """Row space of {v_j(s) : s in S, j occurring}."""
    if M.coalgebra.kind != "GaPoly":
        raise ValueError("generated_submodule needs a comodule over k[Ga]")
    fld = M.field
    n = M.dim
    vectors = []
    for s in S:
        # g_l = sum_i s_i f_{li}; then v_j(s)[l] = coeff of T^j in g_l
        gs = []
        degs = set()
        for l in range(n):
            acc = MultiPoly.zero(fld)
            for i, c in enumerate(s):
                if c % fld.p:
                    acc = acc + M.coaction[l][i].scale(c)
            by_power = {}
            for mono, coef in acc.terms.items():
                by_power[mono[0][1] if mono else 0] = coef
            gs.append(by_power)
            degs.update(by_power)
        for j in sorted(degs):
            vectors.append([gs[l].get(j, 0) for l in range(n)])
    return Subspace.from_vectors(fld, n, vectors)


def carries_basis(n: int, field: PrimeField) -> list:
    """All m whose base-p digits are dominated by those of n, sorted."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    ds = digits(n, field.p)
    out = []
    for combo in itertools.product(*(range(d + 1) for d in ds)):
        out.append(sum(c * field.p**i for i, c in enumerate(combo)))
    out.sort()
    assert all(digit_dominates(m, n, field) for m in out)
    return out


def restrict_frobenius_ga(M: Comodule, r: int) -> Comodule:
    """Reduce the coaction mod T^{p^r}: the restriction to the r-th kernel."""
    if M.coalgebra.kind != "GaPoly":
        raise ValueError("restrict_frobenius_ga needs a comodule over k[Ga]")
    if r < 1:
        raise ValueError("r must be >= 1")
    bound = M.field.p**r
    coaction = [
        [f.drop_high_exponents(bound) for f in row] for row in M.coaction
    ]
    return Comodule(M.field, coalgebras.ga_trunc(r), M.dim, coaction)


def section_frobenius_ga(M: Comodule) -> Comodule:
    """Lift a k[T]/T^{p^r}-comodule along the splitting k[T]_{<p^r} -> k[T].

    The degree piece and the truncation have identical structure constants
    (see :func:`retract_iso_check`), so the same coaction entries define a
    comodule over k[Ga]; this inverts :func:`restrict_frobenius_ga` on
    comodules whose entries have degree < p^r.
    """
    if M.coalgebra.kind != "GaTrunc":
        raise ValueError("section_frobenius_ga needs a comodule over a truncation of k[Ga]")
    return Comodule(M.field, coalgebras.ga_poly(), M.dim, [list(row) for row in M.coaction])


def retract_iso_check(r: int, field: PrimeField, correspondence=None) -> dict:
    """Compare the coproduct structure constants of k[T]_{<p^r} and k[T]/T^{p^r}.

    ``correspondence`` maps exponents of the sub-coalgebra to exponents of the
    quotient (default: identity).  Returns {"ok": bool, "mismatches": [...]}.
    """
    q = field.p**r
    sigma = correspondence if correspondence is not None else (lambda k: k)
    image = [sigma(k) for k in range(q)]
    mismatches = []
    if sorted(image) != list(range(q)):
        mismatches.append("correspondence is not a bijection on exponents")
        return {"ok": False, "mismatches": mismatches}
    # counit: T^0 is the unique grouplike with value 1 at the identity
    if sigma(0) != 0:
        mismatches.append("counit: T^0 does not correspond to T^0")
    for n in range(q):
        row = binom_row_mod(n, field)
        if any(c and (n - j >= q or j >= q) for j, c in enumerate(row)):
            mismatches.append(f"Delta(T^{n}) leaves the degree piece")
            continue
        sub = {(n - j, j): c for j, c in enumerate(row) if c}
        mapped = {(sigma(a), sigma(b)): c for (a, b), c in sub.items()}
        rowq = binom_row_mod(sigma(n), field)
        target = {
            (sigma(n) - j, j): c
            for j, c in enumerate(rowq)
            if c and sigma(n) - j < q and j < q
        }
        if mapped != target:
            mismatches.append(f"structure constants differ at T^{n}")
    return {"ok": not mismatches, "mismatches": mismatches}


def ga_one_param_theta(U: GaUFamily, lambdas) -> Matrix:
    """Theta = sum_s lambda_s^{p^s} u_s; p-nilpotent since the u_s commute."""
    require_valid_family(U)
    fld = U.field
    out = linalg.zeros(U.dim, U.dim)
    for s, lam in enumerate(lambdas):
        lam %= fld.p
        if lam == 0:
            continue
        c = pow(lam, fld.p**s, fld.p)
        out = linalg.mat_add(out, linalg.mat_scale(U.u(s), c, fld), fld)
    return out
