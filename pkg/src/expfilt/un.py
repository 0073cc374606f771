"""The coordinate coalgebra of the upper unitriangular group U_N.

Coproduct on the x_{i,j}, degree pieces, dimension numerics for the Frobenius
kernels, the comodule degree filtration, restriction maps, and the standard
comodule constructors (natural and symmetric-square, both directly and by
restriction from the N x N matrix coalgebra).
"""

import itertools
import math
from dataclasses import dataclass

from . import coalgebras
from .coalgebras import CoalgebraId, coproduct
from .comodule import CoalgebraSubspace, Comodule, coideal_preimage
from .fpcomb import PrimeField
from .linalg import Subspace
from .polyring import MultiPoly, TensorPoly, monomial, prime_var


@dataclass(frozen=True)
class UNContext:
    field: PrimeField
    N: int

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("N must be >= 2")

    @property
    def m(self) -> int:
        """dim U_N = N(N-1)/2."""
        return self.N * (self.N - 1) // 2

    @property
    def coalgebra(self) -> CoalgebraId:
        return coalgebras.un_poly(self.N)

    def variables(self) -> tuple:
        return coalgebras.generator_vars(self.coalgebra)


def x_coproduct(ctx: UNContext, i: int, j: int) -> TensorPoly:
    """Delta(x_{i,j}) = x_{i,j}(x)1 + sum_{i<t<j} x_{i,t}(x)x_{t,j} + 1(x)x_{i,j}."""
    if not 1 <= i < j <= ctx.N:
        raise ValueError(f"need 1 <= i < j <= N, got ({i},{j})")
    return coproduct(ctx.coalgebra, ctx.field, MultiPoly.variable(ctx.field, f"x{i}_{j}"))


def coproduct_poly(ctx: UNContext, f: MultiPoly) -> TensorPoly:
    """Multiplicative extension of the generator coproduct."""
    return coproduct(ctx.coalgebra, ctx.field, f)


def _bounded_monomials(nvars: int, maxdeg: int):
    """All exponent tuples of length nvars with total degree <= maxdeg."""
    if nvars == 0:
        yield ()
        return
    for e in range(maxdeg + 1):
        for rest in _bounded_monomials(nvars - 1, maxdeg - e):
            yield (e,) + rest


def degree_piece(ctx: UNContext, d: int) -> list:
    """Monomial basis of the span of functions of degree < d, sorted by degree."""
    if d < 1:
        raise ValueError("d must be >= 1")
    names = ctx.variables()
    out = []
    for exps in _bounded_monomials(len(names), d - 1):
        out.append(monomial({v: e for v, e in zip(names, exps)}))
    out.sort(key=lambda m: (sum(e for _, e in m), m))
    return out


def degree_piece_count(ctx: UNContext, d: int) -> int:
    """C(m + d - 1, m), the number of monomials of degree < d in m variables."""
    return math.comb(ctx.m + d - 1, ctx.m)


def degree_piece_subspace(ctx: UNContext, d: int) -> CoalgebraSubspace:
    return CoalgebraSubspace.full_span(ctx.field, ctx.coalgebra, degree_piece(ctx, d))


DESK_GUARD = 10**6


@dataclass
class FrobeniusKernelDims:
    """Dimension numerics comparing k[U_N]_{<p^r} with the r-th kernel algebra."""

    N: int
    p: int
    r: int
    m: int
    dim_kernel: int  # enumerated number of truncated monomials
    dim_kernel_formula: int  # p^{rm}
    dim_piece_strict: int  # enumerated dim of the degree < p^r piece
    dim_piece_formula_claimed: int  # C(m + p^r, p^r), the quoted closed form
    formula_discrepancy: bool
    injective_check: bool
    surjective_check: bool
    claimed_formula_p_free: bool  # claimed value not divisible by p (when m < p^r)
    claimed_formula_not_pth_power: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _is_perfect_power(value: int, e: int) -> bool:
    if value < 1:
        return False
    root = round(value ** (1.0 / e))
    for cand in (root - 1, root, root + 1):
        if cand >= 1 and cand**e == value:
            return True
    return False


def frobenius_kernel_dims(ctx: UNContext, r: int) -> FrobeniusKernelDims:
    """Enumerated dimension counts for k[U_{N(r)}] and the degree pieces.

    dim k[U_{N(r)}] = p^{rm} by enumeration; the strict piece k[U]_{<p^r}
    embeds monomial-by-monomial, and the degree < p^r.m piece surjects.  The
    enumerated strict-piece dimension C(m+p^r-1, m) is reported next to the
    quoted closed form C(m+p^r, p^r) with a discrepancy flag.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    p = ctx.field.p
    m = ctx.m
    q = p**r
    if p ** (r * m) > DESK_GUARD:
        raise ValueError(f"p^(r*m) = {p ** (r * m)} exceeds the desk-scale guard")

    # enumerate monomials with all exponents < p^r
    dim_kernel = 0
    surjective = True
    for exps in itertools.product(range(q), repeat=m):
        dim_kernel += 1
        if sum(exps) >= q * m:
            surjective = False

    piece = degree_piece(ctx, q)
    injective = all(all(e < q for _, e in mono) for mono in piece)
    # distinctness of the images is monomial identity; verified by set size
    injective = injective and len(set(piece)) == len(piece)

    claimed = math.comb(m + q, q)
    enumerated_piece = len(piece)
    return FrobeniusKernelDims(
        N=ctx.N,
        p=p,
        r=r,
        m=m,
        dim_kernel=dim_kernel,
        dim_kernel_formula=p ** (r * m),
        dim_piece_strict=enumerated_piece,
        dim_piece_formula_claimed=claimed,
        formula_discrepancy=claimed != enumerated_piece,
        injective_check=injective,
        surjective_check=surjective,
        claimed_formula_p_free=(claimed % p != 0) if m < q else True,
        claimed_formula_not_pth_power=not _is_perfect_power(claimed, p),
    )


def degree_filtration_un(M: Comodule, d: int) -> Subspace:
    """M_{<d} = {m : Delta_M(m) in M (x) k[U]_{<d}}."""
    if M.coalgebra.kind != "UNPoly":
        raise ValueError("degree_filtration_un needs a comodule over k[U_N]")
    ctx = UNContext(M.field, M.coalgebra.N)
    return coideal_preimage(M, degree_piece_subspace(ctx, d))


def degree_piece_comodule(ctx: UNContext, d: int) -> Comodule:
    """k[U_N]_{<d} as a comodule over k[U_N] on its monomial basis.

    Both coproduct legs of a degree < d function have degree < d, so the
    expansion of the left leg in the monomial basis always succeeds.
    """
    fld = ctx.field
    basis = degree_piece(ctx, d)
    idx = {m: k for k, m in enumerate(basis)}
    n = len(basis)
    coaction = [[MultiPoly.zero(fld) for _ in range(n)] for _ in range(n)]
    for col, mono in enumerate(basis):
        delta = coproduct(ctx.coalgebra, fld, MultiPoly.from_monomial(fld, mono))
        for (left, right), c in delta.factor_pairs():
            if left not in idx:
                raise ValueError("coproduct leaves the degree piece")
            row = idx[left]
            coaction[row][col] = coaction[row][col] + MultiPoly.from_monomial(fld, right, c)
    return Comodule(fld, ctx.coalgebra, n, coaction)


# -- standard comodules ---------------------------------------------------------


def natural_rep(ctx: UNContext) -> Comodule:
    """Column vectors: Delta(e_i) = e_i(x)1 + sum_{j<i} e_j(x)x_{j,i}."""
    fld = ctx.field
    N = ctx.N
    coaction = []
    for j in range(1, N + 1):
        row = []
        for i in range(1, N + 1):
            if j == i:
                row.append(MultiPoly.one(fld))
            elif j < i:
                row.append(MultiPoly.variable(fld, f"x{j}_{i}"))
            else:
                row.append(MultiPoly.zero(fld))
        coaction.append(row)
    return Comodule(fld, ctx.coalgebra, N, coaction)


def _sym2_pairs(N: int) -> list:
    return [(a, b) for a in range(1, N + 1) for b in range(a, N + 1)]


def sym_square_rep(ctx: UNContext) -> Comodule:
    """Symmetric square of the natural comodule on the monomial basis e_a e_b."""
    nat = natural_rep(ctx)
    return _sym_square_of(nat)


def _sym_square_of(M: Comodule) -> Comodule:
    fld = M.field
    N = M.dim
    pairs = _sym2_pairs(N)
    idx = {ab: k for k, ab in enumerate(pairs)}
    n2 = len(pairs)
    coaction = [[MultiPoly.zero(fld) for _ in range(n2)] for _ in range(n2)]
    for (i, j) in pairs:
        col = idx[(i, j)]
        for a in range(1, N + 1):
            fai = M.coaction[a - 1][i - 1]
            if fai.is_zero():
                continue
            for b in range(a, N + 1):
                fbj = M.coaction[b - 1][j - 1]
                term = fai * fbj
                if a != b:
                    term = term + M.coaction[b - 1][i - 1] * M.coaction[a - 1][j - 1]
                if not term.is_zero():
                    row = idx[(a, b)]
                    coaction[row][col] = coaction[row][col] + term
    return Comodule(fld, M.coalgebra, n2, coaction)


# -- restrictions ----------------------------------------------------------------


def restrict_along(M: Comodule, substitution: dict, target: CoalgebraId,
                   check_hopf: bool = True) -> Comodule:
    """Push the coaction through a coalgebra map given on generators.

    ``substitution`` sends each generator of M's coalgebra to a polynomial in
    the target coalgebra.  With ``check_hopf`` the compatibility
    Delta_target(sigma(v)) = (sigma (x) sigma)(Delta_source(v)) is verified on
    every generator.
    """
    fld = M.field
    src = M.coalgebra
    gens = coalgebras.generator_vars(src)
    missing = set(gens) - set(substitution)
    if missing:
        raise ValueError(f"substitution misses generator(s) {sorted(missing)}")
    for v, img in substitution.items():
        if not coalgebras.is_member(target, fld, img):
            raise ValueError(f"image of {v} is not in {target}")
    if check_hopf:
        joint = dict(substitution)
        for v, img in substitution.items():
            joint[prime_var(v)] = img.rename_variables(
                {w: prime_var(w) for w in img.variables()}
            )
        for v in gens:
            lhs = coalgebras.coproduct(src, fld, MultiPoly.variable(fld, v)).poly
            lhs = lhs.substitute(joint)
            rhs = coalgebras.coproduct(target, fld, substitution[v]).poly
            if lhs != rhs:
                raise ValueError(f"substitution is not a coalgebra map at {v}")
    coaction = [
        [f.substitute(substitution) for f in row] for row in M.coaction
    ]
    if target.is_truncated():
        coaction = [
            [coalgebras.reduce_poly(target, fld, f) for f in row] for row in coaction
        ]
    return Comodule(fld, target, M.dim, coaction)


def restrict_frobenius_un(M: Comodule, r: int) -> Comodule:
    """Reduce the coaction mod (x_{i,j}^{p^r}): restriction to the r-th kernel."""
    if M.coalgebra.kind != "UNPoly":
        raise ValueError("restrict_frobenius_un needs a comodule over k[U_N]")
    if r < 1:
        raise ValueError("r must be >= 1")
    bound = M.field.p**r
    target = coalgebras.un_trunc(M.coalgebra.N, r)
    coaction = [[f.drop_high_exponents(bound) for f in row] for row in M.coaction]
    return Comodule(M.field, target, M.dim, coaction)


def ga_as_u2(M: Comodule) -> Comodule:
    """View a k[Ga]-comodule over k[U_2] through T -> x1_2."""
    if M.coalgebra.kind != "GaPoly":
        raise ValueError("ga_as_u2 needs a comodule over k[Ga]")
    subs = {"T": MultiPoly.variable(M.field, "x1_2")}
    return restrict_along(M, subs, coalgebras.un_poly(2))


def mat_restriction_map(field: PrimeField, N: int) -> dict:
    """x_{i,j} -> x_{i,j} (i<j), 1 (i=j), 0 (i>j): restriction to U_N."""
    subs = {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            v = f"x{i}_{j}"
            if i < j:
                subs[v] = MultiPoly.variable(field, v)
            elif i == j:
                subs[v] = MultiPoly.one(field)
            else:
                subs[v] = MultiPoly.zero(field)
    return subs


def restrict_mat_to_un(M: Comodule) -> Comodule:
    """Restrict a k[M_N]-comodule (polynomial GL_N representation) to U_N."""
    if M.coalgebra.kind != "MatPoly":
        raise ValueError("restrict_mat_to_un needs a comodule over k[M_N]")
    N = M.coalgebra.N
    return restrict_along(
        M, mat_restriction_map(M.field, N), coalgebras.un_poly(N)
    )


def natural_rep_gl(field: PrimeField, N: int) -> Comodule:
    """The natural N-dimensional comodule over k[M_N]: f_{ji} = x_{j,i}."""
    coaction = [
        [MultiPoly.variable(field, f"x{j}_{i}") for i in range(1, N + 1)]
        for j in range(1, N + 1)
    ]
    return Comodule(field, coalgebras.mat_poly(N), N, coaction)


def sym_square_rep_gl(field: PrimeField, N: int) -> Comodule:
    """Symmetric square of the natural k[M_N]-comodule (degree-2 polynomial rep)."""
    return _sym_square_of(natural_rep_gl(field, N))
