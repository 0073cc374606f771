"""Finite-dimensional right comodules over a named coordinate coalgebra.

A comodule of dimension n stores an n x n coaction matrix of polynomials,
column i giving Delta(e_i) = sum_j e_j (x) f_{ji}.  On top of that sit the
comodule-law validator, dual-functional actions, coideal preimages, radical
quotients, the local-algebra freeness test, and Jordan types of p-nilpotent
operators.
"""

from dataclasses import dataclass, field as dc_field

from . import coalgebras, linalg
from .coalgebras import CoalgebraId
from .fpcomb import PrimeField
from .linalg import Matrix, Subspace
from .polyring import Monomial, MultiPoly, monomial_sort_key, tensor


@dataclass
class Comodule:
    field: PrimeField
    coalgebra: CoalgebraId
    dim: int
    coaction: list  # coaction[j][i] = f_{ji}, a MultiPoly in the coalgebra

    def entry(self, j: int, i: int) -> MultiPoly:
        return self.coaction[j][i]

    def column(self, i: int) -> list:
        return [self.coaction[j][i] for j in range(self.dim)]

    def occurring_monomials(self) -> list:
        """All coalgebra monomials appearing in the coaction, sorted."""
        seen = set()
        for row in self.coaction:
            for f in row:
                seen.update(f.terms)
        return sorted(seen, key=monomial_sort_key)

    def max_entry_degree(self) -> int:
        return max(
            (f.total_degree() for row in self.coaction for f in row if not f.is_zero()),
            default=0,
        )

    def __repr__(self):
        return f"Comodule(dim {self.dim} over {self.coalgebra}, F_{self.field.p})"


def trivial_comodule(field: PrimeField, coalg: CoalgebraId, dim: int) -> Comodule:
    one = MultiPoly.one(field)
    zero = MultiPoly.zero(field)
    coaction = [[one if i == j else zero for i in range(dim)] for j in range(dim)]
    return Comodule(field, coalg, dim, coaction)


@dataclass
class ValidationReport:
    ok: bool
    violations: list = dc_field(default_factory=list)

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(
            f"{v['law']} violation at basis e_{v['index'] + 1}" for v in self.violations
        )


def validate(M: Comodule) -> ValidationReport:
    """Check membership, the counit law and coassociativity entry by entry."""
    violations = []
    n = M.dim
    coalg = M.coalgebra
    fld = M.field
    if len(M.coaction) != n or any(len(row) != n for row in M.coaction):
        return ValidationReport(False, [{"law": "shape", "index": -1, "detail": "coaction matrix is not dim x dim"}])
    for j in range(n):
        for i in range(n):
            if not coalgebras.is_member(coalg, fld, M.coaction[j][i]):
                violations.append(
                    {
                        "law": "membership",
                        "index": i,
                        "detail": f"entry ({j},{i}) not in {coalg}",
                    }
                )
    if violations:
        return ValidationReport(False, violations)

    point = coalgebras.identity_point(coalg)
    for i in range(n):
        for j in range(n):
            want = 1 if i == j else 0
            if M.coaction[j][i].eval_at(point) != want:
                violations.append(
                    {
                        "law": "counit",
                        "index": i,
                        "detail": f"entry ({j},{i}) evaluates to "
                        f"{M.coaction[j][i].eval_at(point)} at the identity, want {want}",
                    }
                )
    if violations:
        return ValidationReport(False, violations)

    # coassociativity: sum_j f_{lj} (x) f_{ji} = Delta_C(f_{li}) for all l, i
    primed_cache = {}
    for i in range(n):
        for l in range(n):
            lhs = MultiPoly.zero(fld)
            for j in range(n):
                f_lj = M.coaction[l][j]
                f_ji = M.coaction[j][i]
                if f_lj.is_zero() or f_ji.is_zero():
                    continue
                key = (j, i)
                pr = primed_cache.get(key)
                if pr is None:
                    pr = tensor(MultiPoly.one(fld), f_ji).poly
                    primed_cache[key] = pr
                lhs = lhs + f_lj * pr
            rhs = coalgebras.coproduct(coalg, fld, M.coaction[l][i]).poly
            if lhs != rhs:
                violations.append(
                    {
                        "law": "coassociativity",
                        "index": i,
                        "detail": f"component ({l},{i}) disagrees",
                    }
                )
    return ValidationReport(not violations, violations)


def require_valid(M: Comodule):
    rep = validate(M)
    if not rep.ok:
        raise ValueError(f"comodule law violation: {rep.summary()}")


# -- dual-functional actions -------------------------------------------------


def action_matrix(M: Comodule, mono: Monomial) -> Matrix:
    """Matrix of the dual-basis functional of one monomial: A[j][i] = coeff."""
    return [[M.coaction[j][i].coeff(mono) for i in range(M.dim)] for j in range(M.dim)]


def dual_action(M: Comodule, functional: dict) -> Matrix:
    """Matrix of m -> (1 (x) phi) Delta_M(m) for a finitely supported phi.

    ``functional`` maps coalgebra monomials to scalars; monomials outside the
    stated coalgebra are rejected.
    """
    fld = M.field
    p = fld.p
    for mono, _ in functional.items():
        if not coalgebras.is_member(M.coalgebra, fld, MultiPoly.from_monomial(fld, mono)):
            raise ValueError(f"functional supported outside {M.coalgebra}")
    out = linalg.zeros(M.dim, M.dim)
    for mono, c in functional.items():
        c %= p
        if c == 0:
            continue
        A = action_matrix(M, mono)
        for j in range(M.dim):
            for i in range(M.dim):
                if A[j][i]:
                    out[j][i] = (out[j][i] + c * A[j][i]) % p
    return out


def action_matrices(M: Comodule) -> dict:
    """{occurring monomial: action matrix}; all other duals act as zero."""
    return {mono: action_matrix(M, mono) for mono in M.occurring_monomials()}


# -- subspaces of a coalgebra piece ------------------------------------------


@dataclass
class CoalgebraSubspace:
    """A subspace of a finite monomial span inside a coalgebra."""

    field: PrimeField
    coalgebra: CoalgebraId
    monomials: tuple  # ordered monomial basis of the ambient piece
    space: Subspace  # subspace of F_p^{len(monomials)}

    @classmethod
    def span_of(cls, field, coalg, polys, ambient_monomials=None) -> "CoalgebraSubspace":
        for f in polys:
            if not coalgebras.is_member(coalg, field, f):
                raise ValueError(f"{f} is not in {coalg}")
        if ambient_monomials is None:
            seen = set()
            for f in polys:
                seen.update(f.terms)
            ambient_monomials = sorted(seen, key=monomial_sort_key)
        ambient_monomials = tuple(ambient_monomials)
        index = {m: k for k, m in enumerate(ambient_monomials)}
        vectors = []
        for f in polys:
            v = [0] * len(ambient_monomials)
            for m, c in f.terms.items():
                if m not in index:
                    raise ValueError("polynomial leaves the stated ambient piece")
                v[index[m]] = c
            vectors.append(v)
        return cls(
            field,
            coalg,
            ambient_monomials,
            Subspace.from_vectors(field, len(ambient_monomials), vectors),
        )

    @classmethod
    def full_span(cls, field, coalg, monomials) -> "CoalgebraSubspace":
        monomials = tuple(monomials)
        return cls(field, coalg, monomials, Subspace.full(field, len(monomials)))

    def extended_to(self, monomials) -> "CoalgebraSubspace":
        """Re-embed into a larger ambient monomial list (zero on new coords)."""
        monomials = tuple(monomials)
        index = {m: k for k, m in enumerate(monomials)}
        for m in self.monomials:
            if m not in index:
                raise ValueError("ambient does not contain the current monomials")
        vectors = []
        for row in self.space.rows:
            v = [0] * len(monomials)
            for m, c in zip(self.monomials, row):
                if c:
                    v[index[m]] = c
            vectors.append(v)
        return CoalgebraSubspace(
            self.field,
            self.coalgebra,
            monomials,
            Subspace.from_vectors(self.field, len(monomials), vectors),
        )

    def basis_polys(self) -> list:
        out = []
        for row in self.space.rows:
            terms = {m: c for m, c in zip(self.monomials, row) if c}
            out.append(MultiPoly(self.field, terms))
        return out


def coideal_preimage(M: Comodule, B: CoalgebraSubspace) -> Subspace:
    """Basis of {m in M : Delta_M(m) in M (x) B}.

    The ambient monomial basis is the union of B's ambient and everything
    occurring in the coaction.  When B is a right coideal the result is
    coaction-stable (see :func:`is_coaction_stable`).
    """
    if B.coalgebra != M.coalgebra or B.field != M.field:
        raise ValueError("subspace and module live over different coalgebras")
    fld = M.field
    n = M.dim
    ambient = set(M.occurring_monomials())
    ambient.update(B.monomials)
    ambient = sorted(ambient, key=monomial_sort_key)
    index = {m: k for k, m in enumerate(ambient)}
    Bext = B.extended_to(ambient).space
    constraints = []
    for j in range(n):
        # columnwise residues of [vec(f_{j0}) ... vec(f_{j,n-1})] modulo B
        cols = []
        for i in range(n):
            v = [0] * len(ambient)
            for m, c in M.coaction[j][i].terms.items():
                v[index[m]] = c
            cols.append(Bext.reduce(v))
        for k in range(len(ambient)):
            row = [cols[i][k] for i in range(n)]
            if any(row):
                constraints.append(row)
    return linalg.kernel_of(constraints, n, fld)


def is_coaction_stable(M: Comodule, S: Subspace) -> bool:
    """S is stable under every dual-basis action of an occurring monomial."""
    for A in action_matrices(M).values():
        for row in S.rows:
            img = linalg.mat_vec(A, list(row), M.field)
            if not S.contains(img):
                return False
    return True


def restrict_to_subspace(M: Comodule, S: Subspace) -> Comodule:
    """The subcomodule on a coaction-stable subspace, in S's RREF basis."""
    if S.ambient != M.dim:
        raise ValueError("subspace ambient does not match module dimension")
    fld = M.field
    k = S.dim
    # g_{ba} determined at the pivot coordinates; remaining rows must agree
    images = []  # images[a][l] = sum_i S[a][i] f_{li}
    for a in range(k):
        col = []
        for l in range(M.dim):
            acc = MultiPoly.zero(fld)
            for i, c in enumerate(S.rows[a]):
                if c:
                    acc = acc + M.coaction[l][i].scale(c)
            col.append(acc)
        images.append(col)
    new_coaction = [[images[a][S.pivots[b]] for a in range(k)] for b in range(k)]
    # consistency: the images must reconstruct through the basis rows
    for a in range(k):
        for l in range(M.dim):
            acc = MultiPoly.zero(fld)
            for b in range(k):
                c = S.rows[b][l]
                if c:
                    acc = acc + new_coaction[b][a].scale(c)
            if acc != images[a][l]:
                raise ValueError("subspace is not coaction-stable")
    return Comodule(fld, M.coalgebra, k, new_coaction)


def quotient_by_subspace(M: Comodule, S: Subspace) -> Comodule:
    """The quotient comodule M/S for a coaction-stable S."""
    if S.ambient != M.dim:
        raise ValueError("subspace ambient does not match module dimension")
    fld = M.field
    pivset = set(S.pivots)
    keep = [i for i in range(M.dim) if i not in pivset]
    k = len(keep)
    # projection of e_l onto the quotient coordinates
    proj = linalg.zeros(M.dim, k)
    for idx, i in enumerate(keep):
        proj[i][idx] = 1
    for row, piv in zip(S.rows, S.pivots):
        for idx, i in enumerate(keep):
            proj[piv][idx] = (-row[i]) % fld.p
    new_coaction = [[MultiPoly.zero(fld) for _ in range(k)] for _ in range(k)]
    for a_idx, a in enumerate(keep):
        for l in range(M.dim):
            f = M.coaction[l][a]
            if f.is_zero():
                continue
            for b_idx in range(k):
                c = proj[l][b_idx]
                if c:
                    new_coaction[b_idx][a_idx] = new_coaction[b_idx][a_idx] + f.scale(c)
    Q = Comodule(fld, M.coalgebra, k, new_coaction)
    # well-definedness: Delta must kill S in the quotient coordinates
    for row in S.rows:
        for b_idx in range(k):
            acc = MultiPoly.zero(fld)
            for i, c in enumerate(row):
                if c:
                    for l in range(M.dim):
                        cc = proj[l][b_idx]
                        if cc:
                            acc = acc + M.coaction[l][i].scale(c * cc)
            if not acc.is_zero():
                raise ValueError("subspace is not coaction-stable")
    return Q


def direct_sum(modules) -> Comodule:
    modules = list(modules)
    if not modules:
        raise ValueError("empty direct sum")
    fld = modules[0].field
    coalg = modules[0].coalgebra
    if any(m.field != fld or m.coalgebra != coalg for m in modules):
        raise ValueError("direct sum needs a common field and coalgebra")
    n = sum(m.dim for m in modules)
    zero = MultiPoly.zero(fld)
    coaction = [[zero for _ in range(n)] for _ in range(n)]
    off = 0
    for m in modules:
        for j in range(m.dim):
            for i in range(m.dim):
                coaction[off + j][off + i] = m.coaction[j][i]
        off += m.dim
    return Comodule(fld, coalg, n, coaction)


def conjugate(M: Comodule, g: Matrix) -> Comodule:
    """Base change by an invertible g: new coaction g F g^{-1} entrywise."""
    fld = M.field
    ginv = linalg.mat_inverse(g, fld)
    n = M.dim
    zero = MultiPoly.zero(fld)
    # (g F)_{ji} then (g F g^{-1})
    gf = [[zero for _ in range(n)] for _ in range(n)]
    for j in range(n):
        for i in range(n):
            acc = MultiPoly.zero(fld)
            for t in range(n):
                c = g[j][t]
                if c:
                    acc = acc + M.coaction[t][i].scale(c)
            gf[j][i] = acc
    out = [[zero for _ in range(n)] for _ in range(n)]
    for j in range(n):
        for i in range(n):
            acc = MultiPoly.zero(fld)
            for t in range(n):
                c = ginv[t][i]
                if c:
                    acc = acc + gf[j][t].scale(c)
            out[j][i] = acc
    return Comodule(fld, M.coalgebra, n, out)


# -- radical quotients and local freeness -------------------------------------


def radical_quotient_dim(M: Comodule) -> int:
    """dim(M / rad(A).M) over the local dual algebra A of a truncated id.

    rad(A) is spanned by the dual-basis functionals of non-identity monomials;
    only monomials occurring in the coaction can act nonzero.
    """
    if not M.coalgebra.is_truncated():
        raise ValueError("radical quotient needs a truncated (finite) coalgebra")
    vectors = []
    for mono, A in action_matrices(M).items():
        if mono == ():
            continue
        for i in range(M.dim):
            col = [A[j][i] for j in range(M.dim)]
            if any(col):
                vectors.append(col)
    rad_dim = Subspace.from_vectors(M.field, M.dim, vectors).dim
    return M.dim - rad_dim


@dataclass
class FreenessVerdict:
    free: bool
    dim_module: int
    dim_dual_algebra: int
    top_dim: int

    def witness(self) -> dict:
        return {
            "dim_module": self.dim_module,
            "dim_dual_algebra": self.dim_dual_algebra,
            "top_dim": self.top_dim,
        }


def local_freeness(M: Comodule) -> FreenessVerdict:
    """Freeness over the local dual algebra: dim M = dim A * dim(M / rad M)."""
    dim_a = coalgebras.dual_algebra_dim(M.coalgebra, M.field)
    top = radical_quotient_dim(M)
    return FreenessVerdict(M.dim == dim_a * top, M.dim, dim_a, top)


# -- Jordan types --------------------------------------------------------------


@dataclass(frozen=True)
class JordanType:
    """Partition of dim recording Jordan block sizes of a p-nilpotent operator."""

    parts: tuple

    def __post_init__(self):
        if list(self.parts) != sorted(self.parts, reverse=True) or any(
            x <= 0 for x in self.parts
        ):
            raise ValueError("parts must be weakly decreasing positive integers")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def is_free(self, field: PrimeField) -> bool:
        """Free over k[t]/t^p: all blocks have size p."""
        return bool(self.parts) and all(x == field.p for x in self.parts)

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.parts) + ")"


def jordan_type(theta: Matrix, field: PrimeField) -> JordanType:
    """Jordan type from ranks of powers; requires theta^p = 0."""
    n = len(theta)
    p = field.p
    power = linalg.identity(n)
    ranks = [n]
    for _ in range(p):
        power = linalg.mat_mul(power, theta, field)
        ranks.append(linalg.mat_rank(power, n, field))
    if ranks[p] != 0:
        raise ValueError("operator is not p-nilpotent")
    parts = []
    for k in range(1, p + 1):
        above = ranks[k + 1] if k + 1 <= p else 0
        count = (ranks[k - 1] - ranks[k]) - (ranks[k] - above)
        parts.extend([k] * count)
    parts.sort(reverse=True)
    return JordanType(tuple(parts))
