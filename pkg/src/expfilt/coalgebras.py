"""Named coordinate coalgebras and their coproduct/counit rules.

Supported ids:

* ``GaPoly``        k[T],  Delta(T) = T(x)1 + 1(x)T
* ``GaTrunc(r)``    k[T]/T^{p^r}
* ``UNPoly(N)``     k[x_{i,j} : 1 <= i < j <= N], upper unitriangular coproduct
* ``UNTrunc(N,r)``  the same mod (x_{i,j}^{p^r})
* ``MatPoly(N)``    k[x_{i,j} : 1 <= i,j <= N], matrix-multiplication coproduct

Each id determines a generator alphabet, an identity point (the counit is
evaluation there), and a truncation bound.
"""

from dataclasses import dataclass
from functools import lru_cache

from .fpcomb import PrimeField
from .polyring import MultiPoly, TensorPoly, prime_var

GA_KINDS = ("GaPoly", "GaTrunc")
UN_KINDS = ("UNPoly", "UNTrunc")


@dataclass(frozen=True)
class CoalgebraId:
    kind: str
    N: int = 0
    r: int = 0

    def __post_init__(self):
        if self.kind not in ("GaPoly", "GaTrunc", "UNPoly", "UNTrunc", "MatPoly"):
            raise ValueError(f"unknown coalgebra kind {self.kind!r}")
        if self.kind in ("UNPoly", "UNTrunc", "MatPoly") and self.N < 2:
            raise ValueError("N must be >= 2")
        if self.kind in ("GaTrunc", "UNTrunc") and self.r < 1:
            raise ValueError("r must be >= 1")

    def is_truncated(self) -> bool:
        return self.kind in ("GaTrunc", "UNTrunc")

    def __str__(self):
        if self.kind == "GaPoly":
            return "k[Ga]"
        if self.kind == "GaTrunc":
            return f"k[Ga_({self.r})]"
        if self.kind == "UNPoly":
            return f"k[U_{self.N}]"
        if self.kind == "UNTrunc":
            return f"k[U_{self.N},({self.r})]"
        return f"k[M_{self.N}]"


def ga_poly() -> CoalgebraId:
    return CoalgebraId("GaPoly")


def ga_trunc(r: int) -> CoalgebraId:
    return CoalgebraId("GaTrunc", r=r)


def un_poly(N: int) -> CoalgebraId:
    return CoalgebraId("UNPoly", N=N)


def un_trunc(N: int, r: int) -> CoalgebraId:
    return CoalgebraId("UNTrunc", N=N, r=r)


def mat_poly(N: int) -> CoalgebraId:
    return CoalgebraId("MatPoly", N=N)


def generator_vars(coalg: CoalgebraId) -> tuple:
    if coalg.kind in GA_KINDS:
        return ("T",)
    if coalg.kind in UN_KINDS:
        return tuple(
            f"x{i}_{j}" for i in range(1, coalg.N + 1) for j in range(i + 1, coalg.N + 1)
        )
    return tuple(
        f"x{i}_{j}" for i in range(1, coalg.N + 1) for j in range(1, coalg.N + 1)
    )


def identity_point(coalg: CoalgebraId) -> dict:
    """The point of the group at which the counit evaluates."""
    if coalg.kind == "MatPoly":
        return {
            f"x{i}_{j}": 1 if i == j else 0
            for i in range(1, coalg.N + 1)
            for j in range(1, coalg.N + 1)
        }
    return {v: 0 for v in generator_vars(coalg)}


def truncation_bound(coalg: CoalgebraId, field: PrimeField):
    """Exponent bound p^r for truncated ids, None otherwise."""
    if coalg.is_truncated():
        return field.p**coalg.r
    return None


def group_dimension(coalg: CoalgebraId) -> int:
    """Dimension of the underlying unipotent group (Ga: 1, U_N: N(N-1)/2)."""
    if coalg.kind in GA_KINDS:
        return 1
    if coalg.kind in UN_KINDS:
        return coalg.N * (coalg.N - 1) // 2
    raise ValueError(f"{coalg} has no unipotent group dimension")


def dual_algebra_dim(coalg: CoalgebraId, field: PrimeField) -> int:
    """Dimension p^{r.m} of the dual algebra of a truncated id."""
    if not coalg.is_truncated():
        raise ValueError(f"{coalg} is not finite dimensional")
    return field.p ** (coalg.r * group_dimension(coalg))


def reduce_poly(coalg: CoalgebraId, field: PrimeField, f: MultiPoly) -> MultiPoly:
    """Reduce modulo the truncation ideal (drop monomials with exponent >= p^r)."""
    bound = truncation_bound(coalg, field)
    if bound is None:
        return f
    return f.drop_high_exponents(bound)


def is_member(coalg: CoalgebraId, field: PrimeField, f: MultiPoly) -> bool:
    """f lies in the stated coalgebra: known variables, truncation respected."""
    gens = set(generator_vars(coalg))
    if not f.variables() <= gens:
        return False
    bound = truncation_bound(coalg, field)
    if bound is not None:
        for m in f.terms:
            if any(e >= bound for _, e in m):
                return False
    return True


@lru_cache(maxsize=None)
def _coproduct_assignment(coalg: CoalgebraId, field: PrimeField) -> dict:
    """Generator -> its coproduct in the joint unprimed/primed alphabet."""
    out = {}
    if coalg.kind in GA_KINDS:
        out["T"] = MultiPoly.variable(field, "T") + MultiPoly.variable(field, "T'")
        return out
    if coalg.kind in UN_KINDS:
        for i in range(1, coalg.N + 1):
            for j in range(i + 1, coalg.N + 1):
                v = f"x{i}_{j}"
                acc = MultiPoly.variable(field, v) + MultiPoly.variable(field, prime_var(v))
                for t in range(i + 1, j):
                    acc = acc + MultiPoly.variable(field, f"x{i}_{t}") * MultiPoly.variable(
                        field, prime_var(f"x{t}_{j}")
                    )
                out[v] = acc
        return out
    for i in range(1, coalg.N + 1):
        for j in range(1, coalg.N + 1):
            acc = MultiPoly.zero(field)
            for t in range(1, coalg.N + 1):
                acc = acc + MultiPoly.variable(field, f"x{i}_{t}") * MultiPoly.variable(
                    field, prime_var(f"x{t}_{j}")
                )
            out[f"x{i}_{j}"] = acc
    return out


def coproduct(coalg: CoalgebraId, field: PrimeField, f: MultiPoly) -> TensorPoly:
    """Delta(f) in C (x) C, computed by the multiplicative extension."""
    gens = set(generator_vars(coalg))
    foreign = f.variables() - gens
    if foreign:
        raise ValueError(f"foreign variable(s) {sorted(foreign)} for {coalg}")
    assignment = _coproduct_assignment(coalg, field)
    img = f.substitute(assignment)
    bound = truncation_bound(coalg, field)
    if bound is not None:
        img = img.drop_high_exponents(bound)
    return TensorPoly(img)


def counit(coalg: CoalgebraId, field: PrimeField, f: MultiPoly) -> int:
    return f.eval_at(identity_point(coalg))


def convolve(coalg: CoalgebraId, field: PrimeField, phi: dict, psi: dict, domain) -> dict:
    """Convolution (phi * psi)(c) = sum phi(c_(1)) psi(c_(2)) on given monomials.

    Functionals are {monomial: scalar} maps; the result is supported on
    ``domain``.
    """
    p = field.p
    out = {}
    for mono in domain:
        total = 0
        delta = coproduct(coalg, field, MultiPoly.from_monomial(field, mono))
        for (left, right), c in delta.factor_pairs():
            a = phi.get(left, 0)
            if a == 0:
                continue
            b = psi.get(right, 0)
            if b == 0:
                continue
            total = (total + c * a * b) % p
        if total:
            out[mono] = total
    return out
