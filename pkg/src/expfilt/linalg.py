"""Dense matrices and echelon-form subspaces over F_p.

Matrices are lists of row lists of ints, treated as immutable.  Subspaces are
kept in reduced row echelon form so set-level equality is matrix equality.
"""

from . import _kernels
from .fpcomb import PrimeField

Matrix = list


def zeros(n: int, m: int) -> Matrix:
    return [[0] * m for _ in range(n)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def unit_matrix(n: int, i: int, j: int, c: int = 1) -> Matrix:
    """c times the elementary matrix E_{ij} (row i, column j), 0-indexed."""
    out = zeros(n, n)
    out[i][j] = c
    return out


def mat_copy(a: Matrix) -> Matrix:
    return [list(r) for r in a]


def mat_mod(a: Matrix, field: PrimeField) -> Matrix:
    p = field.p
    return [[v % p for v in r] for r in a]


def mat_add(a: Matrix, b: Matrix, field: PrimeField) -> Matrix:
    p = field.p
    return [[(x + y) % p for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix, field: PrimeField) -> Matrix:
    p = field.p
    return [[(x - y) % p for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c: int, field: PrimeField) -> Matrix:
    p = field.p
    c %= p
    return [[v * c % p for v in r] for r in a]


def mat_mul(a: Matrix, b: Matrix, field: PrimeField) -> Matrix:
    return _kernels.matmul(a, b, field.p)


def mat_pow(a: Matrix, e: int, field: PrimeField) -> Matrix:
    n = len(a)
    result = identity(n)
    for _ in range(e):
        result = mat_mul(result, a, field)
    return result


def mat_vec(a: Matrix, v: list, field: PrimeField) -> list:
    p = field.p
    return [sum(c * x for c, x in zip(row, v)) % p for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def is_zero_matrix(a: Matrix, field: PrimeField) -> bool:
    p = field.p
    return all(v % p == 0 for r in a for v in r)


def mat_equal(a: Matrix, b: Matrix, field: PrimeField) -> bool:
    p = field.p
    if len(a) != len(b):
        return False
    return all(
        len(ra) == len(rb) and all(x % p == y % p for x, y in zip(ra, rb))
        for ra, rb in zip(a, b)
    )


def mat_rank(a: Matrix, ncols: int, field: PrimeField) -> int:
    return _kernels.rank(a, ncols, field.p)


def commutator(a: Matrix, b: Matrix, field: PrimeField) -> Matrix:
    return mat_sub(mat_mul(a, b, field), mat_mul(b, a, field), field)


def mats_commute(a: Matrix, b: Matrix, field: PrimeField) -> bool:
    return is_zero_matrix(commutator(a, b, field), field)


def is_invertible(a: Matrix, field: PrimeField) -> bool:
    n = len(a)
    return n == 0 or mat_rank(a, n, field) == n


def mat_inverse(a: Matrix, field: PrimeField) -> Matrix:
    """Inverse of a square matrix; raises on singular input."""
    n = len(a)
    aug = [list(r) + identity(n)[i] for i, r in enumerate(a)]
    red, pivots = _kernels.rref(aug, 2 * n, field.p)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [r[n:] for r in red[:n]]


class Subspace:
    """A subspace of F_p^ambient held as RREF basis rows."""

    __slots__ = ("field", "ambient", "rows", "pivots")

    def __init__(self, field: PrimeField, ambient: int, rows, pivots):
        self.field = field
        self.ambient = ambient
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)

    @classmethod
    def from_vectors(cls, field: PrimeField, ambient: int, vectors) -> "Subspace":
        rows, pivots = _kernels.rref(list(vectors), ambient, field.p)
        return cls(field, ambient, rows, pivots)

    @classmethod
    def zero(cls, field: PrimeField, ambient: int) -> "Subspace":
        return cls(field, ambient, [], [])

    @classmethod
    def full(cls, field: PrimeField, ambient: int) -> "Subspace":
        return cls(field, ambient, identity(ambient), range(ambient))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def is_full(self) -> bool:
        return self.dim == self.ambient

    def reduce(self, vec) -> list:
        """Residue of vec after eliminating against the basis rows."""
        p = self.field.p
        v = [x % p for x in vec]
        for row, piv in zip(self.rows, self.pivots):
            c = v[piv]
            if c:
                for k in range(piv, self.ambient):
                    if row[k]:
                        v[k] = (v[k] - c * row[k]) % p
        return v

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient == other.ambient
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.ambient, self.rows))

    def sum_with(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace.from_vectors(
            self.field, self.ambient, list(self.rows) + list(other.rows)
        )

    def annihilator_rows(self) -> list:
        """Basis of {w : row . w = 0 for all basis rows} (the perp space)."""
        return _kernels.nullspace(list(self.rows), self.ambient, self.field.p)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        ann = self.annihilator_rows() + other.annihilator_rows()
        basis = _kernels.nullspace(ann, self.ambient, self.field.p)
        return Subspace.from_vectors(self.field, self.ambient, basis)

    def _check_compatible(self, other: "Subspace"):
        if self.field != other.field or self.ambient != other.ambient:
            raise ValueError("incompatible subspaces")

    def __repr__(self):
        return f"Subspace(F_{self.field.p}, dim {self.dim} of {self.ambient})"


def kernel_of(rows, ncols: int, field: PrimeField) -> Subspace:
    """{x : rows . x = 0} as a Subspace of F_p^ncols."""
    basis = _kernels.nullspace(rows, ncols, field.p)
    return Subspace.from_vectors(field, ncols, basis)


def row_space(rows, ncols: int, field: PrimeField) -> Subspace:
    return Subspace.from_vectors(field, ncols, rows)
