"""Prime-field scalar arithmetic and base-p digit combinatorics.

Scalars are plain ints in [0, p); a :class:`PrimeField` carries the modulus and
the inverse/factorial helpers.  Binomials mod p go through the Lucas kernels,
carry counts and digit domination are direct digit loops.
"""

from dataclasses import dataclass
from functools import lru_cache

from . import _kernels

MAX_PRIME = 97


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True, order=True)
class PrimeField:
    """The prime field F_p, 2 <= p <= MAX_PRIME."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not 2 <= self.p <= MAX_PRIME:
            raise ValueError(f"p must be a prime in [2, {MAX_PRIME}], got {self.p!r}")
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")

    def normalize(self, a: int) -> int:
        return a % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, self.p - 2, self.p)

    def inv_factorial(self, n: int) -> int:
        """(n!)^{-1} mod p for 0 <= n < p."""
        if not 0 <= n < self.p:
            raise ValueError(f"inv_factorial needs 0 <= n < p, got n={n}")
        return _inv_factorials(self.p)[n]


@lru_cache(maxsize=None)
def _inv_factorials(p: int) -> tuple:
    fact = [1] * p
    for i in range(1, p):
        fact[i] = fact[i - 1] * i % p
    return tuple(pow(f, p - 2, p) for f in fact)


def digits(n: int, p: int) -> list:
    """Base-p digits of n, least-significant first; [0] for n = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return [0]
    out = []
    while n:
        out.append(n % p)
        n //= p
    return out


@dataclass(frozen=True)
class DigitVector:
    """Base-p digit expansion of a nonnegative integer, least-significant first."""

    digits: tuple
    value: int
    p: int

    def __post_init__(self):
        if any(not 0 <= d < self.p for d in self.digits):
            raise ValueError("digit out of range")
        if sum(d * self.p**i for i, d in enumerate(self.digits)) != self.value:
            raise ValueError("digits do not reconstruct value")

    @classmethod
    def of(cls, n: int, field: PrimeField) -> "DigitVector":
        return cls(tuple(digits(n, field.p)), n, field.p)


def binom_mod(n: int, j: int, field: PrimeField) -> int:
    """C(n, j) mod p; 0 when j > n (Lucas digit products)."""
    if n < 0 or j < 0:
        raise ValueError("binom_mod needs nonnegative arguments")
    return _kernels.binom_mod(n, j, field.p)


def binom_row_mod(n: int, field: PrimeField) -> list:
    """The whole row [C(n, j) mod p for j = 0..n]; batched form of binom_mod."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _kernels.lucas_row(n, field.p)


def carries_in_addition(a: int, b: int, field: PrimeField) -> int:
    """Number of carries when adding a and b in base p.

    Equals the p-adic valuation of C(a+b, a).
    """
    if a < 0 or b < 0:
        raise ValueError("carries_in_addition needs nonnegative arguments")
    p = field.p
    count = 0
    carry = 0
    while a or b or carry:
        s = a % p + b % p + carry
        carry = 1 if s >= p else 0
        count += carry
        a //= p
        b //= p
    return count


def digit_dominates(m: int, n: int, field: PrimeField) -> bool:
    """True iff every base-p digit of m is <= the corresponding digit of n."""
    if m < 0 or n < 0:
        raise ValueError("digit_dominates needs nonnegative arguments")
    p = field.p
    while m or n:
        if m % p > n % p:
            return False
        m //= p
        n //= p
    return True
