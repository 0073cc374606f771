"""Sparse multivariate polynomial arithmetic over F_p with named variables.

Variables come from fixed alphabets: "T" (the 1-dimensional coordinate),
"x{i}_{j}" (matrix coordinates), "b{i}_{j}" (symbolic nilpotent entries), and
primed copies ("T'", "x1_2'") for right tensor factors.  A monomial is a
sorted tuple of (name, exponent) pairs; a polynomial maps monomials to nonzero
scalars in [1, p).

Text grammar (CLI and file formats): terms separated by "+", each term
"c*v1^e1*v2^e2..." with c a decimal integer; whitespace insignificant;
coefficients reduced mod p.  "-" starting a term negates it.
"""

import re
from typing import Mapping

from .fpcomb import PrimeField

_VAR_RE = re.compile(r"^(T|[xb](\d+)_(\d+))('?)$")

Monomial = tuple  # tuple[tuple[str, int], ...]

_ONE: Monomial = ()


def var_key(name: str):
    """Sort key for variable names: T < x{i}_{j} < b{i}_{j}, primed copies after."""
    m = _VAR_RE.match(name)
    if not m:
        raise ValueError(f"bad variable name {name!r}")
    primed = 1 if m.group(4) else 0
    if m.group(1) == "T":
        return (0, 0, 0, primed)
    fam = 1 if name[0] == "x" else 2
    return (fam, int(m.group(2)), int(m.group(3)), primed)


def is_var_name(name: str) -> bool:
    return bool(_VAR_RE.match(name))


def prime_var(name: str) -> str:
    if name.endswith("'"):
        raise ValueError(f"variable {name!r} already primed")
    return name + "'"


def unprime_var(name: str) -> str:
    return name[:-1] if name.endswith("'") else name


def is_primed(name: str) -> bool:
    return name.endswith("'")


def monomial(vars_exps: Mapping[str, int]) -> Monomial:
    """Canonical monomial from a {name: exponent} mapping (zero exps dropped)."""
    items = []
    for v, e in vars_exps.items():
        if not is_var_name(v):
            raise ValueError(f"bad variable name {v!r}")
        if e < 0:
            raise ValueError(f"negative exponent for {v}")
        if e:
            items.append((v, e))
    items.sort(key=lambda ve: var_key(ve[0]))
    return tuple(items)


def monomial_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _merge_monomials(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        ka, kb = var_key(a[i][0]), var_key(b[j][0])
        if ka == kb:
            out.append((a[i][0], a[i][1] + b[j][1]))
            i += 1
            j += 1
        elif ka < kb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def monomial_sort_key(m: Monomial):
    """Graded-lex: higher total degree first, then variable order."""
    return (-monomial_degree(m), tuple((var_key(v), -e) for v, e in m))


class MultiPoly:
    """Immutable sparse polynomial over F_p.  No stored zero coefficients."""

    __slots__ = ("field", "terms")

    def __init__(self, field: PrimeField, terms: Mapping[Monomial, int]):
        p = field.p
        clean = {}
        for mono, c in terms.items():
            c %= p
            if c:
                clean[mono] = c
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field: PrimeField) -> "MultiPoly":
        return cls(field, {})

    @classmethod
    def constant(cls, field: PrimeField, c: int) -> "MultiPoly":
        return cls(field, {_ONE: c})

    @classmethod
    def one(cls, field: PrimeField) -> "MultiPoly":
        return cls.constant(field, 1)

    @classmethod
    def variable(cls, field: PrimeField, name: str, exp: int = 1, coeff: int = 1) -> "MultiPoly":
        return cls(field, {monomial({name: exp}): coeff})

    @classmethod
    def from_monomial(cls, field: PrimeField, mono: Monomial, coeff: int = 1) -> "MultiPoly":
        return cls(field, {mono: coeff})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == _ONE for m in self.terms)

    def constant_value(self) -> int:
        """The constant coefficient (not an error for non-constant polys)."""
        return self.terms.get(_ONE, 0)

    def total_degree(self) -> int:
        """Total degree; 0 for the zero polynomial."""
        if not self.terms:
            return 0
        return max(monomial_degree(m) for m in self.terms)

    def degree_in(self, var: str) -> int:
        best = 0
        for m in self.terms:
            for v, e in m:
                if v == var and e > best:
                    best = e
        return best

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    def coeff(self, mono: Monomial) -> int:
        return self.terms.get(mono, 0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: monomial_sort_key(kv[0]))

    # -- arithmetic --------------------------------------------------------

    def _check_field(self, other: "MultiPoly"):
        if self.field != other.field:
            raise ValueError(f"mixed fields: F_{self.field.p} and F_{other.field.p}")

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def __add__(self, other):
        if isinstance(other, int):
            other = MultiPoly.constant(self.field, other)
        self._check_field(other)
        p = self.field.p
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = (terms.get(m, 0) + c) % p
            if v:
                terms[m] = v
            elif m in terms:
                del terms[m]
        return MultiPoly(self.field, terms)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return MultiPoly(self.field, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = MultiPoly.constant(self.field, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check_field(other)
        p = self.field.p
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _merge_monomials(m1, m2)
                v = (terms.get(m, 0) + c1 * c2) % p
                if v:
                    terms[m] = v
                elif m in terms:
                    del terms[m]
        return MultiPoly(self.field, terms)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: int) -> "MultiPoly":
        c %= self.field.p
        if c == 0:
            return MultiPoly.zero(self.field)
        if c == 1:
            return self
        p = self.field.p
        return MultiPoly(self.field, {m: cc * c % p for m, cc in self.terms.items()})

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = MultiPoly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def frobenius(self) -> "MultiPoly":
        """p-th power; a ring endomorphism in characteristic p."""
        p = self.field.p
        terms = {}
        for m, c in self.terms.items():
            mp = tuple((v, e * p) for v, e in m)
            terms[mp] = c  # c^p = c in F_p
        return MultiPoly(self.field, terms)

    # -- structural operations ---------------------------------------------

    def coeff_of_power(self, var: str, k: int) -> "MultiPoly":
        """Coefficient of var^k: a polynomial not involving var."""
        terms = {}
        p = self.field.p
        for m, c in self.terms.items():
            e = 0
            rest = []
            for v, ve in m:
                if v == var:
                    e = ve
                else:
                    rest.append((v, ve))
            if e == k:
                rest_t = tuple(rest)
                terms[rest_t] = (terms.get(rest_t, 0) + c) % p
        return MultiPoly(self.field, terms)

    def split_by_power(self, var: str) -> dict:
        """{k: coefficient polynomial of var^k}, nonzero coefficients only."""
        buckets = {}
        p = self.field.p
        for m, c in self.terms.items():
            e = 0
            rest = []
            for v, ve in m:
                if v == var:
                    e = ve
                else:
                    rest.append((v, ve))
            d = buckets.setdefault(e, {})
            rest_t = tuple(rest)
            nv = (d.get(rest_t, 0) + c) % p
            if nv:
                d[rest_t] = nv
            elif rest_t in d:
                del d[rest_t]
        return {k: MultiPoly(self.field, d) for k, d in buckets.items() if d}

    def substitute(self, assignment: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Homomorphic image under var -> polynomial; must cover all variables."""
        missing = self.variables() - set(assignment)
        if missing:
            raise KeyError(f"no assignment for variable(s) {sorted(missing)}")
        result = MultiPoly.zero(self.field)
        power_cache = {}
        for m, c in self.terms.items():
            term = MultiPoly.constant(self.field, c)
            for v, e in m:
                key = (v, e)
                pw = power_cache.get(key)
                if pw is None:
                    img = assignment[v]
                    self._check_field(img)
                    pw = img**e
                    power_cache[key] = pw
                term = term * pw
            result = result + term
        return result

    def eval_at(self, point: Mapping[str, int]) -> int:
        """Scalar value at a point; must cover all variables."""
        missing = self.variables() - set(point)
        if missing:
            raise KeyError(f"no coordinate for variable(s) {sorted(missing)}")
        p = self.field.p
        total = 0
        for m, c in self.terms.items():
            v = c
            for var, e in m:
                v = v * pow(point[var] % p, e, p) % p
                if v == 0:
                    break
            total = (total + v) % p
        return total

    def rename_variables(self, mapping: Mapping[str, str]) -> "MultiPoly":
        terms = {}
        p = self.field.p
        for m, c in self.terms.items():
            nm = monomial({mapping.get(v, v): e for v, e in m})
            terms[nm] = (terms.get(nm, 0) + c) % p
        return MultiPoly(self.field, terms)

    def drop_high_exponents(self, bound: int, vars=None) -> "MultiPoly":
        """Discard terms where some (listed) variable has exponent >= bound."""
        terms = {}
        for m, c in self.terms.items():
            if any(e >= bound and (vars is None or v in vars) for v, e in m):
                continue
            terms[m] = c
        return MultiPoly(self.field, terms)

    def __repr__(self):
        return f"MultiPoly(F_{self.field.p}, {format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


class TensorPoly:
    """An element of C (x) C: a MultiPoly whose right-factor variables are primed."""

    __slots__ = ("poly",)

    def __init__(self, poly: MultiPoly):
        self.poly = poly

    @property
    def field(self):
        return self.poly.field

    def __eq__(self, other):
        if isinstance(other, TensorPoly):
            return self.poly == other.poly
        return NotImplemented

    def __hash__(self):
        return hash(("tensor", self.poly))

    def left_degree(self) -> int:
        """Max total degree of the unprimed part over all terms."""
        best = 0
        for m in self.poly.terms:
            best = max(best, sum(e for v, e in m if not is_primed(v)))
        return best

    def right_degree(self) -> int:
        best = 0
        for m in self.poly.terms:
            best = max(best, sum(e for v, e in m if is_primed(v)))
        return best

    def factor_pairs(self):
        """Terms as ((left monomial, right monomial in unprimed names), coeff)."""
        out = []
        for m, c in self.poly.terms.items():
            left = tuple((v, e) for v, e in m if not is_primed(v))
            right = monomial({unprime_var(v): e for v, e in m if is_primed(v)})
            out.append(((left, right), c))
        return out

    def __repr__(self):
        return f"TensorPoly({format_poly(self.poly)!r})"


def tensor(left: MultiPoly, right: MultiPoly) -> TensorPoly:
    """left (x) right, with the right factor's variables primed."""
    primed = right.rename_variables({v: prime_var(v) for v in right.variables()})
    return TensorPoly(left * primed)


# -- text grammar ------------------------------------------------------------

_TERM_RE = re.compile(r"^(\d+)?((?:\*?(?:T|[xb]\d+_\d+)'?(?:\^\d+)?)*)$")
_FACTOR_RE = re.compile(r"((?:T|[xb]\d+_\d+)'?)(?:\^(\d+))?")


def parse_poly(text: str, field: PrimeField) -> MultiPoly:
    """Parse the term grammar; coefficients reduced mod p."""
    s = "".join(text.split())
    if not s:
        raise ValueError("empty polynomial text")
    if s == "0":
        return MultiPoly.zero(field)
    # split into signed terms on top-level + and -
    s = s.replace("-", "+-")
    parts = [t for t in s.split("+") if t]
    if not parts:
        raise ValueError(f"cannot parse polynomial {text!r}")
    terms = {}
    p = field.p
    for part in parts:
        sign = 1
        if part.startswith("-"):
            sign = -1
            part = part[1:]
        m = _TERM_RE.match(part)
        if not m or (m.group(1) is None and not m.group(2)):
            raise ValueError(f"cannot parse term {part!r} in {text!r}")
        coeff = sign * (int(m.group(1)) if m.group(1) is not None else 1)
        exps = {}
        body = m.group(2)
        consumed = 0
        for fm in _FACTOR_RE.finditer(body):
            v = fm.group(1)
            e = int(fm.group(2)) if fm.group(2) else 1
            exps[v] = exps.get(v, 0) + e
            consumed += fm.end() - fm.start()
        stripped = body.replace("*", "")
        if consumed != len(stripped):
            raise ValueError(f"cannot parse term {part!r} in {text!r}")
        mono = monomial(exps)
        terms[mono] = (terms.get(mono, 0) + coeff) % p
    return MultiPoly(field, terms)


def format_poly(f: MultiPoly) -> str:
    """Canonical text form: graded-lex term order, '+'-separated."""
    if f.is_zero():
        return "0"
    parts = []
    for mono, c in f.sorted_terms():
        factors = []
        for v, e in mono:
            factors.append(v if e == 1 else f"{v}^{e}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append("*".join([str(c)] + factors))
    return " + ".join(parts)
