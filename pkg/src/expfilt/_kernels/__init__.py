"""Backend selection for the F_p kernels.

The compiled Cython extension is used when available; otherwise the pure-Python
implementation.  ``python -m expfilt.bench`` compares the two.
"""

from . import pure as _pure

try:
    from . import _core as _impl

    BACKEND = "compiled"
except ImportError:  # extension not built
    _impl = _pure
    BACKEND = "pure"

binom_mod = _impl.binom_mod
lucas_row = _impl.lucas_row
rref = _impl.rref
matmul = _impl.matmul


def backends():
    """Available backend modules keyed by name ('pure' is always present)."""
    out = {"pure": _pure}
    if BACKEND == "compiled":
        out["compiled"] = _impl
    return out


def rank(rows, ncols, p):
    return len(rref(rows, ncols, p)[0])


def nullspace(rows, ncols, p):
    """Basis of {x : rows . x = 0} over F_p, one vector per free column."""
    red, pivots = rref(rows, ncols, p)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-red[i][f]) % p
        basis.append(v)
    return basis
