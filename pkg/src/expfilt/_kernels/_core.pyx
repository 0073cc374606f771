# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: dense linear algebra over F_p and batched Lucas binomials.

Same contract as the pure backend in ``pure.py``.
"""

from libc.stdlib cimport calloc, free


cdef long _inv_mod(long a, long p):
    # Fermat inverse; p prime, a != 0 mod p
    cdef long r = 1
    cdef long b = a % p
    cdef long e = p - 2
    while e:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


cdef long* _pascal(long p):
    cdef long* tab = <long*> calloc(p * p, sizeof(long))
    cdef long a, b
    for a in range(p):
        tab[a * p] = 1
        for b in range(1, a + 1):
            tab[a * p + b] = (tab[(a - 1) * p + b - 1] + tab[(a - 1) * p + b]) % p
    return tab


def binom_mod(long n, long j, long p):
    """C(n, j) mod p by digit-wise products of base-p digits."""
    if j < 0 or j > n:
        return 0
    cdef long* tab = _pascal(p)
    cdef long r = 1
    cdef long c, nd, jd
    while j or n:
        nd = n % p
        jd = j % p
        c = tab[nd * p + jd] if jd <= nd else 0
        if c == 0:
            free(tab)
            return 0
        r = r * c % p
        n //= p
        j //= p
    free(tab)
    return r


def lucas_row(long n, long p):
    """[C(n, j) mod p for j in 0..n], via the digit-product block structure."""
    cdef long* tab = _pascal(p)
    cdef long* row = <long*> calloc(n + 1, sizeof(long))
    cdef long* prev = <long*> calloc(n + 1, sizeof(long))
    cdef long width, ndigits, m, q, j0, base, lim, hq, n0
    cdef long i

    # digits of n, most significant first
    cdef long digits[64]
    ndigits = 0
    m = n
    while True:
        digits[ndigits] = m % p
        ndigits += 1
        m //= p
        if m == 0:
            break

    # start from the most significant digit and extend block-wise
    n0 = digits[ndigits - 1]
    width = n0 + 1
    for j0 in range(width):
        row[j0] = tab[n0 * p + j0]
    m = n0
    for i in range(ndigits - 2, -1, -1):
        n0 = digits[i]
        for q in range(width):
            prev[q] = row[q]
        m = m * p + n0
        width = m + 1
        for q in range(width):
            row[q] = 0
        for q in range(0, (width + p - 1) // p):
            hq = prev[q]
            if hq == 0:
                continue
            base = q * p
            lim = p if base + p <= width else width - base
            for j0 in range(lim):
                if tab[n0 * p + j0]:
                    row[base + j0] = hq * tab[n0 * p + j0] % p

    out = [0] * (n + 1)
    for i in range(n + 1):
        out[i] = row[i]
    free(tab)
    free(row)
    free(prev)
    return out


def rref(rows, long ncols, long p):
    """Reduced row echelon form over F_p.

    Returns (reduced nonzero rows, pivot column indices).
    """
    cdef long nrows_in = len(rows)
    cdef long* mat = <long*> calloc(max(nrows_in * ncols, 1), sizeof(long))
    cdef long nrows = 0
    cdef long i, k, col, piv, rank, c, inv, v
    cdef bint nz
    for r in rows:
        nz = False
        for k in range(ncols):
            v = r[k] % p
            mat[nrows * ncols + k] = v
            if v:
                nz = True
        if nz:
            nrows += 1
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = -1
        for i in range(rank, nrows):
            if mat[i * ncols + col]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for k in range(ncols):
                v = mat[rank * ncols + k]
                mat[rank * ncols + k] = mat[piv * ncols + k]
                mat[piv * ncols + k] = v
        inv = _inv_mod(mat[rank * ncols + col], p)
        if inv != 1:
            for k in range(col, ncols):
                if mat[rank * ncols + k]:
                    mat[rank * ncols + k] = mat[rank * ncols + k] * inv % p
        for i in range(nrows):
            if i != rank and mat[i * ncols + col]:
                c = mat[i * ncols + col]
                for k in range(col, ncols):
                    v = mat[rank * ncols + k]
                    if v:
                        mat[i * ncols + k] = (mat[i * ncols + k] - c * v) % p
                        if mat[i * ncols + k] < 0:
                            mat[i * ncols + k] += p
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    out = []
    for i in range(rank):
        out.append([mat[i * ncols + k] for k in range(ncols)])
    free(mat)
    return out, pivots


def matmul(a, b, long p):
    """Matrix product mod p; a is n x k, b is k x m."""
    cdef long n = len(a)
    cdef long kk = len(b)
    cdef long m = len(b[0]) if kk else 0
    cdef long* bb = <long*> calloc(max(kk * m, 1), sizeof(long))
    cdef long* oo = <long*> calloc(max(n * m, 1), sizeof(long))
    cdef long i, t, jj, c
    for t in range(kk):
        bt = b[t]
        for jj in range(m):
            bb[t * m + jj] = bt[jj] % p
    for i in range(n):
        ai = a[i]
        for t in range(kk):
            c = ai[t] % p
            if c == 0:
                continue
            for jj in range(m):
                if bb[t * m + jj]:
                    oo[i * m + jj] = (oo[i * m + jj] + c * bb[t * m + jj]) % p
    out = []
    for i in range(n):
        out.append([oo[i * m + jj] for jj in range(m)])
    free(bb)
    free(oo)
    return out
