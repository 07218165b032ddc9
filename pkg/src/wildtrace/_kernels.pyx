# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled coefficient kernels over F_{2^f}.

Same contract as ``wildtrace._kernels_py``: sequences of f-bit masks in and
out, schoolbook loops over C buffers with a precomputed 16x16 multiplication
table (enough for every supported degree f <= 4).
"""

from libc.stdlib cimport malloc, free

BACKEND = "cython"

IRREDUCIBLE = {1: 0b11, 2: 0b111, 3: 0b1011, 4: 0b10011}

cdef unsigned char MUL[5][16][16]
cdef unsigned char INV[5][16]
cdef bint READY[5]


cdef int _slow_mul(int x, int y, int f, int red):
    cdef int r = 0
    cdef int i, k
    for i in range(f):
        if (y >> i) & 1:
            r ^= x << i
    for k in range(2 * f - 2, f - 1, -1):
        if (r >> k) & 1:
            r ^= red << (k - f)
    return r


cdef void _ensure(int f):
    cdef int q, red, x, y
    if READY[f]:
        return
    q = 1 << f
    red = IRREDUCIBLE[f]
    for x in range(q):
        for y in range(q):
            MUL[f][x][y] = <unsigned char> _slow_mul(x, y, f, red)
    for x in range(1, q):
        for y in range(1, q):
            if MUL[f][x][y] == 1:
                INV[f][x] = <unsigned char> y
                break
    READY[f] = True


def gf_mul(int x, int y, int f):
    _ensure(f)
    return MUL[f][x][y]


def gf_inv(int x, int f):
    if x == 0:
        raise ZeroDivisionError("inverse of zero in F_{2^f}")
    _ensure(f)
    return INV[f][x]


def conv(a, b, int f):
    """Full convolution of two coefficient sequences over F_{2^f}."""
    cdef int la = len(a), lb = len(b)
    if la == 0 or lb == 0:
        return []
    _ensure(f)
    cdef int n = la + lb - 1
    cdef unsigned char *pa = <unsigned char *> malloc(la)
    cdef unsigned char *pb = <unsigned char *> malloc(lb)
    cdef unsigned char *pc = <unsigned char *> malloc(n)
    if pa == NULL or pb == NULL or pc == NULL:
        free(pa); free(pb); free(pc)
        raise MemoryError()
    cdef int i, j
    cdef unsigned char ca, cb
    try:
        for i in range(la):
            pa[i] = <unsigned char> a[i]
        for j in range(lb):
            pb[j] = <unsigned char> b[j]
        for i in range(n):
            pc[i] = 0
        for i in range(la):
            ca = pa[i]
            if ca:
                for j in range(lb):
                    cb = pb[j]
                    if cb:
                        pc[i + j] ^= MUL[f][ca][cb]
        return [pc[i] for i in range(n)]
    finally:
        free(pa); free(pb); free(pc)


def recip(a, int n, int f):
    """First n coefficients of 1/a for a unit sequence (a[0] != 0)."""
    if n <= 0:
        return []
    if a[0] == 0:
        raise ZeroDivisionError("reciprocal of a non-unit sequence")
    _ensure(f)
    cdef int la = len(a)
    cdef unsigned char *pa = <unsigned char *> malloc(la)
    cdef unsigned char *out = <unsigned char *> malloc(n)
    if pa == NULL or out == NULL:
        free(pa); free(out)
        raise MemoryError()
    cdef int i, j, jmax
    cdef unsigned char s, inv0, aj
    try:
        for i in range(la):
            pa[i] = <unsigned char> a[i]
        inv0 = INV[f][pa[0]]
        out[0] = inv0
        for i in range(1, n):
            s = 0
            jmax = i if i < la - 1 else la - 1
            for j in range(1, jmax + 1):
                aj = pa[j]
                if aj:
                    s ^= MUL[f][aj][out[i - j]]
            out[i] = MUL[f][inv0][s]
        return [out[i] for i in range(n)]
    finally:
        free(pa); free(out)
