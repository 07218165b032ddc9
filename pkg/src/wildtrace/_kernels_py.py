"""Pure-Python coefficient kernels for truncated series over F_{2^f}.

Coefficient sequences are lists/tuples of small ints; each entry encodes an
element of F_{2^f} in the polynomial basis as an f-bit mask.  The hot loops
pack whole sequences into single Python integers (one bit plane per basis
coordinate of the field) so a full convolution costs a handful of big-int
carry-less multiplies instead of O(len^2) interpreted field operations.

The compiled module ``wildtrace._kernels`` implements the same contract;
``wildtrace.kernels`` picks one at import time.
"""

BACKEND = "python"

# Fixed irreducible polynomials over F_2, one per supported degree, so runs
# are reproducible bit for bit.
IRREDUCIBLE = {1: 0b11, 2: 0b111, 3: 0b1011, 4: 0b10011}


def _clmul(a, b):
    """Carry-less product of two F_2[x] bitmasks."""
    if a.bit_count() < b.bit_count():
        a, b = b, a
    r = 0
    while b:
        r ^= a * (b & -b)
        b &= b - 1
    return r


def _gf_mul_slow(x, y, f):
    r = _clmul(x, y)
    red = IRREDUCIBLE[f]
    for k in range(2 * f - 2, f - 1, -1):
        if (r >> k) & 1:
            r ^= red << (k - f)
    return r


_TABLES = {}


def _tables(f):
    tabs = _TABLES.get(f)
    if tabs is None:
        q = 1 << f
        mul = [[_gf_mul_slow(x, y, f) for y in range(q)] for x in range(q)]
        inv = [0] * q
        for x in range(1, q):
            for y in range(1, q):
                if mul[x][y] == 1:
                    inv[x] = y
                    break
        tabs = (mul, inv)
        _TABLES[f] = tabs
    return tabs


def gf_mul(x, y, f):
    return _tables(f)[0][x][y]


def gf_inv(x, f):
    if x == 0:
        raise ZeroDivisionError("inverse of zero in F_{2^f}")
    return _tables(f)[1][x]


_RED_ROWS = {}


def _red_rows(f):
    """Masks of x^k mod the irreducible, for k = f .. 2f-2."""
    rows = _RED_ROWS.get(f)
    if rows is None:
        low = IRREDUCIBLE[f] & ((1 << f) - 1)
        rows = []
        cur = low
        for _ in range(f - 1):
            rows.append(cur)
            cur <<= 1
            if cur >> f:
                cur = (cur & ((1 << f) - 1)) ^ low
        _RED_ROWS[f] = rows
    return rows


def _pack_plane(seq, j):
    m = 0
    for i, c in enumerate(seq):
        if (c >> j) & 1:
            m |= 1 << i
    return m


def conv(a, b, f):
    """Full convolution of two coefficient sequences over F_{2^f}."""
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return []
    n = la + lb - 1
    if f == 1:
        pc = _clmul(_pack_plane(a, 0), _pack_plane(b, 0))
        return [(pc >> i) & 1 for i in range(n)]
    planes_a = [_pack_plane(a, j) for j in range(f)]
    planes_b = [_pack_plane(b, j) for j in range(f)]
    cross = [0] * (2 * f - 1)
    for i in range(f):
        pa = planes_a[i]
        if not pa:
            continue
        for j in range(f):
            pb = planes_b[j]
            if pb:
                cross[i + j] ^= _clmul(pa, pb)
    out_planes = cross[:f]
    rows = _red_rows(f)
    for k in range(f, 2 * f - 1):
        v = cross[k]
        if v:
            row = rows[k - f]
            for j in range(f):
                if (row >> j) & 1:
                    out_planes[j] ^= v
    out = [0] * n
    for j in range(f):
        pj = out_planes[j]
        bit = 1 << j
        while pj:
            low = pj & -pj
            out[low.bit_length() - 1] |= bit
            pj ^= low
    return out


def recip(a, n, f):
    """First n coefficients of 1/a for a unit sequence (a[0] != 0)."""
    if n <= 0:
        return []
    if a[0] == 0:
        raise ZeroDivisionError("reciprocal of a non-unit sequence")
    if f == 1:
        pa = _pack_plane(a, 0)
        q = 0
        rem = 1
        for i in range(n):
            if (rem >> i) & 1:
                q |= 1 << i
                rem ^= pa << i
        return [(q >> i) & 1 for i in range(n)]
    mul, _ = _tables(f)
    inv0 = gf_inv(a[0], f)
    out = [0] * n
    out[0] = inv0
    la = len(a)
    row0 = mul[inv0]
    for i in range(1, n):
        s = 0
        for j in range(1, min(i, la - 1) + 1):
            aj = a[j]
            if aj:
                s ^= mul[aj][out[i - j]]
        out[i] = row0[s]
    return out
