"""Exact arithmetic over F_{2^f} and precision-tracked truncated Laurent series.

A :class:`TruncatedSeries` is a Laurent series over F_{2^f} in one
uniformizer, known to an explicit *absolute* precision: the element is the
honest value modulo ``uniformizer**precision``.  Precision follows the usual
non-archimedean rules (min for addition, valuation-shifted min for products)
and never degrades silently: comparing digits beyond the tracked precision
raises :class:`PrecisionError`.

Coefficients are elements of F_{2^f} in the polynomial basis, encoded as
f-bit integer masks.  The irreducible polynomial per degree is fixed once in
``wildtrace.kernels`` so all runs are reproducible bit for bit.
"""

from __future__ import annotations

from typing import Iterable

from . import kernels


class PrecisionError(ArithmeticError):
    """A computation asked for digits beyond the tracked precision."""


class DomainError(ValueError):
    """An argument is outside the domain of the requested operation."""


class Fq:
    """The residue field F_{2^f} with fixed polynomial-basis encoding.

    Elements are the integers ``0 .. 2**f - 1``; bit j is the coordinate of
    the basis vector x^j.  Addition is XOR (characteristic two), so every
    element is its own additive inverse.
    """

    __slots__ = ("f", "q", "red", "_mul", "_inv", "_trace", "gen")

    def __init__(self, f: int):
        if f not in kernels.IRREDUCIBLE:
            raise DomainError(
                f"residue degree f={f} not supported (choose f in 1..4)")
        self.f = f
        self.q = 1 << f
        self.red = kernels.IRREDUCIBLE[f]
        self._mul = [[kernels.gf_mul(x, y, f) for y in range(self.q)]
                     for x in range(self.q)]
        self._inv = [0] + [kernels.gf_inv(x, f) for x in range(1, self.q)]
        self._trace = [self._abs_trace(x) for x in range(self.q)]
        # x itself is primitive for every fixed irreducible here; in F_2 use 1.
        self.gen = 2 if f > 1 else 1

    def _abs_trace(self, x: int) -> int:
        t = 0
        y = x
        for _ in range(self.f):
            t ^= y
            y = self._sq(y)
        if t not in (0, 1):
            raise AssertionError("absolute trace left the prime field")
        return t

    def _sq(self, x: int) -> int:
        return kernels.gf_mul(x, x, self.f)

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("inversion of zero in the residue field")
        return self._inv[a]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k <= 0:
                raise DomainError("zero to a non-positive power")
            return 0
        k %= self.q - 1 or 1
        r = 1
        b = a
        while k:
            if k & 1:
                r = self._mul[r][b]
            b = self._mul[b][b]
            k >>= 1
        return r

    def trace_to_f2(self, a: int) -> int:
        """Absolute trace F_{2^f} -> F_2."""
        return self._trace[a]

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)


class TruncatedSeries:
    """A Laurent series known modulo ``uniformizer**prec``.

    Invariants on the stored data:

    * ``coeffs`` is support-minimal: first and last stored coefficients are
      nonzero (the window may omit interior zeros only implicitly, the list
      is dense from ``val``).
    * the zero-to-precision element is ``val == prec`` with empty ``coeffs``;
      for it ``val`` plays the role of +infinity truncated at the precision.
    * ``val + len(coeffs) <= prec``: nothing is stored beyond the precision.
    """

    __slots__ = ("field", "tag", "val", "coeffs", "prec")

    def __init__(self, field: Fq, tag: str, val: int, coeffs: Iterable[int],
                 prec: int):
        coeffs = list(coeffs)
        i, j = 0, len(coeffs)
        while i < j and not coeffs[i]:
            i += 1
        val += i
        if val + (j - i) > prec:
            j = i + max(prec - val, 0)
        while j > i and not coeffs[j - 1]:
            j -= 1
        self.field = field
        self.tag = tag
        if i == j or val >= prec:
            self.val = prec
            self.coeffs = ()
        else:
            self.val = val
            self.coeffs = tuple(coeffs[i:j])
        self.prec = prec

    # -- basic structure ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def ord(self):
        """Valuation, or None for the zero-to-precision element."""
        return None if self.is_zero else self.val

    @property
    def leading(self) -> int:
        if self.is_zero:
            raise DomainError("leading coefficient of zero-to-precision")
        return self.coeffs[0]

    def coeff(self, k: int) -> int:
        if k >= self.prec:
            raise PrecisionError(
                f"coefficient at exponent {k} beyond precision {self.prec}")
        if self.is_zero or k < self.val or k >= self.val + len(self.coeffs):
            return 0
        return self.coeffs[k - self.val]

    def window(self, lo: int, hi: int) -> tuple:
        """Coefficients at exponents lo .. hi-1 (requires prec >= hi)."""
        if self.prec < hi:
            raise PrecisionError(
                f"window up to {hi} exceeds precision {self.prec}")
        return tuple(self.coeff(k) for k in range(lo, hi))

    def _check_mate(self, other: "TruncatedSeries"):
        if self.field is not other.field or self.tag != other.tag:
            raise DomainError("mixed uniformizers or residue fields")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_mate(other)
        prec = min(self.prec, other.prec)
        if self.is_zero:
            return TruncatedSeries(self.field, self.tag, other.val,
                                   other.coeffs, prec)
        if other.is_zero:
            return TruncatedSeries(self.field, self.tag, self.val,
                                   self.coeffs, prec)
        lo = min(self.val, other.val)
        hi = min(max(self.val + len(self.coeffs),
                     other.val + len(other.coeffs)), prec)
        out = [0] * (hi - lo)
        for src in (self, other):
            base = src.val - lo
            for i, c in enumerate(src.coeffs):
                k = base + i
                if k < len(out):
                    out[k] ^= c
        return TruncatedSeries(self.field, self.tag, lo, out, prec)

    __sub__ = __add__  # characteristic two

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_mate(other)
        prec = min(self.prec + other.val, other.prec + self.val)
        if self.is_zero or other.is_zero:
            return TruncatedSeries(self.field, self.tag, prec, (), prec)
        out = kernels.conv(self.coeffs, other.coeffs, self.field.f)
        return TruncatedSeries(self.field, self.tag, self.val + other.val,
                               out, prec)

    def scale(self, c: int) -> "TruncatedSeries":
        """Multiply by a residue-field scalar."""
        if c == 0:
            return TruncatedSeries(self.field, self.tag, self.prec, (),
                                   self.prec)
        if c == 1 or self.is_zero:
            return self
        mul = self.field._mul[c]
        return TruncatedSeries(self.field, self.tag, self.val,
                               [mul[x] for x in self.coeffs], self.prec)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by the exact monomial uniformizer**k."""
        return TruncatedSeries(self.field, self.tag, self.val + k,
                               self.coeffs, self.prec + k)

    def inv(self, name: str = "operand") -> "TruncatedSeries":
        if self.is_zero:
            raise PrecisionError(
                f"division by zero-to-precision series: {name}")
        w = self.prec - self.val
        padded = list(self.coeffs) + [0] * (w - len(self.coeffs))
        out = kernels.recip(padded, w, self.field.f)
        return TruncatedSeries(self.field, self.tag, -self.val, out,
                               self.prec - 2 * self.val)

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self * other.inv()

    def pow(self, k: int) -> "TruncatedSeries":
        if k < 0:
            return self.inv().pow(-k)
        r = TruncatedSeries(self.field, self.tag, 0, (1,),
                            self.prec - self.val if not self.is_zero
                            else self.prec)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    # -- comparison --------------------------------------------------------

    def eq_mod(self, other: "TruncatedSeries", n: int) -> bool:
        """True iff all coefficients of self-other at exponents < n vanish."""
        self._check_mate(other)
        if self.prec < n or other.prec < n:
            raise PrecisionError(
                f"eq_mod at level {n} with precisions "
                f"{self.prec}, {other.prec}")
        lo_s = self.val if not self.is_zero else n
        lo_o = other.val if not other.is_zero else n
        lo = min(lo_s, lo_o, n)
        for k in range(lo, n):
            if self.coeff(k) != other.coeff(k):
                return False
        return True

    def reduce_prec(self, n: int) -> "TruncatedSeries":
        if n > self.prec:
            raise PrecisionError("cannot raise precision")
        return TruncatedSeries(self.field, self.tag, self.val, self.coeffs, n)

    def __repr__(self):
        if self.is_zero:
            return f"O({self.tag}^{self.prec})"
        terms = " + ".join(
            f"{c:x}*{self.tag}^{self.val + i}"
            for i, c in enumerate(self.coeffs) if c)
        return f"{terms} + O({self.tag}^{self.prec})"


def zero(field: Fq, tag: str, prec: int) -> TruncatedSeries:
    return TruncatedSeries(field, tag, prec, (), prec)


def monomial(field: Fq, tag: str, k: int, window: int,
             c: int = 1) -> TruncatedSeries:
    """c * uniformizer**k, known to absolute precision k + window."""
    return TruncatedSeries(field, tag, k, (c,), k + window)


def eq_mod(x: TruncatedSeries, y: TruncatedSeries, n: int) -> bool:
    return x.eq_mod(y, n)
