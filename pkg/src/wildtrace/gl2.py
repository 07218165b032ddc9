"""2x2 matrices over E: root subgroups, the torus embedding, level subgroups.

The congruence filtration is the standard one on the upper-triangular-mod-p
Iwahori: level r has diagonal in 1 + p^{floor((r+1)/2)}, upper entry in
p^{floor(r/2)} and lower entry in p^{floor(r/2)+1}, in the valuation of the
respective field.  Membership in the twisted double coset at level 2m+1 is
decided by Gauss-factoring against explicitly conjugated level subgroups;
the derived parameter ranges are guarded by randomized constructive tests.
"""

from __future__ import annotations

from .algebra import DomainError, PrecisionError, TruncatedSeries
from .tower import Tower


class Mat2:
    """A 2x2 matrix with truncated-series entries."""

    __slots__ = ("e11", "e12", "e21", "e22")

    def __init__(self, e11, e12, e21, e22):
        self.e11 = e11
        self.e12 = e12
        self.e21 = e21
        self.e22 = e22

    @classmethod
    def identity(cls, tower: Tower) -> "Mat2":
        one, zero = tower.one(), tower.zero()
        return cls(one, zero, zero, one)

    def entries(self):
        return (self.e11, self.e12, self.e21, self.e22)

    def __mul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.e11 * other.e11 + self.e12 * other.e21,
            self.e11 * other.e12 + self.e12 * other.e22,
            self.e21 * other.e11 + self.e22 * other.e21,
            self.e21 * other.e12 + self.e22 * other.e22,
        )

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.e11 + other.e11, self.e12 + other.e12,
                    self.e21 + other.e21, self.e22 + other.e22)

    def det(self) -> TruncatedSeries:
        # characteristic two: ad - bc = ad + bc
        return self.e11 * self.e22 + self.e12 * self.e21

    def trace(self) -> TruncatedSeries:
        return self.e11 + self.e22

    def inv(self) -> "Mat2":
        dinv = self.det().inv("matrix determinant")
        return Mat2(self.e22 * dinv, self.e12 * dinv,
                    self.e21 * dinv, self.e11 * dinv)

    def scale(self, s: TruncatedSeries) -> "Mat2":
        return Mat2(self.e11 * s, self.e12 * s, self.e21 * s, self.e22 * s)

    def __repr__(self):
        return (f"Mat2([{self.e11!r}, {self.e12!r}],"
                f" [{self.e21!r}, {self.e22!r}])")


def mat_tau(tower: Tower, g: Mat2) -> Mat2:
    """Entrywise Galois action; G(F) is the fixed locus to precision."""
    return Mat2(tower.tau(g.e11), tower.tau(g.e12),
                tower.tau(g.e21), tower.tau(g.e22))


def is_f_matrix(tower: Tower, g: Mat2, upto: int | None = None) -> bool:
    return all(tower.in_f(x, upto) for x in g.entries())


def e_plus(tower: Tower, a: TruncatedSeries) -> Mat2:
    return Mat2(tower.one(), a, tower.zero(), tower.one())


def e_minus(tower: Tower, a: TruncatedSeries) -> Mat2:
    return Mat2(tower.one(), tower.zero(), a, tower.one())


def e_zero(tower: Tower, c: TruncatedSeries, d: TruncatedSeries) -> Mat2:
    return Mat2(c, tower.zero(), tower.zero(), d)


def iota(tower: Tower, x: TruncatedSeries) -> Mat2:
    """The algebra embedding E -> Mat_2(F), pi -> [[Delta, 1], [varpi, 0]]."""
    x0, x1 = tower.split_ef(x)
    return Mat2(x0 + tower.delta * x1, x1, tower.varpi * x1, x0)


def wdot(tower: Tower) -> Mat2:
    """The chosen lift to G(E) of the length-(2n-1) affine Weyl element."""
    w = tower._cache.get("wdot")
    if w is None:
        n = tower.n
        up = tower.pi_pow(-n) * tower.eps.pow(-((n + 1) // 2))
        lo = tower.pi_pow(n) * tower.eps.pow(n // 2)
        w = Mat2(tower.zero(), up, lo, tower.zero())
        tower._cache["wdot"] = w
    return w


def vdot(tower: Tower) -> Mat2:
    """The antidiagonal cell representative of length n + d."""
    v = tower._cache.get("vdot")
    if v is None:
        n, d = tower.n, tower.d
        half = (d + 1) // 2
        v = Mat2(tower.zero(), tower.pi_pow(-(half + (n + 1) // 2)),
                 tower.pi_pow(half + n // 2), tower.zero())
        tower._cache["vdot"] = v
    return v


def _ord_at_least(x: TruncatedSeries, t: int) -> bool:
    if not x.is_zero and x.val < t:
        return False
    if x.prec < t:
        raise PrecisionError(
            f"level test at exponent {t} beyond precision {x.prec}")
    return True


def _is_unit(x: TruncatedSeries) -> bool:
    return x.ord() == 0


def in_level(tower: Tower, g: Mat2, field_tag: str, r: int) -> bool:
    """Entrywise membership test for the level-r congruence subgroup."""
    if field_tag not in ("E", "F"):
        raise DomainError("field tag must be 'E' or 'F'")
    scale = 1 if field_tag == "E" else 2
    one = tower.one()
    if r == 0:
        return (_is_unit(g.e11) and _is_unit(g.e22)
                and _ord_at_least(g.e12, 0)
                and _ord_at_least(g.e21, scale))
    s_diag = ((r + 1) // 2) * scale
    s_up = (r // 2) * scale
    s_low = (r // 2 + 1) * scale
    return (_ord_at_least(g.e11 + one, s_diag)
            and _ord_at_least(g.e22 + one, s_diag)
            and _ord_at_least(g.e12, s_up)
            and _ord_at_least(g.e21, s_low))


def gauss_params(g: Mat2):
    """Factor g = e_-(c) e_0(u, v) e_+(b); needs g11 a unit.

    Returns (c, u, v, b) or None when g11 is not a unit.
    """
    if g.e11.ord() != 0:
        return None
    u = g.e11
    uinv = u.inv("Gauss pivot")
    b = g.e12 * uinv
    c = g.e21 * uinv
    v = g.e22 + g.e21 * g.e12 * uinv
    return c, u, v, b


def double_coset_member(tower: Tower, g: Mat2) -> bool:
    """Membership of g in J wdot J for J the level-(2m+1) subgroup of I_E.

    Write h = wdot^{-1} g.  Conjugating J by wdot shifts the upper entry
    down by 2n pi-valuations and the lower entry up by 2n, so the product
    set (wdot^{-1} J wdot) J consists exactly of the Gauss-factorable h with

        c in p^{m+1},  u, v in 1 + p^{m+1},  b in p^d.
    """
    if g.det().is_zero:
        raise DomainError("double coset test on a non-invertible matrix")
    h = wdot(tower).inv() * g
    params = gauss_params(h)
    if params is None:
        return False
    c, u, v, b = params
    m, d = tower.m, tower.d
    one = tower.one()
    return (_ord_at_least(c, m + 1) and _ord_at_least(b, d)
            and _ord_at_least(u + one, m + 1)
            and _ord_at_least(v + one, m + 1))


def factor_e_times_level(tower: Tower, h: Mat2, r: int):
    """Factor h = iota(e) * j with j in the level-r subgroup of I_F.

    The candidate e is read off the bottom row of h (the bottom row of
    iota(x0 + pi*x1) is (varpi*x1, x0), which pins x0, x1 F-linearly up to a
    perturbation absorbed by the level subgroup).  Returns (e, j) or None.
    """
    cand = h.e22 + h.e21 * tower.varpi_pow(-1).shift(1)
    if cand.is_zero:
        return None
    j = iota(tower, cand).inv() * h
    try:
        ok = in_level(tower, j, "F", r)
    except PrecisionError:
        return None
    return (cand, j) if ok else None
