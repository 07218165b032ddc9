"""The finite point set cut out by the twisted double-coset condition.

A point has coordinates (a, C) with a of valuation exactly one modulo
p^{n+d+m+1} and C a unit class modulo U^{m+1}; the dependent coordinates

    R = pi^{-(d+1)} (tau(a) + a),   D = eps^{(d+1)/2} tau(C) R^{-1},
    B = pi^n R^{-1}

make x = e_-(a) vdot e_-(B) e_0(C, D) satisfy the level-(2m+1) twisted
Bruhat condition, which :func:`verify_point` re-checks independently through
the double-coset membership test.  Left multiplication by the Iwahori of F,
the right stabilizer action, and the uniformizer-twisted action are all
implemented on coordinates, with the matrix picture available as an oracle.
"""

from __future__ import annotations

import itertools

from .algebra import DomainError, TruncatedSeries
from .gl2 import (Mat2, double_coset_member, e_minus, e_zero,
                  factor_e_times_level, in_level, iota, mat_tau, vdot)
from .groups import StabElement
from .tower import Tower, UnitClass


class ADLVPoint:
    """A point with coordinates (a, C); derived data recomputed on demand."""

    __slots__ = ("tower", "a", "c_unit")

    def __init__(self, tower: Tower, a: TruncatedSeries, c_unit: UnitClass):
        if a.ord() != 1:
            raise DomainError("coordinate a must have valuation exactly one")
        if a.prec < tower.n + tower.d + tower.m + 1:
            raise DomainError("coordinate a below the working modulus")
        if c_unit.level != tower.m + 1:
            raise DomainError("coordinate C must be a class mod U^{m+1}")
        self.tower = tower
        self.a = a
        self.c_unit = c_unit

    @classmethod
    def make(cls, tower: Tower, a: TruncatedSeries,
             c: TruncatedSeries) -> "ADLVPoint":
        return cls(tower, a, UnitClass(tower, c, tower.m + 1))

    def key(self) -> tuple:
        t = self.tower
        return (self.a.window(1, t.n + t.d + t.m + 1), self.c_unit.key())

    def fiber_key(self) -> tuple:
        """The coordinate a modulo p^{n+d+1}: the base of the torsor map."""
        t = self.tower
        return self.a.window(1, t.n + t.d + 1)

    def a_prime(self) -> TruncatedSeries:
        return self.a.shift(-1)

    def r_series(self) -> TruncatedSeries:
        t = self.tower
        return t.trace_ef(self.a).shift(-(t.d + 1))

    def matrix(self) -> Mat2:
        t = self.tower
        r = self.r_series()
        rinv = r.inv("point coordinate R")
        c = self.c_unit.rep
        dd = t.eps.pow((t.d + 1) // 2) * t.tau(c) * rinv
        b = rinv.shift(t.n)
        return (e_minus(t, self.a) * vdot(t) * e_minus(t, b)
                * e_zero(t, c, dd))

    def __eq__(self, other):
        return isinstance(other, ADLVPoint) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"ADLVPoint(a={self.a!r}, C={self.c_unit.rep!r})"


def point_counts(tower: Tower) -> tuple:
    """(#a-classes, #C-classes) counted by direct enumeration of factors."""
    t = tower
    n_a = sum(1 for _ in t.star_reps(1, t.n + t.d + t.m + 1))
    n_c = sum(1 for _ in t.unit_reps(t.m + 1))
    return n_a, n_c


def enumerate_points(tower: Tower, limit: int | None = None):
    """Stream the point set in deterministic order."""
    t = tower
    count = 0
    for a in t.star_reps(1, t.n + t.d + t.m + 1):
        for c in t.unit_reps(t.m + 1):
            if limit is not None and count >= limit:
                return
            yield ADLVPoint.make(t, a, c)
            count += 1


def verify_point(tower: Tower, p: ADLVPoint) -> bool:
    """Independent check of the defining condition x^{-1} tau(x) in J wdot J."""
    x = p.matrix()
    return double_coset_member(tower, x.inv() * mat_tau(tower, x))


# -- actions -------------------------------------------------------------------


def act_left(tower: Tower, g: Mat2, p: ADLVPoint) -> ADLVPoint:
    """Left multiplication by g in I_F on coordinates."""
    t = tower
    den = g.e12 * p.a + g.e11
    if den.ord() != 0:
        raise DomainError("left action denominator is not a unit")
    dinv = den.inv("left action denominator")
    new_a = (g.e22 * p.a + g.e21) * dinv
    new_c = g.det() * p.c_unit.rep * dinv
    return ADLVPoint.make(t, new_a, new_c)


def act_right(tower: Tower, gamma: StabElement, p: ADLVPoint) -> ADLVPoint:
    """The right stabilizer action (t must be a unit)."""
    t = tower
    if gamma.t.ord() != 0:
        raise DomainError("right action requires an integral stabilizer "
                          "element (unit t)")
    half = (t.d + 1) // 2
    c = p.c_unit.rep
    ratio = t.eps.pow(-half) * c * t.tau(c).inv("tau(C)")
    h = t.one() + (ratio * gamma.r).shift(t.n)
    hinv = h.inv("right action correction")
    new_a = p.a + (ratio * p.r_series() * hinv * gamma.r).shift(
        t.n + t.d + 1)
    new_c = c * hinv * gamma.t
    return ADLVPoint.make(t, new_a, new_c)


class GNormalized:
    """g in iota(E^x) I_F as (central varpi-power, h in I_F, pi-parity)."""

    __slots__ = ("tower", "central", "h", "parity")

    def __init__(self, tower: Tower, central: int, h: Mat2, parity: int):
        self.tower = tower
        self.central = central
        self.h = h
        self.parity = parity

    @classmethod
    def from_matrix(cls, tower: Tower, g: Mat2) -> "GNormalized":
        fac = factor_e_times_level(tower, g, 0)
        if fac is None:
            raise DomainError("matrix is not in iota(E^x) I_F")
        e, j = fac
        v = e.ord()
        central, parity = divmod(v, 2)
        # e = varpi^central * pi^parity * u (note varpi != pi^2)
        u = e * tower.varpi_pow(-central)
        if parity:
            u = u * tower.pi_pow(1).inv("uniformizer")
        ipi = iota(tower, tower.pi_pow(1))
        conj = j
        if parity:
            conj = ipi * j * ipi.inv()
        h = iota(tower, u) * conj
        if not in_level(tower, h, "F", 0):
            raise DomainError("normalization left the Iwahori")
        return cls(tower, central, h, parity)

    def ord_det(self) -> int:
        return 2 * self.central + self.parity

    def matrix(self) -> Mat2:
        t = self.tower
        g = self.h.scale(t.varpi_pow(self.central))
        if self.parity:
            g = g * iota(t, t.pi_pow(1))
        return g


class TwistedAction:
    """Coordinate form of x -> g x (pi,0)-translate^{-ord det g}."""

    __slots__ = ("tower", "gn", "_x_shift", "_den_c", "_num_c", "_det",
                 "_ceps")

    def __init__(self, tower: Tower, gn: GNormalized):
        t = tower
        self.tower = t
        self.gn = gn
        self._det = gn.h.det()
        self._ceps = t.eps.pow(gn.central)
        if gn.parity:
            self._x_shift = t.eps0.shift(t.d)      # a' + 1 + eps
            self._num_c = gn.h.e22 * t.eps.shift(1)
            self._den_c = gn.h.e12 * t.eps.shift(1)

    def apply_a(self, a: TruncatedSeries, a_prime: TruncatedSeries):
        """Returns (new a, multiplier u with C -> u*C)."""
        t = self.tower
        gn = self.gn
        if gn.parity == 0:
            den = gn.h.e12 * a + gn.h.e11
            if den.ord() != 0:
                raise DomainError("twisted action denominator is not a unit")
            dinv = den.inv("twisted action denominator")
            new_a = (gn.h.e22 * a + gn.h.e21) * dinv
            mult = self._det * dinv
        else:
            x = a_prime + self._x_shift
            den = self._den_c + gn.h.e11 * x
            if den.ord() != 0:
                raise DomainError("twisted action denominator is not a unit")
            dinv = den.inv("twisted action denominator")
            new_a = (self._num_c + gn.h.e21 * x) * dinv
            mult = self._det * t.eps * dinv
        if gn.central:
            mult = mult * self._ceps
        return new_a, mult

    def apply(self, p: ADLVPoint) -> ADLVPoint:
        new_a, mult = self.apply_a(p.a, p.a_prime())
        return ADLVPoint.make(self.tower, new_a, p.c_unit.rep * mult)


def act_twisted(tower: Tower, gn: GNormalized, p: ADLVPoint) -> ADLVPoint:
    return TwistedAction(tower, gn).apply(p)


def solve_right_translation(tower: Tower, base: ADLVPoint,
                            target: ADLVPoint):
    """The unique integral stabilizer element with base * gamma = target,
    or None when the two points lie in different fibers."""
    t = tower
    if base.fiber_key() != target.fiber_key():
        return None
    half = (t.d + 1) // 2
    w = (target.a + base.a).shift(-(t.n + t.d + 1))
    r_ser = base.r_series()
    rinv = r_ser.inv("point coordinate R")
    hinv = t.one() + (w * rinv).shift(t.n)
    h = hinv.inv("torsor solve correction")
    c0 = base.c_unit.rep
    r = (w * t.eps.pow(half) * t.tau(c0) * c0.inv("coordinate C")
         * rinv * h)
    tt = target.c_unit.rep * c0.inv("coordinate C") * h
    gamma = StabElement(t, tt, r)
    check = act_right(t, gamma, base)
    if check.key() != target.key():
        raise DomainError("torsor solve failed to reproduce the target")
    return gamma


def orbit_basepoints(tower: Tower) -> dict:
    """One canonical basepoint per fiber of the map a -> a mod p^{n+d+1}."""
    bps = tower._cache.get("orbit_basepoints")
    if bps is None:
        t = tower
        bps = {}
        for head in itertools.product(t.field.elements(),
                                      repeat=t.n + t.d - 1):
            for c0 in t.field.units():
                a = t.from_coeffs(1, (c0,) + head)
                p = ADLVPoint.make(t, a, t.one())
                bps[p.fiber_key()] = p
        tower._cache["orbit_basepoints"] = bps
    return bps
