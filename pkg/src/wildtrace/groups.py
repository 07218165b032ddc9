"""The group acting on the right of the twisted double coset.

Elements of the full stabilizer are pairs (t, r) with t in E^x/U_E^{m+1} and
r in O_E/p_E^m, realized as matrices

    (t, r)  ->  e_+(r) e_-(eps^n pi^{2n} tau(r) P^{-1}) e_0(t, tau(t) P^{-1})

with P = 1 + eps^n pi^{2n} r tau(r).  Under the standing assumptions
(m = 2n + d - 1 and 2n > d) the commutator subgroup is exactly the classes
with t = 1 and r in p^d, so the abelianized quotient has the closed-form law

    (t, rbar) * (t', ubar) = (t t' (1 + pi^{2n} r u), rbar + ubar),

which is the primary representation here; the matrix realization is kept as
a cross-check oracle.  The push-out model (E^x/U^{m+1} glued to p^n/p^{m+1}
along x -> 1+x on p^{n+d}) and the uniformizer-dependent isomorphism between
the two descriptions live at the bottom of the module.
"""

from __future__ import annotations

from .algebra import DomainError, TruncatedSeries
from .gl2 import Mat2, e_minus, e_plus, e_zero, in_level
from .tower import AddClass, EStarClass, Tower, UnitClass


class ClosureError(RuntimeError):
    """A matrix expected to lie in the stabilizer failed re-extraction."""


def norm_unit(tower: Tower, r: TruncatedSeries) -> TruncatedSeries:
    """P = 1 + eps^n pi^{2n} r tau(r)."""
    t = tower
    return t.one() + (t.eps.pow(t.n) * (r * t.tau(r))).shift(2 * t.n)


class StabElement:
    """A stabilizer element (t, r); the matrix realization is canonical."""

    __slots__ = ("tower", "t", "r")

    def __init__(self, tower: Tower, t: TruncatedSeries, r: TruncatedSeries):
        if t.is_zero:
            raise DomainError("t must be a nonzero class in E^x")
        self.tower = tower
        self.t = t
        self.r = r

    def matrix(self) -> Mat2:
        t = self.tower
        p_inv = norm_unit(t, self.r).inv("norm correction unit")
        lower = (t.eps.pow(t.n) * t.tau(self.r) * p_inv).shift(2 * t.n)
        return (e_plus(t, self.r) * e_minus(t, lower)
                * e_zero(t, self.t, t.tau(self.t) * p_inv))

    def mul(self, other: "StabElement") -> "StabElement":
        return stab_extract(self.tower, self.matrix() * other.matrix())

    def inv(self) -> "StabElement":
        return stab_extract(self.tower, self.matrix().inv())

    def bar(self) -> "StabClass":
        """Image in the abelianized quotient (valid since 2n + d >= m + 1)."""
        t = self.tower
        return StabClass(
            t, EStarClass.from_series(t, self.t, t.m + 1),
            AddClass(t, self.r, 0, t.d))

    def __repr__(self):
        return f"StabElement(t={self.t!r}, r={self.r!r})"


def stab_extract(tower: Tower, mat: Mat2) -> StabElement:
    """Recover (t, r) from a matrix, verifying the shape mod level 2m+1."""
    t2 = mat.e22
    if t2.is_zero:
        raise ClosureError("matrix is not of stabilizer shape")
    r = mat.e12 * t2.inv("stabilizer extraction")
    t1 = mat.e11 + r * mat.e21
    cand = StabElement(tower, t1, r)
    check = cand.matrix().inv() * mat
    if not in_level(tower, check, "E", 2 * tower.m + 1):
        raise ClosureError("matrix is not in the stabilizer modulo the "
                           "working level")
    return cand


class StabClass:
    """An element i(t, rbar) of the abelianized stabilizer."""

    __slots__ = ("tower", "t", "rbar")

    def __init__(self, tower: Tower, t: EStarClass, rbar: AddClass):
        if t.level != tower.m + 1 or (rbar.lo, rbar.hi) != (0, tower.d):
            raise DomainError("stabilizer class with wrong moduli")
        self.tower = tower
        self.t = t
        self.rbar = rbar

    @classmethod
    def make(cls, tower: Tower, t: TruncatedSeries,
             rbar: TruncatedSeries) -> "StabClass":
        return cls(tower, EStarClass.from_series(tower, t, tower.m + 1),
                   AddClass(tower, rbar, 0, tower.d))

    @classmethod
    def identity(cls, tower: Tower) -> "StabClass":
        return cls.make(tower, tower.one(), tower.zero())

    def key(self) -> tuple:
        return (self.t.key(), self.rbar.key())

    def torsion_key(self) -> tuple:
        """Key of the unit-part torsion component (drops the pi-exponent)."""
        return (self.t.unit.key(), self.rbar.key())

    def pi_exponent(self) -> int:
        return self.t.v

    def mul(self, other: "StabClass") -> "StabClass":
        t = self.tower
        corr = t.one() + (self.rbar.rep * other.rbar.rep).shift(2 * t.n)
        tt = self.t.mul(other.t).mul(
            EStarClass.from_series(t, corr, t.m + 1))
        return StabClass(t, tt, self.rbar.add(other.rbar))

    def inv(self) -> "StabClass":
        t = self.tower
        corr = t.one() + (self.rbar.rep * self.rbar.rep).shift(2 * t.n)
        tt = self.t.inv().mul(
            EStarClass.from_series(t, corr, t.m + 1).inv())
        return StabClass(t, tt, self.rbar)

    def pow(self, k: int) -> "StabClass":
        if k < 0:
            return self.inv().pow(-k)
        acc = StabClass.identity(self.tower)
        b = self
        while k:
            if k & 1:
                acc = acc.mul(b)
            b = b.mul(b)
            k >>= 1
        return acc

    def __eq__(self, other):
        return isinstance(other, StabClass) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"StabClass(t={self.t!r}, rbar={self.rbar!r})"


def stab_class_from_matrix(tower: Tower, mat: Mat2) -> StabClass:
    return stab_extract(tower, mat).bar()


# -- the push-out model ------------------------------------------------------


class Pushout:
    """The push-out of E^x/U^{m+1} and p^n/p^{m+1} along p^{n+d}/p^{m+1}.

    Canonical form: the tail of y in degrees >= n+d is moved into the
    multiplicative factor through (x, y) ~ (x(1+z), y+z), leaving y
    supported in degrees n .. n+d-1; equality is then componentwise.
    """

    __slots__ = ("tower", "x", "y")

    def __init__(self, tower: Tower, x: EStarClass, y: TruncatedSeries):
        cut = tower.n + tower.d
        if not y.is_zero and y.val < tower.n:
            raise DomainError("additive coordinate below p^n")
        tail = TruncatedSeries(tower.field, "pi", cut,
                               y.window(cut, tower.m + 1), tower.m + 1)
        if not tail.is_zero:
            x = x.mul(EStarClass.from_series(
                tower, tower.one() + tail, tower.m + 1))
        head = TruncatedSeries(tower.field, "pi", tower.n,
                               y.window(tower.n, cut), cut + tower.n_work)
        self.tower = tower
        self.x = x
        self.y = head

    @classmethod
    def make(cls, tower: Tower, x: TruncatedSeries,
             y: TruncatedSeries) -> "Pushout":
        return cls(tower, EStarClass.from_series(tower, x, tower.m + 1), y)

    @classmethod
    def identity(cls, tower: Tower) -> "Pushout":
        return cls.make(tower, tower.one(), tower.zero())

    def key(self) -> tuple:
        return (self.x.key(), self.y.window(self.tower.n,
                                            self.tower.n + self.tower.d))

    def mul(self, other: "Pushout") -> "Pushout":
        return Pushout(self.tower, self.x.mul(other.x), self.y + other.y)

    def inv(self) -> "Pushout":
        # the additive factor is 2-torsion
        return Pushout(self.tower, self.x.inv(), self.y)

    def __eq__(self, other):
        return isinstance(other, Pushout) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Pushout(x={self.x!r}, y={self.y!r})"


def pushout_iso(p: Pushout) -> StabClass:
    """The isomorphism onto the abelianized stabilizer.

    (x, y) -> ( x (1+y)^{-1},  (pi^{-n} y) (1 + ybar)^{-1} mod p^d ),
    depending only on the choice of the uniformizer mod U^d.
    """
    t = p.tower
    one = t.one()
    x_part = p.x.mul(EStarClass.from_series(
        t, (one + p.y).inv("1 + additive part"), t.m + 1))
    r_part = (p.y.shift(-t.n)) * (one + p.y).inv("1 + additive part")
    return StabClass(t, x_part, AddClass(t, r_part, 0, t.d))


def pushout_iso_inv(g: StabClass) -> Pushout:
    """Two-sided inverse of :func:`pushout_iso` on canonical forms."""
    t = g.tower
    rbar = g.rbar.rep
    # solve y = pi^n rbar (1 + y) by fixed point; gains n digits per pass
    y = t.zero()
    target = rbar.shift(t.n)
    for _ in range(t.m // t.n + 2):
        y = target * (t.one() + y)
    x = g.t.series() * (t.one() + y)
    return Pushout.make(t, x, y)


def additive_section(tower: Tower, x: TruncatedSeries) -> StabClass:
    """The homomorphism O/p^{n+d} -> stabilizer classes,

    x -> ( (1 + pi^n eps^{(d+1)/2} x)^{-1},  x (1 + pi^n x)^{-1} mod p^d ).
    """
    t = tower
    half = (t.d + 1) // 2
    t_part = (t.one()
              + (t.eps.pow(half) * x).shift(t.n)).inv("section unit")
    r_part = x * (t.one() + x.shift(t.n)).inv("section denominator")
    return StabClass.make(t, t_part, r_part)


def stab_torsion_elements(tower: Tower):
    """All classes i(u, rbar) with u a unit: the torsion subgroup."""
    for u in tower.unit_reps(tower.m + 1):
        for r in tower.add_reps(0, tower.d):
            yield StabClass.make(tower, u, r)
