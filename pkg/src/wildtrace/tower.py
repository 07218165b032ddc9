"""The wildly ramified quadratic tower E/F in characteristic two.

E = k((pi)) over F = k((varpi)) with pi^2 + Delta*pi + varpi = 0 for a fixed
Delta of F-valuation (d+1)/2.  Everything downstream works single-uniformizer:
F-elements are expanded in pi once at construction time, and the nontrivial
Galois substitution pi -> pi + Delta is evaluated through cached powers.

Also here: the filtration quotient classes (unit classes, additive classes,
classes of E^x modulo higher units), the fixed level-one additive character
of F, and the F_2-linear solver that inverts the additive duality pairing.
"""

from __future__ import annotations

import itertools

from .algebra import (DomainError, Fq, PrecisionError, TruncatedSeries,
                      monomial, zero)


class ConstructionError(RuntimeError):
    """Tower construction failed to stabilize (indicates a precision bug)."""


class Tower:
    """Arithmetic context for one choice of (f, d, n).

    Derived data: q = 2^f, m = 2n + d - 1 (even), the pi-expansions of varpi
    and Delta, eps = tau(pi)/pi = 1 + pi^d * eps0, and the small integers
    delta_exp = n mod 2, ell = floor((n+d+1)/2), ell_parity = ell mod 2.
    """

    def __init__(self, f: int, d: int, n: int, n_work: int | None = None,
                 delta_unit: tuple = (1,)):
        if d <= 0 or d % 2 == 0:
            raise DomainError(f"d must be odd and positive, got d={d}")
        if n <= 0:
            raise DomainError(f"n must be positive, got n={n}")
        if 2 * n <= d:
            raise DomainError(f"2n > d required, got n={n}, d={d}")
        self.f = f
        self.field = Fq(f)
        self.q = self.field.q
        self.d = d
        self.n = n
        self.m = 2 * n + d - 1
        if self.m % 2 != 0 or self.m <= d:
            raise AssertionError("m = 2n+d-1 must be even and exceed d")
        floor = 2 * (n + d + self.m + 1) + 2 * (d + 1)
        if n_work is None:
            n_work = floor
        if n_work < floor:
            raise DomainError(
                f"working precision {n_work} below the minimum {floor} "
                f"required at (d={d}, n={n})")
        self.n_work = n_work
        if not delta_unit or delta_unit[0] == 0:
            raise DomainError("delta unit multiplier must have nonzero "
                              "constant term")
        self.delta_unit = tuple(delta_unit)

        self.delta_exp = n % 2
        self.ell = (n + d + 1) // 2
        self.ell_parity = self.ell % 2

        self._spow = {}
        self._wpow = {}
        self._cache = {}
        self._build()

    # -- construction ------------------------------------------------------

    def pi_pow(self, k: int, c: int = 1) -> TruncatedSeries:
        return monomial(self.field, "pi", k, self.n_work, c)

    def one(self) -> TruncatedSeries:
        return self.pi_pow(0)

    def scalar(self, c: int) -> TruncatedSeries:
        return self.pi_pow(0, c) if c else zero(self.field, "pi", self.n_work)

    def zero(self, prec: int | None = None) -> TruncatedSeries:
        return zero(self.field, "pi", self.n_work if prec is None else prec)

    def from_coeffs(self, val: int, coeffs,
                    prec: int | None = None) -> TruncatedSeries:
        if prec is None:
            prec = val + self.n_work
        return TruncatedSeries(self.field, "pi", val, coeffs, prec)

    def _build(self):
        half = (self.d + 1) // 2
        pi2 = self.pi_pow(2)
        delta = self.zero(2 + self.n_work)
        for _ in range(self.n_work):
            varpi = pi2 + delta.shift(1)
            unit = self.scalar(self.delta_unit[-1])
            for c in reversed(self.delta_unit[:-1]):
                unit = unit * varpi + self.scalar(c)
            new = unit * varpi.pow(half)
            if new.eq_mod(delta, self.n_work):
                delta = new
                break
            delta = new
        else:
            raise ConstructionError(
                "uniformizer expansion did not stabilize; the iteration is a "
                "pi-adic contraction and must converge at this precision")
        self.delta = delta
        self.varpi = pi2 + delta.shift(1)
        if self.delta.ord() != self.d + 1:
            raise ConstructionError("Delta does not have E-valuation d+1")
        self.eps0 = self.delta.shift(-(self.d + 1))
        self.eps = self.one() + self.delta.shift(-1)
        e1 = self.eps + self.one()
        if e1.ord() != self.d or self.eps0.ord() != 0:
            raise ConstructionError("eps is not in U^d minus U^{d+1}")
        # record of Delta as a series in varpi (the construction input)
        self.delta_F = TruncatedSeries(self.field, "varpi", half,
                                       self.delta_unit, half + self.n_work)

    # -- Galois action, norm, trace ----------------------------------------

    def tau_pow(self, k: int) -> TruncatedSeries:
        """tau(pi)^k = (pi + Delta)^k, cached."""
        s = self._spow.get(k)
        if s is None:
            if k == 0:
                s = self.one()
            elif k == 1:
                s = self.pi_pow(1) + self.delta
            elif k > 1:
                s = self.tau_pow(k - 1) * self.tau_pow(1)
            else:
                s = self.tau_pow(k + 1) * self.tau_pow(1).inv("tau(pi)")
            self._spow[k] = s
        return s

    def tau(self, x: TruncatedSeries) -> TruncatedSeries:
        """The nontrivial Galois substitution pi -> pi + Delta."""
        if x.tag != "pi":
            raise DomainError("tau acts on pi-expansions")
        res = self.zero(x.prec)
        for i, c in enumerate(x.coeffs):
            if c:
                res = res + self.tau_pow(x.val + i).scale(c)
        return res

    def norm(self, x: TruncatedSeries) -> TruncatedSeries:
        return x * self.tau(x)

    def trace_ef(self, x: TruncatedSeries) -> TruncatedSeries:
        return x + self.tau(x)

    def varpi_pow(self, j: int) -> TruncatedSeries:
        s = self._wpow.get(j)
        if s is None:
            if j == 0:
                s = self.one()
            elif j > 0:
                s = self.varpi_pow(j - 1) * self.varpi
            else:
                s = self.varpi_pow(j + 1) * self.varpi.inv("varpi")
            self._wpow[j] = s
        return s

    # -- F-structure --------------------------------------------------------

    def split_ef(self, x: TruncatedSeries):
        """Write x = x0 + pi*x1 with x0, x1 in F (both returned in pi-form)."""
        x0 = self.zero(x.prec)
        x1 = self.zero(x.prec)
        rem = x
        while not rem.is_zero:
            v = rem.val
            c = rem.leading
            if v % 2 == 0:
                term = self.varpi_pow(v // 2).scale(c)
                x0 = x0 + term
                rem = rem + term
            else:
                base = self.varpi_pow((v - 1) // 2).scale(c)
                x1 = x1 + base
                rem = rem + base.shift(1)
        return x0, x1

    def base_coeff0(self, x: TruncatedSeries) -> int:
        """The varpi^0-coefficient of an F-element given in pi-form."""
        if x.prec < 1:
            raise PrecisionError("constant term not covered by precision")
        rem = x
        while not rem.is_zero and rem.val < 1:
            v = rem.val
            if v % 2:
                raise DomainError("argument is not fixed by the involution")
            j = v // 2
            c = rem.leading
            if j == 0:
                return c
            rem = rem + self.varpi_pow(j).scale(c)
        return 0

    def psi(self, x: TruncatedSeries) -> int:
        """The fixed level-one additive character of F, valued in {+1, -1}.

        psi(x) = (-1)^{Tr(c0)} where c0 is the varpi^0-coefficient: trivial
        on p_F, nontrivial on O_F.
        """
        return -1 if self.field.trace_to_f2(self.base_coeff0(x)) else 1

    def in_f(self, x: TruncatedSeries, upto: int | None = None) -> bool:
        """True iff x is fixed by tau to precision (a strict F-test)."""
        n = min(x.prec, self.n_work if upto is None else upto)
        return self.tau(x).eq_mod(x, n)

    def varpi_coeffs(self, x: TruncatedSeries, lo: int, hi: int) -> tuple:
        """Coefficients of varpi^lo .. varpi^(hi-1) of an F-element."""
        out = [0] * (hi - lo)
        rem = x
        while not rem.is_zero and rem.val < 2 * hi:
            v = rem.val
            if v % 2:
                raise DomainError("argument is not fixed by the involution")
            j = v // 2
            c = rem.leading
            if j < lo:
                raise DomainError("valuation below the requested floor")
            out[j - lo] = c
            rem = rem + self.varpi_pow(j).scale(c)
        return tuple(out)

    # -- quotient enumerations ----------------------------------------------

    def unit_reps(self, j: int):
        """Canonical representatives of U_E/U_E^j (coefficients 0..j-1)."""
        for c0 in self.field.units():
            for rest in itertools.product(self.field.elements(), repeat=j - 1):
                yield self.from_coeffs(0, (c0,) + rest)

    def add_reps(self, lo: int, hi: int):
        """Representatives of p_E^lo / p_E^hi."""
        for cs in itertools.product(self.field.elements(), repeat=hi - lo):
            yield self.from_coeffs(lo, cs)

    def star_reps(self, lo: int, hi: int):
        """Representatives of (p_E^lo / p_E^hi)^* (valuation exactly lo)."""
        for c0 in self.field.units():
            for rest in itertools.product(self.field.elements(),
                                          repeat=hi - lo - 1):
                yield self.from_coeffs(lo, (c0,) + rest)

    def f_element(self, lo: int, coeffs) -> TruncatedSeries:
        """sum coeffs[i] * varpi^(lo+i), in pi-form."""
        acc = self.zero()
        for i, c in enumerate(coeffs):
            if c:
                acc = acc + self.varpi_pow(lo + i).scale(c)
        return acc

    def unit_reps_f(self, s: int):
        """Representatives of U_F/U_F^s as varpi-polynomials."""
        for c0 in self.field.units():
            for rest in itertools.product(self.field.elements(), repeat=s - 1):
                yield self.f_element(0, (c0,) + rest)

    def add_reps_f(self, lo: int, hi: int):
        """Representatives of p_F^lo / p_F^hi as varpi-polynomials."""
        for cs in itertools.product(self.field.elements(), repeat=hi - lo):
            yield self.f_element(lo, cs)


def build_tower(f: int, d: int, n: int, n_work: int | None = None,
                delta_unit: tuple = (1,)) -> Tower:
    return Tower(f, d, n, n_work=n_work, delta_unit=delta_unit)


# -- filtration quotient classes --------------------------------------------


class UnitClass:
    """A class in U_E/U_E^j, carried by a representative of valuation 0."""

    __slots__ = ("tower", "level", "rep")

    def __init__(self, tower: Tower, rep: TruncatedSeries, level: int):
        if rep.ord() != 0:
            raise DomainError("unit class representative must have "
                              "valuation zero")
        if rep.prec < level:
            raise PrecisionError("representative precision below the "
                                 "class modulus")
        self.tower = tower
        self.level = level
        self.rep = rep

    def key(self) -> tuple:
        return self.rep.window(0, self.level)

    def _mate(self, other: "UnitClass"):
        if self.level != other.level:
            raise DomainError("unit classes of different moduli")

    def mul(self, other: "UnitClass") -> "UnitClass":
        self._mate(other)
        return UnitClass(self.tower, self.rep * other.rep, self.level)

    def inv(self) -> "UnitClass":
        return UnitClass(self.tower, self.rep.inv("unit class"), self.level)

    def pow(self, k: int) -> "UnitClass":
        return UnitClass(self.tower, self.rep.pow(k), self.level)

    def __eq__(self, other):
        return (isinstance(other, UnitClass) and self.level == other.level
                and self.key() == other.key())

    def __hash__(self):
        return hash((self.level, self.key()))

    def __repr__(self):
        return f"UnitClass({self.rep!r} mod U^{self.level})"


class AddClass:
    """A class in p_E^a / p_E^b."""

    __slots__ = ("tower", "lo", "hi", "rep")

    def __init__(self, tower: Tower, rep: TruncatedSeries, lo: int, hi: int):
        if lo >= hi:
            raise DomainError("additive class needs a < b")
        if not rep.is_zero and rep.val < lo:
            raise DomainError("representative valuation below the class "
                              "floor")
        if rep.prec < hi:
            raise PrecisionError("representative precision below the "
                                 "class modulus")
        self.tower = tower
        self.lo = lo
        self.hi = hi
        self.rep = rep

    def key(self) -> tuple:
        return self.rep.window(self.lo, self.hi)

    def is_star(self) -> bool:
        """True iff the class has valuation exactly lo."""
        return self.rep.coeff(self.lo) != 0

    def add(self, other: "AddClass") -> "AddClass":
        if (self.lo, self.hi) != (other.lo, other.hi):
            raise DomainError("additive classes of different moduli")
        return AddClass(self.tower, self.rep + other.rep, self.lo, self.hi)

    def __eq__(self, other):
        return (isinstance(other, AddClass)
                and (self.lo, self.hi) == (other.lo, other.hi)
                and self.key() == other.key())

    def __hash__(self):
        return hash((self.lo, self.hi, self.key()))

    def __repr__(self):
        return f"AddClass({self.rep!r} in p^{self.lo}/p^{self.hi})"


class EStarClass:
    """A class pi^v * u in E^x / U_E^j."""

    __slots__ = ("tower", "v", "unit")

    def __init__(self, tower: Tower, v: int, unit: UnitClass):
        self.tower = tower
        self.v = v
        self.unit = unit

    @classmethod
    def from_series(cls, tower: Tower, x: TruncatedSeries,
                    level: int) -> "EStarClass":
        v = x.ord()
        if v is None:
            raise DomainError("zero series has no class in E^x")
        return cls(tower, v, UnitClass(tower, x.shift(-v), level))

    @property
    def level(self) -> int:
        return self.unit.level

    def series(self) -> TruncatedSeries:
        return self.unit.rep.shift(self.v)

    def key(self) -> tuple:
        return (self.v, self.unit.key())

    def mul(self, other: "EStarClass") -> "EStarClass":
        return EStarClass(self.tower, self.v + other.v,
                          self.unit.mul(other.unit))

    def inv(self) -> "EStarClass":
        return EStarClass(self.tower, -self.v, self.unit.inv())

    def pow(self, k: int) -> "EStarClass":
        return EStarClass(self.tower, self.v * k, self.unit.pow(k))

    def __eq__(self, other):
        return (isinstance(other, EStarClass) and self.v == other.v
                and self.unit == other.unit)

    def __hash__(self):
        return hash((self.v, self.unit))

    def __repr__(self):
        return f"EStarClass(pi^{self.v} * {self.unit!r})"


# -- the additive duality solver ---------------------------------------------


def _pairing_bit(tower: Tower, s: int, c: int) -> int:
    """Tr-to-F_2 of the varpi^0-coefficient of c * tr_{E/F}(pi^s)."""
    cache = tower._cache.setdefault("trace_c0", {})
    t0 = cache.get(s)
    if t0 is None:
        t0 = tower.base_coeff0(tower.trace_ef(tower.pi_pow(s)))
        cache[s] = t0
    return tower.field.trace_to_f2(tower.field.mul(c, t0))


def solve_alpha(tower: Tower, chi) -> AddClass:
    """Invert the duality pairing: find alpha with psi(tr(alpha*y)) = chi(y).

    chi is a {+1,-1}-valued function on representatives of p^n/p^{m+1};
    alpha is returned as a class in p^{-(m+d)}/p^{-(n+d-1)}.  Raises
    DomainError when the F_2-linear system is inconsistent (a corrupted
    character; the pairing itself is perfect).
    """
    f = tower.f
    n, m, d = tower.n, tower.m, tower.d
    alpha_exps = range(-(m + d), -(n + d) + 1)
    y_exps = range(n, m + 1)
    cols = [(j, 1 << l) for j in alpha_exps for l in range(f)]
    ncols = len(cols)
    rows = []
    for i in y_exps:
        for l in range(f):
            c_y = 1 << l
            mask = 0
            for idx, (j, c_a) in enumerate(cols):
                if _pairing_bit(tower, i + j, tower.field.mul(c_y, c_a)):
                    mask |= 1 << idx
            val = chi(tower.pi_pow(i, c_y))
            if val not in (1, -1):
                raise DomainError("character is not {+1,-1}-valued")
            rows.append((mask, 1 if val == -1 else 0))
    # Gaussian elimination over F_2
    pivots = {}
    for mask, rhs in rows:
        for p in sorted(pivots):
            if (mask >> p) & 1:
                pm, pr = pivots[p]
                mask ^= pm
                rhs ^= pr
        if mask:
            p = (mask & -mask).bit_length() - 1
            pivots[p] = (mask, rhs)
        elif rhs:
            raise DomainError("not in the image of the duality pairing")
    sol = 0
    for p in sorted(pivots, reverse=True):
        pm, pr = pivots[p]
        bit = pr
        rest = pm & ~(1 << p)
        while rest:
            b = rest & -rest
            bit ^= (sol >> (b.bit_length() - 1)) & 1
            rest ^= b
        if bit:
            sol |= 1 << p
    alpha = tower.zero()
    for idx, (j, c_a) in enumerate(cols):
        if (sol >> idx) & 1:
            alpha = alpha + tower.pi_pow(j, c_a)
    return AddClass(tower, alpha, -(m + d), -(n + d - 1))
