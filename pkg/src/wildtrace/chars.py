"""Exact cyclotomic values and characters of the finite quotients.

Trace values live in Z[zeta_M] for M the exponent of the torsion part of the
abelianized stabilizer; elements are canonical coefficient vectors modulo the
M-th cyclotomic polynomial over arbitrary-precision integers, so equality is
literal and division by q^m is an exact-divisibility assertion, never a
rounding step.
"""

from __future__ import annotations

import itertools
from math import gcd

from .algebra import DomainError
from .groups import StabClass, stab_torsion_elements
from .tower import EStarClass, Tower

_PHI_CACHE: dict[int, tuple] = {}
_XPOW_CACHE: dict[int, list] = {}


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod_exact(num, den):
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c % lead:
            raise AssertionError("inexact polynomial division")
        q = c // lead
        out[i - dn] = q
        if q:
            for j, y in enumerate(den):
                num[i - dn + j] -= q * y
    if any(num[:dn]):
        raise AssertionError("nonzero remainder in cyclotomic division")
    return out


def cyclotomic_polynomial(order: int) -> tuple:
    """Coefficients of the order-th cyclotomic polynomial (little-endian)."""
    phi = _PHI_CACHE.get(order)
    if phi is None:
        num = [0] * order + [1]
        num[0] = -1
        for d in range(1, order):
            if order % d == 0:
                num = _poly_divmod_exact(num, cyclotomic_polynomial(d))
        phi = tuple(num)
        _PHI_CACHE[order] = phi
    return phi


def _xpow(order: int) -> list:
    """x^j mod Phi_order for j = 0 .. max(order, 2 deg) - 1."""
    tab = _XPOW_CACHE.get(order)
    if tab is None:
        phi = cyclotomic_polynomial(order)
        deg = len(phi) - 1
        top = [-c for c in phi[:deg]]  # x^deg = top (monic)
        limit = max(order, 2 * deg)
        tab = []
        cur = [0] * deg
        if deg:
            cur[0] = 1
        for _ in range(limit):
            tab.append(tuple(cur))
            nxt = [0] * deg
            carry = cur[deg - 1]
            for i in range(deg - 1):
                nxt[i + 1] = cur[i]
            if carry:
                for i in range(deg):
                    nxt[i] += carry * top[i]
            cur = nxt
        _XPOW_CACHE[order] = tab
    return tab


class Cyclotomic:
    """An element of Z[zeta_M] in the canonical power basis mod Phi_M."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        deg = len(cyclotomic_polynomial(order)) - 1
        coeffs = list(coeffs)
        if len(coeffs) > deg:
            tab = _xpow(order)
            red = [0] * deg
            for i, c in enumerate(coeffs):
                if c:
                    row = tab[i]
                    for j in range(deg):
                        red[j] += c * row[j]
            coeffs = red
        else:
            coeffs = coeffs + [0] * (deg - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, order: int) -> "Cyclotomic":
        return cls(order, ())

    @classmethod
    def integer(cls, order: int, c: int) -> "Cyclotomic":
        return cls(order, (c,))

    @classmethod
    def zeta(cls, order: int, e: int = 1) -> "Cyclotomic":
        return cls(order, _xpow(order)[e % order])

    def _mate(self, other: "Cyclotomic"):
        if self.order != other.order:
            raise DomainError("cyclotomic elements of different orders")

    def __add__(self, other: "Cyclotomic") -> "Cyclotomic":
        self._mate(other)
        return Cyclotomic(self.order,
                          [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "Cyclotomic") -> "Cyclotomic":
        self._mate(other)
        return Cyclotomic(self.order,
                          [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.order, [-a for a in self.coeffs])

    def __mul__(self, other: "Cyclotomic") -> "Cyclotomic":
        self._mate(other)
        return Cyclotomic(self.order, _poly_mul(self.coeffs, other.coeffs))

    def scale(self, k: int) -> "Cyclotomic":
        return Cyclotomic(self.order, [k * a for a in self.coeffs])

    def galois(self, k: int) -> "Cyclotomic":
        """The automorphism zeta -> zeta^k for k prime to the order."""
        if gcd(k, self.order) != 1:
            raise DomainError("galois exponent not prime to the order")
        tab = _xpow(self.order)
        deg = len(self.coeffs)
        out = [0] * deg
        for i, c in enumerate(self.coeffs):
            if c:
                row = tab[(k * i) % self.order]
                for j in range(deg):
                    out[j] += c * row[j]
        return Cyclotomic(self.order, out)

    def conj(self) -> "Cyclotomic":
        return self.galois(self.order - 1)

    def divide_exact(self, k: int) -> "Cyclotomic":
        if any(c % k for c in self.coeffs):
            raise ArithmeticError(
                f"cyclotomic element not divisible by {k}")
        return Cyclotomic(self.order, [c // k for c in self.coeffs])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def as_int(self):
        """The rational integer value, or None if not rational."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def __eq__(self, other):
        return (isinstance(other, Cyclotomic) and self.order == other.order
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"Cyclotomic({self.order}, {list(self.coeffs)})"


# -- finite abelian structure -------------------------------------------------


class StructureError(RuntimeError):
    """The input is not a finite abelian group presented exhaustively."""


class AbelianStructure:
    """Elementary-divisor basis and discrete logs of a finite abelian group.

    Input is an exhaustive element list (hashable canonical keys), the
    multiplication on keys, and the identity key.  The basis is found by
    repeatedly splitting off a maximal-order element (in an abelian group an
    element of maximal order generates a direct summand), so the orders form
    a divisibility chain.
    """

    def __init__(self, elements, mul, identity):
        keys = sorted(set(elements))
        if identity not in set(keys):
            raise StructureError("identity key missing from the element list")
        self.mul = mul
        self.identity = identity
        self.size = len(keys)
        orders = {}
        for k in keys:
            o, cur = 1, k
            while cur != identity:
                cur = mul(cur, k)
                o += 1
                if o > self.size:
                    raise StructureError("element order exceeds group size; "
                                         "input is not closed")
            orders[k] = o
        self._orders = orders
        self.basis, self.orders = self._decompose(keys)
        self.exponent = self.orders[0] if self.orders else 1
        self.dlog = self._build_dlog()
        if len(self.dlog) != self.size:
            raise StructureError("basis does not span: input is likely "
                                 "non-abelian or not closed")

    def _decompose(self, keys):
        mul = self.mul
        basis, orders = [], []
        # coset structure relative to the span of chosen basis elements
        span = {self.identity}
        rep_of = {self.identity: self.identity}
        while len(span) < self.size:
            # maximal order in the quotient by the current span
            best, best_ord = None, 0
            cosets = {}
            for k in keys:
                if k in cosets:
                    continue
                coset = {mul(k, s) for s in span}
                for c in coset:
                    cosets[c] = k
                o, cur = 1, k
                while cur not in span:
                    cur = mul(cur, k)
                    o += 1
                if o > best_ord:
                    best, best_ord, best_tail = k, o, cur
            # adjust the lift so its order equals its quotient order:
            # best**best_ord lies in the span, and equals a product of
            # earlier basis powers whose exponents are divisible by best_ord
            # (orders form a divisibility chain).
            lift = best
            tail = best_tail
            vec = self._span_dlog(tail, basis, orders)
            for b, o_b, e in zip(basis, orders, vec):
                if e % best_ord:
                    raise StructureError("maximal-order split failed; "
                                         "input is not abelian")
                step = (-(e // best_ord)) % o_b
                cur = lift
                for _ in range(step):
                    cur = mul(cur, b)
                lift = cur
            basis.append(lift)
            orders.append(best_ord)
            new_span = set()
            for s in span:
                cur = s
                for _ in range(best_ord):
                    new_span.add(cur)
                    cur = mul(cur, lift)
            span = new_span
        return basis, orders

    def _span_dlog(self, key, basis, orders):
        for vec in itertools.product(*[range(o) for o in orders]):
            cur = self.identity
            for b, e in zip(basis, vec):
                for _ in range(e):
                    cur = self.mul(cur, b)
            if cur == key:
                return vec
        raise StructureError("element not in the span during decomposition")

    def _build_dlog(self):
        dlog = {}
        ranges = [range(o) for o in self.orders]
        for vec in itertools.product(*ranges) if self.orders else [()]:
            cur = self.identity
            for b, e in zip(self.basis, vec):
                for _ in range(e):
                    cur = self.mul(cur, b)
            if cur in dlog:
                raise StructureError("basis powers collide: input is not "
                                     "abelian or not closed")
            dlog[cur] = vec
        return dlog


# -- structures attached to a tower -------------------------------------------


def unit_structure(tower: Tower) -> AbelianStructure:
    """Structure of U_E/U_E^{m+1} under multiplication."""
    s = tower._cache.get("unit_structure")
    if s is None:
        level = tower.m + 1
        elems = {}
        for u in tower.unit_reps(level):
            elems[u.window(0, level)] = u
        def mul(a, b):
            return (elems[a] * elems[b]).window(0, level)
        s = AbelianStructure(list(elems), mul, tower.one().window(0, level))
        tower._cache["unit_structure"] = s
        tower._cache["unit_structure_elems"] = elems
    return s


def f_unit_structure(tower: Tower) -> AbelianStructure:
    """Structure of U_F/U_F^{m+1} under multiplication (varpi-levels)."""
    s = tower._cache.get("f_unit_structure")
    if s is None:
        level = tower.m + 1

        def key(x):
            return tower.varpi_coeffs(x, 0, level)

        elems = {}
        for u in tower.unit_reps_f(level):
            elems[key(u)] = u

        def mul(a, b):
            return key(elems[a] * elems[b])

        s = AbelianStructure(list(elems), mul, key(tower.one()))
        tower._cache["f_unit_structure"] = s
        tower._cache["f_unit_structure_elems"] = elems
    return s


def torsion_structure(tower: Tower) -> AbelianStructure:
    """Structure of the torsion subgroup of the abelianized stabilizer."""
    s = tower._cache.get("torsion_structure")
    if s is None:
        elems = {}
        for g in stab_torsion_elements(tower):
            elems[g.torsion_key()] = g

        def mul(a, b):
            return elems[a].mul(elems[b]).torsion_key()

        s = AbelianStructure(
            list(elems), mul,
            StabClass.identity(tower).torsion_key())
        tower._cache["torsion_structure"] = s
        tower._cache["torsion_elems"] = elems
    return s


def default_order(tower: Tower) -> int:
    """Value order M for characters: the torsion exponent."""
    return torsion_structure(tower).exponent


# -- characters ---------------------------------------------------------------


class SpecError(ValueError):
    """A character specification violates an order constraint."""


class ThetaChar:
    """A character of E^x/U_E^{m+1}.

    Determined by the zeta-exponent on the fixed uniformizer and by
    zeta-exponents on the basis of U_E/U_E^{m+1}.
    """

    __slots__ = ("tower", "order", "pi_exp", "unit_exps")

    def __init__(self, tower: Tower, order: int, pi_exp: int, unit_exps):
        st = unit_structure(tower)
        unit_exps = tuple(e % order for e in unit_exps)
        if len(unit_exps) != len(st.basis):
            raise SpecError("wrong number of unit-basis exponents")
        for e, o in zip(unit_exps, st.orders):
            if (e * o) % order:
                raise SpecError("character exponent incompatible with the "
                                "basis element order")
        self.tower = tower
        self.order = order
        self.pi_exp = pi_exp % order
        self.unit_exps = unit_exps

    def exp_on_unit_key(self, key) -> int:
        st = unit_structure(self.tower)
        vec = st.dlog[key]
        return sum(e * x for e, x in zip(self.unit_exps, vec)) % self.order

    def eval_class(self, c: EStarClass) -> Cyclotomic:
        e = (self.pi_exp * c.v
             + self.exp_on_unit_key(c.unit.key())) % self.order
        return Cyclotomic.zeta(self.order, e)

    def eval_series(self, x) -> Cyclotomic:
        return self.eval_class(
            EStarClass.from_series(self.tower, x, self.tower.m + 1))

    def level(self) -> int:
        t = self.tower
        for s in range(t.m, 0, -1):
            for c in t.field.units():
                u = t.one() + t.pi_pow(s, c)
                if self.exp_on_unit_key(u.window(0, t.m + 1)):
                    return s
        return 0


class CharacterSpec:
    """A character of the abelianized stabilizer.

    Fields: the value order M, the zeta-exponent on the free generator
    (the class of (pi, 0)), and zeta-exponents on the computed basis of the
    torsion subgroup.
    """

    __slots__ = ("tower", "order", "pi_exp", "torsion_exps")

    def __init__(self, tower: Tower, order: int, pi_exp: int, torsion_exps):
        st = torsion_structure(tower)
        torsion_exps = tuple(e % order for e in torsion_exps)
        if len(torsion_exps) != len(st.basis):
            raise SpecError("wrong number of torsion-basis exponents")
        for e, o in zip(torsion_exps, st.orders):
            if (e * o) % order:
                raise SpecError("character exponent incompatible with the "
                                "basis element order")
        self.tower = tower
        self.order = order
        self.pi_exp = pi_exp % order
        self.torsion_exps = torsion_exps

    def exp_on(self, g: StabClass) -> int:
        st = torsion_structure(self.tower)
        vec = st.dlog[g.torsion_key()]
        e = self.pi_exp * g.pi_exponent()
        e += sum(ei * x for ei, x in zip(self.torsion_exps, vec))
        return e % self.order

    def eval(self, g: StabClass) -> Cyclotomic:
        return Cyclotomic.zeta(self.order, self.exp_on(g))

    def diagonal(self) -> ThetaChar:
        """Restriction to the diagonal subgroup as a character of E^x."""
        t = self.tower
        st = unit_structure(t)
        elems = t._cache["unit_structure_elems"]
        exps = []
        for bkey in st.basis:
            g = StabClass.make(t, elems[bkey], t.zero())
            exps.append(self.exp_on(g))
        return ThetaChar(t, self.order, self.pi_exp, exps)

    def is_generic(self) -> bool:
        return self.diagonal().level() == self.tower.m

    # text format: one line each
    def to_text(self) -> str:
        return (f"order {self.order}\n"
                f"pi_exponent {self.pi_exp}\n"
                f"torsion_exponents "
                f"{','.join(str(e) for e in self.torsion_exps)}\n")

    @classmethod
    def from_text(cls, tower: Tower, text: str) -> "CharacterSpec":
        fields = {}
        for line in text.strip().splitlines():
            k, v = line.split(maxsplit=1)
            fields[k] = v
        order = int(fields["order"])
        pi_exp = int(fields["pi_exponent"])
        exps = [int(x) for x in fields["torsion_exponents"].split(",")]
        return cls(tower, order, pi_exp, exps)

    def __eq__(self, other):
        return (isinstance(other, CharacterSpec)
                and (self.order, self.pi_exp, self.torsion_exps)
                == (other.order, other.pi_exp, other.torsion_exps))

    def __hash__(self):
        return hash((self.order, self.pi_exp, self.torsion_exps))


def all_torsion_characters(tower: Tower, order: int):
    """All characters of the torsion subgroup, as exponent tuples."""
    st = torsion_structure(tower)
    ranges = [range(0, order, order // o) for o in st.orders]
    return itertools.product(*ranges)


def lift_characters(tower: Tower, theta: ThetaChar):
    """The q^d characters of the abelianized stabilizer restricting to theta.

    They form a torsor under the characters of the additive quotient
    O_E/p_E^d pulled back along the projection (t, rbar) -> rbar.
    """
    t = tower
    if theta.order != default_order(t):
        raise SpecError("value order mismatch between theta and the tower")
    ust = unit_structure(t)
    elems = t._cache["unit_structure_elems"]
    gens = [(StabClass.make(t, elems[k], t.zero()),
             theta.exp_on_unit_key(k)) for k in ust.basis]
    out = []
    for exps in all_torsion_characters(t, theta.order):
        cand = CharacterSpec(t, theta.order, theta.pi_exp, exps)
        if all(cand.exp_on(g) == e for g, e in gens):
            out.append(cand)
    expected = t.q ** t.d
    if len(out) != expected:
        raise SpecError(f"expected {expected} lifts, found {len(out)}")
    return out


def generic_thetas(tower: Tower):
    """All level-m characters of E^x/U^{m+1} with exponent 1 on pi,
    in deterministic enumeration order."""
    t = tower
    order = default_order(t)
    st = unit_structure(t)
    out = []
    for exps in itertools.product(*[range(0, order, order // o)
                                    for o in st.orders]):
        th = ThetaChar(t, order, 1, exps)
        if th.level() == t.m:
            out.append(th)
    return out


def generic_characters(tower: Tower):
    """All generic characters of the abelianized stabilizer (pi_exp = 1)."""
    out = []
    for th in generic_thetas(tower):
        out.extend(lift_characters(tower, th))
    return out
