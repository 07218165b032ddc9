"""Deterministic seeded samplers for the verification suites."""

from __future__ import annotations

import random

from .gl2 import Mat2, iota
from .groups import StabElement
from .tower import Tower


def rand_coeffs(rng: random.Random, tower: Tower, length: int,
                lead_unit: bool = False):
    cs = [rng.randrange(tower.q) for _ in range(length)]
    if lead_unit:
        cs[0] = rng.randrange(1, tower.q)
    return cs


def rand_unit(tower: Tower, rng: random.Random, support: int | None = None):
    """A random unit of E with bounded support and full working precision."""
    ln = support if support is not None else 2 * tower.m + 4
    return tower.from_coeffs(0, rand_coeffs(rng, tower, ln, lead_unit=True))


def rand_add(tower: Tower, rng: random.Random, lo: int,
             support: int | None = None):
    """A random element of p^lo (possibly zero) with bounded support."""
    ln = support if support is not None else 2 * tower.m + 4
    return tower.from_coeffs(lo, rand_coeffs(rng, tower, ln))


def rand_star(tower: Tower, rng: random.Random, lo: int,
              support: int | None = None):
    """A random element of valuation exactly lo."""
    ln = support if support is not None else 2 * tower.m + 4
    return tower.from_coeffs(lo, rand_coeffs(rng, tower, ln, lead_unit=True))


def rand_f_poly(tower: Tower, rng: random.Random, lo: int, length: int,
                lead_unit: bool = False):
    cs = rand_coeffs(rng, tower, length, lead_unit=lead_unit)
    return tower.f_element(lo, cs)


def rand_iwahori(tower: Tower, rng: random.Random) -> Mat2:
    """A random element of I_F (unit diagonal, integral upper, lower in p)."""
    t = tower
    ln = t.m + t.d + 3
    return Mat2(rand_f_poly(t, rng, 0, ln, lead_unit=True),
                rand_f_poly(t, rng, 0, ln),
                rand_f_poly(t, rng, 1, ln),
                rand_f_poly(t, rng, 0, ln, lead_unit=True))


def rand_level(tower: Tower, rng: random.Random, r: int) -> Mat2:
    """A random element of the level-r congruence subgroup of I_F."""
    t = tower
    ln = t.m + t.d + 3
    one = t.one()
    return Mat2(one + rand_f_poly(t, rng, (r + 1) // 2, ln),
                rand_f_poly(t, rng, r // 2, ln),
                rand_f_poly(t, rng, r // 2 + 1, ln),
                one + rand_f_poly(t, rng, (r + 1) // 2, ln))


def rand_torus_iwahori(tower: Tower, rng: random.Random,
                       vmin: int = -2, vmax: int = 3) -> Mat2:
    """A random element of iota(E^x) I_F."""
    t = tower
    v = rng.randrange(vmin, vmax)
    e = rand_star(t, rng, v)
    return iota(t, e) * rand_iwahori(t, rng)


def rand_normalized_odd(tower: Tower, rng: random.Random) -> Mat2:
    """u iota(1 + pi x) iota(pi) with u in the level-(n+d) subgroup and
    x an integer of F: the shape used for the headline comparison."""
    t = tower
    u = rand_level(t, rng, t.n + t.d)
    x = rand_f_poly(t, rng, 0, (t.m + 1) // 2 + 1)
    return u * iota(t, t.one() + x.shift(1)) * iota(t, t.pi_pow(1))


def rand_stab(tower: Tower, rng: random.Random,
              integral: bool = False) -> StabElement:
    """A random stabilizer element (t, r); integral forces t a unit."""
    t = tower
    v = 0 if integral else rng.randrange(-2, 3)
    tt = rand_unit(t, rng).shift(v)
    r = rand_add(t, rng, 0, t.m + 2)
    return StabElement(t, tt, r)
