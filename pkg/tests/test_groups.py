import itertools

import pytest

from wildtrace.gl2 import in_level, wdot, mat_tau, double_coset_member
from wildtrace.groups import (ClosureError, Pushout, StabClass, StabElement,
                              additive_section, pushout_iso,
                              pushout_iso_inv, stab_extract,
                              stab_torsion_elements)
from wildtrace.sampling import rand_add, rand_stab, rand_unit


def test_identity_and_inverse(tower_a, rng):
    t = tower_a
    iden = StabClass.identity(t)
    for _ in range(20):
        g = rand_stab(t, rng).bar()
        assert g.mul(iden).key() == g.key()
        assert g.mul(g.inv()).key() == iden.key()


def test_diagonal_subgroup_law(tower_a, rng):
    t = tower_a
    for _ in range(20):
        u, v = rand_unit(t, rng), rand_unit(t, rng)
        lhs = StabClass.make(t, u, t.zero()).mul(
            StabClass.make(t, v, t.zero()))
        assert lhs.key() == StabClass.make(t, u * v, t.zero()).key()


def test_square_law(tower_a, rng):
    # (1, r)^2 = (1 + pi^{2n} r^2, 0)
    t = tower_a
    for _ in range(20):
        r = rand_add(t, rng, 0, t.m + 2)
        g = StabClass.make(t, t.one(), r)
        sq = g.mul(g)
        expect = StabClass.make(
            t, t.one() + (r * r).shift(2 * t.n), t.zero())
        assert sq.key() == expect.key()


def test_closure_error_on_garbage(tower_a):
    t = tower_a
    from wildtrace.gl2 import Mat2
    bad = Mat2(t.one(), t.zero(), t.pi_pow(1), t.one())  # e_-(pi)
    with pytest.raises(ClosureError):
        stab_extract(t, bad)


def test_matrix_and_closed_law_agree_exhaustively(tower_a):
    t = tower_a
    tors = list(stab_torsion_elements(t))
    assert len(tors) == (t.q - 1) * t.q ** (t.m + t.d)
    for g1, g2 in itertools.product(tors, tors):
        e1 = StabElement(t, g1.t.series(), g1.rbar.rep)
        e2 = StabElement(t, g2.t.series(), g2.rbar.rep)
        rhs = stab_extract(t, e1.matrix() * e2.matrix()).bar()
        assert g1.mul(g2).key() == rhs.key()


def test_stabilizer_defining_property(tower_d, rng):
    t = tower_d
    w = wdot(t)
    for _ in range(50):
        m = rand_stab(t, rng).matrix()
        assert double_coset_member(t, m.inv() * w * mat_tau(t, m))


def test_pushout_canonicalization(tower_a, rng):
    t = tower_a
    for _ in range(20):
        x = rand_unit(t, rng)
        y = rand_add(t, rng, t.n, t.m + 2 - t.n)
        tail = rand_add(t, rng, t.n + t.d, 4)
        # (x, y) ~ (x(1+z), y+z) for z in p^{n+d}
        p1 = Pushout.make(t, x, y)
        p2 = Pushout.make(t, x * (t.one() + tail), y + tail)
        assert p1.key() == p2.key()
        assert pushout_iso(p1).key() == pushout_iso(p2).key()


def test_pushout_iso_values(tower_a):
    t = tower_a
    assert (pushout_iso(Pushout.identity(t)).key()
            == StabClass.identity(t).key())
    p = Pushout.make(t, t.pi_pow(1), t.zero())
    assert pushout_iso(p).key() == StabClass.make(
        t, t.pi_pow(1), t.zero()).key()


def test_pushout_iso_bijective_hom_exhaustive_small(tower_a, rng):
    t = tower_a
    xs = [u.shift(k) for k in (-1, 0, 1) for u in t.unit_reps(t.m + 1)]
    ys = list(t.add_reps(t.n, t.n + t.d))
    pis = [Pushout.make(t, x, y) for x in xs for y in ys]
    images = {pushout_iso(p).key() for p in pis}
    assert len(images) == len(pis)
    for p1, p2 in itertools.product(pis, pis):
        assert (pushout_iso(p1.mul(p2)).key()
                == pushout_iso(p1).mul(pushout_iso(p2)).key())
    for p in pis:
        assert pushout_iso_inv(pushout_iso(p)).key() == p.key()


def test_pushout_iso_random_large(tower_c, rng):
    t = tower_c
    def rand_p():
        x = rand_unit(t, rng, t.m + 2).shift(rng.randrange(-2, 3))
        y = rand_add(t, rng, t.n, t.m + 2 - t.n)
        return Pushout.make(t, x, y)
    pis = [rand_p() for _ in range(100)]
    for _ in range(10000):
        p1 = pis[rng.randrange(100)]
        p2 = pis[rng.randrange(100)]
        assert (pushout_iso(p1.mul(p2)).key()
                == pushout_iso(p1).mul(pushout_iso(p2)).key())


def test_additive_section_exhaustive(tower_a):
    t = tower_a
    xs = list(t.add_reps(0, t.n + t.d))
    assert len(xs) == t.q ** 2
    for x, y in itertools.product(xs, xs):
        assert (additive_section(t, x).mul(additive_section(t, y)).key()
                == additive_section(t, x + y).key())
    assert (additive_section(t, t.zero()).key()
            == StabClass.identity(t).key())


def test_section_squares_to_identity(tower_a, rng):
    # i_x^2 = i_{2x} = identity in characteristic two
    t = tower_a
    for _ in range(10):
        x = rand_add(t, rng, 0, t.n + t.d)
        g = additive_section(t, x)
        assert g.mul(g).key() == StabClass.identity(t).key()
