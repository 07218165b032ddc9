import pytest

from wildtrace import build_tower
from wildtrace.algebra import DomainError
from wildtrace.sampling import rand_star, rand_unit
from wildtrace.tower import AddClass, EStarClass, UnitClass, solve_alpha


def test_parameter_validation():
    with pytest.raises(DomainError):
        build_tower(1, 2, 1)        # even d
    with pytest.raises(DomainError):
        build_tower(1, 3, 1)        # 2n <= d
    with pytest.raises(DomainError):
        build_tower(1, 1, 1, n_work=3)


def test_derived_integers_a(tower_a):
    t = tower_a
    assert (t.m, t.delta_exp, t.ell, t.ell_parity) == (2, 1, 1, 1)
    assert (t.eps + t.one()).ord() == t.d
    assert t.eps0.ord() == 0


def test_varpi_leading_term_d1(tower_a):
    # ord(Delta*pi) = d+2 > 2, so varpi starts at pi^2
    assert tower_a.varpi.ord() == 2
    assert tower_a.varpi.leading == 1


def test_eps0_formula_d3(tower_c):
    t = tower_c
    assert t.m == 6
    assert t.eps0.eq_mod(t.delta.shift(-4), t.n_work - 4)


def test_tau_examples(tower_a):
    t = tower_a
    pi = t.pi_pow(1)
    assert t.tau(pi).eq_mod(pi + t.delta, t.n_work)
    assert t.tau(t.varpi).eq_mod(t.varpi, t.n_work)
    x = t.from_coeffs(0, (1, 1, 0, 0, 0, 1))
    assert t.tau(t.tau(x)).eq_mod(x, t.n_work - 2)


def test_norm_and_trace(tower_a):
    t = tower_a
    assert t.norm(t.pi_pow(1)).eq_mod(t.varpi, t.n_work)
    for c in t.field.units():
        assert t.trace_ef(t.scalar(c)).is_zero


def test_unit_ratio_in_higher_units(tower_b, rng):
    t = tower_b
    for k in range(0, 4):
        for _ in range(40):
            x = (t.one() + rand_star(t, rng, k)) if k else rand_unit(t, rng)
            ratio = x.inv() * t.tau(x) + t.one()
            assert ratio.is_zero or ratio.val >= k + t.d


def test_alternative_delta_unit():
    t = build_tower(1, 1, 1, delta_unit=(1, 1))
    pi = t.pi_pow(1)
    assert (t.pi_pow(2) + t.delta.shift(1) + t.varpi).eq_mod(
        t.zero(), t.n_work)
    assert t.norm(pi).eq_mod(t.varpi, t.n_work)
    assert (t.eps + t.one()).ord() == t.d


def test_split_components(tower_a, rng):
    t = tower_a
    for _ in range(25):
        x = rand_star(t, rng, rng.randrange(-3, 3))
        x0, x1 = t.split_ef(x)
        assert t.in_f(x0, x0.prec - 2) and t.in_f(x1, x1.prec - 2)
        recon = x0 + x1.shift(1)
        assert recon.eq_mod(x, min(recon.prec, x.prec))


def test_psi_level_one(tower_a, tower_b):
    for t in (tower_a, tower_b):
        # trivial on p_F
        assert all(t.psi(t.varpi_pow(j)) == 1 for j in (1, 2, 3))
        # nontrivial on O_F
        assert any(t.psi(t.scalar(c)) == -1 for c in t.field.units())
        # additivity
        x, y = t.f_element(0, (1, 1)), t.f_element(-1, (1, 0, 1))
        assert t.psi(x + y) == t.psi(x) * t.psi(y)


def test_quotient_class_moduli(tower_a):
    t = tower_a
    u = UnitClass(t, t.one() + t.pi_pow(1), 3)
    v = UnitClass(t, t.one(), 2)
    with pytest.raises(DomainError):
        u.mul(v)
    a = AddClass(t, t.pi_pow(1), 1, 3)
    b = AddClass(t, t.pi_pow(1), 1, 4)
    with pytest.raises(DomainError):
        a.add(b)
    e = EStarClass.from_series(t, t.pi_pow(2) + t.pi_pow(3), t.m + 1)
    assert e.v == 2 and e.mul(e.inv()).key() == (0, t.one().window(0, 3))


def test_solve_alpha_roundtrip(tower_a, rng):
    t = tower_a
    lo, hi = -(t.m + t.d), -(t.n + t.d - 1)
    for _ in range(10):
        coeffs = [rng.randrange(t.q) for _ in range(hi - lo)]
        alpha0 = t.from_coeffs(lo, coeffs)

        def chi(y):
            return t.psi(t.trace_ef(alpha0 * y))

        got = solve_alpha(t, chi)
        assert got.key() == AddClass(t, alpha0, lo, hi).key()


def test_solve_alpha_trivial_character(tower_a):
    t = tower_a
    got = solve_alpha(t, lambda y: 1)
    assert not any(got.key())


def test_solve_alpha_rejects_corrupt_input(tower_a):
    t = tower_a

    def broken(y):
        # not a character: violates bi-additivity of the pairing
        return -1 if y.window(t.n, t.m + 1) == (1, 0) else 1

    with pytest.raises(DomainError):
        solve_alpha(t, broken)


def test_pairing_matrix_square_invertible(tower_a):
    # both sides of the duality have the same F_2-dimension and the pairing
    # matrix is invertible: every character is hit exactly once
    t = tower_a
    seen = set()
    for cs in _all_vectors(t):
        alpha = t.from_coeffs(-(t.m + t.d), cs)
        key = tuple(t.psi(t.trace_ef(alpha * t.pi_pow(i)))
                    for i in range(t.n, t.m + 1))
        seen.add(key)
    assert len(seen) == t.q ** (t.m - t.n + 1)


def _all_vectors(t):
    import itertools
    width = t.m - t.n + 1
    return itertools.product(t.field.elements(), repeat=width)
