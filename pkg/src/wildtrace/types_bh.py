"""The induced-type side: additive characters, the stratum element, and the
Mackey trace of the induced cuspidal type.

From a generic character of the abelianized stabilizer one extracts, through
the push-out isomorphism, a pair (theta, alpha): theta is the diagonal
restriction and alpha is the unique class in p^{-(m+d)}/p^{-(n+d-1)} whose
additive character psi(tr(alpha * .)) matches the character induced on the
additive leg of the push-out.  The character Lambda of iota(E^x) I_F^{n+d}
built from (theta, psi, alpha) then induces to the Iwahori, and its trace is
a plain Mackey sum over explicit coset representatives.
"""

from __future__ import annotations

from .algebra import DomainError, TruncatedSeries
from .chars import CharacterSpec, Cyclotomic, ThetaChar
from .gl2 import Mat2, e_plus, e_zero, factor_e_times_level, iota
from .groups import Pushout, pushout_iso
from .tower import AddClass, EStarClass, Tower, solve_alpha


class MembershipError(ValueError):
    """Argument lies outside the inducing subgroup."""


class AlphaSpec:
    """The stratum element alpha = alpha0 + pi*alpha1 with its matrix form."""

    __slots__ = ("tower", "series", "alpha0", "alpha1", "mat", "cls")

    def __init__(self, tower: Tower, cls: AddClass):
        t = tower
        if (cls.lo, cls.hi) != (-(t.m + t.d), -(t.n + t.d - 1)):
            raise DomainError("alpha class has the wrong moduli")
        self.tower = t
        self.cls = cls
        self.series = cls.rep
        self.alpha0, self.alpha1 = t.split_ef(self.series)
        self.mat = iota(t, self.series)

    def key(self) -> tuple:
        return self.cls.key()


def psi_e_alpha(tower: Tower, alpha: AlphaSpec,
                z: TruncatedSeries) -> int:
    """psi(tr_{E/F}(alpha * z)) for z in p^n/p^{m+1}, valued in {+1, -1}."""
    return tower.psi(tower.trace_ef(alpha.series * z))


def psi_e_alpha_closed(tower: Tower, alpha: AlphaSpec,
                       z: TruncatedSeries) -> int:
    """The closed form psi(Delta*(alpha1*z0 + alpha0*z1)) for
    z = z0 + pi*eps*z1 with z0, z1 in F."""
    t = tower
    # z = z0 + tau(pi) z1, so tau(z) = z0 + pi z1 splits in the plain basis
    z0, z1 = t.split_ef(t.tau(z))
    val = t.delta * (alpha.alpha1 * z0 + alpha.alpha0 * z1)
    return t.psi(val)


def extract_theta_alpha(tower: Tower, spec: CharacterSpec):
    """(theta, alpha) with the push-out transport of spec equal to the
    character (theta, psi(tr(alpha * .)))."""
    t = tower

    def chi(y):
        c = spec.eval(pushout_iso(Pushout.make(t, t.one(), y)))
        v = c.as_int()
        if v not in (1, -1):
            raise DomainError("additive leg of the transported character "
                              "is not {+1,-1}-valued")
        return v

    alpha_cls = solve_alpha(t, chi)
    return spec.diagonal(), AlphaSpec(t, alpha_cls)


class LambdaSpec:
    """The character of iota(E^x) I_F^{n+d} attached to (theta, psi, alpha).

    On a factorization h = iota(e) * j with j in the level-(n+d) subgroup,
    the value is theta(e) * psi(tr_M(iota(alpha) (j - 1))); the compatibility
    equation makes this independent of the factorization.
    """

    __slots__ = ("tower", "theta", "alpha")

    def __init__(self, tower: Tower, theta: ThetaChar, alpha: AlphaSpec):
        self.tower = tower
        self.theta = theta
        self.alpha = alpha

    def additive_part(self, j: Mat2) -> int:
        t = self.tower
        one = t.one()
        jm = Mat2(j.e11 + one, j.e12, j.e21, j.e22 + one)
        prod = self.alpha.mat * jm
        return t.psi(prod.trace())

    def eval_factored(self, e: TruncatedSeries, j: Mat2) -> Cyclotomic:
        val = self.theta.eval_series(e)
        if self.additive_part(j) == -1:
            val = -val
        return val

    def eval(self, h: Mat2) -> Cyclotomic:
        t = self.tower
        fac = factor_e_times_level(t, h, t.n + t.d)
        if fac is None:
            raise MembershipError("element outside iota(E^x) I_F^{n+d}")
        return self.eval_factored(*fac)


def coset_representatives(tower: Tower):
    """Representatives diag(1, y) e_+(lambda) of the Mackey cosets.

    y runs over U_F/U_F^{(n+d+1-delta)/2} and lambda over
    O_F/p_F^{(n+d-1+delta)/2}, with fixed minimal-degree preimages.
    """
    t = tower
    reps = tower._cache.get("mackey_cosets")
    if reps is None:
        s_y = (t.n + t.d + 1 - t.delta_exp) // 2
        s_l = (t.n + t.d - 1 + t.delta_exp) // 2
        reps = []
        ys = list(t.unit_reps_f(s_y)) if s_y > 0 else [t.one()]
        ls = list(t.add_reps_f(0, s_l)) if s_l > 0 else [t.zero()]
        for y in ys:
            for lam in ls:
                r = e_zero(t, t.one(), y) * e_plus(t, lam)
                reps.append((y, lam, r, r.inv()))
        tower._cache["mackey_cosets"] = reps
    return reps


class MackeyProfile:
    """Character-independent Mackey data of one group element: for each
    contributing coset, the inducing-subgroup factorization of the
    conjugate."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = terms


def mackey_profile(tower: Tower, g: Mat2) -> MackeyProfile:
    t = tower
    terms = []
    for _y, _lam, r, rinv in coset_representatives(t):
        conj = r * g * rinv
        fac = factor_e_times_level(t, conj, t.n + t.d)
        if fac is not None:
            terms.append(fac)
    return MackeyProfile(terms)


def mackey_trace(tower: Tower, lam: LambdaSpec, g: Mat2 | None = None,
                 profile: MackeyProfile | None = None) -> Cyclotomic:
    """Sum of Lambda over the cosets whose conjugate lands in the inducing
    subgroup."""
    if profile is None:
        profile = mackey_profile(tower, g)
    acc = Cyclotomic.zero(lam.theta.order)
    for e, j in profile.terms:
        acc = acc + lam.eval_factored(e, j)
    return acc


def contributing_cosets(tower: Tower, g: Mat2):
    """(y, lambda) pairs whose conjugate lies in the inducing subgroup."""
    t = tower
    out = []
    for y, lam_, r, rinv in coset_representatives(t):
        if factor_e_times_level(t, r * g * rinv, t.n + t.d) is not None:
            out.append((y, lam_))
    return out


def compare_constructions(tower: Tower, spec: CharacterSpec, gs,
                          profiles=None) -> dict:
    """Exact trace comparison between the two realizations over a family
    of group elements.  Returns a report; any single mismatch is recorded
    with both values."""
    from .traces_geo import trace_formula

    t = tower
    theta, alpha = extract_theta_alpha(t, spec)
    lam = LambdaSpec(t, theta, alpha)
    mismatches = []
    checked_by_parity = {0: 0, 1: 0}
    for idx, g in enumerate(gs):
        mat = g.matrix() if hasattr(g, "matrix") else g
        if profiles is not None:
            geo_pr, mk_pr, parity = profiles[idx]
        else:
            geo_pr, mk_pr = None, None
            parity = (mat.det().ord() // 2) % 2
        geo = trace_formula(t, spec, mat if geo_pr is None else None,
                            profile=geo_pr)
        ind = mackey_trace(t, lam, mat if mk_pr is None else None,
                           profile=mk_pr)
        checked_by_parity[parity] += 1
        if geo != ind:
            mismatches.append((idx, geo, ind))
    return {
        "checked": sum(checked_by_parity.values()),
        "checked_odd": checked_by_parity[1],
        "checked_even": checked_by_parity[0],
        "mismatches": mismatches,
        "ok": not mismatches,
    }
