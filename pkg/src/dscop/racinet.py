"""The twisted group of invertible two-letter series and its module actions.

All formulas are stored in the e-convention (e0, e1); the classical
x-convention enters only through `coeff_x` (x0 = e0, x1 = -e1), the
Gamma-series coefficients and the normalization constants of the membership
predicate.
"""

from dataclasses import dataclass
from fractions import Fraction

from .series import (E2, TruncSeries, UniSeries, coeff_x, eval_hom,
                     is_primitive, shuffle_coproduct)
from .walg import (YSeries, delta_star, is_delta_star_grouplike,
                   is_delta_star_primitive, lift_y, pi_y, y_log)


def a_g(g, h):
    """The automorphism x0 -> G x0 G^-1, x1 -> x1, applied to h (e-convention:
    e0 -> g e0 g^-1, e1 -> e1)."""
    images = {"e0": g * TruncSeries.letter(E2, g.cap, "e0") * g.inverse(),
              "e1": TruncSeries.letter(E2, g.cap, "e1")}
    return eval_hom(h, images, TruncSeries.one(E2, g.cap))


def a_tilde_g(g, h):
    """The companion automorphism x0 -> x0, x1 -> G^-1 x1 G."""
    images = {"e0": TruncSeries.letter(E2, g.cap, "e0"),
              "e1": g.inverse() * TruncSeries.letter(E2, g.cap, "e1") * g}
    return eval_hom(h, images, TruncSeries.one(E2, g.cap))


def circledast(g, h, check=True):
    """g * a_tilde_g(h); equal to a_g(h) * g, asserted when check is set."""
    left = g * a_tilde_g(g, h)
    if check:
        right = a_g(g, h) * g
        if left != right:
            raise AssertionError("the two defining expressions of the twisted product disagree")
    return left


def circledast_inv(g):
    """Twisted inverse, solved degree by degree from g (*) h = 1."""
    one = TruncSeries.one(E2, g.cap)
    h = one
    for d in range(1, g.cap + 1):
        res = circledast(g, h, check=False) - one
        h = h - res.homogeneous_part(d)
    out = circledast(g, h, check=False)
    if out != one:
        raise AssertionError("twisted inversion failed to terminate")
    return h


def gamma_of(g, cap=None):
    """The one-variable series exp(sum_n ((-1)^n / n) (g | x0^(n-1) x1) t^n)."""
    cap = g.cap if cap is None else cap
    acc = UniSeries.zero(cap)
    for n in range(1, cap + 1):
        c = coeff_x(g, ("x0",) * (n - 1) + ("x1",))
        if c:
            acc = acc + UniSeries(cap, {n: Fraction((-1) ** n, n) * c})
    return acc.exp()


def is_group_like_exp(g):
    """Membership in the exponential of the free Lie algebra: log primitive
    for the concatenation Hopf structure."""
    if g.constant_term() != 1:
        return False
    return is_primitive(g.log(), shuffle_coproduct)


def theta_map(g):
    """Gamma_g(x1)^-1 * g * exp(-(g|x0) x0); defined on exponentials of Lie series."""
    if not is_group_like_exp(g):
        raise ValueError("input is not the exponential of a Lie series")
    cap = g.cap
    gam = gamma_of(g)
    # Gamma_g evaluated at x1 = -e1
    minus_e1 = TruncSeries.letter(E2, cap, "e1", -1)
    gam_x1 = gam.substitute(minus_e1, TruncSeries.one(E2, cap))
    c = coeff_x(g, ("x0",))
    tail = TruncSeries.letter(E2, cap, "e0", -c).exp()
    return gam_x1.inverse() * g * tail


def scale_action(k, g):
    """The scaling automorphism: every letter multiplied by k."""
    return g.scale_degrees(k)


def s_x(g, h):
    """Module action on two-letter series: S_g(h) = g (*) h."""
    return circledast(g, h, check=False)


def s_y(g, h):
    """Induced action on Y-series through the Y-projection."""
    return pi_y(circledast(g, lift_y(h, g.cap), check=False))


def s_y_scaled(mu, g, h):
    """Extended action of the pair (mu, g): scale weights, then act."""
    return s_y(g, h.scale_weights(mu))


# -- the semidirect-product torsor ------------------------------------------------


@dataclass(frozen=True)
class ScaledPair:
    """A pair (mu, g) in the semidirect product of scalars with the twisted group."""
    mu: Fraction
    g: TruncSeries

    def __mul__(self, other):
        return ScaledPair(self.mu * other.mu,
                          circledast(self.g, scale_action(self.mu, other.g), check=False))

    def inverse(self):
        mu_inv = Fraction(1) / self.mu
        gi = circledast_inv(self.g)
        return ScaledPair(mu_inv, scale_action(mu_inv, gi))


# -- the membership predicate -----------------------------------------------------


@dataclass
class DmrReport:
    mu: Fraction
    cap: int
    group_like: bool
    coeff_x0_zero: bool
    coeff_x1_zero: bool
    coeff_x0x1_normalized: bool
    y_projection_grouplike: bool
    first_failure: str = ""

    @property
    def passed(self):
        return (self.group_like and self.coeff_x0_zero and self.coeff_x1_zero
                and self.coeff_x0x1_normalized and self.y_projection_grouplike)

    def as_dict(self):
        return {
            "mu": str(self.mu),
            "degree": self.cap,
            "group_like": self.group_like,
            "coeff_x0_zero": self.coeff_x0_zero,
            "coeff_x1_zero": self.coeff_x1_zero,
            "coeff_x0x1_normalized": self.coeff_x0x1_normalized,
            "y_projection_grouplike": self.y_projection_grouplike,
            "passed": self.passed,
            "first_failure": self.first_failure,
        }


def dmr_check(phi, mu):
    """All membership conditions of the double shuffle scheme at parameter mu,
    verified exactly through the series cap.

    The harmonic condition on the Y-projection of the theta-twist is the
    group-like one (equivalently, primitivity of its logarithm): that is the
    property the twisted action actually uses when it transports the harmonic
    coproduct, and the constant term of the projection is always 1.
    """
    mu = Fraction(mu)
    cap = phi.cap
    report = DmrReport(
        mu=mu,
        cap=cap,
        group_like=is_group_like_exp(phi),
        coeff_x0_zero=(cap < 1 or coeff_x(phi, ("x0",)) == 0),
        coeff_x1_zero=(cap < 1 or coeff_x(phi, ("x1",)) == 0),
        coeff_x0x1_normalized=(cap < 2 or coeff_x(phi, ("x0", "x1")) == -mu * mu / 24),
        y_projection_grouplike=False,
    )
    psi = pi_y(theta_map(phi)) if report.group_like else None
    if psi is not None:
        ok = is_delta_star_grouplike(psi)
        assert ok == is_delta_star_primitive(y_log(psi))
        report.y_projection_grouplike = ok
    for name in ("group_like", "coeff_x0_zero", "coeff_x1_zero",
                 "coeff_x0x1_normalized", "y_projection_grouplike"):
        if not getattr(report, name):
            report.first_failure = name
            break
    return report


def stabilizer_check(g, cap=None):
    """Does S^Y of theta(g) commute with the harmonic coproduct?

    Compared on every Y-word of weight <= cap; the action preserves the weight
    filtration, so the truncated comparison is exact.
    """
    cap = g.cap if cap is None else cap
    t = theta_map(g)
    action_cache = {}

    def act(yw):
        v = action_cache.get(yw)
        if v is None:
            v = s_y(t, YSeries(cap, {yw: Fraction(1)}, _clean=True))
            action_cache[yw] = v
        return v

    def act_series(h):
        out = YSeries.zero(cap)
        for yw, c in h.terms.items():
            out = out + act(yw).scale(c)
        return out

    for yw in _y_words_upto(cap):
        h = YSeries(cap, {yw: Fraction(1)}, _clean=True)
        lhs = delta_star(act_series(h))
        rhs = delta_star(h).map_legs_y(act_series)
        if lhs != rhs:
            return False, yw
    return True, None


def _y_words_upto(cap):
    words = [()]
    for w in words:
        yield w
        room = cap - sum(w)
        for n in range(1, room + 1):
            words.append(w + (n,))
