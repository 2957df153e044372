"""Order-by-order rational solver for the associator equations, and the
comparison morphisms a_(mu,phi) on the two- and five-strand group algebras.

The solver walks degree by degree: the degree-d part of log(phi) is written
in the Lyndon-bracket basis, the degree-d components of the 2-cycle, one
hexagon and the pentagon are affine in those coordinates (each factor of each
equation has constant term 1, so a degree-d perturbation enters each slot
additively), and the resulting exact linear system is solved with free
coordinates pinned to caller-supplied values (default 0). The remaining
hexagon is a consequence and is checked as a residual.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from ._lin import add_term, scaled
from .freegroup import F2, GroupHom
from .linalg import solve_affine
from .lyndon import lie_bracket_tree, lyndon_words, tree_to_element
from .series import E2, TruncSeries, UniSeries, apply_hom, exp_t
from .smash import P5CTX, SmashElem, T4CTX, ell_map, p5_generator, t4_generator
from .p5 import P5Elem
from .racinet import gamma_of


def phi_at(phi, a0, a1, one=None):
    """Evaluate a two-letter series at algebra arguments of positive valuation."""
    if one is None:
        one = TruncSeries.one(E2, phi.cap)
    return apply_hom(phi, [a0, a1], one)


def _hexagon_args(cap):
    e0 = TruncSeries.letter(E2, cap, "e0")
    e1 = TruncSeries.letter(E2, cap, "e1")
    einf = -e0 - e1
    return e0, e1, einf


def hexagon_residual(phi, mu, sign=1):
    """e^{s mu e0/2} phi(einf,e0) e^{s mu einf/2} phi(e1,einf) e^{s mu e1/2} phi(e0,e1) - 1,
    with s = sign; sign = -1 gives the companion hexagon."""
    cap = phi.cap
    e0, e1, einf = _hexagon_args(cap)
    half = Fraction(sign) * Fraction(mu) / 2
    one = TruncSeries.one(E2, cap)
    out = e0.scale(half).exp() * phi_at(phi, einf, e0) * einf.scale(half).exp() \
        * phi_at(phi, e1, einf) * e1.scale(half).exp() * phi_at(phi, e0, e1)
    return out - one


def cycle_residual(phi):
    cap = phi.cap
    e0 = TruncSeries.letter(E2, cap, "e0")
    e1 = TruncSeries.letter(E2, cap, "e1")
    return phi_at(phi, e1, e0) - phi.inverse()


def pentagon_args(cap):
    g = {n: t4_generator(cap, n) for n in ("t12", "t13", "t23", "t14", "t24", "t34")}
    return [
        (g["t12"], g["t23"] + g["t24"]),
        (g["t13"] + g["t23"], g["t34"]),
        (g["t23"], g["t34"]),
        (g["t12"] + g["t13"], g["t24"] + g["t34"]),
        (g["t12"], g["t23"]),
    ]


def pentagon_residual(phi, args=None):
    cap = phi.cap
    if args is None:
        args = pentagon_args(cap)
    one = SmashElem.one(T4CTX, cap)
    vals = [phi_at(phi, a, b, one) for a, b in args]
    return vals[0] * vals[1] - vals[2] * vals[3] * vals[4]


def residuals(phi, mu):
    """Exact LHS - RHS of all four defining equations."""
    return {
        "pentagon": pentagon_residual(phi),
        "hexagon1": hexagon_residual(phi, mu, 1),
        "hexagon2": hexagon_residual(phi, mu, -1),
        "cycle": cycle_residual(phi),
    }


class SolverError(RuntimeError):
    pass


@dataclass
class Associator:
    mu: Fraction
    cap: int
    phi: TruncSeries
    free_param_record: dict = field(default_factory=dict)


def lyndon_basis_elements(cap, d):
    """(word-string, Lie series, bracket tree) for the degree-d free Lie basis
    on (e0, e1)."""
    letters = [TruncSeries.letter(E2, cap, "e0"), TruncSeries.letter(E2, cap, "e1")]
    out = []
    for w in lyndon_words(2, d):
        name = "".join(str(i) for i in w)
        tree = lie_bracket_tree(w)
        out.append((name, tree_to_element(tree, letters, lambda a, b: a.commutator(b)),
                    tree))
    return out


def _tree_at(tree, a, b):
    """Nested commutator of the two degree-1 arguments along the bracket tree."""
    return tree_to_element(tree, [a, b], lambda x, y: x.commutator(y))


def _flatten(label, elem):
    return {(label, k): c for k, c in elem.terms.items()}


def solve_associator(mu, cap, free_params=None):
    """Solve the associator equations through the given degree.

    free_params maps Lyndon-word labels like "001" (optionally "d3:001") to
    rational values for the underdetermined coordinates; unlisted ones are 0.
    Returns an Associator whose residuals are rechecked exactly at the end.
    """
    mu = Fraction(mu)
    free_params = dict(free_params or {})
    lie_parts = []
    record = {}

    for d in range(2, cap + 1):
        # everything at this step runs truncated at degree d; higher content
        # is determined by later degrees anyway
        lie_sum = TruncSeries.zero(E2, d)
        for part in lie_parts:
            lie_sum = lie_sum + part.truncated(d)
        phi_cur = lie_sum.exp()

        e0f, e1f, einff = _hexagon_args(d)
        hex_slots = [(einff, e0f), (e1f, einff), (e0f, e1f)]
        cyc_slots_pos = [(e1f, e0f), (e0f, e1f)]
        pent_args = pentagon_args(d)

        basis = lyndon_basis_elements(cap, d)
        columns = []
        free_vals = []
        signs = (1, 1, -1, -1, -1)
        for name, w, tree in basis:
            col = {}
            for a, b in hex_slots:
                for k, c in _tree_at(tree, a, b).terms.items():
                    add_term(col, ("hex", k), c)
            # 2-cycle: phi(e1,e0) - phi(e0,e1)^{-1}: insertion gives +W(e1,e0) + W(e0,e1)
            for a, b in cyc_slots_pos:
                for k, c in _tree_at(tree, a, b).terms.items():
                    add_term(col, ("cyc", k), c)
            for s, (a, b) in zip(signs, pent_args):
                for k, c in _tree_at(tree, a, b).terms.items():
                    add_term(col, ("pent", k), s * c)
            columns.append(col)
            key = f"d{d}:{name}"
            free_vals.append(free_params.get(key, free_params.get(name, 0)))

        rhs = {}
        rhs.update(_flatten("hex", hexagon_residual(phi_cur, mu, 1).homogeneous_part(d)))
        rhs.update(_flatten("cyc", cycle_residual(phi_cur).homogeneous_part(d)))
        rhs.update(_flatten("pent", pentagon_residual(phi_cur, pent_args).homogeneous_part(d)))
        rhs = {k: -c for k, c in rhs.items()}

        try:
            xs, free_idx = solve_affine(columns, rhs, free_vals)
        except ValueError as exc:
            raise SolverError(f"inconsistent system at degree {d}") from exc
        part = TruncSeries.zero(E2, cap)
        for (name, w, _), x in zip(basis, xs):
            if x:
                part = part + w.scale(x)
        for j in free_idx:
            record[f"d{d}:{basis[j][0]}"] = Fraction(free_vals[j])
        lie_parts.append(part)

    lie_sum = TruncSeries.zero(E2, cap)
    for part in lie_parts:
        lie_sum = lie_sum + part
    phi = lie_sum.exp()
    res = residuals(phi, mu)
    for name, r in res.items():
        if not r.is_zero():
            raise SolverError(f"nonzero {name} residual after solving (internal invariant)")
    return Associator(mu=mu, cap=cap, phi=phi, free_param_record=record)


# -- Gamma identities -------------------------------------------------------------


class CommPoly2:
    """Polynomials in two commuting variables, truncated by total degree."""

    __slots__ = ("cap", "terms")

    def __init__(self, cap, terms=None, _clean=False):
        self.cap = cap
        if terms is None:
            terms = {}
        if not _clean:
            terms = {k: Fraction(c) for k, c in terms.items() if c and k[0] + k[1] <= cap}
        self.terms = terms

    @classmethod
    def one(cls, cap):
        return cls(cap, {(0, 0): Fraction(1)}, _clean=True)

    @classmethod
    def var(cls, cap, which, c=1):
        key = (1, 0) if which == 0 else (0, 1)
        return cls(cap, {key: Fraction(c)})

    def __eq__(self, other):
        return isinstance(other, CommPoly2) and self.cap == other.cap and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        d = dict(self.terms)
        for k, c in other.terms.items():
            add_term(d, k, c)
        return CommPoly2(self.cap, d, _clean=True)

    def __sub__(self, other):
        d = dict(self.terms)
        for k, c in other.terms.items():
            add_term(d, k, -c)
        return CommPoly2(self.cap, d, _clean=True)

    def scale(self, c):
        return CommPoly2(self.cap, scaled(self.terms, c), _clean=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        d = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                if i1 + i2 + j1 + j2 <= self.cap:
                    add_term(d, (i1 + i2, j1 + j2), a * b)
        return CommPoly2(self.cap, d, _clean=True)

    def inverse(self):
        c0 = self.terms.get((0, 0), Fraction(0))
        if not c0:
            raise ValueError("inverse requires a unit constant term")
        x = (self - CommPoly2.one(self.cap).scale(c0)).scale(Fraction(1) / c0)
        out = CommPoly2.one(self.cap)
        acc = CommPoly2.one(self.cap)
        sign = -1
        for _ in range(self.cap):
            acc = acc * x
            if acc.is_zero():
                break
            out = out + acc.scale(sign)
            sign = -sign
        return out.scale(Fraction(1) / c0)


def abelianize(series):
    """Send each word to the commutative monomial counting its letters."""
    out = {}
    for w, c in series.terms.items():
        i = sum(1 for l in w if l == 0)
        add_term(out, (i, len(w) - i), c)
    return CommPoly2(series.cap, out, _clean=True)


def gamma_phi_identities(phi, mu):
    """Both Gamma identities of an associator, checked exactly.

    (1) the abelianized 1 + phi_1 e1 equals
        Gamma(-u) Gamma(-v) / Gamma(-u-v)  in k[[u, v]];
    (2) Gamma(t) Gamma(-t) = mu t / (e^{mu t/2} - e^{-mu t/2}).
    """
    mu = Fraction(mu)
    cap = phi.cap
    gam = gamma_of(phi)

    one_plus = TruncSeries(E2, cap,
                           {w: c for w, c in phi.terms.items() if not w or w[-1] == 1})
    lhs1 = abelianize(one_plus)
    u = CommPoly2.var(cap, 0, -1)
    v = CommPoly2.var(cap, 1, -1)
    gu = gam.substitute(u, CommPoly2.one(cap))
    gv = gam.substitute(v, CommPoly2.one(cap))
    guv = gam.substitute(u + v, CommPoly2.one(cap))
    rhs1 = gu * gv * guv.inverse()

    lhs2 = gam * gam.compose_scale(-1)
    if mu:
        denom = (exp_t(cap + 1, mu / 2) - exp_t(cap + 1, -mu / 2)).shift_down()
        rhs2 = denom.inverse().scale(mu)
    else:
        rhs2 = UniSeries.one(cap)

    return {
        "abelianization": lhs1 == rhs1,
        "functional_equation": lhs2 == rhs2,
        "gamma": gam,
    }


# -- comparison morphisms ----------------------------------------------------------


def a_mu_phi(mu, phi):
    """Group morphism on the two-generator free group:
    X0 -> phi e^{mu e0} phi^{-1}, X1 -> e^{mu e1}."""
    mu = Fraction(mu)
    cap = phi.cap
    e0 = TruncSeries.letter(E2, cap, "e0")
    e1 = TruncSeries.letter(E2, cap, "e1")
    images = {
        "X0": phi * e0.scale(mu).exp() * phi.inverse(),
        "X1": e1.scale(mu).exp(),
    }
    return GroupHom(F2, images, TruncSeries.one(E2, cap))


def a_l(hom, elem):
    """Restriction landing in the left W-algebra (nonconstant words end in e1)."""
    out = hom(elem)
    for w in out.terms:
        if w and w[-1] != 1:
            raise ValueError("image is not in the left W-algebra")
    return out


def a_r(hom, elem):
    """Restriction landing in the right W-algebra (nonconstant words begin with e1)."""
    out = hom(elem)
    for w in out.terms:
        if w and w[0] != 1:
            raise ValueError("image is not in the right W-algebra")
    return out


class A5Map:
    """The five-strand comparison morphism on the modular group algebra.

    Values on the three kernel generators are conjugated exponentials
    determined by the associator; values on the section part are the images
    of the two-strand morphism pushed through the section of the enveloping
    algebras. The morphism property is certified by tests rather than traced
    back to its categorical origin.
    """

    def __init__(self, mu, phi):
        self.mu = Fraction(mu)
        self.phi = phi
        cap = self.cap = phi.cap
        one = SmashElem.one(P5CTX, cap)
        g = lambda n: p5_generator(cap, n)
        e15, e25, e35 = g("e15"), g("e25"), g("e35")
        e45, e125, e345 = g("e45"), g("e12,5"), g("e34,5")

        def cphi(a, b):
            return phi_at(phi, a, b, one)

        ad1 = cphi(e45, e125).inverse() * cphi(e345, e15).inverse()
        ad2 = cphi(e45, e125).inverse() * e345.scale(self.mu / 2).exp() \
            * cphi(e345, e25).inverse()
        ad3 = e45.scale(self.mu / 2).exp() * cphi(e35, e45)
        base = [
            ad1 * e15.scale(self.mu).exp() * ad1.inverse(),
            ad2 * e25.scale(self.mu).exp() * ad2.inverse(),
            ad3 * e35.scale(self.mu).exp() * ad3.inverse(),
        ]
        self.f3_pos = base
        self.f3_neg = [b.inverse() for b in base]
        self.hom2 = a_mu_phi(mu, phi)
        self._f3_cache = {(): one}
        self._f2_cache = {(): one}

    def f3_image(self, word):
        v = self._f3_cache.get(word)
        if v is None:
            l = word[-1]
            head = self.f3_image(word[:-1])
            v = head * (self.f3_pos[l - 1] if l > 0 else self.f3_neg[-l - 1])
            self._f3_cache[word] = v
        return v

    def f2_image(self, word):
        v = self._f2_cache.get(word)
        if v is None:
            v = ell_map(self.hom2.word_image(word), self.cap)
            self._f2_cache[word] = v
        return v

    def elem_image(self, g):
        return self.f2_image(g.f) * self.f3_image(g.f3)

    def __call__(self, x):
        if isinstance(x, P5Elem):
            return self.elem_image(x)
        out = SmashElem.zero(P5CTX, self.cap)
        for g, c in x.terms.items():
            out = out + self.elem_image(g).scale(c)
        return out
