"""The four W-algebras and their coproducts.

De Rham side: series on (e0, e1) whose nonconstant words end (left model) or
begin (right model) with e1; isomorphic to the algebra on the infinite
alphabet y_1, y_2, ... through the block decomposition
    y_n  <->  -(e0^(n-1) e1)
(one audited converter, sign (-1)^k for k blocks). The harmonic coproduct
makes y_n a divided-power-free cocommutative primitive-with-lower-terms
generator: y_n -> y_n x 1 + 1 x y_n + sum y_a x y_{n-a}.

Betti side: the subalgebra k1 + kF2(X1-1) of the group algebra. Its explicit
coproduct makes X1 group-like and is computed either through the closed form
on the generators f(X0)(X1-1) (the `Op` transform) or, for arbitrary
elements, through the left-recursion expressing w(X1-1) as a polynomial in
the generators.
"""

from fractions import Fraction

from ._lin import add_term, merge, scaled
from .freegroup import (F2, GroupAlgElem, GroupTensor, gt_tensor, inv_word,
                        iso_mu, mul_words)
from .series import E2, TensorSeries, TruncSeries

_X0, _X1 = 1, 2  # letter codes in F2 words


# -- Y-words ---------------------------------------------------------------------


class YSeries:
    """Series on the weighted alphabet y_1, y_2, ...; words are index tuples."""

    __slots__ = ("cap", "terms")

    def __init__(self, cap, terms=None, _clean=False):
        self.cap = cap
        if terms is None:
            terms = {}
        if not _clean:
            terms = {w: Fraction(c) for w, c in terms.items() if c and sum(w) <= cap}
        self.terms = terms

    @classmethod
    def zero(cls, cap):
        return cls(cap, {}, _clean=True)

    @classmethod
    def one(cls, cap):
        return cls(cap, {(): Fraction(1)}, _clean=True)

    @classmethod
    def gen(cls, cap, n, c=1):
        return cls(cap, {(n,): Fraction(c)})

    def _compat(self, other):
        if self.cap != other.cap:
            raise ValueError("degree-cap mismatch")

    def __eq__(self, other):
        if not isinstance(other, YSeries):
            return NotImplemented
        return self.cap == other.cap and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get((), Fraction(0))

    def __add__(self, other):
        self._compat(other)
        d = dict(self.terms)
        merge(d, other.terms)
        return YSeries(self.cap, d, _clean=True)

    def __sub__(self, other):
        self._compat(other)
        d = dict(self.terms)
        merge(d, other.terms, -1)
        return YSeries(self.cap, d, _clean=True)

    def __neg__(self):
        return YSeries(self.cap, {w: -c for w, c in self.terms.items()}, _clean=True)

    def scale(self, c):
        return YSeries(self.cap, scaled(self.terms, c), _clean=True)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._compat(other)
        d = {}
        for u, a in self.terms.items():
            room = self.cap - sum(u)
            for w, b in other.terms.items():
                if sum(w) > room:
                    continue
                add_term(d, u + w, a * b)
        return YSeries(self.cap, d, _clean=True)

    def scale_weights(self, mu):
        """y_n -> mu^n y_n."""
        mu = Fraction(mu)
        return YSeries(self.cap, {w: c * mu ** sum(w) for w, c in self.terms.items()},
                       _clean=True)

    def __repr__(self):
        parts = [f"{c}*" + (".".join(f"y{n}" for n in w) if w else "1")
                 for w, c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))[:6]]
        more = " + ..." if len(self.terms) > 6 else ""
        return "<y " + (" + ".join(parts) if parts else "0") + more + ">"


class YTensor:
    """Element of the completed tensor square of the Y-series algebra."""

    __slots__ = ("cap", "terms")

    def __init__(self, cap, terms=None, _clean=False):
        self.cap = cap
        if terms is None:
            terms = {}
        if not _clean:
            terms = {k: Fraction(c) for k, c in terms.items()
                     if c and sum(k[0]) + sum(k[1]) <= cap}
        self.terms = terms

    @classmethod
    def zero(cls, cap):
        return cls(cap, {}, _clean=True)

    @classmethod
    def one(cls, cap):
        return cls(cap, {((), ()): Fraction(1)}, _clean=True)

    def _compat(self, other):
        if self.cap != other.cap:
            raise ValueError("degree-cap mismatch")

    def __eq__(self, other):
        if not isinstance(other, YTensor):
            return NotImplemented
        return self.cap == other.cap and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        self._compat(other)
        d = dict(self.terms)
        merge(d, other.terms)
        return YTensor(self.cap, d, _clean=True)

    def __sub__(self, other):
        self._compat(other)
        d = dict(self.terms)
        merge(d, other.terms, -1)
        return YTensor(self.cap, d, _clean=True)

    def __neg__(self):
        return YTensor(self.cap, {k: -c for k, c in self.terms.items()}, _clean=True)

    def scale(self, c):
        return YTensor(self.cap, scaled(self.terms, c), _clean=True)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._compat(other)
        d = {}
        for (u1, w1), a in self.terms.items():
            room = self.cap - sum(u1) - sum(w1)
            for (u2, w2), b in other.terms.items():
                if sum(u2) + sum(w2) > room:
                    continue
                add_term(d, (u1 + u2, w1 + w2), a * b)
        return YTensor(self.cap, d, _clean=True)

    def map_legs_y(self, f):
        """Apply a linear YSeries -> YSeries map to both legs."""
        out = YTensor.zero(self.cap)
        images = {}

        def img(w):
            v = images.get(w)
            if v is None:
                v = f(YSeries(self.cap, {w: Fraction(1)}, _clean=True))
                images[w] = v
            return v

        for (u, w), c in self.terms.items():
            lu, rw = img(u), img(w)
            for a, ca in lu.terms.items():
                for b, cb in rw.terms.items():
                    if sum(a) + sum(b) <= self.cap:
                        add_term(out.terms, (a, b), c * ca * cb)
        return YTensor(self.cap, out.terms, _clean=True)

    def __repr__(self):
        return f"<y-tensor, {len(self.terms)} terms>"


def y_tensor(a, b):
    a._compat(b)
    d = {}
    for u, ca in a.terms.items():
        room = a.cap - sum(u)
        for w, cb in b.terms.items():
            if sum(w) > room:
                continue
            add_term(d, (u, w), ca * cb)
    return YTensor(a.cap, d, _clean=True)


# -- the audited y <-> e converter -----------------------------------------------


def y_word_to_e(yw):
    """(n1, ..., nk) -> (sign, e-word) with e-word = e0^(n1-1) e1 ... e0^(nk-1) e1."""
    word = []
    for n in yw:
        word.extend([0] * (n - 1))
        word.append(1)
    return (-1) ** len(yw), tuple(word)


def e_word_to_y(word):
    """Inverse of `y_word_to_e`; None when the word does not end with e1."""
    if word and word[-1] != 1:
        return None
    yw = []
    run = 0
    for l in word:
        if l == 0:
            run += 1
        else:
            yw.append(run + 1)
            run = 0
    return (-1) ** len(yw), tuple(yw)


def pi_y(series):
    """Projection of a two-letter series to its Y-part (words ending in e1)."""
    out = {}
    c0 = series.constant_term()
    if c0:
        out[()] = c0
    for w, c in series.terms.items():
        if not w or w[-1] != 1:
            continue
        sign, yw = e_word_to_y(w)
        add_term(out, yw, sign * c)
    return YSeries(series.cap, out, _clean=True)


def lift_y(h, cap=None):
    """Canonical lift of a Y-series into the two-letter algebra."""
    cap = h.cap if cap is None else cap
    out = {}
    c0 = h.constant_term()
    if c0:
        out[()] = c0
    for yw, c in h.terms.items():
        if not yw:
            continue
        sign, w = y_word_to_e(yw)
        add_term(out, w, sign * c)
    return TruncSeries(E2, cap, out, _clean=True)


# -- the harmonic coproduct -------------------------------------------------------


def _delta_star_gen(cap, n):
    d = {((n,), ()): Fraction(1), ((), (n,)): Fraction(1)}
    for a in range(1, n):
        d[((a,), (n - a,))] = Fraction(1)
    return YTensor(cap, d, _clean=True)


def delta_star(h):
    """Algebra morphism on Y-series: y_n -> y_n x 1 + 1 x y_n + sum y_a x y_{n-a}."""
    cap = h.cap
    out = YTensor.zero(cap)
    cache = {(): YTensor.one(cap)}

    def img(w):
        v = cache.get(w)
        if v is None:
            v = img(w[:-1]) * _delta_star_gen(cap, w[-1])
            cache[w] = v
        return v

    for w, c in h.terms.items():
        out = out + img(w).scale(c)
    return out


def is_delta_star_primitive(h):
    if h.constant_term():
        return False
    one = YSeries.one(h.cap)
    return delta_star(h) == y_tensor(h, one) + y_tensor(one, h)


def is_delta_star_grouplike(h):
    if h.constant_term() != 1:
        return False
    return delta_star(h) == y_tensor(h, h)


def y_log(h):
    """log of a constant-term-1 Y-series, truncated at the weight cap."""
    if h.constant_term() != 1:
        raise ValueError("log requires constant term 1")
    x = h - YSeries.one(h.cap)
    out = YSeries.zero(h.cap)
    acc = YSeries.one(h.cap)
    for k in range(1, h.cap + 1):
        acc = acc * x
        if acc.is_zero():
            break
        out = out + acc.scale(Fraction((-1) ** (k + 1), k))
    return out


# -- left/right conversion on the de Rham side ------------------------------------


def in_w_l_dr(series):
    return all(w and w[-1] == 1 or not w for w in series.terms)


def ad_e1(series):
    """1 -> 1, a e1 -> e1 a (left W-algebra to right W-algebra)."""
    d = {}
    for w, c in series.terms.items():
        if not w:
            add_term(d, w, c)
        elif w[-1] == 1:
            add_term(d, (1,) + w[:-1], c)
        else:
            raise ValueError("series is not in the left W-algebra")
    return TruncSeries(E2, series.cap, d, _clean=True)


def delta_star_lr(series):
    """Harmonic coproduct in the left/right normalization: convert to Y-words,
    apply the coproduct, convert each leg back and rotate its trailing e1 to
    the front. Lands in the tensor square over (e0, e1)."""
    if not in_w_l_dr(series):
        raise ValueError("input is not in the left W-algebra")
    cap = series.cap
    dst = delta_star(pi_y(series))
    out = {}
    leg = {}

    def leg_word(yw):
        v = leg.get(yw)
        if v is None:
            if not yw:
                v = (Fraction(1), ())
            else:
                sign, w = y_word_to_e(yw)
                v = (Fraction(sign), (1,) + w[:-1])
            leg[yw] = v
        return v

    for (u, w), c in dst.terms.items():
        su, wu = leg_word(u)
        sw, ww = leg_word(w)
        add_term(out, (wu, ww), c * su * sw)
    return TensorSeries(E2, cap, out, _clean=True)


def delta_star_hat_lr(series):
    return delta_star_lr(series)


# -- the Betti W-algebra: membership and division ----------------------------------


def divide_right_x1(b):
    """Solve h (X1 - 1) = b in kF2; None when b is not right-divisible.

    Right cosets w X1^Z carry a Laurent-polynomial structure on which right
    multiplication by (X1 - 1) is multiplication by (t - 1); divisibility per
    coset is the vanishing of the coefficient sum.
    """
    cosets = {}
    for w, c in b.terms.items():
        k = 0
        n = len(w)
        while k < n and abs(w[n - 1 - k]) == _X1 and w[n - 1 - k] == w[n - 1]:
            k += 1
        if k and w[n - 1] == _X1:
            u, e = w[:n - k], k
        elif k:
            u, e = w[:n - k], -k
        else:
            u, e = w, 0
        cosets.setdefault(u, {})[e] = c
    h = {}
    for u, poly in cosets.items():
        if sum(poly.values()):
            return None
        # quotient of sum c_k t^k by (t - 1), using (t^k - 1)/(t - 1)
        for k, c in poly.items():
            if k > 0:
                exps = range(0, k)
                sgn = 1
            elif k < 0:
                exps = range(k, 0)
                sgn = -1
            else:
                continue
            for j in exps:
                word = u + (_X1,) * j if j >= 0 else u + (-_X1,) * (-j)
                add_term(h, word, sgn * c)
    return GroupAlgElem(F2, h, _clean=True)


def wlb_split(a):
    """(constant, h) with a = constant + h (X1-1); raises when a is outside
    the Betti W-algebra."""
    c = a.augmentation()
    b = a - GroupAlgElem.one(F2).scale(c)
    h = divide_right_x1(b)
    if h is None:
        raise ValueError("element is not in k1 + kF2(X1-1)")
    return c, h


def in_wlb(a):
    try:
        wlb_split(a)
        return True
    except ValueError:
        return False


def ad_x1_minus_1(a):
    """1 -> 1, h (X1-1) -> (X1-1) h (left to right Betti W-algebra)."""
    c, h = wlb_split(a)
    x1m1 = GroupAlgElem(F2, {(_X1,): Fraction(1), (): Fraction(-1)}, _clean=True)
    return GroupAlgElem.one(F2).scale(c) + x1m1 * h


# -- xi generators and the explicit coproduct --------------------------------------


def xi(eps, s, n):
    """X0^s (X0-1)^(n-1) (X1^eps - 1) in the group algebra."""
    if n < 1:
        raise ValueError("n must be >= 1")
    word_x0 = (_X0,) * s if s >= 0 else (-_X0,) * (-s)
    out = GroupAlgElem.from_word(F2, word_x0)
    x0 = GroupAlgElem.from_word(F2, (_X0,))
    one = GroupAlgElem.one(F2)
    for _ in range(n - 1):
        out = out * (x0 - one)
    x1e = GroupAlgElem.from_word(F2, (_X1,) if eps > 0 else (-_X1,))
    return out * (x1e - one)


def xi_plus_poly(s, n):
    """Laurent coefficients of t^s (t-1)^(n-1)."""
    from math import comb
    return {s + i: Fraction((-1) ** (n - 1 - i) * comb(n - 1, i)) for i in range(n)}


def op_transform(f):
    """The two-variable transform of a Laurent polynomial f:
    t^a -> -sum_{p+q=a, p,q>=1} t'^p t''^q for a >= 1,
    t^a -> +sum_{p+q=a, p<=...<=0} t'^p t''^q for a <= 0 (p from a to 0)."""
    out = {}
    for a, c in f.items():
        if a >= 1:
            for p in range(1, a):
                add_term(out, (p, a - p), -c)
        else:
            for p in range(a, 1):
                add_term(out, (p, a - p), c)
    return out


def _ga_xi_plus(k):
    """xi_k^+ = X0^k (X1 - 1) as a two-term group algebra element."""
    u = (_X0,) * k if k >= 0 else (-_X0,) * (-k)
    return GroupAlgElem(F2, {u + (_X1,): Fraction(1), u: Fraction(-1)}, _clean=True)


_GT_CACHE = {}


def delta_sharp_xi(eps, s, n):
    """Closed-form coproduct image of xi(eps, s, n) in the tensor square."""
    key = (eps, s, n)
    got = _GT_CACHE.get(key)
    if got is not None:
        return got
    if eps < 0:
        x1i = GroupAlgElem.from_word(F2, (-_X1,))
        res = (-delta_sharp_xi(1, s, n)) * gt_tensor(x1i, x1i)
    else:
        base = xi(1, s, n)
        one = GroupAlgElem.one(F2)
        res = gt_tensor(base, one) + gt_tensor(one, base)
        for (p, q), c in op_transform(xi_plus_poly(s, n)).items():
            res = res + gt_tensor(_ga_xi_plus(p), _ga_xi_plus(q)).scale(c)
    _GT_CACHE[key] = res
    return res


def delta_sharp_monomial(factors):
    """Coproduct image of a product of xi generators, multiplicatively."""
    out = GroupTensor.one(F2)
    for eps, s, n in factors:
        out = out * delta_sharp_xi(eps, s, n)
    return out


# the generator images for the general-element route
def _gen_image(sym):
    got = _GT_CACHE.get(sym)
    if got is not None:
        return got
    kind, k = sym
    if kind == "+":
        res = delta_sharp_xi(1, k, 1)
    else:
        x1i = GroupAlgElem.from_word(F2, (-_X1,))
        one = GroupAlgElem.one(F2)
        res = gt_tensor(x1i, x1i) - gt_tensor(one, one)
    _GT_CACHE[sym] = res
    return res


_PW_CACHE = {(): {(("+", 0),): Fraction(1)}}


def p_w(word):
    """Express word*(X1-1) as a constant-free polynomial in the generators
    xi_k^+ (k in Z) and xi_0^-; monomials are tuples of symbols ('+', k) or
    ('-', 0). Built by the left-recursion on the leading letter."""
    got = _PW_CACHE.get(word)
    if got is not None:
        return got
    g, rest = word[0], word[1:]
    inner = p_w(rest)
    out = {}
    if abs(g) == _X1:
        sym = ("+", 0) if g > 0 else ("-", 0)
        merge(out, inner)
        for mono, c in inner.items():
            add_term(out, (sym,) + mono, c)
    else:
        shift = 1 if g > 0 else -1
        for mono, c in inner.items():
            head, tail = mono[0], mono[1:]
            if head[0] == "+":
                add_term(out, (("+", head[1] + shift),) + tail, c)
            else:
                # xi_0^- head: X0^(+-1) xi_0^- = -xi_(+-1)^+ (1 + xi_0^-)
                add_term(out, (("+", shift),) + tail, -c)
                add_term(out, (("+", shift), ("-", 0)) + tail, -c)
    _PW_CACHE[word] = out
    return out


_PW_IMG_CACHE = {}


def _monomial_image(mono):
    got = _PW_IMG_CACHE.get(mono)
    if got is not None:
        return got
    if not mono:
        res = GroupTensor.one(F2)
    else:
        res = _monomial_image(mono[:-1]) * _gen_image(mono[-1])
    _PW_IMG_CACHE[mono] = res
    return res


def delta_sharp(a):
    """The explicit coproduct on k1 + kF2(X1-1), for arbitrary elements.

    Decomposes a = c + h(X1-1), rewrites each w(X1-1) as a polynomial in the
    generators, and pushes the coproduct through multiplicatively.
    """
    c, h = wlb_split(a)
    out = GroupTensor.one(F2).scale(c)
    for w, cw in h.terms.items():
        for mono, cm in p_w(w).items():
            out = out + _monomial_image(mono).scale(cw * cm)
    return out


def delta_sharp_lr(a):
    """Left/right normalization: conjugate both legs by (X1-1)."""
    t = delta_sharp(a)
    return t.map_legs(ad_x1_minus_1, ad_x1_minus_1)


def delta_sharp_lr_of_tensor(t):
    return t.map_legs(ad_x1_minus_1, ad_x1_minus_1)


# -- graded classes -----------------------------------------------------------------


def gr_class(a, n, cap=None, hom=None):
    """Image of an element of the n-th filtration ideal in its graded piece,
    as a homogeneous weight-n Y-series (computed through the exponential
    isomorphism at mu = 1)."""
    cap = n if cap is None else cap
    if hom is None:
        hom = iso_mu(cap)
    s = hom(a)
    for w in s.terms:
        if len(w) < n:
            raise ValueError(f"element is not in filtration ideal {n}")
    lead = s.homogeneous_part(n)
    out = {}
    for w, c in lead.terms.items():
        if not w or w[-1] != 1:
            raise ValueError("leading term is not in the Y-model")
        sign, yw = e_word_to_y(w)
        add_term(out, yw, sign * c)
    return YSeries(n, out, _clean=True)


def gr_tensor_class(t, n, cap=None, hom=None):
    """Graded class of a tensor whose total filtration weight is n, as a YTensor."""
    cap = n if cap is None else cap
    if hom is None:
        hom = iso_mu(cap)
    legs = {}

    def leg_series(w):
        v = legs.get(w)
        if v is None:
            v = hom(GroupAlgElem.from_word(F2, w))
            legs[w] = v
        return v

    total = TensorSeries.zero(E2, cap)
    from .series import tensor as ts_tensor
    for w2, fib in t.left_fibers().items():
        left = hom(fib)
        total = total + ts_tensor(left, leg_series(w2))
    out = {}
    for (u, w), c in total.terms.items():
        d = len(u) + len(w)
        if d < n and c:
            raise ValueError(f"tensor is not in total filtration weight {n}")
        if d != n:
            continue
        lu = e_word_to_y(u)
        lw = e_word_to_y(w)
        if lu is None or lw is None:
            raise ValueError("leading term is not in the Y-model")
        add_term(out, (lu[1], lw[1]), c * lu[0] * lw[0])
    return YTensor(n, out, _clean=True)
