"""Truncated enveloping algebras of the five-strand sphere and four-strand
Artin braid Lie algebras, in smash-product PBW normal form.

Basis terms are (ideal word, quotient word, center power): the ideal letters
generate a free Lie subalgebra (the kernel of the strand-forgetting map), the
quotient letters a complementary free subalgebra, and the optional center
letter commutes with everything. Multiplication straightens quotient letters
past ideal letters with the derivation tables below; the tables are certified
against an independent free-algebra-quotient oracle (see `QuotientOracle`).
"""

from fractions import Fraction

from ._lin import add_term, merge, scaled
from .linalg import SpanReducer
from .series import E2, F3E, TensorSeries, TruncSeries, factorial


class SmashContext:
    def __init__(self, name, ideal_letters, quotient_letters, sigma, has_center=False,
                 center_name="c"):
        self.name = name
        self.ideal_letters = tuple(ideal_letters)
        self.quotient_letters = tuple(quotient_letters)
        self.sigma = sigma  # sigma[q][a] = {(i, j): coeff} two-letter ideal words
        self.has_center = has_center
        self.center_name = center_name
        self._push_cache = {}

    def __repr__(self):
        return f"<smash context {self.name}>"

    def ad(self, q, word):
        """Derivation [q, -] on an ideal word, as {word: coeff}."""
        out = {}
        table = self.sigma[q]
        for i, a in enumerate(word):
            for pair, c in table[a].items():
                add_term(out, word[:i] + pair + word[i + 1:], c)
        return out

    def push(self, m, u):
        """Straighten (quotient word m) * (ideal word u) into sum of
        (ideal word) x (quotient subword) terms: {(w, m'): coeff}."""
        if not m or not u:
            return {(u, m): Fraction(1)}
        key = (m, u)
        got = self._push_cache.get(key)
        if got is not None:
            return got
        q, rest = m[0], m[1:]
        inner = self.push(rest, u)
        out = {}
        for (w, msub), c in inner.items():
            add_term(out, (w, (q,) + msub), c)
            for w2, c2 in self.ad(q, w).items():
                add_term(out, (w2, msub), c * c2)
        self._push_cache[key] = out
        return out


def _comm2(i, j):
    return {(i, j): Fraction(1), (j, i): Fraction(-1)}


def _neg(d):
    return {k: -v for k, v in d.items()}


# five-strand sphere braid algebra: ideal (e15, e25, e35), quotient (e23, e12)
P5CTX = SmashContext(
    "p5",
    ("e15", "e25", "e35"),
    ("e23", "e12"),
    sigma=(
        # [e23, -]: kills e15; [e23, e25] = e25 e35 - e35 e25; [e23, e35] = -that
        ({}, _comm2(1, 2), _neg(_comm2(1, 2))),
        # [e12, -]: [e12, e15] = e15 e25 - e25 e15; [e12, e25] = -that; kills e35
        (_comm2(0, 1), _neg(_comm2(0, 1)), {}),
    ),
)

# four-strand Artin braid algebra: ideal (t14, t24, t34), quotient (t12, t23), center c
T4CTX = SmashContext(
    "t4",
    ("t14", "t24", "t34"),
    ("t12", "t23"),
    sigma=(
        ( _comm2(0, 1), _neg(_comm2(0, 1)), {} ),
        ( {}, _comm2(1, 2), _neg(_comm2(1, 2)) ),
    ),
    has_center=True,
)


class SmashElem:
    """Element of the truncated enveloping algebra in smash normal form."""

    __slots__ = ("ctx", "cap", "terms")

    def __init__(self, ctx, cap, terms=None, _clean=False):
        self.ctx = ctx
        self.cap = cap
        if terms is None:
            terms = {}
        if not _clean:
            terms = {k: Fraction(c) for k, c in terms.items()
                     if c and len(k[0]) + len(k[1]) + k[2] <= cap}
        self.terms = terms

    @classmethod
    def zero(cls, ctx, cap):
        return cls(ctx, cap, {}, _clean=True)

    @classmethod
    def one(cls, ctx, cap):
        return cls(ctx, cap, {((), (), 0): Fraction(1)}, _clean=True)

    @classmethod
    def ideal_letter(cls, ctx, cap, i, c=1):
        return cls(ctx, cap, {((i,), (), 0): Fraction(c)})

    @classmethod
    def quotient_letter(cls, ctx, cap, q, c=1):
        return cls(ctx, cap, {((), (q,), 0): Fraction(c)})

    @classmethod
    def center(cls, ctx, cap, c=1):
        if not ctx.has_center:
            raise ValueError("context has no center letter")
        return cls(ctx, cap, {((), (), 1): Fraction(c)})

    def _compat(self, other):
        if self.ctx is not other.ctx or self.cap != other.cap:
            raise ValueError("smash context or degree-cap mismatch")

    def __eq__(self, other):
        if not isinstance(other, SmashElem):
            return NotImplemented
        return self.ctx is other.ctx and self.cap == other.cap and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get(((), (), 0), Fraction(0))

    def valuation(self):
        if not self.terms:
            return self.cap + 1
        return min(len(k[0]) + len(k[1]) + k[2] for k in self.terms)

    def homogeneous_part(self, d):
        return SmashElem(self.ctx, self.cap,
                         {k: c for k, c in self.terms.items()
                          if len(k[0]) + len(k[1]) + k[2] == d}, _clean=True)

    def truncated(self, cap):
        if cap > self.cap:
            raise ValueError("cannot extend a truncated element")
        return SmashElem(self.ctx, cap,
                         {k: c for k, c in self.terms.items()
                          if len(k[0]) + len(k[1]) + k[2] <= cap}, _clean=True)

    def __add__(self, other):
        self._compat(other)
        d = dict(self.terms)
        merge(d, other.terms)
        return SmashElem(self.ctx, self.cap, d, _clean=True)

    def __sub__(self, other):
        self._compat(other)
        d = dict(self.terms)
        merge(d, other.terms, -1)
        return SmashElem(self.ctx, self.cap, d, _clean=True)

    def __neg__(self):
        return SmashElem(self.ctx, self.cap, {k: -c for k, c in self.terms.items()},
                         _clean=True)

    def scale(self, c):
        return SmashElem(self.ctx, self.cap, scaled(self.terms, c), _clean=True)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._compat(other)
        cap = self.cap
        ctx = self.ctx
        d = {}
        for (u1, m1, k1), a in self.terms.items():
            d1 = len(u1) + len(m1) + k1
            for (u2, m2, k2), b in other.terms.items():
                if d1 + len(u2) + len(m2) + k2 > cap:
                    continue
                c = a * b
                if not u2 or not m1:
                    add_term(d, (u1 + u2, m1 + m2, k1 + k2), c)
                    continue
                for (w, msub), f in ctx.push(m1, u2).items():
                    add_term(d, (u1 + w, msub + m2, k1 + k2), c * f)
        return SmashElem(self.ctx, self.cap, d, _clean=True)

    def commutator(self, other):
        return self * other - other * self

    def inverse(self):
        c0 = self.constant_term()
        if not c0:
            raise ValueError("inverse requires an invertible constant term")
        x = (self - SmashElem.one(self.ctx, self.cap).scale(c0)).scale(Fraction(1) / c0)
        out = SmashElem.one(self.ctx, self.cap)
        acc = SmashElem.one(self.ctx, self.cap)
        sign = -1
        for _ in range(self.cap):
            acc = acc * x
            if acc.is_zero():
                break
            out = out + acc.scale(sign)
            sign = -sign
        return out.scale(Fraction(1) / c0)

    def exp(self):
        if self.constant_term():
            raise ValueError("exp requires zero constant term")
        out = SmashElem.one(self.ctx, self.cap)
        acc = SmashElem.one(self.ctx, self.cap)
        for k in range(1, self.cap + 1):
            acc = acc * self
            if acc.is_zero():
                break
            out = out + acc.scale(Fraction(1, factorial(k)))
        return out

    def __repr__(self):
        def key_str(k):
            u, m, cp = k
            iw = ".".join(self.ctx.ideal_letters[i] for i in u)
            qw = ".".join(self.ctx.quotient_letters[q] for q in m)
            if cp:
                qw = ".".join(filter(None, [qw] + [self.ctx.center_name] * cp))
            return (iw or "1") + ("⊗" + qw if qw else "")

        parts = [f"{c}*{key_str(k)}" for k, c in sorted(
            self.terms.items(), key=lambda kv: (len(kv[0][0]) + len(kv[0][1]) + kv[0][2], kv[0]))[:6]]
        more = " + ..." if len(self.terms) > 6 else ""
        return "<smash " + (" + ".join(parts) if parts else "0") + more + ">"


# -- degree-1 elements by generator name ---------------------------------------


def p5_generator(cap, name):
    """Any of the ten degree-1 generators e_ij, or the grouped shorthands
    e12,5 / e34,5 / e123,5 / e45, expressed in the smash basis."""
    S = SmashElem
    e15 = S.ideal_letter(P5CTX, cap, 0)
    e25 = S.ideal_letter(P5CTX, cap, 1)
    e35 = S.ideal_letter(P5CTX, cap, 2)
    E0 = S.quotient_letter(P5CTX, cap, 0)   # e23
    E1 = S.quotient_letter(P5CTX, cap, 1)   # e12
    table = {
        "e15": e15, "e25": e25, "e35": e35, "e23": E0, "e12": E1,
        "e45": -e15 - e25 - e35,
        "e24": -E0 - E1 - e25,
        "e13": -E0 - E1 - e15 - e25 - e35,
        "e14": E0 + e25 + e35,
        "e34": E1 + e15 + e25,
        "e12,5": e15 + e25,
        "e34,5": -e15 - e25,
        "e123,5": e15 + e25 + e35,
    }
    return table[name]


def t4_generator(cap, name):
    S = SmashElem
    t14 = S.ideal_letter(T4CTX, cap, 0)
    t24 = S.ideal_letter(T4CTX, cap, 1)
    t34 = S.ideal_letter(T4CTX, cap, 2)
    t12 = S.quotient_letter(T4CTX, cap, 0)
    t23 = S.quotient_letter(T4CTX, cap, 1)
    c = S.center(T4CTX, cap)
    table = {
        "t14": t14, "t24": t24, "t34": t34, "t12": t12, "t23": t23, "c": c,
        "t13": c - t12 - t23 - t14 - t24 - t34,
    }
    return table[name]


# -- morphisms to and from the two-letter algebra -------------------------------

_EINF = (("e0",), -1), (("e1",), -1)  # e_infinity = -e0-e1


def _pr_images(cap, which):
    e0 = TruncSeries.letter(E2, cap, "e0")
    e1 = TruncSeries.letter(E2, cap, "e1")
    einf = -e0 - e1
    zero = TruncSeries.zero(E2, cap)
    if which == 5:
        return (zero, zero, zero), (e0, e1)
    if which == 1:
        return (zero, e1, einf), (e0, zero)
    if which == 2:
        return (e1, zero, e0), (zero, zero)
    raise ValueError("which must be 1, 2 or 5")


def pr_map(i, elem):
    """Strand-forgetting algebra morphism U(p5) -> series on (e0, e1)."""
    if elem.ctx is not P5CTX:
        raise ValueError("pr_map applies to the p5 context")
    ideal_imgs, quot_imgs = _pr_images(elem.cap, i)
    out = TruncSeries.zero(E2, elem.cap)
    cache = {(): TruncSeries.one(E2, elem.cap)}

    def img(seq):
        v = cache.get(seq)
        if v is None:
            kind, idx = seq[-1]
            v = img(seq[:-1]) * (ideal_imgs[idx] if kind == 0 else quot_imgs[idx])
            cache[seq] = v
        return v

    for (u, m, k), c in elem.terms.items():
        if k:
            raise ValueError("center letter has no strand projection")
        seq = tuple((0, i2) for i2 in u) + tuple((1, q) for q in m)
        out = out + img(seq).scale(c)
    return out


def pr12_map(elem):
    """(pr1, pr2) into the tensor square, as an algebra morphism."""
    if elem.ctx is not P5CTX:
        raise ValueError("pr12_map applies to the p5 context")
    cap = elem.cap
    e0 = TruncSeries.letter(E2, cap, "e0")
    e1 = TruncSeries.letter(E2, cap, "e1")
    einf = -e0 - e1
    zero = TensorSeries.zero(E2, cap)
    from .series import embed_left, embed_right
    ideal_imgs = (embed_right(e1), embed_left(e1), embed_left(einf) + embed_right(e0))
    quot_imgs = (embed_left(e0), zero)
    out = TensorSeries.zero(E2, cap)
    cache = {(): TensorSeries.one(E2, cap)}

    def img(seq):
        v = cache.get(seq)
        if v is None:
            kind, idx = seq[-1]
            v = img(seq[:-1]) * (ideal_imgs[idx] if kind == 0 else quot_imgs[idx])
            cache[seq] = v
        return v

    for (u, m, k), c in elem.terms.items():
        if k:
            raise ValueError("center letter has no strand projection")
        seq = tuple((0, i2) for i2 in u) + tuple((1, q) for q in m)
        out = out + img(seq).scale(c)
    return out


def ell_map(series, cap=None):
    """Section of pr_5: e0 -> e23, e1 -> e12 on the two-letter series algebra."""
    cap = series.cap if cap is None else cap
    d = {}
    for w, c in series.terms.items():
        add_term(d, ((), w, 0), c)
    return SmashElem(P5CTX, cap, d, _clean=True)


def f3_component(elem):
    """(member, part): member iff every term is a pure free-Lie-kernel word;
    the part is returned as a series over (e15, e25, e35)."""
    d = {}
    for (u, m, k), c in elem.terms.items():
        if m or k:
            return False, None
        d[u] = c
    return True, TruncSeries(F3E, elem.cap, d, _clean=True)


def from_f3_series(series, cap=None):
    cap = series.cap if cap is None else cap
    return SmashElem(P5CTX, cap, {(w, (), 0): c for w, c in series.terms.items()})


def decompose_right_e5(elem):
    """Write an element of ker(pr_5) as sum_i p_i * e_{i5}; returns (p_1, p_2, p_3).

    Terms with an empty ideal word are not in the kernel (pr_5 is injective on
    the quotient part), so their presence is an error.
    """
    if elem.ctx is not P5CTX:
        raise ValueError("decompose_right_e5 applies to the p5 context")
    cap = elem.cap
    zero = SmashElem.zero(P5CTX, cap)
    parts = [zero, zero, zero]
    letters = [SmashElem.ideal_letter(P5CTX, cap, i) for i in range(3)]
    quots = [SmashElem.quotient_letter(P5CTX, cap, q) for q in range(2)]
    cache = {}

    def term_parts(u, m):
        if not u:
            raise ValueError("element is not in the kernel of pr_5")
        key = (u, m)
        got = cache.get(key)
        if got is not None:
            return got
        if not m:
            res = [zero, zero, zero]
            res[u[-1]] = SmashElem(P5CTX, cap, {(u[:-1], (), 0): Fraction(1)}, _clean=True)
            res = tuple(res)
        else:
            q = m[-1]
            inner = term_parts(u, m[:-1])
            res = [inner[j] * quots[q] for j in range(3)]
            sigma_q = P5CTX.sigma[q]
            for i in range(3):
                if inner[i].is_zero():
                    continue
                for (x, y), c in sigma_q[i].items():
                    # p_i * [q, e_i5] with [q, e_i5] = sum c * (x then y)
                    res[y] = res[y] - (inner[i] * letters[x]).scale(c)
            res = tuple(res)
        cache[key] = res
        return res

    for (u, m, k), c in elem.terms.items():
        if k:
            raise ValueError("unexpected center letter")
        tp = term_parts(u, m)
        parts = [parts[j] + tp[j].scale(c) for j in range(3)]
    return tuple(parts)


# -- dimension formulas and the independent quotient oracle ---------------------


def dim_u_p5(d):
    """Graded dimension of the five-strand enveloping algebra."""
    return 3 ** (d + 1) - 2 ** (d + 1)


def dim_u_t4(d):
    """Graded dimension of the four-strand Artin braid enveloping algebra."""
    return sum(3 ** i * 2 ** j for i in range(d + 1) for j in range(d + 1 - i))


def _p5_linear_images():
    """The ten degree-1 generators as rows over the five basis letters
    (e15, e25, e35, e23, e12); the five sum relations are eliminated by
    substitution, leaving the fifteen distant-commutation relations."""
    A, B, C, Q0, Q1 = range(5)
    return {
        "e15": {A: 1}, "e25": {B: 1}, "e35": {C: 1}, "e23": {Q0: 1}, "e12": {Q1: 1},
        "e45": {A: -1, B: -1, C: -1},
        "e24": {Q0: -1, Q1: -1, B: -1},
        "e13": {Q0: -1, Q1: -1, A: -1, B: -1, C: -1},
        "e14": {Q0: 1, B: 1, C: 1},
        "e34": {Q1: 1, A: 1, B: 1},
    }


def _commutator_row(la, lb):
    row = {}
    for x, cx in la.items():
        for y, cy in lb.items():
            add_term(row, (x, y), Fraction(cx * cy))
            add_term(row, (y, x), Fraction(-cx * cy))
    return row


def quadratic_relations(name):
    """Defining quadratic relations as {2-letter word over basis letters: coeff}."""
    if name == "p5":
        lin = _p5_linear_images()
        pairs = []
        gens = [(i, j) for i in range(1, 6) for j in range(i + 1, 6)]
        for a in range(len(gens)):
            for b in range(a + 1, len(gens)):
                if not set(gens[a]) & set(gens[b]):
                    pairs.append((gens[a], gens[b]))
        rows = []
        for (i, j), (k, l) in pairs:
            rows.append(_commutator_row(lin[f"e{i}{j}"], lin[f"e{k}{l}"]))
        return 5, rows
    if name == "t4":
        # letters (t12, t13, t23, t14, t24, t34)
        idx = {(1, 2): 0, (1, 3): 1, (2, 3): 2, (1, 4): 3, (2, 4): 4, (3, 4): 5}

        def lin(p):
            return {idx[p]: 1}

        rows = []
        for (i, j, k) in ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)):
            for (p, rest) in (((i, j), ((i, k), (j, k))),
                              ((i, k), ((i, j), (j, k))),
                              ((j, k), ((i, j), (i, k)))):
                other = {}
                for r in rest:
                    merge(other, lin(r))
                rows.append(_commutator_row(lin(p), other))
        for p, q in (((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))):
            rows.append(_commutator_row(lin(p), lin(q)))
        return 6, rows
    raise ValueError(name)


class QuotientOracle:
    """Free algebra on the basis letters modulo the quadratic relation ideal,
    reduced degree by degree; independent of the smash straightening."""

    def __init__(self, name, maxdeg):
        self.name = name
        self.maxdeg = maxdeg
        self.nletters, rels = quadratic_relations(name)
        self.reducers = {0: SpanReducer(), 1: SpanReducer()}
        words = {0: [()], 1: [(i,) for i in range(self.nletters)]}
        for d in range(2, maxdeg + 1):
            words[d] = [w + (i,) for w in words[d - 1] for i in range(self.nletters)]
            red = SpanReducer()
            for split in range(d - 1):
                for wl in words[split]:
                    for rel in rels:
                        for wr in words[d - 2 - split]:
                            red.add({wl + pair + wr: c for pair, c in rel.items()})
            self.reducers[d] = red

    def dim(self, d):
        return self.nletters ** d - self.reducers[d].rank

    def smash_to_free(self, elem):
        """Image of a smash element in the free algebra on the basis letters."""
        out = {}
        if self.name == "p5":
            for (u, m, k), c in elem.terms.items():
                assert k == 0
                add_term(out, tuple(u) + tuple(3 + q for q in m), c)
            return out
        # t4: basis letters (t12, t13, t23, t14, t24, t34); ideal letters map to
        # (t14, t24, t34) = (3, 4, 5); quotient (t12, t23) = (0, 2); center = sum of all
        for (u, m, k), c in elem.terms.items():
            base = tuple(3 + i for i in u) + tuple({0: 0, 1: 2}[q] for q in m)
            words = [base]
            for _ in range(k):
                words = [w + (i,) for w in words for i in range(6)]
            for w in words:
                add_term(out, w, c)
        return out

    def reduce(self, free_elem):
        """Normal form modulo the relation ideal, split by degree."""
        by_deg = {}
        for w, c in free_elem.items():
            by_deg.setdefault(len(w), {})[w] = c
        out = {}
        for d, comp in by_deg.items():
            if d > self.maxdeg:
                raise ValueError("degree exceeds the oracle's table")
            merge(out, self.reducers[d].reduce(comp))
        return out

    def is_zero(self, free_elem):
        return not self.reduce(free_elem)

    def products_agree(self, x, y):
        """Does smash multiplication match the free-quotient product of x, y?"""
        fx, fy = self.smash_to_free(x), self.smash_to_free(y)
        prod = {}
        for u, a in fx.items():
            for w, b in fy.items():
                add_term(prod, u + w, a * b)
        merge(prod, self.smash_to_free(x * y), -1)
        return self.is_zero(prod)
