"""Truncated noncommutative power series with exact rational coefficients.

Everything is computed through a fixed total degree cap N; terms beyond the
cap are discarded by every operation. Coefficients are `fractions.Fraction`,
words are tuples of letter indices into a fixed alphabet (a tuple of names).
Values are immutable after construction and safe to share.

The canonical two-letter alphabet is E2 = ("e0", "e1"); the x-convention of
classical iterated-integral coefficients is reached through `coeff_x`
(x0 = e0, x1 = -e1).
"""

from fractions import Fraction
from functools import lru_cache

from ._lin import add_term, merge, scaled

E2 = ("e0", "e1")
F3E = ("e15", "e25", "e35")


def check_alphabet(letters):
    letters = tuple(letters)
    if not letters:
        raise ValueError("alphabet must be nonempty")
    if len(set(letters)) != len(letters):
        raise ValueError("alphabet letters must be distinct")
    return letters


def word_from_names(alphabet, names):
    idx = {l: i for i, l in enumerate(alphabet)}
    return tuple(idx[n] for n in names)


class TruncSeries:
    """Element of the free associative algebra on `alphabet`, truncated at degree `cap`."""

    __slots__ = ("alphabet", "cap", "terms")

    def __init__(self, alphabet, cap, terms=None, _clean=False):
        self.alphabet = tuple(alphabet)
        self.cap = cap
        if terms is None:
            terms = {}
        if not _clean:
            terms = {w: Fraction(c) for w, c in terms.items() if c and len(w) <= cap}
        self.terms = terms

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, alphabet, cap):
        return cls(alphabet, cap, {}, _clean=True)

    @classmethod
    def one(cls, alphabet, cap):
        return cls(alphabet, cap, {(): Fraction(1)}, _clean=True)

    @classmethod
    def letter(cls, alphabet, cap, name, c=1):
        w = word_from_names(alphabet, (name,))
        return cls(alphabet, cap, {w: Fraction(c)})

    @classmethod
    def from_words(cls, alphabet, cap, items):
        """items: iterable of (names-tuple, coeff)."""
        d = {}
        for names, c in items:
            add_term(d, word_from_names(alphabet, names), Fraction(c))
        return cls(alphabet, cap, d)

    # -- basics ------------------------------------------------------------

    def _compat(self, other):
        if self.alphabet != other.alphabet or self.cap != other.cap:
            raise ValueError("alphabet or degree-cap mismatch")

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.cap == other.cap
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.alphabet, self.cap, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get((), Fraction(0))

    def valuation(self):
        """Lowest degree with a nonzero term; cap+1 for the zero series."""
        if not self.terms:
            return self.cap + 1
        return min(len(w) for w in self.terms)

    def coeff(self, word):
        """Coefficient of a word given by letter names (or indices)."""
        if word and isinstance(word[0], str):
            word = word_from_names(self.alphabet, word)
        else:
            word = tuple(word)
        if len(word) > self.cap:
            raise ValueError("word longer than the degree cap")
        return self.terms.get(word, Fraction(0))

    def homogeneous_part(self, d):
        return TruncSeries(self.alphabet, self.cap,
                           {w: c for w, c in self.terms.items() if len(w) == d},
                           _clean=True)

    def truncated(self, cap):
        if cap > self.cap:
            raise ValueError("cannot extend a truncated series")
        return TruncSeries(self.alphabet, cap,
                           {w: c for w, c in self.terms.items() if len(w) <= cap},
                           _clean=True)

    # -- linear structure ----------------------------------------------------

    def __add__(self, other):
        self._compat(other)
        d = dict(self.terms)
        merge(d, other.terms)
        return TruncSeries(self.alphabet, self.cap, d, _clean=True)

    def __sub__(self, other):
        self._compat(other)
        d = dict(self.terms)
        merge(d, other.terms, -1)
        return TruncSeries(self.alphabet, self.cap, d, _clean=True)

    def __neg__(self):
        return TruncSeries(self.alphabet, self.cap,
                           {w: -c for w, c in self.terms.items()}, _clean=True)

    def scale(self, c):
        return TruncSeries(self.alphabet, self.cap, scaled(self.terms, c), _clean=True)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    # -- multiplicative structure --------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._compat(other)
        cap = self.cap
        d = {}
        by_len = {}
        for w, c in other.terms.items():
            by_len.setdefault(len(w), []).append((w, c))
        for u, a in self.terms.items():
            room = cap - len(u)
            for lv, items in by_len.items():
                if lv > room:
                    continue
                for w, b in items:
                    add_term(d, u + w, a * b)
        return TruncSeries(self.alphabet, self.cap, d, _clean=True)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = TruncSeries.one(self.alphabet, self.cap)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def inverse(self):
        c0 = self.constant_term()
        if not c0:
            raise ValueError("inverse requires an invertible constant term")
        # geometric series in the augmentation-positive part
        x = (self - TruncSeries.one(self.alphabet, self.cap).scale(c0)).scale(Fraction(1) / c0)
        out = TruncSeries.one(self.alphabet, self.cap)
        acc = TruncSeries.one(self.alphabet, self.cap)
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
        out = TruncSeries.one(self.alphabet, self.cap)
        acc = TruncSeries.one(self.alphabet, self.cap)
        for k in range(1, self.cap + 1):
            acc = acc * self
            if acc.is_zero():
                break
            out = out + acc.scale(Fraction(1, factorial(k)))
        return out

    def log(self):
        if self.constant_term() != 1:
            raise ValueError("log requires constant term 1")
        x = self - TruncSeries.one(self.alphabet, self.cap)
        out = TruncSeries.zero(self.alphabet, self.cap)
        acc = TruncSeries.one(self.alphabet, self.cap)
        for k in range(1, self.cap + 1):
            acc = acc * x
            if acc.is_zero():
                break
            out = out + acc.scale(Fraction((-1) ** (k + 1), k))
        return out

    def commutator(self, other):
        return self * other - other * self

    # -- misc ---------------------------------------------------------------

    def map_coeffs(self, f):
        d = {}
        for w, c in self.terms.items():
            add_term(d, w, f(c))
        return TruncSeries(self.alphabet, self.cap, d, _clean=True)

    def scale_degrees(self, mu):
        """Algebra automorphism scaling every letter by mu (degree-d part by mu^d)."""
        mu = Fraction(mu)
        return TruncSeries(self.alphabet, self.cap,
                           {w: c * mu ** len(w) for w, c in self.terms.items()},
                           _clean=True)

    def __repr__(self):
        if not self.terms:
            return "<series 0>"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w))[:6]:
            name = ".".join(self.alphabet[i] for i in w) if w else "1"
            parts.append(f"{self.terms[w]}*{name}")
        more = " + ..." if len(self.terms) > 6 else ""
        return "<series " + " + ".join(parts) + more + ">"


@lru_cache(maxsize=None)
def factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def coeff_x(series, word_names):
    """Coefficient in the x-convention: x0 = e0, x1 = -e1.

    `word_names` uses the names "x0"/"x1"; the sign is (-1)^(#x1).
    """
    sign = 1
    idx = []
    for n in word_names:
        if n == "x0":
            idx.append(0)
        elif n == "x1":
            idx.append(1)
            sign = -sign
        else:
            raise ValueError(f"unknown x-letter {n!r}")
    return sign * series.coeff(tuple(idx))


# -- evaluation homomorphisms -------------------------------------------------


def apply_hom(series, images, one):
    """Unique continuous algebra morphism sending letter i to images[i].

    Every image must have positive valuation (zero constant term) in its target
    algebra, else truncated substitution is unsound. `one` is the target unit.
    Images are indexed by letter position in `series.alphabet`.
    """
    cache = {(): one}

    def img(word):
        v = cache.get(word)
        if v is None:
            v = img(word[:-1]) * images[word[-1]]
            cache[word] = v
        return v

    out = one.scale(0)
    for w in sorted(series.terms, key=len):
        out = out + img(w).scale(series.terms[w])
    return out


def eval_hom(series, images_by_name, one):
    """`apply_hom` with images keyed by letter name."""
    images = [images_by_name[l] for l in series.alphabet]
    return apply_hom(series, images, one)


# -- concatenation Hopf structure (shuffle coproduct) -------------------------


def shuffle_coproduct(series):
    """Coproduct with every letter primitive; lands in the tensor square."""
    out = {}
    for w, c in series.terms.items():
        n = len(w)
        for mask in range(1 << n):
            left = tuple(w[i] for i in range(n) if mask >> i & 1)
            right = tuple(w[i] for i in range(n) if not mask >> i & 1)
            add_term(out, (left, right), c)
    return TensorSeries(series.alphabet, series.cap, out, _clean=True)


def is_primitive(a, coproduct=shuffle_coproduct):
    """True when coproduct(a) = a (x) 1 + 1 (x) a through the cap."""
    d = coproduct(a)
    expected = tensor(a, TruncSeries.one(a.alphabet, a.cap)) + \
        tensor(TruncSeries.one(a.alphabet, a.cap), a)
    return d == expected


def is_grouplike(g, coproduct=shuffle_coproduct):
    if g.constant_term() != 1:
        return False
    return coproduct(g) == tensor(g, g)


# -- tensor square -------------------------------------------------------------


class TensorSeries:
    """Element of the completed tensor square of the series algebra.

    Terms are keyed by word pairs (u, w) with len(u)+len(w) <= cap; the two
    legs commute by construction: (u1,w1)*(u2,w2) = (u1u2, w1w2).
    """

    __slots__ = ("alphabet", "cap", "terms")

    def __init__(self, alphabet, cap, terms=None, _clean=False):
        self.alphabet = tuple(alphabet)
        self.cap = cap
        if terms is None:
            terms = {}
        if not _clean:
            terms = {k: Fraction(c) for k, c in terms.items()
                     if c and len(k[0]) + len(k[1]) <= cap}
        self.terms = terms

    @classmethod
    def zero(cls, alphabet, cap):
        return cls(alphabet, cap, {}, _clean=True)

    @classmethod
    def one(cls, alphabet, cap):
        return cls(alphabet, cap, {((), ()): Fraction(1)}, _clean=True)

    def _compat(self, other):
        if self.alphabet != other.alphabet or self.cap != other.cap:
            raise ValueError("alphabet or degree-cap mismatch")

    def __eq__(self, other):
        if not isinstance(other, TensorSeries):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.cap == other.cap
                and self.terms == other.terms)

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get(((), ()), Fraction(0))

    def __add__(self, other):
        self._compat(other)
        d = dict(self.terms)
        merge(d, other.terms)
        return TensorSeries(self.alphabet, self.cap, d, _clean=True)

    def __sub__(self, other):
        self._compat(other)
        d = dict(self.terms)
        merge(d, other.terms, -1)
        return TensorSeries(self.alphabet, self.cap, d, _clean=True)

    def __neg__(self):
        return TensorSeries(self.alphabet, self.cap,
                            {k: -c for k, c in self.terms.items()}, _clean=True)

    def scale(self, c):
        return TensorSeries(self.alphabet, self.cap, scaled(self.terms, c), _clean=True)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._compat(other)
        cap = self.cap
        d = {}
        for (u1, w1), a in self.terms.items():
            room = cap - len(u1) - len(w1)
            for (u2, w2), b in other.terms.items():
                if len(u2) + len(w2) > room:
                    continue
                add_term(d, (u1 + u2, w1 + w2), a * b)
        return TensorSeries(self.alphabet, self.cap, d, _clean=True)

    def __pow__(self, n):
        out = TensorSeries.one(self.alphabet, self.cap)
        for _ in range(n):
            out = out * self
        return out

    def inverse(self):
        c0 = self.constant_term()
        if not c0:
            raise ValueError("inverse requires an invertible constant term")
        x = (self - TensorSeries.one(self.alphabet, self.cap).scale(c0)).scale(Fraction(1) / c0)
        out = TensorSeries.one(self.alphabet, self.cap)
        acc = TensorSeries.one(self.alphabet, self.cap)
        sign = -1
        for k in range(1, self.cap + 1):
            acc = acc * x
            if acc.is_zero():
                break
            out = out + acc.scale(sign)
            sign = -sign
        return out.scale(Fraction(1) / c0)

    def exp(self):
        if self.constant_term():
            raise ValueError("exp requires zero constant term")
        out = TensorSeries.one(self.alphabet, self.cap)
        acc = TensorSeries.one(self.alphabet, self.cap)
        for k in range(1, self.cap + 1):
            acc = acc * self
            if acc.is_zero():
                break
            out = out + acc.scale(Fraction(1, factorial(k)))
        return out

    def swap_legs(self):
        return TensorSeries(self.alphabet, self.cap,
                            {(w, u): c for (u, w), c in self.terms.items()}, _clean=True)

    def truncated(self, cap):
        if cap > self.cap:
            raise ValueError("cannot extend a truncated series")
        return TensorSeries(self.alphabet, cap,
                            {k: c for k, c in self.terms.items()
                             if len(k[0]) + len(k[1]) <= cap}, _clean=True)

    def left_fibers(self):
        """Group terms by the right-leg word: word -> TruncSeries in the left leg."""
        fibers = {}
        for (u, w), c in self.terms.items():
            fibers.setdefault(w, {})[u] = c
        return {w: TruncSeries(self.alphabet, self.cap, d, _clean=True)
                for w, d in fibers.items()}

    def right_fibers(self):
        fibers = {}
        for (u, w), c in self.terms.items():
            fibers.setdefault(u, {})[w] = c
        return {u: TruncSeries(self.alphabet, self.cap, d, _clean=True)
                for u, d in fibers.items()}

    def map_legs(self, f_left, f_right):
        """Apply linear leg maps (TruncSeries -> TruncSeries) to each tensor
        factor, fiberwise on both sides."""
        mid = {}
        for w, fib in self.left_fibers().items():
            for u, c in f_left(fib).terms.items():
                if len(u) + len(w) <= self.cap:
                    add_term(mid, (u, w), c)
        half = TensorSeries(self.alphabet, self.cap, mid, _clean=True)
        out = TensorSeries.zero(self.alphabet, self.cap)
        for u, fib in half.right_fibers().items():
            lw = TruncSeries(self.alphabet, self.cap, {u: Fraction(1)}, _clean=True)
            out = out + tensor(lw, f_right(fib))
        return out

    def __repr__(self):
        n = len(self.terms)
        return f"<tensor series, {n} terms, cap {self.cap}>"


def tensor(a, b):
    """a (x) b as a TensorSeries (legs commute)."""
    a._compat(b)
    cap = a.cap
    d = {}
    for u, ca in a.terms.items():
        room = cap - len(u)
        for w, cb in b.terms.items():
            if len(w) > room:
                continue
            add_term(d, (u, w), ca * cb)
    return TensorSeries(a.alphabet, cap, d, _clean=True)


def embed_left(a):
    return tensor(a, TruncSeries.one(a.alphabet, a.cap))


def embed_right(a):
    return tensor(TruncSeries.one(a.alphabet, a.cap), a)


# -- one commuting variable ----------------------------------------------------


class UniSeries:
    """Truncated power series in one commuting variable t."""

    __slots__ = ("cap", "coeffs")

    def __init__(self, cap, coeffs=None):
        self.cap = cap
        cs = [Fraction(0)] * (cap + 1)
        if coeffs is not None:
            for k, c in (coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)):
                if k <= cap:
                    cs[k] = Fraction(c)
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, cap):
        return cls(cap)

    @classmethod
    def one(cls, cap):
        return cls(cap, {0: 1})

    @classmethod
    def t(cls, cap, c=1):
        return cls(cap, {1: c})

    def __eq__(self, other):
        return isinstance(other, UniSeries) and self.cap == other.cap and self.coeffs == other.coeffs

    def __add__(self, other):
        return UniSeries(self.cap, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return UniSeries(self.cap, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return UniSeries(self.cap, [-a for a in self.coeffs])

    def scale(self, c):
        c = Fraction(c)
        return UniSeries(self.cap, [c * a for a in self.coeffs])

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out = [Fraction(0)] * (self.cap + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b and i + j <= self.cap:
                    out[i + j] += a * b
        return UniSeries(self.cap, out)

    def inverse(self):
        c0 = self.coeffs[0]
        if not c0:
            raise ValueError("inverse requires a unit constant term")
        inv0 = Fraction(1) / c0
        out = [inv0] + [Fraction(0)] * self.cap
        for n in range(1, self.cap + 1):
            s = Fraction(0)
            for k in range(1, n + 1):
                s += self.coeffs[k] * out[n - k]
            out[n] = -inv0 * s
        return UniSeries(self.cap, out)

    def exp(self):
        if self.coeffs[0]:
            raise ValueError("exp requires zero constant term")
        out = UniSeries.one(self.cap)
        acc = UniSeries.one(self.cap)
        for k in range(1, self.cap + 1):
            acc = acc * self
            out = out + acc.scale(Fraction(1, factorial(k)))
        return out

    def log(self):
        if self.coeffs[0] != 1:
            raise ValueError("log requires constant term 1")
        x = self - UniSeries.one(self.cap)
        out = UniSeries.zero(self.cap)
        acc = UniSeries.one(self.cap)
        for k in range(1, self.cap + 1):
            acc = acc * x
            out = out + acc.scale(Fraction((-1) ** (k + 1), k))
        return out

    def compose_scale(self, mu):
        """t -> mu*t."""
        mu = Fraction(mu)
        return UniSeries(self.cap, [c * mu ** k for k, c in enumerate(self.coeffs)])

    def shift_down(self):
        """Divide by t (valuation must be >= 1); the result's cap drops by one."""
        if self.coeffs[0]:
            raise ValueError("series has a constant term")
        return UniSeries(self.cap - 1, list(self.coeffs[1:]))

    def truncated(self, cap):
        if cap > self.cap:
            raise ValueError("cannot extend a truncated series")
        return UniSeries(cap, self.coeffs[:cap + 1])

    def substitute(self, x, one):
        """Evaluate at an algebra element x of positive valuation."""
        out = one.scale(self.coeffs[0])
        acc = one
        for k in range(1, self.cap + 1):
            acc = acc * x
            if acc.is_zero():
                break
            if self.coeffs[k]:
                out = out + acc.scale(self.coeffs[k])
        return out

    def __repr__(self):
        parts = [f"{c}*t^{k}" for k, c in enumerate(self.coeffs) if c]
        return "<uniseries " + (" + ".join(parts) if parts else "0") + ">"


def exp_t(cap, c=1):
    """The series e^{c t}."""
    return UniSeries.t(cap, c).exp()
