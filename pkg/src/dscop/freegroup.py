"""Free groups, their group algebras over Q, Fox decomposition, filtration degree.

Group words are tuples of nonzero ints: letter k (1-based generator index)
stands for the generator, -k for its inverse. Words are kept freely reduced.
"""

from fractions import Fraction

from ._lin import add_term, merge, scaled
from .series import E2, TruncSeries


class FreeGroup:
    """A free group on named generators; elements are reduced int-tuples."""

    def __init__(self, gen_names):
        gen_names = tuple(gen_names)
        if len(set(gen_names)) != len(gen_names):
            raise ValueError("generator names must be distinct")
        self.gen_names = gen_names
        self.index = {n: i + 1 for i, n in enumerate(gen_names)}

    def __repr__(self):
        return f"FreeGroup{self.gen_names}"

    def __eq__(self, other):
        return isinstance(other, FreeGroup) and self.gen_names == other.gen_names

    def __hash__(self):
        return hash(self.gen_names)

    @property
    def rank(self):
        return len(self.gen_names)

    def gen(self, name, power=1):
        k = self.index[name]
        return reduce_word([k if power > 0 else -k] * abs(power))

    def word(self, syllables):
        """Build a reduced word from (name, exponent) pairs."""
        letters = []
        for name, e in syllables:
            k = self.index.get(name)
            if k is None:
                raise ValueError(f"unknown generator {name!r}")
            letters.extend([k if e > 0 else -k] * abs(e))
        return reduce_word(letters)

    def word_str(self, word):
        """Serialize as X0.X1^-1.X0^2."""
        if not word:
            return "1"
        out = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            name = self.gen_names[abs(word[i]) - 1]
            e = (j - i) * (1 if word[i] > 0 else -1)
            out.append(name if e == 1 else f"{name}^{e}")
            i = j
        return ".".join(out)

    def parse_word(self, text):
        text = text.strip()
        if text in ("", "1"):
            return ()
        sylls = []
        for chunk in text.split("."):
            if "^" in chunk:
                name, e = chunk.split("^")
                sylls.append((name, int(e)))
            else:
                sylls.append((chunk, 1))
        return self.word(sylls)


F2 = FreeGroup(("X0", "X1"))
F3 = FreeGroup(("x15", "x25", "x35"))


def reduce_word(letters):
    out = []
    for l in letters:
        if l == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def mul_words(a, b):
    out = list(a)
    for l in b:
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def inv_word(a):
    return tuple(-l for l in reversed(a))


class GroupAlgElem:
    """Finite rational combination of reduced group words."""

    __slots__ = ("group", "terms")

    def __init__(self, group, terms=None, _clean=False):
        self.group = group
        if terms is None:
            terms = {}
        if not _clean:
            terms = {w: Fraction(c) for w, c in terms.items() if c}
        self.terms = terms

    @classmethod
    def zero(cls, group):
        return cls(group, {}, _clean=True)

    @classmethod
    def one(cls, group):
        return cls(group, {(): Fraction(1)}, _clean=True)

    @classmethod
    def from_word(cls, group, word, c=1):
        return cls(group, {word: Fraction(c)})

    def _compat(self, other):
        if self.group != other.group:
            raise ValueError("generator-set mismatch")

    def __eq__(self, other):
        if not isinstance(other, GroupAlgElem):
            return NotImplemented
        return self.group == other.group and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def augmentation(self):
        return sum(self.terms.values(), Fraction(0))

    def __add__(self, other):
        self._compat(other)
        d = dict(self.terms)
        merge(d, other.terms)
        return GroupAlgElem(self.group, d, _clean=True)

    def __sub__(self, other):
        self._compat(other)
        d = dict(self.terms)
        merge(d, other.terms, -1)
        return GroupAlgElem(self.group, d, _clean=True)

    def __neg__(self):
        return GroupAlgElem(self.group, {w: -c for w, c in self.terms.items()}, _clean=True)

    def scale(self, c):
        return GroupAlgElem(self.group, scaled(self.terms, c), _clean=True)

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
            for w, b in other.terms.items():
                add_term(d, mul_words(u, w), a * b)
        return GroupAlgElem(self.group, d, _clean=True)

    def __pow__(self, n):
        out = GroupAlgElem.one(self.group)
        for _ in range(abs(n)):
            out = out * self
        return out  # negative powers only for single invertible words; not needed

    def __repr__(self):
        parts = [f"{c}*{self.group.word_str(w)}" for w, c in
                 sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))[:6]]
        more = " + ..." if len(self.terms) > 6 else ""
        return "<" + (" + ".join(parts) if parts else "0") + more + ">"


def ga_gen(group, name, power=1):
    return GroupAlgElem.from_word(group, group.gen(name, power))


def fox_decompose(group, word):
    """The unique (f_i) with word - 1 = sum_i f_i (a_i - 1) in the group algebra.

    Built by prefix expansion: for w = s_1...s_m,
    w - 1 = sum_j prefix_j * (s_j - 1) with prefix_j = s_1...s_{j-1},
    and s - 1 = (a_i - 1) resp. -a_i^{-1} (a_i - 1) for s = a_i resp. a_i^{-1}.
    """
    out = [GroupAlgElem.zero(group) for _ in range(group.rank)]
    prefix = ()
    for l in word:
        i = abs(l) - 1
        if l > 0:
            out[i] = out[i] + GroupAlgElem.from_word(group, prefix)
        else:
            out[i] = out[i] - GroupAlgElem.from_word(group, mul_words(prefix, (l,)))
        prefix = mul_words(prefix, (l,))
    return out


class GroupHom:
    """Group morphism into an associative algebra, applied to group-algebra elements.

    Each generator image must be invertible in the target; word images are
    cached (prefix products), so repeated evaluation over a session is cheap.
    """

    def __init__(self, group, images_by_name, one):
        self.group = group
        self.one = one
        self.pos = []
        self.neg = []
        for n in group.gen_names:
            img = images_by_name[n]
            self.pos.append(img)
            self.neg.append(img.inverse())
        self.cache = {(): one}

    def word_image(self, word):
        v = self.cache.get(word)
        if v is None:
            l = word[-1]
            head = self.word_image(word[:-1])
            v = head * (self.pos[l - 1] if l > 0 else self.neg[-l - 1])
            self.cache[word] = v
        return v

    def __call__(self, elem):
        if isinstance(elem, tuple):
            return self.word_image(elem)
        out = self.one.scale(0)
        for w, c in elem.terms.items():
            out = out + self.word_image(w).scale(c)
        return out


def iso_mu(cap, mu=1):
    """The exponential isomorphism kF2 -> series on (e0, e1): X_i -> exp(mu e_i)."""
    mu = Fraction(mu)
    images = {
        "X0": TruncSeries.letter(E2, cap, "e0", mu).exp(),
        "X1": TruncSeries.letter(E2, cap, "e1", mu).exp(),
    }
    return GroupHom(F2, images, TruncSeries.one(E2, cap))


def filtration_degree(elem, cap, hom=None):
    """Augmentation-ideal valuation of a kF2 element, computed through iso_1.

    Returns v <= cap with elem in I^v \\ I^{v+1}, or cap+1 meaning ">= cap+1".
    """
    if hom is None:
        hom = iso_mu(cap)
    return hom(elem).valuation()


# -- tensor square of the group algebra ---------------------------------------


class GroupTensor:
    """Element of (kF)^(x)2 for a fixed free group; exact, no truncation."""

    __slots__ = ("group", "terms")

    def __init__(self, group, terms=None, _clean=False):
        self.group = group
        if terms is None:
            terms = {}
        if not _clean:
            terms = {k: Fraction(c) for k, c in terms.items() if c}
        self.terms = terms

    @classmethod
    def zero(cls, group):
        return cls(group, {}, _clean=True)

    @classmethod
    def one(cls, group):
        return cls(group, {((), ()): Fraction(1)}, _clean=True)

    def _compat(self, other):
        if self.group != other.group:
            raise ValueError("group mismatch")

    def __eq__(self, other):
        if not isinstance(other, GroupTensor):
            return NotImplemented
        return self.group == other.group and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        self._compat(other)
        d = dict(self.terms)
        merge(d, other.terms)
        return GroupTensor(self.group, d, _clean=True)

    def __sub__(self, other):
        self._compat(other)
        d = dict(self.terms)
        merge(d, other.terms, -1)
        return GroupTensor(self.group, d, _clean=True)

    def __neg__(self):
        return GroupTensor(self.group, {k: -c for k, c in self.terms.items()}, _clean=True)

    def scale(self, c):
        return GroupTensor(self.group, scaled(self.terms, c), _clean=True)

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
            for (u2, w2), b in other.terms.items():
                add_term(d, (mul_words(u1, u2), mul_words(w1, w2)), a * b)
        return GroupTensor(self.group, d, _clean=True)

    def left_fibers(self):
        fibers = {}
        for (u, w), c in self.terms.items():
            fibers.setdefault(w, {})[u] = c
        return {w: GroupAlgElem(self.group, d, _clean=True) for w, d in fibers.items()}

    def right_fibers(self):
        fibers = {}
        for (u, w), c in self.terms.items():
            fibers.setdefault(u, {})[w] = c
        return {u: GroupAlgElem(self.group, d, _clean=True) for u, d in fibers.items()}

    def map_legs(self, f_left, f_right):
        """Apply linear maps (GroupAlgElem -> GroupAlgElem) to the tensor legs.

        Each map is applied fiberwise (fibers of a tensor in A (x) A lie in A,
        single basis words need not)."""
        mid = {}
        for w, fib in self.left_fibers().items():
            for u, c in f_left(fib).terms.items():
                add_term(mid, (u, w), c)
        out = GroupTensor.zero(self.group)
        for u, fib in GroupTensor(self.group, mid, _clean=True).right_fibers().items():
            out = out + gt_tensor(GroupAlgElem.from_word(self.group, u), f_right(fib))
        return out

    def __repr__(self):
        return f"<group tensor, {len(self.terms)} terms>"


def gt_tensor(a, b):
    a._compat(b)
    d = {}
    for u, ca in a.terms.items():
        for w, cb in b.terms.items():
            add_term(d, (u, w), ca * cb)
    return GroupTensor(a.group, d, _clean=True)


def gt_embed(a, leg):
    one = GroupAlgElem.one(a.group)
    return gt_tensor(a, one) if leg == 0 else gt_tensor(one, a)
