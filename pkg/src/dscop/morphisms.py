"""Matrix morphisms on both sides of the comparison, and the diagram checks.

De Rham side: right-multiplication matrices on the free rank-3 basis of the
kernel ideal of the strand-5 projection of the five-strand enveloping
algebra; composing with the section and the (1,2) projections gives a
3x3-matrix morphism on two-letter series whose row/col contraction computes
the harmonic coproduct in the left/right normalization.

Betti side: the same construction on the group algebra of the five-strand
modular group, with the kernel basis (x_i5 - 1); the matrix entries come from
conjugator words and their Fox decomposition.

The comparison matrix P, the scalars kappa/u/v, and the commuting-square
checks culminating in the main comparison square live here as well.
"""

from fractions import Fraction

from ._lin import add_term
from .freegroup import (F2, F3, GroupAlgElem, GroupTensor, fox_decompose,
                        gt_tensor, inv_word)
from .p5 import (P5AlgElem, P5Elem, conjugator, p5_from_f2, p5_from_f3,
                 pr12_underline, xij)
from .series import (E2, F3E, TensorSeries, TruncSeries, UniSeries, apply_hom,
                     embed_left, embed_right, eval_hom, exp_t, tensor)
from .smash import P5CTX, SmashElem, decompose_right_e5, p5_generator, pr12_map

_X0, _X1 = 1, 2


class Mat3:
    """3x3 matrix over any of the algebra element types used here."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]
        assert len(self.rows) == 3 and all(len(r) == 3 for r in self.rows)

    @classmethod
    def identity(cls, one):
        zero = one.scale(0)
        return cls([[one if i == j else zero for j in range(3)] for i in range(3)])

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __eq__(self, other):
        return isinstance(other, Mat3) and self.rows == other.rows

    def __add__(self, other):
        return Mat3([[a + b for a, b in zip(r1, r2)]
                     for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Mat3([[a - b for a, b in zip(r1, r2)]
                     for r1, r2 in zip(self.rows, other.rows)])

    def __mul__(self, other):
        out = []
        for i in range(3):
            row = []
            for j in range(3):
                acc = self.rows[i][0] * other.rows[0][j]
                for k in (1, 2):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return Mat3(out)

    def map(self, f):
        return Mat3([[f(x) for x in r] for r in self.rows])

    def scale_all(self, s):
        """Multiply every entry by the scalar algebra element s, on the left."""
        return Mat3([[s * x for x in r] for r in self.rows])

    def is_zero(self):
        return all(x.is_zero() for r in self.rows for x in r)

    def inverse_scalar_lead(self):
        """Inverse when the constant part is c*Id: Neumann series in the
        positive-valuation remainder."""
        consts = [[x.constant_term() for x in r] for r in self.rows]
        c = consts[0][0]
        if not c or any(consts[i][j] != (c if i == j else 0)
                        for i in range(3) for j in range(3)):
            raise ValueError("constant part is not a nonzero multiple of the identity")
        one = _one_like(self.rows[0][0])
        ident = Mat3.identity(one)
        x = (self.scale_all(one.scale(Fraction(1) / c))) - ident
        cap = getattr(self.rows[0][0], "cap", None)
        out = ident
        acc = ident
        sign = -1
        for _ in range(cap):
            acc = acc * x
            if acc.is_zero():
                break
            out = out + acc.map(lambda e: e.scale(sign))
            sign = -sign
        return out.map(lambda e: e.scale(Fraction(1) / c))


def _one_like(x):
    if isinstance(x, TensorSeries):
        return TensorSeries.one(x.alphabet, x.cap)
    if isinstance(x, TruncSeries):
        return TruncSeries.one(x.alphabet, x.cap)
    if isinstance(x, SmashElem):
        return SmashElem.one(x.ctx, x.cap)
    raise TypeError(type(x))


def row_mat_col(row, mat, col):
    acc = None
    for i in range(3):
        for j in range(3):
            t = row[i] * mat.rows[i][j] * col[j]
            acc = t if acc is None else acc + t
    return acc


# -- de Rham matrices -------------------------------------------------------------


def varpi(p):
    """Right-multiplication matrix of a five-strand element on the kernel basis:
    e_i5 p = sum_j varpi(p)_ij e_j5."""
    cap = p.cap
    rows = []
    for i in range(3):
        rows.append(list(decompose_right_e5(SmashElem.ideal_letter(P5CTX, cap, i) * p)))
    return Mat3(rows)


def _rho_letter_mats(cap):
    e0m = varpi(p5_generator(cap, "e23")).map(pr12_map)
    e1m = varpi(p5_generator(cap, "e12")).map(pr12_map)
    return e0m, e1m


_RHO_CACHE = {}


def rho(f):
    """The 3x3-matrix morphism on two-letter series: compose the section, the
    right-multiplication matrix and the entrywise (1,2)-projection."""
    cap = f.cap
    mats = _RHO_CACHE.get(cap)
    if mats is None:
        one = TensorSeries.one(E2, cap)
        m0, m1 = _rho_letter_mats(cap)
        mats = {"letters": (m0, m1), "words": {(): Mat3.identity(one)}}
        _RHO_CACHE[cap] = mats
    letters = mats["letters"]
    words = mats["words"]

    def img(w):
        v = words.get(w)
        if v is None:
            v = img(w[:-1]) * letters[w[-1]]
            words[w] = v
        return v

    out = None
    for w, c in f.terms.items():
        t = img(w).map(lambda e: e.scale(c))
        out = t if out is None else out + t
    if out is None:
        zero = TensorSeries.zero(E2, cap)
        return Mat3([[zero] * 3] * 3)
    return out


def dr_row_col(cap):
    e1l = embed_left(TruncSeries.letter(E2, cap, "e1"))
    f1r = embed_right(TruncSeries.letter(E2, cap, "e1"))
    zero = TensorSeries.zero(E2, cap)
    one = TensorSeries.one(E2, cap)
    return [e1l, -f1r, zero], [one, -one, zero]


def rho_tilde(f):
    row, col = dr_row_col(f.cap)
    return row_mat_col(row, rho(f), col)


def rho_tilde_closed_form(cap, n):
    """e1 e0^n + f1 f0^n - sum_i (e1 e0^i)(f1 f0^(n-1-i))."""
    e0 = TruncSeries.letter(E2, cap, "e0")
    e1 = TruncSeries.letter(E2, cap, "e1")
    left = embed_left(e1 * e0 ** n)
    right = embed_right(e1 * e0 ** n)
    out = left + right
    for i in range(n):
        out = out - tensor(e1 * e0 ** i, e1 * e0 ** (n - 1 - i))
    return out


# -- Betti matrices ----------------------------------------------------------------


def _xi5_minus_1(i):
    return P5AlgElem({p5_from_f3((i,)): Fraction(1), P5Elem((), ()): Fraction(-1)},
                     _clean=True)


def varpi_bar_elem(g):
    """The right-multiplication matrix of a group element on the basis
    (x_i5 - 1): entries from the conjugator word and its Fox decomposition."""
    rows = []
    for i in (1, 2, 3):
        w = conjugator(g, i)
        gw = P5AlgElem.from_elem(g * p5_from_f3(w))
        fox = fox_decompose(F3, inv_word(w))
        lead = gw * _xi5_minus_1(i)
        row = []
        for j in (1, 2, 3):
            entry = P5AlgElem.zero()
            if i == j:
                entry = entry + gw
            fj = fox[j - 1]
            if not fj.is_zero():
                fj_p5 = P5AlgElem({p5_from_f3(wd): c for wd, c in fj.terms.items()},
                                  _clean=True)
                entry = entry + lead * fj_p5
            row.append(entry)
        rows.append(row)
    return Mat3(rows)


def varpi_bar(a):
    """Linear extension of the elementwise matrix."""
    if isinstance(a, P5Elem):
        return varpi_bar_elem(a)
    out = None
    for g, c in a.terms.items():
        m = varpi_bar_elem(g).map(lambda e: e.scale(c))
        out = m if out is None else out + m
    if out is None:
        zero = P5AlgElem.zero()
        return Mat3([[zero] * 3] * 3)
    return out


def rho_bar(f):
    """Betti analogue of the 3x3-matrix morphism, on the group algebra."""
    if isinstance(f, tuple):
        f = GroupAlgElem.from_word(F2, f)
    out = None
    for w, c in f.terms.items():
        m = varpi_bar_elem(p5_from_f2(w)).map(
            lambda e: pr12_underline(e).scale(c))
        out = m if out is None else out + m
    if out is None:
        zero = GroupTensor.zero(F2)
        return Mat3([[zero] * 3] * 3)
    return out


def betti_row_col():
    one = GroupTensor.one(F2)
    x1l = GroupTensor(F2, {((_X1,), ()): Fraction(1)}, _clean=True)
    y1r = GroupTensor(F2, {((), (_X1,)): Fraction(1)}, _clean=True)
    zero = GroupTensor.zero(F2)
    return [x1l - one, one - y1r, zero], [y1r, -one, zero]


def rho_bar_tilde(f):
    row, col = betti_row_col()
    return row_mat_col(row, rho_bar(f), col)


def rho_bar_tilde_closed_form(k):
    """(X1-1)X0^k x 1 + 1 x (1-X1^-1)X0^k X1 - sum_i (X1-1)X0^i x (1-X1^-1)X0^(k-i)X1,
    with the two-sided summation convention for k <= 0."""
    one = GroupAlgElem.one(F2)
    x1 = GroupAlgElem.from_word(F2, (_X1,))
    x1i = GroupAlgElem.from_word(F2, (-_X1,))

    def x0pow(j):
        return GroupAlgElem.from_word(F2, (_X0,) * j if j >= 0 else (-_X0,) * (-j))

    def left_f(j):
        return (x1 - one) * x0pow(j)

    def right_f(j):
        return (one - x1i) * x0pow(j) * x1

    out = gt_tensor(left_f(k), one) + gt_tensor(one, right_f(k))
    if k >= 1:
        for i in range(1, k):
            out = out - gt_tensor(left_f(i), right_f(k - i))
    else:
        for i in range(k, 1):
            out = out + gt_tensor(left_f(i), right_f(k - i))
    return out


# -- the comparison matrix and scalars ----------------------------------------------


def compute_P(a5map):
    """Rows of P: the images of x_i5 - 1 decomposed over the right factors
    e_j5 inside the free kernel algebra."""
    cap = a5map.cap
    rows = []
    for i in (1, 2, 3):
        img = a5map(P5AlgElem({p5_from_f3((i,)): Fraction(1)}, _clean=True)) \
            - SmashElem.one(P5CTX, cap)
        from .smash import f3_component
        member, series = f3_component(img)
        if not member:
            raise ValueError("kernel-generator image is not in the free kernel algebra")
        entries = [dict(), dict(), dict()]
        for w, c in series.terms.items():
            if not w:
                raise ValueError("unexpected constant term")
            entries[w[-1]][w[:-1]] = c
        rows.append([TruncSeries(F3E, cap, e, _clean=True) for e in entries])
    return Mat3(rows)


def pr12_f3_series(s):
    """Entrywise (1,2)-projection of a free-kernel series: e15 -> f1,
    e25 -> e1, e35 -> einf x 1 + 1 x e0."""
    cap = s.cap
    e0 = TruncSeries.letter(E2, cap, "e0")
    e1 = TruncSeries.letter(E2, cap, "e1")
    images = {
        "e15": embed_right(e1),
        "e25": embed_left(e1),
        "e35": embed_left(-e0 - e1) + embed_right(e0),
    }
    return eval_hom(s, images, TensorSeries.one(E2, cap))


def scalars_kappa_u_v(mu, phi, gamma):
    """kappa, u, v and the comparison scalar, all in the tensor square."""
    mu = Fraction(mu)
    cap = phi.cap
    e1l = embed_left(TruncSeries.letter(E2, cap, "e1"))
    f1r = embed_right(TruncSeries.letter(E2, cap, "e1"))
    one = TensorSeries.one(E2, cap)
    e0 = TruncSeries.letter(E2, cap, "e0")
    e1 = TruncSeries.letter(E2, cap, "e1")
    einf = -e0 - e1
    phi_inf = apply_hom(phi, [einf, e1], TruncSeries.one(E2, cap))
    kappa = f1r.scale(-mu / 2).exp() * embed_left(phi) * embed_right(phi_inf)

    g_e1 = gamma.substitute(e1l, one)
    g_f1 = gamma.substitute(f1r, one)
    g_s = gamma.substitute(e1l + f1r, one)
    v = (f1r.scale(mu).exp() * g_e1 * g_f1 * g_s.inverse()).scale(Fraction(1) / mu)
    # (e^{mu s} - 1)/s as a series in s = e1 + f1
    h = (exp_t(cap + 1, mu) - UniSeries.one(cap + 1)).shift_down()
    eub = h.substitute(e1l + f1r, one)
    u = f1r.scale(-mu).exp() * g_s * (g_e1 * g_f1).inverse() * eub * Fraction(mu)
    scal = eub * g_s * (g_e1 * g_f1).inverse()
    return {"kappa": kappa, "u": u, "v": v, "scalar": scal, "exp_factor": eub}


# -- check routines ------------------------------------------------------------------


def known_varpi_e12(cap):
    """The displayed right-multiplication matrix of e12."""
    g = lambda n: p5_generator(cap, n)
    e15, e25, e12 = g("e15"), g("e25"), g("e12")
    zero = SmashElem.zero(P5CTX, cap)
    return Mat3([
        [e12 + e25, -e15, zero],
        [-e25, e12 + e15, zero],
        [zero, zero, e12],
    ])


def known_rho_e0(cap):
    e0 = TruncSeries.letter(E2, cap, "e0")
    e1 = TruncSeries.letter(E2, cap, "e1")
    e0l, e1l = embed_left(e0), embed_left(e1)
    f0r = embed_right(e0)
    zero = TensorSeries.zero(E2, cap)
    return Mat3([
        [e0l, zero, zero],
        [zero, -e1l + f0r, -e1l],
        [zero, e0l + e1l - f0r, e0l + e1l],
    ])


def known_varpi_bar_x12():
    """The displayed Betti matrix of x12, as products of normal forms."""
    x12, x15, x25 = xij(1, 2), xij(1, 5), xij(2, 5)
    one = P5AlgElem.one()

    def el(g):
        return P5AlgElem.from_elem(g)

    a = el(x12 * x15 * x25)
    e11 = a * (-el(x15 * x25.inverse() * x15.inverse()) + one
               + el(x25.inverse() * x15.inverse()))
    e12_ = a * (one - el(x15)) * el(x25.inverse())
    e21 = a * (el(x25.inverse()) - one) * el(x15.inverse())
    e22 = el(x12 * x15)
    zero = P5AlgElem.zero()
    return Mat3([
        [e11, e12_, zero],
        [e21, e22, zero],
        [zero, zero, el(x12)],
    ])
