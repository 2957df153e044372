"""Shared helpers for dict-backed linear combinations with exact coefficients."""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def add_term(d, key, c):
    """Accumulate c on d[key], dropping the entry when it cancels to zero."""
    if not c:
        return
    v = d.get(key)
    if v is None:
        d[key] = c
    else:
        v = v + c
        if v:
            d[key] = v
        else:
            del d[key]


def merge(d, other, sign=1):
    for k, c in other.items():
        add_term(d, k, c if sign == 1 else -c)


def scaled(d, c):
    c = Fraction(c)
    if not c:
        return {}
    return {k: c * v for k, v in d.items()}
