"""Lyndon words and the associated free Lie algebra basis at each degree."""

from functools import lru_cache


def lyndon_words(nletters, length):
    """All Lyndon words of the given length over [0, nletters), lexicographic."""
    # Duval's generation algorithm
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == length:
            out.append(tuple(w))
        while len(w) < length:
            w.append(w[len(w) - m])
        while w and w[-1] == nletters - 1:
            w.pop()
    return sorted(out)


@lru_cache(maxsize=None)
def standard_factorization(word):
    """Split a Lyndon word w = uv with v the longest proper Lyndon suffix."""
    assert len(word) >= 2
    for i in range(1, len(word)):
        v = word[i:]
        if is_lyndon(v):
            return word[:i], v
    raise ValueError(f"not a Lyndon word: {word}")


def is_lyndon(word):
    if not word:
        return False
    n = len(word)
    for i in range(1, n):
        if word[i:] + word[:i] <= word:
            return False
    return True


def lie_bracket_tree(word):
    """Nested-commutator tree (letters at leaves) for a Lyndon word."""
    if len(word) == 1:
        return word[0]
    u, v = standard_factorization(word)
    return (lie_bracket_tree(u), lie_bracket_tree(v))


def tree_to_element(tree, letters, bracket):
    """Evaluate a bracket tree with the given degree-1 letter images."""
    if not isinstance(tree, tuple):
        return letters[tree]
    a = tree_to_element(tree[0], letters, bracket)
    b = tree_to_element(tree[1], letters, bracket)
    return bracket(a, b)
