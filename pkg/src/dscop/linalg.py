"""Exact dense linear algebra over Fraction: row reduction, affine solves, rank."""

from fractions import Fraction


def rref(rows, ncols):
    """Reduced row echelon form of a list of dense Fraction rows (in place copy).

    Returns (reduced_rows, pivot_cols). Rows are lists of length ncols.
    """
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = Fraction(1) / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                row_r = mat[r]
                mat[i] = [a - f * b for a, b in zip(mat[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def solve_affine(columns, rhs, free_values=None):
    """Solve sum_j x_j * columns[j] = rhs exactly.

    columns: list of dict coordinate->Fraction (sparse column vectors).
    rhs: dict coordinate->Fraction.
    free_values: optional list (len = #columns) of values forced on the
    non-pivot unknowns; defaults to all zero.

    Returns (solution list, free_index_list) or raises ValueError when the
    system is inconsistent.
    """
    n = len(columns)
    coords = set(rhs)
    for col in columns:
        coords.update(col)
    coords = sorted(coords)
    index = {k: i for i, k in enumerate(coords)}
    m = len(coords)
    # augmented dense matrix, one row per coordinate
    rows = [[Fraction(0)] * (n + 1) for _ in range(m)]
    for j, col in enumerate(columns):
        for k, v in col.items():
            rows[index[k]][j] = v
    for k, v in rhs.items():
        rows[index[k]][n] = v
    red, pivots = rref(rows, n + 1)
    if n in pivots:
        raise ValueError("inconsistent linear system")
    pivot_set = set(pivots)
    free_idx = [j for j in range(n) if j not in pivot_set]
    xs = [Fraction(0)] * n
    for j in free_idx:
        if free_values is not None and free_values[j] is not None:
            xs[j] = Fraction(free_values[j])
    for r, c in enumerate(pivots):
        val = red[r][n]
        for j in free_idx:
            if red[r][j]:
                val -= red[r][j] * xs[j]
        xs[c] = val
    return xs, free_idx


def rank_of_span(sparse_rows, key_order=None):
    """Rank of the span of sparse rows (dicts key->Fraction) by sparse elimination."""
    # echelon: map pivot key -> normalized row
    echelon = {}
    order = {}
    if key_order is not None:
        order = {k: i for i, k in enumerate(key_order)}

    def keymin(row):
        if key_order is not None:
            return min(row, key=lambda k: order[k])
        return min(row)

    for row in sparse_rows:
        row = dict(row)
        while row:
            k = keymin(row)
            piv = echelon.get(k)
            if piv is None:
                inv = Fraction(1) / row[k]
                echelon[k] = {kk: vv * inv for kk, vv in row.items()}
                break
            f = row[k]
            for kk, vv in piv.items():
                w = row.get(kk, Fraction(0)) - f * vv
                if w:
                    row[kk] = w
                elif kk in row:
                    del row[kk]
        # empty row: dependent, nothing to do
    return len(echelon)


class SpanReducer:
    """Incremental reducer against the span of a set of sparse rows."""

    def __init__(self, rows=()):
        self.echelon = {}
        for r in rows:
            self.add(r)

    def add(self, row):
        row = self.reduce(row)
        if row:
            k = min(row)
            inv = Fraction(1) / row[k]
            self.echelon[k] = {kk: vv * inv for kk, vv in row.items()}
        return row

    def reduce(self, row):
        """Remainder of row modulo the current span (row untouched)."""
        row = dict(row)
        while row:
            k = min(row)
            piv = self.echelon.get(k)
            if piv is None:
                break
            f = row[k]
            for kk, vv in piv.items():
                w = row.get(kk, Fraction(0)) - f * vv
                if w:
                    row[kk] = w
                elif kk in row:
                    del row[kk]
        return row

    def contains(self, row):
        return not self.reduce(row)

    @property
    def rank(self):
        return len(self.echelon)
