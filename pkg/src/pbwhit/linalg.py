"""Exact linear algebra over Fraction: RREF, null spaces, span tracking."""

from fractions import Fraction

_ZERO = Fraction(0)


def rref(rows):
    """Reduce a list of dense rows in place; returns the pivot column list.

    Deterministic: pivots are the first nonzero column of the remaining
    block, pivot entries are normalized to 1, and elimination clears both
    above and below.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for rr in range(r, len(rows)):
            if rows[rr][col]:
                pivot_row = rr
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = Fraction(1) / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for rr in range(len(rows)):
            if rr != r and rows[rr][col]:
                factor = rows[rr][col]
                rows[rr] = [a - factor * b for a, b in zip(rows[rr], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    del rows[r:]
    return pivots


def nullspace(rows, ncols):
    """Basis of {v : M v = 0} for the matrix with the given dense rows.

    The basis is itself returned in reduced row-echelon form with pivots
    normalized to 1, so it is canonical for the column order used.
    """
    work = [list(row) for row in rows]
    pivots = rref(work)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        vec = [_ZERO] * ncols
        vec[fc] = Fraction(1)
        for prow, pcol in zip(work, pivots):
            if prow[fc]:
                vec[pcol] = -prow[fc]
        basis.append(vec)
    rref(basis)
    return basis


class SpanAccumulator:
    """Incremental echelon basis of a growing span of sparse vectors.

    Vectors are dicts keyed by column labels; `key` fixes the column order
    (smaller key = earlier pivot).  Rows never mutate once stored, so the
    span of the stored rows always equals the span of everything added.
    """

    def __init__(self, key):
        self.key = key
        self.rows = {}  # pivot label -> normalized sparse row

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, vec):
        """Remainder of `vec` after elimination against the stored rows."""
        vec = {c: Fraction(v) for c, v in vec.items() if v}
        while vec:
            pivot = min(vec, key=self.key)
            row = self.rows.get(pivot)
            if row is None:
                return vec, pivot
            factor = vec[pivot]
            for c, v in row.items():
                val = vec.get(c, _ZERO) - factor * v
                if val:
                    vec[c] = val
                else:
                    vec.pop(c, None)
        return {}, None

    def add_row(self, vec):
        """Add a vector to the span; the stored row if the dimension grew,
        else None."""
        rem, pivot = self.reduce(vec)
        if not rem:
            return None
        inv = Fraction(1) / rem[pivot]
        row = {c: v * inv for c, v in rem.items()}
        self.rows[pivot] = row
        return row

    def add(self, vec):
        """Add a vector to the span; True if the dimension grew."""
        return self.add_row(vec) is not None

    def contains(self, vec):
        rem, _ = self.reduce(vec)
        return not rem
