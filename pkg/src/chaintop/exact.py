"""Exact dense linear algebra over Z and Q.

Everything here is arbitrary-precision: integer matrices use Python ints,
rational routines use fractions.Fraction. No floating point anywhere --
torsion detection and homotopy solving both die in floats.

Matrices are small immutable row-major grids; shapes carry explicitly so
that zero-row / zero-column matrices (ubiquitous in chain complexes at the
ends of the grading) behave like any other matrix.
"""

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    data: tuple  # tuple of row tuples; entries int or Fraction

    def __post_init__(self):
        if len(self.data) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.data)}")
        for r in self.data:
            if len(r) != self.cols:
                raise ValueError(f"ragged row: expected {self.cols} entries")

    @staticmethod
    def from_rows(rows, cols=None):
        rows = [tuple(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        return Matrix(len(rows), cols, tuple(rows))

    @staticmethod
    def zeros(rows, cols):
        return Matrix(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @staticmethod
    def identity(n):
        return Matrix(n, n, tuple(tuple(1 if i == j else 0 for j in range(n))
                                  for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def transpose(self):
        return Matrix(self.cols, self.rows,
                      tuple(tuple(self.data[i][j] for i in range(self.rows))
                            for j in range(self.cols)))

    def __mul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} * {other.shape}")
        ot = other.transpose()
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ot.data)
            for row in self.data)
        return Matrix(self.rows, other.cols, out)

    def __add__(self, other):
        self._same_shape(other)
        return Matrix(self.rows, self.cols,
                      tuple(tuple(a + b for a, b in zip(r1, r2))
                            for r1, r2 in zip(self.data, other.data)))

    def __sub__(self, other):
        self._same_shape(other)
        return Matrix(self.rows, self.cols,
                      tuple(tuple(a - b for a, b in zip(r1, r2))
                            for r1, r2 in zip(self.data, other.data)))

    def __neg__(self):
        return Matrix(self.rows, self.cols,
                      tuple(tuple(-a for a in r) for r in self.data))

    def scale(self, c):
        return Matrix(self.rows, self.cols,
                      tuple(tuple(c * a for a in r) for r in self.data))

    def is_zero(self):
        return all(a == 0 for r in self.data for a in r)

    def column(self, j):
        return tuple(self.data[i][j] for i in range(self.rows))

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def to_lists(self):
        return [list(r) for r in self.data]


def hstack(mats, rows=None):
    """Concatenate matrices side by side (all with equal row count)."""
    mats = list(mats)
    if not mats:
        if rows is None:
            raise ValueError("hstack of nothing needs an explicit row count")
        return Matrix.zeros(rows, 0)
    rows = mats[0].rows
    out = []
    for i in range(rows):
        row = []
        for m in mats:
            if m.rows != rows:
                raise ValueError("hstack row mismatch")
            row.extend(m.data[i])
        out.append(tuple(row))
    return Matrix(rows, sum(m.cols for m in mats), tuple(out))


def block_diag(mats):
    """Direct sum of matrices along the diagonal."""
    total_r = sum(m.rows for m in mats)
    total_c = sum(m.cols for m in mats)
    grid = [[0] * total_c for _ in range(total_r)]
    ro = co = 0
    for m in mats:
        for i in range(m.rows):
            for j in range(m.cols):
                grid[ro + i][co + j] = m.data[i][j]
        ro += m.rows
        co += m.cols
    return Matrix(total_r, total_c, tuple(tuple(r) for r in grid))


def from_columns(cols, rows):
    """Build a matrix from a list of column vectors of length `rows`."""
    return Matrix(rows, len(cols),
                  tuple(tuple(c[i] for c in cols) for i in range(rows)))


# ---------------------------------------------------------------------------
# Smith normal form over Z
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithDecomposition:
    """U * A * V = S with U, V unimodular and S diagonal, d_i | d_{i+1}."""
    U: Matrix
    S: Matrix
    V: Matrix
    rank: int
    divisors: tuple


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m, dst, src, c):
    m[dst] = [a + c * b for a, b in zip(m[dst], m[src])]


def _add_col(m, dst, src, c):
    for row in m:
        row[dst] += c * row[src]


def smith_normal_form(a: Matrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    Pivot strategy: the nonzero entry of smallest magnitude in the
    remaining submatrix, ties broken by lowest (row, col) index. This
    bounds entry growth and fixes the output for golden tests.
    """
    n, m = a.rows, a.cols
    s = [list(r) for r in a.data]
    u = [list(r) for r in Matrix.identity(n).data]
    v = [list(r) for r in Matrix.identity(m).data]
    t = 0
    while True:
        # deterministic pivot: smallest |entry| > 0, lowest index tie-break
        pivot = None
        for i in range(t, n):
            for j in range(t, m):
                e = s[i][j]
                if e != 0 and (pivot is None or abs(e) < abs(s[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            _swap_rows(s, t, pi)
            _swap_rows(u, t, pi)
        if pj != t:
            _swap_cols(s, t, pj)
            _swap_cols(v, t, pj)
        # clear row and column t; restart when a remainder shrinks the pivot
        while True:
            p = s[t][t]
            done = True
            for i in range(t + 1, n):
                if s[i][t] != 0:
                    q = s[i][t] // p
                    _add_row(s, i, t, -q)
                    _add_row(u, i, t, -q)
                    if s[i][t] != 0:
                        _swap_rows(s, t, i)
                        _swap_rows(u, t, i)
                        done = False
                        break
            if not done:
                continue
            for j in range(t + 1, m):
                if s[t][j] != 0:
                    q = s[t][j] // p
                    _add_col(s, j, t, -q)
                    _add_col(v, j, t, -q)
                    if s[t][j] != 0:
                        _swap_cols(s, t, j)
                        _swap_cols(v, t, j)
                        done = False
                        break
            if done:
                break
        # enforce divisibility: pivot must divide every remaining entry
        p = s[t][t]
        fixed = True
        for i in range(t + 1, n):
            for j in range(t + 1, m):
                if s[i][j] % p != 0:
                    _add_row(s, t, i, 1)
                    _add_row(u, t, i, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        if p < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        t += 1
        if t == min(n, m):
            break
    divisors = tuple(s[i][i] for i in range(min(n, m)) if s[i][i] != 0)
    return SmithDecomposition(
        U=Matrix.from_rows(u, n) if n else Matrix.zeros(0, 0),
        S=Matrix.from_rows(s, m) if n else Matrix.zeros(0, m),
        V=Matrix.from_rows(v, m) if m else Matrix.zeros(0, 0),
        rank=len(divisors),
        divisors=divisors,
    )


def det(a: Matrix):
    """Exact determinant (fraction-free would be nicer; sizes here are tiny)."""
    if a.rows != a.cols:
        raise ValueError("determinant of a non-square matrix")
    n = a.rows
    m = [[Fraction(x) for x in row] for row in a.data]
    sign = 1
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        d *= m[c][c]
        inv = m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / inv
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    d *= sign
    return int(d) if d.denominator == 1 else d


# ---------------------------------------------------------------------------
# Rational elimination: rank, kernels, solving
# ---------------------------------------------------------------------------

def rref(a: Matrix):
    """Reduced row echelon form over Q. Returns (R, pivot_columns)."""
    m = [[Fraction(x) for x in row] for row in a.data]
    pivots = []
    r = 0
    for c in range(a.cols):
        if r == a.rows:
            break
        piv = next((i for i in range(r, a.rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(a.rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return Matrix.from_rows(m, a.cols) if a.rows else Matrix.zeros(0, a.cols), pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def nullspace(a: Matrix) -> Matrix:
    """Columns form a basis of ker(a) over Q (free variables set to 1)."""
    r, pivots = rref(a)
    pivot_set = set(pivots)
    free = [c for c in range(a.cols) if c not in pivot_set]
    cols = []
    for fc in free:
        vec = [Fraction(0)] * a.cols
        vec[fc] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -r.data[row_idx][fc]
        cols.append(vec)
    return from_columns(cols, a.cols)


def solve(a: Matrix, b) -> "tuple | None":
    """One solution of a x = b over Q, or None when inconsistent.

    b is a sequence of length a.rows. Free variables are set to zero,
    so the output is deterministic.
    """
    if len(b) != a.rows:
        raise ValueError("rhs length mismatch")
    aug = Matrix(a.rows, a.cols + 1,
                 tuple(tuple(list(row) + [bv]) for row, bv in zip(a.data, b)))
    r, pivots = rref(aug)
    if a.cols in pivots:
        return None
    x = [Fraction(0)] * a.cols
    for row_idx, pc in enumerate(pivots):
        x[pc] = r.data[row_idx][a.cols]
    return tuple(x)


def solve_matrix(a: Matrix, b: Matrix) -> "Matrix | None":
    """Solve a X = b column by column; None when any column is inconsistent."""
    cols = []
    for j in range(b.cols):
        x = solve(a, b.column(j))
        if x is None:
            return None
        cols.append(x)
    return from_columns(cols, a.cols)


def min_norm_solve(a: Matrix, b) -> "tuple | None":
    """Minimal-Euclidean-norm solution of a x = b over Q, or None.

    Uses the normal equations of the transpose: x = aᵀ y with (a aᵀ) y = b,
    which is solvable exactly when b lies in the column space of a.
    """
    gram = a * a.transpose()
    y = solve(gram, b)
    if y is None:
        return None
    at = a.transpose()
    return tuple(sum(at.data[i][k] * y[k] for k in range(at.cols))
                 for i in range(at.rows))


def column_space_complement(a: Matrix):
    """Indices i such that {e_i} completes col(a) to a basis of Q^rows.

    Returned in increasing order; deterministic. The complement comes from
    the pivot columns of rref(aᵀ): rows of the echelon form span col(a),
    and standard vectors at the non-pivot coordinates complete them.
    """
    _, pivots = rref(a.transpose())
    pivot_set = set(pivots)
    return [i for i in range(a.rows) if i not in pivot_set]


def column_space_basis(a: Matrix) -> Matrix:
    """Matrix whose columns are a canonical basis of col(a) (echelon rows)."""
    r, pivots = rref(a.transpose())
    cols = [r.data[i] for i in range(len(pivots))]
    return from_columns(cols, a.rows)
