"""Exact linear algebra over the integers and rationals.

Everything here works on dense row-major lists of Python ints or
Fractions.  Sizes are desk scale (hundreds of rows at most), so clarity
wins over asymptotics; all results are exact.
"""

from fractions import Fraction


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_vec(a, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m, dst, src, q):
    # row[dst] += q * row[src]
    rd, rs = m[dst], m[src]
    for k in range(len(rd)):
        rd[k] += q * rs[k]


def _add_col(m, dst, src, q):
    for row in m:
        row[dst] += q * row[src]


def smith_normal_form(a):
    """Return (u, d, v) with u*a*v = d diagonal, u and v unimodular.

    Diagonal entries are nonnegative and each divides the next, so the
    nonzero ones are the invariant factors of the matrix.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d = [list(row) for row in a]
    u = identity(rows)
    v = identity(cols)

    def pivot_at(t):
        # smallest nonzero |entry| in the remaining block keeps numbers tame
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                e = d[i][j]
                if e != 0 and (best is None or abs(e) < abs(best[2])):
                    best = (i, j, e)
        return best

    def clear_once(t):
        # one pass of row/column elimination at pivot t; returns True when
        # every off-pivot entry in row t and column t is zero afterwards
        clean = True
        for i in range(t + 1, rows):
            if d[i][t] != 0:
                q = d[i][t] // d[t][t]
                _add_row(d, i, t, -q)
                _add_row(u, i, t, -q)
                if d[i][t] != 0:
                    _swap_rows(d, t, i)
                    _swap_rows(u, t, i)
                    clean = False
        for j in range(t + 1, cols):
            if d[t][j] != 0:
                q = d[t][j] // d[t][t]
                _add_col(d, j, t, -q)
                _add_col(v, j, t, -q)
                if d[t][j] != 0:
                    _swap_cols(d, t, j)
                    _swap_cols(v, t, j)
                    clean = False
        if clean:
            clean = all(d[i][t] == 0 for i in range(t + 1, rows)) and all(
                d[t][j] == 0 for j in range(t + 1, cols))
        return clean

    t = 0
    while t < min(rows, cols):
        piv = pivot_at(t)
        if piv is None:
            break
        i, j, _ = piv
        if i != t:
            _swap_rows(d, t, i)
            _swap_rows(u, t, i)
        if j != t:
            _swap_cols(d, t, j)
            _swap_cols(v, t, j)
        while True:
            while not clear_once(t):
                pass
            # divisibility: fold a non-multiple into row t and re-clear
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if d[i][j] % d[t][t] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            _add_row(d, t, bad, 1)
            _add_row(u, t, bad, 1)
        if d[t][t] < 0:
            for k in range(cols):
                d[t][k] = -d[t][k]
            for k in range(rows):
                u[t][k] = -u[t][k]
        t += 1
    return u, d, v


def snf_rank(d):
    n = min(len(d), len(d[0]) if d else 0)
    r = 0
    for i in range(n):
        if d[i][i] != 0:
            r += 1
    return r


def invariant_factors(a):
    """Nonzero diagonal of the Smith form, in divisibility order."""
    _, d, _ = smith_normal_form(a)
    out = []
    for i in range(min(len(d), len(d[0]) if d else 0)):
        if d[i][i] != 0:
            out.append(d[i][i])
    return out


def solve_integer(a, b, snf=None):
    """One integral solution x of a*x = b, or None if there is none."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if snf is None:
        snf = smith_normal_form(a)
    u, d, v = snf
    ub = mat_vec(u, b)
    y = [0] * cols
    r = min(rows, cols)
    for i in range(r):
        di = d[i][i]
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % di != 0:
                return None
            y[i] = ub[i] // di
    for i in range(r, rows):
        if ub[i] != 0:
            return None
    return mat_vec(v, y)


def integer_kernel_basis(a, snf=None):
    """Basis of the lattice {x integral : a*x = 0} (columns of x space)."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if snf is None:
        snf = smith_normal_form(a)
    _, d, v = snf
    r = snf_rank(d)
    basis = []
    for j in range(r, cols):
        basis.append([v[i][j] for i in range(cols)])
    return basis


class RationalSolver:
    """Repeated exact solves of a*x = b for a fixed matrix a.

    Row-reduces [a | I] once; each solve is then a sparse matrix-vector
    product plus a consistency check on the dependent rows.
    """

    def __init__(self, a):
        self.rows = len(a)
        self.cols = len(a[0]) if self.rows else 0
        r = [[Fraction(x) for x in row] for row in a]
        t = [[Fraction(1) if i == j else Fraction(0) for j in range(self.rows)]
             for i in range(self.rows)]
        pivots = []
        lead = 0
        for col in range(self.cols):
            piv = None
            for i in range(lead, self.rows):
                if r[i][col] != 0:
                    piv = i
                    break
            if piv is None:
                continue
            r[lead], r[piv] = r[piv], r[lead]
            t[lead], t[piv] = t[piv], t[lead]
            inv = 1 / r[lead][col]
            r[lead] = [x * inv for x in r[lead]]
            t[lead] = [x * inv for x in t[lead]]
            for i in range(self.rows):
                if i != lead and r[i][col] != 0:
                    f = r[i][col]
                    r[i] = [x - f * y for x, y in zip(r[i], r[lead])]
                    t[i] = [x - f * y for x, y in zip(t[i], t[lead])]
            pivots.append(col)
            lead += 1
            if lead == self.rows:
                break
        self.rref = r
        self.transform = t
        self.pivots = pivots
        self.rank = len(pivots)

    def solve(self, b):
        """One rational solution of a*x = b (free variables 0), or None."""
        tb = []
        for i in range(self.rows):
            ti = self.transform[i]
            tb.append(sum(ti[j] * b[j] for j in range(self.rows) if b[j]))
        for i in range(self.rank, self.rows):
            if tb[i] != 0:
                return None
        x = [Fraction(0)] * self.cols
        for i, col in enumerate(self.pivots):
            x[col] = tb[i]
        return x
