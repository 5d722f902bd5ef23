"""Exact two-phase simplex over the rationals.

Minimizes c.x subject to equality and upper-bound rows with x >= 0.  All
arithmetic is Fraction arithmetic and pivoting follows Bland's rule, so
the solver terminates and the optimum it reports is exact.  Problem sizes
here are small; no effort is spent on sparsity.
"""

from fractions import Fraction

OPTIMAL = "OPTIMAL"
INFEASIBLE = "INFEASIBLE"
UNBOUNDED = "UNBOUNDED"


def solve_lp(c, a_eq, b_eq, a_ub=None, b_ub=None):
    """Return (status, x, value); x and value are None unless OPTIMAL."""
    a_ub = a_ub or []
    b_ub = b_ub or []
    n = len(c)
    rows = []
    rhs = []
    n_slack = len(a_ub)
    for i, row in enumerate(a_eq):
        r = [Fraction(v) for v in row] + [Fraction(0)] * n_slack
        rows.append(r)
        rhs.append(Fraction(b_eq[i]))
    for i, row in enumerate(a_ub):
        r = [Fraction(v) for v in row] + [Fraction(0)] * n_slack
        r[n + i] = Fraction(1)
        rows.append(r)
        rhs.append(Fraction(b_ub[i]))
    m = len(rows)
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    total = n + n_slack + m  # one artificial per row
    tab = []
    for i in range(m):
        row = rows[i] + [Fraction(0)] * m + [rhs[i]]
        row[n + n_slack + i] = Fraction(1)
        tab.append(row)
    basis = [n + n_slack + i for i in range(m)]

    # phase 1: minimize the sum of artificials
    cost = [Fraction(0)] * (total + 1)
    for j in range(n + n_slack, total):
        cost[j] = Fraction(1)
    for i in range(m):
        cost = [cv - tv for cv, tv in zip(cost, tab[i])]
    _pivot_until_optimal(tab, cost, basis, total)
    if -cost[total] != 0:  # artificial sum > 0
        return INFEASIBLE, None, None

    # drive leftover artificials out of the basis where possible
    drop = []
    for i in range(m):
        if basis[i] >= n + n_slack:
            piv = next((j for j in range(n + n_slack) if tab[i][j] != 0), None)
            if piv is None:
                drop.append(i)
            else:
                _pivot(tab, cost, basis, i, piv, total)
    for i in sorted(drop, reverse=True):
        del tab[i]
        del basis[i]
    m = len(tab)

    # phase 2: original objective, artificial columns frozen at zero
    cost = [Fraction(0)] * (total + 1)
    for j in range(n):
        cost[j] = Fraction(c[j])
    for i in range(m):
        bj = basis[i]
        if cost[bj] != 0:
            f = cost[bj]
            cost = [cv - f * tv for cv, tv in zip(cost, tab[i])]
    status = _pivot_until_optimal(tab, cost, basis, n + n_slack)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tab[i][total]
    value = -cost[total]
    return OPTIMAL, x, value


def _pivot_until_optimal(tab, cost, basis, ncols):
    total = len(cost) - 1
    while True:
        enter = next((j for j in range(ncols) if cost[j] < 0), None)
        if enter is None:
            return OPTIMAL
        leave = None
        best = None
        for i in range(len(tab)):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][total] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            return UNBOUNDED
        _pivot(tab, cost, basis, leave, enter, total)


def _pivot(tab, cost, basis, row, col, total):
    piv = tab[row][col]
    if piv != 1:
        inv = 1 / piv
        tab[row] = [v * inv for v in tab[row]]
    prow = tab[row]
    for i in range(len(tab)):
        if i != row and tab[i][col] != 0:
            f = tab[i][col]
            tab[i] = [v - f * p for v, p in zip(tab[i], prow)]
    if cost[col] != 0:
        f = cost[col]
        cost[:] = [v - f * p for v, p in zip(cost, prow)]
    basis[row] = col
