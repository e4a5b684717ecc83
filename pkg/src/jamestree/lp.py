"""Exact rational simplex for the small LPs behind dual-norm computation.

Solves max c.x subject to A x <= b over free variables, all data Fractions.
Free variables are split x = u - v; with every right-hand side nonnegative the
all-slack basis is feasible, so no phase-1 is needed.  Bland's rule prevents
cycling.  Problem sizes here are tiny (tens of rows/columns), so a dense
tableau is the right tool.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import JamesTreeError

_ZERO = Fraction(0)


class LPError(JamesTreeError):
    pass


def simplex_max(
    c: list[Fraction], rows: list[tuple[list[Fraction], Fraction]]
) -> tuple[Fraction, list[Fraction]]:
    """Maximize c.x over {x : row.x <= rhs for every row}; x is free.

    Every rhs must be >= 0.  Raises LPError on an unbounded problem (callers
    always include box rows, so this indicates a modelling bug).
    Returns (optimal value, optimizer).
    """
    n = len(c)
    m = len(rows)
    if any(rhs < 0 for _, rhs in rows):
        raise LPError("simplex_max requires nonnegative right-hand sides")
    width = 2 * n + m + 1  # u, v, slacks, rhs

    tableau: list[list[Fraction]] = []
    for a, rhs in rows:
        if len(a) != n:
            raise LPError("row length mismatch")
        row = [_ZERO] * width
        for j, aj in enumerate(a):
            if aj:
                row[j] = aj
                row[n + j] = -aj
        tableau.append(row)
    for i in range(m):
        tableau[i][2 * n + i] = Fraction(1)
        tableau[i][-1] = rows[i][1]

    # objective row holds reduced costs; start from c on (u, v)
    z = [_ZERO] * width
    for j, cj in enumerate(c):
        if cj:
            z[j] = cj
            z[n + j] = -cj
    basis = [2 * n + i for i in range(m)]
    z_value = _ZERO

    while True:
        enter = -1
        for j in range(width - 1):  # Bland: smallest improving index
            if z[j] > 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best_ratio = None
        for i in range(m):
            coef = tableau[i][enter]
            if coef > 0:
                ratio = tableau[i][-1] / coef
                if best_ratio is None or ratio < best_ratio or (
                    ratio == best_ratio and basis[i] < basis[leave]
                ):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            raise LPError("unbounded LP (missing box constraints?)")
        pivot_row = tableau[leave]
        piv = pivot_row[enter]
        if piv != 1:
            inv = Fraction(1) / piv
            tableau[leave] = pivot_row = [v * inv if v else _ZERO for v in pivot_row]
        for i in range(m):
            if i == leave:
                continue
            factor = tableau[i][enter]
            if factor:
                row = tableau[i]
                tableau[i] = [
                    rv - factor * pv if pv else rv for rv, pv in zip(row, pivot_row)
                ]
        factor = z[enter]
        if factor:
            z = [zv - factor * pv if pv else zv for zv, pv in zip(z, pivot_row)]
            z_value += factor * pivot_row[-1]
        basis[leave] = enter

    solution = [_ZERO] * (2 * n)
    for i, b in enumerate(basis):
        if b < 2 * n:
            solution[b] = tableau[i][-1]
    x = [solution[j] - solution[n + j] for j in range(n)]
    return z_value, x
