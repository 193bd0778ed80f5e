"""Exact rational linear feasibility via phase-1 simplex.

Systems have the shape ``A x >= b`` with ``x >= 0``; coefficients,
bounds, and the returned point are exact rationals.  Pivoting follows
Bland's rule, so the search cannot cycle.  gmpy2 rationals carry the
tableau arithmetic; the public interface speaks ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

_ZERO = mpq(0)
_ONE = mpq(1)


def solve_feasibility(rows: Sequence[tuple[Sequence, object]],
                      num_vars: int) -> list[Fraction] | None:
    """A nonnegative rational point satisfying every row, or None.

    Each row is ``(coeffs, rhs)`` and states ``sum(coeffs[i] * x[i]) >= rhs``.
    Coefficient vectors must have length ``num_vars``.
    """
    if num_vars < 0:
        raise ValueError("num_vars must be nonnegative")
    if not rows:
        return [Fraction(0)] * num_vars

    r = len(rows)
    # Row form after normalization: a.x (+/- s_i) [+ t_i] = rhs >= 0.
    # Rows are flipped so every rhs is nonnegative; flipped rows get a
    # basic slack, the others need an artificial variable.
    n_cols = num_vars + r  # structural + one surplus/slack per row
    art_cols: list[int] = []
    tableau: list[list] = []
    basis: list[int] = []
    rhs_col: list = []

    for i, (coeffs, rhs) in enumerate(rows):
        if len(coeffs) != num_vars:
            raise ValueError(f"row {i} has {len(coeffs)} coefficients, "
                             f"expected {num_vars}")
        a = [mpq(Fraction(c)) for c in coeffs]
        b = mpq(Fraction(rhs))
        row = a + [_ZERO] * r
        if b <= 0:
            # -a.x + s = -b,  slack basic
            row = [-c for c in row]
            row[num_vars + i] = _ONE
            tableau.append(row)
            rhs_col.append(-b)
            basis.append(num_vars + i)
        else:
            # a.x - s + t = b,  artificial basic
            row[num_vars + i] = -_ONE
            tableau.append(row)
            rhs_col.append(b)
            art_cols.append(i)
            basis.append(-1)  # placeholder, filled after widening

    n_art = len(art_cols)
    total_cols = n_cols + n_art
    for row in tableau:
        row.extend([_ZERO] * n_art)
    for k, i in enumerate(art_cols):
        tableau[i][n_cols + k] = _ONE
        basis[i] = n_cols + k

    # Phase-1 objective: minimize the sum of artificials.  The reduced
    # cost row starts as minus the sum of the artificial-basic rows.
    obj = [_ZERO] * total_cols
    for i in art_cols:
        row = tableau[i]
        for j in range(total_cols):
            obj[j] -= row[j]

    if n_art:
        while True:
            enter = -1
            for j in range(total_cols):
                if obj[j] < 0:
                    enter = j
                    break
            if enter < 0:
                break
            leave = -1
            best = None
            for i in range(r):
                aij = tableau[i][enter]
                if aij > 0:
                    ratio = rhs_col[i] / aij
                    if best is None or ratio < best or (
                            ratio == best and basis[i] < basis[leave]):
                        best = ratio
                        leave = i
            if leave < 0:
                # Unbounded phase-1 cannot happen (objective bounded
                # below by 0); guard against malformed input anyway.
                raise ArithmeticError("phase-1 ratio test failed")
            _pivot(tableau, rhs_col, obj, basis, leave, enter, total_cols)

        if any(basis[i] >= n_cols and rhs_col[i] > 0 for i in range(r)):
            return None

    point = [Fraction(0)] * num_vars
    for i, bv in enumerate(basis):
        if bv < num_vars:
            # int() strips the gmpy2 integer type: Fraction would keep it
            # as-is internally, and such hybrids crash later mpq arithmetic.
            point[bv] = Fraction(int(rhs_col[i].numerator),
                                 int(rhs_col[i].denominator))
    return point


def _pivot(tableau, rhs_col, obj, basis, leave, enter, total_cols) -> None:
    piv = tableau[leave][enter]
    inv = _ONE / piv
    prow = tableau[leave]
    for j in range(total_cols):
        if prow[j]:
            prow[j] *= inv
    rhs_col[leave] *= inv
    for i, row in enumerate(tableau):
        if i == leave:
            continue
        f = row[enter]
        if f:
            for j in range(total_cols):
                if prow[j]:
                    row[j] -= f * prow[j]
            rhs_col[i] -= f * rhs_col[leave]
    f = obj[enter]
    if f:
        for j in range(total_cols):
            if prow[j]:
                obj[j] -= f * prow[j]
    basis[leave] = enter


def satisfies(rows: Sequence[tuple[Sequence, object]],
              point: Sequence) -> bool:
    """Exact check that a nonnegative point meets every row."""
    pt = [Fraction(x) for x in point]
    if any(x < 0 for x in pt):
        return False
    for coeffs, rhs in rows:
        total = sum((Fraction(c) * x for c, x in zip(coeffs, pt)), Fraction(0))
        if total < Fraction(rhs):
            return False
    return True
