#!/usr/bin/env python3
"""
Row Reduction Processor
Exact sparse Gaussian elimination over Q with labelled combinations and RREF bases
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, Generic, Hashable, List, Optional, Tuple, TypeVar

logger = logging.getLogger(__name__)

Column = TypeVar('Column', bound=Hashable)

EXPRESSION_LABEL = '__target__'


class RowReducer(Generic[Column]):
    """
    Incremental sparse Gaussian elimination over Q.

    Rows are dicts column -> Fraction.  The pivot of a row is its largest
    column under `key`; every stored row keeps, next to its entries, the
    combination of inserted labels it was built from so that membership
    queries can return an explicit linear combination.
    """

    def __init__(self, key: Callable[[Column], object]):
        self.key = key
        self.pivots: Dict[Column, Tuple[Dict[Column, Fraction], Dict[Hashable, Fraction]]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _leading(self, row: Dict[Column, Fraction]) -> Column:
        return max(row, key=self.key)

    def _eliminate(self, row: Dict[Column, Fraction], combination: Dict[Hashable, Fraction]):
        """Reduce the leading entry against stored pivots until it is new or the row vanishes"""
        row = dict(row)
        combination = dict(combination)
        while row:
            leading = self._leading(row)
            if leading not in self.pivots:
                break
            pivot_row, pivot_combination = self.pivots[leading]
            factor = row[leading] / pivot_row[leading]
            for column, value in pivot_row.items():
                updated = row.get(column, Fraction(0)) - factor * value
                if updated:
                    row[column] = updated
                else:
                    row.pop(column, None)
            for label, value in pivot_combination.items():
                updated = combination.get(label, Fraction(0)) - factor * value
                if updated:
                    combination[label] = updated
                else:
                    combination.pop(label, None)
        return row, combination

    def insert(self, row: Dict[Column, Fraction], label: Optional[Hashable] = None) -> bool:
        """Add a row; True when it was independent of the rows already stored"""
        start = {label: Fraction(1)} if label is not None else {}
        reduced, combination = self._eliminate({c: Fraction(v) for c, v in row.items() if v}, start)
        if not reduced:
            return False
        leading = self._leading(reduced)
        scale = 1 / reduced[leading]
        self.pivots[leading] = (
            {c: v * scale for c, v in reduced.items()},
            {k: v * scale for k, v in combination.items()},
        )
        return True

    def remainder(self, row: Dict[Column, Fraction]) -> Dict[Column, Fraction]:
        reduced, _ = self._eliminate({c: Fraction(v) for c, v in row.items() if v}, {})
        return reduced

    def express(self, row: Dict[Column, Fraction]) -> Optional[Dict[Hashable, Fraction]]:
        """Coefficients c_label with row = sum c_label * inserted[label], or None if row is outside the span"""
        reduced, combination = self._eliminate(
            {c: Fraction(v) for c, v in row.items() if v}, {EXPRESSION_LABEL: Fraction(1)})
        if reduced:
            return None
        # 0 = row - sum(...) gives row = -sum over the labels
        scale = combination.pop(EXPRESSION_LABEL, Fraction(1))
        return {label: -value / scale for label, value in combination.items() if value}

    def basis(self) -> List[Dict[Column, Fraction]]:
        """Reduced row echelon form, rows ordered by pivot descending"""
        ordered = sorted(self.pivots, key=self.key)
        reduced_rows: Dict[Column, Dict[Column, Fraction]] = {}
        for pivot in ordered:
            row = dict(self.pivots[pivot][0])
            for column in sorted((c for c in row if c != pivot and c in reduced_rows), key=self.key, reverse=True):
                factor = row.get(column)
                if not factor:
                    continue
                for other, value in reduced_rows[column].items():
                    updated = row.get(other, Fraction(0)) - factor * value
                    if updated:
                        row[other] = updated
                    else:
                        row.pop(other, None)
            reduced_rows[pivot] = row
        return [reduced_rows[pivot] for pivot in reversed(ordered)]
