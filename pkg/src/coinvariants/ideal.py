"""Degree-by-degree linear algebra for the ideal generated by an invariant system.

For each degree d the span I_d = sum_i P_{d - d_i} f_i is row reduced in the
monomial basis of degree d.  Columns are ordered by increasing graded-lex
(x1 > x2 > ... > xn), so pivots sit on the smallest monomials and the free
(non-pivot) monomials, which index the normal forms, are the largest ones.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded, NotRegular
from .invariants import InvariantSystem
from .linalg import reduce_rows, rref
from .poly import Exps, Polynomial, count_monomials, monomials_of_degree

DEGREE_MONOMIAL_CAP = 5 * 10**6


@dataclass
class HilbertData:
    coefficients: list[int]

    @property
    def top_degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def total(self) -> int:
        return sum(self.coefficients)

    def __getitem__(self, d: int) -> int:
        return self.coefficients[d] if 0 <= d < len(self.coefficients) else 0


def hilbert(system: InvariantSystem) -> HilbertData:
    """Coefficients of prod (1 - t^{d_i}) / (1 - t)^n up to D = sum (d_i - 1)."""
    degrees = system.degrees
    D = sum(d - 1 for d in degrees)
    series = [0] * (D + 2)
    series[0] = 1
    for d in degrees:
        for k in range(D + 1, d - 1, -1):
            series[k] -= series[k - d]
    for _ in degrees:
        for k in range(1, D + 2):
            series[k] += series[k - 1]
    if any(c < 0 for c in series) or series[D + 1] != 0:
        raise NotRegular(f"Hilbert series of degrees {degrees} has negative coefficients")
    return HilbertData(series[: D + 1])


@dataclass
class DegreeSpan:
    degree: int
    monomials: list[Exps]
    index: dict[Exps, int]
    rows: np.ndarray
    pivots: list[int]
    free: list[int]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def free_monomials(self) -> list[Exps]:
        return [self.monomials[c] for c in self.free]


class GradedIdealBasis:
    """Cached per-degree echelon data for the ideal (f_1, ..., f_n)."""

    def __init__(self, system: InvariantSystem, monomial_cap: int = DEGREE_MONOMIAL_CAP):
        self.system = system
        self.ctx = system.context
        self.field = system.field
        self.monomial_cap = monomial_cap
        self.hilbert = hilbert(system)
        self.top_degree = self.hilbert.top_degree
        self._spans: dict[int, DegreeSpan] = {}
        self._lock = threading.Lock()
        self._top_checked = False

    # -- per-degree spans ------------------------------------------------------

    def _build(self, d: int) -> DegreeSpan:
        n = self.ctx.n
        count = count_monomials(n, d)
        if count > self.monomial_cap:
            raise CapExceeded(f"{count} monomials in degree {d} exceed cap {self.monomial_cap}")
        monos = monomials_of_degree(n, d)
        index = {e: k for k, e in enumerate(monos)}
        rows = []
        for f, df in zip(self.system.gens, self.system.degrees):
            if df > d:
                continue
            terms = list(f.terms.items())
            for mu in monomials_of_degree(n, d - df):
                row = np.zeros(count, dtype=np.int64)
                for e, c in terms:
                    row[index[tuple(a + b for a, b in zip(mu, e))]] = c
                rows.append(row)
        if rows:
            R, pivots = rref(np.array(rows), self.field)
        else:
            R, pivots = np.zeros((0, count), dtype=np.int64), []
        pivset = set(pivots)
        free = [c for c in range(count) if c not in pivset]
        expected = self.hilbert[d]
        if len(free) != expected:
            raise NotRegular(
                f"degree {d}: quotient dimension {len(free)} but the Hilbert series predicts {expected}",
                degree=d,
            )
        return DegreeSpan(d, monos, index, R, pivots, free)

    def degree_span(self, d: int) -> DegreeSpan:
        span = self._spans.get(d)
        if span is not None:
            return span
        if d < 0:
            raise ValueError("negative degree")
        if d > self.top_degree + 1:
            self._ensure_top()
            monos = monomials_of_degree(self.ctx.n, d)
            count = len(monos)
            span = DegreeSpan(
                d, monos, {e: k for k, e in enumerate(monos)},
                np.eye(count, dtype=np.int64), list(range(count)), [],
            )
            return span
        span = self._build(d)
        with self._lock:
            return self._spans.setdefault(d, span)

    def _ensure_top(self) -> None:
        # I_{D+1} = P_{D+1} forces I_d = P_d for every larger d
        if not self._top_checked:
            self.degree_span(self.top_degree + 1)
            self._top_checked = True

    def is_full(self, d: int) -> bool:
        if d > self.top_degree:
            self._ensure_top()
            return True
        return False

    def rank(self, d: int) -> int:
        if self.is_full(d):
            return count_monomials(self.ctx.n, d)
        return self.degree_span(d).rank

    # -- reduction ---------------------------------------------------------------

    def vector(self, f: Polynomial, d: int) -> np.ndarray:
        span = self.degree_span(d)
        v = np.zeros(len(span.monomials), dtype=np.int64)
        for e, c in f.terms.items():
            if sum(e) == d:
                v[span.index[e]] = c
        return v

    def reduce_homogeneous(self, f: Polynomial, d: int) -> Polynomial:
        if self.is_full(d):
            return self.ctx.zero
        span = self.degree_span(d)
        v = self.vector(f, d)[None, :]
        red = reduce_rows(v, span.rows, span.pivots, self.field)[0]
        return Polynomial(self.ctx, {span.monomials[k]: int(red[k]) for k in np.flatnonzero(red)})

    def normal_form(self, f: Polynomial) -> Polynomial:
        """Representative of f + I supported on free monomials."""
        out: dict[Exps, int] = {}
        for d, part in f.components().items():
            out.update(self.reduce_homogeneous(part, d).terms)
        return Polynomial(self.ctx, out)

    def member(self, f: Polynomial) -> bool:
        return all(self.reduce_homogeneous(part, d).is_zero() for d, part in f.components().items())

    def free_coordinates(self, exps_list: list[Exps], d: int) -> np.ndarray:
        """Normal forms of the given degree-d monomials in free-monomial coordinates.

        Row k is the coordinate vector of NF(x^{exps_list[k]}) over
        ``degree_span(d).free``."""
        if self.is_full(d):
            return np.zeros((len(exps_list), 0), dtype=np.int64)
        span = self.degree_span(d)
        V = np.zeros((len(exps_list), len(span.monomials)), dtype=np.int64)
        for k, e in enumerate(exps_list):
            V[k, span.index[e]] = 1
        red = reduce_rows(V, span.rows, span.pivots, self.field)
        return red[:, span.free]

    def coinvariant_dimension(self) -> int:
        total = 0
        for d in range(self.top_degree + 1):
            span = self.degree_span(d)
            total += len(span.monomials) - span.rank
        self._ensure_top()
        if total != self.hilbert.total:
            raise NotRegular(f"dimension {total} != Hilbert total {self.hilbert.total}")
        return total


def degree_span(basis: GradedIdealBasis, d: int) -> DegreeSpan:
    return basis.degree_span(d)


def member(basis: GradedIdealBasis, f: Polynomial) -> bool:
    return basis.member(f)


def normal_form(basis: GradedIdealBasis, f: Polynomial) -> Polynomial:
    return basis.normal_form(f)


def coinvariant_dimension(basis: GradedIdealBasis) -> int:
    return basis.coinvariant_dimension()
