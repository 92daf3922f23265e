"""Scalar invariants of a 2-coloring and the perfect-coloring criterion.

S is colour 1 and its complement colour 0.  A perfect 2-coloring has
parameter matrix

    ((n(q-1) - b, b),
     (c,          n(q-1) - c))

with rows ordered (colour 0, colour 1): every vertex outside S has b
neighbours in S and every vertex in S has c neighbours outside S.  All
comparisons are done on exact fractions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .cube import CubeShape, VertexSet, neighbor_counts
from .errors import InvariantViolation, ShapeError, TrivialSetError
from .spectral import SpectrumTable, cor_spectral, full_spectrum, _cor_from_nonzero


@dataclass(frozen=True)
class ParameterMatrix:
    shape: CubeShape
    b: int
    c: int

    def __post_init__(self):
        d = self.shape.degree
        if not (0 <= self.b <= d and 0 <= self.c <= d):
            raise ShapeError(f"b={self.b}, c={self.c} outside [0, {d}]")

    @property
    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        d = self.shape.degree
        return ((d - self.b, self.b), (self.c, d - self.c))

    @property
    def s(self) -> int | None:
        """(b + c) / q when integral, the weight carrying the spectrum."""
        k, r = divmod(self.b + self.c, self.shape.q)
        return k if r == 0 else None

    @property
    def density(self) -> Fraction:
        return Fraction(self.b, self.b + self.c)

    @property
    def eigenvalue(self) -> int:
        return self.shape.degree - self.b - self.c


def one_perfect_matrix(shape: CubeShape) -> ParameterMatrix:
    return ParameterMatrix(shape, 1, shape.degree)


def mds_matrix(shape: CubeShape) -> ParameterMatrix:
    """Matrix of a distance-2 MDS code: ((n(q-2), n), (n(q-1), 0))."""
    return ParameterMatrix(shape, shape.n, shape.degree)


def _require_nontrivial(S: VertexSet):
    if S.cardinality == 0 or S.cardinality == S.shape.size:
        raise TrivialSetError("set is trivial (empty or the whole cube)")


def density(S: VertexSet) -> Fraction:
    return Fraction(S.cardinality, S.shape.size)


def nei(S: VertexSet) -> Fraction:
    """Average number of neighbours inside S over the points of S."""
    if S.cardinality == 0:
        raise TrivialSetError("nei is undefined for the empty set")
    inside = int(neighbor_counts(S)[S.indicator].sum())
    return Fraction(inside, S.cardinality)


def alpha(S: VertexSet) -> Fraction:
    """Average number of neighbours in S over the points outside S."""
    outside = S.shape.size - S.cardinality
    if outside == 0:
        raise TrivialSetError("alpha is undefined for the whole cube")
    return Fraction(int(neighbor_counts(S)[~S.indicator].sum()), outside)


def check_perfect_direct(S: VertexSet) -> ParameterMatrix | None:
    """Return the parameter matrix if S is a perfect 2-coloring, else None."""
    _require_nontrivial(S)
    counts = neighbor_counts(S)
    out = counts[~S.indicator]
    inn = counts[S.indicator]
    if out.min() != out.max() or inn.min() != inn.max():
        return None
    return ParameterMatrix(S.shape, int(out[0]), S.shape.degree - int(inn[0]))


def check_perfect_spectral(S: VertexSet, spectrum: SpectrumTable | None = None) -> ParameterMatrix | None:
    """Perfect-coloring test from the support of the exact spectrum.

    Positive iff the nonvanishing character sums sit on weights {0, s}
    for one s >= 1; then b = s q rho and c = s q (1 - rho).
    """
    _require_nontrivial(S)
    spectrum = spectrum if spectrum is not None else full_spectrum(S)
    weights = spectrum.support_weights() - {0}
    if len(weights) != 1:
        return None
    (s,) = weights
    rho = density(S)
    b = s * S.shape.q * rho
    c = s * S.shape.q * (1 - rho)
    if b.denominator != 1 or c.denominator != 1:
        return None
    return ParameterMatrix(S.shape, int(b), int(c))


class BFBound(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    holds: bool

    @property
    def equality(self) -> bool:
        return self.lhs == self.rhs


def bf_bound(S: VertexSet, cor: int | None = None) -> BFBound:
    """Bierbrauer-Friedman: rho >= 1 - n(q-1) / (q (cor + 1))."""
    if S.cardinality == 0:
        raise TrivialSetError("bound needs a nonempty set")
    if cor is None:
        cor = cor_spectral(S)
    shape = S.shape
    lhs = 1 - Fraction(shape.degree, shape.q * (cor + 1))
    rhs = density(S)
    return BFBound(lhs, rhs, lhs <= rhs)


@dataclass(frozen=True)
class AnalysisReport:
    shape: CubeShape
    cardinality: int
    rho: Fraction
    nei: Fraction
    alpha: Fraction
    cor: int
    theorem_lhs: Fraction
    theorem_rhs: Fraction
    is_perfect: bool
    matrix: ParameterMatrix | None
    bf_lhs: Fraction
    bf_rhs: Fraction

    @property
    def slack(self) -> Fraction:
        return self.theorem_rhs - self.theorem_lhs

    @property
    def bf_holds(self) -> bool:
        return self.bf_lhs <= self.bf_rhs


def theorem_eval(S: VertexSet, spectrum: SpectrumTable | None = None) -> AnalysisReport:
    """Evaluate rho q (cor + 1) <= alpha and cross-check the equality case.

    Raises InvariantViolation if the inequality fails or if equality
    disagrees with the direct perfect-coloring check.
    """
    _require_nontrivial(S)
    shape = S.shape
    spectrum = spectrum if spectrum is not None else full_spectrum(S)
    cor = int(_cor_from_nonzero(spectrum.nonzero(), shape))
    counts = neighbor_counts(S)
    rho = density(S)
    nei_ = Fraction(int(counts[S.indicator].sum()), S.cardinality)
    alpha_ = Fraction(int(counts[~S.indicator].sum()), shape.size - S.cardinality)
    lhs = rho * shape.q * (cor + 1)
    if lhs > alpha_:
        raise InvariantViolation(f"rho q (cor+1) = {lhs} exceeds alpha = {alpha_}")
    matrix = check_perfect_direct(S)
    is_perfect = lhs == alpha_
    if is_perfect != (matrix is not None):
        raise InvariantViolation(
            f"equality {is_perfect} disagrees with direct check {matrix}"
        )
    bf = bf_bound(S, cor)
    return AnalysisReport(
        shape=shape,
        cardinality=S.cardinality,
        rho=rho,
        nei=nei_,
        alpha=alpha_,
        cor=cor,
        theorem_lhs=lhs,
        theorem_rhs=alpha_,
        is_perfect=is_perfect,
        matrix=matrix,
        bf_lhs=bf.lhs,
        bf_rhs=bf.rhs,
    )


def eigenvalue(shape: CubeShape, w: int) -> int:
    """Adjacency eigenvalue on characters of weight w: n(q-1) - wq."""
    if not 0 <= w <= shape.n:
        raise ShapeError(f"weight {w} outside [0, {shape.n}]")
    return (shape.n - w) * (shape.q - 1) - w


def admissible_matrices(shape: CubeShape) -> list[tuple[int, int]]:
    """(b, c) pairs passing the necessary conditions for a perfect 2-coloring.

    Conditions: 1 <= b, c <= n(q-1); q | b + c with 1 <= (b+c)/q <= n; and
    |S| = b q^n / (b + c) integral.  Realizability is not implied.
    """
    d, q = shape.degree, shape.q
    out = []
    for b in range(1, d + 1):
        for c in range(1, d + 1):
            k, r = divmod(b + c, q)
            if r or not 1 <= k <= shape.n:
                continue
            if (b * shape.size) % (b + c):
                continue
            out.append((b, c))
    return out
