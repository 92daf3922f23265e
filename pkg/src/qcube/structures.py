"""Bitrades, mobile sets and components, orthogonal arrays, MDS codes.

A bitrade of order t meets every face of dimension n - t (every face
obtained by fixing t coordinates) in an even number of points.  With this
convention the symmetric difference of two equal-size sets that are both
correlation-immune of order t is a bitrade of order t.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .analysis import ParameterMatrix
from .cube import Face, VertexSet, face_counts
from .errors import InvariantViolation, ShapeError
from .spectral import cor_spectral


def find_odd_face(S: VertexSet, t: int) -> Face | None:
    """A face fixing t coordinates that meets S an odd number of times."""
    n = S.shape.n
    if not 0 <= t <= n - 1:
        raise ShapeError(f"bitrade order must be in [0, {n - 1}], got {t}")
    for positions in itertools.combinations(range(n), t):
        odd = np.argwhere(face_counts(S, positions) % 2 == 1)
        if len(odd):
            return Face(S.shape, positions, tuple(int(v) for v in odd[0]))
    return None


def is_bitrade(S: VertexSet, t: int) -> bool:
    return find_odd_face(S, t) is None


@dataclass(frozen=True)
class BitradeVerdict:
    order: int | None
    witness_face: Face | None  # odd face at order + 1, None if order is n-1


def bitrade_verdict(S: VertexSet) -> BitradeVerdict:
    order = None
    for t in range(S.shape.n):
        face = find_odd_face(S, t)
        if face is not None:
            return BitradeVerdict(order, face)
        order = t
    return BitradeVerdict(order, None)


def bitrade_order(S: VertexSet) -> int | None:
    """Largest t < n with S a bitrade of order t; None when |S| is odd."""
    return bitrade_verdict(S).order


@dataclass(frozen=True)
class MobileSplit:
    mobile: VertexSet
    comp12: VertexSet
    comp21: VertexSet
    certified_order: int | None
    common_cor: int


def mobile_and_components(S1: VertexSet, S2: VertexSet) -> MobileSplit:
    """Split two equal-size sets into the mobile set S1 ^ S2 and its components.

    The mobile set must be a bitrade of order at least the common
    correlation-immunity order of S1 and S2 (capped at n - 1).
    """
    if S1.shape != S2.shape:
        raise ShapeError(f"shape mismatch: {S1.shape} vs {S2.shape}")
    if S1.cardinality != S2.cardinality:
        raise ShapeError(f"sizes differ: {S1.cardinality} vs {S2.cardinality}")
    mobile = S1 ^ S2
    common = min(cor_spectral(S1), cor_spectral(S2))
    order = bitrade_order(mobile) if mobile.cardinality else None
    if order is not None and order < min(common, S1.shape.n - 1):
        raise InvariantViolation(f"mobile set has order {order} < common cor {common}")
    return MobileSplit(mobile, S1 - S2, S2 - S1, order, common)


def component_lower_bound(matrix: ParameterMatrix) -> int:
    """2^((b + c)/q - 1): minimum size of a component of a perfect coloring."""
    s = matrix.s
    if s is None:
        raise ShapeError(f"b + c = {matrix.b + matrix.c} is not divisible by q = {matrix.shape.q}")
    if s < 1:
        raise ShapeError("b + c must be positive")
    return 2 ** (s - 1)


@dataclass(frozen=True)
class OAResult:
    strength: int
    index_lambda: int
    paper_lambda: Fraction  # |S| / q^(n - strength), kept alongside the standard index


def oa_check(S: VertexSet) -> OAResult:
    """Read S as an orthogonal array of strength cor(S) and verify it row by row."""
    if S.cardinality == 0:
        raise ShapeError("orthogonal array needs a nonempty set")
    shape = S.shape
    t = cor_spectral(S)
    lam, rem = divmod(S.cardinality, shape.q**t)
    if rem:
        raise InvariantViolation(f"|S| = {S.cardinality} not divisible by q^{t}")
    for positions in itertools.combinations(range(shape.n), t):
        if not np.all(face_counts(S, positions) == lam):
            raise InvariantViolation(f"columns {positions} are not uniform at strength {t}")
    return OAResult(t, lam, Fraction(S.cardinality, shape.q ** (shape.n - t)))


def is_mds_distance2(S: VertexSet) -> bool:
    """True iff every line (face fixing n - 1 coordinates) meets S exactly once."""
    if S.cardinality == 0:
        return False
    g = S.grid()
    return all(np.all(g.sum(axis=ax) == 1) for ax in range(S.shape.n))
