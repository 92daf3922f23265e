"""Points, faces and vertex sets of the q-ary n-cube Z_q^n.

Points are addressed by a little-endian base-q index: coordinate ``i`` is
digit ``i`` of the index.  Dense arrays indexed this way can be viewed as an
n-dimensional grid via :func:`to_grid`; note that numpy's C order puts
coordinate ``n-1`` on grid axis 0, so coordinate ``i`` lives on grid axis
``n-1-i`` (see :meth:`CubeShape.axis`).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapExceeded, ParseError, ShapeError

DEFAULT_MAX_POINTS = 2**26


@dataclass(frozen=True)
class CubeShape:
    q: int
    n: int
    max_points: int = field(default=DEFAULT_MAX_POINTS, compare=False, repr=False)

    def __post_init__(self):
        if int(self.q) != self.q or self.q < 2:
            raise ShapeError(f"alphabet size q must be an integer >= 2, got {self.q!r}")
        if int(self.n) != self.n or self.n < 1:
            raise ShapeError(f"dimension n must be an integer >= 1, got {self.n!r}")
        if self.q**self.n > self.max_points:
            raise CapExceeded(f"cube {self.q}^{self.n} exceeds the cap of {self.max_points} points")

    @property
    def size(self) -> int:
        return self.q**self.n

    @property
    def degree(self) -> int:
        """Number of neighbours of every vertex, n(q-1)."""
        return self.n * (self.q - 1)

    @property
    def grid_shape(self) -> tuple[int, ...]:
        return (self.q,) * self.n

    def axis(self, i: int) -> int:
        """Grid axis holding coordinate ``i``."""
        return self.n - 1 - i

    def encode(self, coords: Sequence[int]) -> int:
        if len(coords) != self.n:
            raise ShapeError(f"expected {self.n} coordinates, got {len(coords)}")
        index = 0
        for i in reversed(range(self.n)):
            c = coords[i]
            if not 0 <= c < self.q:
                raise ShapeError(f"coordinate {i} = {c} out of range [0, {self.q})")
            index = index * self.q + int(c)
        return index

    def decode(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.size:
            raise ShapeError(f"index {index} out of range [0, {self.size})")
        coords = []
        for _ in range(self.n):
            index, r = divmod(index, self.q)
            coords.append(r)
        return tuple(coords)

    def digit(self, i: int) -> np.ndarray:
        """Coordinate ``i`` of every point, in index order."""
        return (np.arange(self.size, dtype=np.int64) // self.q**i) % self.q

    @cached_property
    def coordinates(self) -> np.ndarray:
        """(q^n, n) array of all points in index order."""
        return np.stack([self.digit(i) for i in range(self.n)], axis=1)

    @cached_property
    def weights(self) -> np.ndarray:
        """Hamming weight of every point in index order."""
        wt = np.zeros(self.size, dtype=np.int64)
        for i in range(self.n):
            wt += self.digit(i) != 0
        return wt

    def to_grid(self, flat: np.ndarray) -> np.ndarray:
        """View a trailing axis of length q^n as n grid axes."""
        return flat.reshape(flat.shape[:-1] + self.grid_shape)


def neighbors(point: Sequence[int], shape: CubeShape) -> list[tuple[int, ...]]:
    """All points at Hamming distance 1 from ``point``."""
    shape.encode(point)
    out = []
    for i in range(shape.n):
        for v in range(shape.q):
            if v != point[i]:
                y = list(point)
                y[i] = v
                out.append(tuple(y))
    return out


@dataclass(frozen=True)
class Face:
    """The points agreeing with ``fixed_values`` on ``fixed_positions``."""

    shape: CubeShape
    fixed_positions: tuple[int, ...]
    fixed_values: tuple[int, ...]

    def __post_init__(self):
        if len(self.fixed_positions) != len(self.fixed_values):
            raise ShapeError("fixed positions and values differ in length")
        if len(set(self.fixed_positions)) != len(self.fixed_positions):
            raise ShapeError("repeated fixed position")
        for p, v in zip(self.fixed_positions, self.fixed_values):
            if not 0 <= p < self.shape.n or not 0 <= v < self.shape.q:
                raise ShapeError(f"bad fixed coordinate {p}={v}")

    @property
    def dimension(self) -> int:
        return self.shape.n - len(self.fixed_positions)

    @property
    def size(self) -> int:
        return self.shape.q**self.dimension

    def __contains__(self, point) -> bool:
        return all(point[p] == v for p, v in zip(self.fixed_positions, self.fixed_values))

    def mask(self) -> np.ndarray:
        m = np.ones(self.shape.size, dtype=bool)
        for p, v in zip(self.fixed_positions, self.fixed_values):
            m &= self.shape.digit(p) == v
        return m

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask())


def enumerate_faces(shape: CubeShape, fixed_count: int) -> Iterator[Face]:
    """Every face obtained by fixing ``fixed_count`` coordinates.

    Yields C(n, m) * q^m faces of dimension n - m, position subsets in
    lexicographic order and value tuples in lexicographic order within each.
    """
    if not 0 <= fixed_count <= shape.n:
        raise ShapeError(f"fixed_count must be in [0, {shape.n}], got {fixed_count}")
    for positions in itertools.combinations(range(shape.n), fixed_count):
        for values in itertools.product(range(shape.q), repeat=fixed_count):
            yield Face(shape, positions, values)


@dataclass(frozen=True, eq=False)
class VertexSet:
    """A subset S of Z_q^n stored as a dense read-only indicator."""

    shape: CubeShape
    indicator: np.ndarray

    def __post_init__(self):
        ind = np.asarray(self.indicator, dtype=bool)
        if ind.shape != (self.shape.size,):
            raise ShapeError(
                f"indicator has shape {ind.shape}, expected ({self.shape.size},)"
            )
        ind = ind.copy()
        ind.setflags(write=False)
        object.__setattr__(self, "indicator", ind)

    @classmethod
    def empty(cls, shape: CubeShape) -> VertexSet:
        return cls(shape, np.zeros(shape.size, dtype=bool))

    @classmethod
    def full(cls, shape: CubeShape) -> VertexSet:
        return cls(shape, np.ones(shape.size, dtype=bool))

    @classmethod
    def from_indices(cls, shape: CubeShape, indices: Iterable[int]) -> VertexSet:
        ind = np.zeros(shape.size, dtype=bool)
        idx = np.fromiter(indices, dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= shape.size):
            raise ShapeError("index out of range")
        ind[idx] = True
        return cls(shape, ind)

    @classmethod
    def from_points(cls, shape: CubeShape, points: Iterable[Sequence[int]]) -> VertexSet:
        return cls.from_indices(shape, (shape.encode(p) for p in points))

    @cached_property
    def cardinality(self) -> int:
        return int(np.count_nonzero(self.indicator))

    def __len__(self) -> int:
        return self.cardinality

    def __contains__(self, point) -> bool:
        if isinstance(point, (int, np.integer)):
            return bool(self.indicator[point])
        return bool(self.indicator[self.shape.encode(point)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, VertexSet):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.indicator, other.indicator)

    def __hash__(self) -> int:
        return hash((self.shape, np.packbits(self.indicator).tobytes()))

    def __repr__(self) -> str:
        return f"VertexSet(q={self.shape.q}, n={self.shape.n}, |S|={self.cardinality})"

    def _check(self, other: VertexSet):
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __and__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.shape, self.indicator & other.indicator)

    def __or__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.shape, self.indicator | other.indicator)

    def __xor__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.shape, self.indicator ^ other.indicator)

    def __sub__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.shape, self.indicator & ~other.indicator)

    def complement(self) -> VertexSet:
        return VertexSet(self.shape, ~self.indicator)

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.indicator)

    def points(self) -> list[tuple[int, ...]]:
        return [self.shape.decode(int(i)) for i in self.indices()]

    def point_array(self) -> np.ndarray:
        """(|S|, n) coordinates of the members, in index order."""
        idx = self.indices()
        return np.stack([(idx // self.shape.q**i) % self.shape.q for i in range(self.shape.n)], axis=1)

    def grid(self) -> np.ndarray:
        return self.shape.to_grid(self.indicator)

    @property
    def is_trivial(self) -> bool:
        return self.cardinality in (0, self.shape.size)


def neighbor_counts(S: VertexSet) -> np.ndarray:
    """For every point x, the number of neighbours of x lying in S."""
    shape = S.shape
    g = S.grid().astype(np.int64)
    total = np.zeros_like(g)
    for ax in range(shape.n):
        total += g.sum(axis=ax, keepdims=True)
    total -= shape.n * g
    return total.reshape(shape.size)


def face_counts(S: VertexSet, positions: Sequence[int]) -> np.ndarray:
    """|S ∩ F| for every face F fixing ``positions``.

    Returns an array of shape (q,)*len(positions) whose entry at
    ``values`` belongs to the face with those fixed values, in the order
    the positions were given.
    """
    shape = S.shape
    positions = tuple(positions)
    keep = [shape.axis(p) for p in positions]
    drop = tuple(ax for ax in range(shape.n) if ax not in keep)
    g = S.grid().astype(np.int64).sum(axis=drop)
    # surviving axes are in ascending grid order; reorder to match `positions`
    remaining = sorted(keep)
    return np.transpose(g, [remaining.index(ax) for ax in keep])


# ---------------------------------------------------------------------------
# .qset files

def _format_tuple(coords: Sequence[int], q: int) -> str:
    if q <= 10:
        return "".join(str(c) for c in coords)
    return ",".join(str(c) for c in coords)


def format_qset(S: VertexSet, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{S.shape.q} {S.shape.n}")
    lines.extend(_format_tuple(p, S.shape.q) for p in S.points())
    return "\n".join(lines) + "\n"


def parse_qset(text: str, allow_empty: bool = False, max_points: int = DEFAULT_MAX_POINTS) -> VertexSet:
    """Parse ``.qset`` text: a ``q n`` header then one tuple per line."""
    shape = None
    seen: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if shape is None:
            parts = line.split()
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise ParseError(f"expected header 'q n', got {line!r}", lineno)
            try:
                shape = CubeShape(int(parts[0]), int(parts[1]), max_points=max_points)
            except ShapeError as exc:
                raise ParseError(str(exc), lineno) from None
            continue
        if shape.q <= 10:
            if not line.isdigit():
                raise ParseError(f"expected {shape.n} digits, got {line!r}", lineno)
            coords = [int(ch) for ch in line]
        else:
            try:
                coords = [int(tok) for tok in line.split(",")]
            except ValueError:
                raise ParseError(f"bad tuple {line!r}", lineno) from None
        try:
            idx = shape.encode(coords)
        except ShapeError as exc:
            raise ParseError(str(exc), lineno) from None
        if idx in seen:
            raise ParseError(f"duplicate tuple {line!r}", lineno)
        seen.add(idx)
    if shape is None:
        raise ParseError("missing 'q n' header")
    if not seen and not allow_empty:
        raise ParseError("no tuples")
    return VertexSet.from_indices(shape, seen)


def read_qset(path, allow_empty: bool = False, max_points: int = DEFAULT_MAX_POINTS) -> VertexSet:
    with open(path, encoding="utf-8") as fh:
        return parse_qset(fh.read(), allow_empty=allow_empty, max_points=max_points)


def write_qset(S: VertexSet, path, comments: Sequence[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_qset(S, comments))
