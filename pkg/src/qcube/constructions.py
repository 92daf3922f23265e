"""Reference sets: Hamming codes, MDS sum codes, slabs, subcube bitrades."""
from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from .cube import DEFAULT_MAX_POINTS, CubeShape, VertexSet
from .errors import ShapeError


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def parity_check_matrix(q: int, m: int) -> np.ndarray:
    """m x n matrix whose columns are the projective points of F_q^m.

    Each column is the representative whose first nonzero entry is 1,
    columns in lexicographic order.
    """
    cols = [
        v for v in itertools.product(range(q), repeat=m)
        if any(v) and v[next(i for i, x in enumerate(v) if x)] == 1
    ]
    return np.array(cols, dtype=np.int64).T


def linear_coset(shape: CubeShape, H: np.ndarray, syndrome: Sequence[int] | None = None) -> VertexSet:
    """{x : H x = syndrome (mod q)}."""
    H = np.asarray(H, dtype=np.int64) % shape.q
    if H.ndim != 2 or H.shape[1] != shape.n:
        raise ShapeError(f"check matrix must have {shape.n} columns")
    target = np.zeros(H.shape[0], dtype=np.int64) if syndrome is None else np.asarray(syndrome)
    keep = np.ones(shape.size, dtype=bool)
    for r, row in enumerate(H):
        acc = np.zeros(shape.size, dtype=np.int64)
        for i, h in enumerate(row):
            if h:
                acc += h * shape.digit(i)
        keep &= acc % shape.q == target[r] % shape.q
    return VertexSet(shape, keep)


def hamming_code(q: int, m: int, max_points: int = DEFAULT_MAX_POINTS) -> VertexSet:
    """The q-ary Hamming 1-perfect code of length (q^m - 1)/(q - 1), q prime."""
    if not is_prime(q):
        raise ShapeError(f"Hamming codes are only built for prime q, got {q}")
    if m < 2:
        raise ShapeError(f"m must be >= 2, got {m}")
    n = (q**m - 1) // (q - 1)
    shape = CubeShape(q, n, max_points=max_points)
    return linear_coset(shape, parity_check_matrix(q, m))


def mds_sum_code(q: int, n: int, a: int = 0) -> VertexSet:
    """{x : x_0 + ... + x_{n-1} = a (mod q)}, a distance-2 MDS code."""
    shape = CubeShape(q, n)
    return linear_coset(shape, np.ones((1, n), dtype=np.int64), [a])


def slab(q: int, n: int, i: int, v: int) -> VertexSet:
    shape = CubeShape(q, n)
    if not (0 <= i < n and 0 <= v < q):
        raise ShapeError(f"slab needs 0 <= i < {n} and 0 <= v < {q}")
    return VertexSet(shape, shape.digit(i) == v)


def translate(S: VertexSet, v: Sequence[int]) -> VertexSet:
    """{x + v (mod q) : x in S}."""
    shape = S.shape
    shape.encode(v)
    g = S.grid()
    for i, shift in enumerate(v):
        if shift:
            g = np.roll(g, shift, axis=shape.axis(i))
    return VertexSet(shape, g.reshape(shape.size))


def permute_coordinates(S: VertexSet, perm: Sequence[int]) -> VertexSet:
    """Move coordinate i to position perm[i] for every point of S."""
    shape = S.shape
    if sorted(perm) != list(range(shape.n)):
        raise ShapeError(f"not a permutation of range({shape.n}): {perm}")
    axes = [0] * shape.n
    for i, p in enumerate(perm):
        axes[shape.axis(p)] = shape.axis(i)
    return VertexSet(shape, np.transpose(S.grid(), axes).reshape(shape.size))


def subcube_bitrade(q: int, n: int, t: int) -> VertexSet:
    """The 2^(t+1) points with x_0..x_t in {0, 1} and all other coordinates 0."""
    shape = CubeShape(q, n)
    if not 0 <= t <= n - 1:
        raise ShapeError(f"t must be in [0, {n - 1}], got {t}")
    keep = np.ones(shape.size, dtype=bool)
    for i in range(n):
        d = shape.digit(i)
        keep &= (d <= 1) if i <= t else (d == 0)
    return VertexSet(shape, keep)


def random_subset(shape: CubeShape, cardinality: int, seed: int) -> VertexSet:
    """A uniformly random subset of the given size.

    Drawn with ``numpy.random.Generator(PCG64(seed)).choice(q^n, k,
    replace=False)``; PCG64 is platform independent, so a seed names the
    same set everywhere for a given numpy release.
    """
    if not 0 <= cardinality <= shape.size:
        raise ShapeError(f"cardinality {cardinality} outside [0, {shape.size}]")
    rng = np.random.Generator(np.random.PCG64(seed))
    return VertexSet.from_indices(shape, rng.choice(shape.size, cardinality, replace=False))
