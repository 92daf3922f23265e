"""Exact character sums over Z_q^n.

For a set S and a point z the character sum sum_{x in S} xi^<x,z> (xi a
primitive q-th root of unity) is stored as a :class:`CountVector`: the
number of x in S with <x,z> = j (mod q) for each residue j.  The sum is
then the integer polynomial P(x) = sum_j counts[j] x^j evaluated at xi,
and it vanishes exactly when the q-th cyclotomic polynomial divides P.
No decision in this module goes through floating point.

The scalar product (f, phi_z) = q^-n sum_x f(x) xi^(-<x,z>) carries a
conjugate; counts are stored for +<x,z>.  Zero tests and magnitudes are
unaffected by conjugation, so reports do not depend on the choice.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .cube import CubeShape, VertexSet, face_counts
from .errors import CapExceeded, ShapeError

# entries (q^n * q) allowed in a dense spectrum table
SPECTRUM_MAX_ENTRIES = 2**25


@dataclass(frozen=True)
class CountVector:
    q: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.q:
            raise ShapeError(f"expected {self.q} counts, got {len(self.counts)}")

    @property
    def total(self) -> int:
        return sum(self.counts)

    def value(self) -> complex:
        """Floating approximation of sum_j counts[j] xi^j (reporting only)."""
        xi = np.exp(2j * np.pi * np.arange(self.q) / self.q)
        return complex(np.dot(np.asarray(self.counts, dtype=float), xi))


# ---------------------------------------------------------------------------
# cyclotomic arithmetic

def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomials (coefficients low to high) by a monic ``den``."""
    num = list(num)
    d = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    if len(num) <= d:
        return [0], num
    quot = [0] * (len(num) - d)
    for k in range(len(num) - 1, d - 1, -1):
        coef = num[k]
        if coef:
            quot[k - d] = coef
            for i in range(d + 1):
                num[k - d + i] -= coef * den[i]
    return quot, num[:d]


@lru_cache(maxsize=None)
def cyclotomic(q: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the q-th cyclotomic polynomial."""
    if q < 1:
        raise ValueError("q must be positive")
    poly = [-1] + [0] * (q - 1) + [1]
    for d in range(1, q):
        if q % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic(d)))
            assert not any(rem)
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_matrix(q: int) -> np.ndarray:
    """Row j holds x^j mod Phi_q; counts @ R is P mod Phi_q."""
    phi = list(cyclotomic(q))
    deg = len(phi) - 1
    rows = []
    for j in range(q):
        mono = [0] * j + [1]
        _, rem = _poly_divmod(mono, phi)
        rows.append(rem + [0] * (deg - len(rem)))
    R = np.array(rows, dtype=object)
    R.setflags(write=False)
    return R


def charsum_is_zero(c: CountVector | Sequence[int]) -> bool:
    """True iff sum_j c_j xi^j = 0, decided by divisibility by Phi_q."""
    counts = [int(v) for v in (c.counts if isinstance(c, CountVector) else c)]
    _, rem = _poly_divmod(counts, list(cyclotomic(len(counts))))
    return not any(rem)


def nonzero_mask(counts: np.ndarray) -> np.ndarray:
    """Vectorised :func:`charsum_is_zero` negated over the last axis."""
    q = counts.shape[-1]
    R = _reduction_matrix(q)
    bound = int(np.abs(counts).max(initial=0)) * q * max(int(abs(v)) for v in R.flat)
    if bound < 2**62:
        rem = counts.astype(np.int64) @ R.astype(np.int64)
    else:
        rem = counts.astype(object) @ R
    return np.any(rem != 0, axis=-1)


# ---------------------------------------------------------------------------
# transforms

def count_vector(S: VertexSet, z: Sequence[int]) -> CountVector:
    """Distribution of <x, z> mod q over x in S."""
    shape = S.shape
    shape.encode(z)
    inner = (S.point_array() @ np.asarray(z, dtype=np.int64)) % shape.q
    return CountVector(shape.q, tuple(int(v) for v in np.bincount(inner, minlength=shape.q)))


def counting_transform(indicators: np.ndarray, shape: CubeShape) -> np.ndarray:
    """Count vectors of every z for a batch of indicators.

    ``indicators`` has shape (..., q^n); the result has shape
    (..., q^n, q) with result[..., z, j] = |{x in S : <x,z> = j mod q}|.
    One axis at a time, slice a of the old table feeds slice z_i of the
    new one with its residues rotated by a*z_i.
    """
    q, n = shape.q, shape.n
    ind = np.asarray(indicators)
    batch = ind.shape[:-1]
    if ind.shape[-1] != shape.size:
        raise ShapeError("indicator length does not match shape")
    if int(np.prod(batch, dtype=np.int64)) * shape.size * q > SPECTRUM_MAX_ENTRIES:
        raise CapExceeded(f"spectrum table for {q}^{n} exceeds {SPECTRUM_MAX_ENTRIES} entries")
    table = np.zeros(batch + (shape.size, q), dtype=np.int64)
    table[..., 0] = ind
    table = table.reshape(batch + shape.grid_shape + (q,))
    nb = len(batch)
    for axis in range(nb, nb + n):
        old = [np.take(table, a, axis=axis) for a in range(q)]
        new = []
        for zi in range(q):
            acc = old[0].copy()
            for a in range(1, q):
                acc += np.roll(old[a], (a * zi) % q, axis=-1)
            new.append(acc)
        table = np.stack(new, axis=axis)
    return table.reshape(batch + (shape.size, q))


@dataclass(frozen=True, eq=False)
class SpectrumTable:
    shape: CubeShape
    counts: np.ndarray  # (q^n, q)

    def __getitem__(self, z) -> CountVector:
        idx = z if isinstance(z, (int, np.integer)) else self.shape.encode(z)
        return CountVector(self.shape.q, tuple(int(v) for v in self.counts[idx]))

    def nonzero(self) -> np.ndarray:
        """Boolean mask over z of nonvanishing character sums."""
        return nonzero_mask(self.counts)

    def support_weights(self) -> set[int]:
        return set(int(w) for w in np.unique(self.shape.weights[self.nonzero()]))


def full_spectrum(S: VertexSet) -> SpectrumTable:
    return SpectrumTable(S.shape, counting_transform(S.indicator, S.shape))


# ---------------------------------------------------------------------------
# correlation immunity

def _cor_from_nonzero(nonzero: np.ndarray, shape: CubeShape) -> np.ndarray:
    """cor for each row of a (..., q^n) nonzero mask."""
    wt = np.where(nonzero, shape.weights, shape.n + 1)
    wt[..., 0] = shape.n + 1
    return wt.min(axis=-1) - 1


def _low_weight_points(shape: CubeShape, w: int) -> Iterator:
    nonzero_vals = np.array(list(itertools.product(range(1, shape.q), repeat=w)), dtype=np.int64)
    for positions in itertools.combinations(range(shape.n), w):
        Z = np.zeros((len(nonzero_vals), shape.n), dtype=np.int64)
        Z[:, positions] = nonzero_vals
        yield Z


def cor_low_weight(S: VertexSet) -> int:
    """cor by testing z of increasing weight directly; memory O(|S| q^w)."""
    shape = S.shape
    pts = S.point_array()
    for w in range(1, shape.n + 1):
        for Z in _low_weight_points(shape, w):
            inner = (pts @ Z.T) % shape.q  # (|S|, batch)
            counts = np.stack([(inner == j).sum(axis=0) for j in range(shape.q)], axis=-1)
            if nonzero_mask(counts).any():
                return w - 1
    return shape.n


def cor_spectral(S: VertexSet, method: str = "auto") -> int:
    """Correlation-immunity order from the vanishing of low-weight sums.

    Returns min{wt(z) : z != 0, sum nonzero} - 1, or n when every nonzero z
    gives a vanishing sum (constant indicator).
    """
    shape = S.shape
    if method == "auto":
        method = "full" if shape.size * shape.q <= SPECTRUM_MAX_ENTRIES else "low_weight"
    if method == "full":
        return int(_cor_from_nonzero(full_spectrum(S).nonzero(), shape))
    if method == "low_weight":
        return cor_low_weight(S)
    raise ValueError(f"unknown method {method!r}")


def cor_by_faces(S: VertexSet) -> int:
    """Largest t such that every face fixing t coordinates holds |S|/q^t points."""

    shape = S.shape
    best = 0
    for t in range(1, shape.n + 1):
        if S.cardinality % shape.q**t:
            break
        target = S.cardinality // shape.q**t
        if not all(
            np.all(face_counts(S, pos) == target)
            for pos in itertools.combinations(range(shape.n), t)
        ):
            break
        best = t
    return best


# ---------------------------------------------------------------------------
# weight profile

@dataclass(frozen=True)
class WeightProfile:
    nonzero_count: tuple[int, ...]
    energy: tuple[float, ...]

    @property
    def support(self) -> list[int]:
        return [w for w, k in enumerate(self.nonzero_count) if k]

    @property
    def total_energy(self) -> float:
        return float(sum(self.energy))


def squared_magnitudes(counts: np.ndarray) -> np.ndarray:
    """|sum_j c_j xi^j|^2 for each count vector on the last axis.

    Expanded as sum_d A_d cos(2 pi d / q) with A_d the cyclic
    autocorrelation of the counts, which keeps the result real.
    """
    q = counts.shape[-1]
    c = counts.astype(np.float64)
    cos = np.cos(2 * np.pi * np.arange(q) / q)
    out = np.zeros(c.shape[:-1])
    for d in range(q):
        out += (c * np.roll(c, -d, axis=-1)).sum(axis=-1) * cos[d]
    return out


def weight_profile(S: VertexSet, spectrum: SpectrumTable | None = None) -> WeightProfile:
    shape = S.shape
    spectrum = spectrum if spectrum is not None else full_spectrum(S)
    nz = spectrum.nonzero()
    energy = squared_magnitudes(spectrum.counts) / float(shape.size) ** 2
    energy[~nz] = 0.0
    wt = shape.weights
    nonzero_count = tuple(int(np.count_nonzero(nz & (wt == w))) for w in range(shape.n + 1))
    energies = tuple(float(energy[wt == w].sum()) for w in range(shape.n + 1))
    return WeightProfile(nonzero_count, energies)
