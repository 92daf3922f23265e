"""Exhaustive searches at desk scale.

* perfect 2-colorings with a prescribed (b, c), by depth-first search with
  constraint propagation;
* minimum nonempty bitrades, as the minimum weight of the GF(2) kernel of
  the face/point incidence matrix;
* a campaign runner that cross-checks both against the analysis module.
"""
from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from math import factorial
from typing import Iterator

import numpy as np

from .analysis import ParameterMatrix, admissible_matrices, check_perfect_direct, theorem_eval
from .constructions import permute_coordinates, subcube_bitrade
from .cube import CubeShape, VertexSet
from .errors import CapExceeded, QCubeError, ShapeError
from .structures import component_lower_bound, is_bitrade

log = logging.getLogger(__name__)

SEARCH_MAX_POINTS = 2**20
BITRADE_MAX_POINTS = 2**12
GRAY_MAX_DIM = 20
BNB_MAX_NODES = 2_000_000


def neighbor_table(shape: CubeShape) -> np.ndarray:
    """(q^n, n(q-1)) array of neighbour indices."""
    idx = np.arange(shape.size, dtype=np.int64)
    cols = []
    for i in range(shape.n):
        base = shape.q**i
        d = shape.digit(i)
        for k in range(1, shape.q):
            cols.append(idx + (((d + k) % shape.q) - d) * base)
    return np.stack(cols, axis=1)


# ---------------------------------------------------------------------------
# perfect colorings

@dataclass
class SearchConfig:
    shape: CubeShape
    b: int
    c: int
    limit: int = 0
    symmetry_reduction: bool = False

    def __post_init__(self):
        if self.limit < 0:
            raise ValueError("limit must be >= 0")


@dataclass
class SearchResult:
    count: int
    solutions: list[VertexSet] = field(default_factory=list)
    reason: str | None = None


def infeasibility_reason(shape: CubeShape, b: int, c: int) -> str | None:
    d = shape.degree
    if not 0 <= b <= d:
        return f"b={b} outside [0, n(q-1)={d}]"
    if not 0 <= c <= d:
        return f"c={c} exceeds the attainable neighbour count n(q-1)={d}" if c > d else f"c={c} < 0"
    return None


class _Dfs:
    """Colour vertices in index order, 0 before 1, with unit propagation.

    For every vertex we keep the number of neighbours coloured 1 and the
    number still uncoloured; a colour-0 vertex needs exactly b neighbours
    coloured 1 and a colour-1 vertex needs n(q-1) - c.
    """

    def __init__(self, shape: CubeShape, b: int, c: int):
        self.N = shape.size
        self.need = (b, shape.degree - c)
        self.nbrs = neighbor_table(shape).tolist()
        self.color = [-1] * self.N
        self.ones = [0] * self.N
        self.free = [shape.degree] * self.N
        self.trail: list[int] = []

    def _feasible(self, w: int, col: int) -> bool:
        need = self.need[col]
        return self.ones[w] <= need <= self.ones[w] + self.free[w]

    def propagate(self, pending) -> bool:
        color, ones, free, nbrs = self.color, self.ones, self.free, self.nbrs
        queue = deque(pending)
        while queue:
            v, col = queue.popleft()
            if color[v] != -1:
                if color[v] != col:
                    return False
                continue
            color[v] = col
            self.trail.append(v)
            for u in nbrs[v]:
                free[u] -= 1
                ones[u] += col
            for w in (v, *nbrs[v]):
                cw = color[w]
                if cw == -1:
                    ok0 = self._feasible(w, 0)
                    ok1 = self._feasible(w, 1)
                    if not (ok0 or ok1):
                        return False
                    if ok0 != ok1:
                        queue.append((w, 0 if ok0 else 1))
                    continue
                need = self.need[cw]
                if ones[w] > need or ones[w] + free[w] < need:
                    return False
                if free[w]:
                    forced = 0 if ones[w] == need else 1 if ones[w] + free[w] == need else None
                    if forced is not None:
                        queue.extend((u, forced) for u in nbrs[w] if color[u] == -1)
        return True

    def undo(self, length: int):
        color, ones, free, nbrs = self.color, self.ones, self.free, self.nbrs
        while len(self.trail) > length:
            v = self.trail.pop()
            col = color[v]
            for u in nbrs[v]:
                free[u] += 1
                ones[u] -= col
            color[v] = -1

    def solutions(self, fixed=()) -> Iterator[list[int]]:
        if not self.propagate(fixed):
            return
        stack: list[tuple[int, int, int]] = []  # (trail length, vertex, colour tried)

        def backtrack() -> bool:
            while stack:
                length, v, col = stack.pop()
                self.undo(length)
                if col == 0:
                    stack.append((length, v, 1))
                    if self.propagate([(v, 1)]):
                        return True
            return False

        while True:
            start = stack[-1][1] if stack else 0
            v = next((u for u in range(start, self.N) if self.color[u] == -1), None)
            if v is None:
                yield list(self.color)
                if not backtrack():
                    return
                continue
            stack.append((len(self.trail), v, 0))
            if not self.propagate([(v, 0)]) and not backtrack():
                return


def iter_perfect_colorings(shape: CubeShape, b: int, c: int, symmetry_reduction: bool = False) -> Iterator[VertexSet]:
    """Every perfect 2-coloring of Z_q^n with parameters (b, c), each once.

    Both colour classes are nonempty in every emitted set.  With
    ``symmetry_reduction`` the search fixes vertex 0 to colour 1 and runs
    twice: for (b, c) directly and for (c, b), complementing the latter.
    """
    if shape.size > SEARCH_MAX_POINTS:
        raise CapExceeded(f"search is capped at {SEARCH_MAX_POINTS} points")
    if infeasibility_reason(shape, b, c):
        return
    runs = [((b, c), (), False)]
    if symmetry_reduction:
        runs = [((b, c), [(0, 1)], False), ((c, b), [(0, 1)], True)]
    for (bb, cc), fixed, flip in runs:
        for colors in _Dfs(shape, bb, cc).solutions(fixed):
            ind = np.array(colors, dtype=bool)
            if flip:
                ind = ~ind
            if ind.all() or not ind.any():
                continue
            yield VertexSet(shape, ind)


def search_perfect_colorings(config: SearchConfig) -> SearchResult:
    shape = config.shape
    reason = infeasibility_reason(shape, config.b, config.c)
    if reason:
        return SearchResult(0, [], reason)
    result = SearchResult(0)
    for S in iter_perfect_colorings(shape, config.b, config.c, config.symmetry_reduction):
        result.count += 1
        if len(result.solutions) < config.limit:
            result.solutions.append(S)
    if result.count == 0 and (config.b, config.c) not in admissible_matrices(shape):
        result.reason = "matrix fails the necessary conditions"
    return result


def brute_force_perfect_colorings(shape: CubeShape) -> dict[tuple[int, int], list[VertexSet]]:
    """Classify every subset of a tiny cube by its parameter matrix.

    Independent of the DFS: neighbour counts for all 2^(q^n) subsets come
    from one product with the adjacency matrix.
    """
    N = shape.size
    if N > 16:
        raise CapExceeded("brute force is limited to cubes with at most 16 points")
    adj = np.zeros((N, N), dtype=np.int64)
    for v, row in enumerate(neighbor_table(shape)):
        adj[v, row] = 1
    masks = np.arange(1, 2**N - 1, dtype=np.int64)
    ind = ((masks[:, None] >> np.arange(N)) & 1).astype(bool)
    counts = ind.astype(np.int64) @ adj
    big = np.iinfo(np.int64).max
    out_min = np.where(ind, big, counts).min(axis=1)
    out_max = np.where(ind, -1, counts).max(axis=1)
    in_min = np.where(ind, counts, big).min(axis=1)
    in_max = np.where(ind, counts, -1).max(axis=1)
    perfect = (out_min == out_max) & (in_min == in_max)
    found: dict[tuple[int, int], list[VertexSet]] = {}
    for k in np.flatnonzero(perfect):
        key = (int(out_min[k]), shape.degree - int(in_min[k]))
        found.setdefault(key, []).append(VertexSet(shape, ind[k]))
    return found


def canonical_form(S: VertexSet) -> VertexSet:
    """Lexicographically least image of S under coordinate permutations and translations."""
    shape = S.shape
    if factorial(shape.n) * shape.size > 10**6:
        raise CapExceeded("canonical form is limited to small cubes")
    V = shape.coordinates
    weights = shape.q ** np.arange(shape.n)
    best = None
    for perm in itertools.permutations(range(shape.n)):
        P = permute_coordinates(S, perm).point_array()
        images = np.sort(((P[None, :, :] + V[:, None, :]) % shape.q) @ weights, axis=1)
        for row in images:
            key = tuple(int(x) for x in row)
            if best is None or key < best:
                best = key
    return VertexSet.from_indices(shape, best or ())


# ---------------------------------------------------------------------------
# minimum bitrades

@dataclass(frozen=True)
class MinBitradeResult:
    t: int
    minimum_size: int
    witness: VertexSet
    method: str
    kernel_dimension: int


def _face_ids(shape: CubeShape, t: int) -> list[np.ndarray]:
    """For each t-subset of positions, the face id of every point."""
    out = []
    for positions in itertools.combinations(range(shape.n), t):
        fid = np.zeros(shape.size, dtype=np.int64)
        for p in positions:
            fid = fid * shape.q + shape.digit(p)
        out.append(fid)
    return out


def _incidence_rows(shape: CubeShape, t: int) -> list[int]:
    """Face indicator bitsets (bit x set iff point x lies in the face)."""
    rows = []
    for fid in _face_ids(shape, t):
        for f in range(shape.q**t):
            bits = np.packbits(fid == f, bitorder="little").tobytes()
            rows.append(int.from_bytes(bits, "little"))
    return rows


def gf2_kernel(rows: list[int], ncols: int) -> list[int]:
    """Basis of {x : <row, x> = 0 over GF(2) for every row}, as bitsets."""
    pivots: list[tuple[int, int]] = []  # (pivot column, reduced row)
    for r in rows:
        for col, pr in pivots:
            if (r >> col) & 1:
                r ^= pr
        if r:
            col = (r & -r).bit_length() - 1
            pivots = [(c, pr ^ r if (pr >> col) & 1 else pr) for c, pr in pivots]
            pivots.append((col, r))
    pivot_cols = {c for c, _ in pivots}
    basis = []
    for j in range(ncols):
        if j in pivot_cols:
            continue
        vec = 1 << j
        for c, pr in pivots:
            if (pr >> j) & 1:
                vec |= 1 << c
        basis.append(vec)
    return basis


def _min_weight_gray(basis: list[int]) -> int:
    """Minimum-weight nonzero span element by Gray-code enumeration."""
    best, best_w = 0, None
    cur = 0
    for i in range(1, 2 ** len(basis)):
        cur ^= basis[(i & -i).bit_length() - 1]
        w = cur.bit_count()
        if best_w is None or w < best_w:
            best, best_w = cur, w
    return best


def _min_bitrade_bnb(shape: CubeShape, t: int, upper: VertexSet, max_nodes: int) -> VertexSet:
    """Smallest nonempty set with even intersection on every t-fixed face.

    Face parities are invariant under translation, so a minimum solution
    may be assumed to contain the origin.  Iterative deepening over even
    sizes; each level branches on the points of one odd face, excluding
    points already tried by earlier siblings.  A set of size k touches at
    most k faces of each parallel class, which bounds the search.
    """
    fids = [fid.tolist() for fid in _face_ids(shape, t)]
    nfaces = shape.q**t
    members = [[[] for _ in range(nfaces)] for _ in fids]
    for c, fid in enumerate(fids):
        for x, f in enumerate(fid):
            members[c][f].append(x)
    nodes = 0

    def attempt(size: int) -> list[int] | None:
        nonlocal nodes
        odd = [[False] * nfaces for _ in fids]
        n_odd = [0] * len(fids)
        chosen: list[int] = []
        banned = [False] * shape.size

        def toggle(x: int):
            for c, fid in enumerate(fids):
                f = fid[x]
                odd[c][f] = not odd[c][f]
                n_odd[c] += 1 if odd[c][f] else -1

        def dfs(left: int) -> bool:
            nonlocal nodes
            nodes += 1
            if nodes > max_nodes:
                raise CapExceeded(f"branch-and-bound exceeded {max_nodes} nodes")
            worst = max(n_odd)
            if worst == 0:
                return True
            if worst > left:
                return False
            c = n_odd.index(worst)
            f = odd[c].index(True)
            tried = []
            for x in members[c][f]:
                if banned[x]:
                    continue
                chosen.append(x)
                banned[x] = True
                toggle(x)
                if dfs(left - 1):
                    return True
                toggle(x)
                chosen.pop()
                tried.append(x)
            for x in tried:
                banned[x] = False
            return False

        chosen.append(0)
        banned[0] = True
        toggle(0)
        return chosen if dfs(size - 1) else None

    for size in range(2, upper.cardinality, 2):
        found = attempt(size)
        if found is not None:
            return VertexSet.from_indices(shape, found)
    return upper


def min_bitrade(shape: CubeShape, t: int, method: str = "auto", max_nodes: int = BNB_MAX_NODES) -> MinBitradeResult:
    """Exact minimum size of a nonempty bitrade of order t in Z_q^n.

    ``method`` is ``"kernel"`` (enumerate the GF(2) kernel of the face
    incidence matrix), ``"bnb"`` (branch and bound on face parities) or
    ``"auto"`` (kernel when its dimension is at most GRAY_MAX_DIM).
    Raises CapExceeded instead of returning an uncertified answer.
    """
    if not 0 <= t <= shape.n - 1:
        raise ShapeError(f"t must be in [0, {shape.n - 1}], got {t}")
    if shape.size > BITRADE_MAX_POINTS:
        raise CapExceeded(f"exact bitrade certification is capped at {BITRADE_MAX_POINTS} points")
    basis = gf2_kernel(_incidence_rows(shape, t), shape.size)
    k = len(basis)
    if method == "auto":
        method = "kernel" if k <= GRAY_MAX_DIM else "bnb"
    if method == "kernel":
        if k > GRAY_MAX_DIM + 4:
            raise CapExceeded(f"kernel dimension {k} too large for enumeration")
        best = _min_weight_gray(basis)
        witness = VertexSet.from_indices(shape, (i for i in range(shape.size) if (best >> i) & 1))
    elif method == "bnb":
        witness = _min_bitrade_bnb(shape, t, subcube_bitrade(shape.q, shape.n, t), max_nodes)
    else:
        raise ValueError(f"unknown method {method!r}")
    if witness.cardinality == 0 or not is_bitrade(witness, t):
        raise QCubeError("minimum bitrade witness failed verification")
    return MinBitradeResult(t, witness.cardinality, witness, method, k)


# ---------------------------------------------------------------------------
# campaign

def _matrix_entry(shape: CubeShape, b: int, c: int, oracle, max_pairs: int) -> dict:
    solutions = list(iter_perfect_colorings(shape, b, c))
    entry = {"b": b, "c": c, "count": len(solutions)}
    reports = [theorem_eval(S) for S in solutions]
    entry["theorem_equality_all"] = all(r.is_perfect and r.matrix == ParameterMatrix(shape, b, c) for r in reports)
    entry["component_bound"] = component_lower_bound(ParameterMatrix(shape, b, c))
    smallest, pairs = None, 0
    for S1, S2 in itertools.combinations(solutions, 2):
        if pairs >= max_pairs:
            break
        pairs += 1
        for comp in (S1 - S2, S2 - S1):
            if comp.cardinality and (smallest is None or comp.cardinality < smallest):
                smallest = comp.cardinality
    entry["pairs_checked"] = pairs
    entry["min_component"] = smallest
    entry["component_bound_ok"] = smallest is None or smallest >= entry["component_bound"]
    if oracle is not None:
        expected = {S for S in oracle.get((b, c), [])}
        entry["oracle_count"] = len(expected)
        entry["oracle_match"] = expected == set(solutions)
    return entry


def verify_bounds_campaign(shapes, max_pairs: int = 20_000, bitrade_nodes: int = BNB_MAX_NODES) -> dict:
    """Run searches and bound checks over a list of (q, n) shapes.

    Failures are recorded per shape and never abort the campaign.
    """
    report = {"shapes": []}
    for q, n in shapes:
        item = {"q": q, "n": n, "matrices": [], "bitrades": [], "errors": []}
        report["shapes"].append(item)
        try:
            shape = CubeShape(q, n)
            oracle = brute_force_perfect_colorings(shape) if shape.size <= 16 else None
            matrices = admissible_matrices(shape)
            item["admissible"] = [list(m) for m in matrices]
            if oracle is not None:
                item["oracle_outside_admissible"] = sorted(
                    [list(k) for k in oracle if k not in matrices]
                )
        except QCubeError as exc:
            item["errors"].append(str(exc))
            continue
        for b, c in matrices:
            try:
                item["matrices"].append(_matrix_entry(shape, b, c, oracle, max_pairs))
            except QCubeError as exc:
                item["errors"].append(f"(b,c)=({b},{c}): {exc}")
        for t in range(n):
            try:
                res = min_bitrade(shape, t, max_nodes=bitrade_nodes)
                item["bitrades"].append({
                    "t": t,
                    "minimum": res.minimum_size,
                    "claimed_bound": 2 ** (t + 1),
                    "meets_bound": res.minimum_size >= 2 ** (t + 1),
                    "method": res.method,
                })
            except QCubeError as exc:
                item["bitrades"].append({"t": t, "error": str(exc)})
        log.info("campaign shape q=%d n=%d done", q, n)
    return report
