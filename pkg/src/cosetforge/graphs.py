"""Graphs with packed-bit adjacency rows, and the structural checks used
to certify them: distance partitions, distance-regularity (intersection
arrays), strong regularity, distance-power graphs, coset and Cayley and
Hamming constructions, budgeted isomorphism, and linear equivalence of
Cayley connecting sets on Z_2^m.

Adjacency is a (v, ceil(v/64)) uint64 matrix; common-neighbor counts are
AND + popcount over rows, and BFS expands a frontier by OR-reducing the
rows it touches, so the all-pairs censuses on the 1024-vertex graphs of
this package run in seconds.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import f2
from .codes import AdditiveCode
from .gf4 import Gf4Vec, trace_ip


class MinDistanceTooSmall(ValueError):
    """Coset graph needs minimum distance >= 3 for 3n loop-free neighbors."""


class NotDistanceRegular(ValueError):
    pass


class NotStronglyRegular(ValueError):
    pass


class DisconnectedGraph(ValueError):
    pass


class Graph:
    """Undirected simple graph on vertices 0..v-1, packed-bit adjacency."""

    __slots__ = ("v", "_words", "_adj")

    def __init__(self, vertex_count: int, adjacency: np.ndarray | None = None):
        self.v = vertex_count
        self._words = max(1, (vertex_count + 63) // 64)
        if adjacency is None:
            adjacency = np.zeros((vertex_count, self._words), dtype=np.uint64)
        self._adj = adjacency

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, vertex_count: int, edges) -> "Graph":
        g = cls(vertex_count)
        for u, w in edges:
            g._add_edge(u, w)
        return g

    def _add_edge(self, u: int, w: int) -> None:
        if u == w:
            raise ValueError(f"loop at vertex {u}")
        if not (0 <= u < self.v and 0 <= w < self.v):
            raise ValueError(f"edge ({u}, {w}) out of range")
        self._adj[u, w >> 6] |= np.uint64(1 << (w & 63))
        self._adj[w, u >> 6] |= np.uint64(1 << (u & 63))

    # -- basic queries -----------------------------------------------------

    def has_edge(self, u: int, w: int) -> bool:
        return bool(self._adj[u, w >> 6] >> np.uint64(w & 63) & np.uint64(1))

    def row(self, u: int) -> np.ndarray:
        return self._adj[u]

    def degree(self, u: int) -> int:
        return int(f2.popcount_rows(self._adj[u]))

    def degrees(self) -> np.ndarray:
        return f2.popcount_rows(self._adj)

    def edge_count(self) -> int:
        return int(self.degrees().sum()) // 2

    def neighbors(self, u: int) -> np.ndarray:
        return np.nonzero(f2.unpack_bits(self._adj[u], self.v))[0]

    def edges(self):
        """All edges as (u, w) with u < w, lexicographically sorted."""
        for u in range(self.v):
            for w in self.neighbors(u):
                if u < w:
                    yield u, int(w)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.v == other.v
            and np.array_equal(self._adj, other._adj)
        )

    def __repr__(self) -> str:
        return f"Graph(v={self.v}, e={self.edge_count()})"

    # -- traversal ---------------------------------------------------------

    def bfs_masks(self, source: int) -> list[np.ndarray]:
        """Packed masks of the BFS layers from source (layer 0 = {source})."""
        current = np.zeros(self._words, dtype=np.uint64)
        current[source >> 6] = np.uint64(1 << (source & 63))
        visited = current.copy()
        masks = [current]
        while True:
            idx = np.nonzero(f2.unpack_bits(current, self.v))[0]
            nxt = np.bitwise_or.reduce(self._adj[idx], axis=0) & ~visited
            if not nxt.any():
                return masks
            masks.append(nxt)
            visited |= nxt
            current = nxt

    def bfs_distances(self, source: int) -> np.ndarray:
        """Distance array from source; -1 where unreachable."""
        dist = np.full(self.v, -1, dtype=np.int32)
        for i, mask in enumerate(self.bfs_masks(source)):
            dist[np.nonzero(f2.unpack_bits(mask, self.v))[0]] = i
        return dist

    def is_connected(self) -> bool:
        return bool((self.bfs_distances(0) >= 0).all()) if self.v else True

    def diameter(self) -> int:
        best = 0
        for u in range(self.v):
            dist = self.bfs_distances(u)
            if (dist < 0).any():
                raise DisconnectedGraph(f"vertex {u} does not reach the whole graph")
            best = max(best, int(dist.max()))
        return best

    def induced(self, vertices) -> "Graph":
        """Subgraph induced on the given vertices, relabelled in sorted order."""
        vs = sorted(int(x) for x in vertices)
        index = {x: i for i, x in enumerate(vs)}
        g = Graph(len(vs))
        for x in vs:
            for y in self.neighbors(x):
                y = int(y)
                if y in index and x < y:
                    g._add_edge(index[x], index[y])
        return g

    def connected_components(self) -> list[list[int]]:
        seen = np.zeros(self.v, dtype=bool)
        comps = []
        for s in range(self.v):
            if seen[s]:
                continue
            dist = self.bfs_distances(s)
            members = np.nonzero(dist >= 0)[0]
            seen[members] = True
            comps.append([int(x) for x in members])
        return comps


@dataclass(frozen=True)
class IntersectionArray:
    """{b_0, ..., b_{d-1}; c_1, ..., c_d} of a distance-regular graph."""

    b: tuple[int, ...]
    c: tuple[int, ...]

    @property
    def diameter(self) -> int:
        return len(self.b)

    def successive_degrees(self) -> tuple[int, ...]:
        """(k_0, ..., k_d); integrality of every k_i is a feasibility check."""
        ks = [1]
        for b_i, c_next in zip(self.b, self.c):
            num = ks[-1] * b_i
            if num % c_next:
                raise ValueError(f"non-integral successive degree after k={ks[-1]}")
            ks.append(num // c_next)
        return tuple(ks)

    def __str__(self) -> str:
        left = ",".join(map(str, self.b))
        right = ",".join(map(str, self.c))
        return "{" + left + ";" + right + "}"


@dataclass(frozen=True)
class SrgParams:
    """Strongly regular graph parameters; mu is None for complete graphs."""

    nu: int
    kappa: int
    lam: int
    mu: int | None

    def identity_holds(self) -> bool:
        rhs = 0 if self.mu is None else (self.nu - self.kappa - 1) * self.mu
        return self.kappa * (self.kappa - self.lam - 1) == rhs

    def as_tuple(self):
        return (self.nu, self.kappa, self.lam, self.mu)


# ---------------------------------------------------------------------------
# constructions


def cayley_graph_z2(m: int, connecting_set) -> Graph:
    """Cayley graph on Z_2^m: u ~ v iff u XOR v is in the connecting set."""
    elems = [int(s.bits) if hasattr(s, "bits") else int(s) for s in connecting_set]
    if any(s == 0 for s in elems):
        raise ValueError("connecting set must not contain 0")
    if len(set(elems)) != len(elems):
        raise ValueError("connecting set has duplicate elements")
    if any(not 0 <= s < 1 << m for s in elems):
        raise ValueError("connecting set element out of range")
    v = 1 << m
    g = Graph(v)
    idx = np.arange(v, dtype=np.int64)
    for s in elems:
        cols = idx ^ s
        g._adj[idx, cols >> 6] |= np.uint64(1) << (cols & 63).astype(np.uint64)
    return g


def syndrome_connecting_set(code: AdditiveCode) -> tuple[tuple[Gf4Vec, ...], list[int]]:
    """Canonical dual rows and the syndromes of the 3n weight-1 vectors.

    Bit i of a syndrome label is the trace inner product with dual row i,
    the shared labelling convention of this package.
    """
    rows = code.trace_dual().generators
    n = code.n
    seen: list[int] = []
    for j in range(n):
        for s in (1, 2, 3):
            vec = Gf4Vec(n, (s & 1) << j, (s >> 1) << j)
            label = 0
            for i, row in enumerate(rows):
                label |= trace_ip(row, vec) << i
            seen.append(label)
    return rows, seen


def coset_graph(code: AdditiveCode) -> Graph:
    """Cayley graph on the syndrome group, connecting set = weight-1 syndromes.

    Requires minimum distance >= 3 so that the 3n syndromes are nonzero
    and distinct (degree exactly 3n).  The full-space code degenerates to
    the single-vertex graph.
    """
    rows, syndromes = syndrome_connecting_set(code)
    if not rows:
        return Graph(1)
    if code.minimum_distance() < 3:
        raise MinDistanceTooSmall(
            f"minimum distance {code.minimum_distance()} < 3"
        )
    return cayley_graph_z2(len(rows), syndromes)


def hamming_graph(n: int, q: int) -> Graph:
    """H(n, q): words of F_q^n adjacent at Hamming distance one."""
    v = q**n
    if v > 1 << 20:
        raise ValueError(f"{q}^{n} vertices exceed the budget")
    g = Graph(v)
    for u in range(v):
        digits = []
        x = u
        for _ in range(n):
            digits.append(x % q)
            x //= q
        for pos in range(n):
            base = u - digits[pos] * q**pos
            for d in range(q):
                if d != digits[pos]:
                    w = base + d * q**pos
                    if u < w:
                        g._add_edge(u, w)
    return g


def distance_k_graph(g: Graph, k: int) -> Graph:
    """Graph on the same vertices joining pairs at distance exactly k."""
    out = Graph(g.v)
    for u in range(g.v):
        masks = g.bfs_masks(u)
        if k < len(masks):
            out._adj[u] = masks[k]
    return out


# ---------------------------------------------------------------------------
# structural checks


def distance_partition(g: Graph, source: int) -> list[list[int]]:
    """BFS layers from source; raises if the graph is disconnected."""
    masks = g.bfs_masks(source)
    layers = [
        [int(x) for x in np.nonzero(f2.unpack_bits(m, g.v))[0]] for m in masks
    ]
    if sum(len(layer) for layer in layers) != g.v:
        raise DisconnectedGraph(f"BFS from {source} does not reach every vertex")
    return layers


def successive_degrees(g: Graph, source: int) -> tuple[int, ...]:
    return tuple(len(layer) for layer in distance_partition(g, source))


def drg_check(g: Graph) -> IntersectionArray:
    """Certify distance-regularity; returns the intersection array.

    For every ordered pair (u, w) at distance i the counts
    |G(w) & G_{i+1}(u)| and |G(w) & G_{i-1}(u)| must depend on i alone;
    the first violated pair is reported in the exception.
    """
    degs = g.degrees()
    if g.v == 0:
        raise ValueError("empty graph")
    if int(degs.min()) != int(degs.max()):
        u = int(degs.argmin())
        w = int(degs.argmax())
        raise NotDistanceRegular(f"vertices {u} and {w} have degrees {degs[u]} != {degs[w]}")
    diameter = None
    b_arr: np.ndarray | None = None
    c_arr: np.ndarray | None = None
    for u in range(g.v):
        masks = g.bfs_masks(u)
        dist = np.full(g.v, -1, dtype=np.int64)
        for i, mask in enumerate(masks):
            dist[np.nonzero(f2.unpack_bits(mask, g.v))[0]] = i
        if (dist < 0).any():
            raise DisconnectedGraph("graph is disconnected")
        d_u = len(masks) - 1
        if diameter is None:
            diameter = d_u
            b_arr = np.full(diameter + 1, -1, dtype=np.int64)
            c_arr = np.full(diameter + 1, -1, dtype=np.int64)
            b_arr[diameter] = 0
            c_arr[0] = 0
        elif d_u != diameter:
            raise NotDistanceRegular(
                f"eccentricity of vertex {u} is {d_u}, of vertex 0 is {diameter}"
            )
        # counts[i][w] = |G(w) & layer_i(u)|
        counts = np.zeros((diameter + 2, g.v), dtype=np.int64)
        for i, mask in enumerate(masks):
            counts[i] = f2.popcount_rows(g._adj & mask)
        up = np.take_along_axis(counts, (dist + 1)[None, :], axis=0)[0]
        down_index = np.clip(dist - 1, 0, None)
        down = np.take_along_axis(counts, down_index[None, :], axis=0)[0]
        down[dist == 0] = 0
        for i in range(diameter + 1):
            members = dist == i
            if not members.any():
                raise NotDistanceRegular(f"no vertex at distance {i} from {u}")
            for name, arr, values in (("b", b_arr, up), ("c", c_arr, down)):
                vals = values[members]
                lo, hi = int(vals.min()), int(vals.max())
                if lo != hi:
                    w_lo = int(np.nonzero(members)[0][int(vals.argmin())])
                    w_hi = int(np.nonzero(members)[0][int(vals.argmax())])
                    raise NotDistanceRegular(
                        f"{name}_{i} differs: pairs ({u},{w_lo}) and ({u},{w_hi}) "
                        f"at distance {i} give {lo} and {hi}"
                    )
                if arr[i] < 0:
                    arr[i] = lo
                elif arr[i] != lo:
                    raise NotDistanceRegular(
                        f"{name}_{i} = {lo} from vertex {u}, {arr[i]} elsewhere"
                    )
    return IntersectionArray(
        b=tuple(int(x) for x in b_arr[:diameter]),
        c=tuple(int(x) for x in c_arr[1:]),
    )


def srg_check(g: Graph) -> SrgParams:
    """Certify strong regularity by common-neighbor counts on all pairs."""
    if g.v < 2:
        raise NotStronglyRegular("need at least two vertices")
    degs = g.degrees()
    kappa = int(degs[0])
    if int(degs.min()) != kappa or int(degs.max()) != kappa:
        raise NotStronglyRegular("graph is not regular")
    if kappa == g.v - 1:  # complete graph: mu is undefined
        return SrgParams(g.v, kappa, kappa - 1, None)
    lam = mu = None
    lam_at = mu_at = None
    for u in range(g.v):
        common = f2.popcount_rows(g._adj & g._adj[u])
        adj_bits = f2.unpack_bits(g._adj[u], g.v).astype(bool)
        edge_counts = common[adj_bits]
        if edge_counts.size:
            lo, hi = int(edge_counts.min()), int(edge_counts.max())
            if lo != hi or (lam is not None and lam != lo):
                raise NotStronglyRegular(
                    f"adjacent pairs from vertex {u} see {lo}..{hi} common neighbors"
                    + (f"; {lam} at vertex {lam_at}" if lam not in (None, lo) else "")
                )
            lam, lam_at = lo, u
        non = ~adj_bits
        non[u] = False
        non_counts = common[non]
        if non_counts.size:
            lo, hi = int(non_counts.min()), int(non_counts.max())
            if lo != hi or (mu is not None and mu != lo):
                raise NotStronglyRegular(
                    f"non-adjacent pairs from vertex {u} see {lo}..{hi} common neighbors"
                )
            mu, mu_at = lo, u
    if not g.is_connected():
        raise NotStronglyRegular("graph is disconnected")
    return SrgParams(g.v, kappa, int(lam), int(mu))


# ---------------------------------------------------------------------------
# isomorphism


@dataclass(frozen=True)
class IsoResult:
    status: str  # "yes" | "no" | "unknown"
    mapping: tuple[int, ...] | None = None
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.status == "yes"


def _joint_refinement(g1: Graph, g2: Graph) -> tuple[list[int], list[int]]:
    """Neighborhood-color refinement run jointly on both graphs.

    Refining the disjoint union keeps the color ids comparable across
    the two graphs; the ids are stable under further rounds.
    """
    n = g1.v
    neighbor_lists = [
        [int(x) for x in g1.neighbors(u)] for u in range(n)
    ] + [[n + int(x) for x in g2.neighbors(u)] for u in range(g2.v)]
    colors = [g1.degree(u) for u in range(n)] + [g2.degree(u) for u in range(g2.v)]
    table = {c: i for i, c in enumerate(sorted(set(colors)))}
    colors = [table[c] for c in colors]
    while True:
        signatures = [
            (colors[u], tuple(sorted(colors[x] for x in neighbor_lists[u])))
            for u in range(len(colors))
        ]
        table = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
        if len(table) == len(set(colors)):
            return colors[:n], colors[n:]
        colors = [table[sig] for sig in signatures]


def _color_histogram(colors) -> tuple[tuple[int, int], ...]:
    hist: dict[int, int] = {}
    for c in colors:
        hist[c] = hist.get(c, 0) + 1
    return tuple(sorted(hist.items()))


def isomorphic(g1: Graph, g2: Graph, budget_ms: int = 5000) -> IsoResult:
    """Backtracking isomorphism test with color refinement.

    "no" carries a certified distinguishing invariant (or an exhausted
    complete search); "unknown" means the time budget ran out.
    """
    if g1.v != g2.v:
        return IsoResult("no", witness=f"vertex counts {g1.v} != {g2.v}")
    if g1.edge_count() != g2.edge_count():
        return IsoResult("no", witness=f"edge counts {g1.edge_count()} != {g2.edge_count()}")
    if g1.v == 0:
        return IsoResult("yes", mapping=())
    d1 = sorted(int(x) for x in g1.degrees())
    d2 = sorted(int(x) for x in g2.degrees())
    if d1 != d2:
        return IsoResult("no", witness="degree sequences differ")
    c1, c2 = _joint_refinement(g1, g2)
    if _color_histogram(c1) != _color_histogram(c2):
        return IsoResult("no", witness="refinement color histograms differ")

    deadline = time.monotonic() + budget_ms / 1000.0
    n = g1.v
    adj1 = [set(int(x) for x in g1.neighbors(u)) for u in range(n)]
    adj2 = [set(int(x) for x in g2.neighbors(u)) for u in range(n)]
    by_color2: dict[int, list[int]] = {}
    for u in range(n):
        by_color2.setdefault(int(c2[u]), []).append(u)

    # Order g1 vertices: rarest color first, then growing along adjacency.
    color_size = {c: len(v) for c, v in by_color2.items()}
    order: list[int] = []
    placed = set()
    remaining = set(range(n))
    while remaining:
        anchored = [u for u in remaining if adj1[u] & placed]
        pool = anchored or sorted(remaining)
        u = min(pool, key=lambda x: (color_size.get(int(c1[x]), 0), x))
        order.append(u)
        placed.add(u)
        remaining.discard(u)

    mapping = [-1] * n
    used = [False] * n
    timed_out = False

    def extend(depth: int) -> bool:
        nonlocal timed_out
        if depth == n:
            return True
        if time.monotonic() > deadline:
            timed_out = True
            return False
        u = order[depth]
        mapped_nbrs = [(x, mapping[x]) for x in adj1[u] if mapping[x] >= 0]
        for cand in by_color2[int(c1[u])]:
            if used[cand]:
                continue
            ok = True
            for x, mx in mapped_nbrs:
                if mx not in adj2[cand]:
                    ok = False
                    break
            if ok:
                # non-neighbors must stay non-neighbors
                for x in range(n):
                    mx = mapping[x]
                    if mx >= 0 and (x in adj1[u]) != (mx in adj2[cand]):
                        ok = False
                        break
            if ok:
                mapping[u] = cand
                used[cand] = True
                if extend(depth + 1):
                    return True
                mapping[u] = -1
                used[cand] = False
            if timed_out:
                return False
        return False

    if extend(0):
        return IsoResult("yes", mapping=tuple(mapping))
    if timed_out:
        return IsoResult("unknown", witness="time budget exhausted")
    return IsoResult("no", witness="exhausted backtracking search")


def linear_cayley_equivalence(
    m: int, s1, s2, budget_ms: int = 5000
) -> tuple[int, ...] | None:
    """Invertible GF(2)-linear L on Z_2^m with L(S1) = S2, or None.

    Returned as the images of the unit vectors: L(x) XORs cols[j] over
    the set bits j of x.  Backtracks over images of a basis drawn from
    S1, pruning with span closure: every partial combination must lie in
    S2 exactly when its preimage lies in S1.  None on failure or budget
    exhaustion.
    """
    set1 = [int(x) for x in s1]
    set2 = [int(x) for x in s2]
    if len(set1) != len(set2):
        raise ValueError("connecting sets must have equal size")
    s1_set, s2_set = set(set1), set(set2)
    if len(s1_set) != len(set1) or len(s2_set) != len(set2):
        raise ValueError("connecting sets must not contain duplicates")

    # Greedy basis of Z_2^m from S1.
    basis: list[int] = []
    reduced: list[int] = []
    for x in set1:
        if not f2.in_span(f2.rref(reduced), x):
            basis.append(x)
            reduced.append(x)
        if len(basis) == m:
            break
    if len(basis) < m:
        raise ValueError("S1 does not span Z_2^m")

    deadline = time.monotonic() + budget_ms / 1000.0
    span_src = [0]
    span_img = [0]

    def assign(depth: int) -> tuple[int, ...] | None:
        if time.monotonic() > deadline:
            return None
        if depth == m:
            return tuple(span_img)  # placeholder, replaced by caller
        b = basis[depth]
        half = len(span_src)
        for t in set2:
            ok = True
            for i in range(half):
                x = span_src[i] ^ b
                y = span_img[i] ^ t
                if (x in s1_set) != (y in s2_set) or (y == 0 and x != 0):
                    ok = False
                    break
            if not ok:
                continue
            for i in range(half):
                span_src.append(span_src[i] ^ b)
                span_img.append(span_img[i] ^ t)
            result = assign(depth + 1)
            if result is not None:
                return result
            del span_src[half:]
            del span_img[half:]
            if time.monotonic() > deadline:
                return None
        return None

    solution = assign(0)
    if solution is None:
        return None

    # span_src[i] / span_img[i] pair combinations by index bit: recover the
    # images of the unit vectors from the basis images.
    basis_images = [span_img[1 << j] for j in range(m)]
    cols = []
    for j in range(m):
        # express e_j over the basis
        target = 1 << j
        coeffs = _solve_over_basis(basis, target, m)
        img = 0
        for i in range(m):
            if coeffs >> i & 1:
                img ^= basis_images[i]
        cols.append(img)
    L = tuple(cols)
    if apply_linear_map_set(L, s1_set) != s2_set:
        raise AssertionError("closure pruning admitted a non-solution")
    return L


def _solve_over_basis(basis: list[int], target: int, m: int) -> int:
    """Coefficients c with XOR_{i: c_i} basis[i] = target (basis has rank m)."""
    # Gaussian elimination on rows (basis[i], e_i).
    rows = [(basis[i], 1 << i) for i in range(m)]
    pivots: dict[int, tuple[int, int]] = {}
    for vec, tag in rows:
        while vec:
            p = f2.lowest_bit(vec)
            if p in pivots:
                pv, pt = pivots[p]
                vec ^= pv
                tag ^= pt
            else:
                pivots[p] = (vec, tag)
                break
    coeffs = 0
    while target:
        p = f2.lowest_bit(target)
        pv, pt = pivots[p]
        target ^= pv
        coeffs ^= pt
    return coeffs


def apply_linear_map(cols: tuple[int, ...], x: int) -> int:
    y = 0
    while x:
        j = f2.lowest_bit(x)
        y ^= cols[j]
        x &= x - 1
    return y


def apply_linear_map_set(cols: tuple[int, ...], xs) -> set[int]:
    return {apply_linear_map(cols, x) for x in xs}


def relabel(g: Graph, mapping) -> Graph:
    """Graph with vertex u renamed mapping[u]."""
    out = Graph(g.v)
    mapping = [int(x) for x in mapping]
    for u, w in g.edges():
        out._add_edge(mapping[u], mapping[w])
    return out


# ---------------------------------------------------------------------------
# export / import


def format_edge_list(g: Graph) -> str:
    return "".join(f"{u} {w}\n" for u, w in g.edges())


def parse_edge_list(text: str, vertex_count: int | None = None) -> Graph:
    edges = []
    top = -1
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        u, w = (int(t) for t in line.split())
        edges.append((u, w))
        top = max(top, u, w)
    v = vertex_count if vertex_count is not None else top + 1
    return Graph.from_edges(v, edges)


def format_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines.extend(f"  {u} -- {w};" for u, w in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"
