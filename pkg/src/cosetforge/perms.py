"""Permutation groups: Schreier-Sims order computation, induced actions
of monomial code automorphisms, explicit closures, orbits, and the
classification of fixed subgraphs of graph automorphisms.

A permutation is an images tuple p with x -> p[x]; composition p * q
applies q first.  Group order uses a deterministic base-and-strong-
generating-set construction (every Schreier generator is sifted until
the chain is closed).  The full graph group is handled as an explicit
element list (a closure array of shape (order, degree)), which the
fixed-subgraph analysis needs anyway.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import lcm

import numpy as np

from . import f2
from .codes import AdditiveCode, MonomialMap
from .cosets import SyndromeTable
from .gf4 import gf4_mul
from .graphs import Graph, hamming_graph, isomorphic


class NotAStabilizer(ValueError):
    """The monomial map does not stabilize the code."""


class ClosureLimitExceeded(ValueError):
    pass


class UnclassifiedSubgraph(ValueError):
    """A fixed subgraph matches none of the expected isomorphism classes."""


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("not a permutation")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition self * other: apply other first, then self."""
        return Permutation(tuple(self.images[y] for y in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cycle.append(x)
                seen.add(x)
                x = self.images[x]
            out.append(tuple(cycle))
        return out

    def order(self) -> int:
        return lcm(1, *(len(c) for c in self.cycles()))

    def cycle_string(self, one_based: bool = False) -> str:
        shift = 1 if one_based else 0
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join(
            "(" + " ".join(str(x + shift) for x in c) + ")" for c in cycles
        )

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles, degree: int) -> "Permutation":
        images = list(range(degree))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:]):
                images[a] = b
            if cycle:
                images[cycle[-1]] = cycle[0]
        return cls(tuple(images))


def parse_cycles(text: str, degree: int, one_based: bool = False) -> Permutation:
    """Parse disjoint cycle notation like "(1 4 27)(2 5)"."""
    shift = 1 if one_based else 0
    cycles = []
    for body in re.findall(r"\(([^()]*)\)", text):
        points = [int(t) - shift for t in re.split(r"[,\s]+", body.strip()) if t]
        if points:
            cycles.append(points)
    return Permutation.from_cycles(cycles, degree)


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[Permutation, ...]

    def __post_init__(self):
        if any(g.degree != self.degree for g in self.generators):
            raise ValueError("generator degree mismatch")

    def order(self) -> int:
        return group_order(self)


def group_order(group: PermGroup) -> int:
    """Exact group order via a base and strong generating set.

    Builds the stabilizer chain and keeps sifting Schreier generators
    until every one reduces to the identity, then the order is the
    product of the fundamental orbit lengths.
    """
    degree = group.degree
    identity = tuple(range(degree))
    base: list[int] = []
    strong: list[tuple[int, ...]] = []
    orbit_of: list[dict[int, tuple[int, ...]]] = []

    def compose(p, q):  # apply q first
        return tuple(p[y] for y in q)

    def inverse(p):
        inv = [0] * degree
        for x, y in enumerate(p):
            inv[y] = x
        return tuple(inv)

    def level_gens(i):
        return [g for g in strong if all(g[b] == b for b in base[:i])]

    def rebuild(i):
        beta = base[i]
        orbit = {beta: identity}
        queue = [beta]
        gens = level_gens(i)
        while queue:
            p = queue.pop(0)
            u = orbit[p]
            for g in gens:
                q = g[p]
                if q not in orbit:
                    orbit[q] = compose(g, u)
                    queue.append(q)
        orbit_of[i:i + 1] = [orbit]

    def strip(g):
        for i in range(len(base)):
            p = g[base[i]]
            if p not in orbit_of[i]:
                return g
            g = compose(inverse(orbit_of[i][p]), g)
        return g

    def add(g):
        residue = strip(g)
        if residue == identity:
            return False
        strong.append(residue)
        if all(residue[b] == b for b in base):
            for x in range(degree):
                if residue[x] != x:
                    base.append(x)
                    orbit_of.append({})
                    break
        for i in range(len(base)):
            rebuild(i)
        return True

    for g in group.generators:
        add(g.images)

    # close the chain: every Schreier generator must sift to identity
    changed = True
    while changed:
        changed = False
        for i in reversed(range(len(base))):
            gens = level_gens(i)
            for p, u in list(orbit_of[i].items()):
                for g in gens:
                    rep_to = orbit_of[i][g[p]]
                    schreier = compose(inverse(rep_to), compose(g, u))
                    if add(schreier):
                        changed = True
            if changed:
                break

    order = 1
    for orbit in orbit_of:
        order *= len(orbit)
    return order


# ---------------------------------------------------------------------------
# induced actions of monomial maps


def monomial_to_weight1_perm(m: MonomialMap, n: int) -> Permutation:
    """Action on the 3n weight-1 words, ordered e0, w e0, w2 e0, e1, ...

    Point 3j + t (t = 0, 1, 2 for scalars 1, w, w2) is the word with
    symbol t+1 at coordinate j.
    """
    if m.n != n:
        raise ValueError("dimension mismatch")
    inv_source = [0] * n
    for i, j in enumerate(m.source):
        inv_source[j] = i
    images = [0] * (3 * n)
    for j in range(n):
        i = inv_source[j]
        for s in (1, 2, 3):
            images[3 * j + s - 1] = 3 * i + gf4_mul(m.scale[i], s) - 1
    return Permutation(tuple(images))


def monomial_to_vertex_perm(
    m: MonomialMap, code: AdditiveCode, table: SyndromeTable
) -> Permutation:
    """Permutation of the syndromes induced by x -> m(x).

    Well-defined exactly when m stabilizes the code; the map is GF(2)-
    linear on the syndrome group, so it is determined by the images of
    the unit syndromes (computed through their coset leaders).
    """
    if not code.stabilizes(m):
        raise NotAStabilizer("monomial map does not stabilize the code")
    basis_images = []
    for i in range(table.syndrome_bits):
        leader = table.leader(1 << i)
        basis_images.append(table.syndrome_of(m.apply(leader)))
    images = f2.span_array(basis_images, np.uint32)
    if len(np.unique(images)) != len(images):
        raise NotAStabilizer("induced syndrome map is not a bijection")
    return Permutation(tuple(int(x) for x in images))


def translation_perms(bits: int) -> list[Permutation]:
    """XOR-translations of Z_2^bits by the unit vectors."""
    idx = np.arange(1 << bits)
    return [
        Permutation(tuple(int(x) for x in idx ^ (1 << i))) for i in range(bits)
    ]


# ---------------------------------------------------------------------------
# explicit closures and orbit machinery


def graph_group_closure(generators, limit: int = 10**6) -> np.ndarray:
    """Breadth-first closure under composition; rows are the elements.

    Returns the full element list as an (order, degree) uint32 array in
    deterministic BFS order (identity first).  Raises
    ClosureLimitExceeded when the group is larger than `limit`.
    """
    first = [np.asarray(_images_of(g)) for g in generators]
    if not first:
        raise ValueError("need at least one generator")
    degree = len(first[0])
    dtype = np.uint16 if degree <= 0xFFFF else np.uint32
    gen_arrays = [arr.astype(dtype) for arr in first]
    identity = np.arange(degree, dtype=dtype)
    seen = {identity.tobytes()}
    elements = [identity]
    frontier = [identity]
    while frontier:
        nxt = []
        for cur in frontier:
            for g in gen_arrays:
                new = g[cur]
                key = new.tobytes()
                if key not in seen:
                    seen.add(key)
                    elements.append(new)
                    nxt.append(new)
                    if len(elements) > limit:
                        raise ClosureLimitExceeded(f"more than {limit} elements")
        frontier = nxt
    return np.stack(elements)


def _images_of(p) -> tuple[int, ...]:
    if isinstance(p, Permutation):
        return p.images
    return tuple(int(x) for x in p)


def point_orbits(generators, n_points: int) -> list[list[int]]:
    """Orbit partition of 0..n_points-1 under the generator action."""
    parent = list(range(n_points))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in generators:
        images = _images_of(g)
        for x in range(n_points):
            a, b = find(x), find(images[x])
            if a != b:
                parent[a] = b
    groups: dict[int, list[int]] = {}
    for x in range(n_points):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values(), key=lambda orbit: orbit[0])


def edge_orbits(generators, edges) -> list[list[tuple[int, int]]]:
    """Orbit partition of the given edges under the generator action."""
    edge_list = [tuple(sorted(e)) for e in edges]
    index = {e: i for i, e in enumerate(edge_list)}
    parent = list(range(len(edge_list)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in generators:
        images = _images_of(g)
        for i, (u, w) in enumerate(edge_list):
            e2 = tuple(sorted((images[u], images[w])))
            j = index.get(e2)
            if j is None:
                raise ValueError(f"edge {(u, w)} maps outside the edge set")
            a, b = find(i), find(j)
            if a != b:
                parent[a] = b
    groups: dict[int, list[tuple[int, int]]] = {}
    for i, e in enumerate(edge_list):
        groups.setdefault(find(i), []).append(e)
    return sorted(groups.values(), key=lambda orbit: orbit[0])


def vertex_stabilizer_order(elements: np.ndarray, v: int) -> int:
    """Number of elements fixing vertex v (explicit element array)."""
    return int((elements[:, v] == v).sum())


def element_orders(elements: np.ndarray, cap: int = 10**6) -> np.ndarray:
    """Orders of all elements of an explicit (N, degree) closure array."""
    n_el, degree = elements.shape
    identity = np.arange(degree, dtype=elements.dtype)
    orders = np.zeros(n_el, dtype=np.int64)
    current = elements.copy()
    k = 1
    while True:
        done = (orders == 0) & (current == identity).all(axis=1)
        orders[done] = k
        if (orders > 0).all():
            return orders
        if k > cap:
            raise ValueError("order computation exceeded the cap")
        current = np.take_along_axis(elements, current, axis=1)
        k += 1


def order_census(elements: np.ndarray, orders: np.ndarray | None = None) -> dict[int, int]:
    if orders is None:
        orders = element_orders(elements)
    vals, counts = np.unique(orders, return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, counts)}


# ---------------------------------------------------------------------------
# fixed subgraphs

WHOLE_GRAPH = "whole graph"
NULL_GRAPH = "null graph"
EIGHT_K4 = "8 disjoint K4"
EDGELESS_4 = "edgeless on 4 vertices"
HAMMING_2_4 = "H(2,4)"
EDGELESS_2 = "edgeless on 2 vertices"
ONE_VERTEX = "one vertex"
K4 = "K4"


def classify_fixed_subgraph(graph: Graph, fixed) -> str:
    """Name the isomorphism class of the subgraph induced on fixed vertices."""
    fixed = [int(x) for x in fixed]
    nv = len(fixed)
    if nv == graph.v:
        return WHOLE_GRAPH
    if nv == 0:
        return NULL_GRAPH
    if nv == 1:
        return ONE_VERTEX
    sub = graph.induced(fixed)
    ne = sub.edge_count()
    if nv == 2 and ne == 0:
        return EDGELESS_2
    if nv == 4 and ne == 0:
        return EDGELESS_4
    if nv == 4 and ne == 6:
        return K4
    if nv == 32:
        comps = sub.connected_components()
        if len(comps) == 8 and all(
            len(c) == 4 and sub.induced(c).edge_count() == 6 for c in comps
        ):
            return EIGHT_K4
    if nv == 16 and isomorphic(sub, hamming_graph(2, 4), budget_ms=10000):
        return HAMMING_2_4
    raise UnclassifiedSubgraph(f"fixed set of size {nv} with {ne} edges")


def fixed_subgraph_classification(
    elements: np.ndarray, graph: Graph, orders: np.ndarray | None = None
) -> set[tuple[int, str]]:
    """All (element order, fixed-subgraph class) pairs over the element list."""
    if orders is None:
        orders = element_orders(elements)
    degree = elements.shape[1]
    identity = np.arange(degree, dtype=elements.dtype)
    observed: set[tuple[int, str]] = set()
    fixed_masks = elements == identity
    fixed_counts = fixed_masks.sum(axis=1)
    # every element with a fixed vertex is classified individually; the
    # no-fixed-point case needs no induced subgraph.
    observed.update(
        (int(o), NULL_GRAPH) for o in np.unique(orders[fixed_counts == 0])
    )
    for i in np.nonzero(fixed_counts)[0]:
        fixed = np.nonzero(fixed_masks[i])[0]
        observed.add((int(orders[i]), classify_fixed_subgraph(graph, fixed)))
    return observed
