"""Exact integer spectra and association-scheme eigenmatrices via
character sums over Z_2^m.

Every graph certified here is a Cayley graph on an elementary abelian
2-group, so its eigenvalues are the Walsh-Hadamard transform of the
connecting-set indicator: the eigenvalue at character x is
sum_{s in S} (-1)^<x, s>, an integer.  No numerical eigensolver is ever
involved.

The P-matrix of a scheme whose classes are Cayley sets S_0, ..., S_d is
read off the same way: row of character x is the tuple of its character
sums over the S_i; distinct tuples are the rows, their frequencies the
multiplicities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import f2
from .codes import WeightDistribution, pack_pair
from .graphs import Graph, IntersectionArray, SrgParams, cayley_graph_z2, drg_check


class NotAScheme(ValueError):
    """The distance relations do not form an association scheme."""


@dataclass(frozen=True)
class Spectrum:
    """Graph spectrum as (eigenvalue, multiplicity) pairs, eigenvalue descending."""

    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def from_eigenvalues(cls, values) -> "Spectrum":
        counts: dict[int, int] = {}
        for v in values:
            v = int(v)
            counts[v] = counts.get(v, 0) + 1
        return cls(tuple(sorted(counts.items(), reverse=True)))

    def vertex_count(self) -> int:
        return sum(m for _, m in self.pairs)

    def moment(self, k: int) -> int:
        return sum(m * ev**k for ev, m in self.pairs)

    def eigenvalues(self) -> tuple[int, ...]:
        return tuple(ev for ev, _ in self.pairs)

    def __str__(self) -> str:
        def fmt(ev, m):
            base = f"({ev})" if ev < 0 else f"{ev}"
            return f"{base}^{m}"

        return "{" + ", ".join(fmt(ev, m) for ev, m in self.pairs) + "}"


@dataclass(frozen=True)
class AssociationSchemeData:
    """Class count d, valencies, multiplicities, and the (d+1)x(d+1) P-matrix.

    Rows (eigenspaces) are ordered by decreasing entry in column 1, which
    puts the valency row first; columns follow the class order.
    """

    d: int
    valencies: tuple[int, ...]
    multiplicities: tuple[int, ...]
    p_matrix: tuple[tuple[int, ...], ...]

    def size(self) -> int:
        return sum(self.valencies)


def walsh_hadamard(values: np.ndarray) -> np.ndarray:
    """Unnormalized WHT: out[x] = sum_s (-1)^<x,s> values[s]; length 2^m."""
    arr = np.asarray(values, dtype=np.int64).copy()
    n = len(arr)
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    h = 1
    while h < n:
        arr = arr.reshape(-1, 2, h)
        top = arr[:, 0, :] + arr[:, 1, :]
        bottom = arr[:, 0, :] - arr[:, 1, :]
        arr = np.stack([top, bottom], axis=1)
        h *= 2
    return arr.reshape(n)


def wht_spectrum(m: int, connecting_set) -> Spectrum:
    """Exact spectrum of the Cayley graph on Z_2^m with the given set."""
    elems = [int(s.bits) if hasattr(s, "bits") else int(s) for s in connecting_set]
    if not elems:
        raise ValueError("connecting set is empty")
    if 0 in elems:
        raise ValueError("connecting set must not contain 0")
    indicator = np.zeros(1 << m, dtype=np.int64)
    for s in elems:
        indicator[s] = 1
    return Spectrum.from_eigenvalues(walsh_hadamard(indicator))


def spectrum_from_dual_weights(n: int, dual_wd: WeightDistribution) -> Spectrum:
    """Coset-graph spectrum: eigenvalue 3n - 4i with multiplicity A_i."""
    counts: dict[int, int] = {}
    for i, a_i in dual_wd.pairs():
        ev = 3 * n - 4 * i
        counts[ev] = counts.get(ev, 0) + a_i
    return Spectrum(tuple(sorted(counts.items(), reverse=True)))


def srg_params_from_spectrum(spectrum: Spectrum) -> SrgParams:
    """Parameters of a connected SRG from its three distinct eigenvalues."""
    if len(spectrum.pairs) != 3:
        raise ValueError(
            f"need exactly 3 distinct eigenvalues, got {len(spectrum.pairs)}"
        )
    (k, mk), (r, _), (s, _) = spectrum.pairs
    if mk != 1:
        raise ValueError("top eigenvalue must be simple (connected regular graph)")
    nu = spectrum.vertex_count()
    lam = k + r + s + r * s
    mu = k + r * s
    return SrgParams(nu, k, lam, mu)


def spectrum_trace_identities(spectrum: Spectrum, edge_count: int) -> bool:
    """Loopless trace checks: sum ev*m = 0 and sum ev^2*m = 2|E|."""
    return spectrum.moment(1) == 0 and spectrum.moment(2) == 2 * edge_count


def scheme_from_cayley_drg(m: int, connecting_set) -> AssociationSchemeData:
    """Association scheme of a distance-regular Cayley graph on Z_2^m.

    Class i is the set of vertices at distance i from 0; the scheme's
    P-matrix rows are the distinct tuples of character sums over the
    classes, with multiplicities their frequencies.
    """
    g = cayley_graph_z2(m, connecting_set)
    drg_check(g)  # raises NotDistanceRegular on failure
    masks = g.bfs_masks(0)
    columns = []
    for mask in masks:
        indicator = f2.unpack_bits(mask, g.v).astype(np.int64)
        columns.append(walsh_hadamard(indicator))
    return _scheme_from_character_columns(columns)


def _scheme_from_character_columns(columns) -> AssociationSchemeData:
    table = np.stack(columns, axis=1)  # (2^m, d+1)
    valencies = tuple(int(x) for x in table[0])
    rows: dict[tuple[int, ...], int] = {}
    for row in table:
        key = tuple(int(x) for x in row)
        rows[key] = rows.get(key, 0) + 1
    ordered = sorted(rows, key=lambda row: -row[1])
    return AssociationSchemeData(
        d=len(columns) - 1,
        valencies=valencies,
        multiplicities=tuple(rows[row] for row in ordered),
        p_matrix=tuple(ordered),
    )


def distance_scheme_on_code(codewords) -> AssociationSchemeData:
    """Scheme on an additive group of quaternary words, classes by weight.

    x R_i y iff wt(x + y) = w_i for the sorted distinct nonzero weights
    w_1 < ... < w_d.  Because relations depend only on the difference,
    the intersection numbers p^k_ij reduce to counts against a fixed
    z of each weight class; they are checked by brute force, then the
    P-matrix is computed by character sums over a binary coordinatization
    of the group (reduced GF(2)-basis, characters indexed by Z_2^r).
    """
    words = list(codewords)
    if not words:
        raise ValueError("empty codeword list")
    n = words[0].n
    packed = sorted(pack_pair(w) for w in words)
    basis = f2.rref(packed)
    r = len(basis)
    if 1 << r != len(words) or len(set(packed)) != len(words):
        raise NotAScheme("codewords do not form a group of size 2^r")
    span = f2.span_array(basis, np.uint64)
    if sorted(int(x) for x in span) != [int(x) for x in packed]:
        raise NotAScheme("codewords do not form a group under addition")

    mask = np.uint64((1 << n) - 1)
    weights = f2.popcount((span & mask) | (span >> np.uint64(n))).astype(np.int64)
    weight_values = sorted(set(int(w) for w in weights if w))
    class_index = np.zeros(len(span), dtype=np.int64)  # 0 = identity class
    for i, w in enumerate(weight_values, start=1):
        class_index[weights == w] = i
    d = len(weight_values)

    # p^k_ij constancy: count pairs against one z per class, then compare
    # with every other z of the same class.
    expected: list[np.ndarray | None] = [None] * (d + 1)
    size = len(span)
    for z in range(size):
        k = int(class_index[z])
        pair_classes = class_index * (d + 1) + class_index[np.arange(size) ^ z]
        counts = np.bincount(pair_classes, minlength=(d + 1) * (d + 1))
        if expected[k] is None:
            expected[k] = counts
        elif not np.array_equal(expected[k], counts):
            diff = int(np.nonzero(expected[k] != counts)[0][0])
            i, j = divmod(diff, d + 1)
            raise NotAScheme(
                f"p^{k}_{{{i},{j}}} differs between class-{k} elements "
                f"(witness difference z index {z})"
            )

    columns = []
    for i in range(d + 1):
        indicator = (class_index == i).astype(np.int64)
        columns.append(walsh_hadamard(indicator))
    return _scheme_from_character_columns(columns)


@dataclass(frozen=True)
class DualityReport:
    """Outcome of the eigenmatrix duality check P1 * P2 = |X| * I."""

    ok: bool
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_duality(
    coset_scheme: AssociationSchemeData, distance_scheme: AssociationSchemeData
) -> DualityReport:
    """Check that the two schemes are Delsarte duals of one another.

    The product of the eigenmatrices must be |X| times the identity
    (exact integers), and each scheme's multiplicities must equal the
    other's valencies.
    """
    size = coset_scheme.size()
    if size != distance_scheme.size():
        return DualityReport(False, "schemes live on different set sizes")
    p1 = np.array(coset_scheme.p_matrix, dtype=np.int64)
    p2 = np.array(distance_scheme.p_matrix, dtype=np.int64)
    product = p1 @ p2
    target = size * np.eye(p1.shape[0], dtype=np.int64)
    if not np.array_equal(product, target):
        bad = np.nonzero(product != target)
        i, j = int(bad[0][0]), int(bad[1][0])
        return DualityReport(
            False, f"entry ({i},{j}) of the product is {int(product[i, j])}"
        )
    if coset_scheme.multiplicities != distance_scheme.valencies:
        return DualityReport(False, "coset multiplicities != distance valencies")
    if distance_scheme.multiplicities != coset_scheme.valencies:
        return DualityReport(False, "distance multiplicities != coset valencies")
    return DualityReport(True)
