"""Binary linear codes and the quaternary-to-binary concatenation map.

phi sends the symbol a + bw to the triple (b, a+b, a); applied
coordinatewise it doubles weights and is GF(2)-linear, and the binary
code B = dual(phi(dual(Q))) has a coset graph equal, syndrome for
syndrome, to the coset graph of Q when B's check matrix is phi of Q's
canonical check rows (same row order, hence the same bit labels).

Large-code coset weight distributions come from the dual-side character
sum: the number of weight-j words in the coset of rep is

    N_j = (1/|C_dual|) * sum_{u in C_dual} (-1)^<rep, u> K_j(wt(u)),

with binary Krawtchouk kernel K_j; only the signed counts per dual
weight are needed, so a 2^23-word coset costs one pass over the
1024-word dual.  Everything is exact integer arithmetic; a
non-integral output signals inconsistent inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb

import numpy as np

from . import f2
from .codes import (
    AdditiveCode,
    ENUMERATION_BUDGET,
    EnumerationBudgetExceeded,
    WeightDistribution,
)
from .gf4 import BitVec, Gf4Vec
from .graphs import Graph, MinDistanceTooSmall, cayley_graph_z2


class NonIntegralOutput(ValueError):
    """A character-sum enumerator came out non-integral."""


@dataclass(frozen=True, eq=False)
class BinaryLinearCode:
    """Binary linear [n, k] code, the GF(2)-span of its generator rows.

    check_rows, when given, fixes the parity-check matrix (and hence the
    syndrome bit order of the coset graph); otherwise the canonical
    nullspace basis is used.
    """

    n: int
    generators: tuple[BitVec, ...]
    check_rows: tuple[BitVec, ...] | None = None

    def __post_init__(self):
        if any(g.n != self.n for g in self.generators):
            raise ValueError("length mismatch among generator rows")
        if len(self.reduced) != len(self.generators):
            raise ValueError("generators are not GF(2)-independent")

    @cached_property
    def reduced(self) -> tuple[int, ...]:
        return f2.rref(g.bits for g in self.generators)

    @property
    def k(self) -> int:
        return len(self.generators)

    @property
    def size(self) -> int:
        return 1 << self.k

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BinaryLinearCode)
            and self.n == other.n
            and self.reduced == other.reduced
        )

    def __hash__(self) -> int:
        return hash((self.n, self.reduced))

    def __repr__(self) -> str:
        return f"BinaryLinearCode(n={self.n}, k={self.k})"

    def contains(self, v: BitVec) -> bool:
        return v.n == self.n and f2.in_span(self.reduced, v.bits)

    def parity_check_rows(self) -> tuple[BitVec, ...]:
        if self.check_rows is not None:
            return self.check_rows
        return self.dual().generators

    def dual(self) -> "BinaryLinearCode":
        basis = f2.nullspace([g.bits for g in self.generators], self.n)
        return BinaryLinearCode(self.n, tuple(BitVec(self.n, b) for b in basis))

    def codeword_bits(self) -> np.ndarray:
        if self.size > ENUMERATION_BUDGET:
            raise EnumerationBudgetExceeded(f"2^{self.k} codewords")
        if self.n > 64:
            raise EnumerationBudgetExceeded(f"length {self.n} exceeds packing width")
        return f2.span_array((g.bits for g in self.generators), np.uint64)

    def weight_distribution(self) -> WeightDistribution:
        weights = f2.popcount(self.codeword_bits())
        binned = np.bincount(weights, minlength=self.n + 1)
        return WeightDistribution.from_bincount(self.n, binned)

    def minimum_distance(self) -> int:
        return self.weight_distribution().minimum_nonzero()

    def external_distance(self) -> int:
        return len(self.dual().weight_distribution().nonzero_weights())


def binary_from_generators(rows) -> BinaryLinearCode:
    rows = list(rows)
    if not rows:
        raise ValueError("need at least one row")
    n = rows[0].n
    kept: list[BitVec] = []
    pivots: dict[int, int] = {}
    for g in rows:
        row = g.bits
        while row:
            p = f2.lowest_bit(row)
            if p in pivots:
                row ^= pivots[p]
            else:
                pivots[p] = row
                kept.append(g)
                break
    return BinaryLinearCode(n, tuple(kept))


def binary_weight_distribution(code: BinaryLinearCode) -> WeightDistribution:
    return code.weight_distribution()


# ---------------------------------------------------------------------------
# the phi correspondence


def phi_map(x: Gf4Vec) -> BitVec:
    """Concatenation map: symbol a + bw becomes the triple (b, a+b, a)."""
    bits = 0
    for j in range(x.n):
        a = x.a >> j & 1
        b = x.b >> j & 1
        bits |= b << (3 * j) | (a ^ b) << (3 * j + 1) | a << (3 * j + 2)
    return BitVec(3 * x.n, bits)


def phi_dual_construction(q: AdditiveCode) -> BinaryLinearCode:
    """B = dual(phi(dual(Q))): a linear [3n, n + 2k] binary code.

    B's parity-check matrix is phi applied row-wise to the canonical
    dual generators of Q, preserving row order, so B's coset graph
    carries the same syndrome labels as Q's.
    """
    check = tuple(phi_map(h) for h in q.trace_dual().generators)
    basis = f2.nullspace([h.bits for h in check], 3 * q.n)
    gens = tuple(BitVec(3 * q.n, b) for b in basis)
    return BinaryLinearCode(3 * q.n, gens, check_rows=check)


def quaternary_to_binary_rep(x: Gf4Vec) -> BitVec:
    """Weight- and syndrome-preserving lift: 0,1,w,w2 -> 000,100,001,010.

    The lifted word has, against phi of any check row, the same parity
    as the trace inner product of x with that row, so it represents the
    corresponding binary coset; its weight equals wt(x).
    """
    bits = 0
    for j in range(x.n):
        s = (x.a >> j & 1) | (x.b >> j & 1) << 1
        offset = (0, 0, 2, 1)[s]  # position inside the triple
        if s:
            bits |= 1 << (3 * j + offset)
    return BitVec(3 * x.n, bits)


def psi_images(symbol: int) -> tuple[int, int]:
    """The antipodal pair of triples associated to a symbol (n = 1)."""
    base = (0b000, 0b001, 0b100, 0b010)[symbol]  # 000, 100, 001, 010 lsb-first
    return base, base ^ 0b111


def verify_psi_diagram(q: AdditiveCode) -> bool:
    """Check dual(psi(Q)) = phi(dual(Q)) by exhaustive enumeration (n <= 4).

    psi(Q) associates to each codeword the 2^n words obtained by choosing
    one member of the antipodal triple pair per coordinate.
    """
    n = q.n
    if n > 4:
        raise EnumerationBudgetExceeded("psi enumeration is limited to n <= 4")
    words: set[int] = set()
    for c in q.codewords():
        partial = [0]
        for j in range(n):
            lo, hi = psi_images(c.symbol(j))
            partial = [p | v << (3 * j) for p in partial for v in (lo, hi)]
        words.update(partial)
    # The orthogonal complement of a set equals that of its span, so the
    # dual of psi(Q) is the nullspace of a basis of the words.
    dual_basis = f2.nullspace(f2.rref(words), 3 * n)
    dual_words = {int(x) for x in f2.span_array(dual_basis, np.uint64)}
    expected = {phi_map(h).bits for h in q.trace_dual().codewords()}
    return dual_words == expected


# ---------------------------------------------------------------------------
# MacWilliams transform and dual-side coset enumerators


def krawtchouk(n: int, j: int, i: int) -> int:
    """Binary Krawtchouk K_j(i) = sum_t (-1)^t C(i,t) C(n-i, j-t)."""
    return sum(
        (-1) ** t * comb(i, t) * comb(n - i, j - t) for t in range(min(i, j) + 1)
    )


def macwilliams_binary(
    wd: WeightDistribution, n: int, code_size: int
) -> WeightDistribution:
    """Dual weight distribution A'_j = (1/|C|) sum_i A_i K_j(i), exact."""
    if wd.total() != code_size:
        raise ValueError("distribution total does not match the code size")
    pairs = wd.pairs()
    out = []
    for j in range(n + 1):
        total = sum(a_i * krawtchouk(n, j, i) for i, a_i in pairs)
        value = Fraction(total, code_size)
        if value.denominator != 1 or value < 0:
            raise NonIntegralOutput(f"A'_{j} = {value}")
        out.append((j, int(value)))
    return WeightDistribution.from_pairs(n, out)


def coset_enumerator_via_dual(
    code: BinaryLinearCode, coset_rep: BitVec
) -> WeightDistribution:
    """Weight distribution of coset_rep + code via dual character sums."""
    if coset_rep.n != code.n:
        raise ValueError("length mismatch")
    dual = code.dual()
    if dual.size > 1 << 20:
        raise EnumerationBudgetExceeded("dual code too large to enumerate")
    dual_words = dual.codeword_bits()
    dual_weights = f2.popcount(dual_words)
    signs = 1 - 2 * (f2.popcount(dual_words & np.uint64(coset_rep.bits)) & 1).astype(
        np.int64
    )
    n = code.n
    signed_by_weight = np.zeros(n + 1, dtype=np.int64)
    np.add.at(signed_by_weight, dual_weights, signs)
    out = []
    for j in range(n + 1):
        total = sum(
            int(signed_by_weight[w]) * krawtchouk(n, j, w)
            for w in range(n + 1)
            if signed_by_weight[w]
        )
        value = Fraction(total, int(dual.size))
        if value.denominator != 1 or value < 0:
            raise NonIntegralOutput(f"N_{j} = {value}")
        out.append((j, int(value)))
    return WeightDistribution.from_pairs(n, out)


def coset_weights_brute_force(code: BinaryLinearCode, coset_rep: BitVec) -> WeightDistribution:
    """Direct enumeration of the coset, bit-packed; the cross-check oracle."""
    words = code.codeword_bits() ^ np.uint64(coset_rep.bits)
    binned = np.bincount(f2.popcount(words), minlength=code.n + 1)
    return WeightDistribution.from_bincount(code.n, binned)


# ---------------------------------------------------------------------------
# binary coset graphs


def binary_coset_graph(code: BinaryLinearCode) -> Graph:
    """Cayley graph on the syndromes; connecting set = check-matrix columns."""
    check = code.parity_check_rows()
    m = len(check)
    if m == 0:
        return Graph(1)
    columns = []
    for j in range(code.n):
        s = 0
        for i, row in enumerate(check):
            s |= (row.bits >> j & 1) << i
        columns.append(s)
    # d >= 3 iff the check columns are nonzero and pairwise distinct.
    if 0 in columns or len(set(columns)) != len(columns):
        raise MinDistanceTooSmall("check matrix has a zero or repeated column")
    return cayley_graph_z2(m, columns)


# ---------------------------------------------------------------------------
# Text format:  line 1 `F2 n=<n> rows=<r>`, then r rows over {0,1}.


def format_binary_code_text(code: BinaryLinearCode) -> str:
    lines = [f"F2 n={code.n} rows={code.k}"]
    lines.extend(str(g) for g in code.generators)
    return "\n".join(lines) + "\n"


def parse_binary_code_text(text: str) -> BinaryLinearCode:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty code file")
    header = lines[0].split()
    if len(header) != 3 or header[0] != "F2":
        raise ValueError(f"bad header {lines[0]!r}")
    try:
        n = int(header[1].removeprefix("n="))
        r = int(header[2].removeprefix("rows="))
    except ValueError as exc:
        raise ValueError(f"bad header {lines[0]!r}") from exc
    if len(lines) - 1 != r:
        raise ValueError(f"expected {r} rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        if len(ln) != n:
            raise ValueError(f"row {ln!r} does not have length {n}")
        rows.append(BitVec.parse(ln))
    return binary_from_generators(rows)
