"""Additive quaternary codes: GF(2)-spans of quaternary generator rows.

A code of length n with r independent generators has 2^r codewords; r
may be odd, in which case the quaternary dimension k = r/2 is
half-integral.  Internally a generator a + b*w is packed into the
2n-bit integer a | b << n, and the row space is canonicalized by GF(2)
reduced row echelon form, which makes code equality a tuple comparison.

Duality is with respect to the trace inner product; the dual is the
nullspace of the symplectic constraint system, so |C| * |C_dual| = 4^n
always holds.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import f2
from .gf4 import Gf4Vec, gf4_mul, parse_symbol, W

ENUMERATION_BUDGET = 1 << 24


class EnumerationBudgetExceeded(ValueError):
    """Raised when a full span or ambient enumeration would be too large."""


def pack_pair(v: Gf4Vec) -> int:
    """Pack a quaternary vector into 2n bits: a-parts low, b-parts high."""
    return v.a | v.b << v.n


def unpack_pair(n: int, bits: int) -> Gf4Vec:
    mask = (1 << n) - 1
    return Gf4Vec(n, bits & mask, bits >> n)


@dataclass(frozen=True)
class WeightDistribution:
    """Exact weight enumerator: counts[i] = number of words of weight i."""

    counts: tuple[int, ...]

    @classmethod
    def from_weights(cls, n: int, weights) -> "WeightDistribution":
        counts = [0] * (n + 1)
        for w in weights:
            counts[w] += 1
        return cls(tuple(counts))

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "WeightDistribution":
        counts = [0] * (n + 1)
        for w, c in pairs:
            counts[w] = c
        return cls(tuple(counts))

    @classmethod
    def from_bincount(cls, n: int, binned: np.ndarray) -> "WeightDistribution":
        counts = [0] * (n + 1)
        for w, c in enumerate(binned):
            counts[w] = int(c)
        return cls(tuple(counts))

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    def __getitem__(self, w: int) -> int:
        return self.counts[w] if 0 <= w <= self.n else 0

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((w, c) for w, c in enumerate(self.counts) if c)

    def total(self) -> int:
        return sum(self.counts)

    def nonzero_weights(self) -> tuple[int, ...]:
        return tuple(w for w, c in enumerate(self.counts) if c and w > 0)

    def minimum_nonzero(self) -> int:
        for w, c in enumerate(self.counts):
            if w > 0 and c:
                return w
        raise ValueError("no nonzero weights")

    def __str__(self) -> str:
        return "[" + ", ".join(f"<{w},{c}>" for w, c in self.pairs()) + "]"


@dataclass(frozen=True)
class MonomialMap:
    """Coordinate permutation composed with nonzero per-coordinate scalars.

    The image y of x has y[i] = scale[i] * x[source[i]]; this is left
    multiplication of a column vector by the monomial matrix whose row i
    holds scale[i] in column source[i].
    """

    source: tuple[int, ...]
    scale: tuple[int, ...]

    def __post_init__(self):
        n = len(self.source)
        if sorted(self.source) != list(range(n)) or len(self.scale) != n:
            raise ValueError("source must be a permutation of 0..n-1")
        if any(s == 0 for s in self.scale):
            raise ValueError("monomial scalars must be nonzero")

    @property
    def n(self) -> int:
        return len(self.source)

    @classmethod
    def identity(cls, n: int) -> "MonomialMap":
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def from_matrix(cls, rows) -> "MonomialMap":
        """Build from a monomial matrix given as Gf4Vec rows."""
        source, scale = [], []
        for row in rows:
            nz = [(j, row.symbol(j)) for j in range(row.n) if row.symbol(j)]
            if len(nz) != 1:
                raise ValueError("each row must have exactly one nonzero entry")
            source.append(nz[0][0])
            scale.append(nz[0][1])
        return cls(tuple(source), tuple(scale))

    def apply(self, v: Gf4Vec) -> Gf4Vec:
        if v.n != self.n:
            raise ValueError("dimension mismatch")
        return Gf4Vec.from_symbols(
            gf4_mul(self.scale[i], v.symbol(self.source[i])) for i in range(self.n)
        )

    def inverse(self) -> "MonomialMap":
        inv_source = [0] * self.n
        inv_scale = [1] * self.n
        for i, j in enumerate(self.source):
            inv_source[j] = i
            # scalar inverse in GF(4)*: 1->1, w->w2, w2->w
            s = self.scale[i]
            inv_scale[j] = (1, 1, 3, 2)[s]
        return MonomialMap(tuple(inv_source), tuple(inv_scale))


@dataclass(frozen=True, eq=False)
class AdditiveCode:
    """Additive quaternary code, the GF(2)-span of its generator rows."""

    n: int
    generators: tuple[Gf4Vec, ...]

    def __post_init__(self):
        if any(g.n != self.n for g in self.generators):
            raise ValueError("length mismatch among generator rows")
        if len(self.reduced) != len(self.generators):
            raise ValueError("generators are not GF(2)-independent")

    @cached_property
    def reduced(self) -> tuple[int, ...]:
        """Canonical rref basis of the packed 2n-bit row space."""
        return f2.rref(pack_pair(g) for g in self.generators)

    @property
    def r(self) -> int:
        """Binary dimension: |C| = 2^r."""
        return len(self.generators)

    @property
    def size(self) -> int:
        return 1 << self.r

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AdditiveCode)
            and self.n == other.n
            and self.reduced == other.reduced
        )

    def __hash__(self) -> int:
        return hash((self.n, self.reduced))

    def __repr__(self) -> str:
        return f"AdditiveCode(n={self.n}, r={self.r})"

    def contains(self, v: Gf4Vec) -> bool:
        if v.n != self.n:
            return False
        return f2.in_span(self.reduced, pack_pair(v))

    @cached_property
    def _span(self) -> np.ndarray:
        """All 2^r packed codewords, XOR-linear in the array index."""
        if self.size > ENUMERATION_BUDGET:
            raise EnumerationBudgetExceeded(f"2^{self.r} codewords")
        if 2 * self.n > 63:
            raise EnumerationBudgetExceeded(f"length {self.n} exceeds packing width")
        return f2.span_array((pack_pair(g) for g in self.generators), np.uint64)

    def codeword_weights(self) -> np.ndarray:
        span = self._span
        mask = np.uint64((1 << self.n) - 1)
        shift = np.uint64(self.n)
        return f2.popcount((span & mask) | (span >> shift))

    def codewords(self) -> list[Gf4Vec]:
        return [unpack_pair(self.n, int(x)) for x in self._span]

    def weight_distribution(self) -> WeightDistribution:
        binned = np.bincount(self.codeword_weights(), minlength=self.n + 1)
        return WeightDistribution.from_bincount(self.n, binned)

    def minimum_distance(self) -> int:
        return self.weight_distribution().minimum_nonzero()

    def trace_dual(self) -> "AdditiveCode":
        """Dual under the trace inner product, via the symplectic nullspace."""
        constraint_rows = [g.b | g.a << self.n for g in self.generators]
        basis = f2.nullspace(constraint_rows, 2 * self.n)
        return AdditiveCode(self.n, tuple(unpack_pair(self.n, z) for z in basis))

    def external_distance(self) -> int:
        return len(self.trace_dual().weight_distribution().nonzero_weights())

    def puncture(self, position: int) -> "AdditiveCode":
        """Projection onto the coordinates other than `position`."""
        if not 0 <= position < self.n:
            raise IndexError(position)
        return from_generators([g.delete(position) for g in self.generators])

    def is_linear(self) -> bool:
        """True iff the code is closed under multiplication by w."""
        return all(self.contains(g.scale(W)) for g in self.generators)

    def apply_monomial(self, m: MonomialMap) -> "AdditiveCode":
        if m.n != self.n:
            raise ValueError("dimension mismatch")
        return from_generators([m.apply(g) for g in self.generators])

    def stabilizes(self, m: MonomialMap) -> bool:
        """True iff the monomial image has the same span as the code."""
        return self.apply_monomial(m).reduced == self.reduced


def from_generators(rows) -> AdditiveCode:
    """Span of the rows; GF(2)-dependent rows are dropped, order preserved."""
    rows = list(rows)
    if not rows:
        raise ValueError("need at least one row")
    n = rows[0].n
    if any(g.n != n for g in rows):
        raise ValueError("length mismatch among generator rows")
    kept: list[Gf4Vec] = []
    pivots: dict[int, int] = {}
    for g in rows:
        row = pack_pair(g)
        while row:
            p = f2.lowest_bit(row)
            if p in pivots:
                row ^= pivots[p]
            else:
                pivots[p] = row
                kept.append(g)
                break
    return AdditiveCode(n, tuple(kept))


def cyclic_additive_code(word: Gf4Vec) -> AdditiveCode:
    """GF(2)-span of all n cyclic shifts of the word."""
    if word.n < 1:
        raise ValueError("word must be nonempty")
    return from_generators([word.cyclic_shift(k) for k in range(word.n)])


def apply_monomial(code: AdditiveCode, m: MonomialMap) -> AdditiveCode:
    return code.apply_monomial(m)


def stabilizes(code: AdditiveCode, m: MonomialMap) -> bool:
    return code.stabilizes(m)


def weight_distribution(code: AdditiveCode) -> WeightDistribution:
    return code.weight_distribution()


def minimum_distance(code: AdditiveCode) -> int:
    return code.minimum_distance()


def external_distance(code: AdditiveCode) -> int:
    return code.external_distance()


def trace_dual(code: AdditiveCode) -> AdditiveCode:
    return code.trace_dual()


def puncture(code: AdditiveCode, position: int) -> AdditiveCode:
    return code.puncture(position)


# ---------------------------------------------------------------------------
# Text format:  line 1 `F4 n=<n> rows=<r>`, then r rows over {0,1,w,W}.


def format_code_text(code: AdditiveCode) -> str:
    lines = [f"F4 n={code.n} rows={code.r}"]
    lines.extend(str(g) for g in code.generators)
    return "\n".join(lines) + "\n"


def parse_code_text(text: str) -> AdditiveCode:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty code file")
    header = lines[0].split()
    if len(header) != 3 or header[0] != "F4":
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
        rows.append(Gf4Vec.from_symbols(parse_symbol(c) for c in ln))
    return from_generators(rows)
