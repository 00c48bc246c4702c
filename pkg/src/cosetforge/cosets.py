"""Syndrome and coset machinery for additive quaternary codes.

The syndrome of x is the bit column (h_1 * x, ..., h_m * x) over the
canonical dual generators h_i; bit i of the integer label is the i-th
inner product, so labels are reproducible across runs and modules.
Because the syndrome map is GF(2)-linear in the bitsliced (a, b) parts,
the full 4^n ambient sweep is two table lookups and an XOR per vector,
done vectorized: syndromes of all a-parts and all b-parts are
precomputed by index doubling and combined on a 2^n x 2^n grid.

A coset's weight distribution equals the distance distribution from any
of its members to the code, so complete regularity and the uniform
packing constants (lambda, mu) are read off the per-coset profiles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from . import f2
from .codes import AdditiveCode, ENUMERATION_BUDGET, EnumerationBudgetExceeded, WeightDistribution
from .gf4 import Gf4Vec, trace_ip


class NotUniformlyPacked(ValueError):
    """Count at distance e+1 is not constant over a coset weight class."""


class NonIntegralSolution(ValueError):
    """The double-counting equations have no integer solution."""


@dataclass(frozen=True)
class CosetProfile:
    """One coset: its syndrome label, leader weight, and weight distribution."""

    syndrome: int
    coset_weight: int
    distribution: WeightDistribution


class SyndromeTable:
    """Per-syndrome coset leaders and leader weights, by full ambient sweep.

    Attributes
    ----------
    check_rows : canonical generators of the trace dual; bit i of a
        syndrome is the trace inner product of row i with the vector.
    syndrome_bits : number of check rows (= 2n - 2k).
    leader_weight : uint8 array indexed by syndrome label.
    """

    def __init__(self, code: AdditiveCode):
        n = code.n
        if 1 << (2 * n) > ENUMERATION_BUDGET:
            raise EnumerationBudgetExceeded(f"4^{n} ambient vectors")
        self.code = code
        dual = code.trace_dual()
        self.check_rows: tuple[Gf4Vec, ...] = dual.generators
        self.syndrome_bits = len(self.check_rows)
        self.coset_count = 1 << self.syndrome_bits

        # Syndromes of the basis vectors 1*e_j and w*e_j.
        self._synd_one = [self._syndrome_direct(Gf4Vec(n, 1 << j, 0)) for j in range(n)]
        self._synd_w = [self._syndrome_direct(Gf4Vec(n, 0, 1 << j)) for j in range(n)]

        # Syndromes of all pure a-part and pure b-part vectors.
        self._synd_a = f2.span_array(self._synd_one, np.uint32)
        self._synd_b = f2.span_array(self._synd_w, np.uint32)

        weights = f2.popcount(
            np.arange(1 << n, dtype=np.uint32)[:, None]
            | np.arange(1 << n, dtype=np.uint32)[None, :]
        ).astype(np.uint8)
        leader_weight = np.full(self.coset_count, 255, dtype=np.uint8)
        syndromes = self._synd_a[:, None] ^ self._synd_b[None, :]
        np.minimum.at(leader_weight, syndromes.reshape(-1), weights.reshape(-1))
        if int(leader_weight.max()) == 255:
            raise AssertionError("unreached syndrome; dual basis inconsistent")
        self.leader_weight = leader_weight
        self._syndromes_flat = syndromes.reshape(-1)
        self._weights_flat = weights.reshape(-1)

        # One minimum-weight leader per syndrome: first match in index order.
        order = np.argsort(self._weights_flat, kind="stable")
        synd_sorted = self._syndromes_flat[order]
        first = np.full(self.coset_count, -1, dtype=np.int64)
        seen = np.zeros(self.coset_count, dtype=bool)
        uniq, idx = np.unique(synd_sorted, return_index=True)
        first[uniq] = order[idx]
        seen[uniq] = True
        if not seen.all():
            raise AssertionError("missing leader")
        self._leader_index = first

    def _syndrome_direct(self, v: Gf4Vec) -> int:
        bits = 0
        for i, row in enumerate(self.check_rows):
            bits |= trace_ip(row, v) << i
        return bits

    def syndrome_of(self, v: Gf4Vec) -> int:
        """Integer syndrome label of an ambient vector."""
        if v.n != self.code.n:
            raise ValueError("length mismatch")
        s = 0
        a, b = v.a, v.b
        while a:
            j = f2.lowest_bit(a)
            s ^= self._synd_one[j]
            a &= a - 1
        while b:
            j = f2.lowest_bit(b)
            s ^= self._synd_w[j]
            b &= b - 1
        return s

    def leader(self, syndrome: int) -> Gf4Vec:
        """A minimum-weight vector with the given syndrome."""
        n = self.code.n
        flat = int(self._leader_index[syndrome])
        return Gf4Vec(n, flat >> n, flat & ((1 << n) - 1))

    def weight_census(self) -> dict[int, int]:
        """Number of cosets per leader weight."""
        binned = np.bincount(self.leader_weight)
        return {w: int(c) for w, c in enumerate(binned) if c}

    def covering_radius(self) -> int:
        return int(self.leader_weight.max())


def build_syndrome_table(code: AdditiveCode) -> SyndromeTable:
    return SyndromeTable(code)


def coset_profiles(code: AdditiveCode, table: SyndromeTable) -> list[CosetProfile]:
    """Weight distribution of every coset, via one histogram over 4^n vectors."""
    n = code.n
    combined = table._syndromes_flat.astype(np.int64) * (n + 1) + table._weights_flat
    hist = np.bincount(combined, minlength=table.coset_count * (n + 1))
    hist = hist.reshape(table.coset_count, n + 1)
    return [
        CosetProfile(
            syndrome=s,
            coset_weight=int(table.leader_weight[s]),
            distribution=WeightDistribution.from_bincount(n, hist[s]),
        )
        for s in range(table.coset_count)
    ]


def is_completely_regular(profiles) -> bool:
    """True iff cosets of equal leader weight share one weight distribution."""
    by_weight: dict[int, WeightDistribution] = {}
    for p in profiles:
        seen = by_weight.setdefault(p.coset_weight, p.distribution)
        if seen != p.distribution:
            return False
    return True


def uniformly_packed_check(code: AdditiveCode, profiles) -> tuple[int, int]:
    """Read (lambda, mu) off the coset profiles, or raise NotUniformlyPacked.

    lambda is the count of weight-(e+1) words in every weight-e coset, mu
    the count in every coset of weight >= e+1, where e is the packing
    radius floor((d-1)/2); either count failing to be constant raises,
    reporting the two differing cosets.
    """
    e = (code.minimum_distance() - 1) // 2
    lam_seen: tuple[int, int] | None = None
    mu_seen: tuple[int, int] | None = None
    for p in profiles:
        count = p.distribution[e + 1]
        if p.coset_weight == e:
            if lam_seen is None:
                lam_seen = (count, p.syndrome)
            elif lam_seen[0] != count:
                raise NotUniformlyPacked(
                    f"cosets {lam_seen[1]} and {p.syndrome} at weight {e} "
                    f"see {lam_seen[0]} and {count} codewords at distance {e + 1}"
                )
        elif p.coset_weight > e:
            if mu_seen is None:
                mu_seen = (count, p.syndrome)
            elif mu_seen[0] != count:
                raise NotUniformlyPacked(
                    f"cosets {mu_seen[1]} and {p.syndrome} beyond weight {e} "
                    f"see {mu_seen[0]} and {count} codewords at distance {e + 1}"
                )
    if lam_seen is None or mu_seen is None:
        raise NotUniformlyPacked("no coset at the packing radius or beyond")
    return lam_seen[0], mu_seen[0]


def lemma_lambda_mu(n: int, q: int, e: int, a_odd: int, a_even: int) -> tuple[int, int]:
    """Solve the double-counting equations for (lambda, mu).

    a_odd and a_even are the weight-(2e+1) and weight-(2e+2) counts of
    the code's weight distribution.  The first equation determines
    lambda; substituting into the second determines mu.  Both must come
    out integral, otherwise the inputs are inconsistent with uniform
    packing and NonIntegralSolution is raised.
    """
    if min(n, e) < 0 or q < 2 or a_odd < 0 or a_even < 0:
        raise ValueError("inputs must be nonnegative with q >= 2")
    lam = Fraction(a_odd * comb(2 * e + 1, e), (q - 1) ** e * comb(n, e))
    lhs = a_odd * comb(2 * e + 1, e) * (e + 1) * (q - 2) + a_even * comb(2 * e + 2, e + 1)
    # lhs = (lam - mu) * a_odd * C(2e+1, e) + (mu - 1) * (q-1)^(e+1) * C(n, e+1)
    s = a_odd * comb(2 * e + 1, e)
    t = (q - 1) ** (e + 1) * comb(n, e + 1)
    mu = Fraction(lhs - lam * s + t, t - s)
    if lam.denominator != 1 or mu.denominator != 1:
        raise NonIntegralSolution(f"lambda = {lam}, mu = {mu}")
    return int(lam), int(mu)


def bzz_parameters(m: int) -> tuple[int, int, int, int, int]:
    """Parameter family (n, redundancy, e, lambda, mu) for m >= 2."""
    if m < 2:
        raise ValueError("m must be at least 2")
    n, rem = divmod(2 ** (2 * m + 1) + 1, 3)
    assert rem == 0
    mu = (2 ** (2 * m) - 1) // 3
    return n, 2 * m + 1, 2, mu - 1, mu


def random_coset_representatives(table: SyndromeTable, syndrome: int, count: int, rng):
    """Random members of a coset, for spot-checking distance distributions."""
    code = table.code
    leader = table.leader(syndrome)
    words = code.codewords()
    return [leader + words[rng.randrange(len(words))] for _ in range(count)]
