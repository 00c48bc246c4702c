"""GF(2) linear algebra on bit-packed integers.

A length-n binary vector is a Python int whose bit j is coordinate j.
Row spaces are canonicalized by reduced row echelon form with pivots
taken at the lowest set bit, so two generating sets span the same
space iff their canonical forms are equal as tuples.
"""

from __future__ import annotations

import numpy as np


def lowest_bit(x: int) -> int:
    """Index of the lowest set bit (x must be nonzero)."""
    return (x & -x).bit_length() - 1


def rref(rows) -> tuple[int, ...]:
    """Reduced row echelon form of a GF(2) row space.

    Returns the canonical basis as a tuple of ints sorted by pivot
    position (lowest set bit, ascending).  Zero rows are dropped.
    """
    pivots: dict[int, int] = {}
    for row in rows:
        row = int(row)
        while row:
            p = lowest_bit(row)
            if p in pivots:
                row ^= pivots[p]
            else:
                pivots[p] = row
                break
    # back-substitute so each pivot bit appears in exactly one row
    for p in sorted(pivots, reverse=True):
        for q in pivots:
            if q != p and pivots[q] >> p & 1:
                pivots[q] ^= pivots[p]
    return tuple(pivots[p] for p in sorted(pivots))


def rank(rows) -> int:
    return len(rref(rows))


def reduce_vector(basis_rref, v: int) -> int:
    """Residue of v modulo the row space (basis must be in rref form)."""
    for row in basis_rref:
        if v >> lowest_bit(row) & 1:
            v ^= row
    return v


def in_span(basis_rref, v: int) -> bool:
    return reduce_vector(basis_rref, v) == 0


def nullspace(rows, width: int) -> tuple[int, ...]:
    """Basis of {v : <row, v> = 0 (mod 2) for all rows}, in rref form.

    Gaussian elimination on the width-column system; free columns give
    one basis vector each, so the result has width - rank(rows) vectors.
    """
    reduced = rref(rows)
    pivot_cols = [lowest_bit(r) for r in reduced]
    free_cols = [j for j in range(width) if j not in pivot_cols]
    basis = []
    for j in free_cols:
        v = 1 << j
        for r, p in zip(reduced, pivot_cols):
            if r >> j & 1:
                v |= 1 << p
        basis.append(v)
    return rref(basis)


def span_array(generators, dtype=np.uint64) -> np.ndarray:
    """All 2^r XOR-combinations of r generators, by index doubling.

    Element at index i is the combination selected by the bits of i,
    so the array is XOR-linear in its index:  out[i ^ j] = out[i] ^ out[j].
    """
    out = np.zeros(1, dtype=dtype)
    for g in generators:
        out = np.concatenate([out, out ^ dtype(int(g))])
    return out


def popcount(arr: np.ndarray) -> np.ndarray:
    """Per-element population count (unsigned integer arrays)."""
    counts = np.bitwise_count(arr)
    if counts.ndim > arr.ndim:  # pragma: no cover - shapes always match
        raise AssertionError
    return counts


def popcount_rows(packed: np.ndarray) -> np.ndarray:
    """Population count along the last axis of a packed bit matrix."""
    return np.bitwise_count(packed).sum(axis=-1, dtype=np.int64)


def pack_bits(bits: np.ndarray) -> np.ndarray:
    """Pack a boolean/0-1 vector into little-endian uint64 words."""
    bits = np.asarray(bits, dtype=np.uint8)
    nwords = (len(bits) + 63) // 64
    padded = np.zeros(nwords * 64, dtype=np.uint8)
    padded[: len(bits)] = bits
    weights = (np.uint64(1) << np.arange(64, dtype=np.uint64))
    return (padded.reshape(nwords, 64).astype(np.uint64) * weights).sum(
        axis=1, dtype=np.uint64
    )


def unpack_bits(words: np.ndarray, n: int) -> np.ndarray:
    """Inverse of pack_bits; returns a uint8 0/1 vector of length n."""
    words = np.asarray(words, dtype=np.uint64)
    shifts = np.arange(64, dtype=np.uint64)
    bits = (words[:, None] >> shifts) & np.uint64(1)
    return bits.reshape(-1)[:n].astype(np.uint8)
