"""Exact GF(4) arithmetic, bitsliced quaternary vectors, and the trace
inner product.

GF(4) = {0, 1, w, w2} with w2 = w + 1 and w3 = 1.  An element a + b*w
(a, b binary) is encoded as the integer a | b << 1, so

    0 -> 0,   1 -> 1,   w -> 2,   w2 -> 3.

A length-n quaternary vector is stored as two n-bit integers holding the
a-parts and the b-parts; the Hamming weight is then popcount(a | b), and
vector addition is a pair of XORs.  The trace inner product

    x * y = sum_i Tr(x_i * y_i^2),     Tr(z) = z + z^2,

reduces to the binary symplectic form  <a_x, b_y> + <b_x, a_y>  and is
evaluated with two popcounts.
"""

from __future__ import annotations

from dataclasses import dataclass

ZERO, ONE, W, W2 = 0, 1, 2, 3

SYMBOL_CHARS = "01wW"  # W denotes w2

# gf4_mul lookup; row x, column y in the 0/1/w/W encoding above.
_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)

# Tr(0) = Tr(1) = 0, Tr(w) = Tr(w2) = 1.
_TRACE = (0, 0, 1, 1)


def gf4_mul(x: int, y: int) -> int:
    """Field multiplication; w*w = w2, w*w2 = 1."""
    return _MUL[x][y]


def gf4_square(x: int) -> int:
    return _MUL[x][x]


def gf4_conj(x: int) -> int:
    """Frobenius conjugate x^2 (swaps w and w2)."""
    return _MUL[x][x]


def trace(x: int) -> int:
    """Tr(z) = z + z^2 as an element of {0, 1}."""
    return _TRACE[x]


def symbol_char(x: int) -> str:
    return SYMBOL_CHARS[x]


def parse_symbol(c: str) -> int:
    i = SYMBOL_CHARS.find(c)
    if i < 0:
        raise ValueError(f"invalid GF(4) symbol {c!r}; expected one of 0 1 w W")
    return i


@dataclass(frozen=True)
class Gf4Vec:
    """Immutable quaternary vector of length n, bitsliced into a- and b-parts."""

    n: int
    a: int
    b: int

    def __post_init__(self):
        mask = (1 << self.n) - 1
        if self.a & ~mask or self.b & ~mask:
            raise ValueError("bits outside vector length")

    @classmethod
    def zero(cls, n: int) -> "Gf4Vec":
        return cls(n, 0, 0)

    @classmethod
    def from_symbols(cls, symbols) -> "Gf4Vec":
        a = b = 0
        n = 0
        for s in symbols:
            a |= (s & 1) << n
            b |= (s >> 1) << n
            n += 1
        return cls(n, a, b)

    @classmethod
    def parse(cls, text: str) -> "Gf4Vec":
        """Parse a string over the alphabet 0/1/w/W, position 0 first."""
        return cls.from_symbols(parse_symbol(c) for c in text)

    def symbol(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.a >> i & 1) | (self.b >> i & 1) << 1

    def symbols(self) -> tuple[int, ...]:
        return tuple(self.symbol(i) for i in range(self.n))

    def __str__(self) -> str:
        return "".join(SYMBOL_CHARS[s] for s in self.symbols())

    def __add__(self, other: "Gf4Vec") -> "Gf4Vec":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return Gf4Vec(self.n, self.a ^ other.a, self.b ^ other.b)

    def scale(self, s: int) -> "Gf4Vec":
        """Multiply every coordinate by the scalar s."""
        if s == ZERO:
            return Gf4Vec.zero(self.n)
        if s == ONE:
            return self
        if s == W:  # w * (a + bw) = b + (a + b) w
            return Gf4Vec(self.n, self.b, self.a ^ self.b)
        # w2 * (a + bw) = (a + b) + a w
        return Gf4Vec(self.n, self.a ^ self.b, self.a)

    @property
    def support(self) -> int:
        return self.a | self.b

    @property
    def weight(self) -> int:
        return (self.a | self.b).bit_count()

    def cyclic_shift(self, k: int = 1) -> "Gf4Vec":
        """Shift coordinates by k positions (coordinate i moves to i + k mod n)."""
        n, k = self.n, k % self.n
        mask = (1 << n) - 1
        a = (self.a << k | self.a >> (n - k)) & mask if k else self.a
        b = (self.b << k | self.b >> (n - k)) & mask if k else self.b
        return Gf4Vec(n, a, b)

    def delete(self, i: int) -> "Gf4Vec":
        """Remove coordinate i, shortening the vector by one."""
        if not 0 <= i < self.n:
            raise IndexError(i)
        low = (1 << i) - 1
        return Gf4Vec(
            self.n - 1,
            (self.a & low) | (self.a >> (i + 1)) << i,
            (self.b & low) | (self.b >> (i + 1)) << i,
        )


@dataclass(frozen=True)
class BitVec:
    """Immutable binary vector of length n; XOR is the group operation."""

    n: int
    bits: int

    def __post_init__(self):
        if self.bits & ~((1 << self.n) - 1):
            raise ValueError("bits outside vector length")

    @classmethod
    def zero(cls, n: int) -> "BitVec":
        return cls(n, 0)

    @classmethod
    def parse(cls, text: str) -> "BitVec":
        bits = 0
        for i, c in enumerate(text):
            if c == "1":
                bits |= 1 << i
            elif c != "0":
                raise ValueError(f"invalid binary symbol {c!r}")
        return cls(len(text), bits)

    def bit(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return self.bits >> i & 1

    def __str__(self) -> str:
        return "".join("01"[self.bits >> i & 1] for i in range(self.n))

    def __add__(self, other: "BitVec") -> "BitVec":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return BitVec(self.n, self.bits ^ other.bits)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()


def hamming_weight(x) -> int:
    """Number of nonzero coordinates of a Gf4Vec or BitVec."""
    return x.weight


def hamming_distance(x, y) -> int:
    if x.n != y.n:
        raise ValueError("length mismatch")
    return (x + y).weight


def trace_ip(x: Gf4Vec, y: Gf4Vec) -> int:
    """Trace inner product x * y = sum_i Tr(x_i y_i^2), via the symplectic form."""
    if x.n != y.n:
        raise ValueError("length mismatch")
    return ((x.a & y.b).bit_count() ^ (x.b & y.a).bit_count()) & 1


def star_product(rows, x: Gf4Vec) -> BitVec:
    """M * x: the column of trace inner products of the rows of M with x."""
    bits = 0
    m = 0
    for row in rows:
        bits |= trace_ip(row, x) << m
        m += 1
    return BitVec(m, bits)
