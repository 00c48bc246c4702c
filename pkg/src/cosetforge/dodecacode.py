"""The named objects of this study, built once and cached.

Everything derives from the dodecacode, the additive (12, 4^6, 6) code
over GF(4) generated by the cyclic shifts of a single word.  Puncturing
one coordinate gives the (11, 4^6, 5) code whose coset graph on 2^10
syndromes is the distance-regular graph this package certifies;
puncturing two more gives the (9, 4^6) codes with strongly regular
64-vertex coset graphs.

The generator word, the fixed 12-row generator matrix of the punctured
code, the two monomial matrices generating its monomial automorphism
group, their induced action on the 33 weight-1 words, and the published
33-element Cayley connecting set on Z_2^10 are embedded as constants;
the builders below construct and cache the derived objects.
"""

from __future__ import annotations

from functools import cache

from .codes import AdditiveCode, MonomialMap, cyclic_additive_code, from_generators
from .gf4 import Gf4Vec

CYCLIC_GENERATOR_WORD = "w10100100101"

# Fixed generator matrix of the punctured dodecacode (W = w^2).
PUNCTURED_GENERATOR_ROWS = (
    "00000WW0w1w",
    "00000w0www1",
    "10000101WW1",
    "w00000w1www",
    "010000111WW",
    "0w000W1Www0",
    "00100ww1101",
    "00w00w1wWW0",
    "00010www01w",
    "000w0W11W0w",
    "00001WWW10W",
    "0000ww101ww",
)

# Monomial matrices generating the monomial automorphism group of the
# punctured code, as 11x11 symbol grids (row i has one nonzero entry).
MONOMIAL_MATRIX_1 = (
    "00000w00000",
    "10000000000",
    "00W00000000",
    "0000000W000",
    "00000000010",
    "0000w000000",
    "0000000000w",
    "00010000000",
    "0W000000000",
    "00000000W00",
    "00000010000",
)

MONOMIAL_MATRIX_2 = (
    "10000000000",
    "0000000000W",
    "00000W00000",
    "0000000W000",
    "00000000w00",
    "00w00000000",
    "00000000010",
    "000w0000000",
    "0000W000000",
    "00000010000",
    "0w000000000",
)

# Induced permutations on the 33 weight-1 words, in the order
# e0, w e0, w2 e0, e1, ... (points 1-based, disjoint cycle notation).
WEIGHT1_ACTION_CYCLES_1 = (
    "(1 4 27 29 14 18)(2 5 25 30 15 16)(3 6 26 28 13 17)"
    "(7 9 8)(10 22 12 24 11 23)(19 31 20 32 21 33)"
)
WEIGHT1_ACTION_CYCLES_2 = (
    "(4 32)(5 33)(6 31)(7 17)(8 18)(9 16)(10 23)(11 24)(12 22)"
    "(13 27)(14 25)(15 26)(19 28)(20 29)(21 30)"
)

MONOMIAL_GROUP_ORDER = 54
GRAPH_GROUP_ORDER = 1024 * 54

# Published connecting set for the 1024-vertex Cayley graph on Z_2^10.
CAYLEY_CONNECTING_SET = (
    1, 2, 4, 8, 16, 32, 54, 64, 128, 149, 151, 170, 186, 216, 217,
    256, 293, 310, 329, 338, 466, 512, 597, 605, 658, 681, 745, 841,
    951, 952, 956, 966, 998,
)

# Eigenmatrix of the coset scheme of the punctured code (rows = eigenspaces
# in decreasing order of the coset-graph eigenvalue, columns = distance
# classes) and of the dual distance scheme on the 1024 dual codewords.
COSET_SCHEME_P = (
    (1, 33, 495, 495),
    (1, 9, 15, -25),
    (1, 1, -17, 15),
    (1, -7, 15, -9),
)
DISTANCE_SCHEME_P = (
    (1, 198, 495, 330),
    (1, 54, 15, -70),
    (1, 6, -17, 10),
    (1, -10, 15, -6),
)


@cache
def dodecacode() -> AdditiveCode:
    """The cyclic additive (12, 4^6, 6) code."""
    return cyclic_additive_code(Gf4Vec.parse(CYCLIC_GENERATOR_WORD))


@cache
def punctured_dodecacode() -> AdditiveCode:
    """The (11, 4^6, 5) code with the fixed 12-row generator matrix."""
    return from_generators([Gf4Vec.parse(row) for row in PUNCTURED_GENERATOR_ROWS])


@cache
def punctured_dual() -> AdditiveCode:
    return punctured_dodecacode().trace_dual()


@cache
def double_punctured(i: int, j: int) -> AdditiveCode:
    """Length-9 code from puncturing coordinates i < j of the length-11 code."""
    if not 0 <= i < j < 11:
        raise ValueError("need 0 <= i < j < 11")
    return punctured_dodecacode().puncture(j).puncture(i)


@cache
def monomial_generators() -> tuple[MonomialMap, MonomialMap]:
    """The two monomial maps generating the monomial automorphism group."""
    return (
        MonomialMap.from_matrix([Gf4Vec.parse(r) for r in MONOMIAL_MATRIX_1]),
        MonomialMap.from_matrix([Gf4Vec.parse(r) for r in MONOMIAL_MATRIX_2]),
    )
