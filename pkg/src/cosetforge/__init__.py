"""cosetforge: exact-arithmetic certification of additive quaternary codes,
their coset graphs, and the associated association schemes."""

from .gf4 import BitVec, Gf4Vec, gf4_mul, hamming_distance, hamming_weight, star_product, trace, trace_ip
from .codes import (
    AdditiveCode,
    MonomialMap,
    WeightDistribution,
    cyclic_additive_code,
    from_generators,
)

__version__ = "0.1.0"
