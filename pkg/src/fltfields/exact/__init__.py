"""Exact integer / rational / polynomial / lattice arithmetic layer."""

from .integers import (
    factorint,
    is_prime,
    is_square,
    iroot,
    next_prime,
    primes_up_to,
    squarefree_part as squarefree_part_int,
)
from .lattice import enumerate_short_vectors, lll_gram, short_vectors
from .matrix import (
    IntegerMatrix,
    det_int,
    hnf,
    hnf_with_transform,
    snf_invariants,
    snf_with_transforms,
)
from .modp import factor_mod as _factor_mod_raw
from .poly import (
    BigIntPoly,
    X,
    factor_z,
    is_irreducible_z,
    is_squarefree,
    poly_discriminant,
    poly_gcd,
    poly_to_string,
    resultant,
    squarefree_part,
)
from .rationals import QQ, RationalInterval
from .roots import (
    count_real_roots,
    isolate_real_roots,
    refine_root,
    sign_of_value,
)

from ..errors import DomainError


def factor_mod_p(f: BigIntPoly, p: int) -> list[tuple[BigIntPoly, int]]:
    """Factor f mod p into monic irreducibles with multiplicities.

    Deterministic: the equal-degree splitting is seeded from the input, and
    factors are sorted by (degree, coefficient vector).
    """
    pairs = _factor_mod_raw(f.coeffs, p)
    return [(BigIntPoly(g), m) for g, m in pairs]
