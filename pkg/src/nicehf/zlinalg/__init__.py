"""Exact linear algebra over Z and F2, chain complexes and rational LP."""
from .chain import (ChainMap, F2ChainComplex, f2_homology, homology_class, is_acyclic,
                    is_quasi_isomorphism, iterated_cone_check, mapping_cone, total_dimension,
                    triple_complex, triple_exactness)
from .intmat import (IntegerSolution, IntegerSystem, IntMatrix, integer_kernel, invariant_factors,
                     is_smith_normal_form, smith_normal_form, solve_integer_system)

__all__ = [
    "ChainMap", "F2ChainComplex", "f2_homology", "homology_class", "is_acyclic",
    "is_quasi_isomorphism", "iterated_cone_check", "mapping_cone", "total_dimension",
    "triple_complex", "triple_exactness", "IntegerSolution", "IntegerSystem", "IntMatrix",
    "integer_kernel", "invariant_factors", "is_smith_normal_form", "smith_normal_form",
    "solve_integer_system",
]
