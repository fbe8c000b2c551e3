"""Lower central series, graded Lie algebras and coset-enumeration oracles for
right-angled Coxeter groups RC_K."""

from .scomplex import SimplicialComplex, load_complex, parse_complex
from .lcs import GradedRanks, gscox_generators, lcs_ranks, lrck_basis
from .homology import h1_rank_rk, reduced_homology, rk_homology

__all__ = [
    "SimplicialComplex", "load_complex", "parse_complex",
    "GradedRanks", "gscox_generators", "lcs_ranks", "lrck_basis",
    "h1_rank_rk", "reduced_homology", "rk_homology",
]
__version__ = "0.1.0"
