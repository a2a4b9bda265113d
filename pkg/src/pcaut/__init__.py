"""Finite p-groups from power-commutator presentations and their class-preserving automorphisms."""

from .abelian import AbelianInvariants, hom_count, invariant_factors, is_homocyclic
from .autos import (
    AutomorphismGroup,
    GroupAutomorphism,
    adney_yen_check,
    all_automorphisms,
    basis_conjugating_automorphisms,
    central_automorphisms,
    class_preserving_automorphisms,
    gamma2_trivial_automorphisms,
    homc_enumerate,
    inner_automorphisms,
)
from .corpus import FAMILIES, default_corpus, get_family, run_suites
from .errors import PcautError
from .group import (
    FiniteGroup,
    SubgroupSet,
    central_product,
    direct_product,
    normal_subgroups,
    quotient_group,
)
from .lie import build_graded_lie_ring, centralizer_lemma_checks, macdonald_analysis, mod_p_algebra
from .linalg import pfaffian
from .pcp import PcPresentation, parse_presentation, presentation_from_group, realize, render
from .verdicts import (
    AnalysisReport,
    Verdict,
    analyze,
    is_camina,
    is_camina_type,
    is_isoclinic,
    satisfies_hypothesis_a,
    theorem_a_equivalence,
)

__version__ = "0.1.0"
