"""Sylowizers, permutability and p-nilpotency criteria for finite permutation groups."""

from .catalog import GroupSpec, builtin, default_corpus, direct_product, load_specs, save_specs
from .charsub import (
    PrimeSet, is_nilpotent, is_p_nilpotent, o_pi, o_upper_p, sylow_subgroups,
)
from .criteria import (
    CriterionParams, CriterionReport, Mode, Theorem, check_equivalence,
)
from .lattice import (
    Subgroup, all_subgroups, derived_subgroup, frattini_subgroup, is_subnormal,
    minimal_normal_subgroups, normal_subgroups_of, normalizer,
)
from .lemmas import Lemma, PropertyReport, verify_lemma
from .perm import Group, Permutation, compose, element_order, generate_group, inverse, is_member
from .quotient import QuotientMap, preimage_subgroup, project_subgroup, quotient
from .sylowizer import (
    CompleteSylowSet, all_complete_sets, canonical_complete_set, is_s_permutable,
    is_z_permutable, p_sylowizers, product_is_subgroup,
)

__version__ = "0.1.0"
