"""Instance transformations with witness mappers in both directions."""

from .amplify import amplify_pointvalues, amplify_with_generator, junta_hardness_instance
from .clique import CliqueGadgetLayout, assemble_clique_solution, clique_to_vectorsum, extract_clique
from .evenset import EvenSetConfig, EvenSetLayout, assemble_evenset_witness, vectorsum_to_evenset
from .fooling import evenset_to_fooling_points, fooling_points_with_generator, viola_shift
from .mdc import MdcParams, mdc_tensor, mdc_to_learning, mdc_walk_amplify, walk_avoidance_bound

__all__ = [
    "CliqueGadgetLayout",
    "EvenSetConfig",
    "EvenSetLayout",
    "MdcParams",
    "amplify_pointvalues",
    "amplify_with_generator",
    "assemble_clique_solution",
    "assemble_evenset_witness",
    "clique_to_vectorsum",
    "evenset_to_fooling_points",
    "extract_clique",
    "fooling_points_with_generator",
    "junta_hardness_instance",
    "mdc_tensor",
    "mdc_to_learning",
    "mdc_walk_amplify",
    "vectorsum_to_evenset",
    "viola_shift",
    "walk_avoidance_bound",
]
