"""Seed-driven local clustering on attributed graphs."""

__version__ = "0.1.0"

from .core import ClusterResult, Preference, most_multimodal_attribute, run_loclu, verify_unimodality
from .dip import DipConfig, DipResult, dip_pvalue, dip_statistic, dip_test
from .errors import InvalidConfigError, InvalidInputError, ParseError
from .graph import EmbeddingVector, Graph, PowerIterConfig, power_iteration
from .localclust import CandidateSet, local_clustering
from .measures import attribute_unimodality, compactness, f1, graph_unimodality, nmi
from .synthgen import SyntheticInstance, SyntheticSpec, generate, variable_size_spec

__all__ = [
    "CandidateSet",
    "ClusterResult",
    "DipConfig",
    "DipResult",
    "EmbeddingVector",
    "Graph",
    "InvalidConfigError",
    "InvalidInputError",
    "ParseError",
    "PowerIterConfig",
    "Preference",
    "SyntheticInstance",
    "SyntheticSpec",
    "attribute_unimodality",
    "compactness",
    "dip_pvalue",
    "dip_statistic",
    "dip_test",
    "f1",
    "generate",
    "graph_unimodality",
    "local_clustering",
    "most_multimodal_attribute",
    "nmi",
    "power_iteration",
    "run_loclu",
    "variable_size_spec",
    "verify_unimodality",
]
