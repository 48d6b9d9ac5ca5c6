"""Verification toolkit for polyhedral (3-connected planar) graphs:
Hamiltonicity with witnesses, fixed-minor containment with certificates,
Herschel-family constructors, and isomorph-free enumeration."""

from .catalog import FamilySpec, family_member, fixture, herschel, pattern
from .generation import enumerate_polyhedra, expansions, split_vertex
from .graphs import (
    Bipartition,
    CanonicalForm,
    Graph,
    GraphFormatError,
    canonical_form,
    contract_edge,
    is_bipartite,
    parse_graph6,
    to_graph6,
)
from .hamilton import (
    HamiltonVerdict,
    find_hamilton_cycle,
    separator_witness,
    verify_cycle,
)
from .minors import (
    MinorModel,
    brute_force_has_minor,
    find_minor_model,
    find_rooted_k22,
    find_spanning_subgraph,
    verify_minor_model,
)
from .records import CampaignReport, PropertyRecord
from .structure import (
    CutWitness,
    is_internally_4_connected,
    is_planar,
    is_polyhedral,
    vertex_connectivity,
)

__version__ = "0.1.0"

__all__ = [
    "Bipartition",
    "CampaignReport",
    "CanonicalForm",
    "CutWitness",
    "FamilySpec",
    "Graph",
    "GraphFormatError",
    "HamiltonVerdict",
    "MinorModel",
    "PropertyRecord",
    "brute_force_has_minor",
    "canonical_form",
    "contract_edge",
    "enumerate_polyhedra",
    "expansions",
    "family_member",
    "find_hamilton_cycle",
    "find_minor_model",
    "find_rooted_k22",
    "find_spanning_subgraph",
    "fixture",
    "herschel",
    "is_bipartite",
    "is_internally_4_connected",
    "is_planar",
    "is_polyhedral",
    "parse_graph6",
    "pattern",
    "separator_witness",
    "split_vertex",
    "to_graph6",
    "verify_cycle",
    "verify_minor_model",
    "vertex_connectivity",
]
