"""Multilevel tag browsing for folksonomy-annotated digital collections.

The package narrows a resource set tag-by-tag: each selection keeps only
resources carrying every selected tag, and the selectable tags are always
those that would strictly narrow the current set. Three engines answer the
same questions: an exhaustive deterministic navigation automaton (ground
truth on small inputs), a memoized non-deterministic automaton stored as a
laminar split-tree (the production engine), and an inverted-index baseline.
"""

from .errors import (
    AtRoot,
    CycleError,
    DuplicateResource,
    EmptyCollection,
    EmptyId,
    EmptyScope,
    EngineFailure,
    InfeasibleTag,
    InvalidSpec,
    ParseError,
    StaleSession,
    StateLimitExceeded,
    TagBrowseError,
    UnknownCategoryTag,
    UnknownNode,
    UnknownResource,
)
from .model import (
    CategoryNode,
    CategoryTree,
    Collection,
    TagCloud,
    cloud_entries,
    induced_cloud,
    normalize_tag,
)
from .inverted import InvertedIndex, browse_step
from .dfa import Dfa, NavState, adversarial, build_dfa
from .automaton import Frontier, NdAutomaton, SplitNode
from .engines import AutomatonEngine, InvertedBaselineEngine
from .session import Session
from .storage import (
    collection_from_document,
    document_from_collection,
    load,
    save,
)

__version__ = "0.1.0"

__all__ = [
    "AtRoot",
    "AutomatonEngine",
    "CategoryNode",
    "CategoryTree",
    "Collection",
    "CycleError",
    "Dfa",
    "DuplicateResource",
    "EmptyCollection",
    "EmptyId",
    "EmptyScope",
    "EngineFailure",
    "Frontier",
    "InfeasibleTag",
    "InvalidSpec",
    "InvertedBaselineEngine",
    "InvertedIndex",
    "NavState",
    "NdAutomaton",
    "ParseError",
    "Session",
    "SplitNode",
    "StaleSession",
    "StateLimitExceeded",
    "TagBrowseError",
    "TagCloud",
    "UnknownCategoryTag",
    "UnknownNode",
    "UnknownResource",
    "adversarial",
    "browse_step",
    "build_dfa",
    "cloud_entries",
    "collection_from_document",
    "document_from_collection",
    "induced_cloud",
    "load",
    "normalize_tag",
    "save",
]
