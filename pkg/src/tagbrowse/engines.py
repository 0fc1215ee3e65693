"""Uniform browsing-engine adapters over the two index structures.

Both engines answer the same protocol: an opaque immutable state carrying the
current resources and induced cloud, a ``select`` step, and an ``insert``
that keeps the engine aligned with its collection. The baseline recomputes
everything per step; the automaton descends memoized splits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .automaton import Frontier, NdAutomaton
from .errors import EmptyCollection, InfeasibleTag
from .inverted import InvertedIndex
from .model import Collection, TagCloud, induced_cloud


@dataclass(frozen=True)
class BaselineState:
    selected: tuple[str, ...]
    resources: frozenset[str]
    cloud: TagCloud


@dataclass(frozen=True)
class AutomatonState:
    selected: tuple[str, ...]
    frontier: Frontier
    cloud: TagCloud


class InvertedBaselineEngine:
    """Inverted index plus per-step conjunctive evaluation and cloud recount."""

    name = "inverted"

    def __init__(self, collection: Collection, index: Optional[InvertedIndex] = None):
        self.collection = collection
        self.index = index if index is not None else InvertedIndex.build(collection)

    def initial(self) -> BaselineState:
        if len(self.collection) == 0:
            raise EmptyCollection("engine has no resources")
        resources = self.index.conjunctive(())
        return BaselineState(
            (), frozenset(resources), induced_cloud(self.collection, resources)
        )

    def select(self, state: BaselineState, tag: str) -> BaselineState:
        if tag not in state.cloud:
            raise InfeasibleTag(tag)
        selected = state.selected + (tag,)
        resources = self.index.conjunctive(selected)
        return BaselineState(
            selected, frozenset(resources), induced_cloud(self.collection, resources)
        )

    def resources(self, state: BaselineState) -> set[str]:
        return set(state.resources)

    def insert(
        self,
        resource_id: str,
        tags: Iterable[str],
        title: Optional[str] = None,
        uri: Optional[str] = None,
    ) -> None:
        tags = tuple(tags)
        self.collection.add_resource(resource_id, tags, title=title, uri=uri)
        self.index.insert(resource_id, tags)


class AutomatonEngine:
    """Split-tree automaton with memoized narrowing.

    Over an empty collection the automaton itself is deferred until the first
    insert, so benchmark runs can grow an engine from nothing.
    """

    name = "automaton"

    def __init__(self, collection: Collection, automaton: Optional[NdAutomaton] = None):
        self.collection = collection
        if automaton is not None:
            self.automaton = automaton
        elif len(collection) > 0:
            self.automaton = NdAutomaton.from_collection(collection)
        else:
            self.automaton = None

    def initial(self) -> AutomatonState:
        if len(self.collection) == 0 or self.automaton is None:
            raise EmptyCollection("engine has no resources")
        frontier = self.automaton.initial_frontier()
        return AutomatonState((), frontier, self.automaton.cloud(frontier))

    def select(self, state: AutomatonState, tag: str) -> AutomatonState:
        if tag not in state.cloud:
            raise InfeasibleTag(tag)
        frontier = self.automaton.select(state.frontier, tag)
        return AutomatonState(
            state.selected + (tag,), frontier, self.automaton.cloud(frontier)
        )

    def resources(self, state: AutomatonState) -> set[str]:
        return self.automaton.members(state.frontier)

    def insert(
        self,
        resource_id: str,
        tags: Iterable[str],
        title: Optional[str] = None,
        uri: Optional[str] = None,
    ) -> None:
        tags = tuple(tags)
        self.collection.add_resource(resource_id, tags, title=title, uri=uri)
        if self.automaton is None:
            self.automaton = NdAutomaton.from_collection(self.collection)
        else:
            self.automaton.insert(resource_id, tags)
        self.automaton.revision = self.collection.revision

    def remove(self, resource_id: str) -> None:
        if self.automaton is None:
            raise EmptyCollection("engine has no resources")
        self.automaton.remove(resource_id)
        self.collection.remove_resource(resource_id)
        self.automaton.revision = self.collection.revision
