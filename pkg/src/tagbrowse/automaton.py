"""Memoized non-deterministic navigation automaton as a lazy split-tree.

Instead of materializing one state per reachable resource set, the automaton
keeps a binary tree whose nodes partition their parents: splitting a node on
a pivot tag separates the members carrying the pivot from the rest. Node sets
therefore form a laminar family, which caps the structure at 2n - 1 nodes for
n resources. A selection activates a small frontier of nodes whose member
sets are pairwise disjoint and union to the exact answer.

Splits are created lazily, on the first selection that needs them, and kept
forever: repeating a tag sequence allocates nothing. Insertions route new
resources down the existing splits like a decision tree; removals walk the
same path and collapse any split left with an empty side.
"""

from __future__ import annotations

from typing import IO, Iterable, Optional

from .errors import (
    DuplicateResource,
    EmptyCollection,
    InfeasibleTag,
    UnknownResource,
)
from .model import Collection, TagCloud, normalize_tags


class SplitNode:
    """A laminar block of resources with per-tag member counts.

    ``summary[t]`` is the number of members carrying ``t`` (absent means
    zero). When split, ``child_in`` holds exactly the members carrying the
    pivot and ``child_out`` the rest; both are nonempty.
    """

    __slots__ = ("members", "summary", "pivot", "child_in", "child_out")

    def __init__(self, members: set[str], summary: dict[str, int]):
        self.members = members
        self.summary = summary
        self.pivot: Optional[str] = None
        self.child_in: Optional[SplitNode] = None
        self.child_out: Optional[SplitNode] = None

    @property
    def is_split(self) -> bool:
        return self.pivot is not None

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        split = f" split on {self.pivot!r}" if self.is_split else ""
        return f"SplitNode({len(self.members)} members{split})"


Frontier = list[SplitNode]


class NdAutomaton:
    """Split-tree engine over a collection snapshot.

    The automaton keeps its own copy of the annotations so routing and
    splitting never depend on the collection object staying in sync; callers
    keep the two aligned by mirroring add/remove calls. Reads of materialized
    nodes are thread-safe; selections may create splits and follow the same
    single-writer contract as insert/remove.
    """

    def __init__(self, annotations: dict[str, frozenset[str]], revision: int = 0):
        if not annotations:
            raise EmptyCollection("cannot initialize an automaton without resources")
        self._tags = dict(annotations)
        self.revision = revision
        self.nodes_created = 0
        self.root = self._make_node(set(annotations))

    @classmethod
    def from_collection(cls, collection: Collection) -> "NdAutomaton":
        return cls(collection.annotations(), revision=collection.revision)

    # -- construction helpers ---------------------------------------------

    def _make_node(self, members: set[str]) -> SplitNode:
        summary: dict[str, int] = {}
        for rid in members:
            for t in self._tags[rid]:
                summary[t] = summary.get(t, 0) + 1
        self.nodes_created += 1
        return SplitNode(members, summary)

    def _split(self, node: SplitNode, pivot: str) -> None:
        inside = {r for r in node.members if pivot in self._tags[r]}
        outside = node.members - inside
        # Callers only split on tags with 0 < summary[pivot] < |members|.
        node.child_in = self._make_node(inside)
        node.child_out = self._make_node(outside)
        node.pivot = pivot

    # -- browsing -----------------------------------------------------------

    def initial_frontier(self) -> Frontier:
        return [self.root]

    def select(self, frontier: Frontier, tag: str) -> Frontier:
        """Narrow the frontier to the members carrying ``tag``.

        Feasibility uses the induced-cloud rule over the whole frontier:
        the tag must hit some but not all of the active members. Nodes fully
        covered by the tag are kept whole; nodes untouched by it are dropped;
        partially covered nodes descend, splitting once on ``tag`` if they
        were still unsplit (memoized for every later visit).
        """
        active = sum(len(node.members) for node in frontier)
        hits = sum(node.summary.get(tag, 0) for node in frontier)
        if not 0 < hits < active:
            raise InfeasibleTag(tag)
        result: Frontier = []
        stack = list(reversed(frontier))
        while stack:
            node = stack.pop()
            count = node.summary.get(tag, 0)
            if count == 0:
                continue
            if count == len(node.members):
                result.append(node)
                continue
            if not node.is_split:
                self._split(node, tag)
                result.append(node.child_in)
                continue
            stack.append(node.child_out)
            stack.append(node.child_in)
        return result

    def cloud(self, frontier: Frontier) -> TagCloud:
        """Induced cloud of the frontier union, aggregated from summaries."""
        active = sum(len(node.members) for node in frontier)
        totals: dict[str, int] = {}
        for node in frontier:
            for t, c in node.summary.items():
                totals[t] = totals.get(t, 0) + c
        return {t: c for t, c in totals.items() if c < active}

    def members(self, frontier: Frontier) -> set[str]:
        out: set[str] = set()
        for node in frontier:
            out |= node.members
        return out

    # -- maintenance ---------------------------------------------------------

    def insert(self, resource_id: str, tags: Iterable[str]) -> None:
        """Route a new resource down the split tree.

        Every node on the root-to-leaf path absorbs the resource into its
        member set and summary; descent follows pivot membership and stops at
        the first unsplit node. Existing splits stay valid because both sides
        only ever grow.
        """
        if resource_id in self._tags:
            raise DuplicateResource(resource_id)
        tagset = normalize_tags(tags)
        self._tags[resource_id] = tagset
        node = self.root
        while True:
            node.members.add(resource_id)
            for t in tagset:
                node.summary[t] = node.summary.get(t, 0) + 1
            if not node.is_split:
                return
            node = node.child_in if node.pivot in tagset else node.child_out

    def remove(self, resource_id: str) -> None:
        """Remove a resource along its path, collapsing emptied splits.

        A split side can only empty when the removed resource was its last
        member; the parent then adopts the surviving child's split structure,
        restoring the both-sides-nonempty law.
        """
        if resource_id not in self._tags:
            raise UnknownResource(resource_id)
        tagset = self._tags.pop(resource_id)
        path: list[SplitNode] = []
        node = self.root
        while True:
            node.members.discard(resource_id)
            for t in tagset:
                left = node.summary[t] - 1
                if left:
                    node.summary[t] = left
                else:
                    del node.summary[t]
            if not node.is_split:
                break
            path.append(node)
            node = node.child_in if resource_id in node.child_in.members else node.child_out
        for parent in reversed(path):
            empty_in = not parent.child_in.members
            empty_out = not parent.child_out.members
            if not (empty_in or empty_out):
                break  # deeper collapses cannot empty this split's sides
            survivor = parent.child_out if empty_in else parent.child_in
            parent.pivot = survivor.pivot
            parent.child_in = survivor.child_in
            parent.child_out = survivor.child_out

    # -- introspection ---------------------------------------------------

    def node_count(self) -> int:
        count = 0
        stack = [self.root]
        while stack:
            node = stack.pop()
            count += 1
            if node.is_split:
                stack.append(node.child_in)
                stack.append(node.child_out)
        return count

    def export_tree(self, out: IO[str]) -> int:
        """Write one indented line per node: role, member count, pivot."""
        lines = 0
        stack: list[tuple[SplitNode, int, str]] = [(self.root, 0, "root")]
        while stack:
            node, depth, role = stack.pop()
            pivot = f" [split on {node.pivot}]" if node.is_split else ""
            out.write(f"{'  ' * depth}{role}: {len(node.members)} members{pivot}\n")
            lines += 1
            if node.is_split:
                stack.append((node.child_out, depth + 1, "out"))
                stack.append((node.child_in, depth + 1, "in"))
        return lines

    def check(self) -> None:
        """Validate the structural laws; raises AssertionError on breach.

        Checks, for every node: summaries match a recount of the member
        annotations, and split children are nonempty, disjoint, and union to
        their parent with the pivot separating them exactly.
        """
        assert self.root.members == set(self._tags), "root must cover the collection"
        stack = [self.root]
        while stack:
            node = stack.pop()
            recount: dict[str, int] = {}
            for rid in node.members:
                for t in self._tags[rid]:
                    recount[t] = recount.get(t, 0) + 1
            assert node.summary == recount, "summary out of sync with members"
            if not node.is_split:
                continue
            inside, outside = node.child_in, node.child_out
            assert inside.members and outside.members, "split side emptied"
            assert not inside.members & outside.members, "split sides overlap"
            assert inside.members | outside.members == node.members, (
                "split sides must partition the parent"
            )
            assert all(node.pivot in self._tags[r] for r in inside.members)
            assert all(node.pivot not in self._tags[r] for r in outside.members)
            stack.append(inside)
            stack.append(outside)
