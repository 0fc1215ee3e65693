"""Core folksonomy model: collections, annotations, category tree, tag clouds.

A collection maps resources to tag sets. The tag cloud is emergent: a tag
exists exactly while it annotates at least one resource. The induced cloud
over a scope keeps only tags that strictly narrow the scope, which is the
rule every browsing engine in this package must agree on.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional

from .errors import (
    CycleError,
    DuplicateResource,
    EmptyId,
    EmptyScope,
    UnknownNode,
    UnknownResource,
)

# A tag cloud is a plain mapping from tag label to presence count (the number
# of in-scope resources carrying the tag).
TagCloud = dict[str, int]


def normalize_tag(label: str) -> str:
    """Return the canonical form of a tag label (Unicode NFC, case kept).

    Raises ValueError for labels that are empty or whitespace-only.
    """
    if not isinstance(label, str):
        raise ValueError(f"tag label must be a string, got {type(label).__name__}")
    normalized = unicodedata.normalize("NFC", label)
    if not normalized.strip():
        raise ValueError("tag label must be nonempty")
    return normalized


def normalize_tags(labels: Iterable[str]) -> frozenset[str]:
    """Normalize a tag iterable into a set (duplicates collapse)."""
    return frozenset(normalize_tag(t) for t in labels)


def cloud_entries(cloud: Mapping[str, int]) -> list[tuple[str, int]]:
    """Cloud entries sorted for display: count descending, label ascending."""
    return sorted(cloud.items(), key=lambda item: (-item[1], item[0]))


@dataclass
class ResourceMeta:
    """Optional presentation metadata carried alongside an annotation."""

    title: Optional[str] = None
    uri: Optional[str] = None


class CategoryNode:
    """A named grouping of tags inside the category tree."""

    __slots__ = ("name", "tags", "children")

    def __init__(self, name: str, tags: Iterable[str] = (), children: Optional[list["CategoryNode"]] = None):
        self.name = name
        self.tags: set[str] = set(tags)
        self.children: list[CategoryNode] = children if children is not None else []

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"CategoryNode({self.name!r}, tags={sorted(self.tags)}, children={len(self.children)})"


class CategoryTree:
    """Rooted ordered tree of category nodes.

    Purely presentational: it groups cloud tags for display and never affects
    which resources a tag selection yields. Node names are unique; a tag is
    assigned to at most one node. Tags assigned nowhere fall into an implicit
    "uncategorized" bucket when grouping.
    """

    def __init__(self, root: Optional[CategoryNode] = None):
        self.root = root
        self._validate()

    def _validate(self) -> None:
        names: set[str] = set()
        assigned: set[str] = set()
        for node in self.nodes():
            if node.name in names:
                raise ValueError(f"duplicate category name {node.name!r}")
            names.add(node.name)
            overlap = assigned & node.tags
            if overlap:
                raise ValueError(
                    f"tag {sorted(overlap)[0]!r} assigned to more than one category"
                )
            assigned |= node.tags

    def nodes(self) -> Iterator[CategoryNode]:
        """Pre-order traversal."""
        if self.root is None:
            return
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def node(self, name: str) -> CategoryNode:
        for n in self.nodes():
            if n.name == name:
                return n
        raise UnknownNode(name)

    def _parent_of(self, name: str) -> Optional[CategoryNode]:
        for n in self.nodes():
            for child in n.children:
                if child.name == name:
                    return n
        return None

    def assigned_tags(self) -> set[str]:
        out: set[str] = set()
        for n in self.nodes():
            out |= n.tags
        return out

    def is_descendant(self, name: str, ancestor: str) -> bool:
        """True if ``name`` lies strictly inside the subtree of ``ancestor``."""
        root = self.node(ancestor)
        stack = list(root.children)
        while stack:
            n = stack.pop()
            if n.name == name:
                return True
            stack.extend(n.children)
        return False

    def move(self, name: str, new_parent: str) -> None:
        """Relocate the subtree rooted at ``name`` under ``new_parent``.

        Moving a node under itself or under one of its descendants is a
        CycleError; moving the root is likewise refused (the root has no
        parent slot to detach from).
        """
        node = self.node(name)
        target = self.node(new_parent)
        if name == new_parent or self.is_descendant(new_parent, name):
            raise CycleError(name, new_parent)
        if self.root is node:
            raise CycleError(name, new_parent)
        parent = self._parent_of(name)
        assert parent is not None
        parent.children.remove(node)
        target.children.append(node)

    def grouped(self, cloud: Mapping[str, int]) -> list[tuple[str, list[tuple[str, int]]]]:
        """Group a cloud's entries by category for display.

        Returns (category name, sorted entries) pairs in pre-order, with an
        "uncategorized" bucket at the end for tags assigned to no node. Empty
        groups are omitted.
        """
        remaining = dict(cloud)
        groups: list[tuple[str, list[tuple[str, int]]]] = []
        for node in self.nodes():
            entries = {t: remaining.pop(t) for t in sorted(node.tags) if t in remaining}
            if entries:
                groups.append((node.name, cloud_entries(entries)))
        if remaining:
            groups.append(("uncategorized", cloud_entries(remaining)))
        return groups


class Collection:
    """A folksonomy-annotated collection with a change counter.

    Mutations bump ``revision``; readers that pinned an older revision can
    detect the change. Mutation is single-writer: concurrent readers are safe,
    concurrent writers must be serialized by the caller.
    """

    def __init__(self, categories: Optional[CategoryTree] = None):
        self._annotations: dict[str, frozenset[str]] = {}
        self._meta: dict[str, ResourceMeta] = {}
        self.categories = categories if categories is not None else CategoryTree()
        self.revision = 0
        self._ordinal_cache: Optional[tuple[int, dict[str, int]]] = None

    # -- reading ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self._annotations)

    def __contains__(self, resource_id: str) -> bool:
        return resource_id in self._annotations

    def resource_ids(self) -> list[str]:
        """All resource ids in insertion order."""
        return list(self._annotations)

    def annotations(self) -> dict[str, frozenset[str]]:
        """Insertion-ordered view of resource -> tag set."""
        return dict(self._annotations)

    def tags(self, resource_id: str) -> frozenset[str]:
        try:
            return self._annotations[resource_id]
        except KeyError:
            raise UnknownResource(resource_id) from None

    def meta(self, resource_id: str) -> ResourceMeta:
        if resource_id not in self._annotations:
            raise UnknownResource(resource_id)
        return self._meta.get(resource_id, ResourceMeta())

    def ordinal(self, resource_id: str) -> int:
        """Insertion rank of a resource (0-based)."""
        try:
            return self._ordinals[resource_id]
        except KeyError:
            raise UnknownResource(resource_id) from None

    @property
    def _ordinals(self) -> dict[str, int]:
        # Recomputed lazily and cached per revision; dict order is insertion
        # order so ranks survive removals of other resources.
        cached = self._ordinal_cache
        if cached is None or cached[0] != self.revision:
            ranks = {rid: i for i, rid in enumerate(self._annotations)}
            self._ordinal_cache = (self.revision, ranks)
            return ranks
        return cached[1]

    def in_insertion_order(self, resource_ids: Iterable[str]) -> list[str]:
        ranks = self._ordinals
        return sorted(resource_ids, key=ranks.__getitem__)

    def cloud(self) -> TagCloud:
        """The full emergent tag cloud: every tag with its presence count."""
        counts: TagCloud = {}
        for tags in self._annotations.values():
            for t in tags:
                counts[t] = counts.get(t, 0) + 1
        return counts

    def extent(self, tag: str) -> set[str]:
        """Resources annotated with ``tag`` (computed by scan)."""
        return {rid for rid, tags in self._annotations.items() if tag in tags}

    # -- mutation --------------------------------------------------------

    def add_resource(
        self,
        resource_id: str,
        tags: Iterable[str] = (),
        title: Optional[str] = None,
        uri: Optional[str] = None,
    ) -> None:
        if not isinstance(resource_id, str) or not resource_id.strip():
            raise EmptyId("resource id must be a nonempty string")
        if resource_id in self._annotations:
            raise DuplicateResource(resource_id)
        self._annotations[resource_id] = normalize_tags(tags)
        if title is not None or uri is not None:
            self._meta[resource_id] = ResourceMeta(title=title, uri=uri)
        self.revision += 1

    def remove_resource(self, resource_id: str) -> None:
        if resource_id not in self._annotations:
            raise UnknownResource(resource_id)
        del self._annotations[resource_id]
        self._meta.pop(resource_id, None)
        self.revision += 1

    def move_category(self, name: str, new_parent: str) -> None:
        """Relocate a category subtree. Never changes browsing semantics."""
        self.categories.move(name, new_parent)
        self.revision += 1


def induced_cloud(collection: Collection, scope: Iterable[str]) -> TagCloud:
    """Tag cloud induced by a resource scope.

    Contains exactly the tags annotating some but not all of the scope, with
    their in-scope presence counts: selecting any returned tag strictly
    narrows the scope. Pure function of the annotations.
    """
    members = set(scope)
    if not members:
        raise EmptyScope("cannot induce a cloud over an empty scope")
    counts: TagCloud = {}
    for rid in members:
        for t in collection.tags(rid):
            counts[t] = counts.get(t, 0) + 1
    size = len(members)
    return {t: c for t, c in counts.items() if c < size}
