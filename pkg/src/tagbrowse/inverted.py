"""One-level inverted index and conjunctive-query baseline.

Postings map each tag to its extent as a sorted array of dense insertion
ordinals, so intersections can run smallest-extent-first with galloping
search. This engine pays the full per-step price of multilevel browsing:
every step re-evaluates the conjunctive query and re-counts the induced
cloud over the filtered set.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Iterable

from .errors import DuplicateResource
from .model import Collection, TagCloud, induced_cloud, normalize_tags


def _gallop_intersect(small: list[int], large: list[int]) -> list[int]:
    """Intersect two sorted int lists, probing the larger one by doubling."""
    out: list[int] = []
    lo = 0
    hi = len(large)
    for x in small:
        # Exponential probe from lo, then binary search the bracketed window.
        step = 1
        probe = lo
        while probe < hi and large[probe] < x:
            probe = lo + step
            step <<= 1
        pos = bisect_left(large, x, lo, min(probe + 1, hi))
        if pos < hi and large[pos] == x:
            out.append(x)
            lo = pos + 1
        else:
            lo = pos
        if lo >= hi:
            break
    return out


class InvertedIndex:
    """Tag -> extent index over a collection snapshot, insertable in place."""

    def __init__(self) -> None:
        self._postings: dict[str, list[int]] = {}
        self._ordinal: dict[str, int] = {}
        self._ids: list[str] = []

    @classmethod
    def build(cls, collection: Collection) -> "InvertedIndex":
        ix = cls()
        for rid, tags in collection.annotations().items():
            ix.insert(rid, tags)
        return ix

    @property
    def doc_count(self) -> int:
        return len(self._ids)

    def tags(self) -> list[str]:
        return list(self._postings)

    def insert(self, resource_id: str, tags: Iterable[str]) -> None:
        """Append a new resource; each posting list stays sorted because
        ordinals are handed out in insertion order."""
        if resource_id in self._ordinal:
            raise DuplicateResource(resource_id)
        ordinal = len(self._ids)
        self._ordinal[resource_id] = ordinal
        self._ids.append(resource_id)
        for tag in normalize_tags(tags):
            self._postings.setdefault(tag, []).append(ordinal)

    def extent(self, tag: str) -> list[str]:
        """Resources carrying ``tag``, in insertion order."""
        return [self._ids[i] for i in self._postings.get(tag, [])]

    def conjunctive(self, tags: Iterable[str]) -> set[str]:
        """Resources carrying every tag; the empty query selects everything.

        Unknown tags simply yield the empty set. Evaluation intersects the
        smallest extent first.
        """
        ordered = sorted(
            (self._postings.get(t, []) for t in set(tags)), key=len
        )
        if not ordered:
            return set(self._ids)
        result = ordered[0]
        for postings in ordered[1:]:
            if not result:
                break
            result = _gallop_intersect(result, postings)
        return {self._ids[i] for i in result}


def browse_step(
    index: InvertedIndex, selected: Iterable[str], collection: Collection
) -> tuple[set[str], TagCloud]:
    """One interaction state of the baseline: filter, then re-count the cloud.

    Raises EmptyScope when the selection filters down to nothing.
    """
    resources = index.conjunctive(selected)
    return resources, induced_cloud(collection, resources)
