"""Interactive multilevel-browsing sessions.

A session walks one engine: each selected tag narrows the resource set and
the cloud, until the cloud empties (terminal state). The breadcrumb records
the selections; back and reset restore earlier states from a snapshot stack
without recomputation. Sessions pin the collection revision at open and fail
with StaleSession once the collection has mutated underneath them.
"""

from __future__ import annotations

from .errors import AtRoot, EmptyCollection, StaleSession
from .model import TagCloud, cloud_entries


class Session:
    """One user's browsing interaction over a shared engine."""

    def __init__(self, engine):
        if len(engine.collection) == 0:
            raise EmptyCollection("cannot browse an empty collection")
        self.engine = engine
        self._pinned_revision = engine.collection.revision
        self._stack = [engine.initial()]
        self._breadcrumb: list[str] = []

    def _guard(self) -> None:
        if self.engine.collection.revision != self._pinned_revision:
            raise StaleSession("collection changed since the session opened")

    # -- observable state (reflects the last completed operation) ---------

    @property
    def breadcrumb(self) -> tuple[str, ...]:
        return tuple(self._breadcrumb)

    @property
    def depth(self) -> int:
        return len(self._breadcrumb)

    @property
    def cloud(self) -> TagCloud:
        return dict(self._stack[-1].cloud)

    @property
    def terminal(self) -> bool:
        return not self._stack[-1].cloud

    @property
    def resources(self) -> set[str]:
        return self.engine.resources(self._stack[-1])

    def cloud_entries(self) -> list[tuple[str, int]]:
        """Display order: count descending, then label."""
        return cloud_entries(self._stack[-1].cloud)

    # -- operations --------------------------------------------------------

    def select_tag(self, tag: str) -> None:
        """Narrow by ``tag``; it must belong to the current cloud."""
        self._guard()
        state = self.engine.select(self._stack[-1], tag)
        self._stack.append(state)
        self._breadcrumb.append(tag)

    def back(self) -> None:
        """Pop the last selection, restoring the prior state as stored."""
        self._guard()
        if not self._breadcrumb:
            raise AtRoot("already at the initial state")
        self._stack.pop()
        self._breadcrumb.pop()

    def reset(self) -> None:
        """Return to the initial state; a no-op at the root."""
        self._guard()
        del self._stack[1:]
        self._breadcrumb.clear()

    def visit_all(self) -> list[str]:
        """Enumerate the current resources in insertion order."""
        self._guard()
        return self.engine.collection.in_insertion_order(self.resources)
