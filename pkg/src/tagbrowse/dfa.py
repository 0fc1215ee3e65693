"""Explicit deterministic navigation automaton.

States are labelled by resource sets and transitions by tags; every state's
outgoing tags are exactly the induced cloud of its label. The construction is
exhaustive and can reach 2^n - 1 states, so it is guarded by a state budget
and used as ground truth on small collections only.
"""

from __future__ import annotations

from collections import deque
from typing import IO, Iterable, Optional

from .errors import EmptyCollection, InfeasibleTag, StateLimitExceeded
from .model import Collection

DEFAULT_STATE_LIMIT = 100_000


class NavState:
    """One interaction state: a resource-set label plus tag transitions."""

    __slots__ = ("resources", "out", "sid")

    def __init__(self, resources: frozenset[str], sid: int):
        self.resources = resources
        self.out: dict[str, NavState] = {}
        self.sid = sid

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"NavState(s{self.sid}, |R|={len(self.resources)}, fanout={len(self.out)})"


class Dfa:
    """Deterministic navigation automaton with hash-consed states.

    States with equal labels are the same object, so the state count matches
    the number of distinct reachable resource sets.
    """

    def __init__(self, initial: NavState, states: dict[frozenset[str], NavState]):
        self.initial = initial
        self.states = states

    def select(self, state: NavState, tag: str) -> NavState:
        try:
            return state.out[tag]
        except KeyError:
            raise InfeasibleTag(tag) from None

    def count_states(self) -> int:
        return len(self.states)

    def export_transitions(self, out: IO[str]) -> int:
        """Write one ``source TAB tag TAB target`` line per transition.

        States are named s0, s1, ... in construction (breadth-first) order,
        with s0 the initial state. Returns the number of lines written.
        """
        lines = 0
        for state in sorted(self.states.values(), key=lambda s: s.sid):
            for tag in sorted(state.out):
                out.write(f"s{state.sid}\t{tag}\ts{state.out[tag].sid}\n")
                lines += 1
        return lines


def _scoped_counts(
    label: Iterable[str], annotations: dict[str, frozenset[str]]
) -> dict[str, int]:
    counts: dict[str, int] = {}
    for rid in label:
        for t in annotations[rid]:
            counts[t] = counts.get(t, 0) + 1
    return counts


def build_dfa(
    collection: Collection, state_limit: int = DEFAULT_STATE_LIMIT
) -> Dfa:
    """Breadth-first closure of the navigation rules from the full-set state.

    Every state gets one transition per tag of its induced cloud, targeting
    the state labelled by the narrowed set. Construction aborts with
    StateLimitExceeded as soon as the store would outgrow ``state_limit``.
    """
    if len(collection) == 0:
        raise EmptyCollection("cannot build an automaton over an empty collection")
    if state_limit <= 0:
        raise ValueError("state_limit must be positive")

    annotations = collection.annotations()
    extent_sets: dict[str, set[str]] = {}
    for rid, tags in annotations.items():
        for t in tags:
            extent_sets.setdefault(t, set()).add(rid)
    extents = {t: frozenset(rs) for t, rs in extent_sets.items()}

    initial_label = frozenset(annotations)
    initial = NavState(initial_label, sid=0)
    states: dict[frozenset[str], NavState] = {initial_label: initial}
    queue: deque[NavState] = deque([initial])

    while queue:
        state = queue.popleft()
        size = len(state.resources)
        counts = _scoped_counts(state.resources, annotations)
        for tag in sorted(counts):
            if counts[tag] == size:
                continue  # annotates everything in scope: not a refinement
            child_label = state.resources & extents[tag]
            child = states.get(child_label)
            if child is None:
                if len(states) >= state_limit:
                    raise StateLimitExceeded(state_limit)
                child = NavState(child_label, sid=len(states))
                states[child_label] = child
                queue.append(child)
            state.out[tag] = child
    return Dfa(initial, states)


def adversarial(n: int) -> Collection:
    """Worst-case family: n resources, n tags, extent(t_i) = everything but r_i.

    From any state of at least two resources, selecting t_i removes exactly
    resource i, so every nonempty subset of the collection is reachable and
    the deterministic automaton has exactly 2^n - 1 states.
    """
    if n < 2:
        raise ValueError("adversarial collections need n >= 2")
    c = Collection()
    for i in range(n):
        c.add_resource(f"r{i}", [f"not-{j}" for j in range(n) if j != i])
    return c


def export_dfa(dfa: Dfa, path, header: Optional[str] = None) -> int:
    """Write the transition list to ``path``; returns the line count."""
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            fh.write(header.rstrip("\n") + "\n")
        return dfa.export_transitions(fh)
