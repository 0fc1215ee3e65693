"""Benchmark runner: replay a workload against an engine and time every op.

Two modes. Timing mode runs one engine alone with a monotonic clock and no
cross-checking, producing the cumulative-time series the comparison plots
are built from. Validation mode runs both engines in lockstep over the same
operation stream and asserts after every browse that they agree exactly (and
that reconfigurations change nothing); its timings include the checking cost
and are not comparable.

Browse semantics follow the interactive model: pick a feasible tag uniformly
at random and narrow, or return to the initial state when no tag is feasible,
then visit every filtered resource. The browsing state restarts from the
initial state at the first browse after an insertion round, since insertions
invalidate a held position. Random choices depend only on the seed and on
engine-independent state, so runs over different engines see identical
operation streams.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Union

from .engines import AutomatonEngine, InvertedBaselineEngine
from .errors import EngineFailure
from .model import Collection
from .workload import Op, Workload, WorkloadSpec, clone_tree, generate_workload

ENGINE_NAMES = ("automaton", "inverted")


@dataclass(frozen=True)
class BenchRecord:
    op_index: int
    engine: str
    op_kind: str
    cumulative_seconds: float
    n_resources: int


CSV_HEADER = "op_index,engine,op_kind,cumulative_seconds,n_resources"


def emit_csv(records: Iterable[BenchRecord], path: Union[str, Path]) -> None:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            f"{r.op_index},{r.engine},{r.op_kind},{r.cumulative_seconds:.6f},{r.n_resources}"
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _make_engine(name: str, categories) -> Union[AutomatonEngine, InvertedBaselineEngine]:
    collection = Collection(categories=clone_tree(categories))
    if name == "automaton":
        return AutomatonEngine(collection)
    if name == "inverted":
        return InvertedBaselineEngine(collection)
    raise ValueError(f"unknown engine {name!r}; expected one of {ENGINE_NAMES}")


class _Cursor:
    """Persistent browsing position of one engine during a run."""

    def __init__(self, engine):
        self.engine = engine
        self.state = None
        self.dirty = True  # insertions happened since the state was computed

    def ensure_fresh(self):
        if self.dirty or self.state is None:
            self.state = self.engine.initial()
            self.dirty = False
        return self.state

    def browse(self, tag: Optional[str]):
        """Apply one browse decision: narrow on ``tag`` or reset when None."""
        if tag is None:
            self.state = self.engine.initial()
        else:
            self.state = self.engine.select(self.state, tag)
        return self.state


def _pick_reconfig(collection: Collection, rng: random.Random) -> Optional[tuple[str, str]]:
    """Choose (node, new_parent) uniformly among legal moves, if any."""
    tree = collection.categories
    if tree.root is None:
        return None
    names = sorted(n.name for n in tree.nodes())
    movable = [n for n in names if n != tree.root.name]
    if not movable:
        return None
    node = rng.choice(movable)
    legal = [
        t
        for t in names
        if t != node and not tree.is_descendant(t, node)
    ]
    if not legal:
        return None
    return node, rng.choice(legal)


def run(
    spec: WorkloadSpec,
    engine_name: str,
    workload: Optional[Workload] = None,
    engine: Optional[Union[AutomatonEngine, InvertedBaselineEngine]] = None,
) -> list[BenchRecord]:
    """Timing mode: replay the workload on one engine, recording cumulative time.

    Pass ``engine`` (over an empty collection) to inspect its structures after
    the run; otherwise a fresh one is built.
    """
    if workload is None:
        workload = generate_workload(spec)
    if engine is None:
        engine = _make_engine(engine_name, workload.categories)
    rng = random.Random(spec.seed)
    cursor = _Cursor(engine)
    records: list[BenchRecord] = []
    clock = time.perf_counter
    cumulative = 0.0

    for index, op in enumerate(workload.ops):
        if op.kind == "insert":
            start = clock()
            engine.insert(op.resource_id, op.tags)
            cumulative += clock() - start
            cursor.dirty = True
        elif op.kind == "browse":
            start = clock()
            state = cursor.ensure_fresh()
            feasible = state.cloud
            tag = rng.choice(sorted(feasible)) if feasible else None
            state = cursor.browse(tag)
            # Visit every filtered resource, in insertion order.
            engine.collection.in_insertion_order(engine.resources(state))
            cumulative += clock() - start
        elif op.kind == "reconfig":
            move = _pick_reconfig(engine.collection, rng)
            start = clock()
            if move is not None:
                engine.collection.move_category(*move)
            cumulative += clock() - start
        else:
            raise ValueError(f"unknown op kind {op.kind!r}")
        records.append(
            BenchRecord(index, engine.name, op.kind, cumulative, len(engine.collection))
        )
    return records


def run_lockstep(spec: WorkloadSpec, workload: Optional[Workload] = None) -> dict[str, list[BenchRecord]]:
    """Validation mode: both engines share one op stream and must agree.

    After every browse the two engines' resource sets and clouds are compared
    exactly; after every reconfiguration the browse state must be unchanged.
    Any disagreement raises EngineFailure. Timings include checking overhead.
    """
    if workload is None:
        workload = generate_workload(spec)
    engines = {name: _make_engine(name, workload.categories) for name in ENGINE_NAMES}
    cursors = {name: _Cursor(engines[name]) for name in ENGINE_NAMES}
    rng = random.Random(spec.seed)
    records: dict[str, list[BenchRecord]] = {name: [] for name in ENGINE_NAMES}
    cumulative = {name: 0.0 for name in ENGINE_NAMES}
    clock = time.perf_counter

    def snapshot(name: str):
        cursor = cursors[name]
        state = cursor.ensure_fresh()
        return engines[name].resources(state), dict(state.cloud)

    for index, op in enumerate(workload.ops):
        if op.kind == "insert":
            for name, engine in engines.items():
                start = clock()
                engine.insert(op.resource_id, op.tags)
                cumulative[name] += clock() - start
                cursors[name].dirty = True
        elif op.kind == "browse":
            views = {}
            for name in ENGINE_NAMES:
                start = clock()
                state = cursors[name].ensure_fresh()
                cumulative[name] += clock() - start
                views[name] = state
            clouds = [dict(v.cloud) for v in views.values()]
            if clouds[0] != clouds[1]:
                raise EngineFailure(f"cloud mismatch before op {index}")
            feasible = clouds[0]
            tag = rng.choice(sorted(feasible)) if feasible else None
            results = {}
            for name in ENGINE_NAMES:
                start = clock()
                state = cursors[name].browse(tag)
                visited = engines[name].collection.in_insertion_order(
                    engines[name].resources(state)
                )
                cumulative[name] += clock() - start
                results[name] = (visited, dict(state.cloud))
            if results["automaton"] != results["inverted"]:
                raise EngineFailure(f"engines disagree after browse op {index}")
        elif op.kind == "reconfig":
            before = {name: snapshot(name) for name in ENGINE_NAMES}
            move = _pick_reconfig(engines["automaton"].collection, rng)
            for name, engine in engines.items():
                start = clock()
                if move is not None:
                    engine.collection.move_category(*move)
                cumulative[name] += clock() - start
            after = {name: snapshot(name) for name in ENGINE_NAMES}
            if before != after:
                raise EngineFailure(f"reconfiguration changed browse state at op {index}")
        for name, engine in engines.items():
            records[name].append(
                BenchRecord(index, name, op.kind, cumulative[name], len(engine.collection))
            )
    return records


def split_time(records: Iterable[BenchRecord], kinds: Iterable[str]) -> float:
    """Total seconds spent in the given op kinds, from one engine's series."""
    wanted = set(kinds)
    total = 0.0
    previous = 0.0
    for r in records:
        delta = r.cumulative_seconds - previous
        previous = r.cumulative_seconds
        if r.op_kind in wanted:
            total += delta
    return total
