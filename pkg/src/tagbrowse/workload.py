"""Deterministic interleaved insertion / browsing / reconfiguration workloads.

A workload is rounds of bulk insertion followed by a shuffled mix of browse
and reconfiguration operations whose counts scale with the number of
resources inserted so far. The whole sequence is a pure function of the spec
and its seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import accumulate
from pathlib import Path
from typing import Any, Optional, Union

from .errors import InvalidSpec
from .model import CategoryNode, CategoryTree, Collection
from .storage import load

DEFAULT_ROUND_SIZE = 100
DEFAULT_BROWSE_FACTOR = 0.1
DEFAULT_RECONFIG_FACTOR = 0.01


@dataclass(frozen=True)
class SyntheticSource:
    """Parameters of the seeded synthetic collection generator.

    Tag popularity is Zipf-distributed over the vocabulary; each resource
    draws a uniform number of distinct tags in [tags_min, tags_max]. A small
    random category tree over the vocabulary gives reconfiguration operations
    something to move.
    """

    resources: int
    vocab: int = 400
    tags_min: int = 2
    tags_max: int = 6
    zipf_exponent: float = 1.0
    categories: int = 12


@dataclass(frozen=True)
class WorkloadSpec:
    source: Union[SyntheticSource, str, Path]
    insertion_round_size: int = DEFAULT_ROUND_SIZE
    browse_factor: float = DEFAULT_BROWSE_FACTOR
    reconfig_factor: float = DEFAULT_RECONFIG_FACTOR
    seed: int = 0

    def validate(self) -> None:
        if self.insertion_round_size < 1:
            raise InvalidSpec("insertion_round_size must be >= 1")
        if self.browse_factor < 0 or self.reconfig_factor < 0:
            raise InvalidSpec("browse and reconfig factors must be >= 0")
        if isinstance(self.source, SyntheticSource):
            s = self.source
            if s.resources < 0:
                raise InvalidSpec("resource count must be >= 0")
            if s.vocab < 1:
                raise InvalidSpec("vocabulary size must be >= 1")
            if not 0 <= s.tags_min <= s.tags_max:
                raise InvalidSpec("need 0 <= tags_min <= tags_max")
            if s.zipf_exponent < 0:
                raise InvalidSpec("zipf exponent must be >= 0")
            if s.categories < 0:
                raise InvalidSpec("category count must be >= 0")


@dataclass(frozen=True)
class Op:
    kind: str  # "insert" | "browse" | "reconfig"
    resource_id: Optional[str] = None
    tags: tuple[str, ...] = ()


@dataclass
class Workload:
    spec: WorkloadSpec
    ops: list[Op]
    categories: CategoryTree = field(default_factory=CategoryTree)

    def counts(self) -> dict[str, int]:
        out = {"insert": 0, "browse": 0, "reconfig": 0}
        for op in self.ops:
            out[op.kind] += 1
        return out


def _clone_category(node: CategoryNode) -> CategoryNode:
    return CategoryNode(
        node.name, set(node.tags), [_clone_category(c) for c in node.children]
    )


def clone_tree(tree: CategoryTree) -> CategoryTree:
    """Deep copy so each engine run can reconfigure its own tree."""
    if tree.root is None:
        return CategoryTree()
    return CategoryTree(_clone_category(tree.root))


def _synthetic_rows(
    source: SyntheticSource, rng: random.Random
) -> list[tuple[str, tuple[str, ...]]]:
    labels = [f"tag{i:04d}" for i in range(source.vocab)]
    weights = [1.0 / (i + 1) ** source.zipf_exponent for i in range(source.vocab)]
    cum = list(accumulate(weights))
    rows = []
    for i in range(source.resources):
        k = min(rng.randint(source.tags_min, source.tags_max), source.vocab)
        chosen: set[str] = set()
        while len(chosen) < k:
            chosen.add(rng.choices(labels, cum_weights=cum, k=1)[0])
        rows.append((f"s{i:06d}", tuple(sorted(chosen))))
    return rows


def _synthetic_categories(source: SyntheticSource, rng: random.Random) -> CategoryTree:
    if source.categories <= 0:
        return CategoryTree()
    nodes = [CategoryNode("taxonomy")]
    for i in range(source.categories):
        node = CategoryNode(f"cat{i:03d}")
        rng.choice(nodes).children.append(node)
        nodes.append(node)
    # Spread most of the vocabulary over the nodes; the rest stays implicit.
    for i in range(source.vocab):
        if rng.random() < 0.8:
            rng.choice(nodes[1:]).tags.add(f"tag{i:04d}")
    return CategoryTree(nodes[0])


def generate_workload(spec: WorkloadSpec) -> Workload:
    """Expand a spec into its exact operation sequence.

    Insertions arrive in rounds of ``insertion_round_size`` (the last round
    takes whatever remains); after each round, with n resources inserted so
    far, floor(browse_factor * n) browse and floor(reconfig_factor * n)
    reconfiguration operations follow in a uniformly shuffled order.
    """
    spec.validate()
    rng = random.Random(spec.seed)
    if isinstance(spec.source, SyntheticSource):
        rows = _synthetic_rows(spec.source, rng)
        categories = _synthetic_categories(spec.source, rng)
    else:
        collection = load(spec.source)
        rows = [
            (rid, tuple(sorted(collection.tags(rid))))
            for rid in collection.resource_ids()
        ]
        categories = clone_tree(collection.categories)

    ops: list[Op] = []
    inserted = 0
    size = spec.insertion_round_size
    while inserted < len(rows):
        round_rows = rows[inserted : inserted + size]
        for rid, tags in round_rows:
            ops.append(Op("insert", rid, tags))
        inserted += len(round_rows)
        mixed = [Op("browse")] * int(spec.browse_factor * inserted)
        mixed += [Op("reconfig")] * int(spec.reconfig_factor * inserted)
        rng.shuffle(mixed)
        ops.extend(mixed)
    return Workload(spec=spec, ops=ops, categories=categories)


def workload_from_document(
    doc: dict[str, Any], path: Union[str, Path, None] = None
) -> WorkloadSpec:
    """Build a spec from a collection document's ``workload`` object.

    When the document carries a ``synthetic`` block the collection file is
    only a parameter container; otherwise the document itself (``path``) is
    the insertion source.
    """
    block = doc.get("workload") or {}
    if not isinstance(block, dict):
        raise InvalidSpec("workload must be an object")
    if "synthetic" in block:
        raw = block["synthetic"]
        if not isinstance(raw, dict):
            raise InvalidSpec("workload.synthetic must be an object")
        known = {f.name for f in SyntheticSource.__dataclass_fields__.values()}
        unknown = set(raw) - known
        if unknown:
            raise InvalidSpec(f"unknown synthetic field {sorted(unknown)[0]!r}")
        if "resources" not in raw:
            raise InvalidSpec("workload.synthetic.resources is required")
        source: Union[SyntheticSource, str, Path] = SyntheticSource(**raw)
    else:
        if path is None:
            raise InvalidSpec("file-backed workload needs the document path")
        source = Path(path)
    spec = WorkloadSpec(
        source=source,
        insertion_round_size=block.get("insertion_round_size", DEFAULT_ROUND_SIZE),
        browse_factor=block.get("browse_factor", DEFAULT_BROWSE_FACTOR),
        reconfig_factor=block.get("reconfig_factor", DEFAULT_RECONFIG_FACTOR),
        seed=block.get("seed", 0),
    )
    spec.validate()
    return spec
