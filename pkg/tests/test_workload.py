from __future__ import annotations

import pytest

from tagbrowse.errors import InvalidSpec
from tagbrowse.workload import (
    Op,
    SyntheticSource,
    WorkloadSpec,
    generate_workload,
    workload_from_document,
)


def rounds_of(ops: list[Op]) -> list[tuple[int, int, int]]:
    """Split an op stream into (inserts, browses, reconfigs) per round."""
    rounds = []
    i = 0
    while i < len(ops):
        inserts = 0
        while i < len(ops) and ops[i].kind == "insert":
            inserts += 1
            i += 1
        browses = reconfigs = 0
        while i < len(ops) and ops[i].kind != "insert":
            if ops[i].kind == "browse":
                browses += 1
            else:
                reconfigs += 1
            i += 1
        rounds.append((inserts, browses, reconfigs))
    return rounds


class TestGenerate:
    def test_default_rounds_for_300_resources(self):
        spec = WorkloadSpec(source=SyntheticSource(resources=300), seed=42)
        workload = generate_workload(spec)
        assert rounds_of(workload.ops) == [
            (100, 10, 1),
            (100, 20, 2),
            (100, 30, 3),
        ]

    def test_last_round_takes_remainder(self):
        spec = WorkloadSpec(source=SyntheticSource(resources=250), seed=1)
        assert rounds_of(generate_workload(spec).ops) == [
            (100, 10, 1),
            (100, 20, 2),
            (50, 25, 2),
        ]

    def test_zero_factors_mean_pure_insertion(self):
        spec = WorkloadSpec(
            source=SyntheticSource(resources=150),
            browse_factor=0.0,
            reconfig_factor=0.0,
        )
        ops = generate_workload(spec).ops
        assert [op.kind for op in ops] == ["insert"] * 150

    def test_same_seed_reproduces_sequence(self):
        spec = WorkloadSpec(source=SyntheticSource(resources=120), seed=7)
        assert generate_workload(spec).ops == generate_workload(spec).ops

    def test_different_seed_changes_sequence(self):
        a = WorkloadSpec(source=SyntheticSource(resources=120), seed=7)
        b = WorkloadSpec(source=SyntheticSource(resources=120), seed=8)
        assert generate_workload(a).ops != generate_workload(b).ops

    def test_zero_resources_zero_ops(self):
        spec = WorkloadSpec(source=SyntheticSource(resources=0))
        assert generate_workload(spec).ops == []

    def test_file_source_inserts_in_document_order(self, fig1_path):
        spec = WorkloadSpec(source=fig1_path, insertion_round_size=2)
        inserts = [op for op in generate_workload(spec).ops if op.kind == "insert"]
        assert [op.resource_id for op in inserts] == [f"R{i}" for i in range(1, 7)]
        assert inserts[0].tags == ("Cantabrian", "Cave-Painting", "Prehistoric")


class TestSynthetic:
    def test_tag_counts_within_bounds(self):
        src = SyntheticSource(resources=200, vocab=50, tags_min=2, tags_max=6)
        workload = generate_workload(WorkloadSpec(source=src, browse_factor=0))
        for op in workload.ops:
            if op.kind != "insert":
                continue
            assert 2 <= len(op.tags) <= 6
            assert len(set(op.tags)) == len(op.tags)

    def test_zipf_head_is_more_popular_than_tail(self):
        src = SyntheticSource(resources=800, vocab=100, zipf_exponent=1.0)
        workload = generate_workload(WorkloadSpec(source=src, browse_factor=0))
        counts = {"tag0000": 0, "tag0099": 0}
        for op in workload.ops:
            for t in counts:
                if t in op.tags:
                    counts[t] += 1
        assert counts["tag0000"] > counts["tag0099"] * 2

    def test_category_tree_generated(self):
        src = SyntheticSource(resources=10, vocab=20, categories=5)
        workload = generate_workload(WorkloadSpec(source=src))
        names = [n.name for n in workload.categories.nodes()]
        assert names[0] == "taxonomy"
        assert len(names) == 6

    def test_categories_can_be_disabled(self):
        src = SyntheticSource(resources=10, categories=0)
        assert generate_workload(WorkloadSpec(source=src)).categories.root is None


class TestValidation:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"insertion_round_size": 0},
            {"browse_factor": -0.1},
            {"reconfig_factor": -1.0},
        ],
    )
    def test_bad_spec_fields(self, kwargs):
        spec = WorkloadSpec(source=SyntheticSource(resources=10), **kwargs)
        with pytest.raises(InvalidSpec):
            spec.validate()

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"resources": -1},
            {"resources": 10, "vocab": 0},
            {"resources": 10, "tags_min": 5, "tags_max": 2},
            {"resources": 10, "zipf_exponent": -0.5},
        ],
    )
    def test_bad_synthetic_fields(self, kwargs):
        spec = WorkloadSpec(source=SyntheticSource(**kwargs))
        with pytest.raises(InvalidSpec):
            spec.validate()


class TestDocumentEnvelope:
    def test_synthetic_block(self):
        doc = {
            "format_version": 1,
            "resources": [],
            "workload": {
                "seed": 5,
                "browse_factor": 0.2,
                "synthetic": {"resources": 40, "vocab": 9},
            },
        }
        spec = workload_from_document(doc)
        assert spec.seed == 5
        assert spec.browse_factor == 0.2
        assert spec.insertion_round_size == 100
        assert spec.source == SyntheticSource(resources=40, vocab=9)

    def test_file_backed_block_uses_path(self, fig1_path):
        spec = workload_from_document({"workload": {"seed": 2}}, fig1_path)
        assert spec.source == fig1_path
        assert spec.seed == 2

    def test_missing_workload_block_gives_defaults(self, fig1_path):
        spec = workload_from_document({}, fig1_path)
        assert spec.insertion_round_size == 100
        assert spec.browse_factor == 0.1
        assert spec.reconfig_factor == 0.01

    def test_unknown_synthetic_field_rejected(self):
        doc = {"workload": {"synthetic": {"resources": 5, "bogus": 1}}}
        with pytest.raises(InvalidSpec):
            workload_from_document(doc)

    def test_synthetic_requires_resources(self):
        with pytest.raises(InvalidSpec):
            workload_from_document({"workload": {"synthetic": {}}})
