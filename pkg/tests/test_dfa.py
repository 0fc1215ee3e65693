from __future__ import annotations

import io
import random

import pytest

from gen import random_collection
from oracles import brute_conjunctive, brute_dfa_closure
from tagbrowse.dfa import Dfa, adversarial, build_dfa
from tagbrowse.errors import (
    EmptyCollection,
    InfeasibleTag,
    StateLimitExceeded,
)
from tagbrowse.model import Collection

# fig1 sample collection: reachable labels enumerated by the brute-force
# closure once, frozen here as a regression constant.
FIG1_STATE_COUNT = 12


class TestBuild:
    def test_fig1_structure(self, fig1):
        dfa = build_dfa(fig1)
        assert len(dfa.initial.out) == 11
        mid = dfa.select(dfa.initial, "Prehistoric")
        assert mid.resources == {"R1", "R2", "R3"}
        assert dfa.select(mid, "Cantabrian").resources == {"R1", "R3"}

    def test_fig1_state_count_frozen(self, fig1):
        dfa = build_dfa(fig1)
        assert dfa.count_states() == FIG1_STATE_COUNT
        assert len(brute_dfa_closure(fig1.annotations())) == FIG1_STATE_COUNT

    def test_singleton_collection(self):
        c = Collection()
        c.add_resource("only", ["a", "b", "c"])
        dfa = build_dfa(c)
        assert dfa.count_states() == 1
        assert dfa.initial.out == {}

    def test_empty_collection_rejected(self):
        with pytest.raises(EmptyCollection):
            build_dfa(Collection())

    def test_equal_labels_share_state(self, fig1):
        dfa = build_dfa(fig1)
        # {R2} is reachable via Prehistoric+Levant and via Levant+Prehistoric.
        a = dfa.select(dfa.select(dfa.initial, "Prehistoric"), "Levant")
        b = dfa.select(dfa.select(dfa.initial, "Levant"), "Prehistoric")
        assert a is b

    def test_closure_matches_bruteforce_on_randoms(self):
        rng = random.Random(31)
        for _ in range(25):
            c = random_collection(rng, max_resources=10, max_tags=6)
            dfa = build_dfa(c)
            assert set(dfa.states) == brute_dfa_closure(c.annotations())


class TestSelect:
    def test_from_initial(self, fig1):
        dfa = build_dfa(fig1)
        assert dfa.select(dfa.initial, "Prehistoric").resources == {"R1", "R2", "R3"}

    def test_covering_tag_infeasible(self, fig1):
        dfa = build_dfa(fig1)
        state = dfa.select(dfa.initial, "Prehistoric")
        # Prehistoric annotates all three remaining resources.
        with pytest.raises(InfeasibleTag):
            dfa.select(state, "Prehistoric")

    def test_narrow_to_single(self, fig1):
        dfa = build_dfa(fig1)
        state = dfa.select(dfa.initial, "Prehistoric")
        assert dfa.select(state, "Levant").resources == {"R2"}


class TestAdversarial:
    def test_small_counts(self):
        assert build_dfa(adversarial(2)).count_states() == 3
        assert build_dfa(adversarial(4)).count_states() == 15

    @pytest.mark.parametrize("n", range(2, 9))
    def test_exponential_formula(self, n):
        assert build_dfa(adversarial(n)).count_states() == 2**n - 1

    def test_state_limit_guard(self):
        with pytest.raises(StateLimitExceeded):
            build_dfa(adversarial(10), state_limit=500)

    def test_minimum_size(self):
        with pytest.raises(ValueError):
            adversarial(1)


class TestProperties:
    def test_path_independence_random_walks(self):
        rng = random.Random(8)
        for _ in range(10):
            c = random_collection(rng, max_resources=12, max_tags=6)
            dfa = build_dfa(c)
            for _ in range(20):
                state = dfa.initial
                chosen = []
                while state.out and rng.random() < 0.8:
                    tag = rng.choice(sorted(state.out))
                    state = dfa.select(state, tag)
                    chosen.append(tag)
                assert state.resources == frozenset(
                    brute_conjunctive(c.annotations(), chosen)
                )

    def test_monotone_narrowing(self, fig1):
        dfa = build_dfa(fig1)
        stack = [(dfa.initial, len(dfa.initial.resources) + 1)]
        seen = set()
        while stack:
            state, bound = stack.pop()
            assert len(state.resources) < bound
            if state.resources in seen:
                continue
            seen.add(state.resources)
            for child in state.out.values():
                stack.append((child, len(state.resources)))

    def test_transitions_keyed_by_induced_cloud(self, fig1):
        from tagbrowse.model import induced_cloud

        dfa = build_dfa(fig1)
        for state in dfa.states.values():
            assert set(state.out) == set(induced_cloud(fig1, state.resources))


class TestExport:
    def test_transition_lines(self, fig1):
        dfa = build_dfa(fig1)
        buf = io.StringIO()
        lines = dfa.export_transitions(buf)
        rows = buf.getvalue().splitlines()
        assert len(rows) == lines == sum(len(s.out) for s in dfa.states.values())
        assert rows[0].split("\t")[0] == "s0"
        first = rows[0].split("\t")
        assert len(first) == 3
        # initial state fans out over the sorted full cloud
        assert first[1] == "Cantabrian"
