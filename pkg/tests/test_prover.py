"""Proof replay: fully-faithfulness, generation, traces, and certificates."""

import pytest

from hpdual.chessboard import ChessboardSpec, make_spec
from hpdual.profiles import make_profile
from hpdual.prover import (
    FAILED,
    GEN_STEP1,
    ProofTrace,
    check_ff_pi_S,
    check_ff_pi_T,
    check_generation,
    check_main_theorem,
    reverify,
    sweep_main_theorem,
    zigzag_order,
)


class TestFigureParameters:
    def test_ff_pi_T_reference_board(self):
        assert check_ff_pi_T(make_spec(4, 5, 12)).success

    def test_ff_pi_T_wide_board(self):
        assert check_ff_pi_T(make_spec(6, 8, 20)).success

    def test_ff_pi_T_minimal_board_has_one_family(self):
        trace = check_ff_pi_T(make_spec(2, 2, 4))
        assert trace.success
        # single nontrivial family: the k=1 < m=1 anchor pair only
        assert len(trace.obligations) == 1

    def test_ff_pi_S_reference_board(self):
        assert check_ff_pi_S(make_spec(4, 5, 12)).success

    def test_ff_pi_S_wide_board(self):
        assert check_ff_pi_S(make_spec(6, 8, 20)).success

    def test_ff_pi_S_transposed_board(self):
        assert check_ff_pi_S(make_spec(3, 2, 6)).success

    def test_generation_reference_board(self):
        trace = check_generation(make_spec(4, 5, 12))
        assert trace.success
        again = check_generation(make_spec(4, 5, 12))
        assert len(trace.obligations) == len(again.obligations)

    def test_generation_wide_board(self):
        assert check_generation(make_spec(6, 8, 20)).success

    def test_generation_minimal_board(self):
        assert check_generation(make_spec(2, 2, 4)).success

    def test_main_theorem_reference_board(self):
        assert check_main_theorem(make_spec(4, 5, 12)).success

    def test_main_theorem_trivial_x(self):
        for l in (2, 5):
            assert check_main_theorem(make_spec(1, l, 10)).success

    def test_profiles_with_zero_blocks(self):
        spec = ChessboardSpec(
            make_profile("Gr(2,6)", 15, [0, 0, 1, 0, 0, 2]),
            make_profile("P5", 15, [0, 0, 0, 0, 0, 1]),
        )
        assert check_main_theorem(spec).success


class TestTraceMechanics:
    def test_traces_are_deterministic(self):
        a = check_main_theorem(make_spec(5, 6, 14))
        b = check_main_theorem(make_spec(5, 6, 14))
        assert a.serialize() == b.serialize()

    def test_serialization_format(self):
        trace = check_ff_pi_T(make_spec(3, 3, 8))
        lines = trace.serialize().splitlines()
        assert lines[0].startswith("# spec")
        assert lines[-1] == "# verdict: success"
        for line in lines[1:-1]:
            if not line.startswith("#"):
                assert len(line.split(" | ")) == 5

    def test_serre_coordinate_note_in_mixed_traces(self):
        trace = check_ff_pi_S(make_spec(3, 4, 9))
        assert "# note: C^L" in trace.serialize()

    def test_every_discharged_obligation_reverifies(self):
        for spec in (make_spec(4, 5, 12), make_spec(6, 4, 14)):
            trace = check_main_theorem(spec)
            assert reverify(trace)

    def test_zigzag_order_shape(self):
        order = zigzag_order(make_spec(4, 3, 10))
        assert order == [(1, 3), (1, 2), (2, 3)]

    def test_order_sensitivity(self):
        # processing a cell before the one above it leaves an underivable Hom
        spec = make_spec(4, 4, 10)
        order = zigzag_order(spec)
        idx = order.index((1, 3))
        swapped = list(order)
        swapped[idx], swapped[idx + 1] = swapped[idx + 1], swapped[idx]
        trace = check_generation(spec, step1_order=swapped)
        assert not trace.success
        assert any(
            o.status == FAILED and o.phase == GEN_STEP1 for o in trace.obligations
        )

    def test_concat_requires_same_spec(self):
        t1 = check_ff_pi_T(make_spec(3, 3, 8))
        t2 = check_ff_pi_T(make_spec(3, 4, 8))
        with pytest.raises(ValueError):
            t1.concat(t2)


class TestSweep:
    def test_small_sweep_all_green(self):
        results = sweep_main_theorem(range(2, 5), range(2, 5), 8)
        assert results
        assert all(ok for _, _, _, ok, _ in results)

    def test_sweep_covers_requested_grid(self):
        results = sweep_main_theorem([3], [4], 7)
        assert [(i, l, N) for i, l, N, _, _ in results] == [
            (3, 4, 5), (3, 4, 6), (3, 4, 7)
        ]


class TestRuleDistribution:
    def test_reference_board_rule_census(self):
        # locks the mechanization to the intended derivations: projections on
        # the T side discharge by twist gaps, the S side by Serre-chain twist
        # gaps, the elimination by the four case families
        from collections import Counter

        trace = check_main_theorem(make_spec(4, 5, 12))
        census = Counter()
        for o in trace.obligations:
            census[(o.phase, o.rule)] += 1
        assert census[("ff_pi_T", "cone[u:X:R1,t:X:R1]")] == 8
        assert census[("ff_pi_S", "cone[u:S:R1,t:S:R1]")] == 21
        # step 1: orthogonal-class rows, beta rows, mixed rows, alpha rows
        assert census[("generation_step1", "cone[u:S:T:T4,t:X:R4]")] == 3
        assert census[("generation_step1", "cone[u:S:T:T4,t:S:T:T4]")] == 11
        assert census[("generation_step1", "cone[u:S:T:T4,t:X:R1]")] == 11
        assert census[("generation_step1", "cone[u:X:R1,t:X:R1]")] == 32
        # step 2: the split-definition rows and the dual-block chain rows
        assert census[("generation_step2", "cone[u:S:T:T4,t:X:R5]")] == 3
        assert census[("generation_step2", "cone[u:X:R1,t:X:R2]")] == 14
        assert census[("generation_step2", "T:G:ambX|counit")] == 6
        assert census[("generation_final", "self-orthogonality")] == 1


class TestRandomizedZeroPatterns:
    def test_prover_and_regions_on_degenerate_profiles(self):
        import random

        from hpdual.chessboard import (
            BOX_EPRIM,
            Region,
            is_zero_box,
            mutate_region,
            pi_S_columns,
            pi_T_columns,
            staircase_E,
            staircase_pi_S,
            staircase_pi_T,
            tensor,
        )
        from hpdual.profiles import LefschetzProfile, PrimitiveBlock
        from hpdual.symbols import Side, amb, amb_l, dual_block

        X, S = Side.X, Side.S
        rng = random.Random(0xBEEF)

        def rand_profile(name, N):
            i = rng.randint(1, min(7, N - 1))
            blocks = []
            for j in range(i):
                e = rng.choice([0, 0, 1, 2, -1])
                nz = (e != 0) or (rng.random() < 0.25)
                blocks.append(PrimitiveBlock(f"b{j}", e, nz))
            if blocks[-1].is_zero_category:
                blocks[-1] = PrimitiveBlock(f"b{i - 1}", blocks[-1].euler, True)
            return LefschetzProfile(name, N, "lefschetz", tuple(blocks))

        for _ in range(40):
            N = rng.randint(4, 14)
            spec = ChessboardSpec(rand_profile("X", N), rand_profile("S", N))
            trace = check_main_theorem(spec)
            assert trace.success, (spec, trace.failed_obligations[:2])
            assert reverify(trace)
            i, l = spec.i, spec.l
            for k in range(1, i):
                a = tensor(amb(k, k, X), dual_block(k, 0, S))
                if is_zero_box(a, spec):
                    continue
                out = mutate_region(Region([a], spec), pi_T_columns(spec), spec)
                assert out.issubset(
                    Region([a], spec).union(staircase_pi_T(k, spec))
                )
            for k in range(1, l):
                a = tensor(dual_block(k, 0, X), amb_l(k, k + 1 - l, S))
                if is_zero_box(a, spec):
                    continue
                out = mutate_region(Region([a], spec), pi_S_columns(spec), spec)
                assert out.issubset(
                    Region([a], spec).union(staircase_pi_S(k, spec))
                )
            outE = mutate_region(Region([BOX_EPRIM], spec), pi_S_columns(spec), spec)
            assert outE.issubset(Region([BOX_EPRIM], spec).union(staircase_E(spec)))
