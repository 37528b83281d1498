"""Box oracle, staircase closed forms, and mutation region propagation."""

import pytest

from hpdual.chessboard import (
    BOX_DXT,
    BOX_DYS,
    BOX_EPRIM,
    ChessboardSpec,
    Region,
    hom_vanishes_box,
    hom_vanishes_box_explained,
    make_spec,
    mutate_region,
    pi_S_columns,
    pi_T_columns,
    staircase_E,
    staircase_pi_S,
    staircase_pi_T,
    tensor,
)
from hpdual.profiles import make_profile
from hpdual.symbols import Side, TriState, amb, amb_l, dual_block, full, prim

X, S = Side.X, Side.S


def cells_C(region):
    return sorted(
        (b.xfactor.index, b.sfactor.index)
        for b in region
        if b.kind == "tensor" and b.sfactor.kind == "amb"
    )


def cells_L(region):
    return sorted(
        (b.xfactor.index, b.sfactor.index)
        for b in region
        if b.kind == "tensor" and b.xfactor.kind == "amb" and b.sfactor.kind == "ambL"
    )


class TestBoxOracle:
    spec = make_spec(6, 6, 20)

    def test_column_gap_vanishing(self):
        b1 = tensor(amb(2, 2, X), amb(1, 1, S))
        b2 = tensor(amb(1, 1, X), amb(1, 1, S))
        assert hom_vanishes_box(b1, b2, self.spec) is TriState.VANISHES

    def test_row_gap_vanishing(self):
        b1 = tensor(amb(1, 1, X), amb(2, 2, S))
        b2 = tensor(amb(1, 1, X), amb(1, 1, S))
        assert hom_vanishes_box(b1, b2, self.spec) is TriState.VANISHES

    def test_self_hom_unknown(self):
        b = tensor(amb(1, 1, X), amb(1, 1, S))
        assert hom_vanishes_box(b, b, self.spec) is TriState.UNKNOWN

    def test_zero_factor_target_vanishes(self):
        spec = ChessboardSpec(
            make_profile("X0", 20, [0, 1], nonzero=[False, True]),
            make_profile("S0", 20, [1, 1]),
        )
        b1 = tensor(amb(1, 1, X), amb(1, 1, S))
        b2 = tensor(prim(0, 0, X), amb(0, 0, S))
        v, rule = hom_vanishes_box_explained(b1, b2, spec)
        assert v is TriState.VANISHES and rule == "zero"

    def test_global_template_against_intersection_categories(self):
        src = tensor(amb(2, 2, X), full(0, S))
        assert hom_vanishes_box(src, BOX_DYS, self.spec) is TriState.VANISHES
        src_s = tensor(full(0, X), amb(2, 2, S))
        assert hom_vanishes_box(src_s, BOX_DXT, self.spec) is TriState.VANISHES
        assert hom_vanishes_box(src_s, BOX_EPRIM, self.spec) is TriState.VANISHES

    def test_eprim_into_serre_columns(self):
        tgt = tensor(amb(2, 2, X), amb_l(3, 3 - 6, S))
        assert hom_vanishes_box(BOX_EPRIM, tgt, self.spec) is TriState.VANISHES

    def test_eprim_self_unknown(self):
        assert hom_vanishes_box(BOX_EPRIM, BOX_EPRIM, self.spec) is TriState.UNKNOWN

    def test_spec_mismatch_errors(self):
        bad = ChessboardSpec(
            make_profile("X", 20, [1, 1]), make_profile("S", 21, [1, 1])
        )
        with pytest.raises(ValueError):
            hom_vanishes_box(BOX_DXT, BOX_DYS, bad)


class TestStaircasePiT:
    def test_k1_empty(self):
        assert len(staircase_pi_T(1, make_spec(6, 6, 20))) == 0

    def test_k3_triangle(self):
        region = staircase_pi_T(3, make_spec(6, 6, 20))
        assert cells_C(region) == [(1, 1), (2, 1), (2, 2)]

    def test_branch_agreement_at_k_equals_l(self):
        spec = make_spec(6, 4, 20)
        k = 4  # both branch formulas apply
        low = [(a, b) for b in range(1, k) for a in range(b, k)]
        high = [(a, b) for b in range(1, 4) for a in range(k - 4 + b, k)]
        assert sorted(low) == sorted(high) == cells_C(staircase_pi_T(k, spec))

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            staircase_pi_T(6, make_spec(6, 6, 20))
        with pytest.raises(IndexError):
            staircase_pi_T(0, make_spec(6, 6, 20))

    def test_columns_stay_below_k(self):
        spec = make_spec(7, 5, 20)
        for k in range(1, 7):
            for a, b in cells_C(staircase_pi_T(k, spec)):
                assert 1 <= b <= k - 1 and a <= k - 1


class TestStaircasePiS:
    def test_k1_empty(self):
        assert len(staircase_pi_S(1, make_spec(6, 6, 20))) == 0

    def test_k3_lower_triangle(self):
        region = staircase_pi_S(3, make_spec(6, 6, 20))
        assert cells_L(region) == [(1, 1), (1, 2), (2, 2)]

    def test_branch_agreement_at_k_equals_i(self):
        spec = make_spec(4, 8, 20)
        k = 4
        low = [(a, b) for b in range(1, k) for a in range(1, b + 1)]
        high = [
            (a, b)
            for b in range(k - 4 + 1, k)
            for a in range(1, min(3, b - (k - 4)) + 1)
        ]
        assert sorted(low) == sorted(high) == cells_L(staircase_pi_S(k, spec))

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            staircase_pi_S(6, make_spec(6, 6, 20))


class TestStaircaseE:
    def test_minimal_square(self):
        region = staircase_E(make_spec(2, 2, 6))
        assert cells_L(region) == [(1, 1)]

    def test_narrow_band(self):
        region = staircase_E(make_spec(2, 4, 8))
        assert cells_L(region) == [(1, 1), (1, 2), (1, 3)]

    def test_contains_every_pi_s_staircase(self):
        for i, l in [(3, 5), (5, 3), (6, 6), (2, 9)]:
            spec = make_spec(i, l, 26)
            big = staircase_E(spec)
            for k in range(1, l):
                assert staircase_pi_S(k, spec).issubset(big)

    def test_cell_count_closed_form(self):
        spec = make_spec(6, 8, 20)
        assert len(staircase_E(spec)) == sum(min(5, b) for b in range(1, 8))


class TestMutateRegion:
    def test_empty_through_is_identity(self):
        spec = make_spec(6, 6, 20)
        r = Region([tensor(amb(1, 1, X), dual_block(1, 0, S))], spec)
        assert mutate_region(r, [], spec) == r

    def test_two_column_triangle(self):
        spec = make_spec(6, 6, 20)
        anchor = tensor(amb(3, 3, X), dual_block(3, 0, S))
        cols = [tensor(full(0, X), amb(1, 1, S)), tensor(full(0, X), amb(2, 2, S))]
        out = mutate_region(Region([anchor], spec), cols, spec)
        assert cells_C(out) == [(1, 1), (2, 1), (2, 2)]
        assert anchor in out

    def test_dual_box_gains_one_cell(self):
        spec = make_spec(6, 6, 20)
        anchor = tensor(dual_block(2, 0, X), amb_l(2, 2 + 1 - 6, S))
        out = mutate_region(Region([anchor], spec), pi_S_columns(spec), spec)
        assert cells_L(out) == [(1, 1)]
        assert anchor in out

    def test_unknown_refinement_id(self):
        spec = make_spec(4, 4, 10)
        with pytest.raises(ValueError, match="unknown template id"):
            mutate_region(Region(), pi_T_columns(spec), spec, refinement="bogus")

    def test_non_semiorthogonal_through_rejected(self):
        spec = make_spec(4, 4, 10)
        cols = list(reversed(pi_T_columns(spec)))
        with pytest.raises(ValueError, match="semiorthogonal"):
            mutate_region(Region(), cols, spec)

    def test_primitive_refinement_is_sound_but_coarser(self):
        # the static primitive refinement over-approximates in block pieces:
        # every staircase cell is covered, possibly along with extra rows
        spec = make_spec(4, 4, 12)
        anchor = tensor(amb(2, 2, X), dual_block(2, 0, S))
        out = mutate_region(
            Region([anchor], spec), pi_T_columns(spec), spec, refinement="primitive"
        )
        covered = {
            (b.xfactor.twist, b.sfactor.index)
            for b in out
            if b.kind == "tensor" and b.xfactor.kind == "prim"
        }
        want = {
            (b.xfactor.index, b.sfactor.index) for b in staircase_pi_T(2, spec)
        }
        assert want <= covered

    def test_matches_pi_T_staircase(self):
        for i, l in [(4, 5), (6, 8), (8, 3), (5, 5)]:
            spec = make_spec(i, l, 26)
            for k in range(1, i):
                anchor = tensor(amb(k, k, X), dual_block(k, 0, S))
                out = mutate_region(Region([anchor], spec), pi_T_columns(spec), spec)
                want = Region([anchor], spec).union(staircase_pi_T(k, spec))
                assert out == want, (i, l, k)

    def test_matches_pi_S_staircase(self):
        for i, l in [(4, 5), (6, 8), (8, 3), (5, 5)]:
            spec = make_spec(i, l, 26)
            for k in range(1, l):
                anchor = tensor(dual_block(k, 0, X), amb_l(k, k + 1 - l, S))
                out = mutate_region(Region([anchor], spec), pi_S_columns(spec), spec)
                want = Region([anchor], spec).union(staircase_pi_S(k, spec))
                assert out == want, (i, l, k)

    def test_matches_E_staircase(self):
        for i, l in [(4, 5), (6, 8), (8, 3), (2, 2)]:
            spec = make_spec(i, l, 26)
            out = mutate_region(Region([BOX_EPRIM], spec), pi_S_columns(spec), spec)
            assert out == Region([BOX_EPRIM], spec).union(staircase_E(spec))


class TestDisjointness:
    def test_later_dual_boxes_orthogonal_to_staircase(self):
        # every staircase box sits in columns strictly below k, so all the
        # deeper twisted boxes have derivably-zero Homs to it
        spec = make_spec(7, 7, 22)
        for k in range(1, 7):
            for m in range(k, 7):
                src = tensor(amb(m, m, X), dual_block(m, 0, S))
                for box in staircase_pi_T(k, spec):
                    assert hom_vanishes_box(src, box, spec) is TriState.VANISHES
