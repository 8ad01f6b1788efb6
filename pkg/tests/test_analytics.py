import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcflip.analytics import (
    SweepResult,
    check_no_total_control,
    default_error_grid,
    ideal_case_table,
    justice_error,
    nested_cheat_prob,
    nested_cheat_prob_noisy,
    scenario_analytic,
    sweep_alice,
)
from qcflip.elements import ElementProfile, NoiseSetting, ideal_profile
from qcflip.engine import FrameworkSpec

prob_lists = st.lists(st.floats(0.0, 1.0), min_size=1, max_size=10)
secure_lists = st.lists(
    st.floats(0.5, 1.0, exclude_min=True, exclude_max=True), min_size=1, max_size=10
)


class TestNestedCheatProb:
    def test_two_ideal_levels(self):
        assert nested_cheat_prob([0.5, 0.5]) == 0.75

    @given(st.floats(0.0, 1.0))
    def test_single_level_is_identity(self, x):
        assert nested_cheat_prob([x]) == x

    def test_strong_first_level_with_perfect_backup(self):
        assert nested_cheat_prob([0.9, 0.5]) == pytest.approx(0.95, abs=1e-12)

    def test_term_by_term_expansion(self):
        # Oracle: explicit sum 0.8 + 0.2*0.8 + 0.2*0.2*0.8.
        expansion = 0.8 + (1 - 0.8) * 0.8 + (1 - 0.8) * (1 - 0.8) * 0.8
        assert nested_cheat_prob([0.8, 0.8, 0.8]) == pytest.approx(expansion, abs=1e-15)
        assert nested_cheat_prob([0.8, 0.8, 0.8]) == pytest.approx(0.992, abs=1e-12)

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="non-empty"):
            nested_cheat_prob([])

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError, match="outside"):
            nested_cheat_prob([0.5, 1.2])

    @given(prob_lists)
    def test_complement_identity(self, probs):
        survival = math.prod(1.0 - p for p in probs)
        assert abs((1.0 - nested_cheat_prob(probs)) - survival) <= 1e-12

    @given(
        st.lists(st.floats(0.0, 0.7), min_size=1, max_size=6),
        st.floats(0.01, 1.0),
    )
    def test_strictly_monotone_in_depth(self, probs, extra):
        # Appending a winnable level strictly helps while the stack can fail;
        # bounded entries keep the increment representable in floats.
        assert nested_cheat_prob(probs + [extra]) > nested_cheat_prob(probs)


class TestNoTotalControl:
    def test_high_but_secure_levels(self):
        assert check_no_total_control([0.99] * 6)

    def test_near_ideal_levels(self):
        values = [0.500001] * 6
        assert check_no_total_control(values)
        assert nested_cheat_prob(values) == pytest.approx(0.9844, abs=1e-3)

    @given(secure_lists)
    def test_holds_for_all_secure_stacks(self, probs):
        assert check_no_total_control(probs)

    def test_boundary_entries_rejected(self):
        with pytest.raises(ValueError, match="open interval"):
            check_no_total_control([0.5])
        with pytest.raises(ValueError, match="open interval"):
            check_no_total_control([0.7, 1.0])

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="non-empty"):
            check_no_total_control([])


class TestJusticeError:
    def test_single_two_basis_level_at_worst_noise(self):
        assert justice_error([0.5], 0.5) == 0.25

    def test_two_levels_at_worst_noise(self):
        assert justice_error([0.5, 0.5], 0.5) == 0.0625

    def test_noiseless_channel_never_fails(self):
        assert justice_error([0.5, 0.0, 0.3], 0.0) == 0.0

    @given(
        st.lists(st.floats(0.0, 1.0), min_size=1, max_size=6),
        st.floats(0.0, 0.5),
        st.floats(0.0, 1.0),
    )
    def test_appending_a_level_multiplies(self, p_stars, p_e, extra):
        grown = justice_error(p_stars + [extra], p_e)
        expected = justice_error(p_stars, p_e) * (1.0 - extra) * p_e
        assert abs(grown - expected) <= 1e-12

    def test_range_validation(self):
        with pytest.raises(ValueError, match="p_e"):
            justice_error([0.5], 0.6)
        with pytest.raises(ValueError, match="non-empty"):
            justice_error([], 0.1)


class TestNoisyNestedProb:
    def test_ideal_stack_is_geometric(self):
        for depth in range(1, 7):
            spec = FrameworkSpec(
                elements=(ideal_profile(),) * depth, noise=NoiseSetting(0.37)
            )
            value = nested_cheat_prob_noisy(spec, "alice")
            assert abs(value - (1.0 - 0.5**depth)) <= 1e-12

    def test_noiseless_limit_uses_raw_profile(self):
        profile = ElementProfile("x", p=0.8, q=0.7, p_star=0.5)
        spec = FrameworkSpec(elements=(profile,) * 2, noise=NoiseSetting(0.0))
        assert nested_cheat_prob_noisy(spec, "alice") == pytest.approx(0.96, abs=1e-12)
        assert nested_cheat_prob_noisy(spec, "bob") == pytest.approx(
            nested_cheat_prob([0.7, 0.7]), abs=1e-12
        )

    def test_unknown_party_rejected(self):
        spec = FrameworkSpec(elements=(ideal_profile(),), noise=NoiseSetting(0.0))
        with pytest.raises(ValueError, match="party"):
            nested_cheat_prob_noisy(spec, "eve")


class TestScenarioAnalytic:
    def test_mapping(self):
        profile = ElementProfile("x", p=0.8, q=0.7, p_star=0.5)
        spec = FrameworkSpec(elements=(profile,) * 2, noise=NoiseSetting(0.5))
        assert scenario_analytic(spec, "honest_failure") == 0.0625
        assert scenario_analytic(spec, "honest_coin0") == 0.5
        assert scenario_analytic(spec, "cheat_alice") == nested_cheat_prob_noisy(
            spec, "alice"
        )
        with pytest.raises(ValueError, match="scenario"):
            scenario_analytic(spec, "nope")


class TestIdealCaseTable:
    def test_exact_rows(self):
        rows = ideal_case_table()
        assert [r.depth for r in rows] == [2, 3, 4, 5, 6]
        for row in rows:
            assert row.element_prob == 0.5
            assert abs(row.cheat_prob - (1.0 - 0.5**row.depth)) <= 1e-12
            assert row.bias == pytest.approx(row.cheat_prob - 0.5, abs=1e-15)

    def test_values_match_four_decimal_roundings(self):
        cheats = [round(r.cheat_prob, 4) for r in ideal_case_table()]
        assert cheats == [0.75, 0.875, 0.9375, 0.9688, 0.9844]


class TestSweep:
    def test_depth_curves_endpoints(self):
        base = ElementProfile("x", p=0.8, q=0.8, p_star=0.5)
        result = sweep_alice(base, n_values=(1, 2, 3))
        assert result.grid[0] == 0.0
        assert abs(result.curves["N=1"][0] - 0.8) <= 1e-12
        assert abs(result.curves["N=2"][0] - 0.96) <= 1e-12

    def test_probability_curves_endpoints(self):
        base = ElementProfile("x", p=0.8, q=0.8, p_star=0.5)
        result = sweep_alice(base, p_values=(0.6, 0.7, 0.8))
        assert abs(result.curves["p=0.8"][0] - 0.96) <= 1e-12
        assert abs(result.curves["p=0.6"][0] - 0.84) <= 1e-12

    def test_curves_weakly_decreasing_for_strong_elements(self):
        base = ElementProfile("x", p=0.8, q=0.8, p_star=0.5)
        result = sweep_alice(base, n_values=(1, 2, 3), p_values=(0.76, 0.9))
        for values in result.curves.values():
            diffs = np.diff(values)
            assert (diffs <= 1e-12).all()

    def test_perfect_element_gives_flat_half(self):
        base = ElementProfile("x", p=0.5, q=0.5, p_star=0.0)
        result = sweep_alice(base, n_values=(1,))
        assert all(v == 0.5 for v in result.curves["N=1"])

    def test_grid_is_sorted_and_bounded(self):
        grid = default_error_grid(0.01)
        assert grid[0] == 0.0 and grid[-1] == 0.5
        assert all(a < b for a, b in zip(grid, grid[1:]))
        assert len(grid) == 51

    def test_empty_request_rejected(self):
        with pytest.raises(ValueError, match="nothing to sweep"):
            sweep_alice(ideal_profile())

    def test_result_shape_validation(self):
        with pytest.raises(ValueError, match="length"):
            SweepResult(grid=(0.0, 0.1), curves={"N=1": (0.5,)})
        with pytest.raises(ValueError, match="outside"):
            SweepResult(grid=(0.0,), curves={"N=1": (1.5,)})
