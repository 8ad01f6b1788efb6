import pytest

from qcflip.config import (
    ConfigError,
    ScenarioConfig,
    build_framework,
    build_profile,
    parse_config,
    serialize_config,
)

FULL = """\
[scenario]
p_e = 0.1
trials = 50000
seed = 42

[element.1]
kind = custom
name = two-basis
p = 0.8
q = 0.8
p_star = 0.5

[element.2]
kind = bbbg09
alpha_sq = 0.9
coefficient = half

[element.3]
kind = chailloux

[element.4]
kind = ideal
"""


class TestParsing:
    def test_full_scenario(self):
        cfg = parse_config(FULL)
        assert cfg.p_e == 0.1
        assert cfg.trials == 50000
        assert cfg.seed == 42
        assert [e.kind for e in cfg.elements] == [
            "custom",
            "bbbg09",
            "chailloux",
            "ideal",
        ]
        spec = build_framework(cfg)
        assert spec.depth == 4
        assert spec.elements[0].p == 0.8
        assert spec.elements[1].q == 0.9
        assert spec.noise.p_e == 0.1

    def test_defaults_applied(self):
        cfg = parse_config("[element.1]\nkind = ideal\n")
        assert cfg.p_e == 0.0
        assert cfg.trials == 100_000
        assert cfg.seed == 1

    def test_round_trip_is_identity(self):
        first = parse_config(FULL)
        second = parse_config(serialize_config(first))
        assert first == second
        assert serialize_config(first) == serialize_config(second)

    def test_custom_defaults_p_star_to_zero(self):
        cfg = parse_config("[element.1]\nkind = custom\np = 0.7\nq = 0.6\n")
        assert build_profile(cfg.elements[0]).p_star == 0.0


class TestRejection:
    def test_unknown_scenario_key_named(self):
        with pytest.raises(ConfigError, match="p_error"):
            parse_config("[scenario]\np_error = 0.1\n\n[element.1]\nkind = ideal\n")

    def test_unknown_element_key_named(self):
        with pytest.raises(ConfigError, match="'gamma'"):
            parse_config("[element.1]\nkind = bbbg09\nalpha_sq = 0.9\ngamma = 1\n")

    def test_param_on_parameterless_kind_rejected(self):
        with pytest.raises(ConfigError, match="'p'"):
            parse_config("[element.1]\nkind = ideal\np = 0.8\n")

    def test_unknown_section_named(self):
        with pytest.raises(ConfigError, match="extras"):
            parse_config("[extras]\nx = 1\n\n[element.1]\nkind = ideal\n")

    def test_unknown_kind(self):
        with pytest.raises(ConfigError, match="ebay"):
            parse_config("[element.1]\nkind = ebay\n")

    def test_missing_kind(self):
        with pytest.raises(ConfigError, match="kind"):
            parse_config("[element.1]\np = 0.8\n")

    def test_no_elements(self):
        with pytest.raises(ConfigError, match="no \\[element"):
            parse_config("[scenario]\np_e = 0.1\n")

    def test_gapped_numbering(self):
        with pytest.raises(ConfigError, match="numbered"):
            parse_config("[element.1]\nkind = ideal\n\n[element.3]\nkind = ideal\n")

    def test_missing_required_param(self):
        with pytest.raises(ConfigError, match="alpha_sq"):
            parse_config("[element.1]\nkind = bbbg09\n")
        with pytest.raises(ConfigError, match="p"):
            parse_config("[element.1]\nkind = custom\nq = 0.6\n")

    def test_invalid_profile_values_rejected_at_parse(self):
        with pytest.raises(ConfigError, match="p must be"):
            parse_config("[element.1]\nkind = custom\np = 0.2\nq = 0.6\n")

    def test_noise_out_of_range(self):
        with pytest.raises(ConfigError, match="p_e"):
            parse_config("[scenario]\np_e = 0.7\n\n[element.1]\nkind = ideal\n")

    def test_non_numeric_value(self):
        with pytest.raises(ConfigError, match="number"):
            parse_config("[scenario]\np_e = lots\n\n[element.1]\nkind = ideal\n")

    def test_bad_trials_and_seed(self):
        with pytest.raises(ConfigError, match="trials"):
            parse_config("[scenario]\ntrials = 0\n\n[element.1]\nkind = ideal\n")
        with pytest.raises(ConfigError, match="seed"):
            parse_config("[scenario]\nseed = -3\n\n[element.1]\nkind = ideal\n")

    def test_malformed_ini(self):
        with pytest.raises(ConfigError, match="malformed"):
            parse_config("not an ini file at all\n")


class TestSerialization:
    def test_canonical_key_order(self):
        cfg = ScenarioConfig(
            elements=(parse_config(FULL).elements[1],), p_e=0.25, trials=10, seed=9
        )
        text = serialize_config(cfg)
        assert text.index("p_e") < text.index("trials") < text.index("seed")
        assert "[element.1]" in text and "alpha_sq" in text
