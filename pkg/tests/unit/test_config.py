#!/usr/bin/env python3
"""Tests for parameter records and run configurations."""

import json
from fractions import Fraction
from pathlib import Path

import pytest
from pydantic import ValidationError

from kappa_nc.core.errors import ConfigurationError
from kappa_nc.models.config import (
    GridSpec,
    GroupConfig,
    HomologyParams,
    HomologyRunConfig,
    SpecdimRunConfig,
    StarRunConfig,
    ZetaContext,
    ZetaRunConfig,
    ZLine,
    parse_lambda_multiple,
    parse_rational,
)


class TestRationalParsing:
    """Exact parsing of lambda and mu values."""

    @pytest.mark.parametrize(
        ("text", "expected"),
        [("3", Fraction(3)), ("7/3", Fraction(7, 3)), ("0.25", Fraction(1, 4)), (2, Fraction(2))],
    )
    def test_parse_rational(self, text, expected):
        assert parse_rational(text) == expected

    def test_float_is_parsed_through_its_decimal_text(self):
        assert parse_rational(0.1) == Fraction(1, 10)

    @pytest.mark.parametrize("bad", ["abc", True, None])
    def test_parse_rational_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)

    @pytest.mark.parametrize(
        ("text", "expected"),
        [
            ("-3lambda", Fraction(-6)),
            ("7/3 lambda", Fraction(14, 3)),
            ("-lambda", Fraction(-2)),
            ("lambda", Fraction(2)),
            ("-2*lambda", Fraction(-4)),
            ("2/5", Fraction(2, 5)),
            ("0", Fraction(0)),
        ],
    )
    def test_parse_lambda_multiple(self, text, expected):
        assert parse_lambda_multiple(text, Fraction(2)) == expected

    @pytest.mark.parametrize("bad", ["", "lambda2", "3mu", "--lambda"])
    def test_parse_lambda_multiple_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_lambda_multiple(bad, Fraction(1))


class TestParameterRecords:
    """Field invariants of the library parameter records."""

    def test_group_defaults(self):
        cfg = GroupConfig()
        assert cfg.n == 2
        assert cfg.lam == 0.5
        assert not cfg.is_commutative

    def test_group_alias_and_commutative(self):
        cfg = GroupConfig.model_validate({"n": 3, "lambda": 0.0})
        assert cfg.is_commutative

    @pytest.mark.parametrize("values", [{"n": 1}, {"n": 9}, {"lam": -0.1}])
    def test_group_rejects(self, values):
        with pytest.raises(ValidationError):
            GroupConfig(**values)

    def test_group_is_frozen(self):
        cfg = GroupConfig()
        with pytest.raises(ValidationError):
            cfg.n = 3

    def test_grid_points_must_be_even(self):
        with pytest.raises(ValidationError):
            GridSpec(n0=255)

    def test_grid_for_dimension(self):
        assert GridSpec.for_dimension(2) == GridSpec()
        coarse = GridSpec.for_dimension(3)
        assert coarse.ns < GridSpec().ns
        assert coarse.n0 % 2 == 0

    def test_zeta_context_rejects_zero_mu(self):
        with pytest.raises(ValidationError):
            ZetaContext(mu=0.0)

    def test_zeta_context_rejects_zero_lambda(self):
        with pytest.raises(ValidationError):
            ZetaContext(lam=0.0)

    def test_homology_params_exact_values(self):
        params = HomologyParams.model_validate({"n": 3, "lambda": "3/2", "mu": "-2lambda"})
        assert params.lam == Fraction(3, 2)
        assert params.mu == Fraction(-3)

    def test_homology_params_default_mu(self):
        assert HomologyParams(n=2).mu == 0

    def test_homology_params_reject_nonpositive_lambda(self):
        with pytest.raises(ValidationError):
            HomologyParams.model_validate({"lambda": "0"})

    def test_homology_params_serialize_as_text(self):
        params = HomologyParams.model_validate({"lambda": "1/3", "mu": "-lambda"})
        dumped = params.model_dump(by_alias=True)
        assert dumped["lambda"] == "1/3"
        assert dumped["mu"] == "-1/3"


class TestZLine:
    """z-scan line parsing."""

    def test_parse_and_points(self):
        line = ZLine.parse("4+0i:8+0i:17")
        points = line.points()
        assert len(points) == 17
        assert points[0] == 4 + 0j
        assert points[-1] == pytest.approx(8 + 0j)
        assert points[1] == pytest.approx(4.25 + 0j)

    def test_complex_endpoints(self):
        points = ZLine.parse("2+1i:2+3i:3").points()
        assert points == [2 + 1j, 2 + 2j, 2 + 3j]

    def test_single_point(self):
        assert ZLine.parse("5:9:1").points() == [5 + 0j]

    @pytest.mark.parametrize("bad", ["4:8", "a:b:3", "4:8:0"])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            ZLine.parse(bad)


class TestRunConfigResolve:
    """JSON file values merged under explicit flags."""

    def test_defaults_without_file(self):
        config = ZetaRunConfig.resolve()
        assert config.n == 2
        assert config.output_dir == Path("kappa-nc-output")

    def test_flags_override_file(self, tmp_path):
        path = tmp_path / "zeta.json"
        path.write_text(json.dumps({"n": 3, "lambda": 0.3, "mu": 2.0}), encoding="utf-8")
        config = ZetaRunConfig.resolve(path, {"n": 4, "mu": None})
        assert config.n == 4
        assert config.lam == 0.3
        assert config.mu == 2.0

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ConfigurationError, match="Malformed JSON"):
            ZetaRunConfig.resolve(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError, match="Cannot read"):
            ZetaRunConfig.resolve(tmp_path / "absent.json")

    def test_non_object_json(self, tmp_path):
        path = tmp_path / "list.json"
        path.write_text("[1, 2]", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            ZetaRunConfig.resolve(path)

    def test_unknown_key_is_rejected(self):
        with pytest.raises(ConfigurationError):
            StarRunConfig.resolve(overrides={"colour": "blue"})

    def test_validation_error_maps_to_configuration_error(self):
        with pytest.raises(ConfigurationError):
            ZetaRunConfig.resolve(overrides={"mu": 0.0})

    def test_invalid_line_is_rejected(self):
        with pytest.raises(ConfigurationError):
            ZetaRunConfig.resolve(overrides={"line": "4:8"})

    def test_save_and_load_round_trip(self, tmp_path):
        config = StarRunConfig(n=3, lam=0.3, seed=5, kms_scan=True)
        path = tmp_path / "star.json"
        config.save_to_file(path)
        loaded = StarRunConfig.load_from_file(path)
        assert loaded == config


class TestCommandConfigs:
    """Derived parameter records of each command configuration."""

    def test_zeta_context(self):
        config = ZetaRunConfig(n=3, lam=0.3, mu=-1.5, t=2.0)
        ctx = config.context()
        assert (ctx.n, ctx.lam, ctx.mu, ctx.t) == (3, 0.3, -1.5, 2.0)

    def test_zeta_default_line_lies_right_of_the_poles(self):
        line = ZetaRunConfig(n=3).z_line()
        assert line.count == 17
        assert line.start.real > 3

    def test_star_grid_follows_dimension(self):
        assert StarRunConfig(n=3).resolved_grid() == GridSpec.for_dimension(3)
        custom = GridSpec(n0=64, ns=32)
        assert StarRunConfig(grid=custom).resolved_grid() == custom

    def test_star_group(self):
        assert StarRunConfig(n=3, lam=0.0).group().is_commutative

    def test_homology_default_mu_is_resonant(self):
        params = HomologyRunConfig(n=4, d=2).params()
        assert params.mu == -3 * params.lam

    def test_homology_mu_text(self):
        params = HomologyRunConfig.model_validate({"n": 2, "lambda": "1/2", "mu": "-3lambda"})
        assert params.params().mu == Fraction(-3, 2)

    def test_homology_scan_values(self):
        values = HomologyRunConfig(n=2, d=3).scan_values()
        assert values[0] == 0
        assert [-1, -2, -3, -4, -5] == values[1:6]
        assert Fraction(7, 3) in values

    def test_homology_mu_list(self):
        config = HomologyRunConfig.model_validate({"lambda": "2", "mu_list": ["-lambda", "1/2"]})
        assert config.scan_values() == [Fraction(-2), Fraction(1, 2)]

    def test_homology_bad_mu_list(self):
        with pytest.raises(ValidationError):
            HomologyRunConfig(mu_list=["3mu"])

    def test_specdim_context(self):
        ctx = SpecdimRunConfig(n=4, t=0.5).context()
        assert ctx.n == 4
        assert ctx.t == 0.5
