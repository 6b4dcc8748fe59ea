"""
Tests for argument handling, run configs and rendering.
"""
import json

import pytest

from cli import CommandOutput, RunConfig, UsageError, build_parser, render
from cli.specs import _parse_generators, build_run_config, parse_window, submodule_from, weights_from
from utils.errors import SpecError


def parse(*argv, seed=20240601):
    return build_run_config(build_parser().parse_args(list(argv)), seed)


@pytest.mark.unit
class TestParser:
    """Test the argument parser."""

    def test_unknown_option_is_usage_error(self):
        """Test that argparse errors surface as UsageError."""
        with pytest.raises(UsageError):
            build_parser().parse_args(["schatten", "--bogus"])

    def test_subcommand_required(self):
        """Test that a bare invocation is refused."""
        with pytest.raises(UsageError):
            build_parser().parse_args([])

    def test_repeated_orders(self):
        """Test that --p may be given several times."""
        run = parse("schatten", "--m", "2", "--p", "2.5", "--p", "3")
        assert run.params["p"] == [2.5, 3.0]
        assert run.params["kind"] == "self"


@pytest.mark.unit
class TestRunConfig:
    """Test building and serializing run configs."""

    def test_weights_from_family(self):
        """Test that --m with --family gives a built-in spec."""
        run = parse("weights-check", "--m", "3", "--family", "hardy_ball_like")
        assert run.weights == {"m": 3, "family": "hardy_ball_like"}
        assert weights_from(run).m == 3
        assert run.seed == 20240601

    def test_dimension_inferred_from_generators(self):
        """Test that m comes from the first exponent when --m is absent."""
        run = parse("generators", "--generators", "[[2,3],[3,3]]")
        assert run.submodule == {"m": 2, "generators": [[2, 3], [3, 3]]}
        assert run.weights == {"m": 2, "family": "drury_arveson"}

    def test_vector_generators(self):
        """Test that object generators carry k."""
        data = _parse_generators('[{"alpha": [0, 2], "x": [1, 0]}]', None, 2)
        assert data == {"m": 2, "k": 2, "generators": [{"alpha": [0, 2], "x": [1, 0]}]}

    @pytest.mark.parametrize("raw", ["[[1,", "{}", "[]"])
    def test_bad_generators(self, raw):
        """Test that unreadable generator lists raise SpecError."""
        with pytest.raises(SpecError) as info:
            _parse_generators(raw, None, None)
        assert info.value.field == "--generators"

    def test_files(self, tmp_path):
        """Test weight and submodule specs read from files."""
        weights = tmp_path / "w.json"
        weights.write_text(json.dumps({"m": 1, "family": "custom", "table": [{"alpha": [0], "lambda": 1.0}]}))
        sub = tmp_path / "s.json"
        sub.write_text(json.dumps({"m": 1, "generators": [[2]]}))
        run = parse("dimension", "--weights-file", str(weights), "--submodule-file", str(sub))
        assert weights_from(run).family == "custom"
        assert submodule_from(run, 1e-10).generators[0].alpha.entries == (2,)

    def test_unreadable_file(self, tmp_path):
        """Test that a missing or malformed file names its option."""
        with pytest.raises(SpecError) as info:
            parse("dimension", "--submodule-file", str(tmp_path / "missing.json"))
        assert info.value.field == "--submodule-file"
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        with pytest.raises(SpecError, match="invalid JSON"):
            parse("dimension", "--weights-file", str(bad))

    def test_missing_inputs(self):
        """Test that absent weights or submodule raise SpecError."""
        run = parse("audit")
        with pytest.raises(SpecError):
            weights_from(run)
        with pytest.raises(SpecError):
            submodule_from(run, 1e-10)
        assert submodule_from(run, 1e-10, required=False) is None

    def test_params_exclude_globals(self):
        """Test that params hold only subcommand options that were set."""
        run = parse("schatten", "--m", "2", "--max-degree", "50", "--strict")
        assert run.params == {"domain": "ambient", "i": 1, "j": 1, "kind": "self", "max_degree": 50}
        assert run.strict is True

    def test_round_trip(self):
        """Test lossless to_dict/from_dict."""
        run = parse("report", "--generators", "[[1,1]]", "--q", "1.5", "--seed", "9")
        assert RunConfig.from_dict(json.loads(run.to_json())) == run

    @pytest.mark.parametrize(
        "data,field",
        [
            ([], "/"),
            ({"command": "nope"}, "/command"),
            ({"command": "report", "output_format": "xml"}, "/output_format"),
            ({"command": "report", "params": []}, "/params"),
        ],
    )
    def test_malformed_run_config(self, data, field):
        """Test that SpecError carries the offending path."""
        with pytest.raises(SpecError) as info:
            RunConfig.from_dict(data)
        assert info.value.field == field


@pytest.mark.unit
class TestWindowAndRender:
    """Test window parsing and output rendering."""

    def test_parse_window(self):
        """Test lo:hi parsing."""
        assert parse_window("100:600") == (100, 600)
        assert parse_window(None) is None
        with pytest.raises(UsageError):
            parse_window("100")

    def test_json_rendering(self):
        """Test sorted keys, two-space indent and a trailing newline."""
        text = render(CommandOutput(data={"b": 1, "a": [1, 2]}), "json", "generators")
        assert text == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'

    def test_csv_rendering(self):
        """Test that floats are written with repr."""
        output = CommandOutput(csv_rows=[["p", "value"], [3.0, 0.1 + 0.2]])
        assert render(output, "csv", "schatten") == "p,value\n3.0,0.30000000000000004\n"

    def test_csv_unavailable(self):
        """Test that commands without CSV refuse it."""
        with pytest.raises(UsageError):
            render(CommandOutput(data={}), "csv", "report")

    def test_text_falls_back_to_json(self):
        """Test text format for commands without an outline."""
        assert render(CommandOutput(data={}), "text", "dimension") == "{}\n"
