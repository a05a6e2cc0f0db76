"""
Tests for YAML configuration loading, matrix files and structure files.
"""

from fractions import Fraction

import pytest
import yaml

from gaugex.core.errors import ConfigKeyError, ParseError, StructureError
from gaugex.io.matrix_file import dump_rows, load_rows, parse_rows, save_rows
from gaugex.io.structure_file import dump_structure, load_structure, parse_structure, save_structure
from gaugex.io.yaml_loader import check_keys, deep_merge, dump_config, load_config, load_defaults, load_merged
from gaugex.runner.config import Caps
from gaugex.syntax.signature import Signature

F = Fraction

PAIR = """
(signature (pred P 1 id) (fun f 1 id))
(points a b)
(dist a b 1/2)
(gauge a 0) (gauge b 1/2)
(pred P a 1) (pred P b 0)
(fun f a b) (fun f b a)
"""


class TestYamlLoader:
    """YAML run configuration files."""

    def test_load(self, tmp_path):
        """A mapping file loads as a dict."""
        path = tmp_path / "run.yml"
        path.write_text("caps:\n  simplex_vectors: 3\n")
        assert load_config(path) == {"caps": {"simplex_vectors": 3}}

    def test_empty_file(self, tmp_path):
        """An empty file is an empty mapping."""
        path = tmp_path / "empty.yml"
        path.write_text("")
        assert load_config(path) == {}

    def test_errors(self, tmp_path):
        """Missing files, bad YAML and non-mappings raise."""
        with pytest.raises(FileNotFoundError):
            load_config(tmp_path / "missing.yml")
        bad = tmp_path / "bad.yml"
        bad.write_text("caps: [1, 2\n")
        with pytest.raises(ValueError):
            load_config(bad)
        scalar = tmp_path / "scalar.yml"
        scalar.write_text("3\n")
        with pytest.raises(ValueError, match="mapping"):
            load_config(scalar)

    def test_extends(self, tmp_path):
        """A child file overrides the file it extends."""
        (tmp_path / "base.yml").write_text("theory:\n  eps: ['1/2']\n  n: [1]\n")
        child = tmp_path / "child.yml"
        child.write_text("extends: base.yml\ntheory:\n  n: [3]\n")
        assert load_config(child) == {"theory": {"eps": ["1/2"], "n": [3]}}

    def test_deep_merge_copies(self):
        """Merging copies rather than aliases the base."""
        base = {"caps": {"a": 1, "b": 2}, "x": [1]}
        out = deep_merge(base, {"caps": {"b": 3}})
        assert out == {"caps": {"a": 1, "b": 3}, "x": [1]}
        out["x"].append(2)
        assert base["x"] == [1]

    def test_check_keys(self):
        """Unknown keys are reported by dotted path."""
        allowed = {"caps": {"a": 1}, "output": {}}
        check_keys({"caps": {"a": 2}}, allowed)
        with pytest.raises(ConfigKeyError, match="caps.b"):
            check_keys({"caps": {"b": 2}}, allowed)

    def test_defaults(self):
        """The shipped caps are the ones the run configuration falls back to."""
        defaults = load_defaults()
        assert Caps.from_mapping(defaults["caps"]) == Caps()
        assert defaults["output"]["format"] == "human"

    def test_merged(self, tmp_path):
        """User files merge over defaults and unknown sections raise."""
        path = tmp_path / "user.yml"
        path.write_text("banach:\n  trials: 10\n")
        merged = load_merged(path)
        assert merged["banach"]["trials"] == 10
        assert merged["banach"]["seed"] == 0
        path.write_text("plots: {}\n")
        with pytest.raises(ConfigKeyError):
            load_merged(path)

    def test_dump(self, tmp_path):
        """Dumped configuration reads back."""
        path = tmp_path / "out.yml"
        dump_config({"caps": {"simplex_vectors": 2}}, path)
        assert yaml.safe_load(path.read_text()) == {"caps": {"simplex_vectors": 2}}


class TestMatrixFile:
    """Whitespace separated rational matrices."""

    def test_parse(self):
        """Comments are skipped; fractions and decimals read exactly."""
        rows = parse_rows("# basis\n1 0\n-1/2 0.25\n")
        assert rows.shape == (2, 2)
        assert rows[1, 0] == F(-1, 2)
        assert rows[1, 1] == F(1, 4)

    @pytest.mark.parametrize("text", ["", "1 2\n3\n", "1 x\n"])
    def test_errors(self, text):
        """Empty, ragged and non-numeric input raise."""
        with pytest.raises(ParseError):
            parse_rows(text)

    def test_save_and_load(self, tmp_path, frac):
        """Saved rows use p/q and load back."""
        rows = frac([[1, F(1, 3)], [0, -2]])
        path = save_rows(rows, tmp_path / "basis.txt")
        assert path.read_text() == "1 1/3\n0 -2\n"
        assert (load_rows(path) == rows).all()
        assert dump_rows([1, 2]) == "1 2\n"

    def test_missing(self, tmp_path):
        """A missing file is reported."""
        with pytest.raises(FileNotFoundError):
            load_rows(tmp_path / "none.txt")


class TestStructureFile:
    """Structure files."""

    def test_parse(self):
        """Points, distances, predicates and functions read from text."""
        M = parse_structure(PAIR)
        assert M.points == ("a", "b")
        assert M.dist[0, 1] == M.dist[1, 0] == F(1, 2)
        assert M.predicates["P"][0] == 1
        assert M.apply("f", (0,)) == 1

    def test_wrapper_and_supplied_signature(self):
        """The structure wrapper is optional; a signature is required."""
        M = parse_structure("(structure (points a) (gauge a 0))", Signature())
        assert M.size == 1
        with pytest.raises(StructureError, match="no signature"):
            parse_structure("(points a) (gauge a 0)")

    @pytest.mark.parametrize(
        "text,error",
        [
            ("(points a b) (gauge a 0) (gauge b 0)", StructureError),
            ("(points a b) (dist a b 1) (dist b a 2) (gauge a 0) (gauge b 0)", StructureError),
            ("(points a) (gauge c 0)", StructureError),
            ("(points a) (gauge a 0) (color a red)", ParseError),
            ("(points a) (points b)", StructureError),
        ],
    )
    def test_malformed(self, text, error):
        """Missing entries, asymmetry, unknown points and forms raise."""
        with pytest.raises(error):
            parse_structure(text, Signature())

    def test_round_trip(self, line_structure, tmp_path):
        """Saved structures load back with the same tables."""
        path = save_structure(line_structure, tmp_path / "line.gs")
        assert load_structure(path).tables_equal(line_structure)
        assert parse_structure(dump_structure(line_structure, False), line_structure.signature).tables_equal(
            line_structure
        )

    def test_missing(self, tmp_path):
        """A missing file is reported."""
        with pytest.raises(FileNotFoundError):
            load_structure(tmp_path / "none.gs")
