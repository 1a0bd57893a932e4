import json
import subprocess
import sys

import pytest

from quivhom.cli import main
from quivhom.corpus import corpus
from quivhom.io import (
    DefinitionError,
    Definitions,
    module_dot,
    parse_definitions,
    serialize_definitions,
)

SAMPLE = """
{
 "field": {"p": 101},
 "algebras": {
  "T": {
   "vertices": ["0", "1", "2", "3"],
   "arrows": [["a1", "1", "0"], ["b1", "1", "3"], ["a3", "3", "2"]],
   "relations": [[[1, "1", ["b1", "a3"]]]]
  }
 },
 "modules": {
  "X": {"algebra": "T", "dims": {"0": 1, "1": 1}, "mats": {"a1": [[1]]}},
  "Y": {"algebra": "T", "dims": {"3": 1}, "mats": {}}
 },
 "complexes": {
  "C": {"algebra": "T", "terms": {"0": "X", "1": "Y"}, "diffs": {}}
 },
 "functors": {
  "Id": {
   "source": "T", "target": "T",
   "images": {
    "0": {"terms": {"0": ["0"]}, "diffs": {}},
    "1": {"terms": {"0": ["1"]}, "diffs": {}},
    "2": {"terms": {"0": ["2"]}, "diffs": {}},
    "3": {"terms": {"0": ["3"]}, "diffs": {}}
   },
   "arrow_maps": {
    "a1": {"0": [[[[1, "1", ["a1"]]]]]},
    "b1": {"0": [[[[1, "1", ["b1"]]]]]},
    "a3": {"0": [[[[1, "3", ["a3"]]]]]}
   }
  }
 }
}
"""


def test_parse_sample():
    defs = parse_definitions(SAMPLE)
    assert defs.algebras["T"].dim == 7
    assert defs.modules["X"].total_dim() == 2
    assert defs.complexes["C"].hi == 1
    assert defs.functors["Id"].width == 0


def test_roundtrip():
    defs = parse_definitions(SAMPLE)
    text = serialize_definitions(defs)
    defs2 = parse_definitions(text)
    assert defs2.algebras["T"].path_basis == defs.algebras["T"].path_basis
    assert defs2.modules["X"].dims == defs.modules["X"].dims
    assert defs2.modules["X"].mats["a1"] == defs.modules["X"].mats["a1"]
    assert serialize_definitions(defs2) == text


def test_unknown_arrow_reported():
    bad = SAMPLE.replace('"relations": [[[1, "1", ["b1", "a3"]]]]', '"relations": [[[1, "1", ["zz", "a3"]]]]')
    with pytest.raises(DefinitionError) as exc:
        parse_definitions(bad)
    assert "zz" in str(exc.value)
    assert "relations" in str(exc.value)


def test_bad_matrix_shape_reported():
    bad = SAMPLE.replace('"mats": {"a1": [[1]]}', '"mats": {"a1": [[1, 2]]}')
    with pytest.raises(DefinitionError) as exc:
        parse_definitions(bad)
    assert "modules.X" in str(exc.value)


def test_relation_violation_reported():
    bad = SAMPLE.replace(
        '"X": {"algebra": "T", "dims": {"0": 1, "1": 1}, "mats": {"a1": [[1]]}}',
        '"X": {"algebra": "T", "dims": {"1": 1, "2": 1, "3": 1}, "mats": {"b1": [[1]], "a3": [[1]]}}',
    )
    with pytest.raises(DefinitionError):
        parse_definitions(bad)


def test_module_dot_output():
    defs = parse_definitions(SAMPLE)
    dot = module_dot(defs.modules["X"])
    assert dot.startswith("digraph")
    assert 'label="a1"' in dot


def run_cli(args):
    import io
    from contextlib import redirect_stdout

    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(args)
    return code, buf.getvalue()


def test_cli_ext():
    code, out = run_cli(
        ["--corpus", "1", "--format", "json", "ext", "--from", "simple_A_1", "--to", "simple_A_0", "--degree", "1"]
    )
    assert code == 0
    assert json.loads(out) == {"ext_dim": 1}


def test_cli_gp_check_table():
    code, out = run_cli(["--corpus", "1", "gp-check", "--module", "M_1_3", "--depth", "4"])
    assert code == 0
    assert "gp-up-to-depth" in out


def test_cli_stable_image_json_deterministic():
    args = ["--corpus", "1", "--format", "json", "stable-image", "--functor", "F", "--module", "SQ_3"]
    code1, out1 = run_cli(args)
    code2, out2 = run_cli(args)
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["total_dim"] >= 1


def test_cli_compare_kd():
    code, out = run_cli(
        ["--corpus", "1", "--format", "json", "compare-kd", "--source", "SQ_1", "--target", "SQ_2", "--shift", "0"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["isomorphism"] in (True, False)


def test_cli_unknown_module_is_operation_error(capsys):
    code = main(["--corpus", "1", "ext", "--from", "nope", "--to", "SQ_1", "--degree", "0"])
    assert code == 1


def test_cli_parse_error_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code = main(["--defs", str(bad), "ext", "--from", "X", "--to", "Y", "--degree", "0"])
    assert code == 2


def test_cli_defs_file(tmp_path):
    f = tmp_path / "defs.json"
    f.write_text(SAMPLE)
    code, out = run_cli(
        ["--defs", str(f), "--format", "json", "ext", "--from", "X", "--to", "Y", "--degree", "1"]
    )
    assert code == 0
    assert "ext_dim" in out


def test_cli_exact_image_corpus_pair():
    code, out = run_cli(
        ["--corpus", "1", "--format", "json", "exact-image", "--functor", "F", "--pair", "1,2"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["exact"] and payload["edge_classes_match"]


def test_cli_corpus_emission(tmp_path):
    out_file = tmp_path / "corpus.json"
    code, _ = run_cli(["corpus", "--n", "1", "--out", str(out_file)])
    assert code == 0
    payload = json.loads(out_file.read_text())
    assert payload["manifest"]["pair_count"] == 10
    # the emitted definitions reparse
    defs = parse_definitions(json.dumps(payload["definitions"]))
    assert defs.algebras["Gamma"].dim == 20
    assert "F" in defs.functors


def test_cli_decompose():
    code, out = run_cli(["--corpus", "1", "--format", "json", "decompose", "--module", "M_0_2"])
    assert code == 0
    payload = json.loads(out)
    assert len(payload["pieces"]) == 1


def test_cli_projdim():
    code, out = run_cli(["--corpus", "1", "--format", "json", "projdim", "--module", "proj_A_1", "--bound", "4"])
    assert code == 0
    assert json.loads(out)["projdim"] == 0


@pytest.mark.parametrize(
    "fname",
    ["tree_algebra.json", "dual_numbers.json", "identity_functor.json"],
)
def test_worked_files_parse_and_roundtrip(fname):
    import pathlib

    path = pathlib.Path(__file__).resolve().parent.parent / "docs" / "examples" / fname
    defs = parse_definitions(path.read_text())
    text = serialize_definitions(defs)
    defs2 = parse_definitions(text)
    assert serialize_definitions(defs2) == text


def test_worked_dual_numbers_content():
    import pathlib

    path = pathlib.Path(__file__).resolve().parent.parent / "docs" / "examples" / "dual_numbers.json"
    defs = parse_definitions(path.read_text())
    assert defs.algebras["D"].dim == 2
    from quivhom.complexes import homology

    c = defs.complexes["eps_period"]
    assert homology(c, 0).total_dim() == 1


def test_cli_findim_check_with_modules():
    code, out = run_cli(
        [
            "--corpus", "1", "--format", "json", "findim-check",
            "--functor", "F_BA",
            "--modules", "proj_B_0,simple_B_0,simple_B_3",
            "--bound", "5",
        ]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["bounds_ok"] and payload["gap_ok"]


def test_cli_stable_map_verb():
    code, out = run_cli(
        [
            "--corpus", "1", "--format", "json", "stable-map",
            "--functor", "F", "--from", "M_1_3", "--to", "M_1_3",
        ]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["class_is_zero"] is False
