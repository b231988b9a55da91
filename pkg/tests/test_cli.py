import io
import json

import pytest

from nicehf.cli import corpus_names, run

from _support import all_corpus


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), out=buf)
    return code, buf.getvalue()


def report(*argv):
    code, text = call(*argv, "--json")
    return code, json.loads(text)


def test_homology_s3():
    code, rep = report("homology", "corpus/s3_g1.json")
    assert code == 0 and rep["format"] == "nicehf-report" and rep["version"] == 1
    assert rep["result"]["total_dim"] == 1


def test_homology_fig9():
    code, rep = report("homology", "corpus/s2xs1_fig9.json")
    assert code == 0 and rep["result"]["classes"][0]["dim"] == 2


def test_hexagon_refused():
    code, rep = report("diff", "corpus/hexagon_fixture.json")
    assert code == 2 and rep["error"]["code"] == "NOT_NICE" and rep["error"]["offending"]
    code, text = call("diff", "hexagon_fixture")
    assert code == 2 and "NOT_NICE" in text


def test_non_admissible_refused():
    code, rep = report("homology", "non_admissible_fixture")
    assert code == 2 and rep["error"]["code"] == "NOT_ADMISSIBLE"
    assert rep["error"]["witness"] == {"D2": 1} or set(rep["error"]["witness"]) == {"D2"}


def test_validation_error_exit_1(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"format": "phd-1"}')
    code, rep = report("validate", str(bad))
    assert code == 1 and rep["error"]["code"]
    code, rep = report("validate", str(tmp_path / "missing.json"))
    assert code == 1


def test_internal_failure_exit_3(monkeypatch):
    from nicehf import cli
    from nicehf.errors import InternalD2Failure

    def boom(args):
        raise InternalD2Failure("d^2 != 0")

    monkeypatch.setattr(cli, "cmd_homology", boom)
    parser_funcs = cli.build_parser
    monkeypatch.setattr(cli, "build_parser", lambda: _patched(parser_funcs(), boom))
    code, rep = report("homology", "s3_g1")
    assert code == 3 and rep["error"]["code"] == "D_SQUARED_NONZERO"


def _patched(parser, fn):
    for action in parser._subparsers._group_actions:
        action.choices["homology"].set_defaults(func=fn)
    return parser


@pytest.mark.parametrize("name", all_corpus())
def test_every_corpus_file_validates(name):
    code, rep = report("validate", name)
    assert code == 0 and rep["result"]["valid"]


@pytest.mark.parametrize("cmd", [("info", "lens_3_1"), ("admissible", "s2xs1_fig9", "--strong"),
                                 ("nice", "trefoil_g1", "--knot"), ("diff", "s2xs1_fig9"),
                                 ("knot", "trefoil_g1"), ("contact", "legendrian_unknot"),
                                 ("homology", "s2xs1_sum_fig10")])
def test_deterministic(cmd):
    a = call(*cmd, "--json")
    b = call(*cmd, "--json")
    assert a == b and a[0] == 0


def test_info_and_admissible():
    code, rep = report("info", "lens_3_1")
    assert rep["result"]["h1"] == "Z/3" and len(rep["result"]["spinc_classes"]) == 3
    code, rep = report("admissible", "non_admissible_fixture", "--strong")
    assert code == 0 and not rep["result"]["admissible"]
    assert rep["result"]["classes"][0]["strong"]["status"] == "counterexample"
    code, rep = report("admissible", "s3_g1", "--knot")
    assert code == 2 and rep["error"]["code"] == "NOT_DOUBLY_POINTED"


def test_knot_and_contact():
    code, rep = report("knot", "trefoil_g1")
    assert rep["result"]["classes"][0]["by_alexander"] == {"-1": 1, "0": 1, "1": 1}
    assert rep["result"]["trace"]["code"] == "NO_VALID_TRACE"
    code, rep = report("contact", "ob_ot_s3")
    assert rep["result"]["contact"]["class"] == "Zero"
    code, rep = report("contact", "legendrian_unknot")
    assert rep["result"]["loss"]["class"] == "Nonzero"


def test_moves(tmp_path):
    out = tmp_path / "m.json"
    code, _ = call("move", "s2xs1_fig9", "finger", "0", "0", "D1", "0", "0", "-o", str(out))
    assert code == 0
    code, rep = report("homology", str(out))
    assert rep["result"]["total_dim"] == 2
    out2 = tmp_path / "c.json"
    code, _ = call("move", str(out), "collapse", "D1_", "-o", str(out2))
    code2, rep2 = report("info", str(out2))
    assert code2 == 0 or code != 0
    code, _ = call("move", "s3_g1", "stabilize", "R0", "-o", str(out))
    assert code == 0
    code, _ = call("move", str(out), "destabilize", "1", "-o", str(out2))
    assert code == 0
    code, rep = report("homology", str(out2))
    assert rep["result"]["total_dim"] == 1


def test_corpus_list():
    code, rep = report("corpus", "list")
    assert code == 0 and rep["result"]["corpus"] == corpus_names()
    assert "trefoil_g1" in rep["result"]["corpus"]


def test_finger_side_flag(tmp_path):
    """The side flags select a different finger move on a doubly bounding segment."""
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert call("move", "ob_tight_s3", "finger", "0", "0", "R0", "0", "0", "-o", str(a))[0] == 0
    assert call("move", "ob_tight_s3", "finger", "0", "0", "R0", "0", "0", "--s-reversed", "-o", str(b))[0] == 0
    assert a.read_text() != b.read_text()
    for p in (a, b):
        assert report("homology", str(p))[1]["result"]["total_dim"] == 1
