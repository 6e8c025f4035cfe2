import io
import json
import subprocess
import sys

import jsonschema
import pytest

from prohall.cli import RunConfig, UsageError, run
from prohall.discriminate import CERTIFICATE_SCHEMA
from prohall.serialize import normal_form_from_dict, normal_form_from_json


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def cli_json(*argv):
    code, out, err = cli(*argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


# -- config -------------------------------------------------------------------------------

def test_strict_padic_needs_p_above_class():
    with pytest.raises(UsageError):
        RunConfig(p=3, c=3, ring="zp")
    RunConfig(p=3, c=3, ring="zp", mode="tracked")
    RunConfig(p=3, c=3, ring="z")


def test_config_is_frozen():
    cfg = RunConfig()
    with pytest.raises(AttributeError):
        cfg.p = 11


# -- commands --------------------------------------------------------------------------------

def test_basis_lines():
    code, out, _ = cli("basis", "--gens", "2", "--class", "3")
    assert code == 0
    assert len(out.strip().splitlines()) == 5


def test_eq_distinct_at_class_two():
    code, out, _ = cli("eq", "a b", "b a", "--class", "2", "--ring", "z")
    assert code == 0 and out.strip() == "distinct-at-class-2"


def test_eq_equal():
    code, out, _ = cli("eq", "[a,b]", "a^-1 b^-1 a b", "--class", "4")
    assert out.strip() == "equal-up-to-cap"


def test_identity_prints_one():
    code, out, _ = cli("normalize", "a a^-1")
    assert code == 0 and out.strip() == "1"


def test_normalize_text():
    code, out, _ = cli("normalize", "b a", "--class", "2")
    assert out.strip() == "a^{1} b^{1} [b,a]^{1}"


def test_normal_form_json_round_trip():
    for ring in ("z", "zp", "zt", "zpt"):
        expr = "b a^3 [b,a]^-2" if ring in ("z", "zp") else "b^t a^(C(t,2)) [a,b]^(1 - t)"
        d = cli_json("normalize", expr, "--ring", ring, "--class", "4")
        doc = d[0] if isinstance(d, list) else d
        g = normal_form_from_dict(doc)
        assert g.to_dict() == doc
        assert normal_form_from_json(g.to_json()) == g


def test_power_and_commutator():
    code, out, _ = cli("power", "a b", "2", "--class", "2")
    assert out.strip() == "a^{2} b^{2} [b,a]^{1}"
    code, out, _ = cli("commutator", "a", "b", "--class", "2")
    assert out.strip() == "[b,a]^{-1}"


def test_petresco_and_axioms():
    assert cli("petresco", "2", "a", "b", "--class", "3")[0] == 0
    d = cli_json("axioms", "--trials", "5", "--class", "3")
    assert d["passed"]


def test_closure_is_integral():
    d = cli_json("closure", "--depth", "2", "--nmax", "3")
    assert d["integral"]


def test_discriminate_file(tmp_path):
    f = tmp_path / "M.txt"
    f.write_text("# three elements\na^t b\na b^t   # second\n\na b\n")
    d = cli_json("discriminate", "--file", str(f), "--p", "7", "--prec", "12", "--class", "4")
    jsonschema.validate(d, CERTIFICATE_SCHEMA)
    assert d["K"] == 1 and d["alpha"] == "2" and d["verified"]


def test_discriminate_is_deterministic(tmp_path):
    args = ("discriminate", "[a,b]^t", "[a,b]^(t+1)", "a^(C(t,3)) b", "--class", "3", "--seed", "4",
            "--format", "json")
    assert cli(*args)[1] == cli(*args)[1]


def test_subst_and_centralizer():
    d = cli_json("subst", "x y", "--assign", "x=a^t", "--assign", "y=b", "--ring", "zt", "--class", "2")
    assert d["zp_exponents"] is False
    d = cli_json("centralizer", "[a,b]", "--alpha", "2", "--ring", "zpt", "--class", "3")
    assert d["nontrivial"] == [True] and d["witness_class"] == 2


def test_oracle_check():
    d = cli_json("oracle-check", "--trials", "10", "--class", "3")
    assert d["passed"]


# -- exit codes ---------------------------------------------------------------------------------

def test_parse_error_exit_two():
    code, out, err = cli("normalize", "a^")
    assert code == 2 and out == ""
    assert "column 3" in err


def test_unbound_and_ring_errors_exit_two():
    assert cli("normalize", "a c", "--gens", "2")[0] == 2
    assert cli("normalize", "a^t", "--ring", "z")[0] == 2
    assert cli("normalize", "a", "--ring", "zp", "--p", "3", "--class", "3")[0] == 2


def test_missing_file_exit_two(tmp_path):
    assert cli("discriminate", "--file", str(tmp_path / "nope.txt"))[0] == 2


def test_domain_error_exit_one():
    code, out, err = cli("discriminate", "a b", "a b", "--class", "3")
    assert code == 1 and "CapExceeded" in err


def test_bad_flag_exit_two(capsys):
    assert cli("basis", "--class", "x")[0] == 2


@pytest.mark.parametrize("argv", [
    ("basis",), ("normalize", "a b"), ("eq", "a", "b"), ("power", "a", "3"), ("commutator", "a", "b"),
    ("petresco", "2", "a", "b"), ("axioms", "--trials", "2"), ("closure",), ("discriminate", "a^t", "a"),
    ("subst", "x", "--assign", "x=a b"), ("centralizer", "[a,b]", "--ring", "zpt"), ("oracle-check", "--trials", "2"),
])
def test_every_command_emits_one_json_document(argv):
    code, out, err = cli(*argv, "--format", "json")
    assert code == 0, err
    json.loads(out)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "prohall", "basis", "--gens", "3", "--class", "2"],
                          capture_output=True, text=True, check=True)
    assert len(proc.stdout.splitlines()) == 6
