import json
import subprocess
import sys
from fractions import Fraction

import pytest

from thuemeasure import serialize
from thuemeasure.cli import main
from thuemeasure.config import RunConfig, load_config, parse_config_file
from thuemeasure.exactnum import DomainError
from thuemeasure.realengine import CertifiedReal
from thuemeasure.replay import replay_claims
from thuemeasure.thue_core import certify_standard


def test_big_integers_are_strings():
    out = json.loads(serialize.dumps({"small": 2**53, "big": 2**53 + 1, "neg": -(10**30), "q": Fraction(-3, 7)}))
    assert out == {"small": 2**53, "big": str(2**53 + 1), "neg": str(-(10**30)), "q": "-3/7"}


def test_certified_reals_serialize_as_bounds():
    x = CertifiedReal.exact(Fraction(1, 3), 128)
    out = serialize.encode(x)
    assert Fraction(out["lo"]) <= Fraction(1, 3) <= Fraction(out["hi"]) and out["bits"] == 128


def test_certificate_json_is_stable(tmp_path):
    a = serialize.dumps(certify_standard(7, -19, 19))
    b = serialize.dumps(certify_standard(7, -19, 19))
    assert a == b
    data = json.loads(a)
    assert data["u1"] == 2**7 * 19**4 and data["applicable"] is True
    assert data["statement"].startswith("|sqrt(19)*tan(10*pi/7)")
    serialize.write(certify_standard(7, -19, 19), tmp_path / "c.json")
    assert (tmp_path / "c.json").read_text() == a
    with pytest.raises(TypeError):
        serialize.encode(object())


def test_config_precedence(tmp_path):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text("# run settings\nprecision_floor = 256\noutput_format = json\n")
    env = {"THUE_PRECISION_FLOOR": "128", "THUE_CD": "7:64000,exp(1.7)"}
    cfg = load_config({"precision_floor": None}, cfgfile, env)
    assert cfg.precision_floor == 256 and cfg.output_format == "json"
    assert cfg.cd_for(7).D_log == Fraction("1.7") and cfg.cd_for(13) is None
    cfg = load_config({"precision_floor": "512"}, cfgfile, env)
    assert cfg.precision_floor == 512
    assert load_config({}, None, env).precision_floor == 128
    assert load_config({}, None, {}) == RunConfig()


def test_config_validation():
    with pytest.raises(DomainError):
        parse_config_file("nonsense")
    with pytest.raises(DomainError):
        parse_config_file("colour = blue")
    with pytest.raises(DomainError):
        RunConfig(precision_floor=32)
    with pytest.raises(DomainError):
        RunConfig(output_format="xml")


def test_cli_certify_exit_codes(capsys):
    assert main(["certify", "--n", "7", "--t", "-19", "--x", "19"]) == 0
    assert "measure      |sqrt(19)*tan(10*pi/7)" in capsys.readouterr().out
    assert main(["certify", "--n", "4", "--t", "-6", "--x", "100"]) == 2
    assert "not applicable" in capsys.readouterr().out
    assert main(["certify", "--n", "7", "--t", "0", "--x", "1"]) == 1
    assert "error:" in capsys.readouterr().err


def test_cli_json_output_is_byte_identical(capsys, tmp_path):
    argv = ["certify", "--n", "13", "--t", "-7", "--x", "7", "--format", "json", "--out", str(tmp_path / "a.json")]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first == (tmp_path / "a.json").read_text()


def test_cli_family_cf_and_refine(capsys, tmp_path):
    assert main(["family", "--n", "4", "--k", "1", "--b", "9"]) == 2
    capsys.readouterr()
    assert main(["cf", "--n", "7", "--t", "-19", "--k", "5", "--count", "6", "--cache-dir", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "quotients    19 10 4 25 1 1" in out
    assert main(["refine", "--n", "7", "--t", "-19", "--x", "19", "--c-star", "0.09", "--exponent", "4.6",
                 "--tail-exponent", "10", "--skip-bounds-check"]) == 1
    assert "tail" in capsys.readouterr().out


def test_cli_search_small(capsys):
    assert main(["search", "--n", "13", "--t-max", "10"]) == 0
    assert "13" in capsys.readouterr().out


def test_replay_subset_and_fault_injection(capsys):
    rep = replay_claims(["n7_t19", "zu"])
    assert rep.passed and set(rep.seconds) == {"n7_t19", "zu"}
    assert main(["verify-paper", "--only", "n7_t19", "--only", "cd_tables"]) == 0
    capsys.readouterr()
    # corrupted constants must be caught by the admissibility check
    assert main(["verify-paper", "--only", "cd_tables", "--cd", "7:1,1"]) == 1
    assert "cd_tables" in capsys.readouterr().err
    with pytest.raises(KeyError):
        replay_claims(["nonexistent"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "thuemeasure", "certify", "--n", "7", "--t", "-39", "--x", "3"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and "kappa <" in proc.stdout
