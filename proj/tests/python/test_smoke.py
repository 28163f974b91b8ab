import json
import os
import subprocess
from fractions import Fraction
from pathlib import Path

import pytest

import parazone as pz

DATA = Path(os.environ.get("PARAZONE_TEST_DATA", Path(__file__).resolve().parent.parent / "data"))
CLI = os.environ.get("PARAZONE_CLI")


def test_generator_listing():
    assert str(pz.hart_sharir(2, 2)) == "(12)1(34)313424"
    s = pz.hart_sharir(3, 2)
    assert len(s) == pz.hs_size(3, 2)["length"] == 57
    assert len(s.blocks) == 8
    assert pz.seq_from_json(s.to_json()) == s


def test_invariants_and_budget():
    checks = pz.hs_invariants(pz.hart_sharir(3, 3))
    assert checks and all(v is True for v in checks.values())
    assert not pz.hs_size(7, 2)["feasible"]
    with pytest.raises(pz.BudgetExceeded):
        pz.hart_sharir(7, 2)
    with pytest.raises(pz.Error):
        pz.hart_sharir(0, 1)


def test_patterns():
    assert pz.is_ds_order3("abab")
    assert not pz.is_ds_order3("ababa")
    w = pz.contains_isomorphic("abcab", "aba")
    assert w is not None and len(w["positions"]) == 3
    assert pz.contains_isomorphic("abab", "abba") is None
    assert pz.structurally_contains(pz.hart_sharir(2, 3), pz.hart_sharir(2, 2), [1, 3]) is not None
    n, witness = pz.max_ds_length(["ababa"], 3)
    assert n == 8 and len(witness) == 8


def test_endpoint_sequence():
    assert pz.endpoint_seq("abab") == "L:a L:b R:a R:b"


def test_geometry():
    assert pz.parabola_ratio(0, 1, 2, 4)[:2] == (Fraction(1), Fraction(2))
    p, q, r, s = pz.parabola_ratio(Fraction(1, 3), 2, 5, 11)
    assert p * s == q * r
    tri = [(0, 10), (1, 11), (2, 16)]
    assert pz.intersection_order_class(tri) == "concave"
    prof = pz.ratio_profile(tri)
    assert prof["gamma"] == 8 and all(prof["claims"])
    assert not pz.is_wide(tri)
    assert pz.map_circle_to_parabola(0, -1) == (0, 0)


def test_zone():
    z = pz.zone_run([(0, 2), (1, 3)])
    assert z["s_text"] == "a b a b"
    assert z["sprime_text"] == "a b′ b a a″ b"
    assert z["complexity"] == 6
    assert pz.general_position_issues([(0, 3), (1, 2)])
    with pytest.raises(pz.InvalidInput):
        pz.zone_run(json.loads((DATA / "concurrent.json").read_text())["chords"])


def test_configs_and_search():
    thm = pz.build_config("thm31")
    assert thm.segment_count == 11
    assert pz.forcing_certificate(pz.parse_seq((DATA / "corollary_u.txt").read_text()), thm) == (True, "")
    x = pz.build_config("X")
    assert x.segment_count == 173
    assert pz.config_from_json(x.to_json()).to_json() == x.to_json()
    f3 = pz.build_config("F", m=3)
    found = pz.search(f3, budget=10000, seed=7)
    assert found["found"]
    assert pz.search(f3, budget=2000, seed=3, jobs=1) == pz.search(f3, budget=2000, seed=3, jobs=2)
    assert not pz.search(thm, budget=2000, seed=1)["found"]


def test_run_cli_in_process():
    status, out, _ = pz.run_cli(["hs", "gen", "--k", "2", "--m", "2"])
    assert status == 0 and out == "(12)1(34)313424\n"
    assert pz.run_cli(["frobnicate"])[0] == 2


@pytest.mark.skipif(not CLI, reason="PARAZONE_CLI not set")
def test_cli_binary(tmp_path):
    out = tmp_path / "s.json"
    res = subprocess.run([CLI, "hs", "gen", "--k", "3", "--m", "2", "--json", "--out", str(out)],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert pz.seq_from_json(json.loads(out.read_text())) == pz.hart_sharir(3, 2)
    manifest = json.loads((tmp_path / "s.json.manifest.json").read_text())
    assert manifest["exit_status"] == 0
