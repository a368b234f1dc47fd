import json
import pathlib

import pytest

import psifw

CONFIGS = pathlib.Path(__file__).resolve().parents[2] / "configs"


def load(name):
    return json.loads((CONFIGS / name).read_text())


def test_worked_example_level_one():
    report = psifw.firework(load("worked_example.json"))
    assert [len(l["points"]) for l in report["levels"]][:2] == [1, 7]
    lengths = sorted(int(p["tree"]["edges"][0]["length"]) for p in report["levels"][1]["points"])
    assert lengths == [200, 200, 200, 200, 400, 400, 500]
    assert report["checks"]["injectivity"] and report["checks"]["membership"]
    assert report["warnings"]


def test_degree_law_and_threads():
    cfg = load("psi_cubed_n6.json")
    a = psifw.firework(cfg, threads=1)
    b = psifw.firework(cfg, threads=4)
    assert a == b
    assert a["checks"]["degreeLaw"]["holds"]
    assert len(a["cycle"]) == 6


def test_min_profile():
    cfg = load("membership.json")
    out = psifw.min_profile(cfg["tree"], cfg["specs"][0])
    assert [v["value"] for v in out["minProfile"]["values"]] == ["300", "300", "699", "780"]
    assert out["exactlyTwice"]


def test_curves():
    cfg = load("p2_degeneration.json")
    assert psifw.trop_curve(cfg["curve"])["balanced"]
    assert psifw.ray_crossings(cfg["curve"], cfg["rays"]) == [1, 1, 1]
    bez = load("bezout.json")
    s = psifw.stable_intersection(bez["curve"], bez["intersect"], ("-1/2", "-1/10"))
    assert s["degree"] == "10"
    assert sorted(int(p["multiplicity"]) for p in s["points"]) == [1, 3, 3, 3]


def test_local_mult_and_lattice():
    cfg = load("mult.json")
    assert psifw.local_mult(cfg["starSigma"], cfg["sigma"], cfg["starTropX"]) == 2
    assert psifw.lattice_index([[2, 0], [0, 3]], 2) == 6
    assert psifw.lattice_index([[1, 0]], 2) is None


def test_errors_carry_kind():
    with pytest.raises(psifw.PsifwError) as info:
        psifw.firework({"n": 6, "classes": [{"S": [1, 2, 3], "i": 1, "j": 1}]})
    assert info.value.args[0] == "precondition"
    with pytest.raises(psifw.PsifwError) as info:
        psifw.firework("{")
    assert info.value.args[0] == "parse"
