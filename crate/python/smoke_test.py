#!/usr/bin/env python3
"""Smoke test for the decostab_py extension module.

Builds are looked up in ../target/{release,debug}; run
`cargo build -p decostab-py` (or --release) first, then `python3
python/smoke_test.py`.
"""

import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    for profile in ("release", "debug"):
        built = ROOT / "target" / profile / "libdecostab_py.so"
        if built.exists():
            staging = pathlib.Path(tempfile.mkdtemp(prefix="decostab_py_"))
            shutil.copy2(built, staging / "decostab_py.so")
            sys.path.insert(0, str(staging))
            import decostab_py

            return decostab_py
    sys.exit("build the extension first: cargo build -p decostab-py")


ds = load_module()

WORKED = {
    "schema_version": "1",
    "bundle": {
        "rank": 2,
        "degree": 0,
        "genus": 2,
        "dim_r": 2,
        "decoration": {"a": 2, "b": 1, "c": 0, "deg_l": 0, "deg_d": 0},
        "catalog": [
            {
                "id": "F",
                "rank": 1,
                "degree": 0,
                "qdim": 1,
                "beta_flag": False,
                "higgs_flag": False,
            }
        ],
        "relations": [],
        "profile": {"kind": "kappa", "kappa": {"F": 1}, "global_epsilon": True},
    },
}


def with_kappa(value):
    doc = json.loads(json.dumps(WORKED))
    doc["bundle"]["profile"]["kappa"]["F"] = value
    return json.dumps(doc)


# plain helpers
assert ds.hilbert(2, 0, 2, 5) == 8
assert ds.decorated_hilbert(2, 0, 2, 2, 2, "1/1", True, 5) == "4/1"
assert ds.special_weights(4, 2) == [-2, -2, 2, 2]
assert ds.mu_hilbert_mumford([-2, 1, 1], [0, 2, 3, 4]) == 2
assert ds.gamma_vector([1, 2], ["1/1", "1/1"], 3) == ["-3/1", "0/1", "3/1"]
assert ds.boundedness_constants(1, 1, 2, 0) == ("-2/1", "3/1")
assert ds.delta_threshold("-2/1", 2, "1/1") == "4/1"
assert ds.parabolic_degree(2, 0, 2) == "-2/1"
assert ds.nuple_reduce(2, [2, 3]) == (2, 1, 1, 5, 0)

# strictly semistable at δ = 1: P(F) = 0 and μ(F, E) = 0
model = ds.Model.from_json(with_kappa(1))
assert model.rank == 2 and model.a == 2
assert model.mu_subsheaf("F") == "0/1"
assert model.p_one_step("F") == "0/1"
verdict = model.check("dgpb", "1/1")
assert verdict["verdict"] == "SEMISTABLE", verdict
assert verdict["margin"] == "0/1"
assert verdict["witness"][0]["id"] == "F"

# κ(F) = 0 destabilizes
unstable = ds.Model.from_json(with_kappa(0))
verdict = unstable.check("dgpb", "1/1")
assert verdict["verdict"] == "UNSTABLE" and verdict["margin"] == "-2/1"
assert unstable.check("fr", "1/1")["witness"] == "F"

# Jordan-Hölder of the strictly semistable direct sum
direct_sum = json.loads(json.dumps(WORKED))
direct_sum["bundle"].update({"degree": -2, "dim_r": 1})
direct_sum["bundle"]["catalog"] = [
    {"id": "F1", "rank": 1, "degree": -1, "qdim": 0, "beta_flag": False, "higgs_flag": False},
    {"id": "F2", "rank": 1, "degree": -1, "qdim": 1, "beta_flag": False, "higgs_flag": False},
]
direct_sum["bundle"]["profile"] = {
    "kind": "kappa",
    "kappa": {"F1": 2, "F2": 1},
    "global_epsilon": True,
}
jh = ds.Model.from_json(json.dumps(direct_sum)).jordan_holder("1/2")
assert jh["slope"] == "-2/1"
assert sorted(jh["factors"]) == [(1, -1, 0, 1), (1, -1, 1, 0)], jh

# GIT worked instance: κ(F) = 2 gives m0 = 5, l0 = 10, ratios (5/2, 5/2)
git = ds.Model.from_json(with_kappa(2)).git_report()
assert git["m"] == 5 and git["l_samples"][0] == 10
assert git["n2_over_n1"] == "5/2" and git["n3_over_n1"] == "5/2"
assert git["all_agree"] and git["point_verdict"] == "STABLE"

# a quick exhaustive suite
checked, violations = ds.verify_suite("fr", r_max=2, d_max=1, a_max=2)
assert checked > 0 and violations == 0, (checked, violations)

print(f"smoke OK ({checked} fr checks clean)")
