"""Acceptance criteria, each run at its stated tolerance.

One ``CRITERION n: PASS|FAIL`` line per criterion is printed in the pytest
terminal summary (and directly when run as a script).  The full suite is run
once in-process through the CLI, which also gives per-check wall times, and
once more in a subprocess for the determinism criterion.
"""

import json
import re
import subprocess
import sys
import time
from collections import defaultdict

import pytest

from mvhyper import cli, verify

LINES = []
SEED = "7"
ALL_M1_FAMILIES = {
    "MatrixNormal", "MatricvariateT", "HgGamma", "HgGammaInv", "HgBeta2", "HgBeta2Inv", "GenHg", "GenHgInv",
    "CompoundThm1", "CompoundThm2", "CompoundThm3", "CompoundThm4", "ScaleMixThm5",
}
M2_FAMILIES = {"HgGamma", "HgGammaInv", "HgBeta2", "HgBeta2Inv", "CompoundThm1", "CompoundThm2"}


@pytest.fixture(scope="module")
def full_run(tmp_path_factory, monkeypatch_module):
    out = tmp_path_factory.mktemp("acc") / "run1.json"
    captured = []
    real = verify.run_suite

    def capture(*args, **kwargs):
        reports = real(*args, **kwargs)
        captured.extend(reports)
        return reports

    monkeypatch_module.setattr(verify, "run_suite", capture)
    t = time.perf_counter()
    code = cli.run(["verify", "--suite", "all", "--seed", SEED, "--out", str(out), "--quiet"])
    elapsed = time.perf_counter() - t
    monkeypatch_module.setattr(verify, "run_suite", real)
    return {"code": code, "reports": captured, "path": out, "elapsed": elapsed}


@pytest.fixture(scope="module")
def monkeypatch_module():
    mp = pytest.MonkeyPatch()
    yield mp
    mp.undo()


def _select(reports, pattern):
    rx = re.compile(pattern)
    return [r for r in reports if rx.search(r.name)]


def _mc_ok(r):
    se = r.detail["standard_error"]
    return r.method in ("spd_mc", "matrix_mc") and r.passed and abs(r.lhs - r.rhs) <= 3 * se + 1e-300


def _record(n, ok, summary):
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'} {summary}"
    LINES.append(line)
    print(line)
    return ok


def _budget(reports):
    return sum(r.wall_time for r in reports)


def test_criterion_1_zonal_normalization(full_run):
    reps = _select(full_run["reports"], r"^zonal/sum_identity/")
    flt = [r for r in reps if "/float/" in r.name]
    exact = [r for r in reps if "/exact" in r.name]
    ok = (len(flt) == 1 and flt[0].tolerance <= 1e-9 and flt[0].evaluations >= 100 and flt[0].passed
          and len(exact) == 1 and exact[0].passed and exact[0].tolerance == 0.0
          and _budget(reps) <= 30)
    assert _record(1, ok, f"float err {flt[0].rel_error:.2e} <= 1e-9 over {flt[0].evaluations} Y; "
                          f"exact mismatches {exact[0].rel_error:g}; {_budget(reps):.1f}s <= 30s")


def test_criterion_2_closed_form_series(full_run):
    reps = _select(full_run["reports"], r"^hypergeom/(0F0_is_etr|1F0_is_det_power)$")
    ok = len(reps) == 2 and all(r.passed and r.tolerance <= 1e-8 for r in reps) and _budget(reps) <= 60
    worst = max(r.rel_error for r in reps)
    assert _record(2, ok, f"worst err {worst:.2e} <= 1e-8 at K = 30; {_budget(reps):.1f}s <= 60s")


def test_criterion_3_m1_reduction(full_run):
    reps = _select(full_run["reports"], r"^hypergeom/m1_matrix_vs_scalar$")
    ok = len(reps) == 1 and reps[0].passed and reps[0].tolerance <= 1e-12 and reps[0].evaluations >= 50
    assert _record(3, ok, f"err {reps[0].rel_error:.2e} <= 1e-12 on {reps[0].evaluations} draws")


def test_criterion_4_lemma1_corollary1(full_run):
    reps = _select(full_run["reports"], r"^(lemma1|corollary1)/")
    m1 = [r for r in reps if "/m=1/" in r.name]
    m2 = [r for r in reps if "/m=2/" in r.name]
    ok_m1 = all(r.passed and r.tolerance <= 1e-8 for r in m1)
    ok_m2 = all(_mc_ok(r) for r in m2)
    counts = all(len([r for r in m1 if r.name.startswith(p)]) >= 20 for p in ("lemma1", "corollary1")) and \
        all(len([r for r in m2 if r.name.startswith(p)]) >= 5 for p in ("lemma1", "corollary1"))
    ok = ok_m1 and ok_m2 and counts and _budget(reps) <= 300
    assert _record(4, ok, f"m=1 {sum(r.passed for r in m1)}/{len(m1)} <= 1e-8, "
                          f"m=2 {sum(_mc_ok(r) for r in m2)}/{len(m2)} within 3 SE; {_budget(reps):.1f}s <= 300s")


def test_criterion_5_mellin(full_run):
    reps = _select(full_run["reports"], r"^mellin_(2f1|1f1)/")
    lim = _select(full_run["reports"], r"^mellin_limit/")
    m1 = [r for r in reps if "/m=1/" in r.name]
    m2 = [r for r in reps if "/m=2/" in r.name]
    counts = all(len([r for r in m1 if r.name.startswith(p)]) >= 10 for p in ("mellin_2f1", "mellin_1f1")) and \
        all(len([r for r in m2 if r.name.startswith(p)]) >= 3 for p in ("mellin_2f1", "mellin_1f1"))
    limit_ok = bool(lim) and all(r.passed and r.evaluations == 3 for r in lim)
    ok = counts and all(r.passed and r.tolerance <= 1e-8 for r in m1) and all(_mc_ok(r) for r in m2) and limit_ok
    assert _record(5, ok, f"m=1 {sum(r.passed for r in m1)}/{len(m1)} <= 1e-8, m=2 "
                          f"{sum(_mc_ok(r) for r in m2)}/{len(m2)} within 3 SE, limit monotone {limit_ok}")


def test_criterion_6_normalization(full_run):
    reps = _select(full_run["reports"], r"^normalization/")
    m1 = [r for r in reps if r.name.endswith("/m=1")]
    m2 = [r for r in reps if r.name.endswith("/m=2")]
    fam = lambda r: r.name.split("/")[1]
    ok_m1 = all(r.passed and r.tolerance <= 1e-6 for r in m1) and {fam(r) for r in m1} >= ALL_M1_FAMILIES
    ok_m2 = all(_mc_ok(r) for r in m2) and {fam(r) for r in m2} >= M2_FAMILIES
    assert _record(6, ok_m1 and ok_m2, f"m=1 {sum(r.passed for r in m1)}/{len(m1)} <= 1e-6 over "
                                       f"{len({fam(r) for r in m1})} families, m=2 "
                                       f"{sum(_mc_ok(r) for r in m2)}/{len(m2)} within 3 SE")


def test_criterion_7_compound(full_run):
    rs = full_run["reports"]
    t = _select(rs, r"^thm1_vs_t/")
    mix = _select(rs, r"^compound_mixture/")
    eq = _select(rs, r"^thm5_equals_thm1/")
    ks = _select(rs, r"^ks/")
    ok_t = {r.name.split("/")[1] + r.name.split("/")[2] for r in t} >= {"m=1n=1", "m=2n=1"} and \
        all(r.passed and r.tolerance <= 1e-9 and r.evaluations >= 20 for r in t)
    thms = {r.name.split("/")[1] for r in mix}
    ok_mix = thms >= {"thm1", "thm2", "thm4"} and all(r.passed and r.tolerance <= 1e-5 for r in mix)
    ok_eq = bool(eq) and all(r.passed and r.tolerance == 0 for r in eq)
    ok_ks = len(ks) >= 4 and all(r.passed and r.detail["n"] >= 100_000 and r.detail["p_value"] >= 0.01 for r in ks)
    ok = ok_t and ok_mix and ok_eq and ok_ks
    assert _record(7, ok, f"T identity {ok_t}, mixtures {sum(r.passed for r in mix)}/{len(mix)}, "
                          f"thm5==thm1 {ok_eq}, KS {sum(r.passed for r in ks)}/{len(ks)} at alpha 0.01")


def test_criterion_8_transformations(full_run):
    rs = full_run["reports"]
    kum = _select(rs, r"^hypergeom/(kummer|euler)_relation$")
    thm4 = _select(rs, r"^thm4_direct_vs_euler/")
    ok = len(kum) == 2 and all(r.passed and r.tolerance <= 1e-8 and r.evaluations >= 20 for r in kum) and \
        bool(thm4) and all(r.passed and r.tolerance <= 1e-7 for r in thm4)
    assert _record(8, ok, f"Kummer/Euler worst {max(r.rel_error for r in kum):.2e} <= 1e-8, "
                          f"Thm4 forms worst {max(r.rel_error for r in thm4):.2e} <= 1e-7")


def test_criterion_9_determinism(full_run, tmp_path):
    second = tmp_path / "run2.json"
    # same argv as the first run except the output path, which the header records
    first_doc = json.loads(full_run["path"].read_text())
    t = time.perf_counter()
    res = subprocess.run([sys.executable, "-m", "mvhyper", "verify", "--suite", "all", "--seed", SEED,
                          "--out", str(second), "--quiet"], capture_output=True, text=True)
    elapsed = time.perf_counter() - t
    second_doc = json.loads(second.read_text())
    for doc in (first_doc, second_doc):
        doc["header"].pop("argv")
    identical = json.dumps(first_doc, sort_keys=True) == json.dumps(second_doc, sort_keys=True)
    body_identical = full_run["path"].read_text().replace(str(full_run["path"]), "OUT") == \
        second.read_text().replace(str(second), "OUT")
    ok = full_run["code"] == 0 and res.returncode == 0 and identical and body_identical and \
        max(elapsed, full_run["elapsed"]) <= 15 * 60
    assert _record(9, ok, f"byte-identical {body_identical}, exit codes {full_run['code']}/{res.returncode}, "
                          f"runs {full_run['elapsed']:.0f}s and {elapsed:.0f}s <= 900s")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
