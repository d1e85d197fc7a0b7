"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import json
import random
import time
from pathlib import Path

from acceptance_log import record

from lgk.chevalley import build_chevalley, verify_chevalley, verify_commutes, verify_lattice_part, verify_opposite_pinning
from lgk.chidata import minus_one_preserves_orbits
from lgk.cli import main
from lgk.endofourier import (
    aut_compose,
    check_fixed_torus,
    compose_perms,
    contragredient_shift,
    fourier_forward,
    fourier_invert,
    precompose_inverse_perm,
    random_aut,
    random_lattice_action,
    random_table,
    sufficient_level,
    whittaker_shift,
)
from lgk.fixedgroup import build_fixed_datum, matrix_oracle, triality, verify_chevalley_on_fixed
from lgk.lattice import dot
from lgk.lembed import search_rcochains, trivial_rcochain, verify_chi_inv, verify_chi_inv_matrices
from lgk.models import LieModel, classical_model, check_tits_well_defined, realize
from lgk.rootdatum import build_from_type, diagram_automorphisms, dual, pinned_automorphism
from lgk.splitinv import run_splcng_suite, twisted_tori
from lgk.tits import inverse_section_identity_check
from lgk.torus import CoeffGroup, trivial_twist
from lgk.weyl import enumerate_group

N = 24
ISOS = ("sc", "adjoint")
FIXTURES = Path(__file__).parent / "fixtures"
CLASSICAL_UP_TO_4 = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4"]


def test_criterion_01_tits_sections():
    t0 = time.perf_counter()
    bad, words = [], 0
    for name in ["A1", "A2", "A3", "B2", "C2"]:
        for iso in ISOS:
            res = check_tits_well_defined(build_from_type(name, iso), N)
            words += res.witness["words"] if res.ok else 0
            if not res.ok:
                bad.append((name, iso, res.witness))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 10
    record(1, "Tits sections well defined", ok, f"{words} reduced words, {len(bad)} mismatches, {dt:.1f}s (< 10s)")
    assert ok, bad


def test_criterion_02_splcng():
    t0 = time.perf_counter()
    results = run_splcng_suite(seed=0, count=100)
    dt = time.perf_counter() - t0
    passed = sum(r.ok for _, r in results)
    types = sorted({inst.S.datum.cartan_type for inst, _ in results})
    orders = sorted({inst.S.order for inst, _ in results})
    ok = passed == 100 and dt < 30 and types == ["A2", "A3", "B2", "C2"] and orders == [2, 3]
    record(2, "rescaled splitting cochains agree", ok, f"{passed}/100 pass over {types}, orders {orders}, {dt:.1f}s (< 30s)")
    assert ok


def test_criterion_03_chi_inversion():
    t0 = time.perf_counter()
    fails = []
    trivial = 0
    for name in CLASSICAL_UP_TO_4:
        for iso in ISOS:
            d = build_from_type(name, iso)
            S = trivial_twist(d, CoeffGroup(N, ("x",)))
            trivial += 1
            if not verify_chi_inv(S, trivial_rcochain(S)):
                fails.append((name, iso, "trivial"))
    K = CoeffGroup(N, ("x",), 2, 1)
    cochains = matrices = 0
    for name in ["A1", "A2"]:
        for iso in ISOS:
            d = dual(build_from_type(name, iso))
            model = realize(d, N, {"x": 3}, rep="adjoint")
            C = build_chevalley(d, N)
            for S in twisted_tori(d, K):
                if S.w_gen.is_identity() and S.theta is None:
                    continue
                found = search_rcochains(S, 4)
                for k, r in enumerate(found):
                    cochains += 1
                    if not verify_chi_inv(S, r, C):
                        fails.append((name, iso, S.to_json(), k))
                # second route through matrices on the first cochain of each torus
                if found:
                    matrices += 1
                    if not verify_chi_inv_matrices(S, found[0], model, C):
                        fails.append((name, iso, S.to_json(), "matrix"))
    dt = time.perf_counter() - t0
    ok = not fails and dt < 60
    record(
        3,
        "chi-data inversion identity",
        ok,
        f"{trivial} trivial-Gamma data, {cochains} searched r-cochains ({matrices} matrix-checked), {len(fails)} failures, {dt:.1f}s (< 60s)",
    )
    assert ok, fails


def test_criterion_04_inverse_section():
    fails, count = [], 0
    for name in ["A1", "A2", "A3", "B2", "C2", "G2", "D4"]:
        for iso in ISOS:
            ws = enumerate_group(build_from_type(name, iso))
            for sign in (1, -1):
                count += len(ws)
                res = inverse_section_identity_check(ws, N, sign)
                if not res:
                    fails.append((name, iso, sign, res.witness))
    ok = not fails
    record(4, "inverse-section identity", ok, f"{count} (w, root of -1) cases, {len(fails)} failures")
    assert ok, fails


def test_criterion_05_chevalley():
    fails = []
    for name in ["A1", "A2", "A3", "B2", "C2", "D4"]:
        for iso in ISOS:
            d = build_from_type(name, iso)
            C = build_chevalley(d, N)
            lie = LieModel(d, classical_model(name[0], int(name[1:]), N))
            for label, res in [
                ("opposite", verify_opposite_pinning(C, lie)),
                ("commutes", verify_commutes(C, lie)),
                ("lattice", verify_lattice_part(C)),
                ("all", verify_chevalley(d, N)),
            ]:
                if not res:
                    fails.append((name, iso, label))
    ok = not fails
    record(5, "Chevalley involution", ok, f"12 data (A1-A3, B2, C2, D4 x sc/adjoint), {len(fails)} failures")
    assert ok, fails


def test_criterion_06_fixed_subgroups():
    notes, ok = [], True
    d = build_from_type("A3")
    fd = build_fixed_datum(d, pinned_automorphism(d, (2, 1, 0)))
    a3 = fd.type_name == "C2" and fd.cartan == ((2, -1), (-2, 2)) and fd.c == (1, 1) and matrix_oracle(fd).ok
    w = verify_chevalley_on_fixed(fd)
    ok &= a3 and w.ok
    notes.append(f"A3 flip -> {fd.type_name} c={list(fd.c)} witness={w.ok}")

    d = build_from_type("A2")
    fd = build_fixed_datum(d, pinned_automorphism(d, (1, 0)))
    r = fd.restricted
    pairing = dot(r.roots[r.simple[0]], r.coroots[r.simple[0]])
    a2 = len(r.simple) == 1 and fd.c == (2,) and pairing == 2 and matrix_oracle(fd).ok
    w = verify_chevalley_on_fixed(fd)
    ok &= a2 and w.ok
    notes.append(f"A2 flip -> rank {len(r.simple)} c={list(fd.c)} <a,H>={pairing} witness={w.ok}")

    d = build_from_type("D4")
    fd = build_fixed_datum(d, triality(d))
    d4 = fd.type_name == "G2" and matrix_oracle(fd).ok
    w = verify_chevalley_on_fixed(fd)
    ok &= d4 and w.ok
    notes.append(f"D4 triality -> {fd.type_name} witness={w.ok}")
    record(6, "fixed-point subgroups", ok, "; ".join(notes))
    assert ok


def test_criterion_07_fourier_engine():
    t0 = time.perf_counter()
    rng = random.Random(7)
    counts = [0, 0, 0]
    for _ in range(50):
        t = random_table(rng, 64)
        F = t.group.field
        theta = [F.rational(rng.randint(-9, 9)) for _ in range(t.group.order)]
        counts[0] += fourier_invert(t, fourier_forward(t, theta)) == theta
    for _ in range(50):
        t = random_table(rng, 64)
        a, b = rng.choice(t.characters), rng.choice(t.characters)
        counts[1] += compose_perms(whittaker_shift(t, a), whittaker_shift(t, b)) == whittaker_shift(t, a * b)
    for _ in range(50):
        t = random_table(rng, 64)
        c = random_aut(rng, t.group)
        p = contragredient_shift(t, c)
        counts[2] += compose_perms(p, p) == precompose_inverse_perm(t, aut_compose(c, c))
    dt = time.perf_counter() - t0
    ok = counts == [50, 50, 50] and dt < 10
    record(7, "endoscopic Fourier engine", ok, f"round trip {counts[0]}/50, Whittaker {counts[1]}/50, contragredient {counts[2]}/50, {dt:.1f}s (< 10s)")
    assert ok


def test_criterion_08_coinvariants():
    rng = random.Random(8)
    matched = 0
    orders = {2: 0, 3: 0}
    for k in range(50):
        order = 2 if k % 2 == 0 else 3
        L = random_lattice_action(rng, order)
        orders[order] += 1
        matched += check_fixed_torus(L, sufficient_level(L, 2)).ok
    ok = matched == 50
    record(8, "coinvariants vs brute force", ok, f"{matched}/50 match ({orders[2]} Z/2, {orders[3]} Z/3 actions)")
    assert ok


def test_criterion_09_orbit_negation():
    pairs, fails = 0, []
    for name in CLASSICAL_UP_TO_4 + ["G2"]:
        for iso in ISOS:
            d = build_from_type(name, iso)
            for th in diagram_automorphisms(d):
                pairs += 1
                if not minus_one_preserves_orbits(d, th):
                    fails.append((name, iso, th.perm))
    ok = not fails
    record(9, "negation preserves theta-orbits", ok, f"{pairs} (datum, theta) pairs, {len(fails)} failures")
    assert ok, fails


def test_criterion_10_cli_determinism(tmp_path):
    spec = str(FIXTURES / "determinism_spec.json")
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    codes = [main(["verify", "--spec", spec, "--seed", "5", "--out", str(a)]),
             main(["verify", "--spec", spec, "--seed", "5", "--out", str(b)])]
    same = a.read_bytes() == b.read_bytes()
    bad = main(["verify", "--spec", str(FIXTURES / "malformed_spec.json"), "--out", str(tmp_path / "c.json")])
    n = len(json.loads(a.read_text())["records"])
    ok = codes == [0, 0] and same and bad == 2 and not (tmp_path / "c.json").exists()
    record(10, "CLI determinism and exit codes", ok, f"{n} records byte-identical={same}, exit codes {codes}, malformed spec -> {bad}")
    assert ok
