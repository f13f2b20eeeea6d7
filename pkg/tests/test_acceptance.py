"""Acceptance suite: one test per criterion, each logging a pass/fail line."""
import itertools
import time

import numpy as np

from conicstab.combinat import (CONSISTENT, NOT_PSD, DetBlockSpec, classify_psd_binomial, classify_stable_binomial,
                                conjecture_search, det_support_analysis, determinant_exponents, is_jump_system,
                                lpm_build, random_support, validate_path)
from conicstab.corpus import (audit_sweep, lieb_sokal_triple, psd_binomial_instance, random_pd_integer,
                              random_psd_stable, random_stable, run_corpus, stable_binomial_instance,
                              violating_binomial_instance)
from conicstab.polycore import Polynomial, degree_in_direction
from conicstab.preservers import PreconditionError, _direction, lieb_sokal_transform, lift_pair
from conicstab.stabcheck import ConeSpec, check_psd_stability, check_stability, verify_witness
from conicstab.symmat import SymVarSpace, frobenius_initial_form, hadamard_scale, inversion_image, symbolic_determinant
from helpers import INIT3, W_NOT_PD, P, S
from oracles import brute_jump_system


def test_criterion_1_determinant_psd_stable(record):
    start = time.perf_counter()
    verdicts = {n: check_psd_stability(symbolic_determinant(n), trials=1000, seed=0) for n in (2, 3, 4)}
    elapsed = time.perf_counter() - start
    ok = all(v.clean and v.trials == 1000 for v in verdicts.values()) and elapsed < 30
    assert record(1, "det_n psd-stable, n = 2, 3, 4, 1000 trials", ok,
                  f"clean={[v.clean for v in verdicts.values()]}, {elapsed:.1f}s < 30s")


def test_criterion_2_initial_form_counterexample(record):
    init = frobenius_initial_form(symbolic_determinant(3), W_NOT_PD)
    exact = init == S(INIT3, 3) and all(c == int(c.real) for _, c in init.items())
    v = check_psd_stability(init, trials=200, seed=0)
    witness_ok = (not v.clean and np.array_equal(v.witness, 1j * np.eye(3)) and v.residual < 1e-12
                  and verify_witness(init, ConeSpec.psd(3), v.witness)[0])
    assert record(2, "init_W(det3) exact and vanishes at iI3", exact and witness_ok,
                  f"exact={exact}, witness=iI3 residual={v.residual}")


def test_criterion_3_pd_initial_forms(record):
    rng = np.random.default_rng(3)
    det3 = symbolic_determinant(3)
    clean, worst = 0, 0.0
    for k in range(20):
        W = random_pd_integer(rng, 3)
        assert np.linalg.eigvalsh(W).min() > 0
        g = frobenius_initial_form(det3, W.tolist())
        clean += check_psd_stability(g, trials=500, seed=k).clean
        h = hadamard_scale(det3, W.tolist(), 1e6)
        worst = max(worst, max(abs(h.coeff(e) - g.coeff(e)) for e in h.support() | g.support()))
    ok = clean == 20 and worst <= 1e-5
    assert record(3, "PD initial forms of det3 clean; Hadamard limit", ok,
                  f"{clean}/20 clean at 500 trials, max deviation {worst:.2e} <= 1e-5")


def test_criterion_4_inversion(record):
    det2 = symbolic_determinant(2)
    exact = inversion_image(det2) == det2
    rng = np.random.default_rng(4)
    images_clean, inputs = 0, 0
    while inputs < 20:
        f = random_psd_stable(rng, 2 + inputs % 2, kinds=(0, 2))
        if not check_psd_stability(f, trials=100, seed=inputs).clean:
            continue
        images_clean += check_psd_stability(inversion_image(f), trials=500, seed=inputs).clean
        inputs += 1
    ok = exact and images_clean == 20
    assert record(4, "inversion image of det2 and of clean inputs", ok,
                  f"det2 fixed={exact}, {images_clean}/20 images clean at 500 trials")


def test_criterion_5_binomials(record):
    rng = np.random.default_rng(5)
    unclean = 0
    for form in ("form_a", "form_b", "form_c"):
        for k in range(50):
            f = stable_binomial_instance(rng, form)
            (a, ca), (b, cb) = sorted(f.items())
            assert classify_stable_binomial(a, b, ca, cb).form == form
            unclean += not check_stability(f, trials=200, seed=k).clean
    missed = 0
    for k in range(50):
        f = violating_binomial_instance(rng)
        (a, ca), (b, cb) = sorted(f.items())
        assert not classify_stable_binomial(a, b, ca, cb).consistent
        v = check_stability(f, trials=200, seed=k)
        missed += v.clean
    disagreements, tally = 0, {}
    for k in range(100):
        f = psd_binomial_instance(rng, 3 if k % 2 else 2)
        verdict = classify_psd_binomial(f).verdict
        clean = check_psd_stability(f, trials=200, seed=k).clean
        tally[(verdict, clean)] = tally.get((verdict, clean), 0) + 1
        disagreements += verdict == NOT_PSD and clean
    ok = unclean == 0 and missed == 0 and disagreements == 0
    assert record(5, "binomial classifications vs falsifier", ok,
                  f"stable forms unclean {unclean}/150, violations missed {missed}/50, "
                  f"psd disagreements {disagreements}/100, tally {sorted(tally.items())}")


def test_criterion_6_jump_systems(record):
    rng = np.random.default_rng(6)
    agree = sum(is_jump_system(F).ok == brute_jump_system(F)
                for F in (random_support(rng, 2 + k % 2, int(rng.integers(1, 9))) for k in range(200)))
    products, jumps = 0, 0
    while products < 100:
        f = random_stable(rng, 2 + products % 3)
        if not check_stability(f, trials=100, seed=products).clean:
            continue
        products += 1
        jumps += is_jump_system(f.support()).ok
    det_ok = 0
    # products of block determinants and stable linear forms in 1x1 blocks
    specs = [DetBlockSpec((2, 1), {(1, 1): 1, (1, 0): 1}),
             DetBlockSpec((2, 1, 1), {(1, 2, 0): 1, (1, 1, 0): 2, (1, 1, 1): 1, (1, 0, 1): 2}),
             DetBlockSpec((1, 1, 1), {(2, 0, 0): 1, (1, 0, 0): 1, (1, 1, 0): 1, (0, 1, 0): 1,
                                      (1, 0, 1): 1, (0, 0, 1): 1}),
             DetBlockSpec((2, 2), {(2, 1): 1}),
             DetBlockSpec((3, 1), {(1, 1): 1, (1, 0): 3})]
    for spec in specs:
        rep = det_support_analysis(spec)
        v = check_psd_stability(spec.polynomial(), trials=100, seed=0)
        det_ok += rep.jump.ok and brute_jump_system(rep.residual_support) and rep.verdict == CONSISTENT and v.clean
    ok = agree == 200 and jumps == 100 and det_ok == len(specs)
    assert record(6, "jump systems", ok,
                  f"brute-force agreement {agree}/200, clean supports {jumps}/100, det supports {det_ok}/{len(specs)}")


def test_criterion_7_conjecture(record):
    f = S("z11 + z22 - 2*z12", 3) * S("z11*z33 - z13^2", 3)
    beta = next(iter(S("z12*z13^2", 3).support()))
    res = conjecture_search(f, beta)
    worked = (res.found and len(res.path.steps) == 2 and res.path.kinds == ["double", "transposition"]
             and res.path.to_dict(SymVarSpace(3))["path"] == ["z12*z13^2", "z11*z13^2", "z11^2*z33"])
    det_ok = all(conjecture_search(symbolic_determinant(n), b, ["transposition"]).found
                 for n in (2, 3, 4) for b in determinant_exponents(n))
    rng = np.random.default_rng(7)
    lpm_ok, tried = 0, 0
    subsets = [frozenset(J) for r in range(4) for J in itertools.combinations(range(3), r)]
    while tried < 20:
        coeffs = {J: float(rng.uniform(0.5, 2)) for J in subsets if rng.random() < 0.6}
        f = lpm_build(3, coeffs)
        if f.is_zero() or f.is_constant():
            continue
        tried += 1
        results = [conjecture_search(f, b) for b in f.support()]
        lpm_ok += all(r.found and validate_path(f, r.path) for r in results)
    ok = worked and det_ok and lpm_ok == 20
    assert record(7, "conjecture machinery", ok,
                  f"worked path {worked}, det_n transpositions {det_ok}, lpm {lpm_ok}/20")


def test_criterion_8_audit_soundness(record):
    count, failures, licensed = 0, 0, 0
    for rep in audit_sweep():
        count += 1
        licensed += rep.licensed
        failures += not rep.agreement
    corpus = run_corpus(trials=200, seed=0)
    corpus_failed = [r["key"] for r in corpus if not r["passed"]]
    ok = count >= 500 and failures == 0 and not corpus_failed
    assert record(8, "preserver audit soundness", ok,
                  f"{count} applications ({licensed} licensed), {failures} clean-in/counterexample-out, "
                  f"corpus {len(corpus) - len(corpus_failed)}/{len(corpus)} passed")


def test_criterion_9_lieb_sokal(record):
    rng = np.random.default_rng(9)
    good, used = 0, 0
    for k in range(30):
        kind = ("vector", "polyhedral", "psd")[k % 3]
        t = lieb_sokal_triple(rng, kind, 3 if kind != "psd" else 2 + k % 2)
        assert check_stability(lift_pair(t.g, t.f), t.cone.lift(), trials=200, seed=k).clean
        assert degree_in_direction(t.f, _direction(t.f, t.v)) <= 1
        out = lieb_sokal_transform(t.g, t.f, t.v)
        used += 1
        good += out.is_zero() or check_stability(out, t.cone, trials=200, seed=k).clean
    rejected = 0
    for f, v in ((P("z1^2 + z2"), [1, 0]), (S("z11*z22 - z12^2", 2), np.eye(2)),
                 (Polynomial(3, {(2, 0, 0): 1, (0, 1, 1): 1}), [1, 1, 0])):
        try:
            lieb_sokal_transform(Polynomial.zero(f.nvars), f, v)
        except PreconditionError as exc:
            rejected += exc.measured == 2
    ok = good == used == 30 and rejected == 3
    assert record(9, "conic Lieb-Sokal", ok, f"{good}/30 outputs clean or zero, rho = 2 rejected {rejected}/3")
