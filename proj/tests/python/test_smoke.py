import json

import pytest

import olkit


def test_step_function_roundtrip():
    f = olkit.StepFunction([0, 0.25, 1], [1, 0.5])
    assert f.cells() == 2
    assert f.domain_end() == 1
    assert f.value_at(0.1) == 1
    assert f.value_at(0.5) == 0.5
    assert f.value_at(2.0) == 0
    parsed = json.loads(repr(f))
    assert parsed["breaks"] == [0, 0.25, 1]


def test_rearrange_sorts_and_preserves_mass():
    f = olkit.StepFunction([0, 0.25, 0.5, 1], [0.5, 1.5, 0.25])
    g = olkit.rearrange(f)
    assert list(g.values) == sorted(g.values, reverse=True)
    assert olkit.integrate(f) == olkit.integrate(g)
    assert olkit.submajorizes(f, g) and olkit.submajorizes(g, f)


def test_norms_on_known_point():
    phi = olkit.OrliczFunction.power(2)
    w = olkit.Weight([0, 1], [1])
    chi = olkit.StepFunction.indicator(1, 0, 1)
    lux = olkit.luxemburg_norm(phi, w, chi, olkit.Space.M)
    assert lux.value == pytest.approx(1.0, abs=1e-10)
    orl = olkit.orlicz_norm(phi, w, chi, olkit.Space.M)
    assert orl.value == pytest.approx(2.0, abs=1e-10)
    assert orl.kind == olkit.OrliczNormKind.attained
    assert orl.k.k_star == pytest.approx(1.0, abs=1e-10)
    assert orl.k.k_double_star == pytest.approx(1.0, abs=1e-10)


def test_level_and_crosscheck():
    f = olkit.StepFunction([0, 0.25, 0.75, 1], [0.25, 1, 0.5])
    w = olkit.Weight([0, 0.5, 1], [2, 1])
    dec = olkit.halperin_level(f, w)
    ratios = [dec.level.value_at(t) / w.fn().value_at(t) for t in (0.1, 0.3, 0.6, 0.9)]
    assert all(a >= b - 1e-15 for a, b in zip(ratios, ratios[1:]))
    assert olkit.crosscheck_level(f, w).ok


def test_modulars_agree_on_decreasing_input():
    phi = olkit.OrliczFunction.power(2)
    w = olkit.Weight([0, 1], [1])
    chi = olkit.StepFunction.indicator(1, 0, 1)
    assert olkit.rho_modular(phi, w, chi) == pytest.approx(1.0)
    assert olkit.q_modular(phi, w, chi) == pytest.approx(1.0)
    p = olkit.p_modular(phi, w, chi, olkit.PMode.via_q)
    assert p.value == pytest.approx(1.0, abs=1e-9)


def test_duality_chain():
    phi = olkit.OrliczFunction.power(2)
    w = olkit.Weight([0, 1], [1])
    f = olkit.StepFunction([0, 0.5, 1], [1, 0.5])
    g = olkit.StepFunction.indicator(0.75, 0, 0.5)
    rep = olkit.holder_audit(phi, w, f, g)
    assert rep.holds
    cert = olkit.dual_norm_oracle(phi, w, f, budget=8)
    orl = olkit.orlicz_norm(phi, w, f, olkit.Space.M)
    assert cert.value <= orl.value + 1e-9
    assert cert.witness_modular <= 1 + 1e-9


def test_functional_norm_matches_dual_luxemburg():
    phi = olkit.OrliczFunction.power(2)
    w = olkit.Weight([0, 1], [1])
    chi = olkit.StepFunction.indicator(1, 0, 1)
    got = olkit.functional_norm(phi, w, chi)
    want = olkit.luxemburg_norm(phi.complementary(), w, chi, olkit.Space.M).value
    assert got == pytest.approx(want, abs=1e-8)


def test_delta2_probe_findings():
    assert olkit.delta2_probe(olkit.OrliczFunction.power(2), 8, 1e-3, 1e3, 100).pass_
    rep = olkit.delta2_probe(olkit.OrliczFunction.exp_n(), 8, 1, 100, 200)
    assert not rep.pass_
    assert rep.witness is not None


def test_pathology_family():
    phi = olkit.OrliczFunction.exp_n()
    w = olkit.Weight([0, 1], [1])
    ws = olkit.delta2_witness_sequence(phi, 10, lo=2, hi=1e6)
    assert ws.complete
    fam = olkit.build_disjoint_family(phi, w, ws.u, 2, 5)
    rep = olkit.verify_family(fam, 1.5, 50)
    assert rep.norm_in_window
    assert len(rep.q_blocks) == 2


def test_suite_smoke():
    rep = olkit.run_suite(42, 8)
    assert rep.all_passed()
    names = olkit.suite_check_names()
    assert len(names) == len(rep.checks)
    assert [c.name for c in rep.checks] == names
