"""Congruence-tracking cobar calculator: arithmetic, d-identities, chains."""

from fractions import Fraction
from math import comb

import pytest

from stab3.bp_cobar import (
    BPElement,
    BPStructure,
    InsufficientPrecisionError,
    TPoly,
    V_ZERO,
    ZERO_IDEAL,
    b1k,
    b20,
    b20_mod_p_v1,
    d_cobar,
    delta_chain_displays,
    ext_masks_mod_p,
    ideal,
    masks_diff_mod_p,
    project_to_exterior,
    t1_mon,
    t2_mon,
    tpoly_binom,
    verify_beta_chain,
    verify_d_basics,
    verify_dd,
    verify_gamma_chain,
)
from stab3.exterior import ExteriorAlgebra

P = 7


# -- TPoly -------------------------------------------------------------------


def test_tpoly_arithmetic_and_valuation():
    t = TPoly.t()
    q = t * t - 3 * t + TPoly.const(2)
    assert q.eval_at(1) == 0 and q.eval_at(5) == 12
    assert TPoly.const(Fraction(49, 3)).p_valuation(7) == 2
    assert TPoly.const(Fraction(3, 7)).p_valuation(7) == -1
    assert TPoly().p_valuation(7) is None
    assert (q - q).is_zero()


def test_tpoly_mod_p():
    q = TPoly({0: 10, 1: Fraction(1, 2)})
    assert q.mod_p(7) == {0: 3, 1: 4}  # 1/2 = 4 mod 7
    with pytest.raises(InsufficientPrecisionError):
        TPoly.const(Fraction(1, 7)).mod_p(7)


def test_tpoly_binom_matches_binomials():
    # concrete exponent: C(10, 3)
    assert tpoly_binom((10, 0), 3).eval_at(0) == comb(10, 3)
    # symbolic exponent t: evaluate C(t, 2) at several integers
    c = tpoly_binom((0, 1), 2)
    for t in range(2, 9):
        assert c.eval_at(t) == comb(t, 2)


# -- Ideals ------------------------------------------------------------------


def test_ideal_membership_and_containment():
    i1 = ideal((1, 0, 0), (0, 2, 0))
    assert i1.contains_profile(1, 0, 0)
    assert i1.contains_profile(0, 3, 0)
    assert not i1.contains_profile(0, 1, 5)
    i2 = ideal((2, 0, 0), (0, 2, 1))
    assert i1.contains_ideal(i2)
    assert not i2.contains_ideal(i1)
    assert not ZERO_IDEAL.contains_profile(9, 9, 9)


# -- BPElement ---------------------------------------------------------------


def test_element_ring_ops_and_homogeneity():
    x = BPElement.cochain(P, t1_mon(1))
    y = BPElement.cochain(P, t1_mon(P))
    z = x.concat(y)
    assert list(z.terms) == [(V_ZERO, (t1_mon(1), t1_mon(P)))]
    assert (x + y - x - y).is_zero()
    assert x.is_homogeneous() and not (x + y).is_homogeneous()


def test_divide_v_requires_exponent():
    x = BPElement.v_power(P, e1=2)
    assert x.divide_v(1, 2).terms == BPElement.v_power(P).terms
    with pytest.raises(InsufficientPrecisionError):
        x.divide_v(1, 3)


def test_reduce_mod_records_audit():
    x = BPElement.v_power(P, e1=1, coeff=P) + BPElement.cochain(P, t1_mon(1))
    audit = []
    r = x.reduce_mod(ideal((1, 1, 0)), audit, "test")
    assert len(r.terms) == 1 and len(audit) == 1
    assert audit[0]["reason"] == "test"


def test_symbolic_v_exponent_binomials():
    # d(v2^t) mod (p, v1^3) has coefficients t and C(t, 2)
    st = BPStructure(P)
    dx = d_cobar(BPElement.v_power(P, e2=(0, 1)), ideal((1, 0, 0), (0, 3, 0)), st)
    coeffs = sorted(repr(c) for c in dx.terms.values())
    assert "1*t^1" in coeffs
    # specialize at t = 3 and compare with d(v2^3)
    concrete = d_cobar(BPElement.v_power(P, e2=3), ideal((1, 0, 0), (0, 3, 0)), st)
    diff = dx.eval_t(3) - concrete
    assert diff.reduce_mod(ideal((1, 0, 0), (0, 3, 0))).is_zero()


# -- b-classes ---------------------------------------------------------------


def test_b1k_coefficients_and_cocycle():
    b = b1k(P, 0)
    key = (V_ZERO, (t1_mon(1), t1_mon(P - 1)))
    assert b.terms[key] == TPoly.const(Fraction(comb(P, 1), P))
    assert d_cobar(b, ideal((1, 0, 0)), BPStructure(P)).reduce_mod(
        ideal((1, 0, 0))
    ).is_zero()


def test_b20_is_p_integral_and_matches_multinomial_form():
    x = b20(P)
    for c in x.terms.values():
        assert c.p_valuation(P) >= 0
    diff = x.reduce_mod(ideal((1, 0, 0), (0, 1, 0))) - b20_mod_p_v1(P)
    assert all(not c.mod_p(P) for c in diff.terms.values())


# -- differential identities -------------------------------------------------


def test_d_basics_report():
    report = verify_d_basics(P)
    assert len(report) == 9
    assert all(r["status"] in ("exact", "pass") for r in report)


def test_dd_report():
    report = verify_dd(P)
    assert len(report) == 7
    assert all(r["status"] == "pass" for r in report)


def test_d_t2p_exact_identity():
    st = BPStructure(P)
    x = BPElement(P, {(V_ZERO, (t2_mon(P),)): 1})
    dx = d_cobar(x, ZERO_IDEAL, st)
    v1p = ((P, 0), (0, 0), (0, 0))
    expected = BPElement(P, {(V_ZERO, (t1_mon(P), t1_mon(P**2))): -1})
    for key, c in b1k(P, 1).terms.items():
        expected = expected + BPElement(P, {(v1p, key[1]): c})
    expected = expected - b20(P, st).scale(P)
    assert (dx - expected).is_zero()


def test_validity_guard_raises_on_fine_context():
    # eta_R(v3) is not granted exactly; a zero context must be rejected
    with pytest.raises(InsufficientPrecisionError):
        d_cobar(BPElement.v_power(P, e3=1), ZERO_IDEAL, BPStructure(P))


# -- projection to the exterior model ----------------------------------------


def test_projection_of_b10_block():
    alg = ExteriorAlgebra(P)
    b0_ext = (
        alg.from_gen_names("h1", "h32")
        + alg.from_gen_names("h21", "h20")
        + alg.from_gen_names("h31", "h1")
    )
    img = project_to_exterior(-b1k(P, 0), P)
    assert not masks_diff_mod_p(img, ext_masks_mod_p(-b0_ext), P)


def test_projection_rejects_v1_content():
    with pytest.raises(InsufficientPrecisionError):
        project_to_exterior(BPElement.v_power(P, e1=1), P)


def test_projection_audits_junk():
    x = BPElement.cochain(P, (2, 1, 0))  # not a generator, not a known block
    audit = []
    img = project_to_exterior(x, P, audit)
    assert img == {}
    assert len(audit) == 1


# -- chains ------------------------------------------------------------------


def test_delta_chain_displays():
    chains = delta_chain_displays(P)
    assert [c["name"] for c in chains] == ["alpha_1", "beta_1", "beta_2", "beta_p/p"]
    assert [c["image"] for c in chains] == ["h0", "-b0", "2*k0 - 2*v2*b0", "-b1"]
    for c in chains:
        assert c["steps"]


def test_beta_chain_symbolic():
    rep = verify_beta_chain(P)
    assert rep["status"] == "pass"
    assert "t(t-1)" in rep["result"]


def test_gamma_chain_symbolic():
    rep = verify_gamma_chain(P)
    assert rep["status"] == "pass"
    assert rep["result"].startswith("-t(t^2-1)*l - t(t-1)*k1*zeta3")
    assert rep["projection_audit"]
