"""Deciders, the periodicity test, condition X, and the classifier rules."""

import pytest

from twistlab.cocycles import TrivialCocycle, build_cocycle, similar_transform, CoboundaryFn
from twistlab.errors import SpecError
from twistlab.groups import get_group
from twistlab.phase import IrrationalBasis
from twistlab.regularity import is_regular_wrt_subgroup, is_sigma_regular
from twistlab.verdicts import (
    bitstream_periodic,
    check_condition_x,
    class_finite_certified,
    classify,
    decide_kleppner,
    decide_relative_kleppner,
)

BASIS = IrrationalBasis({"r": 0.3819660112501051})
R = {"rat": [0, 1], "irr": {"r": [1, 1]}}
ONE_MINUS_R = {"rat": [1, 1], "irr": {"r": [-1, 1]}}

SZ = get_group({"family": "sum_z"})
SZ2 = get_group({"family": "sum_z2"})
W = get_group({"family": "wreath", "base": "Z"})
L = get_group({"family": "wreath", "base": "Z2"})
FW = get_group({"family": "wreath", "base": "Z2", "acting": 3})
AN = get_group({"family": "zn_semidirect", "A": [[2, 1], [1, 1]]})
SAN = get_group({"family": "sanov"})
BS = get_group({"family": "bs_nn", "n": 2})
FZ = get_group({"family": "free_times_z"})
F2 = get_group({"family": "free", "rank": 2})


# -- bitstream periodicity ---------------------------------------------------


def test_periodicity_finite_nonempty():
    res = bitstream_periodic([1], [])
    assert not res.periodic


def test_periodicity_odd_support():
    res = bitstream_periodic([], [1, 0])
    assert res.periodic and res.period == 2


def test_periodicity_even_support():
    res = bitstream_periodic([], [0, 1])
    assert not res.periodic
    assert "0" in res.reason  # the zero-boundary obstruction


def test_periodicity_empty():
    res = bitstream_periodic([], [])
    assert res.periodic and res.period == 1


def test_periodicity_pre_consistency():
    # pre [1,0] matches the repeating block [1,0]: still the odd set
    assert bitstream_periodic([1, 0], [1, 0]).periodic
    # broken preperiod destroys pure periodicity
    assert not bitstream_periodic([0, 0], [1, 0]).periodic


def test_periodicity_longer_block():
    # block (1,1,0): symmetric? bit(3)=0, bit(1)=1 == bit(2)=1: periodic
    res = bitstream_periodic([], [1, 1, 0])
    assert res.periodic and res.period == 3
    # block (1,0,0): bit(1)=1 != bit(2)=0: mirror symmetry fails
    assert not bitstream_periodic([], [1, 0, 0]).periodic


# -- Kleppner ----------------------------------------------------------------


def test_kleppner_trivial_theta_witness_e0():
    sig = build_cocycle({"kind": "theta_diag", "diagonals": []}, SZ)
    v = decide_kleppner(SZ, sig)
    assert v.status == "refuted"
    assert v.witness == SZ.basis_element(0)


def test_kleppner_finite_bandwidth_rules():
    irr = build_cocycle({"kind": "theta_diag", "diagonals": [R]}, SZ, BASIS)
    assert decide_kleppner(SZ, irr).status == "certified"
    tors = build_cocycle({"kind": "theta_diag", "diagonals": [[1, 2], [1, 3]]}, SZ)
    v = decide_kleppner(SZ, tors)
    assert v.status == "refuted"
    assert v.witness == SZ.basis_element(0, 6)  # lcm of the torsion orders
    assert is_sigma_regular(tors, v.witness).is_regular_certified


def test_kleppner_prime_reciprocal():
    sig = build_cocycle({"kind": "theta_rule", "rule": "prime_reciprocal"}, SZ)
    assert decide_kleppner(SZ, sig).status == "certified"


def test_kleppner_period4_kernel_scan():
    sig = build_cocycle(
        {"kind": "theta_diag", "diagonals": [], "period": [R, [0, 1], ONE_MINUS_R, [0, 1]]},
        SZ,
        BASIS,
    )
    v = decide_kleppner(SZ, sig)
    assert v.status == "refuted"
    assert is_sigma_regular(sig, v.witness).is_regular_certified
    # candidate witnesses are validated and preferred
    e13 = SZ.element(((1, 1), (3, 1)))
    v2 = decide_kleppner(SZ, sig, candidates=[e13])
    assert v2.witness == e13
    # a bogus candidate is ignored, not trusted
    bogus = SZ.basis_element(0)
    v3 = decide_kleppner(SZ, sig, candidates=[bogus])
    assert v3.witness != bogus


def test_kleppner_bitstreams():
    non = build_cocycle({"kind": "bitstream", "pre": [1], "period": []}, SZ2)
    assert decide_kleppner(SZ2, non).status == "certified"
    per = build_cocycle({"kind": "bitstream", "pre": [], "period": [1, 0]}, SZ2)
    v = decide_kleppner(SZ2, per)
    assert v.status == "refuted" and v.witness == SZ2.element((0, 2))
    empty = build_cocycle({"kind": "bitstream", "pre": [], "period": []}, SZ2)
    v2 = decide_kleppner(SZ2, empty)
    assert v2.status == "refuted" and v2.witness == SZ2.basis_element(0)


def test_kleppner_bs_rules():
    lam3 = build_cocycle({"kind": "bs", "lambda": [1, 3]}, BS)
    v = decide_kleppner(BS, lam3)
    assert v.status == "refuted" and v.witness == BS.b_power(6)
    assert is_sigma_regular(lam3, v.witness).is_regular_certified
    assert class_finite_certified(v.witness)
    lam_irr = build_cocycle({"kind": "bs", "lambda": R}, BS, BASIS)
    assert decide_kleppner(BS, lam_irr).status == "certified"
    # order six interacts with n=2: smallest central regular power is b^6
    lam6 = build_cocycle({"kind": "bs", "lambda": [1, 6]}, BS)
    v6 = decide_kleppner(BS, lam6)
    assert v6.status == "refuted" and v6.witness == BS.b_power(6)


def test_kleppner_icc_families():
    for G, sig in [
        (W, build_cocycle({"kind": "lift", "base": {"kind": "theta_diag", "diagonals": []}}, W)),
        (SAN, build_cocycle({"kind": "sanov", "mu0": [1, 2], "mu1": [0, 1], "mu2": [0, 1]}, SAN)),
        (F2, TrivialCocycle(F2)),
        (AN, build_cocycle({"kind": "lift", "base": {"kind": "antisym_theta", "theta": [0, 1]}}, AN)),
    ]:
        assert decide_kleppner(G, sig).status == "certified"


def test_kleppner_similarity_invariant():
    lam3 = build_cocycle({"kind": "bs", "lambda": [1, 3]}, BS)
    twisted = similar_transform(lam3, CoboundaryFn.zero(BS))
    v = decide_kleppner(BS, twisted)
    assert v.status == "refuted" and v.witness == BS.b_power(6)


def test_kleppner_budget_monotone():
    sig = build_cocycle(
        {"kind": "theta_diag", "diagonals": [], "period": [R, [0, 1], ONE_MINUS_R, [0, 1]]},
        SZ,
        BASIS,
    )
    small = decide_kleppner(SZ, sig, radius=2)
    big = decide_kleppner(SZ, sig, radius=5)
    assert small.status == "refuted" and big.status == "refuted"
    # a certified verdict is budget-independent
    prime = build_cocycle({"kind": "theta_rule", "rule": "prime_reciprocal"}, SZ)
    assert decide_kleppner(SZ, prime, radius=0).status == "certified"


def test_kleppner_trivial_cocycle_on_bs_refuted_by_central_scan():
    sig = TrivialCocycle(BS)
    v = decide_kleppner(BS, sig, radius=4)
    assert v.status == "refuted"
    assert BS.is_central(v.witness)


def test_f2xz_kleppner():
    tors = build_cocycle({"kind": "f2xz", "mu": [1, 3], "nu": [1, 5]}, FZ)
    v = decide_kleppner(FZ, tors)
    assert v.status == "refuted" and v.witness == FZ.pair((), 15)
    non = build_cocycle({"kind": "f2xz", "mu": R, "nu": [0, 1]}, FZ, BASIS)
    assert decide_kleppner(FZ, non).status == "certified"


def test_finite_group_kleppner():
    v = decide_kleppner(FW, TrivialCocycle(FW))
    assert v.status == "refuted" and v.rule == "finite_exhaustive"


# -- relative Kleppner ---------------------------------------------------------


def test_relative_full_and_trivial():
    sig = TrivialCocycle(BS)
    assert decide_relative_kleppner(BS, "full", sig).status == "certified"
    v = decide_relative_kleppner(BS, "trivial", sig)
    assert v.status == "refuted" and v.witness is not None


def test_relative_wreath():
    lift = build_cocycle({"kind": "lift", "base": {"kind": "bitstream", "pre": [], "period": [1, 0]}}, L)
    assert decide_relative_kleppner(L, "base", lift).status == "certified"
    v = decide_relative_kleppner(FW, "base", TrivialCocycle(FW))
    assert v.status == "refuted"
    assert is_regular_wrt_subgroup(TrivialCocycle(FW), v.witness, "base").is_regular_certified


def test_relative_bs():
    lam3 = build_cocycle({"kind": "bs", "lambda": [1, 3]}, BS)
    v = decide_relative_kleppner(BS, "center", lam3)
    assert v.status == "refuted" and v.witness == BS.word("a a a")
    assert is_regular_wrt_subgroup(lam3, v.witness, "center").is_regular_certified
    lam_irr = build_cocycle({"kind": "bs", "lambda": R}, BS, BASIS)
    assert decide_relative_kleppner(BS, "center", lam_irr).status == "certified"


def test_relative_sanov_and_semidirect():
    ss = build_cocycle({"kind": "sanov", "mu0": [1, 2], "mu1": [1, 3], "mu2": [1, 5]}, SAN)
    assert decide_relative_kleppner(SAN, "base", ss).status == "certified"
    sa = build_cocycle({"kind": "lift", "base": {"kind": "antisym_theta", "theta": [1, 3]}}, AN)
    assert decide_relative_kleppner(AN, "base", sa).status == "certified"


def test_relative_f2xz_character_relations():
    # both torsion: a relation always exists
    tors = build_cocycle({"kind": "f2xz", "mu": [1, 3], "nu": [1, 5]}, FZ)
    v = decide_relative_kleppner(FZ, "z", tors)
    assert v.status == "refuted"
    assert is_regular_wrt_subgroup(tors, v.witness, "z").is_regular_certified
    # independent symbols: no integer relation
    basis2 = IrrationalBasis({"r": 0.3819660112501051, "s": 0.7071067811865476})
    indep = build_cocycle(
        {"kind": "f2xz", "mu": {"rat": [0, 1], "irr": {"r": [1, 1]}}, "nu": {"rat": [0, 1], "irr": {"s": [1, 1]}}},
        FZ,
        basis2,
    )
    assert decide_relative_kleppner(FZ, "z", indep).status == "certified"
    # equal irrational parts: the difference word is regular
    same = build_cocycle({"kind": "f2xz", "mu": R, "nu": R}, FZ, BASIS)
    v2 = decide_relative_kleppner(FZ, "z", same)
    assert v2.status == "refuted"
    assert is_regular_wrt_subgroup(same, v2.witness, "z").is_regular_certified


# -- condition X ----------------------------------------------------------------


def test_condition_x_irrational():
    sig = build_cocycle({"kind": "lift", "base": {"kind": "antisym_theta", "theta": R}}, AN, BASIS)
    assert check_condition_x(AN, sig, "base").status == "certified"


def test_condition_x_trivial_fails_at_first_vector():
    sig = build_cocycle({"kind": "lift", "base": {"kind": "antisym_theta", "theta": [0, 1]}}, AN)
    v = check_condition_x(AN, sig, "base")
    assert v.status == "refuted" and v.witness == AN.pair((1, 0), 0)


def test_condition_x_rational_denominator():
    sig = build_cocycle({"kind": "lift", "base": {"kind": "antisym_theta", "theta": [1, 6]}}, AN)
    v = check_condition_x(AN, sig, "base")
    # 2*(1/6) = 1/3: multiples of 3 kill the asymmetry
    assert v.status == "refuted" and v.witness == AN.pair((3, 0), 0)


def test_condition_x_full_reduces_to_kleppner():
    sig = build_cocycle({"kind": "theta_rule", "rule": "prime_reciprocal"}, SZ)
    v = check_condition_x(SZ, sig, "full")
    assert v.status == "certified" and v.rule == "condition_x_reduce"


def test_condition_x_metadata_missing():
    with pytest.raises(SpecError):
        check_condition_x(BS, TrivialCocycle(BS), "center")


# -- classify -------------------------------------------------------------------


def test_classify_consistency_and_rules():
    cases = [
        (W, {"kind": "lift", "base": {"kind": "theta_rule", "rule": "prime_reciprocal"}}, ("certified",) * 3),
        (BS, {"kind": "bs", "lambda": [1, 3]}, ("refuted",) * 3),
        (SAN, {"kind": "sanov", "mu0": [1, 2], "mu1": [1, 3], "mu2": [1, 5]}, ("certified", "refuted", "refuted")),
        (FZ, {"kind": "f2xz", "mu": [1, 3], "nu": [1, 5]}, ("refuted",) * 3),
        (F2, {"kind": "trivial"}, ("certified",) * 3),
        (FW, {"kind": "trivial"}, ("refuted",) * 3),
    ]
    for G, spec, want in cases:
        sig = build_cocycle(spec, G, BASIS)
        rep = classify(G, sig)
        got = (rep.kleppner.status, rep.unique_trace.status, rep.cstar_simple.status)
        assert got == want, (G.family, got)
        # the necessity constraint holds on every report
        if rep.unique_trace.status == "certified" or rep.cstar_simple.status == "certified":
            assert rep.kleppner.status != "refuted"
        assert rep.rule_trace


def test_classify_anosov_rational_vs_irrational():
    irr = build_cocycle({"kind": "lift", "base": {"kind": "antisym_theta", "theta": R}}, AN, BASIS)
    rep = classify(AN, irr)
    assert (rep.kleppner.status, rep.unique_trace.status, rep.cstar_simple.status) == ("certified",) * 3
    rat = build_cocycle({"kind": "lift", "base": {"kind": "antisym_theta", "theta": [1, 3]}}, AN)
    rep2 = classify(AN, rat)
    assert rep2.kleppner.status == "certified"
    assert rep2.unique_trace.status == "refuted"
    assert rep2.cstar_simple.status == "refuted"


def test_classify_lamplighter_odd_case():
    lift = build_cocycle({"kind": "lift", "base": {"kind": "bitstream", "pre": [], "period": [1, 0]}}, L)
    rep = classify(L, lift)
    assert rep.kleppner.status == "certified"
    assert rep.unique_trace.status == "refuted"
    assert rep.cstar_simple.status == "refuted"
    assert rep.cstar_simple.rule == "lamplighter_odd_periodic"
    # other periodic streams: simplicity stays undetermined
    lift2 = build_cocycle(
        {"kind": "lift", "base": {"kind": "bitstream", "pre": [], "period": [1, 1, 0]}}, L
    )
    rep2 = classify(L, lift2)
    assert rep2.unique_trace.status == "refuted"
    assert rep2.cstar_simple.status == "inconclusive"


def test_classify_wreath_trivial_cocycle():
    rep = classify(W, TrivialCocycle(W))
    assert rep.kleppner.status == "certified"  # the group is ICC
    assert rep.unique_trace.status == "refuted"  # base pair fails Kleppner
    assert rep.cstar_simple.status == "inconclusive"


def test_classify_product_cocycle():
    prod = build_cocycle(
        {"kind": "product", "left": {"kind": "trivial"}, "right": {"kind": "trivial"}}, FZ
    )
    rep = classify(FZ, prod)
    assert (rep.kleppner.status, rep.unique_trace.status, rep.cstar_simple.status) == ("refuted",) * 3


def test_classify_inconclusive_reports_bound():
    # no rule knows this pair: a parity-split twist of the odd bitstream lifted nowhere
    sig = similar_transform(TrivialCocycle(SAN), CoboundaryFn.zero(SAN))

    class Opaque(TrivialCocycle):
        def structural(self):
            return self

        kind = "opaque"

    rep = classify(SAN, Opaque(SAN), radius=2)
    assert rep.kleppner.status == "certified"  # ICC metadata still applies
    assert rep.unique_trace.status == "inconclusive"
    assert rep.unique_trace.bound == 2
