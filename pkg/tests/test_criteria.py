import itertools
from math import sqrt

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from blochsep.bloch import all_tensors, tensor_norm_sq
from blochsep.criteria import (
    RoleLabeling,
    analyze,
    bound_for,
    build_s_matrix,
    criterion_value,
    evaluate,
    evaluate_tensors,
    k_sep_bound,
    labelings,
    pure_four_body_bound,
    pure_n_body_bound,
    pure_three_body_bound,
    pure_two_body_bound,
    w_factor,
)
from blochsep.errors import DomainError, UnsupportedConfigurationError
from blochsep.numerics import singular_values, trace_norm
from blochsep.states import (
    DensityMatrix,
    PartitionSpec,
    ghz,
    isotropic_mix,
    random_pure,
    random_separable,
    set_partitions,
    w4,
)

seeds = st.integers(0, 2**32 - 1)


def test_bound_values():
    assert pure_two_body_bound(2, 2) == pytest.approx(3)
    assert pure_two_body_bound(2, 3) == pytest.approx(32 / 9)
    assert pure_three_body_bound(2, 2, 2) == pytest.approx(4)
    d = 2
    assert pure_three_body_bound(2, 2, 2) == pytest.approx((8 * d**3 - 24 * d + 16) / d**3)
    assert pure_three_body_bound(2, 2, 3) == pytest.approx(16 / 3)
    assert pure_four_body_bound(2, 2, 2, 2) == pytest.approx(9)
    assert pure_four_body_bound(2, 2, 2, 3) == pytest.approx(16 * (1 - 41 / 144))
    assert pure_n_body_bound(5, 2) == pytest.approx(58 / 3)
    assert pure_n_body_bound(4, 2) == pytest.approx(9)
    for d in (2, 3, 4):
        assert pure_n_body_bound(3, d) == pytest.approx(pure_three_body_bound(d, d, d))
        assert pure_n_body_bound(4, d) == pytest.approx(pure_four_body_bound(d, d, d, d))


@pytest.mark.parametrize(
    "fn, args",
    [
        (pure_two_body_bound, (3, 2)),
        (pure_three_body_bound, (2, 3, 2)),
        (pure_four_body_bound, (3, 2, 2, 2)),
        (pure_two_body_bound, (1, 2)),
    ],
)
def test_bound_order_violation(fn, args):
    with pytest.raises(DomainError):
        fn(*args)


def test_w_and_ksep():
    assert w_factor(1, 2) == 1
    assert w_factor(2, 2) == pytest.approx(3)
    assert w_factor(3, 2) == pytest.approx(4)
    assert w_factor(4, 2) == pytest.approx(9)
    assert k_sep_bound((1, 2), 2) == pytest.approx(3)
    assert k_sep_bound((2, 2), 2) == pytest.approx(9)
    d = 2
    assert k_sep_bound((1, 2), d) == pytest.approx(8 * (d - 1) ** 2 * (d + 1) / d**3)
    expect = {(2, 3): 12, (1, 1, 3): 4, (1, 4): 9, (1, 2, 2): 9, (1, 1, 1, 1, 1): 1}
    for blocks, v in expect.items():
        assert k_sep_bound(blocks, 2) == pytest.approx(v)


def test_bound_for_qubits():
    q3, q4 = (2, 2, 2), (2, 2, 2, 2)
    assert bound_for(RoleLabeling("B1", (0, 1, 2)), q3) == pytest.approx(2 * sqrt(3))
    assert bound_for(RoleLabeling("F1", (0, 1, 2)), q3) == pytest.approx(2)
    assert bound_for(RoleLabeling("B2", (0, 1)), q4) == pytest.approx(2)
    assert bound_for(RoleLabeling("B3", (0, 1, 2, 3)), q4) == pytest.approx(4)
    assert bound_for(RoleLabeling("F2", (0, 1, 2, 3)), q4) == pytest.approx(2 * sqrt(2))
    with pytest.raises(UnsupportedConfigurationError):
        bound_for(RoleLabeling("KSEP", (1, 2)), (2, 2, 3))


def test_role_labeling_errors():
    with pytest.raises(DomainError):
        RoleLabeling("B9", (0, 1, 2))
    with pytest.raises(DomainError):
        RoleLabeling("B1", (0, 1))
    with pytest.raises(DomainError):
        RoleLabeling("B1", (0, 1, 1))
    ts = all_tensors(ghz(3))
    with pytest.raises(DomainError):
        build_s_matrix(ts, RoleLabeling("B2", (0, 1)))
    with pytest.raises(DomainError):
        build_s_matrix(ts, RoleLabeling("KSEP", (1, 2)))


def test_maximally_mixed_b1():
    rho = DensityMatrix(np.eye(8) / 8, (2, 2, 2))
    m = build_s_matrix(all_tensors(rho), RoleLabeling("B1", (0, 1, 2))).matrix
    assert m.shape == (4, 16)
    expect = np.zeros_like(m)
    expect[0, 0] = 1
    assert np.allclose(m, expect)
    assert trace_norm(m) == pytest.approx(1)
    an = analyze(rho)
    assert not an.flagged()


def test_ghz3_b1_rows_orthogonal():
    m = build_s_matrix(all_tensors(ghz(3)), RoleLabeling("B1", (0, 1, 2))).matrix
    assert m.shape == (4, 16)
    gram = m @ m.T
    assert np.allclose(gram - np.diag(np.diag(gram)), 0, atol=1e-12)
    assert trace_norm(m) == pytest.approx(np.sum(np.sqrt(np.diag(gram))), abs=1e-12)
    (rep,) = evaluate(ghz(3), PartitionSpec.parse("1|23"))[:1]
    assert rep.criterion == "B1" and rep.violated and rep.lhs > 2 * sqrt(3)


@given(seeds)
def test_product_state_rank_one(seed):
    rho = random_separable((2, 2, 3), PartitionSpec.parse("1|2|3"), 1, seed)
    m = build_s_matrix(all_tensors(rho), RoleLabeling("B1", (0, 1, 2))).matrix
    s = singular_values(m)
    assert np.all(s[1:] < 1e-10 * s[0])


def _n2(ts, s):
    return tensor_norm_sq(ts[s])


@given(seeds)
def test_factorization_tripartite(seed):
    dims = (2, 3, 3)
    ts = all_tensors(random_separable(dims, PartitionSpec.parse("1|23"), 1, seed))
    f, g, h = 0, 1, 2
    b1 = sqrt(1 + _n2(ts, (f,))) * sqrt(
        1 + _n2(ts, (g,)) + _n2(ts, (h,)) + _n2(ts, (g, h))
    )
    assert criterion_value(ts, RoleLabeling("B1", (f, g, h))) == pytest.approx(b1, abs=1e-9)

    ts = all_tensors(random_separable(dims, PartitionSpec.parse("1|2|3"), 1, seed))
    for f, g, h in itertools.permutations(range(3)):
        f1 = sqrt(1 + _n2(ts, (f,))) * sqrt(_n2(ts, (h,)) * (1 + _n2(ts, (g,))))
        lab = RoleLabeling("F1", (f, g, h))
        assert criterion_value(ts, lab) == pytest.approx(f1, abs=1e-9)


@given(seeds)
def test_factorization_four_party(seed):
    dims = (2, 2, 3, 3)
    ts = all_tensors(random_separable(dims, PartitionSpec.parse("1|234"), 1, seed))
    b2 = sqrt((1 + _n2(ts, (0,))) * (1 + _n2(ts, (2,))))
    assert criterion_value(ts, RoleLabeling("B2", (0, 2))) == pytest.approx(b2, abs=1e-9)

    ts = all_tensors(random_separable(dims, PartitionSpec.parse("12|34"), 1, seed))
    b3 = sqrt((1 + _n2(ts, (0, 1))) * (1 + _n2(ts, (2, 3))))
    assert criterion_value(ts, RoleLabeling("B3", (0, 1, 2, 3))) == pytest.approx(b3, abs=1e-9)

    ts = all_tensors(random_separable(dims, PartitionSpec.parse("1|2|3|4"), 1, seed))
    f, g, h, e = 1, 3, 0, 2
    f2 = sqrt(1 + _n2(ts, (f,))) * sqrt(
        _n2(ts, (e,)) * (1 + _n2(ts, (g,))) * (1 + _n2(ts, (h,)))
    )
    assert criterion_value(ts, RoleLabeling("F2", (f, g, h, e))) == pytest.approx(f2, abs=1e-9)


@given(seeds)
def test_b1_gh_swap(seed):
    ts = all_tensors(random_pure((2, 2, 2), seed))
    a, b = RoleLabeling("B1", (0, 1, 2)), RoleLabeling("B1", (0, 2, 1))
    assert bound_for(a, ts.dims) == bound_for(b, ts.dims)
    assert criterion_value(ts, a) == pytest.approx(criterion_value(ts, b), abs=1e-10)


def test_labeling_enumeration():
    def labs(text, dims):
        return [lab for lab in labelings(PartitionSpec.parse(text), dims) if lab.template != "KSEP"]

    assert labs("2|13", (3, 2, 2)) == [RoleLabeling("B1", (1, 2, 0))]
    assert labs("1|23", (2, 3, 2)) == [RoleLabeling("B1", (0, 2, 1))]
    assert len(labs("1|2|3", (2, 2, 3))) == 6
    assert len(labs("2|134", (2, 2, 2, 2))) == 3
    assert labs("13|24", (3, 2, 2, 2)) == [RoleLabeling("B3", (2, 0, 1, 3))]
    assert len(labs("1|2|34", (2, 2, 2, 2))) == 4
    assert len(labs("1|2|3|4", (2, 2, 2, 2))) == 24
    assert [lab.template for lab in labelings(PartitionSpec.parse("1|2"), (2, 2))] == ["KSEP"]


def test_ksep_monotone_under_refinement():
    for n in range(2, 6):
        parts = set_partitions(n)
        for fine, coarse in itertools.permutations(parts, 2):
            if not fine.is_refinement_of(coarse):
                continue
            for d in (2, 3, 4):
                b_fine, b_coarse = k_sep_bound(fine.sizes(), d), k_sep_bound(coarse.sizes(), d)
                # any norm above the coarser bound is above the finer one
                assert b_fine <= b_coarse + 1e-12


@pytest.mark.parametrize("dims", [(2, 2, 2), (2, 2, 3)])
def test_soundness_tripartite(dims):
    for part in set_partitions(3):
        targets = [q for q in set_partitions(3) if part.is_refinement_of(q) or q == part]
        for i in range(40):
            ts = all_tensors(random_separable(dims, part, 3, seed=1000 * i + len(targets)))
            for q in targets:
                assert not any(r.violated for r in evaluate_tensors(ts, q))


@pytest.mark.parametrize(
    "dims, bound",
    [
        ((2, 2), pure_two_body_bound(2, 2)),
        ((2, 3), pure_two_body_bound(2, 3)),
        ((2, 2, 3), pure_three_body_bound(2, 2, 3)),
        ((2, 3, 4), pure_three_body_bound(2, 3, 4)),
        ((2, 2, 2, 2), pure_four_body_bound(2, 2, 2, 2)),
        ((2, 2, 2, 3), pure_four_body_bound(2, 2, 2, 3)),
    ],
)
def test_pure_bounds_sampled(dims, bound):
    full = tuple(range(len(dims)))
    worst = max(tensor_norm_sq(all_tensors(random_pure(dims, s))[full]) for s in range(100))
    assert worst <= bound + 1e-9


def test_ghz_saturates():
    assert tensor_norm_sq(all_tensors(ghz(3))[(0, 1, 2)]) == pytest.approx(4, abs=1e-9)
    assert tensor_norm_sq(all_tensors(ghz(4))[(0, 1, 2, 3)]) == pytest.approx(9, abs=1e-9)


def test_analyze_ghz4_flags_everything():
    an = analyze(ghz(4))
    flagged = set(an.flagged())
    for p in set_partitions(4):
        if p.k in (2, 3):
            assert p in flagged, p.label()


def test_analyze_product_no_flags():
    rho = random_separable((2, 2, 2, 2), PartitionSpec.parse("1|2|3|4"), 1, seed=3)
    assert analyze(rho).flagged() == []


def test_analyze_w4_b2():
    an = analyze(w4())
    s = an.summary_for(PartitionSpec.parse("1|234"))
    assert s.entangled
    b2 = [r for r in an.reports if r.partition == s.partition and r.criterion == "B2"]
    assert any(r.violated for r in b2)


def test_implied_flags():
    rho = isotropic_mix(ghz(3), 0.95)
    an = analyze(rho)
    full = an.summary_for(PartitionSpec.parse("1|2|3"))
    assert full.entangled
    for s in an.summaries:
        for q in s.implied_by:
            assert s.partition.is_refinement_of(q)
            assert an.summary_for(q).entangled


def test_unsupported_configuration():
    rho = random_pure((2, 2, 2, 2, 3), 0)
    with pytest.raises(UnsupportedConfigurationError) as err:
        analyze(rho)
    assert err.value.skipped
    an = analyze(ghz(5))
    assert any("not defined" in note for note in an.skipped)
    assert all(r.criterion == "KSEP" for r in an.reports)


def test_unequal_dims_skip_ksep():
    an = analyze(random_pure((2, 2, 3), 1))
    assert all(r.criterion != "KSEP" for r in an.reports)
    assert an.skipped
