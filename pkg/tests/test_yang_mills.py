import random

import pytest

from pbwforge.algebra import overlap_space
from pbwforge.pbw import brute_force_oracle, conservation_residual, pbw_verdict
from pbwforge.rationals import ONE, Q, rational
from pbwforge.sampling import (
    random_antisymmetric3,
    random_metric,
    sample_current_parameters,
)
from pbwforge.tensors import TensorElement, commutator
from pbwforge.yang_mills import (
    Current,
    CurrentParameters,
    Metric,
    build_ym,
    current_from_parameters,
    current_to_deformation,
    physics_current,
    relations_from_nested_commutators,
    verify_identities,
    ym_coefficients,
)


def zero3(n):
    return tuple(tuple(tuple(Q(0) for _ in range(n)) for _ in range(n)) for _ in range(n))


def zero2(n):
    return tuple(tuple(Q(0) for _ in range(n)) for _ in range(n))


def test_metric_validation():
    with pytest.raises(ValueError):
        Metric.from_rows([[1, 0], [1, 1]])  # not symmetric
    with pytest.raises(ValueError):
        Metric.from_rows([[1, 1], [1, 1]])  # degenerate
    m = Metric.minkowski(4)
    assert m.g.data[0][0] == -1
    assert m.g.data[1][1] == 1


def test_metric_inverse_contracts_to_identity():
    rng = random.Random(2)
    m = random_metric(rng, 3)
    for i in range(3):
        for j in range(3):
            total = sum((m.g.data[i][k] * m.g_inv.data[k][j] for k in range(3)), Q(0))
            assert total == (ONE if i == j else 0)


def test_ym_coefficients_s1_identity_metric():
    w = ym_coefficients(Metric.euclidean(2))
    assert w[0][0][1][1] == 1
    assert w[0][1][0][1] == -2
    assert w[0][1][1][0] == 1
    assert w[0][0][0][0] == 0


def test_relations_match_nested_commutator_form():
    for metric in (Metric.euclidean(2), Metric.minkowski(3)):
        a = build_ym(metric.dim - 1, metric)
        assert tuple(a.relation_basis) == relations_from_nested_commutators(metric)


def test_ym_relation_rank():
    a = build_ym(2, Metric.minkowski(3))
    assert len(a.relation_basis) == 3
    assert a.relation_space.dim == 3


@pytest.mark.parametrize("s", [1, 2, 3])
def test_identities_all_metrics(s):
    rng = random.Random(s)
    metrics = [Metric.euclidean(s + 1), Metric.minkowski(s + 1), random_metric(rng, s + 1)]
    for metric in metrics:
        report = verify_identities(metric)
        assert report.all_pass


def test_identities_negative_control():
    metric = Metric.euclidean(2)
    w = [list(map(list, plane)) for plane in ym_coefficients(metric)]
    w = [[[list(r) for r in p] for p in x] for x in w]
    w[0][0][1][1] = w[0][0][1][1] + 1
    frozen = tuple(tuple(tuple(tuple(r) for r in p) for p in x) for x in w)
    report = verify_identities(metric, coefficients=frozen)
    assert not report.all_pass
    assert not report.cyclic_invariance


def test_two_sided_identity_as_commutator():
    # [e_rho, W^rho] = 0 identically in degree 4
    metric = Metric.minkowski(3)
    a = build_ym(2, metric)
    acc = TensorElement.zero(3)
    for rho, r in enumerate(a.relation_basis):
        acc = acc + commutator(TensorElement.generator(3, rho), r)
    assert acc.is_zero()


def test_w_spans_overlap():
    metric = Metric.euclidean(3)
    a = build_ym(2, metric)
    w = TensorElement.zero(3)
    for rho, r in enumerate(a.relation_basis):
        w = w + r.tensor(TensorElement.generator(3, rho))
    space = overlap_space(a)
    assert space.dim == 1
    assert space.contains(w.to_degree_vector(4))


def test_current_parameters_symmetry_enforced():
    n = 3
    bad = [[[Q(0)] * n for _ in range(n)] for _ in range(n)]
    bad[0][0][1] = Q(1)  # not antisymmetric
    with pytest.raises(ValueError):
        CurrentParameters((Q(1),) * n, tuple(tuple(tuple(r) for r in x) for x in bad), zero3(n), zero2(n), (Q(0),) * n)


def test_zero_parameters_zero_current():
    metric = Metric.euclidean(3)
    p = CurrentParameters((Q(0),) * 3, zero3(3), zero3(3), zero2(3), (Q(0),) * 3)
    c = current_from_parameters(p, metric)
    assert all(x == 0 for x in c.j1)
    assert all(c.j2[i][j] == 0 for i in range(3) for j in range(3))


def test_theorem_forward_samples():
    rng = random.Random(41)
    for metric in (Metric.euclidean(3), Metric.minkowski(3)):
        a = build_ym(2, metric)
        for _ in range(3):
            p = sample_current_parameters(rng, metric)
            d = current_to_deformation(current_from_parameters(p, metric), a)
            assert pbw_verdict(d).overall


@pytest.mark.parametrize("violate", ["s3", "s2", "s1"])
def test_theorem_reverse_samples(violate):
    rng = random.Random(hash(violate) % 1000)
    metric = Metric.euclidean(3)
    a = build_ym(2, metric)
    for _ in range(3):
        p = sample_current_parameters(rng, metric, violate=violate)
        d = current_to_deformation(current_from_parameters(p, metric), a)
        assert not pbw_verdict(d).overall


def test_current_round_trip():
    rng = random.Random(4)
    metric = Metric.euclidean(3)
    a = build_ym(2, metric)
    p = sample_current_parameters(rng, metric)
    c = current_from_parameters(p, metric)
    d = current_to_deformation(c, a)
    tails = c.tails()
    for k in range(3):
        unit = tuple(1 if i == k else 0 for i in range(3))
        assert d.tail(unit) == tails[k]


def test_nonconserved_current_oracle_failure():
    # family j3 for b=(1,0,0) with the scalar tail set to b breaks
    # conservation and collapses the filtered quotient one degree up
    metric = Metric.euclidean(3)
    a = build_ym(2, metric)
    p = CurrentParameters((Q(1), Q(0), Q(0)), zero3(3), zero3(3), zero2(3), (Q(0),) * 3)
    base = current_from_parameters(p, metric)
    bad = Current(base.j3, base.j2, (Q(1), Q(0), Q(0)))
    d = current_to_deformation(bad, a)
    assert not conservation_residual(d).conserved
    assert brute_force_oracle(d, 3, 4).verdict == "FAIL"


def test_physics_current_regular_when_constraints_hold():
    metric = Metric.euclidean(4)
    n = 4
    b = (Q(1), Q(0), Q(0), Q(0))
    om = [[[Q(0)] * n for _ in range(n)] for _ in range(n)]
    for perm, sign in (((1, 2, 3), 1), ((2, 3, 1), 1), ((3, 1, 2), 1),
                       ((2, 1, 3), -1), ((1, 3, 2), -1), ((3, 2, 1), -1)):
        om[perm[0]][perm[1]][perm[2]] = Q(sign)
    om = tuple(tuple(tuple(r) for r in x) for x in om)
    s1 = (Q(0), Q(1), Q(0), Q(0))
    current, constraints = physics_current(b, om, s1, metric)
    assert constraints["b_omega_orthogonal"]
    assert constraints["b_s_orthogonal"]
    a = build_ym(3, metric)
    assert pbw_verdict(current_to_deformation(current, a)).overall


def test_physics_current_violating_constraint_not_regular():
    metric = Metric.euclidean(4)
    n = 4
    b = (Q(1), Q(0), Q(0), Q(0))
    om = [[[Q(0)] * n for _ in range(n)] for _ in range(n)]
    for perm, sign in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                       ((1, 0, 2), -1), ((0, 2, 1), -1), ((2, 1, 0), -1)):
        om[perm[0]][perm[1]][perm[2]] = Q(sign)
    om = tuple(tuple(tuple(r) for r in x) for x in om)
    current, constraints = physics_current(b, om, (Q(0),) * n, metric)
    assert not constraints["b_omega_orthogonal"]
    a = build_ym(3, metric)
    assert not pbw_verdict(current_to_deformation(current, a)).overall


def test_physics_current_inside_family_shape():
    # the expanded j3 always lies in the span of the closed-form family
    from pbwforge.classify import solve_stage1
    from pbwforge.yang_mills import flatten_top_block

    rng = random.Random(6)
    metric = Metric.minkowski(3)
    a = build_ym(2, metric)
    stage1 = solve_stage1(a)
    for _ in range(3):
        b = tuple(rational(rng.randint(-5, 5)) for _ in range(3))
        om = random_antisymmetric3(rng, 3)
        current, _ = physics_current(b, om, (Q(0),) * 3, metric)
        assert stage1.parameters.contains(flatten_top_block(current.j3, 3))
