from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from codedisc.codes import distance_distribution, dual_distribution, hamming_code, random_code
from codedisc.discrepancy import discrepancy_spectrum
from codedisc.errors import DomainError, IdentityMismatchError, ParseError, ValidationError
from codedisc.kernels import lambda_eval
from codedisc.krawtchouk import lambda_hat
from codedisc.metric_space import (
    FiniteMetricSpace,
    WeightVector,
    class_distribution,
    cycle_space,
    discrepancy_definition,
    discrepancy_lambda_form,
    discrepancy_mu_form,
    general_discrepancy,
    general_lambda,
    graph_distances,
    hamming_intersection_number,
    hamming_space,
    johnson_space,
    load_space,
    parse_weights,
    path_distances,
    scheme_discrepancy,
    scheme_from_space,
    theta_metric,
    weighted_discrepancy,
    weighted_dual_discrepancy,
    weighted_lambda,
    weighted_lambda_hamming,
    weighted_lambda_hat,
)

SPACES = {
    "C6": cycle_space(6),
    "C7": cycle_space(7),
    "H3": hamming_space(3),
    "H5": hamming_space(5),
    "J52": johnson_space(5, 2),
    "J63": johnson_space(6, 3),
}


def test_load_hamming_cube_text():
    S = hamming_space(3)
    T = load_space(S.to_text())
    assert (T.P, T.n) == (8, 3)
    assert np.array_equal(T.dist, S.dist)


def test_load_with_comments():
    text = "# a triangle\n3 1\n0 1 1\n1 0 1  # row two\n1 1 0\n"
    S = load_space(text)
    assert S.volumes == (1, 3)


def test_path_graph_rejected_with_witness():
    with pytest.raises(ValidationError) as exc:
        load_space("3 2\n0 1 2\n1 0 1\n2 1 0\n")
    assert exc.value.witness == (0, 1, 1)
    assert "|B(0,1)| = 2" in str(exc.value) and "|B(1,1)| = 3" in str(exc.value)


@pytest.mark.parametrize(
    "text, match",
    [
        ("2 1\n0 1\n2 0\n", "symmetric"),
        ("2 1\n1 1\n1 0\n", "not zero"),
        ("3 3\n0 1 3\n1 0 1\n3 1 0\n", "triangle"),
        ("2 2\n0 1\n1 0\n", "diameter"),
        ("2 1\n0 0\n0 0\n", "positive"),
    ],
)
def test_metric_axiom_failures(text, match):
    with pytest.raises(ValidationError, match=match):
        load_space(text)


@pytest.mark.parametrize("text", ["", "2\n0 1\n1 0\n", "2 1\n0 1\n", "2 1\n0 x\n1 0\n", "2 1\n0 1 1\n1 0\n"])
def test_parse_failures(text):
    with pytest.raises(ParseError):
        load_space(text)


def test_cycle_six_valid():
    S = cycle_space(6)
    assert S.n == 3 and S.volumes == (1, 3, 5, 6)


def test_graph_distances_matches_cycle():
    m = 7
    adj = np.zeros((m, m), dtype=bool)
    for i in range(m):
        adj[i, (i + 1) % m] = adj[(i + 1) % m, i] = True
    assert np.array_equal(graph_distances(adj), cycle_space(m).dist)
    with pytest.raises(ValidationError):
        graph_distances(np.zeros((2, 2), dtype=bool))


def test_lambda_and_theta_examples():
    S = hamming_space(3)
    assert general_lambda(S, 5, 5) == theta_metric(S, 5, 5) == 0
    assert general_lambda(S, 0, 0b011) == 4 == lambda_eval(3, 2)


@pytest.mark.parametrize("name", SPACES)
def test_theta_equals_lambda(name):
    S = SPACES[name]
    for x in range(S.P):
        for y in range(S.P):
            assert theta_metric(S, x, y) == general_lambda(S, x, y)


def test_theta_equals_lambda_large_cube():
    S = hamming_space(8)
    for y in (1, 3, 77, 255):
        assert theta_metric(S, 9, y) == general_lambda(S, 9, y)


def test_general_discrepancy_examples():
    S = cycle_space(6)
    assert general_discrepancy(S, range(6)) == 0
    assert general_discrepancy(S, [0, 3]) == discrepancy_definition(S, [0, 3]) == Fraction(2, 3)
    with pytest.raises(DomainError):
        general_discrepancy(S, [0, 6])
    with pytest.raises(DomainError):
        general_discrepancy(S, [])


def test_hamming_cube_matches_code_module():
    c = hamming_code(3)
    S = hamming_space(7)
    Z = [int(w) for w in c.words]
    assert general_discrepancy(S, Z) == discrepancy_spectrum(distance_distribution(c)) == Fraction(35, 32)


@pytest.mark.parametrize("name", SPACES)
@settings(max_examples=15, deadline=None)
@given(data=st.data())
def test_forms_agree_random_subsets(name, data):
    S = SPACES[name]
    Z = data.draw(st.lists(st.integers(0, S.P - 1), min_size=1, max_size=min(S.P, 12)))
    lam = discrepancy_lambda_form(S, Z)
    assert lam == discrepancy_mu_form(S, Z) == discrepancy_definition(S, Z)
    assert lam >= 0


def test_weight_vector():
    G = WeightVector((1, 0, 2))
    assert G.gamma == (3, 2, 2)
    with pytest.raises(DomainError):
        WeightVector((1, -1))
    assert parse_weights("1 1/2 # c\n0\n").g == (1, Fraction(1, 2), 0)
    with pytest.raises(ParseError):
        parse_weights("1 x")
    with pytest.raises(ParseError):
        parse_weights("# nothing")


@pytest.mark.parametrize("name", SPACES)
def test_weighted_all_ones_reduces(name):
    S = SPACES[name]
    Z = list(range(0, S.P, 3))
    G = WeightVector.ones(S.n)
    assert weighted_discrepancy(S, Z, G) == general_discrepancy(S, Z)
    assert weighted_lambda(S, G, 0, S.P - 1) == general_lambda(S, 0, S.P - 1)


@pytest.mark.parametrize("name", SPACES)
def test_weighted_indicator_single_radius(name):
    S = SPACES[name]
    Z = [0, 1, S.P - 1]
    for t in range(S.n + 1):
        G = WeightVector.indicator(S.n, t)
        assert weighted_discrepancy(S, Z, G) == discrepancy_definition(S, Z, G)


@settings(max_examples=30, deadline=None)
@given(
    st.integers(2, 7).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.fractions(min_value=0, max_value=5, max_denominator=7), min_size=n + 1, max_size=n + 1),
            st.integers(1, 12),
            st.integers(0, 2**32),
        )
    )
)
def test_weighted_hamming_identities(args):
    n, g, N, seed = args
    G = WeightVector(tuple(g))
    code = random_code(n, N, seed)
    S = hamming_space(n)
    Z = [int(w) for w in code.words]
    direct = weighted_discrepancy(S, Z, G)
    assert direct == weighted_dual_discrepancy(dual_distribution(code).values, G)
    lh = weighted_lambda_hat(n, G)
    assert all(v <= 0 for v in lh[1:])
    assert weighted_lambda_hamming(n, G, 0) == 0
    for w in range(n + 1):
        assert weighted_lambda(S, G, 0, (1 << w) - 1) == weighted_lambda_hamming(n, G, w)


@pytest.mark.parametrize("n", range(1, 9))
def test_weighted_lambda_hat_all_ones(n):
    lh = weighted_lambda_hat(n, WeightVector.ones(n))
    assert lh == lambda_hat(n).coeffs


def test_weighted_length_mismatch():
    with pytest.raises(DomainError):
        weighted_discrepancy(cycle_space(6), [0], WeightVector((1, 1)))


@pytest.mark.parametrize("n", range(1, 7))
def test_hamming_intersection_numbers(n):
    sch = scheme_from_space(hamming_space(n))
    assert sch.check_invariants()
    for i in range(n + 1):
        for j in range(n + 1):
            for k in range(n + 1):
                assert sch.intersection(i, j, k) == hamming_intersection_number(n, i, j, k)


@pytest.mark.parametrize("name", ["C6", "C7", "H3", "H5", "J52", "J63"])
def test_scheme_matches_general(name):
    S = SPACES[name]
    sch = scheme_from_space(S)
    rng = np.random.default_rng(17)
    for _ in range(20):
        Z = rng.choice(S.P, size=rng.integers(1, S.P + 1), replace=False).tolist()
        A = class_distribution(S, Z)
        assert scheme_discrepancy(sch, A, len(Z)) == general_discrepancy(S, Z)


def test_distance_invariant_but_not_regular():
    # circulant graph on Z_8 with connection set {1, 2, 6, 7}: vertex-transitive,
    # hence distance-invariant, but intersection numbers depend on the pair
    m = 8
    adj = np.zeros((m, m), dtype=bool)
    for i in range(m):
        for s in (1, 2):
            adj[i, (i + s) % m] = adj[(i + s) % m, i] = True
    S = FiniteMetricSpace(graph_distances(adj))
    assert general_discrepancy(S, [0, 4]) == discrepancy_definition(S, [0, 4])
    with pytest.raises(ValidationError) as exc:
        scheme_from_space(S)
    assert len(exc.value.witness) == 4


def test_mismatch_detection():
    S = cycle_space(6)
    with pytest.raises(DomainError):
        scheme_discrepancy(scheme_from_space(S), class_distribution(S, [0]), 0)


def test_path_distances_helper():
    assert path_distances(3).tolist() == [[0, 1, 2], [1, 0, 1], [2, 1, 0]]
    with pytest.raises(ValidationError):
        FiniteMetricSpace(path_distances(4))


def test_identity_mismatch_is_arithmetic_error():
    assert issubclass(IdentityMismatchError, ArithmeticError)
