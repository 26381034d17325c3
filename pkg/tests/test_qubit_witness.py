import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from src.linalg_core import (
    DensityOperator,
    StateVector,
    purity,
    random_density_operator,
    random_unitary,
    tensor_product,
)
from src.qubit_witness import (
    DETECTED_PAIRING,
    BellKind,
    ExpansionTerm,
    PairingScheme,
    bell_state,
    coincidence_probabilities,
    detected_basis_expansion,
    interference_probability,
    product_state,
    purity_from_symmetric_probability,
    swap_operator,
    symmetric_projector,
    two_copy_symmetric_probability,
    werner_state,
    witness_from_swap_tests,
    witness_verdict,
)
from src.utils.errors import ArgumentError, DomainError


def _rho(kind):
    return DensityOperator.from_state(bell_state(kind))


@pytest.mark.parametrize("kind", list(BellKind))
def test_bell_states_are_normalized(kind):
    assert bell_state(kind).normalized()


def test_pairing_parse_and_order():
    pairing = PairingScheme.parse("13,24")
    assert pairing == DETECTED_PAIRING
    assert pairing.order == (0, 2, 1, 3)
    assert str(pairing) == "13,24"


@pytest.mark.parametrize("text", ["13", "12,33", "1a,24", "123,4"])
def test_pairing_parse_rejects_malformed(text):
    with pytest.raises(ArgumentError):
        PairingScheme.parse(text)


def test_expansion_of_psi_plus_pairs():
    psi = bell_state(BellKind.PSI_PLUS)
    expansion = detected_basis_expansion(tensor_product(psi, psi))
    c = expansion.coefficients
    assert c[ExpansionTerm.A00_B11] == pytest.approx(0.5)
    assert c[ExpansionTerm.A11_B00] == pytest.approx(0.5)
    assert c[ExpansionTerm.PSI_PLUS_PSI_PLUS] == pytest.approx(0.5)
    assert c[ExpansionTerm.PSI_MINUS_PSI_MINUS] == pytest.approx(-0.5)
    assert expansion.residual_norm < 1e-12


def test_expansion_of_psi_minus_pairs_has_no_residual():
    psi = bell_state(BellKind.PSI_MINUS)
    expansion = detected_basis_expansion(tensor_product(psi, psi))
    assert expansion.residual_norm < 1e-12
    weights = sum(abs(v) ** 2 for v in expansion.coefficients.values())
    assert weights == pytest.approx(1.0, abs=1e-12)


def test_identity_pairing_puts_all_weight_on_psi_plus_pairs():
    psi = bell_state(BellKind.PSI_PLUS)
    expansion = detected_basis_expansion(tensor_product(psi, psi), PairingScheme.parse("12,34"))
    assert abs(expansion.coefficients[ExpansionTerm.PSI_PLUS_PSI_PLUS]) == pytest.approx(1.0)


def test_expansion_resums_to_input(rng):
    amplitudes = rng.normal(size=16) + 1j * rng.normal(size=16)
    state = StateVector((2,) * 4, amplitudes).renormalize()
    expansion = detected_basis_expansion(state)
    assert_allclose(expansion.resum().amplitudes, state.amplitudes, atol=1e-12)


def test_expansion_to_dict_keys():
    psi = bell_state(BellKind.PSI_PLUS)
    table = detected_basis_expansion(tensor_product(psi, psi)).to_dict()
    assert set(table["coefficients"]) == {t.value for t in ExpansionTerm}
    assert table["pairing"] == "13,24"


def test_coincidence_probabilities_for_entangled_pairs():
    probs = coincidence_probabilities(_rho(BellKind.PSI_PLUS), _rho(BellKind.PSI_PLUS))
    assert probs["p_plusminus_both"] == pytest.approx(0.5, abs=1e-12)
    assert probs["p_plusplus_A"] == pytest.approx(0.25, abs=1e-12)
    assert probs["p_minusminus_A"] == pytest.approx(0.25, abs=1e-12)


def test_coincidence_probabilities_for_product_pairs():
    rho = DensityOperator.from_state(product_state((0, 1)))
    probs = coincidence_probabilities(rho, rho)
    assert probs["p_plusplus_A"] == pytest.approx(1.0, abs=1e-12)
    assert probs["p_plusminus_both"] == pytest.approx(0.0, abs=1e-12)


def test_coincidence_probabilities_sum_to_one(rng):
    for _ in range(10):
        probs = coincidence_probabilities(
            random_density_operator((2, 2), rng), random_density_operator((2, 2), rng)
        )
        assert sum(probs.values()) == pytest.approx(1.0, abs=1e-12)


def test_swap_and_symmetric_projector():
    swap = swap_operator(3)
    assert_allclose(swap.matrix @ swap.matrix, np.eye(9), atol=1e-15)
    p_sym = symmetric_projector(2, 3)
    assert_allclose(p_sym.matrix @ p_sym.matrix, p_sym.matrix, atol=1e-12)
    assert np.trace(p_sym.matrix).real == pytest.approx(6.0)
    with pytest.raises(ArgumentError):
        symmetric_projector(3)


def test_interference_probability_of_psi_plus_pairs():
    value = interference_probability(_rho(BellKind.PSI_PLUS), _rho(BellKind.PSI_PLUS))
    assert value == pytest.approx(0.75, abs=1e-12)


def test_two_copy_symmetric_probability_tracks_purity(rng):
    for _ in range(10):
        rho = random_density_operator((2, 2), rng)
        p_sym = two_copy_symmetric_probability(rho)
        assert purity_from_symmetric_probability(p_sym) == pytest.approx(
            float(np.sum(np.abs(rho.matrix) ** 2)), abs=1e-12
        )


@pytest.mark.parametrize("p_sym", [0.3, 1.2])
def test_purity_from_symmetric_probability_domain(p_sym):
    with pytest.raises(DomainError):
        purity_from_symmetric_probability(p_sym)


def test_purity_from_symmetric_probability_clamps():
    assert purity_from_symmetric_probability(0.5 - 1e-10) == 0.0
    assert purity_from_symmetric_probability(1.0 + 1e-10) == 1.0


def test_witness_detects_bell_state():
    report = witness_verdict(_rho(BellKind.PSI_PLUS))
    assert report.entangled
    assert report.global_purity == pytest.approx(1.0, abs=1e-12)
    assert report.local_purity_a == pytest.approx(0.5, abs=1e-12)
    assert report.local_purity_b == pytest.approx(0.5, abs=1e-12)


def test_witness_product_state_not_entangled():
    report = witness_verdict(DensityOperator.from_state(product_state((0, 1))))
    assert not report.entangled


@pytest.mark.parametrize("p", [0.0, 0.3, 0.5, 0.57, 0.6, 0.8, 1.0])
def test_witness_werner_threshold(p):
    report = witness_verdict(werner_state(p))
    assert report.global_purity == pytest.approx((1 + 3 * p * p) / 4, abs=1e-12)
    assert report.entangled == (p > 1 / np.sqrt(3))


def test_witness_werner_half():
    report = witness_verdict(werner_state(0.5))
    assert report.global_purity == pytest.approx(0.4375, abs=1e-12)
    assert not report.entangled


def test_witness_never_flags_separable_mixtures(rng):
    for _ in range(20):
        a = random_density_operator((2,), rng)
        b = random_density_operator((2,), rng)
        c = random_density_operator((2,), rng)
        d = random_density_operator((2,), rng)
        w = rng.uniform()
        rho = DensityOperator.mixture([w, 1 - w], [tensor_product(a, b), tensor_product(c, d)])
        assert not witness_verdict(rho).entangled


def test_witness_requires_bipartite_state():
    with pytest.raises(ArgumentError):
        witness_verdict(DensityOperator((4,), np.eye(4) / 4))


def test_witness_from_swap_tests_matches_direct_verdict():
    rho = _rho(BellKind.PHI_MINUS)
    direct = witness_verdict(rho)
    measured = witness_from_swap_tests(direct.p_symmetric_global, 0.75, 0.75)
    assert measured.entangled
    assert measured.global_purity == pytest.approx(1.0, abs=1e-12)


def test_report_to_dict_keys():
    keys = set(witness_verdict(werner_state(0.9)).to_dict())
    assert keys == {"global_purity", "local_purity_a", "local_purity_b", "p_symmetric_global", "entangled"}


seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


def _random_qubit(rng, pure):
    if pure:
        return DensityOperator.from_state(StateVector((2,), random_unitary(2, rng)[:, 0]))
    return random_density_operator((2,), rng)


def test_expansion_of_psi_minus_pairs_coefficients():
    psi = bell_state(BellKind.PSI_MINUS)
    c = detected_basis_expansion(tensor_product(psi, psi)).coefficients
    for term in ExpansionTerm:
        assert abs(c[term]) == pytest.approx(0.5, abs=1e-12)


def test_qubit_symmetric_projector():
    p_sym = symmetric_projector()
    assert np.trace(p_sym.matrix).real == pytest.approx(3.0, abs=1e-12)
    assert p_sym.apply(bell_state(BellKind.PSI_MINUS)).norm() == pytest.approx(0.0, abs=1e-15)
    psi_plus = bell_state(BellKind.PSI_PLUS)
    assert_allclose(p_sym.apply(psi_plus).amplitudes, psi_plus.amplitudes, atol=1e-15)


@settings(max_examples=1000, deadline=None)
@given(seeds)
def test_expansion_resums_random_states(seed):
    rng = np.random.default_rng(seed)
    state = StateVector((2,) * 4, rng.normal(size=16) + 1j * rng.normal(size=16)).renormalize()
    expansion = detected_basis_expansion(state)
    assert_allclose(expansion.resum().amplitudes, state.amplitudes, rtol=0, atol=1e-12)
    weights = sum(abs(v) ** 2 for v in expansion.coefficients.values())
    assert weights + expansion.residual_norm ** 2 == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=1000, deadline=None)
@given(seeds, st.lists(st.floats(min_value=0.01, max_value=1.0), min_size=1, max_size=8), st.booleans())
def test_witness_has_no_false_positives_on_separable_states(seed, raw_weights, pure):
    rng = np.random.default_rng(seed)
    weights = np.array(raw_weights) / sum(raw_weights)
    products = [tensor_product(_random_qubit(rng, pure), _random_qubit(rng, pure)) for _ in weights]
    assert not witness_verdict(DensityOperator.mixture(weights, products)).entangled


@settings(max_examples=100, deadline=None)
@given(seeds, st.booleans())
def test_swap_relation_recovers_single_qubit_purity(seed, pure):
    rho = _random_qubit(np.random.default_rng(seed), pure)
    recovered = purity_from_symmetric_probability(two_copy_symmetric_probability(rho))
    assert recovered == pytest.approx(purity(rho), abs=1e-12)


def test_werner_flip_found_by_bisection():
    lo, hi = 0.0, 1.0
    assert not witness_verdict(werner_state(lo)).entangled
    assert witness_verdict(werner_state(hi)).entangled
    while hi - lo > 1e-9:
        mid = 0.5 * (lo + hi)
        if witness_verdict(werner_state(mid)).entangled:
            hi = mid
        else:
            lo = mid
    assert hi == pytest.approx(1 / np.sqrt(3), abs=1e-6)
