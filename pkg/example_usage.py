"""
Example usage of the femtoscopy simulator
This file demonstrates how to use the modules programmatically
"""

import numpy as np

from src.fock_dynamics import (
    FockSpace,
    HamiltonianConfig,
    ModeGrid,
    PairSourceSpec,
    charge_resolved_probs,
    entangled_two_source_specs,
    first_order_state,
    minimal_two_source_specs,
    normalized_g4_scan,
    two_source_state,
)
from src.parameter_estimation import FitModel, ModelKind, NoiseSpec, fit, initial_guess, synthesize_curve
from src.qubit_witness import werner_state, witness_verdict
from src.source_optics import DoubleTopHat, OpticalContext, coherence_double_source, vcz_numeric_coherence
from src.utils.logger import setup_logger

logger = setup_logger("Example")


def example_coherence():
    """Example 1: Closed-form vs quadrature coherence"""
    print("\n" + "="*60)
    print("Example 1: Coherence of Two Extended Sources")
    print("="*60 + "\n")

    ctx = OpticalContext(1.0e7)
    alpha, beta = 1.0e-6, 5.0e-6
    b = np.linspace(0.0, 0.6, 300)
    numeric = vcz_numeric_coherence(DoubleTopHat(separation=2 * beta, width=2 * alpha), ctx, b)
    analytic = coherence_double_source(ctx, alpha, beta, b)

    print(f"Baselines: {b.size}")
    print(f"Max |analytic - numeric|: {np.max(np.abs(analytic - numeric.values)):.3e}")


def example_witness():
    """Example 2: Werner-state witness scan"""
    print("\n" + "="*60)
    print("Example 2: Purity Witness on Werner States")
    print("="*60 + "\n")

    for p in (0.3, 0.5, 0.6, 0.9):
        report = witness_verdict(werner_state(p))
        print(f"p = {p:.1f}: purity {report.global_purity:.4f}, entangled = {report.entangled}")


def example_fock():
    """Example 3: Coincidence scan and charge-resolved probabilities"""
    print("\n" + "="*60)
    print("Example 3: Fock-Space Coincidences")
    print("="*60 + "\n")

    grid = ModeGrid.symmetric(8)
    space = FockSpace(grid)

    spec_a, spec_b = minimal_two_source_specs(1, (1, 4), (0.0, 0.8))
    scan = normalized_g4_scan(two_source_state(spec_a, spec_b, space), space, 0.0, np.linspace(0, np.pi, 9))
    print("Normalized g4:", np.round(scan.values, 4).tolist())

    state = two_source_state(*entangled_two_source_specs((1, 2)), space)
    print("Charge probabilities:", charge_resolved_probs(state, space, 0.0, 0.0).to_dict())

    rho_space = FockSpace(grid, rho_labels=(2,))
    result = first_order_state(HamiltonianConfig(0.1, 1.0), PairSourceSpec(2, {1: 1.0}), rho_space)
    print(f"First-order |c1| at g*dt = 0.1: {abs(result.c1):.6f}")


def example_fit():
    """Example 4: Recover a source size from noisy data"""
    print("\n" + "="*60)
    print("Example 4: Fitting a Top-Hat Source")
    print("="*60 + "\n")

    model = FitModel(ModelKind.SINGLE_TOPHAT, OpticalContext(1.0e7))
    b = np.linspace(0.0, 1.8, 200)
    curve = synthesize_curve(model, [1.0e-6], b, NoiseSpec(sigma=0.01, seed=7))
    guess = initial_guess(curve, model)
    result = fit(curve, model, guess.params)

    print(f"Guess: {guess.params[0]:.4e} (fallback: {guess.used_fallback})")
    print(f"Fit:   {result.params[0]:.4e} ± {result.param_stderr[0]:.1e}")
    print(f"Converged: {result.converged} after {result.iterations} iterations")


def main():
    """Run all examples"""
    print("\n" + "="*60)
    print("Femtoscopy Simulator - Usage Examples")
    print("="*60)

    try:
        example_coherence()
        example_witness()
        example_fock()
        example_fit()

        print("\n" + "="*60)
        print("All examples completed successfully!")
        print("="*60 + "\n")

    except Exception as e:
        logger.error(f"Error running examples: {e}", exc_info=True)
        print(f"\nError: {e}")


if __name__ == "__main__":
    main()
