"""
Quick verification script to check if the project is set up correctly
"""


def verify_imports():
    """Verify that all key imports work"""
    print("Verifying imports...")

    modules = [
        ("config.config", "Config"),
        ("src.utils", "DataIO"),
        ("src.linalg_core", "DensityOperator"),
        ("src.qubit_witness", "witness_verdict"),
        ("src.source_optics", "vcz_numeric_coherence"),
        ("src.fock_dynamics", "FockSpace"),
        ("src.parameter_estimation", "fit"),
        ("src.cli", "main"),
    ]
    for module, name in modules:
        try:
            getattr(__import__(module, fromlist=[name]), name)
            print(f"✓ {module}.{name} imported successfully")
        except Exception as e:
            print(f"✗ {module}.{name} import failed: {e}")
            return False

    return True


def verify_numerics():
    """Verify that key computations give their known values"""
    print("\nVerifying numerics...")

    try:
        from src.qubit_witness import BellKind, bell_state, witness_verdict
        from src.linalg_core import DensityOperator
        report = witness_verdict(DensityOperator.from_state(bell_state(BellKind.PSI_PLUS)))
        if report.entangled and abs(report.global_purity - 1.0) < 1e-12:
            print("✓ Witness flags a Bell state")
        else:
            print(f"✗ Witness test failed (got {report.to_dict()})")
            return False
    except Exception as e:
        print(f"✗ Witness test failed: {e}")
        return False

    try:
        import numpy as np
        from src.source_optics import OpticalContext, TopHat, coherence_single_tophat, vcz_numeric_coherence
        ctx = OpticalContext(1.0e7)
        b = np.linspace(0.0, 1.0, 50)
        numeric = vcz_numeric_coherence(TopHat(1.0e-6), ctx, b).values
        deviation = float(np.max(np.abs(numeric - coherence_single_tophat(ctx, 1.0e-6, b))))
        if deviation <= 1e-6:
            print(f"✓ Quadrature matches closed form ({deviation:.1e})")
        else:
            print(f"✗ Quadrature deviates by {deviation:.1e}")
            return False
    except Exception as e:
        print(f"✗ Coherence test failed: {e}")
        return False

    try:
        from src.fock_dynamics import FockSpace, ModeGrid
        space = FockSpace(ModeGrid.symmetric(8))
        print(f"✓ Default Fock space built ({space.dim} states)")
    except Exception as e:
        print(f"✗ Fock space initialization failed: {e}")
        return False

    return True


def verify_file_structure():
    """Verify that required files and directories exist"""
    print("\nVerifying file structure...")

    from pathlib import Path

    required_files = [
        "main.py",
        "requirements.txt",
        "README.md",
        "config/config.py",
        "src/linalg_core/hilbert.py",
        "src/qubit_witness/witness.py",
        "src/source_optics/optics.py",
        "src/fock_dynamics/dynamics.py",
        "src/parameter_estimation/estimation.py",
        "src/cli/commands.py",
        "src/utils/logger.py",
        "src/utils/data_io.py",
    ]

    all_good = True
    for file_path in required_files:
        if Path(file_path).exists():
            print(f"✓ File exists: {file_path}")
        else:
            print(f"✗ File missing: {file_path}")
            all_good = False

    return all_good


if __name__ == "__main__":
    print("="*60)
    print("Femtoscopy Simulator - Setup Verification")
    print("="*60)

    all_passed = True

    all_passed = verify_imports() and all_passed
    all_passed = verify_numerics() and all_passed
    all_passed = verify_file_structure() and all_passed

    print("\n" + "="*60)
    if all_passed:
        print("✓ All checks passed! Setup is complete.")
        print("="*60)
        print("\nYou can now:")
        print("  1. Run 'python main.py --help' to list the experiments")
        print("  2. Run 'python example_usage.py' for usage examples")
        print("  3. Run 'pytest' for the test suite")
    else:
        print("✗ Some checks failed. Please review the errors above.")
        print("="*60)
