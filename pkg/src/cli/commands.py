"""
Command-line front end

Every subcommand writes its result file atomically and prints a one-line
summary. Exit codes: 0 success, 1 argument or input error, 2 numerical
failure or non-convergence.
"""

import argparse
import sys
from dataclasses import dataclass, fields
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from config.config import Config
from src import __version__
from src.fock_dynamics import (
    FockSpace,
    HamiltonianConfig,
    ModeGrid,
    PairSourceSpec,
    charge_resolved_probs,
    entangled_two_source_specs,
    equivalent_path_wavenumbers,
    first_order_state,
    minimal_two_source_specs,
    normalized_g4_scan,
    two_source_state,
)
from src.linalg_core import DensityOperator, tensor_product
from src.parameter_estimation import (
    RNG_ALGORITHM,
    FitModel,
    ModelKind,
    NoiseSpec,
    fit,
    initial_guess,
    synthesize_curve,
)
from src.qubit_witness import (
    BellKind,
    PairingScheme,
    bell_state,
    detected_basis_expansion,
    product_state,
    werner_state,
    witness_verdict,
)
from src.source_optics import (
    CoherenceCurve,
    DetectorPair,
    DoubleTopHat,
    OpticalContext,
    TopHat,
    coherence_double_source,
    coherence_single_tophat,
    four_path_amplitude,
    vcz_numeric_coherence,
)
from src.utils.data_io import DataIO
from src.utils.errors import ArgumentError, FemtoscopyError, NumericalError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERICAL = 2

COHERENCE_HEADER = ("b", "C_analytic", "C_numeric")


@dataclass(frozen=True)
class RunConfig:
    """Validated flags of one CLI invocation"""

    subcommand: str
    input: Optional[str] = None
    output: Optional[str] = None
    probs_output: Optional[str] = None
    model: str = "tophat"
    k: float = 1.0e7
    alpha: float = 1.0e-3
    beta: Optional[float] = None
    b_min: float = 0.0
    b_max: Optional[float] = None
    n_baselines: int = 200
    sigma: float = 0.0
    seed: Optional[int] = None
    n_modes: int = Config.FOCK_N_MODES
    g: float = 0.1
    dt: float = 1.0
    sources: int = 2
    separation: float = 0.0
    state: str = "psi-plus"
    pairing: str = "13,24"

    def __post_init__(self):
        if not self.k > 0:
            raise ArgumentError(f"--k must be positive, got {self.k}")
        if not self.alpha > 0:
            raise ArgumentError(f"--alpha must be positive, got {self.alpha}")
        if self.beta is not None and not self.beta > 0:
            raise ArgumentError(f"--beta must be positive, got {self.beta}")
        if self.b_min < 0:
            raise ArgumentError(f"--b-min must be nonnegative, got {self.b_min}")
        if self.b_max is not None and not self.b_max > self.b_min:
            raise ArgumentError(f"--b-max must exceed --b-min, got {self.b_max}")
        if self.n_baselines < 2:
            raise ArgumentError(f"--n-baselines must be at least 2, got {self.n_baselines}")
        if self.sigma < 0:
            raise ArgumentError(f"--sigma must be nonnegative, got {self.sigma}")
        if self.seed is not None and not 0 <= self.seed < 2 ** 64:
            raise ArgumentError(f"--seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.n_modes < 4 or self.n_modes % 2:
            raise ArgumentError(f"--n-modes must be even and at least 4, got {self.n_modes}")
        if not self.dt > 0:
            raise ArgumentError(f"--dt must be positive, got {self.dt}")
        if self.sources not in (1, 2):
            raise ArgumentError(f"--sources must be 1 or 2, got {self.sources}")

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> 'RunConfig':
        known = {f.name for f in fields(cls)}
        return cls(**{name: value for name, value in vars(args).items() if name in known})

    @property
    def fit_model(self) -> FitModel:
        kind = ModelKind.SINGLE_TOPHAT if self.model == "tophat" else ModelKind.DOUBLE_SOURCE
        return FitModel(kind, OpticalContext(self.k))

    @property
    def params(self) -> List[float]:
        if self.model == "tophat":
            return [self.alpha]
        if self.beta is None:
            raise ArgumentError("--beta is required for the double model")
        return [self.alpha, self.beta]

    def baselines(self, default_b_max: float) -> np.ndarray:
        b_max = self.b_max if self.b_max is not None else default_b_max
        if not b_max > self.b_min:
            raise ArgumentError(f"baseline range [{self.b_min}, {b_max}] is empty")
        return np.linspace(self.b_min, b_max, self.n_baselines)


class _ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _three_lobes(config: RunConfig) -> float:
    """Baseline of the third zero of the narrowest sinc factor"""
    return 3.0 * 2.0 * np.pi / (config.k * config.alpha)


def cmd_coherence(config: RunConfig) -> int:
    """Analytic and quadrature coherence side by side"""
    ctx = OpticalContext(config.k)
    b = config.baselines(_three_lobes(config))
    if config.model == "tophat":
        analytic = coherence_single_tophat(ctx, config.alpha, b)
        profile = TopHat(config.alpha)
    else:
        alpha, beta = config.params
        analytic = coherence_double_source(ctx, alpha, beta, b)
        # sinc²(kαb)·cos²(kβb) is the transform of two top-hats of width 2α whose centres are 2β apart
        profile = DoubleTopHat(separation=2.0 * beta, width=2.0 * alpha)
    numeric = vcz_numeric_coherence(profile, ctx, b).values

    output = config.output or "coherence.csv"
    DataIO.write_text_atomic(output, DataIO.csv_text(COHERENCE_HEADER, list(zip(b, analytic, numeric))))
    deviation = float(np.max(np.abs(analytic - numeric)))
    print(f"wrote {output}: {b.size} baselines, max |C_analytic - C_numeric| = {deviation:.3e}")
    return EXIT_OK


def _parse_state(config: RunConfig) -> DensityOperator:
    spec = config.state
    if spec == "product":
        return DensityOperator.from_state(product_state((0, 1)))
    if spec.startswith("werner:"):
        try:
            p = float(spec.split(":", 1)[1])
        except ValueError:
            raise ArgumentError(f"bad Werner weight in '{spec}'") from None
        return werner_state(p)
    if spec == "file":
        if not config.input:
            raise ArgumentError("--state file needs --input")
        document = DataIO.read_json(config.input)
        try:
            matrix = np.array(document["real"], dtype=float) + 1j * np.array(document["imag"], dtype=float)
            dims = tuple(int(d) for d in document.get("dims", (2, 2)))
        except (KeyError, TypeError, ValueError) as e:
            raise ArgumentError(f"density matrix file needs 'real', 'imag' and 'dims': {e}") from None
        return DensityOperator(dims, matrix)
    try:
        kind = BellKind(spec)
    except ValueError:
        raise ArgumentError(
            f"unknown state '{spec}'; use psi-plus, psi-minus, phi-plus, phi-minus, product, werner:p or file"
        ) from None
    return DensityOperator.from_state(bell_state(kind))


def cmd_witness(config: RunConfig) -> int:
    """Purity witness report for a two-qubit state"""
    report = witness_verdict(_parse_state(config))
    payload = report.to_dict()
    payload["state"] = config.state
    output = config.output or "witness.json"
    DataIO.write_json(output, payload)
    print(f"wrote {output}: entangled = {str(report.entangled).lower()}, "
          f"global purity = {report.global_purity:.6f}")
    return EXIT_OK


def _optics_deviation(spec_a: PairSourceSpec, spec_b: PairSourceSpec, grid: ModeGrid,
                      scan: CoherenceCurve) -> float:
    k = equivalent_path_wavenumbers(spec_a, spec_b, grid)
    reference = abs(four_path_amplitude(k, DetectorPair(0.0, 0.0))) ** 2
    optics = [abs(four_path_amplitude(k, DetectorPair(0.0, b))) ** 2 / reference for b in scan.baselines]
    return float(np.max(np.abs(np.array(optics) - scan.values)))


def cmd_fock(config: RunConfig) -> int:
    """g4 scan of the minimal two-source configuration plus charge-resolved weights"""
    grid = ModeGrid.symmetric(config.n_modes)
    half = config.n_modes // 2
    spec_a, spec_b = minimal_two_source_specs(1, (1, half), (0.0, config.separation))
    if config.sources == 1:
        spec_b = spec_a

    hamiltonian = HamiltonianConfig(config.g, config.dt)
    c1 = 0.0
    for spec in {spec_a.q_rho: spec_a, spec_b.q_rho: spec_b}.values():
        rho_space = FockSpace(grid, rho_labels=(spec.q_rho,))
        c1 = max(c1, abs(first_order_state(hamiltonian, spec, rho_space).c1))

    space = FockSpace(grid)
    state = two_source_state(spec_a, spec_b, space)
    scan = normalized_g4_scan(state, space, 0.0, config.baselines(2.0 * np.pi / grid.spacing))
    deviation = _optics_deviation(spec_a, spec_b, grid, scan)

    entangled_a, entangled_b = entangled_two_source_specs((1, 2), (0.0, config.separation))
    if config.sources == 1:
        entangled_b = entangled_a
    pairs = two_source_state(entangled_a, entangled_b, space)
    probs = charge_resolved_probs(pairs, space, 0.0, 0.0)

    output = config.output or "g4_scan.csv"
    probs_output = config.probs_output or "charge_probabilities.json"
    scan.write_csv(output)
    payload = probs.to_dict()
    payload.update({
        "sources": config.sources,
        "separation": config.separation,
        "n_modes": config.n_modes,
        "c1_magnitude": c1,
        "scan_min": float(scan.values.min()),
        "scan_max": float(scan.values.max()),
        "max_optics_deviation": deviation,
    })
    DataIO.write_json(probs_output, payload)
    print(f"wrote {output} and {probs_output}: p = ({probs.p_mixed_both:.6f}, "
          f"{probs.p_plusplus_at_1:.6f}, {probs.p_minusminus_at_1:.6f}), "
          f"max optics deviation = {deviation:.3e}")
    return EXIT_OK


def cmd_synthesize(config: RunConfig) -> int:
    """Seeded synthetic coherence curve"""
    model = config.fit_model
    seed = 0 if config.seed is None else config.seed
    curve = synthesize_curve(model, config.params, config.baselines(_three_lobes(config)),
                             NoiseSpec(config.sigma, seed))
    output = config.output or "synthetic.csv"
    curve.write_csv(output)
    print(f"wrote {output}: {len(curve)} samples, sigma {config.sigma}, seed {seed}")
    return EXIT_OK


def cmd_fit(config: RunConfig) -> int:
    """Fit a coherence model to a b,C file"""
    if not config.input:
        raise ArgumentError("fit needs --input")
    curve = CoherenceCurve.read_csv(config.input)
    model = config.fit_model
    guess = initial_guess(curve, model)
    if guess.used_fallback:
        logger.warning("Initial guess fell back to configured defaults")
    result = fit(curve, model, guess.params)

    output = config.output or "fit.json"
    payload = result.to_dict(RNG_ALGORITHM, config.seed)
    DataIO.write_json(output, payload)
    print(f"wrote {output}: params {payload['params']}, converged = {str(result.converged).lower()}")
    return EXIT_OK if result.converged else EXIT_NUMERICAL


def cmd_expansion(config: RunConfig) -> int:
    """Coefficients of a Bell-pair product in the detected-pair basis"""
    try:
        kind = BellKind(config.input or "psi-plus")
    except ValueError:
        raise ArgumentError(f"--input must name a Bell state, got '{config.input}'") from None
    pair = bell_state(kind)
    expansion = detected_basis_expansion(tensor_product(pair, pair), PairingScheme.parse(config.pairing))
    payload = expansion.to_dict()
    payload["input"] = kind.value
    text = DataIO.json_text(payload)
    if config.output:
        DataIO.write_text_atomic(config.output, text)
    sys.stdout.write(text)
    return EXIT_OK


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "coherence": cmd_coherence,
    "witness": cmd_witness,
    "fock": cmd_fock,
    "synthesize": cmd_synthesize,
    "fit": cmd_fit,
    "expansion": cmd_expansion,
}


def _add_curve_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", choices=["tophat", "double"], default="tophat")
    parser.add_argument("--k", type=float, default=1.0e7, help="Wavenumber (rad/m)")
    parser.add_argument("--alpha", type=float, default=1.0e-3, help="Angular size (rad)")
    parser.add_argument("--beta", type=float, default=None, help="Cosine-factor angle (rad), double model")
    parser.add_argument("--b-min", type=float, default=0.0, help="First baseline (m)")
    parser.add_argument("--b-max", type=float, default=None, help="Last baseline (m); default three lobes")
    parser.add_argument("--n-baselines", type=int, default=200)


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per experiment"""
    parser = _ArgumentParser(
        prog="femtoscopy",
        description="Pionic intensity-interferometry simulator",
        allow_abbrev=False,
    )
    parser.add_argument(
        "--version", action="version",
        version=f"%(prog)s {__version__} (rng {RNG_ALGORITHM})",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    coherence = sub.add_parser("coherence", help="Analytic vs numeric coherence curve", allow_abbrev=False)
    _add_curve_flags(coherence)
    coherence.add_argument("--output")

    witness = sub.add_parser("witness", help="Purity entanglement witness", allow_abbrev=False)
    witness.add_argument("--state", default="psi-plus",
                         help="psi-plus, psi-minus, phi-plus, phi-minus, product, werner:p or file")
    witness.add_argument("--input", help="JSON density matrix for --state file")
    witness.add_argument("--output")

    fock = sub.add_parser("fock", help="g4 scan and charge-resolved probabilities", allow_abbrev=False)
    fock.add_argument("--n-modes", type=int, default=Config.FOCK_N_MODES)
    fock.add_argument("--g", type=float, default=0.1, help="Decay coupling")
    fock.add_argument("--dt", type=float, default=1.0, help="Evolution step")
    fock.add_argument("--sources", type=int, choices=[1, 2], default=2)
    fock.add_argument("--separation", type=float, default=0.0,
                      help="Source B position (m); only a global phase per pair, outputs do not change")
    fock.add_argument("--b-min", type=float, default=0.0)
    fock.add_argument("--b-max", type=float, default=None, help="Last separation (m); default one period")
    fock.add_argument("--n-baselines", type=int, default=100)
    fock.add_argument("--output", help="Scan CSV")
    fock.add_argument("--probs-output", help="Charge probabilities JSON")

    synthesize = sub.add_parser("synthesize", help="Seeded synthetic b,C curve", allow_abbrev=False)
    _add_curve_flags(synthesize)
    synthesize.add_argument("--sigma", type=float, default=0.0, help="Gaussian noise std")
    synthesize.add_argument("--seed", type=int, default=0)
    synthesize.add_argument("--output")

    fit_parser = sub.add_parser("fit", help="Recover source geometry from a b,C file", allow_abbrev=False)
    fit_parser.add_argument("--input", required=True)
    fit_parser.add_argument("--model", choices=["tophat", "double"], default="tophat")
    fit_parser.add_argument("--k", type=float, default=1.0e7)
    fit_parser.add_argument("--seed", type=int, default=None, help="Seed of the data, recorded in the output")
    fit_parser.add_argument("--output")

    expansion = sub.add_parser("expansion", help="Detected-pair basis coefficients", allow_abbrev=False)
    expansion.add_argument("--input", default="psi-plus", help="Bell state of each emitted pair")
    expansion.add_argument("--pairing", default="13,24")
    expansion.add_argument("--output")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse flags, run one subcommand and map failures to exit codes

    Args:
        argv: Arguments without the program name (default sys.argv[1:])

    Returns:
        Process exit code
    """
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig.from_namespace(args)
        return COMMANDS[config.subcommand](config)
    except NumericalError as e:
        logger.error(f"{args.subcommand}: numerical failure: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (FemtoscopyError, OSError) as e:
        logger.error(f"{args.subcommand}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
