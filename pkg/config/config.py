"""Configuration management for the femtoscopy simulator"""

import os
from dotenv import load_dotenv

load_dotenv()


class Config:
    """Configuration class for application settings"""

    # Logging Configuration
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    LOG_CONSOLE_LEVEL: str = os.getenv("LOG_CONSOLE_LEVEL", "WARNING")
    LOG_FILE: str = os.getenv("LOG_FILE", "")

    # Linear Algebra Configuration
    MAX_TOTAL_DIM: int = int(os.getenv("MAX_TOTAL_DIM", "4096"))
    STATE_TOLERANCE: float = float(os.getenv("STATE_TOLERANCE", "1e-12"))
    PSD_TOLERANCE: float = float(os.getenv("PSD_TOLERANCE", "1e-10"))

    # Witness Configuration
    WITNESS_MARGIN: float = float(os.getenv("WITNESS_MARGIN", "1e-9"))

    # Source Optics Configuration
    SERIES_THRESHOLD: float = float(os.getenv("SERIES_THRESHOLD", "1e-6"))
    QUADRATURE_START_POINTS: int = int(os.getenv("QUADRATURE_START_POINTS", "513"))
    QUADRATURE_TOLERANCE: float = float(os.getenv("QUADRATURE_TOLERANCE", "1e-8"))
    QUADRATURE_MAX_DOUBLINGS: int = int(os.getenv("QUADRATURE_MAX_DOUBLINGS", "20"))

    # Fock Space Configuration
    FOCK_N_MAX: int = int(os.getenv("FOCK_N_MAX", "4"))
    FOCK_N_MODES: int = int(os.getenv("FOCK_N_MODES", "8"))
    FOCK_MOMENTUM_SPACING: float = float(os.getenv("FOCK_MOMENTUM_SPACING", "1.0"))
    FOCK_WINDOW_POINTS: int = int(os.getenv("FOCK_WINDOW_POINTS", "64"))
    PERTURBATIVE_LIMIT: float = float(os.getenv("PERTURBATIVE_LIMIT", "0.5"))

    # Fit Configuration
    FIT_MAX_ITER: int = int(os.getenv("FIT_MAX_ITER", "200"))
    FIT_FD_STEP: float = float(os.getenv("FIT_FD_STEP", "1e-6"))
    FIT_PARAM_TOL: float = float(os.getenv("FIT_PARAM_TOL", "1e-10"))
    FIT_RSS_TOL: float = float(os.getenv("FIT_RSS_TOL", "1e-12"))
    FIT_INITIAL_DAMPING: float = float(os.getenv("FIT_INITIAL_DAMPING", "1e-3"))
    FIT_ZERO_THRESHOLD: float = float(os.getenv("FIT_ZERO_THRESHOLD", "0.05"))
    FIT_DEFAULT_ALPHA: float = float(os.getenv("FIT_DEFAULT_ALPHA", "1e-3"))
    FIT_DEFAULT_BETA: float = float(os.getenv("FIT_DEFAULT_BETA", "1e-3"))
    FIT_SCAN_POINTS: int = int(os.getenv("FIT_SCAN_POINTS", "1500"))
    FIT_SCAN_SPAN: float = float(os.getenv("FIT_SCAN_SPAN", "100"))
