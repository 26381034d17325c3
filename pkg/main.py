"""
Main entry point for the femtoscopy simulator

Usage:
    python main.py coherence --model tophat --k 1e15 --alpha 1e-9 --b-max 10
    python main.py witness --state werner:0.5
    python main.py fock --sources 2
    python main.py --help
"""

import sys

from src.cli import main


if __name__ == "__main__":
    sys.exit(main())
