"""
Pionic Femtoscopy Simulator
"""

__version__ = "1.0.0"
