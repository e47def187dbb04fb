"""
hamsim: when and how fast one two-qubit interaction Hamiltonian can simulate
another under fast local control.
"""

__version__ = "1.0.0"
