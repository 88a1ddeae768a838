"""
sqsp: a compiler and verifier for sparse quantum state preparation circuits.

The package synthesizes four-stage preparation circuits (amplitude loading,
one-hot encoding, permutation and garbage elimination) in a purely unitary
mode and in a measurement-and-feedforward mode, lowers them to
{single-qubit unitary, CNOT, measure, conditioned X/Z}, reports resource
metrics and checks the result with a dense statevector simulator.
"""
from sqsp.version import VERSION

__version__ = VERSION
