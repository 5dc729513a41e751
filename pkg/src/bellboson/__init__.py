"""Many-body Bell correlators and local-realistic bounds for bosonic qubits.

Core pieces: signed log-domain arithmetic (`numerics`), symmetric-basis
states and collective ladder operators (`dicke`), the two-mode Bose-Hubbard
ground state (`hamiltonian`), Bell correlators and bounds (`bell`),
four-mode pair-production states (`spdc`), classical strategy enumeration
(`lhv`), and a sweep CLI (`cli`).
"""

__version__ = "0.1.0"
