"""Canonical entangled states, their density operators, and preparation
unitaries.

Index convention for composite vectors is row-major: the amplitude of
basis term e_i (x) e_j (x) e_k sits at flat index d^2*(i) + d*(j) + k
with 0-based i, j, k.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from .numerics import as_vector, complete_to_unitary, dyadic, load_matrix

__all__ = [
    "RSQRT2",
    "RSQRT3",
    "RSQRT6",
    "bell_state",
    "qutrit2_singlet",
    "qutrit3_singlet",
    "state_operator",
    "preparation_unitary",
    "resolve_state",
    "STATE_NAMES",
]

# One constant per square-root family, reused by everything in the package
# (and by the test fixtures) so that identical amplitudes are identical
# floats, not merely close ones.
RSQRT2 = np.sqrt(0.5)
RSQRT3 = 1.0 / np.sqrt(3.0)
RSQRT6 = 1.0 / np.sqrt(6.0)

_BELL_PATTERNS = {
    1: (1.0, 0.0, 0.0, 1.0),
    2: (1.0, 0.0, 0.0, -1.0),
    3: (0.0, 1.0, 1.0, 0.0),
    4: (0.0, 1.0, -1.0, 0.0),
}


def bell_state(k: int) -> np.ndarray:
    """The k-th Bell state (k = 1..4) as a 4-vector.

    1: (e11 + e22)/sqrt2   2: (e11 - e22)/sqrt2
    3: (e12 + e21)/sqrt2   4: (e12 - e21)/sqrt2 (the two-qubit singlet)
    """
    if k not in _BELL_PATTERNS:
        raise ValueError(f"Bell state index must be 1..4, got {k!r}")
    return RSQRT2 * np.array(_BELL_PATTERNS[k], dtype=np.complex128)


def qutrit2_singlet() -> np.ndarray:
    """Two-qutrit singlet (e13 - e22 + e31)/sqrt3 as a 9-vector."""
    v = np.zeros(9, dtype=np.complex128)
    v[2] = RSQRT3
    v[4] = -RSQRT3
    v[6] = RSQRT3
    return v


_PERM_SIGN = {
    (0, 1, 2): 1.0,
    (1, 2, 0): 1.0,
    (2, 0, 1): 1.0,
    (0, 2, 1): -1.0,
    (2, 1, 0): -1.0,
    (1, 0, 2): -1.0,
}


def qutrit3_singlet() -> np.ndarray:
    """Three-qutrit singlet as a 27-vector: -(1/sqrt6) * Levi-Civita.

    Totally antisymmetric; the six nonzero amplitudes are +-1/sqrt6 at the
    permutations of (0, 1, 2).
    """
    v = np.zeros(27, dtype=np.complex128)
    for perm in permutations((0, 1, 2)):
        i, j, k = perm
        v[9 * i + 3 * j + k] = -_PERM_SIGN[perm] * RSQRT6
    return v


def state_operator(psi) -> np.ndarray:
    """Density operator |psi><psi| of a normalized pure state."""
    v = as_vector(psi)
    if abs(np.linalg.norm(v) - 1.0) > 1e-10:
        raise ValueError("state must be normalized")
    return dyadic(v)


def preparation_unitary(psi, input_port: int = 0) -> np.ndarray:
    """Unitary sending the computational basis vector at ``input_port`` to psi.

    Column ``input_port`` (0-based) equals psi exactly; the other columns
    are a deterministic orthonormal completion.
    """
    v = as_vector(psi)
    if abs(np.linalg.norm(v) - 1.0) > 1e-10:
        raise ValueError("state must be normalized")
    return complete_to_unitary(v, input_port)


STATE_NAMES = ("bell1", "bell2", "bell3", "bell4", "qutrit2-singlet", "qutrit3-singlet")


def resolve_state(spec: str) -> np.ndarray:
    """Resolve a state spec string to a normalized vector.

    Accepts the built-in names (bell1..bell4, qutrit2-singlet,
    qutrit3-singlet) or ``@path.json`` pointing at a matrix file with a
    single column.
    """
    spec = spec.strip()
    if spec.startswith("@"):
        m = load_matrix(spec[1:])
        if m.shape[1] != 1:
            raise ValueError(f"state file must hold a single column, got {m.shape}")
        v = m.reshape(-1)
        if abs(np.linalg.norm(v) - 1.0) > 1e-10:
            raise ValueError("state loaded from file is not normalized")
        return v
    if spec.startswith("bell"):
        try:
            return bell_state(int(spec[4:]))
        except ValueError:
            raise ValueError(f"unknown state spec {spec!r}") from None
    if spec == "qutrit2-singlet":
        return qutrit2_singlet()
    if spec == "qutrit3-singlet":
        return qutrit3_singlet()
    raise ValueError(f"unknown state spec {spec!r}; known: {', '.join(STATE_NAMES)} or @file.json")
