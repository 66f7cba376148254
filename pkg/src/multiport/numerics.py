"""Dense complex linear algebra helpers shared by the rest of the package.

Everything operates on plain ``numpy`` arrays with ``complex128`` entries.
Problem sizes are small (at most 27x27), so the implementations favor
readability over sparsity tricks.
"""

from __future__ import annotations

import json
from typing import Union

import numpy as np

__all__ = [
    "as_matrix",
    "as_vector",
    "kron",
    "dyadic",
    "unitarity_deviation",
    "commutator",
    "random_unitary",
    "complete_to_unitary",
    "equal_up_to_global_phase",
    "save_matrix",
    "load_matrix",
    "matrix_to_payload",
    "matrix_from_payload",
]

ArrayLike = Union[np.ndarray, list, tuple]


def as_matrix(m: ArrayLike) -> np.ndarray:
    """Coerce ``m`` to a finite complex 2-d array (no copy when possible)."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got an array of ndim={a.ndim}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def as_vector(v: ArrayLike) -> np.ndarray:
    """Coerce ``v`` to a finite complex 1-d array; accepts n x 1 / 1 x n."""
    a = np.asarray(v, dtype=np.complex128)
    if a.ndim == 2 and 1 in a.shape:
        a = a.reshape(-1)
    if a.ndim != 1:
        raise ValueError(f"expected a vector, got an array of shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("vector entries must be finite")
    return a


def kron(a: ArrayLike, b: ArrayLike) -> np.ndarray:
    """Kronecker product in row-major convention (delegates to numpy)."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def dyadic(v: ArrayLike) -> np.ndarray:
    """Projector |v><v| onto a nonzero vector ``v``."""
    a = as_vector(v)
    if np.linalg.norm(a) == 0.0:
        raise ValueError("dyadic of the zero vector is undefined")
    return np.outer(a, a.conj())


def unitarity_deviation(m: ArrayLike) -> float:
    """Max-norm distance of ``m``'s Gram matrix from the identity.

    Returns ``max |m^dagger m - I|`` entrywise; 0 for an exactly unitary
    matrix.  Raises ValueError for non-square input.
    """
    a = as_matrix(m)
    n, c = a.shape
    if n != c:
        raise ValueError(f"unitarity is defined for square matrices, got {n}x{c}")
    gram = a.conj().T @ a
    return float(np.max(np.abs(gram - np.eye(n))))


def commutator(a: ArrayLike, b: ArrayLike) -> np.ndarray:
    """Matrix commutator ``a @ b - b @ a`` for same-shape square matrices."""
    x = as_matrix(a)
    y = as_matrix(b)
    if x.shape != y.shape or x.shape[0] != x.shape[1]:
        raise ValueError(f"commutator needs equal square shapes, got {x.shape} and {y.shape}")
    return x @ y - y @ x


def random_unitary(n: int, seed: int) -> np.ndarray:
    """Haar-distributed n x n unitary, deterministic for a given seed.

    Ginibre matrix -> QR, with the R-diagonal phase fix that makes the
    distribution Haar and the output independent of LAPACK sign choices.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    q = q * (d / np.abs(d)).conj()
    return q


_GS_DROP = 1e-8  # candidates with shorter residuals are linearly dependent


def complete_to_unitary(column: ArrayLike, position: int) -> np.ndarray:
    """Extend a unit vector to a full unitary with that vector as one column.

    The given ``column`` is placed at index ``position`` (0-based).  The
    remaining columns are produced by modified Gram-Schmidt over the standard
    basis vectors taken in index order, dropping candidates whose residual
    norm falls below 1e-8; accepted vectors fill the remaining column slots
    in ascending index order.  Fully deterministic.
    """
    v = as_vector(column)
    n = v.size
    if not 0 <= position < n:
        raise ValueError(f"column position {position} out of range for dimension {n}")
    if abs(np.linalg.norm(v) - 1.0) > 1e-10:
        raise ValueError("column must have unit norm")

    cols = [v]
    for k in range(n):
        if len(cols) == n:
            break
        cand = np.zeros(n, dtype=np.complex128)
        cand[k] = 1.0
        for u in cols:
            cand = cand - u * np.vdot(u, cand)
        norm = np.linalg.norm(cand)
        if norm < _GS_DROP:
            continue
        cols.append(cand / norm)
    if len(cols) < n:
        raise ValueError("failed to complete an orthonormal basis")  # pragma: no cover

    out = np.empty((n, n), dtype=np.complex128)
    slots = [position] + [i for i in range(n) if i != position]
    for slot, col in zip(slots, cols):
        out[:, slot] = col
    return out


def equal_up_to_global_phase(a: ArrayLike, b: ArrayLike, tol: float = 1e-10) -> bool:
    """True iff ``a == c * b`` entrywise within ``tol`` for some |c| = 1.

    The candidate phase is read off at the entry where |a| + |b| is largest;
    when either entry there is below ``tol`` the arrays are compared directly
    (only near-zero arrays can still match).
    """
    x = np.asarray(a, dtype=np.complex128)
    y = np.asarray(b, dtype=np.complex128)
    if x.shape != y.shape:
        raise ValueError(f"shape mismatch: {x.shape} vs {y.shape}")
    if x.size == 0:
        return True
    mag = np.abs(x) + np.abs(y)
    idx = np.unravel_index(int(np.argmax(mag)), mag.shape)
    if abs(x[idx]) <= tol or abs(y[idx]) <= tol:
        return bool(np.max(np.abs(x - y)) <= tol)
    c = x[idx] / y[idx]
    c = c / abs(c)
    return bool(np.max(np.abs(x - c * y)) <= tol)


# --- JSON persistence ---------------------------------------------------
#
# Matrix files: {"rows": R, "cols": C, "entries": [[re, im], ...]} with the
# entries flattened in row-major order.  Floats survive a dump/load round
# trip bitwise (json uses repr, which is shortest-exact for doubles).


def matrix_to_payload(m: ArrayLike) -> dict:
    a = as_matrix(m)
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in a.reshape(-1)],
    }


def matrix_from_payload(payload: dict) -> np.ndarray:
    try:
        rows = int(payload["rows"])
        cols = int(payload["cols"])
        entries = payload["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix payload: {exc}") from exc
    if rows < 1 or cols < 1:
        raise ValueError("matrix payload must have positive shape")
    if len(entries) != rows * cols:
        raise ValueError(
            f"matrix payload claims {rows}x{cols} but carries {len(entries)} entries"
        )
    flat = np.empty(rows * cols, dtype=np.complex128)
    for i, pair in enumerate(entries):
        re, im = pair
        flat[i] = complex(float(re), float(im))
    return flat.reshape(rows, cols)


def save_matrix(path, m: ArrayLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_payload(m), fh)


def load_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    return matrix_from_payload(payload)
