"""Brute-force Clebsch-Gordan vectors by dense diagonalization.

Independent of the sparse operator machinery: the irrep matrices are built
directly with numpy on a cutoff one above the largest grade requested, the
coproduct Casimir is formed densely, and each grade block is diagonalized
with ``numpy.linalg.eigh``. Eigenvectors are matched to ``j`` through their
eigenvalue ``-eps12 mu12`` and put in the first-coefficient-positive phase.
"""

from __future__ import annotations

import numpy as np


def _mu_number(n: int, mu: float) -> float:
    return n + mu * (1 - (-1) ** n)


def _irrep(mu: float, eps: int, cutoff: int):
    dim = cutoff + 1
    Ap = np.zeros((dim, dim))
    for n in range(1, dim):
        Ap[n, n - 1] = np.sqrt(_mu_number(n, mu))
    A0 = np.diag([n + mu + 0.5 for n in range(dim)])
    P = np.diag([eps * (-1) ** n for n in range(dim)]).astype(float)
    return A0, Ap, Ap.T.copy(), P


def coupled_casimir(mu1: float, mu2: float, eps1: int, eps2: int, cutoff: int) -> np.ndarray:
    A01, Ap1, Am1, P1 = _irrep(mu1, eps1, cutoff)
    A02, Ap2, Am2, P2 = _irrep(mu2, eps2, cutoff)
    eye = np.eye(cutoff + 1)
    A0 = np.kron(A01, eye) + np.kron(eye, A02)
    Ap = np.kron(Ap1, P2) + np.kron(eye, Ap2)
    Am = np.kron(Am1, P2) + np.kron(eye, Am2)
    P = np.kron(P1, P2)
    return (Ap @ Am - A0 + 0.5 * np.eye(A0.shape[0])) @ P


def oracle_vectors(mu1: float, mu2: float, eps1: int, eps2: int, max_grade: int, j_max: int) -> dict:
    """``{(j, n12): vector over n1 = 0..j+n12}`` for every grade up to ``max_grade``."""
    cutoff = max_grade + 1
    Q = coupled_casimir(mu1, mu2, eps1, eps2, cutoff)
    out = {}
    for g in range(max_grade + 1):
        idx = [n1 * (cutoff + 1) + (g - n1) for n1 in range(g + 1)]
        block = Q[np.ix_(idx, idx)]
        values, vectors = np.linalg.eigh(block)
        for j in range(min(g, j_max) + 1):
            target = -((-1) ** j) * eps1 * eps2 * (mu1 + mu2 + j + 0.5)
            k = int(np.argmin(np.abs(values - target)))
            if abs(values[k] - target) > 1e-8:
                raise AssertionError(f"grade {g}: no eigenvalue near {target}")
            v = vectors[:, k].astype(complex)
            first = v[np.flatnonzero(np.abs(v) > 1e-12)[0]]
            out[(j, g - j)] = v * (abs(first) / first)
    return out


def grade_spectrum(mu1: float, mu2: float, eps1: int, eps2: int, g: int) -> np.ndarray:
    cutoff = g + 1
    Q = coupled_casimir(mu1, mu2, eps1, eps2, cutoff)
    idx = [n1 * (cutoff + 1) + (g - n1) for n1 in range(g + 1)]
    return np.sort(np.linalg.eigvalsh(Q[np.ix_(idx, idx)]))
