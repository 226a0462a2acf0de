"""Partial-transpose negativity of bipartite states (reported in bits)."""

from __future__ import annotations

from dataclasses import replace
from typing import Iterable, Sequence

import numpy as np

from .ensembles import EnsembleSpec
from .linalg import partial_transpose

__all__ = [
    "PPT_THRESHOLD",
    "pt_trace_norm",
    "log_negativity",
    "negativity",
    "negativity_curve",
    "two_qubit_separable",
]

PPT_THRESHOLD = -1e-10


def _pt_spectrum(rho, dims, region) -> np.ndarray:
    rt = partial_transpose(rho, dims, region)
    return np.linalg.eigvalsh(0.5 * (rt + rt.conj().T))


def pt_trace_norm(rho, dims, region: Iterable[int]) -> float:
    """``||rho^{T_A}||_1``."""
    return float(np.abs(_pt_spectrum(rho, dims, region)).sum())


def log_negativity(rho, dims, region: Iterable[int]) -> float:
    """``E_N = log2 ||rho^{T_A}||_1``.

    A PT spectrum bounded below by ``PPT_THRESHOLD`` counts as PPT and
    returns exactly 0, so round-off never fakes entanglement.
    """
    w = _pt_spectrum(rho, dims, region)
    if w.min() >= PPT_THRESHOLD:
        return 0.0
    return max(0.0, float(np.log2(np.abs(w).sum())))


def negativity(rho, dims, region: Iterable[int]) -> float:
    """``N = (||rho^{T_A}||_1 - 1) / 2``, zero on PPT states."""
    w = _pt_spectrum(rho, dims, region)
    if w.min() >= PPT_THRESHOLD:
        return 0.0
    return max(0.0, 0.5 * (float(np.abs(w).sum()) - 1.0))


def negativity_curve(ensemble: EnsembleSpec, region: Iterable[int], betas: Sequence[float],
                     dims: Sequence[int] | None = None) -> list[tuple[float, float]]:
    """Log-negativity of the ensemble's state at each inverse temperature."""
    region = list(region)
    if dims is None:
        dims = ensemble.rep.dims if ensemble.rep is not None else _qubit_dims(ensemble.hamiltonian)
    out = []
    for beta in betas:
        state = replace(ensemble, beta=float(beta)).state()
        out.append((float(beta), log_negativity(state, dims, region)))
    return out


def _qubit_dims(h: np.ndarray) -> tuple[int, ...]:
    n = int(round(np.log2(h.shape[0])))
    if 2 ** n != h.shape[0]:
        raise ValueError("pass dims explicitly for non-qubit systems")
    return (2,) * n


def two_qubit_separable(rho) -> bool:
    """Peres-Horodecki test; exact for two qubits."""
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise ValueError(f"two_qubit_separable needs a 4x4 density matrix, got {rho.shape}")
    rt = partial_transpose(rho, (2, 2), [0])
    return bool(np.linalg.eigvalsh(0.5 * (rt + rt.conj().T)).min() >= PPT_THRESHOLD)
