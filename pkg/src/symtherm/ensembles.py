"""Gibbs and canonical thermal states, free energy and symmetric channels.

Boltzmann weights are always taken from the eigendecomposition of ``H`` with
the ground energy subtracted, so large ``beta`` never overflows, and
``beta = inf`` gives the normalized projector onto the (sector) ground space.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exceptions import SectorError, SupportError, SymmetryError
from .linalg import check_hermitian, eig_hermitian
from .symmetry import Representation, require_symmetric

__all__ = [
    "EnsembleSpec",
    "gibbs_state",
    "canonical_state",
    "von_neumann_entropy",
    "free_energy",
    "relative_entropy",
    "apply_kraus_channel",
    "random_strongly_symmetric_state",
]

ENTROPY_FLOOR = 1e-14
_DEGENERACY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class EnsembleSpec:
    """A Hamiltonian at inverse temperature ``beta``, optionally restricted to a sector."""

    hamiltonian: np.ndarray
    beta: float
    sector: tuple[int, ...] | None = None
    rep: Representation | None = None

    def __post_init__(self):
        check_hermitian(self.hamiltonian, "Hamiltonian")
        if not self.beta >= 0:
            raise ValueError(f"beta must be >= 0, got {self.beta}")
        if self.sector is not None:
            if self.rep is None:
                raise SymmetryError("a sector needs the representation that defines it")
            object.__setattr__(self, "sector", self.rep.group.label(self.sector))

    def state(self) -> np.ndarray:
        if self.sector is None:
            return gibbs_state(self.hamiltonian, self.beta)
        return canonical_state(self.hamiltonian, self.beta, self.rep, self.sector)


def _boltzmann(w: np.ndarray, beta: float) -> np.ndarray:
    shifted = w - w.min()
    if np.isinf(beta):
        scale = max(1.0, float(np.abs(w).max()))
        return (shifted <= _DEGENERACY_TOL * scale).astype(float)
    return np.exp(-beta * shifted)


def _weighted_state(v: np.ndarray, weights: np.ndarray) -> np.ndarray:
    rho = (v * weights) @ v.conj().T
    return rho / weights.sum()


def gibbs_state(h, beta: float) -> np.ndarray:
    """``exp(-beta H) / Tr exp(-beta H)``; ``beta = 0`` returns exactly ``1/dim``."""
    h = check_hermitian(h, "Hamiltonian")
    if beta < 0:
        raise ValueError("beta must be >= 0")
    if beta == 0:
        return np.eye(h.shape[0], dtype=complex) / h.shape[0]
    w, v = eig_hermitian(h)
    return _weighted_state(v, _boltzmann(w, beta))


def canonical_state(h, beta: float, rep: Representation, sector) -> np.ndarray:
    """``exp(-beta H) Pi / Tr[exp(-beta H) Pi]`` for a symmetric ``H``.

    ``H`` is diagonalized inside the sector (in the adapted basis), which keeps
    the result exactly supported on the charge sector.
    """
    h = check_hermitian(h, "Hamiltonian")
    if beta < 0:
        raise ValueError("beta must be >= 0")
    require_symmetric(rep, h, "Hamiltonian")
    sector = rep.group.label(sector)
    mask = rep.sector_mask(sector)
    if not mask.any():
        raise SectorError(f"sector {sector} is empty")
    basis = rep.adapted_basis()[:, mask]
    if beta == 0:
        return basis @ basis.conj().T / mask.sum()
    block = basis.conj().T @ h @ basis
    w, v = eig_hermitian(0.5 * (block + block.conj().T))
    return _weighted_state(basis @ v, _boltzmann(w, beta))


def von_neumann_entropy(rho) -> float:
    """``-Tr rho ln rho`` in nats; eigenvalues below ``1e-14`` contribute nothing."""
    p = np.linalg.eigvalsh(check_hermitian(rho, "state"))
    p = p[p > ENTROPY_FLOOR]
    return float(-(p * np.log(p)).sum())


def free_energy(rho, h, beta: float) -> float:
    """``F = Tr[rho H] - S(rho) / beta``."""
    if not beta > 0:
        raise ValueError(f"free energy needs beta > 0, got {beta}")
    energy = float(np.trace(np.asarray(rho) @ np.asarray(h)).real)
    return energy - von_neumann_entropy(rho) / beta


def relative_entropy(rho, sigma) -> float:
    """``D(rho || sigma) = Tr rho (ln rho - ln sigma)`` in nats."""
    p, u = eig_hermitian(rho)
    s, v = eig_hermitian(sigma)
    # weight of rho on each sigma eigenvector
    overlap = np.abs(v.conj().T @ u) ** 2 @ np.clip(p, 0, None)
    null = s < 1e-12
    if np.any(overlap[null] > 1e-10):
        raise SupportError("rho has weight outside the support of sigma")
    keep = p > ENTROPY_FLOOR
    tr_rho_log_rho = float((p[keep] * np.log(p[keep])).sum())
    tr_rho_log_sigma = float((overlap[~null] * np.log(s[~null])).sum())
    return tr_rho_log_rho - tr_rho_log_sigma


def apply_kraus_channel(rho, kraus: Sequence[np.ndarray]) -> np.ndarray:
    """``sum_a K_a rho K_a^dag`` after checking ``sum_a K_a^dag K_a = 1``."""
    rho = np.asarray(rho)
    kraus = [np.asarray(k) for k in kraus]
    if not kraus:
        raise ValueError("a channel needs at least one Kraus operator")
    completeness = sum(k.conj().T @ k for k in kraus)
    if np.linalg.norm(completeness - np.eye(rho.shape[0])) > 1e-9:
        raise ValueError("Kraus operators are not trace preserving (sum K^dag K != 1)")
    return sum(k @ rho @ k.conj().T for k in kraus)


def random_strongly_symmetric_state(rng: np.random.Generator, rep: Representation, sector,
                                    rank: int | None = None) -> np.ndarray:
    """``Pi M M^dag Pi / Tr`` for a random complex ``M``."""
    proj = rep.projector(sector)
    dim = proj.shape[0]
    rank = dim if rank is None else rank
    m = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = proj @ m @ m.conj().T @ proj
    tr = np.trace(rho).real
    if tr <= 0:
        raise SectorError(f"sector {sector} is empty")
    return rho / tr
