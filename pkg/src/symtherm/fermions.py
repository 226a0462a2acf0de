"""Majorana operators, the fermionic partial transpose and fermionic negativity.

Jordan-Wigner ordering is fixed left to right over modes (mode 0 is the
slowest tensor factor), with zero-based Majorana indices

    c[2k]   = Z_0 ... Z_{k-1} X_k
    c[2k+1] = Z_0 ... Z_{k-1} Y_k

This ordering is the single source of truth: the fermionic transpose is
defined through the monomial expansion and therefore depends on it.
Each Majorana monomial is a signed permutation matrix in the computational
basis, so expanding a state costs ``O(4^n * 2^n)`` instead of dense products.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .exceptions import ParityError
from .linalg import check_hermitian, trace_norm
from .results import ConditionResult
from .symmetry import commutator_tolerance

__all__ = [
    "MajoranaSystem",
    "ModePartition",
    "fermionic_partial_transpose",
    "fermionic_log_negativity",
    "check_fermionic_gibbs_condition",
    "check_fermionic_canonical_condition",
]

_COEFF_CUTOFF = 1e-12
_PARITY_TOL = 1e-10


@dataclass(frozen=True)
class ModePartition:
    """Region ``A`` given as a set of Majorana indices (complement is ``B``)."""

    a_majoranas: frozenset[int]

    def __init__(self, a_majoranas: Iterable[int]):
        object.__setattr__(self, "a_majoranas", frozenset(int(j) for j in a_majoranas))

    @classmethod
    def from_modes(cls, modes: Iterable[int]) -> "ModePartition":
        return cls(j for k in modes for j in (2 * k, 2 * k + 1))

    @property
    def size(self) -> int:
        return len(self.a_majoranas)

    @property
    def eta(self) -> int:
        """Sign with ``P^{T_A} = eta P``: ``i^{|A|}`` for an even Majorana count ``|A|``."""
        if self.size % 2:
            raise ParityError("an odd number of Majoranas in A maps P to +-iP; no sign exists")
        return -1 if (self.size // 2) % 2 else 1


def _as_partition(region) -> ModePartition:
    return region if isinstance(region, ModePartition) else ModePartition(region)


class MajoranaSystem:
    """``n`` fermionic modes encoded on ``n`` qubits by Jordan-Wigner."""

    def __init__(self, n_modes: int):
        if n_modes < 1:
            raise ValueError("need at least one mode")
        self.n_modes = int(n_modes)
        self.dim = 2 ** self.n_modes
        self.n_majoranas = 2 * self.n_modes
        states = np.arange(self.dim)
        # occupation bit of mode k in basis state s (mode 0 is the most significant bit)
        self._bits = (states[:, None] >> (self.n_modes - 1 - np.arange(self.n_modes))[None, :]) & 1
        self._signed = [self._majorana_action(j) for j in range(self.n_majoranas)]

    @property
    def dims(self) -> tuple[int, ...]:
        return (2,) * self.n_modes

    def _majorana_action(self, j: int) -> tuple[np.ndarray, np.ndarray]:
        k, is_y = divmod(j, 2)
        bits = self._bits
        string = (-1.0) ** bits[:, :k].sum(axis=1)
        flip = 1 << (self.n_modes - 1 - k)
        perm = np.arange(self.dim) ^ flip
        phase = string.astype(complex)
        if is_y:
            phase = phase * 1j * (-1.0) ** bits[:, k]
        return perm, phase

    def _monomial_action(self, indices: Iterable[int]) -> tuple[np.ndarray, np.ndarray]:
        """Signed permutation of ``c[i1] c[i2] ...``: ``m|s> = phase[s] |perm[s]>``."""
        perm = np.arange(self.dim)
        phase = np.ones(self.dim, dtype=complex)
        for j in reversed(list(indices)):
            p, ph = self._signed[j]
            # apply c_j after the current product (it acts on the left)
            phase = phase * ph[perm]
            perm = p[perm]
        return perm, phase

    @staticmethod
    def _dense(perm: np.ndarray, phase: np.ndarray) -> np.ndarray:
        m = np.zeros((perm.size, perm.size), dtype=complex)
        m[perm, np.arange(perm.size)] = phase
        return m

    def monomial(self, indices: Iterable[int]) -> np.ndarray:
        """Dense matrix of the product ``c[i1] c[i2] ...`` taken in the given order."""
        return self._dense(*self._monomial_action(indices))

    @cached_property
    def majoranas(self) -> list[np.ndarray]:
        return [self._dense(*a) for a in self._signed]

    @cached_property
    def parity(self) -> np.ndarray:
        """``P = i^n c_0 c_1 ... c_{2n-1}``, Hermitian with ``P^2 = 1``."""
        return (1j ** self.n_modes) * self.monomial(range(self.n_majoranas))

    def sector_projector(self, sign: int) -> np.ndarray:
        if sign not in (1, -1):
            raise ValueError("fermion parity sector must be +1 or -1")
        return 0.5 * (np.eye(self.dim) + sign * self.parity)

    def monomial_masks(self):
        return range(1 << self.n_majoranas)

    def mask_indices(self, mask: int) -> list[int]:
        return [j for j in range(self.n_majoranas) if mask >> j & 1]

    def expand(self, op: np.ndarray) -> dict[int, complex]:
        """Coefficients ``Tr[m^dag op] / dim`` over ordered monomials, keyed by bitmask."""
        op = np.asarray(op)
        cols = np.arange(self.dim)
        out = {}
        for mask in self.monomial_masks():
            perm, phase = self._monomial_action(self.mask_indices(mask))
            coeff = np.dot(np.conj(phase), op[perm, cols]) / self.dim
            if abs(coeff) > _COEFF_CUTOFF:
                out[mask] = complex(coeff)
        return out

    def resum(self, coeffs: dict[int, complex]) -> np.ndarray:
        cols = np.arange(self.dim)
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for mask, c in coeffs.items():
            perm, phase = self._monomial_action(self.mask_indices(mask))
            out[perm, cols] += c * phase
        return out


def _a_mask(part: ModePartition, sys: MajoranaSystem) -> int:
    if any(j < 0 or j >= sys.n_majoranas for j in part.a_majoranas):
        raise ValueError("Majorana index out of range")
    return sum(1 << j for j in part.a_majoranas)


def fermionic_partial_transpose(rho, region, sys: MajoranaSystem) -> np.ndarray:
    """Multiply every monomial with ``k`` Majoranas in ``A`` by ``i^k``, then resum.

    ``rho`` must have even fermion parity.
    """
    rho = np.asarray(rho)
    part = _as_partition(region)
    amask = _a_mask(part, sys)
    scale = max(1.0, float(np.linalg.norm(rho)))
    coeffs = sys.expand(rho)
    odd = [m for m, c in coeffs.items() if bin(m).count("1") % 2 and abs(c) > _PARITY_TOL * scale]
    if odd:
        raise ParityError(f"operator has {len(odd)} odd-parity monomial components")
    phased = {m: c * 1j ** bin(m & amask).count("1") for m, c in coeffs.items()}
    return sys.resum(phased)


def fermionic_log_negativity(rho, region, sys: MajoranaSystem) -> float:
    """``log2 ||rho^{T_A}||_1`` with the fermionic transpose (singular values)."""
    return max(0.0, float(np.log2(trace_norm(fermionic_partial_transpose(rho, region, sys)))))


def _require_even(h: np.ndarray, sys: MajoranaSystem) -> None:
    p = sys.parity
    viol = float(np.linalg.norm(h @ p - p @ h))
    if viol > commutator_tolerance(h) + 1e-14:
        raise ParityError(f"Hamiltonian does not conserve fermion parity ({viol:.3e})")


def check_fermionic_gibbs_condition(h, region, sys: MajoranaSystem) -> ConditionResult:
    """Persistence test for the Gibbs state: ``(H^{T_A})^dag != H^{T_A}``."""
    h = check_hermitian(h, "Hamiltonian")
    _require_even(h, sys)
    ht = fermionic_partial_transpose(h, region, sys)
    norm = float(np.linalg.norm(ht - ht.conj().T))
    tol = commutator_tolerance(h)
    return ConditionResult(norm > tol, norm, tol)


def check_fermionic_canonical_condition(h, sector: int, region, sys: MajoranaSystem) -> ConditionResult:
    """Persistence test for fixed parity ``sector``:
    ``Pi_{-eta Lambda} (H Pi_Lambda)^{T_A} Pi_{-eta Lambda} != 0``.
    """
    h = check_hermitian(h, "Hamiltonian")
    _require_even(h, sys)
    part = _as_partition(region)
    flipped = sys.sector_projector(-part.eta * sector)
    xt = fermionic_partial_transpose(h @ sys.sector_projector(sector), part, sys)
    norm = float(np.linalg.norm(flipped @ xt @ flipped))
    tol = commutator_tolerance(h)
    return ConditionResult(norm > tol, norm, tol, witness=sector)
