"""Executable entangling conditions for symmetric Hamiltonians.

The commutator conditions are read with existential semantics: a condition
holds when *some* group element ``g`` gives a commutator whose Frobenius norm
exceeds ``1e-10 * ||H||_F``. (``g = e`` always commutes, so a literal
"for all g" would never hold.)
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .ensembles import EnsembleSpec
from .exceptions import SectorError
from .fermions import (
    MajoranaSystem,
    ModePartition,
    check_fermionic_canonical_condition,
    check_fermionic_gibbs_condition,
)
from .linalg import check_hermitian, partial_transpose
from .results import ConditionResult
from .symmetry import Representation, commutator_tolerance, require_symmetric

__all__ = [
    "ConditionResult",
    "check_sec",
    "check_ec",
    "check_nc",
    "form_ii_residual",
    "verify_ec_nc_equivalence",
    "predict_persistence",
]


def _prepare(h, rep: Representation, region) -> tuple[np.ndarray, list[int]]:
    h = check_hermitian(h, "Hamiltonian")
    require_symmetric(rep, h, "Hamiltonian")
    region = sorted({int(i) for i in region})
    if not region or len(region) >= rep.n_sites:
        raise ValueError("bipartition needs non-empty A and B")
    return h, region


def _sector_projector(rep: Representation, sector) -> np.ndarray:
    proj = rep.projector(sector)
    if not np.trace(proj).real > 0.5:
        raise SectorError(f"sector {tuple(sector) if not np.isscalar(sector) else sector} is empty")
    return proj


def _search(h, rep, region, right=None) -> ConditionResult:
    tol = commutator_tolerance(h)
    best, witness = 0.0, None
    for g in rep.witness_elements():
        u = rep.unitary(g, region)
        comm = u @ h - h @ u
        if right is not None:
            comm = comm @ right
        norm = float(np.linalg.norm(comm))
        if norm > best:
            best, witness = norm, g
    holds = best > tol
    return ConditionResult(holds, best, tol, witness if holds else None)


def check_sec(h, rep: Representation, region: Iterable[int]) -> ConditionResult:
    """Symmetric entangling condition: ``[U_A(g), H] != 0`` for some ``g``."""
    h, region = _prepare(h, rep, region)
    return _search(h, rep, region)


def check_ec(h, rep: Representation, sector, region: Iterable[int]) -> ConditionResult:
    """Entangling condition: ``[U_A(g), H] Pi_Lambda != 0`` for some ``g``."""
    h, region = _prepare(h, rep, region)
    return _search(h, rep, region, right=_sector_projector(rep, sector))


def check_nc(h, rep: Representation, sector, region: Iterable[int]) -> ConditionResult:
    """Negativity condition ``(1 - Pi)(H Pi)^{T_A}(1 - Pi) != 0``.

    The partial transpose is taken in the basis that diagonalizes ``U_A``.
    """
    h, region = _prepare(h, rep, region)
    proj = _sector_projector(rep, sector)
    v = rep.adapted_basis(region)
    h_ad = v.conj().T @ h @ v
    p_ad = v.conj().T @ proj @ v
    comp = np.eye(rep.dim) - p_ad
    block = comp @ partial_transpose(h_ad @ p_ad, rep.dims, region) @ comp
    norm = float(np.linalg.norm(block))
    tol = commutator_tolerance(h)
    return ConditionResult(norm > tol, norm, tol, rep.group.label(sector))


def form_ii_residual(h, rep: Representation, sector, region: Iterable[int]) -> float:
    """``|| H Pi - sum_lambda Pi^A_lambda (H Pi) Pi^A_lambda ||_F``."""
    h, region = _prepare(h, rep, region)
    hp = h @ _sector_projector(rep, sector)
    blocks = np.zeros_like(hp)
    for lam in rep.realizable_labels(region):
        pa = rep.projector(lam, region)
        blocks += pa @ hp @ pa
    return float(np.linalg.norm(hp - blocks))


def verify_ec_nc_equivalence(h, rep: Representation, sector, region: Iterable[int]) -> bool:
    """True when EC and NC agree and the block-diagonal form holds exactly when both fail."""
    ec = check_ec(h, rep, sector, region)
    nc = check_nc(h, rep, sector, region)
    block_diagonal = form_ii_residual(h, rep, sector, region) <= commutator_tolerance(h)
    return ec.holds == nc.holds and block_diagonal == (not ec.holds)


def predict_persistence(spec: EnsembleSpec, rep: Representation, region: Iterable[int],
                        sectors: Sequence | None = None,
                        fermionic: tuple[MajoranaSystem, ModePartition] | None = None) -> dict:
    """Collect every condition into one JSON-ready report.

    ``sec`` decides symmetric entanglement of the Gibbs ensemble at all high
    temperatures; ``ec``/``nc`` per sector decide it for each canonical ensemble.
    """
    region = sorted({int(i) for i in region})
    h = spec.hamiltonian
    if sectors is None:
        sectors = [spec.sector] if spec.sector is not None else rep.realizable_labels()
    sec = check_sec(h, rep, region)
    report = {"sec": sec.to_dict(), "partition": region, "sectors": []}
    for lam in sectors:
        lam = rep.group.label(lam)
        ec = check_ec(h, rep, lam, region)
        nc = check_nc(h, rep, lam, region)
        report["sectors"].append({"label": list(lam), "ec": ec.to_dict(), "nc": nc.to_dict()})
    if fermionic is not None:
        sys, part = fermionic
        gibbs = check_fermionic_gibbs_condition(h, part, sys)
        report["fermionic"] = {
            "partition_majoranas": sorted(part.a_majoranas),
            "gibbs": gibbs.to_dict(),
            "canonical": [
                {"parity": s, **check_fermionic_canonical_condition(h, s, part, sys).to_dict()}
                for s in (1, -1)
            ],
        }
    return report
