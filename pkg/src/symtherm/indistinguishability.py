"""Local indistinguishability of canonical and Gibbs ensembles.

At infinite temperature the canonical state is ``Pi_Lambda / Tr Pi_Lambda``.
Its marginal on a region ``A`` follows from sector counting alone,

    Tr_B Pi_Lambda = sum_lambda Pi^A_lambda * dim(sector Lambda - lambda on B),

so the distance to the maximally mixed marginal never needs the full
``d^N``-dimensional projector.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .ensembles import canonical_state, gibbs_state
from .exceptions import SymmetryError
from .linalg import check_hermitian, partial_trace, trace_norm
from .symmetry import Representation, SiteRep, require_symmetric

__all__ = [
    "ProjectorTrace",
    "projector_trace_ratio",
    "local_sector_distance",
    "marginal_sector_distance",
    "DecayFit",
    "fit_exponential_decay",
]


@dataclass(frozen=True)
class ProjectorTrace:
    exact: float
    asymptote: float
    xi: float

    @property
    def relative_error(self) -> float:
        return abs(self.exact - self.asymptote) / self.asymptote if self.asymptote else math.inf

    def __iter__(self):
        return iter((self.exact, self.asymptote, self.xi))


def _site_rep(rep) -> SiteRep:
    if isinstance(rep, SiteRep):
        return rep
    return rep._require_homogeneous()


def projector_trace_ratio(rep: Representation | SiteRep, sector, n_sites: int) -> ProjectorTrace:
    """``Tr Pi_Lambda`` for ``u^{(x)N}`` from the character sum, with its large-N asymptote.

    ``K`` collects the elements acting as scalars ``c_k`` on a site. The
    asymptote is ``d^N / |G| * sum_{k in K} conj(Lambda(k)) c_k^N``, which equals
    ``d^N / |G/K|`` for every realizable sector (and 0 for the others). The
    correction decays with length ``xi = -1 / ln(max_{g not in K} |Tr u(g)| / d)``.
    """
    site = _site_rep(rep)
    group = site.group
    if group.is_u1:
        raise SymmetryError("projector_trace_ratio needs a finite group")
    lam = group.label(sector)
    d = site.dim
    exact = 0.0 + 0.0j
    scalar_part = 0.0 + 0.0j
    off_k = 0.0
    for g in group.elements():
        u = site.image(g)
        weight = np.conj(group.character(lam, g))
        if site.is_scalar(g):
            c = u[0, 0]
            scalar_part += weight * c ** n_sites
            exact += weight * (c * d) ** n_sites
        else:
            tr = np.trace(u)
            exact += weight * tr ** n_sites
            off_k = max(off_k, abs(tr) / d)
    exact = float(exact.real) / group.order
    asymptote = float(scalar_part.real) * float(d) ** n_sites / group.order
    xi = math.inf if off_k < 1e-12 else -1.0 / math.log(off_k)
    return ProjectorTrace(exact, asymptote, xi)


def _region(rep: Representation, region) -> tuple[list[int], list[int]]:
    a = sorted({int(i) for i in region})
    if not a or any(i < 0 or i >= rep.n_sites for i in a):
        raise ValueError(f"invalid region {a}")
    return a, [i for i in range(rep.n_sites) if i not in a]


def marginal_sector_distance(rep: Representation, sector, region: Iterable[int]) -> float:
    """``|| Tr_B Pi/Tr Pi - 1_A/d_A ||_1`` by sector counting (infinite temperature)."""
    a, b = _region(rep, region)
    group = rep.group
    lam = group.label(sector)
    total = rep.sector_dimension(lam)
    if total == 0:
        raise SymmetryError(f"sector {lam} is empty")
    rep_a = Representation(group, [rep.site_reps[i] for i in a])
    d_a = rep_a.dim
    if not b:
        return trace_norm(rep_a.projector(lam) / total - np.eye(d_a) / d_a)
    rep_b = Representation(group, [rep.site_reps[i] for i in b])
    b_counts = {}
    for row in rep_b.basis_labels():
        key = tuple(int(x) for x in row)
        b_counts[key] = b_counts.get(key, 0) + 1
    a_labels = rep_a.basis_labels()
    weights = np.array([b_counts.get(group.fuse(lam, group.conj(tuple(int(x) for x in row))), 0)
                        for row in a_labels], dtype=float)
    # in the adapted basis of A the marginal is diagonal
    diag = weights / total - 1.0 / d_a
    return float(np.abs(diag).sum())


def local_sector_distance(h, rep: Representation, sector, beta: float,
                          region: Iterable[int], method: str = "auto") -> float:
    """``|| Tr_B rho_{beta,Lambda} - Tr_B rho_beta ||_1``.

    ``method="auto"`` uses sector counting at ``beta = 0`` (no dense states)
    and dense states otherwise; ``"dense"`` forces the dense route. ``h`` may
    be ``None`` on the counting route, where it plays no role.
    """
    if method not in ("auto", "dense", "marginal"):
        raise ValueError(f"unknown method {method!r}")
    a, _ = _region(rep, region)
    if method == "marginal" or (method == "auto" and beta == 0):
        if beta != 0:
            raise ValueError("the counting route only applies at beta = 0")
        if h is not None:
            require_symmetric(rep, check_hermitian(h, "Hamiltonian"), "Hamiltonian")
        return marginal_sector_distance(rep, sector, a)
    h = check_hermitian(h, "Hamiltonian")
    require_symmetric(rep, h, "Hamiltonian")
    rho_c = canonical_state(h, beta, rep, sector)
    rho_g = gibbs_state(h, beta)
    diff = partial_trace(rho_c - rho_g, rep.dims, a)
    return trace_norm(0.5 * (diff + diff.conj().T))


@dataclass(frozen=True)
class DecayFit:
    slope: float
    intercept: float
    r_squared: float


def fit_exponential_decay(sizes: Sequence[float], values: Sequence[float]) -> DecayFit:
    """Least-squares line through ``(N, ln value)``."""
    if len(sizes) < 3 or len(sizes) != len(values):
        raise ValueError("need at least three (size, value) pairs")
    if min(values) <= 0:
        raise ValueError("exponential fit needs strictly positive values")
    logs = [math.log(v) for v in values]
    fit = statistics.linear_regression(list(map(float, sizes)), logs)
    r = statistics.correlation(list(map(float, sizes)), logs)
    return DecayFit(fit.slope, fit.intercept, r * r)
