"""Abelian on-site symmetries, charge sectors and irrep classification.

A finite Abelian group is a product of cyclic factors ``Z_{n_1} x ... x Z_{n_k}``.
Elements are integer exponent vectors ``g`` and irreps are labelled by
character exponents ``c`` with ``lambda_c(g) = exp(2 pi i sum_k c_k g_k / n_k)``.
``U(1)`` is treated as integer charges with diagonal action; its elements are
angles ``theta`` and its irrep labels are one-tuples ``(n,)``.

Projectors are built in the symmetry-adapted product basis, where every
``U(g)`` is diagonal, so ``Pi_Lambda`` only needs a mask over basis states.
The character sum ``|G|^-1 sum_g conj(Lambda(g)) U(g)`` is kept as an
independent route (:func:`irrep_projector_from_characters`).
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .exceptions import SectorError, SymmetryError
from .linalg import embed, tensor

__all__ = [
    "AbelianGroup",
    "SiteRep",
    "Representation",
    "IrrepClass",
    "commutator_tolerance",
    "global_unitary",
    "irrep_projector",
    "irrep_projector_from_characters",
    "region_projector",
    "isotypic_decompose",
    "symmetry_adapted_basis",
    "is_symmetric",
    "twirl",
    "classify_irrep",
    "classify_irrep_bruteforce",
    "semiuniform_census",
    "entangling_perturbation",
    "irreps_in_region",
    "load_symmetry",
    "symmetry_from_dict",
]

MAX_GROUP_ORDER = 64

Label = tuple[int, ...]

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def commutator_tolerance(h: np.ndarray, u_norm: float = 1.0) -> float:
    """Scale-aware zero threshold ``1e-10 * ||H||_F * ||U||_op``."""
    return 1e-10 * float(np.linalg.norm(h)) * u_norm


@dataclass(frozen=True)
class AbelianGroup:
    """Either a finite product of cyclic groups or ``U(1)`` (``orders is None``)."""

    orders: tuple[int, ...] | None

    def __post_init__(self):
        if self.orders is None:
            return
        orders = tuple(int(n) for n in self.orders)
        if not orders or any(n < 2 for n in orders):
            raise SymmetryError(f"cyclic factor orders must be >= 2, got {orders}")
        if int(np.prod(orders)) > MAX_GROUP_ORDER:
            raise SymmetryError(f"|G| = {int(np.prod(orders))} exceeds the cap of {MAX_GROUP_ORDER}")
        object.__setattr__(self, "orders", orders)

    @classmethod
    def finite(cls, *orders: int) -> "AbelianGroup":
        return cls(tuple(orders))

    @classmethod
    def u1(cls) -> "AbelianGroup":
        return cls(None)

    @property
    def is_u1(self) -> bool:
        return self.orders is None

    @property
    def rank(self) -> int:
        return 1 if self.is_u1 else len(self.orders)

    @property
    def order(self) -> int | float:
        return float("inf") if self.is_u1 else int(np.prod(self.orders))

    @property
    def identity(self):
        return 0.0 if self.is_u1 else (0,) * self.rank

    @property
    def trivial_label(self) -> Label:
        return (0,) * self.rank

    def elements(self) -> list[tuple[int, ...]]:
        if self.is_u1:
            raise SymmetryError("U(1) has no finite element list")
        return list(itertools.product(*(range(n) for n in self.orders)))

    def generators(self) -> list:
        if self.is_u1:
            raise SymmetryError("U(1) generators are angles; use witness_elements()")
        return [tuple(int(i == k) for i in range(self.rank)) for k in range(self.rank)]

    def element(self, g):
        """Validate and normalize a group element."""
        if self.is_u1:
            try:
                return float(g)
            except (TypeError, ValueError) as exc:
                raise SymmetryError(f"U(1) element must be an angle, got {g!r}") from exc
        try:
            g = tuple(int(x) for x in g)
        except TypeError as exc:
            raise SymmetryError(f"group element must be an integer vector, got {g!r}") from exc
        if len(g) != self.rank:
            raise SymmetryError(f"group element {g} has wrong length for orders {self.orders}")
        return tuple(x % n for x, n in zip(g, self.orders))

    def label(self, lam) -> Label:
        """Validate and reduce an irrep label."""
        if isinstance(lam, (int, np.integer)):
            lam = (int(lam),)
        lam = tuple(int(x) for x in lam)
        if len(lam) != self.rank:
            raise SymmetryError(f"irrep label {lam} has wrong length")
        if self.is_u1:
            return lam
        return tuple(x % n for x, n in zip(lam, self.orders))

    def character(self, lam: Label, g) -> complex:
        if self.is_u1:
            return complex(np.exp(1j * lam[0] * g))
        phase = sum(c * x / n for c, x, n in zip(lam, g, self.orders))
        return complex(np.exp(2j * np.pi * phase))

    def fuse(self, a: Label, b: Label) -> Label:
        if self.is_u1:
            return (a[0] + b[0],)
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def conj(self, a: Label) -> Label:
        if self.is_u1:
            return (-a[0],)
        return tuple((-x) % n for x, n in zip(a, self.orders))

    def power(self, a: Label, k: int) -> Label:
        if self.is_u1:
            return (k * a[0],)
        return tuple((k * x) % n for x, n in zip(a, self.orders))

    def labels(self) -> list[Label]:
        """All irrep labels of a finite group (its Pontryagin dual)."""
        return self.elements()


def _label_matrix_sum(group: AbelianGroup, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Fuse every row of ``a`` with every row of ``b``, row-major in (a, b)."""
    out = (a[:, None, :] + b[None, :, :]).reshape(-1, a.shape[1])
    if not group.is_u1:
        out = out % np.asarray(group.orders)
    return out


class SiteRep:
    """Action of the group on one site.

    Finite groups take the images of the generators (commuting unitaries of
    order dividing ``n_k``); ``U(1)`` takes one integer charge per basis state.
    """

    def __init__(self, group: AbelianGroup, generators: Sequence[np.ndarray] | None = None,
                 charges: Sequence[int] | None = None):
        self.group = group
        if group.is_u1:
            if charges is None or generators is not None:
                raise SymmetryError("a U(1) site representation takes integer charges only")
            self.charges = tuple(int(q) for q in charges)
            if len(self.charges) < 2:
                raise SymmetryError("on-site dimension must be >= 2")
            self.generators = ()
            self.dim = len(self.charges)
            return
        if generators is None or charges is not None:
            raise SymmetryError("a finite-group site representation takes generator images")
        gens = tuple(np.asarray(u, dtype=complex) for u in generators)
        if len(gens) != group.rank:
            raise SymmetryError(f"need {group.rank} generator images, got {len(gens)}")
        d = gens[0].shape[0]
        if d < 2:
            raise SymmetryError("on-site dimension must be >= 2")
        eye = np.eye(d)
        for u, n in zip(gens, group.orders):
            if u.shape != (d, d):
                raise SymmetryError("generator images must be square matrices of equal size")
            if np.linalg.norm(u.conj().T @ u - eye) > 1e-10 * d:
                raise SymmetryError("generator image is not unitary")
            if np.linalg.norm(np.linalg.matrix_power(u, n) - eye) > 1e-9 * d:
                raise SymmetryError(f"generator image does not satisfy u^{n} = 1")
        for u, v in itertools.combinations(gens, 2):
            if np.linalg.norm(u @ v - v @ u) > 1e-10 * d:
                raise SymmetryError("generator images do not commute")
        self.generators = gens
        self.charges = None
        self.dim = d

    @classmethod
    def from_paulis(cls, group: AbelianGroup, paulis: Sequence[str]) -> "SiteRep":
        """Qubit representation with a (possibly signed) Pauli per generator, e.g. ``"-X"``."""
        mats = []
        for p in paulis:
            sign = -1.0 if p.startswith("-") else 1.0
            key = p.lstrip("+-").upper()
            if key not in _PAULI:
                raise SymmetryError(f"unknown Pauli {p!r}")
            mats.append(sign * _PAULI[key])
        return cls(group, generators=mats)

    @classmethod
    def from_diag_phases(cls, group: AbelianGroup, exponents: Sequence[Sequence[int]]) -> "SiteRep":
        """Diagonal representation: ``u(gen_k) = diag(exp(2 pi i c_{k,s} / n_k))``."""
        if group.is_u1:
            raise SymmetryError("diag_phases needs a finite group")
        mats = [np.diag(np.exp(2j * np.pi * np.asarray(c, dtype=float) / n))
                for c, n in zip(exponents, group.orders)]
        return cls(group, generators=mats)

    def image(self, g) -> np.ndarray:
        g = self.group.element(g)
        if self.group.is_u1:
            return np.diag(np.exp(1j * g * np.asarray(self.charges, dtype=float)))
        out = np.eye(self.dim, dtype=complex)
        for u, k in zip(self.generators, g):
            out = out @ np.linalg.matrix_power(u, k)
        return out

    @cached_property
    def _decomposition(self) -> tuple[list[Label], np.ndarray, np.ndarray]:
        if self.group.is_u1:
            order = np.argsort(self.charges, kind="stable")
            basis = np.eye(self.dim, dtype=complex)[:, order]
            labels = np.asarray([[self.charges[i]] for i in order], dtype=int)
            present = sorted({(q,) for q in self.charges})
            return present, basis, labels
        elements = self.group.elements()
        images = [self.image(g) for g in elements]
        present, cols, labels = [], [], []
        for lam in self.group.labels():
            proj = sum(np.conj(self.group.character(lam, g)) * u for g, u in zip(elements, images))
            proj = proj / len(elements)
            rank = int(round(np.trace(proj).real))
            if rank == 0:
                continue
            w, v = np.linalg.eigh(0.5 * (proj + proj.conj().T))
            present.append(lam)
            cols.append(v[:, w > 0.5])
            labels.extend([lam] * rank)
        basis = np.hstack(cols)
        if basis.shape[1] != self.dim:  # pragma: no cover - guarded by validation
            raise SymmetryError("on-site irrep decomposition is incomplete")
        return present, basis, np.asarray(labels, dtype=int)

    @property
    def irreps(self) -> list[Label]:
        """On-site irreps with nonzero multiplicity, sorted."""
        return list(self._decomposition[0])

    def multiplicity(self, lam: Label) -> int:
        lam = self.group.label(lam)
        return int(sum(tuple(row) == lam for row in self._decomposition[2]))

    @property
    def adapted_basis(self) -> np.ndarray:
        """Unitary whose columns are common eigenvectors, grouped by irrep."""
        return self._decomposition[1]

    @property
    def basis_labels(self) -> np.ndarray:
        """Irrep label of each adapted basis column, shape ``(dim, rank)``."""
        return self._decomposition[2]

    def irrep_vectors(self, lam: Label) -> np.ndarray:
        lam = self.group.label(lam)
        mask = [tuple(row) == lam for row in self.basis_labels]
        return self.adapted_basis[:, mask]

    def is_scalar(self, g) -> bool:
        u = self.image(g)
        return bool(np.linalg.norm(u - u[0, 0] * np.eye(self.dim)) < 1e-10 * self.dim)

    def same_as(self, other: "SiteRep") -> bool:
        if self.group != other.group or self.dim != other.dim:
            return False
        if self.group.is_u1:
            return self.charges == other.charges
        return all(np.allclose(u, v, atol=1e-12) for u, v in zip(self.generators, other.generators))


class Representation:
    """On-site representation ``U(g) = (x)_i u_i(g)`` on ``N`` sites."""

    def __init__(self, group: AbelianGroup, site_reps: Sequence[SiteRep]):
        if not site_reps:
            raise SymmetryError("a representation needs at least one site")
        for s in site_reps:
            if s.group != group:
                raise SymmetryError("site representation belongs to a different group")
        self.group = group
        self.site_reps = tuple(site_reps)

    @classmethod
    def homogeneous(cls, site_rep: SiteRep, n_sites: int) -> "Representation":
        return cls(site_rep.group, [site_rep] * n_sites)

    @property
    def n_sites(self) -> int:
        return len(self.site_reps)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.site_reps)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    @cached_property
    def homogeneous_flag(self) -> bool:
        first = self.site_reps[0]
        return all(s is first or first.same_as(s) for s in self.site_reps)

    def _region(self, region) -> list[int]:
        if region is None:
            return list(range(self.n_sites))
        sites = sorted({int(i) for i in region})
        if any(i < 0 or i >= self.n_sites for i in sites):
            raise ValueError(f"region {sites} out of range for {self.n_sites} sites")
        return sites

    def unitary(self, g, region=None) -> np.ndarray:
        """``U(g)`` or, with ``region``, the partial action ``U_A(g) (x) 1``."""
        g = self.group.element(g)
        sites = self._region(region)
        return embed({i: self.site_reps[i].image(g) for i in sites}, self.dims)

    # -- adapted basis ----------------------------------------------------

    def adapted_basis(self, region=None) -> np.ndarray:
        sites = self._region(region)
        return tensor([s.adapted_basis if i in sites else np.eye(s.dim)
                       for i, s in enumerate(self.site_reps)])

    def basis_labels(self, region=None) -> np.ndarray:
        """Label of each adapted product basis state, counting only ``region``."""
        sites = self._region(region)
        labels = np.zeros((1, self.group.rank), dtype=int)
        for i, s in enumerate(self.site_reps):
            site_labels = s.basis_labels if i in sites else np.zeros((s.dim, self.group.rank), dtype=int)
            labels = _label_matrix_sum(self.group, labels, site_labels)
        return labels

    def sector_mask(self, lam: Label, region=None) -> np.ndarray:
        lam = np.asarray(self.group.label(lam))
        return np.all(self.basis_labels(region) == lam, axis=1)

    def sector_dimension(self, lam, region=None) -> int:
        return int(self.sector_mask(lam, region).sum())

    def projector(self, lam, region=None) -> np.ndarray:
        mask = self.sector_mask(lam, region)
        if region is None and self._all_diagonal():
            return np.diag(mask.astype(complex))
        v = self.adapted_basis(region)
        return (v[:, mask]) @ v[:, mask].conj().T

    def _all_diagonal(self) -> bool:
        return all(np.allclose(s.adapted_basis, np.eye(s.dim)) for s in self.site_reps)

    def realizable_labels(self, region=None) -> list[Label]:
        labels = {tuple(int(x) for x in row) for row in self.basis_labels(region)}
        return sorted(labels)

    # -- on-site irrep sets -----------------------------------------------

    def _require_homogeneous(self) -> SiteRep:
        if not self.homogeneous_flag:
            raise SymmetryError("operation requires a homogeneous representation u^{(x)N}")
        return self.site_reps[0]

    def witness_elements(self) -> list:
        """Group elements tested when searching for a non-commuting partial action.

        Finite groups: every non-identity element. ``U(1)``: the angle
        ``2 pi / (n_max - n_min + 1)`` plus an irrational multiple of pi; a
        charge-block off-diagonal element is detected by either.
        """
        if not self.group.is_u1:
            return [g for g in self.group.elements() if any(g)]
        qs = [q for s in self.site_reps for q in s.charges]
        span = self.n_sites * (max(qs) - min(qs))
        return [2 * np.pi / (span + 1), np.pi * (np.sqrt(5) - 1) / 2]


# -- module-level operations ----------------------------------------------

def global_unitary(rep: Representation, g, region=None) -> np.ndarray:
    return rep.unitary(g, region)


def irrep_projector(rep: Representation, lam) -> np.ndarray:
    """Orthogonal projector ``Pi_Lambda`` onto the global charge sector (may be zero)."""
    return rep.projector(lam)


def region_projector(rep: Representation, region, lam) -> np.ndarray:
    """``Pi^A_lambda (x) 1_B``: projector onto charge ``lambda`` of ``U_A``."""
    return rep.projector(lam, region)


def irrep_projector_from_characters(rep: Representation, lam, region=None) -> np.ndarray:
    """Character-sum projector ``|G|^-1 sum_g conj(Lambda(g)) U(g)`` (finite groups)."""
    group = rep.group
    if group.is_u1:
        raise SymmetryError("character sums need a finite group")
    lam = group.label(lam)
    out = np.zeros((rep.dim, rep.dim), dtype=complex)
    for g in group.elements():
        out += np.conj(group.character(lam, g)) * rep.unitary(g, region)
    return out / group.order


def is_symmetric(rep: Representation, op: np.ndarray, tol: float | None = None) -> bool:
    return _max_symmetry_violation(rep, op) <= (commutator_tolerance(op) if tol is None else tol)


def _computational_charges(rep: Representation) -> np.ndarray:
    """Total U(1) charge of each computational basis state."""
    q = np.zeros(1, dtype=int)
    for s in rep.site_reps:
        q = (q[:, None] + np.asarray(s.charges)[None, :]).reshape(-1)
    return q


def _max_symmetry_violation(rep: Representation, op: np.ndarray) -> float:
    if rep.group.is_u1:
        q = _computational_charges(rep)
        # [Q, op]_{ab} = (q_a - q_b) op_{ab}; U(theta) commutes for all theta iff blocks vanish
        return float(np.linalg.norm(op[q[:, None] != q[None, :]]))
    worst = 0.0
    for g in rep.group.generators():
        u = rep.unitary(g)
        worst = max(worst, float(np.linalg.norm(u @ op - op @ u)))
    return worst


def require_symmetric(rep: Representation, op: np.ndarray, name: str = "operator") -> None:
    viol = _max_symmetry_violation(rep, op)
    if viol > commutator_tolerance(op):
        raise SymmetryError(f"{name} is not symmetric (||[U(g), H]||_F = {viol:.3e})")


def twirl(rep: Representation, op: np.ndarray) -> np.ndarray:
    """Group average ``|G|^-1 sum_g U(g) op U(g)^dag`` (charge-block mask for U(1))."""
    if rep.group.is_u1:
        q = _computational_charges(rep)
        return np.where(q[:, None] == q[None, :], op, 0)
    out = np.zeros_like(op, dtype=complex)
    for g in rep.group.elements():
        u = rep.unitary(g)
        out += u @ op @ u.conj().T
    return out / rep.group.order


def isotypic_decompose(rep: Representation, rho: np.ndarray):
    """Split a weakly symmetric state into strongly symmetric sector components.

    Returns ``[(label, q, rho_label), ...]`` over realizable sectors, with
    ``q = Tr[rho Pi]`` and ``rho_label = Pi rho Pi / q`` (``None`` when
    ``q <= 1e-12``).
    """
    rho = np.asarray(rho)
    require_symmetric(rep, rho, "state")
    parts = []
    for lam in rep.realizable_labels():
        proj = rep.projector(lam)
        q = float(np.trace(rho @ proj).real)
        state = proj @ rho @ proj / q if q > 1e-12 else None
        parts.append((lam, q, state))
    return parts


def symmetry_adapted_basis(rep: Representation, region) -> np.ndarray:
    """Unitary ``V_A (x) 1_B`` with ``V^dag U_A(g) V`` diagonal for every ``g``."""
    return rep.adapted_basis(region)


# -- irrep classification --------------------------------------------------

class IrrepClass(str, enum.Enum):
    UNIFORM = "uniform"
    SEMIUNIFORM = "semiuniform"
    GENERIC = "generic"
    EMPTY = "empty"

    @property
    def is_semiuniform(self) -> bool:
        """Uniform irreps count as (trivially) semiuniform."""
        return self in (IrrepClass.UNIFORM, IrrepClass.SEMIUNIFORM)


def _power_set(group: AbelianGroup, s: Iterable[Label], n: int) -> set[Label]:
    out = {group.trivial_label}
    s = list(s)
    for _ in range(n):
        out = {group.fuse(a, b) for a in out for b in s}
    return out


def _mixed_reachable(group: AbelianGroup, s: list[Label], n: int) -> set[Label]:
    """Totals reachable by length-``n`` vectors over ``s`` that are not uniform."""
    mixed: set[Label] = set()
    for k in range(1, n):
        # extend mixed prefixes, or break a uniform prefix of length k
        new = {group.fuse(m, b) for m in mixed for b in s}
        for lam in s:
            prefix = group.power(lam, k)
            new.update(group.fuse(prefix, b) for b in s if b != lam)
        mixed = new
    return mixed


def _classification(uniform_count: int, generic: bool) -> IrrepClass:
    if generic:
        return IrrepClass.GENERIC
    if uniform_count == 0:
        return IrrepClass.EMPTY
    return IrrepClass.UNIFORM if uniform_count == 1 else IrrepClass.SEMIUNIFORM


def classify_irrep(rep: Representation, lam) -> IrrepClass:
    """Uniform / semiuniform / generic / empty, by dynamic programming over totals."""
    site = rep._require_homogeneous()
    group = rep.group
    lam = group.label(lam)
    s = site.irreps
    n = rep.n_sites
    uniform = sum(group.power(mu, n) == lam for mu in s)
    return _classification(uniform, lam in _mixed_reachable(group, s, n))


def classify_irrep_bruteforce(rep: Representation, lam) -> IrrepClass:
    """Enumerate every on-site irrep vector; exponential, used as a test oracle."""
    site = rep._require_homogeneous()
    group = rep.group
    lam = group.label(lam)
    uniform, generic = 0, False
    for vec in itertools.product(site.irreps, repeat=rep.n_sites):
        total = group.trivial_label
        for mu in vec:
            total = group.fuse(total, mu)
        if total != lam:
            continue
        if len(set(vec)) == 1:
            uniform += 1
        else:
            generic = True
    return _classification(uniform, generic)


def semiuniform_census(rep: Representation) -> tuple[int, int]:
    """``(number of realizable global irreps, number of (semi)uniform ones)``."""
    site = rep._require_homogeneous()
    labels = sorted(_power_set(rep.group, site.irreps, rep.n_sites))
    semi = sum(classify_irrep(rep, lam).is_semiuniform for lam in labels)
    return len(labels), semi


def irreps_in_region(rep: Representation, region_size: int) -> set[Label]:
    """Irreps present in ``u^{(x) n}``: the ``n``-th power of the on-site irrep set."""
    site = rep._require_homogeneous()
    if region_size < 0:
        raise ValueError("region size must be non-negative")
    return _power_set(rep.group, site.irreps, region_size)


def entangling_perturbation(rep: Representation, lam, i: int, j: int) -> np.ndarray:
    """Two-body symmetric ``v_ij = s+_i s-_j + s-_i s+_j`` entangling sector ``lam``.

    ``s+ = |lambda'><lambda|`` for the lexicographically smallest pair of
    distinct on-site irreps that occur together in an admissible vector.
    """
    site = rep._require_homogeneous()
    group = rep.group
    lam = group.label(lam)
    n = rep.n_sites
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"need two distinct sites in range, got ({i}, {j})")
    cls = classify_irrep(rep, lam)
    if cls is not IrrepClass.GENERIC:
        raise SectorError(f"sector {lam} is {cls.value}; no two-body entangling Hamiltonian exists")
    rest = _power_set(group, site.irreps, n - 2)
    pair = None
    for a, b in itertools.combinations(site.irreps, 2):
        if group.fuse(lam, group.conj(group.fuse(a, b))) in rest:
            pair = (a, b)
            break
    if pair is None:  # pragma: no cover - excluded by GENERIC
        raise SectorError(f"no admissible irrep pair for sector {lam}")
    ket_a = site.irrep_vectors(pair[0])[:, [0]]
    ket_b = site.irrep_vectors(pair[1])[:, [0]]
    up = ket_b @ ket_a.conj().T
    down = up.conj().T
    return embed({i: up, j: down}, rep.dims) + embed({i: down, j: up}, rep.dims)


# -- file format -----------------------------------------------------------

def symmetry_from_dict(cfg: dict) -> Representation:
    """Build a homogeneous representation from the JSON symmetry schema.

    ``{"group": {"finite": [n1, ...]} | {"u1": true},
       "site_rep": {"paulis": [...]} | {"diag_phases": [[...], ...]} | {"charges": [...]},
       "n_sites": N}``
    """
    from .exceptions import ConfigError

    if not isinstance(cfg, dict):
        raise ConfigError("symmetry config must be an object")
    for key in ("group", "site_rep"):
        if key in cfg and not isinstance(cfg[key], dict):
            raise ConfigError(f"symmetry config: {key!r} must be an object")
    try:
        gcfg = cfg["group"]
        if "finite" in gcfg:
            group = AbelianGroup.finite(*gcfg["finite"])
        elif gcfg.get("u1"):
            group = AbelianGroup.u1()
        else:
            raise ConfigError("group must be {'finite': [...]} or {'u1': true}")
        scfg = cfg["site_rep"]
        if "paulis" in scfg:
            site = SiteRep.from_paulis(group, scfg["paulis"])
        elif "diag_phases" in scfg:
            site = SiteRep.from_diag_phases(group, scfg["diag_phases"])
        elif "charges" in scfg:
            site = SiteRep(group, charges=scfg["charges"])
        else:
            raise ConfigError("site_rep must give 'paulis', 'diag_phases' or 'charges'")
        n = int(cfg["n_sites"])
    except KeyError as exc:
        raise ConfigError(f"symmetry config is missing key {exc}") from exc
    except SymmetryError as exc:
        raise ConfigError(f"invalid symmetry config: {exc}") from exc
    if n < 1:
        raise ConfigError("n_sites must be positive")
    return Representation.homogeneous(site, n)


def load_symmetry(path) -> Representation:
    with open(path) as fh:
        return symmetry_from_dict(json.load(fh))
