"""Hamiltonian builders and closed-form reference values.

Pauli-string and Majorana-monomial models share one entry point,
:func:`build_hamiltonian`. The closed forms at the bottom of the module are
used as oracles by the sweep harness and the tests.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import numpy as np
from numpy.polynomial import Polynomial

from .exceptions import ConfigError, NonHermitianError, ParityError
from .fermions import MajoranaSystem
from .linalg import check_hermitian, embed
from .symmetry import _PAULI, Representation, require_symmetric

__all__ = [
    "PauliTerm",
    "MajoranaTerm",
    "ModelSpec",
    "PRESETS",
    "build_hamiltonian",
    "preset",
    "model_from_dict",
    "load_model",
    "pauli_string",
    "LAMBDA_C",
    "oracle_xyz_canonical_negativity",
    "oracle_xyz_canonical_log_negativity",
    "oracle_cluster_gibbs_EN",
    "oracle_cluster_canonical_EN",
    "oracle_cluster_canonical_EN_limit",
    "oracle_majorana_pair_EN",
    "SeparableDecomposition",
    "oracle_cluster_separable_decomposition",
]

LAMBDA_C = math.sqrt(2.0) - 1.0


@dataclass(frozen=True)
class PauliTerm:
    sites: tuple[int, ...]
    paulis: str
    coeff: float

    def __post_init__(self):
        object.__setattr__(self, "sites", tuple(int(s) for s in self.sites))
        paulis = self.paulis.upper()
        object.__setattr__(self, "paulis", paulis)
        if len(self.sites) != len(paulis):
            raise ConfigError(f"term {paulis!r} names {len(self.sites)} sites")
        if len(set(self.sites)) != len(self.sites):
            raise ConfigError(f"term {paulis!r} repeats a site: {self.sites}")
        if any(p not in "XYZI" for p in paulis):
            raise ConfigError(f"unknown Pauli letter in {paulis!r}")
        if not math.isfinite(self.coeff):
            raise ConfigError("term coefficients must be finite")


@dataclass(frozen=True)
class MajoranaTerm:
    """``coeff * c[p] c[q] ...`` with zero-based Majorana indices."""

    majoranas: tuple[int, ...]
    coeff: complex

    def __post_init__(self):
        object.__setattr__(self, "majoranas", tuple(int(j) for j in self.majoranas))
        if not (math.isfinite(self.coeff.real) and math.isfinite(self.coeff.imag)):
            raise ConfigError("term coefficients must be finite")


@dataclass(frozen=True)
class ModelSpec:
    n_sites: int
    boundary: str = "open"
    terms: tuple = ()
    name: str = "custom"
    rep: Representation | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n_sites < 1:
            raise ConfigError("n_sites must be positive")
        if self.boundary not in ("open", "periodic"):
            raise ConfigError(f"boundary must be 'open' or 'periodic', got {self.boundary!r}")
        object.__setattr__(self, "terms", tuple(self.terms))
        kinds = {type(t) for t in self.terms}
        if len(kinds) > 1:
            raise ConfigError("a model mixes Pauli and Majorana terms")
        for t in self.terms:
            if isinstance(t, PauliTerm):
                for s in t.sites:
                    if self.boundary == "open" and not 0 <= s < self.n_sites:
                        raise ConfigError(f"site {s} out of range for N={self.n_sites}")
            elif any(not 0 <= j < 2 * self.n_sites for j in t.majoranas):
                raise ConfigError(f"Majorana index out of range in {t.majoranas}")

    @property
    def fermionic(self) -> bool:
        return any(isinstance(t, MajoranaTerm) for t in self.terms)


def pauli_string(n: int, ops: Mapping[int, str]) -> np.ndarray:
    return embed({s: _PAULI[p] for s, p in ops.items() if p != "I"}, (2,) * n)


def build_hamiltonian(spec: ModelSpec) -> np.ndarray:
    """Dense Hamiltonian; Hermiticity, parity and declared symmetry are verified."""
    n = spec.n_sites
    h = np.zeros((2 ** n, 2 ** n), dtype=complex)
    if spec.fermionic:
        sys = MajoranaSystem(n)
        for t in spec.terms:
            if len(t.majoranas) % 2:
                raise ParityError(f"odd Majorana monomial {t.majoranas} breaks fermion parity")
            h += t.coeff * sys.monomial(t.majoranas)
    else:
        for t in spec.terms:
            sites = [s % n for s in t.sites]
            if len(set(sites)) != len(sites):
                raise ConfigError(f"term {t.paulis} wraps onto itself for N={n}")
            h += t.coeff * pauli_string(n, dict(zip(sites, t.paulis)))
    try:
        check_hermitian(h, f"model {spec.name!r}")
    except NonHermitianError as exc:
        raise NonHermitianError(f"{exc}; add the Hermitian conjugate terms") from None
    if spec.rep is not None:
        require_symmetric(spec.rep, h, f"model {spec.name!r}")
    return h


# --- presets -----------------------------------------------------------------

def _bonds(n: int, boundary: str, width: int):
    last = n if boundary == "periodic" else n - width + 1
    return [tuple(i + k for k in range(width)) for i in range(max(last, 0))]


def _cluster_chain(n, boundary="periodic", J=1.0):
    # +J sum_i Z_{i-1} X_i Z_{i+1}; the opposite sign is unitarily equivalent
    return [PauliTerm(b, "ZXZ", J) for b in _bonds(n, boundary, 3)]


def _ising_classical(n, boundary="open", J=1.0):
    return [PauliTerm(b, "ZZ", J) for b in _bonds(n, boundary, 2)]


def _paramagnet(n, boundary="open", h=1.0):
    return [PauliTerm((i,), "X", h) for i in range(n)]


def _xyz2(n=2, boundary="open", J=1.0, gamma=0.0):
    if n != 2:
        raise ConfigError("xyz2 is a two-qubit model")
    return [PauliTerm((0, 1), "XX", 1.0),
            PauliTerm((0, 1), "YY", J * (1 + gamma) / 2),
            PauliTerm((0, 1), "ZZ", J * (1 - gamma) / 2)]


def _u1_hopping(n, boundary="open", t=1.0):
    # |10><01| + h.c. = (XX + YY) / 2
    return [term for b in _bonds(n, boundary, 2)
            for term in (PauliTerm(b, "XX", t / 2), PauliTerm(b, "YY", t / 2))]


def _majorana_hopping(n, boundary="open", t=1.0):
    # i t c[2k+1] c[2k+2]: couples neighbouring modes
    bonds = range(n if boundary == "periodic" else n - 1)
    return [MajoranaTerm((2 * k + 1, (2 * k + 2) % (2 * n)), 1j * t) for k in bonds]


PRESETS = {
    "cluster-chain": (_cluster_chain, "periodic"),
    "ising-classical": (_ising_classical, "open"),
    "paramagnet": (_paramagnet, "open"),
    "xyz2": (_xyz2, "open"),
    "u1-hopping": (_u1_hopping, "open"),
    "majorana-hopping": (_majorana_hopping, "open"),
}


def preset(name: str, n_sites: int, boundary: str | None = None,
           rep: Representation | None = None, **params) -> ModelSpec:
    try:
        builder, default_boundary = PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    boundary = boundary or default_boundary
    try:
        terms = builder(n_sites, boundary, **params)
    except TypeError as exc:
        raise ConfigError(f"bad parameters for preset {name!r}: {exc}") from None
    return ModelSpec(n_sites, boundary, terms, name=name, rep=rep)


def _term_from_dict(raw: Mapping, where: str):
    if not isinstance(raw, Mapping):
        raise ConfigError(f"{where}: each term must be an object")
    if "majoranas" in raw:
        coeff = complex(float(raw.get("coeff_real", 0.0)), float(raw.get("coeff_imag", 0.0)))
        return MajoranaTerm(tuple(raw["majoranas"]), coeff)
    try:
        return PauliTerm(tuple(raw["sites"]), str(raw["paulis"]), float(raw["coeff"]))
    except KeyError as exc:
        raise ConfigError(f"{where}: missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from None


def model_from_dict(cfg: Mapping, rep: Representation | None = None) -> ModelSpec:
    """Parse a model object (explicit terms or ``{"preset": ..., "params": ...}``)."""
    if not isinstance(cfg, Mapping):
        raise ConfigError("model must be a JSON object")
    if "preset" in cfg:
        if "n_sites" not in cfg and cfg["preset"] != "xyz2":
            raise ConfigError("model: preset needs n_sites")
        params = dict(cfg.get("params", {}))
        return preset(cfg["preset"], int(cfg.get("n_sites", 2)), cfg.get("boundary"), rep, **params)
    if "n_sites" not in cfg:
        raise ConfigError("model: missing n_sites")
    terms = [_term_from_dict(t, f"model.terms[{i}]") for i, t in enumerate(cfg.get("terms", []))]
    return ModelSpec(int(cfg["n_sites"]), cfg.get("boundary", "open"), terms,
                     name=str(cfg.get("name", "custom")), rep=rep)


def load_model(path: str | Path, rep: Representation | None = None) -> ModelSpec:
    try:
        cfg = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}: {exc.msg}") from None
    return model_from_dict(cfg, rep)


# --- closed forms ------------------------------------------------------------

def oracle_xyz_canonical_negativity(J: float, gamma: float, beta: float) -> float:
    """Negativity ``|tanh(beta J gamma)| / 2`` of the two-qubit XYZ model in sector ``X1X2 = +1``."""
    return 0.5 * abs(math.tanh(beta * J * gamma))


def oracle_xyz_canonical_log_negativity(J: float, gamma: float, beta: float) -> float:
    return math.log2(1.0 + 2.0 * oracle_xyz_canonical_negativity(J, gamma, beta))


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda = tanh(beta) must lie in [0, 1], got {lam}")
    return lam


def oracle_cluster_gibbs_EN(lam: float) -> float:
    """Gibbs log-negativity (bits) of the cluster chain across two boundaries.

    After conjugating by the interior CZ gates the state factorizes into one
    two-qubit factor per boundary, so the value is exact for every N with
    ``|A|, |B| >= 2``.
    """
    lam = _check_lambda(lam)
    s = sum(abs(1 + lam * (a + b) - lam * lam * a * b) for a in (1, -1) for b in (1, -1))
    return max(0.0, 2.0 * math.log2(s / 4.0))


_SIGNS4 = list(itertools.product((1, -1), repeat=4))


def _boundary_factor(lam, a, b, sign):
    return 1 + sign * lam * (a + b) - lam * lam * a * b


def _boundary_sum(lam, s):
    """``S(s) = sum |f+_L f+_R + s a_L b_L a_R b_R f-_L f-_R| / 32``."""
    total = 0.0
    for a1, b1, a2, b2 in _SIGNS4:
        fp = _boundary_factor(lam, a1, b1, 1) * _boundary_factor(lam, a2, b2, 1)
        fm = _boundary_factor(lam, a1, b1, -1) * _boundary_factor(lam, a2, b2, -1)
        total += abs(fp + s * a1 * b1 * a2 * b2 * fm)
    return total / 32.0


def oracle_cluster_canonical_EN_limit(lam: float) -> float:
    """Canonical log-negativity with ``r_{N,mu} -> 1``, independent of the charge."""
    lam = _check_lambda(lam)
    return max(0.0, math.log2(_boundary_sum(lam, 1) + _boundary_sum(lam, -1)))


def oracle_cluster_canonical_EN(lam: float, n_sites: int, sector: int) -> float:
    """Finite-N canonical log-negativity (bits) of the periodic cluster chain.

    Splitting the projector over interior and boundary parities gives

        E_N = log2 sum_mu r_{N,mu} S(mu Lambda),
        r_{N,mu} = (1 + mu lam^{N-4}) / (1 + Lambda lam^N),

    for a contiguous region with two boundaries and ``|A|, |B| >= 2``.
    At ``lam = 1`` in the odd sector both numerator and denominator vanish;
    that point is evaluated as the one-sided limit.
    """
    lam = _check_lambda(lam)
    if n_sites < 4 or n_sites % 2:
        raise ValueError("the closed form needs an even ring with N >= 4")
    if sector not in (1, -1):
        raise ValueError("sector must be +1 or -1")
    den = 1 + sector * lam ** n_sites
    if den > 1e-9:
        num = sum((1 + mu * lam ** (n_sites - 4)) * _boundary_sum(lam, mu * sector)
                  for mu in (1, -1))
        return max(0.0, math.log2(num / den))
    return max(0.0, math.log2(_odd_sector_limit(n_sites)))


def _left_sign(p: Polynomial, x: float = 1.0) -> int:
    """Sign of ``p`` just below ``x``, from the first non-vanishing derivative."""
    for k in range(p.degree() + 1):
        v = p.deriv(k)(x) if k else p(x)
        if abs(v) > 1e-9:
            return int(np.sign(v)) * (-1) ** k
    return 0


def _odd_sector_limit(n: int) -> float:
    """``lim_{lam -> 1^-}`` of the r-weighted sum for sector -1 (L'Hopital)."""
    x = Polynomial([0, 1])
    num = Polynomial([0])
    for mu in (1, -1):
        weight = 1 + mu * x ** (n - 4)
        for a1, b1, a2, b2 in _SIGNS4:
            fp = _boundary_factor(x, a1, b1, 1) * _boundary_factor(x, a2, b2, 1)
            fm = _boundary_factor(x, a1, b1, -1) * _boundary_factor(x, a2, b2, -1)
            q = weight * (fp - mu * a1 * b1 * a2 * b2 * fm)
            num = num + _left_sign(q) * q
    num = num / 32.0
    # 1 - lam^N has a simple zero at lam = 1
    if abs(num(1.0)) > 1e-9:
        raise ArithmeticError("odd-sector limit does not exist")
    return float(num.deriv()(1.0) / -n)


def oracle_majorana_pair_EN(beta: float, t: float = 1.0) -> float:
    """Fermionic Gibbs log-negativity (bits) of ``H = i t c_a c_b`` with ``c_a`` in A, ``c_b`` in B.

    ``rho = (1 - tanh(beta t) i c_a c_b) / 4`` transposes to
    ``(1 + tanh(beta t) c_a c_b) / 4``, whose four singular values all equal
    ``sqrt(1 + tanh^2) / 4``.
    """
    return 0.5 * math.log2(1.0 + math.tanh(beta * t) ** 2)


@dataclass(frozen=True)
class SeparableDecomposition:
    """``rho_AB = sum_i p_i rho_i`` on the four sites around one boundary."""

    probabilities: tuple[float, ...]
    states: tuple[np.ndarray, ...]
    target: np.ndarray

    @property
    def residual(self) -> float:
        mix = sum(p * s for p, s in zip(self.probabilities, self.states))
        return float(np.linalg.norm(mix - self.target))

    @property
    def min_eigenvalue(self) -> float:
        return float(min(np.linalg.eigvalsh(s).min() for s in self.states))


def oracle_cluster_separable_decomposition(lam: float) -> SeparableDecomposition | None:
    """Explicit separable mixture for the boundary factor when ``lam <= sqrt(2) - 1``.

    Sites 0..3 stand for ``a-1, a, b, b+1`` across the cut. Each component has
    the form ``(1 + alpha P) / 16`` for a Pauli string ``P``, which is a mixture of
    product states whenever it is positive (``|alpha| <= 1``).
    """
    lam = _check_lambda(lam)
    left = pauli_string(4, {0: "Z", 1: "X", 2: "Z"})
    right = pauli_string(4, {1: "Z", 2: "X", 3: "Z"})
    eye = np.eye(16, dtype=complex)
    target = (eye + lam * left) @ (eye + lam * right) / 16
    if lam == 0.0:
        return SeparableDecomposition((1.0,), (eye / 16,), target)
    alpha = lam * lam + 2 * lam
    if alpha > 1.0 + 1e-12:
        return None
    probs = (lam / alpha, lam / alpha, lam * lam / alpha)
    states = tuple((eye + alpha * p) / 16 for p in (left, right, left @ right))
    return SeparableDecomposition(probs, states, target)
