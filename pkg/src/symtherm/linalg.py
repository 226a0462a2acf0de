"""Dense complex linear algebra on tensor-product Hilbert spaces.

Operators are plain square ``numpy`` arrays. The tensor structure travels
separately as a sequence of per-site dimensions ``dims``.

Composite indexing is row-major with site 0 the slowest-varying factor, i.e.
the basis state ``|s_0 s_1 ... s_{N-1}>`` sits at index
``sum_i s_i * prod_{j>i} d_j``. This is exactly the ordering produced by
``np.kron(op_0, np.kron(op_1, ...))`` and every routine here relies on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Callable, Iterable, Sequence

import numpy as np

from .exceptions import NonHermitianError, NumericError

__all__ = [
    "HilbertStructure",
    "hermiticity_tolerance",
    "check_hermitian",
    "is_hermitian",
    "tensor",
    "embed",
    "partial_trace",
    "partial_transpose",
    "eig_hermitian",
    "hermitian_function",
    "expm_hermitian",
    "trace_norm",
    "random_hermitian",
    "random_unitary",
]


@dataclass(frozen=True)
class HilbertStructure:
    """Per-site dimensions of a finite tensor-product space."""

    site_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.site_dims)
        if not dims:
            raise ValueError("a Hilbert structure needs at least one site")
        if any(d < 2 for d in dims):
            raise ValueError(f"site dimensions must be >= 2, got {dims}")
        object.__setattr__(self, "site_dims", dims)

    @classmethod
    def uniform(cls, n_sites: int, d: int = 2) -> "HilbertStructure":
        return cls((d,) * n_sites)

    @property
    def n_sites(self) -> int:
        return len(self.site_dims)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.site_dims))

    def region_dim(self, sites: Iterable[int]) -> int:
        return int(np.prod([self.site_dims[i] for i in sites]))


def _dims(dims) -> tuple[int, ...]:
    if isinstance(dims, HilbertStructure):
        return dims.site_dims
    return HilbertStructure(tuple(dims)).site_dims


def _square(op) -> np.ndarray:
    op = np.asarray(op)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {op.shape}")
    return op


def _check_shape(op: np.ndarray, dims: tuple[int, ...]) -> None:
    total = int(np.prod(dims))
    if op.shape != (total, total):
        raise ValueError(f"operator shape {op.shape} does not match site dims {dims}")


def _sites(sites: Iterable[int], n: int) -> list[int]:
    out = sorted({int(s) for s in sites})
    if any(s < 0 or s >= n for s in out):
        raise ValueError(f"site indices {out} out of range for {n} sites")
    return out


def hermiticity_tolerance(op: np.ndarray) -> float:
    return 1e-9 * max(1.0, float(np.linalg.norm(op)))


def is_hermitian(op) -> bool:
    op = _square(op)
    return float(np.linalg.norm(op - op.conj().T)) <= hermiticity_tolerance(op)


def check_hermitian(op, name: str = "operator") -> np.ndarray:
    """Return ``op`` as an array, raising if it is not Hermitian.

    Inputs are rejected rather than symmetrized so that model-building
    mistakes surface immediately.
    """
    op = _square(op)
    residual = float(np.linalg.norm(op - op.conj().T))
    if residual > hermiticity_tolerance(op):
        raise NonHermitianError(f"{name} is not Hermitian (||A - A^dag||_F = {residual:.3e})")
    return op


def tensor(ops: Sequence[np.ndarray]) -> np.ndarray:
    """Kronecker product ``ops[0] (x) ops[1] (x) ...`` with ``ops[0]`` on site 0.

    >>> Z = np.diag([1, -1]); X = np.array([[0, 1], [1, 0]])
    >>> tensor([Z, X])
    array([[ 0,  1,  0,  0],
           [ 1,  0,  0,  0],
           [ 0,  0,  0, -1],
           [ 0,  0, -1,  0]])
    """
    if len(ops) == 0:
        raise ValueError("tensor() needs at least one factor")
    return reduce(np.kron, [_square(o) for o in ops])


def embed(local: dict[int, np.ndarray], dims) -> np.ndarray:
    """Operator acting as ``local[i]`` on site ``i`` and identity elsewhere."""
    dims = _dims(dims)
    factors = []
    for i, d in enumerate(dims):
        factors.append(np.asarray(local[i]) if i in local else np.eye(d))
    return tensor(factors)


def partial_trace(op, dims, keep: Iterable[int]) -> np.ndarray:
    """Trace out every site not listed in ``keep``; kept sites stay in order."""
    op = _square(op)
    dims = _dims(dims)
    _check_shape(op, dims)
    n = len(dims)
    keep = _sites(keep, n)
    if not keep:
        raise ValueError("partial_trace needs a non-empty set of kept sites")
    traced = [i for i in range(n) if i not in keep]
    t = op.reshape(dims + dims)
    row = list(range(n))
    col = list(range(n, 2 * n))
    for i in traced:
        col[i] = row[i]
    out = [row[i] for i in keep] + [col[i] for i in keep]
    reduced = np.einsum(t, row + col, out)
    dk = int(np.prod([dims[i] for i in keep]))
    return reduced.reshape(dk, dk)


def partial_transpose(op, dims, region: Iterable[int]) -> np.ndarray:
    """Transpose the tensor indices of the sites in ``region``; others untouched."""
    op = _square(op)
    dims = _dims(dims)
    _check_shape(op, dims)
    n = len(dims)
    t = op.reshape(dims + dims)
    axes = list(range(2 * n))
    for i in _sites(region, n):
        axes[i], axes[n + i] = axes[n + i], axes[i]
    return t.transpose(axes).reshape(op.shape)


def eig_hermitian(op) -> tuple[np.ndarray, np.ndarray]:
    """Ascending real eigenvalues and a unitary matrix of eigenvectors (columns)."""
    op = check_hermitian(op)
    try:
        w, v = np.linalg.eigh(op)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericError(f"Hermitian eigensolver did not converge: {exc}") from exc
    return w, v


def hermitian_function(op, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Apply a scalar function to the spectrum: ``V f(D) V^dag``."""
    w, v = eig_hermitian(op)
    return (v * f(w)) @ v.conj().T


def expm_hermitian(op, scale: float) -> np.ndarray:
    """``exp(scale * op)`` for Hermitian ``op`` by eigendecomposition."""
    return hermitian_function(op, lambda w: np.exp(scale * w))


def trace_norm(op) -> float:
    """Sum of singular values. Hermitian inputs use ``sum |eigenvalues|``."""
    op = _square(op)
    if is_hermitian(op):
        herm = 0.5 * (op + op.conj().T)
        return float(np.abs(np.linalg.eigvalsh(herm)).sum())
    return float(np.linalg.svd(op, compute_uv=False).sum())


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (m + m.conj().T)


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-ish random unitary from the eigenvectors of a random Hermitian matrix."""
    _, v = np.linalg.eigh(random_hermitian(rng, dim))
    return v * np.exp(2j * np.pi * rng.random(dim))
