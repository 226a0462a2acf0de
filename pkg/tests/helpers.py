"""Independent reference implementations used as oracles by the tests.

Everything here is written with explicit index loops or textbook formulas
so it shares no code path with the library.
"""

import itertools
import math

import numpy as np

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {"I": I2, "X": X, "Y": Y, "Z": Z}

# results gathered by the acceptance tests, printed at session end
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def kron_all(ops):
    out = np.array([[1.0 + 0j]])
    for op in ops:
        out = np.kron(out, op)
    return out


def pauli_op(n, ops):
    return kron_all([PAULI[ops.get(i, "I")] for i in range(n)])


def multi_index(k, dims):
    idx = []
    for d in reversed(dims):
        idx.append(k % d)
        k //= d
    return tuple(reversed(idx))


def flat_index(idx, dims):
    k = 0
    for i, d in zip(idx, dims):
        k = k * d + i
    return k


def loop_partial_transpose(op, dims, region):
    n = len(dims)
    dim = int(np.prod(dims))
    out = np.zeros_like(op)
    for r in range(dim):
        ri = multi_index(r, dims)
        for c in range(dim):
            ci = multi_index(c, dims)
            nr = [ci[s] if s in region else ri[s] for s in range(n)]
            nc = [ri[s] if s in region else ci[s] for s in range(n)]
            out[flat_index(nr, dims), flat_index(nc, dims)] = op[r, c]
    return out


def loop_partial_trace(op, dims, keep):
    keep = sorted(keep)
    kdims = [dims[s] for s in keep]
    kdim = int(np.prod(kdims))
    out = np.zeros((kdim, kdim), dtype=complex)
    dim = int(np.prod(dims))
    for r in range(dim):
        ri = multi_index(r, dims)
        for c in range(dim):
            ci = multi_index(c, dims)
            if any(ri[s] != ci[s] for s in range(len(dims)) if s not in keep):
                continue
            out[flat_index([ri[s] for s in keep], kdims),
                flat_index([ci[s] for s in keep], kdims)] += op[r, c]
    return out


def dense_gibbs(h, beta, proj=None):
    w, v = np.linalg.eigh(h)
    rho = (v * np.exp(-beta * (w - w.min()))) @ v.conj().T
    if proj is not None:
        rho = rho @ proj
    return rho / np.trace(rho).real


def trace_norm_svd(m):
    return float(np.linalg.svd(m, compute_uv=False).sum())


def log_neg_ref(rho, dims, region):
    pt = loop_partial_transpose(rho, dims, region) if np.prod(dims) <= 64 else None
    if pt is None:
        t = rho.reshape(list(dims) * 2)
        n = len(dims)
        for a in region:
            t = np.swapaxes(t, a, n + a)
        pt = t.reshape(rho.shape)
    return max(0.0, math.log2(trace_norm_svd(pt)))


def cluster_ring(n, sign=1.0):
    return sign * sum(pauli_op(n, {(i - 1) % n: "Z", i: "X", (i + 1) % n: "Z"}) for i in range(n))


def character_projector(images, orders, label, n):
    """``(1/|G|) sum_g conj(Lambda(g)) U(g)`` for a homogeneous finite representation."""
    dim = images[0].shape[0] ** n
    out = np.zeros((dim, dim), dtype=complex)
    elements = list(itertools.product(*[range(k) for k in orders]))
    for g in elements:
        u = np.eye(images[0].shape[0], dtype=complex)
        phase = 1.0
        for img, k, c, order in zip(images, g, label, orders):
            u = u @ np.linalg.matrix_power(img, k)
            phase *= np.exp(-2j * np.pi * c * k / order)
        out += phase * kron_all([u] * n)
    return out / len(elements)


def random_density(rng, dim, rank=None):
    rank = rank or dim
    m = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = m @ m.conj().T
    return rho / np.trace(rho).real


def random_herm(rng, dim):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (m + m.conj().T) / 2


def haar_unitary(rng, dim):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(m)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def group_twirl(unitaries, op):
    return sum(u @ op @ u.conj().T for u in unitaries) / len(unitaries)


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = (bool(ok), detail)
