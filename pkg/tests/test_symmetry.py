import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import I2, X, Y, Z, character_projector, haar_unitary, kron_all, random_herm
from symtherm.exceptions import ConfigError, SectorError, SymmetryError
from symtherm.linalg import partial_transpose
from symtherm.symmetry import (
    AbelianGroup, IrrepClass, Representation, SiteRep, classify_irrep,
    classify_irrep_bruteforce, entangling_perturbation, global_unitary,
    irrep_projector, irrep_projector_from_characters, irreps_in_region, is_symmetric,
    isotypic_decompose, region_projector, require_symmetric, semiuniform_census,
    symmetry_adapted_basis, symmetry_from_dict, twirl,
)

Z2, Z3, Z4, Z2Z2, U1 = (AbelianGroup.finite(2), AbelianGroup.finite(3), AbelianGroup.finite(4),
                        AbelianGroup.finite(2, 2), AbelianGroup.u1())
OMEGA = np.exp(2j * np.pi / 3)


def z2(pauli, n):
    return Representation.homogeneous(SiteRep.from_paulis(Z2, [pauli]), n)


def z3_qubit(n):
    return Representation.homogeneous(SiteRep.from_diag_phases(Z3, [[0, 1]]), n)


def u1_qubit(n, charges=(0, 1)):
    return Representation.homogeneous(SiteRep(U1, charges=charges), n)


def random_z2z2(rng, n):
    """Z2 x Z2 acting on a qutrit through a randomly rotated diagonal representation."""
    v = haar_unitary(rng, 3)
    g1 = v @ np.diag([1, -1, 1]) @ v.conj().T
    g2 = v @ np.diag([1, 1, -1]) @ v.conj().T
    return Representation.homogeneous(SiteRep(Z2Z2, generators=[g1, g2]), n)


def sample_reps():
    rng = np.random.default_rng(7)
    return {
        "z2x-3": z2("X", 3),
        "z2z-4": z2("Z", 4),
        "z3q-3": z3_qubit(3),
        "z3qutrit-3": Representation.homogeneous(SiteRep.from_diag_phases(Z3, [[0, 1, 2]]), 3),
        "z4-3": Representation.homogeneous(SiteRep.from_diag_phases(Z4, [[0, 1]]), 3),
        "z2z2-2": random_z2z2(rng, 2),
        "u1-3": u1_qubit(3),
        "u1-rev-3": u1_qubit(3, (1, 0)),
    }


REPS = sample_reps()


class TestGroup:
    def test_orders_and_elements(self):
        assert Z2Z2.order == 4
        assert Z2Z2.elements() == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert Z2Z2.element((3, -1)) == (1, 1)

    def test_rejects_bad_groups(self):
        with pytest.raises(SymmetryError):
            AbelianGroup.finite(1)
        with pytest.raises(SymmetryError):
            AbelianGroup.finite(5, 5, 5)  # |G| = 125 > 64

    def test_character_is_homomorphism(self):
        g3 = AbelianGroup.finite(3, 2)
        for lam in g3.labels():
            for g, h in itertools.product(g3.elements(), repeat=2):
                gh = g3.element((g[0] + h[0], g[1] + h[1]))
                assert np.isclose(g3.character(lam, g) * g3.character(lam, h),
                                  g3.character(lam, gh))

    def test_u1_has_no_element_list(self):
        with pytest.raises(SymmetryError):
            U1.elements()


class TestSiteRep:
    def test_rejects_non_unitary(self):
        with pytest.raises(SymmetryError):
            SiteRep(Z2, generators=[2 * X])

    def test_rejects_wrong_order(self):
        with pytest.raises(SymmetryError):
            SiteRep(Z2, generators=[np.diag([1, 1j])])

    def test_rejects_non_commuting_generators(self):
        with pytest.raises(SymmetryError):
            SiteRep(Z2Z2, generators=[X, Z])

    def test_signed_pauli(self):
        assert np.allclose(SiteRep.from_paulis(Z2, ["-Z"]).image((1,)), -Z)

    def test_adapted_basis_diagonalizes(self):
        site = SiteRep.from_paulis(Z2, ["X"])
        v = site.adapted_basis
        assert np.allclose(v.conj().T @ v, I2)
        assert np.allclose(v.conj().T @ X @ v, np.diag([1, -1]))
        assert site.irreps == [(0,), (1,)]


class TestGlobalUnitary:
    def test_identity(self):
        assert np.allclose(global_unitary(z2("X", 3), (0,)), np.eye(8))

    def test_z2_x_three_sites(self):
        assert np.allclose(global_unitary(z2("X", 3), (1,)), kron_all([X, X, X]))

    def test_z3_phases_add(self):
        u = global_unitary(z3_qubit(3), (1,))
        weights = [bin(k).count("1") for k in range(8)]
        assert np.allclose(u, np.diag(OMEGA ** np.array(weights)))

    @pytest.mark.invariant
    @pytest.mark.parametrize("name", [k for k in REPS if not k.startswith("u1")])
    def test_homomorphism(self, name):
        rep = REPS[name]
        els = rep.group.elements()
        for g, h in itertools.product(els, repeat=2):
            gh = rep.group.element(tuple(a + b for a, b in zip(g, h)))
            assert np.allclose(rep.unitary(g) @ rep.unitary(h), rep.unitary(gh))
        assert np.allclose(rep.unitary(rep.group.identity), np.eye(rep.dim))


class TestProjectors:
    def test_z2_two_sites(self):
        p = irrep_projector(z2("X", 2), 0)
        assert np.allclose(p, (np.eye(4) + kron_all([X, X])) / 2)
        # (1 + XX)/2 has rank 2
        assert round(np.trace(p).real) == 2

    def test_z3_trivial_sector(self):
        p = irrep_projector(z3_qubit(3), 0)
        assert np.allclose(p, np.diag([1, 0, 0, 0, 0, 0, 0, 1]))

    def test_u1_single_excitation(self):
        p = irrep_projector(u1_qubit(3), 1)
        expected = np.zeros(8)
        expected[[4, 2, 1]] = 1
        assert np.allclose(p, np.diag(expected))

    def test_empty_sector_is_zero(self):
        assert not irrep_projector(u1_qubit(2), 5).any()

    @pytest.mark.invariant
    @pytest.mark.parametrize("name", list(REPS))
    def test_resolution_orthogonality_and_covariance(self, name):
        rep = REPS[name]
        labels = rep.realizable_labels()
        projs = [rep.projector(lam) for lam in labels]
        assert np.allclose(sum(projs), np.eye(rep.dim), atol=1e-10)
        for (i, p), (j, q) in itertools.product(enumerate(projs), repeat=2):
            assert np.allclose(p @ q, p if i == j else 0, atol=1e-10)
        gens = rep.witness_elements() if rep.group.is_u1 else rep.group.generators()
        for lam, p in zip(labels, projs):
            for g in gens:
                u = rep.unitary(g)
                assert np.linalg.norm(u @ p - p @ u) < 1e-10
                assert np.allclose(u @ p, rep.group.character(lam, g) * p, atol=1e-10)

    @pytest.mark.invariant
    @pytest.mark.parametrize("name", [k for k in REPS if not k.startswith("u1")])
    def test_matches_character_sum(self, name):
        rep = REPS[name]
        site = rep.site_reps[0]
        for lam in rep.group.labels():
            oracle = character_projector(list(site.generators), rep.group.orders, lam, rep.n_sites)
            assert np.allclose(rep.projector(lam), oracle, atol=1e-10)
            assert np.allclose(irrep_projector_from_characters(rep, lam), oracle, atol=1e-10)

    @pytest.mark.invariant
    @pytest.mark.parametrize("name", list(REPS))
    def test_bipartite_decomposition(self, name):
        rep = REPS[name]
        g = rep.group
        for size in range(1, rep.n_sites):
            a = list(range(size))
            b = list(range(size, rep.n_sites))
            for lam in rep.realizable_labels():
                total = sum(region_projector(rep, a, mu) @ region_projector(rep, b, g.fuse(lam, g.conj(mu)))
                            for mu in rep.realizable_labels(a))
                assert np.allclose(total, rep.projector(lam), atol=1e-10)


class TestIsotypic:
    def test_maximally_mixed(self):
        parts = isotypic_decompose(z2("X", 3), np.eye(8) / 8)
        assert [q for _, q, _ in parts] == pytest.approx([0.5, 0.5])

    def test_heisenberg_infinite_temperature_endpoints(self):
        rep = z2("X", 2)
        parts = isotypic_decompose(rep, np.eye(4) / 4)
        for lam, q, state in parts:
            assert q == pytest.approx(0.5)
            assert np.allclose(state, rep.projector(lam) / 2)

    def test_heisenberg_gibbs_components(self):
        rep = z2("X", 2)
        h = sum(kron_all([p, p]) for p in (X, Y, Z))
        w, v = np.linalg.eigh(h)
        rho = (v * np.exp(-0.9 * w)) @ v.conj().T
        rho /= np.trace(rho)
        parts = isotypic_decompose(rep, rho)
        assert sum(q for _, q, _ in parts) == pytest.approx(1.0)
        assert np.allclose(sum(q * s for _, q, s in parts), rho, atol=1e-10)

    def test_random_twirled_state_reconstructs(self, rng):
        rep = z2("X", 3)
        m = random_herm(rng, 8)
        rho = twirl(rep, m @ m)
        rho /= np.trace(rho)
        parts = isotypic_decompose(rep, rho)
        assert np.linalg.norm(sum(q * s for _, q, s in parts if s is not None) - rho) < 1e-9
        assert all(q >= -1e-12 for _, q, _ in parts)

    def test_rejects_asymmetric_state(self):
        rho = np.diag([1, 0, 0, 0]).astype(complex)
        with pytest.raises(SymmetryError):
            isotypic_decompose(z2("X", 2), rho)


class TestAdaptedBasis:
    def test_diagonal_rep_gives_identity(self):
        assert np.allclose(symmetry_adapted_basis(z2("Z", 3), [0, 1]), np.eye(8))

    def test_x_gives_hadamard_columns(self):
        v = symmetry_adapted_basis(z2("X", 1), [0])
        h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        assert np.allclose(np.abs(v), np.abs(h))
        assert np.allclose(v.conj().T @ X @ v, np.diag([1, -1]))

    def test_partial_unitary_transpose_invariant(self, rng):
        dims = (3,) * 3
        rep = random_z2z2(rng, 3)
        for region in ([0], [0, 1], [1, 2]):
            v = symmetry_adapted_basis(rep, region)
            for g in rep.group.generators():
                d = v.conj().T @ rep.unitary(g, region) @ v
                assert np.allclose(d, np.diag(np.diag(d)), atol=1e-10)
                assert np.allclose(partial_transpose(d, dims, region), d, atol=1e-10)


class TestClassification:
    def test_z3_trivial_is_semiuniform(self):
        assert classify_irrep(z3_qubit(3), 0) is IrrepClass.SEMIUNIFORM

    def test_u1_maximal_charge_is_uniform(self):
        assert classify_irrep(u1_qubit(4), 4) is IrrepClass.UNIFORM
        assert classify_irrep(u1_qubit(4), 0) is IrrepClass.UNIFORM

    def test_z2_generic(self):
        assert classify_irrep(z2("X", 3), 0) is IrrepClass.GENERIC

    def test_empty(self):
        assert classify_irrep(u1_qubit(3), 7) is IrrepClass.EMPTY

    def test_requires_homogeneous(self):
        rep = Representation(Z2, [SiteRep.from_paulis(Z2, ["X"]), SiteRep.from_paulis(Z2, ["Z"])])
        with pytest.raises(SymmetryError):
            classify_irrep(rep, 0)

    @pytest.mark.invariant
    @pytest.mark.parametrize("site,group", [
        (SiteRep.from_paulis(Z2, ["X"]), Z2),
        (SiteRep.from_diag_phases(Z3, [[0, 1]]), Z3),
        (SiteRep.from_diag_phases(Z3, [[0, 1, 2]]), Z3),
        (SiteRep.from_diag_phases(Z3, [[1, 2]]), Z3),
        (SiteRep.from_diag_phases(Z4, [[0, 1]]), Z4),
        (SiteRep.from_diag_phases(Z4, [[1, 3]]), Z4),
        (SiteRep.from_diag_phases(Z2Z2, [[1, 1], [0, 1]]), Z2Z2),
        (SiteRep(U1, charges=(0, 1)), U1),
        (SiteRep(U1, charges=(-1, 0, 2)), U1),
    ])
    def test_dp_matches_bruteforce(self, site, group):
        for n in range(1, 7):
            rep = Representation.homogeneous(site, n)
            labels = group.labels() if not group.is_u1 else [(q,) for q in range(-n - 1, 2 * n + 2)]
            for lam in labels:
                assert classify_irrep(rep, lam) == classify_irrep_bruteforce(rep, lam), (n, lam)

    def test_census_z2(self):
        assert semiuniform_census(z2("X", 3)) == (2, 0)

    def test_census_z3_example(self):
        total, semi = semiuniform_census(z3_qubit(3))
        assert total == 3 and semi >= 1

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_census_u1(self, n):
        rep = u1_qubit(n)
        assert semiuniform_census(rep) == (n + 1, 2)
        uniform = [lam for lam in rep.realizable_labels() if classify_irrep(rep, lam) is IrrepClass.UNIFORM]
        assert uniform == [(0,), (n,)]


class TestIrrepsInRegion:
    def test_z2_stabilizes_immediately(self):
        rep = z2("X", 4)
        assert irreps_in_region(rep, 1) == irreps_in_region(rep, 2) == {(0,), (1,)}

    def test_z2z2_alternates_without_identity(self):
        rep = Representation.homogeneous(SiteRep.from_diag_phases(Z2Z2, [[1, 1], [0, 1]]), 2)
        s1 = irreps_in_region(rep, 1)
        assert s1 == {(1, 0), (1, 1)}
        assert irreps_in_region(rep, 2) == {(0, 0), (0, 1)}
        assert irreps_in_region(rep, 3) == s1

    def test_z2z2_with_identity_stabilizes_by_three(self):
        rep = Representation.homogeneous(SiteRep.from_diag_phases(Z2Z2, [[0, 1, 1], [0, 0, 1]]), 2)
        sizes = [len(irreps_in_region(rep, n)) for n in range(1, 6)]
        assert sizes[2] == sizes[3] == sizes[4] == 4
        assert all(a <= b for a, b in zip(sizes, sizes[1:]))

    def test_z4_grows_to_full_group(self):
        rep = Representation.homogeneous(SiteRep.from_diag_phases(Z4, [[0, 1]]), 2)
        for n in range(1, 6):
            assert irreps_in_region(rep, n) == {((k % 4),) for k in range(n + 1)}
        assert len(irreps_in_region(rep, 3)) == 4


class TestEntanglingPerturbation:
    def test_z2_z_gives_flip_flop(self):
        v = entangling_perturbation(z2("Z", 3), 0, 0, 1)
        expected = (kron_all([X, X, I2]) + kron_all([Y, Y, I2])) / 2
        assert np.allclose(v, expected)

    def test_semiuniform_raises(self):
        with pytest.raises(SectorError):
            entangling_perturbation(z3_qubit(3), 0, 0, 1)

    def test_u1_hopping_commutes(self):
        rep = u1_qubit(4)
        v = entangling_perturbation(rep, 2, 1, 3)
        for theta in (0.3, 1.7, np.pi / 5):
            u = rep.unitary(theta)
            assert np.linalg.norm(u @ v - v @ u) < 1e-12
        single = np.zeros((4, 4))
        single[1, 2] = single[2, 1] = 1  # |01><10| + |10><01|
        assert np.allclose(v, _on_sites(single, 1, 3, 4))

    def test_rejects_same_site(self):
        with pytest.raises(ValueError):
            entangling_perturbation(z2("X", 3), 1, 1, 1)

    @pytest.mark.invariant
    @pytest.mark.parametrize("name", ["z2x-3", "z2z-4", "z3qutrit-3", "z4-3", "u1-3", "u1-rev-3"])
    def test_symmetric_and_entangling(self, name):
        rep = REPS[name]
        gens = rep.witness_elements() if rep.group.is_u1 else rep.group.generators()
        for lam in rep.realizable_labels():
            if classify_irrep(rep, lam) is not IrrepClass.GENERIC:
                continue
            v = entangling_perturbation(rep, lam, 0, rep.n_sites - 1)
            assert np.allclose(v, v.conj().T)
            assert is_symmetric(rep, v)
            p = rep.projector(lam)
            worst = max(np.linalg.norm((rep.unitary(g, [0]) @ v - v @ rep.unitary(g, [0])) @ p)
                        for g in gens)
            assert worst > 1e-6


def _on_sites(two_site, i, j, n):
    """Embed a two-qubit operator on non-adjacent sites by permuting qubits."""
    dim = 2 ** n
    out = np.zeros((dim, dim), dtype=complex)
    for r in range(dim):
        for c in range(dim):
            rb = [(r >> (n - 1 - k)) & 1 for k in range(n)]
            cb = [(c >> (n - 1 - k)) & 1 for k in range(n)]
            if any(rb[k] != cb[k] for k in range(n) if k not in (i, j)):
                continue
            out[r, c] = two_site[2 * rb[i] + rb[j], 2 * cb[i] + cb[j]]
    return out


class TestSymmetricChecks:
    def test_require_symmetric(self):
        rep = z2("X", 2)
        require_symmetric(rep, kron_all([Z, Z]))
        with pytest.raises(SymmetryError):
            require_symmetric(rep, kron_all([Z, I2]))

    def test_u1_unsorted_charges(self):
        rep = u1_qubit(2, (1, 0))
        hop = np.zeros((4, 4))
        hop[1, 2] = hop[2, 1] = 1
        assert is_symmetric(rep, hop)
        assert not is_symmetric(rep, kron_all([X, I2]))
        assert np.allclose(twirl(rep, kron_all([X, X])), (kron_all([X, X]) + kron_all([Y, Y])) / 2)

    @given(st.integers(0, 10**6))
    def test_twirl_output_is_symmetric(self, seed):
        rng = np.random.default_rng(seed)
        for rep in (REPS["z2x-3"], REPS["z3q-3"], REPS["u1-rev-3"]):
            assert is_symmetric(rep, twirl(rep, random_herm(rng, rep.dim)))


class TestLoader:
    def test_finite(self):
        rep = symmetry_from_dict({"group": {"finite": [3]}, "site_rep": {"diag_phases": [[0, 1]]},
                                  "n_sites": 3})
        assert rep.group.orders == (3,) and rep.dim == 8

    def test_u1(self):
        rep = symmetry_from_dict({"group": {"u1": True}, "site_rep": {"charges": [0, 1]}, "n_sites": 2})
        assert rep.group.is_u1

    def test_paulis(self):
        rep = symmetry_from_dict({"group": {"finite": [2]}, "site_rep": {"paulis": ["X"]}, "n_sites": 2})
        assert np.allclose(rep.unitary((1,)), kron_all([X, X]))

    @pytest.mark.parametrize("cfg", [
        {"site_rep": {"paulis": ["X"]}, "n_sites": 2},
        {"group": {"cyclic": 2}, "site_rep": {"paulis": ["X"]}, "n_sites": 2},
        {"group": {"finite": [2]}, "site_rep": {"paulis": ["Q"]}, "n_sites": 2},
        {"group": {"finite": [2]}, "site_rep": {}, "n_sites": 2},
        {"group": {"finite": [2]}, "site_rep": {"paulis": ["X"]}, "n_sites": 0},
    ])
    def test_errors(self, cfg):
        with pytest.raises(ConfigError):
            symmetry_from_dict(cfg)
