import pytest
from hypothesis import given, settings, strategies as st

import rep_core
from exceptions import RepresentationError


@pytest.mark.parametrize("L", range(0, 21))
def test_casimir_is_L_times_L_plus_two(L):
    assert rep_core.casimir(rep_core.make_irrep(L)) == L * (L + 2)


@pytest.mark.parametrize("L", [0, 1, 3, 8])
def test_irreps_satisfy_sl2_relations(L):
    rep_core.check_sl2_relations(rep_core.make_irrep(L))


def test_tensor_satisfies_sl2_relations():
    t = rep_core.tensor(rep_core.make_irrep(1), rep_core.make_irrep(3))
    rep_core.check_sl2_relations(t)
    assert t.dim == 8
    assert [m.L for m in t.factors] == [1, 3]


def test_negative_weight_rejected():
    with pytest.raises(RepresentationError):
        rep_core.make_irrep(-1)


def test_lowering_basis_is_integer_valued():
    s = rep_core.make_irrep(4)
    assert s.X[1, 2] == 2 * (4 - 2 + 1)
    assert s.Y[3, 2] == 1
    assert [s.H[j, j] for j in range(5)] == [4, 2, 0, -2, -4]


class TestDecompose:
    def test_s3_times_sl(self):
        t = rep_core.tensor(rep_core.make_irrep(3), rep_core.make_irrep(8))
        assert [p.highest_weight for p in rep_core.decompose(t)] == [11, 9, 7, 5]

    def test_s1_times_s3(self):
        t = rep_core.tensor(rep_core.make_irrep(1), rep_core.make_irrep(3))
        assert [p.highest_weight for p in rep_core.decompose(t)] == [4, 2]

    @settings(max_examples=15, deadline=None)
    @given(st.integers(min_value=1, max_value=10))
    def test_dimensions_add_up(self, L):
        t = rep_core.tensor(rep_core.make_irrep(1), rep_core.make_irrep(L))
        pieces = rep_core.decompose(t)
        assert sum(p.highest_weight + 1 for p in pieces) == t.dim

    def test_highest_weight_vectors_are_killed_by_X(self):
        t = rep_core.tensor(rep_core.make_irrep(3), rep_core.make_irrep(4))
        for piece in rep_core.decompose(t):
            assert (t.X * piece.hw_vector).is_zero_matrix

    def test_triple_product_with_s8(self):
        pair = rep_core.tensor(rep_core.make_irrep(1), rep_core.make_irrep(3))
        t = rep_core.tensor(pair, rep_core.make_irrep(8))
        weights = sorted((p.highest_weight for p in rep_core.decompose(t)), reverse=True)
        assert weights == [12, 10, 10, 8, 8, 6, 6, 4]

    @pytest.mark.parametrize("factors", [(3, 4), (1, 3, 8)], ids=["S3xS4", "S1xS3xS8"])
    def test_lowering_strings_have_length_mu_plus_one(self, factors):
        t = rep_core.make_irrep(factors[0])
        for L in factors[1:]:
            t = rep_core.tensor(t, rep_core.make_irrep(L))
        for piece in rep_core.decompose(t):
            v = piece.hw_vector
            for _ in range(piece.highest_weight):
                v = t.Y * v
            assert not v.is_zero_matrix
            assert (t.Y * v).is_zero_matrix


def test_isotypic_projector_is_idempotent():
    t = rep_core.tensor(rep_core.make_irrep(1), rep_core.make_irrep(3))
    p = rep_core.isotypic_projector(t, 4)
    assert p * p == p
    assert p.trace() == 5


def test_isotypic_projector_of_missing_weight_is_zero():
    t = rep_core.tensor(rep_core.make_irrep(1), rep_core.make_irrep(3))
    assert rep_core.isotypic_projector(t, 6).is_zero_matrix


class TestPairingSpectrum:
    @pytest.mark.parametrize("ell", range(1, 13))
    def test_eigenvalues_and_multiplicities(self, ell):
        spectrum = rep_core.pairing_spectrum(rep_core.make_irrep(1), rep_core.make_irrep(ell))
        counts = rep_core.eigenvalue_multiplicities(spectrum)
        assert counts == {-ell: ell + 2, ell + 2: ell}

    def test_trivial_module_has_single_piece(self):
        spectrum = rep_core.pairing_spectrum(rep_core.make_irrep(1), rep_core.make_irrep(0))
        assert [(e.target_weight, e.eigenvalue) for e in spectrum] == [(1, 0)]

    def test_tensor_module_rows(self):
        m2 = rep_core.tensor(rep_core.make_irrep(3), rep_core.make_irrep(8))
        spectrum = rep_core.pairing_spectrum(rep_core.make_irrep(1), m2)
        up = [e.eigenvalue for e in spectrum if e.target_weight == e.source_weight + 1]
        down = [e.eigenvalue for e in spectrum if e.target_weight == e.source_weight - 1]
        assert up == [-11, -9, -7, -5]
        assert down == [13, 11, 9, 7]

    def test_requires_s1(self):
        with pytest.raises(RepresentationError):
            rep_core.pairing_spectrum(rep_core.make_irrep(2), rep_core.make_irrep(3))


def test_pairing_op_matches_casimir_difference():
    m = rep_core.pairing_op(rep_core.make_irrep(1), rep_core.make_irrep(5))
    assert m.shape == (12, 12)
