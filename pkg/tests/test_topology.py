import numpy as np
import pytest
from hypothesis import given, strategies as st

from consensus_spectra import (
    Kind,
    NetworkModel,
    ParameterError,
    SizeError,
    TopologyError,
    circulant_row,
    dense_laplacian,
    format_model,
    parse_model,
    r_nearest_ring,
    ring,
    torus,
    validate,
)


class TestValidate:
    def test_ring_ok(self):
        m = NetworkModel(Kind.RING, a=0.5, n=4)
        assert validate(m) is m

    def test_rnearest_needs_disjoint_arcs(self):
        with pytest.raises(ParameterError, match="2r"):
            validate(NetworkModel(Kind.R_NEAREST_RING, a=0.0, n=5, r=2))

    def test_a_out_of_range(self):
        with pytest.raises(ParameterError, match=r"\[0, 1\]"):
            validate(NetworkModel(Kind.RING, a=1.2, n=4))

    def test_complete_graph_rejected_with_hint(self):
        # n = 2r + 1 makes every node adjacent to every other
        with pytest.raises(ParameterError, match="complete graph"):
            validate(NetworkModel(Kind.R_NEAREST_RING, a=0.0, n=7, r=3))

    def test_small_ring_rejected(self):
        with pytest.raises(ParameterError):
            validate(NetworkModel(Kind.RING, a=0.0, n=2))

    def test_torus_side_floor(self):
        with pytest.raises(ParameterError, match="k_2"):
            validate(NetworkModel(Kind.TORUS, a=0.0, dims=(4, 2)))

    def test_torus_needs_two_dims(self):
        with pytest.raises(ParameterError):
            validate(NetworkModel(Kind.TORUS, a=0.0, dims=(5,)))

    def test_one_directional_ring_allowed(self):
        assert validate(NetworkModel(Kind.RING, a=1.0, n=8)).a == 1.0


class TestCirculantRow:
    def test_ring_layout(self):
        row = circulant_row(ring(4, 0.5))
        assert row.entries == pytest.approx([1.0, -0.25, 0.0, -0.75])

    def test_symmetric_ring(self):
        row = circulant_row(ring(5, 0.0))
        assert row.entries == pytest.approx([1.0, -0.5, 0.0, 0.0, -0.5])

    def test_rnearest_layout(self):
        row = circulant_row(r_nearest_ring(6, 2, 0.0))
        assert row.entries == pytest.approx([2.0, -0.5, -0.5, 0.0, -0.5, -0.5])

    def test_torus_rejected(self):
        with pytest.raises(TopologyError):
            circulant_row(torus((3, 3), 0.0))

    @pytest.mark.parametrize("n,r,a", [(8, 1, 0.3), (12, 3, 0.7), (10, 4, 1.0)])
    def test_zero_sum_and_degree(self, n, r, a):
        row = circulant_row(r_nearest_ring(n, r, a))
        assert row.entries.sum() == pytest.approx(0.0, abs=1e-14)
        assert row.entries[0] == r


def torus33_by_neighbor_enumeration(a: float) -> np.ndarray:
    """Independent assembly of the 3x3 torus Laplacian, walking each
    node's four neighbors with mixed-radix flat index 3*i + j."""
    lap = np.zeros((9, 9))
    fw, bw = (1.0 - a) / 2.0, (1.0 + a) / 2.0
    for i in range(3):
        for j in range(3):
            v = 3 * i + j
            lap[v, v] = 2.0
            lap[v, 3 * ((i + 1) % 3) + j] -= fw
            lap[v, 3 * ((i - 1) % 3) + j] -= bw
            lap[v, 3 * i + (j + 1) % 3] -= fw
            lap[v, 3 * i + (j - 1) % 3] -= bw
    return lap


class TestDenseLaplacian:
    def test_symmetric_ring4(self):
        lap = dense_laplacian(ring(4, 0.0)).values
        assert np.allclose(np.diag(lap), 1.0)
        for i in range(4):
            assert lap[i, (i + 1) % 4] == pytest.approx(-0.5)
            assert lap[i, (i - 1) % 4] == pytest.approx(-0.5)

    @pytest.mark.parametrize("a", [0.0, 0.5, 1.0])
    def test_torus33_matches_neighbor_enumeration(self, a):
        lap = dense_laplacian(torus((3, 3), a)).values
        assert np.allclose(lap, torus33_by_neighbor_enumeration(a), atol=1e-15)

    @pytest.mark.parametrize("model", [ring(4, 0.5), r_nearest_ring(9, 3, 0.4)])
    def test_one_dimensional_rows_are_cyclic_shifts(self, model):
        lap = dense_laplacian(model).values
        row = circulant_row(model).entries
        for i in range(model.n):
            assert np.allclose(lap[i], np.roll(row, i), atol=1e-15)

    @pytest.mark.parametrize(
        "model",
        [ring(7, 0.4), r_nearest_ring(11, 3, 0.9), torus((3, 4), 0.6), torus((3, 3, 4), 0.2)],
    )
    def test_row_and_column_sums_vanish(self, model):
        lap = dense_laplacian(model).values
        assert np.max(np.abs(lap.sum(axis=0))) < 1e-12
        assert np.max(np.abs(lap.sum(axis=1))) < 1e-12

    @pytest.mark.parametrize("model", [ring(9, 0.0), r_nearest_ring(12, 4, 0.0), torus((4, 5), 0.0)])
    def test_symmetric_when_a_zero(self, model):
        lap = dense_laplacian(model).values
        assert np.max(np.abs(lap - lap.T)) < 1e-15

    def test_torus_diagonal_is_dimension(self):
        lap = dense_laplacian(torus((3, 4, 3), 0.3)).values
        assert np.allclose(np.diag(lap), 3.0)

    def test_dense_cap(self):
        with pytest.raises(SizeError):
            dense_laplacian(ring(200, 0.0), cap=100)

    def test_order(self):
        assert dense_laplacian(torus((3, 4), 0.0)).order == 12


class TestModelGrammar:
    @pytest.mark.parametrize(
        "text",
        [
            "ring:n=4,a=0.5",
            "rnearest:n=12,r=3,a=0.25",
            "torus:dims=3x4x5,a=0.0",
        ],
    )
    def test_round_trip(self, text):
        model = parse_model(text)
        assert parse_model(format_model(model)) == model

    def test_parse_values(self):
        m = parse_model("rnearest:n=12,r=3,a=0.25")
        assert (m.kind, m.n, m.r, m.a) == (Kind.R_NEAREST_RING, 12, 3, 0.25)

    @pytest.mark.parametrize(
        "bad",
        [
            "lattice:n=4,a=0",
            "ring:n=4",
            "ring:n=four,a=0.5",
            "torus:dims=4,a=0.1",
            "ring:n=4,a=0.5,z=2",
            "ring:n=2,a=0.0",
        ],
    )
    def test_rejects_malformed(self, bad):
        with pytest.raises(ParameterError):
            parse_model(bad)

    @given(
        st.integers(min_value=3, max_value=200),
        st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
    )
    def test_ring_round_trip_any_params(self, n, a):
        model = ring(n, a)
        assert parse_model(format_model(model)) == model
