import numpy as np
import pytest

from z2band.src.berry import arc_parameter, berry_phase, berry_sweep, gauge_check, link_variables
from z2band.src.errors import ConstraintViolated, SingularLink, UnsupportedSpace
from z2band.src.models import dvec_half_model, dvec_model, flat_model
from z2band.src.momentum import MomentumSpace, circle_points, fixed_points
from z2band.test.oracles import d_hat_degree

T2 = MomentumSpace.torus(2)


def kx_loop(samples: int = 32) -> np.ndarray:
    gamma, x = fixed_points(T2)[0], fixed_points(T2)[2]
    return circle_points(T2, (gamma, x), samples)


class TestChernNumbers:
    """Test suite for lattice Chern numbers"""

    def test_flat_has_no_curvature(self):
        """Constant frames give zero curvature everywhere"""
        data = berry_sweep(flat_model(2), (8, 8))
        assert data.chern == 0
        assert np.all(np.abs(data.curvature) < 1e-12)

    def test_lower_half_matches_degree(self):
        """Chern of the spin-up block equals the degree of d/|d|"""
        for m, expected in ((1.0, -1), (3.0, 0)):
            chern = berry_sweep(dvec_half_model(m), (24, 24)).chern
            assert chern == d_hat_degree(m), f"m={m}: chern {chern}"
            assert chern == expected

    def test_grid_independence(self):
        """The spin-up chern number is the same on 12^2, 24^2 and 48^2 grids"""
        for m, expected in ((1.0, -1), (-1.0, 1), (3.0, 0)):
            cherns = [berry_sweep(dvec_half_model(m), (n, n)).chern for n in (12, 24, 48)]
            assert cherns == [expected] * 3, f"m={m}: {cherns}"

    @pytest.mark.slow
    def test_full_model_grid_independence(self):
        """The full occupied bundle stays at chern 0 on every grid"""
        for m in (1.0, 3.0):
            cherns = [berry_sweep(dvec_model(m), (n, n)).chern for n in (12, 24, 48)]
            assert cherns == [0, 0, 0], f"m={m}: {cherns}"

    @pytest.mark.slow
    def test_time_reversal_forces_zero(self):
        """The full occupied bundle of a Theta-invariant model has chern 0"""
        for model in (dvec_model(1.0), dvec_model(3.0), flat_model(2)):
            assert berry_sweep(model, (24, 24)).chern == 0, f"{model.name} should have chern 0"

    def test_total_curvature(self):
        """Plaquette curvatures add up to 2 pi chern"""
        data = berry_sweep(dvec_half_model(1.0), (12, 12))
        assert np.sum(data.curvature) == pytest.approx(2 * np.pi * data.chern, abs=1e-9)
        assert len(data.curvature_rows()) == 144

    def test_grid_checks(self):
        """Grids must match the model and have at least 3 points"""
        with pytest.raises(UnsupportedSpace):
            berry_sweep(dvec_half_model(1.0), (8,))
        with pytest.raises(ValueError):
            berry_sweep(dvec_half_model(1.0), (2, 8))

    def test_to_dict(self):
        """Serialized sweeps carry the chern number and named phases"""
        data = berry_sweep(dvec_half_model(1.0), (12, 12)).to_dict()
        assert data["chern"] == -1
        assert set(data["berry_phases"]) == {"kx-loop@ky=0", "ky-loop@kx=0"}
        assert data["grid"] == [12, 12]

    def test_one_dimensional(self):
        """1D models get a single loop phase"""
        data = berry_sweep(flat_model(1), (16,))
        assert data.chern is None
        assert data.berry_phases["kx-loop"] == pytest.approx(0.0, abs=1e-12)


class TestBerryPhase:
    """Test suite for Berry phases along loops"""

    def test_flat_loop(self):
        """berry_phase(flat, loop) = 0"""
        assert berry_phase(flat_model(2), kx_loop()) == pytest.approx(0.0, abs=1e-12)

    def test_singular_link(self):
        """Orthogonal frames make a singular link"""
        a = np.array([[[1.0], [0.0]]], dtype=complex)
        b = np.array([[[0.0], [1.0]]], dtype=complex)
        with pytest.raises(SingularLink):
            link_variables(a, b)

    def test_arc_parameter(self):
        """The closing total of a kx loop is 2 pi"""
        s = arc_parameter(kx_loop(16))
        assert len(s) == 17
        assert s[-1] == pytest.approx(2 * np.pi)


class TestGaugeCheck:
    """Test suite for gauge transformations of the Berry phase"""

    def test_closed_gauge_keeps_phase(self):
        """beta(s) = s winds by 2 pi and leaves the phase unchanged"""
        report = gauge_check(dvec_half_model(1.0), lambda s: s, kx_loop())
        assert report.passed, f"phase moved by {report.difference}"
        assert report.winding == pytest.approx(2 * np.pi)
        assert report.difference < 1e-7

    def test_open_gauge_is_reported(self):
        """beta(s) = s / 2 does not close and shifts the phase by pi"""
        with pytest.raises(ConstraintViolated) as info:
            gauge_check(dvec_half_model(1.0), lambda s: s / 2, kx_loop())
        error = info.value
        assert error.shift == pytest.approx(np.pi)
        moved = np.angle(np.exp(1j * (error.gauged - error.original)))
        assert abs(moved) == pytest.approx(np.pi, abs=1e-7)
