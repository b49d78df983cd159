import numpy as np
import pytest

from z2band.src.errors import (
    GapClosed,
    HermiticityViolation,
    InvalidPhaseFunction,
    OddOccupation,
    ParseError,
    ThetaInvalid,
)
from z2band.src.models import (
    DVEC_THETA,
    GAMMA_1,
    GAMMA_2,
    GAMMA_3,
    I_SIGMA_Y,
    SIGMA_0,
    BlochModel,
    PhaseFunctionModel,
    TightBindingModel,
    TimeReversalOp,
    builtin_model,
    dvec_model,
    fix_phases,
    flat_model,
    occupied_frame,
    occupied_frames,
    phase_function_model,
    validate_model,
)


class TestTimeReversal:
    """Test suite for the Theta operator"""

    def test_valid(self):
        """i sigma_y squares to -1"""
        theta = TimeReversalOp(I_SIGMA_Y)
        assert theta.dim == 2
        assert np.allclose(theta.apply(theta.apply(np.eye(2))), -np.eye(2))

    def test_theta_squared_plus_one(self):
        """A real identity gives Theta^2 = +1 and is rejected"""
        with pytest.raises(ThetaInvalid):
            TimeReversalOp(SIGMA_0)

    def test_not_unitary(self):
        """Non-unitary matrices are rejected"""
        with pytest.raises(ThetaInvalid):
            TimeReversalOp(2 * I_SIGMA_Y)


class TestBlochModel:
    """Test suite for the model container"""

    def test_odd_occupation(self):
        """Kramers models need even band and occupation counts"""
        theta = TimeReversalOp(I_SIGMA_Y)
        with pytest.raises(OddOccupation):
            BlochModel(1, 2, 1, lambda ks: None, theta)
        with pytest.raises(OddOccupation):
            BlochModel(1, 2, 3, lambda ks: None)

    def test_theta_dimension(self):
        """Theta must match the band count"""
        with pytest.raises(ThetaInvalid):
            BlochModel(1, 4, 2, lambda ks: None, TimeReversalOp(I_SIGMA_Y))

    def test_evaluate_shapes(self):
        """Single points give (n, n), batches give (B, n, n)"""
        model = dvec_model(1.0)
        assert model.evaluate([0.1, 0.2]).shape == (4, 4)
        assert model.evaluate(np.zeros((5, 2))).shape == (5, 4, 4)
        with pytest.raises(ValueError):
            model.evaluate([0.1])

    def test_dvec_hamiltonian(self):
        """Tight-binding hoppings reproduce the d-vector formula"""
        model = dvec_model(1.0)
        for kx, ky in [(0.3, -1.1), (2.0, 0.5), (np.pi, 0.0)]:
            expected = (np.sin(kx) * GAMMA_1 + np.sin(ky) * GAMMA_2
                        + (1.0 + np.cos(kx) + np.cos(ky)) * GAMMA_3)
            assert np.allclose(model.evaluate([kx, ky]), expected), f"H mismatch at {(kx, ky)}"

    def test_dvec_time_reversal(self):
        """Theta H(k) Theta^-1 = H(-k) for the d-vector model"""
        model = dvec_model(1.0)
        theta = TimeReversalOp(DVEC_THETA)
        k = np.array([[0.4, -2.2], [1.3, 0.7]])
        assert np.allclose(theta.conjugate(model.evaluate(k)), model.evaluate(-k))

    def test_extended(self):
        """More than one occupied Kramers pair is extended"""
        assert not dvec_model(1.0).extended


class TestEigenFrames:
    """Test suite for deterministic occupied frames"""

    def test_fix_phases(self):
        """Largest component of each column becomes real positive"""
        v = np.array([[0.1, 1j], [-0.9j, 0.2]])
        fixed = fix_phases(v)
        assert fixed[1, 0].real > 0 and abs(fixed[1, 0].imag) < 1e-15
        assert fixed[0, 1].real > 0 and abs(fixed[0, 1].imag) < 1e-15

    def test_orthonormal_and_deterministic(self):
        """Frames are orthonormal and identical on repeated calls"""
        model = dvec_model(1.0)
        ks = np.array([[0.3, 0.9], [-2.0, 1.0]])
        first = occupied_frames(model, ks)
        second = occupied_frames(model, ks)
        assert np.array_equal(first, second)
        gram = np.conj(np.swapaxes(first, -1, -2)) @ first
        assert np.allclose(gram, np.eye(2))

    def test_kramers_pairs_at_fixed_points(self):
        """At a fixed point the second state is Theta of the first"""
        model = dvec_model(1.0)
        frame = occupied_frame(model, [0.0, 0.0])
        partner = model.theta.apply(frame.states[:, :1])[:, 0]
        assert np.allclose(frame.states[:, 1], partner)
        assert frame.gap == pytest.approx(6.0)

    def test_gap_closed(self):
        """m = 2 closes the gap at (pi, pi)"""
        with pytest.raises(GapClosed) as info:
            occupied_frame(dvec_model(2.0), [np.pi, np.pi])
        assert info.value.gap < 1e-6

    def test_sections_override(self):
        """Phase models return their sections as the frame"""
        model = phase_function_model(PhaseFunctionModel.linear(1))
        frame = occupied_frame(model, [np.pi / 2])
        assert np.allclose(frame.states, [[1, 0], [0, -np.exp(-1j * np.pi / 2)]])


class TestValidation:
    """Test suite for validate_model"""

    def test_builtins_pass(self):
        """Every builtin family validates"""
        for model in (dvec_model(1.0), flat_model(), phase_function_model(PhaseFunctionModel.linear(3))):
            report = validate_model(model, 8)
            assert report.passed, f"{model.name} failed: {report.failures}"

    def test_gap_failure(self):
        """The m = 2 critical point fails with a gap message"""
        report = validate_model(dvec_model(2.0), 8)
        assert not report.passed
        assert any("gap closes" in f for f in report.failures)
        assert any(line.startswith("min gap:") for line in report.lines())

    def test_broken_time_reversal(self):
        """A Hamiltonian that is not Theta-symmetric is reported"""
        zeeman = np.kron(SIGMA_0, np.diag([1.0, -1.0])).astype(complex)
        base = np.diag([-2.0, -2.0, 2.0, 2.0]).astype(complex)
        model = TightBindingModel(1, 4, 2, {(0,): base + 0.1 * zeeman},
                                  np.kron(SIGMA_0, I_SIGMA_Y)).to_model()
        report = validate_model(model, 8)
        assert report.tr_defect > report.tr_tolerance
        assert not report.passed

    def test_report_dict(self):
        """All-occupied models report no gap"""
        report = validate_model(phase_function_model(PhaseFunctionModel.linear(1)), 4)
        data = report.to_dict()
        assert data["min_gap"] is None
        assert data["passed"] is True


class TestPhaseFunction:
    """Test suite for phase functions beta"""

    def test_linear(self):
        """beta(x) = k x"""
        beta = PhaseFunctionModel.linear(2)
        assert beta(np.pi) == pytest.approx(2 * np.pi)
        assert beta(-1.0) == pytest.approx(-2.0)

    def test_odd_extension(self):
        """beta(-x) = 2 beta(0) - beta(x)"""
        beta = PhaseFunctionModel(coefficients=[0.5, 1.0 - 0.1 * np.pi ** 2, 0.0, 0.1])
        x = np.linspace(0, np.pi, 7)
        assert np.allclose(beta(-x), 2 * 0.5 - beta(x))

    def test_constraint(self):
        """beta(pi) - beta(0) must be a multiple of pi"""
        with pytest.raises(InvalidPhaseFunction):
            PhaseFunctionModel(coefficients=[0.0, 0.5])
        with pytest.raises(InvalidPhaseFunction):
            PhaseFunctionModel(coefficients=[0.0, 1.0, 1.0])
        with pytest.raises(InvalidPhaseFunction):
            PhaseFunctionModel()

    def test_tabulated(self):
        """Samples on [0, pi] are interpolated"""
        beta = PhaseFunctionModel(samples=([0.0, np.pi / 2, np.pi], [0.0, 1.0, np.pi]))
        assert beta(np.pi / 4) == pytest.approx(0.5)
        assert beta.raw_half_winding() == pytest.approx(1.0)
        with pytest.raises(InvalidPhaseFunction):
            PhaseFunctionModel(samples=([0.5, np.pi], [0.0, np.pi]))


class TestTightBinding:
    """Test suite for tight-binding models and builtins"""

    def test_missing_partner(self):
        """A hopping without its -R partner names the displacement"""
        t = np.eye(2, dtype=complex)
        with pytest.raises(HermiticityViolation) as info:
            TightBindingModel(1, 2, 1, {(0,): t, (1,): 0.5 * t})
        assert info.value.displacement == (1,)

    def test_bad_shape(self):
        """Wrong matrix sizes are parse errors"""
        with pytest.raises(ParseError):
            TightBindingModel(1, 2, 1, {(0,): np.eye(3)})

    def test_builtin_registry(self):
        """Builtins resolve by name with key=value parameters"""
        assert builtin_model("phase:k=1").name == "phase:k=1"
        assert builtin_model("flat").dim_k == 1
        assert builtin_model("flat:dim=3").dim_k == 3
        half = builtin_model("dvec:m=1").half_model()
        assert (half.n_bands, half.n_occupied, half.theta) == (2, 1, None)

    def test_builtin_dimension(self):
        """flat takes the requested dimension unless dim= fixes it"""
        assert builtin_model("flat", 3).dim_k == 3
        assert builtin_model("flat:dim=1", 3).dim_k == 1
        assert builtin_model("phase:k=1", 2).dim_k == 1

    def test_builtin_errors(self):
        """Unknown names and malformed parameters are parse errors"""
        for spec in ("nope", "dvec", "dvec:m=abc", "phase:k"):
            with pytest.raises(ParseError):
                builtin_model(spec)
