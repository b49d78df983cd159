import pytest

from z2band.src.errors import PairingMismatch, UnsupportedSpace
from z2band.src.invariants import bundle_from_signs, kane_mele
from z2band.src.models import PhaseFunctionModel, dvec_model, phase_function_model
from z2band.src.momentum import MomentumSpace, enumerate_pairings, make_pairing
from z2band.src.tqft import (
    BordismObject,
    MonoidalReport,
    check_monoidal,
    decompose,
    disjoint_union_value,
    partition,
)
from z2band.test.oracles import all_signs

T1 = MomentumSpace.torus(1)
T2 = MomentumSpace.torus(2)
T3 = MomentumSpace.torus(3)


def values_by_carrier(bundle, decomp) -> dict:
    return {v.object.carrier: v for v in partition(bundle, decomp)}


class TestDecompose:
    """Test suite for the bordism decomposition of tori"""

    def test_level_sizes(self):
        """T^d splits into 2^(d-j) objects of dimension j"""
        for space in (T1, T2, T3):
            decomp = decompose(space)
            sizes = {dim: len(objects) for dim, objects in decomp.levels.items()}
            expected = {j: 2 ** (space.dim - j) for j in range(space.dim + 1)}
            assert sizes == expected, f"{space}: {sizes}"

    def test_top_first(self):
        """objects() lists the ambient torus first and fixed points last"""
        objects = decompose(T2).objects()
        assert objects[0].carrier == "T^2"
        assert [o.dimension for o in objects] == [2, 1, 1, 0, 0, 0, 0]

    def test_circles_and_points(self):
        """T^2 along x: circles through Γ-X and Y-XY"""
        decomp = decompose(T2, make_pairing(T2, 0))
        north, south = decomp.boundary_map["T^2"]
        assert (north.carrier, south.carrier) == ("T[Γ-X]", "T[Y-XY]")
        assert [p.carrier for p in decomp.boundary_map["T[Γ-X]"]] == ["Γ", "X"]

    def test_planes(self):
        """T^3 planes each hold four fixed points"""
        decomp = decompose(T3, make_pairing(T3, 2, 0))
        planes = decomp.levels[2]
        assert [p.carrier[:4] for p in planes] == ["T2_N", "T2_S"]
        assert all(len(p.fixed) == 4 for p in planes)
        assert set(planes[0].fixed) | set(planes[1].fixed) == set(range(8))

    def test_object_size_check(self):
        """A stratum must hold 2^dim fixed points"""
        with pytest.raises(ValueError):
            BordismObject(1, "T[?]", (0,))

    def test_errors(self):
        """Spheres and foreign pairings are rejected"""
        with pytest.raises(UnsupportedSpace):
            decompose(MomentumSpace.sphere(2))
        with pytest.raises(PairingMismatch):
            decompose(T2, make_pairing(T3, 0, 0))


class TestPartition:
    """Test suite for the partition function Z"""

    def test_circle_example(self):
        """T^1 with signs (-1, +1): Z(Γ)=1, Z(X)=0, Z(T^1)=1"""
        values = values_by_carrier(bundle_from_signs(T1, [-1, 1]), decompose(T1))
        assert values["Γ"].z_value == 1
        assert values["X"].z_value == 0
        assert values["T^1"].z_value == 1
        assert values["T^1"].nu_value == -1
        assert values["X"].to_dict() == {"dim": 0, "carrier": "X", "z": 0, "nu": 1}

    def test_trivial_bundle(self):
        """All positive signs give Z = 0 everywhere"""
        bundle = bundle_from_signs(T3, [1] * 8)
        assert all(v.z_value == 0 for v in partition(bundle, decompose(T3)))

    def test_weak_phase_planes(self):
        """Opposite -1 signs: both planes nontrivial, the torus trivial"""
        bundle = bundle_from_signs(T3, [-1, 1, 1, 1, -1, 1, 1, 1])
        decomp = decompose(T3, make_pairing(T3, 2, 0))
        values = partition(bundle, decomp)
        assert [v.z_value for v in values if v.object.dimension == 2] == [1, 1]
        assert values[0].nu_value == 1

    def test_disjoint_union(self):
        """Z of a disjoint union is the Z2 sum"""
        assert disjoint_union_value([1, 1]) == 0
        assert disjoint_union_value([1, 0, 0]) == 1
        assert disjoint_union_value([]) == 0

    @pytest.mark.slow
    def test_top_is_pairing_independent(self):
        """Z of the ambient T^3 does not depend on the decomposition"""
        for signs in all_signs(8):
            bundle = bundle_from_signs(T3, signs)
            tops = {partition(bundle, decompose(T3, p))[0].z_value for p in enumerate_pairings(T3)}
            assert len(tops) == 1, f"signs {signs}"

    def test_bundle_space_mismatch(self):
        """Bundles must live on the decomposed torus"""
        with pytest.raises(PairingMismatch):
            partition(bundle_from_signs(T2, [1, 1, 1, 1]), decompose(T1))

    def test_matches_kane_mele(self):
        """nu of the ambient torus agrees with the computed invariant"""
        for k in range(-3, 4):
            report = kane_mele(phase_function_model(PhaseFunctionModel.linear(k)), T1)
            bundle = bundle_from_signs(T1, [t.sign for t in report.trims])
            assert partition(bundle, decompose(T1))[0].nu_value == report.nu, f"k={k}"

    def test_matches_dvec(self):
        """The m = 1 d-vector model is nontrivial on T^2"""
        report = kane_mele(dvec_model(1.0), T2, path_samples=128)
        bundle = bundle_from_signs(T2, [t.sign for t in report.trims])
        assert partition(bundle, decompose(T2))[0].nu_value == -1


class TestMonoidal:
    """Test suite for the monoidal-functor check"""

    def test_circle_exhaustive(self):
        """Every sign assignment on T^1 passes"""
        for signs in all_signs(2):
            report = check_monoidal(bundle_from_signs(T1, signs), decompose(T1))
            assert report.passed, report.counterexample

    def test_torus_two_exhaustive(self):
        """Every sign assignment on T^2 passes for both pairings"""
        for signs in all_signs(4):
            bundle = bundle_from_signs(T2, signs)
            for pairing in enumerate_pairings(T2):
                report = check_monoidal(bundle, decompose(T2, pairing))
                assert report.passed, f"{signs}, {pairing.name}: {report.counterexample}"

    @pytest.mark.slow
    def test_torus_three_exhaustive(self):
        """Every sign assignment on T^3 passes for all nine pairings"""
        for signs in all_signs(8):
            bundle = bundle_from_signs(T3, signs)
            for pairing in enumerate_pairings(T3):
                report = check_monoidal(bundle, decompose(T3, pairing))
                assert report.passed, f"{signs}, {pairing.name}/{pairing.grouping}: {report.counterexample}"
                assert report.checked > 0

    def test_report(self):
        """Failed identities are kept in order"""
        report = MonoidalReport()
        report.record(True, "fine")
        report.record(False, "first")
        report.record(False, "second")
        assert report.checked == 3
        assert not report.passed
        assert report.to_dict() == {"passed": False, "checked": 3, "counterexample": "first"}
