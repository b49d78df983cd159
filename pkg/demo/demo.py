"""
z2band Demo
===========
Demonstrates: Pfaffians, the Kane-Mele invariant, Stiefel-Whitney classes,
cobordism of restricted bundles and the partition function Z

Run this file from the repository root to see all concepts in action:
python demo/demo.py
"""

import numpy as np

from z2band.src.berry import berry_sweep
from z2band.src.cobordism import ClosedSurface, bundle_surfaces, connected_sum
from z2band.src.invariants import bundle_from_signs, kane_mele, weak_indices
from z2band.src.models import PhaseFunctionModel, dvec_half_model, dvec_model, phase_function_model
from z2band.src.momentum import MomentumSpace, fixed_points, make_pairing
from z2band.src.pfaffian import pfaffian, track_sqrt_det
from z2band.src.tqft import check_monoidal, decompose, partition


# =============================================================================
# PART 1: PFAFFIANS
# =============================================================================

print("=" * 60)
print("PART 1: PFAFFIANS")
print("=" * 60)

# -----------------------------------------------------------------------------
# 1.1 Sign convention
# -----------------------------------------------------------------------------
print("\n--- 1.1 Sign convention ---")

print(f"pf([[0, 2], [-2, 0]]) = {pfaffian([[0, 2], [-2, 0]]).real:+.1f}")   # +2.0

a = np.array([[0, 1, 2, 3], [-1, 0, 4, 5], [-2, -4, 0, 6], [-3, -5, -6, 0]], dtype=float)
print(f"pf(4x4) = {pfaffian(a).real:+.1f}")                                # 1*6 - 2*5 + 3*4 = +8.0
print(f"pf^2 = det? {np.isclose(pfaffian(a) ** 2, np.linalg.det(a))}")      # True


# -----------------------------------------------------------------------------
# 1.2 Continuous square root of a determinant
# -----------------------------------------------------------------------------
print("\n--- 1.2 Continuous square root of a determinant ---")

# det winds once around the origin, so its continued square root ends at -1
dets = np.exp(1j * np.linspace(0, 2 * np.pi, 33))
trace = track_sqrt_det(dets, initial_branch=1.0)
print(f"sqrt(det) after one winding: {trace.final_sqrt.real:+.3f}")       # -1.000


# =============================================================================
# PART 2: KANE-MELE INVARIANT
# =============================================================================

print("\n" + "=" * 60)
print("PART 2: KANE-MELE INVARIANT")
print("=" * 60)

# -----------------------------------------------------------------------------
# 2.1 Phase-function models on the circle
# -----------------------------------------------------------------------------
print("\n--- 2.1 Phase-function models on the circle ---")

T1 = MomentumSpace.torus(1)
for k in range(4):
    report = kane_mele(phase_function_model(PhaseFunctionModel.linear(k)), T1)
    signs = ", ".join(f"{t.label}:{t.sign:+d}" for t in report.trims)
    print(f"beta(x) = {k}x  ->  nu = {report.nu:+d}   ({signs})")


# -----------------------------------------------------------------------------
# 2.2 The d-vector model on T^2
# -----------------------------------------------------------------------------
print("\n--- 2.2 The d-vector model on T^2 ---")

T2 = MomentumSpace.torus(2)
for m in (1.0, 3.0):
    report = kane_mele(dvec_model(m), T2, path_samples=128)
    chern = berry_sweep(dvec_half_model(m), (24, 24)).chern
    print(f"m = {m}: nu = {report.nu:+d}, chern of the spin-up block = {chern}")


# =============================================================================
# PART 3: STIEFEL-WHITNEY CLASSES AND COBORDISM
# =============================================================================

print("\n" + "=" * 60)
print("PART 3: STIEFEL-WHITNEY CLASSES AND COBORDISM")
print("=" * 60)

# -----------------------------------------------------------------------------
# 3.1 Weak and strong indices on T^3
# -----------------------------------------------------------------------------
print("\n--- 3.1 Weak and strong indices on T^3 ---")

T3 = MomentumSpace.torus(3)
weak_signs = [-1, 1, 1, 1, -1, 1, 1, 1]
bundle = bundle_from_signs(T3, weak_signs)
print(f"fixed points: {', '.join(str(p) for p in fixed_points(T3))}")
print(f"nu(T^3) = {bundle.nu:+d}")
print(f"weak indices: {weak_indices(bundle)}")


# -----------------------------------------------------------------------------
# 3.2 Restricted bundles and their surfaces
# -----------------------------------------------------------------------------
print("\n--- 3.2 Restricted bundles and their surfaces ---")

pairing = make_pairing(T3, 2, 0)
for row in bundle_surfaces(bundle, pairing):
    print(f"{row['pair']:>6}: {row['classification']:<8} -> {row['surface']:<4} class {row['class']}")

print(f"RP^2 # RP^2 = {connected_sum(ClosedSurface.RP2, ClosedSurface.RP2).symbol}")   # K


# =============================================================================
# PART 4: PARTITION FUNCTION
# =============================================================================

print("\n" + "=" * 60)
print("PART 4: PARTITION FUNCTION")
print("=" * 60)

decomp = decompose(T3, pairing)
for value in partition(bundle, decomp):
    if value.object.dimension >= 2:
        print(f"Z({value.object.carrier}) = {value.z_value}")

monoidal = check_monoidal(bundle, decomp)
print(f"monoidal: {'PASS' if monoidal.passed else monoidal.counterexample} ({monoidal.checked} identities)")
