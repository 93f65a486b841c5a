"""Gate classification: invariants, Weyl coordinates, concurrence oracle."""

import numpy as np
import pytest

from qrq.gates import (
    CLASS_TABLE,
    CNOT,
    IDENTITY4,
    MAGIC,
    SQRT_SWAP,
    SQRT_SWAP_DAG,
    SWAP,
    NonUnitaryInput,
    canonical_gate,
    classify,
    entangling_power,
    gate_from_alpha,
    is_perfect_entangler,
    local_invariants,
    max_product_concurrence,
    project_su4,
    random_local_gate,
    random_unitary,
    to_bell_diagonal,
    weyl_coordinates,
)


def test_magic_basis_unitary():
    assert np.max(np.abs(MAGIC @ MAGIC.conj().T - IDENTITY4)) < 1e-15


def test_named_invariants():
    inv = local_invariants(IDENTITY4)
    assert abs(inv.g1 - 1.0) < 1e-9 and abs(inv.g2 - 3.0) < 1e-9
    inv = local_invariants(SWAP)
    assert abs(inv.g1 + 1.0) < 1e-9 and abs(inv.g2 + 3.0) < 1e-9
    inv = local_invariants(CNOT)
    assert abs(inv.g1) < 1e-9 and abs(inv.g2 - 1.0) < 1e-9
    g1a = local_invariants(SQRT_SWAP).g1
    g1b = local_invariants(SQRT_SWAP_DAG).g1
    # the pair carries +-i/4; which root gets which sign is a convention
    assert sorted([g1a.imag, g1b.imag]) == pytest.approx([-0.25, 0.25], abs=1e-9)
    assert abs(g1a.real) < 1e-9 and abs(g1b.real) < 1e-9
    assert abs(local_invariants(SQRT_SWAP).g2) < 1e-9


def test_project_su4_phase_and_identity():
    out = project_su4(IDENTITY4)
    assert np.max(np.abs(out - IDENTITY4)) < 1e-12
    out = project_su4(np.exp(1j * np.pi / 3) * IDENTITY4)
    assert abs(np.linalg.det(out) - 1.0) < 1e-12
    assert np.max(np.abs(np.abs(out) - IDENTITY4)) < 1e-12


def test_project_su4_seeded_property():
    for seed in range(100):
        u = random_unitary(seed)
        v = project_su4(u)
        assert abs(np.linalg.det(v) - 1.0) <= 1e-12
        w = v.conj().T @ u
        # v differs from u by a global phase only
        assert np.max(np.abs(w - w[0, 0] * IDENTITY4)) < 1e-10


def test_project_su4_rejects_nonunitary():
    with pytest.raises(NonUnitaryInput):
        project_su4(1.5 * IDENTITY4)


def test_bell_diagonal():
    d = to_bell_diagonal(IDENTITY4)
    assert np.max(np.abs(d - 1.0)) < 1e-12
    d = to_bell_diagonal(SWAP)
    ref = np.array([1, 1, -1, 1]) * d[0]
    assert np.max(np.abs(d - ref)) < 1e-9
    assert to_bell_diagonal(CNOT) is None


def test_weyl_named_points():
    w = weyl_coordinates(IDENTITY4)
    assert np.allclose(w.alpha, (0.0, 0.0, 0.0), atol=1e-9)
    w = weyl_coordinates(gate_from_alpha((0.3, 0.0, 0.0)))
    assert np.allclose(w.alpha, (0.3, 0.0, 0.0), atol=1e-9)
    w = weyl_coordinates(SWAP)
    assert np.allclose(w.alpha, (np.pi / 4,) * 3, atol=1e-9)
    assert np.allclose(w.chamber_coords, (np.pi / 2,) * 3, atol=1e-9)
    lam = np.remainder(np.sum(w.lambdas), 2 * np.pi)
    assert min(lam, 2 * np.pi - lam) < 1e-9


def test_weyl_roundtrip_canonical():
    rng = np.random.default_rng(7)
    for _ in range(30):
        alpha = np.sort(rng.uniform(0, np.pi / 2, 3))[::-1]
        from qrq.gates import _canonical_alpha

        alpha = np.array(_canonical_alpha(alpha))
        got = weyl_coordinates(gate_from_alpha(alpha))
        assert np.allclose(got.alpha, alpha, atol=1e-9)


def test_lambda_linear_relations():
    rng = np.random.default_rng(11)
    for _ in range(10):
        alpha = np.array(sorted(rng.uniform(0, np.pi / 2, 3), reverse=True))
        w = weyl_coordinates(gate_from_alpha(alpha))
        ax, ay, az = w.alpha
        ref = np.array([ax - ay + az, -ax + ay + az, -ax - ay - az, ax + ay - az])
        diff = np.remainder(np.array(w.lambdas) - ref, 2 * np.pi)
        diff = np.minimum(diff, 2 * np.pi - diff)
        assert np.max(diff) < 1e-8


def test_classify_named():
    assert classify(IDENTITY4).label == "Identity"
    assert classify(SWAP).label == "Swap"
    assert classify(CNOT).label == "Cnot"
    labels = {classify(SQRT_SWAP).label, classify(SQRT_SWAP_DAG).label}
    assert labels == {"SqrtSwap", "SqrtSwapDagger"}
    # the +i/4 sign carries the SqrtSwap name
    for name, mat in (("SqrtSwap", SQRT_SWAP), ("SqrtSwapDagger", SQRT_SWAP_DAG)):
        lab = classify(mat)
        assert lab.label == ("SqrtSwap" if lab.g1.imag > 0 else "SqrtSwapDagger")


def test_classify_generic_and_tol_validation():
    gate = gate_from_alpha((0.3, 0.2, 0.1))
    assert classify(gate).label in ("OtherNonlocal", "PerfectEntanglerOther")
    with pytest.raises(ValueError):
        classify(IDENTITY4, tol=0.5)
    lab = classify(1.7 * IDENTITY4)
    assert lab.label == "NonUnitary"


def test_classify_pure_function_of_invariants():
    lab = classify(canonical_gate("Cnot"), tol=1e-6)
    assert (lab.g1, lab.g2, lab.tol) == (pytest.approx(0, abs=1e-9),
                                         pytest.approx(1, abs=1e-9), 1e-6)


def test_concurrence_oracle():
    assert max_product_concurrence(IDENTITY4) < 1e-6
    assert max_product_concurrence(CNOT) > 1 - 1e-6
    assert max_product_concurrence(SQRT_SWAP) > 1 - 1e-6


def test_perfect_entangler_named():
    assert is_perfect_entangler(CNOT)
    assert is_perfect_entangler(SQRT_SWAP)
    assert not is_perfect_entangler(SWAP)
    assert not is_perfect_entangler(IDENTITY4)


def test_pe_agreement_on_protocol_line():
    # On the alpha_x = alpha_y = alpha_z line the perfect entanglers are the
    # two isolated points pi/8 and 3pi/8; the operational concurrence test
    # must agree with the invariant-based test everywhere on the line.
    rng = np.random.default_rng(123)
    alphas = rng.uniform(0.0, np.pi / 2, 1000)
    tol = 1e-5
    for a in alphas:
        gate = gate_from_alpha((a, a, a))
        inv = local_invariants(gate)
        by_inv = (abs(inv.g1.real) <= 3 * tol and abs(abs(inv.g1) - 0.25) <= 3 * tol
                  and abs(inv.g2) <= 12 * tol)
        near_crossing = min(abs(a - np.pi / 8), abs(a - 3 * np.pi / 8)) < tol
        if near_crossing:
            continue
        by_conc = max_product_concurrence(gate, coarse=16, rounds=5) >= 1 - 1e-6
        assert by_conc == by_inv, f"disagreement at alpha={a}"


def test_entangling_power_values():
    assert entangling_power(local_invariants(SQRT_SWAP)) == pytest.approx(1 / 6, abs=1e-12)
    assert entangling_power(local_invariants(CNOT)) == pytest.approx(2 / 9, abs=1e-12)
    assert entangling_power(local_invariants(SWAP)) == pytest.approx(0.0, abs=1e-12)
    assert entangling_power(local_invariants(IDENTITY4)) == pytest.approx(0.0, abs=1e-12)


def test_entangling_power_monotone():
    mags = np.linspace(0, 1, 20)
    eps = [entangling_power(m + 0j) for m in mags]
    assert all(eps[i + 1] <= eps[i] + 1e-15 for i in range(len(eps) - 1))


def test_random_local_gate_properties():
    for seed in range(100):
        k = random_local_gate(seed)
        assert abs(np.linalg.det(k) - 1.0) < 1e-12
    assert classify(random_local_gate(0)).label == "Identity"


def test_local_invariance():
    u = gate_from_alpha((0.4, 0.25, 0.1))
    base = local_invariants(u)
    for seed in range(100):
        k = random_local_gate(seed)
        l = random_local_gate(seed + 1000)
        inv = local_invariants(k @ u @ l)
        assert abs(inv.g1 - base.g1) < 1e-10
        assert abs(inv.g2 - base.g2) < 1e-10


def test_line_invariant_consistency():
    rng = np.random.default_rng(5)
    for _ in range(30):
        a = rng.uniform(0, np.pi / 2)
        inv = local_invariants(gate_from_alpha((a, a, a)))
        g1_ref = (np.cos(2 * a) ** 3 - 1j * np.sin(2 * a) ** 3) ** 2
        assert abs(inv.g1 - g1_ref) < 1e-10
        assert abs(inv.g2 - 3 * np.cos(4 * a)) < 1e-10
