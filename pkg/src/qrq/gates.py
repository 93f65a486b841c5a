"""Classification of two-qubit gates by local invariants and Weyl coordinates.

A two-qubit unitary U factors, up to single-qubit rotations on either side,
into exp(-i sum_j alpha_j sigma_j x sigma_j).  Everything a gate does beyond
local rotations is captured by the triple (alpha_x, alpha_y, alpha_z), or
equivalently by the pair of local invariants (g1 complex, g2 real) obtained
from U in the magic (Bell) basis.  This module computes both, classifies
gates against the named equivalence classes, and provides an operational
perfect-entangler check based on maximising output concurrence over product
inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MAGIC",
    "BELL_STATES",
    "IDENTITY4",
    "SWAP",
    "CNOT",
    "SQRT_SWAP",
    "SQRT_SWAP_DAG",
    "CLASS_TABLE",
    "NonUnitaryInput",
    "LocalInvariants",
    "WeylPoint",
    "ClassLabel",
    "canonical_gate",
    "project_su4",
    "to_bell_diagonal",
    "local_invariants",
    "makhlin_invariants",
    "weyl_coordinates",
    "classify",
    "entangling_power",
    "max_product_concurrence",
    "is_perfect_entangler",
    "random_local_gate",
    "random_unitary",
    "gate_from_alpha",
]

# Bell-basis change. Columns are the four Bell states expressed in the
# computational basis |i>_1 |j>_2 with ordering (00, 01, 10, 11).
MAGIC = np.array(
    [
        [1, 0, 0, 1j],
        [0, 1j, 1, 0],
        [0, 1j, -1, 0],
        [1, 0, 0, -1j],
    ],
    dtype=complex,
) / np.sqrt(2)

BELL_STATES = [MAGIC[:, k].copy() for k in range(4)]

IDENTITY4 = np.eye(4, dtype=complex)

SWAP = np.array(
    [
        [1, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
    ],
    dtype=complex,
)

CNOT = np.array(
    [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
    ],
    dtype=complex,
)

# Principal square root of SWAP (singlet eigenvalue +i).
SQRT_SWAP = np.array(
    [
        [1, 0, 0, 0],
        [0, (1 + 1j) / 2, (1 - 1j) / 2, 0],
        [0, (1 - 1j) / 2, (1 + 1j) / 2, 0],
        [0, 0, 0, 1],
    ],
    dtype=complex,
)
SQRT_SWAP_DAG = SQRT_SWAP.conj().T

_SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SY_SY = np.kron(_SIGMA_Y, _SIGMA_Y)

# (g1, g2) fingerprints of the named classes.
CLASS_TABLE = {
    "Identity": (1.0 + 0.0j, 3.0),
    "Swap": (-1.0 + 0.0j, -3.0),
    "Cnot": (0.0 + 0.0j, 1.0),
    "SqrtSwap": (0.25j, 0.0),
    "SqrtSwapDagger": (-0.25j, 0.0),
}

UNITARITY_TOL = 1e-9
_REJECT_TOL = 1e-6
DEFAULT_CLASS_TOL = 1e-6


class NonUnitaryInput(ValueError):
    """Input matrix is too far from unitary for invariant extraction."""


@dataclass(frozen=True)
class LocalInvariants:
    g1: complex
    g2: float
    entangling_power: float


@dataclass(frozen=True)
class WeylPoint:
    """Interaction coordinates of a two-qubit gate.

    ``alpha`` is the canonical triple of the exp(-i sum alpha_j s_j s_j)
    parameterisation, folded into the cell alpha_x >= alpha_y >= alpha_z,
    each component in [0, pi/2].  ``chamber_coords`` doubles each component,
    matching the common tetrahedron labelling where SWAP sits at
    (pi/2, pi/2, pi/2).  ``lambdas`` are the Bell-basis eigenphases after
    global-phase fixing; ``degenerate`` flags an ambiguous eigenphase
    matching resolved by the documented tie-break.
    """

    alpha: tuple
    chamber_coords: tuple
    lambdas: tuple
    degenerate: bool = False


@dataclass(frozen=True)
class ClassLabel:
    label: str
    g1: complex
    g2: float
    tol: float


def canonical_gate(name):
    """Return the named 4x4 gate matrix."""
    table = {
        "Identity": IDENTITY4,
        "Swap": SWAP,
        "Cnot": CNOT,
        "SqrtSwap": SQRT_SWAP,
        "SqrtSwapDagger": SQRT_SWAP_DAG,
    }
    return table[name].copy()


def _unitarity_defect(matrix):
    return np.max(np.abs(matrix @ matrix.conj().T - IDENTITY4))


def project_su4(matrix):
    """Remove the global phase by dividing by the principal fourth root of det.

    The branch of the fourth root is principal, so the argument of the
    applied phase lies in (-pi/4, pi/4].  Raises ``NonUnitaryInput`` when the
    input deviates from unitarity by more than 1e-6 (max-entry norm).
    """
    matrix = np.asarray(matrix, dtype=complex)
    defect = _unitarity_defect(matrix)
    if defect > _REJECT_TOL:
        raise NonUnitaryInput(f"unitarity defect {defect:.3e} exceeds {_REJECT_TOL:g}")
    det = np.linalg.det(matrix)
    return matrix / det ** 0.25


def to_bell_diagonal(matrix, offdiag_tol=1e-9):
    """Bell-basis diagonal of the gate, or None when it is not Bell-diagonal.

    Returns the four diagonal entries of Q^H U Q for the SU(4)-projected
    gate when the off-diagonal mass is below ``offdiag_tol``.  A None return
    is an ordinary outcome: it just means the gate is not locally aligned
    with the Bell basis (CNOT, for example), and invariants must go through
    the general eigenphase path.
    """
    u = project_su4(matrix)
    m_bell = MAGIC.conj().T @ u @ MAGIC
    off = m_bell - np.diag(np.diag(m_bell))
    if np.max(np.abs(off)) > offdiag_tol:
        return None
    return np.diag(m_bell).copy()


def _bell_m(matrix):
    u = project_su4(matrix)
    m_bell = MAGIC.conj().T @ u @ MAGIC
    return m_bell.T @ m_bell


def local_invariants(matrix):
    """Local invariants (g1, g2) of a two-qubit unitary.

    g1 = Tr^2(m) / (16 det m) and g2 = (Tr^2(m) - Tr(m^2)) / (4 det m) with
    m = M^T M and M the gate in the Bell basis, after SU(4) projection (so
    det m = 1 and the det factors only guard against rounding).  g2 is real
    for any unitary input; the residual imaginary part is checked and
    dropped.
    """
    m = _bell_m(matrix)
    det_m = np.linalg.det(m)
    tr = np.trace(m)
    g1 = tr * tr / (16.0 * det_m)
    g2 = (tr * tr - np.trace(m @ m)) / (4.0 * det_m)
    if abs(g2.imag) > 1e-9:
        raise NonUnitaryInput(f"residual Im g2 = {g2.imag:.3e}")
    ep = entangling_power_from_g1(g1)
    return LocalInvariants(g1=complex(g1), g2=float(g2.real), entangling_power=ep)


# the operation name used throughout the package docs
makhlin_invariants = local_invariants


def entangling_power_from_g1(g1):
    return float(min(max((2.0 / 9.0) * (1.0 - abs(g1)), 0.0), 2.0 / 9.0))


def entangling_power(inv):
    """Entangling power (2/9)(1 - |g1|), clamped to [0, 2/9]."""
    if isinstance(inv, LocalInvariants):
        return entangling_power_from_g1(inv.g1)
    return entangling_power_from_g1(complex(inv))


def gate_from_alpha(alpha):
    """exp(-i sum_j alpha_j sigma_j x sigma_j) in the computational basis."""
    ax, ay, az = alpha
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = _SIGMA_Y
    sz = np.diag([1.0 + 0j, -1.0 + 0j])
    gen = ax * np.kron(sx, sx) + ay * np.kron(sy, sy) + az * np.kron(sz, sz)
    vals, vecs = np.linalg.eigh(gen)
    return (vecs * np.exp(-1j * vals)) @ vecs.conj().T


def _fold_half_pi(a):
    # alpha_j -> alpha_j mod pi/2 is a local-equivalence move: shifting by
    # pi/2 multiplies the gate by sigma_j x sigma_j, a product of local ops.
    a = np.remainder(a, np.pi / 2)
    a[np.abs(a - np.pi / 2) < 1e-12] = 0.0
    return a


def _canonical_alpha(alpha):
    """Fold an alpha triple into the canonical cell.

    Moves used: component permutations, alpha_j -> alpha_j + pi/2, and
    simultaneous sign flips of two components (conjugation by a local
    sigma_j).  Among the surviving representatives with components sorted
    descending in [0, pi/2), the lexicographically smallest is returned so
    the map is idempotent.
    """
    base = np.asarray(alpha, dtype=float)
    reps = []
    flips = [(1, 1, 1), (-1, -1, 1), (-1, 1, -1), (1, -1, -1)]
    for f in flips:
        cand = _fold_half_pi(base * np.array(f))
        reps.append(tuple(np.sort(cand)[::-1]))
    return min(reps)


def _alpha_from_lambdas(lams):
    ax = (lams[0] + lams[3]) / 2.0
    ay = (lams[1] + lams[3]) / 2.0
    az = (lams[0] + lams[1]) / 2.0
    return np.array([ax, ay, az])


def weyl_coordinates(matrix):
    """Weyl coordinates of a two-qubit unitary.

    Extracts the Bell-basis eigenphases lambda_j (from the diagonal when the
    gate is Bell-diagonal, otherwise from the eigenphases of m = M^T M
    halved), fixes the global phase so sum(lambda) = 0 mod 2pi, solves

        lambda_1 = ax - ay + az     lambda_2 = -ax + ay + az
        lambda_3 = -ax - ay - az    lambda_4 = ax + ay - az

    for alpha, and canonicalises.  The eigenphase-to-lambda assignment is
    not unique (orderings, and a pi branch per phase on the halved path);
    all assignments are tried and the one whose canonical alpha is
    lexicographically smallest wins.  Degeneracy of the m spectrum is
    reported via the ``degenerate`` flag, not as an error.
    """
    diag = to_bell_diagonal(matrix)
    if diag is not None:
        lam_sets = [(-np.angle(diag), False)]
    else:
        m = _bell_m(matrix)
        mu = np.angle(np.linalg.eigvals(m))
        degenerate = np.min(np.abs(np.subtract.outer(mu, mu) + np.eye(4))) < 1e-7
        lam_sets = [(-mu / 2.0, degenerate)]

    best = None
    best_lams = None
    degen_flag = False
    for lams0, degenerate in lam_sets:
        degen_flag = degenerate
        for perm in itertools.permutations(range(4)):
            lp = lams0[list(perm)]
            for shifts in itertools.product((0.0, np.pi), repeat=4):
                lams = lp + np.array(shifts)
                total = np.remainder(np.sum(lams), 2 * np.pi)
                if min(total, 2 * np.pi - total) > 1e-7:
                    continue
                alpha = _canonical_alpha(_alpha_from_lambdas(lams))
                if best is None or alpha < best:
                    best = alpha
                    best_lams = lams
    if best is None:
        raise NonUnitaryInput("no consistent eigenphase assignment found")
    alpha = tuple(float(a) for a in best)
    return WeylPoint(
        alpha=alpha,
        chamber_coords=tuple(2.0 * a for a in alpha),
        lambdas=tuple(float(v) for v in best_lams),
        degenerate=bool(degen_flag),
    )


def classify(matrix, tol=DEFAULT_CLASS_TOL):
    """Match a gate against the named equivalence classes.

    Matching is purely a function of (g1, g2): a named label is assigned
    when both invariants sit within ``tol`` of the class fingerprint.
    Falls back to PerfectEntanglerOther / OtherNonlocal, and returns the
    NonUnitary label instead of raising when the input fails the unitarity
    gate.
    """
    if not 0.0 < tol <= 1e-2:
        raise ValueError("tol must lie in (0, 1e-2]")
    try:
        inv = local_invariants(matrix)
    except NonUnitaryInput:
        return ClassLabel(label="NonUnitary", g1=complex("nan"), g2=float("nan"), tol=tol)
    for name, (g1_ref, g2_ref) in CLASS_TABLE.items():
        if abs(inv.g1 - g1_ref) <= tol and abs(inv.g2 - g2_ref) <= tol:
            return ClassLabel(label=name, g1=inv.g1, g2=inv.g2, tol=tol)
    if is_perfect_entangler(matrix):
        return ClassLabel(label="PerfectEntanglerOther", g1=inv.g1, g2=inv.g2, tol=tol)
    return ClassLabel(label="OtherNonlocal", g1=inv.g1, g2=inv.g2, tol=tol)


def _bloch_states(thetas, phis):
    t = thetas[:, None]
    p = phis[None, :]
    up = np.broadcast_to(np.cos(t / 2.0), (len(thetas), len(phis)))
    dn = np.sin(t / 2.0) * np.exp(1j * p)
    states = np.stack([np.broadcast_to(up, dn.shape), dn], axis=-1)
    return states.reshape(-1, 2)


def _best_concurrence(gate, a_states, b_states):
    # C(U(a x b)) = 2 |det reshape(psi, 2, 2)|, maximised over the grid
    prods = np.einsum("ai,bj->abij", a_states, b_states).reshape(-1, 4)
    psi = prods @ gate.T
    det = psi[:, 0] * psi[:, 3] - psi[:, 1] * psi[:, 2]
    c = 2.0 * np.abs(det)
    k = int(np.argmax(c))
    return float(c[k]), k


def max_product_concurrence(gate, coarse=32, rounds=5):
    """Maximum output concurrence over product inputs |a> x |b>.

    Coarse grid over both Bloch spheres followed by shrinking local grid
    refinement around the best point.  Absolute accuracy is better than
    1e-4; near-degenerate maxima away from 1 may be located less precisely
    but their value is still accurate at that level.
    """
    gate = np.asarray(gate, dtype=complex)
    thetas = np.linspace(0.0, np.pi, coarse)
    phis = np.linspace(0.0, 2 * np.pi, coarse, endpoint=False)
    a_states = _bloch_states(thetas, phis)
    best, k = _best_concurrence(gate, a_states, a_states)
    n = len(a_states)
    ia, ib = divmod(k, n)
    pa = np.array([thetas[ia // coarse], phis[ia % coarse]])
    pb = np.array([thetas[ib // coarse], phis[ib % coarse]])

    wt = np.pi / (coarse - 1)
    wp = 2 * np.pi / coarse
    for _ in range(rounds):
        ta = np.linspace(pa[0] - wt, pa[0] + wt, 9)
        fa = np.linspace(pa[1] - wp, pa[1] + wp, 9)
        tb = np.linspace(pb[0] - wt, pb[0] + wt, 9)
        fb = np.linspace(pb[1] - wp, pb[1] + wp, 9)
        a_states = _bloch_states(ta, fa)
        b_states = _bloch_states(tb, fb)
        val, k = _best_concurrence(gate, a_states, b_states)
        if val > best:
            best = val
            ia, ib = divmod(k, 81)
            pa = np.array([ta[ia // 9], fa[ia % 9]])
            pb = np.array([tb[ib // 9], fb[ib % 9]])
        wt *= 0.25
        wp *= 0.25
    return min(best, 1.0)


def is_perfect_entangler(gate, threshold=1.0 - 1e-6):
    """Operational perfect-entangler test.

    True iff some product input is mapped to a state of concurrence at
    least ``threshold``.  Deliberately independent of the invariant
    formulas so it can serve as their cross-check.
    """
    return max_product_concurrence(gate) >= threshold


def random_unitary(seed):
    """Haar-random U(4) matrix (QR with phase fixing), seeded."""
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_local_gate(seed):
    """Seeded Haar-random K1 x K2 with K1, K2 in SU(2)."""
    rng = np.random.default_rng(seed)

    def su2():
        v = rng.normal(size=4)
        a, b, c, d = v / np.linalg.norm(v)
        return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])

    return np.kron(su2(), su2())
