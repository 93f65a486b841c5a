"""QND-rotation-QND protocol: transport matrices, output amplitudes, regimes.

The protocol applies a quadrature-quadrature (QND) interaction of strength
xi1 between one light mode A and one collective-spin mode B, rotates the two
oscillators by angles theta1 (light) and theta2 (atoms), and applies a second
QND interaction of strength xi2.  Acting on the two-qubit subspace spanned by
single excitations of two such mode pairs, the protocol produces

    f_i * (identity on the qubits) + f_s * (qubit swap)
      + f_l |both excitations in light> + f_a |both in atoms>
      + f_vac |vacuum>

with closed-form amplitudes implemented here.  The two-qubit block is unitary
(up to normalisation) iff Re(f_i) * f_s = 0; the interesting entangling family
solves Re(f_i) = 0 for the angle sum phi = theta1 + theta2, which reduces to a
quadratic in cos(phi).

Numerical care: on the delta = pi family the root has cos(phi) -> -1 and the
quantities Re(f_i), cos(delta) - cos(phi), sin(phi) all suffer catastrophic
cancellation when evaluated from a rounded phi.  The root solver therefore
carries (cos_phi, cos(delta) - cos_phi, sin_phi) computed through exact root
identities, and the amplitude evaluator accepts those pieces directly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .gates import (
    IDENTITY4,
    SWAP,
    LocalInvariants,
    classify,
    entangling_power_from_g1,
)

__all__ = [
    "QrqParams",
    "CompParams",
    "BogoliubovPair",
    "OutputDecomposition",
    "PhiSolution",
    "NonUnitaryBlock",
    "RegimeReport",
    "NegativeConstant",
    "NuNonPositive",
    "CosDeltaZero",
    "PreconditionReFIBroken",
    "BRANCHES",
    "stage_bogoliubov",
    "composite_bogoliubov",
    "convert_params",
    "convert_params_inv",
    "amplitudes",
    "amplitudes_comp",
    "unitarity_residual",
    "two_qubit_gate",
    "gate_from_amplitudes",
    "simplified_invariants",
    "invariants_from_amplitudes",
    "probability",
    "pe_residual",
    "phi_en",
    "phi_en_grid",
    "x_min",
    "regime_classify",
]

BRANCHES = ("pp", "pm", "mp", "mm")

UNITARITY_TOL = 1e-9
ROOT_RESIDUAL_TOL = 1e-9


class NegativeConstant(ValueError):
    """Interaction constants must be non-negative."""


class NuNonPositive(ValueError):
    """Inverse parameter conversion needs nu > 0."""


class CosDeltaZero(ValueError):
    """The existence bound diverges at cos(delta) = 0."""


class PreconditionReFIBroken(ValueError):
    """Operation requires Re(f_i) = 0 within tolerance."""


@dataclass(frozen=True)
class QrqParams:
    """Physical protocol parameters (two couplings, two rotation angles)."""

    xi1: float
    xi2: float
    theta1: float
    theta2: float

    def __post_init__(self):
        if not (np.isfinite(self.xi1) and np.isfinite(self.xi2)):
            raise NegativeConstant("couplings must be finite")
        if self.xi1 < 0 or self.xi2 < 0:
            raise NegativeConstant("couplings must be non-negative")


@dataclass(frozen=True)
class CompParams:
    """Computational parameters x = xi1*xi2, nu = xi2, phi/delta angle sum/difference."""

    x: float
    nu: float
    phi: float
    delta: float


def convert_params(p: QrqParams) -> CompParams:
    return CompParams(x=p.xi1 * p.xi2, nu=p.xi2,
                      phi=p.theta1 + p.theta2, delta=p.theta1 - p.theta2)


def convert_params_inv(c: CompParams) -> QrqParams:
    if not c.nu > 0:
        raise NuNonPositive("nu must be positive to recover xi1 = x/nu")
    return QrqParams(xi1=c.x / c.nu, xi2=c.nu,
                     theta1=(c.phi + c.delta) / 2.0, theta2=(c.phi - c.delta) / 2.0)


@dataclass(frozen=True)
class BogoliubovPair:
    """Pair of 2x2 transport matrices in the -(i/2)[g . creation + r . annihilation] form."""

    g: np.ndarray
    r: np.ndarray
    direction: str  # "OutFromIn" or "InFromOut"
    prefactor: complex = -0.5j

    def symplectic_defect(self):
        lhs = self.g @ self.g.conj().T - self.r @ self.r.conj().T
        return float(np.max(np.abs(lhs - 4.0 * np.eye(2))))


def stage_bogoliubov(xi: float) -> BogoliubovPair:
    """Single QND stage transport pair g = [[2i, xi], [xi, 2i]], r = [[0, -xi], [-xi, 0]]."""
    if xi < 0:
        raise NegativeConstant("xi must be non-negative")
    g = np.array([[2j, xi], [xi, 2j]], dtype=complex)
    r = np.array([[0.0, -xi], [-xi, 0.0]], dtype=complex)
    return BogoliubovPair(g=g, r=r, direction="OutFromIn")


def composite_bogoliubov(p: QrqParams) -> BogoliubovPair:
    """Composite transport pair of the full QND-rotation-QND sequence.

    Expresses the input creation operators through the output operators,
    which is the combination that enters the output-state amplitudes.  The
    entries are fixed by composing the stage and rotation transports and
    satisfy the symplectic identity g g^H - r r^H = 4 I exactly; at
    theta1 = theta2 = 0 the pair reduces to a single stage of strength
    xi1 + xi2.
    """
    x1, x2, t1, t2 = p.xi1, p.xi2, p.theta1, p.theta2
    e1m = np.exp(-1j * t1)
    e2m = np.exp(-1j * t2)
    x = x1 * x2
    g = np.array(
        [
            [2j * e1m - x * np.sin(t2), x2 * e1m + x1 * e2m],
            [x2 * e2m + x1 * e1m, 2j * e2m - x * np.sin(t1)],
        ],
        dtype=complex,
    )
    r = np.array(
        [
            [x * np.sin(t2), -x2 * e1m - x1 / e2m],
            [-x2 * e2m - x1 / e1m, x * np.sin(t1)],
        ],
        dtype=complex,
    )
    return BogoliubovPair(g=g, r=r, direction="InFromOut")


# ---------------------------------------------------------------------------
# closed-form output amplitudes
# ---------------------------------------------------------------------------


def _raw_amplitudes(x1, x2, t1, t2):
    """All five output amplitudes; array-friendly."""
    x = x1 * x2
    e1 = np.exp(1j * np.asarray(t1, dtype=float))
    e2 = np.exp(1j * np.asarray(t2, dtype=float))
    ephi = e1 * e2
    s1 = np.sin(t1)
    s2 = np.sin(t2)
    f_i = -0.25 * (-2j + e2 * x * s1) * (-2j + e1 * x * s2)
    f_s = -0.25 * (x1 * x1 + x2 * x2 + 2.0 * x * np.cos(np.asarray(t1) - np.asarray(t2)))
    f_l = (0.125j / ephi) * (x1 * x2**2 * e1**2 - 4.0 * x1 * e2**2
                             + x2 * (-(x1**2) * e2**2 + x1**2 - x * ephi - 4.0) * ephi)
    f_a = (0.125j / ephi) * (x1 * x2**2 * e2**2 - 4.0 * x1 * e1**2
                             + x2 * (-(x1**2) * e1**2 + x1**2 - x * ephi - 4.0) * ephi)
    f_vac = (0.125j / ephi) * (-x1 * x2**2 * e1**2 - x1 * x2**2 * e2**2
                               + (x1**2 * x2 * ephi**2 - x1**2 * x2
                                  + 2.0 * x1 * x2**2 * ephi + 4.0 * x1 * ephi
                                  + 4.0 * x2) * ephi)
    return f_i, f_s, f_l, f_a, f_vac


@dataclass(frozen=True)
class OutputDecomposition:
    """Unnormalised output amplitudes and the derived sector probabilities.

    norm_n is |f_i|^2 + f_s^2 + |f_l|^2 + |f_a|^2 + |f_vac|^2, which reduces
    to the Im(f_i)^2 + ... form on the Re(f_i) = 0 surface.  The vacuum
    amplitude is reported at its upper bound (unit input-overlap factor).
    """

    f_i: complex
    f_s: float
    f_l: complex
    f_a: complex
    f_vac: complex
    norm_n: float
    p_gate: float
    p_nq: float
    p_vac: float
    unitarity_residual: float

    def to_json_dict(self):
        return {
            "f_i_re": self.f_i.real,
            "f_i_im": self.f_i.imag,
            "f_s": self.f_s,
            "f_l_re": self.f_l.real,
            "f_l_im": self.f_l.imag,
            "f_a_re": self.f_a.real,
            "f_a_im": self.f_a.imag,
            "f_vac_re": self.f_vac.real,
            "f_vac_im": self.f_vac.imag,
            "norm_n": self.norm_n,
            "p_gate": self.p_gate,
            "p_nq": self.p_nq,
            "p_vac": self.p_vac,
            "unitarity_residual": self.unitarity_residual,
        }


def _decomposition(f_i, f_s, f_l, f_a, f_vac):
    f_s = float(np.real(f_s))
    norm_n = (abs(f_i) ** 2 + f_s * f_s + abs(f_l) ** 2 + abs(f_a) ** 2 + abs(f_vac) ** 2)
    p_gate = (abs(f_i) ** 2 + f_s * f_s) / norm_n
    p_nq = (abs(f_l) ** 2 + abs(f_a) ** 2) / norm_n
    p_vac = abs(f_vac) ** 2 / norm_n
    resid = abs(f_i.real * f_s) / max(1.0, abs(f_i) ** 2 + f_s * f_s)
    return OutputDecomposition(
        f_i=complex(f_i), f_s=f_s, f_l=complex(f_l), f_a=complex(f_a),
        f_vac=complex(f_vac), norm_n=float(norm_n), p_gate=float(p_gate),
        p_nq=float(p_nq), p_vac=float(p_vac), unitarity_residual=float(resid),
    )


def amplitudes(p: QrqParams) -> OutputDecomposition:
    """Output decomposition at physical parameters.

    Direct evaluation of the closed forms; adequate everywhere except for
    Re(f_i) very near zero at large couplings, where the root-aware
    ``amplitudes_comp`` should be used instead.
    """
    f = _raw_amplitudes(p.xi1, p.xi2, p.theta1, p.theta2)
    return _decomposition(*(complex(v) for v in f))


def amplitudes_comp(x, nu, delta, sol) -> OutputDecomposition:
    """Output decomposition at computational parameters with a solved phase.

    ``sol`` is a PhiSolution from ``phi_en``; its cancellation-free pieces
    replace the ill-conditioned direct evaluation of Re(f_i) and Im(f_i).
    """
    if sol.phi_en is None:
        raise ValueError("phase solution is absent")
    x1 = x / nu
    x2 = nu
    t1 = (sol.phi_en + delta) / 2.0
    t2 = (sol.phi_en - delta) / 2.0
    _, f_s, f_l, f_a, f_vac = _raw_amplitudes(x1, x2, t1, t2)
    im_fi = sol.sin_phi * (x / 2.0 - (x * x / 8.0) * sol.cosd_minus_cos)
    f_i = complex(sol.residual, im_fi)
    return _decomposition(f_i, f_s, f_l, f_a, f_vac)


def unitarity_residual(p: QrqParams) -> float:
    """Scale-normalised |Re(f_i) * f_s|; zero iff the two-qubit block is unitary."""
    return amplitudes(p).unitarity_residual


@dataclass(frozen=True)
class NonUnitaryBlock:
    residual: float
    decomposition: OutputDecomposition


def gate_from_amplitudes(f_i, f_s):
    """Normalised two-qubit gate (f_i I + f_s S) / |f_i + f_s| in the computational basis."""
    scale = abs(f_i + f_s)
    return (f_i * IDENTITY4 + f_s * SWAP) / scale


def two_qubit_gate(p: QrqParams, tol: float = UNITARITY_TOL):
    """Normalised two-qubit gate, or NonUnitaryBlock when Re(f_i) f_s != 0.

    The returned matrix is Bell-diagonal with entries proportional to
    (f_i + f_s, f_i + f_s, f_i - f_s, f_i + f_s).
    """
    dec = amplitudes(p)
    if dec.unitarity_residual > tol:
        return NonUnitaryBlock(residual=dec.unitarity_residual, decomposition=dec)
    return gate_from_amplitudes(dec.f_i, dec.f_s)


def invariants_from_amplitudes(im_fi, f_s) -> LocalInvariants:
    """Local invariants of the gate i*Im(f_i)*I + f_s*S (the Re f_i = 0 family).

        g1 = (-Im(f_i)^2 + i Im(f_i) f_s + f_s^2)^2
             / ((Im(f_i) - i f_s)^3 (Im(f_i) + i f_s))
        g2 = -3 + 6 Im(f_i)^2 / (Im(f_i)^2 + f_s^2)
    """
    y = float(im_fi)
    fs = float(f_s)
    num = (-(y * y) + 1j * y * fs + fs * fs) ** 2
    den = (y - 1j * fs) ** 3 * (y + 1j * fs)
    g1 = complex(num / den)
    g2 = -3.0 + 6.0 * y * y / (y * y + fs * fs)
    return LocalInvariants(g1=g1, g2=float(g2), entangling_power=entangling_power_from_g1(g1))


def simplified_invariants(p: QrqParams, tol: float = UNITARITY_TOL) -> LocalInvariants:
    """Closed-form invariants on the Re(f_i) = 0 family.

    Raises PreconditionReFIBroken when Re(f_i) is not negligible against the
    amplitude scale.
    """
    dec = amplitudes(p)
    scale = max(1.0, np.hypot(dec.f_i.imag, dec.f_s))
    if abs(dec.f_i.real) / scale > tol:
        raise PreconditionReFIBroken(f"Re f_i = {dec.f_i.real:.3e} at scale {scale:.3e}")
    return invariants_from_amplitudes(dec.f_i.imag, dec.f_s)


def probability(p: QrqParams, tol: float = UNITARITY_TOL) -> float:
    """Heralded gate probability (Im f_i^2 + f_s^2) / N on the Re(f_i) = 0 family."""
    dec = amplitudes(p)
    scale = max(1.0, np.hypot(dec.f_i.imag, dec.f_s))
    if abs(dec.f_i.real) / scale > tol:
        raise PreconditionReFIBroken(f"Re f_i = {dec.f_i.real:.3e} at scale {scale:.3e}")
    return (dec.f_i.imag ** 2 + dec.f_s ** 2) / dec.norm_n


def pe_residual(p: QrqParams, tol: float = UNITARITY_TOL) -> float:
    """Normalised distance ||Im f_i| - |f_s|| / sqrt(Im f_i^2 + f_s^2) from the PE condition."""
    dec = amplitudes(p)
    scale = max(1.0, np.hypot(dec.f_i.imag, dec.f_s))
    if abs(dec.f_i.real) / scale > tol:
        raise PreconditionReFIBroken(f"Re f_i = {dec.f_i.real:.3e} at scale {scale:.3e}")
    y, fs = dec.f_i.imag, dec.f_s
    return abs(abs(y) - abs(fs)) / np.hypot(y, fs)


# ---------------------------------------------------------------------------
# entangling-phase root
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PhiSolution:
    """One root of Re(f_i)(x, phi, delta) = 0 for a given sign branch.

    ``phi_en`` is None when the root is absent (negative discriminant or
    |cos phi| > 1).  The extra fields carry cancellation-free versions of
    cos(phi), cos(delta) - cos(phi) and sin(phi); ``residual`` is Re(f_i)
    evaluated from those pieces and is verified against the root tolerance.
    """

    branch: str
    phi_en: float | None
    discriminant: float
    cos_phi: float = field(default=np.nan)
    cosd_minus_cos: float = field(default=np.nan)
    sin_phi: float = field(default=np.nan)
    residual: float = field(default=np.nan)

    @property
    def absent(self):
        return self.phi_en is None


def phi_en_grid(x, delta, branch):
    """Vectorised root of the quadratic x c^2 + (4 - x cos d) c + 8/x - 4 cos d = 0.

    Returns (phi, cos_phi, cosd_minus_cos, sin_phi, residual, discriminant)
    arrays; entries are NaN where the branch root is absent.  Both roots are
    produced by the numerically stable q-scheme (no subtractive
    cancellation), and the companion quantity cos(delta) - cos(phi) comes
    from the exact root identity  c_plus + c_minus = cos(delta) - 4/x,
    which keeps the residual evaluation meaningful at x ~ 1e6 where a bare
    double carries too little of cos(phi) near -1.
    """
    if branch not in BRANCHES:
        raise ValueError(f"unknown branch {branch!r}")
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x).astype(float)
    cd = float(np.cos(delta))
    one_p_cd = 2.0 * np.cos(delta / 2.0) ** 2   # 1 + cos d without cancellation
    one_m_cd = 2.0 * np.sin(delta / 2.0) ** 2   # 1 - cos d

    disc = x * x * cd * cd + 8.0 * x * cd - 16.0
    ok = disc >= 0.0
    r = np.sqrt(np.where(ok, disc, np.nan))
    b = 4.0 - x * cd
    q = -(b + np.copysign(r, b)) / 2.0
    prod = (8.0 / x - 4.0 * cd)
    root_q = q / x
    root_o = prod / q
    # q-scheme yields the '+' labelled root in root_q when b < 0
    c_plus = np.where(b < 0.0, root_q, root_o)
    c_minus = np.where(b < 0.0, root_o, root_q)
    inner_plus = branch[1] == "p"
    c = c_plus if inner_plus else c_minus
    other = c_minus if inner_plus else c_plus

    cdmc = other + 4.0 / x          # cos d - c, exact root identity
    one_p_c = one_p_cd - cdmc       # 1 + c
    one_m_c = one_m_cd + cdmc       # 1 - c
    valid = ok & (one_p_c >= -1e-12) & (one_m_c >= -1e-12)
    one_p_c = np.clip(one_p_c, 0.0, None)
    one_m_c = np.clip(one_m_c, 0.0, None)
    c = np.clip(c, -1.0, 1.0)

    sin_abs = np.sqrt(one_p_c * one_m_c)
    sign = 1.0 if branch[0] == "p" else -1.0
    sin_phi = sign * sin_abs
    phi = sign * np.arccos(c)
    residual = 1.0 - (x / 8.0) * (4.0 + x * c) * cdmc
    valid &= np.abs(residual) <= ROOT_RESIDUAL_TOL

    def mask(a):
        return np.where(valid, a, np.nan)

    out = (mask(phi), mask(c), mask(cdmc), mask(sin_phi), mask(residual), disc)
    if scalar:
        return tuple(float(v[0]) for v in out)
    return out


def phi_en(x: float, delta: float, branch: str) -> PhiSolution:
    """Solve Re(f_i) = 0 for phi on the requested sign branch.

    Branch letters: first = sign outside the arccos, second = sign in front
    of the discriminant square root.  The returned root is verified by
    substitution (|Re f_i| <= 1e-9); absence is a normal outcome below the
    existence bound x_min(delta).
    """
    phi, c, cdmc, sin_phi, residual, disc = phi_en_grid(float(x), float(delta), branch)
    if np.isnan(phi):
        return PhiSolution(branch=branch, phi_en=None, discriminant=float(disc))
    return PhiSolution(branch=branch, phi_en=float(phi), discriminant=float(disc),
                       cos_phi=float(c), cosd_minus_cos=float(cdmc),
                       sin_phi=float(sin_phi), residual=float(residual))


def x_min(delta: float) -> float:
    """Existence bound 4*sqrt(2)/|cos d| - 4/cos d for the entangling phase."""
    cd = np.cos(delta)
    if abs(cd) < 1e-12:
        raise CosDeltaZero("bound diverges at cos(delta) = 0")
    return 4.0 * np.sqrt(2.0) / abs(cd) - 4.0 / cd


# ---------------------------------------------------------------------------
# regime detection
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RegimeReport:
    regime: str
    class_label: str
    decomposition: OutputDecomposition

    def to_json_dict(self):
        d = self.decomposition.to_json_dict()
        d["class_label"] = self.class_label
        d["regime"] = self.regime
        return d

    def to_json(self):
        return json.dumps(self.to_json_dict())


def regime_classify(p: QrqParams, tol: float = 1e-9) -> RegimeReport:
    """Identify which named protocol regime (if any) the parameters satisfy.

    Regimes, in matching order:

    - IdentityClass: f_s = 0 within tol (equal couplings, rotation angles
      differing by pi); the two-qubit block is a pure phase and bunching
      vanishes identically.
    - SwapDeterministic: f_i = 0 within tol and xi1*xi2 = 2; pure swap plus
      a vacuum term.
    - BunchingLight / BunchingAtoms: the bunched sector dominates the gate
      sector (p_nq > p_gate, couplings above the x = 2 threshold) and sits
      lopsidedly in the light (f_l) or atomic (f_a) system.  The spec points
      quote the large-coupling limits of the f_i = 0 angle families, where
      the minority amplitude decays like 1/x; dominance uses a 10:1
      amplitude ratio so those limiting points classify correctly.
    - SqrtSwapFamily: Re f_i = 0 and |Im f_i| = |f_s| within 1e-6 relative
      (a perfect entangler of the protocol family).
    - Generic otherwise.

    The class label always comes from the invariants path (or NonUnitary).
    """
    dec = amplitudes(p)
    scale = max(1.0, np.sqrt(dec.norm_n))
    x = p.xi1 * p.xi2
    amp_scale = max(1.0, np.hypot(dec.f_i.imag, dec.f_s))
    y, fs = dec.f_i.imag, dec.f_s

    regime = "Generic"
    if abs(dec.f_s) <= tol * scale:
        regime = "IdentityClass"
    elif abs(dec.f_i) <= 1e-6 * scale and abs(x - 2.0) <= 1e-6 * max(1.0, x):
        regime = "SwapDeterministic"
    elif dec.p_nq > dec.p_gate and x > 2.0:
        if abs(dec.f_a) <= 0.1 * abs(dec.f_l):
            regime = "BunchingLight"
        elif abs(dec.f_l) <= 0.1 * abs(dec.f_a):
            regime = "BunchingAtoms"
    elif (abs(dec.f_i.real) / amp_scale <= 1e-6
          and abs(abs(y) - abs(fs)) / np.hypot(y, fs) <= 1e-6):
        regime = "SqrtSwapFamily"

    gate = two_qubit_gate(p)
    if isinstance(gate, NonUnitaryBlock):
        label = "NonUnitary"
    else:
        label = classify(gate).label
    return RegimeReport(regime=regime, class_label=label, decomposition=dec)
