"""Parameter sweeps, locus tracing, and asymptotic table verification.

Grids are evaluated with vectorised closed forms; every CSV row can be
recomputed exactly by calling the scalar evaluators at the row parameters.
Output format: UTF-8 CSV with a fixed header, floats printed with 17
significant digits (round-trip exact), empty cells where the entangling
phase is absent, plus a JSON summary (per-column min/max) next to the CSV.
"""

from __future__ import annotations

import csv
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, asdict

import numpy as np

from . import core
from .core import BRANCHES, QrqParams, phi_en_grid, x_min
from .gates import CLASS_TABLE

__all__ = [
    "SweepConfig",
    "SWEEP_COLUMNS",
    "PRESETS",
    "run_grid",
    "trace_locus",
    "verify_tables",
    "appendix_scan",
    "worker_count",
]

SWEEP_COLUMNS = [
    "x", "nu", "delta", "phi", "xi1", "xi2", "theta1", "theta2", "branch",
    "re_g1", "im_g1", "g2", "p_gate", "p_nq", "p_vac",
    "unitarity_residual", "class_label",
]

ASYMPTOTIC_X = 1e6
TABLE_TOL = 1e-3


def worker_count():
    """Worker count from QRQ_THREADS (0 or unset = auto)."""
    raw = os.environ.get("QRQ_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = min(4, os.cpu_count() or 1)
    return n


@dataclass
class SweepConfig:
    """Grid specification for one sweep.

    mode: "x_delta" (x log-grid vs delta linear at fixed nu),
          "x_nu" (x log-grid vs nu log-grid at fixed delta), or
          "xi_theta2_appendix" (xi linear vs theta2 linear on the
          equal-coupling, opposite-rotation family).
    branches: which phase branches to emit, one block per branch.
    subsystem_count is metadata only: the protocol acts on that many
    independent two-qubit subsystems in parallel, all with identical
    parameters.
    """

    mode: str
    branches: tuple = ("mm",)
    nu: float | None = None
    delta: float | None = None
    x_range: tuple = (2.0, 1e5)
    x_points: int = 200
    y_range: tuple = (-1.4, 1.4)
    y_points: int = 200
    output: str | None = None
    subsystem_count: int = 1

    def __post_init__(self):
        if self.mode not in ("x_delta", "x_nu", "xi_theta2_appendix"):
            raise ValueError(f"unknown sweep mode {self.mode!r}")
        if self.x_points < 2 or self.y_points < 2:
            raise ValueError("grid sizes must be at least 2")
        for b in self.branches:
            if b not in BRANCHES:
                raise ValueError(f"unknown branch {b!r}")
        if self.mode == "x_nu" and self.delta is not None:
            # ranges respect the existence bound at the slice's delta
            try:
                bound = x_min(self.delta)
            except core.CosDeltaZero:
                bound = None
            if bound is not None and self.x_range[0] < bound:
                self.x_range = (bound * (1 + 1e-12), self.x_range[1])

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        data["branches"] = tuple(data.get("branches", ("mm",)))
        for key in ("x_range", "y_range"):
            if key in data:
                data[key] = tuple(data[key])
        return cls(**data)

    def to_json(self):
        return json.dumps(asdict(self))


def _simplified_g1_g2(y, fs):
    num = (-(y ** 2) + 1j * y * fs + fs ** 2) ** 2
    den = (y - 1j * fs) ** 3 * (y + 1j * fs)
    g1 = num / den
    g2 = -3.0 + 6.0 * y ** 2 / (y ** 2 + fs ** 2)
    return g1, g2


def _row_labels(g1, g2, tol=1e-6):
    labels = np.full(g1.shape, "OtherNonlocal", dtype=object)
    for name, (g1_ref, g2_ref) in CLASS_TABLE.items():
        hit = (np.abs(g1 - g1_ref) <= tol) & (np.abs(g2 - g2_ref) <= tol)
        labels[hit] = name
    pe = ((np.abs(g1.real) <= tol) & (np.abs(np.abs(g1) - 0.25) <= tol)
          & (np.abs(g2) <= tol) & (labels == "OtherNonlocal"))
    labels[pe] = "PerfectEntanglerOther"
    labels[~np.isfinite(g1.real)] = ""
    return labels


def _eval_line(x, nu, delta, branch):
    """Evaluate one fixed-delta line of the sweep; x and nu broadcast."""
    x = np.asarray(x, dtype=float)
    phi, c, cdmc, sinphi, resid, _ = phi_en_grid(x, delta, branch)
    y = sinphi * (x / 2.0 - (x * x / 8.0) * cdmc)
    xi2 = np.broadcast_to(np.asarray(nu, dtype=float), x.shape)
    xi1 = x / xi2
    t1 = (phi + delta) / 2.0
    t2 = (phi - delta) / 2.0
    _, fs, fl, fa, fvac = core._raw_amplitudes(xi1, xi2, t1, t2)
    fs = np.real(fs)
    f_i_abs2 = resid ** 2 + y ** 2
    norm_n = f_i_abs2 + fs ** 2 + np.abs(fl) ** 2 + np.abs(fa) ** 2 + np.abs(fvac) ** 2
    p_gate = (f_i_abs2 + fs ** 2) / norm_n
    p_nq = (np.abs(fl) ** 2 + np.abs(fa) ** 2) / norm_n
    p_vac = np.abs(fvac) ** 2 / norm_n
    unit_resid = np.abs(resid * fs) / np.maximum(1.0, f_i_abs2 + fs ** 2)
    g1, g2 = _simplified_g1_g2(y, fs)
    return {
        "x": x, "nu": xi2, "delta": np.full_like(x, delta), "phi": phi,
        "xi1": xi1, "xi2": xi2, "theta1": t1, "theta2": t2,
        "re_g1": g1.real, "im_g1": g1.imag, "g2": g2,
        "p_gate": p_gate, "p_nq": p_nq, "p_vac": p_vac,
        "unitarity_residual": unit_resid,
    }


def _grid_axes(config):
    lo, hi = config.x_range
    xs = np.logspace(np.log10(lo), np.log10(hi), config.x_points)
    ylo, yhi = config.y_range
    if config.mode == "x_nu":
        ys = np.logspace(np.log10(ylo), np.log10(yhi), config.y_points)
    else:
        ys = np.linspace(ylo, yhi, config.y_points)
    return xs, ys


def _evaluate_grid(config, branch):
    """Row-major list of column dicts, one entry per grid line."""
    xs, ys = _grid_axes(config)
    if config.mode == "x_delta":
        lines = [(delta, xs, config.nu, delta) for delta in ys]

        def work(args):
            delta, x_arr, nu, d = args
            return _eval_line(x_arr, nu, d, branch)

    elif config.mode == "x_nu":
        lines = [(nu, xs, nu, config.delta) for nu in ys]

        def work(args):
            nu, x_arr, nu_val, d = args
            return _eval_line(x_arr, nu_val, d, branch)

    else:
        raise ValueError("grid evaluation applies to x_delta / x_nu modes")

    n = worker_count()
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(work, lines))
    else:
        results = [work(args) for args in lines]
    return results


def _format_cell(v):
    if isinstance(v, str):
        return v
    if v is None or (isinstance(v, float) and not np.isfinite(v)):
        return ""
    return f"{v:.17g}"


def run_grid(config: SweepConfig):
    """Run the configured sweep, write CSV + JSON summary, return both paths.

    Rows where the entangling phase is absent carry empty invariant и
    probability fields.  A per-row consistency identity (the g2 closed form
    against Im f_i and f_s) is enforced; violations raise RuntimeError.
    """
    if config.mode == "xi_theta2_appendix":
        return appendix_scan(output=config.output,
                             xi_points=config.x_points, theta_points=config.y_points)
    rows = []
    for branch in config.branches:
        for cols in _evaluate_grid(config, branch):
            labels = _row_labels(cols["re_g1"] + 1j * cols["im_g1"], cols["g2"])
            m = len(cols["x"])
            for i in range(m):
                finite = np.isfinite(cols["phi"][i])
                row = {
                    "x": cols["x"][i], "nu": cols["nu"][i], "delta": cols["delta"][i],
                    "phi": cols["phi"][i] if finite else None,
                    "xi1": cols["xi1"][i], "xi2": cols["xi2"][i],
                    "theta1": cols["theta1"][i] if finite else None,
                    "theta2": cols["theta2"][i] if finite else None,
                    "branch": branch,
                    "re_g1": cols["re_g1"][i] if finite else None,
                    "im_g1": cols["im_g1"][i] if finite else None,
                    "g2": cols["g2"][i] if finite else None,
                    "p_gate": cols["p_gate"][i] if finite else None,
                    "p_nq": cols["p_nq"][i] if finite else None,
                    "p_vac": cols["p_vac"][i] if finite else None,
                    "unitarity_residual": cols["unitarity_residual"][i] if finite else None,
                    "class_label": labels[i] if finite else "",
                }
                rows.append(row)
    _check_row_identity(rows)
    return _write_rows(rows, config)


def _check_row_identity(rows):
    for row in rows:
        if row["phi"] is None:
            continue
        # re-derive Im f_i from the stored row and test the g2 identity
        x = row["x"]
        y_sq = None
        fs = -(row["xi1"] ** 2 + row["xi2"] ** 2
               + 2 * x * np.cos(row["theta1"] - row["theta2"])) / 4.0
        g2 = row["g2"]
        # g2 = -3 + 6 y^2/(y^2 + fs^2)  =>  y^2 = fs^2 (g2 + 3) / (3 - g2)
        if abs(3.0 - g2) < 1e-12:
            continue
        y_sq = fs * fs * (g2 + 3.0) / (3.0 - g2)
        y = np.sin(row["phi"]) * (x / 2.0 - (x * x / 8.0)
                                  * (np.cos(row["delta"]) - np.cos(row["phi"])))
        scale = max(1.0, y * y + fs * fs)
        if abs(y * y - y_sq) / scale > 1e-8:
            raise RuntimeError("row identity violated: g2 inconsistent with Im f_i, f_s")


def _write_rows(rows, config):
    out = config.output or "sweep.csv"
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_COLUMNS)
        for row in rows:
            writer.writerow([_format_cell(row[c]) for c in SWEEP_COLUMNS])
    summary = {"rows": len(rows), "subsystem_count": config.subsystem_count, "columns": {}}
    for col in SWEEP_COLUMNS:
        if col in ("branch", "class_label"):
            continue
        vals = np.array([row[col] for row in rows if row[col] is not None], dtype=float)
        vals = vals[np.isfinite(vals)]
        if len(vals):
            summary["columns"][col] = {"min": float(vals.min()), "max": float(vals.max())}
    summary_path = out + ".summary.json"
    with open(summary_path, "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=1)
    return out, summary_path


# ---------------------------------------------------------------------------
# locus tracing
# ---------------------------------------------------------------------------


def _re_g1_at(x, nu, delta, branch):
    cols = _eval_line(np.atleast_1d(np.asarray(x, dtype=float)), nu, delta, branch)
    return float(cols["re_g1"][0])


def _bisect(f, a, b, fa, fb, tol=1e-8, max_iter=200):
    for _ in range(max_iter):
        m = 0.5 * (a + b)
        fm = f(m)
        if not np.isfinite(fm):
            return None
        if abs(fm) <= tol:
            return m
        if np.sign(fm) == np.sign(fa):
            a, fa = m, fm
        else:
            b, fb = m, fm
    return 0.5 * (a + b)


def trace_locus(config: SweepConfig, target="ReG1Zero"):
    """Trace the re_g1 = 0 locus on the configured grid.

    Sign changes are located along both grid axes and refined by bisection
    until |re_g1| <= 1e-8; nearby refined points are chained into ordered
    polylines.  Returns a list of polylines, each a list of dicts with the
    grid coordinates and the invariants at the refined point; empty when no
    crossing exists.
    """
    if target != "ReG1Zero":
        raise ValueError("only the ReG1Zero target is supported")
    if config.mode not in ("x_delta", "x_nu"):
        raise ValueError("locus tracing applies to x_delta / x_nu sweeps")
    xs, ys = _grid_axes(config)
    points = []
    for branch in config.branches:
        for j, yv in enumerate(ys):
            nu = config.nu if config.mode == "x_delta" else yv
            delta = yv if config.mode == "x_delta" else config.delta
            cols = _eval_line(xs, nu, delta, branch)
            r = cols["re_g1"]
            for i in range(len(xs) - 1):
                if not (np.isfinite(r[i]) and np.isfinite(r[i + 1])):
                    continue
                if r[i] == 0.0 or np.sign(r[i]) != np.sign(r[i + 1]):
                    xr = _bisect(lambda v: _re_g1_at(v, nu, delta, branch),
                                 xs[i], xs[i + 1], r[i], r[i + 1])
                    if xr is not None:
                        points.append(_locus_point(xr, nu, delta, branch, axis_y=yv))
        # scan along the second axis as well (loci can run parallel to x)
        for i, xv in enumerate(xs):
            vals = []
            for yv in ys:
                nu = config.nu if config.mode == "x_delta" else yv
                delta = yv if config.mode == "x_delta" else config.delta
                vals.append(_re_g1_at(xv, nu, delta, branch))
            vals = np.array(vals)
            for j in range(len(ys) - 1):
                if not (np.isfinite(vals[j]) and np.isfinite(vals[j + 1])):
                    continue
                if vals[j] == 0.0 or np.sign(vals[j]) != np.sign(vals[j + 1]):
                    def g(yv):
                        nu = config.nu if config.mode == "x_delta" else yv
                        delta = yv if config.mode == "x_delta" else config.delta
                        return _re_g1_at(xv, nu, delta, branch)
                    yr = _bisect(g, ys[j], ys[j + 1], vals[j], vals[j + 1])
                    if yr is not None:
                        nu = config.nu if config.mode == "x_delta" else yr
                        delta = yr if config.mode == "x_delta" else config.delta
                        points.append(_locus_point(xv, nu, delta, branch, axis_y=yr))
    return _chain_points(points)


def _locus_point(x, nu, delta, branch, axis_y):
    cols = _eval_line(np.atleast_1d(float(x)), nu, delta, branch)
    g1 = complex(cols["re_g1"][0], cols["im_g1"][0])
    return {
        "x": float(x), "nu": float(np.atleast_1d(cols["nu"])[0]), "delta": float(delta),
        "axis_y": float(axis_y), "branch": branch,
        "re_g1": g1.real, "im_g1": g1.imag, "abs_g1": abs(g1),
        "g2": float(cols["g2"][0]), "p_gate": float(cols["p_gate"][0]),
        "p_nq": float(cols["p_nq"][0]), "p_vac": float(cols["p_vac"][0]),
        "phi": float(cols["phi"][0]),
    }


def _chain_points(points):
    if not points:
        return []
    remaining = sorted(points, key=lambda p: (p["branch"], np.log(p["x"]), p["axis_y"]))
    polylines = []
    while remaining:
        line = [remaining.pop(0)]
        grown = True
        while grown and remaining:
            grown = False
            last = line[-1]
            dists = [
                (abs(np.log(q["x"] / last["x"])) + abs(q["axis_y"] - last["axis_y"]), k)
                for k, q in enumerate(remaining) if q["branch"] == last["branch"]
            ]
            if dists:
                d, k = min(dists)
                if d < 0.35:
                    line.append(remaining.pop(k))
                    grown = True
        polylines.append(line)
    return polylines


# ---------------------------------------------------------------------------
# asymptotic table verification
# ---------------------------------------------------------------------------


def _table_point(x, nu, delta, branch):
    sol = core.phi_en(x, delta, branch)
    dec = core.amplitudes_comp(x, nu, delta, sol)
    inv = core.invariants_from_amplitudes(dec.f_i.imag, dec.f_s)
    p = (dec.f_i.imag ** 2 + dec.f_s ** 2) / dec.norm_n
    label = "OtherNonlocal"
    for name, (g1_ref, g2_ref) in CLASS_TABLE.items():
        if abs(inv.g1 - g1_ref) <= TABLE_TOL and abs(inv.g2 - g2_ref) <= TABLE_TOL:
            label = name
            break
    return dec, inv, p, label


def verify_tables(which):
    """Check one asymptotic parameter table; returns a list of row reports.

    The tables' 'much greater than one' couplings are instantiated at
    x = 1e6 and compared at tolerance 1e-3.  Approach directions for the
    4/13 rows are measured from the sign of P - 4/13 and recorded.
    """
    rows = []
    if which == 1:
        spec_rows = [
            ("mm", np.sqrt(2.0), "SqrtSwap", 1.0 / 3.0),
            ("mm", None, "SqrtSwap", 0.25),
            ("pm", np.sqrt(2.0), "SqrtSwapDagger", 1.0 / 3.0),
            ("pm", None, "SqrtSwapDagger", 0.25),
        ]
        for branch, nu, want_class, want_p in spec_rows:
            if nu is None:
                nu_val = ASYMPTOTIC_X          # x = sqrt(2) nu with nu >> 1
                x = np.sqrt(2.0) * nu_val
            else:
                nu_val = nu
                x = ASYMPTOTIC_X
            dec, inv, p, label = _table_point(x, nu_val, 0.0, branch)
            rows.append({
                "table": 1, "branch": branch, "x": x, "nu": nu_val, "delta": 0.0,
                "expected_class": want_class, "class": label,
                "expected_p": want_p, "p": p,
                "im_g1": inv.g1.imag,
                "pass": label == want_class and abs(p - want_p) <= TABLE_TOL,
            })
    elif which == 2:
        for branch, want_class in (("pm", "SqrtSwap"), ("mm", "SqrtSwapDagger")):
            for sign, direction in ((+1.0, "below"), (-1.0, "above")):
                x = ASYMPTOTIC_X
                nu_val = np.sqrt(x) + sign * np.sqrt(2.0)
                dec, inv, p, label = _table_point(x, nu_val, np.pi, branch)
                measured = "below" if p < 4.0 / 13.0 else "above"
                rows.append({
                    "table": 2, "branch": branch, "x": x, "nu": nu_val, "delta": np.pi,
                    "expected_class": want_class, "class": label,
                    "expected_p": 4.0 / 13.0, "p": p,
                    "expected_direction": direction, "direction": measured,
                    "im_g1": inv.g1.imag,
                    "pass": (label == want_class and abs(p - 4.0 / 13.0) <= TABLE_TOL
                             and measured == direction),
                })
    elif which == 3:
        xi2 = ASYMPTOTIC_X
        p1 = QrqParams(xi1=2.0 / xi2, xi2=xi2, theta1=np.pi / 2, theta2=np.pi / 2)
        dec = core.amplitudes(p1)
        rows.append({
            "table": 3, "row": "swap", "xi1": p1.xi1, "xi2": p1.xi2,
            "expected_p": 1.0, "p": dec.p_gate,
            "regime": core.regime_classify(p1).regime,
            "pass": dec.p_gate >= 1.0 - TABLE_TOL
            and core.regime_classify(p1).regime == "SwapDeterministic",
        })
        xi = 1e3
        for (t1, t2, name, fkey) in ((0.0, np.pi / 2, "nql", "f_l"),
                                     (np.pi / 2, 0.0, "nqa", "f_a")):
            p = QrqParams(xi1=xi, xi2=xi, theta1=t1, theta2=t2)
            dec = core.amplitudes(p)
            dominant = abs(getattr(dec, fkey)) ** 2 / dec.norm_n
            rows.append({
                "table": 3, "row": name, "xi1": xi, "xi2": xi,
                "theta1": t1, "theta2": t2,
                "expected_p": 0.5, "p": dec.p_nq,
                "dominant_fraction": dominant / max(dec.p_nq, 1e-300),
                "regime": core.regime_classify(p).regime,
                "pass": abs(dec.p_nq - 0.5) <= TABLE_TOL
                and dominant / max(dec.p_nq, 1e-300) >= 1.0 - TABLE_TOL,
            })
    else:
        raise ValueError("which must be 1, 2 or 3")
    return rows


# ---------------------------------------------------------------------------
# appendix scan (vacuum probability and phase on the f_s = 0 family)
# ---------------------------------------------------------------------------


def appendix_scan(output=None, xi_points=200, theta_points=200):
    """Scan the equal-coupling family xi1 = xi2 = xi, theta1 = theta2 + pi.

    Emits a CSV of the vacuum probability and the output phase factor over
    xi in [0, 4], theta2 in [0, pi], and asserts that the vacuum probability
    peaks at 1/3 at (sqrt(2), pi/2) within grid resolution.
    """
    xis = np.linspace(0.0, 4.0, xi_points)
    t2s = np.linspace(0.0, np.pi, theta_points)
    xg, tg = np.meshgrid(xis, t2s, indexing="ij")
    f_i, f_s, f_l, f_a, f_vac = core._raw_amplitudes(xg, xg, tg + np.pi, tg)
    denom = np.abs(f_i) ** 2 + np.abs(f_vac) ** 2
    p_vac = np.where(denom > 0, np.abs(f_vac) ** 2 / np.where(denom > 0, denom, 1.0), 0.0)
    phase = np.angle(f_i)

    k = int(np.argmax(p_vac))
    i, j = np.unravel_index(k, p_vac.shape)
    dx = xis[1] - xis[0]
    dt = t2s[1] - t2s[0]
    if not (abs(xis[i] - np.sqrt(2.0)) <= dx and abs(t2s[j] - np.pi / 2) <= dt):
        raise RuntimeError("vacuum probability peak off the expected location")
    if abs(p_vac[i, j] - 1.0 / 3.0) > 1e-3:
        raise RuntimeError("vacuum probability peak is not 1/3 within tolerance")

    out = output or "appendix_scan.csv"
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["xi", "theta2", "p_vac", "phase_factor"])
        for a in range(xi_points):
            for b in range(theta_points):
                writer.writerow([f"{xis[a]:.17g}", f"{t2s[b]:.17g}",
                                 f"{p_vac[a, b]:.17g}", f"{phase[a, b]:.17g}"])
    summary = {
        "rows": int(xi_points * theta_points),
        "max_p_vac": float(p_vac[i, j]),
        "argmax": {"xi": float(xis[i]), "theta2": float(t2s[j])},
    }
    summary_path = out + ".summary.json"
    with open(summary_path, "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=1)
    return out, summary_path


def _projected_g1(f_i, f_s):
    """g1 of the normalised (possibly slightly non-unitary) f_i I + f_s S block."""
    u = f_i + f_s
    v = f_i - f_s
    m_bell = np.diag([u, u, v, u]) / abs(u)
    m_bell = m_bell / np.linalg.det(m_bell) ** 0.25
    m = m_bell.T @ m_bell
    return complex(np.trace(m) ** 2 / 16.0)


def sensitivity_probe(x0=1e4, frac=0.04):
    """Displacement of g1 under a coupling-product perturbation at fixed phase.

    Measures |Re g1| before and after scaling x by (1 + frac) with the
    entangling phase frozen at its unperturbed root, on two operating
    lines: (delta=0, nu=sqrt(2)) and the delta=pi lines nu = sqrt(x) +- sqrt(2).
    The delta=0 line turns out to be insensitive (the perturbed gate stays
    next to the same class); the delta=pi lines shift |Re g1| to order one,
    which is where the protocol's few-percent coupling sensitivity lives.
    """
    out = {"x0": x0, "fraction": frac, "lines": []}
    cases = [("delta0_nu_sqrt2", 0.0, np.sqrt(2.0), "mm"),
             ("deltapi_nu_plus", np.pi, np.sqrt(x0) + np.sqrt(2.0), "pm"),
             ("deltapi_nu_minus", np.pi, np.sqrt(x0) - np.sqrt(2.0), "pm")]
    for name, delta, nu, branch in cases:
        sol = core.phi_en(x0, delta, branch)
        if sol.absent:
            continue
        entry = {"line": name, "delta": delta, "nu": nu, "branch": branch}
        for tag, xv in (("re_g1_at_x0", x0), ("re_g1_perturbed", (1.0 + frac) * x0)):
            xi2 = nu
            xi1 = xv / nu
            t1 = (sol.phi_en + delta) / 2.0
            t2 = (sol.phi_en - delta) / 2.0
            f_i, f_s, *_ = core._raw_amplitudes(xi1, xi2, t1, t2)
            g1 = _projected_g1(complex(f_i), float(np.real(f_s)))
            entry[tag] = g1.real
            entry[tag.replace("re_", "abs_")] = abs(g1)
        entry["abs_re_g1_displacement"] = abs(entry["re_g1_perturbed"])
        out["lines"].append(entry)
    return out


PRESETS = {
    "fig3": SweepConfig(mode="x_delta", branches=("mm", "pm", "pp", "mp"), nu=100.0,
                        x_range=(4 * np.sqrt(2) - 4, 1e5), x_points=200,
                        y_range=(-np.pi / 2 * 0.95, np.pi / 2 * 0.95), y_points=200),
    "fig4": SweepConfig(mode="x_nu", branches=("mm", "pm"), delta=0.0,
                        x_range=(4 * np.sqrt(2) - 4, 1e5), x_points=200,
                        y_range=(0.7, 1e3), y_points=200),
    "fig5": SweepConfig(mode="x_delta", branches=("mm", "pm", "pp", "mp"), nu=100.0,
                        x_range=(4 * np.sqrt(2) + 4, 1e5), x_points=200,
                        y_range=(np.pi / 2 * 1.05, 3 * np.pi / 2 * 0.97), y_points=200),
    "fig6": SweepConfig(mode="x_delta", branches=("mm", "pm"), nu=100.0,
                        x_range=(2e3, 5e4), x_points=200,
                        y_range=(np.pi - 0.4, np.pi + 0.4), y_points=200),
    "fig7": SweepConfig(mode="x_nu", branches=("mm", "pm"), delta=np.pi,
                        x_range=(4 * np.sqrt(2) + 4, 1e5), x_points=200,
                        y_range=(2.0, 1e3), y_points=200),
    "fig8": SweepConfig(mode="xi_theta2_appendix", branches=(), x_points=200, y_points=200),
}
