"""Command-line interface.

Subcommands: profile, figure, verify, spectrum, scatter, gup.

Exit codes: 0 success, 1 failed check or numerical failure, 2 invalid input.
CSV output uses '.17g' floats and '\\n' line endings, so values round-trip
bit-exactly; files are written atomically.
"""

import argparse
import configparser
import csv
import io
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import gup, scattering, spectral, susy_core
from .errors import ComputationError, InputError, UnknownFigure, UnwritablePath
from .profiles import Grid, PlaneWaveProfile, SinusoidalProfile, perturbation_warning
from .symmetry import pt_check_analytic

FIGURE_PRESETS = {
    1: {"family": "A", "n0": 1.0, "v0": 10.0, "beta": 2.0, "lam": 0.0},
    2: {"family": "A", "n0": 1.0, "v0": 1.0, "k": 1.0, "lam": 0.0},
    3: {"family": "B", "eta0": 1.0, "eta1": 4.0, "eta2": 2.0, "k": 1.0, "lam": 0.0},
}
FIGURE_POINTS = 1001

PARTNER_COLUMNS = [
    "z",
    "re_n_plus", "im_n_plus",
    "re_n_minus", "im_n_minus",
    "re_v_plus", "im_v_plus",
    "re_v_minus", "im_v_minus",
]
SCATTER_COLUMNS = ["k", "R_left", "R_right", "T", "re_t", "im_t"]
SPECTRUM_COLUMNS = ["check", "stencil_order", "count", "h", "max_residual", "estimated_order"]

VERIFY_LEVELS = (101, 201, 401, 801)
PT_PERIODS = 5
WEAK_GRATING = 0.01

# flag name -> value type
_CONFIG_KEYS = {
    "family": str, "n0": float, "v0": float, "eta0": float, "eta1": float, "eta2": float,
    "beta": float, "k": float, "lambda": float, "epsilon": float,
    "grid-start": float, "grid-end": float, "grid-count": int,
    "periods": int, "steps-per-period": int, "stencil-order": int,
    "figure": int, "format": str, "out": str, "eq27-offset": bool,
    "particle": str, "mass": float, "planck-mass": float, "seed": int,
}


def fmt(x):
    return format(float(x), ".17g")


def write_output(text, path):
    """Write to ``path`` atomically, or to stdout when path is None."""
    if path is None:
        sys.stdout.write(text)
        return
    target = os.path.abspath(path)
    try:
        fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".ptsusy-")
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except OSError as exc:
        raise UnwritablePath(f"cannot write {path}: {exc}") from exc


def csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([v if isinstance(v, str) else fmt(v) for v in row])
    return buf.getvalue()


def load_config(path):
    """Key-value config: JSON object, or ``key = value`` lines."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    if path.endswith(".json"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad JSON in {path}: {exc}") from exc
    else:
        parser = configparser.ConfigParser()
        try:
            parser.read_string("[run]\n" + text)
        except configparser.Error as exc:
            raise InputError(f"bad config {path}: {exc}") from exc
        raw = dict(parser["run"])
    out = {}
    for key, value in raw.items():
        name = key.replace("_", "-")
        if name not in _CONFIG_KEYS:
            raise InputError(f"unknown config key {key!r}")
        kind = _CONFIG_KEYS[name]
        try:
            if kind is bool and isinstance(value, str):
                value = value.strip().lower() in ("1", "true", "yes", "on")
            attr = "lam" if name == "lambda" else name.replace("-", "_")
            out[attr] = kind(value)
        except (TypeError, ValueError) as exc:
            raise InputError(f"config key {key!r}: {exc}") from exc
    return out


class Settings:
    """Flag values layered over config-file values over built-in defaults."""

    def __init__(self, args, defaults=None):
        self._args = vars(args)
        self._config = load_config(args.config) if getattr(args, "config", None) else {}
        self._defaults = defaults or {}

    def get(self, name, default=None):
        value = self._args.get(name)
        if value is None or value is False:
            value = self._config.get(name, value)
        if value is None:
            value = self._defaults.get(name, default)
        return value

    def require(self, name):
        value = self.get(name)
        if value is None:
            raise InputError(f"--{name.replace('_', '-')} is required")
        return value


def build_problem(s):
    """Profile and matched SusyParams from settings, auto-completing beta/epsilon.

    Explicit beta or epsilon values are validated against the matching
    conditions instead of overwritten.
    """
    family = str(s.require("family")).upper()
    harmonic = {"A": 2.0, "B": 1.0}.get(family)
    if harmonic is None:
        raise InputError(f"--family must be A or B, got {family!r}")
    k, beta = s.get("k"), s.get("beta")
    if k is None and beta is None:
        raise InputError("give --k or --beta")
    if beta is None:
        beta = harmonic * k
    if k is None:
        k = beta / harmonic
    if family == "A":
        profile = PlaneWaveProfile(s.get("n0", 1.0), s.require("v0"), beta)
    else:
        profile = SinusoidalProfile(
            s.get("eta0", 1.0), s.require("eta1"), s.get("eta2", 0.0), beta
        )
    lam = s.get("lam", 0.0)
    eps = s.get("epsilon")
    sp = susy_core.SusyParams.matched(profile, k=k, lam=lam)
    if eps is not None:
        sp = susy_core.SusyParams(k=k, epsilon=eps, lam=lam)
    w = susy_core.build_superpotential(profile, sp)
    return profile, sp, w


def default_grid(s, profile, periods=2, count=FIGURE_POINTS):
    """``periods`` periods centred at 0 unless grid flags say otherwise."""
    half = periods * profile.period / 2
    return Grid(
        s.get("grid_start", -half), s.get("grid_end", half), s.get("grid_count", count)
    )


def partner_rows(profile, sp, w, grid, v_minus_offset=0.0, with_sum=False):
    ps = susy_core.partner_set(profile, sp, grid)
    z = grid.nodes()
    v_minus = ps.v_minus.values + v_minus_offset
    cols = [z]
    for f in (ps.n_plus.values, ps.n_minus.values, ps.v_plus.values, v_minus):
        cols += [f.real, f.imag]
    header = list(PARTNER_COLUMNS)
    if with_sum:
        total = ps.n_plus.values + ps.n_minus.values
        cols += [total.real, total.imag]
        header += ["re_sum", "im_sum"]
    return header, list(zip(*cols))


def _partner_json(command, params, header, rows):
    return json.dumps(
        {"command": command, "parameters": params, "columns": header,
         "rows": [[float(v) for v in r] for r in rows]},
        indent=1,
    ) + "\n"


def _problem_params(profile, sp):
    params = {"family": profile.family, "beta": profile.beta, "k": sp.k,
              "epsilon": sp.epsilon, "lambda": sp.lam}
    if profile.family == "A":
        params.update(n0=profile.n0, v0=profile.v0)
    else:
        params.update(eta0=profile.eta0, eta1=profile.eta1, eta2=profile.eta2)
    return params


def _emit_partner(command, s, profile, sp, w, grid, offset=0.0, with_sum=False):
    header, rows = partner_rows(profile, sp, w, grid, offset, with_sum)
    if s.get("format", "csv") == "json":
        params = _problem_params(profile, sp)
        params.update(grid_start=grid.z_start, grid_end=grid.z_end, grid_count=grid.count)
        text = _partner_json(command, params, header, rows)
    else:
        text = csv_text(header, rows)
    write_output(text, s.get("out"))


def cmd_profile(args):
    s = Settings(args)
    profile, sp, w = build_problem(s)
    _emit_partner("profile", s, profile, sp, w, default_grid(s, profile))
    return 0


def cmd_figure(args):
    fig = args.figure
    if fig not in FIGURE_PRESETS:
        raise UnknownFigure(f"unknown figure {fig!r}; choose 1, 2 or 3")
    s = Settings(args, FIGURE_PRESETS[fig])
    profile, sp, w = build_problem(s)
    offset = 0.0
    if s.get("eq27_offset"):
        offset = susy_core.gamma_offset(profile)
    grid = default_grid(s, profile)
    _emit_partner(f"figure{fig}", s, profile, sp, w, grid, offset, with_sum=(fig == 1))
    return 0


def verification_checks(profile, sp, w, grid, stencil_order=2, seed=0):
    """(name, passed, max_residual, tolerance) for every identity."""
    checks = []
    for sign in ("+", "-"):
        rep = susy_core.riccati_residual(profile, w, sp, sign, grid)
        checks.append((f"riccati_{'plus' if sign == '+' else 'minus'}",
                       rep.passed, rep.max_abs_residual, rep.tolerance))
    ps = susy_core.partner_set(profile, sp, grid)
    for name, rep in (("partner_sum", susy_core.partner_sum_check(ps)),
                      ("helmholtz_map", susy_core.helmholtz_map_check(ps))):
        checks.append((name, rep.passed, rep.max_abs_residual, rep.tolerance))
    half = PT_PERIODS * profile.period
    count = 20 * PT_PERIODS * 2 + 1
    for name, fn in (("pt_n_plus", profile), ("pt_n_minus", profile.partner)):
        rep = pt_check_analytic(fn, half, count)
        checks.append((name, rep.is_pt_symmetric, rep.max_violation, rep.tolerance))

    levels = Grid(0.0, profile.period, VERIFY_LEVELS[0]).refined(len(VERIFY_LEVELS))
    ann = spectral.annihilation_residual(w, levels, stencil_order)
    test_psi = spectral.random_trig_polynomial(np.random.default_rng(seed))
    inter = spectral.intertwining_residual(w, levels, test_psi, stencil_order, sp.lam)
    for name, rep in (("annihilation_order", ann), ("intertwining_order", inter)):
        if rep.exact:
            checks.append((name, True, 0.0, spectral.ORDER_WINDOW))
        else:
            dev = abs(rep.estimated_order - stencil_order)
            ok = math.isfinite(dev) and dev <= spectral.ORDER_WINDOW
            checks.append((name, ok, dev if math.isfinite(dev) else math.inf,
                           spectral.ORDER_WINDOW))
    return checks


def cmd_verify(args):
    s = Settings(args)
    profile, sp, w = build_problem(s)
    grid = default_grid(s, profile)
    checks = verification_checks(profile, sp, w, grid, s.get("stencil_order", 2), s.get("seed", 0))
    warnings = [m for m in (perturbation_warning(profile),) if m]
    passed = all(c[1] for c in checks)
    if s.get("format", "text") == "json":
        report = {
            "command": "verify",
            "parameters": _problem_params(profile, sp),
            "checks": [
                {"name": n, "status": "pass" if ok else "fail",
                 "max_residual": r, "tolerance": t}
                for n, ok, r, t in checks
            ],
            "warnings": warnings,
            "passed": passed,
        }
        write_output(json.dumps(report, indent=1) + "\n", s.get("out"))
    else:
        lines = [f"{'check':<20} {'status':<6} {'max_residual':>12} {'tolerance':>10}"]
        for n, ok, r, t in checks:
            lines.append(f"{n:<20} {'pass' if ok else 'FAIL':<6} {r:>12.3e} {t:>10.1e}")
        lines += [f"warning: {m}" for m in warnings]
        lines.append(f"overall: {'pass' if passed else 'FAIL'}")
        write_output("\n".join(lines) + "\n", s.get("out"))
    return 0 if passed else 1


def cmd_spectrum(args):
    s = Settings(args)
    profile, sp, w = build_problem(s)
    order = s.get("stencil_order", 2)
    base = Grid(0.0, profile.period, s.get("grid_count", VERIFY_LEVELS[0]))
    levels = base.refined(4)
    test_psi = spectral.random_trig_polynomial(np.random.default_rng(s.get("seed", 0)))
    reports = {
        "annihilation": spectral.annihilation_residual(w, levels, order),
        "intertwining": spectral.intertwining_residual(w, levels, test_psi, order, sp.lam),
    }
    rows = []
    for name, rep in reports.items():
        for g, h, r in zip(levels, rep.spacings, rep.residual_norms):
            rows.append((name, str(order), str(g.count), h, r, rep.estimated_order))
    if s.get("format", "csv") == "json":
        text = json.dumps({
            "command": "spectrum",
            "parameters": _problem_params(profile, sp) | {"stencil_order": order},
            "reports": {
                n: {"spacings": list(r.spacings), "residual_norms": list(r.residual_norms),
                    "estimated_order": r.estimated_order}
                for n, r in reports.items()
            },
        }, indent=1) + "\n"
    else:
        text = csv_text(SPECTRUM_COLUMNS, rows)
    write_output(text, s.get("out"))
    return 0


def _k_values(s, args):
    if args.k_range is not None:
        start, stop, count = args.k_range
        if int(count) != count or count < 1:
            raise InputError("--k-range COUNT must be a positive integer")
        return list(np.linspace(start, stop, int(count)))
    ks = args.k if args.k is not None else s.get("k")
    if ks is None:
        raise InputError("give --k or --k-range")
    return list(ks) if isinstance(ks, (list, tuple)) else [ks]


def cmd_scatter(args):
    s = Settings(args)
    family = str(s.require("family")).upper()
    ks = _k_values(s, args)
    beta = s.get("beta")
    if beta is None:
        # Bragg-matched to the first k by default
        beta = ks[0] * (2.0 if family == "A" else 1.0)
    if family == "A":
        profile = PlaneWaveProfile(s.get("n0", 1.0), s.require("v0"), beta)
    elif family == "B":
        profile = SinusoidalProfile(s.get("eta0", 1.0), s.require("eta1"), s.get("eta2", 0.0), beta)
    else:
        raise InputError(f"--family must be A or B, got {family!r}")
    if profile.max_perturbation() > WEAK_GRATING:
        print(
            f"note: max|v| = {profile.max_perturbation():g} > {WEAK_GRATING}; "
            "unidirectional-invisibility behaviour is validated only for weak gratings",
            file=sys.stderr,
        )
    g = scattering.GratingSpec(
        profile, s.get("periods", 50), ks[0], s.get("steps_per_period", 256)
    )
    results = scattering.detuning_sweep(g, ks)
    rows = [(r.k, r.R_left, r.R_right, r.T, r.t.real, r.t.imag) for r in results]
    if s.get("format", "csv") == "json":
        text = json.dumps({
            "command": "scatter",
            "parameters": {"family": family, "beta": beta, "periods": g.periods,
                           "steps_per_period": g.integrator_steps_per_period},
            "columns": SCATTER_COLUMNS,
            "rows": [[float(v) for v in r] for r in rows],
        }, indent=1) + "\n"
    else:
        text = csv_text(SCATTER_COLUMNS, rows)
    write_output(text, s.get("out"))
    return 0


def cmd_gup(args):
    s = Settings(args)
    mass, particle = s.get("mass"), s.get("particle")
    if mass is not None and particle is not None:
        raise InputError("give either --mass or --particle, not both")
    if mass is None:
        if particle is None:
            raise InputError("give --mass KG or --particle NAME")
        mass = gup.particle_mass(particle)
    est = gup.tau0_estimate(mass, s.get("planck_mass", gup.PLANCK_MASS))
    if s.get("format", "text") == "json":
        text = json.dumps({
            "command": "gup",
            "parameters": {"mass": est.mass, "planck_mass": est.planck_mass, "c": est.c},
            "tau": est.tau, "tau0": est.tau0, "log10_floor": est.log10_floor,
        }, indent=1) + "\n"
    else:
        text = f"tau = {est.tau!r}\ntau0 = {est.tau0!r}\nlog10_floor = {est.log10_floor}\n"
    write_output(text, s.get("out"))
    return 0


def _add_common(p, formats=("csv", "json")):
    p.add_argument("--config", metavar="PATH", help="key-value or JSON file; flags override it")
    p.add_argument("--format", choices=formats)
    p.add_argument("--out", metavar="PATH")


def _add_problem(p):
    p.add_argument("--family", choices=["A", "B", "a", "b"])
    p.add_argument("--n0", type=float)
    p.add_argument("--v0", type=float)
    p.add_argument("--eta0", type=float)
    p.add_argument("--eta1", type=float)
    p.add_argument("--eta2", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--lambda", dest="lam", type=float)


def _add_matching(p):
    p.add_argument("--k", type=float)
    p.add_argument("--epsilon", type=float)


def _add_grid(p):
    p.add_argument("--grid-start", type=float)
    p.add_argument("--grid-end", type=float)
    p.add_argument("--grid-count", type=int)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ptsusy",
        description="SUSY partner index profiles of PT-symmetric longitudinal gratings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="sample n+/-, V+/- on a grid")
    _add_problem(p)
    _add_matching(p)
    _add_grid(p)
    _add_common(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("figure", help="emit figure data with caption presets")
    p.add_argument("--figure", type=int, required=True)
    p.add_argument("--eq27-offset", action="store_true",
                   help="add the constant beta^2 v0^2/4 to V- (printed-form overlay)")
    _add_problem(p)
    _add_matching(p)
    _add_grid(p)
    _add_common(p)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("verify", help="run every identity check; exit 0 iff all pass")
    p.add_argument("--stencil-order", type=int, choices=[2, 4])
    p.add_argument("--seed", type=int)
    _add_problem(p)
    _add_matching(p)
    _add_grid(p)
    _add_common(p, ("text", "json"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="convergence of annihilation and intertwining residuals")
    p.add_argument("--stencil-order", type=int, choices=[2, 4])
    p.add_argument("--seed", type=int)
    _add_problem(p)
    _add_matching(p)
    p.add_argument("--grid-count", type=int, help="coarsest level (default 101)")
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("scatter", help="reflection/transmission of a finite grating")
    _add_problem(p)
    p.add_argument("--k", type=float, nargs="+")
    p.add_argument("--k-range", type=float, nargs=3, metavar=("START", "STOP", "COUNT"))
    p.add_argument("--periods", type=int)
    p.add_argument("--steps-per-period", type=int)
    _add_common(p)
    p.set_defaults(func=cmd_scatter)

    p = sub.add_parser("gup", help="tau and tau0 for a particle mass")
    p.add_argument("--particle", metavar="NAME")
    p.add_argument("--mass", type=float, metavar="KG")
    p.add_argument("--planck-mass", type=float, metavar="KG")
    _add_common(p, ("text", "json"))
    p.set_defaults(func=cmd_gup)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ComputationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
