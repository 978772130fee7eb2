"""Command line interface producing deterministic reports.

One JSON config file describes a job: a set (explicit bands, a preimage
spec, or an affine image of a preimage spec), a weight, degrees, and
tolerances.  Subcommands slice the same pipeline at different depths;
identical configs produce byte-identical reports.  Numeric cells are
printed with 17 significant digits.
"""

import argparse
import hashlib
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__, chebbasis, chebyshev, intervals, orthopoly, potential, preimage
from . import verify as verify_mod
from .errors import AdmissibilityError, ConfigError, WidomlabError
from .kernels import BACKEND

SUBCOMMANDS = ("capacity", "equilibrium", "green", "chebyshev", "orthopoly",
               "preimage", "verify")
_FORMATS = ("text", "csv", "json")
_WEIGHT_VARIANTS = ("unit", "sqrt_one_plus", "sqrt_one_minus",
                    "sqrt_one_minus_sq", "jacobi_root")

DEFAULT_TOLERANCES = {"remez_tol": 1e-12, "mass_tol": 1e-8, "verify_tol": 1e-7}

CSV_COLUMNS = ("n", "t_n", "widom_inf", "lower", "upper", "norm2",
               "widom2_sq", "two_S", "eq_sup", "eq_l2")


def _fail(path, message):
    raise ConfigError(f"{path}: {message}")


def _expect_map(node, path, allowed):
    if not isinstance(node, dict):
        _fail(path, "expected an object")
    for key in node:
        if key not in allowed:
            _fail(f"{path}.{key}", "unknown field")


def _number(node, path, positive=False):
    if isinstance(node, bool) or not isinstance(node, (int, float)):
        _fail(path, "expected a number")
    if positive and not node > 0:
        _fail(path, "must be positive")
    return node


def _pair(node, path):
    if not isinstance(node, list) or len(node) != 2:
        _fail(path, "expected a pair [a, b]")
    a = _number(node[0], f"{path}[0]")
    b = _number(node[1], f"{path}[1]")
    if not a < b:
        _fail(path, "endpoints out of order")
    return (a, b)


def _parse_preimage(node, path):
    _expect_map(node, path, {"variant", "s_coeffs"})
    if "variant" not in node or "s_coeffs" not in node:
        _fail(path, "needs variant and s_coeffs")
    variant = node["variant"]
    if variant not in preimage.VARIANTS:
        _fail(f"{path}.variant", f"unknown variant {variant!r}")
    coeffs = node["s_coeffs"]
    if not isinstance(coeffs, list) or len(coeffs) < 2:
        _fail(f"{path}.s_coeffs", "expected a coefficient list of degree >= 1")
    for k, c in enumerate(coeffs):
        _number(c, f"{path}.s_coeffs[{k}]")
    try:
        return preimage.PreimageSpec(variant, tuple(coeffs))
    except ValueError as exc:
        _fail(path, str(exc))


@dataclass(frozen=True)
class JobConfig:
    """Validated job description plus its canonical form."""

    bands: tuple
    preimage_spec: object
    affine_target: tuple
    weight_variant: str
    alpha: float
    beta: float
    degrees: tuple
    remez_tol: float
    mass_tol: float
    verify_tol: float
    fmt: str
    svg: object
    out: object
    canonical: dict

    @property
    def set_kind(self):
        if self.bands is not None:
            return "bands"
        if self.preimage_spec is None:
            return "none"
        return "affine" if self.affine_target is not None else "preimage"


def parse_config(text):
    """Parse and validate a JSON job config."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"config is not valid JSON: line {exc.lineno} column {exc.colno}: {exc.msg}")
    _expect_map(raw, "config", {"set", "weight", "degrees", "tolerances", "output"})

    bands = None
    spec = None
    target = None
    if "set" in raw:
        node = raw["set"]
        _expect_map(node, "set", {"bands", "preimage", "affine"})
        given = [k for k in ("bands", "preimage", "affine") if k in node]
        if len(given) != 1:
            _fail("set", "exactly one of bands, preimage, affine must be present")
        if given[0] == "bands":
            if not isinstance(node["bands"], list) or not node["bands"]:
                _fail("set.bands", "expected a nonempty list of pairs")
            bands = tuple(_pair(p, f"set.bands[{j}]") for j, p in enumerate(node["bands"]))
        elif given[0] == "preimage":
            spec = _parse_preimage(node["preimage"], "set.preimage")
        else:
            _expect_map(node["affine"], "set.affine", {"preimage", "target_hull"})
            if "preimage" not in node["affine"] or "target_hull" not in node["affine"]:
                _fail("set.affine", "needs preimage and target_hull")
            spec = _parse_preimage(node["affine"]["preimage"], "set.affine.preimage")
            target = _pair(node["affine"]["target_hull"], "set.affine.target_hull")

    variant, alpha, beta = "unit", 0.0, 0.0
    if "weight" in raw:
        node = raw["weight"]
        _expect_map(node, "weight", {"variant", "alpha", "beta"})
        variant = node.get("variant", "unit")
        if variant not in _WEIGHT_VARIANTS:
            _fail("weight.variant", f"unknown variant {variant!r}")
        if variant == "jacobi_root":
            alpha = _number(node.get("alpha", 0), "weight.alpha")
            beta = _number(node.get("beta", 0), "weight.beta")
            if alpha < 0 or beta < 0:
                _fail("weight", "exponents must be nonnegative")
            if alpha + beta < 1:
                _fail("weight", "jacobi_root needs alpha + beta >= 1")
        elif "alpha" in node or "beta" in node:
            _fail("weight", "alpha and beta are only valid for jacobi_root")

    degrees = None
    if "degrees" in raw:
        node = raw["degrees"]
        if not isinstance(node, list) or not node:
            _fail("degrees", "expected a nonempty list")
        for j, d in enumerate(node):
            if isinstance(d, bool) or not isinstance(d, int) or d < 1:
                _fail(f"degrees[{j}]", "degrees must be integers >= 1")
        degrees = tuple(node)

    tol = dict(DEFAULT_TOLERANCES)
    if "tolerances" in raw:
        node = raw["tolerances"]
        _expect_map(node, "tolerances", set(DEFAULT_TOLERANCES))
        for key in node:
            tol[key] = _number(node[key], f"tolerances.{key}", positive=True)

    fmt, svg, out = "text", None, None
    if "output" in raw:
        node = raw["output"]
        _expect_map(node, "output", {"format", "svg", "out"})
        fmt = node.get("format", "text")
        if fmt not in _FORMATS:
            _fail("output.format", f"expected one of {_FORMATS}")
        svg = node.get("svg")
        out = node.get("out")
        for name, val in (("svg", svg), ("out", out)):
            if val is not None and not isinstance(val, str):
                _fail(f"output.{name}", "expected a string path")

    canonical = {}
    if bands is not None:
        canonical["set"] = {"bands": [list(p) for p in bands]}
    elif target is not None:
        canonical["set"] = {"affine": {
            "preimage": {"variant": spec.variant,
                         "s_coeffs": [_json_number(c) for c in spec.s_coeffs]},
            "target_hull": list(target)}}
    elif spec is not None:
        canonical["set"] = {"preimage": {
            "variant": spec.variant,
            "s_coeffs": [_json_number(c) for c in spec.s_coeffs]}}
    weight_block = {"variant": variant}
    if variant == "jacobi_root":
        weight_block["alpha"] = alpha
        weight_block["beta"] = beta
    canonical["weight"] = weight_block
    if degrees is not None:
        canonical["degrees"] = list(degrees)
    canonical["tolerances"] = {k: tol[k] for k in sorted(tol)}
    canonical["output"] = {"format": fmt, "svg": svg, "out": out}

    return JobConfig(
        bands=bands, preimage_spec=spec, affine_target=target,
        weight_variant=variant, alpha=float(alpha), beta=float(beta),
        degrees=degrees, remez_tol=tol["remez_tol"], mass_tol=tol["mass_tol"],
        verify_tol=tol["verify_tol"], fmt=fmt, svg=svg, out=out,
        canonical=canonical)


def _json_number(value):
    # exact rationals from integer JSON input survive the round trip
    if isinstance(value, int):
        return value
    from fractions import Fraction
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else float(value)
    return value


def serialize_config(config):
    """Canonical text form; parsing it again is the identity."""
    return json.dumps(config.canonical, indent=2, sort_keys=True) + "\n"


def config_digest(config):
    return hashlib.sha256(serialize_config(config).encode()).hexdigest()


def read_report(text):
    """Parse a JSON report produced by this CLI back into a dict."""
    data = json.loads(text)
    if not isinstance(data, dict) or "provenance" not in data:
        raise ConfigError("not a report document")
    return data


@dataclass(frozen=True)
class Row:
    n: int
    t_n: float
    widom_inf: float
    lower: float
    upper: float
    norm2: float
    widom2_sq: float
    two_s: float
    eq_sup: bool
    eq_l2: bool
    failed: bool


@dataclass(frozen=True)
class Report:
    subcommand: str
    summary: tuple      # ordered (key, value) pairs
    rows: tuple
    provenance: tuple
    lines: tuple = ()   # extra preformatted lines (verify)

    @property
    def any_failed(self):
        return any(r.failed for r in self.rows)


def _sig(x):
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _resolve_problem(config):
    """Interval set, weight, and measure frame from a validated config."""
    if config.set_kind == "bands":
        K = intervals.normalize(config.bands)
        if config.weight_variant == "jacobi_root":
            weight = chebyshev.WeightSpec("jacobi_root", config.alpha, config.beta)
        else:
            weight = chebyshev.WeightSpec(config.weight_variant)
        return K, weight, None
    if config.set_kind == "preimage":
        spec = config.preimage_spec
        K, _ = preimage.build_set(spec)
        weight = spec.weight()
        if config.weight_variant not in ("unit", weight.kind):
            _fail("weight.variant",
                  f"preimage variant {spec.variant!r} fixes the weight to {weight.kind!r}")
        return K, weight, None
    if config.set_kind == "affine":
        inst = preimage.affine_instance(config.preimage_spec, config.affine_target)
        if config.weight_variant not in ("unit", inst.weight.kind):
            _fail("weight.variant",
                  f"preimage variant {inst.spec.variant!r} fixes the weight to {inst.weight.kind!r}")
        return inst.set, inst.weight, inst
    _fail("set", "this subcommand needs a set spec")


def _compute_rows(K, eq, weight, config):
    """Full per-degree rows: sup side, L2 side, and their bound flags."""
    w_hull = weight.resolve_hull(K)
    log_cap = potential.log_capacity(eq)
    cap_unit = math.exp(log_cap) * 2.0 / (w_hull[1] - w_hull[0])
    charge = 0.5 * (weight.alpha + weight.beta)
    floor = 2.0 * cap_unit ** charge
    try:
        lower, upper = chebyshev.sup_bounds(eq, weight)
    except ValueError:
        lower, upper = math.nan, math.nan

    measure = orthopoly.JacobiOnEq(eq, weight.alpha, weight.beta,
                                   reference_hull=w_hull)
    n_max = max(config.degrees)
    ortho = orthopoly.stieltjes(measure, n_max)
    s_val = orthopoly.entropy(measure)
    two_s = 2.0 * s_val
    ends_in = (K.contains(w_hull[0]) and K.contains(w_hull[1])
               and weight.alpha + weight.beta >= 1
               and float(weight.alpha).is_integer() and float(weight.beta).is_integer())

    rows, iterations = [], []
    for n in config.degrees:
        sol = chebyshev.remez(K, weight, n, eq=eq, tol=config.remez_tol)
        iterations.append((n, sol.iterations))
        wi = chebyshev.widom_inf(sol, eq)
        w2sq = orthopoly.widom2_sq(ortho, n)
        failed = False
        if not math.isnan(lower):
            failed = wi < lower - config.verify_tol or wi > upper + config.verify_tol
        failed = failed or w2sq < s_val - config.verify_tol
        if ends_in:
            failed = failed or w2sq < two_s - config.verify_tol
        rows.append(Row(
            n=n, t_n=sol.level, widom_inf=wi, lower=lower, upper=upper,
            norm2=ortho.norms[n], widom2_sq=w2sq, two_s=two_s,
            eq_sup=abs(wi - floor) <= config.verify_tol,
            eq_l2=abs(w2sq - two_s) <= config.verify_tol,
            failed=failed))
    return rows, iterations, ortho, s_val


def _provenance(config, iterations=None):
    prov = [("package_version", __version__),
            ("kernels", BACKEND),
            ("config_sha256", config_digest(config)),
            ("remez_tol", config.remez_tol),
            ("mass_tol", config.mass_tol),
            ("verify_tol", config.verify_tol)]
    if iterations:
        prov.append(("remez_iterations",
                     " ".join(f"{n}:{it}" for n, it in iterations)))
    return tuple(prov)


def run(config, subcommand):
    """Execute one subcommand; returns (Report, exit_code)."""
    if subcommand == "verify":
        return _run_verify(config)
    if config.set_kind == "none":
        _fail("set", f"subcommand {subcommand!r} needs a set spec")

    if subcommand == "preimage":
        if config.set_kind not in ("preimage", "affine"):
            _fail("set", "the preimage subcommand needs a preimage or affine set spec")
        audit = preimage.analyze(config.preimage_spec)
        if not audit.admissible:
            spec = config.preimage_spec
            summary = (("variant", spec.variant), ("degree", spec.degree),
                       ("admissible", False), ("reason", audit.reason),
                       ("critical_values",
                        " ".join(_sig(v) for v in audit.critical_values)),
                       ("verdicts", " ".join(audit.verdicts)))
            return Report("preimage", summary, (), _provenance(config)), 1

    K, weight, inst = _resolve_problem(config)
    eq = potential.equilibrium(K)
    if abs(eq.mass_residual) > config.mass_tol:
        raise potential.ConvergenceError(
            "equilibrium mass residual above tolerance", residual=eq.mass_residual)
    summary = [("set", " ".join(f"[{a!r}, {b!r}]" for a, b in K.bands))]

    if subcommand == "capacity":
        log_cap = potential.log_capacity(eq)
        summary += [("capacity", math.exp(log_cap)),
                    ("log_capacity", log_cap),
                    ("mass_residual", eq.mass_residual),
                    ("frostman_residual", eq.frostman_residual)]
        return Report("capacity", tuple(summary), (), _provenance(config)), 0

    if subcommand == "equilibrium":
        summary += [("band_masses", " ".join(_sig(m) for m in eq.band_masses)),
                    ("gap_points", " ".join(_sig(r) for r in eq.gap_roots)),
                    ("mass_residual", eq.mass_residual),
                    ("frostman_residual", eq.frostman_residual)]
        return Report("equilibrium", tuple(summary), (), _provenance(config)), 0

    if subcommand == "green":
        pw = potential.pw_data(eq)
        w_hull = weight.resolve_hull(K)
        summary += [("pw_sum", pw.total),
                    ("gap_points", " ".join(_sig(p) for p in pw.points)),
                    ("gap_values", " ".join(_sig(v) for v in pw.values)),
                    ("green_left_end", potential.green(eq, w_hull[0])),
                    ("green_right_end", potential.green(eq, w_hull[1]))]
        report = Report("green", tuple(summary), (), _provenance(config))
        if config.svg:
            _write_svg(config.svg, eq)
        return report, 0

    if subcommand in ("chebyshev", "orthopoly"):
        if config.degrees is None:
            _fail("degrees", f"subcommand {subcommand!r} needs a degree list")
        rows, iterations, ortho, s_val = _compute_rows(K, eq, weight, config)
        if subcommand == "orthopoly":
            summary += [("entropy", s_val),
                        ("recurrence_a", " ".join(_sig(a) for a in ortho.recurrence_a)),
                        ("recurrence_b", " ".join(_sig(b) for b in ortho.recurrence_b))]
        report = Report(subcommand, tuple(summary), tuple(rows),
                        _provenance(config, iterations))
        if config.svg:
            sol = chebyshev.remez(K, weight, max(config.degrees), eq=eq,
                                  tol=config.remez_tol)
            _write_svg(config.svg, eq, sol)
        return report, 3 if report.any_failed else 0

    if subcommand == "preimage":
        spec = config.preimage_spec
        oracle = preimage.exact_invariants(spec)
        sat = preimage.saturation_verify(spec, tol=config.verify_tol)
        summary += [("variant", spec.variant),
                    ("degree", spec.degree),
                    ("admissible", audit.admissible),
                    ("critical_values", " ".join(_sig(v) for v in audit.critical_values)),
                    ("verdicts", " ".join(audit.verdicts)),
                    ("branch_counts", " ".join(str(c) for c in audit.branch_counts)),
                    ("capacity_exact", oracle.capacity),
                    ("t_exact", f"{oracle.t_exact.numerator}/{oracle.t_exact.denominator}")]
        if inst is not None:
            summary += [("target_hull", f"[{inst.target_hull[0]!r}, {inst.target_hull[1]!r}]"),
                        ("capacity_mapped", math.exp(inst.log_capacity)),
                        ("level_mapped",
                         f"{inst.level_exact.numerator}/{inst.level_exact.denominator}")]
        for c in sat.clauses:
            summary.append((f"clause_{c.label}_{c.name}",
                            f"{'pass' if c.passed else 'FAIL'} ({_sig(c.error)})"))
        rows, iterations = (), None
        if config.degrees is not None:
            rows, iterations, _, _ = _compute_rows(K, eq, weight, config)
        report = Report("preimage", tuple(summary), tuple(rows),
                        _provenance(config, iterations))
        if config.svg:
            _write_svg(config.svg, eq)
        return report, 0 if sat.passed else 1

    _fail("subcommand", f"unknown subcommand {subcommand!r}")


def _run_verify(config):
    if config.set_kind in ("preimage", "affine"):
        spec = config.preimage_spec
        sat = preimage.saturation_verify(spec, tol=config.verify_tol)
        lines = []
        for c in sat.clauses:
            tag = "pass" if c.passed else "FAIL"
            lines.append(f"clause ({c.label}) {c.name} [{tag}] error {_sig(c.error)}")
        summary = (("target", sat.description),
                   ("passed", sat.passed))
        report = Report("verify", summary, (), _provenance(config), tuple(lines))
        return report, 0 if sat.passed else 1
    if config.set_kind == "bands":
        K = intervals.normalize(config.bands)
        eq = potential.equilibrium(K)
        weight = chebyshev.WeightSpec(config.weight_variant, config.alpha, config.beta)
        degrees = config.degrees or tuple(range(1, 9))
        cfg = config if config.degrees else _with_degrees(config, degrees)
        rows, iterations, _, _ = _compute_rows(K, eq, weight, cfg)
        ok = not any(r.failed for r in rows)
        summary = (("target", "bound sandwich on explicit bands"), ("passed", ok))
        report = Report("verify", summary, tuple(rows),
                        _provenance(config, iterations))
        return report, 0 if ok else 1
    results = verify_mod.run_criteria()
    lines = tuple(r.line() for r in results)
    ok = all(r.passed for r in results)
    summary = (("target", "embedded acceptance catalog"), ("passed", ok))
    return Report("verify", summary, (), _provenance(config), lines), 0 if ok else 1


def _with_degrees(config, degrees):
    import dataclasses
    return dataclasses.replace(config, degrees=tuple(degrees))


def render_text(report):
    lines = [f"widomlab {report.subcommand}"]
    for key, value in report.summary:
        lines.append(f"  {key} = {_sig(value)}")
    lines.extend(report.lines)
    if report.rows:
        header = " ".join(f"{c:>24}" for c in CSV_COLUMNS) + "  status"
        lines.append(header)
        for r in report.rows:
            cells = [str(r.n), _sig(r.t_n), _sig(r.widom_inf), _sig(r.lower),
                     _sig(r.upper), _sig(r.norm2), _sig(r.widom2_sq),
                     _sig(r.two_s), str(r.eq_sup).lower(), str(r.eq_l2).lower()]
            status = "FAILED" if r.failed else "ok"
            lines.append(" ".join(f"{c:>24}" for c in cells) + f"  {status}")
    lines.append("provenance:")
    for key, value in report.provenance:
        lines.append(f"  {key} = {_sig(value)}")
    return "\n".join(lines) + "\n"


def render_csv(report):
    lines = [",".join(CSV_COLUMNS)]
    for r in report.rows:
        lines.append(",".join([
            str(r.n), _sig(r.t_n), _sig(r.widom_inf), _sig(r.lower),
            _sig(r.upper), _sig(r.norm2), _sig(r.widom2_sq), _sig(r.two_s),
            str(r.eq_sup).lower(), str(r.eq_l2).lower()]))
    return "\n".join(lines) + "\n"


def render_json(report):
    doc = {
        "subcommand": report.subcommand,
        "summary": {k: v for k, v in report.summary},
        "lines": list(report.lines),
        "rows": [{
            "n": r.n, "t_n": r.t_n, "widom_inf": r.widom_inf,
            "lower": None if math.isnan(r.lower) else r.lower,
            "upper": None if math.isnan(r.upper) else r.upper,
            "norm2": r.norm2, "widom2_sq": r.widom2_sq, "two_S": r.two_s,
            "eq_sup": r.eq_sup, "eq_l2": r.eq_l2, "failed": r.failed,
        } for r in report.rows],
        "provenance": {k: v for k, v in report.provenance},
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


_RENDERERS = {"text": render_text, "csv": render_csv, "json": render_json}


def _svg_path(points, color, width="1.5"):
    d = " ".join(f"{'M' if i == 0 else 'L'}{x:.3f},{y:.3f}"
                 for i, (x, y) in enumerate(points))
    return f'<path d="{d}" fill="none" stroke="{color}" stroke-width="{width}"/>'


def _write_svg(path, eq, sol=None):
    """Two-panel deterministic plot: Green function, then the solution."""
    W, H, pad = 800.0, 600.0, 50.0
    panel_h = (H - 3 * pad) / 2 if sol is not None else H - 2 * pad
    hull = eq.set.hull
    span = hull[1] - hull[0]
    xs = np.linspace(hull[0] - 0.05 * span, hull[1] + 0.05 * span, 501)
    gs = np.array([potential.green(eq, float(x)) for x in xs])
    gmax = max(float(gs.max()), 1e-12)

    def sx(x):
        return pad + (x - xs[0]) / (xs[-1] - xs[0]) * (W - 2 * pad)

    def sy(v, vmin, vmax, top):
        return top + (vmax - v) / (vmax - vmin) * panel_h

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W:.0f}" '
             f'height="{H:.0f}" viewBox="0 0 {W:.0f} {H:.0f}">',
             '<rect width="100%" height="100%" fill="white"/>']
    top = pad
    parts.append(_svg_path([(sx(x), sy(v, 0.0, gmax, top)) for x, v in zip(xs, gs)], "#1f77b4"))
    for a, b in eq.set.bands:
        y = sy(0.0, 0.0, gmax, top)
        parts.append(_svg_path([(sx(a), y), (sx(b), y)], "#000000", "3"))
    parts.append(f'<text x="{pad:.0f}" y="{pad - 12:.0f}" font-size="14">'
                 'Green function over the hull</text>')

    if sol is not None:
        top2 = 2 * pad + panel_h
        vals = sol.weighted_error(xs)
        vmax = max(float(np.abs(vals).max()), sol.level) * 1.05
        parts.append(_svg_path(
            [(sx(x), sy(v, -vmax, vmax, top2)) for x, v in zip(xs, vals)], "#d62728"))
        for lev in (sol.level, -sol.level):
            y = sy(lev, -vmax, vmax, top2)
            parts.append(_svg_path([(sx(xs[0]), y), (sx(xs[-1]), y)], "#888888", "1"))
        for p in sol.alternation:
            x = sx(p)
            y = sy(float(sol.weighted_error(np.array([p]))[0]), -vmax, vmax, top2)
            parts.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="4" fill="#2ca02c"/>')
        parts.append(f'<text x="{pad:.0f}" y="{top2 - 12:.0f}" font-size="14">'
                     f'weighted error at degree {sol.degree} with alternation</text>')
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="widomlab",
        description="capacity, equilibrium, and extremal polynomial reports "
                    "on unions of intervals")
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", required=True, help="path to a JSON job config")
    parser.add_argument("--format", choices=_FORMATS, default=None)
    parser.add_argument("--svg", default=None)
    parser.add_argument("--out", default=None)
    args = parser.parse_args(argv)

    try:
        with open(args.config) as fh:
            text = fh.read()
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    try:
        config = parse_config(text)
        if args.format:
            config = _replace_output(config, fmt=args.format)
        if args.svg:
            config = _replace_output(config, svg=args.svg)
        if args.out:
            config = _replace_output(config, out=args.out)
        report, code = run(config, args.subcommand)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except WidomlabError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3

    rendered = _RENDERERS[config.fmt](report)
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(rendered)
    else:
        sys.stdout.write(rendered)
    return code


def _replace_output(config, fmt=None, svg=None, out=None):
    import dataclasses
    updates = {}
    canonical = dict(config.canonical)
    out_block = dict(canonical.get("output", {"format": config.fmt, "svg": config.svg,
                                              "out": config.out}))
    if fmt is not None:
        updates["fmt"] = fmt
        out_block["format"] = fmt
    if svg is not None:
        updates["svg"] = svg
        out_block["svg"] = svg
    if out is not None:
        updates["out"] = out
        out_block["out"] = out
    canonical["output"] = out_block
    updates["canonical"] = canonical
    return dataclasses.replace(config, **updates)


if __name__ == "__main__":
    sys.exit(main())
