"""Command-line front end: problem files in, reports out.

A problem file is plain key/value text (schema in the README): variables and
the defining polynomial at top level, then optional repeated [singular_point]
sections, an optional [family] section, and an optional [policy] section.
Reports render as aligned text or as versioned JSON ("brieskorn-lab/1");
every rational in the JSON is a "p/q" string, dimensions stay integers.

Exit codes: 0 success, 1 bad input, 2 a failed internal cross-check.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .brieskorn import (StabilizationPolicy, briancon_skoda, hbar_certificate,
                        milnor_eigenspace_dim, pole_filtration_dims)
from .exactlinalg import InvariantError
from .families import (DEFAULT_SAMPLES, PencilFamily, grp_nabla_matrix,
                       pole_constancy_check, tjurina_scan)
from .gradedpoly import InputError, ParseError, Poly, parse_poly
from .jacobian import (NonIsolatedError, global_tjurina, jacobian_dims,
                       smoothness_test)
from .singularities import build_chart, hodge_filtration_dims, local_tjurina

SCHEMA = "brieskorn-lab/1"


# ---------------------------------------------------------------------------
# problem files

@dataclass(frozen=True)
class ChartData:
    point: tuple
    chart: str
    weights: tuple


@dataclass(frozen=True)
class FamilyData:
    direction: str
    samples: tuple | None = None


@dataclass
class ProblemSpec:
    variables: tuple
    polynomial: str
    singular_points: tuple = ()
    family: FamilyData | None = None
    policy: dict = field(default_factory=dict)


def _fraction(text: str, where: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{where}: {text!r} is not a rational number") from None


def _fraction_list(text: str, where: str) -> tuple:
    parts = text.replace(":", " ").replace(",", " ").split()
    if not parts:
        raise InputError(f"{where}: empty list")
    return tuple(_fraction(p, where) for p in parts)


_POLICY_KEYS = ("window", "max_power", "min_target_degree")


def parse_problem(text: str, source: str = "<input>") -> ProblemSpec:
    """Parse a problem file; errors carry the source name and line number."""
    top: dict = {}
    points: list = []
    family: dict | None = None
    policy: dict = {}
    section: str | None = None
    current: dict = top

    def fail(lineno: int, message: str):
        raise InputError(f"{source}:{lineno}: {message}")

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section == "singular_point":
                current = {"_line": lineno}
                points.append(current)
            elif section == "family":
                if family is not None:
                    fail(lineno, "only one [family] section is allowed")
                family = {"_line": lineno}
                current = family
            elif section == "policy":
                current = policy
            else:
                fail(lineno, f"unknown section [{section}]")
            continue
        if "=" not in line:
            fail(lineno, "expected 'key = value'")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not key or key.startswith("_"):
            fail(lineno, f"bad key {key!r}")
        if not value:
            fail(lineno, f"empty value for {key!r}")
        if key in current:
            fail(lineno, f"duplicate key {key!r}")
        current[key] = value
        current.setdefault("_line_" + key, lineno)

    def take(table: dict, key: str, where: str, required: bool = True):
        if key not in table:
            if required:
                fail(table.get("_line", 0), f"missing {key!r} in {where}")
            return None
        return table[key]

    variables = tuple((top.get("variables") or "").split())
    if not variables:
        raise InputError(f"{source}: missing 'variables' line")
    if len(set(variables)) != len(variables):
        fail(top["_line_variables"], "variable names must be distinct")
    if len(variables) < 3:
        fail(top["_line_variables"],
             "need at least three variables (ambient projective dimension >= 2)")
    polynomial = top.get("polynomial")
    if not polynomial:
        raise InputError(f"{source}: missing 'polynomial' line")
    for key in top:
        if not key.startswith("_line") and key not in ("variables", "polynomial"):
            fail(top["_line_" + key], f"unknown key {key!r}")

    charts = []
    for p in points:
        where = "[singular_point]"
        point = _fraction_list(take(p, "point", where), where + " point")
        chart = take(p, "chart", where)
        weights = _fraction_list(take(p, "weights", where), where + " weights")
        if len(point) != len(variables):
            fail(p["_line"], f"point needs {len(variables)} coordinates")
        if chart not in variables:
            fail(p["_line"], f"chart {chart!r} is not a variable")
        if len(weights) != len(variables) - 1:
            fail(p["_line"], f"weights: one per non-chart variable "
                             f"({len(variables) - 1} expected)")
        for key in p:
            if not key.startswith("_line") and key not in ("point", "chart", "weights"):
                fail(p["_line_" + key], f"unknown key {key!r} in {where}")
        charts.append(ChartData(point, chart, weights))

    fam = None
    if family is not None:
        direction = take(family, "direction", "[family]")
        samples = family.get("samples")
        samples = _fraction_list(samples, "[family] samples") if samples else None
        for key in family:
            if not key.startswith("_line") and key not in ("direction", "samples"):
                fail(family["_line_" + key], f"unknown key {key!r} in [family]")
        fam = FamilyData(direction, samples)

    for key, value in list(policy.items()):
        if key.startswith("_line"):
            continue
        if key not in _POLICY_KEYS:
            fail(policy["_line_" + key], f"unknown key {key!r} in [policy]")
        try:
            policy[key] = int(value)
        except ValueError:
            fail(policy["_line_" + key], f"{key} must be an integer")
    policy = {k: v for k, v in policy.items() if not k.startswith("_line")}

    return ProblemSpec(variables, polynomial, tuple(charts), fam, policy)


def load_problem(path: str) -> ProblemSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    return parse_problem(text, source=path)


# ---------------------------------------------------------------------------
# report assembly

@dataclass
class Report:
    """Everything a command computed, in JSON-native values only.

    Sections are None when the command did not touch them, so text and json
    renderings draw from one source.  Rationals are "p/q" strings.
    """
    command: str
    input_echo: dict
    smoothness: bool | None = None
    pole: dict | None = None
    hodge: dict | None = None
    alpha: str | None = None
    briancon_skoda: dict | None = None
    milnor: dict | None = None
    jacobian: dict | None = None
    family: dict | None = None
    checks: list = field(default_factory=list)
    timing: dict | None = None

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "input": self.input_echo,
            "smoothness": self.smoothness,
            "pole": self.pole,
            "hodge": self.hodge,
            "alpha": self.alpha,
            "briancon_skoda": self.briancon_skoda,
            "milnor": self.milnor,
            "jacobian": self.jacobian,
            "family": self.family,
            "checks": self.checks,
            "timing": self.timing,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Report":
        if data.get("schema") != SCHEMA:
            raise InputError(f"unsupported report schema {data.get('schema')!r}")
        return cls(command=data["command"], input_echo=data["input"],
                   smoothness=data["smoothness"], pole=data["pole"],
                   hodge=data["hodge"], alpha=data["alpha"],
                   briancon_skoda=data["briancon_skoda"], milnor=data["milnor"],
                   jacobian=data["jacobian"], family=data["family"],
                   checks=data["checks"], timing=data["timing"])


def _rat(x) -> str:
    if x == math.inf:
        return "infinity"
    return str(Fraction(x))


def _cert_json(cert) -> dict:
    return {"degree": cert.degree, "values": list(cert.values),
            "power": cert.power, "landing_degree": cert.landing_degree,
            "early_zero": cert.early_zero}


def _echo(spec: ProblemSpec) -> dict:
    return {
        "variables": list(spec.variables),
        "polynomial": spec.polynomial,
        "singular_points": [
            {"point": [_rat(c) for c in p.point], "chart": p.chart,
             "weights": [_rat(w) for w in p.weights]}
            for p in spec.singular_points],
        "family": None if spec.family is None else {
            "direction": spec.family.direction,
            "samples": None if spec.family.samples is None
            else [_rat(s) for s in spec.family.samples]},
        "policy": spec.policy or None,
    }


# ---------------------------------------------------------------------------
# section builders

def _pole_section(f: Poly, policy) -> dict:
    rep = pole_filtration_dims(f, policy)
    return {"dims": list(rep.dims), "total_dim": rep.total_dim,
            "certificates": [_cert_json(c) for c in rep.certificates]}


def _bs_section(f: Poly, policy) -> dict:
    res = briancon_skoda(f, policy)
    return {"holds": res.holds, "witness_power": res.witness_power,
            "certificate": _cert_json(res.certificate)}


def _milnor_section(f: Poly, policy) -> dict:
    n, d = f.nvars - 1, f.homogeneous_degree()
    rows = []
    for i in range(d):
        dim = milnor_eigenspace_dim(f, i, policy)
        cert = hbar_certificate(f, (n + 2) * d - i, policy)
        rows.append({"i": i, "dim": dim, "certificate": _cert_json(cert)})
    return {"eigenspaces": rows, "total": sum(r["dim"] for r in rows)}


def _jacobian_section(f: Poly) -> dict:
    n, d = f.nvars - 1, f.homogeneous_degree()
    socle = max((n + 1) * (d - 2), 0)
    k_max = socle + n + 3
    dims = jacobian_dims(f, k_max)
    out = {"dims": dims, "max_degree": k_max, "socle_degree": socle,
           "tjurina": None, "note": None}
    try:
        out["tjurina"] = global_tjurina(f)
    except NonIsolatedError as e:
        out["note"] = ("tjurina unavailable: " + str(e))
    return out


def _chart_json(chart, variables) -> dict:
    return {"point": [_rat(c) for c in chart.point],
            "chart": variables[chart.chart],
            "weights": [_rat(w) for w in chart.weights],
            "alpha": _rat(chart.alpha),
            "weighted_homogeneous": not chart.swh_tail,
            "local_tjurina": local_tjurina(chart)}


def _hodge_section(f: Poly, charts, variables, policy) -> dict:
    rep = hodge_filtration_dims(f, charts, policy)
    return {"alpha": _rat(rep.alpha),
            "hodge_dims": list(rep.hodge_dims),
            "pole_dims": list(rep.pole_dims),
            "equal_range": list(rep.equal_range),
            "strict_drop": list(rep.strict_drop),
            "charts": [_chart_json(c, variables) for c in rep.charts],
            "certificates": [_cert_json(c) for c in rep.certificates]}


def _matrix_json(m) -> list:
    return [[_rat(m.entry(r, c)) for c in range(m.ncols)] for r in range(m.nrows)]


def _family_section(f: Poly, spec: ProblemSpec, policy, samples, q_max: int,
                    threads: int) -> dict:
    direction = parse_poly(spec.family.direction, spec.variables)
    fam = PencilFamily.pencil(f, direction)
    ss = samples if samples is not None else (spec.family.samples or DEFAULT_SAMPLES)
    ss = tuple(Fraction(s) for s in ss)
    constancy = pole_constancy_check(fam, ss, policy, threads=threads)
    scan = tjurina_scan(fam, ss, threads=threads)
    out = {
        "samples": [_rat(s) for s in ss],
        "pole_table": [{"s": _rat(s), "dims": list(dims)} for s, dims in constancy.table],
        "pole_constant": constancy.constant,
        "tjurina_table": [{"s": _rat(r.sample), "tjurina": r.tjurina,
                           "tail": list(r.tail)} for r in scan.rows],
        "tjurina_jumps": [_rat(s) for s in scan.jumps],
        "grp_nabla": None,
        "note": None,
    }
    if not constancy.constant:
        out["note"] = "graded connection matrices refused: pole dims vary over the samples"
        return out
    s0 = ss[0]
    mats = []
    for q in range(q_max + 1):
        m = grp_nabla_matrix(fam, s0, q, policy, samples=ss)
        mats.append({"q": q, "s0": _rat(s0), "source_dim": m.ncols,
                     "target_dim": m.nrows, "entries": _matrix_json(m)})
    out["grp_nabla"] = mats
    return out


# ---------------------------------------------------------------------------
# rendering

def _fmt_row(cells, widths) -> str:
    return "  ".join(str(c).rjust(w) for c, w in zip(cells, widths)).rstrip()


def _table(headers, rows) -> list:
    cells = [[str(c) for c in row] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h)
              for i, h in enumerate(headers)]
    out = [_fmt_row(headers, widths)]
    for row in cells:
        out.append(_fmt_row(row, widths))
    return out


def _render_text(report: Report) -> str:
    lines = []
    echo = report.input_echo
    lines.append(f"brieskorn-lab {report.command}")
    lines.append(f"  f = {echo['polynomial']}  in  Q[{', '.join(echo['variables'])}]")
    if report.smoothness is not None:
        lines.append(f"  smooth: {'yes' if report.smoothness else 'no'}")
    if report.pole is not None:
        lines.append("")
        lines.append("pole filtration  dim P^(n-q), q = 0..n:")
        lines.append("  " + "  ".join(str(v) for v in report.pole["dims"])
                     + f"   (total {report.pole['total_dim']})")
        rows = [(c["degree"], c["values"][-1], c["power"], c["landing_degree"],
                 " ".join(str(v) for v in c["values"]))
                for c in report.pole["certificates"]]
        for line in _table(("degree", "dim", "power", "landing", "rank trace"), rows):
            lines.append("  " + line)
    if report.hodge is not None:
        h = report.hodge
        lines.append("")
        lines.append(f"hodge filtration  (alpha = {h['alpha']}):")
        rows = [(q, h["hodge_dims"][q], h["pole_dims"][q],
                 "=" if h["hodge_dims"][q] == h["pole_dims"][q] else "<")
                for q in range(len(h["hodge_dims"]))]
        for line in _table(("q", "dim F^(n-q)", "dim P^(n-q)", ""), rows):
            lines.append("  " + line)
        if h["strict_drop"]:
            lines.append(f"  strict drop at q = {', '.join(str(q) for q in h['strict_drop'])}")
        else:
            lines.append("  hodge and pole filtrations agree")
        for c in h["charts"]:
            lines.append(f"  singular point ({':'.join(c['point'])}), chart {c['chart']}: "
                         f"weights ({', '.join(c['weights'])}), alpha = {c['alpha']}, "
                         f"local tjurina {c['local_tjurina']}")
    if report.alpha is not None and report.hodge is None:
        lines.append(f"  alpha: {report.alpha}")
    if report.briancon_skoda is not None:
        b = report.briancon_skoda
        lines.append("")
        if b["holds"]:
            lines.append(f"briancon-skoda: holds, f^{b['witness_power']} omega_0 "
                         "lies in df ^ d(Omega^(n-1))")
        else:
            lines.append("briancon-skoda: fails (the class of omega_0 is nonzero "
                         "in the torsion-free quotient)")
    if report.milnor is not None:
        lines.append("")
        lines.append("milnor fiber monodromy eigenspaces  dim H^n(F)_(i/d):")
        rows = [(r["i"], r["dim"]) for r in report.milnor["eigenspaces"]]
        for line in _table(("i", "dim"), rows):
            lines.append("  " + line)
        lines.append(f"  total {report.milnor['total']}")
    if report.jacobian is not None:
        j = report.jacobian
        lines.append("")
        lines.append(f"jacobian ring dims, degrees 0..{j['max_degree']} "
                     f"(socle degree {j['socle_degree']}):")
        lines.append("  " + " ".join(str(v) for v in j["dims"]))
        if j["tjurina"] is not None:
            lines.append(f"  global tjurina: {j['tjurina']}")
        if j["note"]:
            lines.append(f"  note: {j['note']}")
    if report.family is not None:
        fam = report.family
        lines.append("")
        lines.append("family f + s * direction:")
        rows = [(row["s"], " ".join(str(v) for v in row["dims"])) for row in fam["pole_table"]]
        for line in _table(("s", "pole dims"), rows):
            lines.append("  " + line)
        lines.append(f"  pole dims constant: {'yes' if fam['pole_constant'] else 'no'}")
        rows = [(row["s"], row["tjurina"], " ".join(str(v) for v in row["tail"]))
                for row in fam["tjurina_table"]]
        for line in _table(("s", "tjurina", "jacobian tail"), rows):
            lines.append("  " + line)
        if fam["tjurina_jumps"]:
            lines.append("  tjurina jumps at s = " + ", ".join(fam["tjurina_jumps"]))
        else:
            lines.append("  no tjurina jumps over the samples")
        if fam["note"]:
            lines.append(f"  note: {fam['note']}")
        for m in fam["grp_nabla"] or ():
            lines.append(f"  graded connection matrix, q = {m['q']} at s0 = {m['s0']} "
                         f"({m['target_dim']} x {m['source_dim']}):")
            if not m["entries"] or not m["entries"][0]:
                lines.append("    (zero-dimensional)")
            else:
                width = max(len(e) for row in m["entries"] for e in row)
                for row in m["entries"]:
                    lines.append("    [ " + "  ".join(e.rjust(width) for e in row) + " ]")
    if report.checks:
        lines.append("")
        lines.append("cross-checks:")
        for c in report.checks:
            lines.append(f"  [{'pass' if c['passed'] else 'FAIL'}] {c['name']}")
    if report.timing is not None:
        lines.append("")
        total = report.timing.get("total_seconds")
        lines.append(f"time: {total:.2f}s" if total is not None else "time: n/a")
    return "\n".join(lines) + "\n"


def render_report(report: Report, as_json: bool) -> str:
    if as_json:
        return json.dumps(report.to_json(), indent=2, sort_keys=False) + "\n"
    return _render_text(report)


def parse_report(text: str) -> Report:
    return Report.from_json(json.loads(text))


# ---------------------------------------------------------------------------
# commands

def _prepare(spec: ProblemSpec, args) -> tuple:
    try:
        f = parse_poly(spec.polynomial, spec.variables)
    except ParseError as e:
        raise InputError(f"polynomial: {e}") from None
    if f.is_zero() or not f.is_homogeneous():
        raise InputError("the defining polynomial must be homogeneous and nonzero")
    overrides = dict(spec.policy)
    if args.stab_window is not None:
        overrides["window"] = args.stab_window
    if args.stab_max is not None:
        overrides["max_power"] = args.stab_max
    policy = StabilizationPolicy(
        window=overrides.get("window"),
        min_target_degree=overrides.get("min_target_degree"),
        max_power=overrides.get("max_power", 20))
    return f, policy


def _build_charts(spec: ProblemSpec, f: Poly):
    charts = []
    for p in spec.singular_points:
        charts.append(build_chart(f, p.point, spec.variables.index(p.chart), p.weights))
    return tuple(charts)


def _samples_arg(args):
    if args.samples is None:
        return None
    return tuple(_fraction(s, "--samples") for s in args.samples.replace(",", " ").split())


def cmd_analyze(spec: ProblemSpec, args) -> Report:
    f, policy = _prepare(spec, args)
    report = Report("analyze", _echo(spec))
    t0 = time.perf_counter()
    report.smoothness = smoothness_test(f)
    report.pole = _pole_section(f, policy)
    report.checks.append({"name": "pole dims nondecreasing in q", "passed": True})
    report.briancon_skoda = _bs_section(f, policy)
    report.milnor = _milnor_section(f, policy)
    report.checks.append(
        {"name": "milnor eigenspace dims agree at both landing degrees", "passed": True})
    report.jacobian = _jacobian_section(f)
    if spec.singular_points or report.smoothness:
        charts = _build_charts(spec, f)
        report.hodge = _hodge_section(f, charts, spec.variables, policy)
        report.alpha = report.hodge["alpha"]
        if charts:
            report.checks.append(
                {"name": "local tjurina numbers sum to the global one", "passed": True})
        report.checks.append(
            {"name": "hodge dims within pole dims, equal where alpha forces it",
             "passed": True})
    if spec.family is not None:
        report.family = _family_section(
            f, spec, policy, _samples_arg(args), args.q_max
            if args.q_max is not None else f.nvars - 1, args.threads)
    if not args.no_timing:
        report.timing = {"total_seconds": round(time.perf_counter() - t0, 3)}
    return report


def cmd_pole(spec: ProblemSpec, args) -> Report:
    f, policy = _prepare(spec, args)
    report = Report("pole", _echo(spec))
    t0 = time.perf_counter()
    report.pole = _pole_section(f, policy)
    report.checks.append({"name": "pole dims nondecreasing in q", "passed": True})
    if not args.no_timing:
        report.timing = {"total_seconds": round(time.perf_counter() - t0, 3)}
    return report


def cmd_hodge(spec: ProblemSpec, args) -> Report:
    f, policy = _prepare(spec, args)
    report = Report("hodge", _echo(spec))
    t0 = time.perf_counter()
    report.smoothness = smoothness_test(f)
    if not report.smoothness and not spec.singular_points:
        raise InputError("hodge on a singular hypersurface needs [singular_point] "
                         "sections with weighted-homogeneous local data")
    charts = _build_charts(spec, f)
    report.hodge = _hodge_section(f, charts, spec.variables, policy)
    report.alpha = report.hodge["alpha"]
    if charts:
        report.checks.append(
            {"name": "local tjurina numbers sum to the global one", "passed": True})
    report.checks.append(
        {"name": "hodge dims within pole dims, equal where alpha forces it",
         "passed": True})
    if not args.no_timing:
        report.timing = {"total_seconds": round(time.perf_counter() - t0, 3)}
    return report


def cmd_jacobian(spec: ProblemSpec, args) -> Report:
    f, _ = _prepare(spec, args)
    report = Report("jacobian", _echo(spec))
    t0 = time.perf_counter()
    report.smoothness = smoothness_test(f)
    report.jacobian = _jacobian_section(f)
    if not args.no_timing:
        report.timing = {"total_seconds": round(time.perf_counter() - t0, 3)}
    return report


def cmd_milnor(spec: ProblemSpec, args) -> Report:
    f, policy = _prepare(spec, args)
    report = Report("milnor", _echo(spec))
    t0 = time.perf_counter()
    report.milnor = _milnor_section(f, policy)
    report.checks.append(
        {"name": "milnor eigenspace dims agree at both landing degrees", "passed": True})
    if not args.no_timing:
        report.timing = {"total_seconds": round(time.perf_counter() - t0, 3)}
    return report


def cmd_bs(spec: ProblemSpec, args) -> Report:
    f, policy = _prepare(spec, args)
    report = Report("bs", _echo(spec))
    t0 = time.perf_counter()
    report.briancon_skoda = _bs_section(f, policy)
    if not args.no_timing:
        report.timing = {"total_seconds": round(time.perf_counter() - t0, 3)}
    return report


def cmd_family(spec: ProblemSpec, args) -> Report:
    f, policy = _prepare(spec, args)
    if spec.family is None:
        raise InputError("the problem file has no [family] section")
    report = Report("family", _echo(spec))
    t0 = time.perf_counter()
    report.family = _family_section(
        f, spec, policy, _samples_arg(args),
        args.q_max if args.q_max is not None else f.nvars - 1, args.threads)
    if report.family["grp_nabla"] is not None:
        report.checks.append(
            {"name": "graded connection well defined on the chosen presentations",
             "passed": True})
    if not args.no_timing:
        report.timing = {"total_seconds": round(time.perf_counter() - t0, 3)}
    return report


_COMMANDS = {
    "analyze": cmd_analyze,
    "pole": cmd_pole,
    "hodge": cmd_hodge,
    "jacobian": cmd_jacobian,
    "milnor": cmd_milnor,
    "bs": cmd_bs,
    "family": cmd_family,
}


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="brieskorn-lab",
        description="Exact pole-order and Hodge filtration computations for "
                    "complements of projective hypersurfaces.")
    sub = ap.add_subparsers(dest="command", metavar="command")
    for name, help_text in (
            ("analyze", "full report: smoothness, pole/hodge dims, invariants"),
            ("pole", "pole-order filtration dims with certificates"),
            ("hodge", "hodge vs pole filtration (needs singular point data)"),
            ("jacobian", "jacobian ring dims and global tjurina number"),
            ("milnor", "milnor fiber monodromy eigenspace dims"),
            ("bs", "does some power of f kill omega_0 in the brieskorn module"),
            ("family", "pencil scan: pole constancy, tjurina jumps, connection")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", metavar="PATH", help="problem file")
        p.add_argument("--q-max", type=int, default=None, metavar="INT",
                       help="largest q for the family connection matrices")
        p.add_argument("--json", action="store_true", help="machine-readable report")
        p.add_argument("--samples", metavar="LIST", default=None,
                       help="comma-separated rational parameter values")
        p.add_argument("--stab-window", type=int, default=None, metavar="INT",
                       help="constant-run length accepted as stabilized")
        p.add_argument("--stab-max", type=int, default=None, metavar="INT",
                       help="largest power of f tried before giving up")
        p.add_argument("--threads", type=int, default=1, metavar="INT",
                       help="worker processes for family samples")
        p.add_argument("--no-timing", action="store_true",
                       help="omit wall-clock times (reproducible output)")
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if not args.command:
        _parser().print_help()
        return 1
    try:
        if not args.input:
            raise InputError("--input PATH is required")
        spec = load_problem(args.input)
        report = _COMMANDS[args.command](spec, args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except InvariantError as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(render_report(report, args.json))
    return 0


if __name__ == "__main__":
    sys.exit(main())
