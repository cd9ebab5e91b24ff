"""Command-line front end.

    python -m complexbessel eval J --nu 0.5 --z 1.5707963268
    python -m complexbessel verify lemma2 --nu 0.5 --a 2 --c 0
    python -m complexbessel sweep weber --grid grid.json --format csv
    python -m complexbessel selftest

Exit codes: 0 pass, 1 verification or evaluation failure, 2 usage error,
3 precondition violation.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

from . import acceptance
from . import identities as ids
from .bessel import bessel_i, bessel_j, bessel_y, hankel
from .errors import BesselError, PreconditionError
from .spherical import spherical_j

SCHEMA_VERSION = 1
EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3

FUNCTIONS = {
    "J": (("nu", "z"), lambda p: bessel_j(p["nu"], p["z"])),
    "Y": (("nu", "z"), lambda p: bessel_y(p["nu"], p["z"])),
    "I": (("nu", "z"), lambda p: bessel_i(p["nu"], p["z"])),
    "H1": (("nu", "z"), lambda p: hankel(1, p["nu"], p["z"])),
    "H2": (("nu", "z"), lambda p: hankel(2, p["nu"], p["z"])),
    "sphericalJ": (("mu", "z"), lambda p: spherical_j(p["mu"], p["z"])),
}
PARAM_FLAGS = ("nu", "mu", "z", "a", "b", "c", "p", "y", "theta", "sign")
CONFIG_KEYS = {"command", "target", "params", "tol", "format", "output", "grid", "criteria"}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# wire format
# ---------------------------------------------------------------------------

def parse_number(text) -> complex:
    """Decimal literal with optional imaginary part: '0.3', '2i', '0.3+0.2i', '-i'."""
    if isinstance(text, (int, float, complex)) and not isinstance(text, bool):
        z = complex(text)
    else:
        s = str(text).strip().replace(" ", "")
        if not s or "j" in s.lower() or s.count("i") > 1 or (s.count("i") == 1 and not s.endswith("i")):
            raise UsageError(f"cannot parse number {text!r}")
        try:
            z = complex(s[:-1] + "j" if s.endswith("i") else s)
        except ValueError as exc:
            raise UsageError(f"cannot parse number {text!r}") from exc
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise UsageError(f"non-finite number {text!r}")
    return z


def fmt_real(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def fmt_complex(z: complex) -> str:
    z = complex(z)
    im = fmt_real(z.imag)
    if not im.startswith("-"):
        im = "+" + im
    return f"{fmt_real(z.real)}{im}i"


def fmt_param(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return fmt_real(v)
    return fmt_complex(v)


def _json(obj, indent: int = 0) -> str:
    """Deterministic JSON with fixed 17-digit float formatting."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[\n" + ",\n".join(pad + _json(v, indent + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_real(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, complex):
        return json.dumps(fmt_complex(obj))
    return json.dumps(str(obj))


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

@dataclass
class RunConfig:
    command: str
    target: str | None = None
    params: dict = field(default_factory=dict)
    tol: float | None = None
    format: str = "text"
    output: str | None = None
    grid: str | None = None
    criteria: list | None = None

    @classmethod
    def from_json(cls, data: dict) -> "RunConfig":
        unknown = set(data) - CONFIG_KEYS
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        if "command" not in data:
            raise UsageError("config needs a 'command'")
        params = data.get("params", {})
        if not isinstance(params, dict):
            raise UsageError("'params' must be an object")
        unknown = set(params) - set(PARAM_FLAGS)
        if unknown:
            raise UsageError(f"unknown parameters: {sorted(unknown)}")
        return cls(command=data["command"], target=data.get("target"),
                   params={k: _coerce(k, v) for k, v in params.items()},
                   tol=None if data.get("tol") is None else float(data["tol"]),
                   format=data.get("format", "text"), output=data.get("output"),
                   grid=data.get("grid"), criteria=data.get("criteria"))


def _coerce(name: str, value):
    z = parse_number(value)
    if name == "sign":
        if z.imag != 0 or z.real not in (1.0, -1.0):
            raise UsageError("sign must be +1 or -1")
        return int(z.real)
    if name in ("y", "theta", "c") and z.imag == 0:
        return z.real
    if name == "a" and z.imag == 0:
        return z.real
    return z


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="complexbessel", description=__doc__.split("\n")[0])
    parser.add_argument("--config", help="JSON file mirroring the run configuration")
    sub = parser.add_subparsers(dest="command")

    def common(p):
        p.add_argument("--format", choices=("text", "json", "csv"), default=None)
        p.add_argument("--output", help="write the record here instead of stdout")

    pe = sub.add_parser("eval", help="evaluate a special function")
    pe.add_argument("target", choices=sorted(FUNCTIONS))
    pv = sub.add_parser("verify", help="verify one identity at one parameter point")
    pv.add_argument("target", choices=sorted(ids.VERIFIERS))
    for p in (pe, pv):
        for name in PARAM_FLAGS:
            p.add_argument(f"--{name}", dest=f"param_{name}")
        common(p)
    pv.add_argument("--tol", type=float)
    ps = sub.add_parser("sweep", help="verify an identity over a parameter grid")
    ps.add_argument("target", nargs="?", choices=sorted(ids.VERIFIERS))
    ps.add_argument("--grid", help="JSON grid file: {\"identity\": ..., \"params\": {name: [values]}, \"tol\": ...}")
    ps.add_argument("--tol", type=float)
    common(ps)
    pt = sub.add_parser("selftest", help="run the acceptance suite")
    pt.add_argument("--criteria", help="comma-separated criterion numbers (default: all)")
    common(pt)
    return parser


def config_from_args(argv) -> RunConfig:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:
            raise
        raise UsageError("invalid command line") from exc
    if ns.config:
        try:
            with open(ns.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
        if not isinstance(data, dict):
            raise UsageError("config must be a JSON object")
        cfg = RunConfig.from_json(data)
    else:
        if ns.command is None:
            raise UsageError("no command given")
        cfg = RunConfig(command=ns.command, target=getattr(ns, "target", None))
    if ns.command:
        cfg.command = ns.command
        if getattr(ns, "target", None):
            cfg.target = ns.target
        for name in PARAM_FLAGS:
            v = getattr(ns, f"param_{name}", None)
            if v is not None:
                cfg.params[name] = _coerce(name, v)
        if getattr(ns, "tol", None) is not None:
            cfg.tol = ns.tol
        if getattr(ns, "format", None):
            cfg.format = ns.format
        if getattr(ns, "output", None):
            cfg.output = ns.output
        if getattr(ns, "grid", None):
            cfg.grid = ns.grid
        if getattr(ns, "criteria", None):
            cfg.criteria = ns.criteria
    if cfg.command not in ("eval", "verify", "sweep", "selftest"):
        raise UsageError(f"unknown command {cfg.command!r}")
    if cfg.format not in ("text", "json", "csv"):
        raise UsageError(f"unknown format {cfg.format!r}")
    return cfg


# ---------------------------------------------------------------------------
# records
# ---------------------------------------------------------------------------

def report_record(rep: ids.VerificationReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "identity": rep.identity_name,
        "params": {k: fmt_param(v) for k, v in rep.params.items()},
        "lhs": fmt_complex(rep.lhs),
        "rhs": fmt_complex(rep.rhs),
        "abs_err": float(rep.abs_err),
        "rel_err": float(rep.rel_err),
        "tol": float(rep.tol),
        "pass": bool(rep.passed),
        "diagnostics": list(rep.diagnostics),
    }


def _reason(rep) -> str:
    for d in rep.diagnostics:
        if d.startswith("error:"):
            return d[len("error:"):].strip().replace(",", ";")
    return "" if rep.passed else "tolerance exceeded"


def reports_csv(identity: str, reports, summary: dict | None) -> str:
    names = list(ids.VERIFIERS[identity].params)
    header = ["schema_version", "identity", *names, "lhs_re", "lhs_im", "rhs_re", "rhs_im",
              "abs_err", "rel_err", "tol", "pass", "reason"]
    lines = [",".join(header)]
    for r in reports:
        row = [str(SCHEMA_VERSION), identity, *(fmt_param(r.params[n]) for n in names),
               fmt_real(r.lhs.real), fmt_real(r.lhs.imag), fmt_real(r.rhs.real), fmt_real(r.rhs.imag),
               fmt_real(r.abs_err), fmt_real(r.rel_err), fmt_real(r.tol), "true" if r.passed else "false",
               _reason(r)]
        lines.append(",".join(row))
    if summary is not None and reports:
        row = [str(SCHEMA_VERSION), identity, "summary", *([""] * (len(names) - 1)), "", "", "", "",
               "", fmt_real(summary["max_rel_err"]), "", f"{summary['passed']}/{summary['count']}", ""]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def report_text(rep: ids.VerificationReport) -> str:
    rec = report_record(rep)
    lines = [f"{k}: {v}" for k, v in rec.items() if k not in ("params", "diagnostics")]
    lines.insert(2, "params: " + " ".join(f"{k}={v}" for k, v in rec["params"].items()))
    lines += [f"diagnostic: {d}" for d in rec["diagnostics"]]
    for i, line in enumerate(lines):
        for key in ("abs_err", "rel_err", "tol"):
            if line.startswith(key + ":"):
                lines[i] = f"{key}: {fmt_real(rec[key])}"
    return "\n".join(lines) + "\n"


def _emit(cfg: RunConfig, text: str):
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def run_eval(cfg: RunConfig) -> int:
    if cfg.target not in FUNCTIONS:
        raise UsageError(f"eval needs one of {sorted(FUNCTIONS)}")
    needed, fn = FUNCTIONS[cfg.target]
    missing = [n for n in needed if n not in cfg.params]
    extra = set(cfg.params) - set(needed)
    if missing or extra:
        raise UsageError(f"eval {cfg.target} takes exactly {list(needed)}")
    params = {n: complex(cfg.params[n]) for n in needed}
    rec = {"schema_version": SCHEMA_VERSION, "function": cfg.target,
           "params": {k: fmt_complex(v) for k, v in params.items()}}
    try:
        res = fn(params)
    except BesselError as exc:
        rec.update({"error": f"{type(exc).__name__}: {exc}"})
        _emit(cfg, _render_eval(cfg, rec))
        return EXIT_FAIL
    rec.update({"value": fmt_complex(res.value), "err_estimate": float(res.err_estimate), "method": res.method})
    _emit(cfg, _render_eval(cfg, rec))
    return EXIT_PASS


def _render_eval(cfg: RunConfig, rec: dict) -> str:
    if cfg.format == "json":
        return _json(rec) + "\n"
    flat = {"schema_version": rec["schema_version"], "function": rec["function"], **rec["params"]}
    for k in ("value", "err_estimate", "method", "error"):
        if k in rec:
            flat[k] = fmt_real(rec[k]) if isinstance(rec[k], float) else rec[k]
    if cfg.format == "csv":
        return ",".join(flat) + "\n" + ",".join(str(v).replace(",", ";") for v in flat.values()) + "\n"
    return "".join(f"{k}: {v}\n" for k, v in flat.items())


def run_verify(cfg: RunConfig) -> int:
    if cfg.target not in ids.VERIFIERS:
        raise UsageError(f"verify needs one of {sorted(ids.VERIFIERS)}")
    verifier = ids.VERIFIERS[cfg.target]
    extra = set(cfg.params) - set(verifier.params)
    if extra:
        raise UsageError(f"{cfg.target} does not take {sorted(extra)}")
    missing = [p for p in verifier.params if p not in cfg.params and p not in verifier.defaults]
    if missing:
        raise UsageError(f"{cfg.target} needs {missing}")
    try:
        rep = ids.run(cfg.target, cfg.params, cfg.tol)
    except PreconditionError:
        raise
    except BesselError as exc:
        tol = cfg.tol if cfg.tol is not None else math.nan
        rep = ids.VerificationReport.failure(cfg.target, ids.bind(cfg.target, cfg.params), tol, exc)
    if cfg.format == "json":
        text = _json(report_record(rep)) + "\n"
    elif cfg.format == "csv":
        text = reports_csv(cfg.target, [rep], None)
    else:
        text = report_text(rep)
    _emit(cfg, text)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def load_grid(path: str, identity: str | None):
    try:
        with open(path) as fh:
            raw = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read grid: {exc}") from exc
    data = json.loads(raw) if raw.strip() else {}
    if not isinstance(data, dict) or set(data) - {"identity", "params", "tol"}:
        raise UsageError("grid file must be an object with keys identity, params, tol")
    ident = identity or data.get("identity")
    if ident not in ids.VERIFIERS:
        raise UsageError("sweep needs an identity")
    if data.get("identity") not in (None, ident):
        raise UsageError("identity on the command line and in the grid file differ")
    params = data.get("params", {})
    if not isinstance(params, dict) or any(not isinstance(v, list) for v in params.values()):
        raise UsageError("grid params must map names to lists")
    unknown = set(params) - set(ids.VERIFIERS[ident].params)
    if unknown:
        raise UsageError(f"{ident} does not take {sorted(unknown)}")
    values = {k: [_coerce(k, x) for x in v] for k, v in params.items()}
    if any(len(v) == 0 for v in values.values()):
        values = {}
    return ident, ids.ParamGrid(values, data.get("tol"))


def run_sweep(cfg: RunConfig) -> int:
    if not cfg.grid:
        raise UsageError("sweep needs --grid")
    ident, grid = load_grid(cfg.grid, cfg.target)
    if cfg.tol is not None:
        grid.tol = cfg.tol
    result = ids.sweep(grid, ident)
    if cfg.format == "json":
        rec = {"schema_version": SCHEMA_VERSION, "identity": ident,
               "reports": [report_record(r) for r in result.reports], "summary": result.summary}
        text = _json(rec) + "\n"
    elif cfg.format == "csv":
        text = reports_csv(ident, result.reports, result.summary)
    else:
        text = "".join(report_text(r) + "\n" for r in result.reports)
        s = result.summary
        text += f"summary: {s['passed']}/{s['count']} passed, max rel_err {fmt_real(s['max_rel_err'])}\n"
    _emit(cfg, text)
    return EXIT_PASS if result.summary["passed"] == result.summary["count"] else EXIT_FAIL


def run_selftest(cfg: RunConfig) -> int:
    if cfg.criteria:
        try:
            numbers = [int(x) for x in str(cfg.criteria).replace(" ", "").split(",") if x]
        except ValueError as exc:
            raise UsageError("criteria must be comma-separated integers") from exc
        if any(n not in acceptance.CRITERIA for n in numbers):
            raise UsageError(f"criteria must be among {sorted(acceptance.CRITERIA)}")
    else:
        numbers = sorted(acceptance.CRITERIA)
    results = acceptance.run_criteria(numbers)
    if cfg.format == "json":
        rec = {"schema_version": SCHEMA_VERSION,
               "criteria": [{"criterion": r.number, "title": r.title, "pass": r.passed, "cases": r.cases,
                             "worst": float(r.worst), "threshold": float(r.threshold),
                             "failures": r.failures} for r in results]}
        text = _json(rec) + "\n"
    elif cfg.format == "csv":
        text = "schema_version,criterion,title,pass,cases,worst,threshold\n" + "".join(
            f"{SCHEMA_VERSION},{r.number},{r.title.replace(',', ';')},{'true' if r.passed else 'false'},"
            f"{r.cases},{fmt_real(r.worst)},{fmt_real(r.threshold)}\n" for r in results)
    else:
        text = "".join(r.line() + "\n" for r in results)
    _emit(cfg, text)
    return EXIT_PASS if all(r.passed for r in results) else EXIT_FAIL


COMMANDS = {"eval": run_eval, "verify": run_verify, "sweep": run_sweep, "selftest": run_selftest}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = config_from_args(argv)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
