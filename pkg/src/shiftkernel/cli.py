"""Command-line front end.

Commands
--------
eval     one special-function value
kernel   the kernel by integral, series and closed form, with ratios
verify   a named identity suite
grid     one identity over a parameter grid ``name=start:stop:step``
report   re-emit a JSON report file in another format

Exit codes: 0 when every report is ``match`` or ``constant-ratio`` (or the
evaluation succeeded), 1 otherwise, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import re
import sys
import tempfile
from decimal import Decimal

from . import bessel, confluent, hypergeom, identities, kernel, legendre, numerics
from .identities import IdentityReport
from .numerics import NumericsError, Tolerance

__all__ = [
    "UsageError",
    "parse_complex",
    "parse_grid",
    "report_to_dict",
    "report_from_dict",
    "sort_reports",
    "format_reports",
    "emit_report",
    "run",
    "main",
]

FORMATS = ("json", "csv", "plotdata")
REPORT_FIELDS = ("identity_id", "params", "lhs", "rhs", "abs_diff", "rel_diff", "ratio", "status", "notes")


class UsageError(ValueError):
    """Bad command-line input; maps to exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------- parsing

_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|[+-]?(?:inf|nan)"


def parse_complex(text: str) -> complex:
    """Parse ``"a"``, ``"a+bi"``, ``"a-bi"``, ``"bi"``, ``"i"`` or ``"-i"``.

    Examples
    --------
    >>> parse_complex("1.5-2i")
    (1.5-2j)
    >>> parse_complex("3")
    (3+0j)
    """
    s = text.strip().replace(" ", "")
    if s in ("i", "+i", "j", "+j"):
        return 1j
    if s in ("-i", "-j"):
        return -1j
    # a+i, a-i
    m = re.fullmatch(rf"({_NUM})([+-])[ij]", s)
    if m:
        return complex(float(m.group(1)), 1.0 if m.group(2) == "+" else -1.0)
    m = re.fullmatch(rf"({_NUM})(?:([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([ij]))?", s)
    if m:
        return complex(float(m.group(1)), float(m.group(2)) if m.group(2) else 0.0)
    m = re.fullmatch(rf"({_NUM})[ij]", s)
    if m:
        return complex(0.0, float(m.group(1)))
    raise UsageError(f"cannot parse complex number {text!r}")


def parse_real(text: str) -> float:
    z = parse_complex(text)
    if z.imag != 0:
        raise UsageError(f"expected a real number, got {text!r}")
    return z.real


def parse_int(text: str) -> int:
    x = parse_real(text)
    if x != int(x):
        raise UsageError(f"expected an integer, got {text!r}")
    return int(x)


def parse_grid(spec: str) -> tuple[str, list]:
    """Parse ``name=start:stop:step`` (stop inclusive) or ``name=value``.

    Decimal arithmetic keeps the points free of accumulated rounding.

    Examples
    --------
    >>> parse_grid("u=0.5:2:0.5")
    ('u', [0.5, 1.0, 1.5, 2.0])
    """
    if "=" not in spec:
        raise UsageError(f"grid entry {spec!r} must look like name=start:stop:step")
    name, rng = spec.split("=", 1)
    name = name.strip().replace("-", "_")
    parts = rng.split(":")
    if len(parts) == 1:
        return name, [parse_real(parts[0])]
    if len(parts) != 3:
        raise UsageError(f"grid entry {spec!r} must look like name=start:stop:step")
    try:
        start, stop, step = (Decimal(p.strip()) for p in parts)
    except Exception:
        raise UsageError(f"grid entry {spec!r} has a non-numeric bound") from None
    if step <= 0 or stop < start:
        raise UsageError(f"grid entry {spec!r} needs step > 0 and stop >= start")
    count = int((stop - start) / step) + 1
    if count > 100000:
        raise UsageError(f"grid entry {spec!r} has too many points")
    return name, [float(start + k * step) for k in range(count)]


# ---------------------------------------------------------------- serialization

def _cplx(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _param_out(v):
    return _cplx(v) if isinstance(v, complex) else v


def _param_in(v):
    if isinstance(v, list) and len(v) == 2:
        return complex(v[0], v[1])
    return v


def report_to_dict(r: IdentityReport) -> dict:
    return {
        "identity_id": r.identity_id,
        "params": {k: _param_out(v) for k, v in r.params.items()},
        "lhs": _cplx(r.lhs),
        "rhs": _cplx(r.rhs),
        "abs_diff": r.abs_diff,
        "rel_diff": r.rel_diff,
        "ratio": _cplx(r.ratio),
        "status": r.status,
        "notes": r.notes,
    }


def report_from_dict(d: dict) -> IdentityReport:
    if set(d) != set(REPORT_FIELDS):
        raise ValueError(f"report fields must be exactly {REPORT_FIELDS}")
    return IdentityReport(
        d["identity_id"],
        {k: _param_in(v) for k, v in d["params"].items()},
        complex(*d["lhs"]),
        complex(*d["rhs"]),
        float(d["abs_diff"]),
        float(d["rel_diff"]),
        complex(*d["ratio"]),
        d["status"],
        d["notes"],
    )


def _value_key(v):
    if isinstance(v, bool):
        return (0, float(v), 0.0, "")
    if isinstance(v, (int, float)):
        return (0, float(v), 0.0, "")
    if isinstance(v, complex):
        return (0, v.real, v.imag, "")
    return (1, 0.0, 0.0, str(v))


def _params_key(params: dict):
    return tuple((k, _value_key(params[k])) for k in sorted(params))


def sort_reports(reports) -> list:
    """Order reports by identity id, then by parameters."""
    return sorted(reports, key=lambda r: (r.identity_id, _params_key(r.params)))


def _fmt_value(v) -> str:
    if isinstance(v, complex):
        return f"{v.real!r}{'+' if v.imag >= 0 or math.isnan(v.imag) else '-'}{abs(v.imag)!r}i"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _plot_x(r: IdentityReport) -> float:
    if "u" in r.params:
        return float(complex(r.params["u"]).real)
    for v in r.params.values():
        if isinstance(v, (int, float)) and not isinstance(v, bool):
            return float(v)
    return 0.0


def format_reports(reports, fmt: str) -> str:
    """Serialize reports, sorted by (identity_id, params)."""
    reports = sort_reports(reports)
    if fmt == "json":
        return json.dumps([report_to_dict(r) for r in reports], indent=2) + "\n"
    if fmt == "csv":
        keys = sorted({k for r in reports for k in r.params})
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["identity_id"] + [f"param_{k}" for k in keys]
                   + ["lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_diff", "rel_diff",
                      "ratio_re", "ratio_im", "status", "notes"])
        for r in reports:
            w.writerow([r.identity_id] + [_fmt_value(r.params[k]) if k in r.params else "" for k in keys]
                       + [repr(x) for x in (r.lhs.real, r.lhs.imag, r.rhs.real, r.rhs.imag,
                                             r.abs_diff, r.rel_diff, r.ratio.real, r.ratio.imag)]
                       + [r.status, r.notes])
        return buf.getvalue()
    if fmt == "plotdata":
        lines = ["# x rel_diff abs_diff ratio_re ratio_im identity_id status"]
        prev = None
        for r in reports:
            if prev is not None and r.identity_id != prev:
                lines.append("")
            prev = r.identity_id
            lines.append(" ".join([repr(_plot_x(r)), repr(r.rel_diff), repr(r.abs_diff),
                                   repr(r.ratio.real), repr(r.ratio.imag), r.identity_id, r.status]))
        return "\n".join(lines) + "\n"
    raise UsageError(f"unknown format {fmt!r}")


def _write(text: str, output: str | None, stdout) -> int:
    if output is None:
        stdout.write(text)
        return 0
    directory = os.path.dirname(os.path.abspath(output))
    tmp = None
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".shiftkernel-", suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, output)
        tmp = None
        return 0
    except OSError as exc:
        print(f"error: cannot write {output}: {exc}", file=sys.stderr)
        return 1
    finally:
        if tmp is not None and os.path.exists(tmp):
            os.remove(tmp)


def emit_report(reports, fmt: str, sink: str | None = None, stdout=None) -> int:
    """Write reports to ``sink`` (stdout when None); returns 1 on I/O failure.

    Files are written atomically, so a failure leaves no partial output.
    """
    reports = list(reports)
    if not reports:
        raise ValueError("no reports to emit")
    return _write(format_reports(reports, fmt), sink, stdout or sys.stdout)


def _status_code(reports) -> int:
    return 0 if all(r.ok for r in reports) else 1


# ---------------------------------------------------------------- eval

def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--fn {args.fn} needs " + ", ".join("--" + m.replace("_", "-") for m in missing))
    return [getattr(args, n) for n in names]


def _eval_value(args, tol: Tolerance):
    """(value, error estimate or None) for ``eval``."""
    fn = args.fn
    if fn == "besselk":
        nu, x = _need(args, "nu", "x")
        r = bessel.bessel_k_result(nu, x, tol)
        return r.value, r.abs_error_estimate
    if fn == "besseli":
        return bessel.bessel_i(*_need(args, "nu", "x"), tol), None
    if fn == "besselj":
        return bessel.bessel_j(*_need(args, "nu", "x"), tol), None
    if fn == "bessely":
        return bessel.bessel_y(*_need(args, "nu", "x"), tol), None
    if fn in ("hankel1", "hankel2"):
        nu, x = _need(args, "nu", "x")
        return bessel.hankel(int(fn[-1]), nu, x, tol), None
    if fn == "gamma":
        return numerics.gamma(*_need(args, "z")), None
    if fn == "lngamma":
        return numerics.ln_gamma(*_need(args, "z")), None
    if fn == "pochhammer":
        return numerics.pochhammer(*_need(args, "a", "nu")), None
    if fn == "hyp2f1":
        a, b, c, z = _need(args, "a", "b", "c", "z")
        if z.imag != 0:
            raise UsageError("hyp2f1 needs a real z")
        r = hypergeom.hyp_2f1_cont(a, b, c, z.real, tol)
        return r.value, r.tail_estimate
    if fn == "tricomiu":
        return confluent.tricomi_u(*_need(args, "a", "b", "z"), tol), None
    if fn == "whittakerw":
        return confluent.whittaker_w(*_need(args, "kappa", "mu", "z"), tol), None
    if fn == "parabolicd":
        return confluent.parabolic_d(*_need(args, "nu", "z"), tol), None
    if fn == "legendrep":
        nu, mu, x = _need(args, "nu", "mu", "x")
        if x.imag != 0:
            raise UsageError("legendrep needs a real --x")
        return legendre.legendre_p(nu, mu, x.real, tol), None
    if fn == "gegenbauer":
        k, rho, x = _need(args, "k", "rho", "x")
        return complex(legendre.gegenbauer_c(k, rho.real, x.real, tol)), None
    raise UsageError(f"unknown function {fn!r}")


EVAL_FUNCTIONS = ("besselk", "besseli", "besselj", "bessely", "hankel1", "hankel2", "gamma", "lngamma",
                  "pochhammer", "hyp2f1", "tricomiu", "whittakerw", "parabolicd", "legendrep", "gegenbauer")


def _cmd_eval(args, tol, stdout) -> int:
    value, err = _eval_value(args, tol)
    value = complex(value)
    rec = {"fn": args.fn, "value": _cplx(value), "error_estimate": err}
    if args.format == "json":
        text = json.dumps(rec, indent=2) + "\n"
    elif args.format == "csv":
        text = "fn,value_re,value_im,error_estimate\n" + \
            f"{args.fn},{value.real!r},{value.imag!r},{'' if err is None else repr(float(err))}\n"
    else:
        text = f"{value.real!r} {value.imag!r} {'nan' if err is None else repr(float(err))}\n"
    return _write(text, args.output, stdout)


# ---------------------------------------------------------------- kernel

def _cmd_kernel(args, tol, stdout) -> int:
    p = kernel.KernelParams(args.u, args.n, args.k0, args.sigma, args.sigma_hat)
    methods = ("integral", "series", "closed") if args.method == "all" else (args.method,)
    rows = []
    failed = False
    for m in methods:
        try:
            if m == "integral":
                kv = kernel.kernel_integral(p, tol)
            elif m == "series":
                kv = kernel.kernel_series(p, args.variant, tol)
            else:
                kv = kernel.kernel_closed(p, tol)
            rows.append({"method": m, "value": kv.value, "converged": kv.converged,
                         "detail": kv.variant or kv.formula or "", "notes": kv.notes})
            failed |= not kv.converged
        except kernel.NoClosedFormError as exc:
            rows.append({"method": m, "value": None, "converged": False, "detail": "", "notes": str(exc)})
            failed |= args.method != "all"
        except NumericsError as exc:
            rows.append({"method": m, "value": None, "converged": False, "detail": "",
                         "notes": f"{type(exc).__name__}: {exc}"})
            failed = True
    ratios = []
    for a, b in itertools.combinations([r for r in rows if r["value"] is not None], 2):
        ratio = a["value"] / b["value"] if b["value"] != 0 else complex(math.inf, 0.0)
        ratios.append({"pair": f"{a['method']}/{b['method']}", "ratio": ratio})
    if args.format == "json":
        out = {"params": {k: _param_out(v) for k, v in identities._clean_params(p.as_dict()).items()},
               "values": [{**r, "value": None if r["value"] is None else _cplx(r["value"])} for r in rows],
               "ratios": [{**q, "ratio": _cplx(q["ratio"])} for q in ratios]}
        text = json.dumps(out, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "name", "value_re", "value_im", "converged", "detail", "notes"])
        for r in rows:
            v = r["value"]
            w.writerow(["value", r["method"], "" if v is None else repr(v.real), "" if v is None else repr(v.imag),
                        r["converged"], r["detail"], r["notes"]])
        for q in ratios:
            w.writerow(["ratio", q["pair"], repr(q["ratio"].real), repr(q["ratio"].imag), "", "", ""])
        text = buf.getvalue()
    else:
        lines = ["# name re im"]
        lines += [f"{r['method']} {r['value'].real!r} {r['value'].imag!r}" for r in rows if r["value"] is not None]
        lines += [f"{q['pair']} {q['ratio'].real!r} {q['ratio'].imag!r}" for q in ratios]
        text = "\n".join(lines) + "\n"
    code = _write(text, args.output, stdout)
    return code or int(failed)


# ---------------------------------------------------------------- verify / grid / report

def _cmd_verify(args, tol, stdout) -> int:
    reports = identities.run_suite(args.suite, tol)
    code = emit_report(reports, args.format, args.output, stdout)
    return code or _status_code(reports)


# identity name -> (check(params, tol), parameter parsers, sweep variable classified as a family)
def _grid_thm1(q, tol):
    return identities.verify_theorem1(q["n"], q["sigma"], q["u"], tol)


def _grid_closed(q, tol):
    return identities.verify_closed_form(kernel.KernelParams(q["u"], q["n"], q["k0"], q["sigma"], q["sigma_hat"]), tol)


GRID_IDENTITIES = {
    "thm1": (_grid_thm1, {"n": parse_int, "sigma": parse_complex, "u": parse_real}, None),
    "thm2": (lambda q, tol: identities.verify_theorem2(q["u"], q["N"], tol),
             {"u": parse_real, "N": parse_int}, None),
    "c1": (lambda q, tol: identities.verify_c1(q["u"], tol), {"u": parse_real}, None),
    "closed": (_grid_closed, {"u": parse_real, "n": parse_int, "k0": parse_int, "sigma": parse_complex,
                              "sigma_hat": parse_complex}, None),
    "product": (lambda q, tol: identities.verify_pointwise_product(q["theorem"], q["u"], q["rho"], q["rho_hat"], tol),
                {"theorem": str, "u": parse_real, "rho": parse_real, "rho_hat": parse_real}, "u"),
    "hankel": (lambda q, tol: identities.verify_hankel_relation(q["eta"], q["nu"], q["u"], tol),
               {"eta": parse_int, "nu": parse_complex, "u": parse_real}, None),
    "khl": (lambda q, tol: identities.verify_khl_a4(q["n"], q["omega"], q["eta"], tol),
            {"n": parse_int, "omega": parse_real, "eta": parse_int}, "omega"),
    "gegenbauer": (lambda q, tol: identities.gegenbauer_orthogonality_check(q["k"], q["m"], q["rho"], tol),
                   {"k": parse_int, "m": parse_int, "rho": parse_real}, None),
    "kl": (lambda q, tol: identities.kl_weak_orthogonality(q["rho0"], q["width"]),
           {"rho0": parse_real, "width": parse_real}, None),
}


def _cmd_grid(args, tol, stdout) -> int:
    fn, spec, sweep = GRID_IDENTITIES[args.identity]
    values: dict[str, list] = {}
    for entry in args.param or []:
        name, pts = parse_grid(entry)
        if name not in spec:
            raise UsageError(f"identity {args.identity} has no parameter {name!r}; expected {sorted(spec)}")
        values.setdefault(name, []).extend(pts)
    for entry in args.set or []:
        if "=" not in entry:
            raise UsageError(f"--set entry {entry!r} must look like name=value")
        name, raw = entry.split("=", 1)
        name = name.strip().replace("-", "_")
        if name not in spec:
            raise UsageError(f"identity {args.identity} has no parameter {name!r}; expected {sorted(spec)}")
        values.setdefault(name, []).append(spec[name](raw.strip()))
    missing = [k for k in spec if k not in values]
    if missing:
        raise UsageError(f"identity {args.identity} needs values for {missing}")
    for name, conv in spec.items():
        if conv is parse_int:
            bad = [v for v in values[name] if float(v) != int(v)]
            if bad:
                raise UsageError(f"parameter {name} must be an integer, got {bad[0]!r}")
            values[name] = [int(v) for v in values[name]]
    names = list(spec)
    reports = []
    for combo in itertools.product(*(values[n] for n in names)):
        q = dict(zip(names, combo))
        try:
            reports.append(fn(q, tol))
        except (NumericsError, ValueError) as exc:
            reports.append(identities._error_report(args.identity, q, exc))
    if sweep is not None:
        groups: dict = {}
        for r in reports:
            key = _params_key({k: v for k, v in r.params.items() if k != sweep})
            groups.setdefault((r.identity_id, key), []).append(r)
        tol_match = 1e-8 if args.identity == "khl" else 1e-7
        reports = [x for g in groups.values() for x in identities.classify_sweep(g, tol_match)]
    code = emit_report(reports, args.format, args.output, stdout)
    return code or _status_code(reports)


def _cmd_report(args, tol, stdout) -> int:
    try:
        with open(args.input, encoding="utf-8") as fh:
            data = json.load(fh)
        reports = [report_from_dict(d) for d in data]
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{args.input} is not a report file: {exc}") from None
    if not reports:
        raise UsageError(f"{args.input} holds no reports")
    code = emit_report(reports, args.format, args.output, stdout)
    return code or _status_code(reports)


# ---------------------------------------------------------------- entry points

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="shiftkernel", description="Special functions and identity audits for the shift kernel.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--format", choices=FORMATS, default="json")
        p.add_argument("--output", "-o", default=None, help="output file (default: standard output)")
        p.add_argument("--rel-tol", type=parse_real, default=None, help="relative tolerance target")
        p.add_argument("--max-terms", type=parse_int, default=None)
        p.add_argument("--max-evals", type=parse_int, default=None)

    p = sub.add_parser("eval", help="evaluate one special function")
    p.add_argument("--fn", required=True, choices=EVAL_FUNCTIONS)
    for name in ("nu", "x", "z", "a", "b", "c", "kappa", "mu", "rho"):
        p.add_argument(f"--{name}", type=parse_complex, default=None)
    p.add_argument("--k", type=parse_int, default=None)
    common(p)

    p = sub.add_parser("kernel", help="evaluate the kernel by several methods")
    p.add_argument("--u", type=parse_real, required=True)
    p.add_argument("--n", type=parse_int, required=True)
    p.add_argument("--k0", type=parse_int, default=0)
    p.add_argument("--sigma", type=parse_complex, default=0j)
    p.add_argument("--sigma-hat", type=parse_complex, default=0j)
    p.add_argument("--method", choices=("integral", "series", "closed", "all"), default="all")
    p.add_argument("--variant", choices=kernel.VARIANTS, default=kernel.VARIANTS[0])
    common(p)

    p = sub.add_parser("verify", help="run an identity suite")
    p.add_argument("--suite", required=True, choices=sorted(identities.SUITES) + ["all"])
    common(p)

    p = sub.add_parser("grid", help="check one identity over a parameter grid")
    p.add_argument("--identity", required=True, choices=sorted(GRID_IDENTITIES))
    p.add_argument("--param", action="append", help="name=start:stop:step (stop inclusive), repeatable")
    p.add_argument("--set", action="append", help="name=value, repeatable; repeats add grid points")
    common(p)

    p = sub.add_parser("report", help="re-emit a JSON report file")
    p.add_argument("--input", "-i", required=True)
    common(p)
    return parser


def _tolerance(args) -> Tolerance:
    kw = {}
    if args.rel_tol is not None:
        kw["rel_target"] = args.rel_tol
    if args.max_terms is not None:
        kw["max_terms"] = args.max_terms
    if args.max_evals is not None:
        kw["max_evals"] = args.max_evals
    try:
        return Tolerance(**kw) if kw else numerics.DEFAULT_TOL
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


COMMANDS = {"eval": _cmd_eval, "kernel": _cmd_kernel, "verify": _cmd_verify, "grid": _cmd_grid,
            "report": _cmd_report}


def run(argv, stdout=None) -> int:
    """Run the command line ``argv`` (without the program name); returns the exit code."""
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(list(argv))
        tol = _tolerance(args)
        return COMMANDS[args.command](args, tol, stdout)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (NumericsError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))
