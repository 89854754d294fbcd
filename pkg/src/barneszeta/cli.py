"""Command-line interface.

Subcommands::

    barneszeta eval       --a 1 --w 1 --sigma 2 --t 0
    barneszeta tilde      --a 1 --w 1/1,1/1 --sigma 1.75 --weights-mode rational
    barneszeta meansquare --a 1 --w 1 --sigma 2 --T 200 --checkpoints 50,100,200
    barneszeta verify     --a 1 --w 1 --sigma 1.25 --T-grid 50,100,200,400 \
                          --weights-mode rational

Every record echoes the fully resolved run configuration so output files are
reproducible.  Exit codes: 0 success/pass, 1 verification failed, 2 domain or
usage error, 3 budget exceeded.  Numeric CSV/text fields carry 17 significant
digits; weight tokens containing '/' or bare integers are treated as exact
rationals, decimal tokens as floats.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import DomainError, InvalidParameter, ResourceError
from .evaluate import (
    C_DEFAULT,
    X_MIN,
    X_SAFETY,
    EvalResult,
    boundary_identity_check,
    eval_approx,
    eval_auto,
    eval_direct,
    resolve_term_cap,
)
from .meansquare import (
    XPolicy,
    integrate_mean_square,
    report_to_dict,
    trace_to_csv,
    verify_theorems,
)
from .params import analyze_weights, validate_params
from .tilde import tilde_zeta

_INT_RE = re.compile(r"^[+-]?\d+$")

WeightToken = Union[Fraction, float]


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------

def parse_weight_token(tok: str) -> WeightToken:
    """'3/4' and '2' parse exactly (Fraction); '0.75' parses as float."""
    tok = tok.strip()
    if not tok:
        raise InvalidParameter("empty weight token")
    try:
        if "/" in tok:
            return Fraction(tok)
        if _INT_RE.match(tok):
            return Fraction(int(tok))
        return float(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidParameter(f"cannot parse weight token {tok!r}: {exc}") from exc


def parse_weights(text: str) -> list[WeightToken]:
    return [parse_weight_token(tok) for tok in text.split(",")]


def _parse_float_list(text: str, what: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise InvalidParameter(f"cannot parse {what} {text!r}: {exc}") from exc


def load_config_file(path: str) -> dict[str, str]:
    """key=value lines, '#' comments; keys use the same names as the flags."""
    out: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise InvalidParameter(
                        f"{path}:{lineno}: expected key=value, got {line!r}"
                    )
                key, _, value = line.partition("=")
                out[key.strip().lower().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise InvalidParameter(f"cannot read config file {path!r}: {exc}") from exc
    return out


def _fmt(v: float) -> str:
    return f"{v:.17g}"


# ---------------------------------------------------------------------------
# argument resolution (flags override config file; env only for term cap)
# ---------------------------------------------------------------------------

_FLOAT_KEYS = {"a", "sigma", "t", "x", "rel_tol", "c", "quad_tol", "big_t",
               "x_min", "x_safety"}
_INT_KEYS = {"term_cap", "workers"}
_STR_KEYS = {"w", "method", "format", "weights_mode", "checkpoints", "t_grid",
             "out"}


class _Resolved:
    """Merged view of CLI flags and config-file values (flags win)."""

    def __init__(self, args: argparse.Namespace):
        self._args = vars(args)
        cfg_path = self._args.get("config")
        self._cfg = load_config_file(cfg_path) if cfg_path else {}
        for key in self._cfg:
            if key not in _FLOAT_KEYS | _INT_KEYS | _STR_KEYS:
                raise InvalidParameter(f"unknown config key {key!r}")

    def get(self, key: str, default=None):
        flag_val = self._args.get(key)
        if flag_val is not None:
            return flag_val
        if key in self._cfg:
            raw = self._cfg[key]
            if key in _FLOAT_KEYS:
                try:
                    return float(raw)
                except ValueError as exc:
                    raise InvalidParameter(
                        f"config key {key}: bad float {raw!r}"
                    ) from exc
            if key in _INT_KEYS:
                try:
                    return int(raw)
                except ValueError as exc:
                    raise InvalidParameter(
                        f"config key {key}: bad integer {raw!r}"
                    ) from exc
            return raw
        return default

    def require(self, key: str, flag: str):
        val = self.get(key)
        if val is None:
            raise InvalidParameter(f"missing required option {flag}")
        return val


# ---------------------------------------------------------------------------
# output rendering
# ---------------------------------------------------------------------------

def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config_lines(config: dict) -> list[str]:
    return [f"{k}={config[k]}" for k in config]


def _render_record(record: dict, config: dict, fmt: str) -> str:
    """Render a flat record as json / csv / text with a config echo."""
    if fmt == "json":
        return json.dumps({"config": config, **record}, indent=2) + "\n"
    keys = list(record.keys())
    vals = [
        _fmt(v) if isinstance(v, float) else str(v) for v in record.values()
    ]
    if fmt == "csv":
        lines = [f"# {line}" for line in _config_lines(config)]
        lines.append(",".join(keys))
        lines.append(",".join(vals))
        return "\n".join(lines) + "\n"
    if fmt == "text":
        lines = [f"# {line}" for line in _config_lines(config)]
        width = max(len(k) for k in keys)
        lines += [f"{k.ljust(width)} = {v}" for k, v in zip(keys, vals)]
        return "\n".join(lines) + "\n"
    raise InvalidParameter(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_eval(res: _Resolved) -> int:
    a = float(res.require("a", "--a"))
    w_spec = str(res.require("w", "--w"))
    sigma = float(res.require("sigma", "--sigma"))
    t = float(res.get("t", 0.0))
    tokens = parse_weights(w_spec)
    params = validate_params(a, [float(tok) for tok in tokens])
    s = complex(sigma, t)
    method = str(res.get("method", "auto"))
    rel_tol = float(res.get("rel_tol", 1e-8))
    C = float(res.get("c", C_DEFAULT))
    term_cap = res.get("term_cap")
    x = res.get("x")
    fmt = str(res.get("format", "json"))

    if method == "direct":
        result: EvalResult = eval_direct(params, s, rel_tol, term_cap=term_cap)
    elif method == "approx":
        x_eff = float(x) if x is not None else X_SAFETY * max(
            X_MIN, C * abs(t) / (2.0 * math.pi)
        )
        result = eval_approx(params, s, x_eff, C=C, term_cap=term_cap)
    elif method == "auto":
        kwargs = {}
        if x is not None:
            kwargs["x_min"] = float(x)
        result = eval_auto(params, s, rel_tol, C=C, term_cap=term_cap, **kwargs)
    else:
        raise InvalidParameter(f"unknown method {method!r}")

    config = {
        "command": "eval", "a": _fmt(a), "w": w_spec, "sigma": _fmt(sigma),
        "t": _fmt(t), "method": method, "rel_tol": _fmt(rel_tol),
        "C": _fmt(C), "x": (_fmt(float(x)) if x is not None else "auto"),
        "term_cap": resolve_term_cap(term_cap), "format": fmt,
    }
    record = {
        "re": result.value.real,
        "im": result.value.imag,
        "err_estimate": result.err_estimate,
        "err_kind": result.err_kind.value,
        "method": result.method.value,
        "terms_used": result.terms_used,
    }
    _emit(_render_record(record, config, fmt), res.get("out"))
    return 0


def _cmd_tilde(res: _Resolved) -> int:
    a = float(res.require("a", "--a"))
    w_spec = str(res.require("w", "--w"))
    sigma = float(res.require("sigma", "--sigma"))
    mode = str(res.require("weights_mode", "--weights-mode"))
    rel_tol = float(res.get("rel_tol", 1e-8))
    term_cap = res.get("term_cap")
    fmt = str(res.get("format", "json"))
    if mode not in ("independent", "rational"):
        raise InvalidParameter(f"--weights-mode must be independent|rational, got {mode!r}")

    tokens = parse_weights(w_spec)
    params = validate_params(a, [float(tok) for tok in tokens])
    structure = analyze_weights(tokens, declared_mode=mode)
    result = tilde_zeta(params, sigma, structure, rel_tol, term_cap=term_cap)

    warnings: list[str] = []
    if mode == "independent":
        warnings.append(
            "independence of the weights over the rationals is assumed, not "
            "verified; the diagonal constant omits all off-diagonal pairs"
        )
        if all(isinstance(tok, Fraction) for tok in tokens):
            warnings.append(
                "all weights parsed as exact rationals, which cannot be "
                "linearly independent over Q; consider --weights-mode rational"
            )
    config = {
        "command": "tilde", "a": _fmt(a), "w": w_spec, "sigma": _fmt(sigma),
        "weights_mode": mode, "rel_tol": _fmt(rel_tol),
        "term_cap": resolve_term_cap(term_cap), "format": fmt,
    }
    record = {
        "value": result.value,
        "err_estimate": result.err_estimate,
        "path": result.path.value,
        "warnings": warnings,
    }
    if fmt != "json":
        record["warnings"] = ";".join(warnings)
    _emit(_render_record(record, config, fmt), res.get("out"))
    return 0


def _cmd_meansquare(res: _Resolved) -> int:
    a = float(res.require("a", "--a"))
    w_spec = str(res.require("w", "--w"))
    sigma = float(res.require("sigma", "--sigma"))
    T = float(res.require("big_t", "--T"))
    quad_tol = float(res.get("quad_tol", 1e-6))
    workers = res.get("workers")
    cps_spec = res.get("checkpoints")
    eval_cap = res.get("term_cap")

    tokens = parse_weights(w_spec)
    params = validate_params(a, [float(tok) for tok in tokens])
    if cps_spec is not None:
        grid = _parse_float_list(str(cps_spec), "--checkpoints")
        if grid and grid[-1] != T:
            grid.append(T)
    else:
        grid = [T]
    policy = XPolicy(
        x_min=float(res.get("x_min", X_MIN)),
        x_safety=float(res.get("x_safety", X_SAFETY)),
    )
    trace = integrate_mean_square(
        params, sigma, T, quad_tol=quad_tol, checkpoint_grid=grid,
        workers=(int(workers) if workers is not None else None),
        x_policy=policy,
        eval_cap=(int(eval_cap) if eval_cap is not None else None),
    )
    config = {
        "command": "meansquare", "a": _fmt(a), "w": w_spec,
        "sigma": _fmt(sigma), "T": _fmt(T), "quad_tol": _fmt(quad_tol),
        "checkpoints": ",".join(_fmt(c) for c in grid),
        "workers": workers if workers is not None else 1,
    }
    _emit(trace_to_csv(trace, config_lines=_config_lines(config)),
          res.get("out"))
    return 0


def _self_test(res: _Resolved) -> int:
    """Randomized suite for the exact boundary telescoping identity."""
    rng = random.Random(20260815)
    cases = 100
    worst = 0.0
    for _ in range(cases):
        r = rng.randint(1, 3)
        a = 0.25 + 2.0 * rng.random()
        w = tuple(0.5 + 1.5 * rng.random() for _ in range(r))
        s = complex(-2.0 + 6.0 * rng.random(), -8.0 + 16.0 * rng.random())
        x = 1.0 + 4.0 * rng.random()
        N = x + 1.0 + 6.0 * rng.random()
        lhs, rhs = boundary_identity_check(a, w, s, x, N)
        err = abs(lhs - rhs) / max(1.0, abs(rhs))
        worst = max(worst, err)
    passed = worst <= 1e-12
    config = {"command": "verify", "self_test": "boundary_identity",
              "cases": cases, "seed": 20260815}
    record = {"max_relative_error": worst, "tolerance": 1e-12, "pass": passed}
    _emit(json.dumps({"config": config, **record}, indent=2) + "\n",
          res.get("out"))
    return 0 if passed else 1


def _cmd_verify(res: _Resolved) -> int:
    if res.get("self_test"):
        return _self_test(res)
    a = float(res.require("a", "--a"))
    w_spec = str(res.require("w", "--w"))
    sigma = float(res.require("sigma", "--sigma"))
    grid_spec = str(res.require("t_grid", "--T-grid"))
    mode = str(res.require("weights_mode", "--weights-mode"))
    quad_tol = float(res.get("quad_tol", 1e-6))
    rel_tol = float(res.get("rel_tol", 1e-6))
    workers = res.get("workers")
    if mode not in ("independent", "rational"):
        raise InvalidParameter(f"--weights-mode must be independent|rational, got {mode!r}")

    tokens = parse_weights(w_spec)
    params = validate_params(a, [float(tok) for tok in tokens])
    structure = analyze_weights(tokens, declared_mode=mode)
    T_grid = _parse_float_list(grid_spec, "--T-grid")
    report = verify_theorems(
        params, sigma, T_grid, structure, quad_tol=quad_tol,
        tilde_rel_tol=rel_tol,
        workers=(int(workers) if workers is not None else None),
    )
    config = {
        "command": "verify", "a": _fmt(a), "w": w_spec, "sigma": _fmt(sigma),
        "T_grid": ",".join(_fmt(c) for c in T_grid), "weights_mode": mode,
        "quad_tol": _fmt(quad_tol), "rel_tol": _fmt(rel_tol),
        "workers": workers if workers is not None else 1,
    }
    payload = {"config": config, **report_to_dict(report)}
    _emit(json.dumps(payload, indent=2) + "\n", res.get("out"))
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--a", type=float, help="shift a > 0")
    sp.add_argument("--w", type=str,
                    help="comma-separated weights; 'p/q' and integers are exact")
    sp.add_argument("--sigma", type=float, help="real part of s")
    sp.add_argument("--rel-tol", dest="rel_tol", type=float,
                    help="relative tolerance (default 1e-8)")
    sp.add_argument("--term-cap", dest="term_cap", type=int,
                    help="summation/evaluation budget override")
    sp.add_argument("--config", type=str,
                    help="key=value config file; flags override")
    sp.add_argument("--out", type=str, help="write the record to this path")
    sp.add_argument("--format", type=str, choices=["json", "csv", "text"],
                    help="output format (default json)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="barneszeta",
        description="Barnes multiple zeta evaluation, diagonal constants, "
                    "mean-square integrals, and growth-exponent verification",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("eval", help="evaluate zeta_r(sigma + it, a, w)")
    _add_common(sp)
    sp.add_argument("--t", type=float, help="imaginary part of s (default 0)")
    sp.add_argument("--x", type=float, help="truncation height override")
    sp.add_argument("--method", type=str, choices=["direct", "approx", "auto"],
                    help="evaluation method (default auto)")
    sp.add_argument("--C", dest="c", type=float,
                    help="validity-margin constant C > 1 (default 2)")
    sp.set_defaults(func=_cmd_eval)

    sp = sub.add_parser("tilde", help="diagonal constant tilde-zeta(sigma)")
    _add_common(sp)
    sp.add_argument("--weights-mode", dest="weights_mode", type=str,
                    choices=["independent", "rational"],
                    help="declared weight structure")
    sp.set_defaults(func=_cmd_tilde)

    sp = sub.add_parser("meansquare",
                        help="I(T) = integral of |zeta_r(sigma+it)|^2, CSV trace")
    _add_common(sp)
    sp.add_argument("--T", dest="big_t", type=float, help="upper endpoint T > 1")
    sp.add_argument("--checkpoints", type=str,
                    help="comma-separated checkpoint T values")
    sp.add_argument("--quad-tol", dest="quad_tol", type=float,
                    help="quadrature tolerance (default 1e-6)")
    sp.add_argument("--workers", type=int, help="parallel worker processes")
    sp.add_argument("--x-min", dest="x_min", type=float,
                    help="inner policy: minimum truncation height")
    sp.add_argument("--x-safety", dest="x_safety", type=float,
                    help="inner policy: safety factor on x")
    sp.set_defaults(func=_cmd_meansquare)

    sp = sub.add_parser("verify",
                        help="fit the residual exponent and test the bound")
    _add_common(sp)
    sp.add_argument("--T-grid", dest="t_grid", type=str,
                    help="comma-separated T checkpoints (>= 4, span >= 8x)")
    sp.add_argument("--weights-mode", dest="weights_mode", type=str,
                    choices=["independent", "rational"],
                    help="declared weight structure")
    sp.add_argument("--quad-tol", dest="quad_tol", type=float,
                    help="quadrature tolerance (default 1e-6)")
    sp.add_argument("--workers", type=int, help="parallel worker processes")
    sp.add_argument("--self-test", dest="self_test", action="store_true",
                    default=None,
                    help="run the randomized boundary-identity suite")
    sp.set_defaults(func=_cmd_verify)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        res = _Resolved(args)
        return args.func(res)
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
