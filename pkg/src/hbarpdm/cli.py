"""Command-line front end.

Subcommands::

    hbarpdm spectrum --lambda 2 --a 0.1 --state 0,2 --oracle
    hbarpdm table1 [--format csv]
    hbarpdm order --lambdas=-3,-2,-1,1,2,3 --a-values 0.05,0.1 --n 3
    hbarpdm oracle --lambda -3 --state 1,1

Exit codes: 0 ok, 1 usage, 2 no stable orbit, 3 oracle failure,
4 golden-table mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np

from . import _kernels
from .coulomb_pdm import CoulombPDM, check_ordering, numerov_energy
from .errors import NoStableOrbitError, OracleConvergenceError, StateNotFoundError
from .models import AmbiguitySet, ModelDomainError
from .oracle.numerov import DEFAULT_STEP, solve_state
from .recursion import DEFAULT_ORDER, QuantumNumbers, expand_energy

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_ORBIT = 2
EXIT_ORACLE = 3
EXIT_MISMATCH = 4

UNITS_NOTE = "hbar = 2 m_c = 1 unless overridden"

# |E^(k)| for k = 0..5, then |E_num|, for q = 10, a = 0.1, m_c = 0.5, hbar = 1
TABLE1_REFERENCE = {
    (2.0, 0, 2): ([1.77778, 1.94444, 1.83333, 1.83000, 1.83111, 1.83111], 1.83111),
    (3.0, 0, 2): ([1.18817, 1.45345, 1.25876, 1.24978, 1.25190, 1.25184], 1.25183),
    (-2.0, 0, 2): ([3.64395, 3.50153, 3.58047, 3.57934, 3.58015, 3.58014], 3.58014),
    (-3.0, 0, 2): ([4.04566, 3.83753, 3.94991, 3.94732, 3.94898, 3.94896], 3.94897),
    (2.0, 1, 1): ([1.77778, 2.27778, 2.07556, 2.05556, 2.06000, 2.06000], 2.06000),
    (3.0, 1, 1): ([1.18817, 1.98401, 1.66974, 1.61180, 1.62647, 1.62478], 1.62510),
    (-2.0, 1, 1): ([3.64395, 3.21669, 3.39891, 3.39064, 3.39352, 3.39330], 3.39329),
    (-3.0, 1, 1): ([4.04566, 3.42127, 3.69143, 3.67228, 3.67887, 3.67837], 3.67834),
}
TABLE1_PARAMS = dict(m_c=0.5, a=0.1, q=10.0, hbar=1.0)
TABLE1_ORDER = 5

log = logging.getLogger("hbarpdm")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage errors with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x) -> str:
    """Numbers for csv output: 12 significant digits, blank for missing."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.12g}"


# -- configuration ------------------------------------------------------------


@dataclass
class RunConfig:
    q: float = 10.0
    m_c: float = 0.5
    a: float = 0.1
    lam: float = 0.0
    alpha: float = 0.0
    gamma: float = 0.0
    hbar: float = 1.0
    states: list = field(default_factory=lambda: [(0, 0)])
    order: int = DEFAULT_ORDER
    oracle: bool = False
    format: str = "human"
    abs: bool = False

    @property
    def params(self) -> CoulombPDM:
        return CoulombPDM(m_c=self.m_c, a=self.a, lam=self.lam, q=self.q, hbar=self.hbar)

    @property
    def amb(self) -> AmbiguitySet:
        return AmbiguitySet(self.alpha, self.gamma)

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name == "states":
                v = ";".join(f"{nr},{l}" for nr, l in v)
            elif isinstance(v, bool):
                v = "true" if v else "false"
            elif isinstance(v, float):
                v = repr(v)
            lines.append(f"{_KEY_ALIASES_REV.get(f.name, f.name)} = {v}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RunConfig":
        return cls(**parse_config_text(text))


_KEY_ALIASES = {"lambda": "lam", "mc": "m_c"}
_KEY_ALIASES_REV = {"lam": "lambda"}
_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def parse_state(text: str) -> tuple[int, int]:
    try:
        nr, l = (int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"state must look like 'n_r,l', got {text!r}") from None
    if nr < 0 or l < 0:
        raise UsageError(f"quantum numbers must be non-negative, got {text!r}")
    return nr, l


def parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"not a boolean: {text!r}")


def _convert(key: str, raw: str):
    kind = _FIELD_TYPES[key]
    if key == "states":
        return [parse_state(s) for s in raw.replace(" ", "").split(";") if s]
    try:
        if kind == "float":
            return float(raw)
        if kind == "int":
            return int(raw)
    except ValueError:
        raise UsageError(f"bad value for {key}: {raw!r}") from None
    if kind == "bool":
        return parse_bool(raw)
    return raw.strip()


def parse_config_text(text: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected key = value")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = _KEY_ALIASES.get(key, key)
        if key not in _FIELD_TYPES:
            raise UsageError(f"config line {lineno}: unknown key {key!r}")
        out[key] = _convert(key, raw)
    return out


def build_config(args) -> RunConfig:
    """Defaults, then the config file, then explicit flags."""
    values = {}
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                values.update(parse_config_text(fh.read()))
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
    for name in _FIELD_TYPES:
        v = getattr(args, name, None)
        if v is not None:
            values[name] = v
    cfg = RunConfig(**values)
    if cfg.format not in ("human", "csv", "json"):
        raise UsageError(f"unknown format {cfg.format!r}")
    if not cfg.states:
        raise UsageError("no states requested")
    # constructing the models validates m_c > 0 and q > 0
    cfg.params.mass, cfg.params.potential
    return cfg


# -- workers (module level so they can run in a process pool) -----------------


def _spectrum_one(job):
    cfg, (nr, l) = job
    p = cfg.params
    qn = QuantumNumbers(nr, l, cfg.hbar)
    try:
        res = expand_energy(p.mass, p.potential, qn, K=cfg.order, amb=cfg.amb)
    except (NoStableOrbitError, ModelDomainError) as exc:
        return {"error": "no_orbit", "message": f"no stable orbit for state ({nr},{l}): {exc}"}
    out = {
        "lambda": cfg.lam,
        "a": cfg.a,
        "q": cfg.q,
        "m_c": cfg.m_c,
        "hbar": cfg.hbar,
        "alpha": cfg.alpha,
        "gamma": cfg.gamma,
        "nr": nr,
        "l": l,
        "order": cfg.order,
        "r0": res.r0,
        "omega": res.omega,
        "corrections": [float(e) for e in res.corrections],
        "partials": [float(e) for e in res.partials],
        "converged": res.converged,
        "oracle": None,
        "meta": {
            "units": {"hbar": cfg.hbar, "m_c": cfg.m_c, "convention": UNITS_NOTE},
            "stable_roots": int(res.meta.get("stable_roots", 1)),
            "multiple_stable_roots": bool(res.meta.get("multiple_stable_roots", False)),
        },
    }
    if cfg.oracle:
        try:
            st = solve_state(p.mass, p.potential, qn, cfg.amb, with_wave=False)
        except (StateNotFoundError, OracleConvergenceError, ModelDomainError) as exc:
            return {"error": "oracle", "message": f"oracle failed for state ({nr},{l}): {exc}"}
        out["oracle"] = {
            "E_num": st.energy,
            "node_count": st.node_count,
            "grid_points": st.grid.points,
            "r_max": st.grid.r_max,
            "matched": st.refined_by_matching,
        }
    return out


def _oracle_one(job):
    cfg, (nr, l), h, refine, backend = job
    p = cfg.params
    qn = QuantumNumbers(nr, l, cfg.hbar)
    try:
        st = solve_state(p.mass, p.potential, qn, cfg.amb, h=h, with_wave=False, backend=backend)
        out = {
            "lambda": cfg.lam,
            "a": cfg.a,
            "q": cfg.q,
            "nr": nr,
            "l": l,
            "E_num": st.energy,
            "node_count": st.node_count,
            "grid_points": st.grid.points,
            "r_max": st.grid.r_max,
            "step": st.grid.h,
            "E_refined": None,
        }
        if refine:
            fine = solve_state(p.mass, p.potential, qn, cfg.amb, grid=st.grid.refined(), with_wave=False, backend=backend)
            out["E_refined"] = fine.energy
        return out
    except StateNotFoundError as exc:
        if isinstance(exc.__cause__, NoStableOrbitError):
            return {"error": "no_orbit", "message": f"no stable orbit for state ({nr},{l}): {exc}"}
        return {"error": "oracle", "message": f"oracle failed for state ({nr},{l}): {exc}"}
    except (OracleConvergenceError, ModelDomainError) as exc:
        return {"error": "oracle", "message": f"oracle failed for state ({nr},{l}): {exc}"}


def _order_one(job):
    p, n = job
    chk = check_ordering(p, n, numerov_energy)
    E = chk.energies
    observed = None
    if not chk.skipped:
        diffs = [E[(k, n - 1 - k)] - E[(k - 1, n - k)] for k in range(1, n)]
        tol = 1e-9 * abs(chk.E_B)
        if all(abs(d) <= tol for d in diffs):
            observed = "degenerate"
        elif all(d < 0 for d in diffs):
            observed = "normal"
        elif all(d > 0 for d in diffs):
            observed = "inverted"
        else:
            observed = "mixed"
    ratios = [r for r in chk.ratios.values() if r is not None]
    return {
        "lambda": p.lam,
        "a": p.a,
        "n": n,
        "predicted": chk.ordering,
        "observed": observed,
        "R_min": min(ratios) if ratios else None,
        "mass_bound": None if chk.skipped else not any(v.startswith("mass bound") for v in chk.violations),
        "violations": chk.violations,
        "skipped": chk.skipped,
    }


def _run_jobs(fn, jobs, n_workers: int):
    if n_workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n_workers) as ex:
        return list(ex.map(fn, jobs))


def _first_error(results):
    for r in results:
        if "error" in r:
            return r
    return None


def _report_error(err) -> int:
    print(f"error: {err['message']}", file=sys.stderr)
    return EXIT_NO_ORBIT if err["error"] == "no_orbit" else EXIT_ORACLE


# -- spectrum -------------------------------------------------------------------


SPECTRUM_HEADER = ["lambda", "a", "q", "nr", "l", "k", "E_k", "E_partial", "E_num", "converged"]


def render_spectrum(results, cfg: RunConfig) -> str:
    sign = abs if cfg.abs else (lambda x: x)
    if cfg.format == "json":
        doc = []
        for r in results:
            r = json.loads(json.dumps(r))
            if cfg.abs:
                r["partials"] = [abs(x) for x in r["partials"]]
                if r["oracle"]:
                    r["oracle"]["E_num"] = abs(r["oracle"]["E_num"])
            doc.append(r)
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(SPECTRUM_HEADER)
        for r in results:
            e_num = r["oracle"]["E_num"] if r["oracle"] else None
            for k, (ek, ep) in enumerate(zip(r["corrections"], r["partials"])):
                w.writerow(
                    [fmt(r["lambda"]), fmt(r["a"]), fmt(r["q"]), r["nr"], r["l"], k, fmt(ek), fmt(sign(ep)),
                     fmt(None if e_num is None else sign(e_num)), fmt(r["converged"])]
                )
        return buf.getvalue()
    lines = []
    for r in results:
        lines.append(
            f"state n_r={r['nr']} l={r['l']}   lambda={r['lambda']:g} a={r['a']:g} q={r['q']:g}   "
            f"r0={r['r0']:.5f} omega={r['omega']:.5f}"
        )
        lines.append(f"  {'k':>2}  {'E_k':>12}  {'E^(k)':>12}")
        for k, (ek, ep) in enumerate(zip(r["corrections"], r["partials"])):
            lines.append(f"  {k:>2}  {ek:>12.5f}  {sign(ep):>12.5f}")
        if r["oracle"]:
            lines.append(f"  E_num = {sign(r['oracle']['E_num']):.5f}")
        lines.append(f"  converged: {'yes' if r['converged'] else 'no'}")
        if r["meta"]["multiple_stable_roots"]:
            lines.append(f"  note: {r['meta']['stable_roots']} stable orbits, innermost used")
        lines.append("")
    return "\n".join(lines)


def cmd_spectrum(args) -> int:
    cfg = build_config(args)
    results = _run_jobs(_spectrum_one, [(cfg, s) for s in cfg.states], args.jobs)
    err = _first_error(results)
    if err:
        return _report_error(err)
    sys.stdout.write(render_spectrum(results, cfg))
    return EXIT_OK


# -- table1 ---------------------------------------------------------------------


def _table1_one(key):
    lam, nr, l = key
    p = CoulombPDM(lam=lam, **TABLE1_PARAMS)
    qn = QuantumNumbers(nr, l, p.hbar)
    res = expand_energy(p.mass, p.potential, qn, K=TABLE1_ORDER)
    try:
        e_num = solve_state(p.mass, p.potential, qn, with_wave=False).energy
    except (StateNotFoundError, OracleConvergenceError) as exc:
        return {"error": "oracle", "message": f"oracle failed for lambda={lam} ({nr},{l}): {exc}"}
    return {"key": key, "partials": [float(x) for x in res.partials], "E_num": e_num}


def compare_table1(results, perturb: float = 0.0) -> list[str]:
    """Cells whose absolute value, rounded to 5 decimals, differs from the reference."""
    diffs = []
    for r in results:
        ref_partials, ref_num = TABLE1_REFERENCE[r["key"]]
        lam, nr, l = r["key"]
        for k, (got, ref) in enumerate(zip(r["partials"], ref_partials)):
            if k == 0:
                got = got + perturb
            if round(abs(got), 5) != ref:
                diffs.append(f"lambda={lam:g} ({nr},{l}) k={k}: got {abs(got):.7f}, reference {ref:.5f}")
        if round(abs(r["E_num"]), 5) != ref_num:
            diffs.append(f"lambda={lam:g} ({nr},{l}) E_num: got {abs(r['E_num']):.7f}, reference {ref_num:.5f}")
    return diffs


def render_table1(results, form: str, use_abs: bool) -> str:
    sign = abs if use_abs else (lambda x: x)
    if form == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lambda", "nr", "l", "k", "E_partial", "E_num"])
        for r in results:
            lam, nr, l = r["key"]
            for k, ep in enumerate(r["partials"]):
                w.writerow([fmt(lam), nr, l, k, fmt(sign(ep)), fmt(sign(r["E_num"]))])
        return buf.getvalue()
    if form == "json":
        doc = [
            {"lambda": r["key"][0], "nr": r["key"][1], "l": r["key"][2],
             "partials": [sign(x) for x in r["partials"]], "E_num": sign(r["E_num"])}
            for r in results
        ]
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    labels = [f"({nr},{l}) {lam:+g}" for lam, nr, l in (r["key"] for r in results)]
    lines = ["  k " + "".join(f"{s:>14}" for s in labels)]
    for k in range(TABLE1_ORDER + 1):
        lines.append(f"{k:>3} " + "".join(f"{sign(r['partials'][k]):>14.5f}" for r in results))
    lines.append("num " + "".join(f"{sign(r['E_num']):>14.5f}" for r in results))
    return "\n".join(lines) + "\n"


def cmd_table1(args) -> int:
    keys = list(TABLE1_REFERENCE)
    results = _run_jobs(_table1_one, keys, args.jobs)
    err = _first_error(results)
    if err:
        return _report_error(err)
    sys.stdout.write(render_table1(results, args.format or "human", args.abs))
    diffs = compare_table1(results, args.perturb)
    if diffs:
        print(f"{len(diffs)} cell(s) differ from the reference table:", file=sys.stderr)
        for d in diffs:
            print("  " + d, file=sys.stderr)
        return EXIT_MISMATCH
    print("all 56 cells match the reference table", file=sys.stderr)
    return EXIT_OK


# -- order ----------------------------------------------------------------------


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of numbers, got {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


ORDER_HEADER = ["lambda", "a", "n", "predicted", "observed", "R_min", "mass_bound", "status"]


def render_order(rows, form: str) -> str:
    def status(r):
        return "skipped" if r["skipped"] else ("ok" if not r["violations"] else "violation")

    if form == "json":
        return json.dumps(rows, indent=2, sort_keys=True) + "\n"
    if form == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(ORDER_HEADER)
        for r in rows:
            w.writerow([fmt(r["lambda"]), fmt(r["a"]), r["n"], r["predicted"], r["observed"] or "",
                        fmt(r["R_min"]), fmt(r["mass_bound"]), status(r)])
        return buf.getvalue()
    lines = [f"{'lambda':>7} {'a':>6} {'n':>2}  {'predicted':<10} {'observed':<10} {'R_min':>9}  status"]
    for r in rows:
        R = f"{r['R_min']:.5f}" if r["R_min"] is not None else "-"
        lines.append(
            f"{r['lambda']:>7g} {r['a']:>6g} {r['n']:>2}  {r['predicted']:<10} {r['observed'] or '-':<10} {R:>9}  {status(r)}"
        )
        for v in r["violations"]:
            lines.append(f"    {v}")
        if r["skipped"]:
            lines.append(f"    skipped: {r['skipped']}")
    return "\n".join(lines) + "\n"


def cmd_order(args) -> int:
    lams = _float_list(args.lambdas)
    avals = _float_list(args.a_values)
    ns = _int_list(args.n)
    if any(n < 2 for n in ns):
        raise UsageError("multiplets need n >= 2")
    jobs = [
        (CoulombPDM(m_c=args.mc, a=a, lam=lam, q=args.q, hbar=args.hbar), n)
        for lam in lams for a in avals for n in ns
    ]
    rows = _run_jobs(_order_one, jobs, args.jobs)
    sys.stdout.write(render_order(rows, args.format or "human"))
    n_viol = sum(1 for r in rows if r["violations"])
    n_skip = sum(1 for r in rows if r["skipped"])
    print(f"{len(rows)} grid points: {n_viol} with violations, {n_skip} skipped", file=sys.stderr)
    return EXIT_OK if n_viol == 0 else EXIT_MISMATCH


# -- oracle ---------------------------------------------------------------------


def render_oracle(rows, cfg: RunConfig) -> str:
    sign = abs if cfg.abs else (lambda x: x)
    keys = ["lambda", "a", "q", "nr", "l", "E_num", "node_count", "grid_points", "r_max", "step", "E_refined"]
    if cfg.format == "json":
        out = []
        for r in rows:
            r = dict(r)
            r["E_num"] = sign(r["E_num"])
            if r["E_refined"] is not None:
                r["E_refined"] = sign(r["E_refined"])
            out.append(r)
        return json.dumps(out, indent=2, sort_keys=True) + "\n"
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        for r in rows:
            vals = dict(r, E_num=sign(r["E_num"]))
            if r["E_refined"] is not None:
                vals["E_refined"] = sign(r["E_refined"])
            w.writerow([fmt(vals[k]) for k in keys])
        return buf.getvalue()
    lines = []
    for r in rows:
        line = (f"n_r={r['nr']} l={r['l']}  E_num = {sign(r['E_num']):.5f}  nodes={r['node_count']}  "
                f"points={r['grid_points']}  r_max={r['r_max']:.4g}")
        if r["E_refined"] is not None:
            line += f"  halved-step change={r['E_refined'] - r['E_num']:.2e}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def cmd_oracle(args) -> int:
    cfg = build_config(args)
    jobs = [(cfg, s, args.step, args.refine, args.backend) for s in cfg.states]
    rows = _run_jobs(_oracle_one, jobs, args.jobs)
    err = _first_error(rows)
    if err:
        return _report_error(err)
    sys.stdout.write(render_oracle(rows, cfg))
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def _add_model_flags(p):
    p.add_argument("--config", help="key = value file; explicit flags override it")
    p.add_argument("--q", type=float, help="Coulomb coupling (default 10)")
    p.add_argument("--a", type=float, help="mass scale a in m_c/(1 + a r)^lambda (default 0.1)")
    p.add_argument("--lambda", dest="lam", type=float, help="mass exponent (default 0)")
    p.add_argument("--mc", dest="m_c", type=float, help="reference mass (default 0.5)")
    p.add_argument("--hbar", type=float, help="value of hbar (default 1)")
    p.add_argument("--alpha", type=float, help="ordering parameter alpha (default 0)")
    p.add_argument("--gamma", type=float, help="ordering parameter gamma (default 0)")
    p.add_argument("--state", dest="states", action="append", metavar="NR,L",
                   help="quantum numbers, repeatable (default 0,0)")
    p.add_argument("--format", choices=["human", "csv", "json"])
    p.add_argument("--abs", action="store_const", const=True, help="print absolute values of energies")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hbarpdm", description="hbar-expansion spectra for position-dependent masses")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    sp = sub.add_parser("spectrum", help="hbar-expansion energies for given states")
    _add_model_flags(sp)
    sp.add_argument("--order", type=int, help=f"expansion order K (default {DEFAULT_ORDER})")
    sp.add_argument("--oracle", action="store_const", const=True, help="also solve numerically")
    sp.set_defaults(func=cmd_spectrum)

    tp = sub.add_parser("table1", help="reference table for the Coulomb + power-law mass example")
    tp.add_argument("--format", choices=["human", "csv", "json"])
    tp.add_argument("--abs", action="store_true", help="print absolute values of energies")
    tp.add_argument("--jobs", type=int, default=1)
    tp.add_argument("--perturb", type=float, default=0.0, help=argparse.SUPPRESS)
    tp.set_defaults(func=cmd_table1)

    op = sub.add_parser("order", help="level-ordering scan with numerical energies")
    op.add_argument("--lambdas", default="-3,-2,-1,1,2,3")
    op.add_argument("--a-values", default="0.05,0.1")
    op.add_argument("--n", default="3", help="principal numbers, comma-separated")
    op.add_argument("--q", type=float, default=10.0)
    op.add_argument("--mc", type=float, default=0.5)
    op.add_argument("--hbar", type=float, default=1.0)
    op.add_argument("--format", choices=["human", "csv", "json"])
    op.add_argument("--jobs", type=int, default=1)
    op.set_defaults(func=cmd_order)

    np_ = sub.add_parser("oracle", help="numerical eigenvalues only")
    _add_model_flags(np_)
    np_.add_argument("--step", type=float, default=DEFAULT_STEP, help="log-grid step")
    np_.add_argument("--refine", action="store_true", help="repeat with half the step and report the change")
    np_.add_argument("--backend", choices=sorted(_kernels.BACKENDS), help="Numerov kernel")
    np_.set_defaults(func=cmd_oracle)
    return parser


def _normalise_states(args):
    if getattr(args, "states", None) is not None:
        args.states = [parse_state(s) for s in args.states]


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    try:
        _normalise_states(args)
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, ModelDomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
