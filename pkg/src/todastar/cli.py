"""Command-line front end: runs the verification checks, renders reports as
text or versioned JSON, and aggregates everything through the `suite`
subcommand whose summary mirrors the acceptance checklist.

All parameters are exact rationals in a/b form; floating point is rejected.
Reports are deterministic for a fixed configuration and seed; --no-timing
zeroes the wall-clock fields so byte-identical output can be asserted.
"""

from __future__ import annotations

import argparse
import configparser
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from todastar._backend import KERNEL_NAME
from todastar import foundations
from todastar.coefficients import series_tanh, GaussRational, HbarSeries
from todastar.integrability import (
    CheckReport,
    check_char_commute,
    check_rll,
    check_rtt,
    classical_checks,
)
from todastar.lax_catalog import ALL_SYSTEMS, Params, SystemId
from todastar.r_matrices import (
    CASIMIR_RATIONAL,
    TRIG_TILDE,
    build_classical_r,
    build_quantum_R,
    check_cybe,
    check_qybe,
    check_unitarity,
    expected_unitarity_scalar,
    qybe_f_order,
)
from todastar.sampling import random_series, rng_for
from todastar.waring import (
    char_coeff,
    correction_formula,
    corrected_trace_poly,
    find_noncommuting_traces,
    quantum_correction,
    trace_poly,
    waring_backward,
    waring_forward,
)

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/[1-9]\d*)?$")

VERIFY_TARGETS = (
    "cybe",
    "qybe",
    "unitarity",
    "rll",
    "rtt",
    "commute",
    "classical",
    "repr",
)


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise argparse.ArgumentTypeError(
            f"expected an exact rational a or a/b, got {text!r}"
        )
    return Fraction(text)


def parse_params(text: str) -> Params:
    fields = {}
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if "=" not in piece:
            raise argparse.ArgumentTypeError(
                f"parameters look like eps=1,g=3,delta=1/2; got {piece!r}"
            )
        key, _, value = piece.partition("=")
        key = key.strip()
        if key not in ("eps", "g", "delta"):
            raise argparse.ArgumentTypeError(f"unknown parameter {key!r}")
        fields[key] = parse_rational(value)
    try:
        return Params(**fields)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def parse_systems(text: str):
    if text.strip().lower() == "all":
        return ALL_SYSTEMS
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        try:
            out.append(SystemId(piece))
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"unknown system {piece!r}; choose from "
                + ",".join(s.value for s in ALL_SYSTEMS)
            ) from None
    return tuple(out)


def parse_ints(text: str):
    try:
        values = tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from None
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("particle counts must be positive")
    return values


@dataclass
class RunConfig:
    order: int = 8
    params: Params = Params()
    systems: tuple = ALL_SYSTEMS
    n_range: tuple = (1, 2, 3)
    output: str = "text"
    seed: int = 0
    jobs: int = 1
    no_timing: bool = False

    def stamp(self) -> dict:
        p = self.params
        return {
            "order": self.order,
            "params": f"eps={p.eps},g={p.g},delta={p.delta}",
            "systems": ",".join(s.value for s in self.systems),
            "seed": self.seed,
            "kernel": KERNEL_NAME,
        }


# ---------------------------------------------------------------------------
# task execution; tasks are picklable (kind, kwargs) pairs so a worker pool
# can run them, with report order fixed by task order


def _matrix_report(name, res) -> CheckReport:
    from todastar.integrability import _matrix_witness

    terms, witness = _matrix_witness(res)
    return CheckReport(
        name=name, passed=terms == 0, residual_terms=terms, witness=witness
    )


def _group_R(group: str, eps: Fraction, order: int, variables=("lam", "mu")):
    half_i = GaussRational(0, Fraction(1, 2))
    if group == "A":
        f = HbarSeries.term(GaussRational(0, 1), 1, order)
        return build_quantum_R(CASIMIR_RATIONAL, f, variables, order)
    if group == "B":
        return build_quantum_R(
            TRIG_TILDE, series_tanh(half_i, order) * Fraction(-2), variables, order
        )
    return build_quantum_R(
        TRIG_TILDE, series_tanh(half_i * eps, order) * Fraction(-2), variables, order
    )


def _execute(task) -> list:
    kind, kw = task
    import time as _time

    t0 = _time.perf_counter()
    if kind == "cybe":
        r = build_classical_r(kw["kind"], order=kw["order"])
        rep = _matrix_report(f"cybe.{kw['kind']}", check_cybe(r))
    elif kind == "qybe_table":
        R = _group_R(kw["group"], kw["eps"], kw["order"])
        label = kw["group"] if kw["group"] != "C" else f"C(eps={kw['eps']})"
        rep = _matrix_report(f"qybe.{label}", check_qybe(R))
    elif kind == "qybe_random":
        rng = rng_for(kw["seed"], f"qybe.{kw['kind']}.{kw['idx']}")
        f = random_series(rng, kw["order"], zero_const=True)
        R = build_quantum_R(kw["kind"], f, order=kw["order"])
        rep = _matrix_report(
            f"qybe.random.{kw['kind']}.{kw['idx']}", check_qybe(R)
        )
    elif kind == "qybe_f3":
        r = build_classical_r(kw["kind"], order=kw["order"])
        rep = _matrix_report(f"qybe.f3.{kw['kind']}", qybe_f_order(r, 3))
    elif kind == "unitarity":
        R = _group_R(kw["group"], kw["eps"], kw["order"])
        scalar = check_unitarity(R)
        expected = expected_unitarity_scalar(kw["group"], kw["eps"], kw["order"])
        if scalar is None:
            rep = CheckReport(
                name=f"unitarity.{kw['group']}",
                passed=False,
                residual_terms=1,
                witness="product is not a scalar multiple of the identity",
            )
        else:
            ok = scalar.eq(expected)
            rep = CheckReport(
                name=f"unitarity.{kw['group']}",
                passed=ok,
                residual_terms=0 if ok else 1,
                witness=f"scalar: {scalar}",
            )
    elif kind == "rll":
        rep = check_rll(
            SystemId(kw["system"]), _params(kw), kw["order"], kw.get("r_override")
        )
    elif kind == "rll_negative":
        inner = check_rll(
            SystemId(kw["system"]), _params(kw), kw["order"], kw["r_override"]
        )
        rep = CheckReport(
            name=f"rll.negative_control.{kw['system']}.R={kw['r_override']}",
            passed=not inner.passed,
            residual_terms=0 if not inner.passed else 1,
            witness=inner.witness,
        )
    elif kind == "rtt":
        rep = check_rtt(SystemId(kw["system"]), kw["n"], _params(kw), kw["order"])
    elif kind == "commute":
        rep = check_char_commute(
            SystemId(kw["system"]), kw["n"], kw["variant"], _params(kw), kw["order"]
        )
    elif kind == "classical":
        reports = classical_checks(kw["n"], kw["order"])
        return reports
    elif kind == "repr":
        which = kw["which"]
        if which == "linearity":
            rep = foundations.check_repr_linearity(50, kw["order"], kw["seed"])
        else:
            rep = foundations.check_representation(which, 100, kw["order"], kw["seed"])
    elif kind == "foundation":
        rep = _FOUNDATION_CHECKS[kw["which"]](kw["order"], kw["seed"])
    elif kind == "waring_identities":
        rep = _check_waring_identities(kw["n_max"], kw["order"])
    elif kind == "correction":
        rep = _check_correction(kw["n"], kw["k"], kw["order"])
    elif kind == "def21":
        rep = _check_def21(kw["n"], kw["k_max"], kw["order"])
    elif kind == "asymmetry":
        rep = _check_asymmetry(kw["n_max"], kw["k_max"], kw["order"])
    else:
        raise ValueError(f"unknown task kind {kind!r}")
    if not rep.wall_time_ms:
        rep.wall_time_ms = (_time.perf_counter() - t0) * 1e3
    return [rep]


def _params(kw) -> Params:
    return Params(kw["eps"], kw["g"], kw["delta"])


_FOUNDATION_CHECKS = {
    "assoc.weyl": lambda order, seed: foundations.check_associativity(
        "weyl", 50, order, seed
    ),
    "assoc.standard": lambda order, seed: foundations.check_associativity(
        "standard", 50, order, seed
    ),
    "limits": lambda order, seed: foundations.check_limits(50, order, seed),
    "intertwine": lambda order, seed: foundations.check_intertwining(50, order, seed),
    "conjugation": lambda order, seed: foundations.check_conjugation(50, order, seed),
    "parity": lambda order, seed: foundations.check_parity(50, order, seed),
    "disjoint": lambda order, seed: foundations.check_disjoint(50, order, seed),
}


def _check_waring_identities(n_max: int, order: int) -> CheckReport:
    import time as _time

    t0 = _time.perf_counter()
    failures = 0
    witness = None
    for n in range(1, n_max + 1):
        I = [trace_poly(n, k, order) for k in range(1, n + 1)]
        J = [char_coeff(n, k, order) for k in range(1, n + 1)]
        for k in range(1, n + 1):
            if not (waring_forward(I, k) - J[k - 1]).is_zero():
                failures += 1
                witness = witness or f"forward direction n={n} k={k}"
            if not (waring_backward(J, k) - I[k - 1]).is_zero():
                failures += 1
                witness = witness or f"backward direction n={n} k={k}"
    return CheckReport(
        name=f"waring.identities.n<={n_max}",
        passed=failures == 0,
        residual_terms=failures,
        witness=witness,
        wall_time_ms=(_time.perf_counter() - t0) * 1e3,
    )


def _check_correction(n: int, k: int, order: int) -> CheckReport:
    import time as _time

    t0 = _time.perf_counter()
    corr = quantum_correction(n, k, order)
    formula = correction_formula(n, k, order)
    if formula is None:
        passed = True
        witness = f"correction: {corr} (no reference form for k={k})"
        terms = 0
    else:
        res = corr - formula
        passed = res.is_zero()
        terms = len(res.terms)
        witness = f"correction: {corr}" if passed else f"difference: {res}"
    return CheckReport(
        name=f"waring.correction.n={n}.k={k}",
        passed=passed,
        residual_terms=terms,
        witness=witness,
        wall_time_ms=(_time.perf_counter() - t0) * 1e3,
    )


def _check_def21(n: int, k_max: int, order: int) -> CheckReport:
    """All corrected quantities pairwise star-commute and commute with H."""
    import time as _time

    from todastar.lax_catalog import hamiltonian
    from todastar.phase_algebra import star_commutator

    t0 = _time.perf_counter()
    quantities = [corrected_trace_poly(n, k, order) for k in range(1, k_max + 1)]
    H = hamiltonian(n, order)
    failures = 0
    witness = None
    for a in range(len(quantities)):
        comm = star_commutator(quantities[a], H)
        if not comm.is_zero():
            failures += 1
            witness = witness or f"[I^{a + 1}, H] != 0"
        for b in range(a + 1, len(quantities)):
            comm = star_commutator(quantities[a], quantities[b])
            if not comm.is_zero():
                failures += 1
                witness = witness or f"[I^{a + 1}, I^{b + 1}] != 0"
    return CheckReport(
        name=f"quantum.def21.n={n}.k<={k_max}",
        passed=failures == 0,
        residual_terms=failures,
        witness=witness,
        wall_time_ms=(_time.perf_counter() - t0) * 1e3,
    )


def _check_asymmetry(n_max: int, k_max: int, order: int) -> CheckReport:
    import time as _time

    t0 = _time.perf_counter()
    hit = find_noncommuting_traces(n_max, k_max, order)
    if hit is None:
        return CheckReport(
            name="quantum.asymmetry",
            passed=False,
            residual_terms=1,
            witness="no noncommuting pair of plain trace polynomials found",
            wall_time_ms=(_time.perf_counter() - t0) * 1e3,
        )
    n, j, k, comm = hit
    return CheckReport(
        name="quantum.asymmetry",
        passed=True,
        residual_terms=0,
        witness=f"n={n}: commutator of trace polys {j} and {k} is {comm}",
        wall_time_ms=(_time.perf_counter() - t0) * 1e3,
    )


# ---------------------------------------------------------------------------
# task builders


def _pk(cfg: RunConfig, **extra) -> dict:
    p = cfg.params
    base = {"eps": p.eps, "g": p.g, "delta": p.delta, "order": cfg.order}
    base.update(extra)
    return base


def build_verify_tasks(what: str, cfg: RunConfig, r_override=None) -> list:
    tasks = []
    if what == "cybe":
        for kind in (CASIMIR_RATIONAL, TRIG_TILDE):
            tasks.append(("cybe", {"kind": kind, "order": cfg.order}))
    elif what == "qybe":
        for group in "ABC":
            tasks.append(
                ("qybe_table", {"group": group, "eps": cfg.params.eps, "order": cfg.order})
            )
        for kind in (CASIMIR_RATIONAL, TRIG_TILDE):
            tasks.append(("qybe_f3", {"kind": kind, "order": cfg.order}))
            for idx in range(5):
                tasks.append(
                    (
                        "qybe_random",
                        {"kind": kind, "idx": idx, "seed": cfg.seed, "order": cfg.order},
                    )
                )
    elif what == "unitarity":
        for group in "ABC":
            tasks.append(
                ("unitarity", {"group": group, "eps": cfg.params.eps, "order": cfg.order})
            )
    elif what == "rll":
        for system in cfg.systems:
            tasks.append(("rll", _pk(cfg, system=system.value, r_override=r_override)))
    elif what == "rtt":
        for system in cfg.systems:
            for n in cfg.n_range:
                tasks.append(("rtt", _pk(cfg, system=system.value, n=n)))
    elif what == "commute":
        for system in cfg.systems:
            for n in cfg.n_range:
                for variant in ("plain", "tilde"):
                    tasks.append(
                        ("commute", _pk(cfg, system=system.value, n=n, variant=variant))
                    )
    elif what == "classical":
        for n in cfg.n_range:
            tasks.append(("classical", {"n": n, "order": cfg.order}))
    elif what == "repr":
        for which in ("standard", "weyl", "linearity"):
            tasks.append(
                ("repr", {"which": which, "order": cfg.order, "seed": cfg.seed})
            )
    else:
        raise ValueError(f"unknown verification target {what!r}")
    return tasks


def build_suite_tasks(cfg: RunConfig) -> list:
    """The acceptance checklist, in a fixed order."""
    tasks = []
    tasks += build_verify_tasks("cybe", cfg)
    tasks += build_verify_tasks("qybe", cfg)
    tasks += build_verify_tasks("unitarity", cfg)
    alt = Params(Fraction(2), Fraction(3), Fraction(1, 2))
    for system in cfg.systems:
        tasks.append(("rll", _pk(cfg, system=system.value, r_override=None)))
        tasks.append(
            (
                "rll",
                {
                    "system": system.value,
                    "eps": alt.eps,
                    "g": alt.g,
                    "delta": alt.delta,
                    "order": cfg.order,
                    "r_override": None,
                },
            )
        )
    tasks.append(("rll_negative", _pk(cfg, system="A1", r_override="B1")))
    for system in cfg.systems:
        tasks.append(("rtt", _pk(cfg, system=system.value, n=2, order=6)))
    for system in cfg.systems:
        for n in (2, 3):
            for variant in ("plain", "tilde"):
                tasks.append(
                    (
                        "commute",
                        _pk(cfg, system=system.value, n=n, variant=variant, order=6),
                    )
                )
    for variant in ("plain", "tilde"):
        tasks.append(("commute", _pk(cfg, system="A1", n=4, variant=variant, order=6)))
    for n in range(1, 5):
        tasks.append(("classical", {"n": n, "order": cfg.order}))
    tasks.append(("waring_identities", {"n_max": 5, "order": cfg.order}))
    for n in (4, 5):
        for k in range(1, 7):
            tasks.append(("correction", {"n": n, "k": k, "order": cfg.order}))
    for n in (2, 3, 4, 5):
        tasks.append(("def21", {"n": n, "k_max": 5, "order": cfg.order}))
    tasks.append(("asymmetry", {"n_max": 5, "k_max": 6, "order": cfg.order}))
    for which in sorted(_FOUNDATION_CHECKS):
        tasks.append(("foundation", {"which": which, "order": cfg.order, "seed": cfg.seed}))
    tasks += build_verify_tasks("repr", cfg)
    return tasks


def run_tasks(tasks, jobs: int = 1) -> list:
    reports = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for batch in pool.map(_execute, tasks):
                reports.extend(batch)
    else:
        for task in tasks:
            reports.extend(_execute(task))
    return reports


# ---------------------------------------------------------------------------
# report emission


def emit_text(reports, cfg: RunConfig) -> str:
    lines = []
    for rep in reports:
        ms = 0.0 if cfg.no_timing else rep.wall_time_ms
        status = "PASS" if rep.passed else "FAIL"
        line = f"{rep.name:<46} {status}  residual={rep.residual_terms}  {ms:9.1f}ms"
        lines.append(line)
        if not rep.passed and rep.witness:
            lines.append(f"    witness: {rep.witness}")
    failed = sum(0 if r.passed else 1 for r in reports)
    lines.append(
        f"{len(reports)} checks, {failed} failed "
        f"(order={cfg.order}, seed={cfg.seed}, kernel={KERNEL_NAME})"
    )
    return "\n".join(lines)


def emit_json(reports, cfg: RunConfig) -> str:
    stamp = cfg.stamp()
    payload = []
    for rep in reports:
        payload.append(
            {
                "schema": 1,
                "name": rep.name,
                "pass": rep.passed,
                "residual_terms": rep.residual_terms,
                "witness": rep.witness,
                "wall_time_ms": 0.0 if cfg.no_timing else round(rep.wall_time_ms, 3),
                "config": stamp,
            }
        )
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def emit_report(reports, cfg: RunConfig) -> str:
    if cfg.output == "json":
        return emit_json(reports, cfg)
    return emit_text(reports, cfg)


# ---------------------------------------------------------------------------
# argument handling


def load_config_file(path: str) -> dict:
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise argparse.ArgumentTypeError(f"cannot read config file {path!r}")
    if not parser.has_section("run"):
        raise argparse.ArgumentTypeError("config file needs a [run] section")
    section = parser["run"]
    out = {}
    if "order" in section:
        out["order"] = section.getint("order")
    if "seed" in section:
        out["seed"] = section.getint("seed")
    if "jobs" in section:
        out["jobs"] = section.getint("jobs")
    if "params" in section:
        out["params"] = parse_params(section["params"])
    if "systems" in section:
        out["systems"] = parse_systems(section["systems"])
    if "n" in section:
        out["n_range"] = parse_ints(section["n"])
    if "output" in section:
        value = section["output"].strip()
        if value not in ("text", "json"):
            raise argparse.ArgumentTypeError("output must be text or json")
        out["output"] = value
    return out


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--order", type=int, default=None, help="hbar truncation order N (default 8)")
    p.add_argument(
        "--params",
        type=parse_params,
        default=None,
        help="rational parameters, e.g. eps=2,g=3,delta=1/2",
    )
    p.add_argument(
        "--system",
        dest="systems",
        type=parse_systems,
        default=None,
        help="comma-separated systems (A1,A2,B1,B2,B3,C1,C2) or 'all'",
    )
    p.add_argument(
        "--n",
        dest="n_range",
        type=parse_ints,
        default=None,
        help="comma-separated particle counts (default 1,2,3)",
    )
    p.add_argument("--output", choices=("text", "json"), default=None)
    p.add_argument("--seed", type=int, default=None, help="seed for randomized checks")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default 1)")
    p.add_argument("--config", default=None, help="INI config file with a [run] section")
    p.add_argument(
        "--no-timing",
        action="store_true",
        help="zero the wall_time_ms fields for byte-stable reports",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="todastar",
        description="Exact star-product verification for Toda-like integrable systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run one family of identity checks")
    verify.add_argument("what", choices=VERIFY_TARGETS)
    verify.add_argument(
        "--r-override",
        default=None,
        help="pair the Lax matrices with this system's R-matrix instead (rll only)",
    )
    _add_common(verify)

    waring = sub.add_parser("waring", help="deformed trace-polynomial computations")
    wsub = waring.add_subparsers(dest="waring_command", required=True)
    corr = wsub.add_parser("corrections", help="render and check quantum corrections")
    corr.add_argument("--k", type=parse_ints, default=(4, 5, 6), help="orders k to compute")
    _add_common(corr)

    suite = sub.add_parser("suite", help="run the full acceptance checklist")
    _add_common(suite)
    return parser


def make_config(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        for key, value in load_config_file(args.config).items():
            setattr(cfg, key, value)
    for key in ("order", "params", "systems", "n_range", "output", "seed", "jobs"):
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
    if args.no_timing:
        cfg.no_timing = True
    if cfg.order < 2:
        raise argparse.ArgumentTypeError("order must be at least 2 for quantum checks")
    if cfg.jobs < 1:
        raise argparse.ArgumentTypeError("jobs must be at least 1")
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))

    if args.command == "verify":
        if args.r_override is not None and args.what != "rll":
            parser.error("--r-override only applies to verify rll")
        tasks = build_verify_tasks(args.what, cfg, args.r_override)
    elif args.command == "waring":
        tasks = [
            ("correction", {"n": n, "k": k, "order": cfg.order})
            for n in cfg.n_range
            for k in args.k
        ]
    else:
        tasks = build_suite_tasks(cfg)

    reports = run_tasks(tasks, cfg.jobs)
    print(emit_report(reports, cfg))
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
