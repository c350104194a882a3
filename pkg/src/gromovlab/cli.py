"""Command-line front end: witness sweeps, defect sampling, verification.

Three subcommands:

  sweep   -- evaluate one witness family over a parameter grid, write CSV
  sample  -- random-quadruple defect estimation on an exact backend
  verify  -- run every invariant suite; exit 3 on any failure

CSV conventions: mandatory header, 17 significant digits, one row per
parameter, a trailing `error` column that is empty on success, and a
final `# summary ...` comment line.  `wall_ms` is 0 unless --timings is
given, so that identical config + seed reproduces identical bytes.

Config files are plain `key = value` lines with optional `[family.<id>]`
sections; command-line flags win over config values.  The environment
variable GROMOVLAB_LOG sets the logging level.

Exit codes: 0 success, 1 usage error, 2 row-level computation failure,
3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import logging
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import core, exact, models, verify, witnesses

log = logging.getLogger("gromovlab.cli")


# ---------------------------------------------------------------------------
# witness families

def _flat_exp(x: float) -> witnesses.WitnessReport:
    return witnesses.flat_witness(models.FLAT_EXP_MODEL, x)


def _flat_quartic(x: float) -> witnesses.WitnessReport:
    return witnesses.flat_witness(models.FLAT_QUARTIC_MODEL, x)


FAMILIES = {
    "tetra": witnesses.tetra_witness,
    "gn": witnesses.gn_witness,
    "product": witnesses.product_witness,
    "hinge": witnesses.hinge_witness,
    "flat_exp": _flat_exp,
    "flat_quartic": _flat_quartic,
}

# fixed column schema per family; a report whose term names disagree is a
# row-level error, never a silently reshaped file
_FAMILY_TERMS = {
    "tetra": ("royal", "pq"),
    "gn": ("lb_mid", "shift", "honest_lo"),
    "product": ("defect_exact", "midpoint_dev"),
    "hinge": ("lb_split", "ub_pair", "lb_ratio", "ub_chain"),
    "flat_exp": ("lb_ratio", "lb_half", "ub_ball", "lb_cross", "ub_slice"),
    "flat_quartic": ("lb_ratio", "lb_half", "ub_ball", "lb_cross", "ub_slice"),
}

# abscissa for the summary regression: divergence rates are stated
# against these per-family scales
_SUMMARY_X = {
    "tetra": ("atanh(param)", math.atanh),
    "gn": ("atanh(param)", math.atanh),
    "product": ("param", lambda p: p),
    "hinge": ("log(1/param)", lambda p: -math.log(p)),
    "flat_exp": ("log(1/param)", lambda p: -math.log(p)),
    "flat_quartic": ("log(1/param)", lambda p: -math.log(p)),
}

_SLOPE_VERDICT_CUT = 0.05


def _fmt(v: float) -> str:
    return format(v, ".17g")


def _sweep_row(task: tuple[str, float, bool]) -> dict[str, str]:
    """One CSV row as a dict of already formatted strings.

    Module-level (not a closure) so a process pool can ship it.
    """
    family, param, timings = task
    names = _FAMILY_TERMS[family]
    row = {"param": _fmt(param), "S_lb": "", "wall_ms": "0", "error": ""}
    for name in names:
        row[name] = ""
    t0 = time.perf_counter()
    try:
        rep = FAMILIES[family](param)
        got = tuple(name for name, _ in rep.terms)
        if got != names:
            raise RuntimeError(f"term schema drifted: {got} != {names}")
        bad = [name for name, ok in rep.checks if not ok]
        if bad:
            raise RuntimeError("checks failed: " + "; ".join(bad))
        row["S_lb"] = _fmt(rep.s_lb)
        for name, value in rep.terms:
            row[name] = _fmt(value)
    except Exception as e:
        row["error"] = f"{type(e).__name__}: {e}"
    if timings:
        row["wall_ms"] = _fmt(1e3 * (time.perf_counter() - t0))
    return row


@dataclass(frozen=True)
class SweepConfig:
    family: str
    grid: tuple[float, ...]
    out: str
    seed: int = 0
    workers: int = 1
    timings: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if not self.grid:
            raise ValueError("empty parameter grid")
        diffs = np.diff(self.grid)
        if not (np.all(diffs > 0) or np.all(diffs < 0)):
            raise ValueError("grid must be strictly monotone")
        if self.workers < 1:
            raise ValueError("worker count must be >= 1")


def parse_grid(spec: str) -> tuple[float, ...]:
    """Comma list of floats, or geom:start:ratio:count."""
    spec = spec.strip()
    if spec.startswith("geom:"):
        parts = spec.split(":")
        if len(parts) != 4:
            raise ValueError("geometric grid is geom:start:ratio:count")
        start, ratio = float(parts[1]), float(parts[2])
        count = int(parts[3])
        if count < 1 or start <= 0 or ratio <= 0 or ratio == 1.0:
            raise ValueError("geometric grid needs start > 0, ratio != 1, count >= 1")
        return tuple(start * ratio**k for k in range(count))
    values = tuple(float(tok) for tok in spec.split(",") if tok.strip())
    if not values:
        raise ValueError("empty grid spec")
    return values


def _summary_line(family: str, params: list[float], s_lbs: list[float]) -> str:
    xlabel, to_x = _SUMMARY_X[family]
    if len(params) < 2:
        return (f"# summary family={family} points={len(params)} "
                f"verdict=insufficient-points")
    xs = np.array([to_x(p) for p in params])
    slope = float(np.polyfit(xs, np.array(s_lbs), 1)[0])
    if slope >= _SLOPE_VERDICT_CUT:
        verdict = "diverging"
    else:
        verdict = "no-divergence-slope-test-fails"
    return (f"# summary family={family} points={len(params)} x={xlabel} "
            f"slope={slope:.6g} verdict={verdict}")


def run_sweep(config: SweepConfig) -> int:
    """Evaluate the family over the grid and write the CSV.  Returns the
    exit code: 0, or 2 when any row carries an error."""
    names = _FAMILY_TERMS[config.family]
    header = ["param", "S_lb", *names, "wall_ms", "error"]
    tasks = [(config.family, p, config.timings) for p in config.grid]
    log.info("sweep family=%s points=%d workers=%d",
             config.family, len(tasks), config.workers)
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(_sweep_row, tasks))
    else:
        rows = [_sweep_row(t) for t in tasks]

    ok_params, ok_slbs = [], []
    failed = 0
    for p, row in zip(config.grid, rows):
        if row["error"]:
            failed += 1
            log.warning("row param=%s failed: %s", row["param"], row["error"])
        else:
            ok_params.append(p)
            ok_slbs.append(float(row["S_lb"]))
    with open(config.out, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        fh.write(_summary_line(config.family, ok_params, ok_slbs) + "\n")
    log.info("sweep wrote %s (%d rows, %d failed)", config.out, len(rows), failed)
    return 2 if failed else 0


# ---------------------------------------------------------------------------
# sampling backends

def _disc_point(rng: np.random.Generator) -> complex:
    r = 0.999 * math.sqrt(rng.uniform(0.0, 1.0))
    th = rng.uniform(0.0, 2.0 * math.pi)
    return complex(r * math.cos(th), r * math.sin(th))


def _ball_point(rng: np.random.Generator):
    v = rng.normal(size=4)
    v *= 0.999 * rng.uniform(0.0, 1.0) ** 0.25 / np.linalg.norm(v)
    return (complex(v[0], v[1]), complex(v[2], v[3]))


def _polydisc_point(rng: np.random.Generator):
    return (_disc_point(rng), _disc_point(rng))


def _royal(u: float):
    return (u, u, u * u)


def _tetra_royal_distance(u: float, v: float) -> float:
    return exact.tetra_pair_distance(_royal(u), _royal(v), u)


def _tetra_param(rng: np.random.Generator) -> float:
    return float(rng.uniform(-0.9, 0.9))


def _axis_point(rng: np.random.Generator):
    return (float(rng.uniform(-3.0, 3.0)), float(rng.uniform(-3.0, 3.0)))


def _sample_setup(domain: str, directed_scale: float | None, period: int):
    """Distance function and sampler factory for one backend.

    The factory is rebuilt per checkpoint so that injection counters
    restart and a length-n prefix is shared by all checkpoints.
    """
    if domain == "disc":
        return exact.disc_oracle().fn, lambda: core.uniform_quadruple_sampler(_disc_point)
    if domain == "ball":
        return exact.ball_oracle(2).fn, lambda: core.uniform_quadruple_sampler(_ball_point)
    if domain == "tetra":
        return _tetra_royal_distance, lambda: core.uniform_quadruple_sampler(_tetra_param)
    if domain != "polydisc":
        raise ValueError(f"unknown sample domain {domain!r}")
    if directed_scale is None:
        return (
            exact.polydisc_oracle(2).fn,
            lambda: core.uniform_quadruple_sampler(_polydisc_point),
        )
    # witness-directed run: the axis representation stays exact at any
    # scale (tanh saturates doubles near 19), so the injected product
    # quadruples keep their defect verbatim
    rep = witnesses.product_witness(directed_scale)
    injected = [rep.quadruple]
    return (
        exact.polydisc_axis_oracle(2).fn,
        lambda: core.mixed_quadruple_sampler(
            core.uniform_quadruple_sampler(_axis_point), injected, period=period
        ),
    )


def run_sample(
    domain: str,
    n: int,
    seed: int,
    out: str,
    directed_scale: float | None = None,
    period: int = 8,
) -> int:
    """Sampled sup of four-point defects, with rows at decade checkpoints.

    Checkpoints share their draw prefix (fresh rng per checkpoint, fixed
    seed), so sup_defect is monotone down the file.
    """
    if n < 1:
        raise ValueError("sample size must be >= 1")
    d, sampler_factory = _sample_setup(domain, directed_scale, period)
    checkpoints = [10**k for k in range(1, 12) if 10**k < n]
    checkpoints.append(n)
    log.info("sample domain=%s n=%d seed=%d directed=%s",
             domain, n, seed, directed_scale)
    rows = []
    last = None
    for ck in checkpoints:
        t0 = time.perf_counter()
        last = core.estimate_delta(d, sampler_factory(), ck, seed=seed)
        wall = 1e3 * (time.perf_counter() - t0)
        rows.append({
            "n": str(ck),
            "sup_defect": _fmt(last.sup_defect),
            "wall_ms": "0",
            "error": "",
        })
        log.debug("checkpoint n=%d sup=%.6g (%.0f ms)", ck, last.sup_defect, wall)
    with open(out, "w", newline="") as fh:
        writer = csv.DictWriter(
            fh, fieldnames=["n", "sup_defect", "wall_ms", "error"], lineterminator="\n"
        )
        writer.writeheader()
        writer.writerows(rows)
        assert last is not None
        scale_note = "" if directed_scale is None else f" directed_scale={_fmt(directed_scale)}"
        fh.write(f"# summary domain={domain} n={n} seed={seed}"
                 f"{scale_note} sup={_fmt(last.sup_defect)}\n")
        fh.write(f"# argmax {last.argmax!r}\n")
    return 0


# ---------------------------------------------------------------------------
# config files

def load_config(path: str) -> dict[str, dict[str, str]]:
    """Plain `key = value` lines with `[family.<id>]` sections.

    Returns {section: {key: value}}; the anonymous leading section is "".
    """
    sections: dict[str, dict[str, str]] = {"": {}}
    current = ""
    with open(path) as fh:
        for ln, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("[") and line.endswith("]"):
                current = line[1:-1].strip()
                sections.setdefault(current, {})
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{ln}: expected key = value")
            key, _, value = line.partition("=")
            sections[current][key.strip()] = value.strip()
    return sections


def _cfg_lookup(cfg: dict[str, dict[str, str]], section: str, key: str) -> str | None:
    if section in cfg and key in cfg[section]:
        return cfg[section][key]
    return cfg[""].get(key)


# ---------------------------------------------------------------------------
# entry point

class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the contract reserves 2 for
    # row-level failures, so remap to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="gromovlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="witness-family parameter sweep")
    p_sweep.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p_sweep.add_argument("--grid", help="comma list or geom:start:ratio:count")
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--seed", type=int, default=None)
    p_sweep.add_argument("--workers", type=int, default=None)
    p_sweep.add_argument("--timings", action="store_true",
                         help="record real wall_ms (breaks byte reproducibility)")
    p_sweep.add_argument("--config", default=None)

    p_sample = sub.add_parser("sample", help="random-quadruple defect sampling")
    p_sample.add_argument("--domain", required=True,
                          choices=("disc", "ball", "polydisc", "tetra"))
    p_sample.add_argument("--n", type=int, required=True)
    p_sample.add_argument("--seed", type=int, default=None)
    p_sample.add_argument("--out", required=True)
    p_sample.add_argument("--config", default=None)

    p_verify = sub.add_parser("verify", help="run every invariant suite")
    p_verify.add_argument("--tolerance", type=float, default=1.0)
    p_verify.add_argument("--mutate", action="store_true",
                          help="perturb frozen anchors; the run must fail")
    p_verify.add_argument("--config", default=None)
    return parser


def _cmd_sweep(args) -> int:
    cfg = load_config(args.config) if args.config else {"": {}}
    section = f"family.{args.family}"
    grid_spec = args.grid or _cfg_lookup(cfg, section, "grid")
    if grid_spec is None:
        print("gromovlab sweep: no --grid and no grid in config", file=sys.stderr)
        return 1
    seed = args.seed if args.seed is not None else int(_cfg_lookup(cfg, section, "seed") or 0)
    workers = (args.workers if args.workers is not None
               else int(_cfg_lookup(cfg, section, "workers") or 1))
    config = SweepConfig(
        family=args.family,
        grid=parse_grid(grid_spec),
        out=args.out,
        seed=seed,
        workers=workers,
        timings=args.timings,
    )
    return run_sweep(config)


def _cmd_sample(args) -> int:
    cfg = load_config(args.config) if args.config else {"": {}}
    section = f"family.{args.domain}"
    seed = args.seed if args.seed is not None else int(_cfg_lookup(cfg, section, "seed") or 0)
    raw_scale = _cfg_lookup(cfg, section, "directed_scale")
    period = int(_cfg_lookup(cfg, section, "period") or 8)
    return run_sample(
        domain=args.domain,
        n=args.n,
        seed=seed,
        out=args.out,
        directed_scale=float(raw_scale) if raw_scale is not None else None,
        period=period,
    )


def _cmd_verify(args) -> int:
    results = verify.run_all(tolerance=args.tolerance, mutate=args.mutate)
    all_passed = True
    for res in results:
        word = "PASS" if res.passed else "FAIL"
        all_passed &= res.passed
        print(f"{word} {res.name}: {res.detail}")
    print(f"{'OK' if all_passed else 'FAILED'} "
          f"({sum(r.passed for r in results)}/{len(results)} suites)")
    return 0 if all_passed else 3


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("GROMOVLAB_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "sample":
            return _cmd_sample(args)
        return _cmd_verify(args)
    except (ValueError, OSError) as e:
        print(f"gromovlab {args.command}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
