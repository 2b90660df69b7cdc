"""Command-line entry point: ``trafficnet <command> ...``.

Exit codes: 0 ok, 1 usage error, 2 data error, 3 internal error.
"""
from __future__ import annotations

import argparse
import csv
import logging
import math
import sys
import traceback
from pathlib import Path

import numpy as np

from . import readwrite as rw
from .errors import CountTooLarge, EmptyResult, InvalidParams, InvalidStrategy, TrafficNetError
from .fractal import box_cover_curve
from .graphcore import clustering_coefficient, distance_stats, giant_component
from .influence import STRATEGIES, default_cutoff, dismantle, top_influencers
from .netstats import assortativity, correlation_profile, degree_distribution
from .skeleton import edge_betweenness_array, extract_skeleton, random_spanning_tree
from .synthgen import KINDS, SynthSpec, generate
from .traffic import TrafficMatrix, build_graph, read_traffic_csv, remove_isolated, write_traffic_csv

log = logging.getLogger("trafficnet")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3
# graphs above this size get sampled BFS sources for the average distance
SAMPLE_ABOVE = 10_000
SAMPLED_SOURCES = 1000
# never echoed: they name where output goes or how fast it is made, not what it is
_NOT_ECHOED = {"out", "config", "workers", "verbose", "func"}
TABLE_COLUMNS = ("threshold", "network_size", "isolated", "isolation_rate", "degree_exponent",
                 "fractal_dimension", "average_distance", "clustering_coefficient", "pearson_coefficient")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------- helpers

def _clean(x):
    """JSON-safe copy: numpy scalars to Python, NaN/inf to None."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_clean(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, Path):
        return str(x)
    return x


def _echo(args) -> dict:
    return {k: _clean(v) for k, v in sorted(vars(args).items()) if k not in _NOT_ECHOED}


def _doc(args, **body) -> dict:
    return _clean({"format_version": rw.FORMAT_VERSION, "config": _echo(args), **body})


def parse_thresholds(text: str) -> list[float]:
    """``Z`` or ``start:stop:step`` (stop inclusive)."""
    try:
        parts = [float(p) for p in text.split(":")]
    except ValueError:
        raise UsageError(f"bad threshold {text!r}") from None
    if len(parts) == 1:
        zs = parts
    elif len(parts) == 3 and parts[2] > 0 and parts[1] >= parts[0]:
        a, b, step = parts
        count = int(math.floor((b - a) / step + 1e-9)) + 1
        zs = [round(a + i * step, 10) for i in range(count)]
    else:
        raise UsageError(f"bad threshold range {text!r}; expected start:stop:step")
    for z in zs:
        if not 0.0 < z < 1.0:
            raise UsageError(f"threshold must lie in (0, 1), got {z}")
    return zs


def _param_value(text: str):
    for conv in (int, float):
        try:
            return conv(text)
        except ValueError:
            pass
    return text


def _positive(name, value):
    if value is not None and value < 1:
        raise UsageError(f"--{name} must be >= 1")


class _stage:
    """Prefix library errors with the analysis stage that raised them."""

    def __init__(self, name):
        self.name = name

    def __enter__(self):
        return self

    def __exit__(self, tp, exc, tb):
        if exc is not None and isinstance(exc, TrafficNetError) and not str(exc).startswith(self.name):
            raise type(exc)(f"{self.name}: {exc}") from exc
        return False


def _write_box_dat(path, res):
    rw.write_columns(path, "L_b N_b_min N_b_max", res.sizes, res.counts_min, res.counts_max)


# ---------------------------------------------------------------- commands

def cmd_synth(args) -> None:
    params = {}
    for item in args.param or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"--param expects KEY=VALUE, got {item!r}")
        params[key.strip()] = _param_value(value.strip())
    out = generate(SynthSpec(args.kind, params, args.seed))
    if isinstance(out, TrafficMatrix):
        write_traffic_csv(out, args.out)
    else:
        rw.write_graph(out, args.out, extra=_doc(args, generator={"kind": args.kind, "params": params}))


def _build_one(m: TrafficMatrix, z: float):
    g = build_graph(m, z)
    try:
        sub, isolated, rate = remove_isolated(g)
    except TrafficNetError:
        return None, {"threshold": z, "original_size": g.n, "network_size": 0, "isolated": g.n,
                      "isolation_rate": 1.0, "edges": 0}
    return sub, {"threshold": z, "original_size": g.n, "network_size": sub.n, "isolated": isolated,
                 "isolation_rate": rate, "edges": sub.m}


def cmd_build(args) -> None:
    zs = parse_thresholds(args.threshold)
    m = read_traffic_csv(args.input)
    out = Path(args.out)
    if len(zs) == 1 and ":" not in args.threshold:
        sub, report = _build_one(m, zs[0])
        if sub is None:
            raise EmptyResult(f"every station is isolated at Z={zs[0]}")
        rw.write_graph(sub, out, extra=_doc(args, build=report))
        rw.write_json(out.with_suffix(".report.json"), _doc(args, **report))
        print(f"N={report['network_size']} isolated={report['isolated']} rate={report['isolation_rate']:.4f}")
        return
    rows = []
    for z in zs:
        sub, report = _build_one(m, z)
        lam = degree_distribution(sub).lam if sub is not None else None
        rows.append({**report, "degree_exponent": lam})
    cols = ["threshold", "network_size", "isolated", "isolation_rate", "edges", "degree_exponent"]
    with open(out.with_suffix(".sweep.csv"), "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow(["" if r[c] is None else repr(r[c]) if isinstance(r[c], float) else r[c] for c in cols])
    rw.write_json(out.with_suffix(".sweep.json"), _doc(args, rows=rows))


def _load_graph(path):
    g, doc = rw.read_graph(path)
    return g, doc


def cmd_analyze(args) -> None:
    for name in ("reps", "ci_radius", "ensemble", "cutoff", "swaps"):
        _positive(name.replace("_", "-"), getattr(args, name))
    if args.profile_bins <= 1:
        raise UsageError("--profile-bins (log-bin base) must exceed 1")
    g_in, doc = _load_graph(args.graph)
    build = doc.get("build", {})
    original = int(build.get("original_size", g_in.n))
    with _stage("graphcore"):
        g, newly_isolated, _ = remove_isolated(g_in)
    isolated = int(build.get("isolated", 0)) + newly_isolated
    giant, _ = giant_component(g)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)

    with _stage("netstats"):
        fit_range = None
        if args.fit_kmin is not None or args.fit_kmax is not None:
            fit_range = (args.fit_kmin or 1, args.fit_kmax or int(g.degrees.max()))
        dd = degree_distribution(g, fit_range)
        rw.write_columns(outdir / "degree.dat", "k P(k)", dd.k, dd.pk)
        r = assortativity(g)
    with _stage("graphcore"):
        sources = args.distance_sources
        if sources is None and giant.n > SAMPLE_ABOVE:
            sources = SAMPLED_SOURCES
        ds = distance_stats(g, sources, args.seed)
        clustering = clustering_coefficient(g)
    with _stage("fractal"):
        original_boxes = box_cover_curve(giant, args.reps, args.seed, args.workers)
    with _stage("skeleton"):
        eb = edge_betweenness_array(giant)
        sk = extract_skeleton(giant, args.start, eb)
        rt = random_spanning_tree(giant, args.seed, eb)
        sk_graph, rt_graph = sk.as_graph(), rt.as_graph()
        rw.write_graph(sk_graph, outdir / "skeleton", weights=sk.weights(),
                       extra=_doc(args, start=args.start))
        sk_boxes = box_cover_curve(sk_graph, args.reps, args.seed, args.workers)
        rt_boxes = box_cover_curve(rt_graph, args.reps, args.seed, args.workers)
        lam_sk = degree_distribution(sk_graph).lam
    for name, res in (("original", original_boxes), ("skeleton", sk_boxes), ("random_tree", rt_boxes)):
        _write_box_dat(outdir / f"boxes_{name}.dat", res)

    cutoff = default_cutoff(g.n) if args.cutoff is None else args.cutoff
    curves = {}
    with _stage("influence"):
        for strategy in STRATEGIES:
            c = dismantle(g, strategy, args.ci_radius, cutoff, args.seed)
            curves[strategy] = c.to_dict()
            rw.write_columns(outdir / f"gq_{strategy}.dat", "q G(q)", c.q_values, c.g_values)
    with _stage("netstats"):
        prof = correlation_profile(g, args.profile_bins, args.ensemble, args.swaps, args.seed)
        _write_profile(outdir / "profile", prof, args)

    table = {
        "threshold": g_in.threshold,
        "network_size": g.n,
        "isolated": isolated,
        "isolation_rate": isolated / original,
        "degree_exponent": dd.lam,
        "fractal_dimension": original_boxes.d_b,
        "average_distance": ds.average_distance,
        "clustering_coefficient": clustering,
        "pearson_coefficient": r,
    }
    summary = _doc(
        args,
        table=table,
        giant_component_size=giant.n,
        degree_distribution=dd.to_dict(),
        small_world={"average_distance": ds.average_distance, "diameter": ds.diameter,
                     "ln_network_size": math.log(g.n), "sampled_sources": ds.sampled_sources,
                     "clustering_coefficient": clustering},
        fractal={"original": original_boxes.to_dict(), "skeleton": sk_boxes.to_dict(),
                 "random_tree": rt_boxes.to_dict()},
        skeleton={"n": giant.n, "start": args.start, "lambda_skeleton": lam_sk, "d_b_skeleton": sk_boxes.d_b},
        influence=curves,
        profile=_profile_meta(prof),
    )
    rw.write_json(outdir / "summary.json", summary)


def _profile_meta(p) -> dict:
    return {"bin_edges": p.bin_edges, "ensemble_size": p.ensemble_size, "swaps_per_sample": p.swaps_per_sample,
            "seed": p.seed, "populated_cells": int(p.populated().sum()),
            "mean_abs_deviation": p.mean_abs_deviation()}


def _write_profile(stem: Path, p, args) -> None:
    """R(k1,k2) as CSV: two header rows of bin bounds, then one row per k1 bin."""
    lo, hi = p.bin_edges[:-1], p.bin_edges[1:]
    with open(stem.with_suffix(".csv"), "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k_lo"] + [repr(float(x)) for x in lo])
        w.writerow(["k_hi"] + [repr(float(x)) for x in hi])
        for b, row in enumerate(p.ratio):
            w.writerow([repr(float(lo[b]))] + ["" if np.isnan(v) else repr(float(v)) for v in row])
    rw.write_json(stem.with_suffix(".json"), _doc(args, observed=p.observed, null_mean=p.null_mean,
                                                   ratio=p.ratio, **_profile_meta(p)))


def cmd_influence(args) -> None:
    _positive("ci-radius", args.ci_radius)
    if args.count < 0:
        raise UsageError("--count must be >= 0")
    g, _ = _load_graph(args.graph)
    rows = top_influencers(g, args.count, args.ci_radius, args.seed)
    out = Path(args.out)
    with open(out, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["rank", "station_id", "degree", "lon", "lat"])
        for t in rows:
            w.writerow([t.rank, t.station_id, t.degree, "" if math.isnan(t.lon) else repr(t.lon),
                        "" if math.isnan(t.lat) else repr(t.lat)])
    rw.write_json(out.with_suffix(".json"), _doc(args, count=len(rows), n=g.n))


def cmd_skeleton(args) -> None:
    _positive("reps", args.reps)
    g, _ = _load_graph(args.graph)
    giant, _ = giant_component(g)
    sk = extract_skeleton(giant, args.start)
    h = sk.as_graph()
    res = box_cover_curve(h, args.reps, args.seed, args.workers)
    summary = {"n": giant.n, "start": args.start, "lambda_skeleton": degree_distribution(h).lam,
               "d_b_skeleton": res.d_b, "r_squared": res.r_squared}
    rw.write_graph(h, args.out, weights=sk.weights(), extra=_doc(args, summary=summary))


def cmd_fractal(args) -> None:
    _positive("reps", args.reps)
    g, _ = _load_graph(args.graph)
    giant, _ = giant_component(g)
    res = box_cover_curve(giant, args.reps, args.seed, args.workers, trim_saturation=not args.no_trim)
    out = Path(args.out)
    rw.write_json(out.with_suffix(".json"), _doc(args, giant_component_size=giant.n, **res.to_dict()))
    _write_box_dat(out.with_suffix(".dat"), res)


def cmd_profile(args) -> None:
    _positive("ensemble", args.ensemble)
    _positive("swaps", args.swaps)
    if args.profile_bins <= 1:
        raise UsageError("--profile-bins (log-bin base) must exceed 1")
    g, _ = _load_graph(args.graph)
    p = correlation_profile(g, args.profile_bins, args.ensemble, args.swaps, args.seed)
    _write_profile(Path(args.out), p, args)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="file of key=value lines; command-line flags win")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="trafficnet", description="Traffic-correlation network analysis.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("synth", parents=[common], help="generate a synthetic traffic CSV or graph")
    s.add_argument("kind", choices=KINDS)
    s.add_argument("--param", action="append", metavar="KEY=VALUE", help="generator parameter (repeatable)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_synth)

    s = sub.add_parser("build", parents=[common], help="correlation graph from a traffic CSV")
    s.add_argument("input")
    s.add_argument("--threshold", default="0.54", help="Z, or start:stop:step for a sweep")
    s.add_argument("--out", required=True, help="output stem")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("analyze", parents=[common], help="full statistics of a graph")
    s.add_argument("graph")
    s.add_argument("--reps", type=int, default=1000, help="box-covering repetitions per L_b")
    s.add_argument("--ci-radius", type=int, default=2)
    s.add_argument("--cutoff", type=int, default=None, help="giant size ending dismantling (default ceil sqrt N)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--profile-bins", type=float, default=2.0, help="log-bin base for the correlation profile")
    s.add_argument("--ensemble", type=int, default=100)
    s.add_argument("--swaps", type=int, default=None, help="successful swaps per null sample (default 10|E|)")
    s.add_argument("--start", type=int, default=0, help="skeleton start node (giant-component index)")
    s.add_argument("--fit-kmin", type=int, default=None)
    s.add_argument("--fit-kmax", type=int, default=None)
    s.add_argument("--distance-sources", type=int, default=None)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", required=True, help="output directory")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("influence", parents=[common], help="ranked collective-influence nodes")
    s.add_argument("graph")
    s.add_argument("--count", type=int, default=500)
    s.add_argument("--ci-radius", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True, help="CSV path")
    s.set_defaults(func=cmd_influence)

    s = sub.add_parser("skeleton", parents=[common], help="betweenness skeleton of the giant component")
    s.add_argument("graph")
    s.add_argument("--start", type=int, default=0)
    s.add_argument("--reps", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", required=True, help="output stem")
    s.set_defaults(func=cmd_skeleton)

    s = sub.add_parser("fractal", parents=[common], help="box-covering curve of the giant component")
    s.add_argument("graph")
    s.add_argument("--reps", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--no-trim", action="store_true", help="fit over every L_b, saturated ones included")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", required=True, help="output stem")
    s.set_defaults(func=cmd_fractal)

    s = sub.add_parser("profile", parents=[common], help="degree correlation profile against a rewired null")
    s.add_argument("graph")
    s.add_argument("--profile-bins", type=float, default=2.0)
    s.add_argument("--ensemble", type=int, default=100)
    s.add_argument("--swaps", type=int, default=None)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True, help="output stem")
    s.set_defaults(func=cmd_profile)
    return p


def read_config(path) -> list[tuple[str, str]]:
    items = []
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    with fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep or not key.strip():
                raise UsageError(f"{path}:{lineno}: expected key=value")
            items.append((key.strip().lstrip("-").replace("-", "_"), value.strip()))
    return items


def _config_path(argv) -> str | None:
    for i, a in enumerate(argv):
        if a == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--config="):
            return a.split("=", 1)[1]
    return None


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    path = _config_path(argv)
    command = next((a for a in argv if not a.startswith("-")), None)
    if path is None or command is None:
        return
    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    sp = subparsers.choices.get(command)
    if sp is None:
        return
    actions = {a.dest: a for a in sp._actions if a.option_strings}
    defaults = {}
    for key, value in read_config(path):
        action = actions.get(key)
        if action is None or key in ("config", "help"):
            raise UsageError(f"{path}: unknown setting {key!r} for {command}")
        if isinstance(action, argparse._StoreTrueAction):
            if value.lower() not in ("1", "0", "true", "false", "yes", "no"):
                raise UsageError(f"{path}: {key} expects true/false")
            defaults[key] = value.lower() in ("1", "true", "yes")
        elif isinstance(action, argparse._AppendAction):
            defaults.setdefault(key, []).append(value)
        else:
            if action.choices is not None and value not in action.choices:
                raise UsageError(f"{path}: {key} must be one of {', '.join(map(str, action.choices))}")
            # argparse runs string defaults through the option's type
            defaults[key] = value
        if action.required:
            action.required = False
    sp.set_defaults(**defaults)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        if getattr(args, "out", None) is None:
            raise UsageError(f"{args.command}: --out is required")
        if getattr(args, "workers", 1) < 1:
            raise UsageError("--workers must be >= 1")
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        args.func(args)
    except (UsageError, InvalidParams, InvalidStrategy, CountTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TrafficNetError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception:  # noqa: BLE001
        traceback.print_exc()
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
