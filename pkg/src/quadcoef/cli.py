"""Command-line front end: ``quadcoef <command> ...``.

Every command writes CSV to ``--out`` (stdout by default) and progress to
stderr.  Stochastic commands echo the seed they used.  The exit status is 0
only when every input was processed and every check passed.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .analysis import (
    SUMMARY_COLUMNS,
    cdf,
    degree_binned_means,
    feature_vector,
    summary,
    summary_cells,
    write_bins_csv,
    write_cdf_csv,
)
from .graph import EdgeListParseError, EmptyGraphError, bfs_sample, load_edge_list
from .oracle import OracleSizeError
from .report import format_float, full_report, write_report_csv, write_triangle_csv

log = logging.getLogger("quadcoef")

DEFAULT_SEED = 0


@contextlib.contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
        sys.stdout.flush()
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def _seed(args):
    seed = DEFAULT_SEED if args.seed is None else args.seed
    log.info("seed=%d", seed)
    return seed


def _load(path, args, temporal=False):
    return load_edge_list(path, weighted=getattr(args, "weighted", False), temporal=temporal)


def _network_name(path):
    base = os.path.basename(path)
    for ext in (".txt", ".tsv", ".csv", ".edges", ".el"):
        if base.endswith(ext):
            return base[: -len(ext)]
    return base


# -- commands -----------------------------------------------------------------------


def _summary_row(path):
    name = _network_name(path)
    try:
        g = load_edge_list(path)
        if g.edge_count == 0:
            raise EmptyGraphError("graph has no edges")
        return summary_cells(name, summary(g)) + [""], None
    except (OSError, EdgeListParseError, EmptyGraphError, ValueError) as exc:
        return [name] + [""] * (len(SUMMARY_COLUMNS) - 1) + [f"error: {exc}"], exc


def cmd_summary(args):
    jobs = max(1, args.jobs)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_summary_row, args.paths))
    else:
        results = [_summary_row(p) for p in args.paths]
    failed = 0
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SUMMARY_COLUMNS + ["error"])
        for path, (row, exc) in zip(args.paths, results):
            w.writerow(row)
            if exc is not None:
                failed += 1
                log.error("%s: %s", path, exc)
            else:
                log.info("%s: done", path)
    return 1 if failed else 0


def cmd_coeffs(args):
    g = _load(args.path, args)
    with _output(args.out) as fh:
        report = full_report(g, weighted=args.weighted or None)
        if args.triangles:
            write_triangle_csv(report, fh)
        else:
            write_report_csv(report, fh)
    return 0


def cmd_cdf(args):
    g = _load(args.path, args)
    r = full_report(g, weighted=False)
    x, f = cdf(getattr(r, args.coef))
    with _output(args.out) as fh:
        write_cdf_csv(x, f, fh)
    return 0


def cmd_bins(args):
    g = _load(args.path, args)
    with _output(args.out) as fh:
        write_bins_csv(degree_binned_means(g, base=args.base), fh)
    return 0


def _parse_classes(text):
    out = []
    for part in text.split(","):
        d, c = part.split(":")
        out.append((int(d), int(c)))
    return out


def cmd_nullmodel(args):
    from .nullmodels import DegreeSequence, validate_er, validate_proposition, write_validation_csv

    seed = _seed(args)
    if args.er is not None:
        n, p = int(args.er[0]), float(args.er[1])
        res = validate_er(n, p, args.samples, seed)
        with _output(args.out) as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["n", "p", "samples", "emp_avg_I_mean", "emp_avg_I_se", "theory", "within_3se", "seed"])
            w.writerow([n, format_float(p), res.samples, format_float(res.mean), format_float(res.se),
                        format_float(p), int(res.within()), seed])
        return 0 if res.within() else 1
    if args.regular is not None:
        seq = DegreeSequence.regular(*args.regular)
    elif args.classes is not None:
        seq = DegreeSequence.from_classes(_parse_classes(args.classes))
    else:
        seq = DegreeSequence(np.loadtxt(args.degrees, dtype=np.int64, ndmin=1))
    rep = validate_proposition(seq, args.samples, seed)
    with _output(args.out) as fh:
        write_validation_csv(rep, fh)
    log.info("fraction of classes within 3 SE: I %.3f, O %.3f",
             rep.fraction_within("I"), rep.fraction_within("O"))
    log.info("discarded stub pairs %.4f, degree deviation %.4f",
             rep.discarded_fraction, rep.degree_deviation)
    return 0 if rep.passes(which=("I", "O")) else 1


def _read_manifest(path):
    """Rows ``path,category[,name]``; relative paths resolve against the manifest."""
    base = os.path.dirname(os.path.abspath(path))
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        for rec in csv.reader(fh):
            if not rec or rec[0].startswith("#") or rec[0] == "path":
                continue
            p = rec[0] if os.path.isabs(rec[0]) else os.path.join(base, rec[0])
            name = rec[2] if len(rec) > 2 and rec[2] else _network_name(p)
            rows.append((p, rec[1], name))
    return rows


def cmd_classify(args):
    from .ml.classification import LabeledFeatureMatrix, kmeans, pca_2d, write_clustering_csv

    seed = _seed(args)
    rows = _read_manifest(args.manifest)
    vectors = [feature_vector(load_edge_list(p)) for p, _, _ in rows]
    names = [n for _, _, n in rows]
    labels = [c for _, c, _ in rows]
    results = {}
    for with_quads in (True, False):
        m = LabeledFeatureMatrix.from_vectors(names, vectors, labels, with_quads=with_quads,
                                              standardize=not args.no_standardize)
        res = kmeans(m, args.k, restarts=args.restarts, max_iter=args.max_iter, seed=seed, jobs=args.jobs)
        results[with_quads] = (m, res)
        log.info("%s quad features: homogeneity %.4f completeness %.4f v_measure %.4f",
                 "with" if with_quads else "without", res.homogeneity, res.completeness, res.v_measure)
    m, res = results[not args.without_quads]
    with _output(args.out) as fh:
        write_clustering_csv(m, res, pca_2d(m), fh)
    if args.metrics:
        with open(args.metrics, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["features", "homogeneity", "completeness", "v_measure", "inertia",
                        "best_restart", "restarts", "seed"])
            for with_quads in (False, True):
                r = results[with_quads][1]
                w.writerow(["with_quads" if with_quads else "baseline",
                            format_float(r.homogeneity), format_float(r.completeness),
                            format_float(r.v_measure), format_float(r.inertia),
                            r.best_restart, r.restarts, seed])
    return 0


def _negatives(text):
    return "all" if text == "all" else float(text)


def cmd_linkpred(args):
    from .graph import TemporalEdgeList
    from .ml.linkpred import FEATURE_SETS, SplitSpec, run_link_prediction, write_pair_features_csv

    seed = _seed(args)
    temporal = args.temporal
    records = load_edge_list(args.path, temporal=True) if temporal else load_edge_list(args.path)
    repeats = args.repeats if args.repeats is not None else (1 if temporal else 100)
    runs = []
    for rep in range(repeats):
        rec = records
        if args.sample:
            base = records.to_graph() if temporal else records
            sub = bfs_sample(base, args.sample, (seed, rep))
            rec = TemporalEdgeList.from_graph(sub) if not temporal else _restrict(records, sub)
        elif not temporal:
            rec = TemporalEdgeList.from_graph(records)
        mode = "temporal" if temporal else "shuffled"
        spec = SplitSpec(mode, args.fraction, seed, rep)
        run = run_link_prediction(rec, spec, _negatives(args.negatives), iterations=args.iterations)
        runs.append(run)
        log.info("repeat %d: %d test positives, auc %s", rep, run.test_positives,
                 " ".join(f"{k}={v:.4f}" for k, v in run.auc.items()))
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["repeat_index", "seed", "feature_set", "roc_auc", "test_pairs", "test_positives"])
        for run in runs:
            for name in FEATURE_SETS:
                w.writerow([run.repeat_index, seed, name, format_float(run.auc[name]),
                            len(run.test), run.test_positives])
    if args.features:
        with open(args.features, "w", newline="", encoding="utf-8") as fh:
            for k, run in enumerate(runs):
                buf = _CsvTail(fh, skip_header=k > 0)
                write_pair_features_csv(run.test, run.test_graph, buf, seed=seed,
                                        repeat_index=run.repeat_index)
    return 0


class _CsvTail:
    """File wrapper that drops the first written line (a repeated header)."""

    def __init__(self, fh, skip_header):
        self.fh = fh
        self.skip = skip_header

    def write(self, s):
        if self.skip:
            self.skip = False
            return len(s)
        return self.fh.write(s)


def _restrict(records, sub):
    """Temporal records whose endpoints are both among the sampled labels."""
    from .graph import TemporalEdgeList

    keep_labels = {lab: t for t, lab in enumerate(sub.labels)}
    ids = np.array([keep_labels.get(lab, -1) for lab in records.labels], dtype=np.int64)
    u, v = ids[records.u], ids[records.v]
    m = (u >= 0) & (v >= 0)
    return TemporalEdgeList(u[m], v[m], records.t[m], sub.labels)


def cmd_verify(args):
    from .verify import verify_graph

    g = _load(args.path, args)
    try:
        ver = verify_graph(g)
    except OracleSizeError as exc:
        log.error("refusing to verify %s: %s", args.path, exc)
        return 2
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["check", "status", "detail"])
        for c in ver.checks:
            w.writerow([c.name, "ok" if c.ok else "MISMATCH", c.detail])
    if not ver.ok:
        log.error("%d mismatches", len(ver.failures))
    return 0 if ver.ok else 1


# -- parser -----------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="quadcoef", description="Triangle and quadrangle formation coefficients for undirected networks.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output CSV path (default: stdout)")
    common.add_argument("--seed", type=int, default=None, help=f"random seed (default {DEFAULT_SEED})")
    common.add_argument("--jobs", type=int, default=1, help="worker threads")
    common.add_argument("--quiet", action="store_true", help="suppress progress messages")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("summary", parents=[common], help="dataset statistics, one row per network")
    s.add_argument("paths", nargs="+")
    s.set_defaults(func=cmd_summary)

    s = sub.add_parser("coeffs", parents=[common], help="per-node counts and coefficients")
    s.add_argument("path")
    s.add_argument("--weighted", action="store_true", help="third column holds edge weights")
    s.add_argument("--triangles", action="store_true", help="only the triangle columns")
    s.set_defaults(func=cmd_coeffs)

    s = sub.add_parser("cdf", parents=[common], help="empirical CDFs of the local coefficients")
    s.add_argument("path")
    s.add_argument("--coef", choices=["C", "E", "I", "O"], default="I")
    s.set_defaults(func=cmd_cdf)

    s = sub.add_parser("bins", parents=[common], help="mean I and O per logarithmic degree bin")
    s.add_argument("path")
    s.add_argument("--base", type=int, default=2)
    s.set_defaults(func=cmd_bins)

    s = sub.add_parser("nullmodel", parents=[common], help="Monte-Carlo check of null-model expectations")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--regular", nargs=2, type=int, metavar=("N", "D"))
    g.add_argument("--classes", metavar="D:COUNT,...")
    g.add_argument("--degrees", metavar="FILE", help="whitespace-separated degree sequence")
    g.add_argument("--er", nargs=2, metavar=("N", "P"))
    s.add_argument("--samples", type=int, default=100)
    s.set_defaults(func=cmd_nullmodel)

    s = sub.add_parser("classify", parents=[common], help="K-means network classification")
    s.add_argument("manifest", help="CSV rows: path,category[,name]")
    s.add_argument("--k", type=int, default=6)
    s.add_argument("--restarts", type=int, default=1000)
    s.add_argument("--max-iter", type=int, default=300)
    s.add_argument("--no-standardize", action="store_true")
    s.add_argument("--without-quads", action="store_true",
                   help="write the clustering of the three baseline features")
    s.add_argument("--metrics", default=None, help="also write clustering scores to this CSV")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("linkpred", parents=[common], help="link-prediction split, features and ROC-AUC")
    s.add_argument("path")
    s.add_argument("--temporal", action="store_true", help="records carry timestamps")
    s.add_argument("--fraction", type=float, default=0.7)
    s.add_argument("--repeats", type=int, default=None,
                   help="splits to run (default 1 temporal, 100 shuffled)")
    s.add_argument("--sample", type=int, default=0, help="BFS-sample this many nodes per repeat")
    s.add_argument("--negatives", default="all", help="'all' or a negatives-per-positive ratio")
    s.add_argument("--iterations", type=int, default=500, help="smoke classifier iterations")
    s.add_argument("--features", default=None, help="write the test feature matrix here")
    s.set_defaults(func=cmd_linkpred)

    s = sub.add_parser("verify", parents=[common], help="compare against brute-force enumeration")
    s.add_argument("path")
    s.add_argument("--weighted", action="store_true")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(levelname)s %(message)s", stream=sys.stderr, force=True)
    try:
        return args.func(args)
    except (OSError, EdgeListParseError, EmptyGraphError, ValueError) as exc:
        log.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
