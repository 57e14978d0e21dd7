"""Command line front end.

Exit codes::

    0  success
    1  a verification or axiom check failed
    2  parse error or unreadable input file
    3  a graph class is missing from the theory's working set
    4  a graph sequence is not composable
    5  boundary or labels do not match the surface
    6  structurally invalid input (graph, surface, foam or group)
"""

from __future__ import annotations

import argparse
import hashlib
import os
import random
import sys
import tempfile
from pathlib import Path

from . import __version__
from . import linalg as la
from .corpus import PALETTE, basic_working_set, labeled_corpus
from .evaluate import LabeledFoam, MissingLabel, check_axioms, eval_foam, label_space, random_labels
from .foams import InvalidFoam, InvalidSurface, NotComposable
from .frobenius import (
    BundleVerificationFailed,
    MissingClass,
    MissingCutClass,
    NoUnit,
    close_working_set,
    verify_graph_cardy,
    verify_graph_frobenius,
)
from .graphs import InvalidGraph, UnknownColor, involute, segment_class
from .groupcover import GroupTheory, InvalidGroup, MismatchedBoundary, build_bundle, oracle_value
from .report import Report
from .textio import (
    ParseError,
    actions_for_palette,
    format_theory,
    parse_graphs,
    parse_groups,
    parse_labels,
    parse_surfaces,
    parse_theory,
    resolve_label,
)

CACHE_ENV = "CYCLICFOAM_CACHE"

EXIT = [
    (NoUnit, 1),
    (ParseError, 2),
    (FileNotFoundError, 2),
    (MissingClass, 3),
    (MissingCutClass, 3),
    (NotComposable, 4),
    (MismatchedBoundary, 5),
    (MissingLabel, 5),
    (InvalidGraph, 6),
    (UnknownColor, 6),
    (InvalidSurface, 6),
    (InvalidFoam, 6),
    (InvalidGroup, 6),
]


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FileNotFoundError(f"cannot read {path}: {exc.strerror}") from None


def _emit(rows: list[tuple[str, str]], fmt: str, header: tuple[str, str]) -> None:
    if fmt == "table":
        print("\t".join(header))
        for row in rows:
            print("\t".join(row))
    else:
        width = max((len(r[0]) for r in rows), default=0)
        for a, b in rows:
            print(f"{a.ljust(width)}  {b}")


def _report(rep: Report, fmt: str) -> int:
    failed = {f.check for f in rep.failures}
    if fmt == "table":
        print("check\tstatus\tdetail")
        details = {f.check: f.detail for f in rep.failures}
        for c in rep.checks:
            print(f"{c}\t{'fail' if c in failed else 'ok'}\t{details.get(c, '')}")
    else:
        print(rep.summary())
        if rep.ok:
            print("all axioms hold")
    return 0 if rep.ok else 1


# ---------------------------------------------------------------- commands


def cmd_verify(args) -> int:
    bundle = parse_theory(_read(args.theory))
    rep = Report()
    rep.merge(verify_graph_frobenius(bundle.graph_data, crossing=not args.no_crossing), "graph-Frobenius: ")
    rep.merge(verify_graph_cardy(bundle, twisted_moebius=not args.literal_moebius), "graph-Cardy: ")
    return _report(rep, args.format)


def _labels_for(bundle, foam, raw: dict[str, list[str]]):
    out = {}
    for x, toks in raw.items():
        try:
            kind, key = label_space(bundle, foam, x)
        except KeyError:
            raise MismatchedBoundary(f"label for unknown point or vertex {x!r}") from None
        if kind == "A":
            basis = bundle.algebras[key].basis
        else:
            if key not in bundle.graph_data.spaces:
                raise MissingClass(f"{key.name} is not in the theory's working set")
            basis = bundle.graph_data.spaces[key]
        out[x] = resolve_label(toks, basis, x)
    return out


def _require_classes(bundle, surf) -> None:
    for q in surf.foam.film.vertices:
        cls = surf.foam.film.vertex_graph(q)
        if cls not in bundle.graph_data.spaces:
            raise MissingClass(f"{surf.name}: vertex {q} has class {cls.name}, which the theory lacks")


def _surface_labels(all_labels, name):
    raw = dict(all_labels.get(None, {}))
    raw.update(all_labels.get(name, {}))
    return raw


def cmd_eval(args) -> int:
    bundle = parse_theory(_read(args.theory))
    theory_graphs = {bundle.graph_data.name(s): s for s in bundle.graph_data.spaces}
    surfaces = parse_surfaces(_read(args.surfaces), theory_graphs)
    all_labels = parse_labels(_read(args.labels)) if args.labels else {}
    rows = []
    for surf in surfaces:
        _require_classes(bundle, surf)
        labels = _labels_for(bundle, surf.foam, _surface_labels(all_labels, surf.name))
        trace = [] if args.trace else None
        value = eval_foam(bundle, LabeledFoam(surf.foam, labels), trace)
        rows.append((surf.name, la.format_rational(value)))
        if trace:
            rows += [("  " + surf.name, step) for step in trace]
    _emit(rows, args.format, ("surface", "value"))
    return 0


def _palette(args) -> tuple[str, ...]:
    return tuple(args.palette.split(",")) if args.palette else PALETTE


def cmd_oracle(args) -> int:
    _, actions, colors = parse_groups(_read(args.groups))
    palette = _palette(args)
    acts = actions_for_palette(actions, colors, palette)
    theory = GroupTheory(acts, palette)
    surfaces = parse_surfaces(_read(args.surfaces))
    all_labels = parse_labels(_read(args.labels))
    rows = []
    for surf in surfaces:
        if not surf.foam.is_film:
            raise InvalidFoam(f"{surf.name}: the oracle counts film surfaces only")
        film = surf.foam.film
        raw = _surface_labels(all_labels, surf.name)
        boundary = {}
        for q in film.vertices:
            if q not in raw or len(raw[q]) != 1:
                raise MismatchedBoundary(f"{surf.name}: vertex {q} needs one equipment label")
            eq = theory.parse_label(film.vertex_graph(q), raw[q][0])
            boundary[q] = {}
            for c, k in eq.orbits:
                po = acts[c].pair_orbits
                x, y = po.reps[k]
                boundary[q][c] = (x, y)
        rows.append((surf.name, la.format_rational(oracle_value(acts, film, boundary, palette))))
    _emit(rows, args.format, ("surface", "value"))
    return 0


def _cache_dir(args) -> Path:
    if args.cache_dir:
        return Path(args.cache_dir)
    if os.environ.get(CACHE_ENV):
        return Path(os.environ[CACHE_ENV])
    return Path.home() / ".cache" / "cyclicfoam"


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def cmd_build(args) -> int:
    group_text = _read(args.groups)
    graph_text = _read(args.graphs) if args.graphs else ""
    palette = _palette(args)
    key = hashlib.sha256("\x00".join([
        __version__, group_text, graph_text, ",".join(palette), str(args.close), str(args.verify),
    ]).encode()).hexdigest()
    cached = _cache_dir(args) / f"{key}.theory"
    if not args.no_cache and cached.exists():
        text = cached.read_text()
        print(f"cache hit {key[:12]}", file=sys.stderr)
    else:
        _, actions, colors = parse_groups(group_text)
        acts = actions_for_palette(actions, colors, palette)
        if graph_text:
            work = [segment_class(c) for c in palette] + list(parse_graphs(graph_text).values())
        else:
            work = basic_working_set(palette)
        for s in list(work):
            work.append(involute(s))
        work = list(dict.fromkeys(work))
        if args.close:
            work = close_working_set(work, max_len=args.close)
        try:
            bundle = build_bundle(acts, work, palette, verify=args.verify)
        except BundleVerificationFailed as exc:
            print(exc.report.summary(), file=sys.stderr)
            return 1
        text = format_theory(bundle)
        if not args.no_cache:
            _atomic_write(cached, text)
    if args.output:
        _atomic_write(Path(args.output), text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_axioms(args) -> int:
    bundle = parse_theory(_read(args.theory))
    rng = random.Random(args.seed)
    if args.corpus:
        corpus = []
        root = Path(args.corpus)
        files = sorted(root.glob("*")) if root.is_dir() else [root]
        theory_graphs = {bundle.graph_data.name(s): s for s in bundle.graph_data.spaces}
        for path in files:
            if path.is_file():
                for surf in parse_surfaces(_read(path), theory_graphs):
                    _require_classes(bundle, surf)
                    corpus.append((f"{path.name}:{surf.name}",
                                   LabeledFoam(surf.foam, random_labels(bundle, surf.foam, rng))))
    else:
        corpus = labeled_corpus(bundle, seed=args.seed)
    rep = check_axioms(bundle, corpus, max_cuts=args.max_cuts)
    return _report(rep, args.format)


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclicfoam", description="Cyclic foam field theories from exact data.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("text", "table"), default="text")

    v = sub.add_parser("verify", help="check every axiom of a theory file")
    v.add_argument("theory")
    v.add_argument("--no-crossing", action="store_true", help="skip the crossing identity over quadruples")
    v.add_argument("--literal-moebius", action="store_true",
                   help="require phi(U) to equal the untwisted Casimir")
    common(v)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", help="evaluate labeled surfaces")
    e.add_argument("theory")
    e.add_argument("surfaces")
    e.add_argument("labels", nargs="?")
    e.add_argument("--trace", action="store_true", help="print the cut decomposition")
    common(e)
    e.set_defaults(func=cmd_eval)

    b = sub.add_parser("build", help="assemble a theory from group actions")
    b.add_argument("groups")
    b.add_argument("--graphs", help="file of extra graph blocks for the working set")
    b.add_argument("--palette", help="comma separated colors (default a,b,c)")
    b.add_argument("--close", type=int, nargs="?", const=4, default=0,
                   help="close the working set under cuts of surfaces up to this size")
    b.add_argument("--no-verify", dest="verify", action="store_false")
    b.add_argument("--no-cache", action="store_true")
    b.add_argument("--cache-dir", help=f"cache directory (default ${CACHE_ENV} or ~/.cache/cyclicfoam)")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_build)

    o = sub.add_parser("oracle", help="count film maps directly from group actions")
    o.add_argument("groups")
    o.add_argument("surfaces")
    o.add_argument("labels")
    o.add_argument("--palette")
    common(o)
    o.set_defaults(func=cmd_oracle)

    a = sub.add_parser("axioms", help="run the cut and invariance checks")
    a.add_argument("theory")
    a.add_argument("corpus", nargs="?", help="surface file or directory (default: built-in corpus)")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--max-cuts", type=int)
    common(a)
    a.set_defaults(func=cmd_axioms)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except tuple(cls for cls, _ in EXIT) as exc:
        code = next(c for cls, c in EXIT if isinstance(exc, cls))
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
