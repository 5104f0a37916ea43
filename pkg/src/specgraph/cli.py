"""Command-line interface: inspect | graph | verify | explore | export.

Exit status is 0 on success, 1 when verification finds failing claims and 2
for usage errors (bad flags, malformed spec files, out-of-range subsets).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .algebra import AlgebraError, FinModule, Submodule, max_order
from .claims import REGISTRY, RING_CHOICES, Corpus, explore_members_as_vertices, run_suite, select_claims
from .graphs import (
    ANNIHILATING,
    SCHEMA_VERSION,
    ZARISKI_MAX,
    ZARISKI_MAX_DISJOINT,
    ZARISKI_SPEC,
    GraphError,
    build_annihilating,
    build_zariski_max,
    build_zariski_max_disjoint,
    build_zariski_spec,
    export,
    render_dot,
    render_json,
)
from .spectrum import (
    is_max_surjective,
    is_natural_map_homeomorphism,
    max_spec,
    rad,
    semi_maximal_submodules,
    spec,
    topology_report,
)

log = logging.getLogger("specgraph")

EXIT_OK, EXIT_FAILURES, EXIT_USAGE = 0, 1, 2

KIND_NAMES = {
    "zmax": ZARISKI_MAX,
    "zspec": ZARISKI_SPEC,
    "zmax-disjoint": ZARISKI_MAX_DISJOINT,
    "ag": ANNIHILATING,
}
TOPOLOGY_LIMIT = 6


class UsageError(Exception):
    """A problem with the invocation; reported with exit status 2."""


class SpecFileError(UsageError):
    pass


class IndexOutOfRange(UsageError):
    pass


class InvalidSubset(UsageError):
    pass


# -- input -----------------------------------------------------------------

def load_module(source: str) -> FinModule:
    """Read a module spec from a file path or an inline JSON object."""
    if source.lstrip().startswith("{"):
        text, origin = source, "inline spec"
    else:
        path = Path(source)
        try:
            text = path.read_text()
        except OSError as exc:
            raise SpecFileError(f"cannot read module spec {source}: {exc.strerror}") from None
        origin = str(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"module spec {origin} is not valid JSON: {exc.msg}") from None
    if not isinstance(data, dict):
        raise SpecFileError(f"module spec {origin} must be a JSON object")
    try:
        M = FinModule.from_spec(data)
    except AlgebraError as exc:
        raise SpecFileError(f"module spec {origin} is malformed: {exc}") from None
    except (TypeError, ValueError) as exc:
        raise SpecFileError(f"module spec {origin} is malformed: {exc}") from None
    if M.order > max_order():
        raise SpecFileError(f"module of order {M.order} exceeds the enumeration bound "
                            f"{max_order()} (set SPECGRAPH_MAX_ORDER to raise it)")
    return M


def resolve_submodule(M: FinModule, token: str) -> Submodule:
    """An enumeration index, or ``g:`` followed by generators such as ``g:2,0;0,3``."""
    subs = M.submodules()
    if token.startswith("g:"):
        try:
            gens = [tuple(int(c) for c in g.split(",")) for g in token[2:].split(";") if g]
            return M.submodule(gens)
        except (ValueError, AlgebraError) as exc:
            raise InvalidSubset(f"bad generator alias {token!r}: {exc}") from None
    try:
        i = int(token)
    except ValueError:
        raise InvalidSubset(f"subset entry {token!r} is neither an index nor a g: alias") from None
    if not 0 <= i < len(subs):
        raise IndexOutOfRange(f"submodule index {i} out of range: {M} has {len(subs)} submodules "
                              f"(indices 0..{len(subs) - 1})")
    return subs[i]


def resolve_subset(M: FinModule, kind: str, tokens: list[str] | None) -> list[Submodule] | None:
    if kind == ANNIHILATING:
        if tokens:
            raise InvalidSubset("the annihilating-submodule graph takes no --subset")
        return None
    primes = [w.submodule for w in spec(M)]
    allowed = primes if kind == ZARISKI_SPEC else max_spec(M)
    if not tokens:
        tokens = ["spec" if kind == ZARISKI_SPEC else "max"]
    if tokens == ["max"]:
        chosen = list(max_spec(M))
    elif tokens == ["spec"]:
        chosen = primes
    else:
        chosen = [resolve_submodule(M, t) for t in tokens]
    if not chosen:
        raise InvalidSubset(f"the subset is empty for {M}")
    outside = [s.index for s in chosen if s not in allowed]
    if outside:
        what = "prime" if kind == ZARISKI_SPEC else "maximal"
        raise InvalidSubset(f"submodules {outside} are not {what} submodules of {M}")
    return chosen


# -- output ----------------------------------------------------------------

def write_output(text: str, out: str | None) -> None:
    """Write to stdout, or atomically to ``out`` via a temporary file and rename."""
    if out is None:
        sys.stdout.write(text)
        return
    target = Path(out)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _stamp(doc: dict, enabled: bool) -> dict:
    if enabled:
        doc["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return doc


# -- commands --------------------------------------------------------------

def cmd_inspect(args) -> int:
    M = load_module(args.module)
    subs = M.submodules()
    maximal = max_spec(M)
    doc = {
        "schema_version": SCHEMA_VERSION,
        **M.to_spec(),
        "order": M.order,
        "exponent": M.exponent,
        "submodules": [
            {"index": s.index, "order": s.order,
             "generators": [list(g) for g in s.generators],
             "colon_divisor": s.colon_divisor}
            for s in subs
        ],
        "spec": [{"index": w.submodule.index, "witness_prime": w.witness_prime} for w in spec(M)],
        "max_spec": [Q.index for Q in maximal],
        "rad": rad(M).index,
        "semi_maximal": [s.index for s in semi_maximal_submodules(M)],
        "max_surjective": is_max_surjective(M),
        "natural_map_homeomorphism": is_natural_map_homeomorphism(M),
        "topology": topology_report(M) if len(maximal) <= TOPOLOGY_LIMIT else None,
    }
    write_output(dump_json(doc), args.out)
    return EXIT_OK


def cmd_graph(args) -> int:
    M = load_module(args.module)
    kind = KIND_NAMES[args.kind]
    T = resolve_subset(M, kind, args.subset)
    if kind == ZARISKI_MAX:
        G = build_zariski_max(M, T)
    elif kind == ZARISKI_MAX_DISJOINT:
        G = build_zariski_max_disjoint(M, T)
    elif kind == ZARISKI_SPEC:
        G = build_zariski_spec(M, T)
    else:
        G = build_annihilating(M)
    write_output(export(G, args.export), args.out)
    return EXIT_OK


def _corpus(args) -> Corpus:
    if args.corpus_max_order < 1 or args.corpus_max_rank < 0:
        raise UsageError("corpus bounds must be positive")
    return Corpus(max_order=args.corpus_max_order, max_rank=args.corpus_max_rank,
                  rings=tuple(args.rings))


def _claim_selector(text: str):
    if text in ("all", "literal", "corrected"):
        return text
    return [c.strip() for c in text.split(",") if c.strip()]


def render_report_text(report) -> str:
    lines = []
    for cid, counts in report.summary.items():
        tally = " ".join(f"{k}={v}" for k, v in counts.items())
        mark = "FAIL" if counts["fail"] else "ok"
        lines.append(f"{mark:4} {cid}: {tally}")
    for topic, items in sorted(report.divergences.items()):
        lines.append(f"divergence {topic}: {len(items)}")
    lines.append(f"failures: {len(report.failures)}")
    for r in report.failures[:20]:
        lines.append(f"  {r.claim} {json.dumps(r.instance, sort_keys=True)} "
                     f"{json.dumps(r.witness, sort_keys=True)}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    corpus = _corpus(args)
    try:
        claims = select_claims(_claim_selector(args.claims))
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    report = run_suite(corpus, claims, jobs=args.jobs)
    if args.format == "json":
        doc = report.to_dict(full=args.full)
        doc["corpus"] = {"max_order": corpus.max_order, "max_rank": corpus.max_rank,
                         "rings": list(corpus.rings)}
        text = dump_json(_stamp(doc, args.stamp))
    else:
        text = render_report_text(report)
    write_output(text, args.out)
    log.info("%d failing claim instances", len(report.failures))
    return EXIT_OK if report.ok else EXIT_FAILURES


def cmd_explore(args) -> int:
    corpus = _corpus(args)
    doc = explore_members_as_vertices(corpus)
    doc["corpus"] = {"max_order": corpus.max_order, "max_rank": corpus.max_rank,
                     "rings": list(corpus.rings)}
    write_output(dump_json(_stamp(doc, args.stamp)), args.out)
    if doc["negative_count"]:
        log.warning("found %d instances with no member of T among the vertices",
                    doc["negative_count"])
    print(f"{doc['instances_with_nonempty_graph']} instances with a non-empty graph, "
          f"{doc['negative_count']} negative", file=sys.stderr)
    return EXIT_OK


def cmd_export(args) -> int:
    try:
        doc = json.loads(Path(args.input).read_text())
    except OSError as exc:
        raise SpecFileError(f"cannot read graph document {args.input}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"graph document {args.input} is not valid JSON: {exc.msg}") from None
    if not isinstance(doc, dict) or doc.get("schema_version") != SCHEMA_VERSION \
            or not {"vertices", "edges"} <= doc.keys():
        raise SpecFileError(f"{args.input} is not a schema_version {SCHEMA_VERSION} graph document")
    text = render_dot(doc) if args.format == "dot" else render_json(doc)
    write_output(text, args.out)
    return EXIT_OK


def cmd_claims(args) -> int:
    lines = []
    for cid in sorted(REGISTRY):
        c = REGISTRY[cid]
        suffix = f" (corrects {c.refines})" if c.refines else ""
        lines.append(f"{cid} [{c.scope}]{suffix}\n    {c.statement}")
    write_output("\n".join(lines) + "\n", None)
    return EXIT_OK


# -- parser ----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: usage error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="specgraph",
                     description="Zariski topology-graphs and annihilating-submodule graphs "
                                 "of finite modules over Z and Z/nZ.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("inspect", help="submodule lattice, spectra and topology of a module")
    p.add_argument("--module", required=True, help="module spec file or inline JSON")
    p.add_argument("--out")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("graph", help="build one of the four graphs and export it")
    p.add_argument("--module", required=True, help="module spec file or inline JSON")
    p.add_argument("--kind", required=True, choices=sorted(KIND_NAMES))
    p.add_argument("--subset", nargs="+", metavar="SEL",
                   help="'max', 'spec', or submodule indices / g:<generators> aliases")
    p.add_argument("--export", default="json", choices=("dot", "json"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_graph)

    def corpus_flags(p):
        p.add_argument("--corpus-max-order", type=int, default=200)
        p.add_argument("--corpus-max-rank", type=int, default=3)
        p.add_argument("--rings", nargs="+", choices=RING_CHOICES, default=list(RING_CHOICES))
        p.add_argument("--out")
        p.add_argument("--stamp", action="store_true", help="add a generation timestamp")

    p = sub.add_parser("verify", help="check the claims over a generated corpus")
    corpus_flags(p)
    p.add_argument("--claims", default="all",
                   help="'all', 'literal', 'corrected' or comma-separated claim ids")
    p.add_argument("--format", default="json", choices=("json", "text"))
    p.add_argument("--full", action="store_true", help="include passing results in JSON")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("explore", help="whether non-empty graphs contain members of T")
    corpus_flags(p)
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("export", help="re-render a saved graph document")
    p.add_argument("--input", required=True)
    p.add_argument("--format", default="dot", choices=("dot", "json"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("claims", help="list the registered claims")
    p.set_defaults(func=cmd_claims)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"specgraph: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, AlgebraError) as exc:
        print(f"specgraph: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
