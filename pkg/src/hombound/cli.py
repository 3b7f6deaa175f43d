"""Command-line front-end: build pipelines, emit JSON reports, map errors to
exit codes (0 ok, 2 input, 3 resource cap, 4 theorem violation, 1 internal)."""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from pathlib import Path

from . import __version__
from .algebra import GPoset, cyclic_group
from .caps import ResourceCaps, caps_from_env
from .certify import (
    LambdaMap,
    bound_certificate,
    build_hom_instance,
    test_graph_check,
    verify_lambda,
)
from .coloring import chromatic_number
from .complexes import (
    DEFAULT_DIM_CAP,
    DEFAULT_PRIMES,
    SimplicialComplex,
    build_EnG,
    homology_ranks,
    order_complex,
)
from .errors import (
    HomBoundError,
    InputFormatError,
    InstanceTooLargeError,
    InternalError,
    InvalidArgument,
    TheoremViolationError,
    TruncationError,
)
from .graphs import Coloring, Graph
from .graphio import (
    emit_dimacs,
    graph_from_json_dict,
    graph_to_json_dict,
    parse_graph,
)
from .homposets import HomPoset, build_compat_graph, build_hom_poset, check_loops

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_THEOREM = 4

_ENG_RE = re.compile(r"^eng:z(\d+):(\d+)$", re.IGNORECASE)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _parse_primes(text: str) -> tuple[int, ...]:
    primes = tuple(int(x) for x in text.split(",") if x.strip())
    if not primes:
        raise InvalidArgument("at least one prime is required")
    for p in primes:
        if not _is_prime(p):
            raise InvalidArgument(f"{p} is not prime")
    return primes


class Stopwatch:
    def __init__(self):
        self.timings_ms: dict[str, int] = {}
        self._last = time.perf_counter()

    def lap(self, name: str):
        now = time.perf_counter()
        self.timings_ms[name] = int((now - self._last) * 1000)
        self._last = now


def _load_complex(spec: str, dim_cap: int, caps: ResourceCaps) -> SimplicialComplex:
    """A complex from eng:zR:N, a complex JSON file, a G-poset JSON file, or
    a Hom-poset JSON file."""
    m = _ENG_RE.match(spec.strip())
    if m:
        group = cyclic_group(int(m.group(1)))
        poset = build_EnG(group, int(m.group(2)), caps=caps)
        return order_complex(poset, dim_cap=dim_cap, caps=caps)
    path = Path(spec)
    if not path.exists():
        raise InputFormatError(f"{spec!r} is neither eng:zR:N nor a file")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"bad JSON: {exc}") from exc
    if "facets" in data:
        return SimplicialComplex.from_facets(
            data["n_vertices"], data["facets"], dim_cap=dim_cap, caps=caps
        )
    if "leq" in data:
        poset = GPoset.from_json_dict(data, caps=caps)
        return order_complex(poset, dim_cap=dim_cap, caps=caps)
    if "elements" in data:
        hp = _homposet_from_json(data)
        pairs = [
            (i, j)
            for i in range(hp.n)
            for j in range(hp.n)
            if i != j and hp.leq(i, j)
        ]
        group = cyclic_group(1)
        poset = GPoset(hp.n, pairs, group, [list(range(hp.n))], caps=caps)
        return order_complex(poset, dim_cap=dim_cap, caps=caps)
    raise InputFormatError("JSON has none of the keys facets/leq/elements")


def _homposet_from_json(data: dict) -> HomPoset:
    F = graph_from_json_dict(data["F"])
    H = graph_from_json_dict(data["H"])
    elements = []
    for cells in data["elements"]:
        elements.append(tuple(sum(1 << int(v) for v in cell) for cell in cells))
    return HomPoset(F, H, sorted(elements))


def _source_graph(name: str) -> Graph:
    g, warnings = parse_graph(name)
    if warnings:
        raise InputFormatError("; ".join(warnings))
    return g


# -- command handlers -------------------------------------------------------


def _cmd_chi(args, caps, watch) -> tuple[dict, list[str]]:
    g, warnings = parse_graph(args.input)
    watch.lap("parse")
    chi, coloring = chromatic_number(g, caps=caps)
    watch.lap("solve")
    return coloring.to_json_dict(), warnings


def _cmd_build_hom(args, caps, watch) -> tuple[dict, list[str]]:
    F, w1 = parse_graph(args.F)
    H, w2 = parse_graph(args.H)
    watch.lap("parse")
    hp = build_hom_poset(F, H, caps=caps)
    watch.lap("build")
    payload = hp.to_json_dict()
    payload["count"] = hp.n
    if args.emit_complex:
        gp = build_hom_instance(F, H, caps=caps) if hp.n else None
        if gp is not None:
            payload["complex"] = order_complex(
                gp, dim_cap=args.dim_cap, caps=caps
            ).to_json_dict()
        else:
            payload["complex"] = SimplicialComplex(
                0, [], args.dim_cap, False
            ).to_json_dict()
        watch.lap("complex")
    return payload, w1 + w2


def _cmd_compat(args, caps, watch) -> tuple[dict, list[str]]:
    F, w1 = parse_graph(args.F)
    H, w2 = parse_graph(args.H)
    watch.lap("parse")
    gp = build_hom_instance(F, H, caps=caps)
    compat = build_compat_graph(gp)
    watch.lap("build")
    loops = check_loops(compat)
    payload: dict = {
        "graph": graph_to_json_dict(compat),
        "loops": list(loops),
        "action": gp.action_kind,
        "poset_size": gp.n,
    }
    if args.format == "dimacs":
        payload["dimacs"] = emit_dimacs(compat)
    return payload, w1 + w2


def _cmd_homology(args, caps, watch) -> tuple[dict, list[str]]:
    komplex = _load_complex(args.complex, args.dim_cap, caps)
    watch.lap("build")
    reports = []
    for p in args.primes:
        bv = homology_ranks(komplex, p)
        reports.append(
            {"p": p, "betti": list(bv.reduced_betti), "truncated": komplex.is_truncated}
        )
    watch.lap("rank")
    payload = {
        "f_vector": komplex.f_vector(),
        "dim": komplex.dim,
        "euler": komplex.euler_characteristic(),
        "reports": reports,
    }
    if args.emit_complex:
        payload["complex"] = komplex.to_json_dict()
    return payload, []


def _cmd_bound(args, caps, watch) -> tuple[dict, list[str]]:
    warnings: list[str] = []
    if args.poset:
        path = Path(args.poset)
        if not path.exists():
            raise InputFormatError(f"poset file {args.poset!r} not found")
        poset = GPoset.from_json_dict(json.loads(path.read_text()), caps=caps)
        h = None
    else:
        if not (args.T and args.H):
            raise InvalidArgument("bound needs --T and --H, or --poset")
        T, w1 = parse_graph(args.T)
        H, w2 = parse_graph(args.H)
        warnings += w1 + w2
        poset = build_hom_instance(T, H, caps=caps)
        h = H
    watch.lap("build")
    cert = bound_certificate(
        poset, h, dim_cap=args.dim_cap, primes=args.primes, caps=caps
    )
    watch.lap("certify")
    return cert.to_json_dict(), warnings


def _cmd_verify_lambda(args, caps, watch) -> tuple[dict, list[str]]:
    path = Path(args.certificate)
    if not path.exists():
        raise InputFormatError(f"certificate file {args.certificate!r} not found")
    data = json.loads(path.read_text())
    instance = data.get("instance", {})
    if instance.get("kind") == "hom":
        F = graph_from_json_dict(instance["F"])
        H = graph_from_json_dict(instance["H"])
        poset = build_hom_instance(F, H, caps=caps)
    elif instance.get("kind") == "gposet":
        poset = GPoset.from_json_dict(instance["poset"], caps=caps)
    else:
        raise InputFormatError("certificate has no reloadable instance")
    watch.lap("rebuild")
    lam_data = data.get("lambda")
    if not lam_data:
        raise InputFormatError("certificate carries no lambda table")
    coloring = Coloring(data["chi_compat"]["coloring"])
    stored = tuple((int(g), int(c)) for g, c in lam_data["assignment"])
    if len(stored) != poset.n:
        raise InputFormatError("lambda table does not match the rebuilt poset")
    lam = LambdaMap(poset, coloring, stored)
    report = verify_lambda(lam)
    from .certify import construct_lambda

    rebuilt = construct_lambda(poset, coloring)
    watch.lap("verify")
    payload = report.to_json_dict()
    payload["matches_reconstruction"] = rebuilt.assignment == stored
    payload["poset_size"] = poset.n
    return payload, []


def _cmd_test_graph(args, caps, watch) -> tuple[dict, list[str]]:
    T, w1 = parse_graph(args.T)
    H, w2 = parse_graph(args.H)
    watch.lap("parse")
    report = test_graph_check(
        T, H, dim_cap=args.dim_cap, primes=args.primes, caps=caps
    )
    watch.lap("check")
    return report.to_json_dict(), w1 + w2


# -- plumbing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hombound",
        description="Topological chromatic lower bounds with machine-checkable "
        "certificates.",
    )
    parser.add_argument("--version", action="version", version=__version__)

    def add_common(sub):
        sub.add_argument("--out", help="write the JSON report here instead of stdout")
        sub.add_argument("--caps", default="", help="overrides, e.g. max_chains=500000")
        sub.add_argument("--dim-cap", dest="dim_cap", type=int, default=DEFAULT_DIM_CAP)
        sub.add_argument(
            "--primes",
            type=_parse_primes,
            default=DEFAULT_PRIMES,
            help="comma-separated primes for homology (default 2,32003)",
        )

    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("chi", help="exact chromatic number with witness")
    sub.add_argument("--input", required=True, help="graph file or builtin name")
    add_common(sub)

    sub = subs.add_parser("build-hom", help="enumerate a Hom poset")
    sub.add_argument("--F", required=True)
    sub.add_argument("--H", required=True)
    sub.add_argument("--emit-complex", action="store_true")
    add_common(sub)

    sub = subs.add_parser("compat", help="compatibility graph of a Hom poset")
    sub.add_argument("--F", required=True)
    sub.add_argument("--H", required=True)
    sub.add_argument("--format", choices=["json", "dimacs"], default="json")
    add_common(sub)

    sub = subs.add_parser("homology", help="reduced Betti numbers of a complex")
    sub.add_argument(
        "--complex",
        required=True,
        help="eng:zR:N, or a JSON file (complex facets, G-poset, or Hom poset)",
    )
    sub.add_argument("--emit-complex", action="store_true")
    add_common(sub)

    sub = subs.add_parser("bound", help="full bound certificate")
    sub.add_argument("--T", help="source graph (complete or even cycle)")
    sub.add_argument("--H", help="target graph")
    sub.add_argument("--poset", help="raw G-poset JSON file instead of --T/--H")
    add_common(sub)

    sub = subs.add_parser("verify-lambda", help="re-verify a stored certificate map")
    sub.add_argument("--certificate", required=True)
    add_common(sub)

    sub = subs.add_parser("test-graph", help="test-graph inequality report")
    sub.add_argument("--T", required=True)
    sub.add_argument("--H", required=True)
    add_common(sub)

    return parser


_HANDLERS = {
    "chi": _cmd_chi,
    "build-hom": _cmd_build_hom,
    "compat": _cmd_compat,
    "homology": _cmd_homology,
    "bound": _cmd_bound,
    "verify-lambda": _cmd_verify_lambda,
    "test-graph": _cmd_test_graph,
}


def _error_report(command: str, category: str, message: str) -> dict:
    return {
        "command": command,
        "version": __version__,
        "error": {"category": category, "message": message},
    }


def _emit(report: dict, out_path: str | None):
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = args.command
    out_path = getattr(args, "out", None)
    try:
        caps = caps_from_env()
        if getattr(args, "caps", ""):
            caps = caps.with_overrides(args.caps)
        if getattr(args, "dim_cap", 1) < 1:
            raise InvalidArgument("dim_cap must be >= 1")
        watch = Stopwatch()
        payload, warnings = _HANDLERS[command](args, caps, watch)
        report = {
            "command": command,
            "version": __version__,
            "payload": payload,
            "warnings": warnings,
            "timings_ms": watch.timings_ms,
        }
        _emit(report, out_path)
        return EXIT_OK
    except TheoremViolationError as exc:
        _emit(_error_report(command, "theorem-violation", str(exc)), out_path)
        return EXIT_THEOREM
    except (InstanceTooLargeError, TruncationError) as exc:
        _emit(_error_report(command, "resource", str(exc)), out_path)
        return EXIT_RESOURCE
    except InternalError as exc:
        _emit(_error_report(command, "internal", str(exc)), out_path)
        return EXIT_INTERNAL
    except (InputFormatError, InvalidArgument, HomBoundError) as exc:
        _emit(_error_report(command, "input", str(exc)), out_path)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
