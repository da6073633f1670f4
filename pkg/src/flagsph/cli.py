"""Command-line interface: ``flagsph <subcommand> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 on a usage
error or malformed input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import __version__
from .branching import gamma_generators, restrict_irrep, restriction_dims
from .embeddings import build_subalgebra
from .orbits import FlagDescriptor, GroupKind, Sign, flag_poset, flag_to_index_set, richardson
from .partitions import Composition, Partition, collapse, parse_parts
from .sphericity import DEFAULT_TRIALS, branching_rank, is_spherical_flag

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _color(text: str, code: str, stream) -> str:
    if os.environ.get("NO_COLOR") or not getattr(stream, "isatty", lambda: False)():
        return text
    return f"\033[{code}m{text}\033[0m"


def _group(args) -> GroupKind:
    try:
        return GroupKind.parse(args.group, args.dim)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _sign(text: Optional[str]) -> Sign:
    if text is None:
        return Sign.NONE
    table = {"+": Sign.PLUS, "plus": Sign.PLUS, "-": Sign.MINUS, "minus": Sign.MINUS}
    if text.lower() not in table:
        raise UsageError(f"bad sign {text!r}; use + or -")
    return table[text.lower()]


def parse_index(text: str) -> frozenset[int]:
    try:
        return frozenset(parse_parts(text.replace("{", "").replace("}", "")))
    except ValueError:
        raise UsageError(f"bad index set {text!r}") from None


def parse_params(text: Optional[str]) -> dict[str, int]:
    out = {}
    if not text:
        return out
    for item in text.split(","):
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"bad parameter {item!r}; expected name=value")
        try:
            out[key.strip()] = int(value)
        except ValueError:
            raise UsageError(f"parameter {key.strip()} must be an integer") from None
    return out


def _index_text(I) -> str:
    return "{" + ",".join(map(str, sorted(I))) + "}"


# ---------------------------------------------------------------------------
# subcommands


def cmd_collapse(args, out) -> int:
    if args.eps not in (1, -1):
        raise UsageError("--eps must be +1 or -1")
    a = Partition(parse_parts(args.partition))
    if a.total != args.d:
        raise UsageError(f"partition {a} is not a partition of {args.d}")
    b = collapse(a, args.eps)
    if args.format == "json":
        print(_dump({"d": args.d, "eps": args.eps, "input": list(a.parts), "collapse": list(b.parts)}), file=out)
    else:
        print(",".join(map(str, b.parts)), file=out)
    return EXIT_OK


def cmd_richardson(args, out) -> int:
    g = _group(args)
    f = FlagDescriptor(g, Composition(parse_parts(args.composition)), _sign(args.sign))
    orbit = richardson(f)
    index = flag_to_index_set(f) if not f.trivial else frozenset()
    if args.format == "json":
        print(_dump({"group": str(g), "flag": str(f), "partition": list(orbit.partition.parts),
                     "sign": orbit.sign.name.lower(), "index": sorted(index)}), file=out)
    else:
        print(f"{','.join(map(str, orbit.partition.parts))}{orbit.sign.value}", file=out)
    return EXIT_OK


def _poset_json(poset, classes) -> list[dict]:
    ids = {c.key: i for i, c in enumerate(poset.classes)}
    return [{"id": ids[c.key], "partition": list(c.partition.parts), "sign": c.sign.name.lower(),
             "members": [str(m) for m in c.members], "index_sets": [sorted(I) for I in c.index_sets]}
            for c in classes]


def cmd_poset(args, out) -> int:
    g = _group(args)
    poset = flag_poset(g)
    if args.format == "dot":
        out.write(poset.to_dot())
    elif args.format == "json":
        print(_dump({"group": str(g), "classes": _poset_json(poset, poset.classes),
                     "covers": [list(p) for p in poset.covers()]}), file=out)
    else:
        for i, c in enumerate(poset.classes):
            print(f"c{i} {c.label}: " + ", ".join(str(m) for m in c.members), file=out)
        for i, j in poset.covers():
            print(f"c{i} < c{j}", file=out)
    return EXIT_OK


def cmd_minimal(args, out) -> int:
    g = _group(args)
    poset = flag_poset(g)
    mins = poset.minimal()
    if args.format == "json":
        print(_dump({"group": str(g), "minimal": _poset_json(poset, mins)}), file=out)
    else:
        print(f"{len(mins)} minimal classes in {g}", file=out)
        for c in mins:
            sets = ", ".join("X_" + _index_text(I) for I in c.index_sets)
            print(f"  {c.label}: {', '.join(str(m) for m in c.members)}  [{sets}]", file=out)
    return EXIT_OK


def cmd_spherical(args, out) -> int:
    e = build_subalgebra(args.spec)
    I = parse_index(args.index)
    v = is_spherical_flag(e, I, args.trials, args.seed)
    data = {"spec": str(e.spec), "index": sorted(I), **v.to_dict()}
    if v.spherical and args.rank:
        data["rank"] = branching_rank(e, I, args.trials, args.seed)
    if args.format == "json":
        print(_dump(data), file=out)
    else:
        line = f"{v.status.value} (orbit dim {v.witness_rank}/{v.target_rank}, {v.reason}, trials {v.trials_used})"
        print(line, file=out)
        if "rank" in data:
            print(f"rank {data['rank']}", file=out)
    return EXIT_OK


def cmd_branch(args, out) -> int:
    e = build_subalgebra(args.spec)
    g, h = e.ambient.type, e.h_type
    lam = g.parse_weight(args.lam)
    parts = restrict_irrep(e, lam)
    dim_g, dim_h = restriction_dims(e, lam, parts)
    rows = sorted(parts.items(), key=lambda kv: (-h.height(kv[0]), kv[0]))
    if args.format == "json":
        print(_dump({"lambda": g.format_weight(lam), "dim": dim_g,
                     "parts": [{"mu": h.format_weight(mu), "multiplicity": k} for mu, k in rows]}), file=out)
    else:
        print(f"R({g.format_weight(lam)}) dim {dim_g} -> {dim_h}", file=out)
        for mu, k in rows:
            print(f"  {h.format_weight(mu)}" + (f" x{k}" if k > 1 else ""), file=out)
    return EXIT_OK


def cmd_gamma(args, out) -> int:
    e = build_subalgebra(args.spec)
    I = parse_index(args.index)
    v = is_spherical_flag(e, I, args.trials, args.seed)
    if not v.spherical:
        print(f"X_{_index_text(I)} is not spherical ({v.reason})", file=sys.stderr)
        return EXIT_FAIL
    monoid = gamma_generators(e, I, degree_bound=args.degree_bound, trials=args.trials, seed=args.seed)
    if args.format == "json":
        print(_dump({"spec": str(e.spec), "index": sorted(I), "rank": monoid.rank,
                     "complete": monoid.complete, "generators": monoid.formatted()}), file=out)
    else:
        print(f"rank {monoid.rank}" + ("" if monoid.complete else " (incomplete search)"), file=out)
        for p in monoid.formatted():
            print(f"  {p}", file=out)
    return EXIT_OK if monoid.complete else EXIT_FAIL


def cmd_verify(args, out) -> int:
    from . import registry

    params = parse_params(args.params)
    if args.all:
        if params:
            raise UsageError("--params needs --case")
        reports = registry.verify_all(args.seed, args.trials)
    else:
        try:
            reports = [registry.verify(args.case, params, args.seed, args.trials)]
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    ok = all(r.passed for r in reports)
    if args.format == "json":
        print(_dump([r.to_dict() for r in reports]), file=out)
    else:
        for r in reports:
            text = r.to_text()
            head, _, rest = text.partition("\n")
            status = "pass" if r.passed else "fail"
            head = head[: -len(status)] + _color(status, "32" if r.passed else "31", out)
            print(head + ("\n" + rest if rest and (args.verbose or not r.passed) else ""), file=out)
        print(f"{sum(r.passed for r in reports)}/{len(reports)} passed", file=out)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flagsph", description="Spherical actions on isotropic flag varieties.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp, choices=("text", "json")):
        sp.add_argument("--format", choices=choices, default="text")

    def group(sp):
        sp.add_argument("--group", required=True, choices=["sp", "so"])
        sp.add_argument("--dim", required=True, type=int)

    def sampling(sp):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--trials", type=int, default=DEFAULT_TRIALS)

    sp = sub.add_parser("collapse", help="eps-collapse of a partition")
    sp.add_argument("--d", required=True, type=int)
    sp.add_argument("--eps", required=True, type=int)
    sp.add_argument("--partition", required=True)
    fmt(sp)
    sp.set_defaults(func=cmd_collapse)

    sp = sub.add_parser("richardson", help="Richardson orbit of an isotropic flag variety")
    group(sp)
    sp.add_argument("--composition", required=True)
    sp.add_argument("--sign")
    fmt(sp)
    sp.set_defaults(func=cmd_richardson)

    sp = sub.add_parser("poset", help="nil-equivalence classes and their order")
    group(sp)
    fmt(sp, ("text", "json", "dot"))
    sp.set_defaults(func=cmd_poset)

    sp = sub.add_parser("minimal", help="minimal nil-equivalence classes")
    group(sp)
    fmt(sp)
    sp.set_defaults(func=cmd_minimal)

    sp = sub.add_parser("spherical", help="test X_I for sphericity under H")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--index", required=True)
    sp.add_argument("--rank", action="store_true", help="also report rk Gamma_I(G, H)")
    sampling(sp)
    fmt(sp)
    sp.set_defaults(func=cmd_spherical)

    sp = sub.add_parser("branch", help="restrict R_G(lambda) to H")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--lambda", dest="lam", required=True)
    fmt(sp)
    sp.set_defaults(func=cmd_branch)

    sp = sub.add_parser("gamma", help="generators of Gamma_I(G, H)")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--index", required=True)
    sp.add_argument("--degree-bound", type=int, default=4)
    sampling(sp)
    fmt(sp)
    sp.set_defaults(func=cmd_gamma)

    sp = sub.add_parser("verify", help="check registry cases")
    which = sp.add_mutually_exclusive_group(required=True)
    which.add_argument("--case")
    which.add_argument("--all", action="store_true")
    sp.add_argument("--params")
    sp.add_argument("-v", "--verbose", action="store_true")
    sampling(sp)
    fmt(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, ValueError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"flagsph {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
