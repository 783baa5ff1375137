"""Command-line entry point.

Machine-readable output (JSON) goes to ``--out`` when given and to stdout
otherwise; the one-line human summary always goes to stderr.  Exit codes:
0 success, 1 computed mismatch, 2 bad input, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .autgroup import (
    construction_forms,
    random_rational_vectors,
    rigidity_certificate,
    verify_construction,
    verify_diagonal,
)
from .caps import CapExceeded, default_caps
from .forms import as_polynomial, diagonal_form
from .fraisse import (
    complete_graph,
    cycle_graph,
    dlo_approx,
    glinfty_approx,
    hypergraph_family,
    hypergraph_glue,
    hypergraph_truncation,
    k4_minus_edge,
    line_cycle,
    line_family,
    line_rotation,
    path_graph,
    petersen_graph,
    rado_approx,
    random_colored_hypergraph,
)
from .relstruct import (
    InvalidStructure,
    PermGroup,
    RelationalStructure,
    automorphism_search,
    orbit_partition,
    structure_from_dict,
    structure_to_dict,
)
from .repthy import length_report, summand_decomposition

EXIT_OK, EXIT_MISMATCH, EXIT_BAD_INPUT, EXIT_CAP = 0, 1, 2, 3

PRESETS = ("dlo", "rado", "glinfty", "line", "hypergraph", "petersen", "path", "cycle", "complete", "k4e")


class BadInput(ValueError):
    pass


def _need(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise BadInput(f"--{name} is required for preset {args.preset!r}")
    return value


def build_preset(args, caps) -> RelationalStructure:
    p = args.preset
    if p == "dlo":
        return dlo_approx(_need(args, "n"))
    if p == "rado":
        return rado_approx(_need(args, "n"))
    if p == "glinfty":
        return glinfty_approx(_need(args, "q"), _need(args, "dim"), caps)
    if p == "line":
        return line_cycle(_need(args, "n"))
    if p == "hypergraph":
        m = args.m if args.m is not None else 3
        t = _need(args, "colors")
        if args.p is None:
            return hypergraph_glue(hypergraph_truncation(t, m))
        return hypergraph_glue(random_colored_hypergraph(_need(args, "n"), t, m, args.p, args.seed, caps))
    if p == "petersen":
        return petersen_graph()
    if p == "path":
        return path_graph(_need(args, "n"))
    if p == "cycle":
        return cycle_graph(_need(args, "n"))
    if p == "complete":
        return complete_graph(_need(args, "n"))
    if p == "k4e":
        return k4_minus_edge()
    raise BadInput(f"unknown preset {p!r}")


def load_structure(args, caps) -> RelationalStructure:
    if args.input is not None:
        if args.preset is not None:
            raise BadInput("give either --input or --preset, not both")
        try:
            obj = json.loads(Path(args.input).read_text())
        except OSError as exc:
            raise BadInput(f"cannot read {args.input}: {exc}") from exc
        return structure_from_dict(obj)
    if args.preset is None:
        raise BadInput("a structure is required: use --preset or --input")
    return build_preset(args, caps)


def emit(args, obj) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def say(msg: str) -> None:
    print(msg, file=sys.stderr)


# ---------------------------------------------------------------------------
# subcommands


def cmd_structure(args, caps) -> int:
    s = load_structure(args, caps)
    counts = ", ".join(f"P{i + 1}: {len(rel)} tuples" for i, rel in enumerate(s.relations))
    say(f"universe size {s.n}; {counts}")
    emit(args, structure_to_dict(s))
    return EXIT_OK


def cmd_forms(args, caps) -> int:
    s = load_structure(args, caps)
    system = construction_forms(s, args.mode, args.m)
    forms = []
    for name, f in zip(system.names, system.forms):
        entry = {"name": name, **f.to_dict(), "symmetric": f.is_symmetric(),
                 "polynomial": as_polynomial(f).to_text()}
        forms.append(entry)
        say(f"{name}: {entry['polynomial']}")
    emit(args, {"mode": system.mode, "root_order": system.root_order, "forms": forms})
    return EXIT_OK


def cmd_aut(args, caps) -> int:
    s = load_structure(args, caps)
    g = automorphism_search(s, caps)
    say(f"|Aut| = {g.order}")
    emit(args, {"n": s.n, "order": g.order, "generators": [list(p) for p in g.generators]})
    return EXIT_OK


def _group_for(args, s, caps) -> tuple[PermGroup, str]:
    if args.group == "preset":
        if args.preset != "line":
            raise BadInput("preset generators are only defined for --preset line")
        return PermGroup(s.n, (line_rotation(s.n),)), "preset generators"
    return automorphism_search(s, caps), "automorphism search"


def cmd_orbits(args, caps) -> int:
    s = load_structure(args, caps)
    g, source = _group_for(args, s, caps)
    part = orbit_partition(g, args.k, caps)
    out = {
        "n": s.n,
        "k": args.k,
        "group_source": source,
        "count": part.count,
        "representatives": [list(t) for t in part.representatives],
        "sizes": list(part.sizes),
    }
    if args.m is not None:
        dec = summand_decomposition(g, args.k, args.m, caps)
        out["m"] = args.m
        out["cross_orbit_character_collisions"] = dec.cross_orbit_collisions
    say(f"{part.count} orbits on X^{args.k}")
    emit(args, out)
    return EXIT_OK


def cmd_verify(args, caps) -> int:
    if args.kind == "prop-diag":
        report = verify_diagonal(_need(args, "n"), args.d, caps)
        say(f"order {report.group_order}, expected {report.expected_order}: {'pass' if report.match else 'MISMATCH'}")
        emit(args, report.to_dict())
        return EXIT_OK if report.match else EXIT_MISMATCH
    if args.kind == "construction":
        s = load_structure(args, caps)
        report = verify_construction(s, args.mode, args.m, caps)
        say(f"{report.mode}: order {report.group_order}, expected {report.expected_order}: "
            f"{'pass' if report.match else 'MISMATCH'}")
        emit(args, report.to_dict())
        return EXIT_OK if report.match else EXIT_MISMATCH
    # rigidity
    n = _need(args, "n")
    vectors = random_rational_vectors(n, args.samples, args.seed)
    report = rigidity_certificate(diagonal_form(n, args.d), vectors)
    failures = report.failures
    say(f"rigidity n={n} d={args.d}: {len(vectors) - len(failures)}/{len(vectors)} agree")
    emit(args, {
        "mode": f"rigidity(n={n},d={args.d})",
        "samples": len(vectors),
        "failures": [[str(x) for x in f.vector] for f in failures],
        "match": report.passed,
    })
    return EXIT_OK if report.passed else EXIT_MISMATCH


def _sizes(text: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise BadInput(f"bad --sizes {text!r}") from exc
    if not out:
        raise BadInput("--sizes must list at least one size")
    return out


def cmd_length(args, caps) -> int:
    if args.preset == "line":
        family = line_family()
    elif args.preset == "hypergraph":
        family = hypergraph_family(args.m_hyper)
    else:
        raise BadInput("length supports --preset line or --preset hypergraph")
    sizes = _sizes(args.sizes)
    report = length_report(family, args.k, args.m, sizes, caps, use_generators=args.group == "preset")
    say(f"orbit counts {list(report.orbit_counts)}: {report.verdict}")
    emit(args, report.to_dict())
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {value}")
    return value


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--cap-perms", type=_positive, help="max universe size for automorphism search")
    p.add_argument("--cap-tuples", type=_positive, help="max n^k for orbit enumeration")
    p.add_argument("--cap-group", type=_positive, help="max order of an enumerated group")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized constructions")
    p.add_argument("--out", help="write JSON here instead of stdout")
    return p


def _structure_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", choices=PRESETS)
    p.add_argument("--input", help="structure JSON file")
    p.add_argument("--n", type=_nonneg)
    p.add_argument("--q", type=int)
    p.add_argument("--dim", type=_positive)
    p.add_argument("--colors", type=_positive, help="number of hypergraph colours")
    p.add_argument("--m", type=_positive, help="uniformity (hypergraph) or block size (blowup)")
    p.add_argument("--p", type=float, help="edge probability; makes the hypergraph random")


def make_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="tensorspace", description="Symmetry groups of tensor spaces built from relational structures.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("structure", parents=[common], help="write a preset structure as JSON")
    _structure_flags(p)
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("forms", parents=[common], help="emit the form system of a structure")
    _structure_flags(p)
    p.add_argument("--mode", choices=("standard", "blowup", "blowup2"), default="standard")
    p.set_defaults(func=cmd_forms)

    p = sub.add_parser("aut", parents=[common], help="automorphism group of a structure")
    _structure_flags(p)
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("orbits", parents=[common], help="orbits of Aut (or preset generators) on k-tuples")
    _structure_flags(p)
    p.add_argument("--k", type=_nonneg, default=1)
    p.add_argument("--group", choices=("search", "preset"), default="search")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("verify", parents=[common], help="check a symmetry-group prediction")
    p.add_argument("kind", choices=("prop-diag", "construction", "rigidity"))
    _structure_flags(p)
    p.add_argument("--d", type=_positive, default=3, help="arity of the diagonal form")
    p.add_argument("--mode", choices=("standard", "blowup", "blowup2"), default="standard")
    p.add_argument("--samples", type=_positive, default=200)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("length", parents=[common], help="orbit-count evidence for representation length")
    p.add_argument("--preset", choices=("line", "hypergraph"), required=True)
    p.add_argument("--k", type=_nonneg, required=True)
    p.add_argument("--m", type=_positive, default=3, help="root order of the diagonal group")
    p.add_argument("--uniformity", dest="m_hyper", type=_positive, default=3,
                   help="hypergraph uniformity (default 3)")
    p.add_argument("--sizes", required=True, help="comma-separated increasing truncation sizes")
    p.add_argument("--group", choices=("search", "preset"), default="preset",
                   help="use preset generators when the family has them (default) or search Aut")
    p.set_defaults(func=cmd_length)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        caps = default_caps().with_overrides(
            perms=args.cap_perms, tuples=args.cap_tuples, group=args.cap_group
        )
        return args.func(args, caps)
    except CapExceeded as exc:
        say(f"cap exceeded: {exc}")
        return EXIT_CAP
    except (BadInput, InvalidStructure, ValueError, IndexError, json.JSONDecodeError) as exc:
        say(f"error: {exc}")
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
