"""Command-line front end.

Subcommands cover the whole pipeline: Bruhat posets as DOT (``hasse``),
balanced ideals (``ideals``), relative positions of stored flags
(``position``), weighted-line decompositions (``reps``), circle-action
weight graphs (``twg``), matching a graph against the ruled-surface
catalogue (``classify``), the dimension census (``census``), and
regeneration of every checked-in artifact (``reproduce``).

Exit codes: 0 on success, 1 for usage errors, 2 when a computation rejects
its input, 3 when ``reproduce`` finds an artifact that no longer matches.

All JSON output is deterministic: keys are sorted and rationals are written
as exact strings.  Relative output paths are resolved against the directory
named by the ``FLAGFIBERS_OUT`` environment variable when it is set.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .dims import enumerate_3dim_flag_varieties, fullcases_table
from .flags import (
    ExactMatrix,
    GaussianRational,
    SymplecticForm,
    flag_from_json,
    relative_position_full,
    relative_position_symplectic,
)
from .ideals import enumerate_balanced_ideals, minimal_anosov_type
from .sl2reps import (
    Partition,
    admits_symplectic_form,
    anosov_type,
    invariant_symplectic_form,
    partition_weights,
    so2_weight_basis,
)
from .twg import CircleGroup, WeightGraph, analyze_action, classify_fiber
from .weyl import Family, RootSystem, double_cosets, identity, sign_vector

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTE = 2
EXIT_MISMATCH = 3

CASES = [
    ((3,), "full", CircleGroup.PSO2),
    ((2, 1), "full", CircleGroup.SO2),
    ((4,), "proj", CircleGroup.PSO2),
    ((2, 2), "proj", CircleGroup.PSO2),
    ((4,), "lag", CircleGroup.PSO2),
    ((2, 1, 1), "lag", CircleGroup.SO2),
]


class UsageError(Exception):
    pass


class GoldenMismatch(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# small shared helpers


def _json_text(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = _resolve_out(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _resolve_out(name: str) -> Path:
    path = Path(name)
    base = os.environ.get("FLAGFIBERS_OUT")
    if base and not path.is_absolute():
        return Path(base) / path
    return path


def _parse_ints(text: str, what: str) -> tuple[int, ...]:
    try:
        values = tuple(int(chunk) for chunk in text.split(","))
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers: {text!r}")
    return values


def _load_json(path: str):
    return json.loads(Path(path).read_text())


def _first_divergence(got: str, want: str) -> str:
    """Locate the first line where two texts part ways.

    >>> _first_divergence("a\\nb\\n", "a\\nc\\n")
    "line 2: expected 'c', got 'b'"
    """
    got_lines = got.splitlines()
    want_lines = want.splitlines()
    for k, (g, w) in enumerate(itertools.zip_longest(got_lines, want_lines), 1):
        if g != w:
            return f"line {k}: expected {w!r}, got {g!r}"
    return "texts are identical"


def _entry_pair(value: GaussianRational) -> list[str]:
    return [str(value.real), str(value.imag)]


def _matrix_json(matrix: ExactMatrix) -> list[list[list[str]]]:
    return [
        [_entry_pair(entry) for entry in matrix.row(i)] for i in range(matrix.rows)
    ]


def _form_from_json(data: dict) -> SymplecticForm:
    entries = [
        [GaussianRational(Fraction(re), Fraction(im)) for re, im in row]
        for row in data["gram"]
    ]
    return SymplecticForm(ExactMatrix(entries))


# ---------------------------------------------------------------------------
# poset plumbing shared by hasse and ideals


def _sign_label(signs: tuple[int, ...]) -> str:
    return "(" + ",".join("+" if s > 0 else "-" for s in signs) + ")"


def _poset_and_labels(family: Family, rank: int, eta, signs: bool):
    system = RootSystem(family, rank)
    full = frozenset(system.simple_indices)
    eta_set = frozenset(eta) if eta is not None else full
    if not eta_set <= set(system.simple_indices):
        raise UsageError(f"eta {sorted(eta_set)} outside 1..{rank}")
    poset = double_cosets(system, full, eta_set)
    if signs:
        if family is not Family.C:
            raise UsageError("--signs makes sense for family C only")
        labels = [_sign_label(sign_vector(dc.min_rep)) for dc in poset.cosets]
        if len(set(labels)) != len(labels):
            raise ValueError("sign vectors do not separate these positions")
    else:
        labels = [dc.label() for dc in poset.cosets]
    return poset, labels


def _hasse_dot(labels: list[str], covers) -> str:
    lines = ["digraph hasse {", "  rankdir=BT;", "  node [shape=plaintext];"]
    lines.extend(f'  "{label}";' for label in labels)
    lines.extend(
        f'  "{labels[i]}" -> "{labels[j]}" [arrowhead=none];' for i, j in covers
    )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _hasse_text(family: Family, rank: int, eta, signs: bool) -> str:
    poset, labels = _poset_and_labels(family, rank, eta, signs)
    return _hasse_dot(labels, poset.covers())


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_hasse(args) -> int:
    eta = _parse_ints(args.eta, "--eta") if args.eta else None
    _emit(_hasse_text(Family[args.family], args.rank, eta, args.signs), args.out)
    return EXIT_OK


def _cmd_ideals(args) -> int:
    eta = _parse_ints(args.eta, "--eta") if args.eta else None
    poset, labels = _poset_and_labels(Family[args.family], args.rank, eta, args.signs)
    balanced = enumerate_balanced_ideals(poset)
    payload = {
        "family": args.family,
        "rank": args.rank,
        "eta": sorted(poset.right_type),
        "positions": labels,
        "balanced_ideals": [
            {
                "members": sorted(labels[i] for i in ideal.members),
                "minimal_anosov_type": sorted(minimal_anosov_type(ideal)),
            }
            for ideal in balanced
        ],
    }
    _emit(_json_text(payload), args.out)
    return EXIT_OK


def _cmd_position(args) -> int:
    first = flag_from_json(_load_json(args.flag))
    second = flag_from_json(_load_json(args.other))
    if args.symplectic:
        omega = _form_from_json(_load_json(args.symplectic))
        w = relative_position_symplectic(first, second, omega)
    else:
        w = relative_position_full(first, second)
    print("identity" if w == identity(w.system) else w.window_str())
    return EXIT_OK


def _cmd_reps(args) -> int:
    p = Partition(_parse_ints(args.partition, "--partition"))
    basis = so2_weight_basis(p)
    symplectic = p.total % 2 == 0 and admits_symplectic_form(p)
    payload = {
        "partition": str(p),
        "weights": list(partition_weights(p)),
        "anosov_type": sorted(anosov_type(p)),
        "admits_symplectic_form": symplectic,
        "basis": {"labels": list(basis.labels), "weights": list(basis.weights)},
        "invariant_form": (
            _matrix_json(invariant_symplectic_form(p).gram) if symplectic else None
        ),
    }
    _emit(_json_text(payload), args.out)
    return EXIT_OK


def _cmd_twg(args) -> int:
    p = Partition(_parse_ints(args.partition, "--partition"))
    analysis = analyze_action(p, args.flag, CircleGroup[args.group.upper()])
    graph = analysis.ambient_graph if args.ambient else analysis.fiber_graph
    _emit(graph.to_dot() if args.dot else graph.to_json(), args.out)
    return EXIT_OK


def _cmd_classify(args) -> int:
    graph = WeightGraph.from_json(Path(args.graph).read_text())
    record = classify_fiber(graph)
    payload = {
        "matched": record.matched,
        "model": record.model,
        "diffeotype": record.diffeotype,
    }
    _emit(_json_text(payload), args.out)
    return EXIT_OK


def _census_rows(max_rank: int) -> list[dict]:
    found = enumerate_3dim_flag_varieties(max_rank)
    return [
        {
            "group": group,
            "varieties": [d.to_json_dict() for d in members],
        }
        for group, members in (
            (key, list(chunk))
            for key, chunk in itertools.groupby(found, key=lambda d: d.group_label)
        )
    ]


def _census_json_text(max_rank: int) -> str:
    return _json_text({"rows": _census_rows(max_rank)})


def _fullcases_json_text() -> str:
    return _json_text({"rows": [row.to_json_dict() for row in fullcases_table()]})


def _cmd_census(args) -> int:
    if args.cases:
        if args.json:
            _emit(_fullcases_json_text(), args.out)
        else:
            lines = [
                f"{' = '.join(row.groups)} | {row.variety} | "
                + ", ".join(str(p) for p in row.partitions)
                for row in fullcases_table()
            ]
            _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK
    if args.json:
        _emit(_census_json_text(args.max_rank), args.out)
        return EXIT_OK
    lines = [
        row["group"] + ": " + ", ".join(v["symbol"] for v in row["varieties"])
        for row in _census_rows(args.max_rank)
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _artifacts() -> dict[str, str]:
    files = {
        "hasse_a2_full.dot": _hasse_text(Family.A, 2, None, signs=False),
        "hasse_c2_eta2.dot": _hasse_text(Family.C, 2, (2,), signs=True),
        "census.json": _census_json_text(6),
        "fullcases.json": _fullcases_json_text(),
    }
    for parts, kind, group in CASES:
        name = f"twg_{kind}_{'-'.join(str(d) for d in parts)}.json"
        graph = analyze_action(Partition(parts), kind, group).fiber_graph
        files[name] = graph.to_json()
    return files


def _cmd_reproduce(args) -> int:
    golden_dir = Path(args.golden_dir)
    files = _artifacts()
    if args.write:
        golden_dir.mkdir(parents=True, exist_ok=True)
        for name, text in sorted(files.items()):
            (golden_dir / name).write_text(text)
        print(f"wrote {len(files)} artifacts to {golden_dir}")
        return EXIT_OK
    for name, text in sorted(files.items()):
        path = golden_dir / name
        if not path.exists():
            raise GoldenMismatch(f"{name}: golden file missing from {golden_dir}")
        want = path.read_text()
        if text != want:
            raise GoldenMismatch(f"{name}: {_first_divergence(text, want)}")
    print(f"{len(files)} artifacts match {golden_dir}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# the parser


def _default_golden_dir() -> str:
    return str(Path(__file__).resolve().parents[2] / "paper")


def _add_output_option(sub) -> None:
    sub.add_argument(
        "-o",
        "--out",
        help="write to this file (relative paths land in $FLAGFIBERS_OUT) "
        "instead of stdout",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="flagfibers", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    hasse = subs.add_parser("hasse", help="Bruhat poset of positions as DOT")
    hasse.add_argument("--family", choices=["A", "C"], required=True)
    hasse.add_argument("--rank", type=int, required=True)
    hasse.add_argument("--eta", help="comma-separated type, default: all")
    hasse.add_argument(
        "--signs", action="store_true", help="label type C cosets by sign vectors"
    )
    _add_output_option(hasse)
    hasse.set_defaults(handler=_cmd_hasse)

    ideals = subs.add_parser("ideals", help="balanced ideals of a position poset")
    ideals.add_argument("--family", choices=["A", "C"], required=True)
    ideals.add_argument("--rank", type=int, required=True)
    ideals.add_argument("--eta", help="comma-separated type, default: all")
    ideals.add_argument("--signs", action="store_true")
    _add_output_option(ideals)
    ideals.set_defaults(handler=_cmd_ideals)

    position = subs.add_parser("position", help="relative position of two flags")
    position.add_argument("flag", help="JSON file with the reference flag")
    position.add_argument("other", help="JSON file with the second flag")
    position.add_argument(
        "--symplectic", help="JSON file with a Gram matrix; use signed positions"
    )
    position.set_defaults(handler=_cmd_position)

    reps = subs.add_parser("reps", help="weighted-line decomposition data")
    reps.add_argument("--partition", required=True, help="e.g. 2,1,1")
    _add_output_option(reps)
    reps.set_defaults(handler=_cmd_reps)

    twg = subs.add_parser("twg", help="circle-action weight graph of a case")
    twg.add_argument("--partition", required=True, help="e.g. 2,1,1")
    twg.add_argument("--flag", choices=["full", "proj", "lag"], required=True)
    twg.add_argument("--group", choices=["so2", "pso2"], required=True)
    twg.add_argument(
        "--ambient", action="store_true", help="emit the ambient graph instead"
    )
    twg.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
    _add_output_option(twg)
    twg.set_defaults(handler=_cmd_twg)

    classify = subs.add_parser("classify", help="match a graph to the catalogue")
    classify.add_argument("graph", help="JSON file with a weight graph")
    _add_output_option(classify)
    classify.set_defaults(handler=_cmd_classify)

    census = subs.add_parser("census", help="three-dimensional flag varieties")
    census.add_argument("--max-rank", type=int, default=6)
    census.add_argument("--json", action="store_true")
    census.add_argument(
        "--cases", action="store_true", help="print the case table instead"
    )
    _add_output_option(census)
    census.set_defaults(handler=_cmd_census)

    reproduce = subs.add_parser(
        "reproduce", help="regenerate all artifacts and compare to the golden files"
    )
    reproduce.add_argument("--golden-dir", default=_default_golden_dir())
    reproduce.add_argument(
        "--write", action="store_true", help="rewrite the golden files"
    )
    reproduce.set_defaults(handler=_cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except UsageError as error:
        print(f"usage error: {error}", file=sys.stderr)
        return EXIT_USAGE
    except GoldenMismatch as error:
        print(f"mismatch: {error}", file=sys.stderr)
        return EXIT_MISMATCH
    except (
        ValueError,
        KeyError,
        ArithmeticError,
        NotImplementedError,
        OSError,
    ) as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
