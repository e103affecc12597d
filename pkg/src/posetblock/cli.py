"""Command-line front end.

Every invocation reads one space description (``--space FILE``), a JSON object::

    {"q": 2, "n": 3, "cover_relations": [[1, 2], [2, 3]],
     "labels": [1, 2, 1], "weight": {"0": 0, "1": 1},
     "budgets": {"matrices": 67108864, "vectors": 1048576, "group": 1000000}}

``budgets`` is optional.  Vectors are block lists such as ``[[0],[1,0],[0]]``;
matrices are row lists and act on column vectors (column ``j`` is the image of
the ``j``-th basis vector).  Exit status: 0 success/true, 1 false/none, 2 error.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from dataclasses import asdict, dataclass
from typing import Any, Sequence

from . import codes, isometry
from .errors import (
    DecompositionFailed,
    NotAnAutomorphism,
    NotPrime,
    ParseError,
    PosetBlockError,
)
from .field import DEFAULT_MATRIX_BUDGET, Matrix, make_field
from .poset import LabelMap, Poset, enumerate_automorphisms
from .space import SpaceSpec, pwpi_distance, pwpi_weight
from .weight import make_weight

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2

_FIELDS = ("q", "n", "cover_relations", "labels", "weight")
_BUDGET_KEYS = ("matrices", "vectors", "group")


@dataclass(frozen=True)
class Budgets:
    matrices: int = DEFAULT_MATRIX_BUDGET
    vectors: int = isometry.DEFAULT_VECTOR_BUDGET
    group: int = isometry.DEFAULT_GROUP_BUDGET


def _int(value: Any, location: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(location, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ParseError(location, f"must be at least {minimum}, got {value}")
    return value


def _int_list(value: Any, location: str) -> list[int]:
    if not isinstance(value, list):
        raise ParseError(location, f"expected a list, got {value!r}")
    return [_int(v, f"{location}[{i}]") for i, v in enumerate(value)]


def parse_description(text: str) -> tuple[SpaceSpec, Budgets | None]:
    """Parse and fully validate a space description; budgets are None when absent."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    if not isinstance(doc, dict):
        raise ParseError("line 1 column 1", "expected a JSON object")
    for key in _FIELDS:
        if key not in doc:
            raise ParseError(key, "missing field")
    unknown = sorted(set(doc) - set(_FIELDS) - {"budgets"})
    if unknown:
        raise ParseError(unknown[0], "unknown field")

    q = _int(doc["q"], "q")
    try:
        F = make_field(q)
    except PosetBlockError as exc:
        raise ParseError("q", f"{type(exc).__name__}: {exc}") from exc

    n = _int(doc["n"], "n", minimum=1)
    covers = doc["cover_relations"]
    if not isinstance(covers, list):
        raise ParseError("cover_relations", "expected a list of pairs")
    pairs = []
    for i, pair in enumerate(covers):
        pair = _int_list(pair, f"cover_relations[{i}]")
        if len(pair) != 2:
            raise ParseError(f"cover_relations[{i}]", "expected a pair")
        pairs.append(tuple(pair))
    try:
        P = Poset.from_cover_relations(n, pairs)
    except PosetBlockError as exc:
        raise ParseError("cover_relations", f"{type(exc).__name__}: {exc}") from exc

    labels = _int_list(doc["labels"], "labels")
    if len(labels) != n:
        raise ParseError("labels", f"expected {n} labels, got {len(labels)}")
    try:
        pi = LabelMap(tuple(labels))
    except ValueError as exc:
        raise ParseError("labels", str(exc)) from exc

    weight = doc["weight"]
    if not isinstance(weight, dict):
        raise ParseError("weight", "expected an object mapping element codes to integers")
    table: dict[int, int] = {}
    for key, value in weight.items():
        if not (isinstance(key, str) and key.isdigit() and int(key) < q and str(int(key)) == key):
            raise ParseError("weight", f"key {key!r} is not an element code 0..{q - 1}")
        table[int(key)] = _int(value, f"weight[{key!r}]")
    missing = [str(a) for a in range(q) if a not in table]
    if missing:
        raise ParseError("weight", f"missing key(s) {', '.join(repr(m) for m in missing)}")
    try:
        w = make_weight(F, table)
    except PosetBlockError as exc:
        raise ParseError("weight", f"{type(exc).__name__}: {exc}") from exc

    budgets = None
    if "budgets" in doc:
        raw = doc["budgets"]
        if not isinstance(raw, dict):
            raise ParseError("budgets", "expected an object")
        for key in raw:
            if key not in _BUDGET_KEYS:
                raise ParseError(f"budgets.{key}", "unknown budget")
        budgets = Budgets(**{k: _int(v, f"budgets.{k}", minimum=1) for k, v in raw.items()})
    return SpaceSpec(F, P, pi, w), budgets


def parse_space_file(text: str) -> SpaceSpec:
    return parse_description(text)[0]


def space_to_dict(S: SpaceSpec, budgets: Budgets | None = None) -> dict[str, Any]:
    """Normalized description: covers are the Hasse diagram, weight keys in order."""
    doc: dict[str, Any] = {
        "q": S.q,
        "n": S.n,
        "cover_relations": [list(p) for p in S.poset.cover_relations()],
        "labels": list(S.labels.labels),
        "weight": S.weight.as_mapping(),
    }
    if budgets is not None:
        doc["budgets"] = asdict(budgets)
    return doc


def _parse_json_arg(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(what, exc.msg) from None


def _matrix_arg(text: str, what: str) -> Matrix:
    rows = _parse_json_arg(text, what)
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError(what, "expected a nonempty list of rows")
    return Matrix.from_rows([_int_list(r, f"{what}[{i}]") for i, r in enumerate(rows)])


def _vector_arg(text: str, what: str) -> list[list[int]]:
    blocks = _parse_json_arg(text, what)
    if not isinstance(blocks, list):
        raise ParseError(what, "expected a list of blocks")
    return [_int_list(b, f"{what}[{i}]") for i, b in enumerate(blocks)]


def _dump(value: Any) -> str:
    return json.dumps(value)


@dataclass
class Outcome:
    payload: dict[str, Any]
    lines: list[str]
    code: int = EXIT_OK


def _cmd_validate(S, budgets, args) -> Outcome:
    doc = space_to_dict(S, budgets)
    return Outcome({"space": doc, "N": S.N}, [json.dumps(doc, indent=2)])


def _cmd_weight(S, budgets, args) -> Outcome:
    value = pwpi_weight(S, _vector_arg(args.vector, "vector"))
    return Outcome({"weight": value}, [str(value)])


def _cmd_distance(S, budgets, args) -> Outcome:
    value = pwpi_distance(S, _vector_arg(args.v1, "v1"), _vector_arg(args.v2, "v2"))
    return Outcome({"distance": value}, [str(value)])


def _cmd_aut(S, budgets, args) -> Outcome:
    auts = enumerate_automorphisms(S.poset, S.labels if args.labels else None)
    perms = [list(a.perm) for a in auts]
    return Outcome({"automorphisms": perms, "count": len(perms)}, [_dump(p) for p in perms])


def _cmd_check(S, budgets, args) -> Outcome:
    T = _matrix_arg(args.matrix, "matrix")
    iso = isometry.is_isometry_exhaustive(S, T, budget=budgets.vectors)
    tri = isometry.in_triangular_group(S, T)
    return Outcome(
        {"isometry": iso, "triangular": tri},
        [f"isometry {_dump(iso)}", f"triangular {_dump(tri)}"],
        EXIT_OK if iso else EXIT_FALSE,
    )


def _not_isometry(exc: Exception) -> Outcome:
    return Outcome({"isometry": False, "reason": str(exc)}, ["not an isometry"], EXIT_FALSE)


def _cmd_phi(S, budgets, args) -> Outcome:
    T = _matrix_arg(args.matrix, "matrix")
    try:
        psi = isometry.phi_of(S, T, budget=budgets.vectors)
    except (NotPrime, NotAnAutomorphism) as exc:
        return _not_isometry(exc)
    return Outcome({"phi": list(psi.perm)}, [_dump(list(psi.perm))])


def _cmd_decompose(S, budgets, args) -> Outcome:
    T = _matrix_arg(args.matrix, "matrix")
    try:
        dec = isometry.decompose(S, T, budget=budgets.vectors)
    except DecompositionFailed as exc:
        return _not_isometry(exc)
    tri, perm = dec.triangular.to_rows(), list(dec.automorphism.perm)
    return Outcome(
        {"triangular": tri, "automorphism": perm},
        [f"triangular {_dump(tri)}", f"automorphism {_dump(perm)}"],
    )


def _cmd_order(S, budgets, args) -> Outcome:
    value = isometry.group_order(S, budget=budgets.matrices)
    return Outcome({"order": value}, [str(value)])


def _cmd_enumerate(S, budgets, args) -> Outcome:
    maps = []
    stream = isometry.enumerate_group(S, budget=budgets.group, matrix_budget=budgets.matrices)
    for T in stream:
        if args.limit is not None and len(maps) >= args.limit:
            break
        maps.append(T.to_rows())
    return Outcome({"maps": maps, "count": len(maps)}, [_dump(m) for m in maps])


def _cmd_verify(S, budgets, args) -> Outcome:
    order = isometry.group_order(S, budget=budgets.matrices)
    oracle = isometry.oracle_group(S, matrix_budget=budgets.matrices, vector_budget=budgets.vectors)
    structured = list(
        isometry.enumerate_group(S, budget=budgets.group, matrix_budget=budgets.matrices)
    )
    equal = set(structured) == oracle and len(structured) == len(oracle) == order
    payload = {"order": order, "oracle": len(oracle), "enumerated": len(structured), "equal": equal}
    lines = [f"{k} {_dump(v)}" for k, v in payload.items()]
    return Outcome(payload, lines, EXIT_OK if equal else EXIT_FALSE)


def _code_arg(S: SpaceSpec, text: str, what: str) -> codes.LinearCode:
    G = _matrix_arg(text, what)
    return codes.LinearCode(S.field, G)


def _cmd_mindist(S, budgets, args) -> Outcome:
    C = _code_arg(S, args.generator, "generator")
    value = codes.min_distance(S, C, budget=budgets.vectors)
    return Outcome({"min_distance": value}, [str(value)])


def _cmd_equivalent(S, budgets, args) -> Outcome:
    C1 = _code_arg(S, args.g1, "g1")
    C2 = _code_arg(S, args.g2, "g2")
    eq = codes.are_equivalent(
        S, C1, C2,
        group_budget=budgets.group,
        matrix_budget=budgets.matrices,
        codeword_budget=budgets.vectors,
    )
    if eq is None:
        return Outcome({"equivalent": False}, ["none"], EXIT_FALSE)
    witness, perm = eq.map.to_rows(), list(eq.automorphism.perm)
    return Outcome(
        {"equivalent": True, "witness": witness, "automorphism": perm},
        [f"witness {_dump(witness)}", f"automorphism {_dump(perm)}"],
    )


def _add_common(p: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    p.add_argument("--space", metavar="PATH", default=default, help="space description file")
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False,
                   help="emit one JSON object instead of plain lines")
    p.add_argument("--budget-matrices", type=int, default=default, metavar="B")
    p.add_argument("--budget-vectors", type=int, default=default, metavar="B")
    p.add_argument("--budget-group", type=int, default=default, metavar="B")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="posetblock",
        description="Linear isometries of weighted-coordinates poset block spaces.",
    )
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help: str, *positionals: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        _add_common(p, suppress=True)
        for pos in positionals:
            p.add_argument(pos)
        p.set_defaults(handler=handler)
        return p

    add("validate", _cmd_validate, "print the normalized space description")
    add("weight", _cmd_weight, "weight of a block vector", "vector")
    add("distance", _cmd_distance, "distance between two block vectors", "v1", "v2")
    aut = add("aut", _cmd_aut, "list poset automorphisms")
    aut.add_argument("--labels", action="store_true", help="only label-preserving ones")
    add("check", _cmd_check, "exhaustive isometry test and triangular membership", "matrix")
    add("phi", _cmd_phi, "poset automorphism induced by an isometry", "matrix")
    add("decompose", _cmd_decompose, "split an isometry as F ∘ T_ψ", "matrix")
    add("order", _cmd_order, "order of the linear isometry group")
    enum = add("enumerate", _cmd_enumerate, "list the linear isometry group")
    enum.add_argument("--limit", type=int, default=None)
    add("verify", _cmd_verify, "compare brute force against the structured group")
    add("mindist", _cmd_mindist, "minimum distance of a linear code", "generator")
    add("equivalent", _cmd_equivalent, "search for an isometry between two codes", "g1", "g2")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    if not args.space:
        print("error: --space is required", file=sys.stderr)
        return EXIT_ERROR
    try:
        with open(args.space, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {args.space}: {exc.strerror}", file=sys.stderr)
        return EXIT_ERROR
    try:
        S, file_budgets = parse_description(text)
        base = file_budgets or Budgets()
        budgets = Budgets(
            matrices=args.budget_matrices or base.matrices,
            vectors=args.budget_vectors or base.vectors,
            group=args.budget_group or base.group,
        )
        outcome = args.handler(S, budgets if args.command != "validate" else file_budgets, args)
    except PosetBlockError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.json:
        print(json.dumps({"command": args.command, **outcome.payload}))
    else:
        for line in outcome.lines:
            print(line)
    return outcome.code


@dataclass(frozen=True)
class CommandResult:
    code: int
    stdout: str
    stderr: str


def run_command(argv: Sequence[str]) -> CommandResult:
    """Run the CLI in-process, capturing both streams."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return CommandResult(code, out.getvalue(), err.getvalue())


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
