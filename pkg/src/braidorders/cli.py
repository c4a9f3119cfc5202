"""Batch command line for the sign oracles, catalog and experiments.

Exit codes: 0 success, 1 malformed input, 2 mathematically inconclusive
(undecided comparisons, degenerate probes, too-short stabilization windows).
Output is deterministic for fixed flags and seed; --format picks text, json
(line-delimited records) or csv.
"""

from __future__ import annotations

import argparse
import csv as csv_module
import io
import json
import os
import sys
from pathlib import Path

from .braids import BallSpec, parse_braid
from .catalog import calibrate_conventions, catalog, frozen_convention
from .errors import (
    BudgetExceededError,
    CalibrationError,
    MalformedInputError,
    SearchFailureError,
    SoulValidationError,
    StreamGrowthError,
    UndecidedComparisonError,
)
from .experiments import (
    SCHEMA,
    agreement_radius,
    converge_conjugates_experiment,
    converge_extensions_experiment,
    limit_probe_experiment,
    small_positive_search,
)
from .nt import (
    NTOrder,
    conrad_witness_search,
    convex_chain_report,
    format_geodesic_spec,
    parse_geodesic_spec,
    soul_of,
    totality_probe,
)
from .orders import (
    ConjugatedOrder,
    ConvexExtensionOrder,
    DehornoyOrder,
    OrderOracle,
    ZkIntegerSlope,
    ZkLex,
    ZkQuadraticSlope,
    order_cmp,
)
from .planar import DEFAULT_DEPTH_CAP

SIGN_NAMES = {-1: "negative", 0: "zero", 1: "positive"}
CMP_NAMES = {-1: "less", 0: "equal", 1: "greater"}

DEPTH_CAP_ENV = "BRAIDORDERS_DEPTH_CAP"


def _default_depth_cap() -> int:
    raw = os.environ.get(DEPTH_CAP_ENV)
    if raw is None:
        return DEFAULT_DEPTH_CAP
    try:
        return int(raw)
    except ValueError:
        raise MalformedInputError(f"{DEPTH_CAP_ENV} must be an integer, got {raw!r}")


def _load_spec(token: str, depth_cap: int) -> NTOrder:
    specs = catalog()
    if token in specs:
        return NTOrder(specs[token], frozen_convention(specs[token].n), depth_cap)
    path = Path(token)
    if path.exists():
        spec = parse_geodesic_spec(path.read_text())
        return NTOrder(spec, frozen_convention(spec.n), depth_cap)
    raise MalformedInputError(f"no catalog entry or spec file named {token!r}")


def _parse_soul_order(token: str, soul: tuple[int, ...]) -> ZkLex | ZkIntegerSlope | ZkQuadraticSlope:
    token = token.strip()
    k = len(soul)
    if token.startswith("lex(") and token.endswith(")"):
        inner = token[4:-1]
        axes: list[int] = []
        signs: list[int] = []  # rank-ordered, paired with axes
        for part in inner.split(","):
            v = int(part)
            gen = abs(v)
            if gen not in soul:
                raise MalformedInputError(f"lex axis {gen} is not a soul generator of {soul}")
            axes.append(soul.index(gen))
            signs.append(1 if v > 0 else -1)
        return ZkLex(k, tuple(axes), tuple(signs))
    if token.startswith("slope(") and token.endswith(")"):
        weights = tuple(int(p) for p in token[6:-1].split(","))
        return ZkIntegerSlope(k, weights, ZkLex.standard(k))
    if token.startswith("qslope(") and token.endswith(")"):
        inner = token[7:-1]
        d_text, rest = inner.split(";", 1)
        weights = []
        for part in rest.split(","):
            a_text, b_text = part.split()
            weights.append((int(a_text), int(b_text)))
        return ZkQuadraticSlope(k, int(d_text), tuple(weights))
    raise MalformedInputError(f"cannot parse soul order {token!r}")


def parse_order(text: str, n: int, depth_cap: int) -> OrderOracle:
    """Grammar: dehornoy | nt:<name-or-file> | conj:<order>:<braid> |
    ext:<order>:<soul-order>; the trailing segment is colon-free."""
    text = text.strip()
    if text == "dehornoy":
        return DehornoyOrder(n)
    if text.startswith("nt:"):
        order = _load_spec(text[3:], depth_cap)
        if order.n != n:
            raise MalformedInputError(
                f"order {text!r} lives in B_{order.n}, but --n {n} was given"
            )
        return order
    if text.startswith("conj:"):
        body = text[5:]
        if ":" not in body:
            raise MalformedInputError(f"conj needs conj:<order>:<braid>, got {text!r}")
        base_text, braid_text = body.rsplit(":", 1)
        base = parse_order(base_text, n, depth_cap)
        return ConjugatedOrder(base, parse_braid(braid_text, n))
    if text.startswith("ext:"):
        body = text[4:]
        if ":" not in body:
            raise MalformedInputError(f"ext needs ext:<order>:<soul-order>, got {text!r}")
        base_text, soul_text = body.rsplit(":", 1)
        base = parse_order(base_text, n, depth_cap)
        if not isinstance(base, NTOrder):
            raise MalformedInputError("ext base must be an nt:<...> order")
        soul = tuple(sorted(base.spec.soul_generators))
        return ConvexExtensionOrder(base, _parse_soul_order(soul_text, soul))
    raise MalformedInputError(f"cannot parse order {text!r}")


def _emit(args, records: list[dict], csv_rows: list[list] | None = None) -> None:
    if args.format == "json":
        for record in records:
            payload = {"schema": SCHEMA, **record}
            print(json.dumps(payload, sort_keys=True))
    elif args.format == "csv":
        rows = csv_rows if csv_rows is not None else _records_to_csv(records)
        buffer = io.StringIO()
        writer = csv_module.writer(buffer)
        writer.writerows(rows)
        sys.stdout.write(buffer.getvalue())
    else:
        for record in records:
            print("  ".join(f"{key}={value}" for key, value in record.items()))


def _records_to_csv(records: list[dict]) -> list[list]:
    if not records:
        return []
    keys = list(records[0].keys())
    return [keys] + [[record.get(k, "") for k in keys] for record in records]


# --- commands -----------------------------------------------------------------


def cmd_sign(args) -> int:
    oracle = parse_order(args.order, args.n, args.depth_cap)
    word = parse_braid(args.braid, args.n)
    value = oracle.sign(word)
    _emit(args, [{"command": "sign", "braid": str(word), "sign": SIGN_NAMES[value]}])
    return 0


def cmd_cmp(args) -> int:
    oracle = parse_order(args.order, args.n, args.depth_cap)
    a = parse_braid(args.left, args.n)
    b = parse_braid(args.right, args.n)
    value = order_cmp(oracle, a, b)
    _emit(args, [{"command": "cmp", "left": str(a), "right": str(b), "cmp": CMP_NAMES[value]}])
    return 0


def cmd_agree(args) -> int:
    o1 = parse_order(args.order, args.n, args.depth_cap)
    o2 = parse_order(args.other, args.n, args.depth_cap)
    report = agreement_radius(o1, o2, BallSpec(args.n, args.ball_length), workers=args.workers)
    _emit(
        args,
        [
            {
                "command": "agree",
                "radius": report.radius,
                "max_length": report.max_length,
                "witness": "" if report.witness is None else str(report.witness),
                "witness_signs": ""
                if report.witness_signs is None
                else list(report.witness_signs),
                "undecided_count": report.undecided_count,
            }
        ],
    )
    return 2 if report.undecided_count else 0


def cmd_conrad(args) -> int:
    oracle = parse_order(args.order, args.n, args.depth_cap)
    witness = conrad_witness_search(oracle, args.k_max, BallSpec(args.n, args.ball_length))
    _emit(
        args,
        [
            {
                "command": "conrad",
                "f": str(witness.f),
                "g": str(witness.g),
                "k_verified": witness.k_verified,
            }
        ],
    )
    return 0


def cmd_soul(args) -> int:
    order = parse_order(args.order, args.n, args.depth_cap)
    if not isinstance(order, NTOrder):
        raise MalformedInputError("soul needs an nt:<...> order")
    soul = soul_of(order.spec, order.convention, validate=args.validate, depth_cap=args.depth_cap)
    _emit(args, [{"command": "soul", "spec": order.spec.name, "soul": sorted(soul)}])
    return 0


def cmd_chain(args) -> int:
    order = parse_order(args.order, args.n, args.depth_cap)
    if not isinstance(order, NTOrder):
        raise MalformedInputError("chain needs an nt:<...> order")
    report = convex_chain_report(
        order.spec, BallSpec(args.n, args.ball_length), order.convention, args.depth_cap
    )
    records = [
        {
            "command": "chain",
            "level": lv.index,
            "depth": lv.depth,
            "pattern": list(lv.generator_pattern),
            "members_in_ball": lv.members_in_ball,
            "checked": lv.checked,
            "violations": lv.violations,
        }
        for lv in report.levels
    ]
    _emit(args, records)
    return 2 if report.undecided_skipped else 0


def cmd_approx(args) -> int:
    order = parse_order(args.order, args.n, args.depth_cap)
    if not isinstance(order, NTOrder):
        raise MalformedInputError("approx needs an nt:<...> order")
    spec = order.spec
    ball = BallSpec(args.n, args.ball_length)
    j_lo, j_hi = _parse_range(args.range)
    if args.kind == "conjugates":
        soul = sorted(spec.soul_generators)
        if args.pattern:
            s_text, u_text = args.pattern.split("/", 1)
            pattern = (int(s_text), parse_braid(u_text, args.n))
        else:
            if not soul:
                raise MalformedInputError("conjugate pattern needed for trivial-soul specs")
            s = soul[-1]
            u = small_positive_search(order, soul, BallSpec(args.n, 2))
            pattern = (s, u)
        report = converge_conjugates_experiment(
            spec, pattern, range(j_lo, j_hi + 1), ball, order.convention, args.depth_cap
        )
        if args.format == "json":
            sys.stdout.write(report.to_json_lines())
        elif args.format == "csv":
            _emit(args, [], report.to_csv_rows())
        else:
            _emit(
                args,
                [
                    {
                        "j": r.j,
                        "radius": r.radius,
                        "witness": "" if r.witness is None else str(r.witness),
                        "undecided": r.undecided_count,
                    }
                    for r in report.rows
                ],
            )
        return 2 if any(r.undecided_count for r in report.rows) else 0
    report = converge_extensions_experiment(
        spec, range(max(2, j_lo), j_hi + 1), ball, order.convention, args.depth_cap
    )
    if args.format == "json":
        sys.stdout.write(report.to_json_lines())
    elif args.format == "csv":
        _emit(args, [], report.to_csv_rows())
    else:
        _emit(
            args,
            [
                {
                    "M": r.M,
                    "radius": r.radius,
                    "witness": "" if r.witness is None else str(r.witness),
                    "undecided": r.undecided_count,
                }
                for r in report.rows
            ],
        )
    return 2 if any(r.undecided_count for r in report.rows) else 0


def cmd_probe(args) -> int:
    order = parse_order(args.order, args.n, args.depth_cap)
    if not isinstance(order, NTOrder):
        raise MalformedInputError("probe needs an nt:<...> order")
    spec = order.spec
    if args.kind == "totality":
        report = totality_probe(
            spec,
            BallSpec(args.n, args.ball_length),
            args.depth_target,
            order.convention,
            args.depth_cap,
        )
        _emit(
            args,
            [
                {
                    "command": "probe",
                    "kind": "totality",
                    "spec": spec.name,
                    "ties": [str(w) for w in report.tie_words],
                    "max_depth": report.max_depth,
                    "depth_target": report.depth_target,
                    "covered": report.covered,
                }
            ],
        )
        return 2 if (report.degenerate or not report.covered) else 0
    lo, hi = _parse_range(args.range)
    s_text, u_text = (args.pattern or "3/4").split("/", 1)
    report = limit_probe_experiment(
        spec,
        (int(s_text), int(u_text)),
        range(lo, hi + 1),
        BallSpec(args.n, args.ball_length),
        order.convention,
        depth_cap=args.depth_cap,
    )
    if args.format == "json":
        sys.stdout.write(report.to_json_lines())
    else:
        _emit(
            args,
            [
                {
                    "probe": str(r.probe),
                    "base_sign": r.base_sign,
                    "signs": "".join("+" if s > 0 else ("-" if s < 0 else "0") for s in r.signs),
                    "stabilized": r.stabilized,
                    "differs": r.differs,
                }
                for r in report.rows
            ],
        )
    inconclusive = report.window_too_short or not any(r.stabilized for r in report.rows)
    return 2 if inconclusive else 0


def cmd_catalog(args) -> int:
    specs = catalog()
    if args.name:
        if args.name not in specs:
            raise MalformedInputError(f"unknown catalog entry {args.name!r}")
        sys.stdout.write(format_geodesic_spec(specs[args.name]))
        return 0
    records = [
        {
            "name": spec.name,
            "n": spec.n,
            "type": spec.type_tag,
            "depths": list(spec.separating_depths),
            "soul": sorted(spec.soul_generators),
        }
        for _, spec in sorted(specs.items())
    ]
    _emit(args, records)
    return 0


def cmd_calibrate(args) -> int:
    result = calibrate_conventions(args.n, args.ball_length)
    conv = result.convention
    _emit(
        args,
        [
            {
                "command": "calibrate",
                "word": str(result.word),
                "germ_order_reversed": conv.germ_order_reversed,
                "artin_mirrored": conv.artin_mirrored,
                "angle_flipped": conv.angle_flipped,
                "matches": len(result.matches),
            }
        ],
    )
    return 0


def _parse_range(text: str) -> tuple[int, int]:
    if ":" not in text:
        raise MalformedInputError(f"range must look like lo:hi, got {text!r}")
    lo_text, hi_text = text.split(":", 1)
    try:
        lo, hi = int(lo_text), int(hi_text)
    except ValueError:
        raise MalformedInputError(f"range bounds must be integers, got {text!r}") from None
    if hi < lo:
        raise MalformedInputError(f"empty range {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidorders",
        description="Exact sign oracles and experiments for braid group orderings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, order=True):
        p.add_argument("--n", type=int, required=True, help="strand count")
        if order:
            p.add_argument("--order", required=True, help="dehornoy | nt:<name-or-file> | conj:<order>:<braid> | ext:<order>:<soul-order>")
        p.add_argument("--depth-cap", type=int, default=_default_depth_cap())
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--seed", type=int, default=0, help="seed for sampled suites")
        p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("sign", help="sign of a braid under an order")
    common(p)
    p.add_argument("braid")
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("cmp", help="compare two braids under an order")
    common(p)
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_cmp)

    p = sub.add_parser("agree", help="agreement radius of two orders on a ball")
    common(p)
    p.add_argument("--other", required=True)
    p.add_argument("--ball-length", type=int, default=4)
    p.set_defaults(func=cmd_agree)

    p = sub.add_parser("conrad", help="search a Conradian-failure witness")
    common(p)
    p.add_argument("--k-max", type=int, default=20)
    p.add_argument("--ball-length", type=int, default=3)
    p.set_defaults(func=cmd_conrad)

    p = sub.add_parser("soul", help="soul generators of a catalog order")
    common(p)
    p.add_argument("--validate", action="store_true")
    p.set_defaults(func=cmd_soul)

    p = sub.add_parser("chain", help="convex chain report")
    common(p)
    p.add_argument("--ball-length", type=int, default=3)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("approx", help="convergence experiments")
    p.add_argument("kind", choices=("conjugates", "extensions"))
    common(p)
    p.add_argument("--range", default="1:8", help="lo:hi for j or M")
    p.add_argument("--ball-length", type=int, default=4)
    p.add_argument("--pattern", default=None, help="conjugator pattern s/<braid word>")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("probe", help="totality probe or limit probe")
    p.add_argument("--kind", choices=("totality", "limit"), default="totality")
    common(p)
    p.add_argument("--ball-length", type=int, default=4)
    p.add_argument("--depth-target", type=int, default=20)
    p.add_argument("--range", default="1:12", help="lo:hi for N (limit probe)")
    p.add_argument("--pattern", default=None, help="limit conjugator s/u (generator indices)")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("catalog", help="list catalog entries or dump one")
    p.add_argument("--name", default=None)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("calibrate", help="re-run the convention calibration")
    common(p, order=False)
    p.add_argument("--ball-length", type=int, default=4)
    p.set_defaults(func=cmd_calibrate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # keep --help at 0, but usage errors are malformed input, not
        # the reserved "mathematically inconclusive" code
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except (
        MalformedInputError,
        CalibrationError,
        SoulValidationError,
        SearchFailureError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (UndecidedComparisonError, StreamGrowthError, BudgetExceededError) as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
