"""Command-line front end.

Exit status: 0 on success, 1 when a verification or audit fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .auditor import ChainError, ChainRecord, ConstantsLedger, LedgerError, audit_chain, choose_M, eps_M, satisfies_q_inequalities, solve_min_q
from .exactnum import PerturbedRational
from .index import PunctureData, RelClassData, cz, ech_index, j0, j0_topological, rotation_spectrum, wind_relations
from .orbits import Catalog, OrbitSet, UnknownOrbit
from .partitions import signed_partition
from .score import InvalidRecord, UCurveRecord, check_record, score_report
from .verify import ALIASES, SUITES, run_suite


class InputError(Exception):
    pass


def _load_json(path: str) -> Any:
    text = sys.stdin.read() if path == "-" else _read(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_jsonl(path: str) -> list[Any]:
    out = []
    for n, line in enumerate(_read(path).splitlines(), 1):
        if not line.strip():
            continue
        try:
            out.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: malformed JSON at line {n} column {exc.colno}: {exc.msg}") from None
    return out


def _theta(text: str) -> PerturbedRational:
    try:
        return PerturbedRational.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _catalog(path: str) -> Catalog:
    return Catalog.from_json(_load_json(path))


def _record(path: str, catalog: Catalog, force: bool) -> UCurveRecord:
    return check_record(UCurveRecord.from_json(_load_json(path)), catalog, force)


def _jsonable(x: Any) -> Any:
    if isinstance(x, (Fraction, PerturbedRational)):
        return str(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _tsv_rows(x: Any) -> list[str]:
    if isinstance(x, list):
        return ["index\tvalue"] + [f"{i}\t{v}" for i, v in enumerate(x)]
    if isinstance(x, dict):
        rows = ["key\tvalue"]

        def walk(prefix: str, v: Any) -> None:
            if isinstance(v, dict):
                for k, w in v.items():
                    walk(f"{prefix}.{k}" if prefix else str(k), w)
            elif isinstance(v, list):
                rows.append(f"{prefix}\t{json.dumps(v, separators=(',', ':'))}")
            else:
                rows.append(f"{prefix}\t{v}")

        walk("", x)
        return rows
    return ["value", str(x)]


def _emit(args: argparse.Namespace, payload: Any, tsv: str | None = None) -> None:
    payload = _jsonable(payload)
    if args.format == "tsv":
        text = tsv if tsv is not None else "\n".join(_tsv_rows(payload)) + "\n"
    elif isinstance(payload, (list, int, str)):
        text = json.dumps(payload, separators=(",", ":")) + "\n"
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


# -- subcommands -------------------------------------------------------------


def cmd_partition(args) -> int:
    _emit(args, list(signed_partition(args.theta, args.m, args.sign)))
    return 0


def cmd_cz(args) -> int:
    _emit(args, cz(args.m * args.theta))
    return 0


def _rel(args) -> RelClassData:
    c1 = args.c1_eval or []
    pd = args.pd_gamma_eval or []
    return RelClassData(args.ctau, args.qtau, c1, pd)


def cmd_index(args) -> int:
    cat = _catalog(args.catalog)
    alpha, beta = OrbitSet.from_json(_load_json(args.alpha)), OrbitSet.from_json(_load_json(args.beta))
    _emit(args, ech_index(alpha, beta, _rel(args), cat))
    return 0


def cmd_j0(args) -> int:
    cat = _catalog(args.catalog)
    if args.record:
        rec = _record(args.record, cat, args.force)
        _emit(args, {"J0": j0(rec.alpha, rec.beta, rec.rel, cat), "J0_topological": j0_topological(rec)})
        return 0
    if not (args.alpha and args.beta):
        raise InputError("j0 needs --record or both --alpha and --beta")
    alpha, beta = OrbitSet.from_json(_load_json(args.alpha)), OrbitSet.from_json(_load_json(args.beta))
    _emit(args, j0(alpha, beta, _rel(args), cat))
    return 0


def cmd_score(args) -> int:
    cat = _catalog(args.catalog)
    rec = _record(args.record, cat, args.force)
    _emit(args, score_report(rec, cat, args.M if args.M is not None else choose_M(cat)))
    return 0


def _puncture(d: dict) -> PunctureData:
    try:
        spec = rotation_spectrum(PerturbedRational.parse(str(d["rotation"]))) if "rotation" in d else None
        return PunctureData(str(d.get("orbit", "")), str(d["sign"]), int(d.get("cover", 1)), int(d["winding"]), d.get("cz"), spec)
    except KeyError as exc:
        raise InputError(f"puncture missing field {exc}") from None


def cmd_fredholm(args) -> int:
    data = _load_json(args.punctures)
    if isinstance(data, dict):
        genus, items = int(data.get("genus", args.genus)), data.get("punctures", [])
    else:
        genus, items = args.genus, data
    w = wind_relations(genus, [_puncture(d) for d in items], args.delta)
    _emit(
        args,
        {
            "ind_delta": w.ind_delta,
            "wind_inf": w.wind_inf,
            "wind_pi": w.wind_pi,
            "gamma_odd": w.gamma_odd_count,
            "inequality_holds": w.ineq_holds,
            "wind_pi_nonnegative": w.valid,
        },
    )
    return 0


def cmd_constants(args) -> int:
    if args.what == "solve-q":
        if min(args.delta1, args.delta2, args.ell, args.eps_prime) <= 0 or args.p0 < 1:
            raise InputError("constants must be positive")
        q = solve_min_q(args.delta1, args.delta2, args.ell, args.eps_prime, args.p0)
        at = satisfies_q_inequalities(q, args.delta1, args.delta2, args.ell, args.eps_prime, args.p0, 256)
        below = satisfies_q_inequalities(q - 1, args.delta1, args.delta2, args.ell, args.eps_prime, args.p0, 256)
        _emit(args, {"q": str(q), "inequalities_at_q": at, "inequalities_at_q_minus_1": below})
        return 0
    if not args.catalog:
        raise InputError(f"constants {args.what} needs --catalog")
    cat = _catalog(args.catalog)
    if args.what == "choose-m":
        _emit(args, choose_M(cat, args.B0))
        return 0
    if args.M is None or args.cap is None:
        raise InputError("constants eps-m needs --M and --cap")
    _emit(args, str(eps_M(cat, args.M, args.cap)))
    return 0


def cmd_audit(args) -> int:
    cat = _catalog(args.catalog)
    ledger = ConstantsLedger.from_json(_load_json(args.ledger))
    steps = tuple(UCurveRecord.from_json(d) for d in _load_jsonl(args.chain))
    ctaus = tuple(args.ctau_sets) if args.ctau_sets else None
    report = audit_chain(ChainRecord(steps, ledger, ctaus), cat, validate=not args.force)
    _emit(args, report.to_json(), report.tsv())
    return 0 if report.passed else 1


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    kw = {k: v for k, v in (("max_m", args.max_m), ("max_den", args.max_den), ("seed", args.seed)) if v is not None}
    results = [run_suite(n, **kw) for n in names]
    payload = [r.to_json() for r in results]
    for p in payload:
        p.pop("seconds")  # keep output byte-identical across runs
    tsv = "suite\tpassed\tchecked\tfailures\n" + "".join(f"{r.name}\t{r.passed}\t{r.checked}\t{r.n_failures}\n" for r in results)
    _emit(args, payload, tsv)
    return 0 if all(r.passed for r in results) else 1


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")

    p = argparse.ArgumentParser(prog="ech-kit", description="Exact ECH index and partition calculus.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help, parents=[common])
        sp.set_defaults(func=fn)
        return sp

    def rel_args(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--ctau", type=int, default=0)
        sp.add_argument("--qtau", type=int, default=0)
        sp.add_argument("--c1-eval", type=_ints)
        sp.add_argument("--pd-gamma-eval", type=_ints)

    sp = add("partition", cmd_partition, "positive or negative partition of m")
    sp.add_argument("--theta", type=_theta, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--sign", choices=("+", "-"), default="+")

    sp = add("cz", cmd_cz, "Conley-Zehnder index of the m-th iterate")
    sp.add_argument("--theta", type=_theta, required=True)
    sp.add_argument("--m", type=int, default=1)

    sp = add("index", cmd_index, "ECH index of a relative class")
    sp.add_argument("--catalog", required=True)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--beta", required=True)
    rel_args(sp)

    sp = add("j0", cmd_j0, "J0 index from class data or from a record")
    sp.add_argument("--catalog", required=True)
    sp.add_argument("--record")
    sp.add_argument("--alpha")
    sp.add_argument("--beta")
    sp.add_argument("--force", action="store_true", help="skip record validation")
    rel_args(sp)

    sp = add("score", cmd_score, "scores of a record")
    sp.add_argument("--catalog", required=True)
    sp.add_argument("--record", required=True)
    sp.add_argument("--M", type=int)
    sp.add_argument("--force", action="store_true", help="skip record validation")

    sp = add("fredholm", cmd_fredholm, "weighted Fredholm index and winding relations")
    sp.add_argument("--punctures", required=True, help="JSON list of punctures or {genus, punctures}")
    sp.add_argument("--genus", type=int, default=0)
    sp.add_argument("--delta", type=_rational, default=Fraction(1, 1000))

    sp = add("constants", cmd_constants, "constants ledger helpers")
    sp.add_argument("what", choices=("solve-q", "eps-m", "choose-m"))
    for name in ("delta1", "delta2", "ell", "eps-prime"):
        sp.add_argument(f"--{name}", type=_rational, default=Fraction(1))
    sp.add_argument("--p0", type=int, default=1)
    sp.add_argument("--catalog")
    sp.add_argument("--M", type=int)
    sp.add_argument("--B0", type=int)
    sp.add_argument("--cap", type=_rational)

    sp = add("audit", cmd_audit, "audit a chain of records")
    sp.add_argument("--catalog", required=True)
    sp.add_argument("--chain", required=True, help="JSON lines, one record per step")
    sp.add_argument("--ledger", required=True)
    sp.add_argument("--ctau-sets", type=_ints)
    sp.add_argument("--force", action="store_true", help="skip record validation")

    sp = add("verify", cmd_verify, "run verification suites")
    sp.add_argument("--suite", choices=["all", *SUITES, *ALIASES], default="all")
    sp.add_argument("--max-m", type=int)
    sp.add_argument("--max-den", type=int)
    sp.add_argument("--seed", type=int)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except InvalidRecord as exc:
        print(f"error: invalid record: {exc.invariant}", file=sys.stderr)
    except UnknownOrbit as exc:
        print(f"error: unknown orbit {exc.args[0]!r}", file=sys.stderr)
    except (InputError, ValueError, LedgerError, ChainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
