"""
Command-line front end for the cellular integral workbench.

Every subcommand prints human-readable text, or JSON with --json. Exit codes:
0 success, 1 usage error, 2 violated precondition, 3 fit refused for lack of
precision.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from cellular.config import get_config, update_config
from cellular.configurations import (
    ConfigClass,
    DihedralStructure,
    Perm,
    config_record,
    convergence_witness,
    dump_configs,
    enumerate_convergent,
    is_convergent,
    product,
)
from cellular.configurations import dual as dual_config
from cellular.evaluator import BigFloat, EvalResult, eval_basic, eval_general, eval_montecarlo
from cellular.evaluator.precision import bits_for_digits
from cellular.forms import (
    HomogeneityError,
    ParamSet,
    build_basic,
    build_general,
    homogeneity_system,
    is_convergent_params,
    sample_region_point,
    solve_homogeneity,
    to_cubical,
)
from cellular.logger import get_logger, set_log_level, setup_logging
from cellular.recurrences import (
    NAMED_FAMILIES,
    LinearFormSpec,
    PolyRecurrence,
    RationalSequence,
    diagnostics,
    discover,
    extend,
    hadamard,
    is_self_dual,
)
from cellular.recurrences import dual as dual_recurrence
from cellular.recurrences.models import format_rational
from cellular.relations import ConstantBasis, PrecisionError, fit_relation, minimum_digits, vanishing_report
from cellular.tables import (
    NAMED_CONFIGS,
    PRODUCT_EXAMPLE,
    VANISHING_COLUMNS,
    name_of,
    reference_row,
    resolve_config,
)

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_REFUSED = 3

_DIGITS = re.compile(r"\d")


def _emit(text: str = "") -> None:
    print(text, flush=True)


def _emit_json(data: Any) -> None:
    _emit(json.dumps(data, indent=2, ensure_ascii=False))


# ============================================================================
# ARGUMENT HELPERS
# ============================================================================


def _int_list(text: str) -> List[int]:
    return [int(p) for p in text.replace(",", " ").split() if p]


def _params(sigma: Perm, a_text: Optional[str], b: Optional[int]) -> Optional[ParamSet]:
    """a_1..a_n (or a_1..a_{n-1} for even n, completed on H_sigma) and the free b."""
    if a_text is None:
        return None
    a = _int_list(a_text)
    system = homogeneity_system(sigma.values, None)
    if sigma.n % 2 == 0 and len(a) == sigma.n - 1:
        a = system.complete_a(a + [None])
    return solve_homogeneity(sigma, a, b)


def _config_arg(text: str) -> ConfigClass:
    return resolve_config(text)


def _perm_arg(text: str) -> Perm:
    """The printed representative when a name is given, so parameter edges match it."""
    if text in NAMED_CONFIGS:
        return Perm(NAMED_CONFIGS[text])
    return Perm.parse(text)


def _significant_digits(text: str) -> int:
    mantissa = text.strip().lower().split("e")[0].lstrip("+-").lstrip("0.")
    return max(len(_DIGITS.findall(mantissa)), 1)


def _value_from_text(text: str) -> BigFloat:
    """A decimal string at the precision its significant digits carry."""
    return BigFloat.of(text.strip(), bits_for_digits(_significant_digits(text)))


# ============================================================================
# CONFIGURATIONS
# ============================================================================


def cmd_enumerate(args: argparse.Namespace) -> int:
    classes = enumerate_convergent(args.n, workers=args.threads)
    if args.json:
        _emit(dump_configs(classes, "json"))
    else:
        sys.stdout.write(dump_configs(classes, "text"))
        sys.stdout.flush()
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    c = _config_arg(args.sigma)
    record = config_record(c)
    record["convergent"] = is_convergent(c.rep)
    record["name"] = name_of(c)
    if args.json:
        _emit_json(record)
    else:
        _emit(f"class: {c.rep}")
        _emit(f"dual: {','.join(str(v) for v in record['dual_rep'])}")
        _emit(f"self-dual: {str(record['self_dual']).lower()}")
        _emit(f"convergent: {str(record['convergent']).lower()}")
        if record["name"]:
            _emit(f"name: {record['name']}")
    return EXIT_OK


def cmd_dual(args: argparse.Namespace) -> int:
    c = _config_arg(args.sigma)
    d = dual_config(c)
    if args.json:
        _emit_json({"rep": list(c.rep.values), "dual_rep": list(d.rep.values), "self_dual": c == d})
    else:
        _emit(str(d.rep))
    return EXIT_OK


def cmd_convergent(args: argparse.Namespace) -> int:
    sigma = _perm_arg(args.sigma)
    witness = convergence_witness(sigma)
    if args.json:
        _emit_json({"sigma": list(sigma.values), "convergent": witness is None,
                    "witness": witness.to_dict() if witness else None})
    elif witness is None:
        _emit("true")
    else:
        block = ",".join(str(v) for v in sorted(witness.block))
        _emit(f"false (witness block {{{block}}})")
    return EXIT_OK


def cmd_product(args: argparse.Namespace) -> int:
    if args.first:
        s1, s2 = Perm.parse(args.first), Perm.parse(args.second)
        pair1 = (DihedralStructure.standard(s1.n), DihedralStructure.of_perm(s1))
        pair2 = (DihedralStructure.standard(s2.n), DihedralStructure.of_perm(s2))
        t1, t2 = _int_list(args.t1), _int_list(args.t2)
    else:
        pair1 = tuple(DihedralStructure(w) for w in PRODUCT_EXAMPLE["pair1"])
        pair2 = tuple(DihedralStructure(w) for w in PRODUCT_EXAMPLE["pair2"])
        t1, t2 = PRODUCT_EXAMPLE["t1"], PRODUCT_EXAMPLE["t2"]
    result = product(pair1, pair2, t1, t2)
    c = result.config()
    if args.json:
        _emit_json({"sigma": list(result.sigma.values), "class": list(c.rep.values),
                    "name": name_of(c), "convergent": is_convergent(c.rep)})
    else:
        _emit(f"sigma: {result.sigma}")
        _emit(f"class: {c.rep}" + (f" ({name_of(c)})" if name_of(c) else ""))
        _emit(f"convergent: {str(is_convergent(c.rep)).lower()}")
    return EXIT_OK


# ============================================================================
# FORMS
# ============================================================================


def cmd_integrand(args: argparse.Namespace) -> int:
    sigma = _perm_arg(args.sigma)
    if sigma.n != args.n:
        raise HomogeneityError(f"n={args.n} but the permutation has {sigma.n} values")
    params = _params(sigma, args.a, args.b)
    f, omega = build_general(sigma, params) if params else build_basic(sigma)
    if args.frame == "cubical":
        f, omega = to_cubical(f), to_cubical(omega)
    if args.json:
        _emit_json({"frame": args.frame, "f": f.to_dict(), "omega": omega.to_dict(),
                    "params": params.to_dict() if params else None})
    else:
        _emit(f"f = {f}")
        _emit(f"omega = {omega.coefficient} d^{omega.degree}")
    return EXIT_OK


def cmd_region_check(args: argparse.Namespace) -> int:
    sigma = _perm_arg(args.config)
    if args.a is not None:
        params = _params(sigma, args.a, args.b)
        ok, witness = is_convergent_params(sigma, params)
        if args.json:
            _emit_json({"params": params.to_dict(), "convergent": ok, "witness": witness.to_dict() if witness else None})
        else:
            _emit("true" if ok else f"false (diverges along {witness})")
        return EXIT_OK

    rng = np.random.default_rng(args.seed if args.seed is not None else get_config("DEFAULT_SEED"))
    failures = []
    for _ in range(args.count):
        params = sample_region_point(sigma, args.sample, rng)
        ok, witness = is_convergent_params(sigma, params)
        if not ok:
            failures.append({"params": params.to_dict(), "witness": str(witness)})
    if args.json:
        _emit_json({"sigma": list(sigma.values), "m": args.sample, "count": args.count, "failures": failures})
    else:
        _emit(f"{args.count - len(failures)}/{args.count} sampled points converge")
        for failure in failures:
            _emit(f"  diverges along {failure['witness']}: a={failure['params']['a']}")
    return EXIT_OK if not failures else EXIT_PRECONDITION


# ============================================================================
# RECURRENCES
# ============================================================================


def _load_recurrence_file(path: str) -> Dict[str, Any]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    recurrence = PolyRecurrence.from_dict(data.get("recurrence", data))
    inits = {key: data[key] for key in ("a_init", "b_init", "init") if key in data}
    if not inits:
        raise HomogeneityError(f"{path} gives no initial values (a_init, b_init or init)")
    return {"recurrence": recurrence, "inits": inits}


def cmd_recur(args: argparse.Namespace) -> int:
    M = args.terms - 1
    if args.source in NAMED_FAMILIES:
        family = NAMED_FAMILIES[args.source]()
        recurrence = family.recurrence
        sequences = {"a": family.a(M), "b": family.b(M)}
        spec: Optional[LinearFormSpec] = family.linear_form(M)
    else:
        loaded = _load_recurrence_file(args.source)
        recurrence = loaded["recurrence"]
        sequences = {key.replace("_init", ""): extend(recurrence, init, M) for key, init in loaded["inits"].items()}
        spec = None

    data: Dict[str, Any] = {
        "recurrence": recurrence.to_dict(),
        "self_dual": None,
        "sequences": {key: s.to_dict() for key, s in sequences.items()},
    }
    twist = is_self_dual(recurrence)
    data["self_dual"] = format_rational(twist) if twist is not None else None
    if args.dual:
        data["dual"] = dual_recurrence(recurrence).to_dict()
    report = None
    if args.diagnostics:
        if spec is None:
            raise HomogeneityError("Diagnostics need a named family (zeta2 or zeta3)")
        report = diagnostics(spec)
        data["diagnostics"] = report.to_dict()

    if args.json:
        _emit_json(data)
        return EXIT_OK
    _emit(f"recurrence: {recurrence}")
    _emit(f"self-dual: {data['self_dual'] or 'no'}")
    if args.dual:
        _emit(f"dual: {dual_recurrence(recurrence)}")
    for key, s in sequences.items():
        for n in range(s.n0, s.last_index + 1):
            _emit(f"{key}[{n}] = {format_rational(s[n])}")
    if report:
        for line in report.lines():
            _emit(line)
    return EXIT_OK


def cmd_discover(args: argparse.Namespace) -> int:
    if args.values:
        s = RationalSequence(Fraction(v) for v in args.values.replace(",", " ").split())
    elif args.file:
        s = RationalSequence.from_dict(json.loads(Path(args.file).read_text(encoding="utf-8")))
    else:
        names = args.family.split("*")
        terms = [NAMED_FAMILIES[name]().a(args.terms - 1) for name in names]
        s = terms[0]
        for other in terms[1:]:
            s = hadamard(s, other)
    found = discover(s, args.order, args.degree)
    if args.json:
        _emit_json({"terms": len(s), "recurrence": found.to_dict() if found else None})
    else:
        _emit(str(found) if found else "no recurrence found")
    return EXIT_OK


# ============================================================================
# EVALUATION AND RELATIONS
# ============================================================================


def _evaluate(args: argparse.Namespace, digits: int) -> EvalResult:
    if args.a is not None:
        sigma = _perm_arg(args.config)
        return eval_general(sigma, _params(sigma, args.a, args.b), digits)
    return eval_basic(_config_arg(args.config), args.N, digits)


def cmd_eval(args: argparse.Namespace) -> int:
    result = _evaluate(args, args.digits)
    if args.json:
        _emit_json(result.to_dict())
    else:
        _emit(result.value.to_decimal(args.digits))
    return EXIT_OK


def cmd_mc(args: argparse.Namespace) -> int:
    if args.a is not None:
        sigma = _perm_arg(args.config)
        target: Any = _params(sigma, args.a, args.b)
    else:
        sigma = _config_arg(args.config).rep
        target = args.N
    result = eval_montecarlo(sigma, target, args.samples, args.seed)
    if args.json:
        _emit_json(result.to_dict())
    else:
        _emit(f"{float(result.value):.12g} +- {float(result.error_estimate):.3g} ({result.samples} samples)")
    return EXIT_OK


def cmd_fit(args: argparse.Namespace) -> int:
    digits = args.digits
    if digits is None:
        digits = _significant_digits(args.value) if args.value is not None else get_config("DEFAULT_DIGITS", 30)
    basis = ConstantBasis.named(args.basis, digits)
    if args.value is not None:
        value: Any = _value_from_text(args.value)
    else:
        value = _evaluate(args, digits).value
    relation = fit_relation(value, basis, digits, args.method)
    if args.json:
        data: Dict[str, Any] = {"config": args.config, "N": args.N if args.config else None}
        data.update(relation.to_dict() if relation else {"basis": basis.names, "coeffs": None, "residual": None})
        data["accepted"] = relation is not None
        _emit_json(data)
    elif relation is None:
        _emit("no relation found")
    else:
        for name, q in zip(basis.names, relation.rationals()):
            _emit(f"{name}: {format_rational(q)}")
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    classes = enumerate_convergent(args.n, workers=args.threads)
    quadrature = args.quadrature or args.n <= 6
    columns = VANISHING_COLUMNS.get(args.n)
    rows: List[Dict[str, Any]] = []
    for c in classes:
        d = dual_config(c)
        entry: Dict[str, Any] = {
            "rep": list(c.rep.values),
            "dual_rep": list(d.rep.values),
            "self_dual": c == d,
        }
        entry.update(reference_row(c))
        if quadrature and columns:
            digits = max(args.digits, minimum_digits(len(columns)) + 10)
            basis = ConstantBasis.named(list(columns), digits)
            table = vanishing_report(c, range(args.max_N + 1), basis, digits)
            entry["integrals"] = [row.to_dict() for row in table]
            entry["lines"] = [row.line() for row in table]
        rows.append(entry)

    if args.json:
        for entry in rows:
            entry.pop("lines", None)
        _emit_json({"n": args.n, "count": len(rows), "classes": rows})
        return EXIT_OK
    _emit(f"n={args.n}: {len(rows)} convergent classes")
    for entry in rows:
        rep = ",".join(str(v) for v in entry["rep"])
        dual_rep = ",".join(str(v) for v in entry["dual_rep"])
        label = f" {entry['name']}" if entry["name"] else ""
        suffix = "self-dual" if entry["self_dual"] else f"dual {dual_rep}"
        _emit(f"[{rep}]{label}  {suffix}")
        if entry["pattern"] is not None:
            cells = " ".join("*" if nonzero else "0" for nonzero in entry["pattern"].values())
            _emit(f"    pattern [{cells}] over {','.join(entry['pattern'])}  I(0) = {entry['I0']}")
        if entry["tags"]:
            _emit(f"    {', '.join(entry['tags'])}")
        for line in entry.get("lines", []):
            _emit(f"    {line}")
    return EXIT_OK


# ============================================================================
# PARSER
# ============================================================================


def _add_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--a", help="a_1,...,a_n on the edges {i,i+1}; n-1 values complete on H_sigma for even n")
    parser.add_argument("--b", type=int, help="Free b parameter (even n)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit JSON instead of text")
    common.add_argument("--threads", type=int, default=None, help="Worker processes for enumeration")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")

    parser = argparse.ArgumentParser(prog="cellular", description="Cellular integrals on moduli spaces M_{0,n}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="List convergent configuration classes")
    p.add_argument("n", type=int)
    p.set_defaults(handler=cmd_enumerate)

    for name, handler, text in (
        ("classify", cmd_classify, "Canonical class, dual and convergence of a permutation"),
        ("dual", cmd_dual, "Dual class [sigma^-1]"),
        ("convergent", cmd_convergent, "Convergence with a witness block"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("sigma", help="Comma-separated permutation or a name such as 7pi1")
        p.set_defaults(handler=handler)

    p = sub.add_parser("product", parents=[common], help="Glue two configurations along triples")
    p.add_argument("--first", help="Permutation of the first pair (delta0, sigma.delta0)")
    p.add_argument("--second", help="Permutation of the second pair")
    p.add_argument("--t1", help="Triple in the first label set")
    p.add_argument("--t2", help="Triple in the second label set")
    p.set_defaults(handler=cmd_product)

    p = sub.add_parser("integrand", parents=[common], help="Exact f and omega")
    p.add_argument("n", type=int)
    p.add_argument("sigma")
    p.add_argument("--frame", choices=("simplicial", "cubical"), default="simplicial")
    _add_params(p)
    p.set_defaults(handler=cmd_integrand)

    p = sub.add_parser("region-check", parents=[common], help="Convergence of parameters")
    p.add_argument("config")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--a", help="a_1,...,a_n to check; n-1 values complete on H_sigma for even n")
    mode.add_argument("--sample", type=int, help="Sample points of C^n near m = SAMPLE")
    p.add_argument("--b", type=int, help="Free b parameter (even n)")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.set_defaults(handler=cmd_region_check)

    p = sub.add_parser("recur", parents=[common], help="Terms of a recurrence family")
    p.add_argument("source", help="zeta2, zeta3 or a JSON file")
    p.add_argument("--terms", type=int, default=10)
    p.add_argument("--diagnostics", action="store_true")
    p.add_argument("--dual", action="store_true")
    p.set_defaults(handler=cmd_recur)

    p = sub.add_parser("discover", parents=[common], help="Guess a recurrence from terms")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--values", help="Comma-separated terms u_0, u_1, ...")
    source.add_argument("--file", help="JSON list of terms")
    source.add_argument("--family", help="zeta2, zeta3 or a product such as zeta2*zeta3")
    p.add_argument("--terms", type=int, default=40)
    p.set_defaults(handler=cmd_discover)

    digits_default = get_config("DEFAULT_DIGITS", 30)
    for name, handler, text in (("eval", cmd_eval, "Quadrature value of I(N) or I(a, b)"),
                                ("mc", cmd_mc, "Monte Carlo estimate")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--config", required=True)
        p.add_argument("--N", type=int, default=0)
        _add_params(p)
        if name == "eval":
            p.add_argument("--digits", type=int, default=digits_default)
        else:
            p.add_argument("--samples", type=int, default=None)
            p.add_argument("--seed", type=int, default=None)
        p.set_defaults(handler=handler)

    p = sub.add_parser("fit", parents=[common], help="Rational coefficients over a constant basis")
    p.add_argument("--basis", required=True, help="For example 1,zeta2,zeta3")
    p.add_argument("--digits", type=int, default=None,
                   help="Working precision; defaults to the significant digits of --value, else DEFAULT_DIGITS")
    p.add_argument("--method", choices=("lll", "pslq"), default="lll")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--value")
    target.add_argument("--config")
    p.add_argument("--N", type=int, default=0)
    _add_params(p)
    p.set_defaults(handler=cmd_fit)

    p = sub.add_parser("report-appendix2", parents=[common], help="Classes of size n with their linear forms")
    p.add_argument("n", type=int)
    p.add_argument("--quadrature", action="store_true", help="Fit I(N) also for n > 6")
    p.add_argument("--max-N", dest="max_N", type=int, default=2)
    p.add_argument("--digits", type=int, default=60)
    p.set_defaults(handler=cmd_report)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    setup_logging()
    if args.log_level:
        set_log_level(args.log_level)
    if args.threads:
        update_config("DEFAULT_THREADS", args.threads)

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except PrecisionError as exc:
        logger.warning("Fit refused: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (ValueError, KeyError, OSError) as exc:
        logger.warning("%s failed: %s", args.command, exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
