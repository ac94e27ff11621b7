"""Command-line front end.

Every subcommand prints a small table by default and schema-stable JSON with
``--json``.  Exit status: 0 success, 1 bad input, 2 missing data, 3
arithmetic obstruction, 4 insufficient precision.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from . import __version__
from .akashi import (GradedCharList, LocalFactorRule, akashi_compose, akashi_selmer_formula,
                     local_factor)
from .errors import InvalidInput, IwasawaError, MissingData
from .io import dumps, module_from_dict, parse_series
from .modules import (CorankSequence, Semisimple, char_element, coinvariant_rank, deduce_structure,
                      module_mu_lambda)
from .padic import check_prime
from .scenario import (HYPOTHESES, Determined, amenable_pair, analytic_lower_bound_false_tate,
                       bsd_inequality_check, darmon_tian_order, euler_leading_valuation, load_scenario,
                       m_p_count, s_via_corank_difference, uncond_orders, vanishing_order_regular)
from .series import (Indeterminate, SeriesPrecision, is_unit, leading_value, ord_at_zero,
                     weierstrass_prepare)

DEFAULT_PRECISION = (16, 256)


def default_precision() -> tuple[int, int]:
    raw = os.environ.get("IWA_DEFAULT_PRECISION")
    if not raw:
        return DEFAULT_PRECISION
    try:
        n, m = (int(x) for x in raw.split(","))
    except ValueError:
        raise InvalidInput(f"IWA_DEFAULT_PRECISION must look like 'N,M', got {raw!r}") from None
    return n, m


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(InvalidInput.exit_code, f"{self.prog}: error: {message}\n")


def _series_json(f) -> dict:
    d = f.to_json()
    return {"coeffs": d["coeffs"], "text": str(f)}


def _precision(args, p: int | None = None) -> SeriesPrecision:
    p = args.prime if p is None else p
    if p is None:
        raise InvalidInput("--prime is required")
    n_default, m_default = default_precision()
    n = args.coeff_precision if args.coeff_precision is not None else n_default
    m = args.degree_cap if args.degree_cap is not None else m_default
    return SeriesPrecision(p, n, m)


def _scenario_prime(args, scn) -> None:
    if args.prime is not None and args.prime != scn.p:
        raise InvalidInput(f"--prime {args.prime} disagrees with the scenario prime {scn.p}")


def _load_table(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise MissingData(f"file {path} not found") from None
    except tomllib.TOMLDecodeError as exc:
        raise InvalidInput(f"{path}: {exc}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InvalidInput(f"expected comma-separated integers, got {text!r}") from None


# --- commands ---------------------------------------------------------------


def cmd_prep(args) -> dict:
    prec = _precision(args)
    f = parse_series(args.series, prec)
    w = weierstrass_prepare(f)
    return {
        "mu": w.mu,
        "lambda": w.lam,
        "distinguished": _series_json(w.distinguished),
        "unit": _series_json(w.unit),
        "certified_precision": w.certified_precision,
        "tail_stable_precision": w.tail_stable_precision,
    }


def cmd_invariants(args) -> dict:
    prec = _precision(args)
    f = parse_series(args.series, prec)
    r = ord_at_zero(f)
    out = {"is_unit": is_unit(f), "certified_precision": prec.coeff_precision}
    if isinstance(r, Indeterminate):
        out["ord_at_zero"] = f">= {r.bound}"
    else:
        out["ord_at_zero"] = r
        out["leading_value"] = leading_value(f).to_json()
        out["leading_value_note"] = "defined modulo units of Zp"
        w = weierstrass_prepare(f)
        out["mu"], out["lambda"] = w.mu, w.lam
    return out


def _module(args):
    data = _load_table(args.module)
    p = int(data.get("p", args.prime or 0)) or None
    if args.prime is not None and p != args.prime:
        raise InvalidInput(f"--prime {args.prime} disagrees with the module file prime {p}")
    return module_from_dict(data, _precision(args, p))


def cmd_charel(args) -> dict:
    mod = _module(args)
    mu, lam = module_mu_lambda(mod)
    ch = char_element(mod)
    return {"char_element": _series_json(ch), "mu": mu, "lambda": lam,
            "certified_precision": mod.precision.coeff_precision}


def cmd_coinvariants(args) -> dict:
    mod = _module(args)
    return {"levels": list(range(args.levels + 1)),
            "ranks": [coinvariant_rank(mod, n) for n in range(args.levels + 1)]}


def cmd_deduce_structure(args) -> dict:
    p = check_prime(args.prime)
    seq = CorankSequence(p, tuple(_int_list(args.ranks)))
    ded = deduce_structure(p, seq, args.lam)
    out = {
        "p": p,
        "multiplicities": list(ded.multiplicities),
        "factors": ded.factor_labels(),
        "residual_lambda": ded.residual_lambda,
        "criterion": ({"verdict": "semisimple", "witness": ded.verdict.witness}
                      if isinstance(ded.verdict, Semisimple) else {"verdict": "inconclusive"}),
    }
    prec = _precision(args, p)
    levels = [n for n in range(len(seq.ranks) + 1) if p ** n < prec.degree_cap]
    mod = ded.to_module(prec)
    out["coinvariant_ranks"] = [coinvariant_rank(mod, n) for n in levels]
    return out


def cmd_akashi(args) -> dict:
    prec = _precision(args)
    try:
        raw = json.loads(args.chars)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"--chars is not valid JSON: {exc}") from None
    if not isinstance(raw, list):
        raise InvalidInput("--chars must be a JSON list")
    entries = []
    for item in raw:
        series = item.get("coeffs", item.get("series"))
        if series is None:
            raise InvalidInput("each --chars entry needs 'deg' and 'coeffs' (or 'series')")
        entries.append((int(item["deg"]), parse_series(series, prec)))
    return akashi_compose(GradedCharList(tuple(entries), prec)).to_json()


def cmd_akashi_selmer(args) -> dict:
    prec = _precision(args)
    ch = parse_series(args.ch_cyc, prec)
    rules = [LocalFactorRule.parse(x) for x in args.locals.split(",") if x.strip()] if args.locals else []
    value = akashi_selmer_formula(ch, rules, prec)
    out = value.to_json()
    out["local_ord"] = {r.value: local_factor(r, prec)[1] for r in rules}
    return out


def cmd_vanishing(args) -> dict:
    scn = load_scenario(args.scenario)
    _scenario_prime(args, scn)
    if args.all_levels:
        levels = list(scn.corank)
    elif args.level:
        levels = [args.level]
    else:
        raise InvalidInput("give --level or --all-levels")
    results = {}
    for level in levels:
        results[level] = {"corank": scn.corank_at(level), "m_p": m_p_count(scn, level),
                          "ord": vanishing_order_regular(scn, level)}
        if level in scn.analytic:
            results[level]["analytic_order"] = scn.analytic[level]
            results[level]["bsd_inequality"] = bsd_inequality_check(results[level]["ord"],
                                                                    scn.analytic[level])
    return {"curve": scn.curve, "p": scn.p, "levels": results, "hypotheses": HYPOTHESES["vanishing"]}


def cmd_false_tate(args) -> dict:
    n = args.n
    corank_l, corank_lp, analytic, mp = args.corank_L, args.corank_Lprime, None, 0
    m = args.m
    if args.scenario:
        scn = load_scenario(args.scenario)
        _scenario_prime(args, scn)
        p = scn.p
        corank_l = scn.corank.get(f"F{n}", corank_l)
        corank_lp = scn.corank.get(f"F{n}'", corank_lp)
        analytic = scn.analytic.get(f"F{n}")
        if scn.reduction is not None:
            mp = m_p_count(scn, f"F{n}")
        if scn.tower is not None:
            m = scn.tower.m
    else:
        p = check_prime(args.prime) if args.prime is not None else None
        if p is None:
            raise InvalidInput("--prime or --scenario is required")
    out = {
        "p": p,
        "n": n,
        "analytic_lower_bound": analytic_lower_bound_false_tate(p, n),
        "uncond_order": {"a": uncond_orders("a", p, n), "b": uncond_orders("b", p, n)},
        "hypotheses": HYPOTHESES["false_tate"],
    }
    if m is not None:
        out["m"] = m
        out["amenable"] = amenable_pair(p, m)
    if corank_l is None:
        raise MissingData(f"no corank for F{n}")
    out["corank_L"] = corank_l
    if corank_lp is not None:
        out["corank_Lprime"] = corank_lp
        out["s"] = s_via_corank_difference(p, n, corank_l, corank_lp)
    lower = corank_lp if corank_lp is not None else p ** (n - 1) - 1
    squeeze = darmon_tian_order(p, n, corank_l, lower, args.odd)
    out["squeeze"] = ({"determined": squeeze.value} if isinstance(squeeze, Determined)
                      else {"candidates": list(squeeze.candidates)})
    out["squeeze_lower_bound"] = lower
    out["squeeze_parity_odd"] = args.odd
    if analytic is not None:
        out["analytic_order"] = analytic
        out["ord_alg"] = corank_l + mp
        out["bsd_inequality"] = bsd_inequality_check(corank_l + mp, analytic)
    return out


def cmd_euler(args) -> dict:
    scn = load_scenario(args.scenario)
    _scenario_prime(args, scn)
    if scn.euler is None:
        raise MissingData("scenario has no [euler] table")
    return {"p": scn.p, "curve": scn.curve, "valuation": euler_leading_valuation(scn.euler, scn.p),
            "convention": HYPOTHESES["l_value_convention"], "hypotheses": HYPOTHESES["euler"]}


def cmd_amenable(args) -> dict:
    p = check_prime(args.prime)
    return {"p": p, "m": args.m, "amenable": amenable_pair(p, args.m)}


def cmd_check_bsd(args) -> dict:
    if args.scenario:
        scn = load_scenario(args.scenario)
        _scenario_prime(args, scn)
        if not args.level:
            raise InvalidInput("--level is required with --scenario")
        ord_alg = vanishing_order_regular(scn, args.level)
        if args.level not in scn.analytic:
            raise MissingData(f"no analytic order for level {args.level!r}")
        ord_an = scn.analytic[args.level]
    else:
        if args.ord_alg is None or args.ord_analytic is None:
            raise InvalidInput("give --ord-alg and --ord-analytic, or --scenario and --level")
        ord_alg, ord_an = args.ord_alg, args.ord_analytic
    return {"ord_alg": ord_alg, "ord_analytic": ord_an, "holds": bsd_inequality_check(ord_alg, ord_an)}


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", "-p", type=int)
    common.add_argument("--coeff-precision", type=int)
    common.add_argument("--degree-cap", type=int)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = _Parser(prog="iwachar", description="Finite-precision Iwasawa algebra toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=fn)
        return sp

    sp = add("prep", cmd_prep, "Weierstrass preparation of a series")
    sp.add_argument("--series", required=True)
    sp = add("invariants", cmd_invariants, "mu, lambda, order and leading value")
    sp.add_argument("--series", required=True)
    sp = add("charel", cmd_charel, "characteristic element of an elementary module")
    sp.add_argument("--module", required=True, help="TOML file with p_part / poly_part")
    sp = add("coinvariants", cmd_coinvariants, "coinvariant ranks of an elementary module")
    sp.add_argument("--module", required=True)
    sp.add_argument("--levels", type=int, default=2, help="largest level n")
    sp = add("deduce-structure", cmd_deduce_structure, "cyclotomic structure from a corank sequence")
    sp.add_argument("--ranks", required=True)
    sp.add_argument("--lambda", dest="lam", type=int, required=True)
    sp = add("akashi", cmd_akashi, "alternating product of graded characteristic elements")
    sp.add_argument("--chars", required=True, help='JSON list of {"deg": i, "coeffs": [...]}')
    sp = add("akashi-selmer", cmd_akashi_selmer, "Akashi series of a dual Selmer group")
    sp.add_argument("--ch-cyc", required=True)
    sp.add_argument("--locals", default="", help="comma-separated: "
                    + ",".join(r.value for r in LocalFactorRule))
    sp = add("vanishing", cmd_vanishing, "order of vanishing at the regular representation")
    sp.add_argument("--scenario", required=True)
    sp.add_argument("--level")
    sp.add_argument("--all-levels", action="store_true")
    sp = add("false-tate", cmd_false_tate, "false-Tate tower bookkeeping at level n")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--scenario")
    sp.add_argument("--corank-L", dest="corank_L", type=int)
    sp.add_argument("--corank-Lprime", dest="corank_Lprime", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--odd", action="store_true", help="the order is known to be odd")
    sp = add("euler", cmd_euler, "valuation of the leading coefficient")
    sp.add_argument("--scenario", required=True)
    sp = add("amenable", cmd_amenable, "amenability of the pair (p, m)")
    sp.add_argument("--m", type=int, required=True)
    sp = add("check-bsd", cmd_check_bsd, "algebraic order <= analytic order")
    sp.add_argument("--ord-alg", type=int)
    sp.add_argument("--ord-analytic", type=int)
    sp.add_argument("--scenario")
    sp.add_argument("--level")
    return parser


def _table(obj, indent=0) -> list[str]:
    lines = []
    pad = "  " * indent
    for key, value in obj.items():
        if isinstance(value, dict) and "text" in value:
            lines.append(f"{pad}{key}: {value['text']}")
        elif isinstance(value, dict) and "residue" in value:
            lines.append(f"{pad}{key}: {value['residue']} + O({value['p']}^{value['precision']})")
        elif isinstance(value, dict) and value:
            lines.append(f"{pad}{key}:")
            lines.extend(_table(value, indent + 1))
        elif key == "hypotheses":
            lines.append(f"{pad}{key}:")
            lines.extend(f"{pad}  - {v}" for v in value)
        else:
            lines.append(f"{pad}{key}: {value}")
    return lines


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.coeff_precision is not None and args.coeff_precision < 1:
            raise InvalidInput("--coeff-precision must be >= 1")
        if args.degree_cap is not None and args.degree_cap < 1:
            raise InvalidInput("--degree-cap must be >= 1")
        result = args.func(args)
    except IwasawaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    if args.json:
        sys.stdout.write(dumps(result))
    else:
        print("\n".join(_table(result)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
