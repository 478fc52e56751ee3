"""Command-line front end.

Exit codes: 0 when everything is consistent, 1 on bad input, 2 when a
computed identity fails.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import catalog, enumeration, formats
from .enriques import AnalysisReport, analyze, validate_triple
from .errors import InconsistencyError, InputError
from .involutions import (
    characteristic_class_v,
    fixed_set_topology,
    involution_invariants,
)

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2


def exact(x):
    """JSON-safe exact value: ints stay ints, other rationals become 'p/q'."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (tuple, list)):
        return [exact(y) for y in x]
    if isinstance(x, dict):
        return {str(k): exact(v) for k, v in x.items()}
    return x


def topology_data(t) -> dict:
    return {
        "kind": t.kind.value,
        "genus": t.genus,
        "spheres": t.spheres,
        "components": t.components,
        "euler_characteristic": t.euler_characteristic(),
        "description": t.describe(),
    }


def report_data(r: AnalysisReport, source: str | None = None) -> dict:
    return exact({
        "input": {"name": r.name, "file": source},
        "sigma": {"r": r.sigma[0], "a": r.sigma[1], "delta": r.sigma[2]},
        "tau_sigma": {"r": r.tau_sigma[0], "a": r.tau_sigma[1], "delta": r.tau_sigma[2]},
        "theta": {"r": r.theta[0], "a": r.theta[1], "delta": r.theta[2], "in_list": r.theta_in_list},
        "topology": {"sigma": topology_data(r.topology_sigma), "tau_sigma": topology_data(r.topology_tau_sigma)},
        "glue": {
            "h_plus": r.h_plus,
            "h_minus": r.h_minus,
            "gamma_pm": r.gamma_pm,
            "c": r.c,
            "gamma": r.gamma,
            "alpha": r.alpha,
            "delta_plus": r.delta_plus,
            "delta_minus": r.delta_minus,
            "delta_pm": r.delta_pm,
            "v_q_sigma": list(r.v_q_sigma),
        },
        "components": {"s_sigma": r.s_sigma, "s_tau_sigma": r.s_tau_sigma, "sum": r.s_total},
        "f_class": {
            "coords": list(r.f_class.coords),
            "value": r.f_class.value,
            "other_values": list(r.f_class.other_values),
            "sigma_invariant": r.f_class.sigma_invariant,
        },
        "mod2_fixed_dims": {
            "tau_negated": r.mod2.tau_neg_direct,
            "tau_negated_formula": r.mod2.tau_neg_formula,
            "tau_fixed": r.mod2.tau_fixed_direct,
            "tau_fixed_formula": r.mod2.tau_fixed_formula,
        },
        "case": r.case,
        "beta_choices": list(r.beta_choices),
        "b": {str(k): v for k, v in r.b_values.items()},
        "s_nor_predicted": r.s_nor_predicted,
        "estimates": {
            str(beta): {
                "b": est.b,
                "empty_real_locus": est.empty_real_locus,
                "splits": [
                    {"s_nor": sn, "s_or": so, "s": s, "epsilon": list(eps), "br_dim": list(dims)}
                    for sn, so, s, eps, dims in est.splits
                ],
                "br_dims": list(est.br_dims),
            }
            for beta, est in r.estimates.items()
        },
        "checks": [c.as_dict() for c in r.checks],
        "consistent": r.consistent,
    })


def report_text(r: AnalysisReport) -> str:
    def inv(t):
        return f"(r,a,delta) = ({t[0]},{t[1]},{t[2]})"

    lines = [
        f"triple {r.name or '-'}",
        f"  sigma       {inv(r.sigma)}  fixed set {r.topology_sigma.describe()}",
        f"  tau*sigma   {inv(r.tau_sigma)}  fixed set {r.topology_tau_sigma.describe()}",
        f"  theta       {inv(r.theta)}  {'in list' if r.theta_in_list else 'NOT IN LIST'}",
        f"  glue        h+ = {r.h_plus}  h- = {r.h_minus}  gamma_pm = {r.gamma_pm}  c = {r.c}",
        f"  derived     alpha = {r.alpha}  delta_pm = {exact(r.delta_pm)}  gamma = {r.gamma}  case {r.case}",
        f"  components  s(sigma) = {r.s_sigma}  s(tau*sigma) = {r.s_tau_sigma}  sum = {r.s_total}",
        f"  mod 2       {r.mod2.tau_neg_direct} (formula {r.mod2.tau_neg_formula}),"
        f" {r.mod2.tau_fixed_direct} (formula {r.mod2.tau_fixed_formula})",
        f"  f class     value {r.f_class.value}, others {list(r.f_class.other_values)}",
        f"  s_nor pred  {r.s_nor_predicted if r.s_nor_predicted is not None else 'n/a'}",
    ]
    for beta, est in r.estimates.items():
        if est.empty_real_locus:
            lines.append(f"  beta = {beta}: b = {est.b}; empty real locus, no Brauer estimate")
            continue
        lines.append(f"  beta = {beta}: b = {est.b}")
        for sn, so, s, eps, dims in est.splits:
            lines.append(f"    s_nor = {sn}  s_or = {so}  s = {s}  epsilon in {list(eps)}  dim Br = {list(dims)}")
        if not est.splits:
            lines.append("    no admissible component split")
    failed = r.failed
    lines.append(f"  checks      {len(r.checks) - len(failed)}/{len(r.checks)} passed")
    for c in failed:
        lines.append(f"    FAILED {c.name}: {exact(c.lhs)} vs {exact(c.rhs)}")
    for c in r.advisory_failures:
        lines.append(f"    note   {c.name}: {exact(c.lhs)} vs {exact(c.rhs)} (not enforced)")
    lines.append(f"  verdict     {'consistent' if r.consistent else 'INCONSISTENT'}")
    return "\n".join(lines) + "\n"


# -- commands ------------------------------------------------------------------


def _emit(args, data, text):
    if args.format == "json":
        sys.stdout.write(formats.dumps(exact(data)))
    else:
        sys.stdout.write(text)


def cmd_lattice_info(args) -> int:
    lat = formats.parse_lattice(formats.read_text(args.file))
    p, m, z = lat.signature
    data = {
        "name": lat.name,
        "rank": lat.rank,
        "det": lat.det,
        "signature": [p, m, z],
        "even": lat.is_even,
        "unimodular": lat.is_unimodular,
    }
    if lat.is_nondegenerate:
        a = lat.discriminant
        data["discriminant"] = {
            "order": a.order,
            "divisors": list(a.divisors),
            "q_values": list(a.q_values()) if lat.is_even else None,
            "two_elementary": a.is_two_elementary(),
        }
    text = [
        f"lattice {lat.name}",
        f"  rank {lat.rank}  det {lat.det}  signature ({p},{m},{z})",
        f"  even {lat.is_even}  unimodular {lat.is_unimodular}",
    ]
    if "discriminant" in data:
        d = data["discriminant"]
        text.append(f"  discriminant group order {d['order']}  divisors {d['divisors']}")
        if d["q_values"] is not None:
            text.append(f"  q on generators {[exact(x) for x in d['q_values']]}")
    _emit(args, data, "\n".join(text) + "\n")
    return EXIT_OK


def cmd_involution_invariants(args) -> int:
    inv = formats.parse_involution(formats.read_text(args.file))
    plus, minus = inv.eigenlattices
    ii = involution_invariants(inv)
    data = {
        "name": inv.name,
        "lattice": inv.lattice.name,
        "r": ii.r,
        "a": ii.a,
        "delta": ii.delta,
        "ranks": [plus.rank, minus.rank],
        "fixed_hyperbolic": plus.rank > 0 and plus.lattice.is_hyperbolic(),
        "v": [int(x) for x in characteristic_class_v(inv)],
    }
    text = [
        f"involution {inv.name} on {inv.lattice.name}",
        f"  (r,a,delta) = ({ii.r},{ii.a},{ii.delta})  eigenlattice ranks {plus.rank} + {minus.rank}",
        f"  fixed lattice hyperbolic: {data['fixed_hyperbolic']}",
    ]
    if inv.lattice.rank == 22 and inv.lattice.signature == (3, 19, 0):
        top = fixed_set_topology(ii)
        data["topology"] = topology_data(top)
        text.append(f"  fixed set {top.describe()}  components {top.components}  euler {top.euler_characteristic()}")
    _emit(args, data, "\n".join(text) + "\n")
    return EXIT_OK


def cmd_analyze(args) -> int:
    reports, status = [], EXIT_OK
    for path in args.files:
        tf = formats.parse_triple(formats.read_text(path))
        t = validate_triple(tf.lattice, tf.tau, tf.sigma, tf.name)
        r = analyze(t)
        reports.append((path, r))
        if not r.consistent:
            status = EXIT_INCONSISTENT
    if args.format == "json":
        docs = [report_data(r, str(p)) for p, r in reports]
        sys.stdout.write(formats.dumps(docs[0] if len(docs) == 1 else docs))
    else:
        sys.stdout.write("".join(report_text(r) for _, r in reports))
    return status


def cmd_enumerate(args) -> int:
    config = enumeration.EnumerationConfig(
        positivity_rule=not args.no_positivity_rule,
        literal_delta_parity=args.literal_delta_parity,
        pairing_rank_bound=not args.no_pairing_rank_bound,
    )
    profiles = enumeration.enumerate_profiles(config)
    rep = enumeration.bound_report(profiles)
    if args.max_s or args.max_snor:
        data = {}
        if args.max_s:
            data["max_s"] = rep.max_s
        if args.max_snor:
            data["max_s_nor"] = rep.max_s_nor
        _emit(args, data, "".join(f"{v}\n" for v in data.values()))
        return EXIT_OK
    status = EXIT_OK if rep.ok else EXIT_INCONSISTENT
    if args.format == "json":
        data = {
            "header": enumeration.HEADER,
            "config": vars(config),
            "count": rep.count,
            "max_s": rep.max_s,
            "max_s_nor": rep.max_s_nor,
            "s_witnesses": [p.as_dict() for p in rep.s_witnesses],
            "s_nor_witnesses": [p.as_dict() for p in rep.s_nor_witnesses],
            "intermediate_bound_violations": len(rep.intermediate_violations),
            "s_nor_bound_violations": len(rep.s_nor_violations),
            "profiles": [list(p.as_dict().values()) for p in profiles],
            "fields": list(enumeration.FIELD_NAMES),
        }
        sys.stdout.write(formats.dumps(data))
        return status
    out = [f"# {enumeration.HEADER}", "# " + " ".join(enumeration.FIELD_NAMES)]
    out += [" ".join(str(v) for v in p.as_dict().values()) for p in profiles]
    out += [
        f"# profiles {rep.count}",
        f"# max s {rep.max_s} (witness theta {sorted({p.theta for p in rep.s_witnesses})})",
        f"# max s_nor {rep.max_s_nor} (witness theta {sorted({p.theta for p in rep.s_nor_witnesses})})",
        f"# intermediate bound violations {len(rep.intermediate_violations)}",
    ]
    sys.stdout.write("\n".join(out) + "\n")
    return status


def catalog_entries() -> dict:
    out = {}
    for key, lat in catalog.named_lattices().items():
        out[key] = ("lattice", lat)
    for key, fn in catalog.NAMED_INVOLUTIONS.items():
        out[key] = ("involution", fn)
    for key in catalog.NAMED_TRIPLES:
        out[f"triple:{key}"] = ("triple", key)
    return out


def cmd_catalog_list(args) -> int:
    entries = catalog_entries()
    data = {
        "lattices": [k for k, v in entries.items() if v[0] == "lattice"],
        "involutions": [k for k, v in entries.items() if v[0] == "involution"],
        "triples": [k for k, v in entries.items() if v[0] == "triple"],
        "block_e8_actions": list(catalog.E8_ACTION_NAMES),
        "block_u_actions": list(catalog.U_ACTIONS),
    }
    text = [f"{kind}: {' '.join(names)}" for kind, names in data.items()]
    text.append("block triples: triple:u1=<u>;u23=<diag|exchange>:<u>;e8=<diag|exchange>:<e8>")
    _emit(args, data, "\n".join(text) + "\n")
    return EXIT_OK


def fixture_filename(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9._+-]+", "_", name).strip("_") + ".txt"


def emit_fixture(name: str) -> str:
    entries = catalog_entries()
    if name in entries:
        kind, obj = entries[name]
        if kind == "lattice":
            return formats.format_lattice(obj, obj.name or name)
        if kind == "involution":
            inv = obj()
            return formats.format_lattice(inv.lattice) + "\n" + formats.format_involution(inv, name)
        tau, sigma = catalog.named_triple(obj)
        return formats.format_triple(obj, catalog.k3_lattice(), tau, sigma)
    if name.startswith("triple:"):
        key = name[len("triple:"):]
        try:
            tau, sigma = catalog.named_triple(key)
        except KeyError:
            raise InputError(f"unknown catalog entry '{name}'") from None
        return formats.format_triple(key, catalog.k3_lattice(), tau, sigma)
    raise InputError(f"unknown catalog entry '{name}'")


def cmd_catalog_emit(args) -> int:
    text = emit_fixture(args.name)
    out_dir = Path(args.dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / fixture_filename(args.name)
        path.write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write to {out_dir}: {exc.strerror}") from None
    _emit(args, {"written": str(path)}, f"{path}\n")
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="realenriques", parents=[fmt], description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="group", required=True)

    lat = sub.add_parser("lattice").add_subparsers(dest="cmd", required=True)
    info = lat.add_parser("info", parents=[fmt])
    info.add_argument("file")
    info.set_defaults(func=cmd_lattice_info)

    inv = sub.add_parser("involution").add_subparsers(dest="cmd", required=True)
    ii = inv.add_parser("invariants", parents=[fmt])
    ii.add_argument("file")
    ii.set_defaults(func=cmd_involution_invariants)

    enr = sub.add_parser("enriques").add_subparsers(dest="cmd", required=True)
    an = enr.add_parser("analyze", parents=[fmt])
    an.add_argument("files", nargs="+")
    an.set_defaults(func=cmd_analyze)

    en = sub.add_parser("enumerate", parents=[fmt])
    en.add_argument("--max-s", action="store_true")
    en.add_argument("--max-snor", action="store_true")
    en.add_argument("--no-positivity-rule", action="store_true")
    en.add_argument("--no-pairing-rank-bound", action="store_true")
    en.add_argument("--literal-delta-parity", action="store_true")
    en.set_defaults(func=cmd_enumerate)

    cat = sub.add_parser("catalog").add_subparsers(dest="cmd", required=True)
    cl = cat.add_parser("list", parents=[fmt])
    cl.set_defaults(func=cmd_catalog_list)
    ce = cat.add_parser("emit", parents=[fmt])
    ce.add_argument("name")
    ce.add_argument("dir")
    ce.set_defaults(func=cmd_catalog_emit)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if not hasattr(args, "format"):
        args.format = "text"
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InconsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
