"""``sbp`` command line: verify, derive, convert, enumerate, census, props.

Exit status: 0 when the checked property holds, 1 when it fails (the
report still carries a witness), 2 on malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import io
from .census import action_census
from .enumeration import (EnumSpec, default_workers, enumerate_semibiproducts,
                          enumerate_structures)
from .errors import AlgebraError
from .extension_props import (cokernel_property, is_pointed_monoid_case,
                              kernel_property)
from .finite_algebra import FiniteMagma, FiniteMap, nonassociative_triple
from .magma_action import (associativity_witness, compute_R,
                           representability_witness, unitary_semidirect_failure,
                           verify_action)
from .semibiproduct import (derive_tuple, group_checks,
                            monoid_formula_check, structure_battery, to_action,
                            to_sbp, verify_sbp)


def one_based(w):
    """Shift element labels in a witness to 1-based; tags pass through."""
    if w is None or isinstance(w, (str, bool)):
        return w
    if isinstance(w, int):
        return w + 1
    if isinstance(w, FiniteMagma):
        return io.magma_to_obj(w)
    if isinstance(w, FiniteMap):
        return [v + 1 for v in w.values]
    if isinstance(w, (tuple, list)):
        return [one_based(v) for v in w]
    return str(w)


class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def report(self, title: str, fields: dict):
        if self.fmt == "json":
            self.stream.write(json.dumps({"report": title, **fields}, sort_keys=False) + "\n")
            return
        self.stream.write(f"{title}\n")
        width = max((len(k) for k in fields), default=0)
        for key, value in fields.items():
            if not isinstance(value, str):
                value = json.dumps(value)
            self.stream.write(f"  {key.ljust(width)} : {value}\n")

    def raw(self, obj):
        self.stream.write(io.dumps(obj) + "\n")


def _load(path, kind):
    got, value = io.load(path)
    if kind is not None and got not in kind:
        raise io.InputError(f"{path}: expected a {' or '.join(kind)} file, found {got}")
    return got, value


def cmd_verify_action(args, out):
    _, a = _load(args.file, ("action",))
    r = verify_action(a)
    fields = {"is_action": r.is_action}
    if not r.is_action:
        fields.update(failed_condition=r.failed_condition, witness=one_based(r.witness))
    else:
        fields.update(representable=r.representable,
                      representable_witness=one_based(r.representable_witness),
                      associative=r.associative,
                      associative_witness=one_based(r.associative_witness))
    out.report("valid" if r.is_action else "invalid", fields)
    return 0 if r.is_action else 1


def cmd_verify_sbp(args, out):
    _, sb = _load(args.file, ("sbp",))
    r = verify_sbp(sb)
    fields = {"valid": r.valid}
    if not r.valid:
        fields.update(failing_equation=r.failing_equation, witness=one_based(r.witness))
    out.report("valid" if r.valid else "invalid", fields)
    return 0 if r.valid else 1


def _require_sbp(sb, out):
    r = verify_sbp(sb)
    if not r.valid:
        out.report("invalid", {"valid": False, "failing_equation": r.failing_equation,
                               "witness": one_based(r.witness)})
    return r.valid


def cmd_derive(args, out):
    _, sb = _load(args.file, ("sbp",))
    if not _require_sbp(sb, out):
        return 1
    d = derive_tuple(sb)
    R = compute_R(to_action(sb))
    obj = io.derived_to_obj(d, R)
    if out.fmt == "json":
        out.raw(obj)
    else:
        out.report("derived", obj)
    return 0


def cmd_to_sbp(args, out):
    _, a = _load(args.file, ("action",))
    r = verify_action(a, classify=False)
    if not r.is_action:
        out.report("invalid", {"is_action": False, "failed_condition": r.failed_condition,
                               "witness": one_based(r.witness)})
        return 1
    out.raw(io.sbp_to_obj(to_sbp(a)))
    return 0


def cmd_to_action(args, out):
    _, sb = _load(args.file, ("sbp",))
    if not _require_sbp(sb, out):
        return 1
    out.raw(io.action_to_obj(to_action(sb)))
    return 0


def _check_associative(kind, value):
    if kind == "magma":
        w = nonassociative_triple(value)
    elif kind == "action":
        r = verify_action(value, classify=False)
        if not r.is_action:
            raise AlgebraError(f"not a magma-action ({r.failed_condition})")
        w = associativity_witness(value)
    elif kind == "sbp":
        w = nonassociative_triple(value.A)
    else:
        raise io.InputError("associativity applies to magma, action or sbp files")
    return w is None, {"witness": one_based(w)}


def _check_representable(kind, value, everywhere=False):
    if kind != "action":
        raise io.InputError("representability applies to action files")
    r = verify_action(value, classify=False)
    if not r.is_action:
        raise AlgebraError(f"not a magma-action ({r.failed_condition})")
    w = representability_witness(value, everywhere)
    return w is None, {"witness": one_based(w)}


def cmd_check(args, out):
    kind, value = _load(args.file, None)
    prop = args.property
    if prop == "associative":
        ok, extra = _check_associative(kind, value)
    elif prop == "representable":
        ok, extra = _check_representable(kind, value, args.everywhere)
    elif prop == "unitary":
        if kind != "action":
            raise io.InputError("the unitary check applies to action files")
        w = unitary_semidirect_failure(value)
        ok, extra = w is None, {"witness": one_based(w)}
    else:
        if kind != "sbp":
            raise io.InputError(f"the {prop} check applies to sbp files")
        if not _require_sbp(value, out):
            return 1
        if prop == "battery":
            rep = structure_battery(value)
            ok = rep.passed
            extra = {"items": {str(i): v[0] for i, v in sorted(rep.items.items())},
                     "failed_items": rep.failed_items()}
        elif prop == "group":
            rep = group_checks(value)
            ok = rep.passed
            extra = {"q_unique": rep.q_unique, "h_trivial": rep.h_trivial,
                     "rho_trivial": rep.rho_trivial,
                     "factor_product_iso": rep.factor_product_iso,
                     "witness": one_based(rep.witness)}
        elif prop == "formula":
            rep = monoid_formula_check(value)
            ok = rep.semigroup_agrees
            extra = {"monoid_formula_agrees": rep.monoid_agrees,
                     "semigroup_formula_agrees": rep.semigroup_agrees,
                     "witness": one_based(rep.witness)}
        elif prop == "pointed":
            ok, extra = is_pointed_monoid_case(value), {}
        else:  # pragma: no cover - argparse restricts choices
            raise io.InputError(f"unknown property {prop}")
    out.report(prop, {"holds": ok, **extra})
    return 0 if ok else 1


def cmd_enumerate(args, out):
    _, X = _load(args.ends[0], ("magma",))
    _, B = _load(args.ends[1], ("magma",))
    spec = EnumSpec(X, B, args.middle_order, args.dedup, args.structure)
    res = enumerate_semibiproducts(spec, workers=args.workers)
    out.report("enumerate", {"count": res.count, "labelled_count": res.labelled_count,
                             "dedup": args.dedup, "middle_order": args.middle_order,
                             "structure": args.structure})
    if args.list:
        for sb in res.solutions:
            out.raw(io.sbp_to_obj(sb))
    return 0


def cmd_structures(args, out):
    tables = enumerate_structures(args.order, args.structure, args.dedup)
    out.report("structures", {"order": args.order, "structure": args.structure,
                              "dedup": args.dedup, "count": len(tables)})
    if args.list:
        for m in tables:
            out.raw(io.magma_to_obj(m))
    return 0


def cmd_census(args, out):
    census = action_census(args.order, args.order, workers=args.workers)
    out.report("census", census.summary.as_dict())
    if args.out:
        with open(args.out, "w") as fh:
            for entry in census.flagged(args.flag):
                fh.write(io.dumps({**io.action_to_obj(entry.action),
                                   "representable": entry.representable,
                                   "associative": entry.associative}) + "\n")
    return 0 if census.summary.associative_not_representable == 0 else 1


def cmd_props(args, out):
    _, sb = _load(args.file, ("sbp",))
    if not _require_sbp(sb, out):
        return 1
    which = []
    if args.cokernel or not args.kernel:
        which.append(cokernel_property)
    if args.kernel or not args.cokernel:
        which.append(kernel_property)
    status = 0
    for fn in which:
        r = fn(sb, args.z_bound)
        out.report(r.property, {"z_bound": r.z_bound, "tested_homs": r.tested_homs,
                                "holds": r.holds, "bounded_check": r.bounded,
                                "witness": one_based(r.witness)})
        status = status or (0 if r.holds else 1)
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sbp", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="verb", required=True)

    for verb, fn in (("verify-action", cmd_verify_action), ("verify-sbp", cmd_verify_sbp),
                     ("derive", cmd_derive), ("to-sbp", cmd_to_sbp),
                     ("to-action", cmd_to_action)):
        p = sub.add_parser(verb)
        p.add_argument("file")
        p.set_defaults(func=fn)

    p = sub.add_parser("check")
    p.add_argument("property", choices=("associative", "representable", "unitary",
                                        "battery", "group", "formula", "pointed"))
    p.add_argument("file")
    p.add_argument("--everywhere", action="store_true",
                   help="check representability on all of (X x B)^2, not only R x R")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate")
    p.add_argument("--ends", nargs=2, metavar=("X.json", "B.json"), required=True)
    p.add_argument("--middle-order", type=int, default=3)
    p.add_argument("--structure", choices=("magma", "semigroup", "monoid", "group"),
                   default="semigroup")
    p.add_argument("--dedup", choices=("labelled", "middle-iso"), default="middle-iso")
    p.add_argument("--list", action="store_true")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("structures")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--structure", choices=("magma", "semigroup", "monoid", "group"),
                   default="semigroup")
    p.add_argument("--dedup", choices=("none", "iso", "iso-anti"), default="none")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_structures)

    p = sub.add_parser("census")
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--out", help="write flagged entries here, one object per line")
    p.add_argument("--flag", default="representable-not-associative",
                   choices=("representable-not-associative",
                            "associative-not-representable", "not-representable"))
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("props")
    p.add_argument("file")
    p.add_argument("--kernel", action="store_true")
    p.add_argument("--cokernel", action="store_true")
    p.add_argument("--z-bound", type=int, default=3)
    p.set_defaults(func=cmd_props)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    if getattr(args, "workers", None) is None and hasattr(args, "workers"):
        args.workers = default_workers()
    out = Output(args.format, stdout)
    try:
        return args.func(args, out)
    except io.InputError as e:
        stderr.write(f"sbp: error: {e}\n")
        return 2
    except FileNotFoundError as e:
        stderr.write(f"sbp: error: {e.filename}: no such file\n")
        return 2
    except AlgebraError as e:
        out.report("error", {"holds": False, "reason": str(e)})
        return 1


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
