"""JSON file objects for magmas, maps, actions and semibiproducts.

All element labels in files are 1-based. Parsing is strict: unknown keys,
wrong shapes and out-of-range entries raise :class:`InputError` carrying
a JSON path (``$.A.table[2][0]``) or a line/column position.
"""
from __future__ import annotations

import json
from pathlib import Path

from .errors import AlgebraError
from .finite_algebra import FiniteMagma, FiniteMap
from .magma_action import MagmaAction, RMagma
from .semibiproduct import PseudoActionData, Semibiproduct


class InputError(ValueError):
    pass


def _keys(obj, path, required, optional=()):
    if not isinstance(obj, dict):
        raise InputError(f"{path}: expected an object")
    unknown = sorted(set(obj) - set(required) - set(optional))
    if unknown:
        raise InputError(f"{path}.{unknown[0]}: unknown field")
    for key in required:
        if key not in obj:
            raise InputError(f"{path}.{key}: missing field")


def _int(v, path, lo, hi):
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(f"{path}: expected an integer")
    if not lo <= v <= hi:
        raise InputError(f"{path}: {v} outside {lo}..{hi}")
    return v


def _labels(seq, path, length, top):
    """1-based labels in ``1..top`` -> 0-based tuple."""
    if not isinstance(seq, list):
        raise InputError(f"{path}: expected a list")
    if len(seq) != length:
        raise InputError(f"{path}: expected {length} entries, got {len(seq)}")
    return tuple(_int(v, f"{path}[{i}]", 1, top) - 1 for i, v in enumerate(seq))


def _square(rows, path, n):
    if not isinstance(rows, list) or len(rows) != n:
        raise InputError(f"{path}: expected {n} rows")
    return tuple(_labels(row, f"{path}[{i}]", n, n) for i, row in enumerate(rows))


def magma_from_obj(obj, path="$") -> FiniteMagma:
    _keys(obj, path, ("order", "table"))
    n = _int(obj["order"], f"{path}.order", 1, 64)
    return FiniteMagma(_square(obj["table"], f"{path}.table", n))


def magma_to_obj(m: FiniteMagma) -> dict:
    return {"order": m.order, "table": [[v + 1 for v in row] for row in m.table]}


def map_from_obj(obj, path="$") -> FiniteMap:
    _keys(obj, path, ("dom", "cod", "values"))
    dom = _int(obj["dom"], f"{path}.dom", 1, 64)
    cod = _int(obj["cod"], f"{path}.cod", 1, 64)
    return FiniteMap(dom, cod, _labels(obj["values"], f"{path}.values", dom, cod))


def map_to_obj(f: FiniteMap) -> dict:
    return {"dom": f.dom_order, "cod": f.cod_order, "values": [v + 1 for v in f.values]}


def action_from_obj(obj, path="$") -> MagmaAction:
    _keys(obj, path, ("X", "B", "theta", "phi", "h", "t"))
    n = _int(obj["X"], f"{path}.X", 1, 16)
    m = _int(obj["B"], f"{path}.B", 1, 16)
    theta = FiniteMagma(_square(obj["theta"], f"{path}.theta", m))
    phi = _labels(obj["phi"], f"{path}.phi", (n * m) ** 2, n)
    h = FiniteMap(n, m, _labels(obj["h"], f"{path}.h", n, m))
    t = FiniteMap(m, n, _labels(obj["t"], f"{path}.t", m, n))
    return MagmaAction(n, m, theta, phi, h, t)


def action_to_obj(a: MagmaAction) -> dict:
    return {"X": a.x_order, "B": a.b_order,
            "theta": [[v + 1 for v in row] for row in a.theta.table],
            "phi": [v + 1 for v in a.phi],
            "h": [v + 1 for v in a.h.values],
            "t": [v + 1 for v in a.t.values]}


def sbp_from_obj(obj, path="$") -> Semibiproduct:
    _keys(obj, path, ("X", "A", "B", "k", "p", "q", "s"))
    X = magma_from_obj(obj["X"], f"{path}.X")
    A = magma_from_obj(obj["A"], f"{path}.A")
    B = magma_from_obj(obj["B"], f"{path}.B")
    nx, na, nb = X.order, A.order, B.order
    return Semibiproduct(
        X, A, B,
        FiniteMap(nx, na, _labels(obj["k"], f"{path}.k", nx, na)),
        FiniteMap(na, nb, _labels(obj["p"], f"{path}.p", na, nb)),
        FiniteMap(na, nx, _labels(obj["q"], f"{path}.q", na, nx)),
        FiniteMap(nb, na, _labels(obj["s"], f"{path}.s", nb, na)))


def sbp_to_obj(sb: Semibiproduct) -> dict:
    return {"X": magma_to_obj(sb.X), "A": magma_to_obj(sb.A), "B": magma_to_obj(sb.B),
            "k": [v + 1 for v in sb.k.values], "p": [v + 1 for v in sb.p.values],
            "q": [v + 1 for v in sb.q.values], "s": [v + 1 for v in sb.s.values]}


def _plus1(tab):
    return [[v + 1 for v in row] for row in tab]


def derived_to_obj(d: PseudoActionData, R: RMagma = None) -> dict:
    out = {"h": [v + 1 for v in d.h.values], "rho": _plus1(d.rho),
           "phi": _plus1(d.phi_pre), "gamma": _plus1(d.gamma)}
    if d.t is not None:
        out["t"] = [v + 1 for v in d.t.values]
    if R is not None:
        out["R"] = [[x + 1, b + 1] for x, b in R.pairs]
        out["R_op"] = _plus1(R.op.table)
    return out


KINDS = {
    "magma": (magma_from_obj, {"order", "table"}),
    "map": (map_from_obj, {"dom", "cod", "values"}),
    "action": (action_from_obj, {"X", "B", "theta", "phi", "h", "t"}),
    "sbp": (sbp_from_obj, {"X", "A", "B", "k", "p", "q", "s"}),
}


def parse_text(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{source}:{e.lineno}:{e.colno}: {e.msg}") from None


def detect_kind(obj) -> str:
    if not isinstance(obj, dict):
        raise InputError("$: expected an object")
    keys = set(obj)
    for kind, (_, fields) in KINDS.items():
        if keys == fields:
            return kind
    best = max(KINDS, key=lambda k: len(keys & KINDS[k][1]))
    return best


def load(path, kind: str = None):
    """Read a file object; returns ``(kind, value)``."""
    text = Path(path).read_text()
    obj = parse_text(text, str(path))
    kind = kind or detect_kind(obj)
    try:
        return kind, KINDS[kind][0](obj)
    except AlgebraError as e:
        raise InputError(f"{path}: {e}") from None


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=False)
