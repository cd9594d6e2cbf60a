"""JSON couple-spec files.

Minimal diagonal example::

    {"version": 1, "field": "rationals",
     "couple": {"type": "diagonal", "moduli": [2], "q": [["-1"]]},
     "pairing": {"type": "self-dual-diagonal"},
     "max_degree": 4}

Scalars are strings ``"a/b"`` or integers. Couple types: ``diagonal``
(``q`` with standard letter degrees, or ``degrees`` + ``characters``),
``regular`` (``table`` or ``moduli``) and ``raw`` (structure constants for
H and M). Pairing types: ``self-dual-diagonal`` (optional ``phi1_scale``)
and ``explicit`` (``phi0``, ``phi1`` matrices over the basis order).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .couple import (Couple, CoupleError, CouplePairing, DiagonalBilinear, DiagonalData,
                     ExplicitBilinear, TableBimodule, build_diagonal_couple, regular_couple,
                     self_dual_bicharacter)
from .hopf import GroupTableError, MatrixPairing, StructureConstantHopf, build_group_algebra
from .linalg import Field
from .tensor import DEFAULT_CAP

SPEC_VERSION = 1


class SpecError(ValueError):
    """Parse or construction error, located by line/column or by a field path."""

    def __init__(self, where, message):
        super().__init__(f"{where}: {message}")
        self.where = where
        self.message = message


@dataclass
class LoadedSpec:
    text: str
    field: Field
    couple: Couple
    pairing: CouplePairing | None
    max_degree: int
    cap: int
    validation_bound: int
    raw: dict


def _get(d, key, path, kind=None, required=True, default=None):
    if not isinstance(d, dict):
        raise SpecError(path, "expected an object")
    if key not in d:
        if required:
            raise SpecError(f"{path}.{key}", "missing field")
        return default
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise SpecError(f"{path}.{key}", f"expected {getattr(kind, '__name__', kind)}")
    return v


def _scalar(F, x, path):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise SpecError(path, "scalars must be integers or strings 'a/b'")
    try:
        return F(x)
    except (ValueError, ZeroDivisionError) as e:
        raise SpecError(path, f"bad scalar {x!r} ({e})") from None


def _matrix(F, rows, path, shape=None):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SpecError(path, "expected a list of rows")
    out = [[_scalar(F, x, f"{path}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(rows)]
    if shape is not None and (len(out) != shape[0] or any(len(r) != shape[1] for r in out)):
        raise SpecError(path, f"expected a {shape[0]}x{shape[1]} matrix")
    return out


def _int_list(v, path):
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise SpecError(path, "expected a list of integers")
    return v


def parse_field(desc, path="field"):
    if desc == "rationals":
        return Field()
    if isinstance(desc, dict) and "prime" in desc:
        p = desc["prime"]
        if not isinstance(p, int) or isinstance(p, bool):
            raise SpecError(f"{path}.prime", "expected an integer")
        try:
            return Field(p)
        except ValueError as e:
            raise SpecError(f"{path}.prime", str(e)) from None
    raise SpecError(path, "expected \"rationals\" or {\"prime\": p}")


def _entries(F, v, path, arity):
    """List of [i_1, ..., i_arity, coef] rows."""
    if not isinstance(v, list):
        raise SpecError(path, "expected a list of entries")
    out = []
    for k, e in enumerate(v):
        if not isinstance(e, list) or len(e) != arity + 1:
            raise SpecError(f"{path}[{k}]", f"expected [{', '.join(['index'] * arity)}, coef]")
        idx = _int_list(e[:arity], f"{path}[{k}]")
        out.append((tuple(idx), _scalar(F, e[arity], f"{path}[{k}][{arity}]")))
    return out


def _raw_hopf(F, d, path):
    dim = _get(d, "dim", path, int)
    mult, comult, antipode = {}, {}, {}
    for (a, b, c), v in _entries(F, _get(d, "mult", path), f"{path}.mult", 3):
        mult.setdefault((a, b), {})[c] = v
    unit = {i: v for (i,), v in _entries(F, _get(d, "unit", path), f"{path}.unit", 1)}
    for (a, x, y), v in _entries(F, _get(d, "comult", path), f"{path}.comult", 3):
        comult.setdefault(a, {})[(x, y)] = v
    counit = [_scalar(F, x, f"{path}.counit[{i}]") for i, x in enumerate(_get(d, "counit", path, list))]
    if len(counit) != dim:
        raise SpecError(f"{path}.counit", f"expected {dim} values")
    for (a, b), v in _entries(F, _get(d, "antipode", path), f"{path}.antipode", 2):
        antipode.setdefault(a, {})[b] = v
    for (k, bad) in [("mult", [i for key in mult for i in key] + [c for v in mult.values() for c in v]),
                     ("comult", list(comult) + [i for v in comult.values() for p in v for i in p]),
                     ("antipode", list(antipode) + [b for v in antipode.values() for b in v])]:
        if any(not (0 <= i < dim) for i in bad):
            raise SpecError(f"{path}.{k}", f"basis index outside 0..{dim - 1}")
    return StructureConstantHopf(dim, mult, unit, comult, counit, antipode, F)


def _raw_bimodule(F, H, d, path):
    dim = _get(d, "dim", path, int)
    lact, ract, lco, rco = {}, {}, {}, {}
    for (h, m, x), v in _entries(F, d.get("lact", []), f"{path}.lact", 3):
        lact.setdefault((h, m), {})[x] = v
    for (m, h, x), v in _entries(F, d.get("ract", []), f"{path}.ract", 3):
        ract.setdefault((m, h), {})[x] = v
    for (m, h, x), v in _entries(F, d.get("lcoact", []), f"{path}.lcoact", 3):
        lco.setdefault(m, {})[(h, x)] = v
    for (m, x, h), v in _entries(F, d.get("rcoact", []), f"{path}.rcoact", 3):
        rco.setdefault(m, {})[(x, h)] = v
    return TableBimodule(H, range(dim), lact, ract, lco, rco)


def parse_couple(F, d, path="couple"):
    kind = _get(d, "type", path, str)
    try:
        if kind == "diagonal":
            moduli = _int_list(_get(d, "moduli", path), f"{path}.moduli")
            if "q" in d:
                q = _matrix(F, d["q"], f"{path}.q")
                if any(len(r) != len(q) for r in q):
                    raise SpecError(f"{path}.q", "braiding matrix must be square")
                data = DiagonalData.standard(q, F, moduli)
            else:
                degrees = _get(d, "degrees", path, list)
                chars = _matrix(F, _get(d, "characters", path), f"{path}.characters")
                data = DiagonalData(moduli, [_int_list(g, f"{path}.degrees[{i}]")
                                             for i, g in enumerate(degrees)], chars, F)
            return build_diagonal_couple(data)
        if kind == "regular":
            if "table" in d:
                table = [_int_list(r, f"{path}.table[{i}]") for i, r in enumerate(_get(d, "table", path, list))]
                H = build_group_algebra(F, table=table)
            else:
                moduli = _int_list(_get(d, "moduli", path), f"{path}.moduli")
                if any(n <= 0 for n in moduli):
                    raise SpecError(f"{path}.moduli", "regular couple needs a finite group")
                H = build_group_algebra(F, moduli=moduli)
            return regular_couple(H)
        if kind == "raw":
            H = _raw_hopf(F, _get(d, "hopf", path), f"{path}.hopf")
            M = _raw_bimodule(F, H, _get(d, "bimodule", path), f"{path}.bimodule")
            return Couple(H, M)
    except (CoupleError, GroupTableError) as e:
        raise SpecError(path, str(e)) from None
    raise SpecError(f"{path}.type", f"unknown couple type {kind!r}")


def parse_pairing(F, c, d, path="pairing"):
    kind = _get(d, "type", path, str)
    if kind == "self-dual-diagonal":
        if c.diagonal is None:
            raise SpecError(f"{path}.type", "self-dual-diagonal needs a diagonal couple")
        scale = _scalar(F, d.get("phi1_scale", 1), f"{path}.phi1_scale")
        try:
            beta = self_dual_bicharacter(c.diagonal)
        except CoupleError as e:
            raise SpecError(path, str(e)) from None
        return CouplePairing(beta, DiagonalBilinear(beta, c.diagonal, scale), c, c)
    if kind == "explicit":
        if not c.finite:
            raise SpecError(f"{path}.type", "explicit pairings need a finite couple")
        hb, mb = c.hopf.basis(), c.bimodule.basis()
        p0 = _matrix(F, _get(d, "phi0", path), f"{path}.phi0", (len(hb), len(hb)))
        if "phi1" in d:
            p1 = _matrix(F, d["phi1"], f"{path}.phi1", (len(mb), len(mb)))
        elif list(mb) == list(hb):
            p1 = p0
        else:
            raise SpecError(f"{path}.phi1", "missing field")
        phi0 = MatrixPairing(c.hopf, c.hopf, {(a, b): p0[i][j] for i, a in enumerate(hb)
                                              for j, b in enumerate(hb)})
        phi1 = ExplicitBilinear({(a, b): p1[i][j] for i, a in enumerate(mb)
                                 for j, b in enumerate(mb)}, F)
        return CouplePairing(phi0, phi1, c, c)
    raise SpecError(f"{path}.type", f"unknown pairing type {kind!r}")


def loads(text):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"line {e.lineno}, column {e.colno}", e.msg) from None
    if not isinstance(raw, dict):
        raise SpecError("line 1, column 1", "top level must be an object")
    version = _get(raw, "version", "$", int)
    if version != SPEC_VERSION:
        raise SpecError("$.version", f"unsupported version {version}")
    F = parse_field(_get(raw, "field", "$"), "$.field")
    c = parse_couple(F, _get(raw, "couple", "$"), "$.couple")
    p = None
    if raw.get("pairing") is not None:
        p = parse_pairing(F, c, raw["pairing"], "$.pairing")
    D = _get(raw, "max_degree", "$", int, required=False, default=4)
    cap = _get(raw, "cap", "$", int, required=False, default=DEFAULT_CAP)
    vb = _get(raw, "validation_bound", "$", int, required=False, default=1)
    return LoadedSpec(text, F, c, p, D, cap, vb, raw)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


__all__ = ["SpecError", "LoadedSpec", "loads", "load", "parse_field", "parse_couple",
           "parse_pairing", "SPEC_VERSION"]
