"""Module and report files.

A module file is a UTF-8 JSON document::

    {"p": 3,
     "group": {"kind": "Ga" | "UN" | "GaTrunc" | "UNTrunc", "N"?: int, "r"?: int},
     "module": {"dim": n, "coaction": [[polystring, ...], ...]}
               | {"u_mats": {"0": [[int, ...], ...], ...}}}

Coaction matrices are row-major (entry [j][i] is the coefficient of e_j in
Delta(e_i)); polystrings follow the polynomial text grammar.  The u_mats form
is only meaningful for kind "Ga".  Canonical serialization sorts keys and
uses two-space indentation, so serialize(parse(file)) is byte-identical for
canonical files.

A report file is {"seed": ..., "checks": [record, ...]} with records
{check, inputs, verdict, witness?, law} sorted by check id; ``law`` is a short
tag of the mathematical property the record checked.
"""

import json

from . import coalgebras
from .comodule import Comodule, validate
from .fpcomb import PrimeField
from .ga import GaUFamily, require_valid_family
from .polyring import format_poly, parse_poly

GROUP_KINDS = ("Ga", "UN", "GaTrunc", "UNTrunc")


class ModuleFileError(ValueError):
    """Malformed or law-violating module file."""


def _coalgebra_from_group(group: dict) -> coalgebras.CoalgebraId:
    kind = group.get("kind")
    if kind == "Ga":
        return coalgebras.ga_poly()
    if kind == "GaTrunc":
        return coalgebras.ga_trunc(int(group["r"]))
    if kind == "UN":
        return coalgebras.un_poly(int(group["N"]))
    if kind == "UNTrunc":
        return coalgebras.un_trunc(int(group["N"]), int(group["r"]))
    raise ModuleFileError(f"unknown group kind {kind!r}")


def _group_from_coalgebra(coalg: coalgebras.CoalgebraId) -> dict:
    if coalg.kind == "GaPoly":
        return {"kind": "Ga"}
    if coalg.kind == "GaTrunc":
        return {"kind": "GaTrunc", "r": coalg.r}
    if coalg.kind == "UNPoly":
        return {"kind": "UN", "N": coalg.N}
    if coalg.kind == "UNTrunc":
        return {"kind": "UNTrunc", "N": coalg.N, "r": coalg.r}
    raise ModuleFileError(f"{coalg} has no file representation")


def parse_module(doc: dict, check: bool = True):
    """Parse a module-file document into a Comodule or GaUFamily."""
    try:
        p = int(doc["p"])
        group = doc["group"]
        module = doc["module"]
    except (KeyError, TypeError) as exc:
        raise ModuleFileError(f"missing field: {exc}") from exc
    field = PrimeField(p)
    if "u_mats" in module:
        if group.get("kind") != "Ga":
            raise ModuleFileError("u_mats form is only valid for group kind 'Ga'")
        mats = {}
        dim = None
        for key, mat in module["u_mats"].items():
            s = int(key)
            if s < 0:
                raise ModuleFileError("u_mats indices must be nonnegative")
            mats[s] = [[int(v) % p for v in row] for row in mat]
            dim = len(mats[s]) if dim is None else dim
        dim = int(module.get("dim", dim if dim is not None else 0))
        fam = GaUFamily(field, dim, mats)
        if any(len(m) != dim or any(len(r) != dim for r in m) for m in mats.values()):
            raise ModuleFileError("u_mats rows must be dim x dim")
        if check:
            require_valid_family(fam)
        return fam
    coalg = _coalgebra_from_group(group)
    dim = int(module["dim"])
    rows = module["coaction"]
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise ModuleFileError("coaction matrix must be dim x dim")
    coaction = [[parse_poly(s, field) for s in row] for row in rows]
    M = Comodule(field, coalg, dim, coaction)
    if check:
        rep = validate(M)
        if not rep.ok:
            raise ModuleFileError(f"comodule law violation: {rep.summary()}")
    return M


def module_to_doc(obj) -> dict:
    """Canonical module-file document for a Comodule or GaUFamily."""
    if isinstance(obj, GaUFamily):
        return {
            "p": obj.field.p,
            "group": {"kind": "Ga"},
            "module": {
                "dim": obj.dim,
                "u_mats": {str(s): [list(r) for r in obj.u_mats[s]] for s in sorted(obj.u_mats)},
            },
        }
    if isinstance(obj, Comodule):
        return {
            "p": obj.field.p,
            "group": _group_from_coalgebra(obj.coalgebra),
            "module": {
                "dim": obj.dim,
                "coaction": [[format_poly(f) for f in row] for row in obj.coaction],
            },
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def canonical_dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load_module(path: str, check: bool = True):
    with open(path, encoding="utf-8") as fh:
        return parse_module(json.load(fh), check=check)


def save_module(obj, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_dumps(module_to_doc(obj)))


# -- reports ----------------------------------------------------------------------


def make_record(check: str, inputs: dict, verdict, law: str, witness=None) -> dict:
    rec = {"check": check, "inputs": inputs, "verdict": verdict, "law": law}
    if witness is not None:
        rec["witness"] = witness
    return rec


def report_doc(records, seed=None, extra=None) -> dict:
    doc = {"checks": sorted(records, key=lambda r: r["check"])}
    if seed is not None:
        doc["seed"] = seed
    if extra:
        doc.update(extra)
    return doc


def report_ok(doc: dict) -> bool:
    return all(bool(r["verdict"]) for r in doc["checks"])
