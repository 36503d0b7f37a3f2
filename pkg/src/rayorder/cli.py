"""Command-line front end.

Operands use a small text grammar:

    field     "x^2-2"                      (generator written ``a`` in elements)
    order     "maximal", "equation", "quad-conductor: 2", "gens: 1, 2*a"
    ideal     "gens: 7, 3+a" or "hnf: den; row; row" (power-basis coordinates)
    modulus   "(7)inf2", "(7, 3+a)inf1inf2", "(1)"

Exit codes: 0 success, 2 parse error, 3 failed precondition, 4 bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import shlex
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import rayclass as rc
from .errors import ParseError, PreconditionError, RayOrderError, UnitsUnavailable
from .field import FieldElement, NumberField
from .ideals import (
    FracIdeal,
    Order,
    conductor,
    contract_coprime,
    contract_integral,
    extend,
    is_coprime,
    primary_decomposition,
    primes_up_to,
)
from .residue import ResidueRing, set_residue_bound
from .zmodule import FinAbGroup, HNFLattice

SCHEMA = 1

COMMANDS = ("ideal-op", "conductor", "primary", "extend", "contract", "norm", "unitgroup",
            "classgroup", "rayclass", "formula", "exactseq", "psi", "split")

IDEAL_OPS = ("mul", "add", "intersect", "colon", "inverse", "pow", "multiplier-ring",
             "is-invertible", "integral-part")

# operand name -> (flag, help); the order of this table fixes the printed form of a request
OPERANDS = {
    "field": ("--field", "defining polynomial in x"),
    "order": ("--order", "order: maximal | equation | quad-conductor: f | gens: e1, e2, ..."),
    "over": ("--over", "larger order, same grammar as --order"),
    "ideal": ("--ideal", "ideal: gens: e1, ... | hnf: den; row; ..."),
    "ideal2": ("--ideal2", "second ideal for binary operations"),
    "op": ("--op", "ideal operation: " + ", ".join(IDEAL_OPS)),
    "exp": ("--exp", "exponent for --op pow"),
    "mode": ("--mode", "contraction mode: coprime | integral"),
    "modulus": ("--modulus", "modulus like (7)inf2"),
    "over_modulus": ("--over-modulus", "modulus of the larger level datum"),
    "aux": ("--aux", "auxiliary ideal d of the larger order"),
}

OPTIONS = {
    "format": ("--format", "text", "output format: text | json"),
    "residue_bound": ("--residue-bound", "1000000", "largest residue ring to enumerate"),
    "disc_bound": ("--disc-bound", "1000000", "largest |discriminant| for class groups"),
    "prime_bound": ("--prime-bound", None, "enumerate primes of O_K up to this norm"),
}

FLAGS = {"assume_irreducible": ("--assume-irreducible", "skip the irreducibility check")}

USES = {
    "ideal-op": ("field", "order", "ideal", "ideal2", "op", "exp"),
    "conductor": ("field", "order", "over"),
    "primary": ("field", "order", "ideal"),
    "extend": ("field", "order", "over", "ideal"),
    "contract": ("field", "order", "over", "ideal", "mode"),
    "norm": ("field", "order", "ideal"),
    "unitgroup": ("field", "order", "ideal"),
    "classgroup": ("field", "order"),
    "rayclass": ("field", "order", "modulus"),
    "formula": ("field", "order", "modulus"),
    "exactseq": ("field", "order", "modulus", "over", "over_modulus", "aux"),
    "psi": ("field", "order", "modulus", "ideal"),
    "split": ("field", "order", "modulus", "ideal"),
}

REQUIRED = {
    "ideal-op": ("field", "ideal", "op"),
    "primary": ("field", "ideal"),
    "extend": ("field", "ideal"),
    "contract": ("field", "ideal"),
    "norm": ("field", "ideal"),
    "rayclass": ("field", "modulus"),
    "formula": ("field", "modulus"),
    "exactseq": ("field", "modulus"),
    "psi": ("field", "modulus"),
    "split": ("field", "modulus"),
}


@dataclass(frozen=True)
class Request:
    command: str
    args: tuple[tuple[str, str], ...]
    options: tuple[tuple[str, str], ...] = ()

    def arg(self, name: str, default: str | None = None) -> str | None:
        return dict(self.args).get(name, default)

    def option(self, name: str) -> str | None:
        opts = dict(self.options)
        if name in opts:
            return opts[name]
        if name in OPTIONS:
            return OPTIONS[name][1]
        return None

    def flag(self, name: str) -> bool:
        return dict(self.options).get(name) == "true"

    def to_argv(self) -> list[str]:
        out = [self.command]
        given = dict(self.args)
        for name, (flag, _) in OPERANDS.items():
            if name in given:
                out += [flag, given[name]]
        opts = dict(self.options)
        for name, (flag, _, _) in OPTIONS.items():
            if name in opts:
                out += [flag, opts[name]]
        for name, (flag, _) in FLAGS.items():
            if opts.get(name) == "true":
                out.append(flag)
        return out

    def to_text(self) -> str:
        return shlex.join(self.to_argv())


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rayorder", description="Ideals, residue rings and ray class groups of orders.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    for cmd in COMMANDS:
        p = sub.add_parser(cmd)
        for name in USES[cmd]:
            flag, help_ = OPERANDS[name]
            p.add_argument(flag, dest=name, default=None, help=help_)
        for name, (flag, default, help_) in OPTIONS.items():
            p.add_argument(flag, dest=name, default=None, help=f"{help_} (default {default})")
        for name, (flag, help_) in FLAGS.items():
            p.add_argument(flag, dest=name, action="store_true", help=help_)
    return parser


def parse_request(argv: str | Sequence[str]) -> Request:
    """Parse a command line (string or token list) into a validated Request."""
    tokens = shlex.split(argv) if isinstance(argv, str) else list(argv)
    if not tokens:
        raise ParseError("expected a command, one of " + ", ".join(COMMANDS))
    if tokens[0] not in COMMANDS and not tokens[0].startswith("-"):
        raise ParseError(f"unknown command {tokens[0]!r}, expected one of " + ", ".join(COMMANDS))
    ns = _build_parser().parse_args(tokens)
    if ns.command is None:
        raise ParseError("expected a command, one of " + ", ".join(COMMANDS))
    cmd = ns.command
    args = tuple((n, getattr(ns, n)) for n in OPERANDS if n in USES[cmd] and getattr(ns, n) is not None)
    opts = [(n, getattr(ns, n)) for n in OPTIONS if getattr(ns, n) is not None]
    opts += [(n, "true") for n in FLAGS if getattr(ns, n)]
    req = Request(cmd, args, tuple(sorted(opts)))
    for name in REQUIRED.get(cmd, ("field",)):
        if req.arg(name) is None:
            raise ParseError(f"{cmd} requires {OPERANDS[name][0]}")
    _validate(req)
    return req


def _validate(req: Request) -> None:
    """Syntax checks that need the field: element expressions and place indices."""
    if req.option("format") not in ("text", "json"):
        raise ParseError("--format must be text or json", req.option("format"), 0)
    for name in ("residue_bound", "disc_bound", "prime_bound"):
        v = req.option(name)
        if v is not None and not re.fullmatch(r"\d+", v):
            raise ParseError(f"--{name.replace('_', '-')} must be a positive integer", v, 0)
    if req.arg("op") is not None and req.arg("op") not in IDEAL_OPS:
        raise ParseError("unknown ideal operation, expected one of " + ", ".join(IDEAL_OPS), req.arg("op"), 0)
    if req.arg("mode") is not None and req.arg("mode") not in ("coprime", "integral"):
        raise ParseError("--mode must be coprime or integral", req.arg("mode"), 0)
    if req.arg("exp") is not None and not re.fullmatch(r"-?\d+", req.arg("exp")):
        raise ParseError("--exp must be an integer", req.arg("exp"), 0)
    K = parse_field(req.arg("field"), req.flag("assume_irreducible"))
    for name in ("order", "over"):
        if req.arg(name) is not None:
            _order_syntax(K, req.arg(name))
    for name in ("ideal", "ideal2", "aux"):
        if req.arg(name) is not None:
            _ideal_syntax(K, req.arg(name))
    for name in ("modulus", "over_modulus"):
        if req.arg(name) is not None:
            _modulus_syntax(K, req.arg(name))


# operand grammar

def parse_field(text: str, assume_irreducible: bool = False) -> NumberField:
    return NumberField.from_string(text, assume_irreducible=assume_irreducible)


def _elements(K: NumberField, text: str, full: str, offset: int) -> list[FieldElement]:
    out = []
    pos = 0
    for piece in text.split(","):
        start = offset + pos + (len(piece) - len(piece.lstrip()))
        if not piece.strip():
            raise ParseError("expected an element", full, start)
        try:
            out.append(K.parse_element(piece.strip()))
        except ParseError as exc:
            raise ParseError(exc.reason, full, start + (exc.pos or 0)) from None
        pos += len(piece) + 1
    return out


def _split_keyword(text: str, keywords: Sequence[str]) -> tuple[str, str, int]:
    m = re.match(r"\s*([a-z-]+)\s*(?::\s*)?", text)
    if not m or m.group(1) not in keywords:
        raise ParseError("expected one of " + ", ".join(repr(k) for k in keywords), text, 0)
    return m.group(1), text[m.end():], m.end()


def _order_syntax(K: NumberField, text: str):
    kw, rest, off = _split_keyword(text, ("maximal", "equation", "quad-conductor", "gens"))
    if kw in ("maximal", "equation"):
        if rest.strip():
            raise ParseError("unexpected text after keyword", text, off)
        if kw == "maximal" and K.degree != 2:
            raise ParseError("'maximal' is only available for quadratic fields; give generators", text, 0)
        return kw, None
    if kw == "quad-conductor":
        if K.degree != 2:
            raise ParseError("quad-conductor needs a quadratic field", text, 0)
        if not re.fullmatch(r"\s*[1-9]\d*\s*", rest):
            raise ParseError("expected a positive integer conductor", text, off)
        return kw, int(rest)
    return kw, _elements(K, rest, text, off)


def parse_order(K: NumberField, text: str) -> Order:
    kw, data = _order_syntax(K, text)
    if kw == "equation":
        return Order.equation_order(K)
    if kw in ("maximal", "quad-conductor"):
        from .quadratic import QuadraticField

        return QuadraticField(K).order(1 if kw == "maximal" else data)
    return Order.ring_generated_by(K, data)


def _ideal_syntax(K: NumberField, text: str):
    kw, rest, off = _split_keyword(text, ("gens", "hnf"))
    if kw == "gens":
        return kw, _elements(K, rest, text, off)
    try:
        L = HNFLattice.from_text(rest)
    except ParseError as exc:
        raise ParseError(exc.reason, text, off) from None
    if len(L.mat[0]) != K.degree:
        raise ParseError(f"rows must have {K.degree} entries", text, off)
    return kw, L


def parse_ideal(O: Order, text: str) -> FracIdeal:
    kw, data = _ideal_syntax(O.field, text)
    if kw == "gens":
        return FracIdeal.generated_by(O, data)
    return FracIdeal(O, data, check=True)


_MOD_RE = re.compile(r"\s*\(([^()]*)\)((?:\s*inf\s*\d+)*)\s*$")


def _modulus_syntax(K: NumberField, text: str):
    m = _MOD_RE.match(text)
    if not m:
        if "(" not in text:
            raise ParseError("expected '(' starting the modulus", text, 0)
        close = text.find(")")
        bad = close + 1 if close >= 0 else len(text)
        raise ParseError("expected 'inf<k>' after the ideal generators", text, bad)
    gens = _elements(K, m.group(1), text, m.start(1))
    places = []
    nreal = len(K.real_places)
    for pm in re.finditer(r"inf\s*(\d+)", text[m.start(2):]):
        k = int(pm.group(1))
        if not 1 <= k <= nreal:
            raise ParseError(f"real place {k} out of range (field has {nreal})", text, m.start(2) + pm.start(1))
        places.append(k)
    return gens, frozenset(places)


def parse_modulus(O: Order, text: str) -> tuple[FracIdeal, frozenset]:
    gens, places = _modulus_syntax(O.field, text)
    m = FracIdeal.generated_by(O, gens)
    if not m.is_integral():
        raise PreconditionError("modulus must be an integral ideal")
    return m, places


# naming

def order_name(O: Order) -> str:
    K = O.field
    if K.degree == 2 and K.coeffs[1] == 0:
        from .quadratic import QuadraticField

        d = -K.coeffs[0]
        root = "i" if d == -1 else (f"sqrt{d}" if d > 0 else f"sqrt({d})")
        Q = QuadraticField(K)
        try:
            f = Q.order_conductor(O)
        except PreconditionError:
            f = None
        if f is not None and O == Order.from_generators(K, [K.one, K.gen * f], check=False):
            return f"Z[{root}]" if f == 1 else f"Z[{f}*{root}]"
        if f is not None:
            return f"O_{f}" if f > 1 else "O_K"
    return "Z<" + ", ".join(str(b) for b in O.basis) + ">"


def ideal_text(a: FracIdeal) -> str:
    return "hnf: " + a.lattice.to_text()


def _group(G: FinAbGroup) -> list[int]:
    return sorted(G.invariants)


def _frac(q: Fraction) -> int | str:
    return int(q) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _jsonable(x):
    if isinstance(x, Fraction):
        return _frac(x)
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, FinAbGroup):
        return _group(x)
    if isinstance(x, (FieldElement, FracIdeal, Order)):
        return str(x) if isinstance(x, FieldElement) else (ideal_text(x) if isinstance(x, FracIdeal) else order_name(x))
    return x


# commands

class _Context:
    def __init__(self, req: Request):
        self.req = req
        self.K = parse_field(req.arg("field"), req.flag("assume_irreducible"))
        default = "maximal" if self.K.degree == 2 else "equation"
        self.O = parse_order(self.K, req.arg("order", default))
        self._arith = None

    @property
    def arith(self) -> rc.Arithmetic:
        if self._arith is None:
            if self.K.degree != 2:
                raise UnitsUnavailable("unit and class groups are computed for quadratic fields only")
            self._arith = rc.QuadraticArithmetic(self.K, int(self.req.option("disc_bound")))
        return self._arith

    def over(self) -> Order:
        default = "maximal" if self.K.degree == 2 else None
        text = self.req.arg("over", default)
        if text is None:
            raise PreconditionError("--over is required for fields of degree >= 3")
        return parse_order(self.K, text)

    def ideal(self, name: str = "ideal", order: Order | None = None) -> FracIdeal:
        return parse_ideal(order or self.O, self.req.arg(name))

    def level(self, order: Order | None = None, name: str = "modulus") -> rc.LevelDatum:
        O = order or self.O
        m, places = parse_modulus(O, self.req.arg(name))
        return rc.LevelDatum(O, m, places)


def _cmd_ideal_op(c: _Context) -> dict:
    op = c.req.arg("op")
    a = c.ideal()
    out = {}
    if op in ("mul", "add", "intersect", "colon"):
        if c.req.arg("ideal2") is None:
            raise ParseError(f"--op {op} requires --ideal2")
        b = c.ideal("ideal2")
        res = {"mul": lambda: a * b, "add": lambda: a + b, "intersect": lambda: a & b,
               "colon": lambda: a.colon(b)}[op]()
    elif op == "inverse":
        res = a.inverse()
    elif op == "pow":
        res = a ** int(c.req.arg("exp", "2"))
    elif op == "integral-part":
        res = a.integral_part()
    elif op == "multiplier-ring":
        R = a.multiplier_ring()
        return {"order": order_name(R), "lattice": R.lattice.to_text(),
                "index": _frac(c.O.lattice.index_in(R.lattice))}
    else:
        return {"invertible": a.is_invertible()}
    out["ideal"] = ideal_text(res)
    out["norm"] = _frac(res.norm())
    out["invertible"] = res.is_invertible()
    return out


def _cmd_conductor(c: _Context) -> dict:
    sup = c.over()
    f = conductor(c.O, sup)
    return {"conductor": ideal_text(f), "norm": _frac(f.norm()), "index": _frac(c.O.index_in(sup)),
            "sub": order_name(c.O), "sup": order_name(sup)}


def _cmd_primary(c: _Context) -> dict:
    m = c.ideal()
    comps = primary_decomposition(m)
    return {"components": [{"prime": ideal_text(P), "primary": ideal_text(q), "norm": _frac(q.norm())}
                           for P, q in comps]}


def _cmd_extend(c: _Context) -> dict:
    a = c.ideal()
    b = extend(a, c.over())
    return {"ideal": ideal_text(b), "norm": _frac(b.norm()), "invertible": b.is_invertible()}


def _cmd_contract(c: _Context) -> dict:
    sup = c.over()
    a = c.ideal(order=sup)
    mode = c.req.arg("mode", "coprime")
    b = contract_coprime(a, c.O) if mode == "coprime" else contract_integral(a, c.O)
    return {"ideal": ideal_text(b), "norm": _frac(b.norm()), "invertible": b.is_invertible()}


def _cmd_norm(c: _Context) -> dict:
    a = c.ideal()
    return {"norm": _frac(a.norm()), "invertible": a.is_invertible(), "integral": a.is_integral()}


def _cmd_unitgroup(c: _Context) -> dict:
    if c.req.arg("ideal") is not None:
        R = ResidueRing(c.O, c.ideal(), bound=int(c.req.option("residue_bound")))
        G = R.unit_group
        return {"cardinality": G.order, "invariant_factors": _group(G.group), "ring_size": R.size,
                "generators": [str(R.element(g)) for g in G.generators]}
    units = c.arith.Q.order_unit_group(c.O)
    z, w = units["torsion"]
    return {"torsion": {"generator": str(z), "order": w},
            "fundamental": None if units["fundamental"] is None else str(units["fundamental"]),
            "index_exponent": units["exponent"]}


def _cmd_classgroup(c: _Context) -> dict:
    CG = c.arith.class_group(c.O)
    return {"cardinality": CG.class_number, "invariant_factors": _group(CG.group),
            "representatives": [ideal_text(I) for I in CG.representatives()]}


def _cmd_rayclass(c: _Context) -> dict:
    D = c.level()
    G = rc.ray_class_group(D, c.arith)
    out = {"cardinality": G.cardinality, "pieces": G.pieces(),
           "name": f"Cl_{D.modulus_text()}({order_name(D.order)})"}
    if G.structure is not None:
        out["invariant_factors"] = _group(G.structure)
    return out


def _cmd_formula(c: _Context) -> dict:
    D = c.level()
    terms = rc.class_number_terms(D, c.arith)
    direct = rc.ray_class_group(D, c.arith).cardinality
    return {"cardinality": _frac(terms["value"]), "pieces": {k: v for k, v in terms.items() if k != "value"},
            "direct": direct, "agrees": terms["value"] == direct,
            "name": f"Cl_{D.modulus_text()}({order_name(D.order)})"}


def _cmd_exactseq(c: _Context) -> dict:
    D = c.level()
    sup = c.over()
    if c.req.arg("over_modulus") is not None:
        D2 = c.level(sup, "over_modulus")
    else:
        D2 = rc.LevelDatum.trivial(sup)
    W = rc.LevelLeq(D, D2)
    d = c.ideal("aux", sup) if c.req.arg("aux") is not None else None
    rep = rc.exact_sequence_report(W, d, c.arith)
    out = {
        "pieces": {
            "unit_quotient": _group(rep.unit_quotient),
            "middle": _group(rep.middle),
            "kernel": _group(rep.kernel),
            "source_cardinality": rep.cl_source,
            "target_cardinality": rep.cl_target,
        },
        "alternating_product": _frac(rep.alternating_product),
        "injective": rep.injective,
        "ok": rep.ok,
        "aux": ideal_text(d if d is not None else W.colon()),
    }
    if rep.cl_target == 1:
        out["invariant_factors"] = _group(rep.kernel)
        out["cardinality"] = rep.kernel.order
    return out


def _cmd_psi(c: _Context) -> dict:
    D = c.level()
    OK = c.arith.maximal_order
    G = rc.ray_class_group(D, c.arith)
    if c.req.arg("ideal") is not None:
        a = c.ideal(order=OK)
        label = rc.psi_contract_class(a, D, c.arith)
        return {"class": _jsonable(label), "contraction": ideal_text(contract_coprime(a, D.order))}
    bound = int(c.req.option("prime_bound") or 1000)
    dm = rc.LevelLeq(D, rc.LevelDatum.trivial(OK)).colon()
    labels = set()
    count = 0
    for P in primes_up_to(OK, bound):
        if not is_coprime(P, dm):
            continue
        labels.add(rc.psi_contract_class(P, D, c.arith))
        count += 1
    return {"cardinality": G.cardinality, "classes_reached": len(labels), "primes": count,
            "surjective": len(labels) == G.cardinality, "prime_bound": bound}


def _cmd_split(c: _Context) -> dict:
    D = c.level()
    OK = c.arith.maximal_order
    if c.req.arg("ideal") is not None:
        return {"splits": rc.splits_completely(c.ideal(order=OK), D, c.arith)}
    bound = int(c.req.option("prime_bound") or 1000)
    tally = {"yes": 0, "no": 0, "excluded": 0}
    for P in primes_up_to(OK, bound):
        tally[rc.splits_completely(P, D, c.arith)] += 1
    counted = tally["yes"] + tally["no"]
    G = rc.ray_class_group(D, c.arith)
    return {"tally": tally, "density": _frac(Fraction(tally["yes"], counted)) if counted else None,
            "expected": f"1/{G.cardinality}", "prime_bound": bound}


HANDLERS = {
    "ideal-op": _cmd_ideal_op,
    "conductor": _cmd_conductor,
    "primary": _cmd_primary,
    "extend": _cmd_extend,
    "contract": _cmd_contract,
    "norm": _cmd_norm,
    "unitgroup": _cmd_unitgroup,
    "classgroup": _cmd_classgroup,
    "rayclass": _cmd_rayclass,
    "formula": _cmd_formula,
    "exactseq": _cmd_exactseq,
    "psi": _cmd_psi,
    "split": _cmd_split,
}


def run(req: Request) -> dict:
    old = set_residue_bound(int(req.option("residue_bound")))
    try:
        body = HANDLERS[req.command](_Context(req))
    finally:
        set_residue_bound(old)
    result = {"schema": SCHEMA, "command": req.command, "inputs": dict(req.args)}
    result.update(_jsonable(body))
    return result


def emit(result: dict, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(result, sort_keys=True, indent=2)
    lines = []
    name = result.get("name")
    if name is not None and "invariant_factors" in result:
        inv = result["invariant_factors"]
        lines.append(f"{name} = " + (" x ".join(f"Z/{d}" for d in reversed(inv)) if inv else "1"))
    elif name is not None:
        lines.append(f"#{name} = {result['cardinality']}")
    skip = {"schema", "command", "inputs", "name"}
    for key in sorted(result):
        if key in skip or (name is not None and key in ("invariant_factors", "cardinality")):
            continue
        lines.append(f"{key}: {_text_value(result[key])}")
    return "\n".join(lines)


def _text_value(v) -> str:
    if isinstance(v, dict):
        return ", ".join(f"{k}={_text_value(x)}" for k, x in sorted(v.items()))
    if isinstance(v, list):
        return "[" + ", ".join(_text_value(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v)


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        req = parse_request(argv)
        out = emit(run(req), req.option("format"))
    except RayOrderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    print(out)
    return 0


__all__ = ["Request", "parse_request", "run", "emit", "main", "parse_field", "parse_order",
           "parse_ideal", "parse_modulus", "order_name"]
