"""Command-line front end: session files in, JSON lines out.

A session file declares one ring, then named ideals and filtrations:

    ring p=32003 vars=x,y,z order=grevlex weights=3,4,5
    ideal p = y^2 - x*z, x^3 - y*z, x^2*y - z^2
    ideal zero = 0
    filtration S = symbolic:p
    filtration A = adic:p
    filtration T = trivial-m

Lines starting with ``#`` are comments.  Every command prints exactly
one JSON object (sorted keys, compact separators) on stdout, carrying
the schema version, the operation name, an input digest, the seed when
randomness is involved, the result fields, and bound-check flags where
they apply.  Exit codes: 0 success, 2 validation problems, 1 internal
errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import fatpoints as fat
from .filtrations import (
    Filtration,
    analytic_spread,
    analytic_spread_truncated,
    equimultiple_check,
    fiber_nilpotency_witness,
    finite_generation_probe,
    symbolic_power,
)
from .groebner import normal_form
from .ideals import (
    Ideal,
    intersect,
    krull_dim,
    height,
    monomial_integral_closure,
    quotient,
    saturate,
)
from .ring import DEFAULT_PRIME, MonomialOrder, RingContext

SCHEMA = "1"

_ORDERS = {
    "grevlex": lambda weights: MonomialOrder.grevlex(),
    "lex": lambda weights: MonomialOrder.lex(),
    "weighted-grevlex": lambda weights: MonomialOrder.weighted_grevlex(weights),
}


class SessionFile:
    """Parsed ring declaration plus named ideals and filtrations."""

    def __init__(self, ctx: RingContext, order_name: str):
        self.ctx = ctx
        self.order_name = order_name
        self.ideals = {}          # name -> Ideal
        self.filtrations = {}     # name -> (kind string, Filtration)

    @classmethod
    def parse(cls, text: str) -> "SessionFile":
        session = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                head, rest = line.split(None, 1)
            except ValueError:
                raise ValueError(f"line {lineno}: cannot parse {line!r}")
            if head == "ring":
                if session is not None:
                    raise ValueError(f"line {lineno}: duplicate ring declaration")
                session = cls._parse_ring(rest, lineno)
            elif head == "ideal":
                if session is None:
                    raise ValueError(f"line {lineno}: ideal before ring")
                session._parse_ideal(rest, lineno)
            elif head == "filtration":
                if session is None:
                    raise ValueError(f"line {lineno}: filtration before ring")
                session._parse_filtration(rest, lineno)
            else:
                raise ValueError(f"line {lineno}: unknown declaration {head!r}")
        if session is None:
            raise ValueError("session file has no ring declaration")
        return session

    @classmethod
    def _parse_ring(cls, rest: str, lineno: int) -> "SessionFile":
        fields = {}
        for token in rest.split():
            if "=" not in token:
                raise ValueError(f"line {lineno}: expected key=value, got {token!r}")
            key, value = token.split("=", 1)
            fields[key] = value
        p = int(fields.get("p", DEFAULT_PRIME))
        if "vars" not in fields:
            raise ValueError(f"line {lineno}: ring needs vars=")
        variables = tuple(v.strip() for v in fields["vars"].split(",") if v.strip())
        weights = None
        if "weights" in fields:
            weights = tuple(int(w) for w in fields["weights"].split(","))
        order_name = fields.get("order", "grevlex")
        if order_name not in _ORDERS:
            raise ValueError(f"line {lineno}: unknown order {order_name!r}")
        order = _ORDERS[order_name](weights if weights else (1,) * len(variables))
        ctx = RingContext(p, variables, order, weights)
        return cls(ctx, order_name)

    def _parse_ideal(self, rest: str, lineno: int):
        if "=" not in rest:
            raise ValueError(f"line {lineno}: ideal needs name = gens")
        name, gens = rest.split("=", 1)
        name = name.strip()
        if not name or name in self.ideals:
            raise ValueError(f"line {lineno}: bad or duplicate ideal name {name!r}")
        polys = [self.ctx.poly(g.strip()) for g in gens.split(",") if g.strip()]
        self.ideals[name] = Ideal(self.ctx, polys)

    def _parse_filtration(self, rest: str, lineno: int):
        if "=" not in rest:
            raise ValueError(f"line {lineno}: filtration needs name = kind:...")
        name, spec = rest.split("=", 1)
        name = name.strip()
        spec = spec.strip()
        if not name or name in self.filtrations:
            raise ValueError(f"line {lineno}: bad or duplicate filtration name {name!r}")
        parts = spec.split(":")
        kind = parts[0]
        if kind == "trivial-m":
            self.filtrations[name] = (spec, Filtration.trivial_max(self.ctx))
        elif kind in ("adic", "symbolic"):
            if len(parts) < 2:
                raise ValueError(f"line {lineno}: {kind} filtration needs an ideal name")
            base = self._ideal(parts[1], lineno)
            if kind == "adic":
                self.filtrations[name] = (spec, Filtration.adic(base))
            else:
                J = self._ideal(parts[2], lineno) if len(parts) > 2 else None
                self.filtrations[name] = (spec, Filtration.symbolic(base, J))
        else:
            raise ValueError(f"line {lineno}: unknown filtration kind {kind!r}")

    def _ideal(self, name: str, lineno=None) -> Ideal:
        if name not in self.ideals:
            where = f"line {lineno}: " if lineno else ""
            raise ValueError(f"{where}unknown ideal {name!r}")
        return self.ideals[name]

    def filtration(self, name: str) -> Filtration:
        if name not in self.filtrations:
            raise ValueError(f"unknown filtration {name!r}")
        return self.filtrations[name][1]

    def canonical_text(self) -> str:
        ctx = self.ctx
        lines = [
            "ring p={} vars={} order={} weights={}".format(
                ctx.p,
                ",".join(ctx.variables),
                self.order_name,
                ",".join(str(w) for w in ctx.weights),
            )
        ]
        for name, ideal_obj in self.ideals.items():
            gens = ", ".join(str(g) for g in ideal_obj.gens) or "0"
            lines.append(f"ideal {name} = {gens}")
        for name, (spec, _) in self.filtrations.items():
            lines.append(f"filtration {name} = {spec}")
        return "\n".join(lines) + "\n"


def _digest(*chunks: str) -> str:
    h = hashlib.sha256()
    for c in chunks:
        h.update(c.encode())
        h.update(b"\x00")
    return h.hexdigest()[:12]


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")


def _load_session(path: str) -> SessionFile:
    with open(path, "r", encoding="utf-8") as fh:
        return SessionFile.parse(fh.read())


def _session_digest(args, *extra) -> str:
    with open(args.file, "r", encoding="utf-8") as fh:
        text = fh.read()
    return _digest(text, *[str(x) for x in extra])


def _gens_json(ideal_obj: Ideal):
    return [str(g) for g in ideal_obj.gb.basis]


def _bounds(ht_val, ell, dim):
    return {
        "ht_le_ell": (ht_val is None) or (ht_val <= ell),
        "ell_le_dim": ell <= dim,
    }


def _scheme_from_args(args) -> fat.FatPointScheme:
    constraint = "elliptic" if args.elliptic else "none"
    r = args.r if args.r is not None else (12 if args.elliptic else 16)
    return fat.sample_scheme(r, 1, constraint, seed=args.seed, p=args.p)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="spreadlab",
        description="Groebner bases, analytic spread, symbolic powers, fat points",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def session_cmd(name, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        sp.add_argument("-f", "--file", required=True, help="session file")
        return sp

    sp = session_cmd("gb", help="reduced Groebner basis of a named ideal")
    sp.add_argument("-i", "--ideal", required=True)

    sp = session_cmd("nf", help="normal form of a polynomial")
    sp.add_argument("-i", "--ideal", required=True)
    sp.add_argument("-e", "--poly", required=True)

    sp = session_cmd("dim", help="Krull dimension of ring/I")
    sp.add_argument("-i", "--ideal", required=True)

    sp = session_cmd("ht", help="height of a proper nonzero ideal")
    sp.add_argument("-i", "--ideal", required=True)

    for name in ("intersect", "quotient", "saturate"):
        sp = session_cmd(name)
        sp.add_argument("-i", "--ideal", required=True)
        sp.add_argument("-j", "--second", required=True)

    sp = session_cmd("closure-monomial", help="integral closure of a monomial ideal")
    sp.add_argument("-i", "--ideal", required=True)

    sp = session_cmd("symbolic", help="symbolic power via saturation")
    sp.add_argument("-i", "--ideal", required=True)
    sp.add_argument("-n", "--power", type=int, required=True)
    sp.add_argument("-j", "--second", default=None)

    sp = session_cmd("ell", help="analytic spread of an ideal")
    sp.add_argument("-i", "--ideal", required=True)

    sp = session_cmd("ell-trunc", help="analytic spread of a truncated filtration")
    sp.add_argument("-F", "--filtration", required=True)
    sp.add_argument("-a", "--bound", type=int, required=True)

    sp = session_cmd("equimult", help="equimultiplicity check")
    sp.add_argument("-i", "--ideal", required=True)

    sp = session_cmd("sp0", help="nilpotency witness for a filtration element")
    sp.add_argument("-F", "--filtration", required=True)
    sp.add_argument("-n", "--level", type=int, required=True)
    sp.add_argument("-e", "--poly", required=True)
    sp.add_argument("-M", "--max-power", type=int, required=True)

    sp = session_cmd("fingen-probe", help="finite-generation evidence probe")
    sp.add_argument("-i", "--ideal", required=True)
    sp.add_argument("-j", "--second", default=None)
    sp.add_argument("-A", "--amax", type=int, default=3)
    sp.add_argument("-N", "--nmax", type=int, default=None)

    fatp = sub.add_parser("fatpoints", help="fat-point interpolation commands")
    fatsub = fatp.add_subparsers(dest="fatcommand", required=True)

    def fat_cmd(name, **kwargs):
        sp = fatsub.add_parser(name, **kwargs)
        sp.add_argument("--seed", type=int, required=True)
        sp.add_argument("--r", type=int, default=None)
        sp.add_argument("--p", type=int, default=DEFAULT_PRIME)
        sp.add_argument("--elliptic", action="store_true")
        return sp

    sp = fat_cmd("h0", help="dimension of a linear system")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)

    sp = fat_cmd("multmap", help="multiplication-map surjectivity")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)

    sp = fat_cmd("contain", help="graded power containment sweep")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", type=int, default=4)
    sp.add_argument("--dmax", type=int, required=True)

    sp = fat_cmd("census", help="surviving fiber generators census")
    sp.add_argument("--nmax", type=int, required=True)
    sp.add_argument("--dmax", type=int, required=True)
    sp.add_argument("--s", type=int, default=4)

    args = parser.parse_args(argv)

    try:
        return _dispatch(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:             # internal failure
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    cmd = args.command

    if cmd == "fatpoints":
        return _dispatch_fatpoints(args)

    session = _load_session(args.file)

    if cmd == "gb":
        I = session._ideal(args.ideal)
        _emit({
            "schema": SCHEMA, "op": "gb",
            "digest": _session_digest(args, args.ideal),
            "gb": _gens_json(I),
        })
        return 0

    if cmd == "nf":
        I = session._ideal(args.ideal)
        f = session.ctx.poly(args.poly)
        _emit({
            "schema": SCHEMA, "op": "nf",
            "digest": _session_digest(args, args.ideal, args.poly),
            "nf": str(normal_form(f, I.gb)),
        })
        return 0

    if cmd == "dim":
        I = session._ideal(args.ideal)
        _emit({
            "schema": SCHEMA, "op": "dim",
            "digest": _session_digest(args, args.ideal),
            "dim": krull_dim(I),
        })
        return 0

    if cmd == "ht":
        I = session._ideal(args.ideal)
        _emit({
            "schema": SCHEMA, "op": "ht",
            "digest": _session_digest(args, args.ideal),
            "ht": height(I),
        })
        return 0

    if cmd in ("intersect", "quotient", "saturate"):
        A = session._ideal(args.ideal)
        B = session._ideal(args.second)
        if cmd == "intersect":
            out = {"gens": _gens_json(intersect(A, B))}
        elif cmd == "quotient":
            out = {"gens": _gens_json(quotient(A, B))}
        else:
            sat, index = saturate(A, B)
            out = {"gens": _gens_json(sat), "saturation_index": index}
        _emit({
            "schema": SCHEMA, "op": cmd,
            "digest": _session_digest(args, args.ideal, args.second),
            **out,
        })
        return 0

    if cmd == "closure-monomial":
        I = session._ideal(args.ideal)
        _emit({
            "schema": SCHEMA, "op": cmd,
            "digest": _session_digest(args, args.ideal),
            "gens": _gens_json(monomial_integral_closure(I)),
        })
        return 0

    if cmd == "symbolic":
        I = session._ideal(args.ideal)
        J = session._ideal(args.second) if args.second else None
        _emit({
            "schema": SCHEMA, "op": "symbolic",
            "digest": _session_digest(args, args.ideal, args.power, args.second),
            "n": args.power,
            "gens": _gens_json(symbolic_power(I, args.power, J)),
        })
        return 0

    if cmd == "ell":
        I = session._ideal(args.ideal)
        report = analytic_spread(I)
        eq = (report.ht == report.ell) if report.ht is not None else None
        _emit({
            "schema": SCHEMA, "op": "ell",
            "digest": _session_digest(args, args.ideal),
            "ell": report.ell, "ht": report.ht, "dim": report.ring_dim,
            "equimultiple": eq,
            "bounds": _bounds(report.ht, report.ell, report.ring_dim),
        })
        return 0

    if cmd == "ell-trunc":
        F = session.filtration(args.filtration)
        report = analytic_spread_truncated(F, args.bound)
        _emit({
            "schema": SCHEMA, "op": "ell-trunc",
            "digest": _session_digest(args, args.filtration, args.bound),
            "a": args.bound,
            "ell": report.ell, "ht": report.ht, "dim": report.ring_dim,
            "witness_e": report.witness_exponent,
            "witness_bound": report.witness_bound,
            "bounds": _bounds(report.ht, report.ell, report.ring_dim),
        })
        return 0

    if cmd == "equimult":
        I = session._ideal(args.ideal)
        rep = equimultiple_check(I)
        _emit({
            "schema": SCHEMA, "op": "equimult",
            "digest": _session_digest(args, args.ideal),
            "equimultiple": rep.equimultiple, "ht": rep.ht, "ell": rep.ell,
        })
        return 0

    if cmd == "sp0":
        F = session.filtration(args.filtration)
        f = session.ctx.poly(args.poly)
        witness = fiber_nilpotency_witness(F, args.level, f, args.max_power)
        _emit({
            "schema": SCHEMA, "op": "sp0",
            "digest": _session_digest(args, args.filtration, args.level,
                                      args.poly, args.max_power),
            "n": args.level, "max_power": args.max_power,
            "witness": witness,
        })
        return 0

    if cmd == "fingen-probe":
        I = session._ideal(args.ideal)
        J = session._ideal(args.second) if args.second else None
        report = finite_generation_probe(I, J, args.amax, args.nmax)
        report = {k: (dict(v) if isinstance(v, dict) else v) for k, v in report.items()}
        for key in ("truncation_matches_symbolic", "truncation_spreads",
                    "truncation_spread_witness", "symbolic_power_spreads"):
            report[key] = {str(k): v for k, v in report[key].items()}
        _emit({
            "schema": SCHEMA, "op": "fingen-probe",
            "digest": _session_digest(args, args.ideal, args.second,
                                      args.amax, args.nmax),
            **report,
        })
        return 0

    raise ValueError(f"unknown command {cmd!r}")


def _dispatch_fatpoints(args) -> int:
    scheme = _scheme_from_args(args)
    base = {
        "schema": SCHEMA,
        "seed": args.seed,
        "r": scheme.r,
        "constraint": "elliptic" if args.elliptic else "none",
        "p": args.p,
    }

    if args.fatcommand == "h0":
        value = fat.h0(scheme, args.d, args.m)
        _emit({
            **base, "op": "fatpoints-h0",
            "digest": _digest("h0", str(scheme.points), str(args.m), str(args.d)),
            "d": args.d, "m": args.m, "h0": value,
        })
        return 0

    if args.fatcommand == "multmap":
        rep = fat.mult_map_surjective(scheme, args.d, args.m)
        _emit({
            **base, "op": "fatpoints-multmap",
            "digest": _digest("multmap", str(scheme.points), str(args.m), str(args.d)),
            "d": args.d, "m": args.m,
            "surjective": rep.surjective,
            "image_dim": rep.image_dim, "target_dim": rep.target_dim,
        })
        return 0

    if args.fatcommand == "contain":
        rep = fat.graded_power_containment(scheme, args.n, args.s, args.dmax)
        rep["degrees"] = {str(k): v for k, v in rep["degrees"].items()}
        _emit({
            **base, "op": "fatpoints-contain",
            "digest": _digest("contain", str(scheme.points), str(args.n),
                              str(args.s), str(args.dmax)),
            **{k: v for k, v in rep.items() if k != "seed"},
        })
        return 0

    if args.fatcommand == "census":
        rep = fat.fiber_generator_census(scheme, args.nmax, args.dmax, args.s)
        rep["survivors"] = [list(t) for t in rep["survivors"]]
        _emit({
            **base, "op": "fatpoints-census",
            "digest": _digest("census", str(scheme.points), str(args.nmax),
                              str(args.dmax), str(args.s)),
            **{k: v for k, v in rep.items() if k != "seed"},
        })
        return 0

    raise ValueError(f"unknown fatpoints command {args.fatcommand!r}")


if __name__ == "__main__":
    sys.exit(main())
