"""Scenario files: load, validate, run the requested tasks, check expectations.

A scenario is a YAML mapping; see ``README.md`` for the keys.  Tasks run in
the order they are declared and share lazily computed intermediate results
(generators, ideal, stabilizers), so the report does not depend on which
task asked for something first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import yaml

from . import ideals, invariants, liealg, stabilizer
from .invariants import GeneratorSet, WeightSystem
from .matrices import AffineMap, Matrix, permutation_matrix
from .poly import Polynomial, PolynomialSyntaxError, format_poly, parse_poly

TASKS = ("invariants", "nullcone", "stabilizer", "reductivity", "fiber", "check-map")
SOURCES = ("weights", "contraction", "adjoint_sl", "adjoint_gl", "sym2_vector", "pfaffian_sl4", "explicit")


class ConfigError(ValueError):
    def __init__(self, message: str, key: str | None = None, line: int | None = None):
        where = []
        if key:
            where.append(f"key {key!r}")
        if line:
            where.append(f"line {line}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.key = key
        self.line = line


# ------------------------------------------------------------ YAML loading


class _Mapping(dict):
    """A dict remembering the source line of each key."""

    lines: dict
    line: int | None = None


class _Loader(yaml.SafeLoader):
    pass


def _construct_mapping(loader, node):
    loader.flatten_mapping(node)
    out = _Mapping()
    out.lines = {}
    out.line = node.start_mark.line + 1
    for key_node, value_node in node.value:
        key = loader.construct_object(key_node, deep=True)
        if key in out:
            raise ConfigError("duplicate key", str(key), key_node.start_mark.line + 1)
        out[key] = loader.construct_object(value_node, deep=True)
        out.lines[key] = key_node.start_mark.line + 1
    return out


_Loader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _construct_mapping)


def load_config(text: str) -> dict:
    try:
        data = yaml.load(text, Loader=_Loader)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        raise ConfigError(f"YAML syntax error: {exc.problem}", None, mark.line + 1 if mark else None) from None
    if not isinstance(data, dict):
        raise ConfigError("scenario must be a mapping")
    return data


def _line(mapping, key):
    return getattr(mapping, "lines", {}).get(key) or getattr(mapping, "line", None)


# ------------------------------------------------------------ scenario model


TOP_KEYS = {"name", "summary", "variables", "generators", "degree_bound", "headroom", "fiber", "blocks",
            "maps", "membership", "tasks", "expect"}
FIBER_KEYS = {"constants", "bound", "headroom", "point", "members", "koszul"}
MAP_KEYS = {"name", "target", "matrix", "sparse", "permutation", "derivation", "builtin", "translation",
            "headroom", "expect"}


@dataclass
class MapSpec:
    name: str
    target: str
    map: AffineMap
    headroom: int | None
    expect: bool | None


@dataclass
class Scenario:
    name: str
    gens: GeneratorSet
    source: str
    source_args: dict
    degree_bound: int
    headroom: int
    summary: str = ""
    weights: WeightSystem | None = None
    fiber: dict | None = None
    blocks: list | None = None
    maps: list = field(default_factory=list)
    membership: list = field(default_factory=list)
    tasks: list = field(default_factory=list)
    expect: dict = field(default_factory=dict)
    expect_lines: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.gens.n

    @property
    def names(self) -> tuple:
        return self.gens.names

    def poly(self, text, key="polynomial", line=None) -> Polynomial:
        try:
            return parse_poly(str(text), self.names)
        except PolynomialSyntaxError as exc:
            raise ConfigError(str(exc), key, line) from None


def _int(value, key, line, minimum=None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"expected an integer, got {value!r}", key, line)
    if minimum is not None and value < minimum:
        raise ConfigError(f"must be at least {minimum}", key, line)
    return value


def _frac(value, key, line) -> Fraction:
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"expected a rational number, got {value!r}", key, line) from None


def _check_keys(mapping, allowed, where):
    for k in mapping:
        if k not in allowed:
            raise ConfigError(f"unknown key in {where}", str(k), _line(mapping, k))


def _build_generators(entry, names, line) -> tuple:
    if not isinstance(entry, dict):
        raise ConfigError("'generators' must be a mapping", "generators", line)
    source = entry.get("source")
    if source not in SOURCES:
        raise ConfigError(f"unknown generator source {source!r}; expected one of {', '.join(SOURCES)}",
                          "generators.source", _line(entry, "source") or line)
    allowed = {"source"} | {
        "weights": {"torus_rank", "cyclic_orders", "weights"},
        "contraction": {"n", "p", "q"},
        "adjoint_sl": {"n"},
        "adjoint_gl": {"n"},
        "sym2_vector": {"n"},
        "pfaffian_sl4": set(),
        "explicit": {"polynomials"},
    }[source]
    _check_keys(entry, allowed, f"generators ({source})")

    def need(key, minimum=1):
        if key not in entry:
            raise ConfigError(f"missing required key for source {source!r}", f"generators.{key}", line)
        return _int(entry[key], f"generators.{key}", _line(entry, key), minimum)

    ws = None
    if source == "weights":
        if "weights" not in entry:
            raise ConfigError("missing required key for source 'weights'", "generators.weights", line)
        orders = entry.get("cyclic_orders", [])
        k = entry.get("torus_rank", 0 if orders else 1)
        try:
            ws = WeightSystem(k, tuple(orders), tuple(tuple(w) if isinstance(w, list) else (w,)
                                                     for w in entry["weights"]))
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc), "generators.weights", _line(entry, "weights")) from None
        return source, {"weights": ws}, ws
    if source == "contraction":
        return source, {"n": need("n"), "p": need("p"), "q": need("q")}, None
    if source in ("adjoint_sl", "adjoint_gl", "sym2_vector"):
        return source, {"n": need("n", 2)}, None
    if source == "pfaffian_sl4":
        return source, {}, None
    polys = entry.get("polynomials")
    if not isinstance(polys, list) or not polys:
        raise ConfigError("explicit source needs a non-empty 'polynomials' list", "generators.polynomials", line)
    if not names:
        raise ConfigError("explicit source needs 'variables'", "variables", line)
    out = []
    for text in polys:
        try:
            out.append(parse_poly(str(text), names))
        except PolynomialSyntaxError as exc:
            raise ConfigError(str(exc), "generators.polynomials", _line(entry, "polynomials")) from None
    return source, {"polynomials": out}, None


def make_generators(source: str, args: dict, names, degree_bound: int) -> GeneratorSet:
    if source == "weights":
        return invariants.minimal_monomial_generators(args["weights"], degree_bound, names)
    if source == "contraction":
        gens = invariants.contraction_generators(args["n"], args["p"], args["q"])
    elif source == "adjoint_sl":
        gens = invariants.adjoint_trace_generators(args["n"], False)
    elif source == "adjoint_gl":
        gens = invariants.adjoint_trace_generators(args["n"], True)
    elif source == "sym2_vector":
        gens = invariants.sym2_vector_generators(args["n"])
    elif source == "pfaffian_sl4":
        gens = invariants.pfaffian_scenario_generators()
    else:
        polys = args["polynomials"]
        gens = GeneratorSet(polys[0].n, tuple(polys), tuple(names))
    if names:
        if len(names) != gens.n:
            raise ConfigError(f"{len(names)} variable names for ambient dimension {gens.n}", "variables")
        gens = GeneratorSet(gens.n, gens.generators, tuple(names), gens.blocks)
    return gens


_FIELD_TERM = re.compile(
    r"^(?:(?P<coef>\d+(?:/\d+)?)\*)?(?:(?P<var>[A-Za-z_]\w*)\*)?d/d(?P<target>[A-Za-z_]\w*)$")


def parse_vector_field(text: str, names) -> AffineMap:
    """Parse ``"x*d/dy - 2*y*d/dz + d/dx"`` into the matrix/translation of the field."""
    index = {nm: i for i, nm in enumerate(names)}
    n = len(names)
    entries, trans = [], [Fraction(0)] * n
    compact = text.replace(" ", "")
    if not compact:
        raise ValueError("empty vector field")
    for sign, body in re.findall(r"([+-]?)([^+-]+)", compact):
        mt = _FIELD_TERM.match(body)
        if not mt or mt.group("target") not in index or (mt.group("var") and mt.group("var") not in index):
            raise ValueError(f"cannot read vector field term {body!r}")
        c = Fraction(mt.group("coef") or 1) * (-1 if sign == "-" else 1)
        i = index[mt.group("target")]
        if mt.group("var"):
            entries.append((i, index[mt.group("var")], c))
        else:
            trans[i] += c
    return AffineMap(Matrix.from_sparse(n, entries), trans)


def _read_matrix(entry, sc: Scenario, key: str, line) -> AffineMap:
    """A map given as ``matrix``, ``sparse``, ``permutation``, ``derivation`` or ``builtin``."""
    n = sc.n
    if isinstance(entry, str):
        entry = {"derivation": entry} if "d/d" in entry else {"builtin": entry}
    kinds = [k for k in ("matrix", "sparse", "permutation", "derivation", "builtin") if k in entry]
    if len(kinds) != 1:
        raise ConfigError("give exactly one of matrix, sparse, permutation, derivation, builtin", key, line)
    kind = kinds[0]
    val = entry[kind]
    try:
        if kind == "matrix":
            M = AffineMap(Matrix(val))
        elif kind == "sparse":
            M = AffineMap(Matrix.from_sparse(n, val))
        elif kind == "permutation":
            M = AffineMap(permutation_matrix(val))
        elif kind == "derivation":
            M = parse_vector_field(val, sc.names)
        else:
            M = AffineMap(_builtin_matrix(val, sc))
        if "translation" in entry:
            M = AffineMap(M.linear, entry["translation"])
    except (ValueError, TypeError, IndexError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad matrix: {exc}", key, line) from None
    if M.n != n:
        raise ConfigError(f"matrix acts on dimension {M.n}, scenario on {n}", key, line)
    return M


def _builtin_matrix(name: str, sc: Scenario) -> Matrix:
    if name == "identity":
        return Matrix.identity(sc.n)
    if name == "transposition" and sc.source in ("adjoint_sl", "adjoint_gl"):
        return invariants.transposition_map(sc.source_args["n"], sc.source == "adjoint_gl")
    raise ValueError(f"unknown builtin {name!r} for source {sc.source!r}")


def build_scenario(data: dict, degree_bound: int | None = None, headroom: int | None = None,
                   tasks: list | None = None) -> Scenario:
    _check_keys(data, TOP_KEYS, "scenario")
    for key in ("name", "generators"):
        if key not in data:
            raise ConfigError("missing required key", key, getattr(data, "line", None))
    names = data.get("variables")
    if names is not None:
        if isinstance(names, str):
            names = list(names)
        if not isinstance(names, list) or not all(isinstance(v, str) for v in names):
            raise ConfigError("'variables' must be a list of names", "variables", _line(data, "variables"))
        if len(set(names)) != len(names):
            raise ConfigError("variable names must be distinct", "variables", _line(data, "variables"))
    source, args, ws = _build_generators(data["generators"], names, _line(data, "generators"))
    bound = degree_bound if degree_bound is not None else _int(
        data.get("degree_bound", 4), "degree_bound", _line(data, "degree_bound"), 1)
    if bound < 1:
        raise ConfigError("must be at least 1", "degree_bound")
    try:
        gens = make_generators(source, args, names, bound)
    except ConfigError as exc:
        raise ConfigError(str(exc).split(" (")[0], exc.key, _line(data, "variables")) from None
    except ValueError as exc:
        raise ConfigError(str(exc), "generators", _line(data, "generators")) from None
    if not gens.generators:
        raise ConfigError("no invariant generators up to the degree bound", "degree_bound",
                          _line(data, "degree_bound"))
    hr = headroom if headroom is not None else data.get("headroom")
    if hr is None:
        hr = ideals.default_headroom(gens)
    hr = _int(hr, "headroom", _line(data, "headroom"), 0)

    sc = Scenario(name=str(data["name"]), gens=gens, source=source, source_args=args, degree_bound=bound,
                  headroom=hr, summary=str(data.get("summary", "")), weights=ws)

    if "fiber" in data:
        fib = data["fiber"]
        fl = _line(data, "fiber")
        if not isinstance(fib, dict):
            raise ConfigError("'fiber' must be a mapping", "fiber", fl)
        _check_keys(fib, FIBER_KEYS, "fiber")
        consts = fib.get("constants")
        if not isinstance(consts, list):
            raise ConfigError("fiber needs a 'constants' list", "fiber.constants", fl)
        if len(consts) != len(gens):
            raise ConfigError(f"{len(consts)} constants for {len(gens)} generators", "fiber.constants",
                              _line(fib, "constants"))
        fiber = {"constants": [_frac(c, "fiber.constants", _line(fib, "constants")) for c in consts],
                 "bound": _int(fib.get("bound", bound), "fiber.bound", _line(fib, "bound"), 0),
                 "headroom": hr if headroom is not None else _int(fib.get("headroom", hr), "fiber.headroom",
                                                                  _line(fib, "headroom"), 0)}
        if "point" in fib:
            pt = fib["point"]
            if not isinstance(pt, list) or len(pt) != gens.n:
                raise ConfigError(f"point must list {gens.n} coordinates", "fiber.point", _line(fib, "point"))
            fiber["point"] = [_frac(v, "fiber.point", _line(fib, "point")) for v in pt]
        fiber["members"] = [sc.poly(t, "fiber.members", _line(fib, "members")) for t in fib.get("members", [])]
        kz = []
        for item in fib.get("koszul", []):
            if not isinstance(item, dict) or "multipliers" not in item:
                raise ConfigError("koszul entries need 'multipliers'", "fiber.koszul", _line(fib, "koszul"))
            mult = [sc.poly(t, "fiber.koszul", _line(fib, "koszul")) for t in item["multipliers"]]
            if len(mult) != len(gens):
                raise ConfigError("one multiplier per generator", "fiber.koszul", _line(fib, "koszul"))
            kz.append({"multipliers": mult, "expect": item.get("expect")})
        fiber["koszul"] = kz
        sc.fiber = fiber

    if "blocks" in data:
        blocks = data["blocks"]
        bl = _line(data, "blocks")
        if (not isinstance(blocks, list)
                or not all(isinstance(b, list) and len(b) == 2 and all(isinstance(v, int) for v in b)
                           for b in blocks)):
            raise ConfigError("blocks must be a list of [dimension, multiplicity] pairs", "blocks", bl)
        if sum(d * m for d, m in blocks) != gens.n:
            raise ConfigError(f"blocks cover {sum(d * m for d, m in blocks)} coordinates, ambient is {gens.n}",
                              "blocks", bl)
        sc.blocks = [tuple(b) for b in blocks]

    for k, item in enumerate(data.get("maps", [])):
        ml = getattr(item, "line", None) or _line(data, "maps")
        if not isinstance(item, dict):
            raise ConfigError("map entries must be mappings", f"maps[{k}]", ml)
        _check_keys(item, MAP_KEYS, f"maps[{k}]")
        target = item.get("target", "nullcone")
        if target not in ("nullcone", "fiber"):
            raise ConfigError("target must be 'nullcone' or 'fiber'", f"maps[{k}].target", ml)
        if target == "fiber" and sc.fiber is None:
            raise ConfigError("fiber target needs a 'fiber' section", f"maps[{k}].target", ml)
        entry = {key: v for key, v in item.items() if key in ("matrix", "sparse", "permutation", "derivation",
                                                            "builtin", "translation")}
        M = _read_matrix(entry, sc, f"maps[{k}]", ml)
        if not M.linear.is_invertible():
            raise ConfigError("map is not invertible", f"maps[{k}]", ml)
        expect = item.get("expect")
        if expect is not None and not isinstance(expect, bool):
            raise ConfigError("expect must be true or false", f"maps[{k}].expect", ml)
        mh = item.get("headroom")
        sc.maps.append(MapSpec(str(item.get("name", f"map{k}")), target, M,
                               None if mh is None else _int(mh, f"maps[{k}].headroom", ml, 0), expect))

    for k, item in enumerate(data.get("membership", [])):
        ml = getattr(item, "line", None) or _line(data, "membership")
        if not isinstance(item, dict) or "poly" not in item:
            raise ConfigError("membership entries need 'poly'", f"membership[{k}]", ml)
        sc.membership.append({"poly": sc.poly(item["poly"], f"membership[{k}]", ml), "expect": item.get("expect")})

    declared = tasks or data.get("tasks") or list(TASKS)
    for t in declared:
        if t not in TASKS:
            raise ConfigError(f"unknown task {t!r}; expected one of {', '.join(TASKS)}", "tasks",
                              _line(data, "tasks"))
    sc.tasks = list(dict.fromkeys(declared))

    expect = data.get("expect", {})
    if not isinstance(expect, dict):
        raise ConfigError("'expect' must be a mapping", "expect", _line(data, "expect"))
    for key in expect:
        if key not in EXPECTATIONS:
            raise ConfigError("unknown expectation", f"expect.{key}", _line(expect, key))
    sc.expect = dict(expect)
    sc.expect_lines = dict(getattr(expect, "lines", {}))
    return sc


# ------------------------------------------------------------ serialisation


def mat_json(A: Matrix) -> list:
    return A.to_strings()


def affine_json(M: AffineMap) -> dict:
    return {"linear": mat_json(M.linear), "translation": [str(v) for v in M.translation]}


def verdict_json(v) -> dict:
    out = {"verdict": v.name, "radical_dim": v.radical_dim}
    if isinstance(v, liealg.NonReductive):
        out["nilpotent_dim"] = v.nilpotent_dim
        out["witness"] = mat_json(v.witness)
    elif isinstance(v, liealg.Indeterminate):
        out["reason"] = v.reason
    else:
        out["nilpotent_dim"] = 0
    return out


# ------------------------------------------------------------ running


class Context:
    """Lazily computed objects shared by the tasks of one scenario."""

    def __init__(self, sc: Scenario):
        self.sc = sc
        self._cache: dict = {}

    def get(self, key: str, make: Callable):
        if key not in self._cache:
            self._cache[key] = make()
        return self._cache[key]

    @property
    def ideal(self) -> ideals.GradedIdeal:
        return self.get("ideal", lambda: ideals.nullcone_ideal(self.sc.gens))

    @property
    def g0(self):
        return self.get("g0", lambda: stabilizer.annihilator_algebra(self.sc.gens))

    @property
    def h0(self):
        return self.get("h0", lambda: stabilizer.ideal_stabilizer_algebra(self.ideal))

    def algebra(self, which: str) -> liealg.MatrixLieAlgebra:
        res = self.g0 if which == "g0" else self.h0
        return self.get(f"L_{which}", lambda: liealg.MatrixLieAlgebra.from_result(res))

    @property
    def fiber_ideal(self) -> ideals.FiberIdeal:
        return self.get("fiber", lambda: ideals.FiberIdeal(self.sc.gens, self.sc.fiber["constants"]))

    def fmt(self, f: Polynomial) -> str:
        return format_poly(f, self.sc.names)


def representation_images(sc: Scenario) -> list | None:
    """Lie algebra of the acting group, as matrices on the scenario's space."""
    a = sc.source_args
    if sc.source == "weights":
        ws = sc.weights
        return [Matrix.diag([w[c] for w in ws.weights]) for c in range(ws.torus_rank)]
    if sc.source == "contraction":
        return [invariants.contraction_rep(a["n"], a["p"], a["q"], Y)
                for Y in invariants.sl_basis(a["n"]) + [Matrix.identity(a["n"])]]
    if sc.source in ("adjoint_sl", "adjoint_gl"):
        return [invariants.adjoint_rep(a["n"], Y, sc.source == "adjoint_gl") for Y in invariants.sl_basis(a["n"])]
    if sc.source == "sym2_vector":
        return [invariants.sym2_vector_rep(a["n"], Y) for Y in invariants.sl_basis(a["n"])]
    if sc.source == "pfaffian_sl4":
        return [invariants.pfaffian_rep(Y) for Y in invariants.sl_basis(4)]
    return None


def task_invariants(ctx: Context) -> dict:
    sc = ctx.sc
    out: dict = {"generators": sc.gens.format(), "degrees": list(sc.gens.degrees)}
    if sc.gens.blocks:
        out["multidegrees"] = [sorted(g.multidegree(sc.gens.blocks))[0] for g in sc.gens]
        out["multidegrees"] = [list(m) for m in out["multidegrees"]]
        out["multihomogeneous"] = all(len(g.multidegree(sc.gens.blocks)) == 1 for g in sc.gens)
    if sc.weights is not None:
        out["saturated_up_to_bound"] = invariants.generated_up_to(sc.weights, sc.gens, sc.degree_bound)
        out["degree_bound"] = sc.degree_bound
    reps = representation_images(sc)
    if reps is not None:
        out["annihilated_by_representation"] = all(stabilizer.satisfies_annihilator(sc.gens, A) for A in reps)
    return out


def task_nullcone(ctx: Context) -> dict:
    sc = ctx.sc
    I = ctx.ideal
    bound = sc.degree_bound
    out: dict = {
        "piece_dims": [I.dim(d) for d in range(bound + 1)],
        "quotient_dims": [I.quotient_dim(d) for d in range(bound + 1)],
        "hilbert_prediction": [ideals.hilbert_prediction(I.degrees, sc.n, d) for d in range(bound + 1)],
        "piece_bases": {str(d): [ctx.fmt(b) for b in I.basis(d)] for d in sorted(set(I.degrees))},
    }
    rs = ideals.regular_sequence_check(sc.gens, bound)
    out["regular_sequence"] = _regseq_json(rs)
    queries = []
    for q in sc.membership:
        res = ideals.membership(q["poly"], I)
        entry = {"poly": ctx.fmt(q["poly"]), "member": bool(res)}
        if res:
            entry["certificate"] = res.format(sc.names)
        else:
            entry["residual"] = ctx.fmt(res.residual)
        queries.append(entry)
    out["membership"] = queries
    return out


def _regseq_json(rs) -> dict:
    if isinstance(rs, ideals.RegularUpTo):
        return {"verdict": "RegularUpTo", "bound": rs.bound}
    return {"verdict": "NotRegular", "degree": rs.degree, "expected": rs.expected, "actual": rs.actual,
            "reason": rs.reason}


def task_stabilizer(ctx: Context) -> dict:
    sc = ctx.sc
    g0, h0 = ctx.g0, ctx.h0
    out = {
        "annihilator": {"dimension": g0.dimension, "basis": [mat_json(A) for A in g0.basis],
                        "closed": liealg.close_check(g0.basis)[0] if g0.basis else True},
        "ideal_stabilizer": {"dimension": h0.dimension, "basis": [mat_json(A) for A in h0.basis],
                             "closed": liealg.close_check(h0.basis)[0],
                             "piece_dims": h0.summary.get("piece_dims")},
        "annihilator_in_stabilizer": all(stabilizer.span_contains(h0, A) for A in g0.basis),
    }
    if sc.blocks:
        out["commutant_check"] = stabilizer.commutant_check(h0, g0, sc.blocks)
        out["blocks"] = [list(b) for b in sc.blocks]
    return out


def task_reductivity(ctx: Context) -> dict:
    out = {}
    for which in ("h0", "g0"):
        L = ctx.algebra(which)
        if L.dim == 0:
            out[which] = {"verdict": "Reductive", "radical_dim": 0, "nilpotent_dim": 0, "derived_series": [0]}
            continue
        v = ctx.get(f"verdict_{which}", lambda: liealg.reductivity_verdict(L))
        entry = verdict_json(v)
        entry["derived_series"] = liealg.derived_series(L)
        rad = ctx.get(f"radical_{which}", lambda: liealg.radical(L))
        entry["radical_basis"] = [mat_json(A) for A in rad.basis]
        out[which] = entry
    return out


def task_fiber(ctx: Context) -> dict:
    sc = ctx.sc
    if sc.fiber is None:
        raise ValueError("scenario has no 'fiber' section")
    F = ctx.fiber_ideal
    fb = sc.fiber
    h = fb["headroom"]
    out: dict = {"constants": [str(c) for c in fb["constants"]], "headroom": h, "bound": fb["bound"]}
    cmp = ideals.graded_comparison(F, fb["bound"], h)
    out["graded_comparison"] = ({"result": "EqualUpTo", "bound": cmp.bound} if isinstance(cmp, ideals.EqualUpTo)
                                else {"result": "Witness", "degree": cmp.degree, "form": ctx.fmt(cmp.form)})
    out["leading_form_dims"] = [len(ideals.leading_form_space(F, d, h)) for d in range(fb["bound"] + 1)]
    out["regular_sequence"] = _regseq_json(ideals.regular_sequence_check(sc.gens, max(fb["bound"], 1)))
    aff = ctx.get("affine", lambda: stabilizer.affine_stabilizer_algebra(F, h))
    out["affine_stabilizer"] = {
        "dimension": aff.dimension,
        "vanishing_dimension": len(aff.vanishing),
        "effective_dimension": aff.effective_dimension,
        "translation_rank": aff.translation_rank(),
        "translations_zero_modulo_vanishing": aff.translations_vanish_modulo_trivial(),
        "headroom": aff.headroom,
        "basis": [affine_json(b) for b in aff.basis],
        "vanishing_basis": [affine_json(b) for b in aff.vanishing],
    }
    if "point" in fb:
        pt = fb["point"]
        out["point"] = [str(v) for v in pt]
        out["point_on_fiber"] = all(g.evaluate(pt) == c for g, c in zip(sc.gens, fb["constants"]))
        out["jacobian_rank"] = ideals.jacobian_rank_at(sc.gens, pt)
    members = []
    for f in fb["members"]:
        res = ideals.truncated_membership(f, F, h)
        entry = {"poly": ctx.fmt(f), "certified": bool(res)}
        if res:
            entry["certificate"] = res.format(sc.names)
        members.append(entry)
    out["members"] = members
    kz = []
    for item in fb["koszul"]:
        entry = {"multipliers": [ctx.fmt(a) for a in item["multipliers"]]}
        try:
            red = ideals.koszul_reduce(item["multipliers"], sc.gens, fb["constants"])
            entry["result"] = "reduced"
            entry["reduced"] = [ctx.fmt(a) for a in red]
        except ideals.SyzygyNotKoszul as exc:
            entry["result"] = "SyzygyNotKoszul"
            entry["degree"] = exc.degree
        kz.append(entry)
    out["koszul"] = kz
    return out


def task_check_map(ctx: Context) -> dict:
    sc = ctx.sc
    rows = []
    for m in sc.maps:
        if m.target == "nullcone":
            res = ideals.map_preserves_ideal(m.map, ctx.ideal)
        else:
            res = ideals.map_preserves_ideal(m.map, ctx.fiber_ideal,
                                             m.headroom if m.headroom is not None else sc.fiber["headroom"])
        entry = {"name": m.name, "target": m.target, "preserved": bool(res), "map": affine_json(m.map)}
        if isinstance(res, ideals.NotPreservedAtHeadroom):
            entry["undetermined_at_headroom"] = res.headroom
        if m.expect is not None:
            entry["expected"] = m.expect
        rows.append(entry)
    return {"maps": rows}


TASK_FUNCS = {
    "invariants": task_invariants,
    "nullcone": task_nullcone,
    "stabilizer": task_stabilizer,
    "reductivity": task_reductivity,
    "fiber": task_fiber,
    "check-map": task_check_map,
}


# ------------------------------------------------------------ expectations


def _canon_polys(sc: Scenario, texts) -> list:
    return sorted(format_poly(sc.poly(t, "expect"), sc.names) for t in texts)


def _matrix_arg(sc: Scenario, entry) -> Matrix:
    return _read_matrix(entry, sc, "expect", None).linear


def _in_span(basis_json, A: Matrix) -> bool:
    from . import linalg
    return linalg.span_contains([Matrix(b).vector() for b in basis_json], [A.vector()])


def _witness_support(W: Matrix) -> list:
    return [[i, j] for i, r in enumerate(W.rows) for j, v in enumerate(r) if v]


def _check_equal(actual, expected) -> bool:
    return actual == expected


@dataclass
class Expectation:
    task: str
    extract: Callable  # (results, scenario, expected) -> (actual, passed)


def _simple(task: str, path: tuple, normalize: Callable | None = None) -> Expectation:
    def extract(res, sc, expected):
        val = res
        for p in path:
            val = val[p]
        exp = normalize(sc, expected) if normalize else expected
        return val, val == exp
    return Expectation(task, extract)


def _gens_expect(res, sc, expected):
    actual = sorted(res["generators"])
    return actual, actual == _canon_polys(sc, expected)


def _contains_expect(task, algebra_key):
    def extract(res, sc, expected):
        basis = res[algebra_key[0]][algebra_key[1]]
        found = [bool(_in_span(basis, _matrix_arg(sc, entry))) for entry in expected]
        return found, all(found)
    return Expectation(task, extract)


def _witness_expect(which):
    def extract(res, sc, expected):
        entry = res[which]
        if "witness" not in entry:
            return None, False
        W = Matrix(entry["witness"])
        if isinstance(expected, dict) and "rows" in expected:
            support = _witness_support(W)
            ok = all(i in expected["rows"] and j in expected["cols"] for i, j in support)
            return support, ok
        target = _matrix_arg(sc, expected)
        off = Matrix([[0 if i == j else v for j, v in enumerate(r)] for i, r in enumerate(W.rows)])
        from . import linalg
        ok = not off.is_zero() and linalg.rank([off.vector(), target.vector()]) == 1
        return entry["witness"], ok
    return Expectation("reductivity", extract)


def _radical_contains(which):
    def extract(res, sc, expected):
        basis = res[which]["radical_basis"]
        found = [bool(_in_span(basis, _matrix_arg(sc, entry))) for entry in expected]
        return found, all(found)
    return Expectation("reductivity", extract)


def _members_expect(res, sc, expected):
    certified = {m["poly"]: m["certified"] for m in res["members"]}
    want = _canon_polys(sc, expected)
    actual = [certified.get(p, False) for p in want]
    return actual, all(actual)


def _membership_expect(res, sc, expected):
    actual = {q["poly"]: q["member"] for q in res["membership"]}
    want = {format_poly(sc.poly(k, "expect"), sc.names): v for k, v in expected.items()}
    got = {k: actual.get(k) for k in want}
    return got, got == want


def _maps_expect(res, sc, expected):
    actual = {m["name"]: m["preserved"] for m in res["maps"]}
    got = {k: actual.get(k) for k in expected}
    return got, got == expected


def _koszul_expect(res, sc, expected):
    actual = [k["result"] for k in res["koszul"]]
    return actual, actual == expected


EXPECTATIONS: dict = {
    "generators": Expectation("invariants", _gens_expect),
    "degrees": _simple("invariants", ("degrees",)),
    "multidegrees": _simple("invariants", ("multidegrees",)),
    "annihilated_by_representation": _simple("invariants", ("annihilated_by_representation",)),
    "saturated_up_to_bound": _simple("invariants", ("saturated_up_to_bound",)),
    "piece_dims": _simple("nullcone", ("piece_dims",)),
    "regular_sequence": Expectation("nullcone", lambda r, sc, e: (
        r["regular_sequence"], all(r["regular_sequence"].get(k) == v for k, v in e.items()))),
    "membership": Expectation("nullcone", _membership_expect),
    "annihilator_dim": _simple("stabilizer", ("annihilator", "dimension")),
    "stabilizer_dim": _simple("stabilizer", ("ideal_stabilizer", "dimension")),
    "stabilizer_closed": _simple("stabilizer", ("ideal_stabilizer", "closed")),
    "annihilator_in_stabilizer": _simple("stabilizer", ("annihilator_in_stabilizer",)),
    "commutant": _simple("stabilizer", ("commutant_check",)),
    "stabilizer_contains": _contains_expect("stabilizer", ("ideal_stabilizer", "basis")),
    "annihilator_contains": _contains_expect("stabilizer", ("annihilator", "basis")),
    "h0_verdict": _simple("reductivity", ("h0", "verdict")),
    "g0_verdict": _simple("reductivity", ("g0", "verdict")),
    "h0_radical_dim": _simple("reductivity", ("h0", "radical_dim")),
    "g0_radical_dim": _simple("reductivity", ("g0", "radical_dim")),
    "h0_nilpotent_dim": _simple("reductivity", ("h0", "nilpotent_dim")),
    "g0_nilpotent_dim": _simple("reductivity", ("g0", "nilpotent_dim")),
    "h0_derived_series": _simple("reductivity", ("h0", "derived_series")),
    "h0_witness": _witness_expect("h0"),
    "g0_witness": _witness_expect("g0"),
    "h0_radical_contains": _radical_contains("h0"),
    "g0_radical_contains": _radical_contains("g0"),
    "graded_comparison": Expectation("fiber", lambda r, sc, e: (
        r["graded_comparison"],
        all((format_poly(sc.poly(v, "expect"), sc.names) if k == "form" else v) == r["graded_comparison"].get(k)
            for k, v in e.items()))),
    "fiber_regular_sequence": Expectation("fiber", lambda r, sc, e: (
        r["regular_sequence"], all(r["regular_sequence"].get(k) == v for k, v in e.items()))),
    "affine_dim": _simple("fiber", ("affine_stabilizer", "dimension")),
    "affine_vanishing_dim": _simple("fiber", ("affine_stabilizer", "vanishing_dimension")),
    "affine_effective_dim": _simple("fiber", ("affine_stabilizer", "effective_dimension")),
    "affine_translation_rank": _simple("fiber", ("affine_stabilizer", "translation_rank")),
    "affine_translations_zero": _simple("fiber", ("affine_stabilizer", "translations_zero_modulo_vanishing")),
    "jacobian_rank": _simple("fiber", ("jacobian_rank",)),
    "point_on_fiber": _simple("fiber", ("point_on_fiber",)),
    "fiber_members": Expectation("fiber", _members_expect),
    "koszul": Expectation("fiber", _koszul_expect),
    "maps": Expectation("check-map", _maps_expect),
}


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def run_scenario(sc: Scenario) -> dict:
    """Run the declared tasks (plus those the expectations need) and check expectations."""
    ctx = Context(sc)
    needed = list(sc.tasks)
    for key in sc.expect:
        t = EXPECTATIONS[key].task
        if t not in needed:
            needed.append(t)
    if sc.maps and "check-map" not in needed and any(m.expect is not None for m in sc.maps):
        needed.append("check-map")
    tasks = []
    results: dict = {}
    for t in needed:
        entry: dict = {"task": t}
        try:
            results[t] = TASK_FUNCS[t](ctx)
            entry["status"] = "ok"
            entry["results"] = _jsonable(results[t])
        except Exception as exc:  # recorded per task; siblings still run
            entry["status"] = "error"
            entry["error"] = f"{type(exc).__name__}: {exc}"
        tasks.append(entry)

    checks = []
    for key, expected in sc.expect.items():
        exp = EXPECTATIONS[key]
        if exp.task not in results:
            checks.append({"key": key, "task": exp.task, "expected": _jsonable(expected), "actual": None,
                           "passed": False, "line": sc.expect_lines.get(key)})
            continue
        try:
            actual, ok = exp.extract(results[exp.task], sc, expected)
        except (KeyError, ConfigError, ValueError) as exc:
            actual, ok = f"error: {exc}", False
        checks.append({"key": key, "task": exp.task, "expected": _jsonable(expected), "actual": _jsonable(actual),
                       "passed": bool(ok), "line": sc.expect_lines.get(key)})
    if "check-map" in results:
        for m in results["check-map"]["maps"]:
            if "expected" in m:
                checks.append({"key": f"map:{m['name']}", "task": "check-map", "expected": m["expected"],
                               "actual": m["preserved"], "passed": m["expected"] == m["preserved"], "line": None})
    if "nullcone" in results:
        for q, entry in zip(results["nullcone"]["membership"], sc.membership):
            if entry["expect"] is not None:
                checks.append({"key": f"member:{q['poly']}", "task": "nullcone", "expected": entry["expect"],
                               "actual": q["member"], "passed": entry["expect"] == q["member"], "line": None})
    passed = all(c["passed"] for c in checks) and all(t["status"] == "ok" for t in tasks)
    return {
        "scenario": sc.name,
        "summary": sc.summary,
        "ambient_dim": sc.n,
        "variables": list(sc.names),
        "degree_bound": sc.degree_bound,
        "headroom": sc.headroom,
        "tasks": tasks,
        "expectations": checks,
        "passed": passed,
    }


def load_scenario(path_or_text: str, *, is_text: bool = False, **overrides) -> Scenario:
    text = path_or_text if is_text else open(path_or_text, encoding="utf-8").read()
    return build_scenario(load_config(text), **overrides)

