"""Job files: a YAML description of one deformation problem.

Example::

    ring: [x, y, z, t]
    branch: x^8 + y^8 + z^8 + t^8
    degree: 8
    loci:
      - name: P0
        point: [0, 0, 0, 1]          # or generators: [x, y, z]
        multiplicity: 4
      - name: Cx
        generators: [x, y^2*z^2 + y^2*t^2 + z^2*t^2]
        multiplicity: 2
        rule: {y: y, z: z, t: t}     # divide d/dy by y, ...
    transverse_curves:
      - name: Cx
        generators: [x, y^2*z^2 + y^2*t^2 + z^2*t^2]
        node_count: 3
    euler_number: 24
    options: {symbolic_powers: false, saturate: true, order: degrevlex, verbosity: 0}
    metadata: {source: free text carried into the report}

``saturate: false`` keeps the raw graded summands I(C)^m + J instead of
their saturations. Unknown keys are rejected; every error carries a
line/column.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import yaml

from .deform import DeformationProblem, JacobianRule, SingularLocus, TransverseCurve, point_ideal_generators
from .errors import DeformError, JobParseError, PolynomialSyntaxError, UnknownVariable
from .ring import RingCtx, format_poly, order_from_name

TOP_KEYS = {"ring", "branch", "degree", "loci", "transverse_curves", "euler_number", "options", "metadata"}
LOCUS_KEYS = {"name", "generators", "point", "multiplicity", "rule", "saturate_by"}
CURVE_KEYS = {"name", "generators", "node_count"}
OPTION_KEYS = {"symbolic_powers", "saturate", "order", "verbosity", "truncate"}


@dataclass(frozen=True)
class JobOptions:
    symbolic_powers: bool = False
    saturate: bool = True
    order: str = "degrevlex"
    verbosity: int = 0
    truncate: bool = True


@dataclass(frozen=True)
class Job:
    problem: DeformationProblem
    options: JobOptions
    name: str = "job"


class _Node:
    """A YAML value plus the position it came from."""

    __slots__ = ("value", "line", "column")

    def __init__(self, value, mark):
        self.value = value
        self.line = mark.line + 1
        self.column = mark.column + 1

    def error(self, message):
        return JobParseError(message, self.line, self.column)


def _wrap(node, loader):
    if isinstance(node, yaml.MappingNode):
        out = {}
        for knode, vnode in node.value:
            key = loader.construct_object(knode)
            if not isinstance(key, str):
                raise JobParseError(f"keys must be strings, got {key!r}", knode.start_mark.line + 1,
                                    knode.start_mark.column + 1)
            if key in out:
                raise JobParseError(f"duplicate key {key!r}", knode.start_mark.line + 1, knode.start_mark.column + 1)
            out[key] = (_Node(key, knode.start_mark), _wrap(vnode, loader))
        return _Node(out, node.start_mark)
    if isinstance(node, yaml.SequenceNode):
        return _Node([_wrap(v, loader) for v in node.value], node.start_mark)
    return _Node(loader.construct_object(node), node.start_mark)


def _load_tree(text: str) -> _Node:
    loader = yaml.SafeLoader(text)
    try:
        root = loader.get_single_node()
        if root is None:
            raise JobParseError("empty job file", 1, 1)
        return _wrap(root, loader)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        raise JobParseError(f"YAML error: {exc.problem}", mark.line + 1 if mark else None,
                            mark.column + 1 if mark else None) from None
    finally:
        loader.dispose()


def _mapping(node: _Node, allowed: set, what: str) -> dict:
    if not isinstance(node.value, dict):
        raise node.error(f"{what} must be a mapping")
    for key, (knode, _) in node.value.items():
        if key not in allowed:
            raise knode.error(f"unknown key {key!r} in {what}; allowed: {', '.join(sorted(allowed))}")
    return {k: v for k, (_, v) in node.value.items()}


def _require(fields: dict, key: str, parent: _Node, what: str) -> _Node:
    if key not in fields:
        raise parent.error(f"{what} is missing required key {key!r}")
    return fields[key]


def _sequence(node: _Node, what: str) -> list:
    if not isinstance(node.value, list):
        raise node.error(f"{what} must be a list")
    return node.value


def _integer(node: _Node, what: str) -> int:
    if isinstance(node.value, bool) or not isinstance(node.value, int):
        raise node.error(f"{what} must be an integer")
    return node.value


def _poly(node: _Node, ring: RingCtx, what: str):
    v = node.value
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise node.error(f"{what} must be a polynomial")
    try:
        return ring.parse(str(v))
    except PolynomialSyntaxError as exc:
        col = node.column + (exc.position or 0)
        raise JobParseError(f"{what}: {exc}", node.line, col) from None
    except (UnknownVariable, DeformError) as exc:
        raise node.error(f"{what}: {exc}") from None


def _name(node: _Node, what: str) -> str:
    if not isinstance(node.value, (str, int)) or isinstance(node.value, bool):
        raise node.error(f"{what} must be a string")
    return str(node.value)


def parse_job(text: str, name: str = "job") -> Job:
    root = _load_tree(text)
    top = _mapping(root, TOP_KEYS, "job")

    ring_node = _require(top, "ring", root, "job")
    try:
        ring = RingCtx(_name(v, "variable") for v in _sequence(ring_node, "ring"))
    except ValueError as exc:
        raise ring_node.error(str(exc)) from None

    branch = _poly(_require(top, "branch", root, "job"), ring, "branch")
    degree_node = _require(top, "degree", root, "job")
    degree = _integer(degree_node, "degree")

    options = JobOptions()
    if "options" in top:
        opts = _mapping(top["options"], OPTION_KEYS, "options")
        kw = {}
        for key in ("symbolic_powers", "saturate", "truncate"):
            if key in opts:
                if not isinstance(opts[key].value, bool):
                    raise opts[key].error(f"options.{key} must be true or false")
                kw[key] = opts[key].value
        if "order" in opts:
            try:
                order_from_name(str(opts["order"].value))
            except ValueError as exc:
                raise opts["order"].error(str(exc)) from None
            kw["order"] = str(opts["order"].value)
        if "verbosity" in opts:
            kw["verbosity"] = _integer(opts["verbosity"], "options.verbosity")
        options = JobOptions(**kw)

    loci = []
    for item in _sequence(top["loci"], "loci") if "loci" in top and top["loci"].value is not None else []:
        fields = _mapping(item, LOCUS_KEYS, "locus")
        lname = _name(_require(fields, "name", item, "locus"), "locus name")
        if ("generators" in fields) == ("point" in fields):
            raise item.error(f"locus {lname}: give exactly one of 'generators' or 'point'")
        if "point" in fields:
            coords = []
            for c in _sequence(fields["point"], "point"):
                value = _poly(c, ring, "point coordinate")
                if not value.is_constant():
                    raise c.error("point coordinates must be rational numbers")
                coords.append(value.coefficient((0,) * ring.n))
            try:
                gens = point_ideal_generators(ring, coords)
            except ValueError as exc:
                raise fields["point"].error(str(exc)) from None
        else:
            gens = [_poly(g, ring, f"locus {lname} generator") for g in _sequence(fields["generators"], "generators")]
        mult = _integer(_require(fields, "multiplicity", item, "locus"), "multiplicity")
        rule = JacobianRule()
        if "rule" in fields and fields["rule"].value is not None:
            rnode = fields["rule"]
            if not isinstance(rnode.value, dict):
                raise rnode.error("rule must be a mapping variable -> monomial")
            mapping = {}
            for var, (knode, vnode) in rnode.value.items():
                if var not in ring.variables:
                    raise knode.error(f"rule names unknown variable {var!r}")
                mapping[var] = _poly(vnode, ring, f"rule divisor for {var}")
            try:
                rule = JacobianRule.from_mapping(ring, mapping)
            except ValueError as exc:
                raise rnode.error(str(exc)) from None
        sat = _poly(fields["saturate_by"], ring, "saturate_by") if "saturate_by" in fields else None
        try:
            loci.append(SingularLocus(lname, tuple(gens), mult, rule, sat))
        except (ValueError, DeformError) as exc:
            raise item.error(str(exc)) from None

    curves = []
    if "transverse_curves" in top and top["transverse_curves"].value is not None:
        for item in _sequence(top["transverse_curves"], "transverse_curves"):
            fields = _mapping(item, CURVE_KEYS, "transverse curve")
            cname = _name(_require(fields, "name", item, "transverse curve"), "curve name")
            gens = [_poly(g, ring, f"curve {cname} generator")
                    for g in _sequence(_require(fields, "generators", item, "transverse curve"), "generators")]
            nodes = _integer(fields["node_count"], "node_count") if "node_count" in fields else 0
            try:
                curves.append(TransverseCurve(cname, tuple(gens), nodes))
            except ValueError as exc:
                raise item.error(str(exc)) from None

    euler = None
    if "euler_number" in top and top["euler_number"].value is not None:
        euler = _integer(top["euler_number"], "euler_number")

    metadata = ()
    if "metadata" in top and top["metadata"].value is not None:
        if not isinstance(top["metadata"].value, dict):
            raise top["metadata"].error("metadata must be a mapping")
        metadata = tuple((k, _plain(v)) for k, (_, v) in top["metadata"].value.items())

    try:
        problem = DeformationProblem(
            ring, branch, degree, tuple(loci), tuple(curves), euler, options.symbolic_powers, metadata,
            saturate=options.saturate,
        )
    except (ValueError, DeformError) as exc:
        raise degree_node.error(str(exc)) from None
    return Job(problem, options, name)


def _plain(node: _Node):
    v = node.value
    if isinstance(v, dict):
        return {k: _plain(val) for k, (_, val) in v.items()}
    if isinstance(v, list):
        return [_plain(x) for x in v]
    return v


def load_job(path) -> Job:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise JobParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_job(text, name=path.stem)


def dump_job(job: Job) -> str:
    """Re-emit a job; ``parse_job(dump_job(j))`` gives an equal problem."""
    p = job.problem
    data = {
        "ring": list(p.ring.variables),
        "branch": format_poly(p.branch),
        "degree": p.degree,
    }
    if p.loci:
        data["loci"] = []
        for L in p.loci:
            entry = {
                "name": L.name,
                "generators": [format_poly(g) for g in L.generators],
                "multiplicity": L.multiplicity,
            }
            if L.rule:
                entry["rule"] = L.rule.as_mapping(p.ring)
            if L.saturate_by is not None:
                entry["saturate_by"] = format_poly(L.saturate_by)
            data["loci"].append(entry)
    if p.transverse_curves:
        data["transverse_curves"] = [
            {"name": c.name, "generators": [format_poly(g) for g in c.generators], "node_count": c.node_count}
            for c in p.transverse_curves
        ]
    if p.euler_number is not None:
        data["euler_number"] = p.euler_number
    data["options"] = {
        "symbolic_powers": job.options.symbolic_powers,
        "saturate": job.options.saturate,
        "order": job.options.order,
        "verbosity": job.options.verbosity,
        "truncate": job.options.truncate,
    }
    if p.metadata:
        data["metadata"] = dict(p.metadata)
    return yaml.safe_dump(data, sort_keys=False, width=10_000)
