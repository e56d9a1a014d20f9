"""
JSON algebra descriptions and the JSON encoding of scalars and tensors.

Scalars are always strings ("-3", "2/7", "4") so nothing ever passes
through a float.
"""

import hashlib
import json

from frobspace.algebra import STOCK, Algebra, Quiver, check_valid, path_algebra
from frobspace.errors import ParseError
from frobspace.linalg import Matrix
from frobspace.rings import ring_from_json


def scalar_str(ring, x):
    return ring.format(x)


def vector_json(ring, v):
    return [ring.format(x) for x in v]


def matrix_json(m):
    return [[m.ring.format(x) for x in row] for row in m.rows]


def matrix_from_json(ring, rows, n=None):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("expected a nested list of scalar strings")
    m = Matrix(ring, [[ring.parse(x) for x in r] for r in rows], n if not rows else None)
    if n is not None and m.shape != (n, n):
        raise ParseError("expected a %d x %d array, got %s" % (n, n, m.shape))
    return m


def digest(data):
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _need(obj, key, kind):
    if key not in obj:
        raise ParseError("missing %r in %s" % (key, kind))
    return obj[key]


def algebra_from_json(obj, validate=True):
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object")
    ring = ring_from_json(_need(obj, "scalars", "file"))
    alg = _need(obj, "algebra", "file")
    if not isinstance(alg, dict):
        raise ParseError("'algebra' must be an object")
    kind = _need(alg, "kind", "algebra")
    name = str(obj.get("name", alg.get("name", kind)))
    if kind == "structure_constants":
        n = _need(alg, "dim", "algebra")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ParseError("dim must be a positive integer")
        unit = _need(alg, "unit", "algebra")
        table = _need(alg, "table", "algebra")
        try:
            if len(unit) != n or len(table) != n or any(
                    len(row) != n or any(len(cell) != n for cell in row) for row in table):
                raise ParseError("unit/table do not match dim %d" % n)
            unit = [ring.parse(x) for x in unit]
            table = [[[ring.parse(x) for x in cell] for cell in row] for row in table]
        except TypeError:
            raise ParseError("unit/table must be nested lists of scalar strings") from None
        a = Algebra(ring, table, unit, alg.get("labels"), name)
    elif kind == "quiver":
        arrows = []
        for ar in _need(alg, "arrows", "quiver"):
            if not isinstance(ar, dict):
                raise ParseError("arrows must be objects with name/src/tgt")
            arrows.append((_need(ar, "name", "arrow"), _need(ar, "src", "arrow"),
                           _need(ar, "tgt", "arrow")))
        q = Quiver(_need(alg, "vertices", "quiver"), arrows, alg.get("relations", []))
        a = path_algebra(q, ring, name=name)
    elif kind == "stock":
        family = _need(alg, "family", "stock algebra")
        if family not in STOCK:
            raise ParseError("unknown stock family %r (known: %s)" % (family, ", ".join(STOCK)))
        m = _need(alg, "m", "stock algebra")
        if not isinstance(m, int) or m < 1:
            raise ParseError("m must be a positive integer")
        a = STOCK[family](m, ring)
    else:
        raise ParseError("unknown algebra kind %r" % (kind,))
    if validate:
        check_valid(a)
    return a


def parse_spec(path, validate=True):
    """Read an algebra description file and return the validated Algebra."""
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        obj = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ParseError("%s: %s" % (path, e)) from None
    return algebra_from_json(obj, validate)


def algebra_to_json(a, name=None):
    """Structure-constant description of ``a`` (round-trips through algebra_from_json)."""
    return {
        "name": name or a.name,
        "scalars": a.ring.to_json(),
        "algebra": {
            "kind": "structure_constants",
            "dim": a.n,
            "labels": list(a.labels),
            "unit": vector_json(a.ring, a.unit),
            "table": [[vector_json(a.ring, cell) for cell in row] for row in a.table],
        },
    }

