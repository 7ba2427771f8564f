"""TOML input files for algebras and complexes.

Algebra file::

    [quiver]
    vertices = [1, 2, 3, 4]
    arrows = [["a1", 1, 2], ["a2", 2, 3], ["a3", 3, 4]]
    relations = []

Complex file (one table per indecomposable summand, U_1 first)::

    [[summand]]
    minus = [4]          # vertices of the degree -1 projectives
    zero = [3]           # vertices of the degree 0 projectives
    differential = [["a3"]]   # rows follow `zero`, columns follow `minus`
"""
import sys

from . import algebra as al
from . import cpx2
from .errors import InputError, MalformedRelation

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


def _load(path):
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise InputError("%s: file not found" % path)
    except tomllib.TOMLDecodeError as exc:
        # the decoder message already carries "(at line L, column C)"
        raise InputError("%s: %s" % (path, exc))


def _loads(text, name):
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise InputError("%s: %s" % (name, exc))


def algebra_from_data(data, where="<algebra>"):
    q = data.get("quiver")
    if not isinstance(q, dict):
        raise InputError("%s: missing [quiver] table" % where)
    verts = q.get("vertices")
    if not isinstance(verts, list) or not verts:
        raise InputError("%s: quiver.vertices must be a non-empty list" % where)
    arrows = q.get("arrows", [])
    for k, arr in enumerate(arrows):
        if not isinstance(arr, list) or len(arr) != 3:
            raise InputError("%s: quiver.arrows[%d] must be [name, source, target]" % (where, k))
    rels = q.get("relations", [])
    try:
        quiver = al.Quiver(verts, [tuple(x) for x in arrows], rels)
        return al.from_quiver(quiver)
    except MalformedRelation as exc:
        raise MalformedRelation("%s: %s" % (where, exc))


def load_algebra(path):
    return algebra_from_data(_load(path), path)


def _vertex(a, label, where):
    idx = a.quiver.vertex_index.get(str(label))
    if idx is None:
        raise InputError("%s: unknown vertex %r" % (where, label))
    return idx


def complexes_from_data(a, data, where="<complex>"):
    """List of indecomposable TwoTerm summands in file order."""
    out = []
    for k, tbl in enumerate(data.get("summand", [])):
        here = "%s: summand %d" % (where, k + 1)
        minus = [_vertex(a, v, here) for v in tbl.get("minus", [])]
        zero = [_vertex(a, v, here) for v in tbl.get("zero", [])]
        diff = tbl.get("differential", [])
        if minus and zero:
            if len(diff) != len(zero) or any(len(r) != len(minus) for r in diff):
                raise InputError("%s: differential must be %d x %d" % (here, len(zero), len(minus)))
        mat = []
        for r, row in enumerate(diff):
            mrow = []
            for c, text in enumerate(row):
                try:
                    vec = al.path_algebra_element(a, str(text)) if str(text).strip() not in ("", "0") \
                        else [0] * a.dim
                except MalformedRelation as exc:
                    raise InputError("%s, differential[%d][%d]: %s" % (here, r, c, exc))
                mrow.append(cpx2._sparse(vec))
            mat.append(mrow)
        try:
            x = cpx2.TwoTerm(a, minus, zero, mat if (minus and zero) else None)
        except ValueError as exc:
            raise InputError("%s: %s" % (here, exc))
        out.append(x)
    return out


def load_complexes(a, path):
    return complexes_from_data(a, _load(path), path)


def algebra_from_text(text, name="<algebra>"):
    return algebra_from_data(_loads(text, name), name)


def complexes_from_text(a, text, name="<complex>"):
    return complexes_from_data(a, _loads(text, name), name)
