"""Finite-dimensional rational algebras given by structure constants.

Conventions: paths compose left to right, so ``p*q`` means "traverse p, then
q".  Right modules are used throughout, hence the indecomposable projective
at vertex ``v`` is ``e_v A``, spanned by the paths starting at ``v``.

An algebra is *adapted* when every basis element lies in a single corner
``e_s A e_t`` and every idempotent ``e_s`` is itself a basis element.  All
module-level code assumes adapted algebras; ``adapt`` converts any algebra
with a complete set of orthogonal idempotents into that form.
"""
import re
from fractions import Fraction
from itertools import product

from . import qlinalg as ql
from .errors import (IdealIsWholeAlgebra, InfiniteDimensional, MalformedRelation,
                     NonSplitSemisimple)


class Quiver:
    """A finite quiver with optional relations.

    Args:
        vertices: vertex labels, in order.
        arrows: ``(name, source_label, target_label)`` triples.
        relations: path expressions such as ``"a*b - c*d"``.
    """

    def __init__(self, vertices, arrows, relations=()):
        self.vertices = [str(v) for v in vertices]
        if len(set(self.vertices)) != len(self.vertices):
            raise MalformedRelation("duplicate vertex labels")
        index = {v: i for i, v in enumerate(self.vertices)}
        self.arrows = []
        names = set()
        for name, src, tgt in arrows:
            name = str(name)
            if name in names:
                raise MalformedRelation("duplicate arrow name %r" % name)
            if str(src) not in index or str(tgt) not in index:
                raise MalformedRelation("arrow %r has an unknown endpoint" % name)
            names.add(name)
            self.arrows.append((name, index[str(src)], index[str(tgt)]))
        self.relations = [str(r) for r in relations]
        self.arrow_index = {a[0]: i for i, a in enumerate(self.arrows)}
        self.vertex_index = index

    @property
    def n(self):
        return len(self.vertices)

    def path_target(self, path):
        src, arrs = path
        return self.arrows[arrs[-1]][2] if arrs else src

    def is_path(self, src, arrs):
        cur = src
        for a in arrs:
            if self.arrows[a][1] != cur:
                return False
            cur = self.arrows[a][2]
        return True

    def path_label(self, path):
        src, arrs = path
        if not arrs:
            return "e" + self.vertices[src]
        return "*".join(self.arrows[a][0] for a in arrs)

    def parse(self, text):
        """Parse a path expression into ``{(source, arrows): coefficient}``.

        Terms are separated by ``+``/``-``; factors by ``*``.  A factor is an
        integer, a rational ``p/q``, an arrow name, or ``e_<vertex>`` for the
        trivial path at a vertex.
        """
        s = text.replace(" ", "")
        if not s:
            raise MalformedRelation("empty path expression")
        terms = re.findall(r"[+-]?[^+-]+", s)
        if "".join(terms) != s:
            raise MalformedRelation("cannot parse %r" % text)
        out = {}
        for term in terms:
            sign = -1 if term.startswith("-") else 1
            body = term.lstrip("+-")
            coeff = Fraction(sign)
            arrs = []
            vertex = None
            for fac in body.split("*"):
                if not fac:
                    raise MalformedRelation("empty factor in %r" % text)
                if re.fullmatch(r"\d+(/\d+)?", fac):
                    coeff *= Fraction(fac)
                elif fac in self.arrow_index:
                    arrs.append(self.arrow_index[fac])
                elif fac.startswith("e_") and fac[2:] in self.vertex_index:
                    v = self.vertex_index[fac[2:]]
                    if vertex is not None and vertex != v:
                        coeff = Fraction(0)
                    vertex = v
                else:
                    raise MalformedRelation("unknown symbol %r in %r" % (fac, text))
            if not arrs and vertex is None:
                raise MalformedRelation("term %r is a bare scalar" % term)
            src = self.arrows[arrs[0]][1] if arrs else vertex
            if vertex is not None and arrs and vertex not in (src, self.arrows[arrs[-1]][2]):
                coeff = Fraction(0)
            if not self.is_path(src, arrs):
                raise MalformedRelation("%r is not a path" % term)
            if coeff:
                key = (src, tuple(arrs))
                out[key] = out.get(key, 0) + coeff
                if not out[key]:
                    del out[key]
        return out


class Algebra:
    """Associative unital algebra over Q with a structure-constant table.

    Attributes:
        dim: dimension over Q.
        labels: one label per basis element.
        mult: ``mult[i][j]`` is a dict ``{k: c}`` with ``b_i b_j = sum c b_k``.
        idempotents: complete orthogonal primitive idempotents (dense vectors).
        idem_basis: for adapted algebras, the basis index of each idempotent.
        corner: for adapted algebras, ``corner[b] = (s, t)`` with b in e_s A e_t.
        generators: basis indices spanning rad modulo rad^2 (adapted only).
    """

    def __init__(self, labels, mult, idempotents, origin=None, check=True):
        self.dim = len(labels)
        self.labels = list(labels)
        self.mult = mult
        self.origin = origin
        self.idempotents = [list(e) for e in idempotents]
        self.n = len(self.idempotents)
        self.unit = [sum(e[k] for e in self.idempotents) for k in range(self.dim)] \
            if self.idempotents else ([1] if self.dim == 1 else [0] * self.dim)
        self.idem_basis = None
        self.corner = None
        self.generators = None
        self._rad = None
        self._detect_adapted()
        if check:
            self.check()

    # -- basic arithmetic -------------------------------------------------
    def mul(self, x, y):
        out = [0] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.mult[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in row[j].items():
                    out[k] += ab * c
        return out

    def basis_vector(self, i):
        v = [0] * self.dim
        v[i] = 1
        return v

    def element(self, coords):
        return AlgebraElement(self, coords)

    def is_zero_algebra(self):
        return self.dim == 0

    # -- structure ----------------------------------------------------------
    def _detect_adapted(self):
        if self.dim == 0:
            self.idem_basis = []
            self.corner = []
            self.generators = []
            return
        ib = []
        for e in self.idempotents:
            nz = [k for k, x in enumerate(e) if x]
            if len(nz) != 1 or e[nz[0]] != 1:
                return
            ib.append(nz[0])
        corner = []
        for b in range(self.dim):
            found = None
            for s, es in enumerate(ib):
                left = self.mult[es][b]
                if left:
                    for t, et in enumerate(ib):
                        if self.mult[b][et]:
                            found = (s, t)
                            break
                    break
            if found is None:
                return
            corner.append(found)
        self.idem_basis = ib
        self.corner = corner

    @property
    def adapted(self):
        return self.corner is not None

    def check(self, sample=2500):
        """Verify unit, idempotents and (sampled) associativity."""
        d = self.dim
        if d == 0:
            return
        for i in range(d):
            e = self.basis_vector(i)
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                raise ValueError("unit axiom fails at basis element %s" % self.labels[i])
        for i, e in enumerate(self.idempotents):
            for j, f in enumerate(self.idempotents):
                p = self.mul(e, f)
                want = e if i == j else [0] * d
                if p != want:
                    raise ValueError("idempotents are not orthogonal")
        triples = list(product(range(d), repeat=3))
        if len(triples) > sample:
            step = len(triples) // sample + 1
            triples = triples[::step]
        for i, j, k in triples:
            bi, bj, bk = self.basis_vector(i), self.basis_vector(j), self.basis_vector(k)
            if self.mul(self.mul(bi, bj), bk) != self.mul(bi, self.mul(bj, bk)):
                raise ValueError("multiplication is not associative")

    def corner_basis(self, s, t):
        cache = self.__dict__.setdefault("_corner_cache", {})
        key = (s, t)
        if key not in cache:
            cache[key] = [b for b in range(self.dim) if self.corner[b] == key]
        return cache[key]

    def radical(self):
        if self._rad is None:
            self._rad = jacobson_radical(self)
        return self._rad

    def compute_generators(self):
        """Basis elements spanning rad/rad^2 (adapted algebras only)."""
        if self.generators is not None:
            return self.generators
        rad = self.radical()
        prods = []
        for x in rad.basis:
            for y in rad.basis:
                p = self.mul(x, y)
                if any(p):
                    prods.append(p)
        rad2 = ql.Subspace(prods, self.dim) if prods else ql.Subspace.zero(self.dim)
        gens = []
        span = rad2
        for b in range(self.dim):
            if b in self.idem_basis:
                continue
            v = self.basis_vector(b)
            if rad.contains(v) and not span.contains(v):
                gens.append(b)
                span = span + ql.Subspace([v], self.dim)
        if span.dim != rad.dim:
            # radical not spanned by basis elements; fall back to all
            # non-idempotent basis elements, which always generate
            gens = [b for b in range(self.dim) if b not in self.idem_basis]
        self.generators = gens
        return gens

    def corner_dims(self):
        n = self.n
        return [[len(self.corner_basis(s, t)) for t in range(n)] for s in range(n)]


class AlgebraElement:
    __slots__ = ("owner", "coords")

    def __init__(self, owner, coords):
        if len(coords) != owner.dim:
            raise ValueError("coordinate length %d != algebra dimension %d" % (len(coords), owner.dim))
        self.owner = owner
        self.coords = list(coords)

    def __mul__(self, other):
        return AlgebraElement(self.owner, self.owner.mul(self.coords, other.coords))

    def __add__(self, other):
        return AlgebraElement(self.owner, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return AlgebraElement(self.owner, [a - b for a, b in zip(self.coords, other.coords)])

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.owner is other.owner \
            and self.coords == other.coords

    def __repr__(self):
        terms = ["%s*%s" % (c, self.owner.labels[k]) for k, c in enumerate(self.coords) if c]
        return " + ".join(terms) or "0"


# ---------------------------------------------------------------------------
# path algebras

def from_quiver(q, path_cap=30, max_paths=20000):
    """Path algebra of ``q`` modulo its relations.

    Relations must be homogeneous in path length; the ideal is then graded
    and each degree is treated separately.  Enumeration stops at the first
    degree in which every path lies in the ideal.

    Raises:
        MalformedRelation: relation not a combination of parallel paths of
            one common length.
        InfiniteDimensional: no such degree up to ``path_cap``.
    """
    rels = []
    for text in q.relations:
        combo = q.parse(text)
        if not combo:
            continue
        ends = {(src, q.path_target((src, arrs))) for src, arrs in combo}
        lens = {len(arrs) for _, arrs in combo}
        if len(ends) != 1:
            raise MalformedRelation("relation %r mixes paths with different endpoints" % text)
        if len(lens) != 1:
            raise MalformedRelation("relation %r is not homogeneous in path length" % text)
        if 0 in lens:
            raise MalformedRelation("relation %r involves a trivial path" % text)
        rels.append(combo)

    by_len = {0: [(v, ()) for v in range(q.n)]}
    basis_paths = list(by_len[0])
    # per degree: (paths, index, rref rows, pivots, basis columns)
    degree_data = {}
    length = 0
    total = q.n
    while True:
        length += 1
        prev = by_len[length - 1]
        paths = []
        for src, arrs in prev:
            tgt = q.path_target((src, arrs))
            for ai, (_, s, _) in enumerate(q.arrows):
                if s == tgt:
                    paths.append((src, arrs + (ai,)))
        paths.sort()
        total += len(paths)
        if total > max_paths:
            raise InfiniteDimensional("more than %d paths before the relations close up" % max_paths)
        by_len[length] = paths
        if not paths:
            break
        index = {p: i for i, p in enumerate(paths)}
        vecs = []
        for combo in rels:
            k = len(next(iter(combo))[1])
            if k > length:
                continue
            (rs, ra0) = next(iter(combo))
            rt = q.path_target((rs, ra0))
            for l1 in range(length - k + 1):
                l2 = length - k - l1
                lefts = [p for p in by_len[l1] if q.path_target(p) == rs]
                rights = [p for p in by_len[l2] if p[0] == rt]
                for lp, rp in product(lefts, rights):
                    v = [0] * len(paths)
                    for (s, arrs), c in combo.items():
                        full = (lp[0], lp[1] + arrs + rp[1])
                        v[index[full]] += c
                    if any(v):
                        vecs.append(v)
        red, piv = ql.rref(vecs, len(paths)) if vecs else ([], [])
        pivset = set(piv)
        free = [i for i in range(len(paths)) if i not in pivset]
        degree_data[length] = (paths, index, red, piv, free)
        if not free:
            break
        if length > path_cap:
            raise InfiniteDimensional("path length cap %d exceeded" % path_cap)
        basis_paths.extend(paths[i] for i in free)

    bindex = {p: i for i, p in enumerate(basis_paths)}
    dim = len(basis_paths)

    def reduce_path(path):
        src, arrs = path
        if not arrs:
            return {bindex[path]: Fraction(1)}
        L = len(arrs)
        if L not in degree_data:
            return {}
        paths, index, red, piv, free = degree_data[L]
        i = index.get(path)
        if i is None:
            return {}
        if path in bindex:
            return {bindex[path]: Fraction(1)}
        r = piv.index(i)
        row = red[r]
        return {bindex[paths[c]]: -row[c] for c in free if row[c]}

    mult = [[None] * dim for _ in range(dim)]
    for i, p in enumerate(basis_paths):
        tp = q.path_target(p)
        for j, r in enumerate(basis_paths):
            if tp != r[0]:
                mult[i][j] = {}
                continue
            if not p[1]:
                mult[i][j] = {j: Fraction(1)}
            elif not r[1]:
                mult[i][j] = {i: Fraction(1)}
            else:
                mult[i][j] = reduce_path((p[0], p[1] + r[1]))
    idems = [[1 if k == v else 0 for k in range(dim)] for v in range(q.n)]
    labels = [q.path_label(p) for p in basis_paths]
    alg = Algebra(labels, mult, idems, origin=("quiver", q))
    alg.quiver = q
    alg.basis_paths = basis_paths
    alg.reduce_path = reduce_path
    alg.generators = [i for i, p in enumerate(basis_paths) if len(p[1]) == 1]
    alg.vertex_labels = list(q.vertices)
    return alg


def path_algebra_element(alg, text):
    """Algebra element (dense coordinates) of a path expression."""
    combo = alg.quiver.parse(text)
    v = [Fraction(0)] * alg.dim
    for path, c in combo.items():
        for k, x in alg.reduce_path(path).items():
            v[k] += c * x
    return v


def linear_quiver(n, relations=()):
    """The quiver 1 -> 2 -> ... -> n with arrows a1..a(n-1)."""
    verts = [str(i) for i in range(1, n + 1)]
    arrows = [("a%d" % i, str(i), str(i + 1)) for i in range(1, n)]
    return Quiver(verts, arrows, relations)


# ---------------------------------------------------------------------------
# radical, quotients, idempotents

def _trace_vector(a):
    """t_m = trace of left multiplication by b_m."""
    return [sum(a.mult[m][k].get(k, 0) for k in range(a.dim)) for m in range(a.dim)]


def jacobson_radical(a):
    """Radical of the trace form ``(x, y) -> tr(L_{xy})`` (characteristic 0)."""
    d = a.dim
    if d == 0:
        return ql.Subspace.zero(0)
    t = _trace_vector(a)
    form = [[sum(c * t[m] for m, c in a.mult[i][j].items()) for j in range(d)] for i in range(d)]
    return ql.kernel(form, d)


def ideal_closure(a, gens):
    """Two-sided ideal generated by ``gens`` (dense vectors), as a Subspace."""
    d = a.dim
    vecs = []
    for g in gens:
        if not any(g):
            continue
        for i in range(d):
            left = a.mul(a.basis_vector(i), g)
            if not any(left):
                continue
            for j in range(d):
                p = a.mul(left, a.basis_vector(j))
                if any(p):
                    vecs.extend(_split_by_corner(a, p))
    return ql.Subspace(vecs, d) if vecs else ql.Subspace.zero(d)


def _split_by_corner(a, v):
    if not a.adapted:
        return [v]
    parts = {}
    for k, x in enumerate(v):
        if x:
            parts.setdefault(a.corner[k], [0] * a.dim)[k] = x
    return list(parts.values())


def _quotient_table(a, ideal):
    reps = ideal.complement_columns()
    pos = {b: i for i, b in enumerate(reps)}

    def proj(v):
        r = ideal.reduce(v)
        return [r[b] for b in reps]

    mult = [[None] * len(reps) for _ in reps]
    for i, bi in enumerate(reps):
        for j, bj in enumerate(reps):
            img = proj([a.mult[bi][bj].get(k, 0) for k in range(a.dim)])
            mult[i][j] = {k: Fraction(x) for k, x in enumerate(img) if x}
    projection = [proj(a.basis_vector(b)) for b in range(a.dim)]
    return reps, pos, mult, projection, proj


def quotient_by_ideal(a, gens):
    """Quotient of ``a`` by the ideal generated by ``gens``.

    Returns:
        (quotient algebra, projection matrix) where row ``b`` of the matrix is
        the image of basis element ``b``.

    Raises:
        IdealIsWholeAlgebra: the unit lies in the ideal.
    """
    ideal = ideal_closure(a, gens)
    if ideal.contains(a.unit) and a.dim > 0:
        raise IdealIsWholeAlgebra("the generated ideal contains 1")
    reps, pos, mult, projection, proj = _quotient_table(a, ideal)
    idems = []
    for e in a.idempotents:
        pe = proj(e)
        if any(pe):
            idems.append(pe)
    q = Algebra([a.labels[b] for b in reps], mult, idems, origin=("quotient", a))
    q.rep_basis = reps
    q.proj = proj
    return q, projection


def _min_poly(a, x, e):
    """Minimal polynomial of x inside the corner with unit e (low to high)."""
    powers = [list(e)]
    while True:
        nxt = a.mul(powers[-1], x)
        cand = powers + [nxt]
        sol = ql.solve(ql.transpose(powers, a.dim), nxt)
        if sol is not None:
            coeffs = sol[0]
            return [-c for c in coeffs] + [Fraction(1)]
        powers = cand
        if len(powers) > a.dim + 1:
            raise RuntimeError("minimal polynomial search did not terminate")


def _poly_eval(a, coeffs, x, e):
    out = [0] * a.dim
    power = list(e)
    for c in coeffs:
        if c:
            out = [o + c * p for o, p in zip(out, power)]
        power = a.mul(power, x)
    return out


def _split_idempotent(a, e, candidates):
    """Try to write e = f + (e - f) with both nonzero idempotents."""
    import sympy
    t = sympy.Symbol("t")
    for x in candidates:
        if not any(x):
            continue
        mp = _min_poly(a, x, e)
        if len(mp) <= 2:
            continue
        poly = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in mp])), t)
        _, factors = sympy.factor_list(poly.as_expr(), t)
        if len(factors) < 2:
            continue
        h = sympy.Poly(factors[0][0] ** factors[0][1], t)
        g = sympy.Poly(sympy.prod(f ** k for f, k in factors[1:]), t)
        s, _, one = sympy.gcdex(g.as_expr(), h.as_expr(), t)
        f_poly = sympy.Poly(sympy.expand(s * g.as_expr()), t)
        f_poly = sympy.Poly(sympy.rem(f_poly.as_expr(), poly.as_expr(), t), t)
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(f_poly.all_coeffs())]
        f = _poly_eval(a, coeffs, x, e)
        if a.mul(f, f) == f and any(f) and f != list(e):
            return f
    return None


def primitive_idempotents(a, tries=60):
    """Complete set of orthogonal primitive idempotents.

    The stored idempotents are returned when each corner ``e A e`` is local
    with one-dimensional residue.  Otherwise idempotents of the semisimple
    quotient are found by splitting minimal polynomials of corner elements
    and lifted along the radical.

    Raises:
        NonSplitSemisimple: some corner could not be split although its
            semisimple part is not one-dimensional.
    """
    import random
    if a.dim == 0:
        return []
    rad = a.radical()
    if a.idempotents and all(_residue_dim(a, e, rad) == 1 for e in a.idempotents):
        return [list(e) for e in a.idempotents]
    reps, pos, mult, projection, proj = _quotient_table(a, rad)
    semi = Algebra([a.labels[b] for b in reps], mult, [], check=False)
    semi.unit = proj(a.unit)
    rng = random.Random(1729)
    todo = [semi.unit]
    done = []
    while todo:
        e = todo.pop()
        corner = [semi.mul(semi.mul(e, semi.basis_vector(b)), e) for b in range(semi.dim)]
        cdim = ql.rank(corner, semi.dim) if corner else 0
        if cdim <= 1:
            done.append(e)
            continue
        cands = list(corner)
        for _ in range(tries):
            coeffs = [rng.randint(-3, 3) for _ in corner]
            cands.append([sum(c * v[k] for c, v in zip(coeffs, corner)) for k in range(semi.dim)])
        f = _split_idempotent(semi, e, cands)
        if f is None:
            raise NonSplitSemisimple("could not split a corner of dimension %d" % cdim)
        todo.append(f)
        todo.append([x - y for x, y in zip(e, f)])
    # lift along the radical
    lifted = []
    rest = list(a.unit)
    for eb in done[:-1]:
        y = [0] * a.dim
        for i, b in enumerate(reps):
            y[b] = eb[i]
        y = a.mul(a.mul(rest, y), rest)
        for _ in range(64):
            y2 = a.mul(y, y)
            if y2 == y:
                break
            y3 = a.mul(y2, y)
            y = [3 * p - 2 * r for p, r in zip(y2, y3)]
        else:
            raise RuntimeError("idempotent lifting did not converge")
        lifted.append(y)
        rest = [r - x for r, x in zip(rest, y)]
    lifted.append(rest)
    return lifted


def _residue_dim(a, e, rad):
    corner = [a.mul(a.mul(e, a.basis_vector(b)), e) for b in range(a.dim)]
    span = ql.Subspace([c for c in corner if any(c)], a.dim)
    return span.dim - span.intersect(rad).dim


def adapt(a, idempotents=None):
    """Re-express ``a`` in a basis adapted to a complete idempotent set.

    Each diagonal corner starts with its idempotent; every other basis
    element lies in exactly one corner.
    """
    if idempotents is None:
        idempotents = primitive_idempotents(a)
    d = a.dim
    n = len(idempotents)
    rad = jacobson_radical(a)
    newbasis = []
    labels = []
    for s in range(n):
        for t in range(n):
            vecs = []
            for b in range(d):
                v = a.mul(a.mul(idempotents[s], a.basis_vector(b)), idempotents[t])
                if any(v):
                    vecs.append(v)
            chosen = []
            span = ql.Subspace.zero(d)
            if s == t:
                chosen.append(list(idempotents[s]))
                span = ql.Subspace([idempotents[s]], d)
                if vecs:
                    # radical part first so that e_s + rad spans a local corner
                    local_rad = ql.Subspace(vecs, d).intersect(rad)
                    for v in local_rad.basis:
                        if not span.contains(v):
                            chosen.append(list(v))
                            span = span + ql.Subspace([v], d)
            for v in vecs:
                if not span.contains(v):
                    chosen.append(v)
                    span = span + ql.Subspace([v], d)
            for k, v in enumerate(chosen):
                newbasis.append(v)
                labels.append("e%d" % (s + 1) if (s == t and k == 0) else "b%d_%d_%d" % (s + 1, t + 1, k))
    if len(newbasis) != d:
        raise ValueError("idempotents do not decompose the algebra")
    coords = ql.SpanCoords(newbasis, d)
    mult = []
    for x in newbasis:
        row = []
        for y in newbasis:
            c = coords.coords(a.mul(x, y))
            row.append({k: Fraction(v) for k, v in enumerate(c) if v})
        mult.append(row)
    idem_idx = [labels.index("e%d" % (s + 1)) for s in range(n)]
    idems = [[1 if k == i else 0 for k in range(d)] for i in idem_idx]
    out = Algebra(labels, mult, idems, origin=("adapted", a))
    out.change_of_basis = newbasis
    return out


def structure_equal(a, b):
    """Equality of structure-constant tables (same basis order)."""
    if a.dim != b.dim:
        return False
    for i in range(a.dim):
        for j in range(a.dim):
            x = {k: v for k, v in a.mult[i][j].items() if v}
            y = {k: v for k, v in b.mult[i][j].items() if v}
            if x != y:
                return False
    return True


def product_algebra(*dims_labels):
    """Direct product of copies of Q, e.g. ``product_algebra(2)`` is QxQ."""
    n = dims_labels[0] if dims_labels else 1
    mult = [[({i: Fraction(1)} if i == j else {}) for j in range(n)] for i in range(n)]
    idems = [[1 if k == i else 0 for k in range(n)] for i in range(n)]
    return Algebra(["e%d" % (i + 1) for i in range(n)], mult, idems, origin=("product", n))


def from_structure_constants(labels, mult, idempotents=None):
    """Algebra from a raw table; adapted automatically when possible."""
    a = Algebra(labels, mult, idempotents or [], check=idempotents is not None)
    if not idempotents:
        # unit must be recovered: solve for u with u b = b u = b for all b
        d = a.dim
        rows = []
        rhs = []
        for b in range(d):
            for side in (0, 1):
                for k in range(d):
                    row = [0] * d
                    for u in range(d):
                        c = a.mult[u][b].get(k, 0) if side == 0 else a.mult[b][u].get(k, 0)
                        row[u] = c
                    rows.append(row)
                    rhs.append(1 if k == b else 0)
        sol = ql.solve(rows, rhs)
        if sol is None:
            raise ValueError("structure constants define a non-unital algebra")
        a.unit = sol[0]
        a.idempotents = [list(a.unit)]
        a.n = 1
    return adapt(a, primitive_idempotents(a))


def quiver_guess(a):
    """Certify ``a`` as the path algebra of its Gabriel quiver, if it is one.

    Returns:
        A ``Quiver`` when the algebra map from the path algebra of the
        quiver read off rad/rad^2 is an isomorphism, else None.
    """
    if not a.adapted or a.dim == 0:
        return None
    gens = a.compute_generators()
    arrows = []
    for g in gens:
        s, t = a.corner[g]
        arrows.append(("x%d" % (len(arrows) + 1), str(s + 1), str(t + 1)))
    q = Quiver([str(i + 1) for i in range(a.n)], arrows)
    try:
        free = from_quiver(q, path_cap=a.dim + 1, max_paths=10 * a.dim + 10)
    except InfiniteDimensional:
        return None
    if free.dim != a.dim:
        return None
    images = []
    for src, arrs in free.basis_paths:
        if not arrs:
            v = a.basis_vector(a.idem_basis[src])
        else:
            v = a.basis_vector(gens[arrs[0]])
            for k in arrs[1:]:
                v = a.mul(v, a.basis_vector(gens[k]))
        images.append(v)
    if ql.rank(images, a.dim) != a.dim:
        return None
    return q
