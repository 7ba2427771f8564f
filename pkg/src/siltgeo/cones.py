"""Rational polyhedral cones and finite generalized fans.

A cone is stored in both representations:

* V: ``lineality`` (a Subspace) plus ``rays`` taken orthogonal to the
  lineality, primitive and sorted;
* H: ``equations`` (primitive basis of the orthogonal complement of the span)
  and facet ``normals`` projected into the span, primitive and sorted.

Both are canonical, so ``key`` identifies a cone exactly.
"""
from fractions import Fraction
from itertools import combinations

from . import qlinalg as ql
from .errors import SaturationViolated


def _dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def _orth_project(v, sub):
    """Orthogonal projection of v onto the Subspace ``sub``."""
    if sub.dim == 0:
        return [0] * len(v)
    b = [list(r) for r in sub.basis]
    gram = [[_dot(x, y) for y in b] for x in b]
    rhs = [_dot(x, v) for x in b]
    sol = ql.solve(gram, rhs)
    coeffs = sol[0]
    out = [0] * len(v)
    for c, x in zip(coeffs, b):
        if c:
            for i, y in enumerate(x):
                out[i] += c * y
    return out


def _orth_reduce(v, sub):
    p = _orth_project(v, sub)
    return [x - y for x, y in zip(v, p)]


def _double_description(ambient, ineqs, eqs):
    """Generators of {x : a.x >= 0 (a in ineqs), e.x = 0 (e in eqs)}.

    Returns (lineality basis, rays); rays extreme modulo the lineality.
    """
    lin = ql.kernel(eqs, ambient).basis if eqs else ql.Subspace.full(ambient).basis
    lin = [list(v) for v in lin]
    rays = []          # list of vectors
    zsets = []         # tight inequality index sets
    done = []
    for ai, a in enumerate(ineqs):
        a = list(a)
        piv = next((l for l in lin if _dot(a, l)), None)
        if piv is not None:
            s = _dot(a, piv)
            if s < 0:
                piv = [-x for x in piv]
                s = -s
            newlin = []
            for l in lin:
                if l is piv:
                    continue
                t = _dot(a, l)
                newlin.append([x - Fraction(t, 1) / s * y for x, y in zip(l, piv)] if t else l)
            lin = [list(v) for v in ql.Subspace(newlin, ambient).basis] if newlin else []
            newrays = []
            for r in rays:
                t = _dot(a, r)
                newrays.append([x - t / s * y for x, y in zip(r, piv)] if t else r)
            rays = newrays + [piv]
            # the new ray is tight on nothing processed before except those vanishing on it
            zsets = [z | {ai} for z in zsets] + [{i for i in done if not _dot(ineqs[i], piv)}]
            done.append(ai)
            continue
        pos, neg, zero = [], [], []
        for k, r in enumerate(rays):
            t = _dot(a, r)
            (pos if t > 0 else neg if t < 0 else zero).append(k)
        newrays = [rays[k] for k in pos + zero]
        newz = [zsets[k] for k in pos] + [zsets[k] | {ai} for k in zero]
        for p in pos:
            for n in neg:
                common = zsets[p] & zsets[n]
                adjacent = True
                for k in range(len(rays)):
                    if k != p and k != n and common <= zsets[k]:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                tp, tn = _dot(a, rays[p]), _dot(a, rays[n])
                v = [tp * x - tn * y for x, y in zip(rays[n], rays[p])]
                newrays.append(list(ql.primitive(v)))
                newz.append(common | {ai})
        rays, zsets = newrays, newz
        done.append(ai)
    return lin, rays


def _primitive_int(v):
    return ql.primitive(v)


def _canonical_rays(rays, linsub):
    out = set()
    for r in rays:
        p = _orth_reduce(list(r), linsub) if linsub.dim else list(r)
        if any(p):
            out.add(_primitive_int(p))
    return out


def _int_basis(sub):
    return tuple(sorted(_primitive_int(v) for v in sub.basis))


class RatCone:
    """Rational polyhedral cone with dual representations."""

    __slots__ = ("ambient", "rays", "normals", "lineality", "equations", "_key",
                 "_faces", "_span", "_dim")

    def __init__(self, ambient, rays, lineality):
        """Internal: use ``from_rays`` / ``from_inequalities``."""
        self.ambient = ambient
        self.lineality = lineality
        self.rays = tuple(sorted(rays))
        span_vecs = [list(r) for r in self.rays] + [list(v) for v in lineality.basis]
        self._span = ql.Subspace(span_vecs, ambient) if span_vecs else ql.Subspace.zero(ambient)
        self._dim = self._span.dim
        self.equations = _int_basis(self._span.perp())
        self.normals = ()
        self._key = (ambient, lineality.basis, self.rays)
        self._faces = None

    # -- constructors ----------------------------------------------------
    @classmethod
    def from_rays(cls, rays, lineality=(), ambient=None):
        """Cone generated by ``rays`` plus the span of ``lineality``."""
        rays = [list(r) for r in rays]
        lin_in = [list(v) for v in lineality]
        if ambient is None:
            ambient = len(rays[0]) if rays else len(lin_in[0])
        # dual cone: a.r >= 0, a.l = 0
        dlin, drays = _double_description(ambient, rays, lin_in)
        normals = [list(v) for v in drays]
        eqs = [list(v) for v in dlin]
        cone = cls._from_h(ambient, normals, eqs)
        # certify: extreme rays of the result come from the input
        linsub = cone.lineality
        given = _canonical_rays(rays, linsub)
        if not set(cone.rays) <= given:
            raise ArithmeticError("double description round trip failed")
        gl = ql.Subspace(lin_in, ambient) if lin_in else ql.Subspace.zero(ambient)
        if not gl.issubset(linsub):
            raise ArithmeticError("lineality lost in double description")
        return cone

    @classmethod
    def from_inequalities(cls, normals, equations=(), ambient=None):
        """Cone {x : n.x >= 0 for n in normals, e.x = 0 for e in equations}."""
        normals = [list(n) for n in normals]
        equations = [list(e) for e in equations]
        if ambient is None:
            ambient = len(normals[0]) if normals else len(equations[0])
        return cls._from_h(ambient, normals, equations)

    @classmethod
    def _from_h(cls, ambient, normals, equations):
        lin, rays = _double_description(ambient, normals, equations)
        linsub = ql.Subspace(lin, ambient) if lin else ql.Subspace.zero(ambient)
        cr = _canonical_rays(rays, linsub)
        cone = cls(ambient, cr, linsub)
        cone._set_normals(normals)
        for r in cone.rays:
            if any(_dot(n, r) < 0 for n in normals) or any(_dot(e, r) for e in equations):
                raise ArithmeticError("ray violates its defining inequalities")
        return cone

    @classmethod
    def whole(cls, ambient):
        return cls(ambient, set(), ql.Subspace.full(ambient))

    @classmethod
    def origin(cls, ambient):
        return cls(ambient, set(), ql.Subspace.zero(ambient))

    def _set_normals(self, normals):
        """Keep facet-defining normals, projected into the span."""
        facet_sets = {}
        target = self._dim - self.lineality.dim - 1
        for n in normals:
            tight = frozenset(i for i, r in enumerate(self.rays) if not _dot(n, r))
            if len(tight) == len(self.rays):
                continue
            if target > 0:
                rk = ql.rank([list(self.rays[i]) for i in tight], self.ambient) if tight else 0
                if rk != target:
                    continue
            elif tight:
                continue
            facet_sets.setdefault(tight, n)
        out = set()
        for n in facet_sets.values():
            p = _orth_project(n, self._span)
            out.add(_primitive_int(p))
        self.normals = tuple(sorted(out))

    def _ensure_normals(self):
        if self.normals or self._dim == self.lineality.dim:
            return
        dlin, drays = _double_description(self.ambient, [list(r) for r in self.rays],
                                          [list(v) for v in self.lineality.basis])
        self._set_normals([list(v) for v in drays])

    # -- queries ---------------------------------------------------------
    @property
    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, RatCone) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return "RatCone(dim=%d, rays=%s, lineality=%d)" % (self.dim, list(self.rays), self.lineality.dim)

    @property
    def dim(self):
        return self._dim

    @property
    def facet_normals(self):
        self._ensure_normals()
        return self.normals

    def contains(self, v):
        if any(_dot(e, v) for e in self.equations):
            return False
        return all(_dot(n, v) >= 0 for n in self.facet_normals)

    def contains_relint(self, v):
        if any(_dot(e, v) for e in self.equations):
            return False
        return all(_dot(n, v) > 0 for n in self.facet_normals)

    def relative_interior_point(self):
        p = [0] * self.ambient
        for r in self.rays:
            p = [x + y for x, y in zip(p, r)]
        return p

    def is_subset(self, other):
        return all(other.contains(list(r)) for r in self.rays) and \
            all(other.contains(list(v)) and other.contains([-x for x in v]) for v in self.lineality.basis)

    def intersect(self, other):
        normals = list(self.facet_normals) + list(other.facet_normals)
        eqs = list(self.equations) + list(other.equations)
        if not normals and not eqs:
            return RatCone.whole(self.ambient)
        return RatCone.from_inequalities(normals, eqs, ambient=self.ambient)

    def generators(self):
        """(rays, lineality basis) with integer entries."""
        return [list(r) for r in self.rays], [list(v) for v in _int_basis(self.lineality)]

    def image(self, mat):
        """Image under x -> x @ mat."""
        k = len(mat[0]) if mat else 0
        rays = [ql.vecmat(list(r), mat, k) for r in self.rays]
        lin = [ql.vecmat(list(v), mat, k) for v in self.lineality.basis]
        rays = [r for r in rays if any(r)]
        lin = [v for v in lin if any(v)]
        if not rays and not lin:
            return RatCone.origin(k)
        return RatCone.from_rays(rays, lin, ambient=k)

    # -- faces -------------------------------------------------------------
    def faces(self):
        """All faces, as RatCones, sorted by (dim, key)."""
        if self._faces is not None:
            return self._faces
        normals = self.facet_normals
        nrays = len(self.rays)
        zsets = [frozenset(i for i in range(nrays) if not _dot(n, self.rays[i])) for n in normals]
        full = frozenset(range(nrays))
        seen = {full}
        todo = [full]
        while todo:
            cur = todo.pop()
            for z in zsets:
                nxt = cur & z
                if nxt != cur and nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        out = []
        for s in seen:
            if s == full:
                out.append(self)
            else:
                out.append(RatCone(self.ambient, {self.rays[i] for i in s}, self.lineality))
        for f in out:
            if f is not self:
                f._ensure_normals()
        out.sort(key=lambda c: (c.dim, c.key))
        self._faces = out
        return out

    def facets(self):
        return [f for f in self.faces() if f.dim == self.dim - 1]

    def to_json(self):
        rays, lin = self.generators()
        return {"rays": rays, "normals": [list(n) for n in self.facet_normals],
                "lineality": lin, "equations": [list(e) for e in self.equations]}


def face_counts(cone):
    counts = {}
    for f in cone.faces():
        counts[f.dim] = counts.get(f.dim, 0) + 1
    return counts


# ---------------------------------------------------------------------------
# generalized fans

class GenFan:
    """A finite set of cones; ``close()`` adds all faces."""

    def __init__(self, cones, ambient):
        self.ambient = ambient
        uniq = {}
        for c in cones:
            uniq.setdefault(c.key, c)
        self.cones = sorted(uniq.values(), key=lambda c: (c.dim, c.key))

    def keys(self):
        return {c.key for c in self.cones}

    def close(self):
        allc = {}
        for c in self.cones:
            for f in c.faces():
                allc.setdefault(f.key, f)
        return GenFan(list(allc.values()), self.ambient)

    def maximal(self):
        out = []
        for c in self.cones:
            if not any(c is not d and c.dim < d.dim and c.is_subset(d) for d in self.cones):
                out.append(c)
        return out

    def __eq__(self, other):
        return isinstance(other, GenFan) and self.keys() == other.keys()

    def __len__(self):
        return len(self.cones)

    def to_json(self):
        return [c.to_json() for c in self.cones]


def fan_check(fan):
    """(is_fan, is_complete) by face closure, pairwise intersections and facet sharing."""
    keys = fan.keys()
    for c in fan.cones:
        for f in c.faces():
            if f.key not in keys:
                return False, False
    mx = fan.maximal()
    for c1, c2 in combinations(mx, 2):
        inter = c1.intersect(c2)
        f1 = {f.key for f in c1.faces()}
        f2 = {f.key for f in c2.faces()}
        if inter.key not in f1 or inter.key not in f2:
            return False, False
    n = fan.ambient
    if not mx or any(c.dim != n for c in mx):
        return True, False
    for c in mx:
        for f in c.facets():
            shared = sum(1 for d in mx if d is not c and any(g.key == f.key for g in d.facets()))
            if shared != 1:
                return True, False
    return True, True


def common_refinement(f1, f2):
    cones = {}
    for a in f1.maximal():
        for b in f2.maximal():
            c = a.intersect(b)
            if c.dim == f1.ambient:
                cones.setdefault(c.key, c)
    return GenFan(list(cones.values()), f1.ambient).close()


def kernel_of_map(mat, n):
    """Kernel of x -> x @ mat on Q^n as a list of vectors."""
    if not mat or not mat[0]:
        return [list(v) for v in ql.Subspace.full(n).basis]
    return [list(v) for v in ql.left_kernel(mat, n).basis]


def is_saturated(cone, mat, support):
    """f^{-1}(f(cone)) meets the support exactly in ``cone``."""
    ker = kernel_of_map(mat, cone.ambient)
    lin = [list(v) for v in cone.lineality.basis] + ker
    rays = [list(r) for r in cone.rays]
    if not rays and not lin:
        big = RatCone.origin(cone.ambient)
    else:
        big = RatCone.from_rays(rays, lin, ambient=cone.ambient)
    for g in support:
        inter = big.intersect(g)
        if not inter.is_subset(cone):
            return False
    return True


def fan_image(cones, mat, support, check=True):
    """Images of ``cones`` under x -> x @ mat, requiring saturation.

    Args:
        cones: cones to map.
        mat: integer matrix (ambient x k).
        support: maximal cones whose union is the support X.

    Raises:
        SaturationViolated: some cone fails f^{-1}(f(c)) cap X = c.
    """
    k = len(mat[0]) if mat else 0
    out = []
    for c in cones:
        if check and not is_saturated(c, mat, support):
            raise SaturationViolated("cone %s is not saturated" % (list(c.rays),))
        out.append(c.image(mat))
    return GenFan(out, k)


# ---------------------------------------------------------------------------
# SVG output

def _plane_basis(normal):
    sub = ql.Subspace([list(normal)], len(normal)).perp()
    basis = [list(v) for v in sub.basis]
    # Gram-Schmidt without normalisation
    ortho = []
    for v in basis:
        w = list(v)
        for u in ortho:
            c = Fraction(_dot(w, u), _dot(u, u))
            w = [x - c * y for x, y in zip(w, u)]
        ortho.append(w)
    return ortho


def _oblique(coords):
    """Exact oblique projection of slice coordinates to the drawing plane."""
    x = coords[0] if coords else Fraction(0)
    y = coords[1] if len(coords) > 1 else Fraction(0)
    for k, c in enumerate(coords[2:]):
        x += c / (2 + k)
        y += c / (3 + k)
    return (x, y)


def _hull2d(pts):
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def svg_slice(cones, normal=None, level=1, size=400, labels=None):
    """SVG drawing of 2-D cones, or of 3-D/4-D cones cut by ``normal.x = level``.

    Coordinates stay exact until the final scaling to the viewport.
    """
    polys = []
    n = cones[0].ambient if cones else 2
    for idx, c in enumerate(cones):
        if n == 2 and normal is None:
            pts = [(Fraction(0), Fraction(0))]
            for r in c.rays:
                pts.append((Fraction(r[0]), Fraction(r[1])))
            polys.append((idx, pts))
            continue
        basis = _plane_basis(normal)
        pts = []
        for r in c.rays:
            t = _dot(normal, r)
            if t > 0:
                p = [Fraction(level) * x / t for x in r]
                coords = [Fraction(_dot(p, b), _dot(b, b)) for b in basis]
                pts.append(_oblique(coords))
        if pts:
            polys.append((idx, pts))
    allpts = [p for _, ps in polys for p in ps] or [(0, 0)]
    span = max(max(abs(p[0]) for p in allpts), max(abs(p[1]) for p in allpts), 1)
    scale = (size / 2 - 10) / float(span)
    out = ['<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" viewBox="0 0 %d %d">'
           % (size, size, size, size)]
    for idx, pts in polys:
        hull = _hull2d(pts)
        coords = " ".join("%.3f,%.3f" % (size / 2 + float(x) * scale, size / 2 - float(y) * scale)
                          for x, y in hull)
        title = labels[idx] if labels else "cone %d" % idx
        if len(hull) >= 3:
            out.append('<polygon points="%s" fill="none" stroke="black"><title>%s</title></polygon>'
                       % (coords, title))
        else:
            out.append('<polyline points="%s" fill="none" stroke="black"><title>%s</title></polyline>'
                       % (coords, title))
    out.append("</svg>")
    return "\n".join(out) + "\n"
