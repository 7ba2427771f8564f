"""Silting atlases, the g-fan, semistable torsion triples and M-TF fans."""
from collections import deque
from itertools import combinations

from . import cpx2
from . import qlinalg as ql
from . import repmod as rm
from .cones import GenFan, RatCone, fan_check
from .errors import (IncompleteAtlas, NegativeMultiplicity, NonConvexClass,
                     NotLocated)


class Arrow:
    """Left mutation ``src -> dst`` at summand ``index`` of ``src``."""

    __slots__ = ("src", "dst", "label", "index")

    def __init__(self, src, dst, label, index):
        self.src = src
        self.dst = dst
        self.label = label
        self.index = index

    def __repr__(self):
        return "Arrow(%d -> %d, %s)" % (self.src, self.dst, self.label.dimvec)


class SiltingAtlas:
    """Basic 2-term silting complexes reached from A by mutation.

    Attributes:
        algebra: the (adapted) algebra.
        siltings: summand lists, each sorted by descending g-vector.
        smc: semibrick data per silting, aligned with its summands.
        arrows: list of Arrow.
        complete: whether the search closed before hitting the cap.
    """

    def __init__(self, algebra, siltings, smc, arrows, complete):
        self.algebra = algebra
        self.siltings = siltings
        self.smc = smc
        self.arrows = arrows
        self.complete = complete
        self.index = {cpx2.silting_key(s): i for i, s in enumerate(siltings)}
        self._cells = None
        self._fan = None
        self._cell_data = {}
        self._bricks = []

    def brick_id(self, brick):
        """Stable index of the isomorphism class of ``brick``."""
        for i, b in enumerate(self._bricks):
            if b.dimvec == brick.dimvec and rm.is_isomorphic(b, brick):
                return i
        self._bricks.append(brick)
        return len(self._bricks) - 1

    def brick(self, i):
        return self._bricks[i]

    def __len__(self):
        return len(self.siltings)

    def find(self, summands):
        return self.index.get(cpx2.silting_key(summands))

    def g_matrix(self, i):
        return cpx2.g_matrix(self.siltings[i])

    def require_complete(self):
        if not self.complete:
            raise IncompleteAtlas("the silting atlas is incomplete; raise the cap")

    # -- cells of the g-fan ----------------------------------------------
    def cells(self):
        """Map cone key -> (RatCone, presilting summand list) over all faces."""
        if self._cells is not None:
            return self._cells
        n = self.algebra.n
        out = {}
        for s in self.siltings:
            for k in range(n + 1):
                for sub in combinations(range(n), k):
                    summ = [s[i] for i in sub]
                    key = tuple(sorted(x.g_vector for x in summ))
                    if key in out:
                        continue
                    out[key] = summ
        cells = {}
        for key, summ in out.items():
            cone = _silting_cone(summ, n)
            cells[cone.key] = (cone, summ)
        self._cells = cells
        return cells

    def to_json(self):
        return {
            "complete": self.complete,
            "siltings": [[list(x.g_vector) for x in s] for s in self.siltings],
            "arrows": [{"src": a.src, "dst": a.dst, "index": a.index,
                        "label": list(a.label.dimvec)} for a in self.arrows],
        }


def _silting_cone(summands, n):
    if not summands:
        return RatCone.origin(n)
    return RatCone.from_rays([list(x.g_vector) for x in summands], ambient=n)


def _canon(summands, frozen=0):
    head = list(summands[:frozen])
    return head + sorted(summands[frozen:], key=lambda x: x.g_vector, reverse=True)


def enumerate_siltings(a, cap=10000, start=None, frozen=0):
    """Breadth-first search over mutations starting at the stalk complex A.

    Left mutations are taken at summands whose semibrick part is a module,
    right mutations at the others; arrows record left mutations only, labelled
    by the plus part of the mutated summand.  With ``start`` and ``frozen``
    the search begins at another silting and never mutates its first
    ``frozen`` summands, which stay in front.
    """
    if start is None:
        start = [cpx2.TwoTerm.stalk(a, [i]) for i in range(a.n)]
    start = _canon(list(start), frozen)
    siltings = [start]
    smcs = [cpx2.smc_of_silting(start)]
    index = {cpx2.silting_key(start): 0}
    arrows = {}
    queue = deque([0])
    complete = True
    while queue:
        v = queue.popleft()
        s = siltings[v]
        smc = smcs[v]
        for j in range(frozen, a.n):
            sign, brick = smc.parts[j]
            new = _canon(cpx2.mutate(s, j, "left" if sign > 0 else "right", verify=False), frozen)
            key = cpx2.silting_key(new)
            w = index.get(key)
            if w is None:
                if len(siltings) >= cap:
                    complete = False
                    continue
                w = len(siltings)
                index[key] = w
                siltings.append(new)
                smcs.append(cpx2.smc_of_silting(new))
                queue.append(w)
            if sign > 0:
                arrows[(v, w)] = Arrow(v, w, brick, j)
            else:
                # the arrow w -> v is a left mutation of w; its label is the
                # plus part at the summand of w not in s
                skeys = {x.g_vector for x in s}
                k = next(i for i, x in enumerate(siltings[w]) if x.g_vector not in skeys)
                arrows[(w, v)] = Arrow(w, v, smcs[w].parts[k][1], k)
    arr = [arrows[k] for k in sorted(arrows)]
    return SiltingAtlas(a, siltings, smcs, arr, complete)


# alias that does not read like the builtin `enumerate`
enumerate_atlas = enumerate_siltings


def gfan(atlas):
    """All silting cones C(V) with their faces, certified as a fan."""
    cells = atlas.cells()
    fan = GenFan([c for c, _ in cells.values()], atlas.algebra.n)
    if atlas._fan is None:
        ok, complete = fan_check(fan)
        if not ok:
            raise ArithmeticError("silting cones do not form a fan")
        atlas._fan = (fan, complete)
    return atlas._fan[0]


def cone_locate(atlas, theta):
    """Presilting summands V with theta in the open cone C(V)."""
    theta = list(theta)
    if not any(theta):
        return []
    for s in atlas.siltings:
        g = cpx2.g_matrix(s)
        sol = ql.solve(ql.transpose(g), theta)
        if sol is None:
            continue
        coeffs = sol[0]
        if all(c >= 0 for c in coeffs):
            return [x for x, c in zip(s, coeffs) if c > 0]
    raise NotLocated("no enumerated silting cone contains %s" % (theta,))


class TorsionTriple:
    """t, t-bar as subspaces of M, plus the support of w in the semistable category.

    ``supp`` holds atlas brick ids (see ``SiltingAtlas.brick_id``) and
    ``mult`` their multiplicities in the class of w.
    """

    __slots__ = ("module", "t", "tbar", "supp", "mult")

    def __init__(self, module, t, tbar, supp, mult):
        self.module = module
        self.t = t
        self.tbar = tbar
        self.supp = supp
        self.mult = mult

    @property
    def torsion(self):
        return rm.submodule(self.module, self.t)[0]

    @property
    def torsion_free(self):
        return rm.quotient(self.module, self.tbar)[0]

    @property
    def semistable(self):
        sub = rm.submodule(self.module, self.tbar)[0]
        inner = [self.tbar.coords(v) for v in self.t.basis]
        return rm.quotient(sub, ql.Subspace(inner, sub.dim) if inner else ql.Subspace.zero(sub.dim))[0]

    def dims(self):
        return (self.t.dim, self.tbar.dim - self.t.dim, self.module.dim - self.tbar.dim)

    def key(self):
        return (self.t.basis, self.tbar.basis, tuple(sorted(self.supp)))


def _bongartz_in_atlas(atlas, summands):
    """Index of the silting containing ``summands`` whose other parts are all plus."""
    keys = {x.g_vector for x in summands}
    for i, s in enumerate(atlas.siltings):
        gs = [x.g_vector for x in s]
        if not keys <= set(gs):
            continue
        if all(atlas.smc[i].parts[j][0] > 0 for j, g in enumerate(gs) if g not in keys):
            return i
    return None


def _pieces(atlas, summands):
    a = atlas.algebra
    if not summands:
        z = rm.zero_module(a)
        return z, z
    cx = cpx2.as_complex(summands, a)
    return cpx2.h0(cx), cpx2.hminus1_nu(cx)


def triple_at(atlas, summands, m):
    """Torsion triple of ``m`` for any theta in the open cone of ``summands``."""
    h, nu = _pieces(atlas, summands)
    t = rm.trace_subspace(h, m) if h.dim and m.dim else ql.Subspace.zero(m.dim)
    tbar = rm.reject_subspace(m, nu) if nu.dim else ql.Subspace.full(m.dim)
    w_dim = [x - y for x, y in zip(rm.submodule(m, tbar)[0].dimvec, rm.submodule(m, t)[0].dimvec)]
    supp, mult = set(), {}
    if any(w_dim):
        bi = _bongartz_in_atlas(atlas, summands)
        if bi is None:
            raise NotLocated("no completion of the cone found in the atlas")
        s = atlas.siltings[bi]
        smc = atlas.smc[bi]
        keys = {x.g_vector for x in summands}
        basis = [list(p[1].dimvec) for p in smc.parts]
        sol = ql.solve(ql.transpose(basis), w_dim)
        if sol is None:
            raise NegativeMultiplicity("semistable part outside the span of the semibrick")
        for j, c in enumerate(sol[0]):
            if not c:
                continue
            if c < 0 or s[j].g_vector in keys:
                raise NegativeMultiplicity("inconsistent semistable multiplicities")
            bid = atlas.brick_id(smc.parts[j][1])
            supp.add(bid)
            mult[bid] = c
    return TorsionTriple(m, t, tbar, frozenset(supp), mult)


def torsion_triple(atlas, theta, m):
    """(t, w, f) decomposition of ``m`` at the parameter ``theta``."""
    return triple_at(atlas, cone_locate(atlas, theta), m)


def _cell_triples(atlas, m):
    cache_key = id(m)
    hit = atlas._cell_data.get(cache_key)
    if hit is not None and hit[0] is m:
        return hit[1]
    data = {}
    for key, (cone, summ) in atlas.cells().items():
        data[key] = triple_at(atlas, summ, m)
    atlas._cell_data[cache_key] = (m, data)
    return data


class MtfFan:
    """Classes of M-TF equivalence as closed convex cones.

    ``classes`` is a list of (closure, triple) pairs; ``fan`` the GenFan of
    closures.
    """

    def __init__(self, classes, fan):
        self.classes = classes
        self.fan = fan

    def maximal(self):
        return [c for c, _ in self.classes if c.dim == self.fan.ambient]


def mtf_fan(atlas, m):
    """M-TF fan of ``m``, with each class closure certified convex."""
    atlas.require_complete()
    gfan(atlas)
    cells = atlas.cells()
    data = _cell_triples(atlas, m)
    groups = {}
    for key, tr in data.items():
        groups.setdefault(tr.key(), []).append(key)
    classes = []
    for gkey in sorted(groups):
        members = groups[gkey]
        rays = set()
        for k in members:
            rays.update(cells[k][0].rays)
        n = atlas.algebra.n
        hull = RatCone.from_rays([list(r) for r in sorted(rays)], ambient=n) if rays else RatCone.origin(n)
        closure = set()
        for k in members:
            closure.update(f.key for f in cells[k][0].faces())
        for k, (c, _) in cells.items():
            inter = hull.intersect(c)
            p = inter.relative_interior_point()
            if c.contains_relint(p) and k not in closure:
                raise NonConvexClass("class closure is not convex")
        classes.append((hull, data[members[0]]))
    fan = GenFan([c for c, _ in classes], atlas.algebra.n)
    ok, complete = fan_check(fan)
    if not ok or not complete:
        raise NonConvexClass("class closures do not form a complete fan")
    classes.sort(key=lambda t: (t[0].dim, t[0].key))
    return MtfFan(classes, fan)


def wall(atlas, m):
    """Maximal closed cones on which ``m`` is semistable."""
    atlas.require_complete()
    if m.dim == 0:
        return [RatCone.whole(atlas.algebra.n)]
    f = mtf_fan(atlas, m)
    cand = [c for c, tr in f.classes if tr.t.dim == 0 and tr.tbar.dim == m.dim]
    return [c for c in cand if not any(c is not d and c.dim < d.dim and c.is_subset(d) for d in cand)]


def to_dot(atlas):
    lines = ["digraph exchange {"]
    for i, s in enumerate(atlas.siltings):
        label = " ".join("(%s)" % ",".join(str(x) for x in v.g_vector) for v in s)
        lines.append('  v%d [label="%s"];' % (i, label))
    for a in atlas.arrows:
        lines.append('  v%d -> v%d [label="%s"];' % (a.src, a.dst, "(%s)" % ",".join(str(x) for x in a.label.dimvec)))
    lines.append("}")
    return "\n".join(lines) + "\n"
