"""Two-term complexes of projectives and their homotopy category.

A ``TwoTerm`` is ``U^{-1} -> U^0`` with ``U^{-1} = sum_c P(k_c)`` and
``U^0 = sum_r P(j_r)``; the entry ``diff[r][c]`` lies in ``e_{j_r} A e_{k_c}``
and acts on ``P(k_c)`` by left multiplication.  Matrices of algebra elements
compose like ordinary matrices: ``(G F)[s][c] = sum_r G[s][r] F[r][c]`` is
"first F, then G".

Every minimal complex splits as ``minpres(H^0 U) (+) Q[1]`` for a projective
``Q``; most constructions below go through that normal form.
"""
from fractions import Fraction

from . import qlinalg as ql
from . import repmod as rm
from .errors import (CompletionNotVerified, Not2TermResult, NotPresilting, NotSilting,
                     OwnerMismatch)

# ---------------------------------------------------------------------------
# algebra elements as sparse dicts


def _emul(a, x, y):
    out = {}
    for i, u in x.items():
        row = a.mult[i]
        for j, v in y.items():
            for k, c in row[j].items():
                out[k] = out.get(k, 0) + u * v * c
    return {k: v for k, v in out.items() if v}


def _eadd(x, y, scale=1):
    out = dict(x)
    for k, v in y.items():
        out[k] = out.get(k, 0) + scale * v
    return {k: v for k, v in out.items() if v}


def _dense(a, x):
    v = [0] * a.dim
    for k, c in x.items():
        v[k] = c
    return v


def _sparse(v):
    return {k: Fraction(c) for k, c in enumerate(v) if c}


def amat_mul(a, g, f):
    """Product of algebra matrices: first ``f``, then ``g``."""
    if not g or not f:
        ncols = len(f[0]) if f else 0
        return [[{} for _ in range(ncols)] for _ in range(len(g))]
    mid = len(f)
    ncols = len(f[0])
    out = []
    for grow in g:
        row = []
        for c in range(ncols):
            acc = {}
            for r in range(mid):
                x = grow[r]
                y = f[r][c]
                if x and y:
                    acc = _eadd(acc, _emul(a, x, y))
            row.append(acc)
        out.append(row)
    return out


def _zero_amat(nr, nc):
    return [[{} for _ in range(nc)] for _ in range(nr)]


class HomBasis:
    """Basis of maps between two projective sums: triples (r, c, b)."""

    def __init__(self, a, src, dst):
        self.a = a
        self.src = tuple(src)
        self.dst = tuple(dst)
        self.basis = []
        for r, j in enumerate(dst):
            for c, k in enumerate(src):
                for b in a.corner_basis(j, k):
                    self.basis.append((r, c, b))
        self.index = {t: i for i, t in enumerate(self.basis)}
        self.dim = len(self.basis)

    def to_mat(self, flat):
        m = _zero_amat(len(self.dst), len(self.src))
        for (r, c, b), x in zip(self.basis, flat):
            if x:
                m[r][c][b] = x
        return m

    def to_flat(self, mat):
        v = [0] * self.dim
        for r, row in enumerate(mat):
            for c, x in enumerate(row):
                for b, coeff in x.items():
                    v[self.index[(r, c, b)]] = coeff
        return v

    def unit_mat(self, i):
        r, c, b = self.basis[i]
        m = _zero_amat(len(self.dst), len(self.src))
        m[r][c] = {b: 1}
        return m


def _left_rows(a, d, hin, hout):
    """Rows of F -> d F from hin to hout (row-vector convention)."""
    rows = []
    for (r, c, b) in hin.basis:
        v = [0] * hout.dim
        for s in range(len(hout.dst)):
            x = d[s][r]
            if x:
                for k, coeff in _emul(a, x, {b: 1}).items():
                    v[hout.index[(s, c, k)]] += coeff
        rows.append(v)
    return rows


def _right_rows(a, d, hin, hout):
    """Rows of F -> F d from hin to hout."""
    rows = []
    for (r, c, b) in hin.basis:
        v = [0] * hout.dim
        for c2 in range(len(hout.src)):
            x = d[c][c2]
            if x:
                for k, coeff in _emul(a, {b: 1}, x).items():
                    v[hout.index[(r, c2, k)]] += coeff
        rows.append(v)
    return rows


# ---------------------------------------------------------------------------
# complexes

class TwoTerm:
    """A 2-term complex of projectives over an adapted algebra."""

    __slots__ = ("owner", "p_minus", "p_zero", "diff", "_cache")

    def __init__(self, owner, p_minus, p_zero, diff=None, check=True):
        self.owner = owner
        self.p_minus = tuple(p_minus)
        self.p_zero = tuple(p_zero)
        if diff is None:
            diff = _zero_amat(len(self.p_zero), len(self.p_minus))
        self.diff = [[dict(x) for x in row] for row in diff]
        self._cache = {}
        if check:
            if len(self.diff) != len(self.p_zero) or any(len(r) != len(self.p_minus) for r in self.diff):
                raise ValueError("differential has the wrong shape")
            for r, j in enumerate(self.p_zero):
                for c, k in enumerate(self.p_minus):
                    for b in self.diff[r][c]:
                        if owner.corner[b] != (j, k):
                            raise ValueError("entry (%d,%d) is not in e_%d A e_%d" % (r, c, j + 1, k + 1))

    @property
    def g_vector(self):
        g = [0] * self.owner.n
        for j in self.p_zero:
            g[j] += 1
        for k in self.p_minus:
            g[k] -= 1
        return tuple(g)

    def is_zero(self):
        return not self.p_minus and not self.p_zero

    def __repr__(self):
        return "TwoTerm(g=%s)" % (self.g_vector,)

    @classmethod
    def stalk(cls, a, verts, shift=0):
        """``sum P(v)`` in degree 0 (shift 0) or degree -1 (shift 1)."""
        verts = list(verts)
        if shift == 0:
            return cls(a, [], verts)
        return cls(a, verts, [])

    @classmethod
    def from_module(cls, m, q=None):
        """``minpres(m) (+) Q[1]`` where ``q`` is a multiplicity vector."""
        x = minimal_presentation(m)
        if q and any(q):
            extra = [k for k, c in enumerate(q) for _ in range(c)]
            x = direct_sum([x, cls.stalk(m.owner, extra, 1)], m.owner)
        return x


def direct_sum(parts, owner=None):
    if not parts:
        return TwoTerm(owner, [], [])
    a = parts[0].owner
    pm = [k for p in parts for k in p.p_minus]
    pz = [j for p in parts for j in p.p_zero]
    d = _zero_amat(len(pz), len(pm))
    ro = co = 0
    for p in parts:
        for r in range(len(p.p_zero)):
            for c in range(len(p.p_minus)):
                d[ro + r][co + c] = dict(p.diff[r][c])
        ro += len(p.p_zero)
        co += len(p.p_minus)
    return TwoTerm(a, pm, pz, d, check=False)


def _module_matrix(a, mat, src, dst):
    """Module-level matrix of an algebra-matrix map sum P(src) -> sum P(dst)."""
    blocks = []
    for c, k in enumerate(src):
        size_k = sum(1 for b in range(a.dim) if a.corner[b][0] == k)
        rows = [[] for _ in range(size_k)]
        for r, j in enumerate(dst):
            blk = rm.projective_map(a, _dense(a, mat[r][c]), k, j)
            for i in range(size_k):
                rows[i].extend(blk[i])
        blocks.extend(rows)
    return blocks


def _nu_matrix(a, mat, src, dst):
    blocks = []
    for c, k in enumerate(src):
        size_k = sum(1 for b in range(a.dim) if a.corner[b][1] == k)
        rows = [[] for _ in range(size_k)]
        for r, j in enumerate(dst):
            blk = rm.injective_map(a, _dense(a, mat[r][c]), k, j)
            for i in range(size_k):
                rows[i].extend(blk[i])
        blocks.extend(rows)
    return blocks


def proj_module(a, verts):
    return rm.direct_sum([rm.projective(a, v) for v in verts], owner=a)


def h0(u):
    """Cokernel of the differential."""
    if "h0" in u._cache:
        return u._cache["h0"]
    a = u.owner
    p0 = proj_module(a, u.p_zero)
    if not u.p_minus or p0.dim == 0:
        out = p0
    else:
        mm = _module_matrix(a, u.diff, u.p_minus, u.p_zero)
        img = ql.Subspace([r for r in mm if any(r)], p0.dim) if mm else ql.Subspace.zero(p0.dim)
        out = rm.quotient(p0, img)[0]
    u._cache["h0"] = out
    return out


def hminus1_nu(u):
    """Kernel of the Nakayama image I(p_minus) -> I(p_zero)."""
    if "hnu" in u._cache:
        return u._cache["hnu"]
    a = u.owner
    i1 = rm.direct_sum([rm.injective(a, k) for k in u.p_minus], owner=a)
    if not u.p_zero or i1.dim == 0:
        out = i1
    else:
        mm = _nu_matrix(a, u.diff, u.p_minus, u.p_zero)
        ker = ql.left_kernel(mm, i1.dim)
        out = rm.submodule(i1, ker)[0]
    u._cache["hnu"] = out
    return out


def minimal_presentation(m):
    """Minimal projective presentation ``P1 -> P0 -> m`` as a TwoTerm."""
    a = m.owner
    if m.dim == 0:
        return TwoTerm(a, [], [])
    rad = rm.radical_submodule(m)
    gens = rad.complement_columns()
    verts0 = [m.grade[c] for c in gens]
    p0 = proj_module(a, verts0)
    # rows: basis of P0, image m_i . b
    rows = []
    for i, c in enumerate(gens):
        v = verts0[i]
        for b in range(a.dim):
            if a.corner[b][0] == v:
                rows.append(list(m.action[b][c]))
    ker = ql.left_kernel(rows, p0.dim)
    if ker.dim == 0:
        return TwoTerm(a, [], verts0)
    kmod, inc = rm.submodule(p0, ker)
    krad = rm.radical_submodule(kmod)
    kgens = krad.complement_columns()
    # offsets of each P(v_i) inside P0
    offsets = []
    off = 0
    for v in verts0:
        blist = [b for b in range(a.dim) if a.corner[b][0] == v]
        offsets.append((off, blist))
        off += len(blist)
    verts1 = []
    cols = []
    for kc in kgens:
        vec = inc.matrix[kc]
        verts1.append(kmod.grade[kc])
        col = []
        for (o, blist) in offsets:
            entry = {}
            for t, b in enumerate(blist):
                x = vec[o + t]
                if x:
                    entry[b] = Fraction(x)
            col.append(entry)
        cols.append(col)
    diff = [[cols[c][r] for c in range(len(verts1))] for r in range(len(verts0))]
    return TwoTerm(a, verts1, verts0, diff)


def _invert_corner(a, x, j):
    """Inverse of a unit in the local corner e_j A e_j."""
    e = a.idem_basis[j]
    lam = x.get(e, 0)
    if not lam:
        raise ValueError("not a unit")
    n = {k: -v / lam for k, v in x.items() if k != e}
    inv = {e: Fraction(1)}
    power = {e: Fraction(1)}
    for _ in range(a.dim + 1):
        power = _emul(a, power, n)
        if not power:
            break
        inv = _eadd(inv, power)
    return {k: v / lam for k, v in inv.items()}


def minimize(u):
    """Cancel invertible components of the differential (homotopy equivalent)."""
    a = u.owner
    pm, pz = list(u.p_minus), list(u.p_zero)
    d = [[dict(x) for x in row] for row in u.diff]
    while True:
        hit = None
        for r, j in enumerate(pz):
            for c, k in enumerate(pm):
                if j == k and d[r][c].get(a.idem_basis[j], 0):
                    hit = (r, c)
                    break
            if hit:
                break
        if hit is None:
            break
        r, c = hit
        inv = _invert_corner(a, d[r][c], pz[r])
        nd = []
        for r2 in range(len(pz)):
            if r2 == r:
                continue
            row = []
            left = _emul(a, d[r2][c], inv) if d[r2][c] else {}
            for c2 in range(len(pm)):
                if c2 == c:
                    continue
                x = d[r2][c2]
                if left and d[r][c2]:
                    x = _eadd(x, _emul(a, left, d[r][c2]), -1)
                row.append(x)
            nd.append(row)
        del pz[r]
        del pm[c]
        d = nd
    return TwoTerm(a, pm, pz, d, check=False)


def normal_form(u):
    """The canonical ``minpres(H^0) (+) Q[1]`` representative."""
    m = h0(u)
    x = minimal_presentation(m)
    q = [gx - gu for gx, gu in zip(x.g_vector, u.g_vector)]
    if any(c < 0 for c in q):
        raise ValueError("complex is not minimal-equivalent to a 2-term presentation")
    return TwoTerm.from_module(m, q) if any(q) else x


# ---------------------------------------------------------------------------
# homotopy Hom

class KHom:
    """Hom in the homotopy category as a quotient of chain maps.

    ``reps`` are chain maps ``(F0, F1)`` whose classes form a basis.
    """

    def __init__(self, src, dst, h0b, h1b, null_rows, reps):
        self.src, self.dst = src, dst
        self.h0b, self.h1b = h0b, h1b
        self.reps = reps
        self.dim = len(reps)
        self._null = null_rows
        self._coords = None

    def _flat(self, f0, f1):
        return self.h0b.to_flat(f0) + self.h1b.to_flat(f1)

    def coords(self, f0, f1):
        if self._coords is None:
            vecs = [list(v) for v in self._null] + [self._flat(*r) for r in self.reps]
            self._coords = ql.SpanCoords(vecs, self.h0b.dim + self.h1b.dim)
        c = self._coords.coords(self._flat(f0, f1))
        if c is None:
            raise ValueError("not a chain map")
        return c[len(self._null):]

    def combine(self, coeffs):
        a = self.src.owner
        f0 = _zero_amat(len(self.dst.p_zero), len(self.src.p_zero))
        f1 = _zero_amat(len(self.dst.p_minus), len(self.src.p_minus))
        for (g0, g1), x in zip(self.reps, coeffs):
            if x:
                for m, g in ((f0, g0), (f1, g1)):
                    for r, row in enumerate(g):
                        for c, e in enumerate(row):
                            if e:
                                m[r][c] = _eadd(m[r][c], e, x)
        return f0, f1


class KHomShift:
    """Hom(U, V[1]): maps U^{-1} -> V^0 modulo homotopy."""

    def __init__(self, hb, reps, null):
        self.hb = hb
        self.reps = reps
        self.dim = len(reps)
        self._null = null


def _chain_maps(u, v):
    a = u.owner
    if a is not v.owner:
        raise OwnerMismatch("complexes over different algebras")
    h0b = HomBasis(a, u.p_zero, v.p_zero)
    h1b = HomBasis(a, u.p_minus, v.p_minus)
    tgt = HomBasis(a, u.p_minus, v.p_zero)
    n0, n1 = h0b.dim, h1b.dim
    if tgt.dim:
        rows0 = [[-x for x in r] for r in _right_rows(a, u.diff, h0b, tgt)]
        rows1 = _left_rows(a, v.diff, h1b, tgt)
        z = ql.left_kernel(rows0 + rows1, n0 + n1) if (n0 + n1) else ql.Subspace.zero(0)
    else:
        z = ql.Subspace.full(n0 + n1)
    hb = HomBasis(a, u.p_zero, v.p_minus)
    null = []
    if hb.dim:
        l0 = _left_rows(a, v.diff, hb, h0b)
        l1 = _right_rows(a, u.diff, hb, h1b)
        null = [x + y for x, y in zip(l0, l1)]
    return h0b, h1b, z, null


def hom_k(u, v, shift=0):
    """Hom_K(u, v[shift]) for shift 0 or 1, as a KHom / KHomShift."""
    if shift == 0:
        h0b, h1b, z, null = _chain_maps(u, v)
        nsp = ql.Subspace([r for r in null if any(r)], h0b.dim + h1b.dim) if null \
            else ql.Subspace.zero(h0b.dim + h1b.dim)
        reps = []
        span = nsp
        for zv in z.basis:
            if not span.contains(zv):
                span = span + ql.Subspace([zv], z.ambient)
                reps.append((h0b.to_mat(zv[:h0b.dim]), h1b.to_mat(zv[h0b.dim:])))
        return KHom(u, v, h0b, h1b, list(nsp.basis), reps)
    if shift != 1:
        raise ValueError("shift must be 0 or 1")
    a = u.owner
    if a is not v.owner:
        raise OwnerMismatch("complexes over different algebras")
    hb = HomBasis(a, u.p_minus, v.p_zero)
    rows = []
    if hb.dim:
        h11 = HomBasis(a, u.p_minus, v.p_minus)
        h00 = HomBasis(a, u.p_zero, v.p_zero)
        rows = _left_rows(a, v.diff, h11, hb) + _right_rows(a, u.diff, h00, hb)
    rows = [r for r in rows if any(r)]
    nsp = ql.Subspace(rows, hb.dim) if rows else ql.Subspace.zero(hb.dim)
    reps = [hb.to_mat([1 if k == c else 0 for k in range(hb.dim)]) for c in nsp.complement_columns()]
    return KHomShift(hb, reps, nsp)


def compose(a, g, f):
    """Chain-map composition: first ``f``, then ``g``."""
    return amat_mul(a, g[0], f[0]), amat_mul(a, g[1], f[1])


def identity_map(u):
    i0 = _zero_amat(len(u.p_zero), len(u.p_zero))
    for r, j in enumerate(u.p_zero):
        i0[r][r] = {u.owner.idem_basis[j]: Fraction(1)}
    i1 = _zero_amat(len(u.p_minus), len(u.p_minus))
    for c, k in enumerate(u.p_minus):
        i1[c][c] = {u.owner.idem_basis[k]: Fraction(1)}
    return i0, i1


def end_structure(v):
    """(KHom of End_K(v), radical coordinate Subspace, d = dim End/rad)."""
    if "end" in v._cache:
        return v._cache["end"]
    a = v.owner
    e = hom_k(v, v, 0)
    d = e.dim
    if d == 0:
        out = (e, ql.Subspace.zero(0), 0)
        v._cache["end"] = out
        return out
    mult = [[e.coords(*compose(a, e.reps[i], e.reps[j])) for j in range(d)] for i in range(d)]
    t = [sum(mult[m][k][k] for k in range(d)) for m in range(d)]
    form = [[sum(mult[i][j][m] * t[m] for m in range(d)) for j in range(d)] for i in range(d)]
    rad = ql.kernel(form, d)
    out = (e, rad, d - rad.dim)
    v._cache["end"] = out
    return out


def is_presilting(u):
    return hom_k(u, u, 1).dim == 0


def indec_summands(u):
    """Krull-Schmidt decomposition in the homotopy category.

    Returns:
        list of (indecomposable TwoTerm in normal form, multiplicity), in
        canonical order (descending g-vector).
    """
    if "summands" in u._cache:
        return u._cache["summands"]
    a = u.owner
    m = h0(u)
    pieces = rm.indecompose(m)
    x = minimal_presentation(m)
    q = [gx - gu for gx, gu in zip(x.g_vector, u.g_vector)]
    out = []
    for mod, k in pieces:
        out.append((minimal_presentation(mod), k))
    for vert, k in enumerate(q):
        if k < 0:
            raise ValueError("negative shifted-projective multiplicity")
        if k:
            out.append((TwoTerm.stalk(a, [vert], 1), k))
    out.sort(key=lambda t: t[0].g_vector, reverse=True)
    u._cache["summands"] = out
    return out


def basic_summands(u):
    return [x for x, _ in indec_summands(u)]


def is_silting(u):
    return is_presilting(u) and len(indec_summands(u)) == u.owner.n


def g_matrix(summands):
    return [list(s.g_vector) for s in summands]


def silting_key(summands):
    return tuple(sorted(s.g_vector for s in summands))


# ---------------------------------------------------------------------------
# approximations

class Approximation:
    """A minimal add-approximation.

    Attributes:
        targets: the indecomposables V_k.
        mult: multiplicities a_k.
        maps: per k, the chosen chain maps (x -> V_k or V_k -> x).
        complex: the direct sum of targets with multiplicities.
        f0, f1: the approximation as a chain map (left: x -> sum;
            right: sum -> x).
    """

    def __init__(self, x, targets, maps, side):
        a = x.owner
        self.x = x
        self.targets = targets
        self.maps = maps
        self.side = side
        self.mult = [len(ms) for ms in maps]
        parts = []
        rows0, rows1 = [], []
        for k, ms in enumerate(maps):
            for mp in ms:
                parts.append(targets[k])
                rows0.append(mp[0])
                rows1.append(mp[1])
        self.complex = direct_sum(parts, a) if parts else TwoTerm(a, [], [])
        if side == "left":
            self.f0 = [row for blk in rows0 for row in blk]
            self.f1 = [row for blk in rows1 for row in blk]
            if not self.f0:
                self.f0 = []
            if not self.f1:
                self.f1 = []
        else:
            nr0, nr1 = len(x.p_zero), len(x.p_minus)
            self.f0 = [[e for blk in rows0 for e in blk[r]] for r in range(nr0)]
            self.f1 = [[e for blk in rows1 for e in blk[r]] for r in range(nr1)]


def _top_choice(space_dim, radical_vecs, orbit):
    """Greedy basis of space / radical, closing under ``orbit``."""
    span = ql.Subspace([v for v in radical_vecs if any(v)], space_dim) if radical_vecs \
        else ql.Subspace.zero(space_dim)
    chosen = []
    for i in range(space_dim):
        e = [1 if k == i else 0 for k in range(space_dim)]
        if span.contains(e):
            continue
        chosen.append(i)
        vecs = [v for v in orbit(e) if any(v)]
        span = span + ql.Subspace(vecs + [e], space_dim)
    return chosen


def min_left_approx(x, targets):
    """Minimal left add(targets)-approximation of ``x``.

    ``targets`` must be pairwise non-isomorphic indecomposables.
    """
    a = x.owner
    homs = [hom_k(x, v, 0) for v in targets]
    maps = []
    for k, vk in enumerate(targets):
        hk = homs[k]
        if hk.dim == 0:
            maps.append([])
            continue
        endk, radk, _ = end_structure(vk)
        rad_vecs = []
        for l, vl in enumerate(targets):
            hl = homs[l]
            if hl.dim == 0:
                continue
            if l == k:
                rads = [endk.combine(r) for r in radk.basis]
            else:
                hlk = hom_k(vl, vk, 0)
                rads = hlk.reps
            for rmap in rads:
                for h in hl.reps:
                    rad_vecs.append(hk.coords(*compose(a, rmap, h)))

        def orbit(e, hk=hk, endk=endk):
            f = hk.combine(e)
            return [hk.coords(*compose(a, g, f)) for g in endk.reps]
        chosen = _top_choice(hk.dim, rad_vecs, orbit)
        maps.append([hk.reps[i] for i in chosen])
    return Approximation(x, targets, maps, "left")


def min_right_approx(x, targets):
    """Minimal right add(targets)-approximation ``sum -> x``."""
    a = x.owner
    homs = [hom_k(v, x, 0) for v in targets]
    maps = []
    for k, vk in enumerate(targets):
        hk = homs[k]
        if hk.dim == 0:
            maps.append([])
            continue
        endk, radk, _ = end_structure(vk)
        rad_vecs = []
        for l, vl in enumerate(targets):
            hl = homs[l]
            if hl.dim == 0:
                continue
            if l == k:
                rads = [endk.combine(r) for r in radk.basis]
            else:
                rads = hom_k(vk, vl, 0).reps
            for rmap in rads:
                for h in hl.reps:
                    rad_vecs.append(hk.coords(*compose(a, h, rmap)))

        def orbit(e, hk=hk, endk=endk):
            f = hk.combine(e)
            return [hk.coords(*compose(a, f, g)) for g in endk.reps]
        chosen = _top_choice(hk.dim, rad_vecs, orbit)
        maps.append([hk.reps[i] for i in chosen])
    return Approximation(x, targets, maps, "right")


# ---------------------------------------------------------------------------
# cones built from approximations

def _image_space(a, mat, src, dst, dim):
    if not src or not dst:
        return ql.Subspace.zero(dim)
    mm = _module_matrix(a, mat, src, dst)
    rows = [r for r in mm if any(r)]
    return ql.Subspace(rows, dim) if rows else ql.Subspace.zero(dim)


def _split_mono(a, mats, src, dsts):
    """Whether the stacked map sum P(src) -> sum P(dsts) is split injective."""
    if not src:
        return True
    # top-level matrix per vertex: e-coefficients
    for v in set(src):
        cols = [c for c, k in enumerate(src) if k == v]
        rows = []
        for mat, dst in zip(mats, dsts):
            for r, j in enumerate(dst):
                if j == v:
                    rows.append([mat[r][c].get(a.idem_basis[v], 0) for c in cols])
        if (ql.rank(rows, len(cols)) if rows else 0) < len(cols):
            return False
    return True


def cone_of_left(approx):
    """Cone of ``x -> U'``, assumed homotopic to a 2-term complex."""
    a = approx.x.owner
    x, up = approx.x, approx.complex
    if not _split_mono(a, [x.diff, approx.f1], x.p_minus, [x.p_zero, up.p_minus]):
        raise Not2TermResult("cone has nonzero cohomology in degree -2")
    p0 = proj_module(a, up.p_zero)
    img = _image_space(a, approx.f0, x.p_zero, up.p_zero, p0.dim) + \
        _image_space(a, up.diff, up.p_minus, up.p_zero, p0.dim)
    hmod = rm.quotient(p0, img)[0]
    g = [gu - gx for gu, gx in zip(up.g_vector, x.g_vector)]
    return _from_h0_and_g(hmod, g)


def _from_h0_and_g(hmod, g):
    x = minimal_presentation(hmod)
    q = [gx - gg for gx, gg in zip(x.g_vector, g)]
    if any(c < 0 for c in q):
        raise Not2TermResult("class does not match a 2-term complex with this H^0")
    return TwoTerm.from_module(hmod, q) if any(q) else x


def cocone_of_right(approx):
    """Cocone of ``U'' -> x``, assumed homotopic to a 2-term complex."""
    a = approx.x.owner
    x, up = approx.x, approx.complex
    src = list(up.p_zero) + list(x.p_minus)
    srcmod = proj_module(a, src)
    x0 = proj_module(a, x.p_zero)
    # map [g0 | d_x] : U''^0 (+) X^{-1} -> X^0
    big = [row_g + row_d for row_g, row_d in zip(approx.f0, x.diff)] if x.p_zero else []
    if x.p_zero:
        mm = _module_matrix(a, big, src, x.p_zero)
        if src:
            img = ql.Subspace([r for r in mm if any(r)], x0.dim) if any(any(r) for r in mm) \
                else ql.Subspace.zero(x0.dim)
        else:
            img = ql.Subspace.zero(x0.dim)
        if img.dim != x0.dim:
            raise Not2TermResult("cocone has cohomology in degree 1")
        ker = ql.left_kernel(mm, srcmod.dim) if srcmod.dim else ql.Subspace.zero(0)
    else:
        ker = ql.Subspace.full(srcmod.dim)
    # image of U''^{-1} -> U''^0 (+) X^{-1}: u -> (d u, -g1 u)
    stacked = [list(r) for r in up.diff] + [[_scale(e, -1) for e in r] for r in approx.f1]
    im = _image_space(a, stacked, up.p_minus, src, srcmod.dim)
    kmod, inc = rm.submodule(srcmod, ker)
    # express image inside K
    coords = ql.SpanCoords([list(v) for v in ker.basis], srcmod.dim) if ker.dim else None
    sub_vecs = [coords.coords(list(v)) for v in im.basis] if coords else []
    sub = ql.Subspace(sub_vecs, kmod.dim) if sub_vecs else ql.Subspace.zero(kmod.dim)
    hmod = rm.quotient(kmod, sub)[0]
    g = [gu - gx for gu, gx in zip(up.g_vector, x.g_vector)]
    return _from_h0_and_g(hmod, g)


def _scale(e, s):
    return {k: s * v for k, v in e.items()}


# ---------------------------------------------------------------------------
# silting data

def summands_of(s):
    """Accept a TwoTerm or a list of summands; return a basic summand list."""
    if isinstance(s, TwoTerm):
        return basic_summands(s)
    return list(s)


def as_complex(summands, owner):
    return direct_sum(list(summands), owner)


def check_silting(summands, owner):
    s = as_complex(summands, owner)
    if len(summands) != owner.n or not is_presilting(s):
        raise NotSilting("not a basic 2-term silting complex")


def mutate(s, j, direction="left", verify=True):
    """Mutation of a basic silting complex at summand ``j`` (0-based).

    Returns the new summand list with position ``j`` replaced.

    Raises:
        NotSilting: the input is not silting.
        Not2TermResult: the mutation leaves the 2-term world.
    """
    summands = summands_of(s)
    a = summands[0].owner if summands else None
    if verify:
        check_silting(summands, a)
    x = summands[j]
    others = [v for i, v in enumerate(summands) if i != j]
    if direction == "left":
        t = cone_of_left(min_left_approx(x, others))
    elif direction == "right":
        t = cocone_of_right(min_right_approx(x, others))
    else:
        raise ValueError("direction must be 'left' or 'right'")
    pieces = indec_summands(t) if not t.is_zero() else []
    if len(pieces) != 1 or pieces[0][1] != 1:
        raise Not2TermResult("mutation did not produce one indecomposable summand")
    new = list(summands)
    new[j] = pieces[0][0]
    comp = as_complex(new, a)
    if not is_presilting(comp) or len(indec_summands(comp)) != a.n:
        raise Not2TermResult("mutation result is not silting")
    return new


# ---------------------------------------------------------------------------
# semibricks

class SmcDatum:
    """Per-summand semibrick data of a silting complex.

    ``parts[i]`` is ``(sign, module)`` with sign +1 (module in degree 0) or -1
    (module shifted by one); ``d[i]`` is dim End/rad of the summand.
    """

    def __init__(self, parts, d):
        self.parts = parts
        self.d = d

    def signed_dimvecs(self):
        return [(s, m.dimvec) for s, m in self.parts]


def _plus_part(h0s, i, cache=None):
    target = h0s[i]
    if target.dim == 0:
        return target
    vecs = []
    for l, src in enumerate(h0s):
        if src.dim == 0:
            continue
        if l == i:
            homs = rm.rad_hom(src, target)
        else:
            homs = rm.hom_space(src, target)
        for h in homs:
            vecs.extend(r for r in h.matrix if any(r))
    sub = ql.Subspace(vecs, target.dim) if vecs else ql.Subspace.zero(target.dim)
    return rm.quotient(target, sub)[0]


def _minus_part(nus, i):
    src = nus[i]
    if src.dim == 0:
        return src
    cols = []
    for l, tgt in enumerate(nus):
        if tgt.dim == 0:
            continue
        homs = rm.rad_hom(src, tgt) if l == i else rm.hom_space(src, tgt)
        for h in homs:
            cols.append(h.matrix)
    if not cols:
        return src
    wide = [sum((c[r] for c in cols), []) for r in range(src.dim)]
    return rm.submodule(src, ql.left_kernel(wide, src.dim))[0]


def semibrick_parts(summands, indices=None):
    """(plus part, minus part) of each requested summand of a presilting sum."""
    h0s = [h0(v) for v in summands]
    nus = [hminus1_nu(v) for v in summands]
    idx = range(len(summands)) if indices is None else indices
    return [(_plus_part(h0s, i), _minus_part(nus, i)) for i in idx]


def smc_of_silting(s):
    """Semibrick data of a silting complex, indexed like its summands."""
    summands = summands_of(s)
    pairs = semibrick_parts(summands)
    parts = []
    ds = []
    for i, (plus, minus) in enumerate(pairs):
        if plus.dim and minus.dim:
            raise ValueError("summand %d has both a plus and a minus part" % i)
        if plus.dim:
            parts.append((1, plus))
        elif minus.dim:
            parts.append((-1, minus))
        else:
            raise ValueError("summand %d has neither a plus nor a minus part" % i)
        ds.append(end_structure(summands[i])[2])
    return SmcDatum(parts, ds)


# ---------------------------------------------------------------------------
# completions

def _sub_cogenerated(nu_big, nu_small):
    """Whether Sub(nu_big) is contained in Sub(nu_small)."""
    return rm.reject_subspace(nu_big, nu_small).dim == 0


def _fac_contained(h_small, h_big):
    """Whether h_small lies in Fac(h_big)."""
    if h_small.dim == 0:
        return True
    return rm.trace_subspace(h_big, h_small).dim == h_small.dim


def _order_completion(u_summands, extra):
    extra = sorted(extra, key=lambda t: t.g_vector, reverse=True)
    return list(u_summands) + extra


def _normalize(u, owner):
    """(summand list in given order, algebra); a TwoTerm is decomposed."""
    if isinstance(u, TwoTerm):
        if not is_presilting(u):
            raise NotPresilting("complex has self-extensions")
        return basic_summands(u), u.owner
    us = list(u)
    a = us[0].owner if us else owner
    if a is None:
        raise ValueError("an owner algebra is needed for an empty summand list")
    if us and not is_presilting(as_complex(us, a)):
        raise NotPresilting("complex has self-extensions")
    return us, a


def bongartz_completion(u, owner=None, max_steps=200):
    """Maximal completion S of a presilting complex (u summands first).

    Built as ``u (+) cocone(U'' -> A[1])`` for the minimal right
    add(u)-approximation, then certified by Sub H^{-1}(nu S) = Sub H^{-1}(nu u).
    Summands of ``u`` keep their order; the new ones follow in descending
    g-vector order.

    Raises:
        NotPresilting, CompletionNotVerified.
    """
    us, a = _normalize(u, owner)
    ucx = as_complex(us, a)
    if len(us) == a.n:
        return list(us)
    shifted = TwoTerm.stalk(a, range(a.n), 1)
    approx = min_right_approx(shifted, us)
    up = approx.complex
    # Z = (U''^{-1} -> U''^0 (+) A), second block the degree -1 component g1
    pz = list(up.p_zero) + list(range(a.n))
    diff = [list(r) for r in up.diff] + [list(r) for r in approx.f1]
    z = TwoTerm(a, up.p_minus, pz, diff)
    ukeys = {v.g_vector for v in us}
    extra = [x for x in basic_summands(z) if x.g_vector not in ukeys]
    cand = _order_completion(us, extra)
    nu_u = hminus1_nu(ucx)
    if _is_silting_list(cand, a) and _sub_cogenerated(hminus1_nu(as_complex(cand, a)), nu_u):
        return cand
    return _climb(us, cand, a, nu_u, max_steps)


def _is_silting_list(summands, a):
    if len(summands) != a.n or len({s.g_vector for s in summands}) != a.n:
        return False
    return is_presilting(as_complex(summands, a))


def _climb(us, cand, a, nu_u, max_steps):
    if not _is_silting_list(cand, a):
        raise CompletionNotVerified("primary completion is not silting")
    m = len(us)
    cur = cand
    for _ in range(max_steps):
        if _sub_cogenerated(hminus1_nu(as_complex(cur, a)), nu_u):
            return _order_completion(us, cur[m:])
        smc = smc_of_silting(cur)
        moved = False
        for j in range(m, a.n):
            if smc.parts[j][0] < 0:
                cur = mutate(cur, j, "right", verify=False)
                moved = True
                break
        if not moved:
            break
    raise CompletionNotVerified("maximal completion could not be certified")


def minimal_completion(u, s=None, owner=None, max_steps=200, return_approx=False):
    """Minimal completion T: cones of left add(u)-approximations of S_j.

    Returns the summand list (u first), and with ``return_approx`` also the
    per-j multiplicity vectors a_{j,.} of the approximation targets.
    """
    us, a = _normalize(u, owner)
    if s is None:
        s = bongartz_completion(us, a)
    m = len(us)
    mults = {}
    ts = list(us)
    ok = True
    for j in range(m, a.n):
        approx = min_left_approx(s[j], us)
        mults[j] = approx.mult
        try:
            t = cone_of_left(approx)
            pieces = indec_summands(t)
        except Not2TermResult:
            ok = False
            break
        if len(pieces) != 1 or pieces[0][1] != 1:
            ok = False
            break
        ts.append(pieces[0][0])
    if ok and _is_silting_list(ts, a) and _certify_min(us, ts, a):
        return (ts, mults) if return_approx else ts
    # fallback: descend from S by left mutations at non-u indices
    cur = list(s)
    for _ in range(max_steps):
        if _certify_min(us, cur, a):
            return (cur, mults) if return_approx else cur
        smc = smc_of_silting(cur)
        moved = False
        for j in range(m, a.n):
            if smc.parts[j][0] > 0:
                cur = mutate(cur, j, "left", verify=False)
                moved = True
                break
        if not moved:
            break
    raise CompletionNotVerified("minimal completion could not be certified")


def _certify_min(us, ts, a):
    h_t = h0(as_complex(ts, a))
    h_u = h0(as_complex(us, a)) if us else rm.zero_module(a)
    return _fac_contained(h_t, h_u)
