"""Reduction at a presilting complex U: the algebra B, Phi, pi and the modules M_i."""
from fractions import Fraction

from . import algebra as al
from . import cpx2
from . import qlinalg as ql
from . import repmod as rm
from .errors import CertificationFailed, NotInWU


def _flat(mat):
    return [x for row in mat for x in row]


def _unflat(v, nr, nc):
    return [list(v[r * nc:(r + 1) * nc]) for r in range(nr)]


class _Block:
    """A vector space of maps with a chosen basis, for one B-vertex."""

    def __init__(self, vecs, ambient, null=()):
        self.null = [list(v) for v in null]
        self.ambient = ambient
        span = ql.Subspace(self.null, ambient) if self.null else ql.Subspace.zero(ambient)
        self.basis = []
        for v in vecs:
            if not span.contains(v):
                span = span + ql.Subspace([v], ambient)
                self.basis.append(list(v))
        self._coords = ql.SpanCoords(self.null + self.basis, ambient) if (self.null or self.basis) else None

    @property
    def dim(self):
        return len(self.basis)

    def coords(self, v):
        if self._coords is None:
            if any(v):
                raise CertificationFailed("map outside the expected space")
            return []
        c = self._coords.coords(v)
        if c is None:
            raise CertificationFailed("map outside the expected space")
        return c[len(self.null):]


class ReductionContext:
    """Everything attached to a presilting U.

    Attributes:
        a: the algebra A.
        u: summands U_1..U_m in the given order.
        m: number of summands.
        s, t: maximal and minimal completions (U first).
        x_smc, y_smc: semibrick data of S and T.
        d: d-values of the summands of S.
        b: the reduced algebra B, or None when U is silting.
        pi_matrix: n x (n - m) integer matrix of pi (row-vector convention).
        approx_mult: a[j][i], multiplicity of U_i in the approximation of S_j.
    """

    def __init__(self, a, u):
        self.a = a
        self.u = list(u)
        self.m = len(self.u)
        n = a.n
        self.n = n
        self.s = cpx2.bongartz_completion(self.u, owner=a)
        self.t, mults = cpx2.minimal_completion(self.u, s=self.s, owner=a, return_approx=True)
        self.approx_mult = {j: list(v) for j, v in mults.items()}
        self.x_smc = cpx2.smc_of_silting(self.s)
        self.y_smc = cpx2.smc_of_silting(self.t)
        self.d = list(self.x_smc.d)
        self.u_complex = cpx2.as_complex(self.u, a)
        g = cpx2.g_matrix(self.s)
        ginv = _inverse(g)
        self.pi_matrix = [row[self.m:] for row in ginv]
        self._ginv = ginv
        self._build_b()

    # -- B -------------------------------------------------------------------
    def _build_b(self):
        a, m, n = self.a, self.m, self.n
        self.h0s = []
        for x in self.s:
            self.h0s.append(_h0_with_projection(x))
        k = n - m
        self.rank = k
        if k == 0:
            self.b = None
            self.corner_blocks = {}
            return
        hs = [h for h, _ in self.h0s]
        blocks = {}
        end_dim = 0
        ideal_dim = 0
        for si in range(n):
            for ti in range(n):
                end_dim += rm.hom_dim(hs[ti], hs[si])
        for s in range(k):
            for t in range(k):
                src, dst = hs[m + t], hs[m + s]
                amb = src.dim * dst.dim
                homs = rm.hom_space(src, dst)
                ideal = []
                for i in range(m):
                    mid = hs[i]
                    if mid.dim == 0:
                        continue
                    for al_ in rm.hom_space(src, mid):
                        for be in rm.hom_space(mid, dst):
                            v = _flat(ql.matmul(al_.matrix, be.matrix))
                            if any(v):
                                ideal.append(v)
                ideal_sub = ql.Subspace(ideal, amb) if ideal else ql.Subspace.zero(amb)
                order = []
                if s == t:
                    order.append(_flat(_identity(src.dim)))
                    order.extend(_flat(h.matrix) for h in rm.rad_hom(src, dst, homs))
                order.extend(_flat(h.matrix) for h in homs)
                blk = _Block(order, amb, null=ideal_sub.basis)
                ideal_dim += ideal_sub.dim
                blocks[(s, t)] = blk
        # block entries for pairs touching U all lie in <e>
        for si in range(n):
            for ti in range(n):
                if si < m or ti < m:
                    ideal_dim += rm.hom_dim(hs[ti], hs[si])
        labels, where = [], []
        for (s, t), blk in sorted(blocks.items()):
            for q in range(blk.dim):
                labels.append("c%d_%d_%d" % (s + 1, t + 1, q))
                where.append((s, t, q))
        index = {w: i for i, w in enumerate(where)}
        mult = []
        for (s, t, q) in where:
            bm = _unflat(blocks[(s, t)].basis[q], hs[m + t].dim, hs[m + s].dim)
            row = []
            for (t2, u, r) in where:
                if t2 != t:
                    row.append({})
                    continue
                cm = _unflat(blocks[(t, u)].basis[r], hs[m + u].dim, hs[m + t].dim)
                prod = _flat(ql.matmul(cm, bm))
                co = blocks[(s, u)].coords(prod)
                row.append({index[(s, u, p)]: Fraction(x) for p, x in enumerate(co) if x})
            mult.append(row)
        idem = []
        for s in range(k):
            e = [0] * len(where)
            e[index[(s, s, 0)]] = 1
            idem.append(e)
        b = al.Algebra(labels, mult, idem)
        if not b.adapted:
            raise CertificationFailed("reduced algebra basis is not adapted")
        self.b = b
        self.corner_blocks = blocks
        self._where = where
        self.end_dim = end_dim
        self.ideal_dim = ideal_dim

    def b_matrix(self, idx):
        """(s, t, map matrix H0(S_{m+t}) -> H0(S_{m+s})) of a B basis element."""
        s, t, q = self._where[idx]
        hs = self.h0s
        return s, t, _unflat(self.corner_blocks[(s, t)].basis[q], hs[self.m + t][0].dim,
                             hs[self.m + s][0].dim)

    def b_quiver(self):
        if self.b is None:
            return None
        return al.quiver_guess(self.b)

    def u_g_vectors(self):
        return [x.g_vector for x in self.u]


def _identity(d):
    return [[1 if i == j else 0 for j in range(d)] for i in range(d)]


def _inverse(g):
    n = len(g)
    out = []
    for i in range(n):
        e = [1 if k == i else 0 for k in range(n)]
        sol = ql.solve(ql.transpose(g), e)
        if sol is None:
            raise CertificationFailed("g-vectors of the completion are not a basis")
        out.append(sol[0])
    # out[i] = coordinates of e_i in the g-basis; rows of G^{-1}
    return out


def _h0_with_projection(x):
    a = x.owner
    p0 = cpx2.proj_module(a, x.p_zero)
    if not x.p_minus or p0.dim == 0:
        return p0, _identity(p0.dim)
    mm = cpx2._module_matrix(a, x.diff, x.p_minus, x.p_zero)
    img = ql.Subspace([r for r in mm if any(r)], p0.dim) if mm else ql.Subspace.zero(p0.dim)
    q, proj = rm.quotient(p0, img)
    return q, proj.matrix


def reduce(a, u):
    """Build the ReductionContext of the presilting summand list ``u``."""
    if isinstance(u, cpx2.TwoTerm):
        us = cpx2.basic_summands(u) if not u.is_zero() else []
    else:
        us = list(u)
    return ReductionContext(a, us)


def w_u_membership(ctx, m):
    h = cpx2.h0(ctx.u_complex) if ctx.m else rm.zero_module(ctx.a)
    nu = cpx2.hminus1_nu(ctx.u_complex) if ctx.m else rm.zero_module(ctx.a)
    if m.dim == 0:
        return True
    return rm.hom_dim(h, m) == 0 and rm.hom_dim(m, nu) == 0


def pi(ctx, theta):
    k = ctx.n - ctx.m
    return ql.vecmat(list(theta), ctx.pi_matrix, k) if k else []


def _bmodule(ctx, blocks, act):
    """Assemble a B-module from per-vertex bases and a right action.

    ``blocks[s]`` is a _Block of the vertex-s part; ``act(f, s, t, bmat)``
    returns the vector of f.b in the ambient space of vertex t.
    """
    b = ctx.b
    offs, tot = [], 0
    for blk in blocks:
        offs.append(tot)
        tot += blk.dim
    grade = [s for s, blk in enumerate(blocks) for _ in range(blk.dim)]
    action = []
    for idx in range(b.dim):
        s, t, bm = ctx.b_matrix(idx)
        mat = [[0] * tot for _ in range(tot)]
        for q, f in enumerate(blocks[s].basis):
            img = act(f, s, t, bm)
            co = blocks[t].coords(img)
            for p, x in enumerate(co):
                if x:
                    mat[offs[s] + q][offs[t] + p] = x
        action.append(mat)
    try:
        mod = rm.AModule(b, action, grade, check=True)
    except ValueError as exc:
        raise CertificationFailed("B does not act: %s" % exc)
    # the ideal <e> must act as zero
    for (s, t), cb in ctx.corner_blocks.items():
        hs = ctx.h0s
        for iv in cb.null:
            im = _unflat(iv, hs[ctx.m + t][0].dim, hs[ctx.m + s][0].dim)
            for f in blocks[s].basis:
                if any(blocks[t].coords(act(f, s, t, im))):
                    raise CertificationFailed("the idempotent ideal does not act as zero")
    return mod


def _zero_bmodule(ctx):
    if ctx.b is None:
        return None
    return rm.zero_module(ctx.b)


def _hom_blocks(ctx, target):
    blocks = []
    for s in range(ctx.rank):
        src = ctx.h0s[ctx.m + s][0]
        vecs = [_flat(h.matrix) for h in rm.hom_space(src, target)]
        blocks.append(_Block(vecs, src.dim * target.dim))
    return blocks


def _hom_act(ctx, target):
    def act(f, s, t, bm):
        src = ctx.h0s[ctx.m + s][0]
        fm = _unflat(f, src.dim, target.dim)
        return _flat(ql.matmul(bm, fm))
    return act


def phi(ctx, m):
    """Hom_A(H0(S), m) as a right B-module."""
    if not w_u_membership(ctx, m):
        raise NotInWU("module is not in the perpendicular category of U")
    if ctx.b is None:
        return None
    if m.dim == 0:
        return rm.zero_module(ctx.b)
    return _bmodule(ctx, _hom_blocks(ctx, m), _hom_act(ctx, m))


# -- M_i -----------------------------------------------------------------------

def _lift_to_chain(ctx, src_idx, dst_idx, phimat):
    """Degree -1 component of a chain map S_src -> S_dst inducing ``phimat`` on H0."""
    a = ctx.a
    xs, xd = ctx.s[src_idx], ctx.s[dst_idx]
    qs, ps = ctx.h0s[src_idx]
    qd, pd = ctx.h0s[dst_idx]
    kh = cpx2.hom_k(xs, xd, 0)
    induced = []
    section = []
    for i in range(qs.dim):
        e = [1 if k == i else 0 for k in range(qs.dim)]
        sol = ql.solve(ql.transpose(ps), e)
        section.append(sol[0])
    for f0, f1 in kh.reps:
        m0 = cpx2._module_matrix(a, f0, xs.p_zero, xd.p_zero) if xs.p_zero and xd.p_zero else \
            [[0] * len(pd) for _ in range(len(ps))]
        induced.append(_flat(ql.matmul(ql.matmul(section, m0), pd)) if qs.dim and qd.dim else [])
    target = _flat(phimat)
    if not kh.reps:
        if any(target):
            raise CertificationFailed("module map has no chain lift")
        return cpx2._zero_amat(len(xd.p_minus), len(xs.p_minus))
    sol = ql.solve(ql.transpose(induced), target) if target else ([0] * len(kh.reps), None)
    if sol is None:
        raise CertificationFailed("module map has no chain lift")
    return kh.combine(sol[0])[1]


def _shift_blocks(ctx, nmod):
    """Hom_K(S_k, N[1]) = Hom(S_k^{-1}, N) / {h d} per B-vertex."""
    a = ctx.a
    blocks = []
    for s in range(ctx.rank):
        x = ctx.s[ctx.m + s]
        ncols = len(x.p_minus)
        amb = ncols * nmod.dim
        vecs = []
        for c, v in enumerate(x.p_minus):
            for i in nmod.vertex_block(v):
                w = [0] * amb
                w[c * nmod.dim + i] = 1
                vecs.append(w)
        null = []
        for r, j in enumerate(x.p_zero):
            for i in nmod.vertex_block(j):
                unit = [1 if k == i else 0 for k in range(nmod.dim)]
                w = []
                for c in range(ncols):
                    w.extend(nmod.act_element(unit, cpx2._dense(a, x.diff[r][c])))
                if any(w):
                    null.append(w)
        blocks.append(_Block(vecs, amb, null=ql.Subspace(null, amb).basis if null else ()))
    return blocks


def _shift_act(ctx, nmod):
    a = ctx.a
    cache = {}

    def act(f, s, t, bm):
        key = (s, t, tuple(_flat(bm)))
        f1 = cache.get(key)
        if f1 is None:
            f1 = _lift_to_chain(ctx, ctx.m + t, ctx.m + s, bm)
            cache[key] = f1
        xs, xt = ctx.s[ctx.m + s], ctx.s[ctx.m + t]
        nd = nmod.dim
        parts = [f[r * nd:(r + 1) * nd] for r in range(len(xs.p_minus))]
        out = []
        for c in range(len(xt.p_minus)):
            acc = [0] * nd
            for r in range(len(xs.p_minus)):
                e = f1[r][c]
                if e and any(parts[r]):
                    w = nmod.act_element(parts[r], cpx2._dense(a, e))
                    acc = [p + q for p, q in zip(acc, w)]
            out.extend(acc)
        return out
    return act


def m_module(ctx, i):
    """The B-module M_i (0-based ``i`` < m), certified by its dimension vector."""
    if not 0 <= i < ctx.m:
        raise IndexError("summand index out of range")
    if ctx.b is None:
        return None
    sign, y = ctx.y_smc.parts[i]
    if y.dim == 0:
        mod = rm.zero_module(ctx.b)
    elif sign > 0:
        mod = _bmodule(ctx, _hom_blocks(ctx, y), _hom_act(ctx, y))
    else:
        mod = _bmodule(ctx, _shift_blocks(ctx, y), _shift_act(ctx, y))
    want = expected_m_dimvec(ctx, i)
    if tuple(mod.dimvec) != tuple(want):
        raise CertificationFailed("M_%d has dimension vector %s, expected %s"
                                  % (i + 1, mod.dimvec, tuple(want)))
    return mod


def expected_m_dimvec(ctx, i):
    """b_{j,i} = a_{j,i} d_{U_i} / d_{S_j} for j > m."""
    out = []
    for j in range(ctx.m, ctx.n):
        aji = ctx.approx_mult[j][i]
        out.append(Fraction(aji * ctx.d[i], ctx.d[j]))
    return out


def b_report(ctx):
    """JSON-ready description of B, pi and the M_i."""
    if ctx.b is None:
        return {"dim": 0, "quiver": None, "pi": [list(r) for r in ctx.pi_matrix], "M": []}
    q = ctx.b_quiver()
    quiver = None
    if q is not None:
        quiver = {"vertices": list(q.vertices), "arrows": [list(x) for x in q.arrows]}
    ms = []
    for i in range(ctx.m):
        mod = m_module(ctx, i)
        ms.append({"dimvec": list(mod.dimvec)})
    return {"dim": ctx.b.dim, "quiver": quiver,
            "pi": [[int(x) if x == int(x) else str(x) for x in r] for r in ctx.pi_matrix],
            "M": ms}
