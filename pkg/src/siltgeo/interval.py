"""The interval neighbourhood D(U) and everything built on it."""
from fractions import Fraction

from . import cpx2
from . import qlinalg as ql
from . import repmod as rm
from . import siltfan as sf
from .cones import GenFan, RatCone, common_refinement, fan_check, fan_image
from .errors import (CertificationFailed, IncompleteReduction, NotInDU,
                     SaturationViolated)
from .reduction import m_module, pi, reduce


class FacetDatum:
    """A facet of D(U) with its brick label.

    ``index`` is 0-based (summand U_{index+1}); ``normal`` = eps * dimvec(label).
    """

    __slots__ = ("face", "index", "eps", "label", "normal")

    def __init__(self, face, index, eps, label, normal):
        self.face = face
        self.index = index
        self.eps = eps
        self.label = label
        self.normal = normal

    def __repr__(self):
        return "FacetDatum(i=%d, eps=%+d, label=%s)" % (self.index + 1, self.eps, self.label.dimvec)

    def to_json(self):
        return {"i": self.index + 1, "eps": "+" if self.eps > 0 else "-",
                "label_dimvec": list(self.label.dimvec), "normal": list(self.normal)}


def _dot(u, v):
    return sum(x * y for x, y in zip(u, v))


class IntervalContext:
    """Reduction data plus the constrained atlas and lazily built atlases.

    Args:
        a: the algebra.
        u: summand list of a presilting complex (order defines U_1..U_m).
        cap: enumeration cap for every atlas.
    """

    def __init__(self, a, u, cap=10000):
        self.red = reduce(a, u)
        self.a = a
        self.u = self.red.u
        self.m = self.red.m
        self.n = a.n
        self.cap = cap
        self.atlas = sf.enumerate_siltings(a, cap, start=self.red.s, frozen=self.m)
        self._a_atlas = None
        self._b_atlas = None
        self._facets = None
        self._cone = None
        self._ms = None

    @property
    def d(self):
        return self.red.d

    def require_complete(self):
        if not self.atlas.complete:
            raise IncompleteReduction("siltings containing U were not exhausted; raise the cap")

    @property
    def a_atlas(self):
        if self._a_atlas is None:
            self._a_atlas = sf.enumerate_siltings(self.a, self.cap)
        return self._a_atlas

    @property
    def b_atlas(self):
        if self._b_atlas is None:
            if self.red.b is None:
                return None
            self._b_atlas = sf.enumerate_siltings(self.red.b, self.cap)
            if not self._b_atlas.complete:
                raise IncompleteReduction("the reduced algebra is not certified brick finite")
        return self._b_atlas

    def m_modules(self):
        if self._ms is None:
            self._ms = [m_module(self.red, i) for i in range(self.m)]
        return self._ms

    def pi(self, theta):
        return pi(self.red, theta)


def context(a, u, cap=10000):
    return IntervalContext(a, u, cap)


def semibrick_pair(ctx):
    """[(Y_i^+, X_i^-)] for i = 1..m."""
    return cpx2.semibrick_parts(ctx.u) if ctx.m else []


def dcu_inequalities(ctx):
    """Facet data of D(U), read off the semibricks of all siltings containing U."""
    if ctx._facets is not None:
        return ctx._facets
    ctx.require_complete()
    labels = {}
    for smc in ctx.atlas.smc:
        for i in range(ctx.m):
            sign, mod = smc.parts[i]
            normal = tuple(sign * x for x in mod.dimvec)
            key = ql.primitive(list(normal))
            if key in labels:
                if labels[key][0] != i or labels[key][1] != sign:
                    raise CertificationFailed("one normal carries two labels")
                continue
            labels[key] = (i, sign, mod, normal)
    n = ctx.n
    if labels:
        cone = RatCone.from_inequalities([list(k) for k in sorted(labels)], ambient=n)
    else:
        cone = RatCone.whole(n)
    facets = {f.key: f for f in cone.facets()}
    out = []
    used = set()
    for key in sorted(labels):
        i, sign, mod, normal = labels[key]
        match = [f for f in facets.values()
                 if all(not _dot(key, r) for r in f.rays) and
                 all(not _dot(key, v) for v in f.lineality.basis)]
        if len(match) != 1:
            raise CertificationFailed("label %s does not cut out a unique facet" % (mod.dimvec,))
        face = match[0]
        if face.key in used:
            raise CertificationFailed("facet carries two labels")
        used.add(face.key)
        out.append(FacetDatum(face, i, sign, mod, normal))
    if len(used) != len(facets):
        raise CertificationFailed("a facet of D(U) has no label")
    out.sort(key=lambda f: (f.index, -f.eps, tuple(-x for x in f.label.dimvec)))
    ctx._facets = out
    ctx._cone = cone
    return out


def dcu_cone(ctx):
    dcu_inequalities(ctx)
    return ctx._cone


def dcu_membership(ctx, theta, open=False):
    """Closed test by the facet inequalities; open test by torsion triples."""
    theta = list(theta)
    closed = all(_dot(f.normal, theta) >= 0 for f in dcu_inequalities(ctx))
    if not open:
        return closed
    if not closed:
        return False
    atlas = ctx.a_atlas
    for plus, minus in semibrick_pair(ctx):
        if plus.dim:
            tr = sf.torsion_triple(atlas, theta, plus)
            if tr.t.dim != plus.dim:
                return False
        if minus.dim:
            tr = sf.torsion_triple(atlas, theta, minus)
            if tr.tbar.dim != 0:
                return False
    return True


def faces_by_I(ctx):
    """Map frozenset I (0-based) -> faces F of D(U) with I_F = I."""
    cone = dcu_cone(ctx)
    out = {}
    for f in cone.faces():
        out.setdefault(face_index_set(ctx, f), []).append(f)
    return out


def face_index_set(ctx, face):
    return frozenset(i for i, x in enumerate(ctx.u) if not face.contains(list(x.g_vector)))


def face_census(ctx):
    """{I (sorted tuple, 1-based): {dim: count}}."""
    out = {}
    for key, faces in faces_by_I(ctx).items():
        counts = {}
        for f in faces:
            counts[f.dim] = counts.get(f.dim, 0) + 1
        out[tuple(sorted(i + 1 for i in key))] = counts
    return out


def lambda_coefficients(ctx, theta):
    """a_i = min over facets labelled i of |theta(L_F)| / d_{U_i}."""
    facets = dcu_inequalities(ctx)
    theta = list(theta)
    if any(_dot(f.normal, theta) < 0 for f in facets):
        raise NotInDU("theta violates a facet inequality of D(U)")
    coeffs = []
    for i in range(ctx.m):
        vals = [abs(Fraction(_dot(f.normal, theta))) / ctx.d[i] for f in facets if f.index == i]
        if not vals:
            raise CertificationFailed("summand %d has no facet" % (i + 1))
        coeffs.append(min(vals))
    return coeffs


def lam(ctx, theta):
    """(lambda_U(theta), lambda'_U(theta))."""
    coeffs = lambda_coefficients(ctx, theta)
    lam_v = [Fraction(0)] * ctx.n
    for c, x in zip(coeffs, ctx.u):
        if c:
            lam_v = [p + c * q for p, q in zip(lam_v, x.g_vector)]
    rest = [Fraction(t) - p for t, p in zip(theta, lam_v)]
    return lam_v, rest


def rho(ctx, xi):
    """Section of pi on the link L(U), from the f-parts of the M_i."""
    ctx.require_complete()
    xi = list(xi)
    k = ctx.n - ctx.m
    if len(xi) != k:
        raise ValueError("xi has %d entries, B has %d vertices" % (len(xi), k))
    out = [Fraction(0)] * ctx.n
    for j, x in enumerate(xi):
        if x:
            out = [p + x * q for p, q in zip(out, ctx.red.s[ctx.m + j].g_vector)]
    if k:
        atlas = ctx.b_atlas
        for i, mi in enumerate(ctx.m_modules()):
            if mi.dim == 0:
                continue
            tr = sf.torsion_triple(atlas, xi, mi)
            fdim = tr.torsion_free.dimvec
            coef = abs(Fraction(_dot(xi, fdim))) / ctx.d[i]
            if coef:
                out = [p + coef * q for p, q in zip(out, ctx.u[i].g_vector)]
    back = ctx.pi(out)
    if list(back) != [Fraction(x) for x in xi]:
        raise CertificationFailed("pi(rho(xi)) != xi")
    if any(lambda_coefficients(ctx, out)):
        raise CertificationFailed("rho(xi) is not in the link")
    return out


def _pi_matrix_int(ctx):
    return [list(r) for r in ctx.red.pi_matrix]


def sigma_I(ctx, index_set):
    """pi-images of the faces with I_F = I, certified as a complete fan."""
    index_set = frozenset(index_set)
    groups = faces_by_I(ctx)
    faces = groups.get(index_set, [])
    support = [f for key, fs in groups.items() if index_set <= key for f in fs]
    k = ctx.n - ctx.m
    if k == 0:
        return GenFan([RatCone.origin(0)], 0) if faces else GenFan([], 0)
    fan = fan_image(faces, _pi_matrix_int(ctx), support)
    if len(fan.cones) != len(faces):
        raise SaturationViolated("pi is not injective on the faces")
    ok, complete = fan_check(fan)
    if not (ok and complete):
        raise CertificationFailed("Sigma_I is not a complete fan")
    return fan


def m_sum(ctx, index_set):
    mods = [ctx.m_modules()[i] for i in sorted(index_set)]
    return rm.direct_sum(mods, owner=ctx.red.b)


def sigma_MI(ctx, index_set):
    """(M_I-TF fan over B, equality verdict with sigma_I)."""
    atlas = ctx.b_atlas
    if atlas is None:
        return None, True
    mod = m_sum(ctx, index_set)
    fan = sf.mtf_fan(atlas, mod).fan
    return fan, fan == sigma_I(ctx, index_set)


def refinement_check(ctx):
    """Sigma_{1..m} equals the common refinement of the Sigma_{i}."""
    if ctx.m == 0 or ctx.red.b is None:
        return True
    fans = [sigma_I(ctx, [i]) for i in range(ctx.m)]
    ref = fans[0]
    for f in fans[1:]:
        ref = common_refinement(ref, f)
    return ref == sigma_I(ctx, range(ctx.m))


def tf_classify(ctx, theta):
    """(I, pi(theta)); I 0-based."""
    coeffs = lambda_coefficients(ctx, theta)
    return frozenset(i for i, c in enumerate(coeffs) if c > 0), ctx.pi(theta)


def tf_equivalent(ctx, theta, eta):
    """Same face of D(U) containing the point and same Sigma(M) class of pi."""
    def face_of(x):
        for f in dcu_cone(ctx).faces():
            if f.contains_relint(x):
                return f.key
        raise NotInDU("point outside D(U)")
    if face_of(theta) != face_of(eta):
        return False
    atlas = ctx.b_atlas
    if atlas is None:
        return True
    mod = m_sum(ctx, range(ctx.m))
    return sf.torsion_triple(atlas, ctx.pi(theta), mod).key() == \
        sf.torsion_triple(atlas, ctx.pi(eta), mod).key()


def strong_convexity_split(ctx):
    """(sincere, 0-based vertices whose [P(i)] span the lineality of D(U))."""
    if ctx.m == 0:
        return False, list(range(ctx.n))
    ux = ctx.red.u_complex
    dv = [x + y for x, y in zip(cpx2.h0(ux).dimvec, cpx2.hminus1_nu(ux).dimvec)]
    missing = [i for i, x in enumerate(dv) if not x]
    return not missing, missing


def link_and_partial(ctx, theta, i):
    """Flags (boundary_plus, boundary_minus, boundary, in_link) for summand i (0-based)."""
    theta = list(theta)
    if not dcu_membership(ctx, theta):
        raise NotInDU("theta is outside D(U)")
    plus, minus = semibrick_pair(ctx)[i]
    atlas = ctx.a_atlas
    bplus = bool(plus.dim) and sf.torsion_triple(atlas, theta, plus).t.dim != plus.dim
    bminus = bool(minus.dim) and sf.torsion_triple(atlas, theta, minus).tbar.dim != 0
    coeffs = lambda_coefficients(ctx, theta)
    boundary = coeffs[i] == 0
    if boundary != (bplus or bminus):
        raise CertificationFailed("boundary test disagrees with the torsion triples")
    return bplus, bminus, boundary, not any(coeffs)


# ---------------------------------------------------------------------------
# report

def _cone_json(c):
    rays, lin = c.generators()
    return {"dim": c.dim, "rays": rays, "lineality": lin}


def _frac(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def interval_report(ctx, rho_samples=None):
    """JSON-ready report with canonical orderings."""
    facets = dcu_inequalities(ctx)
    cone = dcu_cone(ctx)
    sincere, lin_idx = strong_convexity_split(ctx)
    report = {
        "U": [list(x.g_vector) for x in ctx.u],
        "S": [list(x.g_vector) for x in ctx.red.s],
        "T": [list(x.g_vector) for x in ctx.red.t],
        "smc_S": [["+" if s > 0 else "-", list(m.dimvec)] for s, m in ctx.red.x_smc.parts],
        "smc_T": [["+" if s > 0 else "-", list(m.dimvec)] for s, m in ctx.red.y_smc.parts],
        "d": list(ctx.d),
        "D": _cone_json(cone),
        "strongly_convex": sincere,
        "lineality_vertices": [i + 1 for i in lin_idx],
        "facets": [f.to_json() for f in facets],
    }
    faces = []
    for key, fs in sorted(faces_by_I(ctx).items(), key=lambda t: (len(t[0]), sorted(t[0]))):
        for f in fs:
            faces.append({"I": sorted(i + 1 for i in key), **_cone_json(f)})
    report["faces"] = faces
    report["census"] = [{"I": list(k), "counts": {str(d): c for d, c in sorted(v.items())}}
                        for k, v in sorted(face_census(ctx).items(), key=lambda t: (len(t[0]), t[0]))]
    red = ctx.red
    report["B"] = {"dim": red.b.dim if red.b else 0,
                   "pi": [[_frac(x) for x in r] for r in red.pi_matrix]}
    if red.b is not None:
        q = red.b_quiver()
        report["B"]["quiver"] = None if q is None else {
            "vertices": [str(v) for v in q.vertices], "arrows": [[str(x) for x in a] for a in q.arrows]}
        report["M"] = [list(mm.dimvec) for mm in ctx.m_modules()]
        fans = []
        m = ctx.m
        subsets = [frozenset(i for i in range(m) if mask >> i & 1) for mask in range(1 << m)]
        subsets.sort(key=lambda s: (len(s), sorted(s)))
        for s in subsets:
            sig = sigma_I(ctx, s)
            _, same = sigma_MI(ctx, s)
            fans.append({"I": sorted(i + 1 for i in s), "equal_to_mtf": same,
                         "cones": [_cone_json(c) for c in sig.cones]})
        report["fans"] = fans
        report["refinement"] = refinement_check(ctx)
        if rho_samples is None:
            k = ctx.n - m
            rho_samples = []
            for j in range(k):
                for sgn in (1, -1):
                    rho_samples.append([sgn if t == j else 0 for t in range(k)])
        report["rho"] = [{"xi": [_frac(x) for x in xi], "rho": [_frac(x) for x in rho(ctx, xi)]}
                         for xi in rho_samples]
    return report
