"""Right modules over adapted algebras.

A module is a row space ``Q^d`` with one action matrix per algebra basis
element; ``m . b`` is ``m @ action[b]``.  The basis is always *graded*: each
basis vector lies in ``M e_s`` for one vertex ``s``.  Homomorphisms are
matrices ``F`` with ``m -> m @ F``, so "first f, then g" is ``F @ G``.
"""
import random
from fractions import Fraction

from . import qlinalg as ql
from .errors import NonSplitSemisimple, OwnerMismatch


def _zero(r, c):
    return [[0] * c for _ in range(r)]


class AModule:
    """A finite-dimensional right module over an adapted ``Algebra``.

    Attributes:
        owner: the algebra.
        dim: dimension over Q.
        action: ``action[b]`` is the ``dim x dim`` matrix of basis element b.
        grade: vertex index of every basis vector.
    """

    def __init__(self, owner, action, grade=None, check=False, name=None):
        if not owner.adapted:
            raise ValueError("modules require an adapted algebra")
        self.owner = owner
        self.action = action
        self.dim = len(action[0]) if action else 0
        self.name = name
        if grade is None:
            grade = []
            for i in range(self.dim):
                g = None
                for s, eb in enumerate(owner.idem_basis):
                    if any(action[eb][i]):
                        g = s
                        break
                grade.append(g)
            if any(g is None for g in grade) or not self._is_graded(grade):
                raise ValueError("basis is not graded; use from_action")
        self.grade = list(grade)
        if check:
            self.check()

    def _is_graded(self, grade):
        for s, eb in enumerate(self.owner.idem_basis):
            m = self.action[eb]
            for i in range(self.dim):
                for j in range(self.dim):
                    want = 1 if (i == j and grade[i] == s) else 0
                    if m[i][j] != want:
                        return False
        return True

    @classmethod
    def from_action(cls, owner, action, name=None):
        """Build a module from arbitrary action matrices, regrading if needed."""
        d = len(action[0]) if action else 0
        newbasis = []
        grade = []
        for s, eb in enumerate(owner.idem_basis):
            img = ql.Subspace([r for r in action[eb] if any(r)], d) if d else ql.Subspace.zero(0)
            for v in img.basis:
                newbasis.append(list(v))
                grade.append(s)
        if len(newbasis) != d:
            raise ValueError("idempotents do not act as a complete set")
        coords = ql.SpanCoords(newbasis, d)
        new_action = []
        for b in range(owner.dim):
            new_action.append([coords.coords(ql.vecmat(v, action[b], d)) for v in newbasis])
        return cls(owner, new_action, grade, name=name)

    def check(self):
        a = self.owner
        for i in range(a.dim):
            for j in range(a.dim):
                lhs = ql.matmul(self.action[i], self.action[j])
                rhs = _zero(self.dim, self.dim)
                for k, c in a.mult[i][j].items():
                    for r in range(self.dim):
                        for t in range(self.dim):
                            rhs[r][t] += c * self.action[k][r][t]
                if self.dim and lhs != rhs:
                    raise ValueError("action does not respect multiplication")

    def act(self, v, b):
        return ql.vecmat(v, self.action[b], self.dim)

    def act_element(self, v, coords):
        out = [0] * self.dim
        for b, c in enumerate(coords):
            if c:
                w = self.act(v, b)
                out = [x + c * y for x, y in zip(out, w)]
        return out

    @property
    def dimvec(self):
        dv = [0] * self.owner.n
        for g in self.grade:
            dv[g] += 1
        return tuple(dv)

    def vertex_block(self, s):
        return [i for i, g in enumerate(self.grade) if g == s]

    def is_zero(self):
        return self.dim == 0

    def __repr__(self):
        return "AModule(dimvec=%s)" % (self.dimvec,)


class ModuleHom:
    """A module map given by a ``src.dim x dst.dim`` matrix."""

    __slots__ = ("src", "dst", "matrix")

    def __init__(self, src, dst, matrix):
        self.src = src
        self.dst = dst
        self.matrix = matrix

    def then(self, other):
        return ModuleHom(self.src, other.dst, ql.matmul(self.matrix, other.matrix))

    def image(self):
        return ql.Subspace([r for r in self.matrix if any(r)], self.dst.dim)

    def kernel(self):
        return ql.left_kernel(self.matrix, self.src.dim) if self.src.dim else ql.Subspace.zero(0)

    def is_zero(self):
        return not any(any(r) for r in self.matrix)


def zero_module(a):
    return AModule(a, [[] for _ in range(a.dim)], [])


def _same_owner(m, n):
    if m.owner is not n.owner:
        raise OwnerMismatch("modules over different algebras")


# ---------------------------------------------------------------------------
# standard modules

def projective(a, i):
    """P(i) = e_i A, basis = basis elements with source i."""
    basis = [b for b in range(a.dim) if a.corner[b][0] == i]
    pos = {b: k for k, b in enumerate(basis)}
    action = []
    for x in range(a.dim):
        mat = []
        for b in basis:
            row = [0] * len(basis)
            for k, c in a.mult[b][x].items():
                row[pos[k]] = c
            mat.append(row)
        action.append(mat)
    return AModule(a, action, [a.corner[b][1] for b in basis], name="P%d" % (i + 1))


def projectives(a):
    return [projective(a, i) for i in range(a.n)]


def injective(a, k):
    """I(k) = D(A e_k); basis vector b* has vertex source(b)."""
    basis = [b for b in range(a.dim) if a.corner[b][1] == k]
    pos = {b: i for i, b in enumerate(basis)}
    action = []
    for x in range(a.dim):
        mat = _zero(len(basis), len(basis))
        # (b* . x)(c) = coeff_b(x c)
        for ci, c in enumerate(basis):
            for t, v in a.mult[x][c].items():
                if t in pos:
                    mat[pos[t]][ci] += v
        action.append(mat)
    return AModule(a, action, [a.corner[b][0] for b in basis], name="I%d" % (k + 1))


def injectives(a):
    return [injective(a, k) for k in range(a.n)]


def simple(a, i):
    action = [[[1 if (b == a.idem_basis[i]) else 0]] for b in range(a.dim)]
    return AModule(a, action, [i], name="L%d" % (i + 1))


def simples(a):
    return [simple(a, i) for i in range(a.n)]


def regular(a):
    return direct_sum(projectives(a))


def projective_map(a, coords, k, j):
    """Matrix of P(k) -> P(j), x -> a x, for ``a`` in e_j A e_k."""
    src = [b for b in range(a.dim) if a.corner[b][0] == k]
    dst = [b for b in range(a.dim) if a.corner[b][0] == j]
    pos = {b: i for i, b in enumerate(dst)}
    mat = []
    for x in src:
        row = [0] * len(dst)
        for b, c in enumerate(coords):
            if c:
                for t, v in a.mult[b][x].items():
                    row[pos[t]] += c * v
        mat.append(row)
    return mat


def injective_map(a, coords, k, j):
    """Nakayama image of ``a`` in e_j A e_k: I(k) -> I(j), phi -> phi(- a)."""
    src = [b for b in range(a.dim) if a.corner[b][1] == k]
    dst = [b for b in range(a.dim) if a.corner[b][1] == j]
    pos = {b: i for i, b in enumerate(src)}
    mat = _zero(len(src), len(dst))
    for yi, y in enumerate(dst):
        for b, c in enumerate(coords):
            if c:
                for t, v in a.mult[y][b].items():
                    if t in pos:
                        mat[pos[t]][yi] += c * v
    return mat


# ---------------------------------------------------------------------------
# sums, submodules, quotients

def direct_sum(mods, owner=None):
    if not mods:
        if owner is None:
            raise ValueError("empty direct sum needs an owner")
        return zero_module(owner)
    a = mods[0].owner
    for m in mods:
        _same_owner(mods[0], m)
    d = sum(m.dim for m in mods)
    action = []
    for b in range(a.dim):
        mat = _zero(d, d)
        off = 0
        for m in mods:
            for i in range(m.dim):
                mat[off + i][off:off + m.dim] = m.action[b][i]
            off += m.dim
        action.append(mat)
    grade = [g for m in mods for g in m.grade]
    return AModule(a, action, grade)


def _graded_parts(m, v):
    parts = {}
    for i, x in enumerate(v):
        if x:
            parts.setdefault(m.grade[i], [0] * m.dim)[i] = x
    return list(parts.values())


def submodule_span(m, vectors):
    """Smallest submodule containing ``vectors`` (as a Subspace of m)."""
    gens = m.owner.compute_generators()
    todo = []
    for v in vectors:
        todo.extend(_graded_parts(m, v))
    span = ql.Subspace(todo, m.dim) if todo else ql.Subspace.zero(m.dim)
    frontier = list(span.basis)
    while frontier:
        new = []
        for v in frontier:
            for g in gens:
                w = m.act(v, g)
                if any(w) and not span.contains(w):
                    span = span + ql.Subspace([w], m.dim)
                    new.append(w)
        frontier = new
    return span


def submodule(m, sub):
    """Module structure on a submodule given as a Subspace; returns (S, inclusion)."""
    basis = [list(v) for v in sub.basis]
    if not basis:
        z = zero_module(m.owner)
        return z, ModuleHom(z, m, [])
    coords = ql.SpanCoords(basis, m.dim)
    action = []
    for b in range(m.owner.dim):
        rows = []
        for v in basis:
            c = coords.coords(m.act(v, b))
            if c is None:
                raise ValueError("subspace is not a submodule")
            rows.append(c)
        action.append(rows)
    grade = [m.grade[next(i for i, x in enumerate(v) if x)] for v in basis]
    s = AModule(m.owner, action, grade)
    return s, ModuleHom(s, m, basis)


def quotient(m, sub):
    """Quotient by a submodule Subspace; returns (Q, projection)."""
    reps = sub.complement_columns()
    action = []
    for b in range(m.owner.dim):
        rows = []
        for c in reps:
            r = sub.reduce(m.action[b][c])
            rows.append([r[k] for k in reps])
        action.append(rows)
    q = AModule(m.owner, action, [m.grade[c] for c in reps])
    proj = []
    for i in range(m.dim):
        e = [0] * m.dim
        e[i] = 1
        r = sub.reduce(e)
        proj.append([r[k] for k in reps])
    return q, ModuleHom(m, q, proj)


def sub_quotient(m, generators):
    """(submodule generated, quotient, inclusion, projection)."""
    sub = submodule_span(m, generators)
    s, inc = submodule(m, sub)
    q, pr = quotient(m, sub)
    return s, q, inc, pr


# ---------------------------------------------------------------------------
# Hom spaces

def hom_space(m, n):
    """Basis of Hom_A(m, n) as ModuleHom objects."""
    _same_owner(m, n)
    if m.dim == 0 or n.dim == 0:
        return []
    a = m.owner
    unknowns = []
    index = {}
    for i in range(m.dim):
        for j in range(n.dim):
            if m.grade[i] == n.grade[j]:
                index[(i, j)] = len(unknowns)
                unknowns.append((i, j))
    if not unknowns:
        return []
    rows = []
    nu = len(unknowns)
    for g in a.compute_generators():
        s, t = a.corner[g]
        rm, rn = m.action[g], n.action[g]
        ms, nt = m.vertex_block(s), n.vertex_block(t)
        mt, ns = m.vertex_block(t), n.vertex_block(s)
        # (R_M(g) F - F R_N(g))[i][j] for i in M_s, j in N_t
        for i in ms:
            for j in nt:
                row = [0] * nu
                for k in mt:
                    c = rm[i][k]
                    if c:
                        row[index[(k, j)]] += c
                for k in ns:
                    c = rn[k][j]
                    if c:
                        row[index[(i, k)]] -= c
                if any(row):
                    rows.append(row)
    ker = ql.kernel(rows, nu) if rows else ql.Subspace.full(nu)
    out = []
    for v in ker.basis:
        mat = _zero(m.dim, n.dim)
        for u, x in enumerate(v):
            if x:
                i, j = unknowns[u]
                mat[i][j] = x
        out.append(ModuleHom(m, n, mat))
    return out


def hom_dim(m, n):
    return len(hom_space(m, n))


def _trace_of_product(f, g):
    """tr(F @ G) for F: m x n and G: n x m."""
    t = 0
    for i, row in enumerate(f):
        for k, x in enumerate(row):
            if x:
                y = g[k][i]
                if y:
                    t += x * y
    return t


def rad_hom(m, n, homs=None):
    """rad_A(m, n) as a list of ModuleHom spanning it.

    ``f`` lies in the radical iff ``tr(f g) = 0`` for every ``g: n -> m``;
    this is the (m, n) block of the trace-form radical of End(m + n).
    """
    if homs is None:
        homs = hom_space(m, n)
    if not homs:
        return []
    back = hom_space(n, m)
    if not back:
        return list(homs)
    conds = [[_trace_of_product(f.matrix, g.matrix) for f in homs] for g in back]
    ker = ql.kernel(conds, len(homs))
    return [_combine(homs, v, m, n) for v in ker.basis]


def _combine(homs, coeffs, m, n):
    mat = _zero(m.dim, n.dim)
    for h, c in zip(homs, coeffs):
        if c:
            for i, row in enumerate(h.matrix):
                for j, x in enumerate(row):
                    if x:
                        mat[i][j] += c * x
    return ModuleHom(m, n, mat)


def trace(gen, target):
    """Sum of images of all maps gen -> target; returns (T, inclusion)."""
    _same_owner(gen, target)
    return submodule(target, trace_subspace(gen, target))


def trace_subspace(gen, target):
    vecs = [r for h in hom_space(gen, target) for r in h.matrix if any(r)]
    return ql.Subspace(vecs, target.dim) if vecs else ql.Subspace.zero(target.dim)


def reject_subspace(m, cogen):
    homs = hom_space(m, cogen)
    if not homs or m.dim == 0:
        return ql.Subspace.full(m.dim)
    wide = [sum((h.matrix[i] for h in homs), []) for i in range(m.dim)]
    return ql.left_kernel(wide, m.dim)


def reject(m, cogen):
    """Intersection of kernels of all maps m -> cogen; returns (R, inclusion)."""
    _same_owner(m, cogen)
    return submodule(m, reject_subspace(m, cogen))


def top(m):
    """m / m rad A."""
    gens = m.owner.compute_generators()
    vecs = [m.act(list(r), g) for g in gens for r in _identity(m.dim)]
    vecs = [v for v in vecs if any(v)]
    sub = ql.Subspace(vecs, m.dim) if vecs else ql.Subspace.zero(m.dim)
    return quotient(m, sub)[0]


def radical_submodule(m):
    gens = m.owner.compute_generators()
    vecs = [m.act(list(r), g) for g in gens for r in _identity(m.dim)]
    vecs = [v for v in vecs if any(v)]
    return ql.Subspace(vecs, m.dim) if vecs else ql.Subspace.zero(m.dim)


def socle(m):
    gens = m.owner.compute_generators()
    if not gens or m.dim == 0:
        return submodule(m, ql.Subspace.full(m.dim))[0]
    wide = [sum((m.action[g][i] for g in gens), []) for i in range(m.dim)]
    return submodule(m, ql.left_kernel(wide, m.dim))[0]


def _identity(d):
    return [[1 if i == j else 0 for j in range(d)] for i in range(d)]


# ---------------------------------------------------------------------------
# decomposition and isomorphism

def _min_poly_matrix(f):
    d = len(f)
    powers = [_identity(d)]
    while True:
        nxt = ql.matmul(powers[-1], f)
        cols = [[p[i][j] for p in powers] for i in range(d) for j in range(d)]
        target = [nxt[i][j] for i in range(d) for j in range(d)]
        sol = ql.solve(cols, target)
        if sol is not None:
            return [-c for c in sol[0]] + [Fraction(1)]
        powers.append(nxt)


def _rational_roots(coeffs):
    import sympy
    t = sympy.Symbol("t")
    poly = sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * t ** k
                          for k, c in enumerate(coeffs)), t)
    return sorted(Fraction(int(r.p), int(r.q)) for r in poly.ground_roots())


def _matrix_power(f, k):
    out = _identity(len(f))
    for _ in range(k):
        out = ql.matmul(out, f)
    return out


def _fitting_split(m, endos, rng):
    """Return (sub1, sub2) Subspaces with m = sub1 + sub2, or None."""
    d = m.dim
    cands = [h.matrix for h in endos]
    for _ in range(12):
        coeffs = [rng.randint(-4, 4) for _ in endos]
        mat = _zero(d, d)
        for h, c in zip(endos, coeffs):
            if c:
                for i in range(d):
                    for j in range(d):
                        mat[i][j] += c * h.matrix[i][j]
        cands.append(mat)
    for f in cands:
        mp = _min_poly_matrix(f)
        if len(mp) <= 2:
            continue
        for lam in _rational_roots(mp):
            g = [[f[i][j] - (lam if i == j else 0) for j in range(d)] for i in range(d)]
            gn = _matrix_power(g, d)
            rows = [r for r in gn if any(r)]
            if not rows:
                continue
            img = ql.Subspace(rows, d)
            if img.dim == d:
                continue
            ker = ql.left_kernel(gn, d)
            return img, ker
    return None


def _local_end(m, endos):
    """True when End(m) modulo its radical is one-dimensional."""
    if len(endos) <= 1:
        return True
    return len(endos) - len(rad_hom(m, m, endos)) == 1


def indecompose(m):
    """Krull-Schmidt decomposition: list of (indecomposable, multiplicity).

    Raises:
        NonSplitSemisimple: End(m) has a semisimple part that no rational
            eigenvalue splits.
    """
    if m.dim == 0:
        return []
    rng = random.Random(20240611)
    pieces = []
    stack = [m]
    while stack:
        x = stack.pop()
        endos = hom_space(x, x)
        if _local_end(x, endos):
            pieces.append(x)
            continue
        split = _fitting_split(x, endos, rng)
        if split is None:
            raise NonSplitSemisimple("End of a module of dimension %d does not split" % x.dim)
        for sub in split:
            stack.append(submodule(x, sub)[0])
    groups = []
    for p in pieces:
        for g in groups:
            if is_isomorphic_indec(g[0], p):
                g[1] += 1
                break
        else:
            groups.append([p, 1])
    groups.sort(key=lambda g: (g[0].dimvec, g[0].dim))
    return [(g[0], g[1]) for g in groups]


def _det_nonzero(mat):
    return len(mat) == len(mat[0]) and ql.rank(mat) == len(mat)


def is_isomorphic_indec(x, y):
    """Isomorphism test for indecomposable modules with local End."""
    if x.dimvec != y.dimvec:
        return False
    fs = hom_space(x, y)
    gs = hom_space(y, x)
    for f in fs:
        for g in gs:
            if _det_nonzero(ql.matmul(f.matrix, g.matrix)):
                return True
    return False


def is_isomorphic(x, y):
    """Isomorphism test: a random intertwiner first, decompositions as proof."""
    if x.owner is not y.owner or x.dimvec != y.dimvec:
        return False
    if x.dim == 0:
        return True
    homs = hom_space(x, y)
    if not homs:
        return False
    rng = random.Random(7)
    for _ in range(3):
        coeffs = [rng.randint(-1000, 1000) for _ in homs]
        if _det_nonzero(_combine(homs, coeffs, x, y).matrix):
            return True
    dx, dy = indecompose(x), indecompose(y)
    if len(dx) != len(dy):
        return False
    used = [False] * len(dy)
    for p, k in dx:
        for idx, (q, l) in enumerate(dy):
            if not used[idx] and k == l and is_isomorphic_indec(p, q):
                used[idx] = True
                break
        else:
            return False
    return True


def is_brick(m):
    if m.dim == 0:
        return False
    endos = hom_space(m, m)
    if len(endos) == 1:
        return True
    if rad_hom(m, m, endos):
        return False
    # semisimple End of dimension > 1: a brick only if it is a division ring
    return len(indecompose(m)) == 1 and _fitting_split(m, endos, random.Random(3)) is None \
        and not _has_zero_divisor(m, endos)


def _has_zero_divisor(m, endos):
    for h in endos:
        if not _det_nonzero(h.matrix):
            return True
    return False


def is_semibrick(m):
    parts = indecompose(m)
    if any(k > 1 for _, k in parts):
        return False
    bricks = [p for p, _ in parts]
    if not all(is_brick(b) for b in bricks):
        return False
    for i, x in enumerate(bricks):
        for j, y in enumerate(bricks):
            if i != j and hom_space(x, y):
                return False
    return True


def end_dim_mod_rad(m):
    """dim_Q End(m)/rad End(m)."""
    endos = hom_space(m, m)
    return len(endos) - len(rad_hom(m, m, endos))


def euler_pair(theta, m):
    """sum_i theta_i dim(m e_i)."""
    if len(theta) != m.owner.n:
        raise ValueError("theta has %d entries, algebra has %d vertices" % (len(theta), m.owner.n))
    return sum(t * d for t, d in zip(theta, m.dimvec))


def endomorphism_algebra(m):
    """End_A(m) with product b.c = b o c (first c, then b).

    Returns:
        (algebra, homs) where ``homs[k]`` is the ModuleHom of basis element k.
        The algebra is adapted to a complete set of primitive idempotents.
    """
    from . import algebra as al
    homs = hom_space(m, m)
    d = len(homs)
    flat = [[x for row in h.matrix for x in row] for h in homs]
    coords = ql.SpanCoords(flat, m.dim * m.dim)
    mult = []
    for b in homs:
        row = []
        for c in homs:
            prod = ql.matmul(c.matrix, b.matrix)
            co = coords.coords([x for r in prod for x in r])
            row.append({k: Fraction(v) for k, v in enumerate(co) if v})
        mult.append(row)
    ident = coords.coords([x for r in _identity(m.dim) for x in r])
    raw = al.Algebra(["f%d" % k for k in range(d)], mult, [ident], check=False)
    adapted = al.adapt(raw, al.primitive_idempotents(raw))
    new_homs = []
    for v in adapted.change_of_basis:
        new_homs.append(_combine(homs, v, m, m))
    return adapted, new_homs
