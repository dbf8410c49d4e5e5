"""Enumeration of rational tropical curves through generic points.

The engine is a recursion on two kinds of objects:

* Maslov-0 trees: curve pieces using a subset I of the marked points, with
  one distinguished out-edge leaving their root along the primitive direction
  of -r(Delta).  Level 1 trees are a mark plus one unbounded ray.  A level-n
  tree is either a gluing of two smaller trees at the crossing point of their
  out-rays, or the straight continuation of a Maslov-2 disk whose boundary
  sits at a marked point (the disk passes through the point).

* Maslov-2 disks with boundary X: a stem traced backward from X; each
  backward segment travels along +r(m) for the monomial m it carries, and is
  deflected at the out-ray of a Maslov-0 tree, subtracting the tree's degree
  from m, until m is a single ray generator (the initial unbounded edge).

A rational curve through P_1..P_k is cut at the last point into two disks
with complementary mark sets and complementary degrees; the two stems arrive
at the pivot from opposite directions with equal weight automatically, so
every valid pair assembles to a solution and the enumeration is a pairing of
pivot disks.  Throughout, any coincidence that only happens on a measure-zero
set of configurations raises GenericityError and the caller resamples.
"""

import multiprocessing
import random
from fractions import Fraction

from .fan import degree_total, make_degree, r_vector
from .lattice import (hdiff, hfrac, hpoint, on_ray, on_segment, primitive,
                      ray_intersect, wedge)
from .tropcurve import (GenericityError, InvariantError, ParamTropCurve,
                        TropicalDisk, TropicalTree, canonical_type,
                        geometric_signature, mikhalkin_multiplicity,
                        validate_curve, welschinger_multiplicity)

MAX_ATTEMPTS = 32


def _sieve_primes(lo, hi):
    flags = bytearray([1]) * (hi + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, int(hi ** 0.5) + 1):
        if flags[p]:
            flags[p * p::p] = bytearray(len(range(p * p, hi + 1, p)))
    return [p for p in range(lo, hi + 1) if flags[p]]


_PRIMES = _sieve_primes(1009, 9973)


class PointConfig:
    """k exact rational points with a record of how they were drawn."""

    def __init__(self, points, seed, attempt, certificate):
        self.points = tuple(points)       # homogeneous triples
        self.seed = seed
        self.attempt = attempt
        self.certificate = certificate

    def __len__(self):
        return len(self.points)

    def fractions(self):
        return [hfrac(p) for p in self.points]


def sample_generic_points(k, seed, bbox=(-10, 10), attempt=0):
    """k points with distinct prime denominators inside bbox x bbox.

    Each coordinate is n/p with p prime in [1009, 9973] and p not dividing n;
    2k distinct primes make all coordinates pairwise distinct automatically,
    and the large pairwise-coprime denominators keep accidental rational
    collinearities rare.  Deterministic in (seed, attempt).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    rng = random.Random(seed * 0x9E3779B97F4A7C15 + attempt)
    lo, hi = bbox
    if not lo < hi:
        raise ValueError("empty bbox")
    denoms = rng.sample(_PRIMES, 2 * k) if k else []
    pts = []
    for i in range(k):
        px, py = denoms[2 * i], denoms[2 * i + 1]
        while True:
            nx = rng.randint(lo * px + 1, hi * px - 1)
            if nx % px:
                break
        while True:
            ny = rng.randint(lo * py + 1, hi * py - 1)
            if ny % py:
                break
        pts.append(hpoint(Fraction(nx, px), Fraction(ny, py)))
    cert = {
        "seed": seed,
        "attempt": attempt,
        "bbox": [lo, hi],
        "denominators": denoms,
        "distinct_coordinates": True,
    }
    return PointConfig(pts, seed, attempt, cert)


def direction_set(fan, deg):
    """Primitive directions of r(m) over all 0 < m <= Delta, closed under
    negation.  A generic configuration has no two points separated by one of
    these directions."""
    dirs = set()
    for m in _boxed_exponents(deg):
        if sum(m) == 0:
            continue
        r = r_vector(fan, m)
        if r == (0, 0):
            continue
        p, _ = primitive(r)
        dirs.add(p)
        dirs.add((-p[0], -p[1]))
    return dirs


def precheck_config(fan, deg, config):
    """Reject configurations whose pairwise directions could support a
    non-generic incidence for degrees up to Delta."""
    dirs = direction_set(fan, deg)
    pts = config.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = hdiff(pts[i], pts[j])
            if primitive(d)[0] in dirs:
                raise GenericityError(
                    "points %d, %d aligned with a curve direction" % (i, j))
    return True


def _boxed_exponents(cap):
    out = [()]
    for c in cap:
        out = [m + (x,) for m in out for x in range(c + 1)]
    return out


class Tree:
    """Maslov-0 tree record: mark set, degree, wall (root + out direction),
    out-edge weight, multiplicity, and how it was built."""

    def __init__(self, marks, deg, base, out, w, mult, kind, parts, key):
        self.marks = marks
        self.deg = deg
        self.base = base
        self.out = out
        self.w = w
        self.mult = mult
        self.kind = kind
        self.parts = parts
        self.key = key

    def nmarks(self):
        return bin(self.marks).count("1")

    def __repr__(self):
        return "Tree(%s, deg=%r, w=%d, mult=%d)" % (self.kind, self.deg,
                                                    self.w, self.mult)


class Disk:
    """Maslov-2 disk record.  bends runs from the initial ray toward the
    boundary; each entry (V, tree, m_below) records the deflection point, the
    deflecting tree and the stem monomial on the boundary side of V."""

    def __init__(self, marks, deg, boundary, init_ray, bends, w, u, mult,
                 key):
        self.marks = marks
        self.deg = deg
        self.boundary = boundary
        self.init_ray = init_ray
        self.bends = bends
        self.w = w
        self.u = u
        self.mult = mult
        self.key = key

    def nmarks(self):
        return bin(self.marks).count("1")

    def mono(self):
        """(multiplicity, mark mask, degree): the disk's monomial datum."""
        return (self.mult, self.marks, self.deg)

    def __repr__(self):
        return ("Disk(marks=%s, deg=%r, bends=%d, mult=%d)"
                % (bin(self.marks), self.deg, len(self.bends), self.mult))


class Forest:
    """Shared enumeration state: all Maslov-0 trees over a configuration,
    organized by level (number of marks used), plus the backward disk tracer
    that consumes them."""

    def __init__(self, fan, config, allowed_mask=None, degree_cap=None):
        self.fan = fan
        self.config = config
        self.rays = fan.rays
        k = len(config)
        self.allowed = ((1 << k) - 1) if allowed_mask is None else allowed_mask
        self.cap = tuple(degree_cap) if degree_cap is not None else None
        self.trees = []
        self.levels = {}

    # -- Maslov-0 trees ----------------------------------------------------

    def build(self, max_level):
        if self.levels:
            raise InvariantError("forest already built")
        self.levels[1] = []
        for i in range(len(self.config)):
            if not (self.allowed >> i) & 1:
                continue
            for ridx, ray in enumerate(self.rays):
                if self.cap is not None and self.cap[ridx] < 1:
                    continue
                deg = tuple(1 if j == ridx else 0
                            for j in range(len(self.rays)))
                t = Tree(1 << i, deg, self.config.points[i],
                         (-ray[0], -ray[1]), 1, 1, "leaf", (i, ridx),
                         ("l", i, ridx))
                self._add(t, 1)
        for n in range(2, max_level + 1):
            self.levels[n] = []
            for n1 in range(1, n // 2 + 1):
                n2 = n - n1
                for ta in self.levels[n1]:
                    for tb in self.levels[n2]:
                        if n1 == n2 and ta.key >= tb.key:
                            continue
                        if ta.marks & tb.marks:
                            continue
                        t = self._glue(ta, tb)
                        if t is not None:
                            self._add(t, n)
            for i in range(len(self.config)):
                if not (self.allowed >> i) & 1:
                    continue
                sub = self.allowed & ~(1 << i)
                for disk in self.disks(self.config.points[i], sub, total=n):
                    t = Tree(disk.marks | (1 << i), disk.deg,
                             self.config.points[i], disk.u, disk.w, disk.mult,
                             "pass", (i, disk), ("p", i, disk.key))
                    self._add(t, n)
        self._check_walls_off_points()
        return self.trees

    def _add(self, t, level):
        self.levels[level].append(t)
        self.trees.append(t)

    def _glue(self, ta, tb):
        cross = wedge(ta.out, tb.out)
        if cross == 0:
            if wedge(ta.out, hdiff(ta.base, tb.base)) == 0:
                if ta.base == tb.base:
                    return None     # co-based parallel rays; no crossing
                if (on_ray(tb.base, ta.base, ta.out)
                        or on_ray(ta.base, tb.base, tb.out)):
                    raise GenericityError("collinear overlapping tree rays")
            return None
        s, t, den, point = ray_intersect(ta.base, ta.out, tb.base, tb.out)
        if s < 0 or t < 0:
            return None
        if s == 0 and t == 0:
            return None             # shared root, contracted gluing
        if s == 0 or t == 0:
            raise GenericityError("tree ray through another tree's root")
        deg = tuple(a + b for a, b in zip(ta.deg, tb.deg))
        if self.cap is not None and any(d > c for d, c in zip(deg, self.cap)):
            return None
        r = r_vector(self.fan, deg)
        if r == (0, 0):
            return None
        out, w = primitive((-r[0], -r[1]))
        ka, kb = sorted((ta.key, tb.key))
        mult = ta.mult * tb.mult * ta.w * tb.w * abs(cross)
        return Tree(ta.marks | tb.marks, deg, point, out, w, mult, "glue",
                    (ta, tb), ("g", ka, kb))

    def _check_walls_off_points(self):
        for t in self.trees:
            for j, p in enumerate(self.config.points):
                if on_ray(p, t.base, t.out, strict=True):
                    raise GenericityError(
                        "tree wall passes through point %d" % j)

    # -- Maslov-2 disks ----------------------------------------------------

    def disks(self, boundary, allowed_mask, total=None, mfins=None):
        """All disks with the given boundary; marks drawn from allowed_mask.

        `total` restricts to |deg| == total (hence exactly total - 1 marks);
        `mfins` gives an explicit candidate degree list instead.  Every
        emitted disk satisfies |deg| == number of marks + 1.
        """
        if mfins is None:
            cap = self.cap
            if cap is None:
                top = (total if total is not None
                       else bin(allowed_mask).count("1") + 1)
                cap = tuple(min(top, 9) for _ in self.rays)
            mfins = [m for m in _boxed_exponents(cap)
                     if sum(m) and (total is None or sum(m) == total)]
        out = []
        for m in sorted(mfins):
            if not sum(m) or any(x < 0 for x in m):
                continue
            if r_vector(self.fan, m) == (0, 0):
                continue
            self._trace(boundary, boundary, m, allowed_mask, [], out)
        return out

    def _trace(self, X0, X, m, rmask, steps, out):
        if sum(m) == 1:
            self._emit(X0, m, steps, out)
            return
        r = r_vector(self.fan, m)
        hits = []
        for t in self.trees:
            if t.marks & ~rmask:
                continue
            left = tuple(a - b for a, b in zip(m, t.deg))
            if any(x < 0 for x in left) or not sum(left):
                continue
            if r_vector(self.fan, left) == (0, 0):
                continue
            hit = ray_intersect(X, r, t.base, t.out)
            if hit is None:
                if wedge(r, hdiff(X, t.base)) == 0:
                    if on_ray(t.base, X, r) or on_ray(X, t.base, t.out):
                        raise GenericityError("stem runs along a tree wall")
                continue
            s, tt, den, V = hit
            if s < 0 or tt < 0:
                continue
            if s == 0:
                prev = steps[-1][1] if steps else None
                if prev is not None and wedge(prev.out, t.out) == 0:
                    continue        # co-supported with the wall just used
                raise GenericityError("stem vertex lies on a tree wall")
            if tt == 0:
                raise GenericityError("stem hits a tree wall at its root")
            hits.append((V, t, left))
        by_point = {}
        for V, t, left in hits:
            by_point.setdefault(V, []).append(t)
        for ts in by_point.values():
            for a in range(len(ts)):
                for b in range(a + 1, len(ts)):
                    if wedge(ts[a].out, ts[b].out) != 0:
                        raise GenericityError("two transversal walls cross "
                                              "the stem at one point")
        for V, t, left in hits:
            steps.append((V, t, m))
            self._trace(X0, V, left, rmask & ~t.marks, steps, out)
            steps.pop()

    def _emit(self, X0, m, steps, out):
        ridx = m.index(1)
        m_fin = steps[0][2] if steps else m
        marks = 0
        mult = 1
        for V, t, mm in steps:
            marks |= t.marks
            r_dn = r_vector(self.fan, mm)
            dn, w_dn = primitive((-r_dn[0], -r_dn[1]))
            mult *= t.mult * t.w * w_dn * abs(wedge(t.out, dn))
        r_fin = r_vector(self.fan, m_fin)
        u, w = primitive((-r_fin[0], -r_fin[1]))
        verts = [X0] + [V for V, _, _ in steps]
        if len(set(verts)) != len(verts):
            raise GenericityError("disk stem revisits a vertex")
        for p in self.config.points:
            if p in verts[1:]:
                raise GenericityError("disk bends exactly at a marked point")
            for a in range(len(verts) - 1):
                if on_segment(p, verts[a], verts[a + 1], strict=True):
                    raise GenericityError("marked point inside a stem "
                                          "segment")
            if on_ray(p, verts[-1], self.rays[ridx], strict=True):
                raise GenericityError("marked point on the initial stem ray")
        bends = tuple(reversed(steps))
        key = ("d", m_fin, ridx, tuple(t.key for _, t, _ in steps))
        out.append(Disk(marks, m_fin, X0, ridx, bends, w, u, mult, key))


# -- materialization to curve objects ---------------------------------------


class _CurveAccum:
    def __init__(self, fan):
        self.fan = fan
        self.verts = []
        self.bedges = []
        self.uedges = []
        self.marks = []

    def vertex(self, P):
        self.verts.append(P)
        return len(self.verts) - 1

    def add_tree(self, tree, attach):
        """Emit the tree's body; its out-edge runs from its root to vertex
        `attach`, or becomes a distinguished unbounded edge if attach is
        None.  Returns the out-edge index for the unbounded case."""
        base = self.vertex(tree.base)
        if tree.kind == "leaf":
            i, ridx = tree.parts
            self.marks.append((i, base))
            self.uedges.append((base, self.fan.rays[ridx], 1))
        elif tree.kind == "glue":
            ta, tb = tree.parts
            self.add_tree(ta, base)
            self.add_tree(tb, base)
        else:
            i, disk = tree.parts
            self.marks.append((i, base))
            self.add_disk_body(disk, base)
        if attach is None:
            self.uedges.append((base, tree.out, tree.w))
            return len(self.uedges) - 1
        self.bedges.append((base, attach, tree.w, tree.out))
        return None

    def add_disk_body(self, disk, boundary_idx):
        """Stem segments and deflecting trees, nearest bend first."""
        prev = boundary_idx
        for V, tree, m_below in reversed(disk.bends):
            vi = self.vertex(V)
            r_dn = r_vector(self.fan, m_below)
            dn, w_dn = primitive((-r_dn[0], -r_dn[1]))
            self.bedges.append((vi, prev, w_dn, dn))
            self.add_tree(tree, vi)
            prev = vi
        self.uedges.append((prev, self.fan.rays[disk.init_ray], 1))


def tree_to_curve(tree, fan):
    acc = _CurveAccum(fan)
    out_idx = acc.add_tree(tree, None)
    c = TropicalTree(acc.verts, acc.bedges, acc.uedges, acc.marks,
                     out_edge=out_idx)
    c.record = tree
    return c


def disk_to_curve(disk, fan):
    acc = _CurveAccum(fan)
    vout = acc.vertex(disk.boundary)
    acc.add_disk_body(disk, vout)
    c = TropicalDisk(acc.verts, acc.bedges, acc.uedges, acc.marks, vout=vout)
    c.record = disk
    return c


def _assemble_pair(d1, d2, pivot_label, pivot_point, fan):
    if d1.u != (-d2.u[0], -d2.u[1]) or d1.w != d2.w:
        raise InvariantError("pivot stems fail to oppose")
    acc = _CurveAccum(fan)
    piv = acc.vertex(pivot_point)
    acc.marks.append((pivot_label, piv))
    acc.add_disk_body(d1, piv)
    acc.add_disk_body(d2, piv)
    return ParamTropCurve(acc.verts, acc.bedges, acc.uedges, acc.marks)


# -- public enumeration entry points ----------------------------------------


def enumerate_maslov0_trees(fan, config, max_marks=None, degree_cap=None,
                            as_curves=True):
    """All Maslov-0 trees over the configuration, by level.

    Returns curve objects (TropicalTree) carrying their construction record
    as `.record`; pass as_curves=False for the raw records.
    """
    forest = Forest(fan, config, degree_cap=degree_cap)
    forest.build(len(config) if max_marks is None else max_marks)
    if not as_curves:
        return list(forest.trees)
    return [tree_to_curve(t, fan) for t in forest.trees]


def enumerate_maslov2_disks(fan, config, Q, degree_cap=None, as_curves=True):
    """All Maslov-2 disks with boundary Q over the configuration.

    Q must avoid every tree wall; a wall through Q raises GenericityError.
    """
    qpt = hpoint(Fraction(Q[0]), Fraction(Q[1])) if len(Q) == 2 else Q
    forest = Forest(fan, config, degree_cap=degree_cap)
    forest.build(len(config))
    for t in forest.trees:
        if on_ray(qpt, t.base, t.out):
            raise GenericityError("base point lies on a tree wall")
    for p in config.points:
        if p == qpt:
            raise GenericityError("base point coincides with a marked point")
    records = forest.disks(qpt, forest.allowed)
    if not as_curves:
        return records
    return [disk_to_curve(d, fan) for d in records]


class CountReport:
    """Outcome of a full enumeration: solutions with multiplicities."""

    def __init__(self, fan, deg, config, curves, mults, wmults):
        self.fan = fan
        self.deg = deg
        self.config = config
        self.curves = curves
        self.mults = mults
        self.wmults = wmults
        self.n_trop = sum(mults)
        self.w_trop = sum(wmults)

    def multiset(self):
        return sorted(self.mults)

    def __repr__(self):
        return ("CountReport(n_trop=%d, w_trop=%d, solutions=%d)"
                % (self.n_trop, self.w_trop, len(self.curves)))


_POOL_STATE = {}


def _pool_init(forest, pivot_point, others_mask):
    _POOL_STATE["forest"] = forest
    _POOL_STATE["pivot"] = pivot_point
    _POOL_STATE["others"] = others_mask


def _pool_disks(mfins):
    forest = _POOL_STATE["forest"]
    return forest.disks(_POOL_STATE["pivot"], _POOL_STATE["others"],
                        mfins=mfins)


def enumerate_rational_curves(fan, deg, config, jobs=1):
    """CountReport for rational curves of degree `deg` through the |Delta|-1
    points of `config`.  Raises GenericityError when the configuration hits a
    coincidence; the counting wrappers resample on that."""
    deg = make_degree(fan, deg)
    k = len(config)
    if k != degree_total(deg) - 1:
        raise ValueError("need exactly |Delta| - 1 = %d points, got %d"
                         % (degree_total(deg) - 1, k))
    if k == 0:
        raise ValueError("degree too small: no marked points")
    precheck_config(fan, deg, config)
    pivot = k - 1
    others = (1 << pivot) - 1
    pivot_point = config.points[pivot]
    forest = Forest(fan, config, allowed_mask=others, degree_cap=deg)
    forest.build(max(1, k - 1))
    for t in forest.trees:
        if on_ray(pivot_point, t.base, t.out):
            raise GenericityError("tree wall passes through the pivot point")
    mfins = [m for m in _boxed_exponents(deg)
             if sum(m) and sum(m) < degree_total(deg)
             and r_vector(fan, m) != (0, 0)]
    mfins.sort()
    if jobs > 1 and len(mfins) > 1:
        chunks = [mfins[i::jobs] for i in range(jobs)]
        chunks = [c for c in chunks if c]
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(len(chunks), _pool_init,
                      (forest, pivot_point, others)) as pool:
            disk_lists = pool.map(_pool_disks, chunks)
        pivot_disks = [d for lst in disk_lists for d in lst]
        pivot_disks.sort(key=lambda d: d.key)
    else:
        pivot_disks = forest.disks(pivot_point, others, mfins=mfins)
        pivot_disks.sort(key=lambda d: d.key)
    groups = {}
    for d in pivot_disks:
        groups.setdefault((d.marks, d.deg), []).append(d)
    curves = []
    for (mask1, m1), bunch in sorted(groups.items()):
        mask2 = others & ~mask1
        m2 = tuple(a - b for a, b in zip(deg, m1))
        key2 = (mask2, m2)
        if (mask1, m1) > key2:
            continue
        if (mask1, m1) == key2:
            raise InvariantError("self-complementary pivot group")
        for d1 in bunch:
            for d2 in groups.get(key2, ()):
                curve = _assemble_pair(d1, d2, pivot, pivot_point, fan)
                points = {i: p for i, p in enumerate(config.points)}
                validate_curve(curve, fan, points=points)
                curves.append(curve)
    sigs = [geometric_signature(c) for c in curves]
    if len(set(sigs)) != len(sigs):
        raise InvariantError("duplicate solution from two pivot pairings")
    types = [canonical_type(c) for c in curves]
    if len(set(types)) != len(types):
        raise GenericityError("two solutions share a combinatorial type")
    order = sorted(range(len(curves)), key=lambda i: (types[i], sigs[i]))
    curves = [curves[i] for i in order]
    mults = [mikhalkin_multiplicity(c) for c in curves]
    wmults = [welschinger_multiplicity(c) for c in curves]
    return CountReport(fan, deg, config, curves, mults, wmults)


def run_count(fan, deg, seed, jobs=1, bbox=(-10, 10)):
    """Resampling wrapper: draw configurations for `seed` until one is
    generic, then enumerate.  Returns the CountReport."""
    deg = make_degree(fan, deg)
    k = degree_total(deg) - 1
    last = None
    for attempt in range(MAX_ATTEMPTS):
        config = sample_generic_points(k, seed, bbox=bbox, attempt=attempt)
        try:
            return enumerate_rational_curves(fan, deg, config, jobs=jobs)
        except GenericityError as e:
            last = e
    raise GenericityError("no generic configuration for seed %d after %d "
                          "attempts (last: %s)" % (seed, MAX_ATTEMPTS, last))


def count_n_trop(fan, deg, seed, jobs=1):
    return run_count(fan, deg, seed, jobs=jobs).n_trop


def count_w_trop(fan, deg, seed, jobs=1):
    return run_count(fan, deg, seed, jobs=jobs).w_trop
