"""Lattice data of a counted curve and the induced plane degeneration.

Half of this module is per-solution arithmetic.  A rigid marked solution
determines a map of lattices Phi from the vertex displacements of its
reduced graph (marked edges removed, the bivalent vertices left behind
smoothed away) into the quotient lattices of its bounded edges and
markings.  The cokernel order d of Phi, times the log count w (product
of bounded reduced-edge weights, with an extra factor for the edge under
each marking), equals the vertex multiplicity of the curve: d * w = Mult.

The other half is global: the union of all solutions of a count, with a
translate of the fan at every marked point, generates a polyhedral
decomposition of the plane.  That decomposition can be rescaled to an
integral one and coned off to a fan in one dimension higher whose
height-1 slice returns the decomposition and whose height-0 subfan is
the surface fan.
"""

from math import gcd

from .arrangement import Overlay, line_dir, line_key, line_param
from .lattice import (cokernel_order, hdiff, hfrac, hnorm, hpoint,
                      primitive, rot90, smith_normal_form, wedge)
from .tropcurve import InvariantError, mikhalkin_multiplicity


# ---------------------------------------------------------------------------
# the reduced graph

def reduced_graph(c):
    """Reduced graph of a marked curve.

    Marked edges are removed and each resulting bivalent vertex is
    smoothed away by concatenating its two edges (marks sit at straight
    bivalent vertices, so every concatenated edge is a straight segment
    or ray).  Returns (verts, edges): verts the surviving vertex indices
    of c, edges a list of (ends, weight, marks) where ends is a pair of
    ("v", vertex_index) or ("inf", direction) tokens and marks lists the
    labels absorbed into the edge.
    """
    marked = {}
    for label, vi in c.marks:
        if vi in marked:
            raise InvariantError("two marks on one vertex")
        marked[vi] = label
    nb = len(c.bedges)
    at_vertex = {}
    for pi, (i, j, w, d) in enumerate(c.bedges):
        at_vertex.setdefault(i, []).append((pi, 0))
        at_vertex.setdefault(j, []).append((pi, 1))
    for ui, (i, d, w) in enumerate(c.uedges):
        at_vertex.setdefault(i, []).append((nb + ui, 0))
    weld = {}
    for vi in marked:
        inc = at_vertex.get(vi, [])
        if len(inc) != 2:
            raise InvariantError("marked vertex is not bivalent")
        (p1, s1), (p2, s2) = inc
        weld[(p1, s1)] = (p2, s2)
        weld[(p2, s2)] = (p1, s1)

    def token(pe):
        p, s = pe
        if p < nb:
            return ("v", c.bedges[p][s])
        if s == 0:
            return ("v", c.uedges[p - nb][0])
        return ("inf", c.uedges[p - nb][1])

    def weight(p):
        return c.bedges[p][2] if p < nb else c.uedges[p - nb][2]

    consumed = set()
    edges = []
    all_ends = [(p, s) for p in range(nb) for s in (0, 1)]
    all_ends += [(nb + u, s) for u in range(len(c.uedges)) for s in (0, 1)]
    for e0 in all_ends:
        if e0 in weld or e0 in consumed:
            continue
        labels = []
        pieces = []
        cur = e0
        while True:
            consumed.add(cur)
            p, s = cur
            pieces.append(p)
            far = (p, 1 - s)
            consumed.add(far)
            if far not in weld:
                break
            fv = c.bedges[p][1 - s] if p < nb else c.uedges[p - nb][0]
            labels.append(marked[fv])
            cur = weld[far]
        w = weight(pieces[0])
        for p in pieces:
            if weight(p) != w:
                raise InvariantError("weight jumps across a marked point")
        edges.append(((token(e0), token(far)), w, tuple(sorted(labels))))
    if len(consumed) != len(all_ends):
        raise InvariantError("reduced graph left a closed loop")
    verts = [i for i in range(len(c.vertices)) if i not in marked]
    return verts, edges

# ---------------------------------------------------------------------------
# the lattice map

def _lexpos(n):
    if n[0] < 0 or (n[0] == 0 and n[1] < 0):
        return (-n[0], -n[1])
    return n


class PhiSystem:
    """The lattice map of a rigid solution, in explicit bases.

    verts: the unmarked vertex indices; vertex verts[k] owns columns
           2k, 2k+1 (its displacement in M)
    rows:  one integer row per bounded reduced edge, then one per mark;
           each row reads the quotient M/Zu through the lex-positive
           primitive normal of u
    row_labels: ("edge", v_minus, v_plus) and ("mark", label) in row order
    """

    def __init__(self, curve, verts, rows, row_labels):
        self.curve = curve
        self.verts = tuple(verts)
        self.rows = tuple(tuple(r) for r in rows)
        self.row_labels = tuple(row_labels)

    def shape(self):
        return (len(self.rows), 2 * len(self.verts))

    def __repr__(self):
        return "PhiSystem(%d rows, %d cols)" % self.shape()


def build_phi(c):
    """The map Phi of a marked solution, as an integer matrix.

    A displacement H of the reduced-graph vertices goes to the classes of
    H(v+) - H(v-) in M/Zu for every bounded reduced edge and of H(v-) in
    M/Zu for every mark.  Raises InvariantError when the map has a
    kernel, which would mean the curve deforms and was never rigid.
    """
    verts, edges = reduced_graph(c)
    col = {vi: 2 * k for k, vi in enumerate(verts)}
    ncols = 2 * len(verts)

    def imgkey(vi):
        x, y = hfrac(c.vertices[vi])
        return (x, y)

    bounded = []
    by_mark = {}
    for ends, w, labels in edges:
        kinds = sorted(t[0] for t in ends)
        if kinds == ["v", "v"]:
            va, vb = ends[0][1], ends[1][1]
            if imgkey(vb) < imgkey(va):
                va, vb = vb, va
            u, _ = primitive(hdiff(c.vertices[va], c.vertices[vb]))
            bounded.append((col[va], col[vb], u))
            for lb in labels:
                by_mark[lb] = (col[va], u)
        elif kinds == ["inf", "v"]:
            (vtok, dtok) = ends if ends[0][0] == "v" else (ends[1], ends[0])
            u = dtok[1]
            for lb in labels:
                by_mark[lb] = (col[vtok[1]], u)
        else:
            # a straight-line curve: the edge has no vertex at all, so a
            # mark on it constrains nothing Phi can see
            for lb in labels:
                by_mark[lb] = None

    bounded.sort()
    rows = []
    row_labels = []
    for ca, cb, u in bounded:
        n = _lexpos(rot90(u))
        row = [0] * ncols
        row[cb] += n[0]
        row[cb + 1] += n[1]
        row[ca] -= n[0]
        row[ca + 1] -= n[1]
        rows.append(row)
        row_labels.append(("edge", ca // 2, cb // 2))
    for label, _ in c.marks:
        row = [0] * ncols
        spot = by_mark[label]
        if spot is not None:
            cm, u = spot
            n = _lexpos(rot90(u))
            row[cm] += n[0]
            row[cm + 1] += n[1]
        rows.append(row)
        row_labels.append(("mark", label))
    if len(smith_normal_form(rows)) != ncols:
        raise InvariantError("lattice map has a kernel: curve is not rigid")
    return PhiSystem(c, verts, rows, row_labels)


def index_d(sys):
    """Cokernel order of Phi, a positive integer."""
    o = cokernel_order(list(list(r) for r in sys.rows))
    if o == "infinite":
        raise InvariantError("infinite cokernel contradicts rigidity")
    return o


def log_count_w(c):
    """Number of log enhancements of a stable map over the solution: the
    product of the bounded reduced-edge weights, with one extra factor of
    its edge's weight for every mark."""
    _, edges = reduced_graph(c)
    out = 1
    for ends, w, labels in edges:
        if ends[0][0] == "v" and ends[1][0] == "v":
            out *= w
        out *= w ** len(labels)
    return out


def verify_correspondence(c):
    """Does index * log count equal the vertex multiplicity, exactly?"""
    return index_d(build_phi(c)) * log_count_w(c) == mikhalkin_multiplicity(c)


# ---------------------------------------------------------------------------
# the decomposition spanned by all solutions

class PolyDecomp:
    """A polyhedral decomposition of the plane, cells all rational.

    Same encodings as PlanarComplex (vertices, edges, faces), plus the
    marked points that seeded it and the lattice rescale factor applied
    so far (1 until rescale_lattice).
    """

    def __init__(self, vertices, edges, faces, points, scale=1):
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self.faces = tuple(faces)
        self.points = tuple(points)
        self.scale = scale

    def __repr__(self):
        return "PolyDecomp(%d vertices, %d edges, %d faces, scale %d)" % (
            len(self.vertices), len(self.edges), len(self.faces), self.scale)


def _as_triple(P):
    if len(P) == 3:
        return hnorm(*P)
    return hpoint(P[0], P[1])


def build_decomposition(curves, fan, points):
    """Overlay the given solutions into a decomposition of the plane.

    A translate of the fan is added at every marked point: that keeps the
    marked points vertices and pins the recession behaviour of the
    unbounded cells, and it never hurts where the curves alone would have
    sufficed.  Collinear overlaps merge, with source tags unioned; tags
    are "curve:<index>" and "fan:<point index>".
    """
    ov = Overlay()
    for ci, c in enumerate(curves):
        tag = "curve:%d" % ci
        for i, j, w, d in c.bedges:
            ov.add_segment(c.vertices[i], c.vertices[j], tag)
        for i, d, w in c.uedges:
            ov.add_ray(c.vertices[i], d, tag)
    pts = [_as_triple(P) for P in points]
    for pi, P in enumerate(pts):
        tag = "fan:%d" % pi
        for r in fan.rays:
            ov.add_ray(P, r, tag)
        ov.add_point(P)
    cx = ov.build()
    return PolyDecomp(cx.vertices, cx.edges, cx.faces, pts)


def _cover_query(pd, A, B, d):
    """Do the decomposition edges tile the segment A-B (d None) or the ray
    from A in direction d (B None)?

    Works in coordinates oriented along the query, so one upward sweep
    covers both cases; None stands for the infinite end.
    """
    if d is None:
        dp, _ = primitive(hdiff(A, B))
    else:
        dp, _ = primitive(d)
    key = line_key(A, dp)
    sign = 1 if dp == line_dir(key) else -1
    sa = sign * line_param(key, A)
    sb = sign * line_param(key, B) if B is not None else None
    if sb is not None and sb < sa:
        sa, sb = sb, sa
    spans = []
    for e in pd.edges:
        if e[0] == "seg":
            va, vb = pd.vertices[e[1]], pd.vertices[e[2]]
            if _on_line(key, va) and _on_line(key, vb):
                t1 = sign * line_param(key, va)
                t2 = sign * line_param(key, vb)
                spans.append((min(t1, t2), max(t1, t2)))
        else:
            va = pd.vertices[e[1]]
            if _on_line(key, va) and wedge(e[2], dp) == 0:
                t1 = sign * line_param(key, va)
                if e[2] == dp:
                    spans.append((t1, None))
                else:
                    spans.append((None, t1))
    cur = sa
    for lo, hi in sorted(spans,
                         key=lambda s: (0, 0) if s[0] is None else (1, s[0])):
        if lo is not None and lo > cur:
            break
        if hi is None:
            return True
        if hi > cur:
            cur = hi
    return sb is not None and cur >= sb


def _on_line(key, P):
    x, y = hfrac(P)
    return key[0] * x + key[1] * y == key[2]


def properties_report(pd, curves, fan):
    """The five decomposition properties, each tested directly.

    1. every curve lies in the 1-skeleton,
    2. the marked points are vertices,
    3. everything in sight is rational,
    4. every cell has at least one vertex,
    5. every cell's recession cone is a cone of the fan.
    """
    ok1 = True
    for c in curves:
        for i, j, w, d in c.bedges:
            ok1 = ok1 and _cover_query(pd, c.vertices[i], c.vertices[j], None)
        for i, d, w in c.uedges:
            ok1 = ok1 and _cover_query(pd, c.vertices[i], None, d)
    vset = set(pd.vertices)
    ok2 = all(p in vset for p in pd.points)
    ok3 = all(isinstance(t, int) for v in pd.vertices for t in v) and \
        all(v[2] > 0 for v in pd.vertices)
    ok4 = all(len(f[1]) >= 1 for f in pd.faces)
    rayset = set(fan.rays)
    cones = {(fan.rays[i], fan.rays[j]) for i, j in fan.cones2d}
    ok5 = True
    for e in pd.edges:
        if e[0] == "ray" and e[2] not in rayset:
            ok5 = False
    for f in pd.faces:
        if f[0] != "unbounded":
            continue
        din, dout = f[2], f[3]
        if din == dout:
            if din not in rayset:
                ok5 = False
        elif (dout, din) not in cones:
            ok5 = False
    return {"curves_in_skeleton": ok1, "points_are_vertices": ok2,
            "rational": ok3, "cells_have_vertices": ok4,
            "recession_in_fan": ok5}


def rescale_lattice(pd):
    """Clear all vertex denominators.

    Returns (scaled decomposition, a) where a is the least common
    multiple of the coordinate denominators, so the scaled vertices are
    lattice points and the cell structure is untouched.
    """
    a = 1
    for v in pd.vertices:
        for q in hfrac(v):
            a = a * q.denominator // gcd(a, q.denominator)
    verts = [hnorm(a * v[0], a * v[1], v[2]) for v in pd.vertices]
    pts = [hnorm(a * p[0], a * p[1], p[2]) for p in pd.points]
    for v in verts:
        if v[2] != 1:
            raise InvariantError("rescale failed to clear a denominator")
    return PolyDecomp(verts, pd.edges, pd.faces, pts,
                      scale=pd.scale * a), a


# ---------------------------------------------------------------------------
# the fan over the decomposition

class Fan3D:
    """Cones in M + Z, each a (name, generators) pair with generator
    triples (x, y, h) either a vertex lifted to its height or a recession
    direction at height 0.  Contains one cone per decomposition cell plus
    the height-0 copy of the surface fan."""

    def __init__(self, cones):
        self.cones = tuple(cones)

    def __repr__(self):
        return "Fan3D(%d cones)" % len(self.cones)

    def to_text(self):
        out = ["# fan in M + Z: one generator triple (x, y, h) per column",
               "# %d cones" % len(self.cones)]
        for name, gens in self.cones:
            body = " ".join("(%d,%d,%d)" % g for g in gens)
            out.append("%s: %s" % (name, body if body else "origin"))
        return "\n".join(out) + "\n"


def fan_over(pd, fan):
    """The fan over a decomposition: cones over every cell, together with
    the height-0 copy of the surface fan they degenerate to.

    Verifies before returning that the height-0 part of every cell cone
    is a cone of the surface fan, that together they exhaust it, and that
    slicing each cell cone at height 1 recovers the cell it came from.
    Raises InvariantError when any of that fails.
    """
    cones = [("zero", ())]
    for k, r in enumerate(fan.rays):
        cones.append(("ray0:%d" % k, ((r[0], r[1], 0),)))
    for k, (i, j) in enumerate(fan.cones2d):
        ri, rj = fan.rays[i], fan.rays[j]
        cones.append(("cone0:%d" % k, ((ri[0], ri[1], 0), (rj[0], rj[1], 0))))
    for vi, v in enumerate(pd.vertices):
        cones.append(("vertex:%d" % vi, (v,)))
    for ei, e in enumerate(pd.edges):
        if e[0] == "seg":
            gens = (pd.vertices[e[1]], pd.vertices[e[2]])
        else:
            d = e[2]
            gens = (pd.vertices[e[1]], (d[0], d[1], 0))
        cones.append(("edge:%d" % ei, gens))
    for fi, f in enumerate(pd.faces):
        gens = tuple(pd.vertices[i] for i in f[1])
        if f[0] == "unbounded":
            din, dout = f[2], f[3]
            gens = gens + ((dout[0], dout[1], 0),)
            if din != dout:
                gens = gens + ((din[0], din[1], 0),)
        cones.append(("face:%d" % fi, gens))
    f3 = Fan3D(cones)
    _verify_fan_over(f3, pd, fan)
    return f3


def _verify_fan_over(f3, pd, fan):
    fancones = {frozenset()}
    for r in fan.rays:
        fancones.add(frozenset([r]))
    for i, j in fan.cones2d:
        fancones.add(frozenset([fan.rays[i], fan.rays[j]]))
    seen = set()
    cellkinds = ("vertex:", "edge:", "face:")
    for name, gens in f3.cones:
        if not name.startswith(cellkinds):
            continue
        rec = frozenset((g[0], g[1]) for g in gens if g[2] == 0)
        if rec not in fancones:
            raise InvariantError("recession of %s is not a fan cone" % name)
        seen.add(rec)
        # the height-1 slice must be the cell the cone was built from
        verts = sorted(hnorm(*g) for g in gens if g[2] > 0)
        kind, _, idx = name.partition(":")
        expect = _cell_canonical(pd, kind, int(idx))
        if (verts, sorted(rec)) != expect:
            raise InvariantError("height-1 slice of %s differs from its "
                                 "cell" % name)
    if seen != fancones:
        raise InvariantError("height-0 cones do not exhaust the fan")


def _cell_canonical(pd, kind, idx):
    if kind == "vertex":
        return ([pd.vertices[idx]], [])
    if kind == "edge":
        e = pd.edges[idx]
        if e[0] == "seg":
            return (sorted((pd.vertices[e[1]], pd.vertices[e[2]])), [])
        return ([pd.vertices[e[1]]], [e[2]])
    f = pd.faces[idx]
    verts = sorted(pd.vertices[i] for i in f[1])
    if f[0] == "bounded":
        return (verts, [])
    return (verts, sorted({f[2], f[3]}))
