"""Nilpotent coefficient ring, walls, and path-ordered wall crossing.

The ring is spanned by monomials c * u_I * z^m where m is an integer
exponent vector with one slot per fan ray and I is a set of point labels
with u_i^2 = 0.  Exponents are kept per ray instead of being pushed to
their image in M, so the product of all ray generators stays a visible
monomial rather than collapsing to 1.

An automorphism is pinned by its images on the ray generators and fixes
every u_i and the additive constant y0.  Crossing a wall with function f
sends z^m to z^m * f^{<n0, r(m)>}, where n0 is the primitive normal of
the wall support chosen against the direction of travel.  The diagram
built from Maslov-0 trees carries one ray per tree; its consistency at
non-marked singular points is checked by composing an exact loop, never
assumed.
"""

from fractions import Fraction

from .enumeration import enumerate_maslov0_trees
from .fan import r_vector
from .lattice import (angle_key, dot, hfrac, hnorm, hpoint, primitive,
                      rot90, wedge)
from .tropcurve import GenericityError, InvariantError


def _zerovec(nrays):
    return (0,) * nrays


class RingElement:
    """terms maps (exponent tuple, frozenset of u labels) to a rational.

    y0 is an additive formal constant: it survives addition and
    automorphism application but refuses multiplication.  u labels are
    0-based marked-point indices.
    """

    __slots__ = ("nrays", "terms", "y0")

    def __init__(self, nrays, terms=None, y0=0):
        self.nrays = nrays
        self.y0 = Fraction(y0)
        self.terms = {}
        if terms:
            for (m, uset), c in terms.items():
                c = Fraction(c)
                if not c:
                    continue
                key = (tuple(m), frozenset(uset))
                if len(key[0]) != nrays:
                    raise InvariantError("exponent length != ray count")
                c += self.terms.get(key, 0)
                if c:
                    self.terms[key] = c
                else:
                    self.terms.pop(key, None)

    def add(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            c += out.get(key, 0)
            if c:
                out[key] = c
            else:
                out.pop(key, None)
        e = RingElement(self.nrays, y0=self.y0 + other.y0)
        e.terms = out
        return e

    def scale(self, c):
        c = Fraction(c)
        e = RingElement(self.nrays, y0=self.y0 * c)
        if c:
            e.terms = {key: v * c for key, v in self.terms.items()}
        return e

    def sub(self, other):
        return self.add(other.scale(-1))

    def mul(self, other):
        if self.y0 or other.y0:
            raise InvariantError("y0 is a formal constant, not a factor")
        out = {}
        for (m1, i1), c1 in self.terms.items():
            for (m2, i2), c2 in other.terms.items():
                if i1 & i2:
                    continue            # u_i^2 = 0
                key = (tuple(a + b for a, b in zip(m1, m2)), i1 | i2)
                c = out.get(key, 0) + c1 * c2
                if c:
                    out[key] = c
                else:
                    out.pop(key, None)
        e = RingElement(self.nrays)
        e.terms = out
        return e

    def unit(self):
        """Coefficient of the empty monomial z^0 u_{}."""
        return self.terms.get((_zerovec(self.nrays), frozenset()),
                              Fraction(0))

    def pow(self, e):
        e = int(e)
        if e >= 0:
            out = ring_one(self.nrays)
            b = self
            while e:
                if e & 1:
                    out = out.mul(b)
                b = b.mul(b)
                e >>= 1
            return out
        return self._inverse().pow(-e)

    def _inverse(self):
        # factor as c* z^{m*} (1 + N) with N nilpotent, invert the pieces
        star = None
        for (m, uset), c in self.terms.items():
            if not uset:
                if star is not None:
                    raise InvariantError("unsupported: negative power of a "
                                         "non-unipotent element")
                star = (m, c)
        if star is None:
            raise InvariantError("unsupported: negative power of a "
                                 "non-unipotent element")
        mstar, cstar = star
        neg = tuple(-x for x in mstar)
        g = ring_mono(self.nrays, 1 / cstar, (), neg).mul(self)
        n = g.sub(ring_one(self.nrays))
        out = ring_one(self.nrays)
        p = ring_one(self.nrays)
        while True:
            p = p.mul(n).scale(-1)
            if not p.terms:
                break
            out = out.add(p)
        return out.mul(ring_mono(self.nrays, 1 / cstar, (), neg))

    def mod_u(self):
        """Image with every u_i set to 0."""
        e = RingElement(self.nrays, y0=self.y0)
        e.terms = {key: c for key, c in self.terms.items() if not key[1]}
        return e

    def key(self):
        """Canonical sorting/equality key."""
        items = sorted((m, tuple(sorted(uset)),
                        (c.numerator, c.denominator))
                       for (m, uset), c in self.terms.items())
        return (tuple(items), (self.y0.numerator, self.y0.denominator))

    def __eq__(self, other):
        return (isinstance(other, RingElement) and self.nrays == other.nrays
                and self.terms == other.terms and self.y0 == other.y0)

    def __repr__(self):
        return "RingElement(%s)" % format_element(self)


def ring_zero(nrays):
    return RingElement(nrays)


def ring_one(nrays):
    return ring_mono(nrays, 1, (), _zerovec(nrays))


def ring_mono(nrays, c, uset, m):
    return RingElement(nrays, {(tuple(m), frozenset(uset)): c})


def ray_generator(nrays, ridx):
    m = [0] * nrays
    m[ridx] = 1
    return ring_mono(nrays, 1, (), m)


def format_element(elem, names=None):
    """Deterministic text form; u labels print 1-based as u1, u2, ..."""
    if names is None:
        names = ["x%d" % i for i in range(elem.nrays)]
    bits = []
    if elem.y0:
        bits.append("y0" if elem.y0 == 1 else "%s*y0" % elem.y0)
    order = sorted(elem.terms, key=lambda k: (sum(k[0]), k[0],
                                              tuple(sorted(k[1]))))
    for m, uset in order:
        c = elem.terms[(m, uset)]
        fs = ["u%d" % (i + 1) for i in sorted(uset)]
        for i, e in enumerate(m):
            if e == 1:
                fs.append(names[i])
            elif e:
                fs.append("%s^%d" % (names[i], e))
        if not fs:
            bits.append(str(c))
        elif c == 1:
            bits.append("*".join(fs))
        elif c == -1:
            bits.append("-" + "*".join(fs))
        else:
            bits.append("%s*%s" % (c, "*".join(fs)))
    return " + ".join(bits) if bits else "0"


class RingAutomorphism:
    """Images of the ray generators; u_i and y0 are fixed."""

    __slots__ = ("nrays", "images")

    def __init__(self, nrays, images):
        self.images = tuple(images)
        if len(self.images) != nrays:
            raise InvariantError("need one image per ray generator")
        self.nrays = nrays

    def apply(self, elem):
        out = RingElement(self.nrays, y0=elem.y0)
        for (m, uset), c in elem.terms.items():
            acc = ring_mono(self.nrays, c, uset, _zerovec(self.nrays))
            for ridx, e in enumerate(m):
                if e:
                    acc = acc.mul(self.images[ridx].pow(e))
            out = out.add(acc)
        return out

    def compose(self, other):
        """self after other."""
        return RingAutomorphism(self.nrays,
                                [self.apply(im) for im in other.images])

    def is_identity(self):
        return all(self.images[i] == ray_generator(self.nrays, i)
                   for i in range(self.nrays))

    def __eq__(self, other):
        return (isinstance(other, RingAutomorphism)
                and self.nrays == other.nrays
                and self.images == other.images)

    def __repr__(self):
        return ("RingAutomorphism(%s)"
                % "; ".join(format_element(im) for im in self.images))


def identity_automorphism(nrays):
    return RingAutomorphism(nrays,
                            [ray_generator(nrays, i) for i in range(nrays)])


def apply_generator(fan, c, uset, m, n):
    """exp(c u_I z^m (x) n): z^{m'} -> z^{m'} (1 + c u_I <n, r(m')> z^m)."""
    uset = frozenset(uset)
    if not uset:
        raise InvariantError("empty u index set is not nilpotent")
    nrays = fan.nrays()
    images = []
    for ridx, v in enumerate(fan.rays):
        g = ray_generator(nrays, ridx)
        coef = Fraction(c) * dot(n, v)
        images.append(g.mul(ring_one(nrays).add(ring_mono(nrays, coef,
                                                          uset, m))))
    return RingAutomorphism(nrays, images)


def _as_pair(P):
    if len(P) == 3:
        return hfrac(P)
    return (Fraction(P[0]), Fraction(P[1]))


def _as_triple(P):
    if len(P) == 3:
        return hnorm(*P)
    return hpoint(Fraction(P[0]), Fraction(P[1]))


class Wall:
    """Ray or line with an attached function of z^{m0}.

    The support runs from base along -r(m0): the full line for carrier
    "line", the half line for carrier "ray".  f must be 1 plus terms in
    positive powers of z^{m0} that all carry u variables, so f - 1 is
    nilpotent and f is invertible exactly.
    """

    __slots__ = ("fan", "base", "m0", "f", "carrier", "dirvec")

    def __init__(self, fan, base, m0, f, carrier="ray"):
        if carrier not in ("ray", "line"):
            raise InvariantError("carrier must be 'ray' or 'line'")
        self.fan = fan
        self.base = _as_triple(base)
        self.m0 = tuple(int(x) for x in m0)
        r = r_vector(fan, self.m0)
        if r == (0, 0):
            raise InvariantError("wall exponent has no direction")
        self.dirvec = primitive((-r[0], -r[1]))[0]
        self.carrier = carrier
        if f.nrays != fan.nrays() or f.y0:
            raise InvariantError("wall function lives in the wrong ring")
        if f.unit() != 1:
            raise InvariantError("unsupported wall function: f - 1 is not "
                                 "nilpotent")
        i0 = next(i for i, x in enumerate(self.m0) if x)
        for (m, uset), c in f.terms.items():
            if (m, uset) == (_zerovec(f.nrays), frozenset()):
                continue
            if not uset:
                raise InvariantError("unsupported wall function: f - 1 is "
                                     "not nilpotent")
            j, rem = divmod(m[i0], self.m0[i0])
            if rem or j < 1 or m != tuple(j * x for x in self.m0):
                raise InvariantError("wall function is not a polynomial "
                                     "in z^{m0}")
        self.f = f

    def base_pair(self):
        return hfrac(self.base)

    def support_contains(self, X):
        v = (X[0] - self.base_pair()[0], X[1] - self.base_pair()[1])
        if wedge(self.dirvec, v) != 0:
            return False
        if self.carrier == "line":
            return True
        return dot(self.dirvec, v) >= 0

    def __repr__(self):
        return ("Wall(%s at %s, dir %s, f=%s)"
                % (self.carrier, self.base, self.dirvec,
                   format_element(self.f)))


def _crossing_auto(wall, n0):
    nrays = wall.fan.nrays()
    images = []
    for ridx, v in enumerate(wall.fan.rays):
        g = ray_generator(nrays, ridx)
        images.append(g.mul(wall.f.pow(dot(n0, v))))
    return RingAutomorphism(nrays, images)


def wall_crossing(wall, crossing_sign):
    """Crossing automorphism with n0 = +-rot90 of the support direction.

    path_automorphism picks the sign so that <n0, velocity> < 0; crossing
    the same wall with the opposite sign gives the exact inverse.
    """
    if crossing_sign not in (1, -1):
        raise InvariantError("crossing sign must be +1 or -1")
    n = rot90(wall.dirvec)
    if crossing_sign < 0:
        n = (-n[0], -n[1])
    return _crossing_auto(wall, n)


class ScatteringDiagram:
    """Finite collection of walls plus the marked points they grew from."""

    def __init__(self, fan, walls, marked_points):
        self.fan = fan
        self.walls = tuple(walls)
        self.marked = tuple(_as_triple(p) for p in marked_points)

    def k(self):
        return len(self.marked)

    def supp_contains(self, X):
        X = _as_pair(X)
        return any(w.support_contains(X) for w in self.walls)

    def sing_points(self):
        """Wall base points plus pairwise transversal support crossings."""
        pts = {}
        for w in self.walls:
            if w.carrier == "ray":
                pts[w.base_pair()] = True
        for a in range(len(self.walls)):
            wa = self.walls[a]
            for b in range(a + 1, len(self.walls)):
                wb = self.walls[b]
                den = wedge(wa.dirvec, wb.dirvec)
                if den == 0:
                    continue
                ba, bb = wa.base_pair(), wb.base_pair()
                dx, dy = bb[0] - ba[0], bb[1] - ba[1]
                s = Fraction(wedge((dx, dy), wb.dirvec), den)
                t = Fraction(wedge((dx, dy), wa.dirvec), den)
                if wa.carrier == "ray" and s < 0:
                    continue
                if wb.carrier == "ray" and t < 0:
                    continue
                pts[(ba[0] + s * wa.dirvec[0], ba[1] + s * wa.dirvec[1])] \
                    = True
        return sorted(pts)

    def __repr__(self):
        return ("ScatteringDiagram(%d walls, %d marked points)"
                % (len(self.walls), len(self.marked)))


def path_crossings(diagram, path):
    """The walls a polyline crosses, in order: a list of (wall index, n0)
    with n0 the primitive wall normal against the travel direction.

    Raises GenericityError("non-transverse path ...") when the path runs
    along a wall, passes through a singular point or a wall base, or has
    a vertex on the support.
    """
    pts = [_as_pair(P) for P in path]
    if len(pts) < 2:
        raise InvariantError("path needs at least two vertices")
    for P in pts:
        if diagram.supp_contains(P):
            raise GenericityError("non-transverse path: vertex on the "
                                  "support")
    crossings = []
    for A, B in zip(pts, pts[1:]):
        seg = (B[0] - A[0], B[1] - A[1])
        if seg == (0, 0):
            continue
        hits = []
        for widx, w in enumerate(diagram.walls):
            den = wedge(w.dirvec, seg)
            base = w.base_pair()
            dx, dy = base[0] - A[0], base[1] - A[1]
            if den == 0:
                if wedge(w.dirvec, (dx, dy)) == 0 and _overlaps(w, A, B):
                    raise GenericityError("non-transverse path: tangent to "
                                          "a wall")
                continue
            t = wedge(w.dirvec, (dx, dy)) / den
            s = wedge(seg, (dx, dy)) / den
            if t < 0 or t > 1:
                continue
            if w.carrier == "ray" and s < 0:
                continue
            if t == 0 or t == 1:
                raise GenericityError("non-transverse path: vertex on the "
                                      "support")
            if w.carrier == "ray" and s == 0:
                raise GenericityError("non-transverse path: through a wall "
                                      "base")
            nraw = rot90(w.dirvec)
            n0 = nraw if dot(nraw, seg) < 0 else (-nraw[0], -nraw[1])
            hits.append((t, widx, n0))
        hits.sort(key=lambda h: (h[0], h[1]))
        for i in range(len(hits) - 1):
            if hits[i][0] == hits[i + 1][0]:
                wa = diagram.walls[hits[i][1]]
                wb = diagram.walls[hits[i + 1][1]]
                if wedge(wa.dirvec, wb.dirvec) != 0:
                    raise GenericityError("non-transverse path: through a "
                                          "singular point")
        crossings.extend((widx, n0) for _, widx, n0 in hits)
    return crossings


def path_automorphism(diagram, path):
    """Ordered composition of the wall crossings along a polyline, the
    first wall crossed applied first."""
    total = identity_automorphism(diagram.fan.nrays())
    for widx, n0 in path_crossings(diagram, path):
        total = _crossing_auto(diagram.walls[widx], n0).compose(total)
    return total


def _overlaps(wall, A, B):
    # A, B on the wall's line; does [A, B] meet the support?
    base = wall.base_pair()
    d = wall.dirvec
    ta = dot(d, (A[0] - base[0], A[1] - base[1]))
    tb = dot(d, (B[0] - base[0], B[1] - base[1]))
    if wall.carrier == "line":
        return True
    return max(ta, tb) >= 0


def _bits(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def build_diagram(fan, config):
    """One ray per Maslov-0 tree: support from the tree's root along its
    out direction, function 1 + w(E_out) Mult(h) u_{I(h)} z^{Delta(h)}."""
    nrays = fan.nrays()
    walls = []
    for t in enumerate_maslov0_trees(fan, config, as_curves=False):
        f = ring_one(nrays).add(ring_mono(nrays, t.w * t.mult,
                                          _bits(t.marks), t.deg))
        w = Wall(fan, t.base, t.deg, f, carrier="ray")
        if w.dirvec != t.out:
            raise InvariantError("wall direction disagrees with the tree "
                                 "out-edge")
        walls.append(w)
    return ScatteringDiagram(fan, walls, config.points)


def loop_automorphism(diagram, X):
    """Automorphism of a small counterclockwise loop around X, composed
    exactly from the wall germs at X in angular order."""
    X = _as_pair(X)
    germs = []
    for widx, w in enumerate(diagram.walls):
        base = w.base_pair()
        v = (X[0] - base[0], X[1] - base[1])
        if wedge(w.dirvec, v) != 0:
            continue
        along = dot(w.dirvec, v)
        d = w.dirvec
        if w.carrier == "line":
            germs.append((d, widx))
            germs.append(((-d[0], -d[1]), widx))
        elif along > 0:
            germs.append((d, widx))
            germs.append(((-d[0], -d[1]), widx))
        elif along == 0:
            germs.append((d, widx))
    germs.sort(key=lambda g: (angle_key(g[0]), g[1]))
    nrays = diagram.fan.nrays()
    total = identity_automorphism(nrays)
    for g, widx in germs:
        n0 = rot90(g)
        n0 = (-n0[0], -n0[1])       # against the ccw travel direction
        total = _crossing_auto(diagram.walls[widx], n0).compose(total)
    return total


class ConsistencyReport:
    """Loop check at every singular point; rows are (point, marked,
    identity, automorphism).  Marked points are recorded, never required
    to close up."""

    def __init__(self, rows):
        self.rows = tuple(rows)
        self.ok = all(ident for _, marked, ident, _ in self.rows
                      if not marked)

    def failures(self):
        return [r for r in self.rows if not r[1] and not r[2]]

    def __repr__(self):
        bad = len(self.failures())
        return ("ConsistencyReport(%d singular points, %s)"
                % (len(self.rows), "ok" if self.ok and not bad
                   else "%d failures" % bad))


def check_consistency(diagram):
    marked = {_as_pair(p) for p in diagram.marked}
    rows = []
    for X in diagram.sing_points():
        auto = loop_automorphism(diagram, X)
        rows.append((X, X in marked, auto.is_identity(), auto))
    return ConsistencyReport(rows)
