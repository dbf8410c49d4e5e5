"""Broken lines and the superpotential.

A broken line for a scattering diagram is a piecewise straight path ending
at a chosen generic endpoint Q.  Each segment carries a monomial c*u_I*z^m
and travels in the direction -r(m); the unbounded initial segment carries
z^{e_rho} for a single fan ray rho.  At a bend the line crosses a wall and
the monomial picks up one non-unit term of f^e, where e = <n0, r(m)> > 0
is measured against the incoming direction.

We trace backwards from Q.  The final exponent m_fin is bounded because
every bend adds the exponent of a wall term and the u-index sets consumed
along the way are pairwise disjoint, so sum(m_fin) <= 1 + k for k marked
points.  For each candidate m_fin the tracer walks the ray Q + s*r(m),
s > 0, branching over admissible bends, and accepts when the exponent has
dropped to a single ray generator.  All arithmetic is exact; the bend
multiplier e = |wedge(w.dirvec, r(m))| is unchanged by the bend itself
since every wall term exponent is parallel to the wall direction, so no
division ever enters the coefficients.

Degenerate pictures (a segment along a wall, through a wall base or a
wall crossing) raise GenericityError asking for a fresh endpoint.
"""

import itertools

from fractions import Fraction

from .enumeration import enumerate_maslov2_disks, sample_generic_points
from .fan import r_vector
from .lattice import dot, hfrac, wedge
from .scattering import (RingElement, build_diagram, path_automorphism,
                         ring_mono)
from .tropcurve import GenericityError, InvariantError


def _as_pair(P):
    if len(P) == 3:
        return hfrac(P)
    return (Fraction(P[0]), Fraction(P[1]))


class BrokenLine:
    """One broken line: an initial ray index, the bend points with the
    monomial carried on each segment, and the endpoint Q.

    segs is a tuple of (start, end, (c, I, m)); the first start is None
    for the unbounded segment and the last end is Q.
    """

    __slots__ = ("fan", "init_ray", "segs", "endpoint")

    def __init__(self, fan, init_ray, segs, endpoint):
        self.fan = fan
        self.init_ray = init_ray
        self.segs = tuple(segs)
        self.endpoint = endpoint

    def nbends(self):
        return len(self.segs) - 1

    def final(self):
        """(c, I, m) carried by the segment ending at Q."""
        return self.segs[-1][2]

    def final_element(self):
        c, iset, m = self.final()
        return ring_mono(self.fan.nrays(), c, iset, m)

    def key(self):
        c, iset, m = self.final()
        return (m, tuple(sorted(iset)), (c.numerator, c.denominator))

    def __repr__(self):
        c, iset, m = self.final()
        return "BrokenLine(init=%d, bends=%d, final=%s*u%s*z^%s)" % (
            self.init_ray, self.nbends(), c, sorted(iset), list(m))


class Potential:
    """Value of the superpotential at an endpoint Q: y0 plus the final
    monomials of all broken lines ending at Q."""

    __slots__ = ("fan", "k", "endpoint", "value", "lines")

    def __init__(self, fan, k, endpoint, value, lines):
        self.fan = fan
        self.k = k
        self.endpoint = endpoint
        self.value = value
        self.lines = tuple(lines)

    def mod_u(self):
        return self.value.mod_u()

    def kappa(self):
        """The monomial z^{(1,...,1)} whose formal log pairs with the
        potential as the first flat coordinate."""
        n = self.fan.nrays()
        return ring_mono(n, 1, (), (1,) * n)

    def u_sum(self):
        """u_1 + ... + u_k, the second flat coordinate."""
        n = self.fan.nrays()
        terms = {}
        for i in range(self.k):
            terms[((0,) * n, frozenset([i]))] = Fraction(1)
        return RingElement(n, terms)

    def __repr__(self):
        return "Potential(at=%s, %d lines)" % (
            list(self.endpoint), len(self.lines))


def sample_endpoint(seed, bbox=(-10, 10), attempt=0):
    """A generic rational endpoint for broken line counts.  Use a seed
    disjoint from the point configuration's, otherwise Q duplicates the
    first marked point."""
    return sample_generic_points(1, seed, bbox, attempt).points[0]


class _Tracer:
    def __init__(self, diagram, Q):
        self.d = diagram
        self.fan = diagram.fan
        self.Q = _as_pair(Q)
        if diagram.supp_contains(self.Q):
            raise GenericityError("endpoint lies on the diagram support; "
                                  "resample the endpoint")
        self.out = []

    def run(self):
        n = self.fan.nrays()
        cap = self.d.k() + 1
        for m in itertools.product(range(cap + 1), repeat=n):
            if not 1 <= sum(m) <= cap:
                continue
            if r_vector(self.fan, m) == (0, 0):
                continue
            self._trace(self.Q, m, frozenset(), [])
        self.out.sort(key=lambda bl: bl.key())
        return self.out

    def _leg(self, X, m):
        """Validate the backward ray X + s*r(m), s > 0, and return its
        transversal wall crossings as (s, widx, e, t) sorted by s."""
        r = r_vector(self.fan, m)
        cands = []
        for widx, w in enumerate(self.d.walls):
            den = wedge(w.dirvec, r)
            base = w.base_pair()
            dx, dy = X[0] - base[0], X[1] - base[1]
            if den == 0:
                if wedge(w.dirvec, (dx, dy)) != 0:
                    continue
                # collinear with the travel line: any support overlap at
                # s > 0 makes the picture non-generic
                t0 = dot(w.dirvec, (dx, dy))
                mu = dot(w.dirvec, r)
                if w.carrier == "line" or t0 >= 0 or mu > 0:
                    raise GenericityError("broken line segment runs along "
                                          "a wall; resample the endpoint")
                continue
            s = Fraction(wedge(w.dirvec, (base[0] - X[0], base[1] - X[1])),
                         den)
            t = Fraction(wedge(r, (base[0] - X[0], base[1] - X[1])), den)
            if s <= 0:
                continue
            if w.carrier == "ray" and t < 0:
                continue
            if t == 0:
                raise GenericityError("broken line segment through a wall "
                                      "base; resample the endpoint")
            cands.append((s, widx, abs(den), t))
        cands.sort(key=lambda c: (c[0], c[1]))
        for a, b in zip(cands, cands[1:]):
            if a[0] == b[0]:
                wa = self.d.walls[a[1]]
                wb = self.d.walls[b[1]]
                if wedge(wa.dirvec, wb.dirvec) != 0:
                    raise GenericityError("broken line segment through a "
                                          "wall crossing; resample the "
                                          "endpoint")
        return cands

    def _trace(self, X, m, taken, bends_rev):
        cands = self._leg(X, m)
        if sum(m) == 1:
            self._emit(m.index(1), bends_rev)
            return
        r = r_vector(self.fan, m)
        for s, widx, e, _ in cands:
            w = self.d.walls[widx]
            g = w.f.pow(e)
            V = (X[0] + s * r[0], X[1] + s * r[1])
            for (mt, ut), ct in sorted(g.terms.items(),
                                       key=lambda kv: (kv[0][0],
                                                       sorted(kv[0][1]))):
                if not any(mt):
                    continue
                if ut & taken:
                    continue
                m_in = tuple(a - b for a, b in zip(m, mt))
                if any(a < 0 for a in m_in) or not any(m_in):
                    continue
                if r_vector(self.fan, m_in) == (0, 0):
                    continue
                bends_rev.append((V, widx, mt, ut, ct))
                self._trace(V, m_in, taken | ut, bends_rev)
                bends_rev.pop()

    def _emit(self, rho, bends_rev):
        n = self.fan.nrays()
        m = tuple(1 if i == rho else 0 for i in range(n))
        c = Fraction(1)
        iset = frozenset()
        segs = []
        prev = None
        for V, widx, mt, ut, ct in reversed(bends_rev):
            segs.append((prev, V, (c, iset, m)))
            c = c * ct
            iset = iset | ut
            m = tuple(a + b for a, b in zip(m, mt))
            prev = V
        segs.append((prev, self.Q, (c, iset, m)))
        self.out.append(BrokenLine(self.fan, rho, segs, self.Q))


def enumerate_broken_lines(d, fan, Q):
    """All broken lines of the diagram d ending at Q, sorted by their
    final monomial.  Q may be a rational pair or a homogeneous triple."""
    if fan is not d.fan and fan.rays != d.fan.rays:
        raise InvariantError("diagram was built over a different fan")
    return _Tracer(d, Q).run()


def potential(d, fan, Q):
    """The superpotential at Q: y0 + sum of broken line finals."""
    lines = enumerate_broken_lines(d, fan, Q)
    n = fan.nrays()
    val = RingElement(n, {}, y0=Fraction(1))
    for bl in lines:
        val = val.add(bl.final_element())
    return Potential(fan, d.k(), _as_pair(Q), val, lines)


def transport(d, W, path):
    """Parallel transport of a potential along a path: applies the
    ordered wall crossing automorphism of the path to W.value.  The path
    must start in the chamber of W.endpoint."""
    aut = path_automorphism(d, path)
    return Potential(W.fan, W.k, _as_pair(path[-1]), aut.apply(W.value), ())


def verify_disk_correspondence(fan, config, Q):
    """Check, termwise, that broken line finals match the disk count:
    each Maslov index two disk through (config, Q) contributes the
    monomial Mult(h) * u_{marks} * z^{deg}, and the two multisets must
    agree exactly."""
    d = build_diagram(fan, config)
    lines = enumerate_broken_lines(d, fan, Q)
    got = sorted(bl.key() for bl in lines)
    want = []
    for rec in enumerate_maslov2_disks(fan, config, Q, as_curves=False):
        mult, marks, deg = rec.mono()
        c = Fraction(mult)
        bits = tuple(i for i in range(marks.bit_length()) if marks >> i & 1)
        want.append((deg, bits, (c.numerator, c.denominator)))
    want.sort()
    return got == want
