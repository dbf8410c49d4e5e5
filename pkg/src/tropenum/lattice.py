"""Exact integer and rational linear algebra for plane lattice geometry.

Everything downstream (fans, curves, arrangements, wall crossing) reduces to
arithmetic in M = Z^2 and its rational span.  This module owns that arithmetic:
primitive vectors, the wedge form identifying M ^ M with Z, Smith normal form
and cokernel orders of integer matrices, exact affine solving over Q, and a
small kit of homogeneous-coordinate helpers for rational plane points used by
the enumeration hot paths (a point is an int triple (X, Y, W), W > 0, gcd 1,
standing for (X/W, Y/W)).

Floating point is forbidden here and in every caller.
"""

from fractions import Fraction
from math import gcd


# ---------------------------------------------------------------------------
# integer vectors

def primitive(v):
    """Return (p, k) with k*p = v, k > 0 and p a primitive integer vector.

    Raises ValueError on the zero vector, which has no direction.
    """
    x, y = v
    if x == 0 and y == 0:
        raise ValueError("zero vector has no primitive direction")
    k = gcd(abs(x), abs(y))
    return (x // k, y // k), k


def wedge(a, b):
    """a.x*b.y - a.y*b.x, the standard identification of M ^ M with Z."""
    return a[0] * b[1] - a[1] * b[0]


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def rot90(v):
    """Counterclockwise quarter turn."""
    return (-v[1], v[0])


def lattice_length(v):
    """gcd of the coordinates: the index of Zv inside (Rv cap Z^2)."""
    x, y = v
    if x == 0 and y == 0:
        return 0
    return gcd(abs(x), abs(y))


def angle_key(v):
    """Total order key sorting nonzero integer vectors by CCW angle from (1,0).

    Collinear same-direction vectors compare equal; opposite directions differ.
    """
    x, y = v
    if x == 0 and y == 0:
        raise ValueError("zero vector has no angle")
    if y > 0 or (y == 0 and x > 0):
        half = 0
    else:
        half = 1
    if y == 0:
        return (half, 0, Fraction(0))
    # within an open half-plane the angle is monotone in -x/y
    return (half, 1, Fraction(-x, y))


# ---------------------------------------------------------------------------
# Smith normal form and cokernel order

def smith_normal_form(rows):
    """Invariant factors of an integer matrix, as a list d_1 | d_2 | ... > 0.

    Uses row/column reduction with pivoting on the smallest nonzero entry.
    Matrices here are tiny (at most ~20x20), so no care beyond correctness.
    """
    A = [[int(e) for e in r] for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    for r in A:
        if len(r) != n:
            raise ValueError("ragged matrix")
    diag = []
    top = 0
    while True:
        # find smallest nonzero entry in the trailing block
        best = None
        for i in range(top, m):
            for j in range(top, n):
                e = A[i][j]
                if e != 0 and (best is None or abs(e) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        A[top], A[bi] = A[bi], A[top]
        for r in A:
            r[top], r[bj] = r[bj], r[top]
        while True:
            if A[top][top] < 0:
                A[top] = [-e for e in A[top]]
            p = A[top][top]
            dirty = False
            for i in range(top + 1, m):
                q = A[i][top] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[top])]
                if A[i][top]:
                    # remainder smaller than the pivot: swap it up and restart
                    A[top], A[i] = A[i], A[top]
                    dirty = True
                    break
            if dirty:
                continue
            for j in range(top + 1, n):
                q = A[top][j] // p
                if q:
                    for r in A:
                        r[j] -= q * r[top]
                if A[top][j]:
                    for r in A:
                        r[top], r[j] = r[j], r[top]
                    dirty = True
                    break
            if dirty:
                continue
            # row and column clean; enforce divisibility of the rest
            stuck = None
            for i in range(top + 1, m):
                for j in range(top + 1, n):
                    if A[i][j] % p:
                        stuck = i
                        break
                if stuck is not None:
                    break
            if stuck is None:
                break
            A[top] = [a + b for a, b in zip(A[top], A[stuck])]
        diag.append(A[top][top])
        top += 1
        if top >= m or top >= n:
            break
    return diag


def det(rows):
    """Determinant of a square integer matrix, by fraction-free elimination."""
    A = [[int(e) for e in r] for r in rows]
    n = len(A)
    for r in A:
        if len(r) != n:
            raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def cokernel_order(rows):
    """Order of Z^rows / (column span of the matrix); "infinite" if not finite.

    The cokernel is finite exactly when the rank equals the number of rows,
    and then its order is the product of the invariant factors.
    """
    m = len(rows)
    diag = smith_normal_form(rows)
    if len(diag) < m:
        return "infinite"
    out = 1
    for d in diag:
        out *= d
    return out


# ---------------------------------------------------------------------------
# exact affine solving

def solve_affine(A, b):
    """Solve A x = b exactly over the rationals.

    Returns one of
        ("unique", x)
        ("none",)
        ("family", particular, kernel_basis)
    with all entries Fractions.  A is a list of rows; b a list.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[Fraction(e) for e in row] + [Fraction(v)] for row, v in zip(A, b)]
    pivots = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if M[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        pv = M[r][c]
        M[r] = [e / pv for e in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [e - f * g for e, g in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if M[i][n] != 0:
            return ("none",)
    particular = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        particular[c] = M[i][n]
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return ("unique", particular)
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -M[i][fc]
        basis.append(vec)
    return ("family", particular, basis)


# ---------------------------------------------------------------------------
# homogeneous rational points: (X, Y, W) integers, W > 0, gcd(X,Y,W) = 1

def hpoint(x, y):
    """Homogeneous triple from two Fractions (or ints)."""
    fx, fy = Fraction(x), Fraction(y)
    w = fx.denominator * fy.denominator // gcd(fx.denominator, fy.denominator)
    return hnorm(fx.numerator * (w // fx.denominator),
                 fy.numerator * (w // fy.denominator), w)


def hnorm(X, Y, W):
    if W == 0:
        raise ValueError("point at infinity")
    if W < 0:
        X, Y, W = -X, -Y, -W
    g = gcd(gcd(abs(X), abs(Y)), W)
    if g > 1:
        X, Y, W = X // g, Y // g, W // g
    return (X, Y, W)


def hfrac(P):
    """Back to a pair of Fractions."""
    X, Y, W = P
    return Fraction(X, W), Fraction(Y, W)


def hdiff(A, B):
    """Integer vector proportional to B - A, with the true direction.

    Returns (0, 0) if A == B.
    """
    ax, ay, aw = A
    bx, by, bw = B
    return (bx * aw - ax * bw, by * aw - ay * bw)


def hshift(A, s_num, s_den, d):
    """A + (s_num/s_den) * d as a normalized triple (d an int vector)."""
    ax, ay, aw = A
    if s_den < 0:
        s_num, s_den = -s_num, -s_den
    return hnorm(ax * s_den + s_num * d[0] * aw,
                 ay * s_den + s_num * d[1] * aw,
                 aw * s_den)


def ray_intersect(A, da, B, db):
    """Intersection of the lines A + s*da and B + t*db (homogeneous points,
    integer directions).

    Returns (s_num, t_num, den, P) with den > 0, s = s_num/den, t = t_num/den,
    and P the homogeneous intersection point; None when the directions are
    parallel.  Callers impose their own sign conditions on s and t.
    """
    c = wedge(da, db)
    if c == 0:
        return None
    K = A[2] * B[2]
    D = hdiff(A, B)
    den = K * c
    s_num = wedge(D, db)
    t_num = wedge(D, da)
    if den < 0:
        den, s_num, t_num = -den, -s_num, -t_num
    P = hnorm(A[0] * den + s_num * da[0] * A[2],
              A[1] * den + s_num * da[1] * A[2],
              A[2] * den)
    return s_num, t_num, den, P


def line_param(P, B, d):
    """Parameter of P on the line B + t*d, as (t_num, t_den) with t_den > 0,
    or None if P is not on the line."""
    D = hdiff(B, P)
    if wedge(D, d) != 0:
        return None
    # D/(BwPw) = t*d  componentwise; use the larger coordinate of d
    den = B[2] * P[2]
    if d[0] != 0:
        num, dd = D[0], d[0]
    else:
        num, dd = D[1], d[1]
    t_num, t_den = num, den * dd
    if t_den < 0:
        t_num, t_den = -t_num, -t_den
    return t_num, t_den


def on_ray(P, B, d, strict=False):
    """Is P on the ray B + t*d, t >= 0 (t > 0 if strict)?"""
    t = line_param(P, B, d)
    if t is None:
        return False
    return t[0] > 0 if strict else t[0] >= 0


def on_segment(P, A, B, strict=False):
    """Is P on the segment from A to B (strictly interior if strict)?"""
    dab = hdiff(A, B)
    if dab == (0, 0):
        return False
    dap = hdiff(A, P)
    if wedge(dap, dab) != 0:
        return False
    # hdiff scales by the positive product of the W coordinates, so only the
    # signs of the projections are meaningful
    s1 = dot(dap, dab)
    dbp = hdiff(B, P)
    s2 = -dot(dbp, dab)
    if strict:
        return s1 > 0 and s2 > 0
    return s1 >= 0 and s2 >= 0
