"""Trace broken lines to two endpoints of the same diagram, one on each
side of a scattered wall, and carry the first potential across the wall
to recover the second.

Run:  python3 demos/demo_potential.py
"""

from tropenum import (build_diagram, builtin_fan, enumerate_broken_lines,
                      format_element, hfrac, path_crossings, potential,
                      sample_endpoint, sample_generic_points, transport,
                      verify_disk_correspondence)

P2 = builtin_fan("p2")
NAMES = ["x0", "x1", "x2"]

cfg = sample_generic_points(2, seed=5)
d = build_diagram(P2, cfg)
Q = sample_endpoint(302)
Qp = sample_endpoint(301)

print("== broken lines into Q = (%s, %s) ==" % hfrac(Q))
for bl in enumerate_broken_lines(d, P2, Q):
    print("  %-16s (%d bend(s))" % (format_element(bl.final_element(), NAMES),
                                bl.nbends()))
W = potential(d, P2, Q)
print("W(Q)  = %s" % format_element(W.value, NAMES))

print()
print("== same diagram, endpoint Q' = (%s, %s) ==" % hfrac(Qp))
for bl in enumerate_broken_lines(d, P2, Qp):
    print("  %-16s (%d bend(s))" % (format_element(bl.final_element(), NAMES),
                                bl.nbends()))
Wp = potential(d, P2, Qp)
print("W(Q') = %s" % format_element(Wp.value, NAMES))

crossings = path_crossings(d, [Q, Qp])
print()
print("the straight path from Q to Q' crosses %d wall(s)" % len(crossings))
moved = transport(d, W, [Q, Qp])
print("transporting W(Q) across it recovers W(Q'):",
      moved.value == Wp.value)

# the same multisets fall out of the disk enumeration
print()
print("disk correspondence at Q: ", verify_disk_correspondence(P2, cfg, Q))
print("disk correspondence at Q':", verify_disk_correspondence(P2, cfg, Qp))
