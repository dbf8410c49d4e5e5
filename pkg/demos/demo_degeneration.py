"""Overlay all twelve anticanonical dP6 solutions, cut the plane along
them, and build the fan over the resulting decomposition.  Writes the
decomposition as JSON and SVG next to this script.

Run:  python3 demos/demo_degeneration.py
"""

import os

from tropenum import (build_decomposition, builtin_fan, fan_over,
                      make_degree, properties_report, run_count)
from tropenum import jsonio, svgout

DP6 = builtin_fan("dp6")
HERE = os.path.dirname(os.path.abspath(__file__))

rep = run_count(DP6, make_degree(DP6, (1,) * 6), seed=3)
print("%d anticanonical solutions, Welschinger count %d"
      % (rep.n_trop, rep.w_trop))

pd = build_decomposition(rep.curves, DP6, rep.config.points)
print("their union cuts the plane into %d vertices, %d edges, %d faces"
      % (len(pd.vertices), len(pd.edges), len(pd.faces)))

props = properties_report(pd, rep.curves, DP6)
for name, holds in sorted(props.items()):
    print("  %-22s %s" % (name, "yes" if holds else "NO"))

f3 = fan_over(pd, DP6)
print("fan over the decomposition: %d cones in M + Z" % len(f3.cones))
print("(each cell cone slices back to its cell at height 1; the")
print(" height-0 cones are exactly the dP6 fan)")

doc = jsonio.decomposition_doc(DP6, rep, pd, props, f3)
jpath = os.path.join(HERE, "dp6_decomposition.json")
spath = os.path.join(HERE, "dp6_decomposition.svg")
with open(jpath, "w") as fh:
    fh.write(jsonio.dumps(doc))
with open(spath, "w") as fh:
    fh.write(svgout.render_doc(doc))
print("wrote %s and %s" % (os.path.basename(jpath), os.path.basename(spath)))
