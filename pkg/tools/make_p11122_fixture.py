"""Generate tests/fixtures/p11122_canonical.txt.

The curve C in P(1,1,1,2,2) is cut out by the 2x2 minors of
    [ x0  x1  x2^2  x3 ]
    [ x1  x2  x3    x4 ].
S/I_C is Cohen-Macaulay of codimension 3, so the canonical module is
Ext^3(S/I_C, S(-7)) = coker(d_3^T)(-7), read off from the minimal free
resolution of S/I_C.  The presentation is computed once here and checked
in as data so the test suite does not depend on this script.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from strandlab.fields import Field
from strandlab.grading import GradingSpec, format_degree
from strandlab.groebner import ModulePresentation
from strandlab.complexes import free_resolution
from strandlab.poly import PolyRing


def main():
    f = Field(32003)
    spec = GradingSpec(1, ((1,), (1,), (1,), (2,), (2,)), (1,))
    S = PolyRing(f, spec, names=[f"x{i}" for i in range(5)])
    top = [S.parse(t) for t in ("x0", "x1", "x2^2", "x3")]
    bot = [S.parse(t) for t in ("x1", "x2", "x3", "x4")]
    minors = [top[i] * bot[j] - top[j] * bot[i]
              for i in range(4) for j in range(i + 1, 4)]
    R = ModulePresentation.quotient_by_ideal(S, minors)
    F = free_resolution(R)
    print("resolution of S/I_C:")
    for line in F.betti_lines():
        print(" ", line)
    assert F.length == 3, "S/I_C should have codimension 3 and be CM"

    sigma = sum(d[0] for d in spec.var_degrees)  # deg omega_S = -(sigma)
    b = F.degrees[3]
    gen_degs = [(sigma - bi[0],) for bi in b]
    d3 = F.diffs[2]  # rows F_2, columns F_3
    nrel = len(F.degrees[2])
    print("canonical module generators:", [g[0] for g in gen_degs])

    lines = []
    lines.append("# canonical module of the P(1,1,1,2,2) curve defined by the")
    lines.append("# 2x2 minors of [[x0,x1,x2^2,x3],[x1,x2,x3,x4]], presented as")
    lines.append("# coker(d_3^T)(-7) from the resolution of S/I_C.")
    lines.append("# generated by tools/make_p11122_fixture.py")
    lines.append("")
    lines.append("[grading]")
    lines.append("degrees = " + " ".join(format_degree(d) for d in spec.var_degrees))
    lines.append("theta = (1)")
    lines.append("")
    lines.append("[module]")
    lines.append("generators = " + ", ".join(format_degree(d) for d in gen_degs))
    for j in range(nrel):
        entries = [str(d3[j][i]) for i in range(len(gen_degs))]
        lines.append("relation = " + ", ".join(entries))
    out = os.path.join(os.path.dirname(__file__), "..",
                       "tests", "fixtures", "p11122_canonical.txt")
    with open(out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    print("wrote", os.path.normpath(out))


if __name__ == "__main__":
    main()
