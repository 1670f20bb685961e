#!/usr/bin/env python3
"""Sweep the Robin parameter and well depth, tabulating the negative-eigenvalue
count computed from the Weyl function (inertia of B - M(0)) against the
finite-difference oracle.

Usage: python scripts/negcount_sweep.py
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from weyl import extensions, models
from weyl.slsolve import PotentialSpec


def main():
    print(f"{'scenario':44s} {'kappa_M':>8s} {'kappa_oracle':>13s}")
    q0 = PotentialSpec.zero()
    for h in (-3.0, -2.0, -1.0, -0.5, -0.1, 0.0, 0.5, 2.0):
        spec = extensions.extension(models.half_line(q0), h)
        km, ko = extensions.negative_count(spec)
        print(f"{'free half-line, h=%+.1f' % h:44s} {km:8d} {ko:13d}")
    for depth, width in ((-0.5, 1.0), (-1.0, 1.2), (-2.0, 1.0), (-5.0, 0.5)):
        q = PotentialSpec.square_well(depth, width)
        for h in (0.0, -1.0):
            spec = extensions.extension(models.half_line(q), h)
            km, ko = extensions.negative_count(spec)
            label = f"well depth {depth} width {width}, h={h:+.1f}"
            print(f"{label:44s} {km:8d} {ko:13d}")
    op = models.operator_potential_halfline([2.0, 5.0])
    from weyl.linalg import Matrix

    for b in ((0.0, 5.0), (-1.0, 0.0), (0.3, 0.4), (1.0, 6.0)):
        spec = extensions.ExtensionSpec(op, Matrix.diag(list(b)))
        km, ko = extensions.negative_count(spec)
        label = f"operator potential diag(2,5), B=diag{b}"
        print(f"{label:44s} {km:8d} {ko:13d}")


if __name__ == "__main__":
    main()
