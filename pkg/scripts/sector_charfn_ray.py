#!/usr/bin/env python3
"""Trace the sector-model characteristic function |W(z)| along upper-half-plane
rays for a family of boundary parameters, together with the closed
linear-fractional form it must reproduce.

Usage: python scripts/sector_charfn_ray.py [beta]
"""

import cmath
import math
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from weyl import charfun, extensions, models
from weyl.specfun import upper_power


def main():
    beta = float(sys.argv[1]) if len(sys.argv) > 1 else 0.75
    sec = models.sector(beta)
    cb = models.sector_constant(beta)
    twist = cmath.exp(2j * beta * math.pi)
    print(f"sector beta = {beta}; C_beta = {cb:.6f}")
    for h in (0.5 + 1.0j, -0.3 + 2.0j, 1.5 + 0.4j):
        spec = extensions.extension(sec, cb * h)
        print(f"\nboundary parameter h = {h}  (B = C_beta h)")
        print(f"{'z':>22s} {'|W|':>12s} {'closed form':>14s}")
        for r in (0.25, 1.0, 4.0, 16.0):
            for phi in (0.15, 0.5 * math.pi, math.pi - 0.15):
                z = r * cmath.exp(1j * phi)
                w = charfun.char_function(spec, z).at(0, 0)
                zb = upper_power(z, beta)
                closed = abs((zb + h) / (zb + twist * h.conjugate()))
                print(f"{z:>22.4f} {abs(w):12.8f} {closed:14.8f}")


if __name__ == "__main__":
    main()
