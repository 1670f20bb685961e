"""Weyl functions of symmetric operators and the spectral analysis of their extensions.

The package computes matrix-valued Weyl functions M(z) for a catalog of
operator models (half-line and finite-interval Sturm-Liouville problems,
operator-potential half-line problems, strip/corner/sector Laplacians),
derives spectra, negative-eigenvalue counts, Krein extensions and
characteristic functions of boundary-condition extensions from M alone, and
cross-validates every claim against an independent finite-difference
discretization.
"""

__version__ = "0.1.0"
