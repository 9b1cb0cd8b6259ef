"""Exact arithmetic for top psi-class integrals on twisted double ramification
cycles and orbifold Euler characteristics of minimal strata of abelian
differentials.

All computations are carried out over the rationals with no floating point
anywhere.  The main entry points are:

- :mod:`minstrata.series`: truncated power series over ``fractions.Fraction``,
- :mod:`minstrata.intersect`: the closed evaluation of top psi integrals and
  the identities they satisfy,
- :mod:`minstrata.residues`: integrals over strata with residue conditions,
- :mod:`minstrata.eulerchar`: Euler characteristics of minimal strata,
- :mod:`minstrata.combinat`: supporting enumerative combinatorics,
- :mod:`minstrata.cli`: the command line interface.
"""

__version__ = "0.1.0"
