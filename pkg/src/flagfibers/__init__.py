"""Exact combinatorics of flag varieties at desk scale.

Subpackages:

- ``weyl``     -- permutation and signed-permutation Weyl groups, Bruhat
                  order, parabolic double cosets.
- ``ideals``   -- order ideals in position posets, balanced ideals, minimal
                  Anosov types.
- ``flags``    -- exact linear algebra over Gaussian rationals and relative
                  positions of flags.
- ``sl2reps``  -- SL(2)-weight decompositions, partitions, invariant forms,
                  Cartan projections.
- ``twg``      -- weight graphs of circle actions on 3-dimensional flag
                  varieties and their Hirzebruch-model classification.
- ``dims``     -- dimension formulas and the census of 3-dimensional flag
                  varieties.
- ``cli``      -- command-line front end and golden-file reproduction.
"""

__version__ = "0.1.0"
