"""crossbial: exact structure-constant calculus for cross product bialgebras.

Finite-dimensional (co)algebraic structures over Q / Q(zeta_n) as exact
tensors: Hopf data, cross product bialgebras, the recursion operator and its
order, trivalence classification, cocycle twisting, dual pairings and the
double biproduct.
"""

__version__ = "0.1.0"
