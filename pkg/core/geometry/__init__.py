"""
Invariant-model geometry: generalized complex linear algebra, twisted
cohomology, the truncated Cartan model and Duistermaat–Heckman densities.
"""
