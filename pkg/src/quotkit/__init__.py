"""quotkit: desk-scale computational group theory.

Tree-pair arithmetic in the Higman-Thompson groups V_n, Coxeter/graph-product
combinatorics, finite-group machinery (coset enumeration, subgroup posets),
clique-poset graph reconstruction, finite-quotient fingerprints, and fibre
products of epimorphisms.
"""

__version__ = "0.1.0"
