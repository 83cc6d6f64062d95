"""
Quiver combinatorics, CY-N hom tables and Laurent polynomials
"""
