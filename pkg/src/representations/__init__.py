"""
Finite-dimensional quiver representations over prime fields
"""
