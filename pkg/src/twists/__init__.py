"""
Spherical twist calculus on CY-N quiver categories
"""
