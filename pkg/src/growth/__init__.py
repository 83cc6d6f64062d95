"""
Growth-rate estimation, entropy bounds and spectral radii
"""
