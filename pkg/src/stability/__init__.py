"""
Stability conditions on the standard heart: HN filtrations and masses
"""
