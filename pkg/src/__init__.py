"""
Mass Growth Lab - Bridgeland masses, HN data and categorical entropy bounds
for quiver-type triangulated categories
"""

__version__ = "1.0.0"
__author__ = "Mass Growth Lab Team"
