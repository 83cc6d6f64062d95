"""
Shared utilities for Mass Growth Lab
"""
