"""
Invariant suites run by the check command
"""
