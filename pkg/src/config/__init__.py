"""
Configuration management for Mass Growth Lab
"""
