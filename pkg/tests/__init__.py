"""
Test suite for MemVec components.
"""
