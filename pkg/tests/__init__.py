"""Test package for ShufflePD"""
