"""Sphericity of flag varieties under reductive subgroups of Sp and SO."""

__version__ = "0.1.0"
