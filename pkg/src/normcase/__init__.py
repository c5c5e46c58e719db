"""Norm-driven case management: specification language, reasoner and service."""

__version__ = "0.1.0"
