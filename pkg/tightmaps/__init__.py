"""
Tightmaps package for certifying, decomposing and classifying tight homomorphisms between Hermitian Lie algebras.
"""

__version__ = "1.0.0"
