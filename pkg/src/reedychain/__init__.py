"""Exact model-category machinery for simplicial objects in chain complexes
over a prime field.

Every classifier and construction here is a finite linear-algebra computation
over F_p: no floats, no approximation, no randomized verdicts.
"""

__version__ = "0.1.0"
