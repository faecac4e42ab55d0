"""Eigenvalue location for cographs.

Core entry points:

- ``cotree.Cotree``: parse / build / manipulate the Union-Join tree.
- ``diagonalizer.diagonalize``: O(n) diagonal congruent to A + xI.
- ``spectral``: eigenvalue counting, inertia (algorithmic and closed-form),
  bisection and graph energy.
- ``recognition.recognize``: edge list -> cotree, or a P4 witness.
- ``families``: named cotree constructors (complete, empty, equienergetic,
  random).
- ``oracle``: independent dense Jacobi eigensolver for verification.
"""

__version__ = "0.1.0"
