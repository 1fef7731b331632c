"""Forest-pair groupoid calculus for generalized Thompson groups,
character geometry on the associated cube complexes, matching-complex
link models, exact integer homology, and the Houghton-group analogue.
"""

__version__ = "0.1.0"
