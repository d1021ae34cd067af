"""Continuous symmetry discovery, scoring, and enforcement for learned functions.

Vector fields act as infinitesimal generators of continuous transformations;
this package estimates generators that annihilate a differentiable model,
restricts the search to isometries (Killing fields of a metric), quantifies
estimates against ground truth, builds invariant polynomial feature bases,
and regularizes training toward discovered symmetries.
"""

__version__ = "0.1.0"
