"""Linnik, Mittag-Leffler, strictly stable and Weibull laws.

Evaluators, samplers built from product representations, Monte Carlo checks
of the distributional identities linking these families, and random-sum
experiments whose limit is the Linnik law.
"""

__version__ = "0.1.0"
