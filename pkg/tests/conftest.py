"""Deterministic hypothesis profile: the whole suite, property tests
included, reproduces bit for bit from a fresh checkout."""

from hypothesis import settings

settings.register_profile("deterministic", derandomize=True, deadline=None)
settings.load_profile("deterministic")
