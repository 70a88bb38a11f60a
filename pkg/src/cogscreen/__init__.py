"""Gamified dementia screening: CNN predictors, decision fusion, and the
memory-match game engine plus HTTP service that ties them together."""

__version__ = "0.1.0"
