"""Approximate routing-cost spanning trees built on isolated shortest paths."""
