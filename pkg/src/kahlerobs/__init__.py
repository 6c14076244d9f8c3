"""Cohomological obstructions to Kähler structures on blow-ups of complex tori."""
