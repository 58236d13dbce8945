"""Concrete subshift families: beta shifts, S-gap shifts, coded systems."""
