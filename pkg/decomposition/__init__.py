"""Prefix/good/suffix decompositions of languages and their checks."""
