"""Check records and report writers."""
