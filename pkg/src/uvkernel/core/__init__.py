"""Core terms, the semantic domain, and normalization by evaluation."""
