"""Coset enumeration strategies."""
