"""Value types for degenerations, presentations, coset tables and reports."""
