"""Family builder, relation catalogue, Tietze moves, invariants and run logs."""
