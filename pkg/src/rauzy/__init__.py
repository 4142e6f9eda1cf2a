"""Rauzy classes of interval exchange permutations: invariants, enumeration and counting formulas."""
