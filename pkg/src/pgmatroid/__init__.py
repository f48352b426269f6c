"""Girth and cogirth of low-rank perturbations of graphic matroids over GF(2)."""
