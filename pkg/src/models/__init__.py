"""
Value types: symmetric matrices, polynomials, closed-form scalars, partitions and reports
"""
