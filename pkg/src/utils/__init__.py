"""
Exact arithmetic, numerical kernels and I/O helpers
"""
