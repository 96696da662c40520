"""
symdisc: the discriminant of real symmetric matrices
"""
