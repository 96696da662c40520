"""
Solvers, experiments and the command registry
"""
