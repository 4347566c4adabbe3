"""Linearized flow, Lyapunov exponents, dimension estimates and the norm-quotient certificate"""
