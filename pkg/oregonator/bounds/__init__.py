"""Norm functionals and checks of the explicit a-priori estimates along trajectories"""
