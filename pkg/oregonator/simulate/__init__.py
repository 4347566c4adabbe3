"""Integration of the Galerkin approximation of the diffusive Oregonator system"""
