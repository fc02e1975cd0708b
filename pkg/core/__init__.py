"""Analytic and Monte Carlo models for directional Poisson networks"""
