"""Spec resolution and output helpers for the directional network analyzer"""
