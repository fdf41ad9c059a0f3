"""
Module __init__ for utils
"""
