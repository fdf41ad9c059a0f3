"""
__init__.py for commandline module
"""
