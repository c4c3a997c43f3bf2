"""
qseries_checker - Exact verification of basic hypergeometric transformation identities
"""

__version__ = "1.0.0"
