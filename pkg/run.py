#!/usr/bin/env python3
"""
run.py - Main runner script for the q-series identity checker
"""

import sys
import os

# Add the qseries_checker package to the Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from qseries_checker.main import main

if __name__ == "__main__":
    sys.exit(main())
