#!/usr/bin/env python3
"""
Script to run the virasoro command line
"""
import os
import sys

# Add the project root to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from virasoro_engine.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
