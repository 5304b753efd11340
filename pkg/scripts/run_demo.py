#!/usr/bin/env python3
"""Run the bundled regression corpus (same as `hurwitz-alex demo`)."""
import sys

from hurwitz_alex.cli import main

if __name__ == "__main__":
    sys.exit(main(["demo", *sys.argv[1:]]))
