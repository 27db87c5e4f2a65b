"""Run `bench` from a source checkout (after `pip install -e .`)."""

import sys

from socshield.bench.cli import main

if __name__ == "__main__":
    sys.exit(main())
