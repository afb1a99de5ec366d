"""Entry point for the pasting engine - run from project root."""
import sys

from pasting_engine.main import main

if __name__ == '__main__':
    sys.exit(main())
