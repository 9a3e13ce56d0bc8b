#!/usr/bin/env python3
"""
Main entry point for the kbonacci command-line tool.
"""
import os
import sys
import logging

# Add the project directory to the Python path
current_dir = os.path.dirname(os.path.abspath(__file__))
if current_dir not in sys.path:
    sys.path.insert(0, current_dir)

from core.application import KBonacciApplication  # noqa: E402

logger = logging.getLogger(__name__)


def main(argv=None) -> int:
    """
    Run one command and write its payload to standard output.

    Args:
        argv (list, optional): Arguments without the program name

    Returns:
        int: Process exit code
    """
    app = KBonacciApplication()
    code, output = app.run(sys.argv[1:] if argv is None else argv)
    if output:
        sys.stdout.buffer.write(output)
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
