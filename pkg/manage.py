#!/usr/bin/env python
"""demkit's command-line utility."""
import sys


def main():
    """Run a demkit subcommand."""
    from demkit.cli import main as run

    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
