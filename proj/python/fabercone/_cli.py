"""Console entry point that dispatches to the bundled CLI binary."""

import os
import sys


def main():
    binary = os.path.join(os.path.dirname(__file__), "bin", "fabercone")
    if not os.path.exists(binary):
        sys.stderr.write("fabercone binary not bundled with this installation\n")
        return 2
    os.execv(binary, [binary] + sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
