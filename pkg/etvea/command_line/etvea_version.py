""" etvea.command_line.etvea_version
"""

import etvea
import sys


def main():
    sys.stdout.write(etvea.__version__)


if __name__ == "__main__":
    main()
