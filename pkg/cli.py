import sys

from majorise.main import run_cli

if __name__ == "__main__":
    sys.exit(run_cli())
