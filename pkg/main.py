import sys

from cli.app import run_cli


def main():
    # Logging se configura dentro de run_cli (--verbose para DEBUG)
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
