"""python -m ptsig entry point."""

from ptsig.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
