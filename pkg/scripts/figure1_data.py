#!/usr/bin/env python3
"""Emit the bound/classical curve data used for the summary figure.

Thin wrapper over the ``cvsquash figure1`` command with the default sweep
(kappa in {1.5, 2, 3}, energies in [0, 1], 200 steps); writes CSV next to
this script unless an output path is given.
"""

import argparse
import pathlib
import sys

from cvsquash.cli import main as cli_main


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--output",
        default=str(pathlib.Path(__file__).resolve().parent / "figure1_data.csv"),
    )
    parser.add_argument("--steps", type=int, default=200)
    parser.add_argument("--kappas", default="1.5,2,3")
    args = parser.parse_args()
    code = cli_main(
        [
            "figure1",
            "--kappas", args.kappas,
            "--steps", str(args.steps),
            "--output", args.output,
        ]
    )
    if code == 0:
        print(f"wrote {args.output}")
    return code


if __name__ == "__main__":
    sys.exit(main())
