#!/usr/bin/env python3
import argparse
import csv
import sys
from pathlib import Path

from exotica.ricci import convergence_orders, convergence_study


def main() -> None:
    parser = argparse.ArgumentParser(description="Grid-refinement study of the finite-difference Ricci tensor.")
    parser.add_argument("--grids", default="16,32,64", help="Comma-separated grid sizes, each double the last.")
    parser.add_argument("--epsilon", type=float, default=0.1, help="Amplitude of the conformal factor.")
    parser.add_argument("--output", "-o", default=None, help="Optional CSV path for the error table.")
    args = parser.parse_args()

    grids = [int(part) for part in args.grids.split(",")]
    rows = convergence_study(grids, args.epsilon)
    ricci_orders = convergence_orders([row.ricci_error for row in rows])
    christoffel_orders = convergence_orders([row.christoffel_error for row in rows])

    print(f"{'m':>5}  {'h':>10}  {'ricci error':>12}  {'order':>6}  {'christoffel error':>17}  {'order':>6}")
    for i, row in enumerate(rows):
        ro = f"{ricci_orders[i - 1]:.3f}" if i else "-"
        co = f"{christoffel_orders[i - 1]:.3f}" if i else "-"
        print(f"{row.m:>5}  {row.h:>10.5f}  {row.ricci_error:>12.4e}  {ro:>6}  {row.christoffel_error:>17.4e}  {co:>6}")

    if args.output:
        path = Path(args.output).expanduser()
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["m", "h", "ricci_error", "christoffel_error"])
            for row in rows:
                writer.writerow([row.m, repr(row.h), repr(row.ricci_error), repr(row.christoffel_error)])
        print(f"Wrote {path}")

    if ricci_orders and min(ricci_orders) < 1.8:
        sys.exit(1)


if __name__ == "__main__":
    main()
