"""Anisotropy scans of the helix indicators for N = 11 and N = 15.

Writes one CSV (plus JSON sidecar) per chain length and prints where the
indicator zeros and the strict local minima of f1 and |f1| fall relative to the
predicted helix and kink resonances.

    python3 scripts/helix_scan.py --out scan_out
"""

import argparse
import json
import math
from pathlib import Path

import numpy as np

from xxz_ness import CircuitParams, predicted_resonances, resonance_grid, scan_anisotropy, strict_local_minima


def offsets(table, values, resonances):
    minima = table.eta[strict_local_minima(values)]
    step = np.diff(table.eta).max()
    return [int(round((minima[np.argmin(np.abs(minima - e))] - e) / step)) for e in resonances]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="scan_out", help="output directory")
    ap.add_argument("--grid", type=int, default=2001)
    ap.add_argument("--sizes", type=int, nargs="+", default=[11, 15])
    ap.add_argument("--w-factor", type=float, default=1.0, help="w = factor * z * lambda (1 is resonant)")
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    lam = math.exp(0.9)
    for n in args.sizes:
        base = CircuitParams.easy_plane(n, 0.3, 0.9, 1.0, args.w_factor * lam)
        table = scan_anisotropy(base, resonance_grid(args.grid, n))
        path = out / f"scan_n{n}.csv"
        path.write_text(table.to_csv(), encoding="utf-8")
        path.with_suffix(".csv.json").write_text(json.dumps(table.meta, indent=2) + "\n", encoding="utf-8")

        print(f"N = {n}: {path}")
        zeros = [abs(table.f1[table.nearest(e)]) for e in predicted_resonances(n, 0)]
        print(f"  helix resonances: max |f1| = {max(zeros):.2e}")
        for m in range(1, (n - 1) // 2):
            res = predicted_resonances(n, m)
            if not res:
                continue
            print(f"  m = {m} at eta/pi = {[round(e / math.pi, 4) for e in res]}")
            print(f"    nearest f1 minimum (grid steps):   {offsets(table, table.f1, res)}")
            print(f"    nearest |f1| minimum (grid steps): {offsets(table, np.abs(table.f1), res)}")
        print(f"  min |f1| over grid: {np.nanmin(np.abs(table.f1)):.2e}")


if __name__ == "__main__":
    main()
