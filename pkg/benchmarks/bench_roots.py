"""Benchmark the root-finding kernels: numba JIT vs. pure-Python fallback.

Run directly to time the current mode (controlled by the SYMBIF_NO_NUMBA
environment variable); use ``--both`` to run this script twice in
subprocesses, once per mode, and print the comparison.

    python benchmarks/bench_roots.py --both
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time


def measure() -> dict:
    from symbif import _kernels, disk_spectrum, neumann_radial_roots

    t0 = time.perf_counter()
    _kernels.warmup()
    warm = time.perf_counter() - t0

    t0 = time.perf_counter()
    roots = [neumann_radial_roots(l, 2, 10) for l in range(10)]
    t_roots = time.perf_counter() - t0

    t0 = time.perf_counter()
    entries = disk_spectrum(900.0)
    t_spec = time.perf_counter() - t0

    checksum = sum(r[-1] for r in roots) + entries[-1].eigenvalue
    return {
        "numba": _kernels.NUMBA_ENABLED,
        "warmup_s": warm,
        "roots_100_s": t_roots,
        "disk_spectrum_900_s": t_spec,
        "checksum": checksum,
    }


def run_mode(no_numba: bool) -> dict:
    env = dict(os.environ)
    env["SYMBIF_NO_NUMBA"] = "1" if no_numba else "0"
    out = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--json"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--both", action="store_true", help="compare numba and fallback modes")
    parser.add_argument("--json", action="store_true", help="emit raw measurements as JSON")
    args = parser.parse_args()

    if args.both:
        jit = run_mode(no_numba=False)
        py = run_mode(no_numba=True)
        if abs(jit["checksum"] - py["checksum"]) > 1e-9:
            print("WARNING: modes disagree on results", file=sys.stderr)
        print(f"{'':28}{'numba':>12}{'python':>12}{'speedup':>10}")
        for key, label in [
            ("roots_100_s", "100 radial roots"),
            ("disk_spectrum_900_s", "disk spectrum to 900"),
        ]:
            ratio = py[key] / jit[key] if jit[key] > 0 else float("inf")
            print(f"{label:<28}{jit[key]:>11.4f}s{py[key]:>11.4f}s{ratio:>9.1f}x")
        print(f"{'one-time JIT warmup':<28}{jit['warmup_s']:>11.4f}s{py['warmup_s']:>11.4f}s")
        return 0

    result = measure()
    if args.json:
        print(json.dumps(result))
    else:
        mode = "numba" if result["numba"] else "pure python"
        print(f"mode: {mode}")
        print(f"warmup:               {result['warmup_s']:.4f}s")
        print(f"100 radial roots:     {result['roots_100_s']:.4f}s")
        print(f"disk spectrum to 900: {result['disk_spectrum_900_s']:.4f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
