"""Time each verify suite on the default grid and check worker-count independence.

Usage: python3 scripts/timing_full_run.py [workers]
"""
import sys
import time
from dataclasses import replace

from uqgalois.suites import SUITES, VerifyOptions, run_suites


def strip(results):
    return {s: [e.to_dict(with_time=False) for e in es] for s, es in results.items()}


def main(workers: int) -> None:
    opts = VerifyOptions(seed=42)
    serial = {}
    for s in SUITES:
        t0 = time.perf_counter()
        res = run_suites([s], opts)
        dt = time.perf_counter() - t0
        n = {k: sum(e.status == k for e in res[s]) for k in ("pass", "fail", "skipped")}
        print(f"{s:<11} {dt:7.2f}s  {n}")
        serial.update(res)
    if workers > 1:
        t0 = time.perf_counter()
        par = run_suites(list(SUITES), replace(opts, workers=workers))
        print(f"all, {workers} workers: {time.perf_counter() - t0:.2f}s, "
              f"identical={strip(par) == strip(serial)}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 1)
