"""Run every distributional identity check and summarise.

Each identity becomes a KS test (two-sample, or one-sample against an
analytic CDF).  A failure is retried once on a fresh stream; the suite
passes only if no check fails twice.  Set LINNIKMIX_WORKERS to spread
the work over processes.
"""

import os
import time

from linnikmix import stattest

t0 = time.perf_counter()
reports = stattest.run_identity_suite("all", seed=1, n=100_000,
                                      workers=int(os.environ.get("LINNIKMIX_WORKERS", "1")))
for r in reports:
    print(f"{'ok ' if r.passed else 'BAD'} {r.test_name:55s} D={r.statistic:.4f} p={r.p_value:.3f}")
print(f"\nsuite {'passed' if stattest.suite_passed(reports) else 'failed'} "
      f"in {time.perf_counter() - t0:.1f}s")
