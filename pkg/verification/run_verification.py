"""
Run every verification suite with its default sample size and save the summary
"""

import logging
import os
import sys
import time
from datetime import datetime

import pandas as pd

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config import DEFAULT_SEED, LOG_DIR, LOG_FORMAT, SEED_ENV_VAR, VERIFICATION_DATA_DIR
from verification.suites import SUITES, run_suites


def print_summary(report, table: pd.DataFrame):
    print(f"\n📊 VERIFICATION SUMMARY (seed {report.seed})")
    print("=" * 60)
    for suite in report.suites:
        mark = "✅" if suite.passed else "❌"
        print(f"{mark} {suite.name:<12} samples={suite.samples:<6} "
              f"max residual={suite.max_residual:.3e}  tolerance={suite.tolerance:.1e}  failures={suite.failures}")
        for key, value in suite.details.items():
            print(f"     {key}: {value:.6g}")
    print("=" * 60)
    per_kappa = table.groupby("kappa")["residual"].max()
    for kappa, residual in per_kappa.items():
        print(f"   kappa={int(kappa):+d}: largest residual {residual:.3e}")
    print(f"\n🎯 Overall: {'PASSED' if report.passed else 'FAILED'}")


def setup_logging(timestamp: str) -> str:
    os.makedirs(LOG_DIR, exist_ok=True)
    log_file = os.path.join(LOG_DIR, f"verification_{timestamp}.log")
    handler = logging.FileHandler(log_file)
    formatter = logging.Formatter(LOG_FORMAT)
    formatter.converter = time.gmtime
    handler.setFormatter(formatter)
    logging.basicConfig(level=logging.INFO, handlers=[handler])
    return log_file


def main():
    seed = int(os.environ.get(SEED_ENV_VAR, DEFAULT_SEED))
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    log_file = setup_logging(timestamp)
    print(f"🚀 Running {len(SUITES)} verification suites...")
    report, table = run_suites(list(SUITES), seed)
    print_summary(report, table)

    os.makedirs(VERIFICATION_DATA_DIR, exist_ok=True)
    summary_file = os.path.join(VERIFICATION_DATA_DIR, f"verification_summary_{timestamp}.csv")
    pd.DataFrame([suite.to_dict() for suite in report.suites]).to_csv(summary_file, index=False)
    detail_file = os.path.join(VERIFICATION_DATA_DIR, f"verification_samples_{timestamp}.csv")
    table.to_csv(detail_file, index=False)
    print(f"\n✅ Summary saved to: {summary_file}")
    print(f"✅ Per-sample residuals saved to: {detail_file}")
    print(f"📝 Suite log: {log_file}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
