"""Largest clipping-noise-free PRB count per modulation and PAPR target, with the limiting factor.

    python scripts/feasibility_map.py --out results/feasibility [--per-modulation]
"""

import argparse
import json
from pathlib import Path

from icef.experiments import ExperimentPlan, manifest, run_feasibility_map, sweep_files
from icef.io import write_outputs

HERE = Path(__file__).parent


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--plan", default=None)
    ap.add_argument("--out", default="results/feasibility")
    ap.add_argument("--symbols", type=int)
    ap.add_argument("--per-modulation", action="store_true",
                    help="simulate each modulation's own data instead of scoring one QPSK sweep")
    args = ap.parse_args()
    default = "feasibility_per_modulation.json" if args.per_modulation else "feasibility.json"
    data = json.loads(Path(args.plan or HERE / "plans" / default).read_text())
    if args.symbols:
        data["symbols"] = args.symbols
    plan = ExperimentPlan.from_dict(data)
    fmap = run_feasibility_map(plan)
    write_outputs(args.out, {"feasibility.csv": fmap.to_csv(), "feasibility.json": fmap.to_json()},
                  manifest(plan, "feasibility_map"))
    for c in fmap.cells:
        print(f"{c.modulation:>7} {c.target_db:4g} dB: |K_F| <= {c.max_clean_prbs:g} PRBs ({c.limiting})")


if __name__ == "__main__":
    main()
