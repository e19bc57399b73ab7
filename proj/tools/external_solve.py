#!/usr/bin/env python3
"""Solve an exported LP-format model with HiGHS and write a flexsched solution file.

usage: external_solve.py MODEL.lp SOLUTION.sol [--time-limit S] [--gap G] [--threads N]
"""
import argparse
import sys

import highspy


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("model")
    ap.add_argument("solution")
    ap.add_argument("--time-limit", type=float, default=None)
    ap.add_argument("--gap", type=float, default=None)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args()

    h = highspy.Highs()
    h.setOptionValue("output_flag", args.verbose)
    h.setOptionValue("threads", args.threads)
    # tighter than the defaults so the recomputed report checks hold
    h.setOptionValue("primal_feasibility_tolerance", 1e-9)
    h.setOptionValue("dual_feasibility_tolerance", 1e-9)
    h.setOptionValue("mip_feasibility_tolerance", 1e-9)
    if args.time_limit is not None:
        h.setOptionValue("time_limit", args.time_limit)
    if args.gap is not None:
        h.setOptionValue("mip_rel_gap", args.gap)
    if h.readModel(args.model) == highspy.HighsStatus.kError:
        print(f"cannot read {args.model}", file=sys.stderr)
        return 1
    h.run()
    status = h.getModelStatus()
    info = h.getInfo()
    if info.primal_solution_status == 0:
        print(f"no feasible solution: {h.modelStatusToString(status)}", file=sys.stderr)
        return 2

    lp = h.getLp()
    values = h.getSolution().col_value
    names = [lp.col_names_[j] for j in range(lp.num_col_)]
    with open(args.solution, "w") as f:
        f.write(f"# highs {h.modelStatusToString(status)}\n")
        f.write(f"# objective {info.objective_function_value!r} mip_gap {info.mip_gap!r}\n")
        ints = set()
        for j, kind in enumerate(lp.integrality_):
            if kind != highspy.HighsVarType.kContinuous:
                ints.add(j)
        for j, (name, v) in enumerate(zip(names, values)):
            if j in ints:
                v = float(round(v))
            f.write(f"{name} {v!r}\n")
    print(f"{h.modelStatusToString(status)} objective {info.objective_function_value!r}")
    return 0 if status == highspy.HighsModelStatus.kOptimal else 2


if __name__ == "__main__":
    sys.exit(main())
