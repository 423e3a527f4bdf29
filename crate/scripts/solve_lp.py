#!/usr/bin/env python3
"""Solve an exported LP file with HiGHS and print the objective value last.

    pip install highspy
    python3 scripts/solve_lp.py model.lp
"""
import sys

import highspy


def main() -> int:
    if len(sys.argv) != 2:
        print("usage: solve_lp.py FILE.lp", file=sys.stderr)
        return 2
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    if h.readModel(sys.argv[1]) != highspy.HighsStatus.kOk:
        print("could not read the model", file=sys.stderr)
        return 1
    h.run()
    status = h.getModelStatus()
    print(f"status: {h.modelStatusToString(status)}", file=sys.stderr)
    if status != highspy.HighsModelStatus.kOptimal:
        return 1
    print(h.getInfo().objective_function_value)
    return 0


if __name__ == "__main__":
    sys.exit(main())
