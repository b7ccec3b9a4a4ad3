"""Regenerate data/synthetic_survey.csv.

The rows are synthetic: integer questionnaire answers drawn per student
around a latent diligence level, with the grade taken from the builtin
variable-level linear model plus noise and snapped to grade points. No
real respondent data is included. Deterministic for a fixed seed.

Run: python3 data/make_synthetic.py
"""

import csv
import pathlib

import numpy as np

import gradecast as g

N_STUDENTS = 120
SEED = 20240814
OUT = pathlib.Path(__file__).with_name("synthetic_survey.csv")


def main():
    rng = np.random.default_rng(SEED)
    schema = g.builtin_schema()
    header = list(schema.variable_ids) + ["grade"]
    lo, hi = g.DEFAULT_GRADE_BOUNDS

    rows = []
    for _ in range(N_STUDENTS):
        diligence = rng.uniform(1.5, 4.5)
        answers = np.clip(np.rint(rng.normal(diligence, 0.9, size=len(schema.variable_ids))), 1, 5)
        responses = {vid: float(a) for vid, a in zip(schema.variable_ids, answers)}
        raw = g.predict_published("lrc_variable", responses).raw + rng.normal(0.0, 0.35)
        grade = float(np.clip(np.rint(raw * 2.0) / 2.0, lo + 2.0, hi - 1.0))
        rows.append([f"{a:.0f}" for a in answers] + [f"{grade:g}"])

    with OUT.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {OUT} ({N_STUDENTS} rows)")


if __name__ == "__main__":
    main()
