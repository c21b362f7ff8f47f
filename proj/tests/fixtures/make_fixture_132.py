#!/usr/bin/env python3
"""Builds the 132-pair concordance fixture and its expected report.

The pairs are synthetic: 59 identical pairs and a median absolute
difference of 1 are fixed by construction, everything else is drawn from a
seeded generator. Expected values come from numpy/scipy and plain
fractions, never from the C++ library.

    python3 make_fixture_132.py [outdir]
"""

import csv
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
from scipy import stats

N = 132
IDENTICAL = 59
# |bot - self| for the 73 discordant pairs.
MAGNITUDES = [1] * 40 + [2] * 18 + [3] * 10 + [4] * 3 + [5] * 2

AGE = ["18–24", "25–34", "35–44", "45–54", "55–64", "65–70"]
AGE_W = [27, 40, 32, 19, 12, 2]
ETHNICITY = ["Asian or Asian British", "White", "Black / Black British / Caribbean",
             "Mixed / Multiple groups", "Prefer not to say"]
ETHNICITY_W = [74, 51, 4, 2, 1]
EDUCATION = ["Undergraduate degree", "Post-graduate degree (Master's/PhD)",
             "Further education (e.g., A-levels/NVQ)", "No formal qualification / Prefer not to say"]
EDUCATION_W = [81, 36, 13, 2]
EMPLOYMENT = ["Full-time employment", "Full-time education/training", "Part-time employment",
              "Looking after home", "Other / Retired"]
EMPLOYMENT_W = [78, 30, 12, 5, 6]
HEADER = ["participant_id", "self_score", "bot_score", "country", "age_group", "gender",
          "ethnicity", "education", "employment", "mh_experience", "chatbot_experience",
          "q17", "q18", "q19", "q20", "trust", "prefer", "recommend"]


def band(total):
    for upper, name in ((4, 0), (9, 1), (14, 2), (19, 3)):
        if total <= upper:
            return name
    return 4


def pick(rng, values, weights):
    w = np.array(weights, dtype=float)
    return values[rng.choice(len(values), p=w / w.sum())]


def build(rng):
    assert IDENTICAL + len(MAGNITUDES) == N
    mags = [0] * IDENTICAL + MAGNITUDES
    rng.shuffle(mags)
    rows = []
    for i, mag in enumerate(mags):
        self_score = int(min(27, rng.gamma(2.0, 3.2)))
        sign = 1 if rng.random() < 0.55 else -1
        bot = self_score + sign * mag
        if not 0 <= bot <= 27:
            bot = self_score - sign * mag
        rating = lambda mean: int(np.clip(round(rng.normal(mean, 1.8)), 0, 10))
        rows.append({
            "participant_id": f"P{i + 1:03d}",
            "self_score": self_score,
            "bot_score": bot,
            "country": "UK" if i < 68 else "CN",
            "age_group": pick(rng, AGE, AGE_W),
            "gender": "Female" if rng.random() < 0.545 else "Male",
            "ethnicity": pick(rng, ETHNICITY, ETHNICITY_W),
            "education": pick(rng, EDUCATION, EDUCATION_W),
            "employment": pick(rng, EMPLOYMENT, EMPLOYMENT_W),
            "mh_experience": "yes" if rng.random() < 0.197 else "no",
            "chatbot_experience": "yes" if rng.random() < 0.424 else "no",
            "q17": rating(7.6), "q18": rating(8.4), "q19": rating(7.4), "q20": rating(7.7),
            "trust": int(rng.random() < 0.707),
            "prefer": int(rng.random() < 0.697),
            "recommend": int(rng.random() < 0.871),
        })
    return rows


def type7(sorted_vals, p):
    h = (len(sorted_vals) - 1) * Fraction(p)
    lo = math.floor(h)
    if lo + 1 >= len(sorted_vals):
        return Fraction(sorted_vals[-1])
    return sorted_vals[lo] + (h - lo) * (sorted_vals[lo + 1] - sorted_vals[lo])


def expected(rows):
    s = np.array([r["self_score"] for r in rows], dtype=float)
    b = np.array([r["bot_score"] for r in rows], dtype=float)
    d = b - s
    a = np.abs(d)
    n = len(rows)

    # Order statistics and means as exact fractions; they are rational, so
    # the report must reproduce them bit for bit.
    abs_sorted = sorted(Fraction(int(x)) for x in a)
    signed_sorted = sorted(Fraction(int(x)) for x in d)
    q1, q3 = type7(abs_sorted, Fraction(1, 4)), type7(abs_sorted, Fraction(3, 4))

    nz = d[d != 0]
    ranks = stats.rankdata(np.abs(nz))
    w_plus = float(ranks[nz > 0].sum())
    w_minus = float(ranks[nz < 0].sum())
    wil = stats.wilcoxon(d, zero_method="wilcox", correction=True, method="approx")
    # scipy reports |z|; the report's z carries the sign of W+ - E[W+].
    z = math.copysign(abs(float(wil.zstatistic)), w_plus - len(nz) * (len(nz) + 1) / 4)

    tt = stats.ttest_rel(b, s)
    sp = stats.spearmanr(s, b)

    # ICC(3,1) from the two-way ANOVA table.
    m = np.column_stack([s, b])
    k = 2
    grand = m.mean()
    ss_rows = k * ((m.mean(axis=1) - grand) ** 2).sum()
    ss_cols = n * ((m.mean(axis=0) - grand) ** 2).sum()
    ss_err = ((m - grand) ** 2).sum() - ss_rows - ss_cols
    msr = ss_rows / (n - 1)
    mse = ss_err / ((n - 1) * (k - 1))
    icc = (msr - mse) / (msr + (k - 1) * mse)
    f0 = msr / mse
    df1, df2 = n - 1, (n - 1) * (k - 1)
    fl = f0 / stats.f.ppf(0.975, df1, df2)
    fu = f0 * stats.f.ppf(0.975, df2, df1)

    shifts = sum(band(r["self_score"]) != band(r["bot_score"]) for r in rows)
    exact = {
        "n": n,
        "identical_count": int((d == 0).sum()),
        "category_shift_count": shifts,
        "abs_diff.median": float(type7(abs_sorted, Fraction(1, 2))),
        "abs_diff.q1": float(q1),
        "abs_diff.q3": float(q3),
        "abs_diff.iqr": float(q3 - q1),
        "abs_diff.mean": float(Fraction(int(a.sum()), n)),
        "signed_diff.median": float(type7(signed_sorted, Fraction(1, 2))),
        "signed_diff.mean": float(Fraction(int(d.sum()), n)),
        "wilcoxon.W": w_plus,
        "wilcoxon.W_minus": w_minus,
        "wilcoxon.n_nonzero": int(len(nz)),
        "wilcoxon.method": "exact" if len(nz) <= 25 else "normal",
        "paired_t.df": float(n - 1),
    }
    computed = {
        "abs_diff.sd": float(np.std(a, ddof=1)),
        "wilcoxon.z": z,
        "wilcoxon.p": float(wil.pvalue),
        "paired_t.t": float(tt.statistic),
        "paired_t.p": float(tt.pvalue),
        "spearman.rho": float(sp.statistic),
        "spearman.p": float(sp.pvalue),
        "icc31.value": float(icc),
        "icc31.ci95_low": float((fl - 1) / (fl + k - 1)),
        "icc31.ci95_high": float((fu - 1) / (fu + k - 1)),
    }
    return {"exact": exact, "computed": computed, "computed_rel_tol": 1e-12}


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent
    rng = np.random.default_rng(132)
    rows = build(rng)
    with open(out / "pairs_132.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.DictWriter(f, fieldnames=HEADER, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    exp = expected(rows)
    assert exp["exact"]["identical_count"] == 59
    assert exp["exact"]["abs_diff.median"] == 1.0
    with open(out / "pairs_132.expected.json", "w", encoding="utf-8") as f:
        json.dump(exp, f, indent=2, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main()
