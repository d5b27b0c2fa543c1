"""From the Heisenberg algebra to Einstein pseudo- and para-Kähler metrics.

Run with ``python3 demos/heisenberg_pipeline.py``.  Every number printed is an
exact rational.
"""

from fractions import Fraction

from einsolv import (diagonal_soliton_solve, is_einstein,
                     parse_algebra, rank_one_extension, search_structures, soliton_decompose,
                     verify_correspondence)
from einsolv.exactla import fmt

lam = Fraction(-1, 2)
heis = parse_algebra("0,0,e^{12}", name="heisenberg")

# Step 1: all diagonal nilsoliton metrics with Ric = lam*id + D.
problem = diagonal_soliton_solve(heis, lam)
print("diagonal nilsoliton family:")
for line in problem.describe():
    print("  " + line)

# Pick the parameters (1, 2) with every sign positive, then confirm the decomposition.
base = problem.metric_algebra(params=[1, 2])
dec = soliton_decompose(base)
print("metric", [fmt(x) for x in base.metric.diagonal()], "->", dec.type.value,
      "with D =", [fmt(x) for x in dec.D.diagonal()])

# Step 2: the rank-one extension by the derivation D is Einstein with the same lam.
ext, sd = rank_one_extension(base, lam=lam)
print("extension is Einstein with lambda =", fmt(is_einstein(ext)))
corr = verify_correspondence(ext, sd, lam)
print("trace identities hold:", corr.ledger.ok, f"(branch {corr.branch})")

# Step 3: look for parallel Kähler-type structures.  Whether a rational
# structure exists depends on the parameters and on the signs of the metric,
# so scan every admissible sign pattern at two parameter choices.
for params in ([1, 1], [1, 2]):
    for signs in problem.solutions.sign_patterns:
        ext, _ = rank_one_extension(problem.metric_algebra(params, signs), lam=lam)
        found = search_structures(ext)
        labels = [c.label for c in found.certificates if c.valid]
        summary = ", ".join(labels) if labels else str(found.obstruction or "nothing found")
        print(f"params {params} signs {signs}: {summary}")
