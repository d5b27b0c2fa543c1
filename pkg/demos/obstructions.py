"""Einstein extensions that carry no parallel symplectic form.

For each algebra the script builds the Einstein rank-one extension of a
nilsoliton metric and reports why the structure search comes back empty.
"""

from einsolv import catalog, diagonal_soliton_solve, rank_one_extension, search_structures

for key in ("421:1", "5321:2", "521:2"):
    problem = diagonal_soliton_solve(catalog.lookup(key))
    base = problem.metric_algebra(params=[1] * problem.solutions.nfree)
    ext, _ = rank_one_extension(base)
    res = search_structures(ext)
    status = "no certificate" if not res.certificates else f"{len(res.certificates)} certificate(s)"
    print(f"{key}+N: {status}")
    if res.obstruction is not None:
        print("   ", res.obstruction)
