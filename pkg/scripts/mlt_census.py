"""Distribution of MLT values over all labeled graphs on p vertices.

    python scripts/mlt_census.py 5
"""
import sys
from collections import Counter

from mltlasso.graphs import all_graphs
from mltlasso.numerics import make_rng
from mltlasso.rigidity import mlt

p = int(sys.argv[1]) if len(sys.argv) > 1 else 5
rng = make_rng(0)
counts = Counter(mlt(g, rng) for g in all_graphs(p))
for value in sorted(counts):
    print(f"mlt={value}: {counts[value]}")
