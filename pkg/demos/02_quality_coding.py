"""
Coding wetland quality from study evidence
==========================================

Each record carries four evidence flags read from the primary study. The
coder turns them into a two-level state (1 naturally functioning, 2
degraded) plus a confidence mark.
"""

import itertools

from wetmeta.quality import QualityEvidence, assign_quality, code_records, quality_index
from wetmeta.records import load_bundled
from wetmeta.screening import screen

# All sixteen flag combinations. An assumed ideal state always wins;
# market-price valuation only affects confidence.
print("deg act mkt ideal -> state confidence")
for flags in itertools.product([False, True], repeat=4):
    code = assign_quality(QualityEvidence(*flags))
    print(" ".join(f"{int(f):>3}" for f in flags), "  ->", int(code.state), code.confidence.value)

# Coding the screened records, one code per article.
records, _ = load_bundled()
coded = code_records(screen(records).retained, overwrite=True)
by_article = {}
for rec in coded:
    by_article.setdefault(rec.article_id, set()).add(int(rec.quality_code.state))
degraded = sorted(a for a, s in by_article.items() if s == {2})
print(f"\n{len(by_article)} articles, {len(degraded)} coded degraded:")
print(", ".join(degraded))

# The finer-grained quality index: weighted scores over the maximum.
# Two indicators scored 3 and 4 with weights 2 and 1, maximum 20.
print("\nquality index:", quality_index([(2.0, 3.0), (1.0, 4.0)], 20.0))
