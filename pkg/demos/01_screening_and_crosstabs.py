"""
Screening the valuation records
===============================

Load the bundled inland-wetland records, run the screening pipeline and
look at what is left, broken down by service, wetland type and method.
"""

from wetmeta.records import load_bundled
from wetmeta.report import crosstab, render_crosstab, render_screening
from wetmeta.screening import screen

records, tables = load_bundled()
print(f"{len(records)} records from {len({r.article_id for r in records})} articles\n")

# Duplicates go first, then anything not expressed per year, then values
# that were themselves transferred, then aggregate (TEV / various) values.
report = screen(records)
print(render_screening(report))

# The retained records, service by wetland type and service by method.
kept = report.retained
print(render_crosstab(crosstab(kept, "service", "wetland_type"), suppress_empty=True))
print(render_crosstab(crosstab(kept, "service", "method"), suppress_empty=True))

# Levels that vanish entirely during screening still exist in the enums;
# without suppress_empty they show up as zero rows.
full = crosstab(kept, "service", "method")
print("TEV rows left:", full.row_totals[full.row_labels.index("TEV")])
