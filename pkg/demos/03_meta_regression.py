"""
Fitting the value meta-regression
=================================

Log value per hectare per year (2007 US$) regressed on valuation method,
log wetland size, the quality dummy, wetland type, service and log GNI
per capita.
"""

import numpy as np

from wetmeta.design import default_schema, encode, schema_to_config
from wetmeta.ols import fit_ols
from wetmeta.quality import code_records
from wetmeta.records import load_bundled
from wetmeta.report import render_overview, render_regression
from wetmeta.screening import screen

records, tables = load_bundled()
analysis = code_records(screen(records).retained)

# The schema says which levels get their own dummy and which are merged
# into the baseline. It round-trips through INI text.
schema = default_schema()
print(schema_to_config(schema))

# What goes into the model, with observation counts per level.
print(render_overview(analysis, schema))

design = encode(analysis, schema, tables)
print(f"design matrix: {design.n} rows x {design.X.shape[1]} columns\n")

fit = fit_ols(design)
print(render_regression(fit))

# Holding everything else fixed, a naturally functioning wetland is worth
# exp(b_quality) times a degraded one.
b = fit.coef("quality")
print(f"quality coefficient {b:.3f}: value ratio {np.exp(b):.1f}x")
