"""
Benefit transfer and its error
==============================

Predict values at policy sites with the fitted function, compare function
transfer against the simpler unit-value transfer by leave-one-out
cross-validation.
"""

from dataclasses import replace

from wetmeta.design import default_schema, encode
from wetmeta.ols import fit_ols
from wetmeta.quality import QualityState, code_records
from wetmeta.records import Method, Service, WetlandType, load_bundled
from wetmeta.report import render_loocv
from wetmeta.screening import screen
from wetmeta.transfer import BackTransform, PolicySite, loocv, predict_value, unit_value_transfer

records, tables = load_bundled()
analysis = code_records(screen(records).retained)
schema = default_schema()
fit = fit_ols(encode(analysis, schema, tables))

# A hypothetical 2,000 ha floodplain valued for food.
site = PolicySite(
    site_id="policy-1", wetland_type=WetlandType.FLOODPLAINS, service=Service.FOOD,
    method=Method.DIRECT_MARKET_PRICING, wetland_size_ha=2000.0, gni_per_capita=3000.0,
    population_density=80.0, quality_state=QualityState.NATURALLY_FUNCTIONING,
)
for mode in BackTransform:
    pred = predict_value(fit, schema, site, mode)
    print(f"{mode.value:>22}: {pred.value_prediction:12.2f} US$/ha/yr")

# The same site if it were degraded.
worse = predict_value(fit, schema, replace(site, quality_state=QualityState.DEGRADED))
print(f"{'degraded':>22}: {worse.value_prediction:12.2f} US$/ha/yr")

# Unit-value transfer: the plain mean of the food values.
unit = unit_value_transfer(analysis, tables, lambda r: r.service is Service.FOOD)
print(f"{'unit value (food)':>22}: {unit:12.2f} US$/ha/yr\n")

# Leave-one-out: every record predicted from the other 69.
result = loocv(analysis, schema, tables, workers=4)
text = render_loocv(result)
print("\n".join(text.splitlines()[-7:]))
