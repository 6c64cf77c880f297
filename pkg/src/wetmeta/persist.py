"""Saved models: schema and fit in one JSON document, so prediction needs no refit."""

import json

from .design import schema_from_config, schema_to_config
from .errors import SchemaError
from .ols import RegressionFit

FORMAT = "wetmeta-model/1"


def model_document(fit: RegressionFit, schema) -> str:
    if tuple(schema.column_labels) != tuple(fit.column_labels):
        raise SchemaError("schema does not produce the fitted columns")
    doc = {"format": FORMAT, "model_id": fit.model_id,
           "schema": schema_to_config(schema), "fit": fit.to_dict()}
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=True) + "\n"


def save_model(fit: RegressionFit, schema, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(model_document(fit, schema))


def load_model(path):
    """Return ``(fit, schema)`` from a saved model document."""
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: not a model document ({exc})") from None
    if doc.get("format") != FORMAT:
        raise SchemaError(f"{path}: unsupported model format {doc.get('format')!r}")
    fit = RegressionFit.from_dict(doc["fit"])
    schema = schema_from_config(doc["schema"])
    if tuple(schema.column_labels) != fit.column_labels:
        raise SchemaError(f"{path}: schema and coefficients disagree")
    return fit, schema
