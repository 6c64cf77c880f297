"""Exception hierarchy.

Every error carries the name of the module that raised it so the command
line can print a module-qualified diagnostic. Input problems derive from
``InputError`` (also a ``ValueError``); numerical failures such as rank
deficiency derive from ``NumericalError`` (also an ``ArithmeticError``).
"""


class WetMetaError(Exception):
    module = "wetmeta"

    def qualified(self):
        return f"{self.module}: {type(self).__name__}: {self}"


class InputError(WetMetaError, ValueError):
    pass


class NumericalError(WetMetaError, ArithmeticError):
    pass


# records ---------------------------------------------------------------

class MalformedRow(InputError):
    module = "records"

    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class UnknownEnumLabel(InputError):
    module = "records"

    def __init__(self, column, value, line=None):
        self.column = column
        self.value = value
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}column {column!r}: unknown label {value!r}")


class NonPositiveValue(InputError):
    module = "records"

    def __init__(self, column, line=None, value=None):
        self.column = column
        self.line = line
        self.value = value
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}column {column!r} must be > 0, got {value!r}")


class MissingRate(InputError):
    module = "records"

    def __init__(self, currency, year):
        self.currency = currency
        self.year = year
        super().__init__(f"no exchange rate for {currency} in {year}")


class MissingDeflator(InputError):
    module = "records"

    def __init__(self, year):
        self.year = year
        super().__init__(f"no deflator for {year}")


# quality_coder ---------------------------------------------------------

class IndexOutOfRange(InputError):
    module = "quality"


# design_matrix ---------------------------------------------------------

class SchemaError(InputError):
    module = "design"


class UnknownLevel(InputError):
    module = "design"

    def __init__(self, group, level):
        self.group = group
        self.level = level
        super().__init__(f"group {group!r} has no level {level!r} in the schema")


class MissingQualityCode(InputError):
    module = "design"

    def __init__(self, record_id):
        self.record_id = record_id
        super().__init__(f"record {record_id!r} has no quality code")


# ols -------------------------------------------------------------------

class RankDeficient(NumericalError):
    module = "ols"

    def __init__(self, labels):
        self.labels = list(labels)
        super().__init__("linearly dependent columns: " + ", ".join(self.labels))


class InsufficientObservations(NumericalError):
    module = "ols"

    def __init__(self, n, k):
        self.n = n
        self.k = k
        super().__init__(f"need n > k + 1, got n={n}, k={k}")


class InvalidDf(NumericalError):
    module = "ols"


class ConvergenceError(NumericalError):
    module = "distributions"


# transfer --------------------------------------------------------------

class SchemaMismatch(InputError):
    module = "transfer"


class EmptySelection(InputError):
    module = "transfer"


class NonPositiveObserved(InputError):
    module = "transfer"


# reporting -------------------------------------------------------------

class NotNominalField(InputError):
    module = "report"

    def __init__(self, field):
        self.field = field
        super().__init__(f"{field!r} is not a nominal field")
