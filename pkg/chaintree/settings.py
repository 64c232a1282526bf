from __future__ import annotations

import os
from typing import TYPE_CHECKING, Mapping

if TYPE_CHECKING:
    from typing import Self

#: Environment variable overriding `ChaintreeSettings.oracle_budget`.
BUDGET_ENV_VAR = "CHAINTREE_BUDGET"


class ChaintreeSettings:
    """Tunable defaults for the counting, series and enumeration engines.

    Values are plain class attributes so a settings object can be copied and
    adjusted field by field, e.g.::

        settings = ChaintreeSettings.from_environment()
        settings.series_order = 64
    """

    #: Cap on the size of the parent-function space the oracle will walk.
    oracle_budget: int = 10**7
    #: Default truncation order of formal power series.
    series_order: int = 32
    #: Largest k for which the crosscheck runs exhaustive codec round-trips.
    codec_k_max: int = 4
    #: Largest total chain length of irregular profiles in the crosscheck.
    crosscheck_sum_q_max: int = 9

    @classmethod
    def from_environment(cls, environ: Mapping[str, str] | None = None) -> Self:
        """Return settings with overrides from the environment applied.

        Only `CHAINTREE_BUDGET` is read. Raises `ValueError` if it is set to
        anything other than a positive integer.
        """
        environ = os.environ if environ is None else environ
        settings = cls()
        raw = environ.get(BUDGET_ENV_VAR)
        if raw is not None and raw.strip():
            settings.oracle_budget = parse_budget(raw)
        return settings


def parse_budget(raw: str) -> int:
    try:
        value = int(raw.strip().replace("_", ""))
    except ValueError:
        raise ValueError(f"budget must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"budget must be a positive integer, got {raw!r}")
    return value
