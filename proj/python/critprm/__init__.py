from ._core import (
    AGGREGATES_CSV_HEADER,
    COMPONENT_TABLE_CSV_HEADER,
    RECORDS_CSV_HEADER,
    ConfigError,
    ScenarioError,
    component_sizes,
    component_table,
    critical_radius,
    gamma_star,
    p_star,
    plan,
    r_fmt_star,
    r_prm_star,
    sample_ppp,
)

RECORDS_COLUMNS = tuple(RECORDS_CSV_HEADER.split(","))
AGGREGATES_COLUMNS = tuple(AGGREGATES_CSV_HEADER.split(","))
