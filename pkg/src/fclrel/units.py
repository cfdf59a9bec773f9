"""Unit conversions used at the I/O boundary.

Rates are carried internally in failures per hour. FIT (failures per 1e9
hours) is accepted and emitted only by parsers, scenario files and the CLI.
"""

FIT_PER_HOUR = 1e9
HOURS_PER_DAY = 24.0
HOURS_PER_MILLION = 1e6
ZERO_CELSIUS_K = 273.0  # the failure-rate model uses 273, not 273.15


def fit_to_per_hour(fit):
    return fit / FIT_PER_HOUR


def per_hour_to_fit(rate):
    return rate * FIT_PER_HOUR
