"""Built-in linguistic variable catalogs for the two inference systems.

These constants are the single source of truth the shipped rule-base
files are checked against at validation time.  The bar-position terms
depend on the configured bar period and are built by
:func:`build_bar_terms` / :func:`build_time_in_bar_term`.
"""

from __future__ import annotations

import math

from .fuzzy import DefinitionError, LinguisticVariable, Singleton, Trapezoid, Triangular

INF = math.inf

# the 6-term 0..127 partition shared by velocity/intensity/complexity/density
SIX_LEVELS: tuple[tuple[str, tuple[float, float, float]], ...] = (
    ("Low", (0.0, 0.0, 25.4)),
    ("Mid-Low", (0.0, 25.4, 50.8)),
    ("Middle", (25.4, 50.8, 76.2)),
    ("Mid-High", (50.8, 76.2, 101.6)),
    ("High", (76.2, 101.6, 127.0)),
    ("Max", (101.6, 127.0, 127.0)),
)

# the 9-term -127..127 partition for instantaneous-vs-average differences
NINE_DIFFERENCES: tuple[tuple[str, tuple[float, float, float]], ...] = (
    ("Neg-Max", (-127.0, -127.0, -95.25)),
    ("Neg-High", (-127.0, -95.25, -63.5)),
    ("Neg-Middle", (-95.25, -63.5, -31.75)),
    ("Neg-Low", (-63.5, -31.75, 0.0)),
    ("None", (-31.75, 0.0, 31.75)),
    ("Low", (0.0, 31.75, 63.5)),
    ("Middle", (31.75, 63.5, 95.25)),
    ("High", (63.5, 95.25, 127.0)),
    ("Max", (95.25, 127.0, 127.0)),
)

# 9-term smoothing-update partition over (-0.3, 0.3)
NINE_CHANGE_VELOCITY: tuple[tuple[str, tuple[float, float, float]], ...] = (
    ("Max-Down", (-0.3, -0.3, -0.2249)),
    ("High-Down", (-0.3, -0.2249, -0.149)),
    ("Middle-Down", (-0.2249, -0.1499, -0.0749)),
    ("Low-Down", (-0.1499, -0.0749, 0.0)),
    ("None", (-0.0749, 0.0, 0.0750)),
    ("Low-Up", (0.0, 0.0750, 0.1500)),
    ("Middle-Up", (0.0750, 0.1500, 0.2250)),
    ("High-Up", (0.1500, 0.2250, 0.3)),
    ("Max-Up", (0.2250, 0.3, 0.3)),
)

# 9-term density-update partition over (-0.5, 0.5)
NINE_CHANGE_DENSITY: tuple[tuple[str, tuple[float, float, float]], ...] = (
    ("Max-Down", (-0.5, -0.5, -0.375)),
    ("High-Down", (-0.5, -0.375, -0.25)),
    ("Middle-Down", (-0.375, -0.25, -0.125)),
    ("Low-Down", (-0.25, -0.125, 0.0)),
    ("None", (-0.125, 0.0, 0.125)),
    ("Low-Up", (0.0, 0.125, 0.25)),
    ("Middle-Up", (0.125, 0.25, 0.375)),
    ("High-Up", (0.25, 0.375, 0.5)),
    ("Max-Up", (0.375, 0.5, 0.5)),
)

# 4-term partition used by the split-register densities
FOUR_LEVELS: tuple[tuple[str, tuple[float, float, float]], ...] = (
    ("Low", (0.0, 0.0, 42.3)),
    ("Middle", (0.0, 42.3, 84.6)),
    ("High", (42.3, 84.6, 127.0)),
    ("Max", (84.6, 127.0, 127.0)),
)

PATTERN_CATEGORIES: tuple[tuple[str, int], ...] = (
    ("Intro To Chorus 1", 0),
    ("Fill To Chorus 1", 1),
    ("Fill To Chorus 2", 2),
    ("Fill To Chorus 3", 3),
    ("Fill To Chorus 4", 4),
    ("Fill To Chorus 5", 5),
    ("Fill To Chorus 6", 6),
    ("Fill To Chorus 7", 7),
    ("Chorus 1", 8),
    ("Fill 1", 9),
    ("Outro", 10),
    ("None", 11),
    ("No change", 12),
    ("Fill 4", 13),
    ("Fill 3", 14),
)

# drum-state pattern memory: the in-place fills (Fill 1/3/4 leave the
# chorus level unchanged) and 'No change' are not states of the drums
HISTORIC_PATTERN_CATEGORIES: tuple[tuple[str, int], ...] = tuple(
    (name, value) for name, value in PATTERN_CATEGORIES
    if name not in ("No change", "Fill 3", "Fill 4")
)

MUTE_CATEGORIES: tuple[tuple[str, int], ...] = (
    ("None", 0),
    ("Kick", 1),
    ("Kick and Snare", 2),
)

NO_CHANGE = "No change"


def _tri(entries):
    return {name: Triangular(*params) for name, params in entries}


def _sing(entries):
    return {name: Singleton(float(value)) for name, value in entries}


def _var(name, lo, hi, terms):
    return LinguisticVariable(name=name, lo=lo, hi=hi, terms=terms)


def _scale_tri(entries, factor):
    return tuple(
        (name, tuple(round(p * factor, 10) for p in params)) for name, params in entries
    )


SLOPE_TERMS = {
    "Increasing": Trapezoid(1.0, 10.0, INF, INF),
    "Decreasing": Trapezoid(-INF, -INF, -10.0, -1.0),
}


def temporal_catalog() -> dict[str, LinguisticVariable]:
    """Variables of the temporal (recurrent) inference system."""
    six = _tri(SIX_LEVELS)
    nine = _tri(NINE_DIFFERENCES)
    return {
        v.name: v
        for v in [
            _var("Velocity Difference", -127, 127, nine),
            _var("Density Difference Low", -127, 127, nine),
            _var("Density Difference High", -127, 127, nine),
            _var("Density Difference Full", -127, 127, nine),
            _var("Newer Velocity Average", 0, 127, six),
            _var("Older Velocity Average", 0, 127, six),
            _var("Intensity", 0, 127, six),
            _var("Complexity", 0, 127, six),
            _var("Intensity Slope", -INF, INF, SLOPE_TERMS),
            _var("Complexity Slope", -INF, INF, SLOPE_TERMS),
            _var("Change Velocity Slow", -0.3, 0.3, _tri(NINE_CHANGE_VELOCITY)),
            _var("Change Velocity Fast", -0.1, 0.1,
                 _tri(_scale_tri(NINE_CHANGE_VELOCITY, 1.0 / 3.0))),
            _var("Change Density Low", -0.5, 0.5, _tri(NINE_CHANGE_DENSITY)),
            _var("Change Density High", -0.5, 0.5, _tri(NINE_CHANGE_DENSITY)),
            _var("Change Density Full", -0.5, 0.5, _tri(NINE_CHANGE_DENSITY)),
            _var("Sudden Shift", -1, 1, _tri((
                ("Down", (-1.0, -1.0, 0.0)),
                ("None", (-1.0, 0.0, 1.0)),
                ("Up", (0.0, 1.0, 1.0)),
            ))),
            _var("Hype", 0, 1, _tri((("Coming", (0.0, 1.0, 1.0)),))),
        ]
    }


def build_bar_terms(bar_period: float, epsilon: float) -> dict[str, Trapezoid]:
    """Bar-position terms over the 32-bar cycle.

    Begin terms mark the entry into bars 8/16/24/32; end terms mark the
    closing eighth of bars 4/12/20/28 (one bar before each begin mark).
    """
    if bar_period <= 0 or epsilon <= 0:
        raise DefinitionError("bar term construction requires bar_period > 0 and epsilon > 0")
    terms: dict[str, Trapezoid] = {}
    t = bar_period
    try:
        for k in (8, 16, 24, 32):
            terms[f"{k}th"] = Trapezoid(
                (k - 1) * t - epsilon,
                (k - 1) * t,
                (k - 1) * t + 0.009,
                (k - 1) * t + 0.009 + epsilon,
            )
        for k in (4, 12, 20, 28):
            terms[f"End {k}th"] = Trapezoid(
                (k + 1) * t - t / 8 - epsilon,
                (k + 1) * t - t / 8,
                (k + 1) * t - 0.1,
                (k + 1) * t,
            )
    except DefinitionError as exc:
        raise DefinitionError(
            f"bar terms are non-monotone for bar_period={bar_period}, "
            f"epsilon={epsilon}; use a longer bar (> 0.8 s) or a smaller epsilon"
        ) from exc
    return terms


def build_time_in_bar_term(bar_period: float, epsilon: float) -> Trapezoid:
    """'Last Quarter' over a single bar; overshoots the bar end by epsilon."""
    t = bar_period
    return Trapezoid(t - t / 4 - epsilon, t - t / 4, t, t + epsilon)


def control_catalog(bar_period: float = 2.0, epsilon: float = 0.01) -> dict[str, LinguisticVariable]:
    """Variables of the control inference system for a given bar period."""
    six = _tri(SIX_LEVELS)
    four = _tri(FOUR_LEVELS)
    modes = _sing((("Stop", 0), ("Play", 1)))
    mutes = _sing(MUTE_CATEGORIES)
    return {
        v.name: v
        for v in [
            _var("Time Since Last Note", 0, INF, _tri((("Short", (0.0, 4.0, 6.0)),))),
            _var("Current Mode", 0, 1, modes),
            _var("Historic Mode", 0, 1, modes),
            _var("Historic Pattern", 0, 15, _sing(HISTORIC_PATTERN_CATEGORIES)),
            _var("Historic Mute", 0, 2, mutes),
            _var("Intensity", 0, 127, six),
            _var("Complexity", 0, 127, six),
            _var("Bar", 0, 32 * bar_period, build_bar_terms(bar_period, epsilon)),
            _var("Change Velocity", 0, 1, _sing((("Down", 0), ("Up", 1)))),
            _var("Hype", 0, 1, _tri((("Coming", (0.0, 1.0, 1.0)),))),
            # universe stretched by epsilon so the term stays inside it
            _var("Time In Bar", 0, bar_period + epsilon,
                 {"Last Quarter": build_time_in_bar_term(bar_period, epsilon)}),
            _var("Average Velocity", 0, 127, six),
            _var("Intensity Shift", -1, 1, _tri((
                ("Down", (-1.0, -1.0, 0.0)),
                ("Up", (0.0, 1.0, 1.0)),
            ))),
            _var("Time Since Shift Up", 0, INF,
                 {"Short": Trapezoid(0.0, 0.0, 0.5, 3.5)}),
            _var("Time Since Shift Down", 0, INF,
                 {"Short": Trapezoid(0.0, 0.0, 0.5, 3.5)}),
            _var("Full Range Density", 0, 127, six),
            _var("Low Range Density", 0, 127, four),
            _var("High Range Density", 0, 127, four),
            _var("Pedal Status", 0, 1, _sing((("Down", 0), ("Up", 1)))),
            _var("Time Since Pedal", 0, INF, _tri((("Very Short", (0.0, 0.0, 1.0)),))),
            _var("Pattern", 0, 14, _sing(PATTERN_CATEGORIES)),
            _var("Mute", 0, 2, mutes),
            _var("Unmute", 0, 2, mutes),
        ]
    }


CONTROL_OUTPUTS = ("Intensity", "Complexity", "Pattern", "Mute", "Unmute")
STAGE1_OUTPUTS = ("Intensity", "Complexity")
STAGE2_OUTPUTS = ("Pattern", "Mute", "Unmute")
