"""Published reference values used by the reproduce-* commands.

All values are as printed in the source tables (2 decimals for
correlations, 4 for variance scores, 2 for coverage percentages) and are
compared against recomputed values at the documented tolerances.
"""
from __future__ import annotations

from importlib import resources

COMPONENT_LABELS = ("a", "r", "p", "w", "b")

# Pairwise component correlations per edition, upper triangle.
CORRELATIONS = {
    "science": {
        ("a", "r"): 0.02,
        ("a", "p"): 0.03,
        ("a", "w"): 0.08,
        ("a", "b"): -0.11,
        ("r", "p"): 0.40,
        ("r", "w"): -0.21,
        ("r", "b"): 0.14,
        ("p", "w"): -0.20,
        ("p", "b"): 0.55,
        ("w", "b"): -0.03,
    },
    "social": {
        ("a", "r"): 0.29,
        ("a", "p"): -0.50,
        ("a", "w"): 0.25,
        ("a", "b"): -0.56,
        ("r", "p"): -0.15,
        ("r", "w"): -0.11,
        ("r", "b"): -0.29,
        ("p", "w"): -0.71,
        ("p", "b"): 0.88,
        ("w", "b"): -0.68,
    },
}
CORRELATION_TOLERANCE = 0.06  # inputs are 2-dp rounded

# Per-variable variance scores (sum to 1 within rounding).
PCA_SCORES = {
    "science": {"a": 0.2060, "r": 0.0731, "p": 0.3655, "w": 0.2093, "b": 0.1460},
    "social": {"a": 0.1173, "r": 0.0220, "p": 0.0478, "w": 0.5779, "b": 0.2350},
}
# Jointly explained variance of the leading attributed variables.
PCA_TOP_SHARE = {"science": (3, 0.7808), "social": (2, 0.8129)}
PCA_TOP_SHARE_TOLERANCE = 0.05

# Coverage percentages of the sd bands, per edition and component:
# (inside +-1s, +-2s, +-3s).
SD_COVERAGE = {
    "science": {
        "a": (76.16, 93.60, 99.42),
        "r": (69.54, 96.55, 99.43),
        "p": (63.22, 94.25, 98.85),
        "w": (75.29, 97.13, 98.85),
        "b": (84.48, 98.28, 99.43),
    },
    "social": {
        "a": (83.64, 96.36, 98.18),
        "r": (64.29, 96.43, 100.00),
        "p": (69.64, 94.64, 100.00),
        "w": (80.36, 96.43, 98.21),
        "b": (67.86, 98.21, 98.21),
    },
}
SD_COVERAGE_TOLERANCE = 1.5  # percentage points per cell


def bundled_fixture_path() -> str:
    """Path of the category table shipped with the package."""
    return str(resources.files("cnifkit").joinpath("data/jcr2010_categories.csv"))
