"""Application constants."""

from pathlib import Path

# Paths
PACKAGE_DIR = Path(__file__).parent.parent
FIXTURES_DIR = PACKAGE_DIR / "fixtures"

# Report serialisation
REPORT_DIGITS = 20
COMPLEX_PLACE_NORMALIZATION = "doubled"

# Exit codes
EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_UNSUPPORTED = 3

# Checks accepted by `galrel verify`
CHECKS = ("lambda", "classgroup", "torsion", "genus", "brauer", "zeta", "eta")

# B(H) variants
VARIANT_PAPER = "paper"
VARIANT_TRACE = "trace"
# Alternative spellings accepted on input
VARIANT_ALIASES = {"pi": VARIANT_PAPER}
VARIANTS = (VARIANT_PAPER, VARIANT_TRACE, *VARIANT_ALIASES)

# Provenance tags
PROVENANCE_COMPUTED = "computed"
PROVENANCE_SUPPLIED = "supplied"
PROVENANCE_FORMULA = "formula"

# Default tolerances
DEFAULT_ETA_TOL = 1e-12
DEFAULT_RESIDUAL_TOL = 1e-15
DEFAULT_BRAUER_TOL = 1e-10
DEFAULT_ZETA_SIGMA = 2
DEFAULT_ZETA_BOUND = 1000

# Per-field memo sizes: class groups and unit data hold one entry per field,
# prime splittings one per (field, p)
FIELD_CACHE_SIZE = 32
PRIME_CACHE_SIZE = 512
