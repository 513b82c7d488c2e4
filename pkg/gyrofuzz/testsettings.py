# Sample counts and seeds for the test-suite; small enough for exact
# arithmetic on a laptop, large enough to hit the interesting cases.
from fractions import Fraction

SEED = 7
SAMPLES = 60
FLOAT_SAMPLES = 400
T_GRID = (Fraction(1, 2), Fraction(1), Fraction(2))

SETTINGS = {
    "SEED": SEED,
    "SAMPLES": SAMPLES,
    "T_GRID": T_GRID,
    "LOG_LEVEL": "WARNING",
}
