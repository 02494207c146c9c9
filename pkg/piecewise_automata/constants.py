"""
Constants and configuration for the piecewise-automata library.
"""

# Exploration budgets
DEFAULT_MAX_MACROSTATES = 2 ** 20   # subset construction / on-the-fly product cap
DEFAULT_ORACLE_MAX_LEN = 6          # brute-force enumeration bound
DEFAULT_UNARY_ITERATIONS = 2 ** 16  # cap on unary macro-state iteration

# Random generation
DEFAULT_SEED = 0
DEFAULT_RANDOM_STATES = 5
DEFAULT_RANDOM_SYMBOLS = 2
DEFAULT_DENSITY = 0.3

# Turing machine reduction guards
DEFAULT_TM_MAX_STATES = 200_000
DEFAULT_TM_MAX_SYMBOLS = 4_096

# Symbol and state naming
EMPTY_WORD_TEXT = "ε"
SEPARATOR = "#"       # configuration separator in run encodings
FILLER = "$"          # padding after the last configuration
NO_HEAD = "."         # cell marker when the head is elsewhere
PRODUCT_JOIN = "/"    # joins the two components of a product symbol
CELL_JOIN = ":"       # joins tape symbol and head marker
MAX_STATE = "max"
UNARY_SYMBOL = "0"
DAG_SYMBOL = "a"
LETTER_PREFIX = "a"   # a1, a2, ... in the W-word alphabet
BINARY_ALPHABET = ("0", "1")
MOVES = ("L", "R", "S")

# Logging Configuration
LOG_FORMAT = '%(asctime)s [%(levelname)s] %(name)s: %(message)s'
LOG_DATE_FORMAT = '%Y-%m-%d %H:%M:%S'
