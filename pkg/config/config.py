import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Output format override (delimited | json); the only run setting read from the environment
OUTPUT_FORMAT_ENV = "PERCENTILE_OUTPUT_FORMAT"

# Logging
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_FILE = os.getenv("PERCENTILE_LOG_FILE")

# Run defaults
DEFAULT_METHOD = "c"
DEFAULT_TIE_MODE = "rank-average"
DEFAULT_SCHEME = "pr2-10"
DEFAULT_ASSIGN = "crisp-up"
DEFAULT_OUTPUT_FORMAT = "delimited"

# Application settings
MAX_WORKERS = 4
WEIGHT_TOLERANCE = 1e-9
PERCENT_SCALE = 100.0
BOX_WHISKER = 1.5

# Exit codes
EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_CONFIG_ERROR = 2
EXIT_INFEASIBLE = 3
