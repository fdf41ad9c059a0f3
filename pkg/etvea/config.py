"""
etvea configuration defaults
"""

# Credit assignment
BETA = 0.5
LINEAGE_DEPTH = 6

# Adaptation cycle
ADAPTATION_INTERVAL = 20
PROBABILITY_FLOOR = 0.02
OUTLIER_Z = 3.0
MAD_SCALE = 1.4826

# Core EA
POPULATION_SIZE = 30
UNIQUENESS_RETRIES = 20

# Diversity control
DELTA = 0.001
MUTATION_P0 = 0.02

# Operator constants
WRIGHT_R = 0.5
LINE_ALPHA = 0.3
BLX_ALPHA = 0.2
DIFFERENTIAL_F = 0.5
RAISE_AMPLITUDE = 0.01
CREEP_AMPLITUDE = 0.001

# Experiment matrix
RUNS = 10
GENERATIONS = 2000
CHECKPOINT_INTERVAL = 100
BASE_SEED = 20061
THREADS = 1

# Event ids are 64-bit unsigned; 0 marks initialisation
MAX_EVENT_ID = 2**64 - 1
