#!/usr/bin/env python3
"""Helper script to create .env.example file."""

env_content = """# Worker threads for shell evaluation (results do not depend on this)
ESSNORM_THREADS=1

# Seed for random submodules and sweeps
ESSNORM_SEED=20240601

# Numerics
# Relative singular-value cutoff when ranking fiber spans
ESSNORM_RANK_CUTOFF=1e-10
# Half-width of the inconclusive band around slope -1
ESSNORM_MARGIN=0.1
# Default last shell for verdicts
ESSNORM_MAX_DEGREE=600

# Logging (console always; rotating file only when a directory is given)
# ESSNORM_LOG_DIR=./logs
ESSNORM_LOG_LEVEL=WARNING
"""

if __name__ == "__main__":
    with open(".env.example", "w") as f:
        f.write(env_content)
    print("Created .env.example file")
