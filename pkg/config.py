"""
Configuration file for the star point toolkit
Loads the optional seed override and holds the fixed numeric constants
"""

import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

U64_MAX = 2 ** 64 - 1


class Config:
    """Application configuration"""

    APP_NAME = 'starpoints'
    VERSION = '1.0.0'

    # The only environment-driven setting
    DEFAULT_SEED = int(os.getenv('STARPOINT_SEED', '42'))

    # Good-cone decision
    PROBE_COUNT = 50
    MACAULAY_MAX_COLUMNS = 400

    # Suitedness witness search
    WITNESS_COEFF_RANGE = 3

    # Restriction-dimension checks sample this many hyperplanes
    GENERIC_PLANE_TRIALS = 5

    # Reports
    REPORT_SCHEMA = 1

    # Logging
    LOG_FILE = 'starpoint.log'
    LOG_LEVEL = 'INFO'

    @staticmethod
    def validate():
        """Validate that the configuration is usable

        Raises:
            ValueError: listing every problem found
        """
        problems = []
        if not 0 <= Config.DEFAULT_SEED <= U64_MAX:
            problems.append(f"STARPOINT_SEED must be an unsigned 64-bit integer, got {Config.DEFAULT_SEED}")
        for key in ('PROBE_COUNT', 'MACAULAY_MAX_COLUMNS', 'WITNESS_COEFF_RANGE', 'GENERIC_PLANE_TRIALS'):
            if getattr(Config, key) <= 0:
                problems.append(f"{key} must be positive")

        if problems:
            error_msg = "Invalid configuration:\n"
            for item in problems:
                error_msg += f"  - {item}\n"
            raise ValueError(error_msg)

    @staticmethod
    def validate_seed(seed):
        """Check a seed given on the command line

        Returns:
            The seed as int
        """
        seed = int(seed)
        if not 0 <= seed <= U64_MAX:
            raise ValueError(f"Seed must be an unsigned 64-bit integer, got {seed}")
        return seed

    @staticmethod
    def validate_session(ambient_dim, degree, conductor):
        """Validate a session header

        Args:
            ambient_dim: N, the dimension of the projective space
            degree: d
            conductor: n, so coordinates live in Q(zeta_n)

        Raises:
            ValueError: If the header is out of range
        """
        if ambient_dim < 2:
            raise ValueError(f"Session needs N >= 2, got {ambient_dim}")
        if degree < 3:
            raise ValueError(f"Session needs d >= 3, got {degree}")
        if conductor < 1:
            raise ValueError(f"Session needs conductor n >= 1, got {conductor}")
        return True
