"""
Configuration for the tstd standard-basis engine.

Values come from environment variables; the active class is picked by TSTD_ENV.
"""

import os


def _env_flag(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in ('1', 'true', 'yes', 'on')


class Config:
    """Base configuration shared by all environments."""

    ENVIRONMENT = os.getenv('TSTD_ENV', 'development')
    DEBUG = False
    LOG_LEVEL = os.getenv('TSTD_LOG_LEVEL', 'WARNING')

    # Algorithm guards
    MAX_ITER = int(os.getenv('TSTD_MAX_ITER', '1000'))
    HDDWR_MAX_STEPS = int(os.getenv('TSTD_HDDWR_MAX_STEPS', '10000'))

    # Parallel pair checks (joblib workers, 1 = sequential)
    N_JOBS = int(os.getenv('TSTD_N_JOBS', '1'))

    VERIFY_DIVISIONS = _env_flag('TSTD_VERIFY_DIVISIONS', True)

    # Product criterion in std (rank 1 only)
    PAIR_CRITERIA = _env_flag('TSTD_PAIR_CRITERIA', True)

    def get_max_iter(self) -> int:
        """Saturation cap; TSTD_MAX_ITER is re-read so late overrides apply."""
        return int(os.getenv('TSTD_MAX_ITER', str(self.MAX_ITER)))

    def get_n_jobs(self) -> int:
        return int(os.getenv('TSTD_N_JOBS', str(self.N_JOBS)))


class DevelopmentConfig(Config):
    DEBUG = True


class TestingConfig(Config):
    DEBUG = True
    VERIFY_DIVISIONS = True


class ProductionConfig(Config):
    VERIFY_DIVISIONS = _env_flag('TSTD_VERIFY_DIVISIONS', False)


config_by_name = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,
}

current_config = config_by_name.get(Config.ENVIRONMENT, DevelopmentConfig)()
