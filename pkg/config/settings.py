import os
from dotenv import load_dotenv
from offload import constants

load_dotenv()

# The simulator serves no HTTP traffic; the key only satisfies Django's checks.
SECRET_KEY = os.getenv('DJANGO_SECRET_KEY', 'ntn-offload-sim-local-key')

DEBUG = os.getenv('DJANGO_DEBUG', 'False').lower() == 'true'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "rest_framework",
    "constance",

    "offload",
    "sweeps",
]

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Logging
LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO').upper()

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "%(asctime)s %(levelname)s %(name)s: %(message)s",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "plain",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": LOG_LEVEL,
    },
}


# CONSTANCE
CONSTANCE_CONFIG = {
    "SWEEP_ROW_CAP": (
        constants.SWEEP_ROW_CAP,
        "Maximum number of grid points a single sweep may expand to",
        int,
    ),
    "SWEEP_WORKERS": (
        constants.SWEEP_WORKERS,
        "Worker threads evaluating sweep points",
        int,
    ),
    "DES_ARRIVALS": (
        constants.DES_ARRIVALS,
        "Arrivals simulated per discrete-event validation run",
        int,
    ),
    "DES_WARMUP_FRACTION": (
        constants.DES_WARMUP_FRACTION,
        "Share of arrivals discarded as warmup",
        float,
    ),
    "DES_SEED": (
        constants.DES_SEED,
        "Seed of the validation random generator",
        int,
    ),
    "DES_BATCHES": (
        constants.DES_BATCHES,
        "Batches used for the batch-means confidence interval",
        int,
    ),
}

CONSTANCE_BACKEND = "constance.backends.memory.MemoryBackend"
CONSTANCE_IGNORE_ADMIN_VERSION_CHECK = True
