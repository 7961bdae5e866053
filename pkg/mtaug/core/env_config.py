import os
from dotenv import load_dotenv

from mtaug import __version__

load_dotenv()


class EnvConfig:
    """
    Gets optional settings from the environment / .env file.

    Nothing here is required: an empty environment gives the documented defaults.
    """

    PROJECT_VERSION = os.getenv("PROJECT_VERSION") or __version__

    # Logging
    LOG_LEVEL = os.getenv("MTAUG_LOG_LEVEL", "INFO")
    LOG_DIR = os.getenv("MTAUG_LOG_DIR")

    # Augmentation defaults
    DEFAULT_SEED = int(os.getenv("MTAUG_DEFAULT_SEED", "0"))
    UNK_TOKEN = os.getenv("MTAUG_UNK_TOKEN", "UNK")


config = EnvConfig()
