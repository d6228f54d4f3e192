# File path: cctree/core/config.py
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseSettings

# Load environment variables from .env file
load_dotenv()


class Settings(BaseSettings):
    # Application Settings
    APP_NAME: str = "cctree"
    API_V1_PREFIX: str = "/api/v1"
    HOST: str = "127.0.0.1"
    PORT: int = 8000
    LOG_LEVEL: str = "INFO"

    # Code Change Trees
    RANK_MODE: str = "none"
    METHOD: Optional[str] = None
    EMIT: str = "tree"
    JSON: bool = False

    # Preprocessing
    MIN_DF: float = 0.01
    OOV_SYMBOL: str = "<OOV>"
    VOCAB_PATH: Optional[str] = None

    # Embedding (PV-DBOW)
    DIM: int = 100
    EPOCHS: int = 20
    NEGATIVE: int = 5
    LEARNING_RATE: float = 0.025
    INFER_EPOCHS: int = 50
    MODEL_PATH: Optional[str] = None

    # Features and evaluation
    MODE: str = "change_tree"
    MODES: str = "all"
    CLASSIFIERS: str = "all"
    FOLDS: int = 10
    POSITIVE_RATE: float = 0.2

    # Runs
    SEED: int = 1
    THREADS: int = 1
    OUTPUT: Optional[str] = None
    COUNT: int = 500

    class Config:
        env_prefix = "CCTREE_"
        env_file = ".env"


settings = Settings()
