import os
from dotenv import load_dotenv

# Load environment variables from a .env file
load_dotenv()

class Config:
    # Catalog configuration
    CATALOG = os.getenv("RESGAPS_CATALOG")                                  # Path overriding the embedded catalog

    # Search configuration
    VECTOR_BUDGET = int(os.getenv("RESGAPS_VECTOR_BUDGET", "10000000"))    # Enumeration node budget

    # Logging configuration
    LOG_LEVEL = os.getenv("RESGAPS_LOG_LEVEL", "WARNING")                  # Root log level for CLI and API

    # HTTP service configuration
    CORS_ORIGINS = [
        origin.strip()
        for origin in os.getenv("RESGAPS_CORS_ORIGINS", "*").split(",")
        if origin.strip()
    ]                                                                       # Allowed CORS origins

# Create an instance of the Config class
config = Config()
