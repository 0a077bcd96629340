import logging

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from .config import config

# Importing route modules from the library packages
from .catalog.routes import router as catalog_router
from .forms.routes import router as forms_router
from .gaps.routes import router as gaps_router

logging.basicConfig(level=config.LOG_LEVEL.upper(), format="%(levelname)s %(name)s: %(message)s")

# Create an instance of the FastAPI class
app = FastAPI(title="resgaps")

# Read-only service, so GET is the only method
app.add_middleware(
    CORSMiddleware,
    allow_origins=config.CORS_ORIGINS,     # From RESGAPS_CORS_ORIGINS
    allow_credentials=False,
    allow_methods=["GET"],
    allow_headers=["*"],
)

# Including routers with specified prefixes and tags
app.include_router(catalog_router, prefix="/api/catalog", tags=["Catalog"])
app.include_router(gaps_router, prefix="/api/gaps", tags=["Gap numbers"])
app.include_router(forms_router, prefix="/api/forms", tags=["Quadratic forms"])


@app.get("/")
def read_root():
    """
    Root endpoint that returns a status message.
    """
    return {"message": "resgaps: gap numbers of rational elliptic surfaces"}
