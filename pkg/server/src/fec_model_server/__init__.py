"""Reference HTTP server for the fec-forge model backend protocol."""

from fec_model_server.app import create_app
from fec_model_server.config import STUB, ServerConfig

__version__ = "0.1.0"
__all__ = ["create_app", "ServerConfig", "STUB", "__version__"]
