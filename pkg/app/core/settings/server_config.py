"""HTTP server configuration."""

from pydantic import BaseModel


class ServerConfig(BaseModel, frozen=True):
    """Bind address for the analysis API."""

    host: str
    port: int

    @property
    def base_url(self) -> str:
        """Local URL the API answers on."""
        return f"http://{self.host}:{self.port}"
