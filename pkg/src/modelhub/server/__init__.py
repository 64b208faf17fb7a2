"""HTTP service: auth, submissions, leaderboards, deploy/hot-swap, predict."""

from .app import ServerConfig, create_app
from .deploy import DeployedModel, DeploymentManager

__all__ = ["ServerConfig", "create_app", "DeployedModel", "DeploymentManager"]
