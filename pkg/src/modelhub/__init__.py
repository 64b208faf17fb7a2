"""modelhub: a self-hosted collaborative model hub.

Playground project spaces with experiment/competition tracks, automatic
ONNX metadata extraction, leaderboards, and a live prediction endpoint with
atomic hot-swap deployment.
"""

__version__ = "0.1.0"
