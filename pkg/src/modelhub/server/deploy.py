"""Atomic runtime-model slots, one per playground.

The active model is an immutable RuntimeModel replaced by a single reference
assignment, so the predict path never locks: an in-flight request keeps the
slot object it read and is served entirely by that version. Deploys are
serialized per process, validate the new model fully before the swap, and
persist the deployment state before publishing it.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass

from ..errors import NotFoundError, PreprocessSpecError
from ..registry import DeploymentState, Registry
from ..runtime.graph import RuntimeModel
from ..runtime.preprocess import LabelMap, PreprocessSpec


@dataclass(frozen=True)
class DeployedModel:
    version: int
    model_id: str
    track_id: str
    runtime: RuntimeModel


class DeploymentManager:
    def __init__(self, registry: Registry):
        self._registry = registry
        self._slots: dict = {}  # playground_id -> DeployedModel
        self._deploy_lock = threading.Lock()

    def active(self, playground_id: str) -> DeployedModel | None:
        return self._slots.get(playground_id)

    def build_runtime(self, playground, model_version) -> RuntimeModel:
        """Construct and fully validate a RuntimeModel; raises before any swap."""
        artifact = self._registry.load_blob(model_version.artifact)
        preprocessor = None
        if playground.input_type == "tabular":
            if model_version.preprocessor is None:
                raise PreprocessSpecError(
                    "tabular model has no preprocessor spec; cannot deploy"
                )
            preprocessor = PreprocessSpec.from_json_dict(model_version.preprocessor)
        label_map = None
        if playground.task_type == "classification":
            if playground.y_train_labels is None:
                raise PreprocessSpecError(
                    "classification playground has no y-training labels; "
                    "submit them so predictions can be mapped to labels"
                )
            label_map = LabelMap.from_json(playground.y_train_labels)
        return RuntimeModel.load(
            artifact,
            task_type=playground.task_type,
            input_type=playground.input_type,
            preprocessor=preprocessor,
            label_map=label_map,
        )

    def deploy(self, playground_id: str, version: int) -> DeploymentState:
        with self._deploy_lock:
            playground = self._registry.get_playground(playground_id)
            model_version = None
            for track in self._registry.list_tracks(playground_id):
                try:
                    model_version = self._registry.get_version(track.id, version)
                    break
                except NotFoundError:
                    continue
            if model_version is None:
                raise NotFoundError(
                    f"playground {playground_id} has no model version {version}"
                )
            runtime = self.build_runtime(playground, model_version)
            state = self._registry.set_deployment(
                playground_id, model_version.track_id, version
            )
            # single reference assignment: requests see old or new, never a mix
            self._slots[playground_id] = DeployedModel(
                version=version,
                model_id=model_version.model_id,
                track_id=model_version.track_id,
                runtime=runtime,
            )
            return state

    def restore_all(self) -> list:
        """Rebuild slots for persisted deployments after a restart."""
        restored = []
        for playground in self._registry.list_playgrounds():
            version = playground.deployment.active_version
            if version is None:
                continue
            for track in self._registry.list_tracks(playground.id):
                try:
                    model_version = self._registry.get_version(track.id, version)
                except NotFoundError:
                    continue
                try:
                    runtime = self.build_runtime(playground, model_version)
                except Exception:
                    break  # artifact no longer loadable; leave slot empty
                self._slots[playground.id] = DeployedModel(
                    version=version,
                    model_id=model_version.model_id,
                    track_id=track.id,
                    runtime=runtime,
                )
                restored.append(playground.id)
                break
        return restored
