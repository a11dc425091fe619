"""Annotation backend: HTTP API over an embedded SQLite score store."""

from eduvsum.service.app import create_app
from eduvsum.service.store import (
    DEFAULT_ANNOTATOR,
    AnnotationStore,
    AnnotationTask,
    TaskStatus,
)

__all__ = [
    "create_app",
    "DEFAULT_ANNOTATOR",
    "AnnotationStore",
    "AnnotationTask",
    "TaskStatus",
]
