"""Stability analysis of stationary rotations of the n-dimensional free rigid body."""
from __future__ import annotations

__version__ = "0.1.0"

from .body import BodySpec, Plane, RotationSpec, StationaryRotation, build_stationary, rotation, validate_body
from .diagram import Kind, ParabolicDiagram, Status, Verdict, build_diagram, stability_verdict

__all__ = [
    "BodySpec",
    "Plane",
    "RotationSpec",
    "StationaryRotation",
    "build_stationary",
    "rotation",
    "validate_body",
    "Kind",
    "ParabolicDiagram",
    "Status",
    "Verdict",
    "build_diagram",
    "stability_verdict",
]
