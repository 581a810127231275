"""Piecewise-linear paths in the upper half-plane."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, EndpointMismatch
from .group_algebra import GroupElement

__all__ = [
    "Frame",
    "Path",
    "join",
    "line",
    "concat",
    "reverse",
    "through_basepoint",
    "mobius_image",
    "parse_path",
    "DEFAULT_BASEPOINT",
]

DEFAULT_BASEPOINT = 2j


@dataclass(frozen=True)
class Frame:
    """Marks a segment as the chord from g(start) to g(end).

    Keeping the preimage endpoints lets integrands on the chord be evaluated
    relative to the cusp g(infinity) without cancellation, which matters for
    chords lying very close to the real axis.
    """

    element: GroupElement
    start: complex
    end: complex

    def reversed(self) -> Frame:
        return Frame(self.element, self.end, self.start)


@dataclass(frozen=True)
class Path:
    """Polyline through ``vertices``; each segment gets an equal share of [0, 1].

    ``frames`` has one entry per segment, None for a plain segment.
    """

    vertices: tuple[complex, ...]
    frames: tuple[Frame | None, ...] | None = None

    def __post_init__(self):
        verts = tuple(complex(v) for v in self.vertices)
        if len(verts) < 2:
            raise DomainError("a path needs at least two vertices")
        for v in verts:
            if not v.imag > 0:
                raise DomainError(f"vertex {v!r} is not in the upper half-plane")
        object.__setattr__(self, "vertices", verts)
        frames = self.frames if self.frames is not None else (None,) * (len(verts) - 1)
        if len(frames) != len(verts) - 1:
            raise ValueError("need one frame entry per segment")
        object.__setattr__(self, "frames", tuple(frames))

    @property
    def start(self) -> complex:
        return self.vertices[0]

    @property
    def end(self) -> complex:
        return self.vertices[-1]

    def segments(self) -> list[tuple[complex, complex]]:
        return list(zip(self.vertices[:-1], self.vertices[1:]))

    def framed_segments(self) -> list[tuple[complex, complex, Frame | None]]:
        return list(zip(self.vertices[:-1], self.vertices[1:], self.frames))

    def __call__(self, t: float) -> complex:
        n = len(self.vertices) - 1
        t = min(max(float(t), 0.0), 1.0)
        k = min(int(t * n), n - 1)
        local = t * n - k
        z0, z1 = self.vertices[k], self.vertices[k + 1]
        return z0 + local * (z1 - z0)

    def __add__(self, other: Path) -> Path:
        return concat(self, other)

    def to_text(self) -> str:
        return ";".join(f"{v.real!r},{v.imag!r}" for v in self.vertices)


def line(z0: complex, z1: complex) -> Path:
    return Path((z0, z1))


def concat(p: Path, q: Path) -> Path:
    if p.end != q.start:
        raise EndpointMismatch(f"path ends at {p.end!r} but next starts at {q.start!r}")
    return Path(p.vertices + q.vertices[1:], p.frames + q.frames)


def join(p: Path, q: Path) -> Path:
    """Concatenate, keeping p's last vertex where q's first should be.

    For pieces whose shared vertex was computed along two routes and agrees
    only to rounding.
    """
    return Path(p.vertices + q.vertices[1:], p.frames + q.frames)


def reverse(p: Path) -> Path:
    frames = tuple(f.reversed() if f is not None else None for f in p.frames[::-1])
    return Path(p.vertices[::-1], frames)


def through_basepoint(a: complex, b: complex, x0: complex = DEFAULT_BASEPOINT) -> Path:
    return concat(line(a, x0), line(x0, b))


def mobius_image(g: GroupElement, p: Path, refinement: int = 1) -> Path:
    """Polyline through g applied to ``refinement`` equal sub-steps of each segment.

    Translations map segments to segments, so for them this is exact.
    """
    if refinement < 1:
        raise ValueError("refinement must be >= 1")
    steps = np.linspace(0.0, 1.0, refinement + 1)[:-1]
    pts = []
    for z0, z1 in p.segments():
        pts.extend(complex(z) for z in z0 + steps * (z1 - z0))
    pts.append(p.end)
    verts = tuple(g.act(z) for z in pts)
    if g.c == 0:
        return Path(verts)
    frames = tuple(Frame(g, u0, u1) for u0, u1 in zip(pts[:-1], pts[1:]))
    return Path(verts, frames)


def parse_points(text: str) -> list[complex]:
    """Parse "re,im;re,im;..." into a list of points."""
    pts = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk:
            re_, im_ = chunk.split(",")
            pts.append(complex(float(re_), float(im_)))
    return pts


def parse_path(text: str) -> Path:
    return Path(tuple(parse_points(text)))
