"""Attribute generalization: replace attribute groups by single attributes.

An object gets a generalized attribute when it has some (``exists``), all
(``forall``) or at least a fraction alpha (``alpha``) of the group's
members.  Ratios are compared as exact fractions.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .context import FormalContext
from .errors import ConfigurationError
from .lattice import build_lattice

MODES = ("exists", "forall", "alpha")


def as_fraction(alpha) -> Fraction:
    """Exact threshold; floats are read as the nearest simple fraction."""
    if isinstance(alpha, float):
        return Fraction(alpha).limit_denominator(1_000_000)
    return Fraction(alpha)


@dataclass(frozen=True)
class AttributeCover:
    """Named groups of source attributes; the rest pass through unchanged."""

    groups: Mapping[str, tuple[str, ...]]

    def __post_init__(self):
        object.__setattr__(self, "groups",
                           {str(k): tuple(v) for k, v in dict(self.groups).items()})

    def validate(self, ctx: FormalContext) -> None:
        known = set(ctx.attributes)
        for name, members in self.groups.items():
            if not members:
                raise ConfigurationError(f"group {name!r} is empty")
            missing = [m for m in members if m not in known]
            if missing:
                raise ConfigurationError(
                    f"group {name!r} names unknown attributes {missing}")
        clash = set(self.groups) & set(self.passthrough(ctx))
        if clash:
            raise ConfigurationError(
                f"group names collide with pass-through attributes {sorted(clash)}")

    def passthrough(self, ctx: FormalContext) -> tuple[str, ...]:
        grouped = {m for members in self.groups.values() for m in members}
        return tuple(m for m in ctx.attributes if m not in grouped)

    def columns(self, ctx: FormalContext) -> list[tuple[str, tuple[str, ...] | None]]:
        """Output columns in order of their first source attribute.

        Each entry is ``(name, members)``; ``members`` is None for a
        pass-through column.
        """
        pos = {m: j for j, m in enumerate(ctx.attributes)}
        cols = [(pos[m], 1, m, None) for m in self.passthrough(ctx)]
        for k, (name, members) in enumerate(self.groups.items()):
            cols.append((min(pos[m] for m in members), 0, name, members))
        cols.sort(key=lambda c: (c[0], c[1]))
        return [(name, members) for _, _, name, members in cols]


@dataclass(frozen=True)
class GeneralizationSemantics:
    """``mode`` plus, for ``alpha``, a threshold per group (or one for all)."""

    mode: str = "exists"
    thresholds: Mapping[str, Fraction] | Fraction | float | None = field(default=None)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigurationError(f"unknown generalization mode {self.mode!r}")
        if self.mode == "alpha":
            if self.thresholds is None:
                raise ConfigurationError("alpha mode needs thresholds")
            values = (self.thresholds.values() if isinstance(self.thresholds, Mapping)
                      else [self.thresholds])
            for a in values:
                if not 0 < as_fraction(a) <= 1:
                    raise ConfigurationError(f"alpha threshold {a} not in (0, 1]")

    def threshold(self, group: str) -> Fraction:
        if isinstance(self.thresholds, Mapping):
            if group not in self.thresholds:
                raise ConfigurationError(f"no alpha threshold for group {group!r}")
            return as_fraction(self.thresholds[group])
        return as_fraction(self.thresholds)


def generalize(ctx: FormalContext, cover: AttributeCover,
               semantics: GeneralizationSemantics | str = "exists") -> FormalContext:
    """The generalized context (G, S, J)."""
    if isinstance(semantics, str):
        semantics = GeneralizationSemantics(semantics)
    cover.validate(ctx)
    names, columns = [], []
    for name, members in cover.columns(ctx):
        names.append(name)
        if members is None:
            columns.append(ctx.incidence[:, ctx.attributes.index(name)])
            continue
        block = ctx.incidence[:, [ctx.attributes.index(m) for m in members]]
        if semantics.mode == "exists":
            columns.append(block.any(axis=1))
        elif semantics.mode == "forall":
            columns.append(block.all(axis=1))
        else:
            alpha = semantics.threshold(name)
            hits = block.sum(axis=1)
            columns.append(np.array([Fraction(int(h), len(members)) >= alpha
                                     for h in hits], dtype=bool))
    table = (np.column_stack(columns) if columns
             else np.zeros((len(ctx.objects), 0), dtype=bool))
    return FormalContext(ctx.objects, names, table, name=ctx.name)


class SizeReport(NamedTuple):
    original: int
    generalized: int
    delta: int


def compare_lattice_sizes(ctx: FormalContext, cover: AttributeCover,
                          semantics: GeneralizationSemantics | str = "exists") -> SizeReport:
    before = len(build_lattice(ctx))
    after = len(build_lattice(generalize(ctx, cover, semantics)))
    return SizeReport(before, after, after - before)
