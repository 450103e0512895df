"""Deliberate off-by-one faults in the split bounds, for testing the harness.

Each mutant moves one region bound up or down by one.  :func:`inject` patches the bound
function of the owning solver module for the duration of a ``with`` block.
"""

from __future__ import annotations

import dataclasses
from contextlib import contextmanager
from typing import Iterator

from . import interval, proper

_FIELDS = {
    "eqA1": (interval, "split_bounds_interval", "x_max"),
    "eqA2": (interval, "split_bounds_interval", "y_max"),
    "eqA3": (interval, "split_bounds_interval", "z_max"),
    "eqA4": (interval, "split_bounds_interval", "w_max"),
    "eqA5": (interval, "split_bounds_interval", "u_max"),
    "eqA6": (interval, "split_bounds_interval", "v_max"),
    "eq6-x": (proper, "split_bounds_proper", "x_max"),
    "eq6-y": (proper, "split_bounds_proper", "y_max"),
    "eq6-z": (proper, "split_bounds_proper", "z_max"),
    "eq6-w": (proper, "split_bounds_proper", "w_max"),
    "eq6-u": (proper, "split_bounds_proper", "u_max"),
}

# name -> (module, bound function name, field, delta); "<name>-dec" subtracts one.
# Raising a z/u/v style bound is often harmless: the lower stage already caps
# the state it feeds, so the decrementing twin is what exposes those fields.
MUTANTS: dict[str, tuple[object, str, str, int]] = {}
for _name, (_mod, _fn, _field) in _FIELDS.items():
    MUTANTS[_name] = (_mod, _fn, _field, 1)
    MUTANTS[_name + "-dec"] = (_mod, _fn, _field, -1)


@contextmanager
def inject(name: str | None) -> Iterator[None]:
    if name is None:
        yield
        return
    if name not in MUTANTS:
        raise KeyError(f"unknown mutant {name!r}; choose from {', '.join(MUTANTS)}")
    module, func_name, field, delta = MUTANTS[name]
    original = getattr(module, func_name)

    def mutated(*args, **kwargs):
        bounds = original(*args, **kwargs)
        return dataclasses.replace(bounds, **{field: max(0, getattr(bounds, field) + delta)})

    setattr(module, func_name, mutated)
    try:
        yield
    finally:
        setattr(module, func_name, original)
