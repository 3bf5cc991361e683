"""Scenario descriptions consumed by the wall-crossing CLI commands.

A scenario is a JSON document fixing the lattice (gram matrix and positive
class), the isometry (either an explicit matrix or a pair of square -1
sphere classes whose reflections are composed), the spin-c class, an
optional rational perturbation, the starting ray, the oracle value, and
the step budget.  Rational entries are written as integers or "a/b"
strings; floats are rejected to keep the exact path exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import ParameterError
from .lattice import IntegralLattice, Isometry, reflection_sphere
from .wallcross import SpinCData, WallClass

__all__ = ["Scenario", "load_scenario", "parse_rational", "format_rational", "BUILTIN_SCENARIOS"]

_SCENARIO_KEYS = {
    "gram",
    "positive_class",
    "isometry",
    "sigma_plus",
    "sigma_minus",
    "c1",
    "perturbation",
    "omega0",
    "sw_x",
    "n_max",
}


def parse_rational(value) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ParameterError(f"rational values must be integers or 'a/b' strings, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParameterError(f"cannot parse rational {value!r}") from exc
    raise ParameterError(f"cannot parse rational {value!r}")


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Scenario:
    name: str
    gram: tuple[tuple[int, ...], ...]
    positive_class: tuple[int, ...]
    c1: tuple[int, ...]
    omega0: tuple[Fraction, ...]
    sw_x: int
    n_max: int = 1000
    isometry_matrix: tuple[tuple[int, ...], ...] | None = None
    sigma_plus: tuple[int, ...] | None = None
    sigma_minus: tuple[int, ...] | None = None
    perturbation: tuple[Fraction, ...] | None = None

    def lattice(self) -> IntegralLattice:
        return IntegralLattice(self.gram, positive_class=self.positive_class)

    def isometry(self) -> Isometry:
        lat = self.lattice()
        if self.isometry_matrix is not None:
            return Isometry(lat, self.isometry_matrix)
        return reflection_sphere(lat, self.sigma_plus) * reflection_sphere(lat, self.sigma_minus)

    def wall(self) -> WallClass:
        return WallClass(self.c1, self.perturbation)

    def spinc(self) -> SpinCData:
        return SpinCData(self.c1, self.sw_x)

    def to_dict(self) -> dict:
        doc = {
            "gram": [list(row) for row in self.gram],
            "positive_class": list(self.positive_class),
            "c1": list(self.c1),
            "omega0": [format_rational(x) for x in self.omega0],
            "sw_x": self.sw_x,
            "n_max": self.n_max,
        }
        if self.isometry_matrix is not None:
            doc["isometry"] = [list(row) for row in self.isometry_matrix]
        else:
            doc["sigma_plus"] = list(self.sigma_plus)
            doc["sigma_minus"] = list(self.sigma_minus)
        if self.perturbation is not None:
            doc["perturbation"] = [format_rational(x) for x in self.perturbation]
        return doc

    @classmethod
    def from_dict(cls, doc: dict, name: str = "custom") -> "Scenario":
        unknown = set(doc) - _SCENARIO_KEYS
        if unknown:
            raise ParameterError(f"unknown scenario keys: {sorted(unknown)}")
        missing = {"gram", "positive_class", "c1", "omega0", "sw_x"} - set(doc)
        if missing:
            raise ParameterError(f"scenario is missing keys: {sorted(missing)}")
        has_matrix = "isometry" in doc
        has_sigmas = "sigma_plus" in doc or "sigma_minus" in doc
        if has_matrix == has_sigmas:
            raise ParameterError(
                "scenario needs exactly one of 'isometry' or the pair 'sigma_plus'/'sigma_minus'"
            )
        if has_sigmas and ("sigma_plus" not in doc or "sigma_minus" not in doc):
            raise ParameterError("both sigma_plus and sigma_minus are required")
        if not isinstance(doc["sw_x"], int) or isinstance(doc["sw_x"], bool):
            raise ParameterError("sw_x must be an integer")
        n_max = doc.get("n_max", 1000)
        if not isinstance(n_max, int) or n_max < 1:
            raise ParameterError("n_max must be a positive integer")
        return cls(
            name=name,
            gram=tuple(tuple(int(x) for x in row) for row in doc["gram"]),
            positive_class=tuple(int(x) for x in doc["positive_class"]),
            c1=tuple(int(x) for x in doc["c1"]),
            omega0=tuple(parse_rational(x) for x in doc["omega0"]),
            sw_x=doc["sw_x"],
            n_max=n_max,
            isometry_matrix=(
                tuple(tuple(int(x) for x in row) for row in doc["isometry"]) if has_matrix else None
            ),
            sigma_plus=tuple(int(x) for x in doc["sigma_plus"]) if has_sigmas else None,
            sigma_minus=tuple(int(x) for x in doc["sigma_minus"]) if has_sigmas else None,
            perturbation=(
                tuple(parse_rational(x) for x in doc["perturbation"])
                if "perturbation" in doc
                else None
            ),
        )


BUILTIN_SCENARIOS = {
    # diag(1,-1,-1) with the composed sphere reflections, c1 = s+e1+e2,
    # oracle value 1: the default wall-crossing configuration
    "paper-default": {
        "gram": [[1, 0, 0], [0, -1, 0], [0, 0, -1]],
        "positive_class": [1, 0, 0],
        "sigma_plus": [1, 1, 1],
        "sigma_minus": [1, -1, 1],
        "c1": [1, 1, 1],
        "omega0": [3, 2, 2],
        "sw_x": 1,
        "n_max": 1000,
    },
}


def load_scenario(source: str) -> Scenario:
    """A built-in scenario by name, or a JSON scenario file by path."""
    if source in BUILTIN_SCENARIOS:
        return Scenario.from_dict(BUILTIN_SCENARIOS[source], name=source)
    path = Path(source)
    if not path.exists():
        raise ParameterError(
            f"unknown scenario {source!r}: not a built-in "
            f"({', '.join(sorted(BUILTIN_SCENARIOS))}) and no such file"
        )
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParameterError(f"scenario file {source} is not valid JSON: {exc}") from exc
    return Scenario.from_dict(doc, name=path.stem)
