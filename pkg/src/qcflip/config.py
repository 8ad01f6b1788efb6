"""Scenario configuration files: INI-style key/value sections.

A scenario file has one ``[scenario]`` section (channel error rate, trial
count, seed) followed by ordered ``[element.1]`` .. ``[element.N]`` sections,
each naming an element kind plus its parameters::

    [scenario]
    p_e = 0.1
    trials = 100000
    seed = 42

    [element.1]
    kind = custom
    p = 0.8
    q = 0.8
    p_star = 0.5

    [element.2]
    kind = ideal

Kinds and their keys: ``ideal`` and ``chailloux`` (none), ``bbbg09``
(``alpha_sq`` required, ``coefficient`` optional), ``custom`` (``p`` and
``q`` required, ``p_star`` and ``name`` optional). Unknown sections or keys
are rejected by name. ``serialize_config`` writes the canonical form, so
parse -> serialize -> parse is the identity.
"""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass

from .elements import (
    ElementProfile,
    NoiseSetting,
    bbbg09_profile,
    chailloux_profile,
    ideal_profile,
)
from .engine import FrameworkSpec

DEFAULT_TRIALS = 100_000
DEFAULT_SEED = 1

_SCENARIO_KEYS = ("p_e", "trials", "seed")
_ELEMENT_KEYS = {
    "ideal": (),
    "chailloux": (),
    "bbbg09": ("alpha_sq", "coefficient"),
    "custom": ("p", "q", "p_star", "name"),
}


class ConfigError(ValueError):
    """A scenario file failed to parse or validate."""


@dataclass(frozen=True)
class ElementConfig:
    kind: str
    params: dict[str, float | str]


@dataclass(frozen=True)
class ScenarioConfig:
    elements: tuple[ElementConfig, ...]
    p_e: float
    trials: int
    seed: int


def parse_config(text: str) -> ScenarioConfig:
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from exc

    element_sections: dict[int, str] = {}
    for section in parser.sections():
        if section == "scenario":
            continue
        if section.startswith("element."):
            suffix = section[len("element."):]
            if not suffix.isdigit() or int(suffix) < 1:
                raise ConfigError(f"bad element section name [{section}]")
            element_sections[int(suffix)] = section
        else:
            raise ConfigError(f"unknown section [{section}]")

    indices = sorted(element_sections)
    if not indices:
        raise ConfigError("config defines no [element.N] sections")
    if indices != list(range(1, len(indices) + 1)):
        raise ConfigError(
            f"element sections must be numbered 1..N without gaps, got {indices}"
        )

    scenario = dict(parser.items("scenario")) if parser.has_section("scenario") else {}
    for key in scenario:
        if key not in _SCENARIO_KEYS:
            raise ConfigError(f"unknown key {key!r} in [scenario]")
    p_e = _parse_float(scenario.get("p_e", "0"), "p_e")
    trials = _parse_int(scenario.get("trials", str(DEFAULT_TRIALS)), "trials")
    seed = _parse_int(scenario.get("seed", str(DEFAULT_SEED)), "seed")
    if trials < 1:
        raise ConfigError(f"trials must be positive, got {trials}")
    if not 0 <= seed < 2**64:
        raise ConfigError(f"seed must be in [0, 2^64), got {seed}")

    elements = []
    for index in indices:
        section = element_sections[index]
        items = dict(parser.items(section))
        kind = items.pop("kind", None)
        if kind is None:
            raise ConfigError(f"[{section}] is missing the 'kind' key")
        if kind not in _ELEMENT_KEYS:
            raise ConfigError(
                f"[{section}] has unknown kind {kind!r}; "
                f"expected one of {sorted(_ELEMENT_KEYS)}"
            )
        allowed = _ELEMENT_KEYS[kind]
        params: dict[str, float | str] = {}
        for key, raw in items.items():
            if key not in allowed:
                raise ConfigError(f"unknown key {key!r} in [{section}] (kind {kind})")
            params[key] = raw if key in ("coefficient", "name") else _parse_float(
                raw, f"{section}.{key}"
            )
        elements.append(ElementConfig(kind=kind, params=params))

    cfg = ScenarioConfig(elements=tuple(elements), p_e=p_e, trials=trials, seed=seed)
    build_framework(cfg)  # validate profiles and noise eagerly
    return cfg


def load_config(path) -> ScenarioConfig:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_config(handle.read())


def serialize_config(cfg: ScenarioConfig) -> str:
    out = io.StringIO()
    out.write("[scenario]\n")
    out.write(f"p_e = {cfg.p_e!r}\n")
    out.write(f"trials = {cfg.trials}\n")
    out.write(f"seed = {cfg.seed}\n")
    for position, element in enumerate(cfg.elements, start=1):
        out.write(f"\n[element.{position}]\n")
        out.write(f"kind = {element.kind}\n")
        for key in _ELEMENT_KEYS[element.kind]:
            if key in element.params:
                value = element.params[key]
                rendered = value if isinstance(value, str) else repr(value)
                out.write(f"{key} = {rendered}\n")
    return out.getvalue()


def build_profile(element: ElementConfig) -> ElementProfile:
    """Instantiate the security profile an element config describes."""
    kind, params = element.kind, element.params
    try:
        if kind == "ideal":
            return ideal_profile()
        if kind == "chailloux":
            return chailloux_profile()
        if kind == "bbbg09":
            if "alpha_sq" not in params:
                raise ConfigError("bbbg09 element needs alpha_sq")
            return bbbg09_profile(
                alpha_sq=float(params["alpha_sq"]),
                coefficient=str(params.get("coefficient", "half")),
            )
        # custom
        missing = [key for key in ("p", "q") if key not in params]
        if missing:
            raise ConfigError(f"custom element is missing {missing}")
        return ElementProfile(
            name=str(params.get("name", "custom")),
            p=float(params["p"]),
            q=float(params["q"]),
            p_star=float(params.get("p_star", 0.0)),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"invalid {kind} element: {exc}") from exc


def build_framework(cfg: ScenarioConfig) -> FrameworkSpec:
    profiles = tuple(build_profile(e) for e in cfg.elements)
    try:
        noise = NoiseSetting(p_e=cfg.p_e)
        return FrameworkSpec(elements=profiles, noise=noise)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _parse_float(raw: str, what: str) -> float:
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"{what} must be a number, got {raw!r}") from exc


def _parse_int(raw: str, what: str) -> int:
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"{what} must be an integer, got {raw!r}") from exc
