"""Flat ``key=value`` configuration grammar.

Grammar::

    config  := (line NEWLINE)*
    line    := token (WS token)* [comment] | comment | empty
    token   := key "=" value          (no whitespace inside a token)
    comment := "#" any-text

Keys are case-sensitive; ``-`` in keys is read as ``_`` so that flag names
(``--x-min``) and config keys (``x_min``) coincide.  Later tokens override
earlier ones.  Weight families use ``family=<key>`` plus their parameter
names; the input law of a ``bounded_transform`` is written with an
``inner.`` prefix (``inner.family=frechet_pareto inner.alpha=2``).
Floats are written with ``repr`` so values round-trip exactly.
"""

from __future__ import annotations

import dataclasses
import math

from .errors import ParameterError
from .weightdist import FAMILIES, BoundedTransform, WeightFamily

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def normalize_key(key: str) -> str:
    return key.strip().lstrip("-").replace("-", "_")


def parse_config_text(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        for token in line.split():
            key, sep, value = token.partition("=")
            if not sep or not key:
                raise ParameterError(f"config line {lineno}: expected key=value, got {token!r}")
            out[normalize_key(key)] = value
    return out


def read_config(path) -> dict[str, str]:
    with open(path, encoding="utf-8") as fh:
        return parse_config_text(fh.read())


def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_config(values: dict) -> str:
    return "".join(f"{k}={format_value(v)}\n" for k, v in values.items() if v is not None)


def parse_bool(value: str) -> bool:
    v = str(value).strip().lower()
    if v in _TRUE:
        return True
    if v in _FALSE:
        return False
    raise ParameterError(f"not a boolean: {value!r}")


def parse_float(key: str, value: str) -> float:
    try:
        out = float(value)
    except ValueError:
        raise ParameterError(f"{key}: not a number: {value!r}") from None
    if math.isnan(out):
        raise ParameterError(f"{key}: NaN is not allowed")
    return out


def _family_fields(cls):
    return [f for f in dataclasses.fields(cls) if f.name not in ("normalize_mean", "inner")]


def _config_name(cls, name):
    return "x0" if (cls is BoundedTransform and name == "x0_raw") else name


def family_from_config(values: dict[str, str], prefix: str = "") -> WeightFamily:
    key = values.get(prefix + "family")
    if key is None:
        raise ParameterError(f"missing {prefix}family=...")
    try:
        cls = FAMILIES[key]
    except KeyError:
        raise ParameterError(f"unknown family {key!r}; choose from {sorted(FAMILIES)}") from None
    kwargs = {}
    for f in _family_fields(cls):
        name = prefix + _config_name(cls, f.name)
        if name in values and values[name] not in ("", "None", "none"):
            kwargs[f.name] = parse_float(name, values[name])
    if cls is BoundedTransform:
        kwargs["inner"] = family_from_config(values, prefix + "inner.")
    if prefix + "normalize_mean" in values:
        kwargs["normalize_mean"] = parse_bool(values[prefix + "normalize_mean"])
    return cls(**kwargs)


def family_to_config(family: WeightFamily, prefix: str = "") -> dict[str, str]:
    cls = type(family)
    out = {prefix + "family": cls.key}
    for f in _family_fields(cls):
        value = getattr(family, f.name)
        if value is not None:
            out[prefix + _config_name(cls, f.name)] = format_value(float(value))
    out[prefix + "normalize_mean"] = format_value(bool(family.normalize_mean))
    if isinstance(family, BoundedTransform):
        out.update(family_to_config(family.inner, prefix + "inner."))
    return out
