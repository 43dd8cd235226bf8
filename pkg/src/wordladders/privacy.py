"""Structural no-PII guard, enforced at every persistence and export boundary.

The data model carries an invented nickname plus coarse sociodemographics and
is PII-free by construction; this module rejects any document that tries to
smuggle email, phone, IP, or geolocation fields in, at any nesting depth.
"""

from __future__ import annotations

import re
from typing import Any

# normalized field names, grouped by the four banned categories
PII_FIELD_NAMES = frozenset(
    {
        "email", "emailaddress", "mail",
        "phone", "phonenumber", "telephone", "mobile", "cellphone",
        "ip", "ipaddress", "ipaddr",
        "geolocation", "geo", "location", "latitude", "longitude", "gps",
        "coordinates", "address",
    }
)

_NORMALIZE = re.compile(r"[\s_\-.]+")


class PIIError(ValueError):
    """A document carries a personally identifying field."""


def normalize_field_name(name: str) -> str:
    return _NORMALIZE.sub("", name.strip().lower())


def is_pii_field(name: str) -> bool:
    return normalize_field_name(name) in PII_FIELD_NAMES


def ensure_pii_free(document: Any, path: str = "") -> None:
    """Recursively reject dict keys that name PII, however nested."""
    if isinstance(document, dict):
        for key, value in document.items():
            where = f"{path}.{key}" if path else str(key)
            if isinstance(key, str) and is_pii_field(key):
                raise PIIError(f"PII field {where!r} is not allowed in any record")
            ensure_pii_free(value, where)
    elif isinstance(document, (list, tuple, set)):
        for index, item in enumerate(document):
            ensure_pii_free(item, f"{path}[{index}]")
