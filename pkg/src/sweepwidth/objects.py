"""Maritime search objects.

Each object carries one size in metres, used as both its height and width.
"""
from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO

CATALOG_HEADER = ("name", "size_m")


class ParseError(ValueError):
    """Malformed input file; ``line`` is 1-based and counts the header."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class SearchObject:
    name: str
    size_m: int

    def __post_init__(self):
        if not self.name or not self.name.strip():
            raise ValueError("object name must be non-empty")
        if isinstance(self.size_m, bool) or int(self.size_m) != self.size_m:
            raise ValueError(f"object size must be an integer, got {self.size_m!r}")
        if self.size_m < 1:
            raise ValueError(f"object size must be >= 1 m, got {self.size_m!r}")
        object.__setattr__(self, "size_m", int(self.size_m))


class Catalog:
    """Immutable ordered collection of search objects with unique names."""

    def __init__(self, objects: Iterable[SearchObject] = ()):
        objs = tuple(objects)
        seen = set()
        for o in objs:
            if o.name in seen:
                raise ValueError(f"duplicate object name {o.name!r}")
            seen.add(o.name)
        self._objects = objs
        self._by_name = {o.name: o for o in objs}

    def __iter__(self) -> Iterator[SearchObject]:
        return iter(self._objects)

    def __len__(self):
        return len(self._objects)

    def __getitem__(self, name: str) -> SearchObject:
        return self._by_name[name]

    def __contains__(self, name):
        return name in self._by_name

    def __eq__(self, other):
        if not isinstance(other, Catalog):
            return NotImplemented
        return self._objects == other._objects

    def __hash__(self):
        return hash(self._objects)

    def __repr__(self):
        return f"Catalog({list(self._objects)!r})"

    @property
    def names(self) -> list[str]:
        return [o.name for o in self._objects]

    def size_of(self, name: str) -> int:
        return self[name].size_m


# Objects sharing a size with an entry below are left out (e.g. "Person 1"
# would duplicate "Raft 1-person").
_DEFAULT_OBJECTS = (
    ("Raft 1-person", 1),
    ("Raft 4-person", 4),
    ("Raft 6-person", 6),
    ("Raft 8-person", 8),
    ("Raft 10-person", 10),
    ("Raft 15-person", 15),
    ("Raft 20-person", 20),
    ("Raft 25-person", 25),
    ("Power boat 2", 2),
    ("Power boat 16", 16),
    ("Power boat 24", 24),
    ("Sail boat 5", 5),
    ("Sail boat 12", 12),
    ("Sail boat 21", 21),
    ("Ship 37", 37),
    ("Ship 69", 69),
    ("Ship 92", 92),
)


def default_catalog() -> Catalog:
    return Catalog(SearchObject(name, size) for name, size in _DEFAULT_OBJECTS)


def load_catalog(source: TextIO | str) -> Catalog:
    """Parse a ``name,size_m`` CSV stream (or string) into a Catalog.

    An empty source gives an empty catalog and a warning.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    rows = [(n, r) for n, r in enumerate(csv.reader(source), start=1) if r]
    if not rows:
        warnings.warn("objects file is empty; catalog has no objects", stacklevel=2)
        return Catalog()

    if tuple(c.strip() for c in rows[0][1]) == CATALOG_HEADER:
        rows = rows[1:]

    objects = []
    names = set()
    for line, row in rows:
        if len(row) != 2:
            raise ParseError(f"expected 2 fields (name,size_m), got {len(row)}", line)
        name, size_text = row[0].strip(), row[1].strip()
        try:
            size = int(size_text)
        except ValueError:
            raise ParseError(f"size {size_text!r} is not an integer", line) from None
        if size < 1:
            raise ParseError(f"size must be positive, got {size}", line)
        if not name:
            raise ParseError("empty object name", line)
        if name in names:
            raise ParseError(f"duplicate object name {name!r}", line)
        names.add(name)
        objects.append(SearchObject(name, size))
    if not objects:
        warnings.warn("objects file has no rows; catalog has no objects", stacklevel=2)
    return Catalog(objects)


def dump_catalog(catalog: Catalog, dest: TextIO | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CATALOG_HEADER)
    for o in catalog:
        w.writerow((o.name, o.size_m))
    text = buf.getvalue()
    if dest is not None:
        dest.write(text)
    return text
