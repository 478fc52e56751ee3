"""Text and JSON file formats for lattices, involutions and triples.

Lattice block::

    lattice <name>
    rank <N>
    gram
    <N rows of N integers>

Involution block::

    involution <name> on <lattice-name>
    matrix
    <N rows of N integers>

A triple file starts with ``triple <name>`` followed by one lattice block
and two involution blocks (named ``tau`` and ``sigma``, in that order).
Blocks are separated by blank lines; ``#`` starts a comment line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from . import exact_linalg as xl
from .errors import InputError, ParseError
from .involutions import IsometryInvolution
from .lattice import Lattice


@dataclass(frozen=True, eq=False)
class TripleFile:
    name: str
    lattice: Lattice
    tau: IsometryInvolution
    sigma: IsometryInvolution


class _Lines:
    def __init__(self, text: str):
        self.items = [
            (i + 1, line.strip())
            for i, line in enumerate(text.splitlines())
            if line.strip() and not line.strip().startswith("#")
        ]
        self.pos = 0

    def next(self, what: str):
        if self.pos >= len(self.items):
            raise ParseError(f"unexpected end of input, expected {what}")
        item = self.items[self.pos]
        self.pos += 1
        return item

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else (None, None)

    def done(self) -> bool:
        return self.pos >= len(self.items)


def _keyword(lines: _Lines, word: str, nargs: int | None = None):
    lineno, line = lines.next(f"'{word}'")
    parts = line.split()
    if parts[0] != word:
        raise ParseError(f"line {lineno}: expected '{word}', found '{parts[0]}'")
    if nargs is not None and len(parts) - 1 != nargs:
        raise ParseError(f"line {lineno}: '{word}' takes {nargs} argument(s)")
    return lineno, parts[1:]


def _int_rows(lines: _Lines, n: int, what: str):
    rows = []
    for _ in range(n):
        lineno, line = lines.next(f"a row of the {what}")
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer entry in the {what}") from None
        if len(row) != n:
            raise ParseError(f"line {lineno}: {what} row has {len(row)} entries, expected {n}")
        rows.append(row)
    return rows


def _read_lattice(lines: _Lines) -> Lattice:
    _, args = _keyword(lines, "lattice", 1)
    name = args[0]
    lineno, args = _keyword(lines, "rank", 1)
    try:
        n = int(args[0])
    except ValueError:
        raise ParseError(f"line {lineno}: rank must be an integer") from None
    if n < 0:
        raise ParseError(f"line {lineno}: rank must be nonnegative")
    _keyword(lines, "gram", 0)
    rows = _int_rows(lines, n, "Gram matrix")
    return Lattice(xl.int_matrix(rows, shape=(n, n)), name)


def _read_involution(lines: _Lines, lattices: dict) -> IsometryInvolution:
    lineno, args = _keyword(lines, "involution")
    if len(args) != 3 or args[1] != "on":
        raise ParseError(f"line {lineno}: expected 'involution <name> on <lattice>'")
    name, lat_name = args[0], args[2]
    if lat_name not in lattices:
        raise ParseError(f"line {lineno}: unknown lattice '{lat_name}'")
    lat = lattices[lat_name]
    _keyword(lines, "matrix", 0)
    rows = _int_rows(lines, lat.rank, "involution matrix")
    return IsometryInvolution(lat, xl.int_matrix(rows, shape=(lat.rank, lat.rank)), name)


def _finish(lines: _Lines):
    if not lines.done():
        lineno, line = lines.peek()
        raise ParseError(f"line {lineno}: unexpected trailing content '{line}'")


def _is_json(text: str) -> bool:
    return text.lstrip().startswith("{")


def _load_json(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ParseError("JSON document must be an object")
    return data


def _json_field(data: dict, key: str):
    if key not in data:
        raise ParseError(f"missing JSON field '{key}'")
    return data[key]


def _json_matrix(rows, n: int, what: str):
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise ParseError(f"{what} must be a {n}x{n} list of lists")
    if any(not isinstance(x, int) or isinstance(x, bool) for r in rows for x in r):
        raise ParseError(f"non-integer entry in the {what}")
    return xl.int_matrix(rows, shape=(n, n))


def _lattice_from_json(data: dict) -> Lattice:
    name = _json_field(data, "lattice")
    n = _json_field(data, "rank")
    if not isinstance(n, int) or n < 0:
        raise ParseError("rank must be a nonnegative integer")
    return Lattice(_json_matrix(_json_field(data, "gram"), n, "Gram matrix"), name)


def _involution_from_json(data: dict, lattices: dict) -> IsometryInvolution:
    name = _json_field(data, "involution")
    on = _json_field(data, "on")
    if on not in lattices:
        raise ParseError(f"unknown lattice '{on}'")
    lat = lattices[on]
    return IsometryInvolution(lat, _json_matrix(_json_field(data, "matrix"), lat.rank, "involution matrix"), name)


# -- public readers ----------------------------------------------------------


def parse_lattice(text: str) -> Lattice:
    if _is_json(text):
        return _lattice_from_json(_load_json(text))
    lines = _Lines(text)
    lat = _read_lattice(lines)
    _finish(lines)
    return lat


def parse_involution(text: str, lattices: dict | None = None) -> IsometryInvolution:
    """Involution file: optionally preceded by the lattice block it refers to."""
    lattices = dict(lattices or {})
    if _is_json(text):
        data = _load_json(text)
        if "lattice_data" in data:
            lat = _lattice_from_json(data["lattice_data"])
            lattices[lat.name] = lat
        return _involution_from_json(data, lattices)
    lines = _Lines(text)
    if lines.peek()[1] and lines.peek()[1].split()[0] == "lattice":
        lat = _read_lattice(lines)
        lattices[lat.name] = lat
    inv = _read_involution(lines, lattices)
    _finish(lines)
    return inv


def parse_triple(text: str) -> TripleFile:
    if _is_json(text):
        data = _load_json(text)
        name = _json_field(data, "triple")
        lat = _lattice_from_json(_json_field(data, "lattice"))
        lats = {lat.name: lat}
        tau = _involution_from_json(_json_field(data, "tau"), lats)
        sigma = _involution_from_json(_json_field(data, "sigma"), lats)
        return TripleFile(name, lat, tau, sigma)
    lines = _Lines(text)
    _, args = _keyword(lines, "triple", 1)
    lat = _read_lattice(lines)
    lats = {lat.name: lat}
    tau = _read_involution(lines, lats)
    sigma = _read_involution(lines, lats)
    _finish(lines)
    return TripleFile(args[0], lat, tau, sigma)


def read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


# -- writers -----------------------------------------------------------------


def _rows(m) -> list:
    return [" ".join(str(int(x)) for x in row) for row in m]


def _name(x, default):
    return x.name if x.name else default


def format_lattice(lat: Lattice, name: str | None = None) -> str:
    name = name or _name(lat, "L")
    return "\n".join([f"lattice {name}", f"rank {lat.rank}", "gram", *_rows(lat.gram)]) + "\n"


def format_involution(inv: IsometryInvolution, name: str | None = None, lattice_name: str | None = None) -> str:
    name = name or _name(inv, "phi")
    lattice_name = lattice_name or _name(inv.lattice, "L")
    return "\n".join([f"involution {name} on {lattice_name}", "matrix", *_rows(inv.matrix)]) + "\n"


def format_triple(name: str, lat: Lattice, tau: IsometryInvolution, sigma: IsometryInvolution) -> str:
    lname = _name(lat, "L")
    return "\n".join([
        f"triple {name}",
        "",
        format_lattice(lat, lname),
        format_involution(tau, "tau", lname),
        format_involution(sigma, "sigma", lname),
    ]).rstrip("\n") + "\n"


def lattice_json(lat: Lattice, name: str | None = None) -> dict:
    return {"lattice": name or _name(lat, "L"), "rank": lat.rank, "gram": [[int(x) for x in r] for r in lat.gram]}


def involution_json(inv: IsometryInvolution, name: str | None = None, lattice_name: str | None = None) -> dict:
    return {
        "involution": name or _name(inv, "phi"),
        "on": lattice_name or _name(inv.lattice, "L"),
        "matrix": [[int(x) for x in r] for r in inv.matrix],
    }


def triple_json(name: str, lat: Lattice, tau, sigma) -> dict:
    lname = _name(lat, "L")
    return {
        "triple": name,
        "lattice": lattice_json(lat, lname),
        "tau": involution_json(tau, "tau", lname),
        "sigma": involution_json(sigma, "sigma", lname),
    }


def dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=False) + "\n"
