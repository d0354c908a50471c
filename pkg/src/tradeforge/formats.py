"""Text and JSON forms of signed collections.

Text form::

    # v=10 k=3 t=2 method=hillclimb seed=42
    # trade 1 kind=minimal
    + 0 1 2
    - 0 1 5
    ...

One ``<+|-> e1 e2 e3`` line per block (``+2``/``-3`` for larger
coefficients), sorted by lex rank with the positive leg first.  ``# trade``
comments open a constituent stanza; the collection is the sum of all lines.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .builders import TradeDecomposition
from .inclusion import SignedCollection


class FormatError(ValueError):
    pass


@dataclass
class CollectionFile:
    collection: SignedCollection
    header: dict = field(default_factory=dict)
    stanzas: list[tuple[str, SignedCollection]] = field(default_factory=list)


def _header_line(header: dict) -> str:
    return "# " + " ".join(f"{k}={v}" for k, v in header.items() if v is not None) + "\n"


def _body(f: SignedCollection, shift: int) -> list[str]:
    items = f.sorted_items()
    lines = []
    for positive in (True, False):
        for block, c in items:
            if (c > 0) != positive:
                continue
            mark = ("+" if c > 0 else "-") + (str(abs(c)) if abs(c) != 1 else "")
            lines.append(mark + " " + " ".join(str(x + shift) for x in block) + "\n")
    return lines


def format_text(f: SignedCollection, header: dict | None = None, one_based: bool = False) -> str:
    head = {"v": f.v, "k": f.k, **(header or {})}
    return _header_line(head) + "".join(_body(f, int(one_based)))


def format_decomposition_text(d: TradeDecomposition, header: dict | None = None, one_based: bool = False) -> str:
    head = {"v": d.v, "k": 3, **(header or {})}
    parts = [_header_line(head)]
    for i, c in enumerate(d.constituents, 1):
        parts.append(f"# trade {i} kind={c.kind}\n")
        parts.extend(_body(c.trade, int(one_based)))
    return "".join(parts)


def _blocks_json(f: SignedCollection, shift: int) -> list[dict]:
    return [{"block": [x + shift for x in b], "coef": c} for b, c in f.sorted_items()]


def format_json(
    f: SignedCollection,
    header: dict | None = None,
    one_based: bool = False,
    decomposition: TradeDecomposition | None = None,
) -> str:
    shift = int(one_based)
    doc = {"v": f.v, "k": f.k, **(header or {}), "blocks": _blocks_json(f, shift)}
    if decomposition is not None:
        doc["constituents"] = [
            {"kind": c.kind, "blocks": _blocks_json(c.trade, shift)} for c in decomposition.constituents
        ]
    return json.dumps(doc, indent=1) + "\n"


def _parse_header(line: str) -> dict:
    out = {}
    for word in line.lstrip("#").split():
        if "=" in word:
            k, v = word.split("=", 1)
            out[k] = int(v) if v.lstrip("-").isdigit() else v
    return out


def parse_text(text: str, one_based: bool = False, v: int | None = None) -> CollectionFile:
    shift = int(one_based)
    header: dict = {}
    rows: list[tuple[int, tuple[int, ...], int]] = []  # (coef, block, stanza index)
    kinds: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line[1:].split()[:1] == ["trade"]:
                kinds.append(_parse_header(line).get("kind", "minimal"))
            elif "=" in line:
                header.update(_parse_header(line))
            continue
        mark, *elems = line.split()
        if mark[0] not in "+-" or (len(mark) > 1 and not mark[1:].isdigit()):
            raise FormatError(f"line {lineno}: bad coefficient {mark!r}")
        try:
            block = tuple(int(e) - shift for e in elems)
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer element in {line!r}") from None
        coef = int(mark[1:] or 1) * (1 if mark[0] == "+" else -1)
        rows.append((coef, block, len(kinds) - 1))
    return _assemble(rows, kinds, header, v)


def parse_json(text: str, one_based: bool = False, v: int | None = None) -> CollectionFile:
    shift = int(one_based)
    try:
        doc = json.loads(text)
        header = {k: val for k, val in doc.items() if k not in ("blocks", "constituents")}
        rows = []
        kinds = []
        if doc.get("constituents"):
            for i, c in enumerate(doc["constituents"]):
                kinds.append(c.get("kind", "minimal"))
                rows += [(e["coef"], tuple(x - shift for x in e["block"]), i) for e in c["blocks"]]
        else:
            rows = [(e["coef"], tuple(x - shift for x in e["block"]), -1) for e in doc["blocks"]]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise FormatError(f"bad JSON collection: {exc}") from None
    return _assemble(rows, kinds, header, v)


def _assemble(rows, kinds, header, v) -> CollectionFile:
    v = v if v is not None else header.get("v")
    if v is None:
        raise FormatError("ground-set size unknown: no v= header and no explicit v")
    if not rows:
        k = header.get("k", 3)
    else:
        k = len(rows[0][1])
    if header.get("k", k) != k or any(len(b) != k for _, b, _ in rows):
        raise FormatError("block sizes disagree with each other or with the k= header")
    total = SignedCollection(v, k)
    stanzas = [(kind, SignedCollection(v, k)) for kind in kinds]
    try:
        for coef, block, idx in rows:
            total.add(block, coef)
            if idx >= 0:
                stanzas[idx][1].add(block, coef)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    header = {**header, "v": v, "k": k}
    return CollectionFile(total, header, stanzas)


def parse_collection(text: str, one_based: bool = False, v: int | None = None) -> CollectionFile:
    """Dispatch on content: JSON objects start with ``{``."""
    if text.lstrip().startswith("{"):
        return parse_json(text, one_based, v)
    return parse_text(text, one_based, v)
