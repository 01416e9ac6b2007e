"""Plain-text serialization of weighted automata.

The document format is line oriented and human auditable:

    # comments and blank lines are ignored
    name: example            (optional)
    comment: free text       (optional)
    alphabet: a b
    states: 2
    alpha: 1 0
    beta: 0 1
    transition a:
    0 1
    0 0
    transition b:
    0 0
    0 1

Numbers are written with 17 significant digits, so parsing a serialized
document reproduces the automaton exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .wfa import Wfa


@dataclass(frozen=True)
class WfaDocument:
    """A WFA together with its symbol labels and optional metadata."""

    labels: tuple[str, ...]
    wfa: Wfa
    name: str | None = None
    comment: str | None = None

    def __post_init__(self):
        if len(self.labels) != self.wfa.alphabet_size:
            raise ValueError(
                f"{len(self.labels)} labels for {self.wfa.alphabet_size} symbols"
            )
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("symbol labels must be unique")

    def symbol_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(
                f"unknown symbol {label!r}; alphabet is {' '.join(self.labels)}"
            ) from None


def _format_row(values) -> str:
    return " ".join(f"{float(v):.17g}" for v in values)


def serialize_document(doc: WfaDocument) -> str:
    lines = []
    if doc.name is not None:
        lines.append(f"name: {doc.name}")
    if doc.comment is not None:
        lines.append(f"comment: {doc.comment}")
    lines.append(f"alphabet: {' '.join(doc.labels)}")
    lines.append(f"states: {doc.wfa.num_states}")
    lines.append(f"alpha: {_format_row(doc.wfa.alpha)}")
    lines.append(f"beta: {_format_row(doc.wfa.beta)}")
    for label, matrix in zip(doc.labels, doc.wfa.transitions):
        lines.append(f"transition {label}:")
        for row in matrix:
            lines.append(_format_row(row))
    return "\n".join(lines) + "\n"


def _parse_floats(text: str, line_no: int):
    try:
        return [float(token) for token in text.split()]
    except ValueError:
        raise ValueError(f"line {line_no}: expected numbers, got {text!r}") from None


def parse_document(text: str) -> WfaDocument:
    """Parse the text format; raises ValueError with a line reference on failure."""
    meaningful = [
        (line_no, line.strip())
        for line_no, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    fields: dict[str, str] = {}
    transitions: dict[str, list[list[float]]] = {}
    cursor = 0
    while cursor < len(meaningful):
        line_no, line = meaningful[cursor]
        match = re.fullmatch(r"transition\s+(\S+)\s*:", line)
        if match:
            label = match.group(1)
            if label in transitions:
                raise ValueError(f"line {line_no}: duplicate transition {label!r}")
            if "states" not in fields:
                raise ValueError(f"line {line_no}: 'states' must precede transitions")
            size = int(fields["states"])
            rows = []
            for offset in range(size):
                if cursor + 1 + offset >= len(meaningful):
                    raise ValueError(f"line {line_no}: transition {label!r} is truncated")
                row_no, row_text = meaningful[cursor + 1 + offset]
                row = _parse_floats(row_text, row_no)
                if len(row) != size:
                    raise ValueError(
                        f"line {row_no}: expected {size} entries, got {len(row)}"
                    )
                rows.append(row)
            transitions[label] = rows
            cursor += 1 + size
            continue
        if ":" not in line:
            raise ValueError(f"line {line_no}: expected 'key: value', got {line!r}")
        key, _, value = line.partition(":")
        key = key.strip()
        if key in fields:
            raise ValueError(f"line {line_no}: duplicate field {key!r}")
        if key not in ("name", "comment", "alphabet", "states", "alpha", "beta"):
            raise ValueError(f"line {line_no}: unknown field {key!r}")
        fields[key] = value.strip()
        cursor += 1

    for required in ("alphabet", "states", "alpha", "beta"):
        if required not in fields:
            raise ValueError(f"missing required field {required!r}")
    labels = tuple(fields["alphabet"].split())
    if not labels:
        raise ValueError("alphabet must contain at least one label")
    try:
        size = int(fields["states"])
    except ValueError:
        raise ValueError(f"states must be an integer, got {fields['states']!r}") from None
    alpha = _parse_floats(fields["alpha"], 0)
    beta = _parse_floats(fields["beta"], 0)
    if len(alpha) != size or len(beta) != size:
        raise ValueError("alpha and beta must list one weight per state")
    missing = [label for label in labels if label not in transitions]
    if missing:
        raise ValueError(f"missing transition matrices for: {' '.join(missing)}")
    extra = [label for label in transitions if label not in labels]
    if extra:
        raise ValueError(f"transitions for labels not in the alphabet: {' '.join(extra)}")
    wfa = Wfa(alpha, [np.array(transitions[label]) for label in labels], beta)
    return WfaDocument(
        labels=labels,
        wfa=wfa,
        name=fields.get("name"),
        comment=fields.get("comment"),
    )


def load_document(path) -> WfaDocument:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_document(handle.read())


def save_document(doc: WfaDocument, path):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize_document(doc))


def parse_word(text: str, doc: WfaDocument) -> tuple[int, ...]:
    """Turn a word argument into symbol indices.

    Labels may be separated by whitespace or commas; when every label is a
    single character an unseparated string like ``abba`` works as well.  The
    empty string is the empty word.
    """
    if not text:
        return ()
    if re.search(r"[,\s]", text):
        tokens = [token for token in re.split(r"[,\s]+", text) if token]
    elif all(len(label) == 1 for label in doc.labels):
        tokens = list(text)
    else:
        tokens = [text]
    return tuple(doc.symbol_of(token) for token in tokens)
