"""Text documents describing CMFs: load, validate, dump, round-trip.

The on-disk format is JSON with expressions as strings and exact integers
only, so corpora of fields can be stored, diffed and golden-tested.
Shift variables are named x1..xd by convention; `n` is reserved for the
trajectory index and rejected everywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .cmf import CMF
from .matrix import RatMat
from .parser import parse_expr

FORMAT_VERSION = 1

RESERVED_NAMES = {"n"}


class DocumentError(ValueError):
    """A CMF document failed validation."""


@dataclass
class CmfDocument:
    dim: int
    rank: int
    variables: list
    parameters: list
    generators: list  # dim-long list of rank x rank expression-string matrices
    labels: dict = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    @classmethod
    def from_dict(cls, data) -> "CmfDocument":
        try:
            doc = cls(
                dim=int(data["dim"]),
                rank=int(data["rank"]),
                variables=list(data["variables"]),
                parameters=list(data.get("parameters", [])),
                generators=data["generators"],
                labels=dict(data.get("labels", {})),
                format_version=int(data.get("format_version", FORMAT_VERSION)),
            )
        except (KeyError, TypeError) as err:
            raise DocumentError("malformed document: %s" % err) from None
        doc.validate()
        return doc

    def to_dict(self) -> dict:
        return {
            "format_version": self.format_version,
            "dim": self.dim,
            "rank": self.rank,
            "variables": list(self.variables),
            "parameters": list(self.parameters),
            "labels": dict(self.labels),
            "generators": self.generators,
        }

    def validate(self):
        if self.format_version != FORMAT_VERSION:
            raise DocumentError("unsupported format_version %r" % self.format_version)
        if self.dim < 1 or self.rank < 1:
            raise DocumentError("dim and rank must be positive")
        expected = ["x%d" % (i + 1) for i in range(self.dim)]
        if list(self.variables) != expected:
            raise DocumentError("variables must be %r (got %r)" % (expected, self.variables))
        names = list(self.variables) + list(self.parameters)
        if len(set(names)) != len(names):
            raise DocumentError("duplicate variable/parameter names")
        for name in self.parameters:
            if name in RESERVED_NAMES or name in self.variables:
                raise DocumentError("parameter name %r is reserved" % name)
        if RESERVED_NAMES & set(names):
            raise DocumentError("'n' is reserved for the trajectory index")
        if len(self.generators) != self.dim:
            raise DocumentError("expected %d generator matrices" % self.dim)
        for g in self.generators:
            if len(g) != self.rank or any(len(row) != self.rank for row in g):
                raise DocumentError("each generator must be a %dx%d matrix" % (self.rank, self.rank))


def load_cmf(doc: CmfDocument) -> CMF:
    """Build the field from a document; generators are checked invertible
    but the pairwise compatibility check is left to cmf.verify()."""
    doc.validate()
    variables = tuple(doc.variables) + tuple(doc.parameters)
    gens = []
    for g in doc.generators:
        gens.append(RatMat([[parse_expr(text, variables) for text in row] for row in g]))
    return CMF(gens, params=tuple(doc.parameters), check_invertible=True)


def dump_cmf(cmf: CMF, labels=None) -> CmfDocument:
    return CmfDocument(
        dim=cmf.dim,
        rank=cmf.rank,
        variables=list(cmf.shift_vars),
        parameters=list(cmf.params),
        generators=[[[e.to_text() for e in row] for row in gen] for gen in cmf.generators],
        labels=dict(labels or {}),
    )


def read_document(path) -> CmfDocument:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as err:
            raise DocumentError("invalid JSON in %s: %s" % (path, err)) from None
    return CmfDocument.from_dict(data)


def write_document(doc: CmfDocument, path):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc.to_dict(), fh, indent=2)
        fh.write("\n")


def load_cmf_file(path) -> CMF:
    return load_cmf(read_document(path))


def corpus_names():
    """Builtin documents shipped with the package."""
    root = resources.files("cmfield").joinpath("corpus")
    return sorted(p.name[: -len(".json")] for p in root.iterdir() if p.name.endswith(".json"))


def load_corpus_document(name) -> CmfDocument:
    root = resources.files("cmfield").joinpath("corpus")
    text = root.joinpath(name + ".json").read_text(encoding="utf-8")
    return CmfDocument.from_dict(json.loads(text))
