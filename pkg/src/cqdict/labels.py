"""Label registries for UNL relations and attributes.

A registry file is plain text with one label per line; ``#`` starts a comment.
"""

import re
import warnings
from importlib import resources

RELATION_RE = re.compile(r"[A-Za-z0-9]+\Z")
ATTRIBUTE_RE = re.compile(r"@[A-Za-z][A-Za-z0-9_-]*\Z")


class UnknownLabelWarning(UserWarning):
    """Emitted in permissive mode when a label is not in its registry."""


class LabelRegistry:
    def __init__(self, labels=(), kind="relation"):
        self.kind = kind
        self._labels = frozenset(labels)

    def __contains__(self, label):
        return label in self._labels

    def __iter__(self):
        return iter(sorted(self._labels))

    def __len__(self):
        return len(self._labels)

    def __repr__(self):
        return f"LabelRegistry({self.kind}, {len(self._labels)} labels)"

    def with_labels(self, *labels):
        return LabelRegistry(self._labels | set(labels), self.kind)

    def check(self, label, strict, error):
        """Return True if ``label`` is registered.

        Unknown labels raise ``error(...)`` in strict mode and warn otherwise.
        """
        if label in self._labels:
            return True
        message = f"unknown {self.kind} label {label!r}"
        if strict:
            raise error(message)
        warnings.warn(message, UnknownLabelWarning, stacklevel=3)
        return False


def parse_registry(text, kind="relation"):
    labels = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            labels.append(line)
    return LabelRegistry(labels, kind)


def load_registry(path, kind="relation"):
    with open(path, encoding="utf-8") as fh:
        return parse_registry(fh.read(), kind)


def _bundled(name, kind):
    text = resources.files("cqdict.data").joinpath(name).read_text(encoding="utf-8")
    return parse_registry(text, kind)


RELATIONS = _bundled("relations.txt", "relation")
ATTRIBUTES = _bundled("attributes.txt", "attribute")
