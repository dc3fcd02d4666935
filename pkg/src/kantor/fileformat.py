"""Line-oriented text format for matroids.

    # comment
    matroid NAME
    elements N
    labels L0 L1 ...        (optional)
    type bases|circuits|flats
    <one subset per line>

Subsets are space-separated element indices, ``-`` for the empty set. In a
flats body each line starts with its rank: ``2: 0 1``. See docs/FORMAT.md.
"""

from dataclasses import dataclass

from .errors import FormatError
from .matroid import bases_of, circuits_of, elements_of, from_bases, from_circuits, from_flats, mask_of

KINDS = ("bases", "circuits", "flats")


@dataclass(frozen=True)
class MatroidFile:
    name: str
    n: int
    kind: str
    body: tuple  # masks, or (rank, mask) pairs for flats
    labels: tuple = None

    def to_matroid(self):
        if self.kind == "bases":
            return from_bases(self.n, self.body, self.labels, self.name)
        if self.kind == "circuits":
            return from_circuits(self.n, self.body, self.labels, self.name)
        top = max(k for k, _ in self.body)
        levels = [[] for _ in range(top + 1)]
        for k, f in self.body:
            levels[k].append(f)
        return from_flats(self.n, levels, self.labels, self.name)


def _subset(tokens, n, lineno):
    if tokens == ["-"]:
        return 0
    out = []
    for t in tokens:
        try:
            i = int(t)
        except ValueError:
            raise FormatError(f"bad element index {t!r}", lineno) from None
        if not 0 <= i < n:
            raise FormatError(f"element {i} out of range 0..{n - 1}", lineno)
        if i in out:
            raise FormatError(f"element {i} repeated", lineno)
        out.append(i)
    if not out:
        raise FormatError("empty subset must be written as '-'", lineno)
    return mask_of(out)


def parse_file(text):
    """Parse text into a :class:`MatroidFile` without building the matroid."""
    header = {}
    body = []
    seen_body = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word in ("matroid", "elements", "labels", "type") and not seen_body:
            if word in header:
                raise FormatError(f"duplicate '{word}' line", lineno)
            header[word] = (rest, lineno)
            continue
        if "type" not in header:
            raise FormatError(f"expected a header line, got {line!r}", lineno)
        seen_body = True
        body.append((line, lineno))
    for key in ("matroid", "elements", "type"):
        if key not in header:
            raise FormatError(f"missing '{key}' line", len(text.splitlines()) + 1)
    name, _ = header["matroid"]
    n_text, n_line = header["elements"]
    try:
        n = int(n_text)
    except ValueError:
        raise FormatError(f"bad element count {n_text!r}", n_line) from None
    if n < 0:
        raise FormatError("negative element count", n_line)
    kind, kind_line = header["type"]
    if kind not in KINDS:
        raise FormatError(f"type must be one of {', '.join(KINDS)}, got {kind!r}", kind_line)
    labels = None
    if "labels" in header:
        text_l, l_line = header["labels"]
        labels = tuple(text_l.split())
        if len(labels) != n:
            raise FormatError(f"{len(labels)} labels for {n} elements", l_line)
        if len(set(labels)) != n:
            raise FormatError("labels must be distinct", l_line)
    items = []
    for line, lineno in body:
        if kind == "flats":
            head, colon, tail = line.partition(":")
            if not colon:
                raise FormatError("flats lines look like 'RANK: i j ...'", lineno)
            try:
                k = int(head)
            except ValueError:
                raise FormatError(f"bad rank {head.strip()!r}", lineno) from None
            if k < 0:
                raise FormatError("negative rank", lineno)
            items.append((k, _subset(tail.split(), n, lineno)))
        else:
            items.append(_subset(line.split(), n, lineno))
    return MatroidFile(name, n, kind, tuple(items), labels)


def parse(text):
    """Parse and validate; returns a Matroid."""
    return parse_file(text).to_matroid()


def _fmt(mask):
    els = elements_of(mask)
    return " ".join(map(str, els)) if els else "-"


def serialize_file(f):
    """Canonical text: header in fixed order, body sorted, single spaces."""
    lines = [f"matroid {f.name}", f"elements {f.n}"]
    if f.labels is not None:
        lines.append("labels " + " ".join(f.labels))
    lines.append(f"type {f.kind}")
    if f.kind == "flats":
        for k, m in sorted(set(f.body), key=lambda t: (t[0], bin(t[1]).count("1"), elements_of(t[1]))):
            lines.append(f"{k}: {_fmt(m)}")
    else:
        for m in sorted(set(f.body), key=lambda x: (bin(x).count("1"), elements_of(x))):
            lines.append(_fmt(m))
    return "\n".join(lines) + "\n"


def canonical(text):
    return serialize_file(parse_file(text))


def to_file(m, kind="flats"):
    labels = None if m.labels == tuple(str(i) for i in range(m.n)) else m.labels
    name = m.name or "unnamed"
    if kind == "flats":
        body = tuple((k, f) for k, level in enumerate(m.flats_by_rank) for f in level)
    elif kind == "bases":
        body = tuple(bases_of(m))
    elif kind == "circuits":
        body = tuple(circuits_of(m))
    else:
        raise ValueError(f"kind must be one of {KINDS}")
    return MatroidFile(name, m.n, kind, body, labels)


def serialize(m, kind="flats"):
    return serialize_file(to_file(m, kind))


def load(path):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(m, path, kind="flats"):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(m, kind))
