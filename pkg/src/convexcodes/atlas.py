"""Population-scale enumeration: small facet configurations and their verdicts.

The atlas enumerates facet antichains up to neuron relabeling, builds each
minimal code, classifies its nerve, runs the decider, and emits one CSV row
per code.  It exists to check the classification theorems against every
small instance rather than a handful of samples.
"""

from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass
from typing import Iterator, List, Optional, TextIO, Tuple

from .codes import NeuralCode, canonicalize, format_code, sort_words
from .decider import decide
from .topology import classify_small_complex, minimal_code, nerve
from .wheels import DEFAULT_BUDGET

DEFAULT_NEURON_CAP = 6
DEFAULT_FACET_CAP = 4


def enumerate_facet_antichains(max_neurons: int, num_facets: int) -> Iterator[list]:
    """Canonical antichains of exactly num_facets nonempty neuron sets.

    One representative per neuron-relabeling class, with support packed
    into 1..t, t <= max_neurons.  Two facet families are neuron-relabeling
    equivalent iff some facet ordering gives them equal per-cell neuron
    counts, where a cell is a nonempty set of facet indices (the facets
    containing a given neuron).  Families are therefore enumerated as
    count vectors over cells and kept exactly when the vector is minimal
    over facet permutations, which also makes the stream deterministic.
    """
    k = num_facets
    cells = sorted(
        (
            frozenset(s)
            for r in range(1, k + 1)
            for s in itertools.combinations(range(k), r)
        ),
        key=lambda s: (len(s), sorted(s)),
    )
    index = {cell: i for i, cell in enumerate(cells)}
    orbit = [
        tuple(index[frozenset(p[i] for i in cell)] for cell in cells)
        for p in itertools.permutations(range(k))
    ][1:]
    # cells witnessing that facet i is not contained in facet j
    private = [
        [c for c, cell in enumerate(cells) if i in cell and j not in cell]
        for i in range(k)
        for j in range(k)
        if i != j
    ]
    ncells = len(cells)
    for total in range(1, max_neurons + 1):
        for combo in itertools.combinations_with_replacement(range(ncells), total):
            v = [0] * ncells
            for c in combo:
                v[c] += 1
            if not all(any(v[c] for c in cs) for cs in private):
                continue
            vt = tuple(v)
            if any(tuple(vt[p[i]] for i in range(ncells)) < vt for p in orbit):
                continue
            facets = [set() for _ in range(k)]
            neuron = 0
            for c, cell in enumerate(cells):
                for _ in range(v[c]):
                    neuron += 1
                    for i in cell:
                        facets[i].add(neuron)
            yield sort_words(frozenset(f) for f in facets)


@dataclass(frozen=True)
class AtlasRow:
    code: str
    neurons: int
    facet_count: int
    nerve_class: str
    minimal: bool
    verdict: str
    certificate: str
    sprocket: str


CSV_COLUMNS = (
    "code",
    "neurons",
    "facet_count",
    "nerve_class",
    "minimal",
    "verdict",
    "certificate",
    "sprocket",
)


def atlas_rows(
    max_neurons: int,
    num_facets: int,
    budget: int = DEFAULT_BUDGET,
    minimal_only: bool = False,
) -> Tuple[List[AtlasRow], int]:
    """All atlas rows plus the count of skipped configurations.

    Each row's code is the canonically relabeled minimal code of one facet
    configuration, so the text, verdict, and sprocket columns all use the
    same labels.  A configuration is skipped only when its minimal code is
    undecidable (a link too large to classify), which cannot happen within
    the default caps.  Rows are unique by code text and deterministically
    ordered.  minimal_only filters to rows whose code equals its minimal
    code; the atlas builds minimal codes, so today the filter keeps every
    row.
    """
    rows: List[AtlasRow] = []
    seen = set()
    skipped = 0
    for raw_facets in enumerate_facet_antichains(max_neurons, num_facets):
        try:
            code = canonicalize(minimal_code(raw_facets)).code
        except ValueError:
            skipped += 1
            continue
        facets = code.facets()
        if len(facets) <= 4:
            nerve_class = classify_small_complex(nerve(facets)).class_id
        else:
            nerve_class = ""
        verdict, certificates = decide(code, budget)
        certificate = certificates[0].kind if certificates else ""
        sprocket = ""
        for cert in certificates:
            if cert.candidate is not None:
                sprocket = cert.candidate.text()
                break
        text = format_code(code, verbose=True, braced=True)
        if text in seen:
            raise AssertionError(f"duplicate atlas row: {text}")
        seen.add(text)
        row = AtlasRow(
            code=text,
            neurons=code.n,
            facet_count=num_facets,
            nerve_class=nerve_class,
            minimal=True,
            verdict=verdict.value,
            certificate=certificate,
            sprocket=sprocket,
        )
        if minimal_only and not row.minimal:
            continue
        rows.append(row)
    return rows, skipped


def _class_sort_key(nerve_class: str) -> tuple:
    if nerve_class.startswith("L") and nerve_class[1:].isdigit():
        return (0, int(nerve_class[1:]))
    return (1, nerve_class)


def write_atlas_csv(
    rows: List[AtlasRow],
    stream: TextIO,
    skipped: int = 0,
    meta: Optional[str] = None,
) -> None:
    """CSV with AtlasRow columns followed by a commented summary block."""
    if meta is not None:
        stream.write(f"# {meta}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    counts = {}
    for row in rows:
        writer.writerow(
            (
                row.code,
                row.neurons,
                row.facet_count,
                row.nerve_class,
                "true" if row.minimal else "false",
                row.verdict,
                row.certificate,
                row.sprocket,
            )
        )
        key = (row.nerve_class, row.verdict)
        counts[key] = counts.get(key, 0) + 1
    stream.write("# summary\n")
    for nerve_class, verdict in sorted(
        counts, key=lambda kv: (_class_sort_key(kv[0]), kv[1])
    ):
        stream.write(f"# {nerve_class},{verdict},{counts[(nerve_class, verdict)]}\n")
    if skipped:
        stream.write(f"# skipped-undecided,{skipped}\n")
