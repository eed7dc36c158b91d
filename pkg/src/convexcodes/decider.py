"""The convexity decision procedure and the aggregate report.

decide() runs a fixed pipeline whose every exit is justified by a
replayable certificate: the local-obstruction scan (sound for NONCONVEX,
run first and unconditionally), max-intersection completeness, the
3-maximal theorem, the nerve-class theorems for 4-maximal codes with the
Path-of-Facets dichotomy on minimal L24 codes, and for five or more
facets the no-2-simplex criterion, component decomposition, and the
bounded sprocket search.  UNKNOWN is a terminal honest answer for the
open cases, never a timeout disguise: certificates list what was
established, and the sprocket search reports its budget in analyze().
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

from .codes import (
    NeuralCode,
    Codeword,
    format_word,
    is_max_intersection_complete,
    max_intersection_faces,
    maximal_codewords,
    sort_words,
)
from .topology import (
    INDETERMINATE,
    classify_small_complex,
    has_local_obstruction,
    mandatory_faces,
    minimal_code,
    nerve,
    path_of_facets,
)
from .wheels import (
    DEFAULT_BUDGET,
    SprocketCandidate,
    canonical_l24_sprocket,
    find_sprocket,
)


class Verdict(Enum):
    CONVEX = "CONVEX"
    NONCONVEX = "NONCONVEX"
    UNKNOWN = "UNKNOWN"


# certificate kinds; Monotonicity is part of the vocabulary for replay
# tooling but the pipeline never emits it (nothing is concluded from
# supercodes here)
KIND_MAX_INTERSECTION_COMPLETE = "MaxIntersectionComplete"
KIND_LOCAL_OBSTRUCTION = "LocalObstruction"
KIND_SPROCKET = "Sprocket"
KIND_THEOREM_NO_LOCAL_OBSTRUCTION = "TheoremNoLocalObstruction"
KIND_L24_MINIMAL_POF_CONVEX = "L24MinimalPoFConvex"
KIND_L24_MINIMAL_POF_SPROCKET = "L24MinimalPoFSprocket"
KIND_NO_TWO_SIMPLEX_NERVE = "NoTwoSimplexNerve"
KIND_DISCONNECTED_DECOMPOSITION = "DisconnectedDecomposition"
KIND_MONOTONICITY = "Monotonicity"
KIND_INDETERMINATE_CONTRACTIBILITY = "IndeterminateContractibility"


@dataclass(frozen=True)
class Certificate:
    kind: str
    face: Optional[Codeword] = None
    candidate: Optional[SprocketCandidate] = None
    class_id: Optional[str] = None
    components: Optional[tuple] = None  # ((sorted neuron tuple, status), ...)
    base: Optional[tuple] = None  # codewords of the minimal code
    faces: Optional[tuple] = None  # undecided faces

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.face is not None:
            out["face"] = sorted(self.face)
        if self.candidate is not None:
            out["candidate"] = self.candidate.to_json()
        if self.class_id is not None:
            out["class"] = self.class_id
        if self.components is not None:
            out["components"] = [
                {"neurons": list(neurons), "status": status}
                for neurons, status in self.components
            ]
        if self.base is not None:
            out["base"] = [sorted(w) for w in self.base]
        if self.faces is not None:
            out["faces"] = [sorted(f) for f in self.faces]
        return out

    def text(self) -> str:
        k = self.kind
        if k == KIND_MAX_INTERSECTION_COMPLETE:
            return f"{k}: every nonempty facet intersection is a codeword"
        if k == KIND_LOCAL_OBSTRUCTION:
            return f"{k}: mandatory face {format_word(self.face, braced=True)} is not a codeword"
        if k in (KIND_SPROCKET, KIND_L24_MINIMAL_POF_SPROCKET):
            return f"{k}: {self.candidate.text()}"
        if k == KIND_THEOREM_NO_LOCAL_OBSTRUCTION:
            return f"{k}: {self.class_id}"
        if k == KIND_L24_MINIMAL_POF_CONVEX:
            return f"{k}: triangle facets fail Path-of-Facets"
        if k == KIND_NO_TWO_SIMPLEX_NERVE:
            return f"{k}: no three facets share a neuron"
        if k == KIND_DISCONNECTED_DECOMPOSITION:
            parts = "; ".join(
                "{" + ",".join(str(i) for i in neurons) + "} -> " + status
                for neurons, status in self.components
            )
            return f"{k}: {parts}"
        if k == KIND_INDETERMINATE_CONTRACTIBILITY:
            faces = ", ".join(format_word(f, braced=True) for f in self.faces)
            return f"{k}: contractibility unresolved for {faces}"
        if k == KIND_MONOTONICITY:
            return f"{k}: convex sub-code on the same simplicial complex"
        return k


def _theorem_cert(class_id: str) -> Certificate:
    return Certificate(KIND_THEOREM_NO_LOCAL_OBSTRUCTION, class_id=class_id)


def _component_subcodes(code: NeuralCode, facets, components) -> list:
    """Split codewords across nerve components, keeping original labels."""
    out = []
    for comp in components:
        comp_facets = [facets[p - 1] for p in sorted(comp)]
        words = [
            w
            for w in code.codewords
            if w and any(w <= f for f in comp_facets)
        ]
        out.append(NeuralCode(words))
    return out


def decide(code: NeuralCode, budget: int = DEFAULT_BUDGET) -> Tuple[Verdict, List[Certificate]]:
    """Decide convexity; every verdict other than UNKNOWN carries a proof.

    The pipeline order matters: the local-obstruction scan runs first so no
    later convexity theorem can be applied to an obstructed code, and
    max-intersection completeness second so later branches may assume the
    code is not complete.
    """
    obs = has_local_obstruction(code)
    if obs is INDETERMINATE:
        und = mandatory_faces(maximal_codewords(code)).undecided
        return (
            Verdict.UNKNOWN,
            [Certificate(KIND_INDETERMINATE_CONTRACTIBILITY, faces=tuple(sort_words(und)))],
        )
    if obs is not None:
        return (Verdict.NONCONVEX, [Certificate(KIND_LOCAL_OBSTRUCTION, face=obs)])

    complete, _missing = is_max_intersection_complete(code)
    if complete:
        return (Verdict.CONVEX, [Certificate(KIND_MAX_INTERSECTION_COMPLETE)])

    facets = maximal_codewords(code)
    m = len(facets)
    if m <= 3:
        return (Verdict.CONVEX, [_theorem_cert("<=3-maximal")])

    if m == 4:
        cls = classify_small_complex(nerve(facets))
        number = int(cls.class_id[1:])
        if 9 <= number <= 23:
            return (Verdict.CONVEX, [_theorem_cert(cls.class_id)])
        if cls.class_id == "L24" and code.codewords == minimal_code(facets).codewords:
            by_ref = {ref: facets[pos - 1] for pos, ref in cls.relabeling}
            if path_of_facets(by_ref[1], by_ref[2], by_ref[3]) is None:
                return (Verdict.CONVEX, [Certificate(KIND_L24_MINIMAL_POF_CONVEX)])
            cand = canonical_l24_sprocket(code)
            if cand is None:
                raise AssertionError(
                    "canonical sprocket construction failed on a minimal L24 "
                    "code satisfying Path-of-Facets; pipeline is broken"
                )
            return (
                Verdict.NONCONVEX,
                [Certificate(KIND_L24_MINIMAL_POF_SPROCKET, candidate=cand)],
            )
        cand = find_sprocket(code, budget)
        if cand is not None:
            return (Verdict.NONCONVEX, [Certificate(KIND_SPROCKET, candidate=cand)])
        return (Verdict.UNKNOWN, [])

    # five or more facets
    nv = nerve(facets)
    if all(len(f) <= 2 for f in nv.facets):
        return (Verdict.CONVEX, [Certificate(KIND_NO_TWO_SIMPLEX_NERVE)])
    components = nv.components()
    if len(components) > 1:
        subs = _component_subcodes(code, facets, components)
        statuses = []
        payload = []
        for sub in subs:
            verdict, _ = decide(sub, budget)
            statuses.append(verdict)
            payload.append((tuple(sorted(sub.support())), verdict.value))
        cert = Certificate(KIND_DISCONNECTED_DECOMPOSITION, components=tuple(payload))
        if all(v is Verdict.CONVEX for v in statuses):
            return (Verdict.CONVEX, [cert])
        if any(v is Verdict.NONCONVEX for v in statuses):
            return (Verdict.NONCONVEX, [cert])
        return (Verdict.UNKNOWN, [cert])
    cand = find_sprocket(code, budget)
    if cand is not None:
        return (Verdict.NONCONVEX, [Certificate(KIND_SPROCKET, candidate=cand)])
    return (Verdict.UNKNOWN, [])


@dataclass(frozen=True)
class Report:
    """Everything analyze() can say about one code, JSON-ready."""

    neurons: int
    codewords: tuple
    facets: tuple
    nerve_class: Optional[str]
    nerve_relabeling: Optional[tuple]
    mandatory_faces: tuple
    minimal_code: Optional[tuple]
    missing_max_intersections: tuple
    path_of_facets: tuple
    sprocket: Optional[dict]
    verdict: Verdict
    certificates: tuple
    realization: Optional[dict]

    def to_json(self) -> dict:
        return {
            "neurons": self.neurons,
            "codewords": [sorted(w) for w in self.codewords],
            "facets": [sorted(w) for w in self.facets],
            "nerve_class": self.nerve_class,
            "nerve_relabeling": list(self.nerve_relabeling)
            if self.nerve_relabeling is not None
            else None,
            "mandatory_faces": [sorted(w) for w in self.mandatory_faces],
            "minimal_code": [sorted(w) for w in self.minimal_code]
            if self.minimal_code is not None
            else None,
            "missing_max_intersections": [
                sorted(w) for w in self.missing_max_intersections
            ],
            "path_of_facets": list(self.path_of_facets),
            "sprocket": self.sprocket,
            "verdict": self.verdict.value,
            "certificates": [c.to_json() for c in self.certificates],
            "realization": self.realization,
        }


def analyze(
    code: NeuralCode, budget: int = DEFAULT_BUDGET, with_realization: bool = True
) -> Report:
    """Aggregate view: structure, verdict, certificates, realization.

    The realization field is filled only when the verdict is CONVEX and the
    code falls in a constructive family; it is re-verified before being
    reported.
    """
    facets = maximal_codewords(code)
    m = len(facets)

    nerve_class = None
    relabeling = None
    if 1 <= m <= 4:
        cls = classify_small_complex(nerve(facets))
        nerve_class = cls.class_id
        relabeling = tuple(ref for _pos, ref in cls.relabeling)

    mand = mandatory_faces(facets)
    minimal = None
    if not mand.undecided:
        minimal = tuple(sort_words(set(mand) | {frozenset()}))

    missing = tuple(
        f for f in sort_words(max_intersection_faces(facets)) if f not in code.codewords
    )

    pof_rows = []
    for i, j, k in itertools.combinations(range(1, m + 1), 3):
        triple = (facets[i - 1], facets[j - 1], facets[k - 1])
        witness = path_of_facets(*triple)
        positions = (i, j, k)
        pof_rows.append(
            {
                "facets": [i, j, k],
                "witness": [positions[witness.a - 1], positions[witness.b - 1], positions[witness.c - 1]]
                if witness is not None
                else None,
            }
        )

    verdict, certs = decide(code, budget)

    sprocket_json = None
    for cert in certs:
        if cert.candidate is not None:
            sprocket_json = cert.candidate.to_json()
    if verdict is Verdict.UNKNOWN and not certs:
        sprocket_json = {"found": False, "budget": budget}

    realization_json = None
    if with_realization and verdict is Verdict.CONVEX:
        from .realize import build_realization, verify_realization

        built = build_realization(code, budget=budget)
        if built is not None:
            realization, tag = built
            ok, _diff = verify_realization(realization, code)
            if not ok:
                raise AssertionError(
                    f"builder produced an invalid realization ({tag}); this is a bug"
                )
            realization_json = realization.to_json()
            realization_json["construction"] = tag

    return Report(
        neurons=code.n,
        codewords=tuple(sort_words(code.codewords)),
        facets=tuple(facets),
        nerve_class=nerve_class,
        nerve_relabeling=relabeling,
        mandatory_faces=tuple(sort_words(mand)),
        minimal_code=minimal,
        missing_max_intersections=missing,
        path_of_facets=tuple(pof_rows),
        sprocket=sprocket_json,
        verdict=verdict,
        certificates=tuple(certs),
        realization=realization_json,
    )
