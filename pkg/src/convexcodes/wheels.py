"""Partial wheels, sprockets, and the bounded sprocket search.

A sprocket is a combinatorial certificate of non-convexity: four faces
(sigma1, sigma2, sigma3, tau) forming a partial wheel, plus two witness
faces (rho1, rho3) whose trunk conditions force an actual wheel in every
realization.  All predicates here are literal trunk/face computations over
the code, so every reported candidate can be replayed independently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .codes import (
    Codeword,
    NeuralCode,
    format_word,
    max_intersection_faces,
    maximal_codewords,
    sort_words,
    word_sort_key,
)
from .topology import classify_small_complex, nerve, path_of_facets


@dataclass(frozen=True)
class SprocketCandidate:
    sigma1: Codeword
    sigma2: Codeword
    sigma3: Codeword
    tau: Codeword
    rho1: Codeword
    rho3: Codeword

    def wheel_part(self) -> tuple:
        return (self.sigma1, self.sigma2, self.sigma3, self.tau)

    def words(self) -> tuple:
        return (self.sigma1, self.sigma2, self.sigma3, self.tau, self.rho1, self.rho3)

    def text(self) -> str:
        sig = ",".join(format_word(w) for w in self.wheel_part())
        rho = ",".join(format_word(w) for w in (self.rho1, self.rho3))
        return f"(({sig}), rho=({rho}))"

    def to_json(self) -> dict:
        return {
            "sigma1": sorted(self.sigma1),
            "sigma2": sorted(self.sigma2),
            "sigma3": sorted(self.sigma3),
            "tau": sorted(self.tau),
            "rho1": sorted(self.rho1),
            "rho3": sorted(self.rho3),
        }


class _TrunkOracle:
    """Cached face and trunk queries against one fixed code."""

    def __init__(self, code: NeuralCode):
        self.words = code.codewords
        self.facets = maximal_codewords(code)
        self._faces: Dict[Codeword, bool] = {}
        self._trunks: Dict[Codeword, frozenset] = {}

    def is_face(self, sigma: Codeword) -> bool:
        hit = self._faces.get(sigma)
        if hit is None:
            hit = any(sigma <= f for f in self.facets)
            self._faces[sigma] = hit
        return hit

    def trunk(self, sigma: Codeword) -> frozenset:
        hit = self._trunks.get(sigma)
        if hit is None:
            hit = frozenset(w for w in self.words if sigma <= w)
            self._trunks[sigma] = hit
        return hit


def _check_wheel(o: _TrunkOracle, s1, s2, s3, tau) -> Optional[str]:
    u = s1 | s2 | s3
    if not o.is_face(u):
        return "P(i)"
    tu = o.trunk(u)
    if o.trunk(s1 | s2) != tu or o.trunk(s1 | s3) != tu or o.trunk(s2 | s3) != tu:
        return "P(i)"
    if o.is_face(u | tau):
        return "P(ii)"
    if not (o.is_face(s1 | tau) and o.is_face(s2 | tau) and o.is_face(s3 | tau)):
        return "P(iii)"
    return None


def _check_witnesses(o: _TrunkOracle, cand: SprocketCandidate) -> Optional[str]:
    if not (
        o.trunk(cand.sigma1 | cand.tau) <= o.trunk(cand.rho1)
        and o.trunk(cand.sigma3 | cand.tau) <= o.trunk(cand.rho3)
    ):
        return "S(1)"
    if not o.trunk(cand.tau) <= o.trunk(cand.rho1) | o.trunk(cand.rho3):
        return "S(2)"
    if not o.trunk(cand.rho1 | cand.rho3 | cand.tau) <= o.trunk(cand.sigma2):
        return "S(3)"
    return None


def _witnesses_cover_exactly(o: _TrunkOracle, cand: SprocketCandidate) -> bool:
    """Both witness trunks sit inside Tk(tau), so S(2) is an equality.

    The search refuses to emit candidates without this property.  The bare
    S conditions accept tuples whose witnesses reach outside Tk(tau), and
    such tuples exist even in codes with verified convex realizations, so
    they certify nothing.  Every closed-form construction here has
    tau <= rho1 & rho3, which implies this containment, and the
    nonconvexity argument needs the witness trunks to split Tk(tau) into
    exactly two parts.
    """
    tk_tau = o.trunk(cand.tau)
    return o.trunk(cand.rho1) <= tk_tau and o.trunk(cand.rho3) <= tk_tau


def _hub_spoke_pattern(o: _TrunkOracle, s1, s2, s3, tau) -> bool:
    """Hub facets meet two distinct spoke facets nowhere.

    The closed-form construction lives in a nerve where the facet carrying
    sigma1|sigma2|sigma3 intersects any two of the three facets carrying
    the sigma_j|tau spokes in the empty set.  Candidates violating this
    exist with identical trunk signatures in convex and non-convex codes
    alike (the remaining conditions cannot see the difference), so the
    search only emits candidates matching the pattern the construction is
    actually proven for.
    """
    hub = s1 | s2 | s3
    hub_facets = [f for f in o.facets if hub <= f]
    spokes = [[f for f in o.facets if (sigma | tau) <= f] for sigma in (s1, s2, s3)]
    for g in hub_facets:
        for j in range(3):
            for k in range(j + 1, 3):
                for fj in spokes[j]:
                    for fk in spokes[k]:
                        if g & fj & fk:
                            return False
    return True


def is_partial_wheel(
    code: NeuralCode, sigma1, sigma2, sigma3, tau
) -> Tuple[bool, Optional[str]]:
    """Check conditions P(i)-P(iii); report the first failure.

    P(i): the union u of the sigmas is a face and every pairwise union has
    the same trunk as u.  P(ii): u with tau is not a face.  P(iii): each
    sigma with tau is a face.  Non-faces are not errors, they just fail.
    """
    o = _TrunkOracle(code)
    failed = _check_wheel(
        o, frozenset(sigma1), frozenset(sigma2), frozenset(sigma3), frozenset(tau)
    )
    return (failed is None, failed)


def is_sprocket(code: NeuralCode, cand: SprocketCandidate) -> Tuple[bool, Optional[str]]:
    """Partial-wheel conditions plus the trunk-witness conditions S(1)-S(3).

    Failure reports the first broken condition in the order P(i), P(ii),
    P(iii), S(1), S(2), S(3).
    """
    o = _TrunkOracle(code)
    failed = _check_wheel(o, cand.sigma1, cand.sigma2, cand.sigma3, cand.tau)
    if failed is None:
        failed = _check_witnesses(o, cand)
    return (failed is None, failed)


def canonical_l24_sprocket(code: NeuralCode) -> Optional[SprocketCandidate]:
    """The closed-form sprocket of a 4-maximal code with L24 nerve.

    After classifying the nerve, the facet playing the off-triangle vertex
    becomes F4 and the triangle facets are ordered so the middle one (under
    the Path-of-Facets witness) is F2.  Then sigma_i = F_i & F4, tau is the
    triple intersection of F1,F2,F3 and the witnesses are rho_1 = F1 & F2,
    rho_3 = F3 & F2.  Returns None when the triangle fails Path-of-Facets
    or when the assembled candidate does not validate against the code
    (possible for codes larger than the minimal one).
    """
    facets = maximal_codewords(code)
    if len(facets) != 4:
        raise ValueError(f"code has {len(facets)} maximal codewords, need 4")
    cls = classify_small_complex(nerve(facets))
    if cls.class_id != "L24":
        raise ValueError(f"nerve class is {cls.class_id}, need L24")
    by_ref = {ref: facets[pos - 1] for pos, ref in cls.relabeling}
    triangle = (by_ref[1], by_ref[2], by_ref[3])
    f4 = by_ref[4]
    pof = path_of_facets(*triangle)
    if pof is None:
        return None
    f1, f2, f3 = triangle[pof.a - 1], triangle[pof.b - 1], triangle[pof.c - 1]
    cand = SprocketCandidate(
        sigma1=f1 & f4,
        sigma2=f2 & f4,
        sigma3=f3 & f4,
        tau=f1 & f2 & f3,
        rho1=f1 & f2,
        rho3=f3 & f2,
    )
    ok, _ = is_sprocket(code, cand)
    return cand if ok else None


DEFAULT_BUDGET = 10**6

# candidate faces for sigma/rho in the generic search: subsets of facet
# intersections up to this size, plus the intersections themselves
_POOL_SUBSET_BOUND = 3

# assignments tried when breaking profile ties in _search_relabeling;
# 8! covers every code on <= 8 neurons exactly
_RELABEL_CAP = 40320


def _search_relabeling(code: NeuralCode) -> Tuple[NeuralCode, Dict[int, int]]:
    """Label-invariant relabeling onto 1..s, plus the inverse map.

    The generic sprocket search enumerates candidates in label order, so a
    budget can run out at different structural points for two relabelings
    of the same code.  Searching a canonical relabeling instead makes the
    found/exhausted outcome a property of the code, not of its labels.
    Neurons are partitioned by a two-round occurrence profile and the
    lex-least relabeled code over profile-respecting assignments wins;
    exact whenever the tie groups admit at most 8! assignments (always
    true for codes on <= 8 neurons).
    """
    support = sorted(code.support())
    if not support:
        return code, {}
    words = [w for w in code.codewords if w]
    prof1 = {
        i: tuple(sorted(len(w) for w in words if i in w)) for i in support
    }
    rank1 = {p: r for r, p in enumerate(sorted(set(prof1.values())))}
    prof2 = {
        i: (
            prof1[i],
            tuple(sorted(tuple(sorted(rank1[prof1[j]] for j in w)) for w in words if i in w)),
        )
        for i in support
    }
    ordered = sorted(support, key=lambda i: (prof2[i], i))
    groups: List[List[int]] = []
    for i in ordered:
        if groups and prof2[groups[-1][0]] == prof2[i]:
            groups[-1].append(i)
        else:
            groups.append([i])

    total = 1
    for g in groups:
        for size in range(2, len(g) + 1):
            total *= size
    if total > _RELABEL_CAP:
        pools = [[tuple(g)] for g in groups]
    else:
        pools = [list(itertools.permutations(g)) for g in groups]

    best_key = None
    best_words = None
    best_mapping = None
    for combo in itertools.product(*pools):
        mapping = {}
        next_label = 1
        for g in combo:
            for i in g:
                mapping[i] = next_label
                next_label += 1
        relabeled = sort_words(frozenset(mapping[i] for i in w) for w in code.codewords)
        key = tuple(word_sort_key(w) for w in relabeled)
        if best_key is None or key < best_key:
            best_key, best_words, best_mapping = key, relabeled, mapping
    inverse = {new: old for old, new in best_mapping.items()}
    return NeuralCode(best_words), inverse


def _remap_candidate(cand: SprocketCandidate, inverse: Dict[int, int]) -> SprocketCandidate:
    back = lambda w: frozenset(inverse[i] for i in w)
    return SprocketCandidate(
        sigma1=back(cand.sigma1),
        sigma2=back(cand.sigma2),
        sigma3=back(cand.sigma3),
        tau=back(cand.tau),
        rho1=back(cand.rho1),
        rho3=back(cand.rho3),
    )


def _candidate_pool(facets) -> list:
    pool = set()
    for face in max_intersection_faces(facets):
        pool.add(face)
        members = sorted(face)
        for r in range(1, min(len(members), _POOL_SUBSET_BOUND) + 1):
            pool.update(frozenset(c) for c in itertools.combinations(members, r))
    return sort_words(pool)


def find_sprocket(
    code: NeuralCode, budget: int = DEFAULT_BUDGET
) -> Optional[SprocketCandidate]:
    """Bounded sprocket search; None means not found within budget.

    Tries the closed-form L24 construction first, then cone peeling (a
    neuron lying in every nonempty codeword is stripped, the smaller code
    searched, and any hit revalidated against the original code), then a
    generic enumeration: tau over max-intersection faces missing from the
    code, sigmas and rhos over subsets of facet intersections, in canonical
    order on (tau, sigma1, sigma2, sigma3, rho1, rho3).  The budget caps
    the number of candidate condition evaluations.

    Emitted candidates satisfy a condition beyond is_sprocket: both
    witness trunks must lie inside Tk(tau) (see _witnesses_cover_exactly).
    Candidates passing the bare S conditions but reaching outside Tk(tau)
    occur even in convex codes, so the search treats them as noise.
    """
    box = [budget]
    return _find_sprocket(code, box)


def _find_sprocket(code: NeuralCode, box: list) -> Optional[SprocketCandidate]:
    facets = maximal_codewords(code)

    if len(facets) == 4:
        cls = classify_small_complex(nerve(facets))
        if cls.class_id == "L24":
            cand = canonical_l24_sprocket(code)
            if cand is not None:
                return cand

    nonempty = [w for w in code.codewords if w]
    if nonempty:
        common = frozenset.intersection(*nonempty)
        if common:
            stripped = NeuralCode(w - common for w in code.codewords)
            cand = _find_sprocket(stripped, box)
            if (
                cand is not None
                and is_sprocket(code, cand)[0]
                and _witnesses_cover_exactly(_TrunkOracle(code), cand)
            ):
                return cand

    canon, inverse = _search_relabeling(code)
    canon_facets = maximal_codewords(canon)
    o = _TrunkOracle(canon)
    pool = _candidate_pool(canon_facets)
    taus = [
        f
        for f in sort_words(max_intersection_faces(canon_facets))
        if f not in canon.codewords
    ]
    for tau in taus:
        tk_tau = o.trunk(tau)
        rho_pool = [r for r in pool if o.trunk(r) <= tk_tau]
        if not rho_pool:
            continue
        for s1 in pool:
            k1 = word_sort_key(s1)
            for s2 in pool:
                for s3 in pool:
                    if word_sort_key(s3) < k1:
                        continue  # mirror symmetry (s1,rho1) <-> (s3,rho3)
                    if box[0] <= 0:
                        return None
                    box[0] -= 1
                    if _check_wheel(o, s1, s2, s3, tau) is not None:
                        continue
                    if not _hub_spoke_pattern(o, s1, s2, s3, tau):
                        continue
                    for r1 in rho_pool:
                        for r3 in rho_pool:
                            if box[0] <= 0:
                                return None
                            box[0] -= 1
                            cand = SprocketCandidate(s1, s2, s3, tau, r1, r3)
                            if _check_witnesses(o, cand) is None:
                                mapped = _remap_candidate(cand, inverse)
                                ok, _tag = is_sprocket(code, mapped)
                                if not ok or not _witnesses_cover_exactly(
                                    _TrunkOracle(code), mapped
                                ):
                                    raise AssertionError(
                                        "relabeled sprocket failed replay on the original code"
                                    )
                                return mapped
    return None
