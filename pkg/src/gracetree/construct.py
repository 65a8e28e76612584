"""Closed-form graceful labellings of rooted symmetric trees.

Three constructions are implemented:

* a direct alternating formula that labels any rooted symmetric tree
  from vertex addresses alone, placing 0 on the root;
* a transposition product that moves 0 from the root to a deepest leaf
  on three-level trees;
* a composition that splits off the last root branch as a broom,
  labels the broom with extreme values and the remaining subtree with
  a shifted or reflected copy of the direct formula, and thereby puts
  0 (or the top label) on one of the two deepest levels.

Every public entry point that performs a multi-step construction also
returns a trace: a list of replayable steps with recorded label
snapshots, so a result can be audited independently of the code that
produced it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .labelling import (
    Labelling,
    TranspositionProduct,
    apply_permutation,
    complement,
    is_graceful,
    reflect,
    relabel_vertices,
    shift,
)
from .model import (
    BroomDecomposition,
    GeneralTree,
    RootedSymmetricTree,
    UnsupportedConstruction,
    VertexAddress,
    automorphism_mapping,
    decompose,
    to_general,
)

METHOD_THEOREM1 = "theorem1"
METHOD_THEOREM2_ODD = "theorem2_odd"
METHOD_THEOREM2_EVEN = "theorem2_even"
METHOD_LEMMA1 = "lemma1"
METHOD_COMPLEMENT = "complement_of"
METHOD_STAR = "star_direct"
METHOD_SEARCH = "search_fallback"

ALL_METHODS = (
    METHOD_THEOREM1,
    METHOD_THEOREM2_ODD,
    METHOD_THEOREM2_EVEN,
    METHOD_LEMMA1,
    METHOD_COMPLEMENT,
    METHOD_STAR,
    METHOD_SEARCH,
)


@dataclass(frozen=True)
class ConstructionTrace:
    """How a labelling was produced: a method name plus replayable steps.

    Each step is a dict with an ``op`` key, the op's parameters, and the
    label snapshot it produced.  Treat steps as read-only.
    """

    method: str
    steps: tuple[dict, ...]

    def to_dict(self) -> dict:
        return {"method": self.method, "steps": list(self.steps)}

    @staticmethod
    def from_dict(d: dict) -> "ConstructionTrace":
        return ConstructionTrace(str(d["method"]), tuple(d["steps"]))


def theorem1_label(t: RootedSymmetricTree) -> Labelling:
    """Graceful labelling straight from vertex addresses.

    The root gets 0.  A vertex at level r with address (x_1, ..., x_{r-1})
    gets, with h_j the per-level subtree sizes,

        even r:  (k_1 - x_1) h_2 - sum_{j>=2} x_j h_{j+1} - (r - 2)/2
        odd  r:  sum_{j>=1} x_j h_{j+1} + (r - 1)/2

    so the whole labelling costs one address decode per vertex.
    """
    hs = t.level_numbers
    k1 = t.seq.degrees[0]
    labels = [0] * t.n
    for i in range(1, t.n):
        digits = t.address_of(i).indices
        r = len(digits) + 1
        if r % 2 == 0:
            acc = (k1 - digits[0]) * hs[1]
            for j in range(1, r - 1):
                acc -= digits[j] * hs[j + 1]
            labels[i] = acc - (r - 2) // 2
        else:
            acc = 0
            for j in range(r - 1):
                acc += digits[j] * hs[j + 1]
            labels[i] = acc + (r - 1) // 2
    return Labelling(tuple(labels))


def lemma1_product(t: RootedSymmetricTree) -> TranspositionProduct:
    """Value swaps that move 0 to a deepest leaf on a three-level tree.

    For daughter degrees (k_1, k_2) the product swaps i*h_2 with
    i*h_2 + k_2 for each i < k_1.  Applied to the direct labelling it
    stays graceful and sends 0 to the leaf at address (0, k_2 - 1).
    """
    if t.q != 3:
        raise UnsupportedConstruction(
            UnsupportedConstruction.WRONG_LEVELS,
            f"the swap product needs exactly 3 levels, tree has {t.q}",
        )
    k1 = t.seq.degrees[0]
    k2 = t.seq.degrees[1]
    h2 = t.level_numbers[1]
    return TranspositionProduct(tuple((i * h2, i * h2 + k2) for i in range(k1)))


def lemma1_label(t: RootedSymmetricTree) -> tuple[Labelling, ConstructionTrace]:
    """Label a three-level tree gracefully with 0 at a deepest leaf."""
    base = theorem1_label(t)
    prod = lemma1_product(t)
    f = apply_permutation(base, prod)
    steps = (
        {"op": "theorem1", "labels": list(base.labels)},
        {
            "op": "apply_permutation",
            "swaps": [list(s) for s in prod.swaps],
            "labels": list(f.labels),
        },
    )
    if not is_graceful(to_general(t), f):
        raise RuntimeError("swap product broke gracefulness; this is a bug")
    return f, ConstructionTrace(METHOD_LEMMA1, steps)


def broom_caterpillar_label(leaf_count: int, spine_length: int, n: int) -> tuple[int, ...]:
    """Extreme-value labelling of a broom inside an n-label budget.

    The broom is a spine of ``spine_length`` vertices (root included)
    whose deepest vertex carries ``leaf_count`` pendant leaves.  Leaves
    take 0..leaf_count-1; the spine, walked from its deep end up to the
    root, alternates between the largest unused high label and the
    smallest unused low label.  The edge differences then form one
    contiguous run at the very top of 1..n-1.

    Returns labels in local order: root, spine down to the deep vertex,
    then the leaves.
    """
    if leaf_count < 1:
        raise ValueError("a broom needs at least one leaf")
    if spine_length < 1:
        raise ValueError("a broom needs at least one spine vertex")
    p = spine_length + leaf_count
    if n < p:
        raise ValueError(f"label budget {n} too small for {p} vertices")
    deep_to_root = []
    high = n - 1
    low = leaf_count
    for pos in range(spine_length):
        if pos % 2 == 0:
            deep_to_root.append(high)
            high -= 1
        else:
            deep_to_root.append(low)
            low += 1
    labels = tuple(reversed(deep_to_root)) + tuple(range(leaf_count))

    spine = labels[:spine_length]
    diffs = sorted(
        [abs(spine[i] - spine[i + 1]) for i in range(spine_length - 1)]
        + [abs(spine[-1] - leaf) for leaf in range(leaf_count)]
    )
    lo = n - (leaf_count + spine_length - 1)
    if diffs != list(range(lo, n)):
        raise RuntimeError("broom edge differences missed the top run; this is a bug")
    return labels


def compose_theorem2(
    t: RootedSymmetricTree, target_level: int, desired: int
) -> tuple[Labelling, ConstructionTrace]:
    """Graceful labelling with ``desired`` (0 or n-1) on one of the two
    deepest levels.

    Works when the last root branch is a broom: either the tree has
    exactly three levels, or every intermediate daughter degree is 1.
    The branch is labelled with the extreme values, the rest of the tree
    with the direct formula shifted (odd level count) or reflected (even
    level count) onto the remaining middle values.  The base result has
    0 on a deepest leaf and n-1 on that leaf's neighbour one level up;
    complementing swaps the two, which covers all four cases.
    """
    q = t.q
    n = t.n
    if q < 3:
        raise UnsupportedConstruction(
            UnsupportedConstruction.WRONG_LEVELS,
            f"branch composition needs at least 3 levels, tree has {q}",
        )
    if target_level not in (q - 1, q):
        raise ValueError(f"target level must be {q - 1} or {q}, got {target_level}")
    if desired not in (0, n - 1):
        raise ValueError(f"desired label must be 0 or {n - 1}, got {desired}")
    degrees = t.seq.degrees
    if q >= 4 and any(k != 1 for k in degrees[1:-1]):
        raise UnsupportedConstruction(
            UnsupportedConstruction.NOT_BROOM,
            f"intermediate daughter degrees of {degrees} are not all 1",
        )

    dec = decompose(t)
    leaf_count = degrees[-1]
    spine_length = q - 1
    local = broom_caterpillar_label(leaf_count, spine_length, n)

    h_base = theorem1_label(dec.subtree_h)
    if q % 2 == 1:
        root_label = leaf_count + (q - 3) // 2
        h_labels = shift(h_base, root_label)
        h_step = {"op": "shift", "amount": root_label, "labels": list(h_labels)}
        method = METHOD_THEOREM2_ODD
    else:
        root_label = n - q // 2
        h_labels = reflect(h_base, root_label)
        h_step = {"op": "reflect", "pivot": root_label, "labels": list(h_labels)}
        method = METHOD_THEOREM2_EVEN
    if local[0] != root_label:
        raise RuntimeError("branch and subtree disagree on the root label; this is a bug")

    full = [-1] * n
    for li, gi in enumerate(dec.p_map):
        full[gi] = local[li]
    for hi, gi in enumerate(dec.h_map):
        if full[gi] >= 0 and full[gi] != h_labels[hi]:
            raise RuntimeError("branch and subtree overlap inconsistently; this is a bug")
        full[gi] = h_labels[hi]
    f = Labelling(tuple(full))
    if not is_graceful(to_general(t), f):
        raise RuntimeError("composed labelling is not graceful; this is a bug")

    steps = [
        {
            "op": "decompose",
            "h_degrees": list(dec.subtree_h.seq.degrees),
            "p_map": list(dec.p_map),
            "h_map": list(dec.h_map),
        },
        {
            "op": "broom",
            "leaf_count": leaf_count,
            "spine_length": spine_length,
            "n": n,
            "labels": list(local),
        },
        {"op": "subtree", "labels": list(h_base.labels)},
        h_step,
        {"op": "merge", "labels": list(f.labels)},
    ]

    flip = (target_level == q - 1 and desired == 0) or (
        target_level == q and desired == n - 1
    )
    if flip:
        f = complement(f)
        steps.append({"op": "complement", "labels": list(f.labels)})

    holder = f.vertex_with_label(desired)
    if t.level_of_index(holder) != target_level:
        raise RuntimeError("desired label landed on the wrong level; this is a bug")
    return f, ConstructionTrace(method, tuple(steps))


TargetLike = Union[int, VertexAddress, Sequence[int]]


@dataclass(frozen=True)
class ZeroAtRequest:
    """Ask for a graceful labelling with a chosen extreme label at a
    chosen vertex.

    ``target`` is a vertex index or an address; ``desired_label`` must
    be 0 or n-1.
    """

    tree: RootedSymmetricTree
    target: TargetLike
    desired_label: int = 0


def _coerce_target(t: RootedSymmetricTree, target: TargetLike) -> int:
    if isinstance(target, bool):
        raise ValueError("target must be a vertex index or address")
    if isinstance(target, int):
        if not 0 <= target < t.n:
            raise ValueError(f"vertex index {target} out of range")
        return target
    if isinstance(target, VertexAddress):
        return t.index_of(target)
    return t.index_of(tuple(target))


def zero_at(req: ZeroAtRequest) -> tuple[Labelling, ConstructionTrace]:
    """Constructive placement of an extreme label at a target vertex.

    Dispatches on the target's level: the root and the second level are
    served by the direct formula and its complement, the two deepest
    levels by the broom composition, anything else raises
    UnsupportedConstruction(NoConstruction).  The result is moved onto
    the exact target vertex by a tree automorphism when needed.
    """
    t = req.tree
    n = t.n
    q = t.q
    target = _coerce_target(t, req.target)
    desired = int(req.desired_label)
    if desired not in (0, n - 1):
        raise ValueError(f"desired label must be 0 or {n - 1}, got {desired}")
    level = t.level_of_index(target)
    g = to_general(t)

    if level <= 2:
        base = theorem1_label(t)
        steps = [{"op": "theorem1", "labels": list(base.labels)}]
        f = base
        flip = (level == 1 and desired == n - 1 and n > 1) or (
            level == 2 and desired == 0
        )
        if flip:
            f = complement(f)
            steps.append({"op": "complement", "labels": list(f.labels)})
        if q <= 2:
            method = METHOD_STAR
        elif flip:
            method = METHOD_COMPLEMENT
        else:
            method = METHOD_THEOREM1
    elif level in (q - 1, q):
        f, base_trace = compose_theorem2(t, level, desired)
        method = base_trace.method
        steps = list(base_trace.steps)
    else:
        raise UnsupportedConstruction(
            UnsupportedConstruction.NO_CONSTRUCTION,
            f"no constructive placement for level {level} of a {q}-level tree",
        )

    holder = f.vertex_with_label(desired)
    if holder != target:
        perm = automorphism_mapping(g, holder, target)
        f = relabel_vertices(f, perm)
        steps.append(
            {"op": "relabel_vertices", "perm": list(perm), "labels": list(f.labels)}
        )

    if f[target] != desired or not is_graceful(g, f):
        raise RuntimeError("constructed labelling failed its postcondition; this is a bug")
    return f, ConstructionTrace(method, tuple(steps))


def search_trace(labels: Sequence[int], pins: Sequence[tuple[int, int]] = ()) -> ConstructionTrace:
    """Trace wrapper for a labelling found by backtracking search."""
    step = {
        "op": "search",
        "labels": [int(x) for x in labels],
        "pins": [[int(v), int(x)] for v, x in pins],
    }
    return ConstructionTrace(METHOD_SEARCH, (step,))


def _check(recorded: Sequence[int], recomputed: Sequence[int], op: str) -> None:
    if list(recorded) != list(recomputed):
        raise ValueError(f"trace step {op!r} does not replay: recorded labels differ")


def replay_trace(
    t: Union[RootedSymmetricTree, GeneralTree], trace: ConstructionTrace
) -> Labelling:
    """Re-execute a construction trace and cross-check every snapshot.

    Raises ValueError on any mismatch between a recorded snapshot and
    its recomputation.  Returns the final labelling, verified graceful.
    """
    if isinstance(t, RootedSymmetricTree):
        rst: RootedSymmetricTree | None = t
        g = to_general(t)
    else:
        rst = None
        g = t

    cur: tuple[int, ...] | None = None
    dec: BroomDecomposition | None = None
    broom_local: tuple[int, ...] | None = None
    h_cur: tuple[int, ...] | None = None

    for step in trace.steps:
        op = step["op"]
        if op == "theorem1":
            if rst is None:
                raise ValueError("trace needs a rooted symmetric tree to replay")
            cur = theorem1_label(rst).labels
            _check(step["labels"], cur, op)
        elif op == "apply_permutation":
            prod = TranspositionProduct(tuple(tuple(s) for s in step["swaps"]))
            cur = apply_permutation(Labelling(cur), prod).labels
            _check(step["labels"], cur, op)
        elif op == "complement":
            cur = complement(Labelling(cur)).labels
            _check(step["labels"], cur, op)
        elif op == "relabel_vertices":
            cur = relabel_vertices(Labelling(cur), tuple(step["perm"])).labels
            _check(step["labels"], cur, op)
        elif op == "decompose":
            if rst is None:
                raise ValueError("trace needs a rooted symmetric tree to replay")
            dec = decompose(rst)
            if (
                list(dec.subtree_h.seq.degrees) != list(step["h_degrees"])
                or list(dec.p_map) != list(step["p_map"])
                or list(dec.h_map) != list(step["h_map"])
            ):
                raise ValueError("trace step 'decompose' does not replay")
        elif op == "broom":
            broom_local = broom_caterpillar_label(
                int(step["leaf_count"]), int(step["spine_length"]), int(step["n"])
            )
            _check(step["labels"], broom_local, op)
        elif op == "subtree":
            if dec is None:
                raise ValueError("trace step 'subtree' before 'decompose'")
            h_cur = theorem1_label(dec.subtree_h).labels
            _check(step["labels"], h_cur, op)
        elif op == "shift":
            h_cur = shift(h_cur, int(step["amount"]))
            _check(step["labels"], h_cur, op)
        elif op == "reflect":
            h_cur = reflect(h_cur, int(step["pivot"]))
            _check(step["labels"], h_cur, op)
        elif op == "merge":
            if dec is None or broom_local is None or h_cur is None:
                raise ValueError("trace step 'merge' is missing its inputs")
            full = [-1] * g.n
            for li, gi in enumerate(dec.p_map):
                full[gi] = broom_local[li]
            for hi, gi in enumerate(dec.h_map):
                if full[gi] >= 0 and full[gi] != h_cur[hi]:
                    raise ValueError("trace step 'merge' has an inconsistent overlap")
                full[gi] = h_cur[hi]
            cur = tuple(full)
            _check(step["labels"], cur, op)
        elif op == "search":
            cur = tuple(int(x) for x in step["labels"])
            for v, x in step.get("pins", ()):
                if cur[v] != x:
                    raise ValueError(f"search trace violates pin {v}->{x}")
        else:
            raise ValueError(f"unknown trace op {op!r}")

    if cur is None:
        raise ValueError("trace produced no labelling")
    f = Labelling(cur)
    if not is_graceful(g, f):
        raise ValueError("trace replays to a non-graceful labelling")
    return f
