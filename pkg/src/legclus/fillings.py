"""Admissible pinching sequences and the torus charts they induce.

Pinching a crossing replaces it by a fresh unit s and corrects the two
same-block neighbors: with accumulated gap units u (left) and v (right),
the pinched generator maps to s, the left neighbor gains (u^2 s)^-1, the
right neighbor gains (v^2 s)^-1, and the two gaps merge to u*s*v.  Gaps at
block ends are tracked the same way so later end pinches see the
accumulated units.  Corrections never cross block boundaries.

A complete sequence leaves one crossing in the outer blocks and two in the
middle ones; the terminal link's retained coordinates are the all-zero
point, so surviving generators are sent to 0 (a single-block word instead
keeps a one-parameter terminal circle, swept by one extra unit).  Each
pinch also emits the diagonal joining its polygon-vertex neighbors, reading
off a per-block triangulation and hence a cluster seed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .augvar import retained_block_chords
from .bridge import BridgeWord
from .cluster import Seed, merge_seeds
from .continuant import continuant
from .dga import a_name
from .errors import AlgebraError, BudgetError, InputError
from .polygon import BlockModel, Triangulation, block_models, is_side, triangulations
from .ring import Coefficients, LaurentPolynomial, VariableTable

F2 = Coefficients.prime_field(2)


def unit_count(word: BridgeWord) -> int:
    """Number of base-point units of a complete filling: m_k - 2k + 2."""
    return word.total - 2 * word.k + 2


def pinch_count(word: BridgeWord) -> int:
    """Length of a complete admissible sequence."""
    if word.k == 1:
        return word.blocks[0] - 1  # the terminal circle keeps one crossing
    return unit_count(word)


def run_table(word: BridgeWord) -> VariableTable:
    s_names = [f"s{i}" for i in range(1, unit_count(word) + 1)]
    names = [a_name(j) for j in range(1, word.total + 1)] + s_names
    return VariableTable(names, invertible=s_names)


@dataclass(frozen=True)
class PinchSequence:
    word: BridgeWord
    chords: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "chords", tuple(self.chords))
        if len(set(self.chords)) != len(self.chords):
            raise InputError("pinching sequence repeats a crossing")
        for c in self.chords:
            if not 1 <= c <= self.word.total:
                raise InputError(f"crossing {c} out of range for {self.word}")


@dataclass
class PinchRecord:
    chord: int
    unit: str
    same_component: bool


class PinchState:
    """Mutable bookkeeping for one pinching run."""

    def __init__(self, word: BridgeWord) -> None:
        word.require_rational_form()
        self.word = word
        self.table = run_table(word)
        self.survivors: list[list[int]] = [word.block_chords(b) for b in range(word.k)]
        one = LaurentPolynomial.constant(self.table, F2, 1)
        self.gaps: list[list[LaurentPolynomial]] = [
            [one] * (len(block) + 1) for block in self.survivors
        ]
        self.images: dict[str, LaurentPolynomial] = {
            a_name(j): LaurentPolynomial.variable(self.table, F2, a_name(j))
            for j in range(1, word.total + 1)
        }
        self.models = block_models(word)
        # polygon vertex of each crossing (interior blocks have none for
        # their first crossing); sentinels keep the remaining corners alive
        self.vertex_of: list[dict[int, int]] = []
        self.active_vertices: list[list[int]] = []
        for b in range(word.k):
            chords = word.block_chords(b)
            labeled = chords if (word.k > 1 and b == 0) else chords[1:]
            mapping = {c: i + 1 for i, c in enumerate(labeled)}
            self.vertex_of.append(mapping)
            self.active_vertices.append(list(range(1, self.models[b].size + 1)))
        self.emitted: list[set[tuple[int, int]]] = [set() for _ in range(word.k)]
        self.records: list[PinchRecord] = []

    # ------------------------------------------------------------------

    def pinchable_chords(self) -> list[int]:
        return _candidates(self.word, self.survivors)

    @property
    def complete(self) -> bool:
        return not self.pinchable_chords()

    def _next_unit(self) -> str:
        return f"s{len(self.records) + 1}"

    def apply_pinch(self, c: int) -> None:
        if c not in self.pinchable_chords():
            raise InputError(f"crossing {c} is not pinchable now")
        b = self.word.block_of(c)
        block = self.survivors[b]
        pos = block.index(c)
        u = self.gaps[b][pos]
        v = self.gaps[b][pos + 1]
        same = self._same_component(c)
        s = LaurentPolynomial.variable(self.table, F2, self._next_unit())
        subs: dict[str, LaurentPolynomial] = {a_name(c): s}
        if pos > 0:
            ln = block[pos - 1]
            subs[a_name(ln)] = (
                LaurentPolynomial.variable(self.table, F2, a_name(ln))
                + (u * u * s).invert_unit()
            )
        if pos < len(block) - 1:
            rn = block[pos + 1]
            subs[a_name(rn)] = (
                LaurentPolynomial.variable(self.table, F2, a_name(rn))
                + (v * v * s).invert_unit()
            )
        self.images = {g: img.substitute(subs) for g, img in self.images.items()}
        self.gaps[b] = self.gaps[b][:pos] + [u * s * v] + self.gaps[b][pos + 2 :]
        block.pop(pos)
        self._emit(b, c)
        self.records.append(PinchRecord(c, s.canonical_text(), same))

    def _emit(self, b: int, c: int) -> None:
        w = self.vertex_of[b].get(c)
        if w is None:
            raise AlgebraError(f"crossing {c} has no polygon vertex")
        active = self.active_vertices[b]
        i = active.index(w)
        left = active[i - 1]
        right = active[(i + 1) % len(active)]
        active.pop(i)
        edge = (left, right) if left < right else (right, left)
        if not is_side(self.models[b].size, edge):
            self.emitted[b].add(edge)

    # ------------------------------------------------------------------
    # plat-closure component tracking (reporting only)

    def _position_pair(self, b: int) -> tuple[int, int]:
        return (2, 3) if b % 2 == 0 else (1, 2)

    def _same_component(self, c: int) -> bool:
        word = self.word
        present = sorted(ch for block in self.survivors for ch in block)
        parent = {f"{side}{i}": f"{side}{i}" for side in "LR" for i in range(1, 5)}

        def find(x: str) -> str:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x: str, y: str) -> None:
            parent[find(x)] = find(y)

        # strands: left boundary position -> right boundary position
        positions = {i: i for i in range(1, 5)}  # left label -> current slot
        entering: dict[int, tuple[str, str]] = {}
        for ch in present:
            pair = self._position_pair(word.block_of(ch))
            slot_to_label = {slot: lab for lab, slot in positions.items()}
            if ch == c:
                entering[c] = (f"L{slot_to_label[pair[0]]}", f"L{slot_to_label[pair[1]]}")
            a, bb = slot_to_label[pair[0]], slot_to_label[pair[1]]
            positions[a], positions[bb] = pair[1], pair[0]
        for lab, slot in positions.items():
            union(f"L{lab}", f"R{slot}")
        union("L1", "L2")
        union("L3", "L4")
        if word.k % 2 == 1:
            union("R1", "R2")
            union("R3", "R4")
        else:
            union("R2", "R3")
            union("R1", "R4")
        x, y = entering[c]
        return find(x) == find(y)

    # ------------------------------------------------------------------

    def block_triangulations(self) -> tuple[Triangulation, ...]:
        out = []
        for b in range(self.word.k):
            out.append(Triangulation(self.models[b].size, frozenset(self.emitted[b])))
        return tuple(out)


def sequence_to_triangulations(
    word: BridgeWord, seq: PinchSequence | Sequence[int]
) -> tuple[Triangulation, ...]:
    """Per-block triangulations read off a complete admissible sequence,
    without the substitution algebra."""
    chords = seq.chords if isinstance(seq, PinchSequence) else tuple(seq)
    word.require_rational_form()
    survivors = [word.block_chords(b) for b in range(word.k)]
    models = block_models(word)
    vertex_of = []
    active = []
    for b in range(word.k):
        block = word.block_chords(b)
        labeled = block if (word.k > 1 and b == 0) else block[1:]
        vertex_of.append({c: i + 1 for i, c in enumerate(labeled)})
        active.append(list(range(1, models[b].size + 1)))
    emitted: list[set] = [set() for _ in range(word.k)]
    for step, c in enumerate(chords):
        if c not in _candidates(word, survivors):
            raise InputError(f"step {step + 1}: crossing {c} is not pinchable")
        b = word.block_of(c)
        survivors[b].remove(c)
        w = vertex_of[b][c]
        act = active[b]
        i = act.index(w)
        left, right = act[i - 1], act[(i + 1) % len(act)]
        act.pop(i)
        edge = (left, right) if left < right else (right, left)
        if not is_side(models[b].size, edge):
            emitted[b].add(edge)
    if _candidates(word, survivors):
        raise InputError("sequence is not complete")
    return tuple(
        Triangulation(models[b].size, frozenset(emitted[b])) for b in range(word.k)
    )


@dataclass(frozen=True)
class RunResult:
    word: BridgeWord
    sequence: tuple[int, ...]
    triangulations: tuple[Triangulation, ...]
    seed: Seed
    parametrization: dict[str, LaurentPolynomial]
    images: dict[str, LaurentPolynomial]
    t1: LaurentPolynomial
    t2: LaurentPolynomial
    records: tuple[PinchRecord, ...]


def run_sequence(word: BridgeWord, seq: PinchSequence | Sequence[int]) -> RunResult:
    """Apply a complete admissible sequence; returns the triangulation
    tuple, the assigned seed, the unit parametrization of the retained
    coordinates, and the forced base-point monomials."""
    chords = seq.chords if isinstance(seq, PinchSequence) else tuple(seq)
    state = PinchState(word)
    for c in chords:
        state.apply_pinch(c)
    if not state.complete:
        raise InputError(
            f"sequence of length {len(chords)} is not complete for {word}"
        )

    terminal: dict[str, LaurentPolynomial] = {}
    zero = LaurentPolynomial.zero(state.table, F2)
    if word.k == 1:
        (survivor,) = state.survivors[0]
        last_unit = f"s{unit_count(word)}"
        terminal[a_name(survivor)] = LaurentPolynomial.variable(state.table, F2, last_unit)
    else:
        for block in state.survivors:
            for c in block:
                terminal[a_name(c)] = zero
    eps = {g: img.substitute(terminal) for g, img in state.images.items()}

    def image_window(chord_list: Sequence[int]) -> LaurentPolynomial:
        return continuant([eps[a_name(c)] for c in chord_list], state.table, F2)

    # the defining system must hold identically in the units
    blocks = retained_block_chords(word)
    for i, chord_list in enumerate(blocks):
        window = image_window(chord_list)
        last = i == len(blocks) - 1
        if word.k == 1 or last:
            if not window.is_unit():
                raise AlgebraError(f"inequation image {window} is not a unit")
        elif not window.is_zero:
            raise AlgebraError(f"equation image {window} does not vanish")

    t1 = _image_t1(word, state, eps)
    t2 = _image_t2(word, state, eps, t1)
    if not (t1.is_unit() and t2.is_unit()):
        raise AlgebraError("forced base-point images are not units")

    tris = state.block_triangulations()
    seed = merge_seeds([m.seed_from_triangulation(t) for m, t in zip(state.models, tris)])
    retained = {a_name(c) for chord_list in blocks for c in chord_list}
    parametrization = {g: eps[g] for g in sorted(retained)}
    return RunResult(
        word,
        chords,
        tris,
        seed,
        parametrization,
        eps,
        t1,
        t2,
        tuple(state.records),
    )


def chart_image(res: RunResult, poly: LaurentPolynomial) -> LaurentPolynomial:
    """Image of an integer polynomial in the crossing variables under the
    chart parametrization (coefficients first reduced mod 2)."""
    reduced = poly.reduce_mod(2) if poly.ring.p is None else poly
    table = res.t1.table
    out = LaurentPolynomial.zero(table, F2)
    for exps, c in reduced.terms.items():
        term = LaurentPolynomial.constant(table, F2, c)
        for i, e in enumerate(exps):
            if e:
                term = term * res.images[reduced.table.names[i]] ** e
        out = out + term
    return out


def is_torus_chart(res: RunResult) -> bool:
    """True when every cluster variable of the assigned seed maps to a unit
    monomial under the chart parametrization."""
    return all(chart_image(res, var).is_unit() for var in res.seed.variables)


def _image_t1(word: BridgeWord, state: PinchState, eps) -> LaurentPolynomial:
    def window(chord_list):
        return continuant([eps[a_name(c)] for c in chord_list], state.table, F2)

    blocks = [word.block_chords(b) for b in range(word.k)]
    if word.k == 1:
        return window(blocks[0])
    out = window(blocks[0][:-1])
    for i in range(1, word.k - 1):
        out = out * window(blocks[i][1:-1])
    return out * window(blocks[-1][1:])


def _image_t2(word: BridgeWord, state: PinchState, eps, t1: LaurentPolynomial) -> LaurentPolynomial:
    def window(chord_list):
        return continuant([eps[a_name(c)] for c in chord_list], state.table, F2)

    k = word.k
    blocks = [word.block_chords(b) for b in range(word.k)]
    if k == 1:
        return window(blocks[0])

    def K(i):  # noqa: N802  (window continuants of block i, 1-based)
        return window(blocks[i - 1])

    def K_L(i):
        return window(blocks[i - 1][:-1])

    def K_M(i):
        if len(blocks[i - 1]) < 2:
            return LaurentPolynomial.zero(state.table, F2)  # K_{-1} = 0
        return window(blocks[i - 1][1:-1])

    def K_R(i):
        return window(blocks[i - 1][1:])

    # two-boundary disk images, same recursion as the differential tables
    d13 = K_M(2) * K_L(1)
    d14 = K_L(2) * K_L(1)
    d24 = K(2) * K_L(1)
    d34 = K(1)
    top = k - 1 if k % 2 == 1 else k
    for j in range(4, top + 1, 2):
        cross = K_L(j - 1) * d34 + K_M(j - 1) * d24
        d13, d14, d24, d34 = (
            K_M(j) * K_M(j - 1) * d13,
            K_L(j) * cross + K_M(j) * d14,
            K_R(j) * d14 + K(j) * cross,
            K(j - 1) * d34 + K_R(j - 1) * d24,
        )
    if k % 2 == 1:
        return K(k) * d34 + K_R(k) * d24
    if not d34.is_zero:
        raise AlgebraError("two-boundary image D34 should vanish on the chart")
    return d14 + d24 * t1.invert_unit() * d13


# ----------------------------------------------------------------------
# enumeration of sequences and commutation classes


def enumerate_complete_sequences(word: BridgeWord) -> Iterator[tuple[int, ...]]:
    """Depth-first enumeration of all complete admissible sequences (over
    all interleavings of the blocks)."""
    word.require_rational_form()

    def rec(survivors: list[list[int]], prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        candidates = _candidates(word, survivors)
        if not candidates:
            yield prefix
            return
        for c in candidates:
            b = word.block_of(c)
            nxt = [list(s) for s in survivors]
            nxt[b].remove(c)
            yield from rec(nxt, prefix + (c,))

    yield from rec([word.block_chords(b) for b in range(word.k)], ())


def _candidates(word: BridgeWord, survivors: list[list[int]]) -> list[int]:
    """Currently pinchable crossings.

    Any survivor of the first block of a multi-block word may be pinched
    while more than one remains; later blocks never pinch their first
    survivor, middle blocks stop at two survivors and the last block at
    one.  A single-block word follows the last-block rule (its first
    crossing survives and sweeps the terminal circle), which keeps the
    class census at the Catalan number C_{n-1}.
    """
    out = []
    k = word.k
    for b, block in enumerate(survivors):
        if b == 0 and k > 1:
            if len(block) > 1:
                out.extend(block)
        elif b == k - 1:
            if len(block) > 1:
                out.extend(block[1:])
        else:
            if len(block) > 2:
                out.extend(block[1:])
    return out


def _neighbor_sequences(word: BridgeWord, seq: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Sequences one commutation move away: adjacent transpositions of
    pinches that are not linked-list neighbors at the earlier moment, and
    the swap of a block's final pinch for the other available candidate."""
    # transpositions
    for r in range(len(seq) - 1):
        c, d = seq[r], seq[r + 1]
        bc, bd = word.block_of(c), word.block_of(d)
        if bc != bd:
            yield seq[:r] + (d, c) + seq[r + 2 :]
            continue
        block = [x for x in word.block_chords(bc) if x not in set(seq[:r])]
        i, j = block.index(c), block.index(d)
        if abs(i - j) >= 2:
            yield seq[:r] + (d, c) + seq[r + 2 :]
    # final-pinch swaps: the last pinch of a block may pick the other
    # available candidate (it emits a side or an already-present diagonal
    # either way, so the triangulation tuple is unchanged)
    last_of_block: dict[int, int] = {}
    for r, c in enumerate(seq):
        last_of_block[word.block_of(c)] = r
    for b, r in last_of_block.items():
        done = set(seq[:r])
        survivors = [
            [x for x in word.block_chords(bb) if x not in done] for bb in range(word.k)
        ]
        pool = [c for c in _candidates(word, survivors) if word.block_of(c) == b]
        for c in pool:
            if c != seq[r]:
                candidate = seq[:r] + (c,) + seq[r + 1 :]
                try:
                    sequence_to_triangulations(word, candidate)
                except InputError:
                    continue
                yield candidate


def commutation_equivalent(
    word: BridgeWord,
    s1: PinchSequence | Sequence[int],
    s2: PinchSequence | Sequence[int],
    cap: int = 200000,
) -> bool:
    """Reachability under commutation moves, computed by orbit search."""
    a = s1.chords if isinstance(s1, PinchSequence) else tuple(s1)
    b = s2.chords if isinstance(s2, PinchSequence) else tuple(s2)
    sequence_to_triangulations(word, a)
    sequence_to_triangulations(word, b)
    if a == b:
        return True
    seen = {a}
    frontier = [a]
    while frontier:
        nxt = []
        for s in frontier:
            for t in _neighbor_sequences(word, s):
                if t == b:
                    return True
                if t not in seen:
                    if len(seen) >= cap:
                        raise BudgetError("commutation orbit exceeds the search cap")
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return False


def canonical_sequence(
    word: BridgeWord, seq: PinchSequence | Sequence[int], cap: int = 200000
) -> tuple[int, ...]:
    """Lexicographically least sequence in the commutation orbit."""
    a = seq.chords if isinstance(seq, PinchSequence) else tuple(seq)
    sequence_to_triangulations(word, a)
    seen = {a}
    frontier = [a]
    while frontier:
        nxt = []
        for s in frontier:
            for t in _neighbor_sequences(word, s):
                if t not in seen:
                    if len(seen) >= cap:
                        raise BudgetError("commutation orbit exceeds the search cap")
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return min(seen)


# ----------------------------------------------------------------------
# filling classes


def representative_sequence(
    word: BridgeWord, target: Sequence[Triangulation]
) -> tuple[int, ...]:
    """A complete admissible sequence whose emitted diagonals reproduce the
    given per-block triangulations (blocks pinched left to right)."""
    word.require_rational_form()
    models = block_models(word)
    out: list[int] = []
    for b in range(word.k):
        t = target[b]
        if t.n != models[b].size:
            raise InputError("triangulation size mismatch")
        block = word.block_chords(b)
        labeled = block if (word.k > 1 and b == 0) else block[1:]
        vertex_of = {c: i + 1 for i, c in enumerate(labeled)}
        active = list(range(1, models[b].size + 1))
        survivors = list(block)
        allowed = set(t.diagonals)
        while True:
            if word.k > 1 and b == 0:
                candidates = survivors if len(survivors) > 1 else []
            elif b == word.k - 1:
                candidates = survivors[1:] if len(survivors) > 1 else []
            else:
                candidates = survivors[1:] if len(survivors) > 2 else []
            if not candidates:
                break
            chosen = None
            for c in candidates:
                w = vertex_of[c]
                i = active.index(w)
                left, right = active[i - 1], active[(i + 1) % len(active)]
                edge = (left, right) if left < right else (right, left)
                if is_side(models[b].size, edge) or edge in allowed:
                    chosen = (c, i)
                    break
            if chosen is None:
                raise AlgebraError(f"no pinch compatible with {t} in block {b}")
            c, i = chosen
            active.pop(i)
            survivors.remove(c)
            out.append(c)
    result = tuple(out)
    if sequence_to_triangulations(word, result) != tuple(target):
        raise AlgebraError("representative sequence does not reproduce the target")
    return result


@dataclass(frozen=True)
class FillingCensus:
    word: BridgeWord
    count: int
    per_block_counts: tuple[int, ...]
    representatives: tuple[tuple[int, ...], ...]


def catalan(n: int) -> int:
    from math import comb

    return comb(2 * n, n) // (n + 1)


def expected_filling_count(word: BridgeWord) -> int:
    if word.k == 1:
        return catalan(word.blocks[0] - 1)
    total = catalan(word.blocks[0] - 1)
    for n in word.blocks[1:-1]:
        total *= catalan(n - 2)
    return total * catalan(word.blocks[-1] - 1)


def enumerate_filling_classes(word: BridgeWord, budget: int = 100000) -> FillingCensus:
    """Distinct per-block triangulation tuples over all admissible complete
    sequences, each with one representative sequence."""
    word.require_rational_form()
    models = block_models(word)
    per_block = [len(triangulations(m.size)) for m in models]
    total = 1
    for c in per_block:
        total *= c
    if total > budget:
        raise BudgetError(f"{total} filling classes exceed the budget {budget}")
    reps = []
    for combo in itertools.product(*(triangulations(m.size) for m in models)):
        reps.append(representative_sequence(word, combo))
    return FillingCensus(word, total, tuple(per_block), tuple(reps))
