"""Integer chain complexes and finitely presented groups.

Homology of a chain-level model of the glued surface via Smith normal
form, a solver for the glueing Mayer-Vietoris sequence, and a bounded
Tietze simplifier that certifies triviality of a group presentation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional, Sequence, Union

from .linalg import mat_mul_int, rank_of, smith_normal_form

MatrixZ = list[list[int]]
Word = tuple[int, ...]

AMBIGUOUS = "AMBIGUOUS"


def _check_matrix(mat: Sequence[Sequence[int]], nrows: int, ncols: int,
                  what: str) -> MatrixZ:
    if len(mat) != nrows:
        raise ValueError(f"{what}: expected {nrows} rows, got {len(mat)}")
    out = []
    for row in mat:
        if len(row) != ncols:
            raise ValueError(f"{what}: expected {ncols} columns, got {len(row)}")
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool):
                raise ValueError(f"{what}: entries must be integers")
        out.append(list(row))
    return out


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group: free rank plus torsion
    coefficients in a divisibility chain d1 | d2 | ..., each >= 2."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        object.__setattr__(self, "torsion", tuple(self.torsion))
        prev = None
        for d in self.torsion:
            if not isinstance(d, int) or d < 2:
                raise ValueError("torsion coefficients must be integers >= 2")
            if prev is not None and d % prev != 0:
                raise ValueError("torsion coefficients must form a divisibility chain")
            prev = d

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def describe(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def as_pair(self) -> list:
        return [self.free_rank, list(self.torsion)]

    @classmethod
    def from_pair(cls, pair: Sequence) -> "AbelianGroup":
        rank, torsion = pair
        return cls(rank, tuple(torsion))


class ChainComplexZ:
    """Chain complex of finitely generated free abelian groups.

    ranks[k] is the rank in degree k; boundaries[k] is the matrix of the
    boundary map from degree k+1 to degree k, acting on column vectors,
    so it has ranks[k] rows and ranks[k+1] columns.
    """

    def __init__(self, ranks: Sequence[int], boundaries: Sequence[Sequence[Sequence[int]]]):
        if not ranks:
            raise ValueError("a chain complex needs at least one degree")
        for r in ranks:
            if not isinstance(r, int) or r < 0:
                raise ValueError("ranks must be nonnegative integers")
        if len(boundaries) != len(ranks) - 1:
            raise ValueError("expected one boundary map per adjacent pair of degrees")
        self.ranks = list(ranks)
        self.boundaries = [
            _check_matrix(mat, ranks[k], ranks[k + 1], f"boundary into degree {k}")
            for k, mat in enumerate(boundaries)
        ]
        for k in range(len(self.boundaries) - 1):
            if min(ranks[k], ranks[k + 1], ranks[k + 2]) == 0:
                continue
            prod = mat_mul_int(self.boundaries[k], self.boundaries[k + 1])
            if any(any(row) for row in prod):
                raise ValueError("consecutive boundaries do not compose to zero")

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1


def homology(c: ChainComplexZ) -> list[AbelianGroup]:
    """Homology in every degree, torsion ordered by divisibility."""
    out = []
    for i in range(len(c.ranks)):
        if i == 0 or c.ranks[i] == 0 or c.ranks[i - 1] == 0:
            cycles = c.ranks[i]
        else:
            cycles = c.ranks[i] - rank_of(c.boundaries[i - 1], c.ranks[i])
        if i == c.top_degree or c.ranks[i] == 0 or c.ranks[i + 1] == 0:
            image_rank = 0
            torsion: tuple[int, ...] = ()
        else:
            snf = smith_normal_form(c.boundaries[i], c.ranks[i + 1])
            diag = [d for d in snf.diagonal if d != 0]
            image_rank = len(diag)
            torsion = tuple(d for d in diag if d > 1)
        out.append(AbelianGroup(cycles - image_rank, torsion))
    return out


# -- Mayer-Vietoris ------------------------------------------------------


@dataclass(frozen=True)
class MayerVietorisData:
    """Homology input for the pushout glueing a curve into a surface.

    Per degree i: the groups of the curve's two-sheeted cover (the space
    glued along), of the target curve, and of the smooth surface, plus
    the matrix of the pair of induced maps out of the cover, stacked as
    curve rows followed by surface rows.  Matrices describe the maps on
    the free parts only.
    """

    curve_cover: tuple[AbelianGroup, ...]
    curve: tuple[AbelianGroup, ...]
    surface: tuple[AbelianGroup, ...]
    maps: tuple[MatrixZ, ...] = field(hash=False)

    def __post_init__(self):
        n = len(self.curve_cover)
        if len(self.curve) != n or len(self.surface) != n or len(self.maps) != n:
            raise ValueError("all per-degree lists must have the same length")
        checked = []
        for i in range(n):
            nrows = self.curve[i].free_rank + self.surface[i].free_rank
            ncols = self.curve_cover[i].free_rank
            checked.append(_check_matrix(self.maps[i], nrows, ncols,
                                         f"map in degree {i}"))
        object.__setattr__(self, "maps", tuple(checked))

    @property
    def degrees(self) -> int:
        return len(self.curve_cover)


def _cokernel(mat: MatrixZ, nrows: int, ncols: int) -> AbelianGroup:
    if nrows == 0:
        return AbelianGroup(0)
    if ncols == 0:
        return AbelianGroup(nrows)
    snf = smith_normal_form(mat, ncols)
    diag = [d for d in snf.diagonal if d != 0]
    return AbelianGroup(nrows - len(diag), tuple(d for d in diag if d > 1))


def mayer_vietoris_solve(data: MayerVietorisData) -> list[Union[AbelianGroup, str]]:
    """Homology of the glued space in each degree, where exactness of
    the long sequence pins it down.

    Exactness squeezes the degree-i group between the cokernel of the
    degree-i map and the kernel of the map one degree below.  When that
    kernel is free the extension splits and the group is determined;
    torsion in the side terms leaves the matrices silent about part of
    the maps, so those degrees come back AMBIGUOUS instead of guessed.
    """
    out: list[Union[AbelianGroup, str]] = []
    for i in range(data.degrees):
        side_torsion = data.curve[i].torsion or data.surface[i].torsion
        if side_torsion:
            out.append(AMBIGUOUS)
            continue
        nrows = data.curve[i].free_rank + data.surface[i].free_rank
        ncols = data.curve_cover[i].free_rank
        coker = _cokernel(data.maps[i], nrows, ncols)
        if i == 0:
            kernel_rank = 0
        elif data.curve_cover[i - 1].torsion:
            out.append(AMBIGUOUS)
            continue
        else:
            below_cols = data.curve_cover[i - 1].free_rank
            kernel_rank = below_cols - rank_of(data.maps[i - 1], below_cols)
        out.append(AbelianGroup(coker.free_rank + kernel_rank, coker.torsion))
    return out


# -- group presentations -------------------------------------------------


def _free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for s in word:
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def _cyclic_reduce(word: Sequence[int]) -> Word:
    w = list(_free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def _invert(word: Sequence[int]) -> Word:
    return tuple(-s for s in reversed(word))


@dataclass(frozen=True)
class GroupPresentation:
    """Finite presentation: generator names and relator words given as
    sequences of signed 1-based generator indices."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("generator names must be distinct")
        rels = []
        for rel in self.relators:
            for s in rel:
                if not isinstance(s, int) or s == 0 or abs(s) > len(self.generators):
                    raise ValueError(f"relator index {s} out of range")
            rels.append(tuple(rel))
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def is_empty(self) -> bool:
        return not self.generators and not self.relators


def exponent_matrix(g: GroupPresentation) -> MatrixZ:
    """One row per relator, one column per generator, entries the signed
    occurrence counts."""
    rows = []
    for rel in g.relators:
        row = [0] * len(g.generators)
        for s in rel:
            row[abs(s) - 1] += 1 if s > 0 else -1
        rows.append(row)
    return rows


def abelianization(g: GroupPresentation) -> AbelianGroup:
    n = len(g.generators)
    rows = exponent_matrix(g)
    if not rows or n == 0:
        return AbelianGroup(n)
    snf = smith_normal_form(rows, n)
    diag = [d for d in snf.diagonal if d != 0]
    return AbelianGroup(n - len(diag), tuple(d for d in diag if d > 1))


def presentation_complex(g: GroupPresentation) -> ChainComplexZ:
    """Chain complex of the two-complex with one vertex, a loop per
    generator and a disk per relator."""
    n = len(g.generators)
    k = len(g.relators)
    d1 = [[0] * n]
    cols = exponent_matrix(g)
    d2 = [[cols[j][i] for j in range(k)] for i in range(n)]
    return ChainComplexZ([1, n, k], [d1, d2])


# -- Tietze simplification ----------------------------------------------


def _solve_single_occurrence(rel: Word, index: int) -> Optional[Word]:
    """If the generator occurs exactly once in rel, the word it equals."""
    spots = [p for p, s in enumerate(rel) if abs(s) == index]
    if len(spots) != 1:
        return None
    p = spots[0]
    u, v = rel[:p], rel[p + 1:]
    if rel[p] > 0:
        return _free_reduce(_invert(u) + _invert(v))
    return _free_reduce(v + u)


def _substitute(rel: Word, index: int, solution: Word) -> Word:
    out: list[int] = []
    for s in rel:
        if abs(s) != index:
            out.append(s)
        elif s > 0:
            out.extend(solution)
        else:
            out.extend(_invert(solution))
    return _free_reduce(tuple(out))


def _renumber(rel: Word, removed: int) -> Word:
    return tuple(s - 1 if s > removed else s + 1 if s < -removed else s
                 for s in rel)


def _best_product(relators: Sequence[Word]) -> Optional[dict]:
    """Shortest strict shortening of one relator by a cyclic conjugate
    of another (or its inverse); None when nothing shortens."""
    best = None
    for i, target in enumerate(relators):
        if not target:
            continue
        for j, source in enumerate(relators):
            if i == j or not source:
                continue
            for invert in (False, True):
                base = _invert(source) if invert else source
                for rot in range(len(base)):
                    conj = base[rot:] + base[:rot]
                    length = len(_free_reduce(target + conj))
                    if length >= len(target):
                        continue
                    key = (length, i, j, invert, rot)
                    if best is None or key < best:
                        best = key
    if best is None:
        return None
    length, i, j, invert, rot = best
    return {"op": "multiply", "target": i, "source": j,
            "invert": invert, "rotation": rot}


def _apply_step(generators: list[str], relators: list[Word], step: dict) -> None:
    """Apply one logged transformation in place, validating its
    preconditions; raises ValueError if the step does not fit."""
    op = step["op"]
    if op == "reduce":
        i = step["index"]
        reduced = _cyclic_reduce(relators[i])
        if reduced == relators[i]:
            raise ValueError("reduce step changes nothing")
        relators[i] = reduced
    elif op == "drop":
        i = step["index"]
        if relators[i]:
            raise ValueError("drop step on a nonempty relator")
        del relators[i]
    elif op == "multiply":
        i, j = step["target"], step["source"]
        if i == j:
            raise ValueError("multiply needs two distinct relators")
        base = _invert(relators[j]) if step["invert"] else relators[j]
        rot = step["rotation"]
        if not 0 <= rot < max(len(base), 1):
            raise ValueError("rotation out of range")
        conj = base[rot:] + base[:rot]
        product = _free_reduce(relators[i] + conj)
        if len(product) >= len(relators[i]):
            raise ValueError("multiply step does not shorten")
        relators[i] = product
    elif op == "eliminate":
        i = step["relator"]
        name = step["generator"]
        index = generators.index(name) + 1
        solution = _solve_single_occurrence(relators[i], index)
        if solution is None:
            raise ValueError("eliminate step needs a single occurrence")
        if tuple(step["solution"]) != solution:
            raise ValueError("logged solution does not match the relator")
        rest = [_substitute(rel, index, solution)
                for p, rel in enumerate(relators) if p != i]
        relators[:] = [_renumber(rel, index) for rel in rest]
        del generators[index - 1]
    else:
        raise ValueError(f"unknown transformation {op!r}")


def tietze_trivialize(g: GroupPresentation, budget: int = 1000) -> dict:
    """Bounded search for the empty presentation.

    Moves, tried in priority order: cyclic/free reduction, dropping an
    empty relator, eliminating a generator isolated by a relator, and
    shortening one relator by a conjugate of another.  Returns a status
    of TRIVIAL with a replayable step log, or UNKNOWN when the budget
    runs out or no move applies; never claims triviality it cannot
    certify.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    generators = list(g.generators)
    relators = list(g.relators)
    steps: list[dict] = []
    while len(steps) < budget:
        if not generators and not relators:
            return {"status": "TRIVIAL", "steps": steps}
        step = None
        for i, rel in enumerate(relators):
            if _cyclic_reduce(rel) != rel:
                step = {"op": "reduce", "index": i}
                break
        if step is None:
            for i, rel in enumerate(relators):
                if not rel:
                    step = {"op": "drop", "index": i}
                    break
        if step is None:
            candidates = sorted(range(len(relators)),
                                key=lambda i: (len(relators[i]), i))
            for i in candidates:
                for index in range(1, len(generators) + 1):
                    solution = _solve_single_occurrence(relators[i], index)
                    if solution is not None:
                        step = {"op": "eliminate", "relator": i,
                                "generator": generators[index - 1],
                                "solution": list(solution)}
                        break
                if step is not None:
                    break
        if step is None:
            step = _best_product(relators)
        if step is None:
            return {"status": "UNKNOWN", "steps": steps,
                    "reason": "no applicable transformation"}
        _apply_step(generators, relators, step)
        steps.append(step)
    if not generators and not relators:
        return {"status": "TRIVIAL", "steps": steps}
    return {"status": "UNKNOWN", "steps": steps, "reason": "budget exhausted"}


def replay_certificate(g: GroupPresentation, steps: Sequence[dict]) -> GroupPresentation:
    """Re-run a step log against the starting presentation, validating
    every move; the result is what the log actually proves."""
    generators = list(g.generators)
    relators = list(g.relators)
    for step in steps:
        _apply_step(generators, relators, dict(step))
    return GroupPresentation(tuple(generators), tuple(relators))


# -- shipped data --------------------------------------------------------


def _groups(pairs: Sequence[Sequence]) -> tuple[AbelianGroup, ...]:
    return tuple(AbelianGroup.from_pair(p) for p in pairs)


def load_topology_data(path: Optional[str] = None) -> dict:
    """Parse the bundled (or a user-supplied) topology data file into
    typed objects plus the raw expectations block."""
    if path is None:
        text = resources.files("godeaux.data").joinpath("topology.json").read_text()
    else:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    raw = json.loads(text)
    model = raw["glued_chain_model"]
    complex_ = ChainComplexZ(model["ranks"], model["boundaries"])
    mv = raw["mayer_vietoris"]
    data = MayerVietorisData(
        curve_cover=_groups(mv["curve_cover"]),
        curve=_groups(mv["curve"]),
        surface=_groups(mv["surface"]),
        maps=tuple(mv["maps"]),
    )
    pres = raw["presentation"]
    presentation = GroupPresentation(
        tuple(pres["generators"]),
        tuple(tuple(rel) for rel in pres["relators"]),
    )
    return {
        "chain_model": complex_,
        "cell_names": model.get("cell_names"),
        "mayer_vietoris": data,
        "presentation": presentation,
        "expected": raw.get("expected", {}),
    }
