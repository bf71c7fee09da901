"""Truncated two-mode Fock spaces and dense operator algebra.

The occupation basis |n1 n2> is truncated rectangularly: independent caps
per mode, ordered row-major in (n1, n2).  Creation past a cap maps to the
zero vector; all truncation artifacts are confined to edge columns and are
handled by evaluating residuals on interior windows.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Literal

import numpy as np

State = tuple[int, int]


class SpaceMismatchError(ValueError):
    """Two operators over different spaces were combined."""


class EmptyWindowError(ValueError):
    """A residual was requested over a window with no columns."""


class SingularEvaluationError(ValueError):
    """A diagonal function was evaluated on a declared singular point."""


class SingularPolicy(Enum):
    ZERO = "zero"
    ERROR = "error"
    LIMIT = "limit"


@dataclass(frozen=True)
class FockSpace:
    """Rectangular truncation of the two-mode occupation basis."""

    n1_max: int
    n2_max: int

    def __post_init__(self) -> None:
        if self.n1_max < 0 or self.n2_max < 0:
            raise ValueError(f"occupation caps must be >= 0, got ({self.n1_max}, {self.n2_max})")

    @property
    def dimension(self) -> int:
        return (self.n1_max + 1) * (self.n2_max + 1)

    @property
    def basis(self) -> tuple[State, ...]:
        return tuple(
            (n1, n2)
            for n1 in range(self.n1_max + 1)
            for n2 in range(self.n2_max + 1)
        )

    def index(self, n1: int, n2: int) -> int:
        if not self.contains(n1, n2):
            raise ValueError(f"state ({n1}, {n2}) outside space with caps ({self.n1_max}, {self.n2_max})")
        return n1 * (self.n2_max + 1) + n2

    def state(self, i: int) -> State:
        n1, n2 = divmod(i, self.n2_max + 1)
        if not self.contains(n1, n2):
            raise ValueError(f"index {i} out of range for dimension {self.dimension}")
        return (n1, n2)

    def contains(self, n1: int, n2: int) -> bool:
        return 0 <= n1 <= self.n1_max and 0 <= n2 <= self.n2_max


def build_space(n1_max: int, n2_max: int) -> FockSpace:
    """Build the truncated basis with caps (n1_max, n2_max)."""
    return FockSpace(n1_max, n2_max)


@dataclass(frozen=True)
class LinOp:
    """Dense complex matrix over a FockSpace (or compatible) basis.

    Values are immutable after construction; all combinators return new
    operators.
    """

    space: object
    matrix: np.ndarray

    def __post_init__(self) -> None:
        dim = self.space.dimension
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.shape != (dim, dim):
            raise ValueError(f"matrix shape {mat.shape} does not match dimension {dim}")
        mat = mat.copy()
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    def _check(self, other: "LinOp") -> None:
        if self.space != other.space:
            raise SpaceMismatchError("operators live on different spaces")

    def adjoint(self) -> "LinOp":
        return LinOp(self.space, self.matrix.conj().T)

    def __matmul__(self, other: "LinOp") -> "LinOp":
        self._check(other)
        return LinOp(self.space, self.matrix @ other.matrix)

    def __add__(self, other: "LinOp") -> "LinOp":
        self._check(other)
        return LinOp(self.space, self.matrix + other.matrix)

    def __sub__(self, other: "LinOp") -> "LinOp":
        self._check(other)
        return LinOp(self.space, self.matrix - other.matrix)

    def __mul__(self, c: complex) -> "LinOp":
        return LinOp(self.space, self.matrix * c)

    __rmul__ = __mul__

    def __neg__(self) -> "LinOp":
        return LinOp(self.space, -self.matrix)

    @staticmethod
    def zeros(space) -> "LinOp":
        return LinOp(space, np.zeros((space.dimension, space.dimension), dtype=complex))

    @staticmethod
    def identity(space) -> "LinOp":
        return LinOp(space, np.eye(space.dimension, dtype=complex))


def compose(a: LinOp, b: LinOp) -> LinOp:
    return a @ b


def add(a: LinOp, b: LinOp) -> LinOp:
    return a + b


def scale(c: complex, a: LinOp) -> LinOp:
    return c * a


def adjoint(a: LinOp) -> LinOp:
    return a.adjoint()


def commutator(a: LinOp, b: LinOp) -> LinOp:
    return a @ b - b @ a


def anticommutator(a: LinOp, b: LinOp) -> LinOp:
    return a @ b + b @ a


LadderKind = Literal["annihilate", "create", "number"]


def ladder(space: FockSpace, mode: int, kind: LadderKind) -> LinOp:
    """Mode ladder/number operator in the occupation basis.

    a|n> = sqrt(n)|n-1>, a+|n> = sqrt(n+1)|n+1>; creation out of the
    truncation edge maps to the zero vector.
    """
    if mode not in (1, 2):
        raise ValueError(f"mode must be 1 or 2, got {mode}")
    if kind not in ("annihilate", "create", "number"):
        raise ValueError(f"unknown ladder kind {kind!r}")
    mat = np.zeros((space.dimension, space.dimension), dtype=complex)
    for i, (n1, n2) in enumerate(space.basis):
        n = n1 if mode == 1 else n2
        if kind == "number":
            mat[i, i] = n
        elif kind == "annihilate":
            if n >= 1:
                tgt = (n1 - 1, n2) if mode == 1 else (n1, n2 - 1)
                mat[space.index(*tgt), i] = np.sqrt(n)
        else:
            tgt = (n1 + 1, n2) if mode == 1 else (n1, n2 + 1)
            if space.contains(*tgt):
                mat[space.index(*tgt), i] = np.sqrt(n + 1)
    return LinOp(space, mat)


def diag_fn(
    space: FockSpace,
    f: Callable[[int, int], complex],
    policy: SingularPolicy = SingularPolicy.ERROR,
    singular: Iterable[State] = (),
    limit_values: dict[State, complex] | None = None,
) -> LinOp:
    """Diagonal operator with entries f(n1, n2).

    Points in `singular` are not passed to f; the policy decides the entry:
    ZERO writes 0, ERROR raises, LIMIT takes the caller-supplied value.
    """
    singular_set = frozenset(singular)
    mat = np.zeros((space.dimension, space.dimension), dtype=complex)
    for i, (n1, n2) in enumerate(space.basis):
        if (n1, n2) in singular_set:
            if policy is SingularPolicy.ZERO:
                continue
            if policy is SingularPolicy.ERROR:
                raise SingularEvaluationError(f"f evaluated on singular point ({n1}, {n2})")
            if limit_values is None or (n1, n2) not in limit_values:
                raise SingularEvaluationError(f"no limit value supplied for singular point ({n1}, {n2})")
            mat[i, i] = limit_values[(n1, n2)]
        else:
            mat[i, i] = f(n1, n2)
    return LinOp(space, mat)


@dataclass(frozen=True)
class Window:
    """Subset of basis columns on which operators are compared."""

    space: object
    cols: tuple[int, ...]
    label: str = "custom"

    @staticmethod
    def full(space) -> "Window":
        return Window(space, tuple(range(space.dimension)), "full")

    @staticmethod
    def margin(space: FockSpace, d: int) -> "Window":
        """Columns at least d below both truncation caps; margin(0) = full."""
        cols = tuple(
            i
            for i, (n1, n2) in enumerate(space.basis)
            if n1 <= space.n1_max - d and n2 <= space.n2_max - d
        )
        return Window(space, cols, f"margin({d})")

    @staticmethod
    def from_states(space: FockSpace, states: Iterable[State], label: str = "states") -> "Window":
        return Window(space, tuple(space.index(*s) for s in states), label)

    @staticmethod
    def union(*windows: "Window") -> "Window":
        if not windows:
            raise EmptyWindowError("union of no windows")
        space = windows[0].space
        cols: set[int] = set()
        for w in windows:
            if w.space != space:
                raise SpaceMismatchError("windows live on different spaces")
            cols.update(w.cols)
        return Window(space, tuple(sorted(cols)), "union")


def window_residual(a: LinOp, b: LinOp, w: Window) -> float:
    """Max over window columns of the 2-norm of (a - b) applied to the basis state."""
    if a.space != b.space:
        raise SpaceMismatchError("operators live on different spaces")
    if not w.cols:
        raise EmptyWindowError(f"window {w.label!r} has no columns")
    diff = a.matrix - b.matrix
    sub = diff[:, list(w.cols)]
    return float(np.max(np.sqrt(np.sum(np.abs(sub) ** 2, axis=0))))


@dataclass(frozen=True)
class SectorBasis:
    """Orbit of the ladder step inside the truncated basis.

    SUM(k, l) sectors conserve l*n1 + k*n2 under the step (n1+k, n2-l);
    DIFF(k, l) sectors conserve l*n1 - k*n2 under the step (n1+k, n2+l).
    For k > 1 the step also fixes n1 mod k, so two sectors may share the
    conserved value; members always form one contiguous chain.
    """

    space: FockSpace
    kind: Literal["SUM", "DIFF"]
    k: int
    l: int
    value: int
    members: tuple[State, ...] = field(repr=False)

    @property
    def contained(self) -> bool:
        """True when the full infinite-lattice chain lies inside the caps.

        DIFF chains are infinite upward and are never contained.
        """
        if self.kind != "SUM":
            return False
        n1_lo, _ = self.members[0]
        _, n2_hi = self.members[-1]
        return n1_lo < self.k and n2_hi < self.l

    def window(self) -> Window:
        return Window.from_states(self.space, self.members, f"{self.kind}({self.k},{self.l})={self.value}")


def sectors(space: FockSpace, kind: Literal["SUM", "DIFF"], k: int = 1, l: int = 1) -> list[SectorBasis]:
    """Partition the basis into ladder-step orbits, each sorted by n1."""
    if k < 1 or l < 1:
        raise ValueError(f"step orders must be >= 1, got ({k}, {l})")
    if kind not in ("SUM", "DIFF"):
        raise ValueError(f"unknown sector kind {kind!r}")
    step = (k, -l) if kind == "SUM" else (k, l)
    seen: set[State] = set()
    out: list[SectorBasis] = []
    for start in space.basis:
        if start in seen:
            continue
        prev = (start[0] - step[0], start[1] - step[1])
        if space.contains(*prev):
            continue  # not a chain start within the box
        chain = [start]
        while True:
            nxt = (chain[-1][0] + step[0], chain[-1][1] + step[1])
            if not space.contains(*nxt):
                break
            chain.append(nxt)
        seen.update(chain)
        n1, n2 = start
        value = l * n1 + k * n2 if kind == "SUM" else l * n1 - k * n2
        out.append(SectorBasis(space, kind, k, l, value, tuple(chain)))
    out.sort(key=lambda s: (s.value, s.members[0]))
    return out
