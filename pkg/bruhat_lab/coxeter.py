"""Coxeter systems, their elements and reduced words.

Two exact backends are available:

* ``TypeABackend`` realises ``A_n`` as the symmetric group on ``n + 1`` letters.
  Elements are one-line permutations and products follow
  ``(uv)(i) = u(v(i))``, so right multiplication by ``s_i`` swaps positions
  ``i`` and ``i + 1`` and left multiplication swaps the values ``i`` and
  ``i + 1``.
* ``RootLatticeBackend`` realises any crystallographic Coxeter matrix through
  the integer action on simple-root coordinates.

Generators are numbered from 1.
"""

import abc
import enum
import itertools
import math
from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from .config import SystemDescriptor
from .errors import (
    ConsistencyError,
    ElementParseError,
    InvalidSystemError,
    NotReducedError,
)

INFINITY = 0
"""Coxeter matrix entry standing for an infinite order."""

CRYSTALLOGRAPHIC_ORDERS = frozenset({2, 3, 4, 6, INFINITY})

# (a_ij, a_ji) for i < j, keyed by m_ij
_CARTAN_PAIRS: dict[int, tuple[int, int]] = {
    2: (0, 0),
    3: (-1, -1),
    4: (-1, -2),
    6: (-1, -3),
    INFINITY: (-2, -2),
}

Canonical = tuple[int, ...] | tuple[tuple[int, ...], ...]


class Side(str, enum.Enum):
    """Side of a multiplication, descent or coset."""

    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True, order=True)
class Element:
    """A group element in canonical form with its cached length.

    Elements order by ``(length, canonical)``, which is the deterministic order
    used for every serialized listing.
    """

    length: int
    canonical: Canonical
    label: str = field(compare=False)

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Word:
    """A finite sequence of generators."""

    letters: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return " ".join(str(letter) for letter in self.letters)

    def delete(self, index: int) -> "Word":
        """Return the word with the letter at ``index`` removed."""
        return Word(self.letters[:index] + self.letters[index + 1 :])


@dataclass(frozen=True)
class CoxeterMatrix:
    """A symmetric Coxeter matrix, ``0`` standing for infinity."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        size = len(self.entries)
        if size < 1:
            raise InvalidSystemError("A Coxeter matrix needs at least one row")
        for i, row in enumerate(self.entries):
            if len(row) != size:
                raise InvalidSystemError(
                    f"Coxeter matrix row {i + 1} has {len(row)} entries, expected {size}",
                )
        for i, j in itertools.product(range(size), repeat=2):
            value = self.entries[i][j]
            if i == j:
                if value != 1:
                    raise InvalidSystemError(
                        f"Diagonal entry m[{i + 1}][{j + 1}] = {value}, expected 1",
                    )
            elif value != self.entries[j][i]:
                raise InvalidSystemError(
                    f"Coxeter matrix is not symmetric: m[{i + 1}][{j + 1}] = {value} "
                    f"but m[{j + 1}][{i + 1}] = {self.entries[j][i]}",
                )
            elif value not in CRYSTALLOGRAPHIC_ORDERS:
                raise InvalidSystemError(
                    f"Entry m[{i + 1}][{j + 1}] = {value} is not crystallographic",
                    resolution="Use 2, 3, 4, 6 or 0 (infinity) off the diagonal.",
                )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "CoxeterMatrix":
        """Build a matrix from nested sequences."""
        return cls(tuple(tuple(int(value) for value in row) for row in rows))

    @classmethod
    def type_a(cls, rank: int) -> "CoxeterMatrix":
        """Return the Coxeter matrix of ``A_rank``."""
        return cls(
            tuple(
                tuple(
                    1 if i == j else 3 if abs(i - j) == 1 else 2 for j in range(rank)
                )
                for i in range(rank)
            ),
        )

    @property
    def rank(self) -> int:
        """Number of generators."""
        return len(self.entries)

    def cartan(self) -> tuple[tuple[int, ...], ...]:
        """Return the integer Cartan matrix realising this Coxeter matrix."""
        size = self.rank
        cartan = [[2 if i == j else 0 for j in range(size)] for i in range(size)]
        for i, j in itertools.combinations(range(size), 2):
            cartan[i][j], cartan[j][i] = _CARTAN_PAIRS[self.entries[i][j]]
        return tuple(tuple(row) for row in cartan)


class Backend(abc.ABC):
    """Exact arithmetic for the elements of a Coxeter group."""

    name: str
    rank: int

    @abc.abstractmethod
    def identity(self) -> Element:
        """Return the identity element."""

    @abc.abstractmethod
    def generator(self, index: int) -> Element:
        """Return the simple reflection ``s_index``."""

    @abc.abstractmethod
    def product(self, u: Element, v: Element) -> Element:
        """Return ``uv``."""

    @abc.abstractmethod
    def inverse(self, w: Element) -> Element:
        """Return ``w^-1``."""

    @abc.abstractmethod
    def right_descents(self, w: Element) -> frozenset[int]:
        """Return the indices of ``D_R(w)``."""

    @abc.abstractmethod
    def left_descents(self, w: Element) -> frozenset[int]:
        """Return the indices of ``D_L(w)``."""

    @abc.abstractmethod
    def is_reflection(self, x: Element) -> bool:
        """Return whether ``x`` is conjugate to a simple reflection."""

    @abc.abstractmethod
    def parse_one_line(self, literal: str) -> Element:
        """Parse a one-line literal."""

    @abc.abstractmethod
    def elements(self, limit: int) -> list[Element]:
        """Return every group element, sorted, refusing groups above ``limit``."""


class TypeABackend(Backend):
    """The symmetric group ``S_{rank+1}`` acting on positions."""

    name = "TypeA"

    def __init__(self, rank: int) -> None:
        self.rank = rank
        self.degree = rank + 1

    def _make(self, perm: tuple[int, ...]) -> Element:
        length = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        return Element(length, perm, self.format_one_line(perm))

    def format_one_line(self, perm: tuple[int, ...]) -> str:
        """Return the one-line literal, comma separated beyond nine letters."""
        if self.degree <= 9:  # noqa: PLR2004 (single digits)
            return "".join(str(value) for value in perm)
        return ",".join(str(value) for value in perm)

    def identity(self) -> Element:
        return self._make(tuple(range(1, self.degree + 1)))

    def generator(self, index: int) -> Element:
        perm = list(range(1, self.degree + 1))
        perm[index - 1], perm[index] = perm[index], perm[index - 1]
        return self._make(tuple(perm))

    def product(self, u: Element, v: Element) -> Element:
        left: tuple[int, ...] = u.canonical  # type: ignore[assignment]
        right: tuple[int, ...] = v.canonical  # type: ignore[assignment]
        return self._make(tuple(left[value - 1] for value in right))

    def inverse(self, w: Element) -> Element:
        perm: tuple[int, ...] = w.canonical  # type: ignore[assignment]
        inverse = [0] * self.degree
        for position, value in enumerate(perm, start=1):
            inverse[value - 1] = position
        return Element(w.length, tuple(inverse), self.format_one_line(tuple(inverse)))

    def right_descents(self, w: Element) -> frozenset[int]:
        perm: tuple[int, ...] = w.canonical  # type: ignore[assignment]
        return frozenset(i for i in range(1, self.degree) if perm[i - 1] > perm[i])

    def left_descents(self, w: Element) -> frozenset[int]:
        return self.right_descents(self.inverse(w))

    def is_reflection(self, x: Element) -> bool:
        perm: tuple[int, ...] = x.canonical  # type: ignore[assignment]
        moved = [i for i, value in enumerate(perm, start=1) if i != value]
        return len(moved) == 2  # noqa: PLR2004 (a transposition moves two letters)

    def parse_one_line(self, literal: str) -> Element:
        parts = literal.split(",") if "," in literal else list(literal)
        try:
            perm = tuple(int(part) for part in parts)
        except ValueError as err:
            raise ElementParseError(f"{literal!r} is not a one-line permutation") from err
        if sorted(perm) != list(range(1, self.degree + 1)):
            raise ElementParseError(
                f"{literal!r} is not a permutation of 1..{self.degree}",
            )
        return self._make(perm)

    def elements(self, limit: int) -> list[Element]:
        size = math.factorial(self.degree)
        if size > limit:
            raise InvalidSystemError(
                f"S_{self.degree} has {size} elements, above the limit of {limit}",
            )
        return sorted(
            self._make(perm)
            for perm in itertools.permutations(range(1, self.degree + 1))
        )


class RootLatticeBackend(Backend):
    """Integer action on simple-root coordinates.

    Column ``j`` of an element's matrix holds the coordinates of ``w(alpha_j)``
    and ``s_i(alpha_j) = alpha_j - a_ij alpha_i``. Entries are unbounded Python
    integers.
    """

    name = "RootLattice"

    def __init__(self, cartan: tuple[tuple[int, ...], ...]) -> None:
        self.cartan = cartan
        self.rank = len(cartan)
        cartan_array = np.array(cartan, dtype=object)
        self._generators: list[npt.NDArray[np.object_]] = []
        for i in range(self.rank):
            matrix = self._identity_array()
            matrix[i, :] -= cartan_array[i, :]
            self._generators.append(matrix)

    def _strip(self, matrix: npt.NDArray[np.object_]) -> list[int]:
        """Strip smallest right descents until the identity is reached.

        Returns the stripped letters in stripping order, so the element equals
        the product of the reversed list.
        """
        letters: list[int] = []
        current = matrix
        while True:
            descents = self._column_descents(current)
            if not descents:
                return letters
            letter = min(descents)
            letters.append(letter)
            current = current @ self._generators[letter - 1]

    def _column_descents(self, matrix: npt.NDArray[np.object_]) -> list[int]:
        descents: list[int] = []
        for j in range(self.rank):
            column = matrix[:, j]
            positive = bool(np.all(column >= 0))
            negative = bool(np.all(column <= 0))
            if not (positive or negative):
                raise ConsistencyError(
                    f"w(alpha_{j + 1}) = {column.tolist()} is neither positive "
                    "nor negative",
                )
            if negative:
                descents.append(j + 1)
        return descents

    def _make(self, matrix: npt.NDArray[np.object_]) -> Element:
        letters = self._strip(matrix)
        label = " ".join(str(letter) for letter in reversed(letters)) or "e"
        canonical = tuple(tuple(int(value) for value in row) for row in matrix)
        return Element(len(letters), canonical, label)

    @staticmethod
    def _array(w: Element) -> npt.NDArray[np.object_]:
        return np.array(w.canonical, dtype=object)

    def _identity_array(self) -> npt.NDArray[np.object_]:
        return np.array(
            [[int(i == j) for j in range(self.rank)] for i in range(self.rank)],
            dtype=object,
        )

    def identity(self) -> Element:
        return self._make(self._identity_array())

    def generator(self, index: int) -> Element:
        return self._make(self._generators[index - 1])

    def product(self, u: Element, v: Element) -> Element:
        return self._make(self._array(u) @ self._array(v))

    def inverse(self, w: Element) -> Element:
        matrix = self._identity_array()
        for letter in self._strip(self._array(w)):
            matrix = matrix @ self._generators[letter - 1]
        return self._make(matrix)

    def right_descents(self, w: Element) -> frozenset[int]:
        return frozenset(self._column_descents(self._array(w)))

    def left_descents(self, w: Element) -> frozenset[int]:
        return self.right_descents(self.inverse(w))

    def is_reflection(self, x: Element) -> bool:
        if x.length % 2 == 0:
            return False
        shifted = self._array(x) - self._identity_array()
        rows = [row for row in shifted if any(row)]
        # rank one: every nonzero row is a multiple of the first
        return bool(rows) and all(
            np.array_equal(np.outer(row, rows[0]), np.outer(rows[0], row))
            for row in rows[1:]
        )

    def parse_one_line(self, literal: str) -> Element:
        raise ElementParseError(
            f"One-line literal {literal!r} needs a type A system",
            resolution="Give root-lattice elements as words, e.g. '2 1 3 2'.",
        )

    def elements(self, limit: int) -> list[Element]:
        seen = {self.identity()}
        queue = deque(seen)
        generators = [self.generator(i) for i in range(1, self.rank + 1)]
        while queue:
            current = queue.popleft()
            for generator in generators:
                candidate = self.product(current, generator)
                if candidate in seen:
                    continue
                if len(seen) >= limit:
                    raise InvalidSystemError(
                        f"Group has more than {limit} elements (or is infinite)",
                    )
                seen.add(candidate)
                queue.append(candidate)
        return sorted(seen)


@dataclass(frozen=True)
class CoxeterSystem:
    """A Coxeter system ``(W, S)`` with an exact backend.

    Immutable after construction, so a single instance can be shared by
    concurrent scans.
    """

    matrix: CoxeterMatrix
    backend: Backend = field(compare=False)

    @property
    def rank(self) -> int:
        """Number of simple reflections."""
        return self.matrix.rank

    @property
    def generators(self) -> tuple[int, ...]:
        """The generator indices ``1..rank``."""
        return tuple(range(1, self.rank + 1))

    def __str__(self) -> str:
        if isinstance(self.backend, TypeABackend):
            return f"A{self.rank}"
        return f"W({[list(row) for row in self.matrix.entries]})"

    def check_generators(self, letters: Iterable[int]) -> None:
        """Raise if any letter is outside ``1..rank``."""
        for letter in letters:
            if not 1 <= letter <= self.rank:
                raise ElementParseError(
                    f"Generator s{letter} does not exist in a rank {self.rank} system",
                )

    @property
    def identity(self) -> Element:
        """The identity element ``e``."""
        return self.backend.identity()

    def generator(self, index: int) -> Element:
        """Return ``s_index``."""
        self.check_generators([index])
        return self.backend.generator(index)

    def length(self, w: Element) -> int:
        """Return ``l(w)``."""
        return w.length

    def multiply(self, u: Element, v: Element) -> Element:
        """Return the product ``uv``."""
        return self.backend.product(u, v)

    def left_multiply(self, s: int, w: Element) -> Element:
        """Return ``s_s w``."""
        return self.backend.product(self.backend.generator(s), w)

    def right_multiply(self, w: Element, s: int) -> Element:
        """Return ``w s_s``."""
        return self.backend.product(w, self.backend.generator(s))

    def inverse(self, w: Element) -> Element:
        """Return ``w^-1``."""
        return self.backend.inverse(w)

    def evaluate(self, word: Word | Iterable[int]) -> Element:
        """Return the product of the letters of ``word``."""
        letters = tuple(word)
        self.check_generators(letters)
        result = self.identity
        for letter in letters:
            result = self.right_multiply(result, letter)
        return result

    def descents(self, w: Element, side: Side) -> frozenset[int]:
        """Return ``D_L(w)`` or ``D_R(w)`` as generator indices."""
        if side is Side.LEFT:
            return self.backend.left_descents(w)
        return self.backend.right_descents(w)

    def reduced_word(self, w: Element) -> Word:
        """Return the reduced word built from smallest left descents first."""
        letters: list[int] = []
        current = w
        while current.length:
            letter = min(self.backend.left_descents(current))
            letters.append(letter)
            current = self.left_multiply(letter, current)
        return Word(tuple(letters))

    def reduced_words(self, w: Element, limit: int = 10_000) -> list[Word]:
        """Return every reduced word of ``w`` by backtracking, sorted."""
        words: list[Word] = []

        def _extend(current: Element, suffix: tuple[int, ...]) -> None:
            if len(words) >= limit:
                return
            if not current.length:
                words.append(Word(suffix))
                return
            for letter in sorted(self.backend.right_descents(current)):
                _extend(self.right_multiply(current, letter), (letter, *suffix))

        _extend(w, ())
        return sorted(words, key=lambda word: word.letters)

    def is_reduced(self, word: Word) -> bool:
        """Return whether ``word`` has length ``l`` of its evaluation."""
        return len(word) == self.evaluate(word).length

    def inversions(self, word: Word) -> list[Element]:
        """Return ``t_i = s_1 ... s_(i-1) s_i s_(i-1) ... s_1`` for a reduced word."""
        if not self.is_reduced(word):
            raise NotReducedError(f"Word '{word}' is not reduced")
        reflections: list[Element] = []
        prefix = self.identity
        for letter in word:
            generator = self.backend.generator(letter)
            reflections.append(
                self.multiply(self.multiply(prefix, generator), self.inverse(prefix)),
            )
            prefix = self.multiply(prefix, generator)
        return reflections

    def left_inversion_set(self, w: Element) -> frozenset[Element]:
        """Return ``T_L(w)``."""
        return frozenset(self.inversions(self.reduced_word(w)))

    def right_inversion_set(self, w: Element) -> frozenset[Element]:
        """Return ``T_R(w)``, which equals ``T_L(w^-1)``."""
        return self.left_inversion_set(self.inverse(w))

    def is_reflection(self, x: Element) -> bool:
        """Return whether ``x`` lies in ``T``."""
        return self.backend.is_reflection(x)

    def parabolic_decompose(
        self,
        w: Element,
        subset: Iterable[int],
        side: Side,
    ) -> tuple[Element, Element]:
        """Split ``w`` along the parabolic subgroup ``W_J``.

        With ``Side.LEFT`` returns ``(w_J, w^J)`` with ``w = w_J w^J`` and
        ``w^J`` minimal in ``W_J w``. With ``Side.RIGHT`` returns ``(w^J, w_J)``
        with ``w = w^J w_J`` and ``w^J`` minimal in ``w W_J``. In both cases the
        pair is in product order and the lengths add up.
        """
        generators = frozenset(subset)
        self.check_generators(generators)
        letters: list[int] = []
        current = w
        while True:
            available = self.descents(current, side) & generators
            if not available:
                break
            letter = min(available)
            letters.append(letter)
            if side is Side.LEFT:
                current = self.left_multiply(letter, current)
            else:
                current = self.right_multiply(current, letter)
        if side is Side.LEFT:
            return self.evaluate(letters), current
        return current, self.evaluate(reversed(letters))

    def weak_leq(self, u: Element, w: Element, side: Side) -> bool:
        """Compare in left (``T_R`` inclusion) or right (``T_L`` inclusion) weak order."""
        if u.length > w.length:
            return False
        if side is Side.LEFT:
            return self.right_inversion_set(u) <= self.right_inversion_set(w)
        return self.left_inversion_set(u) <= self.left_inversion_set(w)

    def support(self, w: Element) -> frozenset[int]:
        """Return ``S(w)``, the letters of any reduced word of ``w``."""
        return frozenset(self.reduced_word(w).letters)

    def parabolic_subgroup(self, subset: Iterable[int]) -> list[Element]:
        """Return the elements of ``W_I``; ``I`` must generate a finite group."""
        generators = sorted(frozenset(subset))
        self.check_generators(generators)
        seen = {self.identity}
        queue = deque(seen)
        while queue:
            current = queue.popleft()
            for letter in generators:
                candidate = self.right_multiply(current, letter)
                if candidate not in seen:
                    seen.add(candidate)
                    queue.append(candidate)
        return sorted(seen)

    def elements(self, limit: int = 5040) -> list[Element]:
        """Return every element of a finite group sorted by (length, canonical)."""
        return self.backend.elements(limit)

    def parse_element(self, literal: str) -> Element:
        """Parse ``e``, a one-line literal (type A) or a space separated word."""
        text = literal.strip()
        if text in ("e", ""):
            return self.identity
        if " " not in text and ("," in text or (text.isdigit() and len(text) > 1)):
            return self.backend.parse_one_line(text)
        try:
            letters = tuple(int(token.lstrip("s")) for token in text.split())
        except ValueError as err:
            raise ElementParseError(f"{literal!r} is not an element literal") from err
        return self.evaluate(letters)

    def format(self, w: Element) -> str:
        """Return the literal for ``w``."""
        return str(w)


def make_system(descriptor: SystemDescriptor) -> CoxeterSystem:
    """Build a Coxeter system from a descriptor."""
    if descriptor.coxeter_matrix is not None:
        matrix = CoxeterMatrix.from_rows(descriptor.coxeter_matrix)
        return CoxeterSystem(matrix, RootLatticeBackend(matrix.cartan()))
    rank = descriptor.rank or 0
    return CoxeterSystem(CoxeterMatrix.type_a(rank), TypeABackend(rank))
