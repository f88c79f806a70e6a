"""Lie algebras presented by structure constants over exact rationals.

A :class:`LieAlgebraSpec` fixes a total order on its generators; all PBW
normal forms elsewhere in the package are taken with respect to that order.
The Schrodinger algebra and its standard subalgebras are provided as
built-ins, and arbitrary algebras can be loaded from a small text format.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ._straighten import Kernel


class AlgebraError(ValueError):
    """Domain error: bad generator, non-closed subset, malformed bracket data."""


class AlgebraFileError(AlgebraError):
    """Syntax or consistency error in an algebra definition file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class GeneratorSymbol:
    """One generator: a name, its position in the fixed total order, its grading."""

    name: str
    index: int
    grading: int


def parse_rational(text: str) -> Fraction:
    """Parse a rational written as num/den (or a bare integer); floats rejected."""
    s = text.strip()
    if not s or any(c in s for c in ".eE "):
        raise AlgebraError(f"expected a rational like num/den, got {text!r}")
    num, sep, den = s.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise AlgebraError(f"expected a rational like num/den, got {text!r}") from exc


def rational_str(value: Fraction) -> str:
    """Canonical num/den rendering used in files, reports and JSON payloads."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


class LieAlgebraSpec:
    """A finite-dimensional Lie algebra with an ordered generator list.

    Brackets are stored once per unordered pair, for indices i < j, as sparse
    rational combinations of generators; the other orientation is obtained by
    antisymmetry, so antisymmetry holds structurally.  The Jacobi identity is
    *checked* (see :func:`check_jacobi`), never assumed.
    """

    def __init__(self, name, generators, brackets, distinguished=None):
        self.name = name
        self.generators = tuple(
            GeneratorSymbol(gname, i, int(grading))
            for i, (gname, grading) in enumerate(generators)
        )
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate generator names in {name!r}")
        self._index = {g.name: g.index for g in self.generators}
        n = len(self.generators)
        table = {}
        for (i, j), combo in brackets.items():
            if not (0 <= i < j < n):
                raise AlgebraError(f"bracket key ({i},{j}) is not an ordered pair")
            cleaned = {}
            for k, c in combo.items():
                if not 0 <= k < n:
                    raise AlgebraError(f"bracket ({i},{j}) names generator index {k}")
                c = Fraction(c)
                if c:
                    cleaned[k] = c
            if cleaned:
                table[(i, j)] = cleaned
        self.brackets = table
        self.distinguished = {
            key: frozenset(self._index[nm] for nm in members)
            for key, members in (distinguished or {}).items()
        }
        self.central = frozenset(
            i for i in range(n) if not any(i in pair for pair in table)
        )
        self._kernel = None

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def kernel(self) -> Kernel:
        """Straightening kernel for this algebra (built lazily, backend-selected)."""
        if self._kernel is None:
            # stored combos are [x_i, x_j] for i < j; the kernel consumes
            # [x_j, x_i], hence the sign flip
            rows = {
                (j, i): tuple(sorted((k, -c) for k, c in combo.items()))
                for (i, j), combo in self.brackets.items()
            }
            self._kernel = Kernel(self.n, rows, self.central)
        return self._kernel

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise AlgebraError(f"{self.name!r} has no generator {name!r}") from None

    def generator(self, name: str) -> GeneratorSymbol:
        return self.generators[self.index_of(name)]

    def bracket_indices(self, i: int, j: int) -> dict[int, Fraction]:
        """[x_i, x_j] as a sparse combination of generator indices."""
        if i == j:
            return {}
        if i < j:
            return dict(self.brackets.get((i, j), {}))
        combo = self.brackets.get((j, i), {})
        return {k: -c for k, c in combo.items()}

    def bracket(self, x: str, y: str) -> dict[str, Fraction]:
        """[x, y] by generator name, as a name-keyed combination."""
        combo = self.bracket_indices(self.index_of(x), self.index_of(y))
        return {self.generators[k].name: c for k, c in combo.items()}

    def subalgebra_restrict(self, members) -> "SubalgebraView":
        """View of the span of `members`; raises if the bracket leaves the span."""
        idx = frozenset(self.index_of(m) for m in members)
        for i in sorted(idx):
            for j in sorted(idx):
                if i < j:
                    escaped = [k for k in self.bracket_indices(i, j) if k not in idx]
                    if escaped:
                        gi, gj = self.generators[i].name, self.generators[j].name
                        out = ", ".join(self.generators[k].name for k in escaped)
                        raise AlgebraError(
                            f"[{gi}, {gj}] involves {out}: subset is not closed"
                        )
        return SubalgebraView(self, idx)

    def __eq__(self, other):
        if not isinstance(other, LieAlgebraSpec):
            return NotImplemented
        return (
            [(g.name, g.grading) for g in self.generators]
            == [(g.name, g.grading) for g in other.generators]
            and self.brackets == other.brackets
        )

    __hash__ = None

    def __repr__(self):
        return f"LieAlgebraSpec({self.name!r}, {self.n} generators)"


@dataclass(frozen=True)
class SubalgebraView:
    """A bracket-closed subset of a parent algebra's generators."""

    parent: LieAlgebraSpec
    member_indices: frozenset[int]

    @property
    def member_names(self) -> tuple[str, ...]:
        return tuple(
            self.parent.generators[i].name for i in sorted(self.member_indices)
        )


@dataclass
class JacobiReport:
    passed: bool
    triples_checked: int
    failures: list = field(default_factory=list)  # (names, nonzero jacobiator)


def _bracket_combo_gen(spec, combo, k):
    """[sum_c c*x_c, x_k] extended bilinearly; sparse index combination."""
    out = {}
    for c_idx, coeff in combo.items():
        for t, ct in spec.bracket_indices(c_idx, k).items():
            val = out.get(t, Fraction(0)) + coeff * ct
            if val:
                out[t] = val
            else:
                out.pop(t, None)
    return out


def check_jacobi(spec: LieAlgebraSpec) -> JacobiReport:
    """Evaluate the Jacobi identity on every generator triple i < j < k."""
    failures = []
    count = 0
    n = spec.n
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                count += 1
                total = {}
                for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                    part = _bracket_combo_gen(spec, spec.bracket_indices(a, b), c)
                    for t, ct in part.items():
                        val = total.get(t, Fraction(0)) + ct
                        if val:
                            total[t] = val
                        else:
                            total.pop(t, None)
                if total:
                    names = tuple(
                        spec.generators[t].name for t in (i, j, k)
                    )
                    rendered = " + ".join(
                        f"{rational_str(c)}*{spec.generators[t].name}"
                        for t, c in sorted(total.items())
                    )
                    failures.append((names, rendered))
    return JacobiReport(not failures, count, failures)


def grading_violations(spec: LieAlgebraSpec) -> list[str]:
    """Bracket terms whose grading differs from the sum of the input gradings."""
    bad = []
    for (i, j), combo in spec.brackets.items():
        want = spec.generators[i].grading + spec.generators[j].grading
        for k in combo:
            if spec.generators[k].grading != want:
                bad.append(
                    f"[{spec.generators[i].name}, {spec.generators[j].name}] has a "
                    f"term {spec.generators[k].name} of grading "
                    f"{spec.generators[k].grading}, expected {want}"
                )
    return bad


# Built-in algebras.  The generator order f < q < h < z < p < e is fixed
# globally; every subalgebra below lists its generators in the induced order.

_SCHRODINGER_GENS = (("f", -2), ("q", -1), ("h", 0), ("z", 0), ("p", 1), ("e", 2))

_SCHRODINGER_BRACKETS = {
    # [f,h] = 2f, [f,p] = q, [f,e] = -h
    (0, 2): {0: Fraction(2)},
    (0, 4): {1: Fraction(1)},
    (0, 5): {2: Fraction(-1)},
    # [q,h] = q, [q,p] = -z, [q,e] = -p
    (1, 2): {1: Fraction(1)},
    (1, 4): {3: Fraction(-1)},
    (1, 5): {4: Fraction(-1)},
    # [h,p] = p, [h,e] = 2e
    (2, 4): {4: Fraction(1)},
    (2, 5): {5: Fraction(2)},
}

_BUILTIN_TABLES = {
    "schrodinger": (
        _SCHRODINGER_GENS,
        _SCHRODINGER_BRACKETS,
        {
            "n_plus": ("p", "e"),
            "n_minus": ("f", "q"),
            "cartan": ("h", "z"),
            "center": ("z",),
            "sl2": ("f", "h", "e"),
            "heisenberg": ("q", "z", "p"),
            "s1": ("q", "h", "z", "p", "e"),
        },
    ),
    "sl2": (
        (("f", -2), ("h", 0), ("e", 2)),
        {(0, 1): {0: Fraction(2)}, (0, 2): {1: Fraction(-1)}, (1, 2): {2: Fraction(2)}},
        {"n_plus": ("e",), "n_minus": ("f",), "cartan": ("h",), "center": ()},
    ),
    "heisenberg": (
        (("q", -1), ("z", 0), ("p", 1)),
        {(0, 2): {1: Fraction(-1)}},
        {"n_plus": ("p",), "n_minus": ("q",), "cartan": ("z",), "center": ("z",)},
    ),
    "s1": (
        (("q", -1), ("h", 0), ("z", 0), ("p", 1), ("e", 2)),
        {
            (0, 1): {0: Fraction(1)},
            (0, 3): {2: Fraction(-1)},
            (0, 4): {3: Fraction(-1)},
            (1, 3): {3: Fraction(1)},
            (1, 4): {4: Fraction(2)},
        },
        {
            "n_plus": ("p", "e"),
            "n_minus": ("q",),
            "cartan": ("h", "z"),
            "center": ("z",),
        },
    ),
}

BUILTIN_NAMES = tuple(sorted(_BUILTIN_TABLES))


@lru_cache(maxsize=None)
def builtin_algebra(name: str) -> LieAlgebraSpec:
    """One of the built-in algebras: schrodinger, sl2, heisenberg, s1."""
    try:
        gens, brackets, dist = _BUILTIN_TABLES[name]
    except KeyError:
        raise AlgebraError(
            f"unknown algebra {name!r}; built-ins: {', '.join(BUILTIN_NAMES)}"
        ) from None
    spec = LieAlgebraSpec(name, gens, brackets, dist)
    report = check_jacobi(spec)
    assert report.passed, f"built-in {name} violates Jacobi: {report.failures}"
    assert not grading_violations(spec)
    return spec


def parse_algebra_text(text: str, name: str = "<text>") -> LieAlgebraSpec:
    """Parse the algebra file format.

    Lines are either ``gen <name> <grading>`` or
    ``bracket <x> <y> = <coeff>*<gen> [+ <coeff>*<gen> ...]`` with rational
    coefficients written num/den.  ``#`` starts a comment.  The resulting
    spec is validated: gradings must be compatible and Jacobi must hold.
    """
    gens: list[tuple[str, int]] = []
    order: dict[str, int] = {}
    pending = []  # (line, xname, yname, rhs tokens)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "gen":
            if len(tokens) != 3:
                raise AlgebraFileError("expected: gen <name> <grading>", lineno)
            gname = tokens[1]
            if gname in order:
                raise AlgebraFileError(f"duplicate generator {gname!r}", lineno)
            try:
                grading = int(tokens[2])
            except ValueError:
                raise AlgebraFileError(
                    f"grading must be an integer, got {tokens[2]!r}", lineno
                ) from None
            order[gname] = len(gens)
            gens.append((gname, grading))
        elif tokens[0] == "bracket":
            if len(tokens) < 5 or tokens[3] != "=":
                raise AlgebraFileError(
                    "expected: bracket <x> <y> = <coeff>*<gen> [+ ...]", lineno
                )
            pending.append((lineno, tokens[1], tokens[2], tokens[4:]))
        else:
            raise AlgebraFileError(f"unknown directive {tokens[0]!r}", lineno)
    if not gens:
        raise AlgebraFileError("no generators declared")

    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for lineno, xname, yname, rhs in pending:
        for gname in (xname, yname):
            if gname not in order:
                raise AlgebraFileError(f"unknown generator {gname!r}", lineno)
        i, j = order[xname], order[yname]
        if i == j:
            raise AlgebraFileError(f"bracket of {xname!r} with itself", lineno)
        combo: dict[int, Fraction] = {}
        expect_term = True
        for tok in rhs:
            if tok == "+":
                if expect_term:
                    raise AlgebraFileError("misplaced '+' in bracket terms", lineno)
                expect_term = True
                continue
            if not expect_term:
                raise AlgebraFileError(f"expected '+' before {tok!r}", lineno)
            coeff_s, sep, gname = tok.partition("*")
            if not sep or gname not in order:
                raise AlgebraFileError(
                    f"expected <coeff>*<gen> with a declared generator, got {tok!r}",
                    lineno,
                )
            try:
                coeff = parse_rational(coeff_s)
            except AlgebraError as exc:
                raise AlgebraFileError(str(exc), lineno) from None
            k = order[gname]
            combo[k] = combo.get(k, Fraction(0)) + coeff
            expect_term = False
        if expect_term:
            raise AlgebraFileError("bracket line has a trailing '+'", lineno)
        key, sign = ((i, j), 1) if i < j else ((j, i), -1)
        stored = {k: sign * c for k, c in combo.items() if c}
        if key in brackets and brackets[key] != stored:
            raise AlgebraFileError(
                f"bracket [{xname}, {yname}] contradicts an earlier line", lineno
            )
        if stored:
            brackets[key] = stored

    spec = LieAlgebraSpec(name, gens, brackets)
    bad = grading_violations(spec)
    if bad:
        raise AlgebraFileError("grading violation: " + "; ".join(bad))
    report = check_jacobi(spec)
    if not report.passed:
        names, combo = report.failures[0]
        raise AlgebraFileError(
            f"Jacobi identity fails on {names}: jacobiator = {combo}"
        )
    return spec


def parse_algebra_file(path) -> LieAlgebraSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_algebra_text(fh.read(), name=str(path))


def load_algebra(name_or_path: str) -> LieAlgebraSpec:
    """Resolve an --algebra argument: a built-in name or a definition file."""
    if name_or_path in _BUILTIN_TABLES:
        return builtin_algebra(name_or_path)
    try:
        return parse_algebra_file(name_or_path)
    except OSError as exc:
        raise AlgebraError(
            f"{name_or_path!r} is neither a built-in algebra "
            f"({', '.join(BUILTIN_NAMES)}) nor a readable file"
        ) from exc
