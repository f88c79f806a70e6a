"""Exact arithmetic in universal enveloping algebras via PBW normal forms.

Elements are sparse rational combinations of normal-ordered monomials
x_0^{a_0} ... x_{n-1}^{a_{n-1}} taken in the algebra's fixed generator
order.  Every product is straightened immediately, so each element has one
canonical representation and equality is dictionary equality.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import AlgebraError, LieAlgebraSpec, rational_str

Monomial = tuple  # exponent tuple aligned with spec.generators


def mono_degree(spec: LieAlgebraSpec, mono: Monomial) -> int:
    """Total degree: the exponent sum over non-central generators."""
    return sum(e for i, e in enumerate(mono) if i not in spec.central)


def mono_grading(spec: LieAlgebraSpec, mono: Monomial) -> int:
    return sum(e * g.grading for e, g in zip(mono, spec.generators))


def mono_key(spec: LieAlgebraSpec, mono: Monomial):
    """Deterministic monomial order: by total degree, then exponent tuple."""
    return (mono_degree(spec, mono), mono)


def mono_str(spec: LieAlgebraSpec, mono: Monomial) -> str:
    parts = []
    for g, e in zip(spec.generators, mono):
        if e == 1:
            parts.append(g.name)
        elif e:
            parts.append(f"{g.name}^{e}")
    return "*".join(parts) if parts else "1"


class UEAElement:
    """An element of U(g) in PBW normal form.

    `laurent` marks elements of the localization at the central generator:
    central exponents may then be negative.  Non-central exponents are
    always non-negative.
    """

    __slots__ = ("spec", "terms", "laurent")

    def __init__(self, spec, terms, laurent=False):
        self.spec = spec
        self.laurent = bool(laurent)
        cleaned = {}
        for mono, coeff in terms.items():
            coeff = Fraction(coeff)
            if not coeff:
                continue
            if len(mono) != spec.n:
                raise AlgebraError("monomial length does not match the algebra")
            for i, e in enumerate(mono):
                if e < 0 and not (self.laurent and i in spec.central):
                    raise AlgebraError(
                        f"negative exponent of {spec.generators[i].name} outside "
                        "a localized element"
                    )
            cleaned[tuple(mono)] = coeff
        self.terms = cleaned

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(spec, laurent=False):
        return UEAElement(spec, {}, laurent)

    @staticmethod
    def one(spec, laurent=False):
        return UEAElement(spec, {(0,) * spec.n: Fraction(1)}, laurent)

    @staticmethod
    def gen(spec, name):
        mono = [0] * spec.n
        mono[spec.index_of(name)] = 1
        return UEAElement(spec, {tuple(mono): Fraction(1)})

    @staticmethod
    def monomial(spec, exps_by_name, coeff=1, laurent=False):
        mono = [0] * spec.n
        for name, e in exps_by_name.items():
            mono[spec.index_of(name)] = int(e)
        return UEAElement(spec, {tuple(mono): Fraction(coeff)}, laurent)

    # -- ring structure ----------------------------------------------------

    def _check_spec(self, other):
        if self.spec is not other.spec and self.spec != other.spec:
            raise AlgebraError(
                f"cannot combine elements of {self.spec.name!r} and "
                f"{other.spec.name!r}"
            )

    def __add__(self, other):
        if not isinstance(other, UEAElement):
            return NotImplemented
        self._check_spec(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            v = acc.get(m, 0) + c
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
        return UEAElement(self.spec, acc, self.laurent or other.laurent)

    def __sub__(self, other):
        return self.__add__(-other) if isinstance(other, UEAElement) else NotImplemented

    def __neg__(self):
        return UEAElement(
            self.spec, {m: -c for m, c in self.terms.items()}, self.laurent
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, UEAElement):
            return NotImplemented
        self._check_spec(other)
        kernel = self.spec.kernel
        acc = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                c = ca * cb
                for m, cm in kernel.mono_mul(ma, mb).items():
                    v = acc.get(m, 0) + c * cm
                    if v:
                        acc[m] = v
                    else:
                        del acc[m]
        return UEAElement(self.spec, acc, self.laurent or other.laurent)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, coeff):
        coeff = Fraction(coeff)
        return UEAElement(
            self.spec, {m: c * coeff for m, c in self.terms.items()}, self.laurent
        )

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise AlgebraError("element powers take non-negative integers")
        out = UEAElement.one(self.spec, self.laurent)
        for _ in range(exponent):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    __hash__ = None

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def degree(self):
        """Largest total degree among the terms; -1 for the zero element."""
        if not self.terms:
            return -1
        return max(mono_degree(self.spec, m) for m in self.terms)

    def top_terms(self):
        """The terms of maximal total degree, as a monomial dict."""
        d = self.degree()
        return {
            m: c for m, c in self.terms.items() if mono_degree(self.spec, m) == d
        }

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mono_key(self.spec, mc[0]))

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"{rational_str(c)}*{mono_str(self.spec, m)}"
            for m, c in self.sorted_terms()
        )

    def __repr__(self):
        return f"<UEAElement {self.render()}>"


def normal_order(spec: LieAlgebraSpec, word) -> UEAElement:
    """Straighten a product of generators given as a sequence of names."""
    indices = [spec.index_of(name) for name in word]
    return UEAElement(spec, spec.kernel.word_product(indices))


def multiply(a: UEAElement, b: UEAElement) -> UEAElement:
    return a * b


def commutator(a: UEAElement, b: UEAElement) -> UEAElement:
    return a * b - b * a


def grading_of(x: UEAElement) -> int:
    """The common grading of a homogeneous element; errors otherwise."""
    if x.is_zero:
        raise AlgebraError("the zero element has no grading")
    gradings = {mono_grading(x.spec, m) for m in x.terms}
    if len(gradings) > 1:
        raise AlgebraError(f"element is not homogeneous: gradings {sorted(gradings)}")
    return gradings.pop()


SPECIAL_ELEMENTS = ("casimir_sl2", "quasi_central")


def special_element(spec: LieAlgebraSpec, name: str) -> UEAElement:
    """Distinguished elements: the sl2 Casimir and the degree-zero
    quasi-central element of the Schrodinger algebra."""
    gen = lambda nm: UEAElement.gen(spec, nm)
    if name == "casimir_sl2":
        f, h, e = gen("f"), gen("h"), gen("e")
        return 4 * (f * e) + 2 * h + h * h
    if name == "quasi_central":
        f, q, h, e, p = gen("f"), gen("q"), gen("h"), gen("e"), gen("p")
        return f * p * p - q * p - q * h * p - q * q * e
    raise AlgebraError(
        f"unknown special element {name!r}; choices: {', '.join(SPECIAL_ELEMENTS)}"
    )


class CentralityReport:
    def __init__(self, element_name, modulo_central, entries):
        self.element_name = element_name
        self.modulo_central = modulo_central
        self.entries = entries  # (generator name, ok, witness string or None)
        self.passed = all(ok for _, ok, _ in entries)


def centrality_check(
    x: UEAElement, generator_names=None, modulo_central=False, element_name=""
) -> CentralityReport:
    """Check [x, g] = 0 for each generator, or that every term of [x, g]
    carries a central factor when `modulo_central` is set."""
    spec = x.spec
    if generator_names is None:
        generator_names = [g.name for g in spec.generators]
    entries = []
    for name in generator_names:
        comm = commutator(x, UEAElement.gen(spec, name))
        if modulo_central:
            offending = {
                m: c
                for m, c in comm.terms.items()
                if not any(m[i] > 0 for i in spec.central)
            }
            ok = not offending
            witness = (
                None if ok else UEAElement(spec, offending, comm.laurent).render()
            )
        else:
            ok = comm.is_zero
            witness = None if ok else comm.render()
        entries.append((name, ok, witness))
    return CentralityReport(element_name, modulo_central, entries)


def _binom(n, k):
    out = 1
    for t in range(k):
        out = out * (n - t) // (t + 1)
    return out


def _identity_table(spec):
    """The closed-form straightening identities for bracketing a raising
    generator with powers of a lower one; each entry builds the closed form
    for a given power n."""
    gen = lambda nm: UEAElement.gen(spec, nm)
    f, q, h, z, p, e = (gen(nm) for nm in ("f", "q", "h", "z", "p", "e"))

    def p_with_f_powers(n):
        return (-n) * (q * f ** (n - 1))

    def p_with_h_powers(n):
        out = UEAElement.zero(spec)
        for i in range(1, n + 1):
            out = out + (Fraction(-1) ** i * _binom(n, i)) * (h ** (n - i) * p)
        return out

    def q_with_h_powers(n):
        out = UEAElement.zero(spec)
        for i in range(1, n + 1):
            out = out + _binom(n, i) * (h ** (n - i) * q)
        return out

    def e_with_q_powers(n):
        out = n * (q ** (n - 1) * p)
        if n >= 2:
            out = out + Fraction(n * (n - 1), 2) * (q ** (n - 2) * z)
        return out

    def e_with_f_powers(n):
        return n * (f ** (n - 1) * h) + (-n * (n - 1)) * f ** (n - 1)

    def e_with_h_powers(n):
        out = UEAElement.zero(spec)
        for i in range(1, n + 1):
            out = out + (Fraction(-2) ** i * _binom(n, i)) * (h ** (n - i) * e)
        return out

    return (
        ("p_with_f_powers", "p", "f", p_with_f_powers),
        ("p_with_h_powers", "p", "h", p_with_h_powers),
        ("q_with_h_powers", "q", "h", q_with_h_powers),
        ("e_with_q_powers", "e", "q", e_with_q_powers),
        ("e_with_f_powers", "e", "f", e_with_f_powers),
        ("e_with_h_powers", "e", "h", e_with_h_powers),
    )


class IdentityReport:
    def __init__(self, entries):
        self.entries = entries  # (identity id, n, ok, lhs, rhs)
        self.passed = all(ok for _, _, ok, _, _ in entries)


def verify_straightening_identities(
    spec: LieAlgebraSpec, max_n: int
) -> IdentityReport:
    """Compare [x, y^n] computed by the engine against the closed forms,
    for n = 1..max_n.  Requires the Schrodinger algebra."""
    entries = []
    for ident, xname, yname, closed in _identity_table(spec):
        x = UEAElement.gen(spec, xname)
        y = UEAElement.gen(spec, yname)
        for n in range(1, max_n + 1):
            lhs = commutator(x, y ** n)
            rhs = closed(n)
            entries.append((ident, n, lhs == rhs, lhs.render(), rhs.render()))
    return IdentityReport(entries)


def straighten_word_reference(spec: LieAlgebraSpec, word, choose=None):
    """Straighten a generator word by explicit adjacent-pair rewriting.

    Independent of the kernel: keeps words as index tuples and rewrites the
    pair picked by `choose` (leftmost inversion by default) until every word
    is sorted.  Used to cross-check the kernel and to test confluence under
    different rewrite orders.
    """
    if choose is None:
        choose = lambda positions: positions[0]
    out = {}
    pending = [(tuple(spec.index_of(nm) for nm in word), Fraction(1))]
    while pending:
        w, c = pending.pop()
        positions = [t for t in range(len(w) - 1) if w[t] > w[t + 1]]
        if not positions:
            mono = [0] * spec.n
            for i in w:
                mono[i] += 1
            key = tuple(mono)
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                del out[key]
            continue
        t = choose(positions)
        j, i = w[t], w[t + 1]
        pending.append((w[:t] + (i, j) + w[t + 2 :], c))
        for k, ck in spec.bracket_indices(j, i).items():
            pending.append((w[:t] + (k,) + w[t + 2 :], c * ck))
    return UEAElement(spec, out)
