"""Whittaker modules as reduction systems over free PBW monomials.

Every module here is cyclic on a vector w.  A module handle stores which
generators stay free (their monomials index the basis), which act by
scalars on w, and at most one rewrite rule that eliminates the remaining
generator.  Acting with an enveloping-algebra element means straightening
it against an embedded basis monomial and then reducing rightmost factors
until only free monomials remain; each rewrite strictly lowers the count
of non-free factors, so reduction terminates.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import AlgebraError, builtin_algebra, parse_rational, rational_str
from .linalg import SpanAccumulator, nullspace
from .pbw import UEAElement, special_element
from . import pbw


class ModuleParameterError(AlgebraError):
    """A module descriptor violates its parameter constraints."""


class DegreeBudgetError(AlgebraError):
    """The requested computation does not fit in the degree bound."""


class InconsistencyError(RuntimeError):
    """An internal certification failed; the computed data is not trustworthy."""


MODULE_KINDS = (
    "universal_S",
    "universal_S1",
    "universal_sl2",
    "universal_H",
    "L_xi",
    "M_a",
    "M_sl2_casimir",
    "verma_alpha",
    "tensor",
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _binom(n, k):
    out = 1
    for t in range(k):
        out = out * (n - t) // (t + 1)
    return out


class ModuleVector:
    """A rational combination of free basis monomials of one module."""

    __slots__ = ("module", "terms")

    def __init__(self, module, terms):
        self.module = module
        self.terms = {}
        for fm, c in terms.items():
            c = Fraction(c)
            if c:
                self.terms[tuple(fm)] = c

    @property
    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(fm) for fm in self.terms), default=-1)

    def __add__(self, other):
        if not isinstance(other, ModuleVector) or other.module is not self.module:
            return NotImplemented
        acc = dict(self.terms)
        for fm, c in other.terms.items():
            v = acc.get(fm, _ZERO) + c
            if v:
                acc[fm] = v
            else:
                acc.pop(fm, None)
        return ModuleVector(self.module, acc)

    def __sub__(self, other):
        if not isinstance(other, ModuleVector) or other.module is not self.module:
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return ModuleVector(self.module, {m: -c for m, c in self.terms.items()})

    def scale(self, coeff):
        coeff = Fraction(coeff)
        return ModuleVector(
            self.module, {m: c * coeff for m, c in self.terms.items()}
        )

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.module is other.module and self.terms == other.terms

    __hash__ = None

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (sum(mc[0]), mc[0]))

    def pairs(self):
        """Canonical [monomial-string, coefficient-string] pairs."""
        return [
            [self.module.mono_str_free(m), rational_str(c)]
            for m, c in self.sorted_terms()
        ]

    def render(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"{rational_str(c)}*{self.module.mono_str_free(m)}"
            for m, c in self.sorted_terms()
        )

    def __repr__(self):
        return f"<ModuleVector {self.render()}>"


def _monomials_upto(nvars, bound):
    """Exponent tuples with entry sum <= bound, in degree-then-tuple order."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 0:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, slots - 1)

    rec([], bound, nvars)
    out.sort(key=lambda m: (sum(m), m))
    return out


class _ModuleBase:
    """Shared behavior: basis bookkeeping, solver plumbing, rendering."""

    kind: str
    params: dict
    warnings: list
    free_names: tuple

    def basis_vector(self, fm):
        return ModuleVector(self, {tuple(fm): _ONE})

    def zero(self):
        return ModuleVector(self, {})

    def cyclic(self):
        return self.basis_vector((0,) * len(self.free_names))

    def params_payload(self):
        return {k: rational_str(v) for k, v in sorted(self.params.items())}

    def resolve_probe(self, probe_e=None, probe_p=None):
        """Whittaker conditions to impose: generator name -> scalar."""
        probe = {}
        for name in self.constraint_gens:
            given = probe_e if name == "e" else probe_p
            probe[name] = Fraction(given) if given is not None else self.own_type[name]
        if probe_e is not None and "e" not in self.constraint_gens:
            raise ModuleParameterError(f"{self.kind} takes no e-condition probe")
        if probe_p is not None and "p" not in self.constraint_gens:
            raise ModuleParameterError(f"{self.kind} takes no p-condition probe")
        return probe


class ReductionModule(_ModuleBase):
    def __init__(self, spec, kind, free_idx, scalars, params, warnings):
        self.spec = spec
        self.kind = kind
        self.free = tuple(sorted(free_idx))
        self.free_names = tuple(spec.generators[i].name for i in self.free)
        self.scalars = dict(scalars)  # generator index -> Fraction
        self.params = dict(params)
        self.warnings = list(warnings)
        self._rewrite_idx = next(
            (
                i
                for i in range(spec.n)
                if i not in self.free and i not in self.scalars
            ),
            None,
        )
        self._one_step_cache = {}
        self._shift_pow_cache = {}

    # -- layout helpers ------------------------------------------------

    @property
    def constraint_gens(self):
        has = {g.name for g in self.spec.generators}
        return tuple(nm for nm in ("e", "p") if nm in has)

    @property
    def own_type(self):
        out = {}
        for nm in self.constraint_gens:
            out[nm] = self.scalars[self.spec.index_of(nm)]
        return out

    @property
    def level(self):
        for i in self.spec.central:
            return self.scalars[i]
        return None

    def _embed(self, fm):
        full = [0] * self.spec.n
        for pos, i in enumerate(self.free):
            full[i] = fm[pos]
        return tuple(full)

    def monomials_upto(self, bound):
        return _monomials_upto(len(self.free), bound)

    def mono_str_free(self, fm):
        return pbw.mono_str(self.spec, self._embed(fm))

    def action_element(self, name):
        return UEAElement.gen(self.spec, name)

    # -- the action ------------------------------------------------------

    def act(self, x: UEAElement, v: ModuleVector) -> ModuleVector:
        if x.spec is not self.spec and x.spec != self.spec:
            raise AlgebraError(
                f"element of {x.spec.name!r} cannot act on a {self.kind} module"
            )
        kernel = self.spec.kernel
        out = {}
        for fm, cv in v.terms.items():
            full = self._embed(fm)
            for xm, cx in x.terms.items():
                c = cx * cv
                for m, cm in kernel.mono_mul(xm, full).items():
                    self._reduce_mono(m, c * cm, out)
        return ModuleVector(self, out)

    def _reduce_mono(self, mono, coeff, out):
        if not coeff:
            return
        exps = list(mono)
        for idx, s in self.scalars.items():
            e = exps[idx]
            if e:
                if e < 0 and not s:
                    raise AlgebraError(
                        "inverse power of a central generator needs a nonzero level"
                    )
                coeff *= s ** e
                if not coeff:
                    return
                exps[idx] = 0
        ridx = self._rewrite_idx
        if ridx is not None and exps[ridx] > 0:
            exps[ridx] -= 1
            for sub, c in self._one_step(tuple(exps)):
                self._reduce_mono(sub, coeff * c, out)
            return
        key = tuple(exps[i] for i in self.free)
        v = out.get(key, _ZERO) + coeff
        if v:
            out[key] = v
        else:
            del out[key]

    def _one_step(self, stripped):
        """Normal form of  x_r * (stripped monomial) * w  with one power of
        the rewrite generator already removed from `stripped`."""
        key = tuple(stripped[i] for i in self.free)
        cached = self._one_step_cache.get(key)
        if cached is None:
            cached = self._compute_one_step(stripped, key)
            self._one_step_cache[key] = cached
        base = self._rewrite_idx
        extra = stripped[base]
        if extra:
            # the remaining rewrite powers ride along on the left
            adjusted = []
            for m, c in cached:
                m2 = list(m)
                m2[base] += extra
                adjusted.append((tuple(m2), c))
            return adjusted
        return cached

    def _compute_one_step(self, stripped, key):
        raise NotImplementedError

    def _shift_pow(self, shift, k):
        """(h + shift)^k as an enveloping-algebra element, cached."""
        cached = self._shift_pow_cache.get((shift, k))
        if cached is None:
            h = UEAElement.gen(self.spec, "h") + UEAElement.one(self.spec).scale(
                shift
            )
            cached = h ** k
            self._shift_pow_cache[(shift, k)] = cached
        return cached


class LoweringRewriteModule(ReductionModule):
    """Modules whose rewrite generator is eliminated by conjugating it to the
    cyclic vector and substituting a fixed replacement element."""

    def __init__(self, spec, kind, free_idx, scalars, params, warnings,
                 replacement, conjugation_shift):
        super().__init__(spec, kind, free_idx, scalars, params, warnings)
        self._replacement = replacement  # element with only free support
        self._shift = conjugation_shift  # x_r h^k = (h+shift)^k x_r
        h_idx = spec.index_of("h")
        for i in self.free:
            # moving the rewrite generator rightward only conjugates h;
            # every other free generator must commute with it
            if i != h_idx and spec.bracket_indices(self._rewrite_idx, i):
                raise ModuleParameterError(
                    f"{kind}: free generator {spec.generators[i].name} does "
                    "not commute with the rewrite generator"
                )

    def _compute_one_step(self, stripped, key):
        spec = self.spec
        prod = UEAElement.one(spec)
        h_idx = spec.index_of("h")
        for i in self.free:
            e = stripped[i]
            if not e:
                continue
            if i == h_idx:
                prod = prod * self._shift_pow(self._shift, e)
            else:
                mono = [0] * spec.n
                mono[i] = e
                prod = prod * UEAElement(spec, {tuple(mono): _ONE})
        prod = prod * self._replacement
        bad = [m for m in prod.terms if any(m[i] for i in range(spec.n)
                                            if i not in self.free)]
        if bad:
            raise InconsistencyError(f"{self.kind} rewrite left non-free factors")
        return tuple(prod.terms.items())


class QRightRewriteModule(ReductionModule):
    """Modules where q is the non-free generator: q commutes with f and
    passes h as q h^k = (h+1)^k q, then acts on w by the scalar xi."""

    def __init__(self, spec, kind, free_idx, scalars, params, warnings, xi):
        super().__init__(spec, kind, free_idx, scalars, params, warnings)
        self.xi = Fraction(xi)

    def _compute_one_step(self, stripped, key):
        spec = self.spec
        f_idx, h_idx = spec.index_of("f"), spec.index_of("h")
        i, k = stripped[f_idx], stripped[h_idx]
        if not self.xi:
            return ()
        out = []
        for t in range(k + 1):
            mono = [0] * spec.n
            mono[f_idx] = i
            mono[h_idx] = t
            out.append((tuple(mono), self.xi * _binom(k, t)))
        return tuple(out)


def _zero_pair_warning(params, names):
    if all(not params.get(nm, _ZERO) for nm in names):
        return [
            "the Whittaker pair is zero; accepted, but the cyclic vector "
            "generates a highest-weight-type module"
        ]
    return []


def _require(params, kind, *names):
    missing = [nm for nm in names if params.get(nm) is None]
    if missing:
        raise ModuleParameterError(f"{kind} requires parameters: {', '.join(missing)}")


def _reject_extra(params, kind, allowed):
    extra = sorted(set(params) - set(allowed))
    if extra:
        raise ModuleParameterError(
            f"{kind} does not take parameters: {', '.join(extra)}"
        )


def build_module(kind, params):
    """Construct a module handle from a kind name and rational parameters."""
    params = {k: Fraction(v) for k, v in params.items() if v is not None}
    if kind == "universal_S":
        _reject_extra(params, kind, ("e", "p", "z"))
        _require(params, kind, "e", "p")
        level = params.get("z", _ZERO)
        spec = builtin_algebra("schrodinger")
        scalars = {
            spec.index_of("e"): params["e"],
            spec.index_of("p"): params["p"],
            spec.index_of("z"): level,
        }
        stored = {"e": params["e"], "p": params["p"], "z": level}
        return ReductionModule(
            spec, kind, [spec.index_of(nm) for nm in ("f", "q", "h")],
            scalars, stored, _zero_pair_warning(params, ("e", "p")),
        )
    if kind == "universal_S1":
        _reject_extra(params, kind, ("e", "p", "z"))
        _require(params, kind, "e", "p")
        level = params.get("z", _ZERO)
        spec = builtin_algebra("s1")
        scalars = {
            spec.index_of("e"): params["e"],
            spec.index_of("p"): params["p"],
            spec.index_of("z"): level,
        }
        stored = {"e": params["e"], "p": params["p"], "z": level}
        return ReductionModule(
            spec, kind, [spec.index_of(nm) for nm in ("q", "h")],
            scalars, stored, _zero_pair_warning(params, ("e", "p")),
        )
    if kind == "universal_sl2":
        _reject_extra(params, kind, ("e",))
        _require(params, kind, "e")
        spec = builtin_algebra("sl2")
        return ReductionModule(
            spec, kind, [spec.index_of(nm) for nm in ("f", "h")],
            {spec.index_of("e"): params["e"]}, {"e": params["e"]},
            _zero_pair_warning(params, ("e",)),
        )
    if kind == "universal_H":
        _reject_extra(params, kind, ("p", "z"))
        _require(params, kind, "p", "z")
        spec = builtin_algebra("heisenberg")
        scalars = {
            spec.index_of("p"): params["p"],
            spec.index_of("z"): params["z"],
        }
        return ReductionModule(
            spec, kind, [spec.index_of("q")], scalars,
            {"p": params["p"], "z": params["z"]},
            _zero_pair_warning(params, ("p",)),
        )
    if kind == "L_xi":
        _reject_extra(params, kind, ("e", "p", "z", "xi"))
        _require(params, kind, "e", "xi")
        if not params["e"]:
            raise ModuleParameterError("L_xi requires e != 0")
        if params.get("p", _ZERO) or params.get("z", _ZERO):
            raise ModuleParameterError("L_xi requires p = 0 and level 0")
        spec = builtin_algebra("schrodinger")
        scalars = {
            spec.index_of("e"): params["e"],
            spec.index_of("p"): _ZERO,
            spec.index_of("z"): _ZERO,
        }
        stored = {"e": params["e"], "p": _ZERO, "z": _ZERO, "xi": params["xi"]}
        return QRightRewriteModule(
            spec, kind, [spec.index_of(nm) for nm in ("f", "h")],
            scalars, stored, [], params["xi"],
        )
    if kind == "M_a":
        _reject_extra(params, kind, ("e", "p", "z", "a"))
        _require(params, kind, "e", "p", "a")
        if not params["p"]:
            raise ModuleParameterError("M_a requires p != 0")
        if params.get("z", _ZERO):
            raise ModuleParameterError("M_a requires level 0")
        spec = builtin_algebra("schrodinger")
        pd, ed, a = params["p"], params["e"], params["a"]
        scalars = {
            spec.index_of("e"): ed,
            spec.index_of("p"): pd,
            spec.index_of("z"): _ZERO,
        }
        # f w = (a + p q + p q h + e q^2) / p^2 w, read off from the action
        # of the quasi-central element on the cyclic vector
        repl = (
            UEAElement.one(spec).scale(a / pd ** 2)
            + UEAElement.monomial(spec, {"q": 1}, 1 / pd)
            + UEAElement.monomial(spec, {"q": 1, "h": 1}, 1 / pd)
            + UEAElement.monomial(spec, {"q": 2}, ed / pd ** 2)
        )
        stored = {"e": ed, "p": pd, "z": _ZERO, "a": a}
        return LoweringRewriteModule(
            spec, kind, [spec.index_of(nm) for nm in ("q", "h")],
            scalars, stored, [], repl, 2,
        )
    if kind == "M_sl2_casimir":
        _reject_extra(params, kind, ("e", "omega"))
        _require(params, kind, "e", "omega")
        if not params["e"]:
            raise ModuleParameterError("M_sl2_casimir requires e != 0")
        spec = builtin_algebra("sl2")
        ed, om = params["e"], params["omega"]
        # f w = (omega - 2h - h^2) / (4e) w
        repl = (
            UEAElement.one(spec).scale(om / (4 * ed))
            + UEAElement.monomial(spec, {"h": 1}, Fraction(-1, 2) / ed)
            + UEAElement.monomial(spec, {"h": 2}, Fraction(-1, 4) / ed)
        )
        return LoweringRewriteModule(
            spec, kind, [spec.index_of("h")], {spec.index_of("e"): ed},
            {"e": ed, "omega": om}, [], repl, 2,
        )
    if kind == "verma_alpha":
        _reject_extra(params, kind, ("e", "alpha"))
        _require(params, kind, "alpha")
        if params.get("e", _ZERO):
            raise ModuleParameterError("verma_alpha is a type-zero family: e must be 0")
        spec = builtin_algebra("sl2")
        scalars = {spec.index_of("e"): _ZERO, spec.index_of("h"): params["alpha"]}
        return ReductionModule(
            spec, kind, [spec.index_of("f")], scalars,
            {"e": _ZERO, "alpha": params["alpha"]}, [],
        )
    if kind == "tensor":
        _reject_extra(params, kind, ("e", "p", "z", "omega"))
        _require(params, kind, "e", "p", "z")
        if not params["z"]:
            raise ModuleParameterError("tensor requires level z != 0")
        return TensorModule(params)
    raise ModuleParameterError(
        f"unknown module kind {kind!r}; choices: {', '.join(MODULE_KINDS)}"
    )


class TensorModule(_ModuleBase):
    """Tensor product of a rank-one Heisenberg module with an sl2 module.

    The basis is q^j w (x) (sl2 free monomial) w'.  A Schrodinger generator
    acts diagonally: on the first factor through the localized-Heisenberg
    images of e, f, h (evaluated at the nonzero level) or natively for
    p, q, z; on the second factor natively for e, f, h and by zero for the
    Heisenberg generators.
    """

    def __init__(self, params):
        from .localization import phi_generator_images

        self.kind = "tensor"
        self.spec = builtin_algebra("schrodinger")
        level, pd, ed = params["z"], params["p"], params["e"]
        e_sl2 = ed - pd ** 2 / (2 * level)
        self.hmod = build_module("universal_H", {"p": pd, "z": level})
        warnings = list(self.hmod.warnings)
        if e_sl2:
            _require(params, "tensor with a nonzero sl2 type", "omega")
            self.smod = build_module(
                "M_sl2_casimir", {"e": e_sl2, "omega": params["omega"]}
            )
        else:
            if params.get("omega") is not None:
                raise ModuleParameterError(
                    "omega only applies when the sl2 factor type is nonzero"
                )
            self.smod = build_module("universal_sl2", {"e": _ZERO})
            warnings.append(
                "sl2 factor type is zero: using the universal type-zero module"
            )
        self.params = {"e": ed, "p": pd, "z": level, "e_sl2": e_sl2}
        if params.get("omega") is not None:
            self.params["omega"] = params["omega"]
        self.warnings = warnings
        self.free_names = ("q",) + self.smod.free_names
        self._phi = phi_generator_images()
        self._sl2_names = frozenset(("e", "h", "f"))
        self._h_cache = {}
        self._s_cache = {}

    @property
    def constraint_gens(self):
        return ("e", "p")

    @property
    def own_type(self):
        return {"e": self.params["e"], "p": self.params["p"]}

    @property
    def level(self):
        return self.params["z"]

    def monomials_upto(self, bound):
        out = []
        for s in self.smod.monomials_upto(bound):
            sdeg = sum(s)
            for j in range(bound - sdeg + 1):
                out.append((j,) + s)
        out.sort(key=lambda m: (sum(m), m))
        return out

    def mono_str_free(self, fm):
        left = self.hmod.mono_str_free(fm[:1])
        right = self.smod.mono_str_free(fm[1:])
        return f"{left} (x) {right}"

    def action_element(self, name):
        return UEAElement.gen(self.spec, name)

    def _first_factor_action(self, name, j):
        hit = self._h_cache.get((name, j))
        if hit is None:
            img = self.hmod.act(self._phi[name], self.hmod.basis_vector((j,)))
            hit = tuple((fm[0], c) for fm, c in img.terms.items())
            self._h_cache[(name, j)] = hit
        return hit

    def _second_factor_action(self, name, s):
        hit = self._s_cache.get((name, s))
        if hit is None:
            img = self.smod.act(
                UEAElement.gen(self.smod.spec, name), self.smod.basis_vector(s)
            )
            hit = tuple(img.terms.items())
            self._s_cache[(name, s)] = hit
        return hit

    def _act_gen(self, name, terms):
        out = {}
        for fm, c in terms.items():
            j, s = fm[0], fm[1:]
            for j2, c2 in self._first_factor_action(name, j):
                key = (j2,) + s
                v = out.get(key, _ZERO) + c * c2
                if v:
                    out[key] = v
                else:
                    del out[key]
            if name in self._sl2_names:
                for s2, c2 in self._second_factor_action(name, s):
                    key = (j,) + s2
                    v = out.get(key, _ZERO) + c * c2
                    if v:
                        out[key] = v
                    else:
                        del out[key]
        return out

    def act(self, x: UEAElement, v: ModuleVector) -> ModuleVector:
        if x.spec is not self.spec and x.spec != self.spec:
            raise AlgebraError("tensor modules are acted on by the Schrodinger algebra")
        if any(e < 0 for mono in x.terms for e in mono):
            raise AlgebraError("tensor modules only carry the plain action")
        names = [g.name for g in self.spec.generators]
        total = {}
        for mono, cm in x.terms.items():
            cur = dict(v.terms)
            for idx in range(self.spec.n - 1, -1, -1):  # rightmost factor first
                for _ in range(mono[idx]):
                    if not cur:
                        break
                    cur = self._act_gen(names[idx], cur)
            for fm, c in cur.items():
                val = total.get(fm, _ZERO) + cm * c
                if val:
                    total[fm] = val
                else:
                    del total[fm]
        return ModuleVector(self, total)


def parse_vector(module, text):
    """Parse a cyclic-vector combination like ``q^2*h - 1`` or ``3/2*w``.

    Monomials use the module's free generators; ``w`` (the cyclic vector)
    and ``1`` both denote the empty monomial.
    """
    s = text.replace(" ", "")
    if not s:
        raise AlgebraError("empty vector expression")
    chunks = []
    sign, buf = _ONE, ""
    for ch in s:
        if ch in "+-" and buf:
            chunks.append((sign, buf))
            sign, buf = (_ONE if ch == "+" else -_ONE), ""
        elif ch in "+-":
            sign = sign if ch == "+" else -sign
        else:
            buf += ch
    if not buf:
        raise AlgebraError(f"dangling sign in vector expression {text!r}")
    chunks.append((sign, buf))

    names = {nm: pos for pos, nm in enumerate(module.free_names)}
    terms = {}
    for sign, chunk in chunks:
        coeff = sign
        exps = [0] * len(module.free_names)
        for part in chunk.split("*"):
            if part in ("w", "1"):
                continue
            head = part.split("^")[0]
            if head and (head[0].isdigit() or head[0] in "-/"):
                coeff *= parse_rational(part)
                continue
            name, _, power = part.partition("^")
            if name not in names:
                raise AlgebraError(
                    f"{name!r} is not a free generator of {module.kind} "
                    f"(free: {', '.join(module.free_names)})"
                )
            exps[names[name]] += int(power) if power else 1
        key = tuple(exps)
        val = terms.get(key, _ZERO) + coeff
        if val:
            terms[key] = val
        else:
            terms.pop(key, None)
    return ModuleVector(module, terms)


# -- the truncated Whittaker-vector solver ---------------------------------


class SolverReport:
    task = "whittaker_vectors"

    def __init__(self, module, probe, degree_bound, basis_vectors, certified,
                 warnings):
        self.module = module
        self.probe = probe
        self.degree_bound = degree_bound
        self.basis = basis_vectors
        self.certified = certified
        self.warnings = warnings

    @property
    def dimension(self):
        return len(self.basis)

    @property
    def passed(self):
        return self.certified

    def payload(self):
        return {
            "task": self.task,
            "module_kind": self.module.kind,
            "parameters": self.module.params_payload(),
            "probe": {k: rational_str(v) for k, v in sorted(self.probe.items())},
            "degree_bound": self.degree_bound,
            "dimension": self.dimension,
            "basis": [v.pairs() for v in self.basis],
            "certified": self.certified,
            "warnings": list(self.warnings),
        }


def whittaker_vectors(module, degree_bound, probe_e=None, probe_p=None):
    """Exact basis of {v of degree <= bound : x v = probe(x) v for x in the
    positive part}, certified afterwards by direct action."""
    if degree_bound < 0:
        raise DegreeBudgetError("degree bound must be non-negative")
    probe = module.resolve_probe(probe_e, probe_p)
    basis = module.monomials_upto(degree_bound)
    col = {fm: t for t, fm in enumerate(basis)}
    nbasis = len(basis)
    rows = []
    actions = {name: module.action_element(name) for name in probe}
    for name, scalar in sorted(probe.items()):
        block = [[_ZERO] * nbasis for _ in range(nbasis)]
        for in_idx, fm in enumerate(basis):
            image = module.act(actions[name], module.basis_vector(fm))
            block[in_idx][in_idx] -= scalar
            for fm2, c in image.terms.items():
                out_idx = col.get(fm2)
                if out_idx is None:
                    raise InconsistencyError(
                        f"action of {name} left the degree-{degree_bound} "
                        "truncation; the solver's restriction is not exact here"
                    )
                block[out_idx][in_idx] += c
        rows.extend(row for row in block if any(row))
    kernel = nullspace(rows, nbasis)
    vectors = [
        ModuleVector(module, {basis[t]: v[t] for t in range(nbasis) if v[t]})
        for v in kernel
    ]
    certified = True
    for v in vectors:
        for name, scalar in probe.items():
            if module.act(actions[name], v) != v.scale(scalar):
                certified = False
    return SolverReport(
        module, probe, degree_bound, vectors, certified, list(module.warnings)
    )


class ProbeReport:
    task = "simplicity_probe"

    def __init__(self, solver_report):
        self.solver = solver_report
        self.module = solver_report.module
        cyclic = self.module.cyclic()
        pivot = lambda v: min(v.terms, key=lambda m: (sum(m), m))
        self.extra = [
            v
            for v in solver_report.basis
            if pivot(v) != next(iter(cyclic.terms))
        ]
        self.passed = solver_report.dimension == 1 and solver_report.certified

    def payload(self):
        body = self.solver.payload()
        body["task"] = self.task
        body["probe_kind"] = "necessary_condition_only"
        body["passed"] = self.passed
        body["extra_vectors"] = [v.pairs() for v in self.extra]
        body["warnings"] = list(body["warnings"]) + [
            "a one-dimensional Whittaker space is necessary, not sufficient, "
            "for simplicity"
        ]
        return body


def simplicity_probe(module, degree_bound):
    """Necessary-condition probe: the truncated Whittaker space of the
    module's own type should be spanned by the cyclic vector alone."""
    return ProbeReport(whittaker_vectors(module, degree_bound))


# -- submodules, saturation, filtration ------------------------------------


class SaturationReport:
    task = "submodule_saturation"

    def __init__(self, module, generators, degree_bound, dims_history,
                 spanning_degree, exact, basis, warnings):
        self.module = module
        self.generators = generators
        self.degree_bound = degree_bound
        self.dims_history = dims_history
        self.spanning_degree = spanning_degree
        self.exact = exact
        self.basis = basis
        self.warnings = warnings
        self.subspace_dimension = dims_history[-1] if dims_history else 0
        total = len(module.monomials_upto(degree_bound))
        self.quotient_dimension = total - self.subspace_dimension
        self.passed = True

    def payload(self):
        return {
            "task": self.task,
            "module_kind": self.module.kind,
            "parameters": self.module.params_payload(),
            "degree_bound": self.degree_bound,
            "generators": [g.render() for g in self.generators],
            "spanning_degree": self.spanning_degree,
            "dimension_history": list(self.dims_history),
            "subspace_dimension": self.subspace_dimension,
            "quotient_dimension": self.quotient_dimension,
            "saturated_exactly": self.exact,
            "basis": [v.pairs() for v in self.basis],
            "warnings": list(self.warnings),
        }


def submodule_saturation(module, generators, degree_bound, max_extra_rounds=24):
    """Dimension (and basis) of span(U(g) . generators) within the
    degree-<=bound truncation.

    Spanning vectors are produced by applying algebra generators round by
    round; after the first `degree_bound` rounds the truncated dimension is
    measured after every round and the loop stops once it is unchanged for
    two consecutive rounds.  That stopping rule is a heuristic: the reported
    subspace is always contained in the true one.
    """
    spec = module.spec
    key = lambda fm: (0 if sum(fm) > degree_bound else 1, sum(fm), fm)
    acc = SpanAccumulator(key)
    frontier = []
    for g in generators:
        stored = acc.add_row(dict(g.terms))
        if stored is not None:
            frontier.append(stored)
    gen_elems = [
        UEAElement.gen(spec, g.name)
        for g in spec.generators
        if g.index not in spec.central
    ]

    def intersection_dim():
        return sum(1 for pivot in acc.rows if key(pivot)[0] == 1)

    dims = []
    exact = False
    rounds = 0
    limit = degree_bound + max_extra_rounds
    while rounds < limit:
        rounds += 1
        new_frontier = []
        for row in frontier:
            v = ModuleVector(module, row)
            for X in gen_elems:
                img = module.act(X, v)
                stored = acc.add_row(dict(img.terms))
                if stored is not None:
                    new_frontier.append(stored)
        frontier = new_frontier
        if not frontier:
            exact = True  # the span closed under the action: no heuristic left
            dims.append(intersection_dim())
            break
        if rounds >= degree_bound:
            dims.append(intersection_dim())
            if len(dims) >= 3 and dims[-1] == dims[-2] == dims[-3]:
                break
    warnings = []
    if not exact:
        warnings.append(
            "saturation stopped after the truncated dimension was stable for "
            "two rounds; the subspace is a verified lower bound"
        )
        if rounds >= limit:
            warnings.append("saturation hit the round limit before stabilizing")

    inter = sorted(
        ((pivot, row) for pivot, row in acc.rows.items() if key(pivot)[0] == 1),
        key=lambda pr: key(pr[0]),
    )
    reduced = [dict(row) for _, row in inter]
    for t in range(len(reduced) - 1, -1, -1):
        pivot = inter[t][0]
        for s in range(t):
            factor = reduced[s].get(pivot)
            if factor:
                for c, v in reduced[t].items():
                    val = reduced[s].get(c, _ZERO) - factor * v
                    if val:
                        reduced[s][c] = val
                    else:
                        reduced[s].pop(c, None)
    basis = [ModuleVector(module, row) for row in reduced]
    return SaturationReport(
        module, list(generators), degree_bound, dims,
        rounds, exact, basis, warnings,
    )


class FiltrationReport:
    task = "filtration_check"

    def __init__(self, module, a_value, i_max, degree_bound, certs, dims,
                 expected_dims, warnings):
        self.module = module
        self.a_value = a_value
        self.i_max = i_max
        self.degree_bound = degree_bound
        self.certs = certs
        self.dims = dims
        self.expected_dims = expected_dims
        self.warnings = warnings
        self.layers = [dims[i] - dims[i + 1] for i in range(i_max)]
        self.expected_layers = [
            expected_dims[i] - expected_dims[i + 1] for i in range(i_max)
        ]
        self.passed = all(certs) and dims == expected_dims

    def payload(self):
        return {
            "task": self.task,
            "module_kind": self.module.kind,
            "parameters": dict(
                self.module.params_payload(), a=rational_str(self.a_value)
            ),
            "degree_bound": self.degree_bound,
            "i_max": self.i_max,
            "whittaker_certified": list(self.certs),
            "submodule_dimensions": list(self.dims),
            "expected_dimensions": list(self.expected_dims),
            "layer_dimensions": list(self.layers),
            "expected_layers": list(self.expected_layers),
            "passed": self.passed,
            "warnings": list(self.warnings),
        }


def expected_filtration_dims(i_max, degree_bound):
    """Truncated dimensions predicted for the chain of submodules generated
    by powers of the shifted quasi-central element.

    Rewriting the basis through those powers places the i-th generator in
    degree 2i, and within the degree window each layer contributes one
    class per q,h-monomial pair of box size degree_bound - 2i, hence the
    squares below.  The identity sum_i (N-2i+1)^2 = C(N+3,3) ties the i=0
    entry to the full truncation count.
    """
    dims = []
    for i in range(i_max + 1):
        total = 0
        for t in range(i, degree_bound // 2 + 1):
            side = degree_bound - 2 * t + 1
            total += side * side
        dims.append(total)
    return dims


def filtration_check(e_value, p_value, a_value, i_max, degree_bound):
    """Certify the descending chain generated by powers of (c - a) on the
    universal level-zero module: each power is a Whittaker vector of the
    same type, and truncated layer dimensions match the rewriting count."""
    if 2 * i_max > degree_bound:
        raise DegreeBudgetError(
            f"i_max {i_max} needs degree at least {2 * i_max}, "
            f"got {degree_bound}"
        )
    module = build_module(
        "universal_S", {"e": e_value, "p": p_value, "z": _ZERO}
    )
    if not Fraction(p_value):
        raise ModuleParameterError("filtration_check requires p != 0")
    spec = module.spec
    c_elem = special_element(spec, "quasi_central")
    a = Fraction(a_value)
    vs = [module.cyclic()]
    for _ in range(i_max):
        vs.append(module.act(c_elem, vs[-1]) - vs[-1].scale(a))
    certs = []
    e_el, p_el = module.action_element("e"), module.action_element("p")
    e_val, p_val = module.own_type["e"], module.own_type["p"]
    for v in vs:
        certs.append(
            module.act(e_el, v) == v.scale(e_val)
            and module.act(p_el, v) == v.scale(p_val)
        )
    dims = [len(module.monomials_upto(degree_bound))]
    warnings = list(module.warnings)
    for i in range(1, i_max + 1):
        rep = submodule_saturation(module, [vs[i]], degree_bound)
        dims.append(rep.subspace_dimension)
        warnings.extend(w for w in rep.warnings if w not in warnings)
    expected = expected_filtration_dims(i_max, degree_bound)
    return FiltrationReport(
        module, a, i_max, degree_bound, certs, dims, expected, warnings
    )


# -- tensor certification and isomorphism invariants ------------------------


class TensorReport:
    task = "tensor_module"

    def __init__(self, module, checks):
        self.module = module
        self.checks = checks  # (generator, expected, ok)
        self.passed = all(ok for _, _, ok in checks)

    def payload(self):
        return {
            "task": self.task,
            "module_kind": self.module.kind,
            "parameters": self.module.params_payload(),
            "cyclic_checks": [
                [name, rational_str(expected), ok]
                for name, expected, ok in self.checks
            ],
            "certified": self.passed,
            "warnings": list(self.module.warnings),
        }


def tensor_certification(module):
    """Certify that w (x) w is a Whittaker vector of the arithmetic type:
    e and p act by the declared type and the level acts centrally."""
    w = module.cyclic()
    checks = []
    for name, expected in (
        ("e", module.params["e"]),
        ("p", module.params["p"]),
        ("z", module.params["z"]),
    ):
        image = module.act(module.action_element(name), w)
        checks.append((name, expected, image == w.scale(expected)))
    return TensorReport(module, checks)


_SCALAR_WITNESS = {
    "M_a": ("quasi_central", "c_scalar", "a", True),
    "M_sl2_casimir": ("casimir_sl2", "omega_scalar", "omega", True),
}


class InvariantsReport:
    task = "iso_invariants"

    def __init__(self, module, invariants, checked_degree):
        self.module = module
        self.invariants = invariants
        self.checked_degree = checked_degree
        self.passed = True

    def payload(self):
        return {
            "task": self.task,
            "module_kind": self.module.kind,
            "parameters": self.module.params_payload(),
            "invariants": {
                k: rational_str(v) for k, v in sorted(self.invariants.items())
            },
            "checked_degree": self.checked_degree,
            "warnings": list(self.module.warnings),
        }


def _scalar_on(module, element, v, what):
    image = module.act(element, v)
    if v.is_zero:
        raise InconsistencyError("cannot extract a scalar from the zero vector")
    fm, c = next(iter(v.terms.items()))
    scalar = image.terms.get(fm, _ZERO) / c
    if image != v.scale(scalar):
        raise InconsistencyError(f"{what} does not act as a scalar on {v.render()}")
    return scalar


def iso_invariants(module, degree_bound):
    """The isomorphism data of a module: its type, its level where defined,
    and the scalar of the distinguished central operator, each read off by
    direct action."""
    inv = {}
    w = module.cyclic()
    for name in module.constraint_gens:
        inv[f"type_{name}"] = _scalar_on(
            module, module.action_element(name), w, name
        )
    level = module.level
    if level is not None:
        inv["level"] = level
    witness = _SCALAR_WITNESS.get(module.kind)
    if witness is not None:
        elem_name, label, param, check_all = witness
        element = special_element(module.spec, elem_name)
        scalar = _scalar_on(module, element, w, elem_name)
        if check_all:
            for fm in module.monomials_upto(degree_bound):
                other = _scalar_on(
                    module, element, module.basis_vector(fm), elem_name
                )
                if other != scalar:
                    raise InconsistencyError(
                        f"{elem_name} acts by different scalars on the "
                        f"cyclic vector and on {module.mono_str_free(fm)}"
                    )
        if scalar != module.params[param]:
            raise InconsistencyError(
                f"{elem_name} acts by {scalar}, declared {module.params[param]}"
            )
        inv[label] = scalar
    if module.kind == "L_xi":
        inv["xi_scalar"] = _scalar_on(
            module, module.action_element("q"), w, "q"
        )
    if module.kind == "verma_alpha":
        inv["alpha_scalar"] = _scalar_on(
            module, module.action_element("h"), w, "h"
        )
    return InvariantsReport(module, inv, degree_bound)
