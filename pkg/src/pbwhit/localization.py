"""The embedding of U(schrodinger) into the localized Heisenberg algebra.

The central generator z is inverted, so images live in elements whose z
exponent may be negative (`laurent` elements over the heisenberg built-in).
On generators:

    e |-> p^2/(2z),   f |-> -q^2/(2z),   h |-> -qp/z - 1/2,
    p |-> p,          q |-> q,           z |-> z,

and a normal-ordered monomial f^i q^j h^k z^l p^m e^n maps to the product
of the images taken in that order.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import builtin_algebra
from .pbw import UEAElement, commutator


def phi_generator_images() -> dict[str, UEAElement]:
    """Images of the six Schrodinger generators, as localized elements."""
    heis = builtin_algebra("heisenberg")
    half = Fraction(1, 2)
    mono = lambda exps, c: UEAElement.monomial(heis, exps, c, laurent=True)
    return {
        "e": mono({"p": 2, "z": -1}, half),
        "f": mono({"q": 2, "z": -1}, -half),
        "h": mono({"q": 1, "p": 1, "z": -1}, -1) + mono({}, -half),
        "p": mono({"p": 1}, 1),
        "q": mono({"q": 1}, 1),
        "z": mono({"z": 1}, 1),
    }


class _PhiCache:
    def __init__(self):
        self.images = phi_generator_images()
        self.heis = builtin_algebra("heisenberg")
        self.one = UEAElement.one(self.heis, laurent=True)
        self._powers = {name: [self.one] for name in ("f", "h", "e")}

    def power(self, name, n):
        cached = self._powers[name]
        while len(cached) <= n:
            cached.append(cached[-1] * self.images[name])
        return cached[n]


_CACHE = None


def _cache() -> _PhiCache:
    global _CACHE
    if _CACHE is None:
        _CACHE = _PhiCache()
    return _CACHE


def phi_image(x: UEAElement) -> UEAElement:
    """Apply the embedding monomial-by-monomial to a Schrodinger element."""
    cache = _cache()
    order = [x.spec.index_of(nm) for nm in ("f", "q", "h", "z", "p", "e")]
    out = UEAElement.zero(cache.heis, laurent=True)
    for mono, coeff in x.terms.items():
        i, j, k, l, m, n = (mono[t] for t in order)
        img = cache.power("f", i)
        if j:
            img = img * UEAElement.monomial(cache.heis, {"q": j}, 1, laurent=True)
        if k:
            img = img * cache.power("h", k)
        if l or m:
            img = img * UEAElement.monomial(
                cache.heis, {"z": l, "p": m}, 1, laurent=True
            )
        if n:
            img = img * cache.power("e", n)
        out = out + img.scale(coeff)
    return out


def verify_phi_homomorphism():
    """Check phi([x,y]) = [phi(x), phi(y)] on all 15 generator pairs and
    that p, q, z map to themselves.  Returns (entries, passed)."""
    schro = builtin_algebra("schrodinger")
    images = _cache().images
    names = [g.name for g in schro.generators]
    entries = []
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            x, y = names[a], names[b]
            lhs = phi_image(
                commutator(UEAElement.gen(schro, x), UEAElement.gen(schro, y))
            )
            rhs = commutator(images[x], images[y])
            entries.append((f"[{x},{y}]", lhs == rhs, lhs.render(), rhs.render()))
    heis = builtin_algebra("heisenberg")
    for nm in ("p", "q", "z"):
        img = phi_image(UEAElement.gen(schro, nm))
        ok = img == UEAElement.monomial(heis, {nm: 1}, 1, laurent=True)
        entries.append((f"identity on {nm}", ok, img.render(), nm))
    return entries, all(ok for _, ok, *_ in entries)
