"""Pure-Python straightening kernel (fallback backend).

Monomials are exponent tuples over the algebra's generator order.  The one
rewrite is x_j x_i -> x_i x_j + [x_j, x_i] for j > i; it terminates because
each step either lowers total degree (bracket term) or removes an inversion.
Central generators commute with everything and are never straightened, so
their exponents may be negative (Laurent bookkeeping).
"""

from fractions import Fraction

_ONE = Fraction(1)


class Kernel:
    def __init__(self, n, brackets, central):
        # brackets: {(j, i): ((k, coeff), ...)} for j > i, zero brackets omitted
        self.n = n
        self.brackets = {
            pair: tuple((k, Fraction(c)) for k, c in terms)
            for pair, terms in brackets.items()
        }
        self.central = frozenset(central)
        self._is_central = tuple(i in self.central for i in range(n))
        self._memo = {}

    def _last_noncentral(self, mono):
        for j in range(self.n - 1, -1, -1):
            if mono[j] and not self._is_central[j]:
                return j
        return -1

    def mono_times_gen(self, mono, i):
        """Normal form of (normal monomial) * x_i as {monomial: coefficient}."""
        j = self._last_noncentral(mono)
        if self._is_central[i] or j <= i:
            bumped = list(mono)
            bumped[i] += 1
            return {tuple(bumped): _ONE}
        key = (mono, i)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        head = list(mono)
        head[j] -= 1
        head = tuple(head)
        out = {}
        for m2, c2 in self.mono_times_gen(head, i).items():
            for m3, c3 in self.mono_times_gen(m2, j).items():
                c = out.get(m3, 0) + c2 * c3
                if c:
                    out[m3] = c
                else:
                    del out[m3]
        for k, ck in self.brackets.get((j, i), ()):
            for m2, c2 in self.mono_times_gen(head, k).items():
                c = out.get(m2, 0) + ck * c2
                if c:
                    out[m2] = c
                else:
                    del out[m2]
        self._memo[key] = out
        return out

    def mono_mul(self, ma, mb):
        """Normal form of the product of two normal monomials."""
        shift = None
        result = {ma: _ONE}
        for i in range(self.n):
            exp = mb[i]
            if not exp:
                continue
            if self._is_central[i]:
                if shift is None:
                    shift = [0] * self.n
                shift[i] += exp
                continue
            for _ in range(exp):
                nxt = {}
                for m, c in result.items():
                    for m2, c2 in self.mono_times_gen(m, i).items():
                        v = nxt.get(m2, 0) + c * c2
                        if v:
                            nxt[m2] = v
                        else:
                            del nxt[m2]
                result = nxt
        if shift is not None:
            result = {
                tuple(e + s for e, s in zip(m, shift)): c for m, c in result.items()
            }
        return result

    def word_product(self, word):
        """Normal form of a product of generators given as an index sequence."""
        result = {(0,) * self.n: _ONE}
        for i in word:
            nxt = {}
            for m, c in result.items():
                for m2, c2 in self.mono_times_gen(m, i).items():
                    v = nxt.get(m2, 0) + c * c2
                    if v:
                        nxt[m2] = v
                    else:
                        del nxt[m2]
            result = nxt
        return result
