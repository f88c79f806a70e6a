# cython: language_level=3
"""Compiled straightening kernel; same contract as the pure backend."""

from fractions import Fraction

cdef object _ONE = Fraction(1)


cdef class Kernel:
    cdef public int n
    cdef dict brackets
    cdef public frozenset central
    cdef tuple _is_central
    cdef dict _memo

    def __init__(self, n, brackets, central):
        self.n = n
        self.brackets = {
            pair: tuple((k, Fraction(c)) for k, c in terms)
            for pair, terms in brackets.items()
        }
        self.central = frozenset(central)
        self._is_central = tuple(i in self.central for i in range(n))
        self._memo = {}

    cdef int _last_noncentral(self, tuple mono):
        cdef int j
        for j in range(self.n - 1, -1, -1):
            if mono[j] and not self._is_central[j]:
                return j
        return -1

    cpdef dict mono_times_gen(self, tuple mono, int i):
        cdef int j = self._last_noncentral(mono)
        cdef list head_l
        cdef tuple head, key, m2, m3
        cdef dict out, hit
        cdef object c, c2, c3, ck, v
        if self._is_central[i] or j <= i:
            head_l = list(mono)
            head_l[i] += 1
            return {tuple(head_l): _ONE}
        key = (mono, i)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        head_l = list(mono)
        head_l[j] -= 1
        head = tuple(head_l)
        out = {}
        for m2, c2 in self.mono_times_gen(head, i).items():
            for m3, c3 in self.mono_times_gen(m2, j).items():
                v = out.get(m3, 0) + c2 * c3
                if v:
                    out[m3] = v
                else:
                    del out[m3]
        for k, ck in self.brackets.get((j, i), ()):
            for m2, c2 in self.mono_times_gen(head, k).items():
                v = out.get(m2, 0) + ck * c2
                if v:
                    out[m2] = v
                else:
                    del out[m2]
        self._memo[key] = out
        return out

    cpdef dict mono_mul(self, tuple ma, tuple mb):
        cdef list shift = None
        cdef list bumped
        cdef dict result = {ma: _ONE}
        cdef dict nxt, shifted
        cdef int i, t, step, exp
        cdef tuple m, m2
        cdef object c, c2, v
        for i in range(self.n):
            exp = mb[i]
            if not exp:
                continue
            if self._is_central[i]:
                if shift is None:
                    shift = [0] * self.n
                shift[i] += exp
                continue
            for step in range(exp):
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
            shifted = {}
            for m, c in result.items():
                bumped = list(m)
                for t in range(self.n):
                    bumped[t] += shift[t]
                shifted[tuple(bumped)] = c
            result = shifted
        return result

    def word_product(self, word):
        cdef dict result = {(0,) * self.n: _ONE}
        cdef dict nxt
        cdef tuple m, m2
        cdef object c, c2, v
        cdef int i
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
