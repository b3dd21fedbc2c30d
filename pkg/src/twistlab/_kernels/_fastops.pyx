# cython: language_level=3
"""Compiled word kernels; semantics identical to _pyops."""

IMPL = "cython"


def free_reduce(word):
    cdef list out = []
    cdef long x
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def free_mul(a, b):
    cdef list out = list(a)
    cdef long x
    for x in b:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def bs_normalize(syllables, long n):
    cdef long c = 0
    cdef list out = []
    cdef long gen, exp, q
    cdef Py_ssize_t i, m = len(syllables)
    for i in range(0, m, 2):
        gen = syllables[i]
        exp = syllables[i + 1]
        if gen == 2:
            q = exp // n
            exp = exp - q * n
            c += q
            if exp == 0:
                continue
        while exp != 0:
            if out and out[-2] == gen:
                exp += out[-1]
                del out[-2:]
                if gen == 2:
                    q = exp // n
                    exp = exp - q * n
                    c += q
                continue
            out.append(gen)
            out.append(exp)
            break
    return c, tuple(out)


def bs_mul(long ca, wa, long cb, wb, long n):
    c, w = bs_normalize(tuple(wa) + tuple(wb), n)
    return ca + cb + c, w
