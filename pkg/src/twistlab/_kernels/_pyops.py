"""Pure-Python word kernels: free reduction and the one-relator normal form.

Letters are nonzero ints: +k and -k are the k-th generator and its inverse.
The compiled twin in _fastops.pyx implements the same three functions.
"""

from __future__ import annotations

IMPL = "python"


def free_reduce(word) -> tuple:
    """Freely reduce a letter sequence."""
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def free_mul(a, b) -> tuple:
    """Product of two already-reduced words."""
    out = list(a)
    for x in b:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def bs_normalize(syllables, n: int) -> tuple:
    """Normal form in <a, b | a b^n = b^n a>.

    Input is a flat (gen, exp, gen, exp, ...) sequence with gen 1 = a and
    gen 2 = b.  Central powers of b^n slide freely past a, so they are
    extracted into a counter; what remains is the reduced alternating word of
    the quotient free product with interior b-exponents in [1, n-1].

    Returns (c, flat_word): the element equals b^(n*c) * flat_word.
    """
    c = 0
    out: list[int] = []  # flat (gen, exp) pairs
    for i in range(0, len(syllables), 2):
        gen = syllables[i]
        exp = syllables[i + 1]
        if gen == 2:
            q, exp = divmod(exp, n)
            c += q
            if exp == 0:
                continue
        # out stays strictly alternating, so one merge step per level suffices
        while exp != 0:
            if out and out[-2] == gen:
                exp += out[-1]
                del out[-2:]
                if gen == 2:
                    q, exp = divmod(exp, n)
                    c += q
                continue
            out.append(gen)
            out.append(exp)
            break
    return c, tuple(out)


def bs_mul(ca: int, wa, cb: int, wb, n: int) -> tuple:
    """Multiply two normal forms (c, word) in <a, b | a b^n = b^n a>."""
    c, w = bs_normalize(tuple(wa) + tuple(wb), n)
    return ca + cb + c, w
