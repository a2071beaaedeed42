"""Deliberately naive reference computations, independent of redcollatz."""


def T(x):
    return (3 * x + 1) // 2 if x % 2 == 1 else x // 2


def dr_naive(x):
    """(word, final) for the reduced dynamics of x, one step at a time."""
    seq = []
    y = x
    while True:
        seq.append("I" if y % 2 else "O")
        y = T(y)
        if y < x:
            return "".join(seq), y


def d_naive(x):
    seq = []
    y = x
    while y != 1:
        seq.append("I" if y % 2 else "O")
        y = T(y)
    return "".join(seq)


def follows(y, w):
    """True iff the natural parities of y's first |w| steps spell w."""
    for ch in w:
        if (y % 2 == 1) != (ch == "I"):
            return False
        y = T(y)
    return True


def residue_bruteforce(w):
    return [r for r in range(2 ** len(w)) if follows(r, w)]


def min_period_linear(x):
    w = dr_naive(x)[0]
    return next(p for p in range(1, 2 ** len(w) + 1) if dr_naive(x + p)[0] == w)


def words_bruteforce(max_len, hi=None):
    hi = 2 ** max_len + 2 if hi is None else hi
    out = set()
    for x in range(2, hi + 1):
        w = dr_naive(x)[0]
        if len(w) <= max_len:
            out.add(w)
    return out


def all_words(n):
    if n == 0:
        yield ""
        return
    for w in all_words(n - 1):
        yield w + "I"
        yield w + "O"
