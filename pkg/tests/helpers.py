"""Small constructors shared by the test modules."""
from strdist import CostModel, Instance, KSubstitution, base, parse_word

HAMMING_OPS = frozenset({"kS"})
EDIT_OPS = frozenset({"I", "D", "S", "kS"})


def w(text):
    return parse_word(text)


def ks(lhs, rhs):
    return KSubstitution(w(lhs), w(rhs))


def sigma(letters="ab"):
    return tuple(base(c) for c in letters)


def hamming(rules, k=2, default=None, letters="ab"):
    return CostModel(k, HAMMING_OPS, {ks(l, r): c for (l, r), c in rules.items()}, default, sigma(letters))


def instance(v, target, model, h):
    return Instance(w(v), w(target), model, h)
