"""Oracles that break the division contract, loadable as ``module:function``."""

from sepkit.separators import SeparatorCertificate


def half_separator(g):
    """Valid separator that is far too large: the lower half of the ids."""
    cut = g.n // 2
    return SeparatorCertificate(S=frozenset(range(cut)), A=frozenset(range(cut, g.n)), B=frozenset())


def leaky_separator(g):
    """Splits without a separator, ignoring edges."""
    cut = g.n // 2
    return SeparatorCertificate(S=frozenset(), A=frozenset(range(cut)), B=frozenset(range(cut, g.n)))


def no_answer(g):
    return None
