"""Rescaled theta bracket and elliptic factorials.

The bracket ``[z]`` is the odd theta quotient normalized so that
``[z] = z + O(z^3)`` near the origin.  It is computed from the canceled
product form

    [z] = sin(alpha*z/2)/(alpha/2) * prod_{l>=1} (1 - 2 p^{2l} cos(alpha z) + p^{4l}) / (1 - p^{2l})^2,

which involves only even powers of the nome, so negative nomes are supported
on the same footing as positive ones.  At ``p = 0`` the product is empty and
the bracket degenerates to the plain sine quotient.
"""

import math

__all__ = ["ThetaEvaluator", "bracket_trig"]

_TERM_EPS = 1e-18
_TERM_CAP = 600
_ZERO_ARG_TOL = 1e-12


class ThetaEvaluator:
    """Evaluator for the rescaled theta bracket at fixed scaling and nome.

    Parameters
    ----------
    alpha : float
        Positive scaling; the bracket vanishes exactly on multiples of
        ``2*pi/alpha``.
    nome : float
        Elliptic nome, |nome| <= nome_cap.
    nome_cap : float
        Hard cap on |nome| (default 0.99).

    Instances are immutable and evaluation is a pure function of the
    argument, so they are safe to share across threads.
    """

    __slots__ = ("alpha", "nome", "truncation_depth", "period", "_cache")

    def __init__(self, alpha: float, nome: float, nome_cap: float = 0.99):
        if alpha <= 0:
            raise ValueError(f"alpha must be positive, got {alpha}")
        if abs(nome) > nome_cap:
            raise ValueError(f"|nome| = {abs(nome)} exceeds the cap {nome_cap}")
        object.__setattr__(self, "alpha", float(alpha))
        object.__setattr__(self, "nome", float(nome))
        if nome == 0.0:
            depth = 0
        else:
            # retain product terms until |p|^{2l} < 1e-18
            depth = min(_TERM_CAP, 1 + math.ceil(0.5 * math.log(_TERM_EPS) / math.log(abs(nome))))
        object.__setattr__(self, "truncation_depth", depth)
        object.__setattr__(self, "period", 2.0 * math.pi / float(alpha))
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("ThetaEvaluator is immutable")

    def __repr__(self):
        return f"ThetaEvaluator(alpha={self.alpha!r}, nome={self.nome!r})"

    def bracket(self, z: float) -> float:
        """Value of [z]; real for real z, odd in z."""
        cached = self._cache.get(z)
        if cached is not None:
            return cached
        half = 0.5 * self.alpha
        value = math.sin(half * z) / half
        if self.truncation_depth:
            p2 = self.nome * self.nome
            c = math.cos(self.alpha * z)
            pl = 1.0
            for _ in range(self.truncation_depth):
                pl *= p2
                value *= (1.0 - 2.0 * pl * c + pl * pl) / ((1.0 - pl) * (1.0 - pl))
        self._cache[z] = value
        return value

    def bracket_factorial(self, z: float, k: int) -> float:
        """Product [z][z+1]...[z+k-1]; 1 for k = 0."""
        if k < 0:
            raise ValueError(f"factorial length must be nonnegative, got {k}")
        value = 1.0
        for l in range(k):
            value *= self.bracket(z + l)
        return value

    def is_zero_argument(self, z: float, tol: float = _ZERO_ARG_TOL) -> bool:
        """True when z sits on a zero of the bracket (a multiple of the period)."""
        nearest = self.period * round(z / self.period)
        return abs(z - nearest) < tol


def bracket_trig(z: float, alpha: float) -> float:
    """Zero-nome bracket sin(alpha*z/2)/(alpha/2)."""
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    half = 0.5 * alpha
    return math.sin(half * z) / half
