"""Boolean orthonormalization of binary vector sets.

A set of binary vectors is orthonormal in the Boolean sense when every pair
of distinct vectors has an all-zero AND. The orthonormalization turns an
arbitrary ordered set ``v_1 .. v_N`` into

* ``u_j``: the bits of ``v_j`` not already present in any earlier vector, and
* ``s_j = v_j XOR u_j``: the residual bits that were cleared,

so that ``u_j AND s_j = 0`` and ``u_j OR s_j = v_j``. Two update rules produce
the same result; :func:`bop_v1` builds ``u`` directly, :func:`bop_v2` builds
``s`` and derives ``u``.

Vectors are packed 64 bits per word for the kernels. Callers pass and receive
plain ``{0,1}`` arrays; packing never changes an observable bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, StructuralError

__all__ = [
    "PackedBits",
    "BopResult",
    "and_",
    "or_",
    "xor",
    "not_",
    "is_orthonormal_set",
    "bop_v1",
    "bop_v2",
    "bop_v1_packed",
    "bop_v2_packed",
]


def _as_bits(x, name="vector"):
    a = np.asarray(x)
    if a.size and not np.isin(a, (0, 1)).all():
        raise DataError(f"{name} must be {{0,1}}-valued")
    return a.astype(np.uint8)


def _as_set(vs):
    a = _as_bits(vs if isinstance(vs, np.ndarray) else _stack(vs), "vector set")
    if a.ndim == 1:
        a = a[None, :]
    if a.ndim != 2:
        raise StructuralError(f"expected a (N, p) vector set, got shape {a.shape}")
    if a.shape[0] == 0:
        raise StructuralError("vector set must hold at least one vector")
    return a


def _stack(vs):
    vs = [np.asarray(v) for v in vs]
    if not vs:
        raise StructuralError("vector set must hold at least one vector")
    lengths = {v.shape for v in vs}
    if len(lengths) != 1:
        raise StructuralError(f"vectors have mismatched lengths {sorted(v.size for v in vs)}")
    return np.stack(vs)


@dataclass(frozen=True, eq=False)
class PackedBits:
    """``N`` binary vectors of length ``p`` packed into ``uint64`` words.

    Padding bits beyond ``p`` are always zero.
    """

    words: np.ndarray
    length: int

    @classmethod
    def from_bits(cls, bits):
        a = _as_set(bits)
        n, p = a.shape
        nbytes = -(-p // 8)
        nwords = max(1, -(-nbytes // 8))
        buf = np.zeros((n, nwords * 8), dtype=np.uint8)
        buf[:, :nbytes] = np.packbits(a, axis=1)
        return cls(buf.view(np.uint64), p)

    def to_bits(self):
        raw = np.ascontiguousarray(self.words).view(np.uint8)
        return np.unpackbits(raw, axis=1, count=self.length)

    def __len__(self):
        return self.words.shape[0]


def _pair(a, b):
    a = _as_bits(a)
    b = _as_bits(b)
    if a.shape != b.shape:
        raise StructuralError(f"length mismatch: {a.shape} vs {b.shape}")
    return a, b


def and_(a, b):
    """Elementwise AND of two equal-length binary vectors."""
    a, b = _pair(a, b)
    return a & b


def or_(a, b):
    """Elementwise OR of two equal-length binary vectors."""
    a, b = _pair(a, b)
    return a | b


def xor(a, b):
    """Elementwise XOR of two equal-length binary vectors."""
    a, b = _pair(a, b)
    return a ^ b


def not_(a):
    return _as_bits(a) ^ 1


def is_orthonormal_set(vs):
    """True iff every pair of distinct vectors has an all-zero AND."""
    packed = PackedBits.from_bits(vs)
    w = packed.words
    seen = np.zeros(w.shape[1], dtype=np.uint64)
    for row in w:
        if np.any(seen & row):
            return False
        seen |= row
    return True


@dataclass(frozen=True, eq=False)
class BopResult:
    """Orthonormalized vectors ``u`` and residuals ``s``, each shaped (N, p)."""

    u: np.ndarray
    s: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, BopResult):
            return NotImplemented
        return np.array_equal(self.u, other.u) and np.array_equal(self.s, other.s)


def bop_v1_packed(v):
    """Version-1 kernel on packed words; returns ``(u, s)`` word arrays."""
    u = v.copy()
    n = v.shape[0]
    for j in range(1, n):
        vj = v[j]
        for i in range(j):
            u[j] ^= vj & u[i]
    s = v ^ u
    return u, s


def bop_v2_packed(v):
    """Version-2 kernel on packed words; returns ``(u, s)`` word arrays."""
    s = np.zeros_like(v)
    n = v.shape[0]
    for j in range(1, n):
        vj = v[j]
        for i in range(j):
            s[j] |= vj & (v[i] ^ s[i])
    u = v ^ s
    return u, s


def _run(kernel, vs):
    packed = PackedBits.from_bits(vs)
    u, s = kernel(packed.words)
    return BopResult(PackedBits(u, packed.length).to_bits(), PackedBits(s, packed.length).to_bits())


def bop_v1(vs):
    """Orthonormalize by clearing, from each ``u_j``, bits owned by earlier ``u_i``.

    ``u_j <- u_j XOR (v_j AND u_i)`` for ``i = 1 .. j-1`` in ascending order,
    starting from ``u_j = v_j``; then ``s_j = v_j XOR u_j``.

    Parameters
    ----------
    vs : array_like
        ``(N, p)`` array or sequence of equal-length ``{0,1}`` vectors, N >= 1.

    Returns
    -------
    BopResult
    """
    return _run(bop_v1_packed, vs)


def bop_v2(vs):
    """Orthonormalize by accumulating residuals.

    ``s_j <- s_j OR (v_j AND (v_i XOR s_i))`` for ``i = 1 .. j-1`` ascending,
    starting from ``s_j = 0``; then ``u_j = v_j XOR s_j``. Yields exactly the
    same ``u`` and ``s`` as :func:`bop_v1`.
    """
    return _run(bop_v2_packed, vs)
