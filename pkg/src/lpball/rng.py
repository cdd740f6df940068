"""Deterministic random streams.

A :class:`RandomStream` is a counter-based uniform source built on the
Philox bit generator.  Its state is fully described by ``(seed, path,
position)``: the seed and the sub-stream path select an independent
key-stream, the position counts 64-bit words already consumed.  Two
streams constructed with the same triple produce bit-identical draws on
any host.

Sub-streams are derived by hashing ``(seed, index)`` through
``numpy.random.SeedSequence``; distinct paths give distinct Philox keys,
so sub-streams are non-overlapping by construction.

All uniforms are drawn on the open interval (0, 1): an exact 0.0 (a
2^-53 event) is resampled, 1.0 cannot occur.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError

_INV_2_53 = 2.0 ** -53
_SHIFT = np.uint64(11)


class RandomStream:
    """Seeded, position-addressable stream of uniform variates.

    Parameters
    ----------
    seed : int
        Base seed, in ``[0, 2**64)``.
    position : int, optional
        Number of 64-bit words to skip; reconstructing a stream at a
        recorded position replays the subsequent draws exactly.
    path : tuple of int, optional
        Sub-stream derivation path (normally produced by
        :meth:`substream`, not given directly).
    """

    def __init__(self, seed: int, position: int = 0, path: tuple[int, ...] = ()):
        seed = int(seed)
        if not 0 <= seed < 2**64:
            raise ParameterError(f"seed must be a 64-bit unsigned integer, got {seed}")
        if position < 0:
            raise ParameterError(f"position must be nonnegative, got {position}")
        self._seed = seed
        self._path = tuple(int(i) for i in path)
        self._position = 0
        self._bitgen = np.random.Philox(
            seed=np.random.SeedSequence(entropy=seed, spawn_key=self._path)
        )
        if position:
            self._skip(position)

    @property
    def seed(self) -> int:
        return self._seed

    @property
    def path(self) -> tuple[int, ...]:
        return self._path

    @property
    def position(self) -> int:
        """Count of 64-bit words consumed so far."""
        return self._position

    def __repr__(self) -> str:
        return f"RandomStream(seed={self._seed}, position={self._position}, path={self._path})"

    def _skip(self, nwords: int) -> None:
        # Philox advances in 4-word blocks; discard the remainder.
        blocks, rest = divmod(nwords, 4)
        if blocks:
            self._bitgen.advance(blocks)
        if rest:
            self._bitgen.random_raw(rest)
        self._position += nwords

    def _raw(self, size: int) -> np.ndarray:
        words = self._bitgen.random_raw(size)
        self._position += size
        return np.atleast_1d(words)

    def uniforms(self, size: int) -> np.ndarray:
        """Draw ``size`` independent uniforms on the open interval (0, 1)."""
        if size < 0:
            raise ParameterError(f"size must be nonnegative, got {size}")
        if size == 0:
            return np.empty(0)
        u = (self._raw(size) >> _SHIFT) * _INV_2_53
        while True:
            zero = np.flatnonzero(u == 0.0)
            if zero.size == 0:
                return u
            u[zero] = (self._raw(zero.size) >> _SHIFT) * _INV_2_53

    def uniform(self) -> float:
        """Draw a single uniform on (0, 1)."""
        return float(self.uniforms(1)[0])

    def substream(self, index: int) -> "RandomStream":
        """Derive the ``index``-th independent sub-stream.

        Sub-streams of a common parent never share key material, so they
        may be consumed concurrently by independent owners.
        """
        if index < 0:
            raise ParameterError(f"substream index must be nonnegative, got {index}")
        return RandomStream(self._seed, path=self._path + (int(index),))
