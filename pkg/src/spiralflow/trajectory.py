"""Piecewise Taylor-polynomial trajectories with exact derivatives and integrals."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OutOfRange


@dataclass(frozen=True)
class Trajectory:
    """Dense solution made of local Taylor polynomials.

    Segment ``i`` covers ``[lo[i], hi[i]]`` and is expanded about
    ``origin[i]`` (one of its endpoints) with coefficients ``coef[i]``.
    Segments are sorted and contiguous.
    """

    lo: np.ndarray
    hi: np.ndarray
    origin: np.ndarray
    coef: np.ndarray
    cum: np.ndarray  # integral from lo[0] to lo[i]

    @staticmethod
    def from_kernel(xs: np.ndarray, coef: np.ndarray) -> "Trajectory":
        """Build from kernel output (step origins plus final abscissa)."""
        xs = np.asarray(xs, dtype=np.float64)
        coef = np.asarray(coef, dtype=np.float64)
        origin = xs[:-1]
        other = xs[1:]
        if coef.shape[0] and xs[-1] < xs[0]:
            origin, other, coef = origin[::-1], other[::-1], coef[::-1]
            lo, hi = other, origin
        else:
            lo, hi = origin, other
        return Trajectory._assemble(lo.copy(), hi.copy(), origin.copy(), coef.copy())

    @staticmethod
    def _assemble(lo, hi, origin, coef) -> "Trajectory":
        n = len(lo)
        cum = np.zeros(n)
        if n:
            seg = _antider(coef, hi - origin) - _antider(coef, lo - origin)
            cum[1:] = np.cumsum(seg)[:-1]
        return Trajectory(lo, hi, origin, coef, cum)

    @staticmethod
    def concat(parts: list["Trajectory"]) -> "Trajectory":
        parts = sorted((p for p in parts if len(p.lo)), key=lambda p: p.lo[0])
        order = max(p.coef.shape[1] for p in parts)

        def pad(c):
            return np.pad(c, ((0, 0), (0, order - c.shape[1])))

        return Trajectory._assemble(
            np.concatenate([p.lo for p in parts]),
            np.concatenate([p.hi for p in parts]),
            np.concatenate([p.origin for p in parts]),
            np.concatenate([pad(p.coef) for p in parts]),
        )

    @property
    def x_min(self) -> float:
        return float(self.lo[0])

    @property
    def x_max(self) -> float:
        return float(self.hi[-1])

    @property
    def breakpoints(self) -> np.ndarray:
        return np.append(self.lo, self.hi[-1])

    @property
    def n_segments(self) -> int:
        return len(self.lo)

    def _locate(self, x: np.ndarray) -> np.ndarray:
        if np.any(x < self.lo[0]) or np.any(x > self.hi[-1]) or np.any(~np.isfinite(x)):
            raise OutOfRange(f"abscissa outside [{self.lo[0]}, {self.hi[-1]}]")
        idx = np.searchsorted(self.hi, x, side="left")
        idx = np.minimum(idx, len(self.hi) - 1)
        # on a shared boundary prefer the segment expanded about that point
        nxt = np.minimum(idx + 1, len(self.hi) - 1)
        bump = (nxt != idx) & (x == self.origin[nxt])
        return idx + bump

    def eval(self, x, deriv: int = 0):
        """Value (or derivative of order ``deriv``) at ``x``."""
        xa = np.asarray(x, dtype=np.float64)
        flat = xa.ravel()
        idx = self._locate(flat)
        h = flat - self.origin[idx]
        c = self.coef[idx]
        n = c.shape[1] - 1
        v = np.zeros_like(h)
        for j in range(n, deriv - 1, -1):
            f = 1.0
            for m in range(deriv):
                f *= j - m
            v = v * h + f * c[:, j]
        return v.reshape(xa.shape) if xa.ndim else float(v[0])

    def antiderivative(self, x):
        """Integral of the trajectory from ``x_min`` to ``x``."""
        xa = np.asarray(x, dtype=np.float64)
        flat = xa.ravel()
        idx = self._locate(flat)
        c = self.coef[idx]
        o = self.origin[idx]
        part = _antider(c, flat - o) - _antider(c, self.lo[idx] - o)
        v = self.cum[idx] + part
        return v.reshape(xa.shape) if xa.ndim else float(v[0])

    def integral(self, a: float, b: float) -> float:
        return float(self.antiderivative(b) - self.antiderivative(a))

    def to_dict(self) -> dict:
        return {
            "lo": self.lo.tolist(),
            "hi": self.hi.tolist(),
            "origin": self.origin.tolist(),
            "coef": self.coef.tolist(),
        }

    @staticmethod
    def from_dict(d: dict) -> "Trajectory":
        coef = np.asarray(d["coef"], dtype=np.float64)
        return Trajectory._assemble(
            np.asarray(d["lo"], dtype=np.float64),
            np.asarray(d["hi"], dtype=np.float64),
            np.asarray(d["origin"], dtype=np.float64),
            coef.reshape(len(d["lo"]), -1),
        )


def _antider(c: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Row-wise sum_j c[:, j] h^{j+1} / (j+1)."""
    n = c.shape[1] - 1
    v = np.zeros(np.shape(h))
    for j in range(n, -1, -1):
        v = v * h + c[:, j] / (j + 1)
    return v * h
