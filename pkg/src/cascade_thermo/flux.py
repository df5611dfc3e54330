"""Heat-flux trajectory containers and their serialization.

Both system models (Gaussian oscillators and qubit pairs) report the same
three-way flux decomposition: the local exchange rates ``j1`` and ``j2`` of
the two subsystems with the reservoir, and the cascade contribution ``j12``
generated by the unidirectional coupling.  Times are stored in units of
1/gamma and fluxes in units of hbar*omega*gamma, so trajectories are
independent of the absolute decay rate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np
from numpy.typing import NDArray

CSV_HEADER = "t,j1,j2,j12,j_cascade,j_independent"

# 12 significant digits; outputs must be byte-identical across runs.
_FMT = "{:.11e}"


@dataclass(frozen=True)
class FluxSample:
    """Flux decomposition at a single time.

    Attributes
    ----------
    t : float
        Time in units of 1/gamma.
    j1, j2, j12 : float
        Upstream, downstream and cascade heat fluxes in units of
        hbar*omega*gamma.  Positive values mean heat released to the
        reservoir.
    """

    t: float
    j1: float
    j2: float
    j12: float

    @property
    def j_cascade(self) -> float:
        """Total flux of the cascaded model, j1 + j2 + j12."""
        return self.j1 + self.j2 + self.j12

    @property
    def j_independent(self) -> float:
        """Total flux of the independent-bath reference, 2*j1 (symmetric initial conditions)."""
        return 2.0 * self.j1


@dataclass(frozen=True)
class FluxTrajectory:
    """Fluxes sampled on a monotone time grid."""

    t: NDArray[np.float64]
    j1: NDArray[np.float64]
    j2: NDArray[np.float64]
    j12: NDArray[np.float64]

    def __post_init__(self) -> None:
        n = len(self.t)
        if not (len(self.j1) == len(self.j2) == len(self.j12) == n):
            raise ValueError("flux columns must share the time grid length")
        if n >= 2 and np.any(np.diff(self.t) <= 0):
            raise ValueError("time grid must be strictly increasing")
        for name in ("t", "j1", "j2", "j12"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def j_cascade(self) -> NDArray[np.float64]:
        return self.j1 + self.j2 + self.j12

    @property
    def j_independent(self) -> NDArray[np.float64]:
        return 2.0 * self.j1

    def __len__(self) -> int:
        return len(self.t)

    def sample(self, i: int) -> FluxSample:
        return FluxSample(float(self.t[i]), float(self.j1[i]), float(self.j2[i]), float(self.j12[i]))

    @classmethod
    def from_samples(cls, samples: Iterable[FluxSample]) -> "FluxTrajectory":
        rows = list(samples)
        return cls(
            t=np.array([s.t for s in rows]),
            j1=np.array([s.j1 for s in rows]),
            j2=np.array([s.j2 for s in rows]),
            j12=np.array([s.j12 for s in rows]),
        )

    def to_csv(self, stream: IO[str]) -> None:
        """Write the trajectory as CSV with the fixed six-column schema."""
        stream.write(CSV_HEADER + "\n")
        jc = self.j_cascade
        ji = self.j_independent
        for k in range(len(self.t)):
            row = (self.t[k], self.j1[k], self.j2[k], self.j12[k], jc[k], ji[k])
            stream.write(",".join(_FMT.format(v) for v in row) + "\n")

    def write_csv(self, path: str) -> None:
        with open(path, "w", newline="\n") as fh:
            self.to_csv(fh)

    def to_json(self) -> str:
        payload = {
            "t": [float(_FMT.format(v)) for v in self.t],
            "j1": [float(_FMT.format(v)) for v in self.j1],
            "j2": [float(_FMT.format(v)) for v in self.j2],
            "j12": [float(_FMT.format(v)) for v in self.j12],
            "j_cascade": [float(_FMT.format(v)) for v in self.j_cascade],
            "j_independent": [float(_FMT.format(v)) for v in self.j_independent],
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def write_map_csv(path: str, rows: Iterable[tuple[float, float, float]]) -> None:
    """Write ``x,y,value`` rows for a two-parameter scan."""
    with open(path, "w", newline="\n") as fh:
        fh.write("x,y,value\n")
        for x, y, v in rows:
            fh.write(",".join(_FMT.format(float(u)) for u in (x, y, v)) + "\n")
