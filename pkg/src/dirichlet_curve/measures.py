"""Governing measures: the base probability laws that drive the Dirichlet curve.

A governing measure alpha is a probability on R^d from one of the families
below. Every family integrates log(1 + |x|), which is exactly the condition
for the mean of a Dirichlet random probability D(t*alpha) to exist, so each
of them defines a full curve t -> mu(t*alpha).

Measures are plain frozen dataclasses; `sample_measure`, `mean_of` and
`raw_moments` dispatch on the family.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from numpy.random import Generator, Philox, SeedSequence

__all__ = [
    "RngStream",
    "EmpiricalSample",
    "DiscreteAtoms",
    "Beta",
    "Uniform01",
    "BetaPrime",
    "Cauchy1D",
    "UniformCircle",
    "CauchyRd",
    "ScaledProduct",
    "GoverningMeasure",
    "bernoulli",
    "point_mass",
    "dimension_of",
    "describe",
    "satisfies_ft",
    "sample_measure",
    "mean_of",
    "raw_moments",
    "parse_measure_config",
]

_WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class RngStream:
    """A reproducible random stream addressed by (seed, stream_id).

    The same pair always reproduces the identical draw sequence; distinct
    stream_ids give statistically independent streams (counter-based Philox,
    so parallel streams need no coordination). Every operation that takes an
    RngStream consumes it from the start: pass distinct stream_ids to calls
    whose outputs must be independent of each other.
    """

    seed: int
    stream_id: int = 0

    def seed_sequence(self) -> SeedSequence:
        return SeedSequence(entropy=self.seed, spawn_key=(self.stream_id,))

    def generator(self) -> Generator:
        return Generator(Philox(self.seed_sequence()))

    def substream(self, k: int) -> "RngStream":
        """Derived stream for internal fan-out; distinct k give independent streams."""
        mixed = (self.stream_id * 0x9E3779B97F4A7C15 + k + 1) % (1 << 63)
        return RngStream(self.seed, mixed)


@dataclass(frozen=True)
class EmpiricalSample:
    """A batch of i.i.d. draws from some law: an (n, d) matrix plus provenance."""

    dimension: int
    draws: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        draws = np.asarray(self.draws, dtype=float)
        if draws.ndim == 1:
            draws = draws[:, None]
        if draws.ndim != 2 or draws.shape[0] < 1:
            raise ValueError("draws must be a nonempty (n, d) matrix")
        if draws.shape[1] != self.dimension:
            raise ValueError(
                f"draws have {draws.shape[1]} columns, expected dimension {self.dimension}"
            )
        if not np.all(np.isfinite(draws)):
            raise ValueError("draws must be finite")
        object.__setattr__(self, "draws", draws)

    @property
    def n(self) -> int:
        return self.draws.shape[0]

    def values(self) -> np.ndarray:
        """The draws as a flat vector; only for one-dimensional samples."""
        if self.dimension != 1:
            raise ValueError("values() requires a one-dimensional sample")
        return self.draws[:, 0]

    def to_csv(self, path) -> None:
        """One draw per row, d columns; provenance in '#' header comments."""
        with open(path, "w", newline="\n") as fh:
            for key, val in self.provenance.items():
                fh.write(f"# {key}={val}\n")
            for row in self.draws:
                fh.write(",".join(repr(float(v)) for v in row) + "\n")


# ---------------------------------------------------------------------------
# Measure families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiscreteAtoms:
    """Finitely supported probability: atoms x_i in R^d with weights summing to 1."""

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] < 1:
            raise ValueError("points must be a nonempty (k, d) array")
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (pts.shape[0],):
            raise ValueError("weights must match the number of atoms")
        if np.any(w <= 0):
            raise ValueError("atom weights must be positive")
        total = w.sum()
        if abs(total - 1.0) > _WEIGHT_TOL:
            raise ValueError(f"atom weights sum to {total!r}, not 1")
        # tolerate text-file round-off, reject anything larger
        w = w / total
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    @property
    def dimension(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class Beta:
    """beta(a, b) on (0, 1)."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError("beta parameters must be positive")

    dimension = 1


@dataclass(frozen=True)
class Uniform01:
    """Uniform on (0, 1)."""

    dimension = 1


@dataclass(frozen=True)
class BetaPrime:
    """beta-prime(a, b) on (0, inf): the law of Z/(1-Z) with Z ~ beta(a, b)."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError("beta-prime parameters must be positive")

    dimension = 1


@dataclass(frozen=True)
class Cauchy1D:
    """Cauchy on R with density (1/pi) * scale / ((x - location)^2 + scale^2)."""

    location: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError("scale must be positive")

    dimension = 1

    @property
    def w(self) -> complex:
        """Upper-half-plane parameter location + i*scale."""
        return complex(self.location, self.scale)


@dataclass(frozen=True)
class UniformCircle:
    """Uniform on the unit circle in R^2."""

    dimension = 2


@dataclass(frozen=True)
class CauchyRd:
    """Cauchy law on R^d given by a spectral measure on the unit sphere plus shift."""

    spectral: "object"  # SpectralCauchy; kept loose to avoid an import cycle

    @property
    def dimension(self) -> int:
        return self.spectral.dimension


@dataclass(frozen=True)
class ScaledProduct:
    """Law of X*Y for independent X ~ radial (one-dimensional, on [0, inf)) and Y ~ direction."""

    radial: "GoverningMeasure"
    direction: "GoverningMeasure"

    def __post_init__(self):
        if dimension_of(self.radial) != 1:
            raise ValueError("radial factor must be one-dimensional")
        if not (satisfies_ft(self.radial) and satisfies_ft(self.direction)):
            raise ValueError("both factors must integrate log(1 + |x|)")

    @property
    def dimension(self) -> int:
        return dimension_of(self.direction)


GoverningMeasure = Union[
    DiscreteAtoms,
    Beta,
    Uniform01,
    BetaPrime,
    Cauchy1D,
    UniformCircle,
    CauchyRd,
    ScaledProduct,
]


def bernoulli(p: float) -> DiscreteAtoms:
    """Two atoms: 1 with probability p, 0 with probability 1-p."""
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")
    return DiscreteAtoms(points=np.array([[0.0], [1.0]]), weights=np.array([1.0 - p, p]))


def point_mass(point) -> DiscreteAtoms:
    arr = np.atleast_1d(np.asarray(point, dtype=float))
    return DiscreteAtoms(points=arr[None, :], weights=np.array([1.0]))


def dimension_of(measure: GoverningMeasure) -> int:
    return measure.dimension


def describe(measure: GoverningMeasure) -> str:
    """Short human-readable description used in provenance headers."""
    if isinstance(measure, DiscreteAtoms):
        parts = [
            "(" + ",".join(repr(float(c)) for c in pt) + f"):{float(w)!r}"
            for pt, w in zip(measure.points, measure.weights)
        ]
        return "DiscreteAtoms{" + "; ".join(parts) + "}"
    if isinstance(measure, Beta):
        return f"Beta(a={measure.a!r}, b={measure.b!r})"
    if isinstance(measure, Uniform01):
        return "Uniform01"
    if isinstance(measure, BetaPrime):
        return f"BetaPrime(a={measure.a!r}, b={measure.b!r})"
    if isinstance(measure, Cauchy1D):
        return f"Cauchy1D(location={measure.location!r}, scale={measure.scale!r})"
    if isinstance(measure, UniformCircle):
        return "UniformCircle"
    if isinstance(measure, CauchyRd):
        return f"CauchyRd(atoms={len(measure.spectral.intensities)})"
    if isinstance(measure, ScaledProduct):
        return f"ScaledProduct({describe(measure.radial)}, {describe(measure.direction)})"
    raise TypeError(f"unknown measure {measure!r}")


def satisfies_ft(measure: GoverningMeasure) -> bool:
    """Whether log(1 + |x|) is alpha-integrable (it is, for every built-in family).

    Beta, Uniform01, UniformCircle and DiscreteAtoms are bounded; Cauchy and
    beta-prime tails decay polynomially with log(1+x) growing only
    logarithmically; a product X*Y satisfies log(1+|XY|) <= log(1+|X|) +
    log(1+|Y|), so ScaledProduct inherits the property from its factors.
    """
    if isinstance(
        measure,
        (DiscreteAtoms, Beta, Uniform01, BetaPrime, Cauchy1D, UniformCircle, CauchyRd),
    ):
        return True
    if isinstance(measure, ScaledProduct):
        return satisfies_ft(measure.radial) and satisfies_ft(measure.direction)
    raise TypeError(f"unknown measure {measure!r}")


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def draw_measure(measure: GoverningMeasure, n: int, gen: Generator) -> np.ndarray:
    """n i.i.d. draws from alpha as an (n, d) array, using an open generator."""
    if isinstance(measure, DiscreteAtoms):
        idx = gen.choice(measure.points.shape[0], size=n, p=measure.weights)
        return measure.points[idx]
    if isinstance(measure, Beta):
        return gen.beta(measure.a, measure.b, size=n)[:, None]
    if isinstance(measure, Uniform01):
        return gen.random(n)[:, None]
    if isinstance(measure, BetaPrime):
        z = gen.beta(measure.a, measure.b, size=n)
        # z == 1 would map to infinity; redraw the (measure-zero) saturations
        bad = z >= 1.0
        while np.any(bad):
            z[bad] = gen.beta(measure.a, measure.b, size=int(bad.sum()))
            bad = z >= 1.0
        return (z / (1.0 - z))[:, None]
    if isinstance(measure, Cauchy1D):
        return (measure.location + measure.scale * gen.standard_cauchy(n))[:, None]
    if isinstance(measure, UniformCircle):
        theta = 2.0 * np.pi * gen.random(n)
        return np.column_stack([np.cos(theta), np.sin(theta)])
    if isinstance(measure, CauchyRd):
        from .cauchy import draw_spectral_cauchy

        return draw_spectral_cauchy(measure.spectral, n, gen)
    if isinstance(measure, ScaledProduct):
        x = draw_measure(measure.radial, n, gen)
        y = draw_measure(measure.direction, n, gen)
        return x * y
    raise TypeError(f"unknown measure {measure!r}")


def sample_measure(measure: GoverningMeasure, n: int, rng: RngStream) -> EmpiricalSample:
    """n i.i.d. draws from alpha, reproducible given the stream."""
    if n < 1:
        raise ValueError("n must be at least 1")
    draws = draw_measure(measure, n, rng.generator())
    return EmpiricalSample(
        dimension=dimension_of(measure),
        draws=draws,
        provenance={
            "measure": describe(measure),
            "sampler": "direct",
            "seed": f"{rng.seed}/{rng.stream_id}",
        },
    )


# ---------------------------------------------------------------------------
# Analytic summaries
# ---------------------------------------------------------------------------


def mean_of(measure: GoverningMeasure) -> Optional[np.ndarray]:
    """The mean vector of alpha, or None when no first moment exists."""
    if isinstance(measure, DiscreteAtoms):
        return measure.weights @ measure.points
    if isinstance(measure, Beta):
        return np.array([measure.a / (measure.a + measure.b)])
    if isinstance(measure, Uniform01):
        return np.array([0.5])
    if isinstance(measure, BetaPrime):
        if measure.b > 1:
            return np.array([measure.a / (measure.b - 1.0)])
        return None
    if isinstance(measure, Cauchy1D):
        return None
    if isinstance(measure, UniformCircle):
        return np.zeros(2)
    if isinstance(measure, CauchyRd):
        return None
    if isinstance(measure, ScaledProduct):
        mx = mean_of(measure.radial)
        my = mean_of(measure.direction)
        if mx is None or my is None:
            return None
        return mx[0] * my
    raise TypeError(f"unknown measure {measure!r}")


def raw_moments(measure: GoverningMeasure, n_max: int) -> np.ndarray:
    """Exact raw moments m_k = E(X^k), k = 1..n_max, for one-dimensional alpha."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if dimension_of(measure) != 1:
        raise ValueError("raw moments are defined for one-dimensional measures only")
    k = np.arange(n_max)
    if isinstance(measure, DiscreteAtoms):
        x = measure.points[:, 0]
        return np.array([measure.weights @ x ** j for j in range(1, n_max + 1)])
    if isinstance(measure, Beta):
        return np.cumprod((measure.a + k) / (measure.a + measure.b + k))
    if isinstance(measure, Uniform01):
        return 1.0 / (k + 2.0)
    if isinstance(measure, BetaPrime):
        if n_max >= measure.b:
            raise ValueError(
                f"beta-prime(a, b={measure.b!r}) has finite moments only below order b"
            )
        return np.cumprod((measure.a + k) / (measure.b - 1.0 - k))
    if isinstance(measure, Cauchy1D):
        raise ValueError("Cauchy has no finite moments")
    if isinstance(measure, ScaledProduct):
        return raw_moments(measure.radial, n_max) * raw_moments(measure.direction, n_max)
    raise TypeError(f"unsupported measure for raw moments: {measure!r}")


# ---------------------------------------------------------------------------
# Plain-text configuration
# ---------------------------------------------------------------------------


def parse_measure_config(text: str) -> GoverningMeasure:
    """Build a measure from key=value lines; atoms as CSV rows x1,...,xd,weight.

    Example::

        family = discrete_atoms
        0, 0.5
        1, 0.5
    """
    pairs: dict[str, str] = {}
    rows: list[list[float]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" in line:
            key, val = line.split("=", 1)
            pairs[key.strip().lower()] = val.strip()
        else:
            rows.append([float(tok) for tok in line.split(",")])
    return _measure_from_pairs(pairs, rows)


def _measure_from_pairs(pairs: dict, rows: list) -> GoverningMeasure:
    family = pairs.get("family")
    if family is None:
        raise ValueError("measure config needs a 'family' key")
    family = family.lower()
    if family == "bernoulli":
        return bernoulli(float(pairs["p"]))
    if family == "discrete_atoms":
        if not rows:
            raise ValueError("discrete_atoms needs CSV atom rows x1,...,xd,weight")
        arr = np.asarray(rows, dtype=float)
        return DiscreteAtoms(points=arr[:, :-1], weights=arr[:, -1])
    if family == "beta":
        return Beta(float(pairs["a"]), float(pairs["b"]))
    if family == "uniform01":
        return Uniform01()
    if family == "beta_prime":
        return BetaPrime(float(pairs["a"]), float(pairs["b"]))
    if family == "cauchy1d":
        return Cauchy1D(float(pairs.get("location", 0.0)), float(pairs.get("scale", 1.0)))
    if family == "uniform_circle":
        return UniformCircle()
    if family == "cauchy_rd":
        from .cauchy import SpectralCauchy

        if not rows:
            raise ValueError("cauchy_rd needs CSV atom rows s1,...,sd,lambda")
        arr = np.asarray(rows, dtype=float)
        d = arr.shape[1] - 1
        shift = np.zeros(d)
        if "shift" in pairs:
            shift = np.asarray([float(t) for t in pairs["shift"].split(",")], dtype=float)
        spec = SpectralCauchy(
            dimension=d, shift=shift, directions=arr[:, :-1], intensities=arr[:, -1]
        )
        return CauchyRd(spec)
    if family == "scaled_product":
        radial = _sub_measure(pairs, rows, "radial.")
        direction = _sub_measure(pairs, rows, "direction.")
        return ScaledProduct(radial, direction)
    raise ValueError(f"unknown measure family {family!r}")


def _sub_measure(pairs: dict, rows: list, prefix: str) -> GoverningMeasure:
    sub = {k[len(prefix):]: v for k, v in pairs.items() if k.startswith(prefix)}
    return _measure_from_pairs(sub, rows)
