"""Expected-degree distributions and their derived quantities.

A degree model is a probability distribution over positive expected degrees.
It may mix a discrete part (weighted atoms) with a continuous part on a finite
support; the continuous part is reduced at construction to Gauss-Legendre
nodes, so every downstream computation sees a single list of weighted degree
values.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import ModelValidationError, PoleError

WEIGHT_TOL = 1e-12
ATOM_MERGE_RTOL = 1e-9
DEFAULT_QUAD_NODES = 256

KIND_POISSON = "poisson-equivalent"
KIND_DISCRETE = "discrete"
KIND_CONTINUOUS = "continuous"


def _as_readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DegreeModel:
    """Immutable distribution of expected degrees.

    Attributes:
        degrees: node positions (atoms and/or quadrature nodes), ascending.
        weights: matching probability masses, summing to 1.
        kind: "poisson-equivalent" (single atom), "discrete", or "continuous".
        support: (lo, hi) of the continuous part, or None.
    """

    degrees: np.ndarray
    weights: np.ndarray
    kind: str
    support: tuple[float, float] | None = None
    quad_nodes: int = 0
    n_atoms: int = field(default=0)  # leading entries of `degrees` that are true atoms

    def __post_init__(self):
        if self.degrees.size == 0:
            raise ModelValidationError("degree model must have at least one node")
        if np.any(self.degrees <= 0):
            raise ModelValidationError("all degrees must be strictly positive")
        if np.any(np.diff(self.degrees[: self.n_atoms]) <= 0):
            raise ModelValidationError("atoms must be ascending and distinct")
        if np.any(self.weights <= 0) or np.any(self.weights > 1):
            raise ModelValidationError("weights must lie in (0, 1]")
        total = float(self.weights.sum())
        if abs(total - 1.0) > WEIGHT_TOL:
            raise ModelValidationError(
                f"weights must sum to 1 within {WEIGHT_TOL:g}, got {total!r}")

    # ---------------------------------------------------------------- builders

    @classmethod
    def from_atoms(cls, atoms: Sequence[tuple[float, float]]) -> "DegreeModel":
        """Build a purely discrete model from (degree, weight) pairs.

        Degrees closer than a relative 1e-9 are merged and their weights
        summed.  Weights must total 1.
        """
        d, w = _merge_atoms(atoms)
        kind = KIND_POISSON if len(d) == 1 else KIND_DISCRETE
        return cls(degrees=_as_readonly(d), weights=_as_readonly(w),
                   kind=kind, n_atoms=len(d))

    @classmethod
    def poisson(cls, c: float) -> "DegreeModel":
        """All vertices share the same expected degree c."""
        return cls.from_atoms([(float(c), 1.0)])

    @classmethod
    def from_parts(cls, atoms: Sequence[tuple[float, float]] = (),
                   density: Callable[[np.ndarray], np.ndarray] | None = None,
                   lo: float = 0.0, hi: float = 0.0,
                   nodes: int = DEFAULT_QUAD_NODES) -> "DegreeModel":
        """Combine an optional atomic part with an optional continuous part.

        The continuous density is discretized to `nodes` Gauss-Legendre points
        on [lo, hi] and carries whatever probability mass the atoms leave
        over (all of it when there are no atoms).

        Args:
            atoms: (degree, weight) pairs; weights need not sum to 1 here.
            density: vectorized density handle, up to normalization.
            lo, hi: finite support of the continuous part, hi > lo >= 0.
            nodes: quadrature node count.
        """
        if density is None:
            if not atoms:
                raise ModelValidationError("need atoms, a density, or both")
            return cls.from_atoms(atoms)
        if not (np.isfinite(lo) and np.isfinite(hi)):
            raise ModelValidationError("continuous support must be finite")
        if not (hi > lo >= 0.0):
            raise ModelValidationError("continuous support needs hi > lo >= 0")
        if nodes < 2:
            raise ModelValidationError("quadrature needs at least 2 nodes")

        atom_d, atom_w = _merge_atoms(atoms) if atoms else (np.empty(0), np.empty(0))
        atom_mass = float(atom_w.sum())
        cont_mass = 1.0 - atom_mass
        if cont_mass <= WEIGHT_TOL:
            raise ModelValidationError(
                "atom weights leave no mass for the continuous part")

        x, wq = leggauss(int(nodes))
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        k = mid + half * x
        f = np.asarray(density(k), dtype=float)
        if np.any(f < 0) or not np.all(np.isfinite(f)):
            raise ModelValidationError("density must be finite and non-negative")
        w = wq * half * f
        s = w.sum()
        if s <= 0:
            raise ModelValidationError("density integrates to zero on the support")
        w *= cont_mass / s  # exact normalization; quadrature error folds in here
        if k[0] <= 0.0:
            raise ModelValidationError("continuous support must stay positive")

        d_all = np.concatenate([atom_d, k])
        w_all = np.concatenate([atom_w, w])
        return cls(degrees=_as_readonly(d_all), weights=_as_readonly(w_all),
                   kind=KIND_CONTINUOUS, support=(float(lo), float(hi)),
                   quad_nodes=int(nodes), n_atoms=len(atom_d))

    @classmethod
    def uniform(cls, lo: float, hi: float,
                nodes: int = DEFAULT_QUAD_NODES) -> "DegreeModel":
        """Uniform density on [lo, hi]."""
        return cls.from_parts(density=lambda k: np.ones_like(k),
                              lo=lo, hi=hi, nodes=nodes)

    @classmethod
    def from_spec(cls, spec: dict) -> "DegreeModel":
        """Build a model from its JSON-style dict description.

        Schema::

            {"atoms": [[degree, weight], ...],
             "continuous": {"kind": "uniform" | "tabulated",
                            "lo": .., "hi": .., "nodes": 256,
                            "k": [...], "density": [...]}}

        Either key may be omitted (not both).  "k"/"density" apply to the
        tabulated kind only and are interpolated linearly; "lo"/"hi" default
        to the tabulated endpoints.  The continuous block receives the mass
        the atoms leave over.
        """
        atoms = [(float(d), float(p)) for d, p in spec.get("atoms", [])]
        cont = spec.get("continuous")
        if cont is None:
            if not atoms:
                raise ModelValidationError("model spec is empty")
            return cls.from_atoms(atoms)
        ckind = cont.get("kind", "uniform")
        nodes = int(cont.get("nodes", DEFAULT_QUAD_NODES))
        if ckind == "uniform":
            lo, hi = float(cont["lo"]), float(cont["hi"])
            return cls.from_parts(atoms, lambda k: np.ones_like(k), lo, hi, nodes)
        if ckind == "tabulated":
            kk = np.asarray(cont["k"], dtype=float)
            ff = np.asarray(cont["density"], dtype=float)
            if kk.ndim != 1 or kk.shape != ff.shape or kk.size < 2:
                raise ModelValidationError("tabulated part needs matching k/density arrays")
            if np.any(np.diff(kk) <= 0):
                raise ModelValidationError("tabulated k grid must be ascending")
            lo = float(cont.get("lo", kk[0]))
            hi = float(cont.get("hi", kk[-1]))
            dens = lambda x: np.interp(x, kk, ff, left=0.0, right=0.0)
            return cls.from_parts(atoms, dens, lo, hi, nodes)
        raise ModelValidationError(f"unknown continuous kind {ckind!r}")

    @classmethod
    def from_file(cls, path: str | Path) -> "DegreeModel":
        """Load a model spec JSON file (see `from_spec` for the schema)."""
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_spec(json.load(fh))

    @classmethod
    def _from_nodes(cls, degrees: np.ndarray, weights: np.ndarray, kind: str,
                    support: tuple[float, float] | None, quad_nodes: int,
                    n_atoms: int) -> "DegreeModel":
        # internal: rebuild a derived model (e.g. excess distribution) from
        # already-validated node arrays
        return cls(degrees=_as_readonly(degrees), weights=_as_readonly(weights),
                   kind=kind, support=support, quad_nodes=quad_nodes,
                   n_atoms=n_atoms)

    # ------------------------------------------------------------- derived

    @property
    def max_degree(self) -> float:
        return float(self.degrees[-1]) if self.n_atoms == self.degrees.size \
            else float(self.degrees.max())

    def mean_degree(self) -> float:
        """Average expected degree c = sum_r w_r d_r."""
        return float(np.dot(self.weights, self.degrees))

    def moment(self, r: int) -> float:
        """r-th moment <k^r> of the distribution, r >= 1."""
        if r < 1:
            raise ValueError("moment order must be >= 1")
        return float(np.dot(self.weights, self.degrees ** r))

    def excess_distribution(self) -> "DegreeModel":
        """Distribution of the degree found by following a random edge.

        Each weight is tilted by its degree, q(k) = k p(k) / c, and the
        result is renormalized exactly.
        """
        w = self.weights * self.degrees
        w = w / w.sum()
        return DegreeModel._from_nodes(self.degrees, w, self.kind,
                                       self.support, self.quad_nodes,
                                       self.n_atoms)

    def cauchy_transform(self, z: complex) -> complex:
        """Cauchy transform of k p(k): sum_r w_r d_r / (z - d_r).

        Real z must keep clear of every node; within a relative 1e-14 of a
        node the sum is dominated by roundoff and a PoleError is raised.
        """
        z = complex(z)
        if z.imag == 0.0:
            gap = np.abs(z.real - self.degrees)
            if np.any(gap < 1e-14 * self.degrees):
                raise PoleError(f"z={z.real!r} coincides with a degree node")
        return complex(np.sum(self.weights * self.degrees / (z - self.degrees)))

    def sample_degrees(self, n: int, seed: int) -> "DegreeSequence":
        """Draw n expected degrees, reproducibly for a given seed.

        Atoms are sampled by weight; the continuous part by inverse CDF built
        piecewise-linearly over the quadrature nodes.  The stream is a
        Philox-keyed generator, so identical (model, n, seed) give identical
        sequences.
        """
        if n < 1:
            raise ValueError("n must be >= 1")
        rng = np.random.Generator(np.random.Philox(key=np.uint64(seed)))
        u = rng.random(n)
        if self.n_atoms == self.degrees.size:
            # purely atomic: partition [0,1) by cumulative weight
            cum = np.cumsum(self.weights)
            cum[-1] = 1.0
            idx = np.searchsorted(cum, u, side="right")
            k = self.degrees[idx]
            return DegreeSequence.from_values(k)

        atom_d = self.degrees[: self.n_atoms]
        atom_w = self.weights[: self.n_atoms]
        node_d = self.degrees[self.n_atoms:]
        node_w = self.weights[self.n_atoms:]
        atom_mass = float(atom_w.sum())
        k = np.empty(n)
        is_atom = u < atom_mass
        if self.n_atoms:
            cum = np.cumsum(atom_w)
            idx = np.searchsorted(cum, u[is_atom], side="right")
            idx = np.minimum(idx, self.n_atoms - 1)
            k[is_atom] = atom_d[idx]
        # continuous part: piecewise-linear CDF through the node positions
        lo, hi = self.support
        grid = np.concatenate([[lo], node_d, [hi]])
        cdf = np.concatenate([[0.0], np.cumsum(node_w)])
        cdf = np.concatenate([cdf, [cdf[-1]]])
        v = (u[~is_atom] - atom_mass)  # uniform on [0, cont_mass)
        k[~is_atom] = np.interp(v, cdf, grid)
        return DegreeSequence.from_values(k)

    def __repr__(self) -> str:
        return (f"DegreeModel(kind={self.kind!r}, nodes={self.degrees.size}, "
                f"c={self.mean_degree():.6g})")


def _merge_atoms(atoms: Sequence[tuple[float, float]]) -> tuple[np.ndarray, np.ndarray]:
    if not atoms:
        raise ModelValidationError("at least one atom required")
    pairs = sorted((float(d), float(p)) for d, p in atoms)
    d_out: list[float] = []
    w_out: list[float] = []
    for d, p in pairs:
        if d <= 0:
            raise ModelValidationError("atom degrees must be positive")
        if not np.isfinite(d):
            raise ModelValidationError("atom degrees must be finite")
        if d_out and abs(d - d_out[-1]) <= ATOM_MERGE_RTOL * d:
            w_out[-1] += p
        else:
            d_out.append(d)
            w_out.append(p)
    return np.asarray(d_out), np.asarray(w_out)


@dataclass(frozen=True, eq=False)
class DegreeSequence:
    """Concrete expected degrees k_1..k_n for one network."""

    k: np.ndarray
    n: int
    two_m: float

    @classmethod
    def from_values(cls, values: Sequence[float] | np.ndarray) -> "DegreeSequence":
        k = _as_readonly(np.asarray(values, dtype=float))
        if k.ndim != 1 or k.size == 0:
            raise ModelValidationError("degree sequence must be a non-empty vector")
        if np.any(k <= 0):
            raise ModelValidationError("expected degrees must be strictly positive")
        return cls(k=k, n=int(k.size), two_m=float(k.sum()))

    def mean(self) -> float:
        return self.two_m / self.n
