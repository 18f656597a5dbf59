"""Band-limited target functions: d-variate trigonometric polynomials.

A target is a finite Fourier series sum_k c_k e^{j x.k} over the integer
lattice {-K..K}^d with conjugate-symmetric complex coefficients, so values
are real.  Coefficients are stored in column-stack order of the lattice with
axis 0 fastest; every module in the package shares this one convention.

Evaluation treats the function as 2*pi-periodic per axis: points are wrapped
into [-pi, pi) first (the boundary x = pi maps to -pi).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * np.pi

# Cap on entries of the point-by-frequency phase matrix built per chunk.
_CHUNK_ENTRY_BUDGET = 1 << 23


def frequency_lattice(dim: int, bandwidth: int) -> np.ndarray:
    """Integer frequencies of {-K..K}^dim, shape (count, dim), axis 0 fastest."""
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    if bandwidth < 0:
        raise ValueError(f"bandwidth must be >= 0, got {bandwidth}")
    axis = np.arange(-bandwidth, bandwidth + 1)
    grids = np.meshgrid(*([axis] * dim), indexing="ij")
    return np.stack([g.reshape(-1, order="F") for g in grids], axis=-1)


def wrap_periodic(x: np.ndarray) -> np.ndarray:
    """Wrap coordinates into [-pi, pi); x = pi lands on -pi."""
    return np.mod(np.asarray(x, dtype=np.float64) + np.pi, TWO_PI) - np.pi


def _mirror_index(dim: int, bandwidth: int) -> np.ndarray:
    """Permutation sending lattice entry k to entry -k."""
    side = 2 * bandwidth + 1
    count = side**dim
    idx = np.arange(count)
    coords = []
    rest = idx
    for _ in range(dim):
        coords.append(rest % side)
        rest = rest // side
    mirrored = 0
    for axis in reversed(range(dim)):
        mirrored = mirrored * side + (side - 1 - coords[axis])
    return mirrored


@dataclass(frozen=True)
class BandlimitedFn:
    """A real-valued trigonometric polynomial on [-pi, pi)^dim.

    coeffs holds the (2K+1)^dim complex Fourier coefficients in lattice
    order; conjugate symmetry c_{-k} = conj(c_k) is verified at construction.
    """

    dim: int
    bandwidth: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if self.bandwidth < 0:
            raise ValueError(f"bandwidth must be >= 0, got {self.bandwidth}")
        coeffs = np.asarray(self.coeffs, dtype=np.complex128)
        expected = (2 * self.bandwidth + 1) ** self.dim
        if coeffs.shape != (expected,):
            raise ValueError(
                f"expected {expected} coefficients for dim={self.dim}, "
                f"K={self.bandwidth}, got shape {coeffs.shape}"
            )
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")
        mirror = _mirror_index(self.dim, self.bandwidth)
        asym = np.max(np.abs(coeffs[mirror] - np.conj(coeffs)))
        scale = max(float(np.max(np.abs(coeffs))), 1.0)
        if asym > 1e-12 * scale:
            raise ValueError(
                f"coefficients are not conjugate symmetric (residue {asym:.3e})"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def frequencies(self) -> np.ndarray:
        return frequency_lattice(self.dim, self.bandwidth)

    def __call__(self, x) -> np.ndarray:
        """Evaluate at an (m, dim) batch of points; returns shape (m,)."""
        pts = wrap_periodic(np.atleast_2d(np.asarray(x, dtype=np.float64)))
        if pts.shape[1] != self.dim:
            raise ValueError(f"points must have {self.dim} columns, got {pts.shape[1]}")
        freqs = self.frequencies.astype(np.float64)
        out = np.empty(pts.shape[0])
        chunk = max(1, _CHUNK_ENTRY_BUDGET // max(len(self.coeffs), 1))
        for lo in range(0, pts.shape[0], chunk):
            phase = pts[lo : lo + chunk] @ freqs.T
            out[lo : lo + chunk] = (np.exp(1j * phase) @ self.coeffs).real
        return out

    def energy(self) -> float:
        """Sum of squared coefficient magnitudes (mean-square value of f)."""
        return float(np.sum(np.abs(self.coeffs) ** 2))


def evaluate(fn: BandlimitedFn, x) -> float:
    """Evaluate at a single point (scalar or length-dim sequence)."""
    pt = np.atleast_1d(np.asarray(x, dtype=np.float64)).reshape(1, -1)
    return float(fn(pt)[0])


@dataclass(frozen=True)
class SpectrumProfile:
    """How random coefficients are drawn: flat, power-law decaying, or one tone."""

    kind: str = "flat"
    seed: int = 0
    amplitude: float = 1.0
    exponent: float | None = None

    def __post_init__(self):
        if self.kind not in ("flat", "decaying", "single-tone"):
            raise ValueError(f"unknown profile kind {self.kind!r}")
        if self.kind == "decaying":
            if self.exponent is None or self.exponent <= 0:
                raise ValueError("decaying profile needs exponent > 0")


def _symmetrize_from_half(dim, bandwidth, magnitudes, phases):
    """Assemble conjugate-symmetric coefficients from half-lattice draws.

    For each +/-k pair the representative with positive last nonzero
    coordinate receives magnitude * e^{j phase}; the mirror gets the
    conjugate.  k = 0 is real.
    """
    freqs = frequency_lattice(dim, bandwidth)
    mirror = _mirror_index(dim, bandwidth)
    count = len(freqs)
    coeffs = np.zeros(count, dtype=np.complex128)
    zero_idx = (count - 1) // 2
    for i in range(count):
        k = freqs[i]
        nonzero = k[k != 0]
        if len(nonzero) == 0:
            coeffs[i] = magnitudes[i]
        elif nonzero[-1] > 0:
            coeffs[i] = magnitudes[i] * np.exp(1j * phases[i])
            coeffs[mirror[i]] = np.conj(coeffs[i])
    assert abs(coeffs[zero_idx].imag) == 0.0
    return coeffs


def random_bandlimited(dim: int, bandwidth: int, profile: SpectrumProfile) -> BandlimitedFn:
    """Draw a random target with bandwidth exactly K, deterministic per seed.

    flat: every |c_k| strictly positive (uniform in [0.3, 1] before
    normalization), random phases. decaying: |c_k| proportional to
    ||k||_1^(-p). single-tone: one random +/-k pair (plus nothing else).
    Total energy sum |c_k|^2 is normalized to amplitude^2.
    """
    if dim < 1 or bandwidth < 0:
        raise ValueError("need dim >= 1 and bandwidth >= 0")
    rng = np.random.default_rng(profile.seed)
    freqs = frequency_lattice(dim, bandwidth)
    count = len(freqs)
    phases = rng.uniform(0.0, TWO_PI, size=count)
    if profile.kind == "flat":
        magnitudes = rng.uniform(0.3, 1.0, size=count)
    elif profile.kind == "decaying":
        norms = np.abs(freqs).sum(axis=1).astype(np.float64)
        norms[norms == 0] = 1.0
        magnitudes = norms ** (-profile.exponent)
    else:  # single-tone
        magnitudes = np.zeros(count)
        nonzero_rows = np.flatnonzero(np.any(freqs != 0, axis=1))
        if len(nonzero_rows) == 0:
            magnitudes[0] = 1.0  # K = 0: only the constant exists
        else:
            pick = int(rng.choice(nonzero_rows))
            magnitudes[pick] = 1.0
            magnitudes[_mirror_index(dim, bandwidth)[pick]] = 1.0
    coeffs = _symmetrize_from_half(dim, bandwidth, magnitudes, phases)
    total = np.sum(np.abs(coeffs) ** 2)
    if total > 0:
        coeffs = coeffs * (profile.amplitude / np.sqrt(total))
    return BandlimitedFn(dim, bandwidth, coeffs)


def random_fast_decay(dim: int, max_bandwidth: int, exponent: float, seed: int,
                      amplitude: float = 1.0) -> BandlimitedFn:
    """Approximately band-limited target: |c_k| = amplitude * ||k||_1^(-p).

    Magnitudes are deterministic in k (no normalization), phases random but
    conjugate-symmetrized; truncated at max_bandwidth.
    """
    if exponent < 1:
        raise ValueError(f"exponent must be >= 1, got {exponent}")
    if max_bandwidth < 1:
        raise ValueError(f"max_bandwidth must be >= 1, got {max_bandwidth}")
    rng = np.random.default_rng(seed)
    freqs = frequency_lattice(dim, max_bandwidth)
    count = len(freqs)
    phases = rng.uniform(0.0, TWO_PI, size=count)
    norms = np.abs(freqs).sum(axis=1).astype(np.float64)
    norms[norms == 0] = 1.0
    magnitudes = amplitude * norms ** (-exponent)
    coeffs = _symmetrize_from_half(dim, max_bandwidth, magnitudes, phases)
    return BandlimitedFn(dim, max_bandwidth, coeffs)


def fourier_tail_energy(fn: BandlimitedFn, bandwidth: int) -> float:
    """Energy sum |c_k|^2 over frequencies with ||k||_inf > bandwidth."""
    if bandwidth < 0:
        raise ValueError(f"bandwidth must be >= 0, got {bandwidth}")
    outside = np.max(np.abs(fn.frequencies), axis=1) > bandwidth
    return float(np.sum(np.abs(fn.coeffs[outside]) ** 2))


def save_bandlimited(fn: BandlimitedFn, path) -> None:
    """Write a target to a structured text file; round trip is bit exact."""
    lines = ["bandlimited v1", f"dim {fn.dim}", f"bandwidth {fn.bandwidth}"]
    for c in fn.coeffs:
        lines.append(f"coeff {float(c.real)!r} {float(c.imag)!r}")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def load_bandlimited(path) -> BandlimitedFn:
    with open(path, "r", encoding="ascii") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or lines[0] != "bandlimited v1":
        raise ValueError(f"{path}: not a bandlimited target file")
    header = {}
    coeffs = []
    for ln in lines[1:]:
        fields = ln.split()
        if fields[0] == "coeff":
            coeffs.append(complex(float(fields[1]), float(fields[2])))
        else:
            header[fields[0]] = fields[1]
    try:
        dim = int(header["dim"])
        bandwidth = int(header["bandwidth"])
    except KeyError as missing:
        raise ValueError(f"{path}: missing field {missing}") from None
    return BandlimitedFn(dim, bandwidth, np.array(coeffs, dtype=np.complex128))
