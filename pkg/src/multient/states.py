"""Quantum-state types, validation and the text file format.

Basis ordering: the first listed particle is the most significant digit of
the flat index.
"""
from __future__ import annotations

import io
import math
import warnings
from dataclasses import dataclass
from string import ascii_uppercase

import numpy as np

from . import numeric

MAX_TOTAL = 4096
NORM_TOL = 1e-8
TRACE_TOL = 1e-8
PSD_TOL = 1e-8
RENORM_MIN = 1e-12
RENORM_MAX = 1e-6


class StateError(ValueError):
    """Invalid state data. ``lineno`` is set when the error came from a file."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class SubsystemShape:
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if len(dims) < 2:
            raise StateError(f"need at least 2 particles, got {len(dims)}")
        if any(d < 2 for d in dims):
            raise StateError(f"every particle dimension must be >= 2, got {dims}")
        if math.prod(dims) > MAX_TOTAL:
            raise StateError(f"total dimension {math.prod(dims)} exceeds {MAX_TOTAL}")

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def total(self) -> int:
        return math.prod(self.dims)

    def reordered(self, order) -> SubsystemShape:
        return SubsystemShape(tuple(self.dims[p] for p in order))

    def __str__(self):
        return "x".join(map(str, self.dims))


def _readonly(a):
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PureState:
    shape: SubsystemShape
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _readonly(self.amplitudes).ravel()
        object.__setattr__(self, "amplitudes", amps)
        if amps.shape[0] != self.shape.total:
            raise StateError(
                f"expected {self.shape.total} amplitudes for dims {self.shape.dims}, "
                f"got {amps.shape[0]}"
            )
        if not np.all(np.isfinite(amps)):
            raise StateError("amplitudes must be finite")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise StateError(f"state is not normalized (sum |a|^2 = {norm2:.12g})")

    @classmethod
    def from_amplitudes(cls, dims, amplitudes, normalize=False) -> PureState:
        amps = np.asarray(amplitudes, dtype=np.complex128).ravel()
        if normalize:
            norm = np.linalg.norm(amps)
            if norm == 0:
                raise StateError("cannot normalize the zero vector")
            amps = amps / norm
        return cls(SubsystemShape(tuple(dims)), amps)

    @property
    def is_pure(self) -> bool:
        return True


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    shape: SubsystemShape
    matrix: np.ndarray

    def __post_init__(self):
        m = _readonly(self.matrix)
        object.__setattr__(self, "matrix", m)
        s = self.shape.total
        if m.shape != (s, s):
            raise StateError(f"expected a {s}x{s} matrix for dims {self.shape.dims}, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise StateError("matrix entries must be finite")
        herm = numeric.hermiticity_error(m)
        if herm > numeric.HERMITIAN_TOL:
            raise StateError(f"matrix is not Hermitian (max deviation {herm:.3g})")
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise StateError(f"trace is {tr:.12g}, expected 1")
        lo = numeric.hermitian_eigenvalues(m)[0]
        if lo < -PSD_TOL:
            raise StateError(f"matrix is not positive semidefinite (min eigenvalue {lo:.3g})")

    @classmethod
    def _unchecked(cls, shape, matrix) -> DensityMatrix:
        # For matrices produced by exact permutations of an already valid state.
        obj = object.__new__(cls)
        object.__setattr__(obj, "shape", shape)
        object.__setattr__(obj, "matrix", _readonly(matrix))
        return obj

    @property
    def is_pure(self) -> bool:
        return False


@dataclass(frozen=True)
class Bipartition:
    """One grouping: ``side1`` is the smaller big subsystem, the rest is side 2."""

    shape: SubsystemShape
    side1: tuple[int, ...]

    def __post_init__(self):
        side1 = tuple(int(p) for p in self.side1)
        object.__setattr__(self, "side1", side1)
        n = self.shape.n
        if not side1:
            raise StateError("side1 must be nonempty")
        if any(b <= a for a, b in zip(side1, side1[1:])):
            raise StateError(f"side1 positions must be strictly increasing, got {side1}")
        if side1[0] < 0 or side1[-1] >= n:
            raise StateError(f"side1 positions {side1} out of range for {n} particles")
        if len(side1) > n // 2:
            raise StateError(f"side1 has {len(side1)} particles, at most {n // 2} allowed")

    @property
    def side2(self) -> tuple[int, ...]:
        s1 = set(self.side1)
        return tuple(p for p in range(self.shape.n) if p not in s1)

    @property
    def order(self) -> tuple[int, ...]:
        return self.side1 + self.side2

    @property
    def n1(self) -> int:
        return math.prod(self.shape.dims[p] for p in self.side1)

    @property
    def n2(self) -> int:
        return self.shape.total // self.n1

    @property
    def label(self) -> str:
        if self.shape.n <= len(ascii_uppercase):
            name = lambda ps: "".join(ascii_uppercase[p] for p in ps)  # noqa: E731
        else:
            name = lambda ps: ",".join(map(str, ps))  # noqa: E731
        return f"{name(self.side1)}|{name(self.side2)}"


def flat_index(shape, local_indices) -> int:
    """Mixed-radix index with the first particle most significant."""
    if len(local_indices) != shape.n:
        raise StateError(f"expected {shape.n} local indices, got {len(local_indices)}")
    index = 0
    for pos, (i, d) in enumerate(zip(local_indices, shape.dims)):
        if not 0 <= i < d:
            raise StateError(f"local index {i} out of range for particle {pos} (dim {d})")
        index = index * d + i
    return index


def local_indices(shape, index) -> tuple[int, ...]:
    if not 0 <= index < shape.total:
        raise StateError(f"flat index {index} out of range 0..{shape.total - 1}")
    out = []
    for d in reversed(shape.dims):
        index, r = divmod(index, d)
        out.append(r)
    return tuple(reversed(out))


def to_density(psi: PureState) -> DensityMatrix:
    a = psi.amplitudes
    return DensityMatrix._unchecked(psi.shape, np.outer(a, a.conj()))


def as_density(state) -> DensityMatrix:
    return to_density(state) if state.is_pure else state


def ghz_state(n, d=2) -> PureState:
    """``(|0...0> + ... + |d-1...d-1>) / sqrt(d)`` on ``n`` particles."""
    shape = SubsystemShape((d,) * n)
    amps = np.zeros(shape.total, dtype=np.complex128)
    for k in range(d):
        amps[flat_index(shape, (k,) * n)] = 1 / math.sqrt(d)
    return PureState(shape, amps)


def product_state(*factors) -> PureState:
    """Tensor product of single-particle (or multi-particle) vectors, first factor leftmost."""
    amps = np.ones(1, dtype=np.complex128)
    dims = []
    for f in factors:
        if isinstance(f, PureState):
            dims.extend(f.shape.dims)
            f = f.amplitudes
        else:
            f = np.asarray(f, dtype=np.complex128)
            dims.append(f.shape[0])
        amps = np.kron(amps, f)
    return PureState.from_amplitudes(dims, amps, normalize=True)


def random_pure(dims, rng) -> PureState:
    total = math.prod(dims)
    v = rng.standard_normal(total) + 1j * rng.standard_normal(total)
    return PureState.from_amplitudes(dims, v, normalize=True)


def random_mixed(dims, rng, rank=None) -> DensityMatrix:
    """Random density matrix ``G G^dagger / tr`` with Ginibre ``G`` of the given rank."""
    total = math.prod(dims)
    rank = total if rank is None else rank
    g = rng.standard_normal((total, rank)) + 1j * rng.standard_normal((total, rank))
    rho = g @ g.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(SubsystemShape(tuple(dims)), rho / np.trace(rho).real)


# --- text format -----------------------------------------------------------


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_int(tok, lineno, what):
    try:
        return int(tok)
    except ValueError:
        raise StateError(f"{what} must be an integer, got {tok!r}", lineno) from None


def _parse_float(tok, lineno, what):
    try:
        x = float(tok)
    except ValueError:
        raise StateError(f"{what} must be a number, got {tok!r}", lineno) from None
    if not math.isfinite(x):
        raise StateError(f"{what} must be finite, got {tok!r}", lineno)
    return x


def parse_state(text):
    """Parse the line-oriented state format into a PureState or DensityMatrix.

    ``text`` may be a string or a readable text stream.
    """
    if not isinstance(text, str):
        text = text.read()
    lines = _content_lines(text)

    try:
        lineno, line = next(lines)
    except StopIteration:
        raise StateError("empty state file") from None
    key, _, rest = line.partition(":")
    if key.strip() != "dims" or not _:
        raise StateError(f"expected 'dims: d1 d2 ...', got {line!r}", lineno)
    dims = tuple(_parse_int(t, lineno, "dimension") for t in rest.split())
    try:
        shape = SubsystemShape(dims)
    except StateError as exc:
        raise StateError(str(exc), lineno) from None

    try:
        lineno, line = next(lines)
    except StopIteration:
        raise StateError("missing 'kind:' line") from None
    key, _, rest = line.partition(":")
    kind = rest.strip()
    if key.strip() != "kind" or not _ or kind not in ("pure", "mixed"):
        raise StateError(f"expected 'kind: pure' or 'kind: mixed', got {line!r}", lineno)

    s = shape.total
    if kind == "pure":
        amps = np.zeros(s, dtype=np.complex128)
        seen = set()
        for lineno, line in lines:
            toks = line.split()
            if toks[0] != "a" or len(toks) != 4:
                raise StateError(f"expected 'a <index> <re> <im>', got {line!r}", lineno)
            idx = _parse_int(toks[1], lineno, "index")
            if not 0 <= idx < s:
                raise StateError(f"amplitude index {idx} out of range 0..{s - 1}", lineno)
            if idx in seen:
                raise StateError(f"duplicate amplitude index {idx}", lineno)
            seen.add(idx)
            amps[idx] = complex(
                _parse_float(toks[2], lineno, "real part"), _parse_float(toks[3], lineno, "imaginary part")
            )
        norm = float(np.linalg.norm(amps))
        dev = abs(norm - 1.0)
        if dev > RENORM_MAX:
            raise StateError(f"state norm {norm:.12g} deviates from 1 by more than {RENORM_MAX:g}")
        if dev > RENORM_MIN:
            warnings.warn(f"renormalizing state with norm {norm:.15g}", stacklevel=2)
            amps = amps / norm
        return PureState(shape, amps)

    entries = {}
    for lineno, line in lines:
        toks = line.split()
        if toks[0] != "m" or len(toks) != 5:
            raise StateError(f"expected 'm <row> <col> <re> <im>', got {line!r}", lineno)
        r = _parse_int(toks[1], lineno, "row")
        c = _parse_int(toks[2], lineno, "column")
        if not (0 <= r < s and 0 <= c < s):
            raise StateError(f"entry ({r}, {c}) out of range 0..{s - 1}", lineno)
        if (r, c) in entries:
            raise StateError(f"duplicate entry ({r}, {c})", lineno)
        val = complex(_parse_float(toks[3], lineno, "real part"), _parse_float(toks[4], lineno, "imaginary part"))
        entries[(r, c)] = (val, lineno)

    rho = np.zeros((s, s), dtype=np.complex128)
    for (r, c), (val, lineno) in entries.items():
        if r == c:
            if abs(val.imag) > numeric.HERMITIAN_TOL:
                raise StateError(f"diagonal entry ({r}, {r}) has imaginary part {val.imag:g}", lineno)
        else:
            partner = entries.get((c, r))
            if partner is None:
                raise StateError(f"entry ({r}, {c}) given without its conjugate ({c}, {r})", lineno)
            if abs(partner[0] - val.conjugate()) > numeric.HERMITIAN_TOL:
                raise StateError(f"entries ({r}, {c}) and ({c}, {r}) are not complex conjugates", lineno)
        rho[r, c] = val
    return DensityMatrix(shape, rho)


def load_state(path):
    with open(path, encoding="utf-8") as fh:
        return parse_state(fh.read())


def _fmt(x):
    return format(x, ".17g")


def serialize_state(state) -> str:
    buf = io.StringIO()
    buf.write("dims: " + " ".join(map(str, state.shape.dims)) + "\n")
    if state.is_pure:
        buf.write("kind: pure\n")
        for i, a in enumerate(state.amplitudes):
            if a != 0:
                buf.write(f"a {i} {_fmt(a.real)} {_fmt(a.imag)}\n")
    else:
        buf.write("kind: mixed\n")
        m = state.matrix
        for r, c in zip(*np.nonzero((m != 0) | (m.T != 0))):
            buf.write(f"m {r} {c} {_fmt(m[r, c].real)} {_fmt(m[r, c].imag)}\n")
    return buf.getvalue()
