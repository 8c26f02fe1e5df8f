"""Entropic functionals. All logarithms are base 2; results are in bits."""
from __future__ import annotations

import numpy as np

from .exceptions import BadSubsystemError, NotPSDError, OutOfRangeError
from .linalg import EIG_CLAMP, eig_hermitian
from .states import DensityMatrix, partial_trace

# binary_entropy tolerates this much float drift past the [0, 1] endpoints
PROB_SLOP = 1e-12


def entropy_of_spectrum(eigenvalues) -> float:
    """-sum(p log2 p) with 0 log 0 = 0 and tiny negatives clamped to zero."""
    w = np.asarray(eigenvalues, dtype=float)
    if w.min() < -EIG_CLAMP:
        raise NotPSDError(f"spectrum has eigenvalue {w.min():.3e} < -{EIG_CLAMP}")
    w = np.clip(w, 0.0, None)
    pos = w[w > 0.0]
    return float(-(pos * np.log2(pos)).sum())


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) = -Tr[rho log2 rho] in bits."""
    return entropy_of_spectrum(eig_hermitian(rho.mat).eigenvalues)


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2(1-x); endpoints give 0."""
    x = float(x)
    if not -PROB_SLOP <= x <= 1.0 + PROB_SLOP:
        raise OutOfRangeError(f"binary_entropy argument {x!r} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    if x == 0.0 or x == 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1.0 - x) * np.log2(1.0 - x))


def mutual_information(rho: DensityMatrix, cut) -> float:
    """I_q across the cut: S(rho_cut) + S(rho_rest) - S(rho)."""
    n = rho.subsystem_count()
    side = sorted(set(int(i) for i in cut))
    if not side or len(side) == n:
        raise BadSubsystemError("cut must be a proper nonempty subsystem subset")
    if any(i < 0 or i >= n for i in side):
        raise BadSubsystemError(f"cut indices out of range for {n} subsystems: {side}")
    rest = [k for k in range(n) if k not in side]
    s_a = von_neumann_entropy(partial_trace(rho, rest))
    s_b = von_neumann_entropy(partial_trace(rho, side))
    return s_a + s_b - von_neumann_entropy(rho)
