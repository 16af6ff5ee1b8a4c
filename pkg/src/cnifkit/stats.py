"""Statistical analyses over category component data.

Correlation matrices, eigendecomposition (cyclic Jacobi), PCA variance
attribution, Ward hierarchical clustering, one-sample KS normality, and
standard-deviation-band histograms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np


@dataclass(frozen=True)
class Matrix:
    labels: tuple[str, ...]
    values: np.ndarray  # square, aligned with labels on both axes

    def get(self, row: str, col: str) -> float:
        i, j = self.labels.index(row), self.labels.index(col)
        return float(self.values[i, j])


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: np.ndarray  # descending
    eigenvectors: np.ndarray  # columns, orthonormal, aligned with eigenvalues
    variance_shares: np.ndarray


@dataclass(frozen=True)
class PcaResult:
    labels: tuple[str, ...]
    eigen: EigenResult
    attributed_shares: dict[str, float]
    assignment: tuple[str, ...]  # variable credited with each eigenvalue, descending


@dataclass(frozen=True)
class Merge:
    left: int
    right: int
    height: float
    new_id: int
    size: int


@dataclass(frozen=True)
class Dendrogram:
    leaf_labels: tuple[str, ...]
    merges: tuple[Merge, ...]


@dataclass(frozen=True)
class KsResult:
    statistic: float
    sample_size: int
    alpha: float
    critical_value: float
    reject: bool


@dataclass(frozen=True)
class SdHistogram:
    mean: float
    sd: float
    bin_counts: tuple[int, ...]  # 8 bands from below m-3s to above m+3s
    coverage_1s: float  # percentages of the sample inside [m-ks, m+ks]
    coverage_2s: float
    coverage_3s: float
    sample_size: int


def listwise_complete(columns: dict[str, Sequence[Optional[float]]]) -> tuple[dict[str, np.ndarray], int]:
    """Drop rows with any missing value; also report how many were dropped."""
    labels = list(columns)
    lengths = {len(v) for v in columns.values()}
    if len(lengths) != 1:
        raise ValueError("columns must have equal length")
    n = lengths.pop()
    keep = [i for i in range(n) if all(columns[k][i] is not None for k in labels)]
    out = {k: np.array([columns[k][i] for i in keep], dtype=float) for k in labels}
    return out, n - len(keep)


def _pearson(x: np.ndarray, y: np.ndarray) -> float:
    xc = x - x.mean()
    yc = y - y.mean()
    return float(np.dot(xc, yc) / math.sqrt(np.dot(xc, xc) * np.dot(yc, yc)))


def correlation_matrix(columns: dict[str, Sequence[Optional[float]]]) -> Matrix:
    """Pearson correlations after listwise deletion of incomplete rows.

    Each unordered pair is computed once and mirrored, so the result is
    exactly symmetric with a unit diagonal.
    """
    complete, _ = listwise_complete(columns)
    labels = tuple(complete)
    for k, v in complete.items():
        if len(v) < 2:
            raise ValueError("need at least 2 complete rows")
        if np.ptp(v) == 0:
            raise ValueError(f"column {k} has zero variance")
    m = len(labels)
    out = np.eye(m)
    for i in range(m):
        for j in range(i + 1, m):
            rho = _pearson(complete[labels[i]], complete[labels[j]])
            out[i, j] = out[j, i] = rho
    return Matrix(labels, out)


def symmetric_eigendecomposition(m: Matrix, tol: float = 1e-12) -> EigenResult:
    """Cyclic Jacobi rotations until the off-diagonal norm drops below tol."""
    a = np.array(m.values, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n) or np.max(np.abs(a - a.T)) > 1e-9:
        raise ValueError("matrix must be symmetric")
    a = (a + a.T) / 2
    v = np.eye(n)
    for _ in range(100):
        off = math.sqrt(max(0.0, float(np.sum(a**2) - np.sum(np.diag(a) ** 2))))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < tol / (n * n):
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1))
                c = 1 / math.sqrt(t * t + 1)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
                v = v @ rot
    eigenvalues = np.diag(a).copy()
    order = np.argsort(eigenvalues)[::-1]
    eigenvalues = eigenvalues[order]
    v = v[:, order]
    return EigenResult(eigenvalues, v, eigenvalues / eigenvalues.sum())


def pca_variance_shares(columns: dict[str, Sequence[Optional[float]]]) -> PcaResult:
    """Attribute each principal component's variance share to one variable.

    Components are taken in descending eigenvalue order and each is credited
    to the not-yet-credited variable with the largest absolute loading, so
    the per-variable scores are a permutation of the eigenvalue shares and
    sum to one.
    """
    corr = correlation_matrix(columns)
    eig = symmetric_eigendecomposition(corr)
    labels = corr.labels
    assigned: list[str] = []
    taken: set[int] = set()
    for k in range(len(labels)):
        loadings = np.abs(eig.eigenvectors[:, k])
        candidates = [i for i in range(len(labels)) if i not in taken]
        best = max(candidates, key=lambda i: (loadings[i], -i))
        taken.add(best)
        assigned.append(labels[best])
    shares = {lab: 0.0 for lab in labels}
    for k, lab in enumerate(assigned):
        shares[lab] += float(eig.variance_shares[k])
    return PcaResult(labels, eig, shares, tuple(assigned))


def _standardize(x: np.ndarray) -> np.ndarray:
    sd = x.std(axis=0, ddof=1)
    if np.any(sd == 0):
        raise ValueError("cannot standardize a zero-variance column")
    return (x - x.mean(axis=0)) / sd


def ward_cluster(
    labels: Sequence[str], vectors: Sequence[Sequence[float]], standardize: bool = True
) -> Dendrogram:
    """Agglomerative Ward clustering by the Lance-Williams update.

    Distances are squared Euclidean; merge heights are the updated Ward
    distances and are non-decreasing.  Ties are broken by the
    lexicographically smallest pair of cluster tags (a cluster's tag is the
    smallest leaf label it contains), which makes the result independent of
    input order.
    """
    if len(labels) != len(vectors):
        raise ValueError("labels and vectors must align")
    if len(labels) < 2:
        raise ValueError("need at least 2 complete vectors")
    x = np.array(vectors, dtype=float)
    if standardize:
        x = _standardize(x)
    n = len(labels)
    # order leaves by label so the tie-break is permutation invariant
    order = sorted(range(n), key=lambda i: labels[i])
    x = x[order]
    leaf_labels = tuple(labels[i] for i in order)

    d = np.sum((x[:, None, :] - x[None, :, :]) ** 2, axis=2)
    active = list(range(n))
    sizes = {i: 1 for i in range(n)}
    tags = {i: leaf_labels[i] for i in range(n)}
    dist = {}
    for i in range(n):
        for j in range(i + 1, n):
            dist[(i, j)] = d[i, j]

    def dget(i: int, j: int) -> float:
        return dist[(i, j) if i < j else (j, i)]

    merges = []
    next_id = n
    while len(active) > 1:
        pairs = [
            (active[ai], active[aj])
            for ai in range(len(active))
            for aj in range(ai + 1, len(active))
        ]
        dmin = min(dget(i, j) for i, j in pairs)
        # exact ties only; the tag order makes the choice permutation invariant
        i, j = min(
            (p for p in pairs if dget(*p) == dmin),
            key=lambda p: tuple(sorted((tags[p[0]], tags[p[1]]))),
        )
        h = dget(i, j)
        ni, nj = sizes[i], sizes[j]
        new = next_id
        next_id += 1
        for k in active:
            if k in (i, j):
                continue
            nk = sizes[k]
            dik, djk, dij = dget(i, k), dget(j, k), dget(i, j)
            dist[(k, new) if k < new else (new, k)] = (
                (ni + nk) * dik + (nj + nk) * djk - nk * dij
            ) / (ni + nj + nk)
        active = [k for k in active if k not in (i, j)] + [new]
        sizes[new] = ni + nj
        tags[new] = min(tags[i], tags[j])
        merges.append(Merge(i, j, h, new, ni + nj))
    return Dendrogram(leaf_labels, tuple(merges))


def cut_dendrogram(
    dendrogram: Dendrogram, k: Optional[int] = None, height: Optional[float] = None
) -> dict[str, int]:
    """Partition the leaves into k clusters, or by a merge-height threshold."""
    n = len(dendrogram.leaf_labels)
    if (k is None) == (height is None):
        raise ValueError("give exactly one of k or height")
    if k is not None:
        if not 1 <= k <= n:
            raise ValueError(f"k must lie in [1, {n}], got {k}")
        applied = dendrogram.merges[: n - k]
    else:
        applied = tuple(m for m in dendrogram.merges if m.height <= height)
    parent: dict[int, int] = {}

    def find(i: int) -> int:
        while i in parent:
            i = parent[i]
        return i

    for m in applied:
        parent[m.left] = m.new_id
        parent[m.right] = m.new_id
    roots: dict[int, int] = {}
    out = {}
    for i, label in enumerate(dendrogram.leaf_labels):
        r = find(i)
        if r not in roots:
            roots[r] = len(roots)
        out[label] = roots[r]
    return out


def _normal_cdf(x: float) -> float:
    return 0.5 * (1 + math.erf(x / math.sqrt(2)))


# Lilliefors critical coefficients (fitted mean and sd), alpha -> c,
# critical value approximated as c / sqrt(n) for moderate n.
_LILLIEFORS = {0.10: 0.805, 0.05: 0.886, 0.01: 1.031}


def ks_normality(sample: Sequence[float], alpha: float = 0.05, lilliefors: bool = False) -> KsResult:
    """One-sample KS test of normality with mean and sd fitted to the sample.

    The default critical value is the asymptotic c(alpha)/sqrt(n) of the
    plain KS test; because the parameters are fitted this is conservative,
    so a Lilliefors-corrected mode is available.
    """
    x = np.sort(np.asarray(sample, dtype=float))
    n = len(x)
    if n < 5:
        raise ValueError(f"need at least 5 observations, got {n}")
    m = x.mean()
    s = x.std(ddof=1)
    if s == 0:
        raise ValueError("degenerate sample: zero standard deviation")
    cdf = np.array([_normal_cdf((v - m) / s) for v in x])
    i = np.arange(1, n + 1)
    d = max(np.max(i / n - cdf), np.max(cdf - (i - 1) / n))
    if lilliefors:
        if alpha not in _LILLIEFORS:
            raise ValueError(f"no Lilliefors coefficient for alpha={alpha}")
        critical = _LILLIEFORS[alpha] / math.sqrt(n)
    else:
        critical = math.sqrt(-0.5 * math.log(alpha / 2)) / math.sqrt(n)
    return KsResult(float(d), n, alpha, critical, bool(d > critical))


def histogram_by_sd(sample: Sequence[float]) -> SdHistogram:
    """Counts in the 8 half-open sd bands plus closed-band coverage shares."""
    x = np.asarray(sample, dtype=float)
    n = len(x)
    if n < 2:
        raise ValueError(f"need at least 2 observations, got {n}")
    m = x.mean()
    s = x.std(ddof=1)
    if s == 0:
        raise ValueError("degenerate sample: zero standard deviation")
    edges = [m + j * s for j in (-3, -2, -1, 0, 1, 2, 3)]
    counts = [int(np.sum(x < edges[0]))]
    for lo, hi in zip(edges[:-1], edges[1:]):
        counts.append(int(np.sum((x >= lo) & (x < hi))))
    counts.append(int(np.sum(x >= edges[-1])))

    def coverage(kk: int) -> float:
        return float(np.mean((x >= m - kk * s) & (x <= m + kk * s)) * 100)

    return SdHistogram(
        mean=float(m),
        sd=float(s),
        bin_counts=tuple(counts),
        coverage_1s=coverage(1),
        coverage_2s=coverage(2),
        coverage_3s=coverage(3),
        sample_size=n,
    )
