"""Input checks for the estimator layer.

scikit-learn's own validators reject complex data, so the estimators use
these lighter equivalents.
"""

from __future__ import annotations

import numpy as np


def as_complex_matrix(X, n_features: int | None = None, name: str = "X") -> np.ndarray:
    X = np.asarray(X)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2:
        raise ValueError(f"{name} must be 2-D (n_samples, n_features), got shape {X.shape}")
    X = X.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(X.view(np.float64))):
        raise ValueError(f"{name} contains NaN or Inf")
    if n_features is not None and X.shape[1] != n_features:
        raise ValueError(f"{name} has {X.shape[1]} features, expected {n_features}")
    return X
