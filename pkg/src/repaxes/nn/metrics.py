"""Loss and metric kernels: MSE with gradient, RMSE, cosine, L2 norm."""

import numpy as np

from ..errors import DegenerateInputError
from ..validation import as_matrix, as_vector, check_same_shape


def mse_loss_and_grad(pred: np.ndarray, target: np.ndarray) -> tuple[float, np.ndarray]:
    """Mean squared error over all elements and its gradient wrt ``pred``."""
    p = as_matrix(pred, "pred")
    t = as_matrix(target, "target")
    check_same_shape(p, t)
    diff = p - t
    loss = float(np.mean(diff.astype(np.float64) ** 2))
    grad = (2.0 / diff.size) * diff
    return loss, grad.astype(np.float32, copy=False)


def mse(pred: np.ndarray, target: np.ndarray) -> float:
    p = as_matrix(pred, "pred")
    t = as_matrix(target, "target")
    check_same_shape(p, t)
    return float(np.mean((p.astype(np.float64) - t.astype(np.float64)) ** 2))


def rmse(pred: np.ndarray, target: np.ndarray) -> float:
    return float(np.sqrt(mse(pred, target)))


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine of the angle between two vectors; raises on zero input."""
    va = as_vector(a, "a")
    vb = as_vector(b, "b")
    check_same_shape(va, vb, "a/b")
    na = float(np.linalg.norm(va.astype(np.float64)))
    nb = float(np.linalg.norm(vb.astype(np.float64)))
    if na == 0.0 or nb == 0.0:
        raise DegenerateInputError("cosine similarity of a zero vector is undefined")
    value = float(np.dot(va.astype(np.float64), vb.astype(np.float64)) / (na * nb))
    return min(1.0, max(-1.0, value))


def rowwise_cosine(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Cosine similarity per row of two equal-shape matrices."""
    ma = as_matrix(a, "a").astype(np.float64)
    mb = as_matrix(b, "b").astype(np.float64)
    check_same_shape(ma, mb, "a/b")
    na = np.linalg.norm(ma, axis=1)
    nb = np.linalg.norm(mb, axis=1)
    if np.any(na == 0.0) or np.any(nb == 0.0):
        raise DegenerateInputError("cosine similarity of a zero row is undefined")
    return np.clip((ma * mb).sum(axis=1) / (na * nb), -1.0, 1.0)


def l2_normalize(v: np.ndarray) -> np.ndarray:
    """Scale a vector to unit L2 norm; raises on zero input."""
    vec = as_vector(v, "v")
    norm = float(np.linalg.norm(vec.astype(np.float64)))
    if norm == 0.0:
        raise DegenerateInputError("cannot normalize a zero vector")
    return (vec / np.float32(norm)).astype(np.float32, copy=False)


def l2_normalize_rows(m: np.ndarray) -> np.ndarray:
    """L2-normalize each row of a matrix; raises if any row is zero."""
    mat = as_matrix(m, "m")
    norms = np.linalg.norm(mat.astype(np.float64), axis=1)
    if np.any(norms == 0.0):
        raise DegenerateInputError("cannot normalize zero rows")
    return (mat / norms[:, None].astype(np.float32)).astype(np.float32, copy=False)
