"""Dense symmetric tensors over a finite orthonormal basis, with bilinear (not Hermitian) pairings."""

import numpy as np

from feynman_silt.errors import InputError


def symmetrize(tensor: np.ndarray) -> np.ndarray:
    """
    Average of a tensor over all permutations of its indices.

    Entries whose multi-indices are permutations of each other share the same sorted multi-index, so the average
    over permutations is the mean of the entries grouped by that key.
    """
    tensor = np.asarray(tensor)
    order = tensor.ndim
    if order < 2:
        return tensor.copy()
    if len(set(tensor.shape)) != 1:
        raise InputError("Only tensors over a single basis can be symmetrized, got shape {}".format(tensor.shape))
    indices = np.sort(np.indices(tensor.shape).reshape(order, -1), axis=0)
    keys = np.ravel_multi_index(indices, tensor.shape)
    counts = np.bincount(keys, minlength=tensor.size)
    values = tensor.ravel()
    if np.iscomplexobj(values):
        sums = np.bincount(keys, weights=values.real, minlength=tensor.size) \
            + 1j * np.bincount(keys, weights=values.imag, minlength=tensor.size)
    else:
        sums = np.bincount(keys, weights=values, minlength=tensor.size)
    return (sums[keys] / counts[keys]).astype(np.result_type(tensor, float)).reshape(tensor.shape)


def is_symmetric(tensor: np.ndarray, atol: float = 1e-12) -> bool:
    return bool(np.allclose(tensor, symmetrize(tensor), rtol=0, atol=atol))


def tensor_power(vector: np.ndarray, n: int) -> np.ndarray:
    """The n-th tensor power, a scalar 1 for n = 0."""
    result = np.ones((), dtype=np.result_type(vector, float))
    for _ in range(n):
        result = np.multiply.outer(result, vector)
    return result


def apply_vector(tensor: np.ndarray, vector: np.ndarray, times: int) -> np.ndarray:
    """Pair the last `times` slots of a tensor with a vector."""
    for _ in range(times):
        tensor = tensor @ vector
    return tensor


def contract_slots(f: np.ndarray, g: np.ndarray, slots: int) -> np.ndarray:
    """
    Pair the first `slots` indices of f with the first `slots` indices of g.

    :param f: tensor of order at least `slots`
    :param g: tensor of order at least `slots`
    :param slots: number of paired indices
    :return: tensor of order f.ndim + g.ndim - 2 slots, the remaining indices of f first
    """
    if slots < 0 or slots > min(f.ndim, g.ndim):
        raise InputError("Cannot contract {} slots of tensors of orders {} and {}".format(slots, f.ndim, g.ndim))
    if slots == 0:
        return np.multiply.outer(f, g)
    return np.tensordot(f, g, axes=(list(range(slots)), list(range(slots))))


def contract(f: np.ndarray, g: np.ndarray, k: int, symmetric: bool = False) -> np.ndarray:
    """
    Contraction f ⊗_{2k} g: the first 2k slots of f are paired with the first 2k slots of g.

    For elementary tensors, (x1 ⊗ x2) ⊗_2 (y1 ⊗ y2) = <x1, y1><x2, y2>.

    :param f: tensor of order 2k + n
    :param g: tensor of order 2k + m
    :param k: half the number of paired slots
    :param symmetric: symmetrize the result
    :return: tensor of order n + m
    """
    f, g = np.asarray(f), np.asarray(g)
    if k < 0 or f.ndim < 2 * k or g.ndim < 2 * k:
        raise InputError("Orders {} and {} cannot be contracted over {} slots".format(f.ndim, g.ndim, 2 * k))
    if f.ndim and g.ndim and f.shape[0] != g.shape[0]:
        raise InputError("Basis dimensions differ: {} and {}".format(f.shape[0], g.shape[0]))
    result = contract_slots(f, g, 2 * k)
    return symmetrize(result) if symmetric else result


def apply_matrix(tensor: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    """Apply a linear map to every slot of a tensor."""
    for axis in range(tensor.ndim):
        tensor = np.moveaxis(np.tensordot(matrix, tensor, axes=([1], [axis])), 0, axis)
    return tensor
