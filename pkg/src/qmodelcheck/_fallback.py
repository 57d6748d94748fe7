"""Pure-Python (numpy) versions of the compiled kernels in ``_kernels.pyx``."""
import numpy as np


def residual(Q, v):
    r = np.array(v, dtype=np.complex128)
    if Q.shape[0]:
        # classical GS, applied twice
        for _ in range(2):
            r = r - Q.T @ (Q.conj() @ r)
    return r


def residual_norm(Q, v):
    return float(np.linalg.norm(residual(Q, v)))


def matvec(U, v):
    if U.shape[1] != v.shape[0]:
        raise ValueError(
            f"matvec: {U.shape[0]}x{U.shape[1]} matrix against length-{v.shape[0]} vector"
        )
    return U @ v


def slot_norms(v, nslots):
    if nslots <= 0 or v.shape[0] % nslots:
        raise ValueError("vector length is not a multiple of the slot count")
    return np.linalg.norm(v.reshape(-1, nslots), axis=0)
