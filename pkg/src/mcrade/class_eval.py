"""Function classes evaluated on a sample, sign matrices and empirical statistics.

A function class is only ever seen through its evaluation matrix: row ``i``
holds the values of every function on the sample point ``s_i``. The declared
range ``[a, b]`` travels with the matrix because every bound depends on it.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import CSVFormatError, DimensionError, ValidationError

__all__ = [
    "EvaluationMatrix",
    "SignMatrix",
    "ClassStats",
    "mcera",
    "mcera_batch",
    "class_stats",
    "counter_signs",
    "load_csv",
    "read_csv",
    "to_csv",
]


@dataclass(frozen=True, eq=False)
class EvaluationMatrix:
    """Values ``f_k(s_i)`` of a finite function class on a sample.

    Parameters
    ----------
    values : array_like, shape (m, K)
        Row ``i`` is the sample point, column ``k`` the function.
    a, b : float
        Declared range of every function, with ``b > 0 >= a``.
    names : sequence of str, optional
        Column labels, kept for round-tripping CSV files.

    A constant-zero column is appended when none is present so that every
    supremum over the class is nonnegative; ``f0_inserted`` records it.
    """

    values: np.ndarray
    a: float
    b: float
    names: tuple = ()
    f0_inserted: bool = field(default=False, init=False)

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (b > 0 >= a):
            raise ValidationError(f"range must satisfy b > 0 >= a, got a={a}, b={b}")
        vals = np.array(self.values, dtype=np.float64)
        if vals.ndim == 1:
            vals = vals[:, None]
        if vals.ndim != 2 or vals.shape[0] < 1 or vals.shape[1] < 1:
            raise DimensionError(f"values must be a non-empty m x K matrix, got shape {vals.shape}")
        if not np.all(np.isfinite(vals)):
            i, k = np.argwhere(~np.isfinite(vals))[0]
            raise ValidationError(f"non-finite entry at row {i}, column {k}")
        bad = (vals < a) | (vals > b)
        if bad.any():
            i, k = np.argwhere(bad)[0]
            raise ValidationError(
                f"entry {vals[i, k]!r} at row {i}, column {k} lies outside [{a}, {b}]"
            )
        names = tuple(self.names)
        if names and len(names) != vals.shape[1]:
            raise DimensionError(f"{len(names)} names for {vals.shape[1]} columns")
        inserted = not np.any(np.all(vals == 0.0, axis=0))
        if inserted:
            vals = np.hstack([vals, np.zeros((vals.shape[0], 1))])
            if names:
                names = names + ("f0",)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "f0_inserted", inserted)

    @property
    def m(self) -> int:
        return self.values.shape[0]

    @property
    def K(self) -> int:
        return self.values.shape[1]

    @property
    def c(self) -> float:
        return self.b - self.a

    @property
    def z(self) -> float:
        return max(abs(self.a), abs(self.b))

    def scaled(self, factor: float) -> "EvaluationMatrix":
        """Multiply every value and the range by ``factor > 0``."""
        if not factor > 0:
            raise ValidationError(f"scale factor must be positive, got {factor}")
        return EvaluationMatrix(self.values * factor, self.a * factor, self.b * factor, self.names)

    def negated(self) -> "EvaluationMatrix":
        """The class ``{-f}``, with range ``[-b, -a]``.

        Needs ``a < 0`` so that the negated range still satisfies ``b > 0``.
        """
        return EvaluationMatrix(-self.values, -self.b, -self.a, self.names)


def counter_signs(seed: int, rows, cols) -> np.ndarray:
    """Rademacher signs as a pure function of ``(seed, row, column)``.

    Each entry is derived by hashing its own coordinates, so any submatrix
    can be regenerated without producing the rest.
    """
    rows = np.asarray(rows, dtype=np.uint64)
    cols = np.asarray(cols, dtype=np.uint64)
    key = _splitmix64(np.full(1, seed & 0xFFFFFFFFFFFFFFFF, dtype=np.uint64))
    counter = (rows[:, None] << np.uint64(32)) | cols[None, :]
    bits = _splitmix64(counter ^ key) >> np.uint64(63)
    return np.where(bits == 1, 1, -1).astype(np.int8)


def _splitmix64(x: np.ndarray) -> np.ndarray:
    x = x + np.uint64(0x9E3779B97F4A7C15)
    x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


@dataclass(frozen=True, eq=False)
class SignMatrix:
    """An ``n x m`` matrix of Rademacher signs."""

    signs: np.ndarray
    seed: int | None = None

    def __post_init__(self):
        s = np.array(self.signs)
        if s.ndim == 1:
            s = s[None, :]
        if s.ndim != 2 or s.shape[0] < 1 or s.shape[1] < 1:
            raise DimensionError(f"signs must be a non-empty n x m matrix, got shape {s.shape}")
        if not np.all((s == 1) | (s == -1)):
            raise ValidationError("sign matrix entries must be +1 or -1")
        s = s.astype(np.int8)
        s.setflags(write=False)
        object.__setattr__(self, "signs", s)

    @classmethod
    def generate(cls, n: int, m: int, seed: int) -> "SignMatrix":
        if n < 1 or m < 1:
            raise ValidationError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
        if m >= 2**32:
            raise ValidationError("m must be below 2**32")
        return cls(counter_signs(seed, np.arange(n), np.arange(m)), seed=seed)

    @property
    def n(self) -> int:
        return self.signs.shape[0]

    @property
    def m(self) -> int:
        return self.signs.shape[1]


def mcera_batch(evals: EvaluationMatrix, signs: np.ndarray) -> np.ndarray:
    """n-MCERA for a stack of sign matrices of shape ``(B, n, m)``."""
    signs = np.asarray(signs)
    if signs.ndim != 3 or signs.shape[2] != evals.m:
        raise DimensionError(
            f"sign stack of shape {signs.shape} does not match evaluation matrix of shape {evals.values.shape}"
        )
    corr = np.matmul(signs.astype(np.float64), evals.values) / evals.m
    return corr.max(axis=2).mean(axis=1)


def mcera(evals: EvaluationMatrix, sigma: SignMatrix | np.ndarray) -> float:
    """n-Monte Carlo Empirical Rademacher Average of ``evals`` under ``sigma``.

    Averages, over the rows of ``sigma``, the largest correlation between the
    row and any function of the class.
    """
    signs = sigma.signs if isinstance(sigma, SignMatrix) else np.atleast_2d(sigma)
    if signs.ndim != 2 or signs.shape[1] != evals.m:
        raise DimensionError(
            f"sign matrix of shape {signs.shape} does not match evaluation matrix of shape "
            f"{evals.values.shape} (need n x {evals.m})"
        )
    return float(mcera_batch(evals, signs[None, :, :])[0])


@dataclass(frozen=True)
class ClassStats:
    """Empirical quantities of a class on its sample.

    ``eta_hat`` is the gap between the largest empirical mean and ``a``;
    ``gamma_hat`` is the gap between ``b`` and the smallest empirical mean.
    """

    z_hat: float
    nu_hat: float
    wvar_hat: float
    eta_hat: float
    gamma_hat: float
    c: float
    z: float
    m: int
    K: int
    a: float
    b: float

    def as_dict(self) -> dict:
        return {
            "z_hat": self.z_hat,
            "nu_hat": self.nu_hat,
            "wvar_hat": self.wvar_hat,
            "eta_hat": self.eta_hat,
            "gamma_hat": self.gamma_hat,
            "m": self.m,
            "K": self.K,
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "z": self.z,
        }


def class_stats(evals: EvaluationMatrix) -> ClassStats:
    v = evals.values
    m = evals.m
    means = v.sum(axis=0) / m
    return ClassStats(
        z_hat=float(np.abs(v).max()),
        nu_hat=float((np.abs(v).sum(axis=0) / m).max()),
        wvar_hat=float(((v * v).sum(axis=0) / m).max()),
        eta_hat=float(means.max() - evals.a),
        gamma_hat=float(evals.b - means.min()),
        c=evals.c,
        z=evals.z,
        m=m,
        K=evals.K,
        a=evals.a,
        b=evals.b,
    )


def _parse_float(token, line, column):
    try:
        x = float(token)
    except ValueError:
        raise CSVFormatError(f"cannot parse {token!r} as a number", line, column) from None
    return x


def read_csv(text: str) -> EvaluationMatrix:
    """Parse the CSV layout: ``#range,a,b`` then one sample row per line.

    An optional header of function names may follow the range line.
    """
    rows = list(csv.reader(io.StringIO(text)))
    lineno = 0
    # skip leading blank lines
    while lineno < len(rows) and not any(t.strip() for t in rows[lineno]):
        lineno += 1
    if lineno >= len(rows) or not rows[lineno] or rows[lineno][0].strip() != "#range":
        raise CSVFormatError("first line must be the '#range,a,b' header", lineno + 1)
    head = rows[lineno]
    if len(head) != 3:
        raise CSVFormatError("'#range' line needs exactly two values: #range,a,b", lineno + 1)
    a = _parse_float(head[1].strip(), lineno + 1, 2)
    b = _parse_float(head[2].strip(), lineno + 1, 3)
    lineno += 1

    names = ()
    data = []
    width = None
    for idx in range(lineno, len(rows)):
        tokens = [t.strip() for t in rows[idx]]
        if not any(tokens):
            continue
        if width is None:
            width = len(tokens)
            if not names and not data:
                try:
                    [float(t) for t in tokens]
                except ValueError:
                    names = tuple(tokens)
                    continue
        if len(tokens) != width:
            raise CSVFormatError(f"expected {width} values, found {len(tokens)}", idx + 1)
        data.append([_parse_float(t, idx + 1, j + 1) for j, t in enumerate(tokens)])
    if not data:
        raise CSVFormatError("no sample rows after the header", len(rows))
    try:
        return EvaluationMatrix(np.array(data), a, b, names)
    except ValidationError as exc:
        raise CSVFormatError(str(exc)) from None


def load_csv(path) -> EvaluationMatrix:
    with open(os.fspath(path), encoding="utf-8") as fh:
        return read_csv(fh.read())


def to_csv(evals: EvaluationMatrix) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["#range", repr(evals.a), repr(evals.b)])
    if evals.names:
        w.writerow(evals.names)
    for row in evals.values:
        w.writerow([repr(float(x)) for x in row])
    return out.getvalue()
