"""Encoder f, projector g and classifier h, plus checkpoint I/O.

The classifier reads the encoder output z directly; only the contrastive
losses see the projected, unit-norm features v.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .diffcore import L2Normalize, Linear, ReLU, as_batch, forward_chain
from .errors import CheckpointParseError, DimensionError, ParameterError

CHECKPOINT_MAGIC = "coin-ckpt 1"
CHECKPOINT_SUFFIX = ".coin-ckpt"


@dataclass(frozen=True)
class StackConfig:
    d_in: int = 32
    encoder_dims: tuple[int, ...] = (64, 64)
    d_z: int = 32
    projector_dims: tuple[int, ...] = (32,)
    d_v: int = 16
    num_classes: int = 8

    def __post_init__(self):
        object.__setattr__(self, "encoder_dims", tuple(int(d) for d in self.encoder_dims))
        object.__setattr__(self, "projector_dims", tuple(int(d) for d in self.projector_dims))
        dims = [self.d_in, self.d_z, self.d_v, *self.encoder_dims, *self.projector_dims]
        if any(d < 1 for d in dims):
            raise ParameterError(f"all dimensions must be >= 1, got {self}")
        if self.num_classes < 2:
            raise ParameterError(f"num_classes must be >= 2, got {self.num_classes}")

    @property
    def encoder_widths(self) -> list[int]:
        return [self.d_in, *self.encoder_dims, self.d_z]

    @property
    def projector_widths(self) -> list[int]:
        return [self.d_z, *self.projector_dims, self.d_v]


Layer = tuple[np.ndarray, np.ndarray]


@dataclass
class ModelParams:
    """Parameter groups: w_f (encoder), w_g (projector), w_h (classifier).

    w_f and w_g are lists of (W, b) pairs in forward order; w_h is a single
    (W, b) pair with W of shape d_z x K.
    """

    w_f: list[Layer]
    w_g: list[Layer]
    w_h: Layer

    def groups(self) -> dict[str, list[Layer]]:
        return {"w_f": self.w_f, "w_g": self.w_g, "w_h": [self.w_h]}

    def arrays(self) -> list[tuple[str, np.ndarray]]:
        """Every array with a stable name, in serialization order."""
        out = []
        for gname, layers in self.groups().items():
            for i, (W, b) in enumerate(layers):
                out.append((f"{gname}.{i}.W", W))
                out.append((f"{gname}.{i}.b", b))
        return out

    def copy(self) -> "ModelParams":
        return ModelParams(
            w_f=[(W.copy(), b.copy()) for W, b in self.w_f],
            w_g=[(W.copy(), b.copy()) for W, b in self.w_g],
            w_h=(self.w_h[0].copy(), self.w_h[1].copy()),
        )

    def equals(self, other: "ModelParams") -> bool:
        """Bitwise equality of every array."""
        a, b = self.arrays(), other.arrays()
        if [n for n, _ in a] != [n for n, _ in b]:
            return False
        return all(
            x.shape == y.shape and x.tobytes() == y.tobytes() for (_, x), (_, y) in zip(a, b)
        )


def _init_group(widths, rng, std_fn):
    layers = []
    for i, (fan_in, fan_out) in enumerate(zip(widths[:-1], widths[1:])):
        last = i == len(widths) - 2
        std = std_fn(fan_in, last)
        W = rng.standard_normal((fan_in, fan_out)) * std
        layers.append((W, np.zeros(fan_out)))
    return layers


def _he_or_lecun(fan_in, last):
    # He for layers feeding a ReLU, LeCun-style for the final layer of a group
    return np.sqrt(1.0 / fan_in) if last else np.sqrt(2.0 / fan_in)


def init_params(config: StackConfig, rng: np.random.Generator) -> ModelParams:
    """Gaussian init, biases zero. Draw order: encoder, projector, classifier."""
    w_f = _init_group(config.encoder_widths, rng, _he_or_lecun)
    w_g = _init_group(config.projector_widths, rng, _he_or_lecun)
    (w_h,) = _init_group([config.d_z, config.num_classes], rng, _he_or_lecun)
    return ModelParams(w_f=w_f, w_g=w_g, w_h=w_h)


def _mlp_layers(group: list[Layer]) -> list:
    layers: list = []
    for i, (W, b) in enumerate(group):
        if i:
            layers.append(ReLU())
        layers.append(Linear(W, b))
    return layers


def encoder_layers(params: ModelParams) -> list:
    return _mlp_layers(params.w_f)


def projector_layers(params: ModelParams) -> list:
    return _mlp_layers(params.w_g) + [L2Normalize()]


def classifier_layers(params: ModelParams) -> list:
    return [Linear(*params.w_h)]


def _check_cols(x, expected, what):
    x = as_batch(x, what)
    if x.shape[1] != expected:
        raise DimensionError(f"{what} has {x.shape[1]} columns, expected {expected}")
    return x


def encode(params: ModelParams, x) -> np.ndarray:
    x = _check_cols(x, params.w_f[0][0].shape[0], "x")
    return forward_chain(encoder_layers(params), x)[0]


def project(params: ModelParams, z) -> np.ndarray:
    z = _check_cols(z, params.w_g[0][0].shape[0], "z")
    return forward_chain(projector_layers(params), z)[0]


def classify(params: ModelParams, z) -> np.ndarray:
    z = _check_cols(z, params.w_h[0].shape[0], "z")
    return forward_chain(classifier_layers(params), z)[0]


def apply_update(params: ModelParams, grads: dict[str, list], eta: float,
                 groups=("w_f", "w_g", "w_h")) -> ModelParams:
    """Plain gradient descent on the named groups; the rest are carried over as-is."""
    new = {}
    for gname, layers in params.groups().items():
        if gname in groups:
            new[gname] = [(W - eta * gW, b - eta * gb) for (W, b), (gW, gb) in zip(layers, grads[gname])]
        else:
            new[gname] = layers
    return ModelParams(w_f=new["w_f"], w_g=new["w_g"], w_h=new["w_h"][0])


# -- checkpoints ---------------------------------------------------------------

def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def save_checkpoint(params: ModelParams, config: StackConfig, path) -> None:
    """Write a text checkpoint: a key/value header, then one block per array."""
    lines = [
        CHECKPOINT_MAGIC,
        f"d_in = {config.d_in}",
        f"encoder_dims = {','.join(map(str, config.encoder_dims))}",
        f"d_z = {config.d_z}",
        f"projector_dims = {','.join(map(str, config.projector_dims))}",
        f"d_v = {config.d_v}",
        f"num_classes = {config.num_classes}",
    ]
    for name, arr in params.arrays():
        shape = ",".join(map(str, arr.shape))
        lines.append(f"[{name}] shape = {shape}")
        flat = arr.reshape(arr.shape[0], -1) if arr.ndim == 2 else arr.reshape(1, -1)
        for row in flat:
            lines.append(" ".join(_fmt(v) for v in row))
    lines.append("end")
    tmp = f"{os.fspath(path)}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def _parse_dims(field_name, text):
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise CheckpointParseError(field_name, f"expected comma-separated integers, got {text!r}") from None


def load_checkpoint(path) -> tuple[ModelParams, StackConfig]:
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().split("\n")
    if not lines or lines[0].strip() != CHECKPOINT_MAGIC:
        raise CheckpointParseError("header", f"missing magic line {CHECKPOINT_MAGIC!r}")
    pos = 1
    header = {}
    for key in ("d_in", "encoder_dims", "d_z", "projector_dims", "d_v", "num_classes"):
        if pos >= len(lines):
            raise CheckpointParseError(key, "file ends before header field")
        k, sep, v = lines[pos].partition("=")
        if not sep or k.strip() != key:
            raise CheckpointParseError(key, f"expected '{key} = ...', got {lines[pos]!r}")
        header[key] = v.strip()
        pos += 1
    try:
        config = StackConfig(
            d_in=int(header["d_in"]),
            encoder_dims=_parse_dims("encoder_dims", header["encoder_dims"]),
            d_z=int(header["d_z"]),
            projector_dims=_parse_dims("projector_dims", header["projector_dims"]),
            d_v=int(header["d_v"]),
            num_classes=int(header["num_classes"]),
        )
    except ValueError as exc:
        if isinstance(exc, CheckpointParseError):
            raise
        raise CheckpointParseError("header", str(exc)) from None

    skeleton = init_params(config, np.random.default_rng(0))
    arrays = {}
    for name, ref in skeleton.arrays():
        if pos >= len(lines):
            raise CheckpointParseError(name, "file truncated before block")
        head = lines[pos].strip()
        expected_head = f"[{name}] shape = {','.join(map(str, ref.shape))}"
        if head != expected_head:
            raise CheckpointParseError(name, f"expected {expected_head!r}, got {head!r}")
        pos += 1
        nrows = ref.shape[0] if ref.ndim == 2 else 1
        rows = []
        for r in range(nrows):
            if pos >= len(lines):
                raise CheckpointParseError(name, f"file truncated in row {r}")
            try:
                rows.append([float(t) for t in lines[pos].split()])
            except ValueError:
                raise CheckpointParseError(name, f"non-numeric value in row {r}") from None
            pos += 1
        try:
            arr = np.array(rows, dtype=np.float64).reshape(ref.shape)
        except ValueError:
            raise CheckpointParseError(name, "wrong number of values") from None
        if not np.all(np.isfinite(arr)):
            raise CheckpointParseError(name, "non-finite value")
        arrays[name] = arr
    if pos >= len(lines) or lines[pos].strip() != "end":
        raise CheckpointParseError("end", "missing end marker (truncated file?)")

    def group(gname, count):
        return [(arrays[f"{gname}.{i}.W"], arrays[f"{gname}.{i}.b"]) for i in range(count)]

    params = ModelParams(
        w_f=group("w_f", len(skeleton.w_f)),
        w_g=group("w_g", len(skeleton.w_g)),
        w_h=group("w_h", 1)[0],
    )
    return params, config
