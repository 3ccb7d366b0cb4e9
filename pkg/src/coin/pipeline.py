"""Two-stage fine-tuning: contrastive initialization, then classifier fine-tuning.

A run goes: stratified split -> parameter init -> toy self-supervised
pretraining (instance discrimination on augmented views) -> ``floor(alpha*N)``
epochs of supervised-contrastive updates to the encoder and projector ->
the remaining epochs of cross-entropy (+ lambda * contrastive) updates to all
three parameter groups. All randomness comes from one generator seeded by
``TrainConfig.seed`` and is consumed in exactly that order.
"""
from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .datagen import AugmentConfig, Dataset, augment, split_indices
from .diffcore import Linear, backward_chain, forward_chain
from .errors import BatchSizeError, ParameterError
from .losses import DEFAULT_LAMBDA, DEFAULT_TAU, combined_loss, cross_entropy, sup_con_loss
from .metrics import SDbwResult, s_dbw, top1_accuracy
from .model import (
    ModelParams,
    StackConfig,
    apply_update,
    classifier_layers,
    encode,
    encoder_layers,
    classify,
    init_params,
    project,
    projector_layers,
)

log = logging.getLogger(__name__)

METHODS = ("COIN", "SCL", "CE")


@dataclass(frozen=True)
class TrainConfig:
    N: int = 100
    alpha: float = 0.7
    eta: float = 0.05
    tau: float = DEFAULT_TAU
    lam: float = DEFAULT_LAMBDA
    batch_size: int = 128
    seed: int = 0
    method: str = "COIN"

    def __post_init__(self):
        if self.method not in METHODS:
            raise ParameterError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.N < 0:
            raise ParameterError(f"N must be >= 0, got {self.N}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ParameterError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.eta <= 0:
            raise ParameterError(f"eta must be > 0, got {self.eta}")
        if self.tau <= 0:
            raise ParameterError(f"tau must be > 0, got {self.tau}")
        if self.lam < 0:
            raise ParameterError(f"lambda must be >= 0, got {self.lam}")
        if self.batch_size < 2:
            raise BatchSizeError(f"batch_size must be >= 2, got {self.batch_size}")

    @property
    def init_epochs(self) -> int:
        if self.method != "COIN":
            return 0
        # 0.57 * 100 == 56.99999999999999 in binary floating point
        return math.floor(self.alpha * self.N + 1e-9)

    @property
    def finetune_epochs(self) -> int:
        return self.N - self.init_epochs

    @property
    def effective_lambda(self) -> float:
        return 0.0 if self.method == "CE" else self.lam


@dataclass(frozen=True)
class PretrainConfig:
    epochs: int = 30
    tau: float = 0.5
    eta: float = 0.05
    batch_size: int = 128
    aug: AugmentConfig = field(default_factory=AugmentConfig)


@dataclass
class EpochRecord:
    epoch: int
    stage: str
    train_loss: float
    train_acc: float
    test_acc: float
    scat: float
    dens_bw: float
    s_dbw: float


@dataclass
class RunReport:
    method: str
    seed: int
    per_epoch: list[EpochRecord]
    final_accuracy: float
    final_sdbw: SDbwResult
    pretrain_sdbw: SDbwResult
    init_seconds: float
    finetune_seconds: float
    wall_time_seconds: float
    params: ModelParams = field(repr=False)


# -- forward / backward through the whole stack --------------------------------

@dataclass
class _Pass:
    x: np.ndarray
    z: np.ndarray
    enc: list
    enc_inputs: list
    v: Optional[np.ndarray] = None
    proj: Optional[list] = None
    proj_inputs: Optional[list] = None
    logits: Optional[np.ndarray] = None


def _linear_grads(layers, param_grads):
    return [g for layer, g in zip(layers, param_grads) if isinstance(layer, Linear)]


def _forward(params: ModelParams, x, *, with_v=True, with_logits=True) -> _Pass:
    enc = encoder_layers(params)
    z, enc_inputs = forward_chain(enc, x)
    p = _Pass(x=x, z=z, enc=enc, enc_inputs=enc_inputs)
    if with_v:
        p.proj = projector_layers(params)
        p.v, p.proj_inputs = forward_chain(p.proj, z)
    if with_logits:
        p.logits = classify(params, z)
    return p


def _backward(params: ModelParams, p: _Pass, grad_v=None, grad_logits=None) -> dict:
    """Gradients for every group given dL/dv and/or dL/dlogits."""
    grad_z = np.zeros_like(p.z)
    grads: dict = {}
    if grad_v is not None:
        pg, gz = backward_chain(p.proj, p.z, grad_v, p.proj_inputs)
        grads["w_g"] = _linear_grads(p.proj, pg)
        grad_z = grad_z + gz
    else:
        grads["w_g"] = [(np.zeros_like(W), np.zeros_like(b)) for W, b in params.w_g]
    if grad_logits is not None:
        cls = classifier_layers(params)
        pg, gz = backward_chain(cls, p.z, grad_logits, [p.z])
        grads["w_h"] = _linear_grads(cls, pg)
        grad_z = grad_z + gz
    else:
        W, b = params.w_h
        grads["w_h"] = [(np.zeros_like(W), np.zeros_like(b))]
    pg, _ = backward_chain(p.enc, p.x, grad_z, p.enc_inputs)
    grads["w_f"] = _linear_grads(p.enc, pg)
    return grads


def ssl_loss_and_grads(params: ModelParams, view1, view2, tau: float):
    """Instance-discrimination loss on two views of the same n instances.

    Both views go through the stack as one 2n-row batch. Each row's only
    positive is the other view of the same instance; the remaining 2(n-1)
    rows are negatives.
    """
    n = view1.shape[0]
    x = np.vstack([view1, view2])
    ids = np.concatenate([np.arange(n), np.arange(n)])
    p = _forward(params, x, with_logits=False)
    res = sup_con_loss(p.v, ids, tau)
    return res.value, _backward(params, p, grad_v=res.grad_input)


def supcon_loss_and_grads(params: ModelParams, x, labels, tau: float):
    p = _forward(params, x)
    res = sup_con_loss(p.v, labels, tau)
    return res.value, _backward(params, p, grad_v=res.grad_input), p.logits


def finetune_loss_and_grads(params: ModelParams, x, labels, tau: float, lam: float):
    if lam == 0:
        # pure cross-entropy: the projector is not evaluated at all
        p = _forward(params, x, with_v=False)
        ce = cross_entropy(p.logits, labels)
        return ce.value, _backward(params, p, grad_logits=ce.grad_input), p.logits
    p = _forward(params, x)
    res = combined_loss(p.v, p.logits, labels, tau, lam)
    return res.value, _backward(params, p, grad_v=res.grad_v, grad_logits=res.grad_logits), p.logits


# -- stages --------------------------------------------------------------------

def _batches(n: int, batch_size: int, rng: np.random.Generator):
    perm = rng.permutation(n)
    for start in range(0, n, batch_size):
        idx = perm[start:start + batch_size]
        if idx.size >= 2:
            yield idx


EpochHook = Callable[[int, ModelParams, float, float], None]


def pretrain_ssl(params: ModelParams, config: StackConfig, data, epochs: int, tau_ssl: float,
                 aug: AugmentConfig, eta: float, rng: np.random.Generator,
                 batch_size: int = 128) -> ModelParams:
    """Toy self-supervised pretraining; updates w_f and w_g only.

    Per batch: draw view 1 for all rows, then view 2, then step.
    """
    if batch_size < 2:
        raise BatchSizeError(f"batch_size must be >= 2, got {batch_size}")
    if epochs <= 0:
        return params
    X = np.asarray(data, dtype=np.float64)
    if X.shape[1] != config.d_in:
        raise ParameterError(f"data has {X.shape[1]} columns, stack expects {config.d_in}")
    for epoch in range(epochs):
        losses = []
        for idx in _batches(X.shape[0], batch_size, rng):
            v1 = augment(X[idx], aug, rng)
            v2 = augment(X[idx], aug, rng)
            loss, grads = ssl_loss_and_grads(params, v1, v2, tau_ssl)
            losses.append(loss)
            params = apply_update(params, grads, eta, groups=("w_f", "w_g"))
        log.debug("pretrain epoch %d loss %.4f", epoch + 1, np.mean(losses))
    return params


def coin_init_stage(params: ModelParams, train: Dataset, epochs: int, cfg: TrainConfig,
                    rng: np.random.Generator, on_epoch: Optional[EpochHook] = None) -> ModelParams:
    """Supervised-contrastive updates of w_f and w_g; w_h is left untouched."""
    for epoch in range(epochs):
        losses, correct, seen = [], 0, 0
        for idx in _batches(len(train), cfg.batch_size, rng):
            y = train.labels[idx]
            loss, grads, logits = supcon_loss_and_grads(params, train.features[idx], y, cfg.tau)
            if not np.isfinite(loss):
                raise FloatingPointError(f"non-finite contrastive loss in init epoch {epoch + 1}")
            params = apply_update(params, grads, cfg.eta, groups=("w_f", "w_g"))
            losses.append(loss)
            correct += int(np.sum(np.argmax(logits, axis=1) == y))
            seen += idx.size
        if on_epoch is not None:
            on_epoch(epoch, params, float(np.mean(losses)) if losses else float("nan"),
                     correct / seen if seen else float("nan"))
    return params


def finetune_stage(params: ModelParams, train: Dataset, epochs: int, cfg: TrainConfig,
                   rng: np.random.Generator, on_epoch: Optional[EpochHook] = None) -> ModelParams:
    """Cross-entropy plus lambda-weighted contrastive loss; all groups updated."""
    lam = cfg.effective_lambda
    for epoch in range(epochs):
        losses, correct, seen = [], 0, 0
        for idx in _batches(len(train), cfg.batch_size, rng):
            y = train.labels[idx]
            loss, grads, logits = finetune_loss_and_grads(params, train.features[idx], y, cfg.tau, lam)
            params = apply_update(params, grads, cfg.eta)
            losses.append(loss)
            correct += int(np.sum(np.argmax(logits, axis=1) == y))
            seen += idx.size
        if on_epoch is not None:
            on_epoch(epoch, params, float(np.mean(losses)) if losses else float("nan"),
                     correct / seen if seen else float("nan"))
    return params


# -- evaluation and the full run -------------------------------------------------

def evaluate(params: ModelParams, test: Dataset, layer: str = "z") -> tuple[float, SDbwResult]:
    """Test accuracy and S_Dbw of the test features (encoder output z, or v)."""
    z = encode(params, test.features)
    acc = top1_accuracy(classify(params, z), test.labels)
    feats = project(params, z) if layer == "v" else z
    return acc, s_dbw(feats, test.labels)


def prepare(stack_cfg: StackConfig, pretrain: PretrainConfig, data: Dataset, seed: int,
            test_fraction: float):
    """Split, initialize and pretrain. Returns (train, test, params, rng)."""
    rng = np.random.default_rng(seed)
    train_idx, test_idx = split_indices(data, test_fraction, rng)
    train, test = data.subset(train_idx), data.subset(test_idx)
    params = init_params(stack_cfg, rng)
    params = pretrain_ssl(params, stack_cfg, train.features, pretrain.epochs, pretrain.tau,
                          pretrain.aug, pretrain.eta, rng, pretrain.batch_size)
    return train, test, params, rng


def run(cfg: TrainConfig, stack_cfg: StackConfig, pretrain: PretrainConfig, data: Dataset,
        test_fraction: float = 0.3, sdbw_layer: str = "z", cache: Optional[dict] = None) -> RunReport:
    """Run one method for ``cfg.N`` epochs and record every epoch.

    ``cache`` may be shared between runs with the same seed and pretraining
    setup; it stores the pretrained weights together with the generator state,
    so a cached run is bit-identical to an uncached one.
    """
    if data.num_classes != stack_cfg.num_classes or data.dims != stack_cfg.d_in:
        raise ParameterError("dataset shape does not match the stack configuration")
    if sdbw_layer not in ("z", "v"):
        raise ParameterError(f"sdbw_layer must be 'z' or 'v', got {sdbw_layer!r}")
    t_start = time.perf_counter()
    key = (cfg.seed, stack_cfg, pretrain, test_fraction, id(data))
    if cache is not None and key in cache:
        train, test, params, state = cache[key]
        rng = np.random.default_rng()
        rng.bit_generator.state = state
    else:
        train, test, params, rng = prepare(stack_cfg, pretrain, data, cfg.seed, test_fraction)
        if cache is not None:
            cache[key] = (train, test, params, rng.bit_generator.state)
    _, pre_sdbw = evaluate(params, test, sdbw_layer)

    records: list[EpochRecord] = []
    timing = {"init": 0.0, "finetune": 0.0}
    clock = [time.perf_counter()]

    def hook(stage):
        def record(epoch, p, loss, acc):
            timing[stage] += time.perf_counter() - clock[0]
            test_acc, sd = evaluate(p, test, sdbw_layer)
            records.append(EpochRecord(len(records) + 1, stage, loss, acc, test_acc,
                                       sd.scat, sd.dens_bw, sd.score))
            clock[0] = time.perf_counter()
        return record

    clock[0] = time.perf_counter()
    params = coin_init_stage(params, train, cfg.init_epochs, cfg, rng, hook("init"))
    clock[0] = time.perf_counter()
    params = finetune_stage(params, train, cfg.finetune_epochs, cfg, rng, hook("finetune"))

    final_acc, final_sd = evaluate(params, test, sdbw_layer)
    return RunReport(
        method=cfg.method,
        seed=cfg.seed,
        per_epoch=records,
        final_accuracy=final_acc,
        final_sdbw=final_sd,
        pretrain_sdbw=pre_sdbw,
        init_seconds=timing["init"],
        finetune_seconds=timing["finetune"],
        wall_time_seconds=time.perf_counter() - t_start,
        params=params,
    )
