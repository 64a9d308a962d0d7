"""Variational upper bounds on squashed entanglement, private-state identity
residuals, and the key-bound arithmetic built on them.

Every extension of a state arises by applying a channel to the purifying
system of a purification.  The ansatz here parameterizes that channel as an
isometry ``E' -> E (x) F`` (exponential of an anti-Hermitian generator,
leading columns), applies it to the canonical purification, and traces out
``F``.  Half the conditional (multipartite) information of the result is an
upper bound on the corresponding squashed entanglement *for every ansatz*,
so minimizing over a modest parameter space with several seeded restarts
yields sound, reproducible upper bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log2, prod, sqrt
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import minimize

from .entropy import (
    ContinuityParams,
    DEFAULT_MULTI_CONSTANTS,
    KIND_KEY_BIPARTITE,
    KIND_KEY_MULTI_DUAL,
    KIND_KEY_MULTI_TOTAL,
    binary_entropy,
    cond_entropy,
    cond_mutual_info,
    continuity_bound,
)
from .layout import LayoutError, SystemLayout, as_labels
from .tensor import (
    DensityOperator,
    Isometry,
    entropy_bits,
    purification_matrix,
    reduce_matrix,
)

FLAVOR_TOTAL = "total"
FLAVOR_DUAL = "dual"
_FLAVORS = (FLAVOR_TOTAL, FLAVOR_DUAL)


# ---------------------------------------------------------------------------
# ansatz
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SquashingAnsatz:
    """Parameterized isometry from the purifying system into kept (x) sunk.

    ``params`` holds ``2 n^2`` reals (``n = d_env * d_sink``) read as the
    real and imaginary parts of an ``n x n`` matrix whose anti-Hermitian
    part generates a unitary; its first ``d_purify`` columns form the
    isometry, so every parameter vector realizes an exact isometry.
    """

    d_purify: int
    d_env: int
    d_sink: int
    params: np.ndarray

    def __init__(self, d_purify: int, d_env: int, d_sink: int, params: np.ndarray):
        d_purify, d_env, d_sink = int(d_purify), int(d_env), int(d_sink)
        if min(d_purify, d_env, d_sink) < 1:
            raise ValueError("all ansatz dimensions must be >= 1")
        if d_env * d_sink < d_purify:
            raise ValueError(
                f"output dimension {d_env}*{d_sink} is below the purifying dimension {d_purify}"
            )
        n = d_env * d_sink
        params = np.asarray(params, dtype=float).reshape(-1)
        if params.shape != (2 * n * n,):
            raise ValueError(f"expected {2 * n * n} parameters, got {params.shape[0]}")
        params = params.copy()
        params.setflags(write=False)
        object.__setattr__(self, "d_purify", d_purify)
        object.__setattr__(self, "d_env", d_env)
        object.__setattr__(self, "d_sink", d_sink)
        object.__setattr__(self, "params", params)

    @property
    def n_params(self) -> int:
        return self.params.shape[0]

    def isometry_matrix(self) -> np.ndarray:
        return _isometry_from_params(self.params, self.d_env, self.d_sink, self.d_purify)

    def to_isometry(
        self, input_label: str = "Epur", env_label: str = "E", sink_label: str = "F"
    ) -> Isometry:
        return Isometry(
            self.isometry_matrix(),
            SystemLayout(((input_label, self.d_purify),)),
            SystemLayout(((env_label, self.d_env), (sink_label, self.d_sink))),
        )


def _isometry_from_params(params: np.ndarray, d_env: int, d_sink: int, d_purify: int) -> np.ndarray:
    n = d_env * d_sink
    m = params.reshape(2, n, n)
    gen = m[0] + 1j * m[1]
    herm = (gen - gen.conj().T) / 2j  # generator = i * herm, with herm Hermitian
    w, v = np.linalg.eigh(herm)
    u = (v * np.exp(1j * w)) @ v.conj().T
    return u[:, :d_purify]


def ansatz_param_count(d_env: int, d_sink: int) -> int:
    return 2 * (d_env * d_sink) ** 2


# ---------------------------------------------------------------------------
# extensions and objective
# ---------------------------------------------------------------------------

def extend_by_squashing(
    rho: DensityOperator, ansatz: SquashingAnsatz, env_label: str = "E"
) -> DensityOperator:
    """Extension of ``rho`` with system ``env_label`` listed first: purify to
    the ansatz's input dimension, apply the isometry, trace the sunk output.

    Tracing ``env_label`` from the result recovers ``rho`` (up to numerics),
    which is what makes any conditional-information evaluation on it an
    upper bound.  Raises if the state's rank exceeds ``ansatz.d_purify``.
    """
    if env_label in rho.layout.labels:
        raise LayoutError(f"environment label {env_label!r} collides with the state's systems")
    psi = purification_matrix(rho.matrix, d_ref=ansatz.d_purify)
    mat = _extension_matrix(psi, ansatz.isometry_matrix(), ansatz.d_env, ansatz.d_sink)
    layout = SystemLayout(((env_label, ansatz.d_env),)).concat(rho.layout)
    return DensityOperator(mat, layout)


def _extension_matrix(psi: np.ndarray, v: np.ndarray, d_env: int, d_sink: int) -> np.ndarray:
    amp = v @ psi  # rows: (env, sink) composite; cols: original systems
    t = amp.reshape(d_env, d_sink, psi.shape[1])
    d = d_env * psi.shape[1]
    return np.einsum("efs,gft->esgt", t, t.conj()).reshape(d, d)


def _pure_marginal_entropy(t: np.ndarray, axes_keep: tuple[int, ...]) -> float:
    """Entropy of a marginal of the pure state with amplitude tensor ``t``,
    computed from the Gram matrix of the smaller matricization side."""
    rest = tuple(a for a in range(t.ndim) if a not in axes_keep)
    d_keep = int(np.prod([t.shape[a] for a in axes_keep])) if axes_keep else 1
    m = t.transpose(axes_keep + rest).reshape(d_keep, -1)
    g = m @ m.conj().T if m.shape[0] <= m.shape[1] else m.conj().T @ m
    return entropy_bits(g)


def _pure_info_of_squashing(
    t: np.ndarray, groups_axes: Sequence[tuple[int, ...]], flavor: str
) -> float:
    """Conditional total or dual total correlation of the squashed extension,
    evaluated on the pure amplitude tensor with axes (env, sink, systems...).

    Equivalent to tracing the sink axis and calling the density-matrix path,
    but every entropy uses the cheaper complementary marginal when that side
    is smaller.
    """
    env = (0,)
    he = _pure_marginal_entropy(t, env)
    every = env + tuple(a for g in groups_axes for a in g)
    h_all = _pure_marginal_entropy(t, every)
    if flavor == FLAVOR_TOTAL:
        out = -(h_all - he)
        for g in groups_axes:
            out += _pure_marginal_entropy(t, env + g) - he
        return out
    out = h_all - he
    for i in range(len(groups_axes)):
        rest = tuple(a for j, g in enumerate(groups_axes) if j != i for a in g)
        out -= h_all - _pure_marginal_entropy(t, env + rest)
    return out


def _info_of_extension(
    mat: np.ndarray,
    dims: Sequence[int],
    groups: Sequence[tuple[int, ...]],
    env: tuple[int, ...],
    flavor: str,
) -> float:
    """Conditional total or dual total correlation on a raw extension matrix,
    with groups given as position tuples."""
    def h(pos: tuple[int, ...]) -> float:
        return entropy_bits(reduce_matrix(mat, dims, pos))

    he = h(env)
    every = tuple(p for g in groups for p in g) + env
    h_all = h(every)
    if flavor == FLAVOR_TOTAL:
        out = -(h_all - he)
        for g in groups:
            out += h(g + env) - he
        return out
    out = h_all - he
    for i in range(len(groups)):
        rest = tuple(p for j, g in enumerate(groups) if j != i for p in g)
        out -= h_all - h(rest + env)
    return out


def squashing_value(
    rho: DensityOperator,
    groups: Sequence[Iterable[str] | str],
    ansatz: SquashingAnsatz,
    flavor: str = FLAVOR_TOTAL,
) -> float:
    """Half the conditional information of the squashed extension at a fixed
    ansatz: an upper bound on the corresponding squashed entanglement."""
    if flavor not in _FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}; have {_FLAVORS}")
    gpos = [tuple(p + 1 for p in rho.layout.positions(g)) for g in groups]
    _check_groups_cover(rho, groups)
    psi = purification_matrix(rho.matrix, d_ref=ansatz.d_purify)
    mat = _extension_matrix(psi, ansatz.isometry_matrix(), ansatz.d_env, ansatz.d_sink)
    dims = (ansatz.d_env,) + rho.layout.dims
    return 0.5 * _info_of_extension(mat, dims, gpos, (0,), flavor)


def _check_groups_cover(rho: DensityOperator, groups: Sequence[Iterable[str] | str]) -> None:
    seen: set[str] = set()
    for g in groups:
        for lbl in as_labels(g):
            if lbl in seen:
                raise LayoutError(f"groups overlap on label {lbl!r}")
            seen.add(lbl)
    if seen != set(rho.layout.labels):
        raise LayoutError(
            f"groups {sorted(seen)} must cover all systems {sorted(rho.layout.labels)}"
        )


# ---------------------------------------------------------------------------
# multi-start minimization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OptimizerConfig:
    """Knobs for the multi-start descent; all runs are deterministic in
    ``seed`` (restart ``j`` starts from PCG64 stream ``seed + j``)."""

    restarts: int = 8
    max_iters: int = 500
    tol: float = 1e-7
    init_scale: float = 0.5
    seed: int = 0

    def __post_init__(self) -> None:
        if self.restarts < 1 or self.max_iters < 1:
            raise ValueError("restarts and max_iters must be positive")
        if self.tol <= 0 or self.init_scale <= 0:
            raise ValueError("tol and init_scale must be positive")


@dataclass(frozen=True)
class RestartRecord:
    index: int
    value: float
    iterations: int
    converged: bool


@dataclass(frozen=True)
class BoundReport:
    """Outcome of a variational bound run: the reported value is the minimum
    over restarts (ties broken by lowest restart index) and is reproducible
    from the master seed."""

    description: str
    value: float
    flavor: str
    dims: tuple[int, int, int]  # (d_purify, d_env, d_sink)
    seed: int
    restarts: tuple[RestartRecord, ...]
    best_restart: int
    optimizer_ok: bool
    ansatz: SquashingAnsatz | None
    heuristic: bool = False

    def to_dict(self) -> dict:
        return {
            "description": self.description,
            "value": self.value,
            "flavor": self.flavor,
            "dims": {"d_purify": self.dims[0], "d_env": self.dims[1], "d_sink": self.dims[2]},
            "seed": self.seed,
            "best_restart": self.best_restart,
            "optimizer_ok": self.optimizer_ok,
            "heuristic": self.heuristic,
            "restarts": [
                {
                    "index": r.index,
                    "value": r.value,
                    "iterations": r.iterations,
                    "converged": r.converged,
                }
                for r in self.restarts
            ],
        }


def _minimize_restarts(fn, n_params: int, cfg: OptimizerConfig):
    records = []
    solutions = []
    for j in range(cfg.restarts):
        rng = np.random.Generator(np.random.PCG64(cfg.seed + j))
        x0 = cfg.init_scale * rng.standard_normal(n_params)
        res = minimize(
            fn,
            x0,
            method="L-BFGS-B",
            options={"maxiter": cfg.max_iters, "ftol": cfg.tol, "gtol": 1e-7},
        )
        records.append(RestartRecord(j, float(res.fun), int(res.nit), bool(res.success)))
        solutions.append(np.asarray(res.x))
    best = min(range(len(records)), key=lambda j: (records[j].value, j))
    return records, best, solutions[best]


def squashed_multi_upper(
    rho: DensityOperator,
    groups: Sequence[Iterable[str] | str],
    flavor: str = FLAVOR_TOTAL,
    d_env: int | None = None,
    d_sink: int | None = None,
    cfg: OptimizerConfig | None = None,
    description: str = "",
) -> BoundReport:
    """Variational upper bound on the multipartite squashed entanglement of
    the chosen flavor over the given groups.

    The default extension dimensions are ``d_env = d_sink = rank(rho)``; any
    finite choice still yields a sound upper bound, so the dimensions used
    are recorded in the report.
    """
    if flavor not in _FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}; have {_FLAVORS}")
    if len(groups) < 2:
        raise ValueError("need at least two groups")
    _check_groups_cover(rho, groups)
    cfg = cfg or OptimizerConfig()
    d_purify = max(rho.rank(), 1)
    d_env = int(d_env) if d_env is not None else d_purify
    d_sink = int(d_sink) if d_sink is not None else d_purify
    if d_env * d_sink < d_purify:
        raise ValueError(
            f"extension dims {d_env}x{d_sink} cannot carry the purifying dimension {d_purify}"
        )

    psi = purification_matrix(rho.matrix, d_ref=d_purify)
    dims_sys = rho.layout.dims
    # axes of the pure amplitude tensor: 0 = env, 1 = sink, 2 + j = system j
    groups_axes = [tuple(p + 2 for p in rho.layout.positions(g)) for g in groups]
    shape = (d_env, d_sink) + dims_sys

    def objective(params: np.ndarray) -> float:
        v = _isometry_from_params(params, d_env, d_sink, d_purify)
        t = (v @ psi).reshape(shape)
        return 0.5 * _pure_info_of_squashing(t, groups_axes, flavor)

    records, best, x_best = _minimize_restarts(objective, ansatz_param_count(d_env, d_sink), cfg)
    ansatz = SquashingAnsatz(d_purify, d_env, d_sink, x_best)
    return BoundReport(
        description=description or f"squashed upper bound ({flavor}) over {len(groups)} groups",
        value=records[best].value,
        flavor=flavor,
        dims=(d_purify, d_env, d_sink),
        seed=cfg.seed,
        restarts=tuple(records),
        best_restart=best,
        optimizer_ok=all(r.converged for r in records),
        ansatz=ansatz,
    )


def squashed_upper(
    rho: DensityOperator,
    group_a: Iterable[str] | str,
    group_b: Iterable[str] | str,
    d_env: int | None = None,
    d_sink: int | None = None,
    cfg: OptimizerConfig | None = None,
    description: str = "",
) -> BoundReport:
    """Variational upper bound on the bipartite squashed entanglement,
    ``min over restarts of (1/2) I(A;B|E)`` on the squashed extension."""
    return squashed_multi_upper(
        rho,
        [as_labels(group_a), as_labels(group_b)],
        flavor=FLAVOR_TOTAL,
        d_env=d_env,
        d_sink=d_sink,
        cfg=cfg,
        description=description or "bipartite squashed upper bound",
    )


# ---------------------------------------------------------------------------
# private-state identity residuals
# ---------------------------------------------------------------------------

IDENTITY_BIPARTITE = "bipartite"
IDENTITY_BIPARTITE_JOINT = "bipartite_joint"
IDENTITY_MULTI_TOTAL = "multi_total"
IDENTITY_MULTI_DUAL = "multi_dual"
_IDENTITIES = (
    IDENTITY_BIPARTITE,
    IDENTITY_BIPARTITE_JOINT,
    IDENTITY_MULTI_TOTAL,
    IDENTITY_MULTI_DUAL,
)


def private_identity_residual(
    gamma_ext: DensityOperator,
    kind: str,
    keys: Sequence[str],
    shields: Sequence[str],
    env: Iterable[str] | str = "E",
) -> float:
    """``|LHS - RHS|`` of an entropic identity that holds exactly for every
    extension of a private state.

    ``keys`` and ``shields`` list the key and shield labels in party order,
    ``env`` the extension system(s).  Kinds:

    * ``bipartite``:        ``2 log2 K  vs  I(A;BB'|E) + I(A';B|AB'E)``
    * ``bipartite_joint``:  ``I(AA';BB'|E)  vs  2 log2 K + I(A';B'|AE)``
    * ``multi_total``:      the ``m log2 K`` identity whose right side uses
      conditional entropies and pairwise informations against party 1
    * ``multi_dual``:       the ``m log2 K`` identity dual to it
    """
    if kind not in _IDENTITIES:
        raise ValueError(f"unknown identity kind {kind!r}; have {_IDENTITIES}")
    keys, shields = tuple(keys), tuple(shields)
    env = as_labels(env)
    m = len(keys)
    if len(shields) != m or m < 2:
        raise ValueError("need matching key/shield labels for at least two parties")
    key_dim = gamma_ext.layout.dim_of(keys[0])
    lk = log2(key_dim)
    g = gamma_ext

    if kind in (IDENTITY_BIPARTITE, IDENTITY_BIPARTITE_JOINT):
        if m != 2:
            raise ValueError(f"{kind} applies to two parties, got {m}")
        a, b = keys
        ap, bp = shields
        if kind == IDENTITY_BIPARTITE:
            lhs = 2.0 * lk
            rhs = cond_mutual_info(g, (a,), (b, bp), env) + cond_mutual_info(
                g, (ap,), (b,), (a, bp) + env
            )
        else:
            lhs = cond_mutual_info(g, (a, ap), (b, bp), env)
            rhs = 2.0 * lk + cond_mutual_info(g, (ap,), (bp,), (a,) + env)
        return abs(lhs - rhs)

    lhs = m * lk
    first = keys[0]
    if kind == IDENTITY_MULTI_TOTAL:
        rhs = 0.0
        for i in range(1, m):
            rhs += cond_entropy(g, (keys[i],), (shields[i], first) + env)
            rhs += cond_mutual_info(g, (first,), (keys[i], shields[i]), env)
        rhs -= cond_entropy(g, keys[1:], (first,) + shields + env)
        return abs(lhs - rhs)

    rhs = cond_entropy(g, keys[1:], (first,) + shields[1:] + env)
    rhs += cond_mutual_info(g, (first,), keys[1:] + shields[1:], env)
    for i in range(1, m):
        rhs -= cond_entropy(g, (keys[i],), (first,) + shields + env)
        other_keys = tuple(keys[j] for j in range(1, m) if j != i)
        other_shields = tuple(shields[j] for j in range(m) if j != i)
        rhs += cond_mutual_info(
            g, (keys[i], shields[i]), other_keys, (first,) + other_shields + env
        )
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# key bounds
# ---------------------------------------------------------------------------

MODE_BIPARTITE = "bipartite"
MODE_MULTI_TOTAL = "multi_total"
MODE_MULTI_DUAL = "multi_dual"
_MODES = (MODE_BIPARTITE, MODE_MULTI_TOTAL, MODE_MULTI_DUAL)


def key_length_bound(
    esq_value: float,
    eps: float,
    key_dim: int,
    mode: str = MODE_BIPARTITE,
    parties: int | None = None,
    constants: tuple[int, int] = DEFAULT_MULTI_CONSTANTS,
) -> float:
    """Right-hand side of the key-length bound for an ``eps``-approximate
    private state, arranged so the comparison is against ``log2 K``.

    Bipartite: ``esq + f(sqrt(eps), K)`` with the key-bipartite continuity
    term.  Multipartite: ``(2/m) (esq + f(sqrt(eps), K, m))`` with the
    total or dual continuity term and the supplied constants.
    """
    if mode not in _MODES:
        raise ValueError(f"unknown mode {mode!r}; have {_MODES}")
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps {eps} outside [0, 1]")
    root = sqrt(eps)
    if mode == MODE_BIPARTITE:
        f = continuity_bound(ContinuityParams(KIND_KEY_BIPARTITE, root, log2(key_dim)))
        return esq_value + f
    if parties is None:
        raise ValueError(f"mode {mode!r} needs the party count")
    kind = KIND_KEY_MULTI_TOTAL if mode == MODE_MULTI_TOTAL else KIND_KEY_MULTI_DUAL
    f = continuity_bound(ContinuityParams(kind, root, log2(key_dim), parties, constants))
    return (2.0 / parties) * (esq_value + f)


def key_rate_bound(esq_value: float, eps: float, rounds: int) -> float:
    """Finite-round key-rate bound
    ``esq/(1-2 sqrt(eps)) + 2(1+sqrt(eps)) h2(sqrt(eps)/(1+sqrt(eps))) / (n (1-2 sqrt(eps)))``.

    Only valid when ``1 - 2 sqrt(eps) > 0``; larger ``eps`` raises.
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps {eps} outside [0, 1]")
    if rounds < 1:
        raise ValueError(f"rounds {rounds} < 1")
    root = sqrt(eps)
    denom = 1.0 - 2.0 * root
    if denom <= 0.0:
        raise ValueError(
            f"key rate bound requires 1 - 2*sqrt(eps) > 0; eps = {eps} gives {denom:.6g}"
        )
    correction = 2.0 * (1.0 + root) * binary_entropy(root / (1.0 + root)) / (rounds * denom)
    return esq_value / denom + correction


# ---------------------------------------------------------------------------
# channel quantity (heuristic)
# ---------------------------------------------------------------------------

def channel_squashed_upper(
    channel: Isometry,
    keep: Iterable[str] | str | None = None,
    d_env: int | None = None,
    d_sink: int | None = None,
    cfg: OptimizerConfig | None = None,
    rounds: int = 3,
) -> BoundReport:
    """Alternating search for the channel's squashed-entanglement quantity:
    ascent over pure inputs (reference dimension equal to the input
    dimension) alternating with descent over squashing ansaetze on the
    output state.

    The outer problem is a maximum, so the returned value is HEURISTIC:
    neither a certified upper nor lower bound.  The input dimension is
    capped at 4.
    """
    cfg = cfg or OptimizerConfig()
    d_in = channel.input_layout.total_dim
    if d_in > 4:
        raise ValueError(f"input dimension {d_in} exceeds the desk-scale guard of 4")
    out_labels = channel.output_layout.labels
    keep = as_labels(keep) if keep is not None else (out_labels[0],)
    for lbl in keep:
        if lbl not in out_labels:
            raise LayoutError(f"kept label {lbl!r} not among channel outputs {out_labels}")

    out_dims = channel.output_layout.dims
    keep_pos = [i for i, lbl in enumerate(out_labels) if lbl in keep]
    d_keep = prod(out_dims[i] for i in keep_pos)
    d_ref = d_in  # reference system of the pure input, same dimension as the channel input
    d_purify = d_ref * d_keep
    d_env = int(d_env) if d_env is not None else d_purify
    d_sink = int(d_sink) if d_sink is not None else d_purify
    if d_env * d_sink < d_purify:
        raise ValueError(
            f"extension dims {d_env}x{d_sink} cannot carry the purifying dimension {d_purify}"
        )
    n_ansatz = ansatz_param_count(d_env, d_sink)
    v_chan = channel.matrix

    def output_state(psi_params: np.ndarray) -> np.ndarray:
        vec = psi_params[:d_ref * d_in] + 1j * psi_params[d_ref * d_in:]
        vec = vec / np.linalg.norm(vec)
        amp = vec.reshape(d_ref, d_in) @ v_chan.T  # rows: reference, cols: channel output
        t = amp.reshape((d_ref,) + out_dims)
        # regroup to (reference+kept | sunk)
        order = [0] + [1 + i for i in keep_pos] + [1 + i for i in range(len(out_dims)) if i not in keep_pos]
        t = t.transpose(order).reshape(d_ref * d_keep, -1)
        return t @ t.conj().T  # state on reference (x) kept outputs

    shape = (d_env, d_sink, d_ref, d_keep)
    groups_axes = [(2,), (3,)]

    def value_at(psi_params: np.ndarray, ansatz_params: np.ndarray) -> float:
        omega = output_state(psi_params)
        psi_mat = purification_matrix(omega, d_ref=d_purify)
        v = _isometry_from_params(ansatz_params, d_env, d_sink, d_purify)
        t = (v @ psi_mat).reshape(shape)
        return 0.5 * _pure_info_of_squashing(t, groups_axes, FLAVOR_TOTAL)

    options = {"maxiter": cfg.max_iters, "ftol": cfg.tol, "gtol": 1e-8}
    records = []
    best_value, best_restart = -np.inf, 0
    best_ansatz_params = None
    for j in range(cfg.restarts):
        rng = np.random.Generator(np.random.PCG64(cfg.seed + j))
        psi_params = rng.standard_normal(2 * d_ref * d_in)
        ansatz_params = cfg.init_scale * rng.standard_normal(n_ansatz)
        iters = 0
        for _ in range(rounds):
            res = minimize(
                lambda x: value_at(psi_params, x), ansatz_params,
                method="L-BFGS-B", options=options,
            )
            ansatz_params, iters = res.x, iters + int(res.nit)
            res = minimize(
                lambda x: -value_at(x, ansatz_params), psi_params,
                method="L-BFGS-B", options=options,
            )
            psi_params, iters = res.x, iters + int(res.nit)
        # final descents (current ansatz plus fresh starts) so the reported
        # value is a well-minimized squashed bound at this input
        value, ok = np.inf, True
        for x0 in (ansatz_params,
                   cfg.init_scale * rng.standard_normal(n_ansatz),
                   cfg.init_scale * rng.standard_normal(n_ansatz)):
            res = minimize(lambda x: value_at(psi_params, x), x0,
                           method="L-BFGS-B", options=options)
            iters += int(res.nit)
            if float(res.fun) < value:
                value, final_params, ok = float(res.fun), np.asarray(res.x), bool(res.success)
        records.append(RestartRecord(j, value, iters, ok))
        if value > best_value:
            best_value, best_restart, best_ansatz_params = value, j, final_params

    ansatz = SquashingAnsatz(d_purify, d_env, d_sink, best_ansatz_params)
    return BoundReport(
        description="channel squashed-entanglement search (heuristic)",
        value=best_value,
        flavor=FLAVOR_TOTAL,
        dims=(d_purify, d_env, d_sink),
        seed=cfg.seed,
        restarts=tuple(records),
        best_restart=best_restart,
        optimizer_ok=all(r.converged for r in records),
        ansatz=ansatz,
        heuristic=True,
    )


__all__ = [
    "SquashingAnsatz",
    "OptimizerConfig",
    "RestartRecord",
    "BoundReport",
    "extend_by_squashing",
    "squashing_value",
    "squashed_upper",
    "squashed_multi_upper",
    "private_identity_residual",
    "key_length_bound",
    "key_rate_bound",
    "channel_squashed_upper",
    "ansatz_param_count",
    "FLAVOR_TOTAL",
    "FLAVOR_DUAL",
    "IDENTITY_BIPARTITE",
    "IDENTITY_BIPARTITE_JOINT",
    "IDENTITY_MULTI_TOTAL",
    "IDENTITY_MULTI_DUAL",
    "MODE_BIPARTITE",
    "MODE_MULTI_TOTAL",
    "MODE_MULTI_DUAL",
]
