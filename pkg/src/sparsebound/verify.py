"""Property harness and brute-force certification.

Every check here is exact: samples are rational, comparisons are rational,
and a reported violation carries a witness from which both sides can be
recomputed bit for bit.  The brute-force driver enumerates, at small depth,
every binary weight sequence with Carleson constant at most 2 against every
set resolved at that depth, and certifies that no configuration's level-set
measure ever exceeds ``bellman_value`` while recording where equality is
attained.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .candidate import (
    bellman_value,
    f_extended,
    f_value,
    g_value,
    profile_slopes,
    recip_slope_forms,
    segment_slope,
)
from .dyadic import (
    CarlesonSequence,
    Config,
    DyadicInterval,
    DyadicSet,
    carleson_constant,
    concat_configs,
    config_to_json,
)
from .rational import DomainError, format_rational

__all__ = [
    "SampleSpec",
    "Violation",
    "replay",
    "check_obstacle",
    "check_midpoint_concavity",
    "check_jump",
    "check_fJ_ge_g",
    "check_g_consistency",
    "check_slopes",
    "check_dynamics_suite",
    "default_level_grid",
    "DEFAULT_CONCAVITY_GRID",
    "SUITE_NAMES",
    "run_suite",
    "ExhaustiveModeError",
    "EXHAUSTIVE_DEPTH_CAP",
    "intervals_to_depth",
    "iter_binary_carleson",
    "brute_force_sup",
    "brute_reference",
    "ReportEntry",
    "BruteForceReport",
]

ZERO = Fraction(0)
ONE = Fraction(1)
TWO = Fraction(2)


@dataclass(frozen=True)
class SampleSpec:
    """Deterministic sampling plan for a property check."""

    seed: int
    count: int
    lambda_grid: tuple[Fraction, ...] = ()
    denominator_bound: int = 32


@dataclass(frozen=True)
class Violation:
    """A failed exact comparison, replayable from its witness."""

    check: str
    witness: tuple[tuple[str, Fraction], ...]
    lhs: Fraction
    rhs: Fraction

    def witness_dict(self) -> dict[str, Fraction]:
        return dict(self.witness)

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "witness": {k: format_rational(v) for k, v in self.witness},
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
        }


def _witness(**values: Fraction | int) -> tuple[tuple[str, Fraction], ...]:
    return tuple((k, Fraction(v)) for k, v in values.items())


def _sample_fraction(rng: random.Random, lo: Fraction, hi: Fraction, bound: int) -> Fraction:
    q = rng.randint(1, bound)
    p = rng.randint(math.ceil(lo * q), math.floor(hi * q))
    return Fraction(p, q)


# Witness evaluators, keyed by check name.  replay() recomputes both sides
# of a violation exactly from the recorded witness.

def _eval_obstacle(w: dict) -> tuple[Fraction, Fraction]:
    return bellman_value(w["x"], w["A"], w["lambda"]), ONE


def _eval_concavity(w: dict) -> tuple[Fraction, Fraction]:
    mid_x = (w["x1"] + w["x2"]) / 2
    mid_a = (w["A1"] + w["A2"]) / 2
    lhs = bellman_value(mid_x, mid_a, w["lambda"])
    rhs = (
        bellman_value(w["x1"], w["A1"], w["lambda"])
        + bellman_value(w["x2"], w["A2"], w["lambda"])
    ) / 2
    return lhs, rhs


def _eval_jump(w: dict) -> tuple[Fraction, Fraction]:
    lhs = bellman_value(w["x"], w["A"] + 1, w["lambda"] + w["x"])
    rhs = bellman_value(w["x"], w["A"], w["lambda"])
    return lhs, rhs


def _eval_fjg(w: dict) -> tuple[Fraction, Fraction]:
    return f_value(w["x"], w["lambda"] + w["x"]), g_value(w["x"], w["lambda"])


def _eval_gconsist(w: dict) -> tuple[Fraction, Fraction]:
    lhs = g_value(w["x"], w["lambda"])
    if w["lambda"] > 1:
        rhs = f_extended(2 * w["x"], w["lambda"]) / 2
    else:
        rhs = bellman_value(w["x"], ONE, w["lambda"])
    return lhs, rhs


def _eval_slopes_monotone(w: dict) -> tuple[Fraction, Fraction]:
    slopes = profile_slopes(w["lambda"], w["x_min"])
    i = int(w["i"])
    return slopes[i], slopes[i + 1]


def _form_value(form: tuple[Fraction, Fraction], level: Fraction) -> Fraction:
    c0, c1 = form
    return c0 + c1 * level


def _eval_slopes_mid_vs_low(w: dict) -> tuple[Fraction, Fraction]:
    window, m = int(w["window"]), int(w["m"])
    inner = recip_slope_forms(window, m)["mid"][0]
    outer = recip_slope_forms(window, m + 1)["low"][0]
    return _form_value(inner, w["lambda"]), _form_value(outer, w["lambda"])


def _eval_slopes_high_vs_mid(w: dict) -> tuple[Fraction, Fraction]:
    window, m = int(w["window"]), int(w["m"])
    inner = recip_slope_forms(window, m)["high"][0]
    outer = recip_slope_forms(window, m + 1)["mid"][0]
    return _form_value(inner, w["lambda"]), _form_value(outer, w["lambda"])


def _eval_slopes_form(w: dict) -> tuple[Fraction, Fraction]:
    window, m = int(w["window"]), int(w["m"])
    form = recip_slope_forms(window, m)[_FORM_NAMES[int(w["form"])]][0]
    return 1 / _form_value(form, w["lambda"]), segment_slope(m + 1, w["lambda"])


def _eval_dynamics(w: dict) -> tuple[Fraction, Fraction]:
    c1, c2, gamma, level = _dynamics_instance(int(w["seed"]), int(w["index"]))
    combined = concat_configs(c1, c2, gamma)
    lhs = combined.level_set(level + gamma * combined.measure)
    rhs = (c1.level_set(level) + c2.level_set(level)) / 2
    return lhs, rhs


_FORM_NAMES = {0: "low", 1: "mid", 2: "high"}

_WITNESS_EVALUATORS: dict[str, Callable[[dict], tuple[Fraction, Fraction]]] = {
    "obstacle": _eval_obstacle,
    "concavity": _eval_concavity,
    "jump": _eval_jump,
    "fjg": _eval_fjg,
    "gconsist": _eval_gconsist,
    "slopes:monotone": _eval_slopes_monotone,
    "slopes:mid-vs-low": _eval_slopes_mid_vs_low,
    "slopes:high-vs-mid": _eval_slopes_high_vs_mid,
    "slopes:form": _eval_slopes_form,
    "dynamics": _eval_dynamics,
}


def replay(violation: Violation) -> tuple[Fraction, Fraction]:
    """Recompute both sides of a violation from its witness."""
    return _WITNESS_EVALUATORS[violation.check](violation.witness_dict())


def check_obstacle(spec: SampleSpec) -> list[Violation]:
    """The bound is identically 1 at nonpositive levels."""
    rng = random.Random(spec.seed)
    out = []
    for _ in range(spec.count):
        x = _sample_fraction(rng, ZERO, ONE, spec.denominator_bound)
        a = _sample_fraction(rng, ZERO, TWO, spec.denominator_bound)
        level = _sample_fraction(rng, Fraction(-5), ZERO, spec.denominator_bound)
        w = _witness(x=x, A=a, **{"lambda": level})
        lhs, rhs = _eval_obstacle(dict(w))
        if lhs != rhs:
            out.append(Violation("obstacle", w, lhs, rhs))
    return out


DEFAULT_CONCAVITY_GRID = (
    Fraction(1, 4),
    Fraction(1, 2),
    Fraction(1),
    Fraction(3, 2),
    Fraction(5, 2),
    Fraction(7, 2),
    Fraction(9, 2),
)


def check_midpoint_concavity(spec: SampleSpec) -> list[Violation]:
    """Midpoint concavity of the bound in (x, height) at each grid level."""
    grid = spec.lambda_grid or DEFAULT_CONCAVITY_GRID
    out = []
    for level in grid:
        rng = random.Random(f"{spec.seed}:{level}")
        for _ in range(spec.count):
            x1 = _sample_fraction(rng, ZERO, ONE, spec.denominator_bound)
            a1 = _sample_fraction(rng, ZERO, TWO, spec.denominator_bound)
            x2 = _sample_fraction(rng, ZERO, ONE, spec.denominator_bound)
            a2 = _sample_fraction(rng, ZERO, TWO, spec.denominator_bound)
            w = _witness(x1=x1, A1=a1, x2=x2, A2=a2, **{"lambda": level})
            lhs, rhs = _eval_concavity(dict(w))
            if lhs < rhs:
                out.append(Violation("concavity", w, lhs, rhs))
    return out


def check_jump(spec: SampleSpec) -> list[Violation]:
    """Raising the height by 1 and the level by x never lowers the bound (heights in [0, 1])."""
    rng = random.Random(spec.seed)
    out = []
    for _ in range(spec.count):
        x = _sample_fraction(rng, ZERO, ONE, spec.denominator_bound)
        a = _sample_fraction(rng, ZERO, ONE, spec.denominator_bound)
        level = _sample_fraction(rng, Fraction(-1), Fraction(5), spec.denominator_bound)
        w = _witness(x=x, A=a, **{"lambda": level})
        lhs, rhs = _eval_jump(dict(w))
        if lhs < rhs:
            out.append(Violation("jump", w, lhs, rhs))
    return out


def check_fJ_ge_g(spec: SampleSpec) -> list[Violation]:
    """The a=2 profile after a jump dominates the a=1 profile."""
    rng = random.Random(spec.seed)
    out = []
    for _ in range(spec.count):
        x = _sample_fraction(rng, ZERO, ONE, spec.denominator_bound)
        level = _sample_fraction(rng, Fraction(1, spec.denominator_bound), Fraction(6), spec.denominator_bound)
        w = _witness(x=x, **{"lambda": level})
        lhs, rhs = _eval_fjg(dict(w))
        if lhs < rhs:
            out.append(Violation("fjg", w, lhs, rhs))
    return out


def check_g_consistency(spec: SampleSpec) -> list[Violation]:
    """The a=1 profile agrees with the bound at height 1 (both level regimes)."""
    rng = random.Random(spec.seed)
    out = []
    for i in range(spec.count):
        x = _sample_fraction(rng, ZERO, ONE, spec.denominator_bound)
        if i % 2 == 0:
            level = _sample_fraction(rng, Fraction(1, spec.denominator_bound), ONE, spec.denominator_bound)
        else:
            level = _sample_fraction(rng, ONE, Fraction(6), spec.denominator_bound)
            if level == 1:
                level = Fraction(3, 2)
        w = _witness(x=x, **{"lambda": level})
        lhs, rhs = _eval_gconsist(dict(w))
        if lhs != rhs:
            out.append(Violation("gconsist", w, lhs, rhs))
    return out


def default_level_grid(count: int = 50) -> tuple[Fraction, ...]:
    """A rational grid of the given size spanning (0, 10]."""
    return tuple(Fraction(10 * j, count) for j in range(1, count + 1))


def check_slopes(
    lambda_grid: Sequence[Fraction],
    x_min: Fraction = Fraction(1, 4096),
    max_index: int = 10,
) -> list[Violation]:
    """Concavity of the a=2 profile, plus the closed-form slope certificates.

    Profile slopes listed left to right must be non-increasing.  The closed
    forms of the reciprocal slopes are linear in the level, so checking each
    certificate inequality at both endpoints of its level range certifies it
    on the whole range; the forms themselves are cross-checked against the
    geometric segment slope at interior points.
    """
    out: list[Violation] = []
    for level in lambda_grid:
        slopes = profile_slopes(level, x_min)
        for i in range(len(slopes) - 1):
            if slopes[i] < slopes[i + 1]:
                w = _witness(i=i, x_min=x_min, **{"lambda": level})
                out.append(Violation("slopes:monotone", w, slopes[i], slopes[i + 1]))
    for window in range(2, max_index + 1):
        for m in range(max(1, window - 1), max_index + 1):
            forms = recip_slope_forms(window, m)
            forms_next = recip_slope_forms(window, m + 1)
            for fi, name in _FORM_NAMES.items():
                (c0, c1), (lo, hi) = forms[name]
                probe = (lo + hi) / 2
                w = _witness(window=window, m=m, form=fi, **{"lambda": probe})
                lhs, rhs = _eval_slopes_form(dict(w))
                if lhs != rhs:
                    out.append(Violation("slopes:form", w, lhs, rhs))
            pairs = (
                ("slopes:mid-vs-low", forms["mid"], forms_next["low"], forms["mid"][1]),
                ("slopes:high-vs-mid", forms["high"], forms_next["mid"], forms_next["mid"][1]),
            )
            for name, inner, outer, (lo, hi) in pairs:
                for level in (lo, hi):
                    lhs = _form_value(inner[0], level)
                    rhs = _form_value(outer[0], level)
                    if lhs <= 0 or rhs <= 0 or lhs < rhs:
                        w = _witness(window=window, m=m, **{"lambda": level})
                        out.append(Violation(name, w, lhs, rhs))
    return out


def _random_config(rng: random.Random, set_depth: int = 3, seq_depth: int = 2) -> Config:
    mask = rng.getrandbits(2**set_depth)
    subset = DyadicSet.from_cells(set_depth, mask)
    mapping: dict[DyadicInterval, Fraction] = {}
    for d in range(seq_depth + 1):
        for i in range(2**d):
            roll = rng.random()
            if roll < 0.25:
                mapping[DyadicInterval(d, i)] = ONE
            elif roll < 0.4:
                mapping[DyadicInterval(d, i)] = Fraction(rng.randint(1, 4), 4)
    return Config.build(subset, CarlesonSequence.from_mapping(mapping))


def _dynamics_instance(seed: int, index: int) -> tuple[Config, Config, Fraction, Fraction]:
    rng = random.Random(f"{seed}:{index}")
    c1 = _random_config(rng)
    c2 = _random_config(rng)
    gamma = (ZERO, Fraction(1, 2), ONE)[index % 3]
    level = Fraction(rng.randint(-4, 24), 4)
    return c1, c2, gamma, level


def check_dynamics_suite(spec: SampleSpec) -> list[Violation]:
    """Exact concatenation identity on seeded random configuration pairs."""
    out = []
    for index in range(spec.count):
        c1, c2, gamma, level = _dynamics_instance(spec.seed, index)
        combined = concat_configs(c1, c2, gamma)
        lhs = combined.level_set(level + gamma * combined.measure)
        rhs = (c1.level_set(level) + c2.level_set(level)) / 2
        if lhs != rhs:
            w = _witness(seed=spec.seed, index=index, gamma=gamma, **{"lambda": level})
            out.append(Violation("dynamics", w, lhs, rhs))
    return out


SUITE_NAMES = ("obstacle", "concavity", "jump", "fjg", "slopes", "gconsist", "dynamics")


def run_suite(name: str, spec: SampleSpec) -> list[Violation]:
    """Run one named check with the given sampling plan."""
    if name == "obstacle":
        return check_obstacle(spec)
    if name == "concavity":
        return check_midpoint_concavity(spec)
    if name == "jump":
        return check_jump(spec)
    if name == "fjg":
        return check_fJ_ge_g(spec)
    if name == "slopes":
        grid = spec.lambda_grid or default_level_grid()
        return check_slopes(grid)
    if name == "gconsist":
        return check_g_consistency(spec)
    if name == "dynamics":
        return check_dynamics_suite(spec)
    raise DomainError(f"unknown suite {name!r}")


# Brute force over all small-depth configurations.

EXHAUSTIVE_DEPTH_CAP = 3
SAMPLED_DEPTH_CAP = 8


class ExhaustiveModeError(ValueError):
    """Exhaustive enumeration was requested beyond the supported depth."""


def intervals_to_depth(depth: int) -> list[DyadicInterval]:
    """All dyadic intervals of depth at most ``depth``, breadth first."""
    return [DyadicInterval(d, i) for d in range(depth + 1) for i in range(2**d)]


def iter_binary_carleson(depth: int, prune: bool = True) -> Iterator[int]:
    """Bitmasks of the binary sequences on depth <= ``depth`` with constant <= 2.

    Masks are over ``intervals_to_depth(depth)``.  Depth-first over
    include/exclude decisions; with ``prune`` set, partial root sums above 2
    cut the subtree (sound because adding weights only raises every height).
    Every emitted mask passes an exact final Carleson check.
    """
    ivs = intervals_to_depth(depth)
    n = len(ivs)
    scale = 2**depth
    # anc_idx[j]: indices of intervals containing ivs[j], including itself.
    index_of = {iv: j for j, iv in enumerate(ivs)}
    anc_idx = []
    for iv in ivs:
        chain = [index_of[iv]] + [index_of[anc] for anc in iv.ancestors()]
        anc_idx.append(chain)
    # Height condition at I: sum over chosen J inside I of |J| <= 2|I|; with
    # everything scaled by 2**depth both sides are integers.
    bound_at = [2 * (scale // 2**iv.depth) for iv in ivs]
    weight_scaled = [scale // 2**iv.depth for iv in ivs]

    totals = [0] * n  # scaled weighted sums per interval over chosen members

    def rec(j: int) -> Iterator[int]:
        if j == n:
            if all(totals[i] <= bound_at[i] for i in range(n)):
                yield 0
            return
        # exclude ivs[j]
        for mask in rec(j + 1):
            yield mask
        # include ivs[j]
        for idx in anc_idx[j]:
            totals[idx] += weight_scaled[j]
        if not prune or totals[0] <= bound_at[0]:
            for mask in rec(j + 1):
                yield mask | (1 << j)
        for idx in anc_idx[j]:
            totals[idx] -= weight_scaled[j]

    yield from rec(0)


def _mask_to_sequence(depth: int, mask: int) -> CarlesonSequence:
    ivs = intervals_to_depth(depth)
    return CarlesonSequence.from_mapping(
        {iv: ONE for j, iv in enumerate(ivs) if mask >> j & 1}
    )


@dataclass(frozen=True)
class ReportEntry:
    x: Fraction
    height: Fraction
    level: Fraction
    max_v: Fraction
    bound: Fraction
    attained: bool

    def to_json(self) -> dict:
        return {
            "x": format_rational(self.x),
            "A": format_rational(self.height),
            "lambda": format_rational(self.level),
            "maxV": format_rational(self.max_v),
            "B": format_rational(self.bound),
            "attained": self.attained,
        }


@dataclass(frozen=True)
class BruteForceReport:
    depth: int
    exhaustive: bool
    configs_scanned: int
    entries: tuple[ReportEntry, ...]
    domination: bool

    def entry(self, x: Fraction, height: Fraction, level: Fraction) -> ReportEntry | None:
        for e in self.entries:
            if (e.x, e.height, e.level) == (x, height, level):
                return e
        return None

    def max_v(self, x: Fraction, height: Fraction, level: Fraction) -> Fraction | None:
        e = self.entry(x, height, level)
        return e.max_v if e else None

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "exhaustive": self.exhaustive,
            "configs_scanned": self.configs_scanned,
            "domination": self.domination,
            "entries": [e.to_json() for e in self.entries],
        }

    def to_csv_rows(self) -> list[list[str]]:
        rows = [["x", "A", "lambda", "maxV", "B", "attained"]]
        for e in self.entries:
            rows.append(
                [
                    format_rational(e.x),
                    format_rational(e.height),
                    format_rational(e.level),
                    format_rational(e.max_v),
                    format_rational(e.bound),
                    "1" if e.attained else "0",
                ]
            )
        return rows


def _exhaustive_tables(
    depth: int, seq_masks: Sequence[int], query_scaled: Sequence[int]
) -> tuple[np.ndarray, np.ndarray]:
    """Aggregate max level-set counts over all sets for the given sequences.

    Returns ``gmax`` indexed by (height, set size, scaled breakpoint) and
    ``qmax`` by (query, height, set size); counts are cell counts, -1 where
    the key never occurs.  All cell values are integers once scaled by the
    cell count, so the whole sweep runs in integer arithmetic.
    """
    ivs = intervals_to_depth(depth)
    n = len(ivs)
    cells = 2**depth
    nsets = 1 << cells
    masks_j = np.array(
        [sum(1 << c for c in range(cells) if iv.contains(DyadicInterval(depth, c))) for iv in ivs],
        dtype=np.int64,
    )
    emasks = np.arange(nsets, dtype=np.int64)
    pop = np.zeros(nsets, dtype=np.int64)
    for c in range(cells):
        pop += (emasks >> c) & 1
    count_je = np.zeros((n, nsets), dtype=np.int64)
    for j in range(n):
        inter = emasks & masks_j[j]
        cnt = np.zeros(nsets, dtype=np.int64)
        for c in range(cells):
            cnt += (inter >> c) & 1
        count_je[j] = cnt
    contain = np.array(
        [[iv.contains(DyadicInterval(depth, c)) for c in range(cells)] for iv in ivs],
        dtype=bool,
    )
    scale_j = np.array([2**iv.depth for iv in ivs], dtype=np.int64)
    a_scaled_j = np.array([cells // 2**iv.depth for iv in ivs], dtype=np.int64)

    n_a = 2 * cells + 1
    n_x = cells + 1
    n_v = (depth + 1) * cells + 1
    gmax = np.full(n_a * n_x * n_v, -1, dtype=np.int64)
    qmax = np.full((len(query_scaled), n_a * n_x), -1, dtype=np.int64)

    chunk_size = max(1, 2**22 // (nsets * cells))
    seq_arr = np.array(seq_masks, dtype=np.int64)
    for start in range(0, len(seq_arr), chunk_size):
        block = seq_arr[start : start + chunk_size]
        b = len(block)
        w = ((block[:, None] >> np.arange(n)[None, :]) & 1).astype(np.int64)
        a8 = w @ a_scaled_j
        values = np.zeros((b, nsets, cells), dtype=np.int64)
        for c in range(cells):
            sel = (w * (contain[:, c] * scale_j)[None, :]).astype(np.int64)
            values[:, :, c] = sel @ count_je
        svals = -np.sort(-values, axis=2)
        nxt = np.concatenate(
            [svals[:, :, 1:], np.full((b, nsets, 1), -1, dtype=np.int64)], axis=2
        )
        is_bp = (svals > 0) & (svals > nxt)
        counts = np.broadcast_to(np.arange(1, cells + 1, dtype=np.int64), svals.shape)
        base_key = a8[:, None, None] * n_x + pop[None, :, None]
        keys = base_key * n_v + svals
        sel_keys = keys[is_bp]
        sel_counts = counts[is_bp]
        np.maximum.at(gmax, sel_keys, sel_counts)
        if query_scaled:
            flat_key = (a8[:, None] * n_x + pop[None, :]).ravel()
            for qi, threshold in enumerate(query_scaled):
                cnt = (values >= threshold).sum(axis=2).ravel()
                np.maximum.at(qmax[qi], flat_key, cnt)
    return gmax, qmax


def _worker_tables(args: tuple) -> tuple[np.ndarray, np.ndarray]:
    depth, chunk, query_scaled = args
    return _exhaustive_tables(depth, chunk, query_scaled)


def brute_force_sup(
    depth: int,
    lambda_values: Sequence[Fraction] = (),
    sample: int | None = None,
    seed: int = 0,
    workers: int | None = None,
) -> BruteForceReport:
    """Scan configurations at one depth and table max level sets against the bound.

    Exhaustive for depth at most 3: every binary Carleson sequence on
    intervals of depth <= depth against every set resolved at that depth,
    checked at every breakpoint of each configuration's step function and
    at the extra ``lambda_values``.  Beyond the cap a seeded random sample
    must be requested explicitly; no exhaustiveness is claimed there.
    """
    if depth < 1:
        raise DomainError(f"depth must be at least 1, got {depth}")
    if sample is None and depth > EXHAUSTIVE_DEPTH_CAP:
        raise ExhaustiveModeError(
            f"exhaustive mode is capped at depth {EXHAUSTIVE_DEPTH_CAP}; "
            "pass --sample for seeded random search"
        )
    if sample is not None:
        return _brute_sampled(depth, lambda_values, sample, seed)

    if workers is None:
        workers = int(os.environ.get("SPARSEBOUND_WORKERS", "1"))
    cells = 2**depth
    seq_masks = list(iter_binary_carleson(depth))
    query_scaled = [math.ceil(q * cells) for q in lambda_values]
    if workers > 1 and len(seq_masks) > workers:
        import multiprocessing

        chunks = [seq_masks[i::workers] for i in range(workers)]
        with multiprocessing.Pool(workers) as pool:
            parts = pool.map(_worker_tables, [(depth, c, query_scaled) for c in chunks])
        gmax = parts[0][0]
        qmax = parts[0][1]
        for g, q in parts[1:]:
            np.maximum(gmax, g, out=gmax)
            np.maximum(qmax, q, out=qmax)
    else:
        gmax, qmax = _exhaustive_tables(depth, seq_masks, query_scaled)

    n_x = cells + 1
    n_v = (depth + 1) * cells + 1
    table: dict[tuple[Fraction, Fraction, Fraction], Fraction] = {}
    for key in np.nonzero(gmax >= 0)[0]:
        count = int(gmax[key])
        v_scaled = int(key % n_v)
        rest = int(key // n_v)
        x_cnt = rest % n_x
        a_scaled = rest // n_x
        k = (Fraction(x_cnt, cells), Fraction(a_scaled, cells), Fraction(v_scaled, cells))
        table[k] = max(table.get(k, ZERO), Fraction(count, cells))
    for qi, level in enumerate(lambda_values):
        for key in np.nonzero(qmax[qi] >= 0)[0]:
            count = int(qmax[qi][key])
            x_cnt = int(key) % n_x
            a_scaled = int(key) // n_x
            k = (Fraction(x_cnt, cells), Fraction(a_scaled, cells), Fraction(level))
            table[k] = max(table.get(k, ZERO), Fraction(count, cells))
    entries, domination = _table_entries(table)
    return BruteForceReport(
        depth=depth,
        exhaustive=True,
        configs_scanned=len(seq_masks) * (1 << cells),
        entries=entries,
        domination=domination,
    )


def _table_entries(
    table: dict[tuple[Fraction, Fraction, Fraction], Fraction]
) -> tuple[tuple[ReportEntry, ...], bool]:
    bound_cache: dict[tuple[Fraction, Fraction, Fraction], Fraction] = {}
    entries = []
    domination = True
    for (x, a, level), max_v in sorted(table.items()):
        key = (x, a, level)
        if key not in bound_cache:
            bound_cache[key] = bellman_value(x, a, level)
        bound = bound_cache[key]
        if max_v > bound:
            domination = False
        entries.append(ReportEntry(x, a, level, max_v, bound, max_v == bound))
    return tuple(entries), domination


def _brute_sampled(
    depth: int, lambda_values: Sequence[Fraction], sample: int, seed: int
) -> BruteForceReport:
    if depth > SAMPLED_DEPTH_CAP:
        raise ExhaustiveModeError(f"sampled mode is capped at depth {SAMPLED_DEPTH_CAP}")
    rng = random.Random(seed)
    ivs = intervals_to_depth(depth)
    cells = 2**depth
    table: dict[tuple[Fraction, Fraction, Fraction], Fraction] = {}
    scanned = 0
    for _ in range(sample):
        seq = None
        for _attempt in range(100):
            k = rng.randint(0, 2 * (depth + 1))
            chosen = rng.sample(ivs, min(k, len(ivs)))
            candidate = CarlesonSequence.from_mapping({iv: ONE for iv in chosen})
            if carleson_constant(candidate) <= 2:
                seq = candidate
                break
        if seq is None:
            continue
        subset = DyadicSet.from_cells(depth, rng.getrandbits(cells))
        config = Config.build(subset, seq)
        scanned += 1
        levels = [v for v in config.breakpoints() if v > 0]
        levels.extend(lambda_values)
        for level in levels:
            v = config.level_set(level)
            k2 = (config.measure, config.height, Fraction(level))
            table[k2] = max(table.get(k2, ZERO), v)
    entries, domination = _table_entries(table)
    return BruteForceReport(
        depth=depth,
        exhaustive=False,
        configs_scanned=scanned,
        entries=entries,
        domination=domination,
    )


def brute_reference(depth: int, lambda_values: Sequence[Fraction] = ()) -> BruteForceReport:
    """Pure-fraction reference enumeration (small depths only).

    Same table as ``brute_force_sup`` computed directly through the
    simulator, used to cross-check the integer fast path.
    """
    if depth > 2:
        raise DomainError("the reference path is meant for depth <= 2")
    cells = 2**depth
    table: dict[tuple[Fraction, Fraction, Fraction], Fraction] = {}
    scanned = 0
    for mask in iter_binary_carleson(depth, prune=False):
        seq = _mask_to_sequence(depth, mask)
        for emask in range(1 << cells):
            subset = DyadicSet.from_cells(depth, emask)
            config = Config.build(subset, seq)
            scanned += 1
            levels = [v for v in config.breakpoints() if v > 0]
            levels.extend(lambda_values)
            for level in levels:
                v = config.level_set(level)
                k = (config.measure, config.height, Fraction(level))
                table[k] = max(table.get(k, ZERO), v)
    entries, domination = _table_entries(table)
    return BruteForceReport(
        depth=depth,
        exhaustive=True,
        configs_scanned=scanned,
        entries=entries,
        domination=domination,
    )
