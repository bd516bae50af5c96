"""Constructive extremizers attaining the sharp level-set bound.

Recipes are small algebraic trees of concatenation moves.  Interpreting a
recipe yields a concrete configuration (set plus weight sequence); the
canned constructors below produce, exactly, the configurations that attain
``bellman_value`` on the lattice of curve vertices: full-measure chains at
x = 1, the curve-vertex family at x = 2**-k, and the tower example.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .candidate import bellman_value, vertex_f
from .dyadic import (
    CarlesonSequence,
    Config,
    DyadicInterval,
    DyadicSet,
    ROOT,
    carleson_constant,
    concat_configs,
)
from .rational import DomainError, format_rational

__all__ = [
    "BaseVariant",
    "Recipe",
    "Base",
    "Jump",
    "Halve",
    "MixZero",
    "Mix",
    "interpret",
    "recipe_nodes",
    "base_root_config",
    "base_double_config",
    "x1_chain_recipe",
    "x1_chain_config",
    "curve_vertex_recipe",
    "curve_vertex_config",
    "corollary_config",
    "tower_config",
    "mix_config",
    "AttainmentTarget",
    "curve_vertex_target",
    "attainment_report",
]

ZERO = Fraction(0)
ONE = Fraction(1)


class BaseVariant(Enum):
    ROOT_ONE = "root-one"      # left-packed set, unit weight on the root
    DOUBLE_ROOT = "double-root"  # equidistributed set, unit weights on root and children
    EMPTY = "empty"            # left-packed set, no weights


class Recipe:
    """Base class for extremizer recipes."""


@dataclass(frozen=True)
class Base(Recipe):
    x: Fraction
    variant: BaseVariant


@dataclass(frozen=True)
class Jump(Recipe):
    inner: Recipe


@dataclass(frozen=True)
class Halve(Recipe):
    inner: Recipe


@dataclass(frozen=True)
class MixZero(Recipe):
    inner: Recipe


@dataclass(frozen=True)
class Mix(Recipe):
    left: Recipe
    right: Recipe
    gamma: Fraction


def base_root_config(x: Fraction) -> Config:
    """Left-packed set of dyadic measure x, unit weight on the root.

    The operator is constant x, so the level-set measure is 1 at every
    threshold up to x.
    """
    subset = DyadicSet.prefix(Fraction(x))
    seq = CarlesonSequence.from_mapping({ROOT: ONE})
    return Config.build(subset, seq)


def base_double_config(x: Fraction) -> Config:
    """Set of measure x equidistributed over both halves, weights on root and children.

    Each child sees average x, so the operator is constant 2x at height 2.
    """
    prefix = DyadicSet.prefix(Fraction(x))
    subset = DyadicSet.from_intervals(
        [DyadicInterval(iv.depth + 1, iv.index) for iv in prefix.intervals]
        + [DyadicInterval(iv.depth + 1, iv.index + 2**iv.depth) for iv in prefix.intervals]
    )
    left, right = ROOT.children()
    seq = CarlesonSequence.from_mapping({ROOT: ONE, left: ONE, right: ONE})
    return Config.build(subset, seq)


def interpret(recipe: Recipe) -> Config:
    """Interpret a recipe into a concrete configuration."""
    if isinstance(recipe, Base):
        if recipe.variant is BaseVariant.ROOT_ONE:
            return base_root_config(recipe.x)
        if recipe.variant is BaseVariant.DOUBLE_ROOT:
            return base_double_config(recipe.x)
        return Config.build(DyadicSet.prefix(Fraction(recipe.x)), CarlesonSequence.empty())
    if isinstance(recipe, Jump):
        inner = interpret(recipe.inner)
        return concat_configs(inner, inner, ONE)
    if isinstance(recipe, Halve):
        return concat_configs(interpret(recipe.inner), Config.empty(), ZERO)
    if isinstance(recipe, MixZero):
        return concat_configs(interpret(recipe.inner), Config.full_unweighted(), ZERO)
    if isinstance(recipe, Mix):
        return concat_configs(interpret(recipe.left), interpret(recipe.right), recipe.gamma)
    raise DomainError(f"unknown recipe node {recipe!r}")


def recipe_nodes(recipe: Recipe) -> list[Recipe]:
    """Every node of the recipe tree, leaves first."""
    if isinstance(recipe, Base):
        return [recipe]
    if isinstance(recipe, (Jump, Halve, MixZero)):
        return recipe_nodes(recipe.inner) + [recipe]
    if isinstance(recipe, Mix):
        return recipe_nodes(recipe.left) + recipe_nodes(recipe.right) + [recipe]
    raise DomainError(f"unknown recipe node {recipe!r}")


def x1_chain_recipe(m: int) -> Recipe:
    """Chain pinned at full measure: m rounds of averaging with the bare full set, then a jump."""
    if m < 0:
        raise DomainError(f"chain length must be nonnegative, got {m}")
    recipe: Recipe = Base(ONE, BaseVariant.DOUBLE_ROOT)
    for _ in range(m):
        recipe = Jump(MixZero(recipe))
    return recipe


def x1_chain_config(m: int) -> Config:
    """Configuration with measure 1, height 2, and level-set 2**-m at level m + 2."""
    return interpret(x1_chain_recipe(m))


def curve_vertex_recipe(m: int, k: int) -> Recipe:
    """Recipe attaining the bound at the k-th vertex of the m-th curve."""
    if not 0 <= k <= m:
        raise DomainError(f"vertex indices need 0 <= k <= m, got k={k}, m={m}")
    recipe = x1_chain_recipe(m - k)
    for _ in range(k):
        recipe = Jump(Halve(recipe))
    return recipe


def curve_vertex_config(m: int, k: int) -> Config:
    """Configuration with measure 2**-k, height 2, level-set 2**-m at the vertex level."""
    config = interpret(curve_vertex_recipe(m, k))
    if carleson_constant(config.seq) > 2:
        raise AssertionError("constructed sequence exceeds the height budget")
    return config


def corollary_config(n: int, big_n: int) -> Config:
    """Configuration attaining ``corollary_bound(n, big_n)`` exactly."""
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    if big_n < 3:
        raise DomainError(f"the lattice bound needs big_n >= 3, got {big_n}")
    return curve_vertex_config(big_n + n - 3, n)


def tower_config(n: int) -> Config:
    """Full set with unit weights on the nested prefixes [0, 2**-j), j = 0..n.

    The operator counts the containing weighted intervals, so the level-set
    measure at integer thresholds halves with each level.
    """
    if n < 0:
        raise DomainError(f"tower height must be nonnegative, got {n}")
    seq = CarlesonSequence.from_mapping({DyadicInterval(j, 0): ONE for j in range(n + 1)})
    return Config.build(DyadicSet.full(), seq)


def mix_config(c1: Config, c2: Config) -> Config:
    """Plain concatenation: measures, heights and level sets all average."""
    return concat_configs(c1, c2, ZERO)


@dataclass(frozen=True)
class AttainmentTarget:
    """A lattice point with the bound value the construction must reach."""

    x: Fraction
    height: Fraction
    level: Fraction
    value: Fraction


def curve_vertex_target(m: int, k: int) -> AttainmentTarget:
    point = vertex_f(k, m)
    value = bellman_value(point.x, Fraction(2), point.y)
    return AttainmentTarget(point.x, Fraction(2), point.y, value)


def attainment_report(config: Config, target: AttainmentTarget) -> dict:
    """JSON-ready report comparing a configuration against its target."""
    achieved = config.level_set(target.level)
    return {
        "target": {
            "x": format_rational(target.x),
            "A": format_rational(target.height),
            "lambda": format_rational(target.level),
            "B": format_rational(target.value),
        },
        "achieved_V": format_rational(achieved),
        "attained": achieved == target.value,
        "config_measure": format_rational(config.measure),
        "config_height": format_rational(config.height),
    }
