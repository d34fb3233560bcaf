# src/hk_consensus/core/verification/suites.py
# Propriétés vérifiées sur des instances aléatoires (un cas = une instance)

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List

import numpy as np

from hk_consensus.core.constants import (
    DEFAULT_CONVERGENCE_TOL, FINITE_CONVERGENCE_EPSILONS, FINITE_CONVERGENCE_MAX_N,
    FINITE_CONVERGENCE_MAX_STEPS, MATCHING_TOL, ORACLE_TOL, ORDER_TOL, SUITE_MAX_N_EDGES,
    SUITE_MAX_N_FLOAT, SUITE_MAX_N_GRAPH, SUITE_MAX_N_MATCHING, SUITE_MAX_N_RATIONAL,
    SUITE_MAX_N_TRAJECTORY, SuiteNames
)
from hk_consensus.core.dynamics import (
    naive_synchronous_means, reflect, run, sync_step, sync_step_naive, synchronous_means
)
from hk_consensus.core.graph import (
    adjacency_mask, components, edge_counts, h_statement, is_connected,
    is_connected_bruteforce, persistence_holds
)
from hk_consensus.core.params import ArithmeticMode, ModelParams, Scalar
from hk_consensus.core.profile import OpinionProfile, as_exact_array, neighbors, window_bounds, within
from hk_consensus.core.verification.instances import (
    log_uniform_epsilon, profile_and_epsilon, random_epsilon, random_n, random_profile,
    zero_sum_lambdas
)
from hk_consensus.core.verification.matching import linear_combination, matching_decomposition


@dataclass
class CaseResult:
    """Résultat d'un cas: nombre de vérifications non vides et contre-exemples."""
    checks: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)


def _num(value: Any) -> Any:
    """Valeur JSON d'un scalaire (texte exact pour une Fraction)."""
    if isinstance(value, Fraction):
        return str(value)
    return float(value)


def _describe(profile: OpinionProfile, epsilon: Scalar, **details: Any) -> Dict[str, Any]:
    record = {'opinions': [_num(v) for v in profile.values()], 'epsilon': _num(epsilon)}
    record.update(details)
    return record


def _params(epsilon: Scalar, mode: ArithmeticMode, **kwargs: Any) -> ModelParams:
    tol = min(DEFAULT_CONVERGENCE_TOL, float(epsilon) / 2)
    return ModelParams(epsilon, mode, convergence_tol=tol, **kwargs)


def _max_n(mode: ArithmeticMode, float_cap: int) -> int:
    return SUITE_MAX_N_RATIONAL if mode is ArithmeticMode.RATIONAL else float_cap


def _largest_difference(a: np.ndarray, b: np.ndarray) -> Scalar:
    if a.dtype == object:
        return max((abs(x - y) for x, y in zip(a.tolist(), b.tolist())), default=Fraction(0))
    return float(np.max(np.abs(a - b))) if a.size else 0.0


# ============================================================================
# DYNAMIQUE
# ============================================================================

def check_order_preserving(rng: np.random.Generator, mode: ArithmeticMode) -> CaseResult:
    """Les moyennes brutes d'un pas synchrone restent triées dans l'ordre des agents."""
    profile, epsilon = profile_and_epsilon(rng, mode, _max_n(mode, SUITE_MAX_N_FLOAT))
    means = synchronous_means(profile, _params(epsilon, mode))
    if profile.n == 1:
        return CaseResult(checks=1)
    if profile.is_exact:
        items = means.tolist()
        worst = min(b - a for a, b in zip(items, items[1:]))
        broken = worst < 0
    else:
        worst = float(np.min(np.diff(means)))
        broken = worst < -ORDER_TOL
    result = CaseResult(checks=1)
    if broken:
        result.violations.append(_describe(profile, epsilon, worst_drop=_num(worst)))
    return result


def check_hull_contraction(rng: np.random.Generator, mode: ArithmeticMode) -> CaseResult:
    """min et max du profil ne s'étendent jamais."""
    profile, epsilon = profile_and_epsilon(rng, mode, _max_n(mode, SUITE_MAX_N_FLOAT))
    after = sync_step(profile, _params(epsilon, mode))
    result = CaseResult(checks=1)
    if after[0] < profile[0] or after[after.n - 1] > profile[profile.n - 1]:
        result.violations.append(_describe(
            profile, epsilon, new_min=_num(after[0]), new_max=_num(after[after.n - 1])
        ))
    return result


def check_oracle_equivalence(rng: np.random.Generator, mode: ArithmeticMode) -> CaseResult:
    """Chemin rapide et chemin quadratique donnent les mêmes opinions."""
    profile, epsilon = profile_and_epsilon(rng, mode, _max_n(mode, SUITE_MAX_N_FLOAT))
    params = _params(epsilon, mode)
    raw = _largest_difference(synchronous_means(profile, params), naive_synchronous_means(profile, params))
    stepped = _largest_difference(sync_step(profile, params).opinions, sync_step_naive(profile, params).opinions)
    tol = 0 if profile.is_exact else ORACLE_TOL
    result = CaseResult(checks=1)
    if raw > tol or stepped > tol:
        result.violations.append(_describe(profile, epsilon, max_difference=_num(max(raw, stepped))))
    return result


def check_reflection_symmetry(rng: np.random.Generator, mode: ArithmeticMode) -> CaseResult:
    """sync_step commute avec x -> 1 - x."""
    if mode is ArithmeticMode.RATIONAL:
        profile, epsilon = profile_and_epsilon(rng, mode, SUITE_MAX_N_RATIONAL)
    else:
        # Pas d'égalités au seuil: 1 - x arrondi peut déplacer une distance d'un ulp autour d'epsilon
        profile = random_profile(rng, random_n(rng, SUITE_MAX_N_FLOAT), mode)
        epsilon = random_epsilon(rng, mode)
    params = _params(epsilon, mode)
    mirrored = sync_step(reflect(profile), params)
    expected = reflect(sync_step(profile, params))
    difference = _largest_difference(mirrored.opinions, expected.opinions)
    tol = 0 if profile.is_exact else ORACLE_TOL
    result = CaseResult(checks=1)
    if difference > tol:
        result.violations.append(_describe(profile, epsilon, max_difference=_num(difference)))
    return result


def check_window_validity(rng: np.random.Generator, mode: ArithmeticMode) -> CaseResult:
    """Les fenêtres coïncident avec un balayage de toutes les paires."""
    profile, epsilon = profile_and_epsilon(rng, mode, _max_n(mode, SUITE_MAX_N_FLOAT))
    n = profile.n
    mask = adjacency_mask(profile, epsilon)
    lo, hi = window_bounds(profile, epsilon)
    brute_lo = np.argmax(mask, axis=1)
    brute_hi = n - 1 - np.argmax(mask[:, ::-1], axis=1)
    contiguous = mask.sum(axis=1) == brute_hi - brute_lo + 1
    agent = int(rng.integers(n))
    window = neighbors(profile, agent, _params(epsilon, mode))

    result = CaseResult(checks=n)
    bad = np.flatnonzero((lo != brute_lo) | (hi != brute_hi) | ~contiguous)
    if bad.size or (window.lo, window.hi) != (int(lo[agent]), int(hi[agent])):
        first = int(bad[0]) if bad.size else agent
        result.violations.append(_describe(
            profile, epsilon, agent=first,
            window=[int(lo[first]), int(hi[first])],
            expected=[int(brute_lo[first]), int(brute_hi[first])],
        ))
    return result


def check_finite_convergence(rng: np.random.Generator, mode: ArithmeticMode) -> CaseResult:
    """En rationnel exact, chaque trajectoire atteint un point fixe exact."""
    n = random_n(rng, FINITE_CONVERGENCE_MAX_N)
    values = [Fraction(int(round(u * 10_000)), 10_000) for u in rng.random(n)]
    profile = OpinionProfile(as_exact_array(sorted(values)))
    epsilon = Fraction(FINITE_CONVERGENCE_EPSILONS[int(rng.integers(len(FINITE_CONVERGENCE_EPSILONS)))])
    params = ModelParams(epsilon, ArithmeticMode.RATIONAL, max_steps=FINITE_CONVERGENCE_MAX_STEPS)
    outcome = run(profile, params)
    result = CaseResult(checks=1)
    if not outcome.converged:
        result.violations.append(_describe(profile, epsilon, steps_taken=outcome.steps_taken))
    return result


# ============================================================================
# GRAPHE D'OPINIONS
# ============================================================================

def check_disconnected_preserving(rng: np.random.Generator, mode: ArithmeticMode) -> CaseResult:
    """Un graphe déconnecté le reste après un pas synchrone."""
    profile, epsilon = profile_and_epsilon(rng, mode, _max_n(mode, SUITE_MAX_N_GRAPH), high=0.3)
    if is_connected(profile, epsilon):
        return CaseResult()
    after = sync_step(profile, _params(epsilon, mode))
    result = CaseResult(checks=1)
    if is_connected(after, epsilon):
        result.violations.append(_describe(profile, epsilon))
    return result


def check_gap_criterion(rng: np.random.Generator, mode: ArithmeticMode) -> CaseResult:
    """Critère des écarts consécutifs contre un parcours du graphe complet."""
    if rng.random() < 0.25:
        profile, epsilon = profile_and_epsilon(rng, mode, _max_n(mode, SUITE_MAX_N_GRAPH))
    else:
        profile = random_profile(rng, random_n(rng, _max_n(mode, SUITE_MAX_N_GRAPH)), mode)
        epsilon = log_uniform_epsilon(rng, mode, 1e-3, 1.0)
    fast = is_connected(profile, epsilon)
    oracle = is_connected_bruteforce(profile, epsilon)
    single = len(components(profile, epsilon)) == 1
    result = CaseResult(checks=1)
    if not fast == oracle == single:
        result.violations.append(_describe(profile, epsilon, gap_criterion=fast, graph_search=oracle))
    return result


def check_edge_persistence(rng: np.random.Generator, mode: ArithmeticMode) -> CaseResult:
    """Toute arête qui vérifie l'inégalité de persistance existe encore au pas suivant."""
    profile, epsilon = profile_and_epsilon(rng, mode, _max_n(mode, SUITE_MAX_N_EDGES))
    means = synchronous_means(profile, _params(epsilon, mode))
    n = profile.n
    result = CaseResult()

    if profile.is_exact:
        for i in range(n):
            for j in range(i + 1, n):
                if not within(profile[i], profile[j], epsilon):
                    break
                if not persistence_holds(edge_counts(profile, i, j, epsilon)):
                    continue
                result.checks += 1
                if not within(means[i], means[j], epsilon):
                    result.violations.append(_describe(profile, epsilon, edge=[i, j]))
        return result

    lo, hi = window_bounds(profile, epsilon)
    first, second = np.triu_indices(n, 1)
    edge = second <= hi[first]
    shared = np.minimum(hi[first], hi[second]) - np.maximum(lo[first], lo[second]) + 1
    size = hi - lo + 1
    holds = edge & (2 * np.maximum(size[first] - shared, size[second] - shared) <= shared)
    survives = np.abs(means[second] - means[first]) <= float(epsilon) + ORDER_TOL
    result.checks = int(holds.sum())
    for k in np.flatnonzero(holds & ~survives):
        result.violations.append(_describe(profile, epsilon, edge=[int(first[k]), int(second[k])]))
    return result


def check_h_inductive(rng: np.random.Generator, mode: ArithmeticMode) -> CaseResult:
    """Si H est vrai au pas t (epsilon >= 1/2), il l'est au pas t+1."""
    n = random_n(rng, _max_n(mode, SUITE_MAX_N_FLOAT))
    profile = random_profile(rng, n, mode)
    if mode is ArithmeticMode.RATIONAL:
        epsilon: Scalar = Fraction(int(rng.integers(500, 1001)), 1000)
    else:
        epsilon = 0.5 + 0.5 * float(rng.random())
    if not h_statement(profile, epsilon):
        return CaseResult()
    after = sync_step(profile, _params(epsilon, mode))
    result = CaseResult(checks=1)
    if not h_statement(after, epsilon):
        result.violations.append(_describe(profile, epsilon))
    return result


def check_consensus_connectivity(rng: np.random.Generator, mode: ArithmeticMode) -> CaseResult:
    """
    Une trajectoire convergée atteint le consensus si et seulement si son
    graphe reste connexe à chaque pas; un graphe initial déconnecté l'interdit.
    """
    profile, epsilon = profile_and_epsilon(rng, mode, _max_n(mode, SUITE_MAX_N_TRAJECTORY))
    outcome = run(profile, _params(epsilon, mode, trace=True))
    history = outcome.connectivity_history or []
    result = CaseResult(checks=1)
    always = all(history)
    broken = (outcome.consensus and not always) or (not history[0] and outcome.consensus)
    if outcome.converged and always and not outcome.consensus:
        broken = True
    if broken:
        result.violations.append(_describe(
            profile, epsilon, consensus=outcome.consensus, always_connected=always,
            clusters=len(outcome.clusters),
        ))
    return result


# ============================================================================
# APPARIEMENT
# ============================================================================

def check_matching(rng: np.random.Generator, mode: ArithmeticMode) -> CaseResult:
    """Identités de masse et de reconstruction, et signes des termes appariés."""
    length = random_n(rng, SUITE_MAX_N_MATCHING)
    lambdas = zero_sum_lambdas(rng, length, mode)
    if mode is ArithmeticMode.RATIONAL:
        xs: List[Scalar] = [Fraction(int(k), 100) for k in rng.integers(0, 101, size=length)]
    else:
        xs = [float(v) for v in rng.random(length)]
    decomposition = matching_decomposition(lambdas, xs)

    exact = mode is ArithmeticMode.RATIONAL
    positive_mass = sum((lam for lam in lambdas if lam > 0), Fraction(0) if exact else 0.0)
    scale = 1 + sum(abs(lam) for lam in lambdas) * max(abs(x) for x in xs)
    tol = 0 if exact else MATCHING_TOL * float(scale)

    problems = []
    if abs(decomposition.reconstruct(xs) - linear_combination(lambdas, xs)) > tol:
        problems.append("reconstruction")
    if abs(decomposition.mass() - positive_mass) > tol or abs(decomposition.total_positive_mass - positive_mass) > tol:
        problems.append("mass")
    if any(t.coefficient < 0 or not lambdas[t.positive_index] > 0 or not lambdas[t.negative_index] < 0
           for t in decomposition.terms):
        problems.append("signs")

    result = CaseResult(checks=1)
    if problems:
        result.violations.append({
            'lambdas': [_num(v) for v in lambdas],
            'xs': [_num(v) for v in xs],
            'failed': problems,
        })
    return result


SuiteCheck = Callable[[np.random.Generator, ArithmeticMode], CaseResult]

SUITES: Dict[str, SuiteCheck] = {
    SuiteNames.ORDER_PRESERVING: check_order_preserving,
    SuiteNames.DISCONNECTED_PRESERVING: check_disconnected_preserving,
    SuiteNames.GAP_CRITERION: check_gap_criterion,
    SuiteNames.EDGE_PERSISTENCE: check_edge_persistence,
    SuiteNames.H_INDUCTIVE: check_h_inductive,
    SuiteNames.MATCHING: check_matching,
    SuiteNames.ORACLE_EQUIVALENCE: check_oracle_equivalence,
    SuiteNames.HULL_CONTRACTION: check_hull_contraction,
    SuiteNames.REFLECTION_SYMMETRY: check_reflection_symmetry,
    SuiteNames.WINDOW_VALIDITY: check_window_validity,
    SuiteNames.CONSENSUS_CONNECTIVITY: check_consensus_connectivity,
    SuiteNames.FINITE_CONVERGENCE: check_finite_convergence,
}

# Suites dont l'arithmétique est imposée
FORCED_MODES: Dict[str, ArithmeticMode] = {
    SuiteNames.FINITE_CONVERGENCE: ArithmeticMode.RATIONAL,
}
