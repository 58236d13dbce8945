"""
Parry measure of a finite deterministic presentation.

The dominant eigenvalue and both Perron eigenvectors of the transition
count matrix come from power iteration on A + I, which shares A's
eigenvectors and makes the dominant eigenvalue strictly dominant even for
periodic graphs.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

import numpy as np

from language.oracle import Automaton, State
from utils.errors import ValidationError
from words.word import Word
import logging

logger = logging.getLogger(__name__)

RESIDUAL = 1e-12
MAX_ITERATIONS = 100000


def transition_matrix(automaton: Automaton) -> Tuple[List[State], np.ndarray]:
    """States in discovery order and the edge count matrix A[s, t]."""
    states, edges = automaton.explore()
    index = {state: i for i, state in enumerate(states)}
    A = np.zeros((len(states), len(states)))
    for state, out in edges.items():
        for _, target in out:
            A[index[state], index[target]] += 1
    return states, A


def power_iteration(A: np.ndarray, tol: float = RESIDUAL, max_iter: int = MAX_ITERATIONS):
    """
    Dominant eigenpair of a nonnegative matrix.

    Returns:
        (eigenvalue, unit eigenvector, residual, iterations)
    """
    shifted = A + np.identity(A.shape[0])
    u = np.ones(A.shape[0]) / np.sqrt(A.shape[0])
    lam = 0.0
    residual = np.inf
    for iteration in range(1, max_iter + 1):
        w = shifted.dot(u)
        u = w / np.linalg.norm(w)
        lam = u.dot(A).dot(u)
        residual = np.linalg.norm(A.dot(u) - lam * u)
        if residual < tol:
            return lam, u, residual, iteration
    logger.warning(f"Power iteration stopped at residual {residual:.3e} after {max_iter} iterations")
    return lam, u, residual, max_iter


@dataclass
class ParryMeasure:
    """Parry measure with its eigendata."""

    automaton: Automaton
    states: List[State]
    lam: float
    left: np.ndarray
    right: np.ndarray
    residual: float

    @property
    def entropy(self) -> float:
        return float(np.log(self.lam))

    def __call__(self, w: Word) -> float:
        """mu[w] = sum_s u_s v_{delta(s, w)} / (lambda^{|w|} u.v)."""
        index = {state: i for i, state in enumerate(self.states)}
        total = 0.0
        for i, state in enumerate(self.states):
            end = self.automaton.run(w, state)
            if end is not None:
                total += self.left[i] * self.right[index[end]]
        return float(total / (self.lam ** len(w) * self.left.dot(self.right)))

    def cylinders(self, words: Iterable[Word]) -> Dict[Word, float]:
        return {w: self(w) for w in words}


def parry_measure(automaton: Automaton) -> ParryMeasure:
    """
    Parry measure of the shift presented by a finite deterministic automaton.

    Raises:
        ValidationError: If the automaton has no edges
    """
    states, A = transition_matrix(automaton)
    if not A.any():
        raise ValidationError("Automaton has no transitions")

    lam, right, right_residual, _ = power_iteration(A)
    _, left, left_residual, _ = power_iteration(A.T)
    # eigenvectors of a nonnegative matrix may come out with a global sign
    right = np.abs(right)
    left = np.abs(left)
    residual = max(right_residual, left_residual)
    logger.debug(f"Parry eigenvalue {lam:.12f}, residual {residual:.2e}, {len(states)} states")
    return ParryMeasure(automaton, states, float(lam), left, right, float(residual))
