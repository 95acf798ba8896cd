"""
Verification Suite Module - Fractional DFT Toolkit

Runs every asserted property of the DFT engine, the fractional transform and
the 2x2 model against seeded random data and reports the worst deviation
seen for each. Additivity of F(alpha) F(beta) against F(alpha + beta) is
measured and reported but never asserted.

Each property draws from its own generator seeded with (seed, property
index), so a fixed seed always produces the same report.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from frdft.modules import tf_model
from frdft.modules.dft_engine import DFTEngine, energy, parity
from frdft.modules.errors import FrdftError
from frdft.modules.fractional_transform import (
    DECOMPOSED,
    RAW,
    FractionalTransform,
    root_sum,
    sigma,
    unitarity_deviation,
)

# Forward-DFT scale used by the normalization fault hook
NORMALIZATION_FAULT_FACTOR = 1.001

CONTINUITY_ALPHA = 1e-6
ADDITIVITY_PAIRS = 10
ORACLE_ANGLES = 20


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    detail: str = ''


@dataclass(frozen=True)
class Diagnostic:
    name: str
    n: int
    alpha: float
    beta: float
    deviation: float


@dataclass(frozen=True)
class VerificationReport:
    seed: int
    max_n: int
    properties: Tuple[PropertyResult, ...]
    diagnostics: Tuple[Diagnostic, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.properties)

    @property
    def failures(self) -> List[PropertyResult]:
        return [p for p in self.properties if not p.passed]


def _random_signal(rng: np.random.Generator, n: int, unit: bool = False) -> np.ndarray:
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    if unit:
        x = x / math.sqrt(energy(x))
    return x


def _relative(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))


class VerificationSuite:
    """
    Property checks with per-property worst-case deviations.
    """

    def __init__(self, transform: Optional[FractionalTransform] = None,
                 exact_tolerance: float = 1e-12,
                 pipeline_tolerance: float = 1e-10,
                 oracle_tolerance: float = 1e-9,
                 continuity_tolerance: float = 1e-4):
        """
        Initialize the suite.

        Args:
            transform (FractionalTransform): Transform under test; its engine
                is the DFT under test
            exact_tolerance (float): Exact algebraic identities at small N
            pipeline_tolerance (float): Composed floating-point pipelines
            oracle_tolerance (float): Apply path against matrix path
            continuity_tolerance (float): alpha -> 0 limit
        """
        self.transform = transform or FractionalTransform()
        self.engine: DFTEngine = self.transform.engine
        self.exact_tolerance = exact_tolerance
        self.pipeline_tolerance = pipeline_tolerance
        self.oracle_tolerance = oracle_tolerance
        self.continuity_tolerance = continuity_tolerance
        self.logger = logging.getLogger(__name__)

    @classmethod
    def from_settings(cls, settings, transform: Optional[FractionalTransform] = None) -> 'VerificationSuite':
        return cls(
            transform=transform or FractionalTransform.from_settings(settings),
            exact_tolerance=settings.exact_tolerance,
            pipeline_tolerance=settings.pipeline_tolerance,
            oracle_tolerance=settings.oracle_tolerance,
            continuity_tolerance=settings.continuity_tolerance,
        )

    # Size sets

    @staticmethod
    def _sizes(max_n: int) -> List[int]:
        """Powers of two plus a few odd and composite lengths, up to max_n."""
        sizes = {1, 2, 3, 5, 7, 12, 100, 1000, max_n}
        sizes.update(2 ** p for p in range(0, 13))
        return sorted(n for n in sizes if n <= max_n)

    @staticmethod
    def _within(candidates: Sequence[int], max_n: int) -> List[int]:
        return [n for n in candidates if n <= max_n]

    # Runner

    def run(self, max_n: int = 1024, seed: int = 0) -> VerificationReport:
        checks: List[Tuple[str, Callable[[np.random.Generator, int], PropertyResult]]] = [
            ('dft_unitarity', self._dft_unitarity),
            ('dft_fourth_power_identity', self._dft_fourth_power),
            ('dft_square_is_parity', self._dft_square_parity),
            ('fast_path_matches_direct', self._fast_vs_direct),
            ('identity_limit', self._identity_limit),
            ('half_pi_limit', self._half_pi_limit),
            ('sigma_unit_modulus', self._sigma_unit_modulus),
            ('sigma_n4', self._sigma_n4),
            ('root_sum_shift_invariance', self._root_sum_shift_invariance),
            ('root_sum_odd_counterexample', self._root_sum_odd_counterexample),
            ('oracle_equivalence', self._oracle_equivalence),
            ('matrix_unitarity', self._matrix_unitarity),
            ('apply_unitarity', self._apply_unitarity),
            ('inverse_pairing', self._inverse_pairing),
            ('zero_angle_continuity', self._zero_angle_continuity),
            ('quarter_turn_consistency', self._quarter_turn_consistency),
            ('garcia_equals_rotation', self._garcia_equals_rotation),
            ('unit_determinant', self._unit_determinant),
            ('garcia_diagonal_is_cosine', self._garcia_diagonal),
        ]

        results = []
        for index, (name, check) in enumerate(checks):
            rng = np.random.default_rng([seed, index])
            try:
                result = check(rng, max_n)
            except FrdftError as e:
                self.logger.error(f"Property {name} raised: {e}")
                result = PropertyResult(name, False, math.inf, math.nan, f"raised {type(e).__name__}: {e}")
            results.append(result)
            self.logger.debug(f"{name}: passed={result.passed} worst={result.worst:.3e}")

        try:
            diagnostics = self._additivity(np.random.default_rng([seed, len(checks)]), max_n)
        except FrdftError as e:
            self.logger.warning(f"Additivity diagnostics skipped: {e}")
            diagnostics = []
        report = VerificationReport(seed=seed, max_n=max_n, properties=tuple(results),
                                    diagnostics=tuple(diagnostics))

        if report.passed:
            self.logger.info(f"Verification passed: {len(results)} properties, seed {seed}")
        else:
            names = ', '.join(p.name for p in report.failures)
            self.logger.error(f"Verification failed: {names}")
        return report

    @staticmethod
    def _result(name: str, worst: float, tolerance: float, detail: str = '') -> PropertyResult:
        return PropertyResult(name, bool(worst <= tolerance), float(worst), tolerance, detail)

    # DFT engine

    def _dft_unitarity(self, rng, max_n) -> PropertyResult:
        worst = 0.0
        for n in self._sizes(max_n):
            for _ in range(3):
                x = _random_signal(rng, n)
                e = energy(x)
                worst = max(worst, abs(energy(self.engine.dft(x)) - e) / e)
        return self._result('dft_unitarity', worst, self.pipeline_tolerance, 'relative energy change')

    def _dft_fourth_power(self, rng, max_n) -> PropertyResult:
        worst = 0.0
        for n in self._sizes(max_n):
            x = _random_signal(rng, n)
            y = x
            for _ in range(4):
                y = self.engine.dft(y)
            worst = max(worst, _relative(y, x))
        return self._result('dft_fourth_power_identity', worst, self.pipeline_tolerance)

    def _dft_square_parity(self, rng, max_n) -> PropertyResult:
        worst = 0.0
        for n in self._sizes(max_n):
            x = _random_signal(rng, n)
            worst = max(worst, _relative(self.engine.dft(self.engine.dft(x)), parity(x)))
        return self._result('dft_square_is_parity', worst, self.pipeline_tolerance)

    def _fast_vs_direct(self, rng, max_n) -> PropertyResult:
        worst = 0.0
        for n in self._within([2 ** p for p in range(0, 9)], max_n):
            x = _random_signal(rng, n)
            worst = max(worst, float(np.max(np.abs(self.engine.dft(x) - self.engine.direct_dft(x)))))
        return self._result('fast_path_matches_direct', worst, self.pipeline_tolerance)

    # Fractional transform

    def _identity_limit(self, rng, max_n) -> PropertyResult:
        worst = 0.0
        for n in self._within([4, 8, 64, 256], max_n):
            m = self.transform.matrix(n, 0.0)
            worst = max(worst, float(np.max(np.abs(m.entries - np.eye(n)))))
            for _ in range(10):
                x = _random_signal(rng, n, unit=True)
                worst = max(worst, float(np.max(np.abs(self.transform.apply(x, 0.0) - x))))
        return self._result('identity_limit', worst, self.exact_tolerance)

    def _half_pi_limit(self, rng, max_n) -> PropertyResult:
        worst = 0.0
        for n in self._within([4, 16, 64, 256], max_n):
            expected = sigma(n) * self.engine.dft_matrix(n)
            worst = max(worst, float(np.max(np.abs(self.transform.matrix(n, math.pi / 2).entries - expected))))
        return self._result('half_pi_limit', worst, self.pipeline_tolerance, 'F(pi/2) against sigma*B')

    def _sigma_unit_modulus(self, rng, max_n) -> PropertyResult:
        worst = max(abs(abs(sigma(n)) - 1.0) for n in range(2, max_n + 1, 2))
        return self._result('sigma_unit_modulus', worst, self.exact_tolerance)

    def _sigma_n4(self, rng, max_n) -> PropertyResult:
        worst = abs(sigma(4) - complex(math.cos(math.pi / 4), -math.sin(math.pi / 4)))
        return self._result('sigma_n4', worst, self.exact_tolerance, 'sigma(4) = exp(-i pi/4)')

    def _root_sum_shift_invariance(self, rng, max_n) -> PropertyResult:
        worst = 0.0
        for n in range(2, 65, 2):
            reference = root_sum(n, 0).value
            for k in range(-2 * n, 2 * n + 1):
                worst = max(worst, abs(root_sum(n, k).value - reference))
        return self._result('root_sum_shift_invariance', worst, self.exact_tolerance, 'even n <= 64')

    def _root_sum_odd_counterexample(self, rng, max_n) -> PropertyResult:
        # Each odd n must have some k whose sum moves by more than 0.1
        threshold = 0.1
        weakest = math.inf
        for n in (3, 5, 7):
            reference = root_sum(n, 0).value
            largest = max(abs(root_sum(n, k).value - reference) for k in range(-2 * n, 2 * n + 1))
            weakest = min(weakest, largest)
        return PropertyResult('root_sum_odd_counterexample', weakest > threshold, weakest, threshold,
                              'smallest max deviation over odd n; must exceed the threshold')

    def _oracle_equivalence(self, rng, max_n) -> PropertyResult:
        worst = 0.0
        for n in self._within([4, 8, 16, 32, 64, 128], max_n):
            basis = np.eye(n, dtype=np.complex128)
            for alpha in rng.uniform(-3 * math.pi / 4, 3 * math.pi / 4, ORACLE_ANGLES):
                columns = self.transform.apply(basis, float(alpha), mode=RAW)
                m = self.transform.matrix(n, float(alpha))
                worst = max(worst, float(np.max(np.abs(columns - m.entries))))
        return self._result('oracle_equivalence', worst, self.oracle_tolerance, 'apply path vs matrix columns')

    def _matrix_unitarity(self, rng, max_n) -> PropertyResult:
        worst = 0.0
        for n in self._within([2, 3, 8, 17, 64], max_n):
            alpha = float(rng.uniform(-3 * math.pi / 4, 3 * math.pi / 4))
            worst = max(worst, unitarity_deviation(self.transform.matrix(n, alpha)))
        return self._result('matrix_unitarity', worst, self.pipeline_tolerance)

    def _apply_unitarity(self, rng, max_n) -> PropertyResult:
        worst = 0.0
        for n in self._sizes(max_n):
            x = _random_signal(rng, n)
            alpha = float(rng.uniform(-3 * math.pi / 4, 3 * math.pi / 4))
            e = energy(x)
            worst = max(worst, abs(energy(self.transform.apply(x, alpha)) - e) / e)
        return self._result('apply_unitarity', worst, self.pipeline_tolerance, 'relative energy change')

    def _inverse_pairing(self, rng, max_n) -> PropertyResult:
        worst = 0.0
        for n in self._sizes(max_n):
            x = _random_signal(rng, n, unit=True)
            alpha = float(rng.uniform(-3 * math.pi / 4, 3 * math.pi / 4))
            y = self.transform.inverse(self.transform.apply(x, alpha), alpha)
            worst = max(worst, float(np.max(np.abs(y - x))))
        return self._result('inverse_pairing', worst, self.oracle_tolerance)

    def _zero_angle_continuity(self, rng, max_n) -> PropertyResult:
        # First-order bound: |F(a) x - x| <= 2 pi N a for unit-energy x
        worst = 0.0
        for n in self._sizes(max_n):
            bound = max(self.continuity_tolerance, 2 * math.pi * n * CONTINUITY_ALPHA)
            x = _random_signal(rng, n, unit=True)
            deviation = float(np.max(np.abs(self.transform.apply(x, CONTINUITY_ALPHA) - x)))
            worst = max(worst, deviation / bound)
        return self._result('zero_angle_continuity', worst, 1.0,
                            f'deviation at alpha={CONTINUITY_ALPHA:g} over max(1e-4, 2*pi*N*alpha)')

    def _quarter_turn_consistency(self, rng, max_n) -> PropertyResult:
        worst = 0.0
        for n in self._within([1, 2, 3, 8, 12, 64], max_n):
            x = _random_signal(rng, n)
            quarter = self.transform.apply(x, math.pi / 2, mode=DECOMPOSED)
            half = self.transform.apply(x, math.pi, mode=DECOMPOSED)
            worst = max(worst,
                        float(np.max(np.abs(quarter - self.engine.dft(x)))),
                        float(np.max(np.abs(half - parity(x)))))
        return self._result('quarter_turn_consistency', worst, 0.0, 'exact equality required')

    # 2x2 model

    def _garcia_equals_rotation(self, rng, max_n) -> PropertyResult:
        worst = 0.0
        for alpha in rng.uniform(-3.0, 3.0, 1000):
            worst = max(worst, float(np.max(np.abs(tf_model.compose_garcia(alpha) - tf_model.rotation(alpha)))))
        return self._result('garcia_equals_rotation', worst, self.exact_tolerance)

    def _unit_determinant(self, rng, max_n) -> PropertyResult:
        worst = 0.0
        for alpha in rng.uniform(-3.0, 3.0, 200):
            for m in (tf_model.shear(alpha), tf_model.rotation(alpha), tf_model.compose_garcia(alpha),
                      tf_model.quarter_rotation()):
                worst = max(worst, abs(tf_model.determinant(m) - 1.0))
        return self._result('unit_determinant', worst, self.exact_tolerance)

    def _garcia_diagonal(self, rng, max_n) -> PropertyResult:
        worst = 0.0
        for alpha in rng.uniform(-3.0, 3.0, 1000):
            m = tf_model.compose_garcia(alpha)
            worst = max(worst, abs(m[0, 0] - math.cos(alpha)),
                        abs(1.0 - math.tan(alpha / 2) * math.sin(alpha) - math.cos(alpha)))
        return self._result('garcia_diagonal_is_cosine', worst, self.exact_tolerance)

    # Diagnostics

    def _additivity(self, rng, max_n) -> List[Diagnostic]:
        n = min(64, max_n)
        diagnostics = []
        for _ in range(ADDITIVITY_PAIRS):
            alpha, beta = (float(a) for a in rng.uniform(-3 * math.pi / 8, 3 * math.pi / 8, 2))
            deviation = self.transform.additivity_deviation(n, alpha, beta)
            diagnostics.append(Diagnostic('additivity', n, alpha, beta, deviation))
        return diagnostics
