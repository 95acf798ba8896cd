"""
Report Generator Module - Fractional DFT Toolkit

This module turns results into the files and text the command line emits.
Tables are built as pandas DataFrames and written as CSV with 17 significant
digits, UTF-8 and LF line endings.

Features:
- Transform matrix CSV (j,k,re,im)
- Sweep CSV (alpha,concentration) with an argmax summary line
- Root-sum CSV (k,re,im,deviation) with a sigma summary line
- Benchmark CSV (n,path,seconds,slope)
- Verification report as text or JSON
"""

import logging
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

import numpy as np
import orjson
import pandas as pd

from frdft.modules.chirp_lab import SweepResult
from frdft.modules.fractional_transform import RootSum, TransformMatrix

PathLike = Union[str, Path]


class ReportGenerator:
    """
    CSV and text report generation for toolkit results.
    """

    def __init__(self, significant_digits: int = 17):
        """
        Initialize the report generator.

        Args:
            significant_digits (int): Digits written per floating-point value
        """
        self.logger = logging.getLogger(__name__)
        self.float_format = f'%.{int(significant_digits)}g'

    def _to_csv(self, df: pd.DataFrame) -> str:
        return df.to_csv(index=False, float_format=self.float_format, lineterminator='\n')

    def _format_float(self, value: float) -> str:
        return self.float_format % value

    def write_text(self, content: str, path: PathLike, label: str) -> Path:
        path = Path(path)
        if path.parent != Path(''):
            path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8', newline='') as handle:
            handle.write(content)
        self.logger.info(f"{label} written: {path}")
        return path

    # Matrix

    def matrix_csv(self, m: TransformMatrix) -> str:
        """One row per entry, row-major: j,k,re,im."""
        j, k = np.divmod(np.arange(m.n * m.n), m.n)
        flat = m.entries.reshape(-1)
        df = pd.DataFrame({'j': j, 'k': k, 're': flat.real, 'im': flat.imag})
        return self._to_csv(df)

    # Sweep

    def sweep_csv(self, result: SweepResult) -> str:
        """alpha,concentration rows followed by 'argmax,<alpha>'."""
        df = pd.DataFrame({'alpha': result.grid, 'concentration': result.concentration})
        return self._to_csv(df) + f"argmax,{self._format_float(result.argmax_alpha)}\n"

    # Root sums

    def root_sum_csv(self, sums: Sequence[RootSum], reference: RootSum,
                     sigma: Optional[complex] = None) -> str:
        df = pd.DataFrame({
            'k': [s.k for s in sums],
            're': [s.value.real for s in sums],
            'im': [s.value.imag for s in sums],
            'deviation': [abs(s.value - reference.value) for s in sums],
        })
        content = self._to_csv(df)
        if sigma is not None:
            content += (f"sigma,{self._format_float(sigma.real)},{self._format_float(sigma.imag)},"
                        f"{self._format_float(abs(sigma))}\n")
        return content

    # Benchmark

    def bench_csv(self, records: Iterable[Any], header: Optional[Dict[str, Any]] = None) -> str:
        """
        Benchmark rows n,path,seconds,slope. The slope is blank for the
        first size of each path.
        """
        rows = [{
            'n': r.n,
            'path': r.path,
            'seconds': r.seconds,
            'slope': r.slope,
        } for r in records]
        df = pd.DataFrame(rows, columns=['n', 'path', 'seconds', 'slope'])
        comment = ''
        if header:
            comment = ''.join(f"# {key}: {value}\n" for key, value in header.items())
        return comment + self._to_csv(df)

    # Verification

    def verification_text(self, report: Any) -> str:
        """
        One line per property: PASS|FAIL <name> worst=<deviation> tol=<tolerance>,
        then DIAG lines and the final RESULT line.
        """
        lines: List[str] = [f"# seed={report.seed} max_n={report.max_n}"]
        for prop in report.properties:
            status = 'PASS' if prop.passed else 'FAIL'
            lines.append(f"{status} {prop.name} worst={prop.worst:.6e} tol={prop.tolerance:.1e}"
                         + (f" ({prop.detail})" if prop.detail else ''))
        for diag in report.diagnostics:
            lines.append(f"DIAG {diag.name} n={diag.n} alpha={diag.alpha:.12f} beta={diag.beta:.12f} "
                         f"deviation={diag.deviation:.6e}")
        lines.append(f"RESULT {'PASS' if report.passed else 'FAIL'}")
        return '\n'.join(lines) + '\n'

    def verification_json(self, report: Any) -> str:
        payload = {
            'seed': report.seed,
            'max_n': report.max_n,
            'passed': report.passed,
            'properties': [{
                'name': p.name,
                'passed': p.passed,
                'worst': p.worst if math.isfinite(p.worst) else None,
                'tolerance': p.tolerance,
                'detail': p.detail,
            } for p in report.properties],
            'diagnostics': [{
                'name': d.name,
                'n': d.n,
                'alpha': d.alpha,
                'beta': d.beta,
                'deviation': d.deviation,
            } for d in report.diagnostics],
        }
        return orjson.dumps(payload, option=orjson.OPT_INDENT_2).decode('utf-8') + '\n'
