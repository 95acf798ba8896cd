"""
Signal File Module - Fractional DFT Toolkit

Reads and writes signals as CSV with the header ``index,re,im`` and one row
per sample. Indices must run 0..N-1 without gaps or duplicates. Values are
written with 17 significant digits so every double survives a round trip.
"""

import csv
import io
import logging
import math
from pathlib import Path
from typing import Any, Union

import numpy as np
import pandas as pd

from frdft.modules.dft_engine import Signal, as_signal
from frdft.modules.errors import SignalFileError

PathLike = Union[str, Path]

SIGNAL_COLUMNS = ['index', 're', 'im']


class SignalFileManager:
    """
    Signal CSV reader/writer.
    """

    def __init__(self, significant_digits: int = 17):
        """
        Initialize the manager.

        Args:
            significant_digits (int): Digits written per value
        """
        self.logger = logging.getLogger(__name__)
        self.float_format = f'%.{int(significant_digits)}g'

    def parse_signal(self, content: str) -> Signal:
        """
        Parse SignalFile content.

        Args:
            content (str): CSV text

        Returns:
            Signal: Samples in index order
        """
        reader = csv.DictReader(io.StringIO(content, newline=''))
        if reader.fieldnames is None:
            raise SignalFileError("file is empty; expected header 'index,re,im'", line_number=1)
        header = [name.strip() for name in reader.fieldnames]
        if header != SIGNAL_COLUMNS:
            raise SignalFileError(
                f"expected header 'index,re,im', got {','.join(header)!r}", line_number=1)
        reader.fieldnames = header

        samples = []
        for row in reader:
            # physical line of this row; skipped blank lines still count
            row_num = reader.line_num
            if None in row or any(value is None for value in row.values()):
                raise SignalFileError("expected exactly 3 fields", line_number=row_num)
            try:
                index = int(row['index'].strip())
                re_part = float(row['re'])
                im_part = float(row['im'])
            except ValueError as e:
                raise SignalFileError(f"invalid data format - {e}", line_number=row_num) from e

            if not (math.isfinite(re_part) and math.isfinite(im_part)):
                raise SignalFileError("sample is NaN or infinite", line_number=row_num)
            if index != len(samples):
                problem = 'duplicate' if index < len(samples) else 'gap before'
                raise SignalFileError(
                    f"{problem} index {index}; expected {len(samples)}", line_number=row_num)
            samples.append(complex(re_part, im_part))

        if not samples:
            raise SignalFileError("file holds no samples", line_number=2)
        return np.array(samples, dtype=np.complex128)

    def read_signal(self, path: PathLike) -> Signal:
        try:
            with open(path, 'r', encoding='utf-8', newline='') as handle:
                content = handle.read()
        except (OSError, UnicodeDecodeError) as e:
            raise SignalFileError(f"cannot read {path}: {e}") from e

        signal = self.parse_signal(content)
        self.logger.debug(f"Read {signal.shape[0]} samples from {path}")
        return signal

    def format_signal(self, x: Any) -> str:
        arr = as_signal(x)
        df = pd.DataFrame({
            'index': np.arange(arr.shape[0]),
            're': arr.real,
            'im': arr.imag,
        }, columns=SIGNAL_COLUMNS)
        return df.to_csv(index=False, float_format=self.float_format, lineterminator='\n')

    def write_signal(self, x: Any, path: PathLike) -> Path:
        path = Path(path)
        if path.parent != Path(''):
            path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8', newline='') as handle:
            handle.write(self.format_signal(x))
        self.logger.info(f"Signal written: {path}")
        return path
