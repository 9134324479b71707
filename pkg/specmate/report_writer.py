import csv
import json
from pathlib import Path

from specmate.model_report import CSV_HEADER, BatchRow


class BatchCsvWriter:
    """Writes one CSV row per analyzed graph."""

    def __init__(self, path: str | Path):
        self._path = Path(path)
        self._file = None
        self._writer = None
        self._rows = 0

    @property
    def path(self) -> Path:
        return self._path

    @property
    def row_count(self) -> int:
        return self._rows

    def open(self):
        self._path.parent.mkdir(parents=True, exist_ok=True)
        self._file = open(self._path, "w", newline="")
        self._writer = csv.writer(self._file, lineterminator="\n")
        self._writer.writerow(CSV_HEADER)
        self._rows = 0

    def write(self, row: BatchRow):
        if self._writer is None:
            raise ValueError(f"{self._path} is not open for writing")
        self._writer.writerow(row.csv_fields())
        self._rows += 1

    def close(self):
        if self._file is not None:
            self._file.close()
            self._file = None
            self._writer = None

    def __enter__(self):
        self.open()
        return self

    def __exit__(self, *args):
        self.close()


def write_batch_csv(path: str | Path, rows) -> int:
    with BatchCsvWriter(path) as writer:
        for row in rows:
            writer.write(row)
        return writer.row_count


def dump_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=False)


def write_json(path: str | Path, data):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        f.write(dump_json(data))
        f.write("\n")
