"""On-disk job store: one JSON file per job under a lock-guarded directory."""
from __future__ import annotations

import json
import os
import re
import tempfile
from pathlib import Path

from filelock import FileLock

QUEUED = "QUEUED"
RUNNING = "RUNNING"
DONE = "DONE"
STATUSES = (QUEUED, RUNNING, DONE)

_JOB_ID = re.compile(r"^[0-9a-f]{16}$")


class JobStoreError(RuntimeError):
    pass


class UnknownJob(JobStoreError):
    pass


class JobsPending(JobStoreError):
    def __init__(self, job_ids):
        self.job_ids = list(job_ids)
        super().__init__("jobs not finished: " + ", ".join(self.job_ids))


class JobStore:
    """Jobs hold their key tuples, a status and, once DONE, one histogram per key."""

    def __init__(self, root):
        self.root = Path(root)
        try:
            self.root.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise JobStoreError(f"cannot create job store at {self.root}: {exc}") from exc
        self._lock = FileLock(str(self.root / ".lock"))

    def _path(self, job_id: str) -> Path:
        if not isinstance(job_id, str) or not _JOB_ID.match(job_id):
            raise UnknownJob(f"malformed job id {job_id!r}")
        return self.root / f"{job_id}.json"

    def put(self, job_id: str, keys, histograms=None, status: str = DONE) -> None:
        if status not in STATUSES:
            raise JobStoreError(f"unknown status {status!r}")
        if histograms is not None and len(histograms) != len(keys):
            raise JobStoreError("one histogram per key is required")
        record = {"job_id": job_id, "status": status, "keys": [list(k) for k in keys], "histograms": histograms}
        path = self._path(job_id)
        with self._lock:
            fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                json.dump(record, fh)
            os.replace(tmp, path)

    def get(self, job_id: str) -> dict:
        path = self._path(job_id)
        with self._lock:
            try:
                return json.loads(path.read_text())
            except FileNotFoundError:
                raise UnknownJob(f"no job {job_id} in {self.root}") from None
            except (OSError, ValueError) as exc:
                raise JobStoreError(f"unreadable job file {path}: {exc}") from exc

    def status(self, job_id: str) -> str:
        return self.get(job_id)["status"]
