"""Loading, validating, and writing canary/reference loss datasets.

A loss file assigns each example a role (``canary`` or ``reference``) and a
loss value. Losses are opaque monotone scores: the library only ever uses
their ordering, so any score where lower means "more probable under the
model" works (negative log-likelihood in nats, perplexity, ...).

Duplicated canaries appear once, with a ``replications`` count, rather than
as repeated rows; repeating rows would inflate the canary count m.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

ROLES = ("canary", "reference")

_CSV_REQUIRED = ("role", "loss")
_CSV_OPTIONAL = ("id", "replications")
_JSONL_KEYS = frozenset(("role", "loss", "id", "replications"))


class DatasetError(ValueError):
    """A loss file or record set violates the dataset contract."""


@dataclass(frozen=True)
class LossRecord:
    """One example's role, loss, optional id, and canary replication count."""

    role: str
    loss: float
    id: str | None = None
    replications: int = 1

    def __post_init__(self):
        if self.role not in ROLES:
            raise DatasetError(f"unknown role {self.role!r}; expected one of {ROLES}")
        if isinstance(self.loss, bool) or not isinstance(self.loss, (int, float)):
            raise DatasetError(f"loss must be a finite real, got {self.loss!r}")
        object.__setattr__(self, "loss", float(self.loss))
        if not math.isfinite(self.loss):
            raise DatasetError(f"loss must be a finite real, got {self.loss!r}")
        if isinstance(self.replications, bool) or not isinstance(self.replications, int) \
                or self.replications < 1:
            raise DatasetError(
                f"replications must be a positive integer, got {self.replications!r}"
            )
        if self.role == "reference" and self.replications != 1:
            raise DatasetError(
                f"references must have replications = 1, got {self.replications}"
            )


@dataclass(frozen=True)
class AuditDataset:
    """Validated collection of m canary and n reference loss records.

    Record order within each role is preserved from the source so report
    rows can be joined back to user metadata by position or id. All
    canaries must share one replication count: one experiment audits one
    duplication level.
    """

    canaries: tuple[LossRecord, ...]
    references: tuple[LossRecord, ...]

    def __post_init__(self):
        object.__setattr__(self, "canaries", tuple(self.canaries))
        object.__setattr__(self, "references", tuple(self.references))
        if not self.canaries:
            raise DatasetError("dataset has no canary records (m >= 1 required)")
        if not self.references:
            raise DatasetError("dataset has no reference records (n >= 1 required)")
        for rec in self.canaries:
            if rec.role != "canary":
                raise DatasetError(f"non-canary record in canary list: {rec!r}")
        for rec in self.references:
            if rec.role != "reference":
                raise DatasetError(f"non-reference record in reference list: {rec!r}")
        counts = {rec.replications for rec in self.canaries}
        if len(counts) > 1:
            raise DatasetError(
                f"mixed canary replication counts {sorted(counts)}; "
                "all canaries must share one replication count"
            )

    @property
    def m(self) -> int:
        return len(self.canaries)

    @property
    def n(self) -> int:
        return len(self.references)

    @property
    def replications(self) -> int:
        """The shared canary replication count."""
        return self.canaries[0].replications

    def canary_losses(self) -> np.ndarray:
        """Canary losses as a float64 array, in record order."""
        return np.array([rec.loss for rec in self.canaries], dtype=np.float64)

    def reference_losses(self) -> np.ndarray:
        """Reference losses as a float64 array, in record order."""
        return np.array([rec.loss for rec in self.references], dtype=np.float64)


def _normalize_role(token: str, line: int) -> str:
    role = token.strip().lower()
    if role not in ROLES:
        raise DatasetError(f"line {line}: unknown role {token!r}")
    return role


def _parse_loss(token, line: int) -> float:
    if isinstance(token, bool):
        raise DatasetError(f"line {line}: loss must be a number, got {token!r}")
    try:
        loss = float(token)
    except (TypeError, ValueError):
        raise DatasetError(f"line {line}: malformed loss {token!r}") from None
    if not math.isfinite(loss):
        raise DatasetError(f"line {line}: non-finite loss {token!r}")
    return loss


def _parse_replications(token, line: int) -> int:
    if isinstance(token, bool):
        raise DatasetError(f"line {line}: replications must be an integer, got {token!r}")
    try:
        reps = int(token)
    except (TypeError, ValueError):
        raise DatasetError(f"line {line}: malformed replications {token!r}") from None
    if reps < 1:
        raise DatasetError(f"line {line}: replications must be >= 1, got {reps}")
    return reps


def _record(role, loss, rec_id, replications, line: int) -> LossRecord:
    try:
        return LossRecord(role=role, loss=loss, id=rec_id, replications=replications)
    except DatasetError as exc:
        raise DatasetError(f"line {line}: {exc}") from None


def _parse_csv(text: str) -> list[LossRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise DatasetError("empty file: missing CSV header")
    header = [col.strip().lower() for col in rows[0]]
    if tuple(header[: len(_CSV_REQUIRED)]) != _CSV_REQUIRED:
        raise DatasetError(
            f"header: expected leading columns {','.join(_CSV_REQUIRED)}, got {rows[0]!r}"
        )
    extras = header[len(_CSV_REQUIRED):]
    for col in extras:
        if col not in _CSV_OPTIONAL:
            raise DatasetError(f"header: unknown column {col!r}")
    if len(set(extras)) != len(extras):
        raise DatasetError(f"header: duplicate columns in {rows[0]!r}")

    records = []
    for line, row in enumerate(rows[1:], start=2):
        if not row:
            continue  # blank line
        if len(row) != len(header):
            raise DatasetError(
                f"line {line}: expected {len(header)} fields, got {len(row)}"
            )
        fields = dict(zip(header, row))
        role = _normalize_role(fields["role"], line)
        loss = _parse_loss(fields["loss"], line)
        rec_id = fields.get("id", "").strip() or None
        reps_token = fields.get("replications", "").strip()
        reps = _parse_replications(reps_token, line) if reps_token else 1
        records.append(_record(role, loss, rec_id, reps, line))
    return records


def _parse_jsonl(text: str) -> list[LossRecord]:
    records = []
    for line, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise DatasetError(f"line {line}: malformed JSON ({exc.msg})") from None
        if not isinstance(obj, dict):
            raise DatasetError(f"line {line}: expected a JSON object, got {obj!r}")
        unknown = set(obj) - _JSONL_KEYS
        if unknown:
            raise DatasetError(f"line {line}: unknown keys {sorted(unknown)}")
        if "role" not in obj or "loss" not in obj:
            raise DatasetError(f"line {line}: missing required keys 'role' and 'loss'")
        if not isinstance(obj["role"], str):
            raise DatasetError(f"line {line}: role must be a string, got {obj['role']!r}")
        role = _normalize_role(obj["role"], line)
        loss = _parse_loss(obj["loss"], line)
        rec_id = obj.get("id")
        if rec_id is not None and not isinstance(rec_id, str):
            raise DatasetError(f"line {line}: id must be a string, got {rec_id!r}")
        reps = _parse_replications(obj["replications"], line) if "replications" in obj else 1
        records.append(_record(role, loss, rec_id, reps, line))
    return records


def parse_dataset(raw: bytes | str, format: str) -> AuditDataset:
    """Parse a loss file into a validated AuditDataset.

    Args:
      raw: File contents, UTF-8 bytes or text.
      format: ``"csv"`` (header ``role,loss[,id][,replications]``) or
        ``"jsonl"`` (one object per line with keys ``role``, ``loss``,
        optional ``id`` and ``replications``).

    Returns:
      An AuditDataset preserving input order within each role.

    Raises:
      DatasetError: On malformed rows (with line number), non-finite
        losses, unknown roles or columns, empty canary or reference sets,
        or mixed canary replication counts.
    """
    if format not in ("csv", "jsonl"):
        raise ValueError(f"format must be 'csv' or 'jsonl', got {format!r}")
    if isinstance(raw, bytes):
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DatasetError(f"input is not valid UTF-8: {exc}") from None
    else:
        text = raw
    records = _parse_csv(text) if format == "csv" else _parse_jsonl(text)
    canaries = tuple(rec for rec in records if rec.role == "canary")
    references = tuple(rec for rec in records if rec.role == "reference")
    return AuditDataset(canaries=canaries, references=references)


def serialize_dataset(d: AuditDataset, format: str) -> str:
    """Write a dataset back to text in one of the parseable formats.

    Canaries are written first, then references; optional columns are
    emitted only when some record needs them. ``parse_dataset`` on the
    result reconstructs an identical dataset.
    """
    if format not in ("csv", "jsonl"):
        raise ValueError(f"format must be 'csv' or 'jsonl', got {format!r}")
    records = list(d.canaries) + list(d.references)
    if format == "jsonl":
        lines = []
        for rec in records:
            obj = {"role": rec.role, "loss": rec.loss}
            if rec.id is not None:
                obj["id"] = rec.id
            if rec.replications != 1:
                obj["replications"] = rec.replications
            lines.append(json.dumps(obj))
        return "\n".join(lines) + "\n"

    with_id = any(rec.id is not None for rec in records)
    with_reps = any(rec.replications != 1 for rec in records)
    header = list(_CSV_REQUIRED) + (["id"] if with_id else []) + (
        ["replications"] if with_reps else []
    )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for rec in records:
        row = [rec.role, repr(rec.loss)]
        if with_id:
            row.append(rec.id if rec.id is not None else "")
        if with_reps:
            row.append(str(rec.replications))
        writer.writerow(row)
    return buf.getvalue()


def dataset_summary(d: AuditDataset) -> dict:
    """Per-role loss statistics plus the dataset's shape parameters."""
    canary = d.canary_losses()
    reference = d.reference_losses()
    return {
        "m": d.m,
        "n": d.n,
        "replications": d.replications,
        "canary_loss": {
            "min": float(canary.min()),
            "max": float(canary.max()),
            "mean": float(canary.mean()),
        },
        "reference_loss": {
            "min": float(reference.min()),
            "max": float(reference.max()),
            "mean": float(reference.mean()),
        },
    }
