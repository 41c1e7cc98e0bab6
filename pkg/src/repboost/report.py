"""Run traces produced by the boosters and consumed by the audits."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields

from .core import MajorityVote


@dataclass
class IterationRecord:
    t: int
    density: float                      # exact d(mu_t) under the run's distribution
    consumed: int = 0                   # fresh samples taken from S so far
    bit: int | None = None              # threshold bit, when a check ran
    threshold_ok: bool | None = None    # bit consistent with the true mean
    threshold_mass: float | None = None # exact mean of the checked function
    c: int | None = None                # cap c_t (two-layer booster)
    scanned: int | None = None          # rejection candidates examined
    weak_error: float | None = None     # exact error of h_t on the reweighted distribution
    inner_iterations: int | None = None


@dataclass
class RunReport:
    algorithm: str
    params: dict
    records: list = field(default_factory=list)
    output: MajorityVote | None = None
    error: float | None = None          # exact er_D(H)
    weak_calls: int = 0
    consumed: int = 0
    failure: str | None = None
    bits: list = field(default_factory=list)
    inner: list = field(default_factory=list)

    @property
    def iterations(self) -> int:
        return len(self.records)

    @property
    def densities(self):
        return [r.density for r in self.records]

    @property
    def threshold_successes(self) -> bool:
        return all(r.threshold_ok is not False for r in self.records)

    def to_dict(self, records=True) -> dict:
        return {
            "algorithm": self.algorithm,
            "params": self.params,
            "iterations": self.iterations,
            "weak_calls": self.weak_calls,
            "consumed": self.consumed,
            "error": self.error,
            "failure": self.failure,
            "bits": self.bits,
            "records": [asdict(r) for r in self.records] if records else [],
            "output": None if self.output is None else self.output.to_dict(),
            # inner traces can be long; only their summaries are kept
            "inner": [r.to_dict(records=False) for r in self.inner],
        }

    @classmethod
    def from_dict(cls, d) -> "RunReport":
        names = {f.name for f in fields(IterationRecord)}
        return cls(
            algorithm=d["algorithm"],
            params=d["params"],
            records=[IterationRecord(**{k: v for k, v in r.items() if k in names})
                     for r in d["records"]],
            output=None if d.get("output") is None else MajorityVote.from_dict(d["output"]),
            error=d.get("error"),
            weak_calls=d.get("weak_calls", 0),
            consumed=d.get("consumed", 0),
            failure=d.get("failure"),
            bits=list(d.get("bits", [])),
            inner=[cls.from_dict(r) for r in d.get("inner", [])],
        )

    def to_json(self, indent=None, records=True) -> str:
        return json.dumps(self.to_dict(records), sort_keys=True, indent=indent)
