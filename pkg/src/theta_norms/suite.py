"""Seeded verification suite over every inequality checker.

Report lines come out in (check, exponent, trial) order and depend only on
the configuration; the wall-clock timestamp lives in the footer alone.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterable, Iterator

import numpy as np

from . import function_space as fs
from . import inequalities as ineq
from .errors import ConfigError, ThetaNormsError
from .exponent import EPS_MIN, INF, conjugate_exponent, parse_exponent_preset
from .report import InequalityReport
from .rng import trial_rng

DEFAULT_PRESETS = ("identity@1.1", "identity@1.5", "identity@2", "identity@3", "identity@10")
REPORT_FIELDS = ("check", "e", "lhs", "rhs", "ratio", "holds", "tail_error", "seed", "trial")


@dataclass
class SizeCaps:
    seq_len: int = 64
    grid_len: int = 64
    hilbert_mn: int = 4096


@dataclass
class SuiteConfig:
    master_seed: int = 42
    trials_per_check: int = 1000
    exponent_presets: list[str] = field(default_factory=lambda: list(DEFAULT_PRESETS))
    rel_tol: float = 1e-9
    equality_tol: float = 1e-9
    eps_min: float = EPS_MIN
    size_caps: SizeCaps = field(default_factory=SizeCaps)
    output_format: str = "jsonl"
    output_path: str | None = None
    checks: list[str] | None = None

    def validate(self) -> None:
        if not isinstance(self.master_seed, int) or not 0 <= self.master_seed < 2**64:
            raise ConfigError("master_seed: must be an integer in [0, 2^64)")
        if not isinstance(self.trials_per_check, int) or self.trials_per_check < 1:
            raise ConfigError("trials_per_check: must be an integer >= 1")
        if not self.exponent_presets:
            raise ConfigError("exponent_presets: need at least one preset")
        if not self.rel_tol > 0:
            raise ConfigError("tolerances.rel_tol: must be > 0")
        if not self.equality_tol > 0:
            raise ConfigError("tolerances.equality_tol: must be > 0")
        if not self.eps_min > 0:
            raise ConfigError("tolerances.eps_min: must be > 0")
        caps = self.size_caps
        for name in ("seq_len", "grid_len", "hilbert_mn"):
            v = getattr(caps, name)
            if not isinstance(v, int) or v < 2:
                raise ConfigError(f"size_caps.{name}: must be an integer >= 2")
        if caps.hilbert_mn > ineq.HILBERT_MAX_TERMS:
            raise ConfigError(f"size_caps.hilbert_mn: exceeds the double-sum cap {ineq.HILBERT_MAX_TERMS}")
        if self.output_format not in ("jsonl", "csv"):
            raise ConfigError("output.format: must be 'jsonl' or 'csv'")
        for i, spec in enumerate(self.exponent_presets):
            e = self.exponent(spec, f"exponent_presets[{i}]")
            if e is not INF and e <= 1.0 + self.eps_min:
                raise ConfigError(f"exponent_presets[{i}]: {spec!r} gives e = {e!r} <= 1 + eps_min")
        if self.checks is not None:
            unknown = [c for c in self.checks if c not in CHECKS]
            if unknown or not self.checks:
                raise ConfigError(f"checks: unknown or empty selection {unknown or self.checks!r}")

    @staticmethod
    def exponent(spec, where: str = "exponent"):
        try:
            return parse_exponent_preset(str(spec))
        except ThetaNormsError as exc:
            raise ConfigError(f"{where}: {exc}") from None

    @property
    def selected_checks(self) -> list[str]:
        return list(CHECKS) if self.checks is None else list(self.checks)


_TOP_KEYS = {"master_seed", "trials_per_check", "exponent_presets", "tolerances", "size_caps", "output", "checks"}


def config_from_dict(raw: dict) -> SuiteConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config: top level must be a JSON object")
    unknown = set(raw) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"{sorted(unknown)[0]}: unknown field")
    cfg = SuiteConfig()
    if "master_seed" in raw:
        cfg.master_seed = raw["master_seed"]
    if "trials_per_check" in raw:
        cfg.trials_per_check = raw["trials_per_check"]
    if "exponent_presets" in raw:
        presets = raw["exponent_presets"]
        if not isinstance(presets, list):
            raise ConfigError("exponent_presets: must be a list")
        cfg.exponent_presets = [str(p) for p in presets]
    if "checks" in raw:
        if not isinstance(raw["checks"], list):
            raise ConfigError("checks: must be a list")
        cfg.checks = [str(c) for c in raw["checks"]]
    sections = {
        "tolerances": {"rel_tol": float, "equality_tol": float, "eps_min": float},
        "size_caps": {"seq_len": int, "grid_len": int, "hilbert_mn": int},
        "output": {"format": str, "path": str},
    }
    for section, fields in sections.items():
        block = raw.get(section, {})
        if not isinstance(block, dict):
            raise ConfigError(f"{section}: must be an object")
        for key, value in block.items():
            if key not in fields:
                raise ConfigError(f"{section}.{key}: unknown field")
            kind = fields[key]
            if kind is float and isinstance(value, (int, float)) and not isinstance(value, bool):
                value = float(value)
            elif not isinstance(value, kind) or isinstance(value, bool):
                raise ConfigError(f"{section}.{key}: expected {kind.__name__}")
            if section == "tolerances":
                setattr(cfg, key, value)
            elif section == "size_caps":
                setattr(cfg.size_caps, key, value)
            elif key == "format":
                cfg.output_format = value
            else:
                cfg.output_path = value
    cfg.validate()
    return cfg


def load_config(path) -> SuiteConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror or exc}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return config_from_dict(raw)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None


# ---- per-trial generators: (rng, e, cfg) -> InequalityReport ----

def _size(rng: np.random.Generator, cap: int) -> int:
    return int(rng.integers(2, cap + 1))


def _signed(rng: np.random.Generator, n) -> np.ndarray:
    # random overall scale so the checks see more than unit-sized data
    return rng.standard_normal(n) * math.exp(rng.uniform(-3.0, 3.0))


def _positive(rng: np.random.Generator, n) -> np.ndarray:
    return np.exp(rng.standard_normal(n)) * math.exp(rng.uniform(-3.0, 3.0))


def _grid(rng: np.random.Generator, cap: int) -> fs.DiscreteMeasureSpace:
    return fs.DiscreteMeasureSpace.uniform(0.0, float(rng.uniform(0.5, 2.0)), _size(rng, cap))


def _holder_seq(rng, e, cfg):
    n = _size(rng, cfg.size_caps.seq_len)
    return ineq.holder_seq(_signed(rng, n), _signed(rng, n), e, cfg.rel_tol)


def _minkowski_seq(rng, e, cfg):
    n = _size(rng, cfg.size_caps.seq_len)
    return ineq.minkowski_seq(_signed(rng, n), _signed(rng, n), e, cfg.rel_tol)


def _generalized_holder(rng, e, cfg):
    # (e, 2q, 2q) has reciprocal sum 1/e + 1/q = 1
    n = _size(rng, cfg.size_caps.seq_len)
    q2 = 2.0 * conjugate_exponent(e, cfg.eps_min)
    xs = [_signed(rng, n) for _ in range(3)]
    return ineq.generalized_holder(xs, [e, q2, q2], tol=cfg.rel_tol)


def _holder_fn(rng, e, cfg):
    mu = _grid(rng, cfg.size_caps.grid_len)
    return fs.holder_fn(_signed(rng, len(mu)), _signed(rng, len(mu)), mu, e, cfg.rel_tol)


def _minkowski_fn(rng, e, cfg):
    mu = _grid(rng, cfg.size_caps.grid_len)
    return fs.minkowski_fn(_signed(rng, len(mu)), _signed(rng, len(mu)), mu, e, cfg.rel_tol)


def _interpolation(rng, e, cfg):
    # t = 1/e is the choice that recovers Hoelder from interpolation
    mu = _grid(rng, cfg.size_caps.grid_len)
    F = np.abs(_signed(rng, len(mu)))
    G = np.abs(_signed(rng, len(mu)))
    return fs.interpolation_check(F, G, mu, 1.0 / e, cfg.rel_tol)


def _integral_minkowski(rng, e, cfg):
    side = max(2, math.isqrt(cfg.size_caps.grid_len * 16))
    mx = fs.DiscreteMeasureSpace.uniform(0.0, 1.0, _size(rng, min(side, cfg.size_caps.grid_len)))
    my = fs.DiscreteMeasureSpace.uniform(0.0, 1.0, _size(rng, min(side, cfg.size_caps.grid_len)))
    F = _signed(rng, (len(mx), len(my)))
    return fs.integral_minkowski(F, mx, my, e, cfg.rel_tol)


def _convolution_young(rng, e, cfg):
    mu = _grid(rng, cfg.size_caps.grid_len)
    return fs.convolution_young(_signed(rng, len(mu)), _signed(rng, len(mu)), mu, e, cfg.rel_tol)


def _hardy(rng, e, cfg):
    return ineq.hardy(_positive(rng, _size(rng, cfg.size_caps.seq_len)), e, cfg.rel_tol)


def _hilbert(rng, e, cfg):
    side = max(2, min(cfg.size_caps.seq_len, math.isqrt(cfg.size_caps.hilbert_mn)))
    a = np.abs(_signed(rng, _size(rng, side)))
    b = np.abs(_signed(rng, _size(rng, side)))
    return ineq.hilbert(a, b, e, cfg.rel_tol)


def _tangent_lemma(rng, e, cfg):
    a, b, t = rng.uniform(0.0, 10.0, 3)
    return ineq.tangent_lemma_check(float(a), float(b), float(t), e, cfg.rel_tol)


Generator = Callable[[np.random.Generator, float, SuiteConfig], InequalityReport]

CHECKS: dict[str, Generator] = {
    "holder_seq": _holder_seq,
    "minkowski_seq": _minkowski_seq,
    "generalized_holder": _generalized_holder,
    "holder_fn": _holder_fn,
    "minkowski_fn": _minkowski_fn,
    "interpolation": _interpolation,
    "integral_minkowski": _integral_minkowski,
    "convolution_young": _convolution_young,
    "hardy": _hardy,
    "hilbert": _hilbert,
    "tangent_lemma": _tangent_lemma,
}

# checks whose domain is 1 < e < inf
_OPEN_RANGE = {"holder_seq", "generalized_holder", "holder_fn", "interpolation",
               "integral_minkowski", "hardy", "hilbert", "tangent_lemma"}


@dataclass
class SuiteResult:
    lines: list[dict]
    footer: dict

    @property
    def violations(self) -> int:
        return self.footer["violations"]

    @property
    def exit_code(self) -> int:
        return 0 if self.violations == 0 else 1


def iter_reports(cfg: SuiteConfig, rhs_scale: float = 1.0) -> Iterator[dict]:
    """Report lines in (check, exponent, trial) order."""
    exponents = [(spec, cfg.exponent(spec)) for spec in cfg.exponent_presets]
    for check in cfg.selected_checks:
        gen = CHECKS[check]
        for spec, e in exponents:
            if e is INF and check in _OPEN_RANGE:
                continue
            check_id = f"{check}:{spec}"
            for trial in range(cfg.trials_per_check):
                rep = gen(trial_rng(cfg.master_seed, check_id, trial), e, cfg)
                if rhs_scale != 1.0:
                    rep = rep.rescaled(rhs_scale)
                yield {
                    "check": check,
                    "e": "inf" if e is INF else float(e),
                    "lhs": rep.lhs,
                    "rhs": rep.rhs,
                    "ratio": rep.ratio,
                    "holds": rep.holds,
                    "tail_error": rep.tail_error,
                    "seed": cfg.master_seed,
                    "trial": trial,
                }


def summarize(lines: Iterable[dict]) -> dict:
    per: dict[str, dict] = {}
    total = 0
    bad = 0
    for ln in lines:
        total += 1
        s = per.setdefault(ln["check"], {"lines": 0, "violations": 0, "min_ratio": math.inf,
                                         "max_ratio": 0.0, "max_tail_error": 0.0})
        s["lines"] += 1
        if not ln["holds"]:
            s["violations"] += 1
            bad += 1
        s["min_ratio"] = min(s["min_ratio"], ln["ratio"])
        s["max_ratio"] = max(s["max_ratio"], ln["ratio"])
        s["max_tail_error"] = max(s["max_tail_error"], ln["tail_error"])
    return {"lines": total, "violations": bad, "per_check": per}


def run_suite(cfg: SuiteConfig, rhs_scale: float = 1.0) -> SuiteResult:
    cfg.validate()
    start = time.perf_counter()
    lines = list(iter_reports(cfg, rhs_scale))
    footer = summarize(lines)
    footer["elapsed_s"] = round(time.perf_counter() - start, 3)
    footer["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return SuiteResult(lines, footer)


def _json_line(obj: dict) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def _csv_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render(result: SuiteResult, fmt: str) -> str:
    """Serialized report: body lines, then the footer."""
    if fmt == "jsonl":
        body = "".join(_json_line(ln) + "\n" for ln in result.lines)
        return body + _json_line({"summary": result.footer}) + "\n"
    if fmt == "csv":
        rows = [",".join(REPORT_FIELDS)]
        rows.extend(",".join(_csv_value(ln[k]) for k in REPORT_FIELDS) for ln in result.lines)
        rows.append("# summary " + json.dumps(result.footer, separators=(",", ":")))
        return "\n".join(rows) + "\n"
    raise ConfigError(f"output.format: unknown format {fmt!r}")


def body_of(text: str) -> str:
    """Report text without the footer line."""
    lines = text.splitlines(keepends=True)
    return "".join(ln for ln in lines if not (ln.startswith('{"summary"') or ln.startswith("# summary")))


def parse_report(text: str) -> SuiteResult:
    """Read a report written by :func:`render` in either format."""
    lines: list[dict] = []
    footer: dict = {}
    rows = text.splitlines()
    if rows and rows[0].strip() == ",".join(REPORT_FIELDS):
        for r in rows[1:]:
            if r.startswith("# summary "):
                footer = json.loads(r[len("# summary "):])
                continue
            if not r.strip():
                continue
            vals = r.split(",")
            if len(vals) != len(REPORT_FIELDS):
                raise ConfigError(f"report row has {len(vals)} fields: {r!r}")
            ln = dict(zip(REPORT_FIELDS, vals))
            ln["e"] = ln["e"] if ln["e"] == "inf" else float(ln["e"])
            for k in ("lhs", "rhs", "ratio", "tail_error"):
                ln[k] = float(ln[k])
            ln["holds"] = ln["holds"] == "true"
            ln["seed"] = int(ln["seed"])
            ln["trial"] = int(ln["trial"])
            lines.append(ln)
    else:
        for i, r in enumerate(rows, 1):
            if not r.strip():
                continue
            try:
                obj = json.loads(r)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"report line {i}: {exc.msg}") from None
            if "summary" in obj:
                footer = obj["summary"]
            else:
                lines.append(obj)
    if not footer:
        footer = summarize(lines)
    return SuiteResult(lines, footer)
