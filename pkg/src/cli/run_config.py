"""
Run configuration: YAML documents and named presets.

A document has five blocks::

    model:    {kind: heston, y0: 0.0175, ybar: 0.0398, lambda: 1.5768, eta: 0.5751, rho: -0.5711}
    contract: {kind: call, K: 100}            # or K_range: [80, 120, 250]; n for power payoffs
    market:   {S0: 100, r: 0.0, q: 0.0, T: 1} # or S0_range: [80, 120, 250]
    method:   {U: [32, 64, 128], L: 12, padding: 0.5, jumps: auto, method: sfp, parity: true}
    output:   {csv: results.csv, reference: cos}
"""
import copy
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import yaml

from config import settings
from ..core.exceptions import ConfigError, PricingError
from ..core.models import (
    Contract, ContractKind, GridKind, JumpMode, PriceRequest, ReconstructionMethod,
)
from ..core.processes import StochasticModel, build_model

logger = logging.getLogger(__name__)

REFERENCE_METHODS = ("analytic", "cos", "sfp-high")
_BLOCKS = ("model", "contract", "market", "method", "output")


@dataclass
class RunConfig:
    """Validated run configuration"""
    model: StochasticModel
    contract: Contract
    S0: float
    terms: List[int]
    strikes: Optional[np.ndarray] = None
    spots: Optional[np.ndarray] = None
    L: Optional[float] = None
    padding: Optional[float] = None
    jumps: JumpMode = JumpMode.AUTO
    explicit_jumps: Tuple[float, ...] = ()
    method: ReconstructionMethod = ReconstructionMethod.SFP
    use_parity: bool = True
    out: Optional[str] = None
    reference: str = "analytic"
    source: Dict[str, Any] = field(default_factory=dict)

    @property
    def grid_kind(self) -> GridKind:
        return GridKind.SPOT if self.spots is not None else GridKind.STRIKE

    @property
    def grid(self) -> np.ndarray:
        if self.spots is not None:
            return self.spots
        if self.strikes is not None:
            return self.strikes
        return np.array([self.contract.K])

    @property
    def is_range(self) -> bool:
        return self.strikes is not None or self.spots is not None

    def request(self, U: Optional[int] = None) -> PriceRequest:
        return PriceRequest(
            model=self.model,
            contract=self.contract,
            S0=self.S0,
            U=U if U is not None else self.terms[-1],
            L=self.L,
            padding=self.padding,
            jumps=self.jumps,
            explicit_jumps=self.explicit_jumps,
            method=self.method,
            use_parity=self.use_parity,
        )


def _merge(base: dict, override: dict) -> dict:
    """Recursive dict merge; override wins"""
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def load_document(path: str) -> dict:
    """Read a YAML config document"""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            document = yaml.safe_load(handle)
    except OSError as e:
        raise ConfigError(f"cannot read config: {e}") from None
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        raise ConfigError(f"malformed YAML{where}: {getattr(e, 'problem', e)}") from None
    if document is None:
        return {}
    if not isinstance(document, dict):
        raise ConfigError("top level must be a mapping of blocks")
    return document


def _number(block: dict, key: str, path: str, required: bool = True, default=None) -> Optional[float]:
    if key not in block:
        if required:
            raise ConfigError("missing required field", field=f"{path}.{key}")
        return default
    try:
        return float(block[key])
    except (TypeError, ValueError):
        raise ConfigError(f"expected a number, got {block[key]!r}", field=f"{path}.{key}") from None


def _range(bounds, path: str) -> np.ndarray:
    if isinstance(bounds, dict):
        bounds = [bounds.get("start"), bounds.get("stop"), bounds.get("points", settings.CURVE_POINTS)]
    if not isinstance(bounds, (list, tuple)) or len(bounds) not in (2, 3):
        raise ConfigError("expected [start, stop] or [start, stop, points]", field=path)
    try:
        start, stop = float(bounds[0]), float(bounds[1])
        points = int(bounds[2]) if len(bounds) == 3 else settings.CURVE_POINTS
    except (TypeError, ValueError):
        raise ConfigError(f"bad range {bounds!r}", field=path) from None
    if not 0 < start <= stop or points < 1:
        raise ConfigError(f"range must be positive and increasing with points >= 1, got {bounds!r}", field=path)
    return np.linspace(start, stop, points)


def _one_of(block: dict, single: str, ranged: str, path: str):
    has_single, has_range = single in block, ranged in block
    if has_single == has_range:
        raise ConfigError(f"exactly one of '{single}' and '{ranged}' is required", field=path)
    if has_single:
        return _number(block, single, path), None
    return None, _range(block[ranged], f"{path}.{ranged}")


def _terms(value, path: str) -> List[int]:
    values = value if isinstance(value, (list, tuple)) else [value]
    try:
        terms = [int(v) for v in values]
    except (TypeError, ValueError):
        raise ConfigError(f"U must be an integer or a list of integers, got {value!r}", field=path) from None
    if not terms:
        raise ConfigError("U list is empty", field=path)
    return terms


def parse_terms(text: str) -> List[int]:
    """Parse a comma-separated --terms value"""
    parts = [part.strip() for part in text.split(",") if part.strip()]
    return _terms(parts, "method.U")


def build_run_config(document: dict) -> RunConfig:
    """Validate a merged document and build the RunConfig"""
    for name in _BLOCKS:
        if name in document and not isinstance(document[name], dict):
            raise ConfigError("block must be a mapping", field=name)
    model_block = dict(document.get("model") or {})
    contract_block = document.get("contract") or {}
    market_block = document.get("market") or {}
    method_block = document.get("method") or {}
    output_block = document.get("output") or {}

    if "kind" not in model_block:
        raise ConfigError("missing required field", field="model.kind")
    r = _number(market_block, "r", "market", required=False, default=0.0)
    q = _number(market_block, "q", "market", required=False, default=0.0)
    T = _number(market_block, "T", "market")
    kind = str(model_block.pop("kind"))
    try:
        model = build_model(kind, r=r, q=q, **model_block)
    except PricingError as e:
        raise ConfigError(str(e), field="model") from None

    if "kind" not in contract_block:
        raise ConfigError("missing required field", field="contract.kind")
    try:
        contract_kind = ContractKind(str(contract_block["kind"]).lower())
    except ValueError:
        raise ConfigError(
            f"unknown contract kind {contract_block['kind']!r}", field="contract.kind"
        ) from None
    K, strikes = _one_of(contract_block, "K", "K_range", "contract")
    S0, spots = _one_of(market_block, "S0", "S0_range", "market")
    if strikes is not None and spots is not None:
        raise ConfigError("strike range and spot range cannot both be given", field="market.S0_range")
    try:
        contract = Contract(
            kind=contract_kind,
            K=K if K is not None else float(strikes[0]),
            T=T,
            n=int(contract_block.get("n", 1)),
        )
    except PricingError as e:
        raise ConfigError(str(e), field="contract") from None

    terms = _terms(method_block.get("U", settings.DEFAULT_TERMS), "method.U")
    jumps_value = method_block.get("jumps", "auto")
    explicit: Tuple[float, ...] = ()
    if isinstance(jumps_value, (list, tuple)):
        try:
            explicit = tuple(float(z) for z in jumps_value)
        except (TypeError, ValueError):
            raise ConfigError(f"bad jump list {jumps_value!r}", field="method.jumps") from None
        jump_mode = JumpMode.EXPLICIT
    else:
        try:
            jump_mode = JumpMode(str(jumps_value).lower())
        except ValueError:
            raise ConfigError(f"unknown jump mode {jumps_value!r}", field="method.jumps") from None
    try:
        method = ReconstructionMethod(str(method_block.get("method", "sfp")).lower())
    except ValueError:
        raise ConfigError(f"unknown method {method_block.get('method')!r}", field="method.method") from None

    reference = str(output_block.get("reference", "analytic")).lower()
    if reference not in REFERENCE_METHODS:
        raise ConfigError(f"unknown reference {reference!r}, expected one of {REFERENCE_METHODS}",
                          field="output.reference")

    return RunConfig(
        model=model,
        contract=contract,
        S0=S0 if S0 is not None else float(spots[0]),
        terms=terms,
        strikes=strikes,
        spots=spots,
        L=_number(method_block, "L", "method", required=False),
        padding=_number(method_block, "padding", "method", required=False),
        jumps=jump_mode,
        explicit_jumps=explicit,
        method=method,
        use_parity=bool(method_block.get("parity", True)),
        out=output_block.get("csv"),
        reference=reference,
        source=document,
    )


def resolve_config(config_path: Optional[str] = None,
                   preset: Optional[str] = None,
                   terms: Optional[str] = None,
                   out: Optional[str] = None,
                   reference: Optional[str] = None) -> RunConfig:
    """Merge preset, config document and command-line overrides"""
    document: dict = {}
    if preset:
        key = preset.lower()
        if key not in settings.PRESETS:
            raise ConfigError(f"unknown preset {preset!r}, expected one of {sorted(settings.PRESETS)}",
                              field="--preset")
        document = copy.deepcopy(settings.PRESETS[key])
    if config_path:
        document = _merge(document, load_document(config_path))
    if not document:
        raise ConfigError("no configuration given; use --config or --preset")

    overrides: dict = {}
    if terms:
        overrides.setdefault("method", {})["U"] = parse_terms(terms)
    if out:
        overrides.setdefault("output", {})["csv"] = out
    if reference:
        overrides.setdefault("output", {})["reference"] = reference
    return build_run_config(_merge(document, overrides))
