"""
Subcommand implementations. Each takes a RunConfig, returns the result
table as a DataFrame and writes it as CSV (to the configured path or stdout).
"""
import logging
import sys
import time
from typing import Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd

from config import settings
from ..core.exceptions import ConfigError, ReferenceUnavailableError
from ..core.models import GridKind, PriceResult, ReconstructionMethod
from ..core.pricing import SfpPricer
from ..core.processes import BSMModel
from ..core.reference import bsm_analytic, cos_prices, error_report
from ..core.series import density_mass
from .run_config import RunConfig

logger = logging.getLogger(__name__)


def write_csv(frame: pd.DataFrame, out: Optional[str], comments: Iterable[str] = ()) -> None:
    """Write comment lines then the table; floats keep full precision"""
    def _emit(handle):
        for line in comments:
            handle.write(f"# {line}\n")
        frame.to_csv(handle, index=False, float_format=settings.CSV_FLOAT_FORMAT)

    if out:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            _emit(handle)
        logger.info("Wrote %d row(s) to %s", len(frame), out)
    else:
        _emit(sys.stdout)


def reference_values(cfg: RunConfig, results: List[PriceResult]) -> Tuple[np.ndarray, str]:
    """Reference prices at the priced points and a label naming the method"""
    spots = np.array([r.S0 for r in results])
    strikes = np.array([r.K for r in results])
    T = cfg.contract.T

    if cfg.reference == "analytic":
        if not isinstance(cfg.model, BSMModel):
            raise ReferenceUnavailableError(f"no analytic reference for {cfg.model.kind}; use cos or sfp-high")
        model = cfg.model
        quote = bsm_analytic(spots, strikes, model.r, model.q, model.sigma, T, cfg.contract.kind)
        return np.asarray(quote.price, dtype=float), "analytic"

    if cfg.reference == "cos":
        interval = results[0].interval
        values = cos_prices(
            cfg.model, cfg.contract, cfg.S0, interval, settings.COS_REFERENCE_TERMS,
            grid=cfg.grid, grid_kind=cfg.grid_kind, use_parity=cfg.use_parity,
        )
        return values, f"cos (N={settings.COS_REFERENCE_TERMS})"

    pricer = SfpPricer()
    high = pricer.price_curve(cfg.request(settings.HIGH_TERMS), cfg.grid, cfg.grid_kind)
    return np.array([r.value for r in high]), f"sfp-high (U={settings.HIGH_TERMS})"


def _require_single_point(cfg: RunConfig, command: str) -> None:
    if cfg.is_range:
        raise ConfigError(f"'{command}' prices one point; use 'curve' for ranges", field="contract.K_range")


def cmd_price(cfg: RunConfig) -> pd.DataFrame:
    _require_single_point(cfg, "price")
    pricer = SfpPricer()
    req = cfg.request()
    result = pricer.price(req, with_greeks=True)
    if req.model.has_variance_state:
        result.greeks.vega = pricer.vega(req)
    row = result.to_dict()
    row.pop("elapsed_seconds", None)
    row["jumps"] = " ".join(f"{z:.6g}" for z in result.jump_locations)
    frame = pd.DataFrame([row])
    write_csv(frame, cfg.out)
    return frame


def cmd_curve(cfg: RunConfig) -> pd.DataFrame:
    pricer = SfpPricer()
    results = pricer.price_curve(cfg.request(), cfg.grid, cfg.grid_kind)
    frame = pd.DataFrame({
        cfg.grid_kind.value: cfg.grid,
        "value": [r.value for r in results],
        "status": [r.status.value for r in results],
    })
    interval = results[0].interval
    write_csv(frame, cfg.out, comments=[
        f"model={cfg.model.kind} contract={cfg.contract.kind.value} U={cfg.terms[-1]} "
        f"method={cfg.method.value} interval=[{interval.c:.6g}, {interval.d:.6g}]",
    ])
    return frame


def cmd_convergence(cfg: RunConfig) -> pd.DataFrame:
    """Error norms against the reference for every U in the config"""
    pricer = SfpPricer()
    rows, label = [], None
    reference = None
    for U in cfg.terms:
        started = time.perf_counter()
        results = pricer.price_curve(cfg.request(U), cfg.grid, cfg.grid_kind)
        elapsed = time.perf_counter() - started
        if reference is None:
            reference, label = reference_values(cfg, results)
        report = error_report([r.value for r in results], reference, cfg.grid, elapsed)
        logger.info("U=%d: r_inf=%.3e r_2=%.3e (%.3fs)", U, report.r_inf, report.r_2, elapsed)
        rows.append({"U": U, **report.to_dict()})
    frame = pd.DataFrame(rows, columns=["U", "r_inf", "r_2", "seconds"])
    write_csv(frame, cfg.out, comments=[f"reference: {label}"])
    return frame


def cmd_greeks(cfg: RunConfig) -> pd.DataFrame:
    pricer = SfpPricer()
    results = pricer.price_curve(cfg.request(), cfg.grid, cfg.grid_kind, with_greeks=True)
    frame = pd.DataFrame({
        "S0": [r.S0 for r in results],
        "K": [r.K for r in results],
        "value": [r.value for r in results],
        "delta": [r.greeks.delta for r in results],
        "gamma": [r.greeks.gamma for r in results],
    })
    if cfg.model.has_variance_state:
        frame["vega"] = [r.greeks.vega for r in results]
    if isinstance(cfg.model, BSMModel):
        model = cfg.model
        try:
            quote = bsm_analytic(frame["S0"].to_numpy(), frame["K"].to_numpy(), model.r, model.q,
                                 model.sigma, cfg.contract.T, cfg.contract.kind)
        except ReferenceUnavailableError as e:
            logger.info("Greeks written without reference columns: %s", e)
        else:
            frame["value_ref"] = np.asarray(quote.price, dtype=float)
            frame["delta_ref"] = np.asarray(quote.delta, dtype=float)
            frame["gamma_ref"] = np.asarray(quote.gamma, dtype=float)
    write_csv(frame, cfg.out)
    return frame


def cmd_detect_jumps(cfg: RunConfig) -> pd.DataFrame:
    pricer = SfpPricer()
    req = cfg.request()
    if req.method != ReconstructionMethod.SFP:
        logger.warning("Jump detection runs regardless of method=%s", req.method.value)
        req.method = ReconstructionMethod.SFP
    interval, report = pricer.jump_report(req)
    if report is None:
        frame = pd.DataFrame({"zeta": list(req.explicit_jumps), "magnitude": np.nan})
        comments = [f"jumps supplied by config ({req.jumps.value})"]
    else:
        frame = pd.DataFrame({"zeta": report.locations, "magnitude": report.spike_magnitudes},
                             columns=["zeta", "magnitude"])
        comments = [f"smooth={report.smooth} background={report.background:.6g} "
                    f"peak_ratio={report.peak_ratio:.6g} tail={report.tail:.6g}"]
    comments.append(f"interval=[{interval.c:.6g}, {interval.d:.6g}]")
    write_csv(frame, cfg.out, comments=comments)
    return frame


def cmd_density(cfg: RunConfig) -> pd.DataFrame:
    pricer = SfpPricer()
    req = cfg.request()
    interval, grid, values = pricer.density(req)
    mass = density_mass(values, grid)
    frame = pd.DataFrame({"y": grid, "density": values})
    write_csv(frame, cfg.out, comments=[
        f"method={req.method.value} U={req.U} interval=[{interval.c:.6g}, {interval.d:.6g}] mass={mass:.12g}",
    ])
    return frame


COMMANDS = {
    "price": cmd_price,
    "curve": cmd_curve,
    "convergence": cmd_convergence,
    "greeks": cmd_greeks,
    "detect-jumps": cmd_detect_jumps,
    "density": cmd_density,
}
