## @file scan.py
#  @brief Scans of action drift and escape times over a grid of perturbation sizes
#

import hashlib
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np
import scipy

from pynekhoro.config import INTEGRATOR_DEFAULTS, SCAN_DEFAULTS, fill_defaults, worker_count
from pynekhoro.errors import IntegrationFailure, InvalidArgumentError, NotFittableError
from pynekhoro.geometry import detect_crossings
from pynekhoro.problems import SystemSpec, canonical_benchmark, pendulum, load_system
from pynekhoro.solvers import State, integrate

logger = logging.getLogger(__name__)

BENCHMARKS = {"canonical": canonical_benchmark, "pendulum": pendulum}

## scans keep every hundredth step unless told otherwise
SCAN_SAMPLE_STRIDE = 100


def _version():
    try:
        from pynekhoro import __version__

        return __version__
    except ImportError:
        return "unknown"


## Configuration of a scan
#
# The JSON document looks like
#
#     {
#       "benchmark": "canonical",            (or "spec": {...} or "spec_file": "spec.json")
#       "eps_grid": [1e-2, 1e-3, 1e-4],
#       "initial_conditions": {"count": 20, "seed": 0},   (or a list of actions / {"theta", "I"})
#       "t_max": 1e4,
#       "rho": 0.1,
#       "K_detect": 5,
#       "integrator": {"step": 1e-2, "sample_stride": 100},
#       "detection": {"l": 0.05},
#       "nworkers": null
#     }
class ScanConfig:
    def __init__(
        self,
        spec,
        eps_grid,
        initial_conditions=None,
        t_max=None,
        rho=None,
        integrator=None,
        K_detect=None,
        nworkers=None,
        seed=None,
        detection=None,
    ):
        """! Set up the scan
        @param spec SystemSpec template, its epsilon is replaced by the grid values
        @param eps_grid strictly decreasing list of eps >= 0
        @param initial_conditions list of States, or None to draw SCAN_DEFAULTS['count'] of them
        @param t_max final time of every orbit
        @param rho escape threshold
        @param integrator dict of integrator params
        @param K_detect height bound of the crossing detection
        @param nworkers number of worker processes
        @param seed seed of the initial-condition draws
        @param detection dict of crossing-detection params
        """
        d = SCAN_DEFAULTS
        self.spec = spec
        self.eps_grid = [float(e) for e in eps_grid]
        self.t_max = float(d["t_max"] if t_max is None else t_max)
        self.rho = float(d["rho"] if rho is None else rho)
        self.K_detect = int(d["K_detect"] if K_detect is None else K_detect)
        self.nworkers = d["nworkers"] if nworkers is None else nworkers
        self.seed = int(d["seed"] if seed is None else seed)
        integrator = dict(integrator or {})
        if "sample_stride" not in integrator.keys():
            integrator["sample_stride"] = SCAN_SAMPLE_STRIDE
        self.integrator = fill_defaults(integrator, INTEGRATOR_DEFAULTS)
        self.detection = dict(detection or {})

        if not self.eps_grid:
            raise InvalidArgumentError("the eps grid is empty")
        if any(e < 0 for e in self.eps_grid):
            raise InvalidArgumentError("eps values must be non-negative")
        if any(b >= a for a, b in zip(self.eps_grid, self.eps_grid[1:])):
            raise InvalidArgumentError("the eps grid must be strictly decreasing")
        if self.rho <= 0 or self.t_max < 0:
            raise InvalidArgumentError("need rho > 0 and t_max >= 0")

        if initial_conditions is None:
            initial_conditions = sample_initial_conditions(spec, d["count"], self.seed)
        self.initial_conditions = list(initial_conditions)
        for ic in self.initial_conditions:
            if not np.abs(ic.I).max() < spec.R / 2:
                raise InvalidArgumentError(f"initial action {ic.I.tolist()} is outside B(0, R/2)")

    @classmethod
    def from_dict(cls, data, base_dir=None):
        if "spec" in data:
            spec = SystemSpec.from_dict(data["spec"])
        elif "spec_file" in data:
            path = data["spec_file"]
            if base_dir is not None:
                path = os.path.join(base_dir, path)
            spec = load_system(path)
        elif "benchmark" in data:
            if data["benchmark"] not in BENCHMARKS:
                raise InvalidArgumentError(f"unknown benchmark {data['benchmark']!r}")
            spec = BENCHMARKS[data["benchmark"]](0.0)
        else:
            raise InvalidArgumentError("scan config needs one of spec, spec_file or benchmark")

        seed = data.get("seed")
        ics = data.get("initial_conditions")
        if ics is None or isinstance(ics, dict):
            ics = ics or {}
            seed = ics.get("seed", seed)
            count = ics.get("count", SCAN_DEFAULTS["count"])
            initial_conditions = sample_initial_conditions(
                spec, count, SCAN_DEFAULTS["seed"] if seed is None else seed
            )
        else:
            initial_conditions = []
            for item in ics:
                if isinstance(item, dict):
                    initial_conditions.append(State(item.get("theta", np.zeros(spec.n)), item["I"]))
                else:
                    initial_conditions.append(State(np.zeros(spec.n), item))

        return cls(
            spec,
            data["eps_grid"],
            initial_conditions,
            data.get("t_max"),
            data.get("rho"),
            data.get("integrator"),
            data.get("K_detect"),
            data.get("nworkers"),
            seed,
            data.get("detection"),
        )

    @classmethod
    def load(cls, path):
        with open(path, "r") as fh:
            return cls.from_dict(json.load(fh), os.path.dirname(os.path.abspath(path)))

    def to_dict(self):
        return {
            "spec": self.spec.to_dict(),
            "eps_grid": self.eps_grid,
            "initial_conditions": [
                {"theta": ic.theta.tolist(), "I": ic.I.tolist()} for ic in self.initial_conditions
            ],
            "t_max": self.t_max,
            "rho": self.rho,
            "K_detect": self.K_detect,
            "integrator": self.integrator,
            "detection": self.detection,
            "seed": self.seed,
        }

    def digest(self):
        """! SHA-256 of the canonical JSON form; the worker count does not enter it"""
        text = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()


def sample_initial_conditions(spec, count, seed):
    """! count States with I uniform in B(0, R/2) and theta uniform on the torus

    The i-th draw uses its own generator seeded with (seed, i), so it does not
    depend on count.
    """
    out = []
    for i in range(int(count)):
        rng = np.random.default_rng([int(seed), i])
        I = rng.uniform(-0.5 * spec.R, 0.5 * spec.R, spec.n)
        theta = rng.uniform(0.0, 1.0, spec.n)
        out.append(State(theta, I))
    return out


class CellRecord:
    FIELDS = (
        "eps",
        "ic_index",
        "status",
        "max_drift",
        "escape_time",
        "crossing_count",
        "h_error",
        "energy_drift",
        "audit_bound",
        "audit_ok",
    )

    def __init__(self, eps, ic_index, status="ok", max_drift=None, escape_time=None,
                 crossing_count=None, h_error=None, energy_drift=None, audit_bound=None, audit_ok=None):
        """! Results of one (eps, initial condition) cell of a scan
        @param status "ok" or "integration-failure"
        @param max_drift max |I(t) - I_0|_inf over every step
        @param escape_time first time the drift reaches rho, None if never
        @param h_error max |h(I(t)) - h(I_0)|
        @param energy_drift max |H(t) - H(0)|, the measured integrator drift
        @param audit_bound 2 eps |f| + energy_drift
        @param audit_ok h_error <= audit_bound
        """
        self.eps = eps
        self.ic_index = ic_index
        self.status = status
        self.max_drift = max_drift
        self.escape_time = escape_time
        self.crossing_count = crossing_count
        self.h_error = h_error
        self.energy_drift = energy_drift
        self.audit_bound = audit_bound
        self.audit_ok = audit_ok

    def to_dict(self):
        return {name: getattr(self, name) for name in self.FIELDS}

    def __eq__(self, other):
        return isinstance(other, CellRecord) and self.to_dict() == other.to_dict()

    def __repr__(self):
        return f"CellRecord({self.to_dict()})"


def _run_cell(job):
    """Worker body: integrates one cell and reduces it to a CellRecord."""
    spec, eps, ic_index, initial, t_max, rho, integrator, K_detect, detection = job
    system = spec.with_epsilon(eps)
    try:
        traj = integrate(system, initial, t_max, integrator)
    except IntegrationFailure as err:
        logger.warning("cell eps = %g, ic %d failed: %s", eps, ic_index, err)
        return CellRecord(eps, ic_index, status="integration-failure")

    freqs = traj.frequencies(system.h)
    crossings = detect_crossings(freqs, K_detect, detection) if len(freqs) > 1 else []
    f_norm = system.f.sup_norm_bound(system.R)
    bound = 2.0 * eps * f_norm + traj.max_energy_error
    slack = 64 * np.finfo(float).eps * max(1.0, abs(system.h.h(initial.I)))
    return CellRecord(
        eps,
        ic_index,
        "ok",
        traj.max_drift,
        traj.escape_time(rho),
        len(crossings),
        traj.max_h_error,
        traj.max_energy_error,
        bound,
        bool(traj.max_h_error <= bound + slack),
    )


## Used to return the output data of a scan
class ScanResult:
    def __init__(self, records, manifest, fit=None):
        self.records = records
        self.manifest = manifest
        ## (a_fit, c_fit, stderr) or None
        self.fit = fit

    def median_drifts(self):
        """! {eps: median max_drift} over the successful cells"""
        out = {}
        for eps in sorted({r.eps for r in self.records}, reverse=True):
            drifts = [r.max_drift for r in self.records if r.eps == eps and r.status == "ok"]
            if drifts:
                out[eps] = float(np.median(drifts))
        return out

    def audit_violations(self):
        return sum(1 for r in self.records if r.status == "ok" and not r.audit_ok)

    def __eq__(self, other):
        return (
            isinstance(other, ScanResult)
            and self.records == other.records
            and self.fit == other.fit
            and self.manifest == other.manifest
        )


def run_scan(config):
    """! Integrates every (eps, initial condition) cell of the config
    @param config ScanConfig
    @returns ScanResult with records in (eps, ic_index) order

    Cells run in a process pool of worker_count(config.nworkers) workers; the
    records are gathered in cell order, so the result does not depend on the
    worker count.
    """
    from .fitting import fit_confinement

    jobs = [
        (
            config.spec,
            eps,
            i,
            ic,
            config.t_max,
            config.rho,
            dict(config.integrator),
            config.K_detect,
            dict(config.detection),
        )
        for eps in config.eps_grid
        for i, ic in enumerate(config.initial_conditions)
    ]
    nworkers = min(worker_count(config.nworkers), max(len(jobs), 1))
    logger.info("scan of %d cells on %d workers", len(jobs), nworkers)

    if nworkers == 1:
        records = [_run_cell(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            records = list(pool.map(_run_cell, jobs))

    manifest = {
        "config_digest": config.digest(),
        "spec_digest": config.spec.digest(),
        "seed": config.seed,
        "versions": {
            "pynekhoro": _version(),
            "numpy": np.__version__,
            "scipy": scipy.__version__,
        },
        "cells": len(records),
        "config": config.to_dict(),
    }
    result = ScanResult(records, manifest)
    try:
        result.fit = fit_confinement(result)
    except NotFittableError as err:
        logger.info("no confinement fit: %s", err)
    return result
