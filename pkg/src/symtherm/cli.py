"""``symtherm {sweep|check|classify|locality} --config cfg.json [--out out.csv]``.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from .conditions import predict_persistence, verify_ec_nc_equivalence
from .ensembles import EnsembleSpec, canonical_state, gibbs_state
from .entanglement import log_negativity, pt_trace_norm
from .exceptions import ConfigError, NumericError, SymthermError
from .fermions import MajoranaSystem, ModePartition, fermionic_partial_transpose
from .indistinguishability import fit_exponential_decay, local_sector_distance, projector_trace_ratio
from .linalg import random_hermitian, trace_norm
from .models import (
    build_hamiltonian,
    model_from_dict,
    oracle_cluster_canonical_EN,
    oracle_cluster_gibbs_EN,
    oracle_majorana_pair_EN,
    oracle_xyz_canonical_log_negativity,
)
from .symmetry import (
    AbelianGroup,
    Representation,
    SiteRep,
    classify_irrep,
    semiuniform_census,
    symmetry_from_dict,
    twirl,
)

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3

SWEEP_COLUMNS = [
    "config_hash", "model", "n_sites", "ensemble", "sector", "partition", "beta",
    "tanh_beta", "log_negativity_bits", "trace_norm_pt", "oracle_value", "abs_err_vs_oracle",
]
LOCALITY_COLUMNS = [
    "config_hash", "n_sites", "sector", "partition", "beta", "distance",
    "projector_trace", "asymptote", "xi",
]


# --- formatting ----------------------------------------------------------------

def config_hash(cfg: Any) -> str:
    blob = json.dumps(cfg, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if x == 0:
            return "0"
        return f"{x:.12g}"
    if isinstance(x, (list, tuple)):
        return ";".join(fmt(v) for v in x)
    return str(x)


def _round_floats(obj):
    if isinstance(obj, float):
        if math.isinf(obj) or math.isnan(obj):
            return str(obj)
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def render_csv(columns: Sequence[str], rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(row.get(c)) for c in columns])
    return buf.getvalue()


def render_json(obj) -> str:
    return json.dumps(_round_floats(obj), indent=2, sort_keys=True) + "\n"


# --- config parsing ------------------------------------------------------------

def _require(cfg: dict, key: str, where: str = "config"):
    if key not in cfg:
        raise ConfigError(f"{where}: missing required key {key!r}")
    return cfg[key]


def load_config(path: str | Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(cfg, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return cfg


def beta_grid(cfg: dict) -> list[float]:
    """Inverse temperatures from ``betas`` or ``tanh_beta: [start, stop, step]`` (stop included)."""
    if "betas" in cfg and "tanh_beta" in cfg:
        raise ConfigError("give either 'betas' or 'tanh_beta', not both")
    if "betas" in cfg:
        betas = [float(b) for b in cfg["betas"]]
    elif "tanh_beta" in cfg:
        grid = cfg["tanh_beta"]
        if not isinstance(grid, list) or len(grid) not in (0, 3):
            raise ConfigError("tanh_beta must be [start, stop, step]")
        if not grid:
            return []
        start, stop, step = map(float, grid)
        if step <= 0 or not 0 <= start <= 1 or not 0 <= stop <= 1:
            raise ConfigError("tanh_beta needs 0 <= start, stop <= 1 and step > 0")
        count = max(0, math.floor((stop - start) / step + 1e-9) + 1)
        values = [min(1.0, start + k * step) for k in range(count)]
        betas = [math.inf if v >= 1.0 else math.atanh(v) for v in values]
    else:
        raise ConfigError("config needs 'betas' or 'tanh_beta'")
    if any(not b >= 0 for b in betas):
        raise ConfigError("inverse temperatures must be >= 0")
    return betas


def _fermion_parity_rep(n: int) -> Representation:
    # P = prod_k (-Z_k) under the Jordan-Wigner ordering
    return Representation.homogeneous(SiteRep.from_paulis(AbelianGroup.finite(2), ["-Z"]), n)


class Setup:
    """Model, symmetry and Hamiltonian resolved from a config."""

    def __init__(self, cfg: dict):
        mcfg = _require(cfg, "model")
        if not isinstance(mcfg, dict):
            raise ConfigError("model must be an object")
        probe = model_from_dict(mcfg)
        self.n_sites = probe.n_sites
        self.fermionic = probe.fermionic
        scfg = cfg.get("symmetry")
        if scfg is None:
            if not self.fermionic:
                raise ConfigError("config: missing required key 'symmetry'")
            self.rep = _fermion_parity_rep(self.n_sites)
        else:
            scfg = dict(scfg)
            scfg.setdefault("n_sites", self.n_sites)
            self.rep = symmetry_from_dict(scfg)
            if self.rep.n_sites != self.n_sites:
                raise ConfigError("symmetry n_sites differs from model n_sites")
        self.spec = model_from_dict(mcfg, self.rep)
        self.model_cfg = mcfg
        self.h = build_hamiltonian(self.spec)
        self.msys = MajoranaSystem(self.n_sites) if self.fermionic else None

    def sectors(self, cfg: dict) -> list[tuple[int, ...]]:
        raw = cfg.get("sectors")
        if raw is None:
            return self.rep.realizable_labels()
        labels = [self.rep.group.label(s) for s in raw]
        for lam in labels:
            if self.rep.sector_dimension(lam) == 0:
                raise ConfigError(f"sector {list(lam)} is empty for this representation")
        return labels

    def partitions(self, cfg: dict) -> list[list[int]]:
        if self.fermionic:
            raw = cfg.get("partitions", [cfg.get("partition", list(range(self.n_sites)))])
            n_max = 2 * self.n_sites
        else:
            raw = cfg.get("partitions", [cfg["partition"]] if "partition" in cfg else None)
            n_max = self.n_sites
            if raw is None:
                raise ConfigError("config: missing required key 'partition'")
        out = []
        for p in raw:
            p = sorted({int(i) for i in p})
            if not p or any(i < 0 or i >= n_max for i in p):
                raise ConfigError(f"partition {p} out of range")
            if not self.fermionic and len(p) >= self.n_sites:
                raise ConfigError(f"partition {p} leaves B empty")
            out.append(p)
        return out


def _is_interval_on_ring(part: list[int], n: int) -> bool:
    s = set(part)
    starts = [i for i in part if (i - 1) % n not in s]
    return len(starts) == 1


def _oracle(setup: Setup, ensemble: str, sector, part, beta: float) -> float | None:
    spec = setup.spec
    params = setup.model_cfg.get("params", {})
    n = setup.n_sites
    lam = None
    if spec.name == "cluster-chain" and spec.boundary == "periodic" and _is_z2_x(setup.rep):
        if not (_is_interval_on_ring(part, n) and 2 <= len(part) <= n - 2):
            return None
        lam = 1.0 if math.isinf(beta) else math.tanh(beta * abs(float(params.get("J", 1.0))))
        if ensemble == "gibbs":
            return oracle_cluster_gibbs_EN(lam)
        if n % 2 == 0 and n >= 4:
            return oracle_cluster_canonical_EN(lam, n, 1 if sector == (0,) else -1)
        return None
    if spec.name == "xyz2" and ensemble == "canonical" and _is_z2_x(setup.rep) and sector == (0,):
        if math.isinf(beta):
            return None
        return oracle_xyz_canonical_log_negativity(float(params.get("J", 1.0)),
                                                   float(params.get("gamma", 0.0)), beta)
    if (spec.name == "majorana-hopping" and n == 2 and ensemble == "gibbs"
            and part == [0, 1] and not math.isinf(beta)):
        return oracle_majorana_pair_EN(beta, float(params.get("t", 1.0)))
    return None


def _is_z2_x(rep: Representation) -> bool:
    if rep.group.orders != (2,) or not rep.homogeneous_flag:
        return False
    u = rep.site_reps[0].image((1,))
    return bool(np.allclose(u, [[0, 1], [1, 0]]))


def _pool_map(fn: Callable, items: list, threads: int) -> list:
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# --- commands ------------------------------------------------------------------

def cmd_sweep(cfg: dict, threads: int = 1) -> list[dict]:
    setup = Setup(cfg)
    ensemble = cfg.get("ensemble", "gibbs")
    if ensemble not in ("gibbs", "canonical", "both"):
        raise ConfigError("ensemble must be 'gibbs', 'canonical' or 'both'")
    betas = beta_grid(cfg)
    parts = setup.partitions(cfg)
    jobs = []
    for part in parts:
        if ensemble in ("gibbs", "both"):
            jobs += [("gibbs", None, part, b) for b in betas]
        if ensemble in ("canonical", "both"):
            jobs += [("canonical", lam, part, b) for lam in setup.sectors(cfg) for b in betas]
    chash = config_hash(cfg)

    def run(job):
        kind, lam, part, beta = job
        if kind == "gibbs":
            rho = gibbs_state(setup.h, beta)
        else:
            rho = canonical_state(setup.h, beta, setup.rep, lam)
        if setup.fermionic:
            tn = trace_norm(fermionic_partial_transpose(rho, ModePartition(part), setup.msys))
            en = max(0.0, math.log2(tn))
        else:
            tn = pt_trace_norm(rho, setup.rep.dims, part)
            en = log_negativity(rho, setup.rep.dims, part)
        oracle = _oracle(setup, kind, lam, part, beta)
        return {
            "config_hash": chash,
            "model": setup.spec.name,
            "n_sites": setup.n_sites,
            "ensemble": kind,
            "sector": list(lam) if lam is not None else None,
            "partition": part,
            "beta": beta,
            "tanh_beta": 1.0 if math.isinf(beta) else math.tanh(beta),
            "log_negativity_bits": en,
            "trace_norm_pt": tn,
            "oracle_value": oracle,
            "abs_err_vs_oracle": None if oracle is None else abs(en - oracle),
        }

    return _pool_map(run, jobs, threads)


def cmd_check(cfg: dict, seed: int = 0) -> dict:
    setup = Setup(cfg)
    parts = setup.partitions(cfg) if not setup.fermionic else None
    if setup.fermionic:
        region = cfg.get("site_partition", list(range(setup.n_sites // 2)))
        fpart = ModePartition(cfg.get("partition", range(2 * (setup.n_sites // 2))))
        parts = [sorted(int(i) for i in region)]
        fermionic = (setup.msys, fpart)
    else:
        fermionic = None
    sectors = setup.sectors(cfg) if "sectors" in cfg else None
    spec = EnsembleSpec(setup.h, float(cfg.get("beta", 0.0)))
    report = {
        "config_hash": config_hash(cfg),
        "model": setup.spec.name,
        "n_sites": setup.n_sites,
        "partitions": [predict_persistence(spec, setup.rep, p, sectors, fermionic) for p in parts],
    }
    fixtures = cfg.get("random_fixtures")
    if fixtures:
        count = int(fixtures.get("count", 10)) if isinstance(fixtures, dict) else int(fixtures)
        rng = np.random.default_rng(seed)
        agree = 0
        for _ in range(count):
            h = twirl(setup.rep, random_hermitian(rng, setup.rep.dim))
            lam = setup.rep.realizable_labels()[rng.integers(len(setup.rep.realizable_labels()))]
            part = parts[rng.integers(len(parts))]
            agree += verify_ec_nc_equivalence(h, setup.rep, lam, part)
        report["random_fixtures"] = {"seed": seed, "count": count, "ec_nc_agree": agree}
    return report


def cmd_classify(cfg: dict) -> dict:
    scfg = _require(cfg, "symmetry")
    rep = symmetry_from_dict(scfg)
    total, semi = semiuniform_census(rep)
    irreps = []
    for lam in rep.realizable_labels():
        irreps.append({"label": list(lam), "class": classify_irrep(rep, lam).value,
                       "dimension": rep.sector_dimension(lam)})
    return {
        "config_hash": config_hash(cfg),
        "n_sites": rep.n_sites,
        "irreps": irreps,
        "census": {"total": total, "semiuniform": semi},
    }


def cmd_locality(cfg: dict, threads: int = 1) -> tuple[list[dict], dict | None]:
    scfg = dict(_require(cfg, "symmetry"))
    sizes = [int(n) for n in _require(cfg, "n_values")]
    beta = float(cfg.get("beta", 0.0))
    region_size = int(cfg.get("region_size", 1))
    mcfg = cfg.get("model")
    if beta > 0 and mcfg is None:
        raise ConfigError("locality at beta > 0 needs a model")
    group_rep = symmetry_from_dict({**scfg, "n_sites": max(sizes) if sizes else 1})
    lam = group_rep.group.label(cfg.get("sector", 0))
    chash = config_hash(cfg)
    for n in sizes:
        if not 1 <= region_size < n:
            raise ConfigError(f"region_size {region_size} must lie in [1, {n - 1}]")

    def run(n):
        rep = symmetry_from_dict({**scfg, "n_sites": n})
        h = None
        if mcfg is not None and beta > 0:
            h = build_hamiltonian(model_from_dict({**mcfg, "n_sites": n}, rep))
        part = list(range(region_size))
        dist = local_sector_distance(h, rep, lam, beta, part)
        exact, asym, xi = projector_trace_ratio(rep, lam, n) if not rep.group.is_u1 else (None,) * 3
        return {"config_hash": chash, "n_sites": n, "sector": list(lam), "partition": part,
                "beta": beta, "distance": dist, "projector_trace": exact,
                "asymptote": asym, "xi": xi}

    rows = _pool_map(run, sizes, threads)
    fit = None
    positive = [(r["n_sites"], r["distance"]) for r in rows if r["distance"] > 1e-300]
    if len(positive) >= 3 and len(positive) == len(rows):
        f = fit_exponential_decay(*zip(*positive))
        fit = {"slope": f.slope, "intercept": f.intercept, "r_squared": f.r_squared}
    return rows, fit


# --- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symtherm",
        description="Symmetry-resolved thermal entanglement: sweeps, condition checks, "
                    "irrep classification and local-indistinguishability probes.")
    parser.add_argument("command", choices=["sweep", "check", "classify", "locality"])
    parser.add_argument("--config", required=True, help="JSON config file")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--format", choices=["csv", "json"],
                        help="output format (default: csv for sweep/locality, json otherwise)")
    parser.add_argument("--threads", type=int, default=1, help="worker threads")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized check fixtures")
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    """Execute a command; returns ``(exit_code, output_text)``."""
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        return EXIT_CONFIG, "error: --threads must be >= 1\n"
    try:
        cfg = load_config(args.config)
        if args.command == "sweep":
            rows = cmd_sweep(cfg, args.threads)
            text = (render_json(rows) if args.format == "json"
                    else render_csv(SWEEP_COLUMNS, rows))
        elif args.command == "locality":
            rows, fit = cmd_locality(cfg, args.threads)
            text = (render_json({"rows": rows, "fit": fit}) if args.format == "json"
                    else render_csv(LOCALITY_COLUMNS, rows))
        elif args.command == "check":
            text = render_json(cmd_check(cfg, args.seed))
        else:
            text = render_json(cmd_classify(cfg))
        if args.format == "csv" and args.command in ("check", "classify"):
            raise ConfigError(f"{args.command} emits JSON only")
    except NumericError as exc:
        return EXIT_NUMERIC, f"numeric failure: {exc}\n"
    except (SymthermError, ValueError, TypeError, KeyError) as exc:
        return EXIT_CONFIG, f"config error: {exc}\n"
    return EXIT_OK, text


def main(argv: Sequence[str] | None = None) -> int:
    code, text = run(argv)
    if code != EXIT_OK:
        sys.stderr.write(text)
        return code
    args = build_parser().parse_args(argv)
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
