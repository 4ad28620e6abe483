"""
The pipelines behind the commands. Each run writes its CSV files into one directory and returns
what it computed, so the acceptance checks can call the same code the commands do.
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from ..config import RunConfig
from ..data import ResultsArchive, write_profiles, write_record, write_records
from ..physics.densities import electromagnetic_inertia
from ..physics.electron import (
    SeriesSolution,
    iterate_first_family,
    iterate_second_family,
    product_density,
    exterior_join_check,
    sample_profiles,
    paper_factor,
)
from ..physics.neutrino import escape_probability, escape_probability_numeric, first_order_bound
from ..physics.potentials import CouplingSpec
from ..physics.profiles import figure_grid
from ..physics.proton import (
    ProtonSpec,
    ProtonError,
    calibrate_n,
    find_s0,
    EXPLORATORY_NOTE,
)
from ..numerics.quadrature import c0_table
from ..settings import ARCHIVE_BASE_NAME, PROTON_N_CANDIDATES
from ..solve.mass import (
    MassSolveResult,
    resolve_c0,
    solve_eq29,
    solve_exact_condition,
    condition_audit,
    compare_modes,
)
from ..util.filenames import next_archive_path

logger = logging.getLogger(__name__)

GOLDEN_NAMES = ("F0", "G1", "g0", "xi0", "xi1")


@dataclass
class ElectronRun:
    first: SeriesSolution
    second: SeriesSolution
    eta: float
    files: List[Path] = field(default_factory=list)
    golden: Dict[str, str] = field(default_factory=dict)
    joins_ok: bool = False


def build_series(config: RunConfig):
    K = config.series_order
    return iterate_first_family(1, K), iterate_second_family(1, K)


def golden_forms(first: SeriesSolution, second: SeriesSolution) -> Dict[str, str]:
    """Serialized F0, G1, g0, xi0 and xi1."""
    xi = product_density(first, second, 1)
    return {
        "F0": first.F[0].to_string(),
        "G1": first.G[1].to_string(),
        "g0": second.g[0].to_string(),
        "xi0": xi[0].to_string(),
        "xi1": xi[1].to_string(),
    }


def figure_eta(config: RunConfig) -> float:
    """Damping parameter of the figure curves, the closed-form root."""
    c0 = resolve_c0(config.c0_mode, config.c0_paper)
    return solve_eq29(config.alpha, c0, config.constants).eta_root


def write_electron_tables(config: RunConfig, first, second, eta: float, out: Path) -> List[Path]:
    """Figure curves fig1a (G, F), fig1b (f, g) and fig1c (Ff, Gg)."""
    grid = figure_grid()
    alpha = config.alpha
    G, F = sample_profiles(first, alpha, eta, grid)
    f, g = sample_profiles(second, alpha, eta, grid)
    products = sample_profiles(first, alpha, eta, grid, partner_series=second)[2:]
    return [
        write_profiles(out / "fig1a.csv", [G, F]),
        write_profiles(out / "fig1b.csv", [f, g]),
        write_profiles(out / "fig1c.csv", products),
    ]


def run_electron(config: RunConfig, out: Optional[Path] = None, archive: bool = True) -> ElectronRun:
    out = Path(out or config.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    first, second = build_series(config)
    eta = figure_eta(config)
    run = ElectronRun(first, second, eta)

    run.golden = golden_forms(first, second)
    golden_dir = out / "golden"
    golden_dir.mkdir(exist_ok=True)
    for name, text in run.golden.items():
        path = golden_dir / f"{name}.txt"
        path.write_text(text + "\n")
        run.files.append(path)

    run.files += write_electron_tables(config, first, second, eta, out)

    coupling = CouplingSpec.from_eta(config.alpha, eta)
    joins = [exterior_join_check(series, coupling) for series in (first, second)]
    run.joins_ok = all(j.ok for j in joins)
    run.files.append(write_records(out / "join.csv", [
        {
            "family": j.family,
            "value_mismatch": j.value_mismatch,
            "slope_mismatch": j.slope_mismatch,
            "partner_value": j.partner_interior,
            "tolerance": j.tolerance,
            "ok": j.ok,
        }
        for j in joins
    ]))

    xi = product_density(first, second, 1)
    run.files.append(write_record(out / "xi_factor.csv", {
        "xi0_factor": paper_factor(xi[0], 0),
        "xi1_factor": paper_factor(xi[1], 1),
    }))

    if archive:
        _archive(out, "electron", config, lambda ar: ar.write_profiles("electron",
            sample_profiles(first, config.alpha, eta, figure_grid(), partner_series=second)
            + sample_profiles(second, config.alpha, eta, figure_grid())))
    logger.info('electron run wrote %d files to "%s"', len(run.files), out)
    return run


@dataclass
class MassRun:
    paper: MassSolveResult
    exact: MassSolveResult
    comparison: dict
    escape: dict
    files: List[Path] = field(default_factory=list)


def run_neutrino_mass(config: RunConfig, out: Optional[Path] = None, archive: bool = True) -> MassRun:
    out = Path(out or config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    constants = config.constants

    c0 = resolve_c0(config.c0_mode, config.c0_paper)
    paper = solve_eq29(config.alpha, c0, constants)

    first, second = build_series(config)
    exact = solve_exact_condition(first, second, config.alpha, config.series_order, constants,
        bracket=(config.eta_lo, config.eta_hi), abs_tol=config.quad_abs_tol,
        rel_tol=config.quad_rel_tol)
    comparison = compare_modes(paper, exact)
    audit = condition_audit(paper.eta_root, config.series_order, config.alpha, first, second)

    escape = {
        "beta": paper.beta,
        "escape_probability": escape_probability(paper.beta),
        "escape_probability_numeric": escape_probability_numeric(paper.beta),
        "first_order_bound": first_order_bound(paper.beta),
    }
    inertia = electromagnetic_inertia(first, second, config.alpha, exact.eta_root)

    run = MassRun(paper, exact, comparison, escape)
    run.files += [
        write_record(out / "mass_paper.csv", paper.to_record()),
        write_record(out / "mass_exact.csv", exact.to_record()),
        write_record(out / "mass_comparison.csv", comparison),
        write_records(out / "condition_audit.csv", audit.to_records()),
        write_records(out / "c0_table.csv", c0_table(paper.eta_root, range(1, 11))),
        write_record(out / "neutrino_escape.csv", escape),
        write_record(out / "inertia.csv", {
            "eta": inertia.eta,
            "ff_part": inertia.ff_part,
            "gg_part": inertia.gg_part,
            "total": inertia.total,
        }),
    ]

    if archive:
        def store(ar):
            ar.write_records("neutrino-mass", "results", [paper.to_record(), exact.to_record()])
            ar.write_records("neutrino-mass", "audit", audit.to_records())
        _archive(out, "neutrino-mass", config, store)
    return run


@dataclass
class ProtonRun:
    report: object
    rows: List[dict]
    files: List[Path] = field(default_factory=list)


def run_proton_scan(config: RunConfig, out: Optional[Path] = None, archive: bool = True) -> ProtonRun:
    out = Path(out or config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    constants = config.constants

    eta_e = figure_eta(config)
    target_ratio = constants.m_e / constants.m_p
    template = ProtonSpec.from_constants(constants, n=0.0, coulomb_sign=config.coulomb_sign)
    n_values = list(np.linspace(config.n_lo, config.n_hi, config.n_points))

    report = calibrate_n(template, eta_e, target_ratio, n_values, PROTON_N_CANDIDATES)

    rows = []
    for row in report.rows:
        record = row.to_record()
        flipped = ProtonSpec.from_constants(constants, n=row.n, coulomb_sign=-config.coulomb_sign)
        try:
            record["s0_flipped"] = find_s0(flipped)[0]
        except ProtonError:
            record["s0_flipped"] = None
        rows.append(record)

    run = ProtonRun(report, rows)
    run.files += [
        write_records(out / "proton_scan.csv", rows),
        write_record(out / "proton_report.csv", {
            "note": EXPLORATORY_NOTE,
            "coulomb_sign": config.coulomb_sign,
            "eta_e": eta_e,
            "eta_target": report.eta_target,
            "target_ratio": report.target_ratio,
            "n_calibrated": report.n_calibrated,
            "s0": report.s0,
            "convergence_ratio": report.convergence,
        }),
    ]

    if archive:
        _archive(out, "proton-scan", config, lambda ar: ar.write_records("proton-scan", "scan", rows))
    return run


def _archive(out: Path, command: str, config: RunConfig, store):
    path = next_archive_path(out, ARCHIVE_BASE_NAME)
    with ResultsArchive(path) as ar:
        store(ar)
        ar.get(command).attrs["config"] = config.to_text()
    logger.info('archived %s results in "%s"', command, path)
