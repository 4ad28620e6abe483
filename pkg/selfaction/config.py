"""
Configuration of a run. Constants and run parameters are read from flat ``key = value`` text
files, lines starting with ``#`` and blank lines are ignored. Every key can be overridden
afterwards, the command line does so with long flags of the same name.
"""
import logging
import os
from dataclasses import dataclass, field, fields, replace, asdict
from pathlib import Path
from typing import Any, Dict, Optional

from . import settings

logger = logging.getLogger(__name__)

DEFAULT_CONSTANTS_FILE = Path(__file__).parent / "data" / "constants.cfg"
"""constants shipped with the package"""


class ConfigError(Exception):
    """Exception related to reading or validating a configuration"""


def packaged_value(key: str) -> float:
    """Value of ``key`` in the packaged constants file."""
    values = parse_config_text(DEFAULT_CONSTANTS_FILE.read_text(), str(DEFAULT_CONSTANTS_FILE))
    try:
        return values[key]
    except KeyError as exc:
        raise ConfigError(f'"{key}" missing from "{DEFAULT_CONSTANTS_FILE}"') from exc


def _packaged(key: str):
    return field(default_factory=lambda: packaged_value(key))


@dataclass(frozen=True)
class PhysicalConstants:
    """Rest energies in eV and the fine-structure constant."""
    m_e: float = settings.M_E_EV
    m_p: float = _packaged("m_p_eV")
    m_pi0: float = _packaged("m_pi0_eV")
    alpha: float = settings.ALPHA

    def __post_init__(self):
        for f in fields(self):
            if not getattr(self, f.name) > 0:
                raise ConfigError(f'constant "{f.name}" must be positive')


@dataclass(frozen=True)
class RunConfig:
    """Everything a command needs besides its own flags."""
    constants_file: Optional[Path] = None
    m_e_eV: float = settings.M_E_EV
    m_p_eV: float = _packaged("m_p_eV")
    m_pi0_eV: float = _packaged("m_pi0_eV")
    alpha: float = settings.ALPHA
    series_order: int = settings.DEFAULT_SERIES_ORDER
    quad_abs_tol: float = settings.QUAD_ABS_TOL
    quad_rel_tol: float = settings.QUAD_REL_TOL
    eta_lo: float = settings.ETA_BRACKET[0]
    eta_hi: float = settings.ETA_BRACKET[1]
    c0_mode: str = "paper"
    c0_paper: float = settings.C0_PAPER
    n_lo: float = settings.PROTON_N_RANGE[0]
    n_hi: float = settings.PROTON_N_RANGE[1]
    n_points: int = settings.PROTON_N_POINTS
    coulomb_sign: int = 1
    output_dir: Path = field(default=settings.DEFAULT_OUTPUT_DIR)

    def __post_init__(self):
        self.validate()

    def validate(self):
        """Raise ConfigError for values no command can work with."""
        if self.series_order < 1:
            raise ConfigError(f'series_order must be at least 1, got {self.series_order}')
        if self.quad_abs_tol <= 0 or self.quad_rel_tol <= 0:
            raise ConfigError('quadrature tolerances must be positive')
        if not 0 < self.eta_lo < self.eta_hi:
            raise ConfigError(f'invalid eta bracket ({self.eta_lo}, {self.eta_hi})')
        if self.c0_mode not in ("paper", "exact"):
            raise ConfigError(f'c0_mode must be "paper" or "exact", got "{self.c0_mode}"')
        if self.n_points < 1 or self.n_lo > self.n_hi or self.n_lo < 0:
            raise ConfigError(f'empty or invalid n-scan range [{self.n_lo}, {self.n_hi}] '
                f'with {self.n_points} points')
        if self.coulomb_sign not in (1, -1):
            raise ConfigError(f'coulomb_sign must be 1 or -1, got {self.coulomb_sign}')
        # builds and checks the constants
        self.constants

    @property
    def constants(self) -> PhysicalConstants:
        return PhysicalConstants(
            m_e=self.m_e_eV,
            m_p=self.m_p_eV,
            m_pi0=self.m_pi0_eV,
            alpha=self.alpha,
        )

    def with_overrides(self, **overrides) -> "RunConfig":
        """Copy with the given keys replaced, ``None`` values are ignored."""
        clean = {}
        for key, value in overrides.items():
            if value is None:
                continue
            clean[key] = _convert(key, value)
        try:
            return replace(self, **clean)
        except TypeError as exc:
            raise ConfigError(f'unknown configuration keys {sorted(clean)}') from exc

    def to_text(self) -> str:
        """Render as ``key = value`` lines in field order."""
        lines = []
        for key, value in asdict(self).items():
            if value is None:
                continue
            lines.append(f'{key} = {value}')
        return "\n".join(lines) + "\n"


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _convert(key: str, value: Any):
    if key not in _FIELD_TYPES:
        raise ConfigError(f'unknown configuration key "{key}"')
    if not isinstance(value, str):
        return value

    kind = _FIELD_TYPES[key]
    try:
        if kind in (int, "int"):
            return int(value)
        if kind in (float, "float"):
            return float(value)
        if key in ("output_dir", "constants_file"):
            return Path(value)
        return value
    except ValueError as exc:
        raise ConfigError(f'invalid value "{value}" for key "{key}"') from exc


def parse_config_text(text: str, source: str = "<string>") -> Dict[str, Any]:
    """Parse ``key = value`` lines into a dict of converted values."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f'{source}:{lineno}: expected "key = value", got "{raw}"')
        key, value = (part.strip() for part in line.split("=", 1))
        values[key] = _convert(key, value)
    return values


def load_config(path=None, **overrides) -> RunConfig:
    """Read a configuration file and apply overrides.

    Parameters
    ----------
    path : str or Path, optional
        config file; if omitted, the file named by the environment variable
        ``SELFACTION_CONFIG`` is used, and failing that the packaged constants
    **overrides
        keys replacing file values, ``None`` values are ignored

    Raises
    ------
    ConfigError
        if the file cannot be read or holds invalid keys or values
    """
    if path is None:
        path = os.environ.get(settings.CONFIG_ENV_VAR) or DEFAULT_CONSTANTS_FILE
    path = Path(path)

    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f'cannot read config file "{path}"') from exc

    values = parse_config_text(text, str(path))
    values.setdefault("constants_file", path)
    logger.info('loaded %d keys from "%s"', len(values), path)

    try:
        config = RunConfig(**values)
    except TypeError as exc:
        raise ConfigError(f'invalid keys in "{path}"') from exc
    return config.with_overrides(**overrides)
