""" (helper) Configuration classes for reading tolerances and flag defaults from jsonc. """

from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any

import commentjson  # in plaats van json: Ondersteunt // en /* */ comments

from constants import (
    TOL_PREDICATE, TOL_EIG_RESIDUAL, TOL_JACOBI_OFFDIAG, JACOBI_MAX_SWEEPS,
    TOL_GRAM_RANK, TOL_ZERO_POSTERIOR, TOL_PURITY, TOL_TRACE_PRESERVING,
    TOL_CHOI_PSD, TOL_CHOI_DISTANCE, TOL_IDENTICAL_ENDPOINTS,
    TOL_TANGENT_RANK_RATIO, TOL_JOINT_DECIDABILITY, BALL_SAMPLING_CAP,
    AVERAGE_ENUMERATION_LIMIT, MAX_LIVE_QUBITS,
)


@dataclass(frozen=True)
class Tolerances:
    """All numeric thresholds in one place."""
    predicate: float = TOL_PREDICATE
    eig_residual: float = TOL_EIG_RESIDUAL
    jacobi_offdiag: float = TOL_JACOBI_OFFDIAG
    jacobi_max_sweeps: int = JACOBI_MAX_SWEEPS
    gram_rank: float = TOL_GRAM_RANK
    zero_posterior: float = TOL_ZERO_POSTERIOR
    purity: float = TOL_PURITY
    trace_preserving: float = TOL_TRACE_PRESERVING
    choi_psd: float = TOL_CHOI_PSD
    choi_distance: float = TOL_CHOI_DISTANCE
    identical_endpoints: float = TOL_IDENTICAL_ENDPOINTS
    tangent_rank_ratio: float = TOL_TANGENT_RANK_RATIO
    joint_decidability: float = TOL_JOINT_DECIDABILITY
    ball_sampling_cap: int = BALL_SAMPLING_CAP
    average_enumeration_limit: int = AVERAGE_ENUMERATION_LIMIT
    max_live_qubits: int = MAX_LIVE_QUBITS


DEFAULT_TOLERANCES = Tolerances()


@dataclass
class QfConfig:
    """Contents of a qf-config.jsonc file.

    defaults maps a subcommand name (or "*" for all subcommands) to flag
    values, keyed by argparse dest names.
    """
    tolerances: Tolerances = DEFAULT_TOLERANCES
    defaults: dict[str, dict[str, Any]] = field(default_factory=dict)

    def defaults_for(self, command: str) -> dict[str, Any]:
        """Flag defaults for one subcommand; specific entries win over "*"."""
        merged = dict(self.defaults.get("*", {}))
        merged.update(self.defaults.get(command, {}))
        return merged


class ConfigLoader:
    """Configuration loader for tolerances and flag defaults."""

    @staticmethod
    def load_from_file(filepath: str | Path) -> QfConfig:
        """Load JSONC configuration and parse to a QfConfig.

        Args:
            filepath: Path to the configuration file

        Returns:
            QfConfig object

        Raises:
            FileNotFoundError: If the file doesn't exist
            Various exceptions for invalid JSON or config structure
        """
        with open(filepath, 'r', encoding='utf-8') as f:
            data = commentjson.load(f)

        try:
            tolerances = replace(DEFAULT_TOLERANCES, **data.get('tolerances', {}))
            defaults = {str(k): dict(v) for k, v in data.get('defaults', {}).items()}
        except (AttributeError, TypeError, ValueError):
            known = ", ".join(f.name for f in fields(Tolerances))
            print("Exception probable cause(s): in qf-config.jsonc "
                  "'tolerances' may only contain the keys "
                  f"{known}, and 'defaults' must map subcommand names "
                  "to objects of flag values.")
            raise

        return QfConfig(tolerances=tolerances, defaults=defaults)

    @staticmethod
    def load_from_file_optional(filepath: str | Path) -> QfConfig:
        """Load JSONC configuration, returning the default config if the file doesn't exist."""
        if not Path(filepath).exists():
            return QfConfig()

        return ConfigLoader.load_from_file(filepath)
