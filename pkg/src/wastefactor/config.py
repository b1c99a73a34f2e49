"""INI-style configuration documents for the CLI.

Sections: ``[cascade]``, ``[ru]``, ``[ue]``, ``[channel]``, ``[scenario]``,
``[sweep]``, ``[metrics]``. Keys mirror the spec/scenario field names in
snake_case with units in the suffix (``_db``, ``_dbm``, ``_w``, ``_ghz``,
``_m``, ...). Unknown sections or keys are rejected with their location.
Every key has a default drawn from the reference parameter tables, so an
empty ``[ru]``, ``[ue]`` or ``[scenario]`` section reproduces the
reference setup.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

from .components import (
    Adc,
    Antenna,
    Dac,
    Lna,
    Mixer,
    PhaseShifter,
    PowerAmplifier,
    RuSpec,
    UeSpec,
)
from .core import Stage
from .metrics import EquipmentReading
from .netsim import CampaignSpec, Scenario


class ConfigError(ValueError):
    """Invalid configuration; the message carries the file location."""


_BOOL_VALUES = {
    "1": True, "true": True, "yes": True, "on": True,
    "0": False, "false": False, "no": False, "off": False,
}


def _parse_bool(raw: str) -> bool:
    try:
        return _BOOL_VALUES[raw.strip().lower()]
    except KeyError:
        raise ValueError(f"expected a boolean, got {raw!r}") from None


def _parse_float(raw: str) -> float:
    return float(raw)

def _parse_int(raw: str) -> int:
    return int(raw, 10)

def _parse_str(raw: str) -> str:
    return raw.strip()

def _parse_float_list(raw: str) -> tuple[float, ...]:
    items = [part.strip() for part in raw.split(",") if part.strip()]
    if not items:
        raise ValueError("expected a comma-separated list of numbers")
    return tuple(float(part) for part in items)

def _parse_int_list(raw: str) -> tuple[int, ...]:
    items = [part.strip() for part in raw.split(",") if part.strip()]
    if not items:
        raise ValueError("expected a comma-separated list of integers")
    return tuple(int(part, 10) for part in items)

def _parse_str_list(raw: str) -> tuple[str, ...]:
    items = [part.strip() for part in raw.split(",") if part.strip()]
    if not items:
        raise ValueError("expected a comma-separated list")
    return tuple(items)

def _parse_multiline(raw: str) -> tuple[str, ...]:
    return tuple(line.strip() for line in raw.splitlines() if line.strip())


# section -> key -> parser
_SCHEMA: dict[str, dict[str, Callable[[str], Any]]] = {
    "cascade": {
        "source_power_w": _parse_float,
        "stages": _parse_multiline,
    },
    "ru": {
        "dac_efficiency": _parse_float,
        "mixer_conversion_loss_db": _parse_float,
        "mixer_insertion_loss_db": _parse_float,
        "phase_shifter_insertion_loss_db": _parse_float,
        "phase_shifter_reflection_loss_db": _parse_float,
        "phase_shifter_vswr": _parse_float,
        "pa_pae": _parse_float,
        "pa_gain_db": _parse_float,
        "pa_quiescent_w": _parse_float,
        "antenna_efficiency": _parse_float,
        "antenna_vswr": _parse_float,
        "include_mismatch": _parse_bool,
        "n_tx": _parse_int,
        "lo_power_w": _parse_float,
    },
    "ue": {
        "antenna_efficiency": _parse_float,
        "antenna_vswr": _parse_float,
        "include_mismatch": _parse_bool,
        "lna_gain_db": _parse_float,
        "lna_quiescent_w": _parse_float,
        "phase_shifter_insertion_loss_db": _parse_float,
        "phase_shifter_reflection_loss_db": _parse_float,
        "mixer_conversion_loss_db": _parse_float,
        "mixer_insertion_loss_db": _parse_float,
        "adc_fom_j": _parse_float,
        "adc_sample_rate_hz": _parse_float,
        "adc_bits": _parse_int,
        "n_rx": _parse_int,
        "lo_power_w": _parse_float,
    },
    "channel": {
        "frequency_ghz": _parse_float,
        "ple": _parse_float,
        "sigma_db": _parse_float,
        "distance_m": _parse_float,
        "g_tx_db": _parse_float,
        "g_rx_db": _parse_float,
    },
    "scenario": {
        "frequency_ghz": _parse_float,
        "antenna_mode": _parse_str,
        "n_bs": _parse_int,
        "n_ue": _parse_int,
        "region_radius_m": _parse_float,
        "bs_height_m": _parse_float,
        "ue_height_m": _parse_float,
        "min_bs_separation_m": _parse_float,
        "serving_radius_m": _parse_float,
        "bandwidth_mhz": _parse_float,
        "target_snr_db": _parse_float,
        "ue_noise_figure_db": _parse_float,
        "per_link_cap_dbm": _parse_float,
        "per_bs_budget_dbm": _parse_float,
        "w_bs": _parse_float,
        "g_bs_db": _parse_float,
        "w_ue": _parse_float,
        "g_ue_db": _parse_float,
        "p_non_path_bs_w": _parse_float,
        "p_non_path_ue_w": _parse_float,
        "ple": _parse_float,
        "sigma_db": _parse_float,
        "apply_shadowing": _parse_bool,
        "fallback_nearest": _parse_bool,
        "power_allocation": _parse_str,
        "scale_non_path_per_area": _parse_bool,
        "seed": _parse_int,
    },
    "sweep": {
        "frequencies_ghz": _parse_float_list,
        "antenna_modes": _parse_str_list,
        "n_bs": _parse_int_list,
        "seeds": _parse_int,
        "omni_per_link_cap_dbm": _parse_float,
        "wf_c_db_start": _parse_float,
        "wf_c_db_stop": _parse_float,
        "wf_c_db_step": _parse_float,
    },
    "metrics": {
        "readings": _parse_multiline,
    },
}


@dataclass(frozen=True)
class ConfigDocument:
    """Parsed and schema-checked configuration."""

    path: Path
    sections: dict[str, dict[str, Any]]

    def get(self, section: str, key: str, default: Any = None) -> Any:
        return self.sections.get(section, {}).get(key, default)

    def has_section(self, section: str) -> bool:
        return section in self.sections


def load_config(path: str | Path) -> ConfigDocument:
    path = Path(path)
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with path.open(encoding="utf-8") as handle:
            parser.read_file(handle, source=str(path))
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"{path}: malformed config: {exc}") from exc
    sections: dict[str, dict[str, Any]] = {}
    for section in parser.sections():
        if section not in _SCHEMA:
            known = ", ".join(sorted(_SCHEMA))
            raise ConfigError(
                f"{path}: unknown section [{section}]; known sections: {known}"
            )
        schema = _SCHEMA[section]
        values: dict[str, Any] = {}
        for key, raw in parser.items(section):
            if key not in schema:
                known = ", ".join(sorted(schema))
                raise ConfigError(
                    f"{path}: unknown key {key!r} in [{section}]; known keys: {known}"
                )
            try:
                values[key] = schema[key](raw)
            except ValueError as exc:
                raise ConfigError(
                    f"{path}: bad value for {key!r} in [{section}]: {exc}"
                ) from exc
        sections[section] = values
    return ConfigDocument(path=path, sections=sections)


def _section_getter(doc: ConfigDocument, section: str):
    def get(key: str, default: Any = None) -> Any:
        return doc.get(section, key, default)

    return get


def ru_spec_from_config(doc: ConfigDocument) -> RuSpec:
    """RU spec from [ru]; missing keys fall back to the reference table."""
    get = _section_getter(doc, "ru")
    try:
        return RuSpec(
            dac=Dac(efficiency=get("dac_efficiency", 0.91)),
            mixer=Mixer(
                conversion_loss_db=get("mixer_conversion_loss_db", 8.2),
                insertion_loss_db=get("mixer_insertion_loss_db", 0.0),
            ),
            phase_shifter=PhaseShifter(
                insertion_loss_db=get("phase_shifter_insertion_loss_db", 3.5),
                reflection_loss_db=get("phase_shifter_reflection_loss_db", 14.0),
                vswr=get("phase_shifter_vswr", 1.5),
            ),
            pa=PowerAmplifier(
                pae=get("pa_pae", 0.48),
                gain_db=get("pa_gain_db", 50.0),
                quiescent_w=get("pa_quiescent_w", 0.0),
            ),
            antenna=Antenna(
                radiation_efficiency=get("antenna_efficiency", 0.6),
                vswr=get("antenna_vswr", 1.5),
                include_mismatch=get("include_mismatch", True),
            ),
            n_tx=get("n_tx", 1),
            lo_power_w=get("lo_power_w", 0.0),
        )
    except ValueError as exc:
        raise ConfigError(f"{doc.path}: invalid [ru]: {exc}") from exc


def ue_spec_from_config(doc: ConfigDocument) -> UeSpec:
    """UE spec from [ue]; missing keys fall back to the reference table."""
    get = _section_getter(doc, "ue")
    try:
        adc = None
        if get("adc_fom_j") is not None:
            adc = Adc(
                fom_j=get("adc_fom_j", 0.0),
                sample_rate_hz=get("adc_sample_rate_hz", 1.0e9),
                bits=get("adc_bits", 10),
            )
        return UeSpec(
            antenna=Antenna(
                radiation_efficiency=get("antenna_efficiency", 0.7),
                vswr=get("antenna_vswr", 1.5),
                include_mismatch=get("include_mismatch", True),
            ),
            lna=Lna(
                gain_db=get("lna_gain_db", 20.0),
                quiescent_w=get("lna_quiescent_w", 0.0),
            ),
            phase_shifter=PhaseShifter(
                insertion_loss_db=get("phase_shifter_insertion_loss_db", 6.0),
                reflection_loss_db=get("phase_shifter_reflection_loss_db", 0.0),
            ),
            mixer=Mixer(
                conversion_loss_db=get("mixer_conversion_loss_db", 6.7),
                insertion_loss_db=get("mixer_insertion_loss_db", 0.0),
            ),
            adc=adc,
            n_rx=get("n_rx", 1),
            lo_power_w=get("lo_power_w", 0.0),
        )
    except ValueError as exc:
        raise ConfigError(f"{doc.path}: invalid [ue]: {exc}") from exc


def scenario_from_config(doc: ConfigDocument, seed_override: int | None = None) -> Scenario:
    get = _section_getter(doc, "scenario")
    seed = seed_override if seed_override is not None else get("seed", 0)
    try:
        return Scenario(
            frequency_hz=get("frequency_ghz", 3.5) * 1e9,
            antenna_mode=get("antenna_mode", "directional"),
            n_bs=get("n_bs", 1),
            n_ue=get("n_ue", 1024),
            region_radius_m=get("region_radius_m", 1000.0),
            bs_height_m=get("bs_height_m", 15.0),
            ue_height_m=get("ue_height_m", 1.5),
            min_bs_separation_m=get("min_bs_separation_m", 200.0),
            serving_radius_m=get("serving_radius_m", 200.0),
            bandwidth_hz=get("bandwidth_mhz", 400.0) * 1e6,
            target_snr_db=get("target_snr_db", 10.0),
            ue_noise_figure_db=get("ue_noise_figure_db", 5.0),
            per_link_cap_dbm=get("per_link_cap_dbm", 10.0),
            per_bs_budget_dbm=get("per_bs_budget_dbm", 50.0),
            w_bs=get("w_bs", 15.0),
            g_bs_db=get("g_bs_db", 30.0),
            w_ue=get("w_ue", 33.0),
            g_ue_db=get("g_ue_db", 11.0),
            p_non_path_bs_w=get("p_non_path_bs_w", 140.0),
            p_non_path_ue_w=get("p_non_path_ue_w", 1.0),
            ple=get("ple", None),
            sigma_db=get("sigma_db", None),
            apply_shadowing=get("apply_shadowing", False),
            fallback_nearest=get("fallback_nearest", True),
            power_allocation=get("power_allocation", "equal"),
            scale_non_path_per_area=get("scale_non_path_per_area", True),
            seed=seed,
        )
    except ValueError as exc:
        raise ConfigError(f"{doc.path}: invalid [scenario]: {exc}") from exc


def campaign_from_config(
    doc: ConfigDocument,
    seeds_override: int | None = None,
    base_seed_override: int | None = None,
) -> CampaignSpec:
    get = _section_getter(doc, "sweep")
    n_seeds = seeds_override if seeds_override is not None else get("seeds", 20)
    base_seed = (
        base_seed_override
        if base_seed_override is not None
        else doc.get("scenario", "seed", 0)
    )
    try:
        return CampaignSpec(
            frequencies_hz=tuple(
                f * 1e9 for f in get("frequencies_ghz", (3.5, 17.0, 28.0))
            ),
            antenna_modes=get("antenna_modes", ("omni", "directional")),
            n_bs_values=get("n_bs", (1, 5, 10, 15, 20)),
            n_seeds=n_seeds,
            base_seed=base_seed,
            omni_per_link_cap_dbm=get("omni_per_link_cap_dbm", 30.0),
        )
    except ValueError as exc:
        raise ConfigError(f"{doc.path}: invalid [sweep]: {exc}") from exc


def channel_wf_from_config(doc: ConfigDocument) -> float:
    """Effective channel waste figure (dB) from the [channel] section."""
    from .channel import PathLossModel, path_loss_db
    from .netsim import BAND_PRESETS

    get = _section_getter(doc, "channel")
    frequency_hz = get("frequency_ghz", 3.5) * 1e9
    ple = get("ple")
    if ple is None:
        if frequency_hz not in BAND_PRESETS:
            raise ConfigError(
                f"{doc.path}: [channel] needs an explicit ple for "
                f"{frequency_hz / 1e9:g} GHz"
            )
        ple = BAND_PRESETS[frequency_hz].ple
    try:
        model = PathLossModel(frequency_hz=frequency_hz, ple=ple)
        pl_db = path_loss_db(model, get("distance_m", 100.0))
    except ValueError as exc:
        raise ConfigError(f"{doc.path}: invalid [channel]: {exc}") from exc
    return max(pl_db - get("g_tx_db", 0.0) - get("g_rx_db", 0.0), 0.0)


def wf_c_sweep_from_config(doc: ConfigDocument) -> list[float]:
    """Channel waste-figure grid for the system sweep.

    Explicit wf_c_db_* keys in [sweep] win; otherwise a [channel] section
    gives a single operating point, and with neither the default 60-120 dB
    grid applies.
    """
    explicit = any(
        doc.get("sweep", key) is not None
        for key in ("wf_c_db_start", "wf_c_db_stop", "wf_c_db_step")
    )
    if not explicit and doc.has_section("channel"):
        return [channel_wf_from_config(doc)]
    start = doc.get("sweep", "wf_c_db_start", 60.0)
    stop = doc.get("sweep", "wf_c_db_stop", 120.0)
    step = doc.get("sweep", "wf_c_db_step", 1.0)
    if step <= 0.0:
        raise ConfigError(f"{doc.path}: wf_c_db_step must be > 0, got {step}")
    if stop < start:
        raise ConfigError(f"{doc.path}: wf_c_db_stop must be >= wf_c_db_start")
    n_steps = int(round((stop - start) / step))
    return [start + k * step for k in range(n_steps + 1)]


def stages_from_config(doc: ConfigDocument) -> tuple[list[Stage], float]:
    """Stage list and source power from [cascade].

    Each line of the ``stages`` value is ``label key=value ...`` with keys
    ``w``/``g`` (linear), ``w_db``/``gain_db``, or ``loss_db`` for a
    passive element.
    """
    if not doc.has_section("cascade"):
        raise ConfigError(f"{doc.path}: missing [cascade] section")
    lines = doc.get("cascade", "stages")
    if not lines:
        raise ConfigError(f"{doc.path}: [cascade] must define 'stages'")
    source_power_w = doc.get("cascade", "source_power_w", 1.0)
    if source_power_w <= 0.0:
        raise ConfigError(f"{doc.path}: source_power_w must be > 0 W")
    stages = []
    for line in lines:
        stages.append(_parse_stage_line(doc, line))
    return stages, source_power_w


def _parse_stage_line(doc: ConfigDocument, line: str) -> Stage:
    parts = line.split()
    label = parts[0]
    fields: dict[str, float] = {}
    for token in parts[1:]:
        if "=" not in token:
            raise ConfigError(
                f"{doc.path}: stage {label!r}: expected key=value, got {token!r}"
            )
        key, _, raw = token.partition("=")
        known = {"w", "g", "w_db", "gain_db", "loss_db"}
        if key not in known:
            raise ConfigError(
                f"{doc.path}: stage {label!r}: unknown key {key!r}; "
                f"known keys: {', '.join(sorted(known))}"
            )
        try:
            fields[key] = float(raw)
        except ValueError:
            raise ConfigError(
                f"{doc.path}: stage {label!r}: bad number {raw!r} for {key!r}"
            ) from None
    try:
        if "loss_db" in fields:
            if len(fields) > 1:
                raise ValueError("loss_db cannot be combined with other keys")
            return Stage.from_loss_db(fields["loss_db"], label=label)
        w = fields.get("w")
        if w is None and "w_db" in fields:
            w = 10.0 ** (fields["w_db"] / 10.0)
        g = fields.get("g")
        if g is None and "gain_db" in fields:
            g = 10.0 ** (fields["gain_db"] / 10.0)
        if w is None or g is None:
            raise ValueError("need w (or w_db) and g (or gain_db), or loss_db alone")
        return Stage(w=w, g=g, label=label)
    except ValueError as exc:
        raise ConfigError(f"{doc.path}: stage {label!r}: {exc}") from exc


_READING_KEYS = {
    "data_volume_gb",
    "p_signal_w",
    "p_non_signal_w",
    "p_non_path_w",
    "duration_h",
}


def readings_from_config(doc: ConfigDocument) -> list[tuple[str, EquipmentReading]]:
    """Named equipment readings from [metrics]: ``name key=value ...`` lines."""
    if not doc.has_section("metrics"):
        raise ConfigError(f"{doc.path}: missing [metrics] section")
    lines = doc.get("metrics", "readings")
    if not lines:
        raise ConfigError(f"{doc.path}: [metrics] must define 'readings'")
    readings = []
    for line in lines:
        parts = line.split()
        name = parts[0]
        kwargs: dict[str, float] = {}
        for token in parts[1:]:
            key, _, raw = token.partition("=")
            if key not in _READING_KEYS:
                raise ConfigError(
                    f"{doc.path}: reading {name!r}: unknown key {key!r}; "
                    f"known keys: {', '.join(sorted(_READING_KEYS))}"
                )
            try:
                kwargs[key] = float(raw)
            except ValueError:
                raise ConfigError(
                    f"{doc.path}: reading {name!r}: bad number {raw!r} for {key!r}"
                ) from None
        try:
            reading = EquipmentReading(**kwargs)
        except ValueError as exc:
            raise ConfigError(f"{doc.path}: reading {name!r}: {exc}") from exc
        readings.append((name, reading))
    return readings
