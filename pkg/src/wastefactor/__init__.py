"""Waste-factor calculus for cascaded and parallel communication systems.

The waste factor W of a device or cascade is the power consumed on the
signal path divided by the delivered signal power; its dB form is the
waste figure. This package provides the stage algebra, parallel/MIMO
composition rules, datasheet-level device models, propagation helpers,
measurement-based estimation, standard-metric comparisons, and a seeded
Monte-Carlo simulator of a distributed MU-MIMO network.
"""

from .core import CascadeReport, Stage, StageFlow, cascade, power_flow, total_consumed_power, wasted_power
from .parallel import (
    Branch,
    CombiningMode,
    combine_branches,
    mino_compose,
    mino_first_stage,
    miso_compose,
    parallel_gain,
    received_power_matrix,
)
from .components import (
    Adc,
    Antenna,
    ConvertedDevice,
    Dac,
    GenericActive,
    GenericPassive,
    Lna,
    Mixer,
    PhaseShifter,
    PowerAmplifier,
    RuSpec,
    UeSpec,
    build_ru,
    build_ue,
    end_to_end,
    pae_from_walker,
    reference_ru_spec,
    reference_ue_spec,
    stage_of,
)
from .channel import (
    ApertureAntenna,
    PathLossModel,
    aperture_gain_db,
    effective_channel,
    fspl_1m_db,
    noise_power_dbm,
    path_loss_db,
)
from .estimate import PowerSample, WasteFit, fit_waste_factor, load_power_log
from .metrics import (
    EquipmentReading,
    PowerStrategy,
    RateStrategy,
    StrategyFigure,
    classify_strategy,
    ee_bs,
    ee_network,
    ee_ru,
    ee_site,
    ee_vs_wf_sweep,
)
from .netsim import (
    BAND_PRESETS,
    CampaignSpec,
    DropResult,
    Layout,
    Scenario,
    assign_serving_sets,
    evaluate_drop,
    evaluate_links,
    generate_layout,
    run_campaign,
)

__version__ = "0.1.0"
