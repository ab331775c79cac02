"""Localized concept drift benchmark on the Agrawal stream."""

from subdrift._core import (
    Attribute,
    CommissionRule,
    Dataset,
    DdmConfig,
    DdmDetector,
    DecisionTree,
    Detector,
    DetectorStatus,
    DriftSchedule,
    DriftStream,
    EddmConfig,
    EddmDetector,
    ExperimentConfig,
    FhddmConfig,
    FhddmDetector,
    HddmADetector,
    HddmConfig,
    MetricsRow,
    Record,
    Rng,
    RunResult,
    RunSpec,
    Slice,
    StreamSample,
    Subgroup,
    SubgroupGenResult,
    calibrate_thresholds,
    classify,
    evaluate,
    generate_subgroup,
    label_with_drift,
    mix_probability,
    parse_config_file,
    perturb,
    run_all,
    run_experiment,
    run_spec,
    sample_record,
    slice_probability,
    youden_threshold,
)

__all__ = [name for name in dir() if not name.startswith("_")]
