from .disentanglement import eval_disentanglement, param_for_fraction
from .informativeness import best_constant_rmse, eval_informativeness, train_fv_probe
from .invariance import eval_invariance
from .pequivariance import eval_p_equivariance
from .report import (
    AXES,
    BUCKET_FRACTIONS,
    BUCKET_LABELS,
    AxisReport,
    BucketResult,
    DisentanglementGrid,
    read_report,
    report_from_dict,
    report_to_dict,
    write_report,
)
from .requivariance import EquivarianceModel, ParamProjector, eval_r_equivariance
from .training import default_train_config

__all__ = [
    "AXES",
    "BUCKET_FRACTIONS",
    "BUCKET_LABELS",
    "AxisReport",
    "BucketResult",
    "DisentanglementGrid",
    "EquivarianceModel",
    "ParamProjector",
    "best_constant_rmse",
    "default_train_config",
    "eval_disentanglement",
    "eval_informativeness",
    "eval_invariance",
    "eval_p_equivariance",
    "eval_r_equivariance",
    "param_for_fraction",
    "read_report",
    "report_from_dict",
    "report_to_dict",
    "train_fv_probe",
    "write_report",
]
