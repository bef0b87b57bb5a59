//! Coefficient formulas, each paired with an independent route.

mod calibrate;
mod convention;
mod direct;
mod residue;
mod spec;
mod table;
mod tilde;
mod xi;
mod zeros;

pub use calibrate::{
    calibrate_bar, calibrate_hat, calibrate_tilde_negative, calibrate_xi, calibrated, tilde_series_report,
    CalibrationReport, Candidate, Deviation,
};
pub use convention::{register, registered, require, Family, Orientation, SumBound, SumConvention, ZeroSumConvention};
pub use direct::{coeff_direct, DirectCoefficient, DirectIntegrator, Route, Sample, DEFAULT_RESOLUTION};
pub use residue::{
    bar_formula, binomial_residue_sum, coeff_bar, coeff_hat, hat_formula, s_sum, s_sum_with, HatConvention, SeriesValue,
};
pub use spec::{inv_zeta_value, CustomFn, FunctionSpec, WeightVariant};
pub use table::{
    check_method, compute_table, meta_hash, table_meta, CoefficientTable, Method, SeriesForm, TableMeta, TableSettings,
};
pub use tilde::{
    coeff_tilde_negative, coeff_tilde_negative_calibrated, coeff_tilde_series, tilde_first_term,
    tilde_first_term_rederived, tilde_negative_formula, tilde_pole_term, TildeConvention, TildeSeries,
};
pub use xi::{
    coeff_xi, theta_log_integral, theta_lower_integral, theta_upper_integral, xi_residue_at_zero, xi_residue_sum,
    xi_theta_formula, XiConvention, XiForm, XiMethod, XiPoint,
};
pub use zeros::{parse_zero_file, ZeroTable};
