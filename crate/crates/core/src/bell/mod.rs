//! The generalized CHSH function on GHZ states: measurement directions, the
//! Bell operator, the closed-form GHZ correlations and the reduction to the
//! two-qubit CHSH function.

mod direction;
mod operator;
mod reduction;
mod scan;

pub use direction::{BellConfig, BlochVector, MeasurementDirection};
pub use operator::{
    bell_operator, closed_form_expectation, closed_form_value, ghz_state, product_observable, BellOperator,
    TERMS,
};
pub use reduction::{
    bell_state_correlation, gamma_map, optimal_bob_directions, reduce_projected, reduce_to_two_qubit,
    term_scale, theta_map, two_qubit_chsh_value, GammaImage, ReductionReport, TwoQubitConfig,
    EXCLUDED_SET_TOL,
};
pub use scan::{ordering_scan, ScanSummary, SCAN_TOL};
