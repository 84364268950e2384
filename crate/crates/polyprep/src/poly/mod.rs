//! Polynomial tooling, GQSP phase solving, the eigenvalue-transform circuit
//! and amplitude amplification of the linear encoding.

mod amplify;
mod completion;
mod gqet;
mod gqsp;
mod polynomial;
mod scaling;

pub use amplify::{
    amplified_prepare, amplify_prepare, build_u_aff_amplified, build_u_linear_amplified,
    exact_schedule, fixed_point_schedule, sign_polynomial, sign_polynomial_with_gap, Amplification,
    SignPolynomial, MIN_OVERLAP,
};
pub use completion::{
    complementary_polynomial, completion_residual, poly_roots, CIRCLE_SAMPLES, COMPLETION_TOL,
};
pub use gqet::{build_gqet, gqet_phases, walk_circuit, walk_helpers, Gqet};
pub use gqsp::{build_gqsp_circuit, gqsp_in_place, gqsp_phases, phases_from_pair, PhaseSequence};
pub use polynomial::{
    chebyshev_to_monomial, eval_signal, max_abs_on, monomial_to_chebyshev, parse_coefficient,
    parse_coefficients, rolle_error_bound, Polynomial,
};
pub use scaling::{scaling_factor, ScalingFactorReport};
