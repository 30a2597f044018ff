//! Multivariate Laurent polynomials, truncated series, and the identities
//! of the affine structure functions `F_ij`.

pub mod affine;
pub mod appendix;
pub mod fseries;
mod mlpoly;
mod series;
pub mod zpoly;

pub use affine::{
    affine_series_pack, check_affine_pack, check_kq, check_kq_direct, check_kq_log,
    generalized_character_check, quadratic_character_check, serre_character_check, solve_kq,
    solve_kq_general, AffinePairSeries, AffineTwistData,
};
pub use appendix::{
    jing_identity, jing_polynomial, serre_series_identity, serre_series_polynomial,
};
pub use fseries::{
    build_f, check_dichotomy, check_fg_constraints, check_fg_table, taylor_solve_f, FEntry, FTable,
};
pub use mlpoly::{mono, Exps, MLPoly, Var, NVARS};
pub use series::TruncSeries;
pub use zpoly::{ZPoly, ZRat};
