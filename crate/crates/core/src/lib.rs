//! Exact certification of Coxeter realizations of quantum groups.
//!
//! The crate builds finite-type Cartan data, Coxeter elements and their
//! Cayley transforms, the twisted embeddings of the quantum group, and the
//! affine formal-series data, and checks every associated identity with
//! exact arithmetic over `Q(v)`, `q = v^2`.

// matrix code reads best with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod cartan;
pub mod coxeter;
pub mod error;
pub mod linalg;
pub mod ncalg;
pub mod qnum;
pub mod qseries;
pub mod verdict;

pub use cartan::{make_cartan, symmetrize, validate, CartanDatum, Family};
pub use coxeter::{
    cayley_pairing, coxeter_matrix, epsilon_matrix, reflection_matrix, solve_n, CoxeterMethod,
    CoxeterRealizationData, Permutation,
};
pub use error::{Error, Result};
pub use ncalg::{NCAlgebra, NCExpr, NCTerm};
pub use qnum::{LaurentPoly, RatFunc, Rational};
pub use qseries::{AffineTwistData, MLPoly, TruncSeries, Var};
pub use verdict::Verdict;
