//! Fixtures shared by the benchmarks.

use qcox_core::cartan::{make_cartan, Family};
use qcox_core::coxeter::{solve_n, CoxeterRealizationData, Permutation};
use qcox_core::qseries::FTable;
use qcox_core::{CartanDatum, NCAlgebra, NCExpr};

/// The realization for the identity Coxeter element of a type.
pub fn realization(family: Family, rank: usize) -> CoxeterRealizationData {
    let datum = make_cartan(family, rank).expect("valid type");
    CoxeterRealizationData::new(&datum, &Permutation::identity(rank)).expect("realization")
}

pub fn f_table(datum: &CartanDatum) -> FTable {
    let n = solve_n(datum, &Permutation::identity(datum.rank), None).expect("n");
    FTable::new(datum, &n)
}

/// `(X_1^+)^3 X_2^+` and `X_2^- (X_1^-)^2`, a mixed pair for multiplication.
pub fn mixed_words(alg: &NCAlgebra) -> (NCExpr, NCExpr) {
    let x = alg.mul(&alg.pow(&alg.plus(0), 3), &alg.plus(1));
    let y = alg.mul(&alg.minus(1), &alg.pow(&alg.minus(0), 2));
    (x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        let data = realization(Family::G, 2);
        let alg = NCAlgebra::new(&data.datum);
        let (x, y) = mixed_words(&alg);
        assert!(!alg.mul(&y, &x).is_zero());
        assert_eq!(f_table(&data.datum).rank(), 2);
    }
}
