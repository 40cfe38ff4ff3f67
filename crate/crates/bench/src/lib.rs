//! Inputs shared by the benchmarks in `benches/`.

use shiftlab_core::qseries::{eta_inv_pow, eta_pow};
use shiftlab_core::{QSeries, ShiftCase, Variant};

/// Two dense series with `order + 1` coefficients on the integer grid.
pub fn product_pair(order: usize) -> (QSeries, QSeries) {
    (eta_inv_pow(3, order), eta_pow(2, order))
}

pub fn case(t: &str, v: Variant, m: i64) -> ShiftCase {
    ShiftCase::from_type(t, v, m).expect("benchmark case")
}
