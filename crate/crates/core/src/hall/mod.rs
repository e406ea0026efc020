//! Hall algebras of quiver representations over F_q, the twisted group ring of
//! dimension vectors, and the integration maps between them.

mod element;
mod integrate;
mod twisted;

pub use element::HallElement;
pub use integrate::{
    integrate_counting, motivic_class_total, motivic_series, riedtmann_fibre_check, verify_integration_morphism,
    IntegrationEntry, IntegrationReport, RiedtmannReport,
};
pub use twisted::TwistedSeries;

use crate::error::Result;
use crate::protoexact::Quiver;

/// Default truncation of twisted series, in total dimension.
pub const DEFAULT_TRUNCATION: usize = 6;

/// `psi(x, y) = sum_i x_i y_i - sum_{a: s->t} x_s y_t`.
pub fn euler_form(quiver: &Quiver, x: &[i64], y: &[i64]) -> Result<i64> {
    quiver.euler_form(x, y)
}

/// Matrix of `chi_op(x, y) = psi(y, x)` on unit vectors: entry `[i][j]` is `chi_op(e_i, e_j)`.
pub fn chi_op_matrix(quiver: &Quiver) -> Vec<Vec<i64>> {
    let n = quiver.num_vertices();
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    for &(s, t) in quiver.arrows() {
        m[t][s] -= 1;
    }
    m
}

/// Evaluates the bilinear form given by `m` on effective vectors.
pub fn bilinear(m: &[Vec<i64>], x: &[usize], y: &[usize]) -> i64 {
    let mut acc = 0;
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            acc += m[i][j] * xi as i64 * yj as i64;
        }
    }
    acc
}
