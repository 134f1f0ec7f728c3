//! Kernel and rank of the horospherical map on divisor spaces.

use serde::Serialize;

use super::divisor::Divisor;
use super::group::{group_tables, nonzero_points, TorsionPoint};
use super::isom::horospherical;
use super::linalg::RationalMatrix;
use crate::error::Result;
use crate::exact::{periodic_bernoulli, Rational};

/// Column `t` holds `rho^k(delta_t)` evaluated on every coset representative.
fn horospherical_matrix(k: usize, n: u32) -> Result<(RationalMatrix, Vec<TorsionPoint>)> {
    let points = nonzero_points(n);
    let cosets = group_tables(n)?.cosets.len();
    let mut m = RationalMatrix::zeros(cosets, points.len());
    for (j, t) in points.iter().enumerate() {
        let image = horospherical(
            k,
            &Divisor::delta(n, t.t1 as i64, t.t2 as i64, Rational::one())?,
        )?;
        for (i, (_, v)) in image.values().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    Ok((m, points))
}

/// Basis of `ker rho^k` inside the maps on `E[N] \ 0`, optionally cut down to
/// those of total degree zero.
pub fn kernel_basis(k: usize, n: u32, restrict_degree_zero: bool) -> Result<Vec<Divisor>> {
    let (mut m, points) = horospherical_matrix(k, n)?;
    if restrict_degree_zero {
        let mut rows: Vec<Vec<Rational>> = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect())
            .collect();
        rows.push(vec![Rational::one(); points.len()]);
        m = RationalMatrix::from_rows(rows);
    }
    m.nullspace()
        .into_iter()
        .map(|v| Divisor::from_terms(n, points.iter().copied().zip(v)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurjectivityReport {
    pub k: usize,
    #[serde(rename = "N")]
    pub n: u32,
    pub target_dimension: usize,
    /// Rank on all maps `E[N] \ 0 -> Q`.
    pub full_rank: usize,
    /// Rank on maps `E[N] \ 0 -> Q` with total weight zero.
    pub degree_zero_rank: usize,
    /// Rank on degree-zero divisors of `E[N]`, the origin carrying `-sum psi`.
    pub degree_zero_divisor_rank: usize,
    pub surjective: bool,
}

/// Ranks of `rho^k` on the three candidate source spaces, against
/// `dim Q[Isom]^(k)`.  The verdict refers to degree-zero divisors on `E[N]`.
pub fn surjectivity_report(k: usize, n: u32) -> Result<SurjectivityReport> {
    let (m, points) = horospherical_matrix(k, n)?;
    let target_dimension = group_tables(n)?.isom_dimension(k);
    let full_rank = m.rank();

    // delta_t - delta_{t_last}: a basis of the weight-zero maps on E[N] \ 0.
    let last = points.len() - 1;
    let diff_rows: Vec<Vec<Rational>> = (0..m.rows())
        .map(|i| (0..last).map(|j| m.get(i, j) - m.get(i, last)).collect())
        .collect();
    let degree_zero_rank = RationalMatrix::from_rows(diff_rows).rank();

    // delta_t - delta_0; rho^k(delta_0) is the constant N^k/(k!(k+2)) B_{k+2}(0).
    let origin = Rational::from_integer(n as i64).pow(k as i32)
        / (Rational::factorial(k as u32) * Rational::from_integer(k as i64 + 2))
        * periodic_bernoulli(k + 2, &Rational::zero());
    let origin_rows: Vec<Vec<Rational>> = (0..m.rows())
        .map(|i| (0..points.len()).map(|j| m.get(i, j) - &origin).collect())
        .collect();
    let degree_zero_divisor_rank = RationalMatrix::from_rows(origin_rows).rank();

    Ok(SurjectivityReport {
        k,
        n,
        target_dimension,
        full_rank,
        degree_zero_rank,
        degree_zero_divisor_rank,
        surjective: degree_zero_divisor_rank == target_dimension,
    })
}
