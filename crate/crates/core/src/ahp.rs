//! Factor weights from a Saaty pairwise-comparison matrix.
//!
//! The weight vector is the principal eigenvector of the positive reciprocal
//! matrix, found by power iteration and normalised to sum to one. The
//! associated eigenvalue gives the consistency index
//! `CI = (lambda_max - n) / (n - 1)` and the consistency ratio `CR = CI / RI(n)`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Saaty's random consistency index, `RI[n - 1]` for `n = 1..=15`.
pub const RANDOM_INDEX: [f64; 15] = [
    0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49, 1.51, 1.48, 1.56, 1.57, 1.59,
];

pub const MAX_FACTORS: usize = 15;
pub const CONSISTENCY_LIMIT: f64 = 0.1;

const RECIPROCAL_TOL: f64 = 1e-9;
const CONVERGENCE_TOL: f64 = 1e-10;
const MAX_ITERATIONS: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl PairwiseMatrix {
    /// Validates a square, positive, unit-diagonal reciprocal matrix.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if !(2..=MAX_FACTORS).contains(&n) {
            return Err(Error::domain(format!(
                "pairwise matrix must have between 2 and {MAX_FACTORS} factors, got {n}"
            )));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::schema(format!(
                "pairwise matrix row {} has {} entries, expected {n}",
                i + 1,
                rows[i].len()
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::schema(format!(
                        "pairwise entry ({}, {}) = {v} must be positive",
                        i + 1,
                        j + 1
                    )));
                }
            }
            if (row[i] - 1.0).abs() > RECIPROCAL_TOL {
                return Err(Error::schema(format!("pairwise diagonal entry {} is {}, expected 1", i + 1, row[i])));
            }
        }
        for (i, row) in rows.iter().enumerate() {
            for j in (i + 1)..n {
                let product = row[j] * rows[j][i];
                if (product - 1.0).abs() > RECIPROCAL_TOL {
                    return Err(Error::schema(format!(
                        "pairwise entries ({0}, {1}) = {2} and ({1}, {0}) = {3} are not reciprocal",
                        i + 1,
                        j + 1,
                        row[j],
                        rows[j][i]
                    )));
                }
            }
        }
        Ok(PairwiseMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// The perfectly consistent matrix `a_ij = w_i / w_j`.
    pub fn from_weights(w: &[f64]) -> Result<Self> {
        PairwiseMatrix::new(w.iter().map(|wi| w.iter().map(|wj| wi / wj).collect()).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    fn mul(&self, v: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.entries[i * self.n..(i + 1) * self.n]
                .iter()
                .zip(v)
                .map(|(a, b)| a * b)
                .sum();
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightReport {
    pub weights: Vec<f64>,
    pub lambda_max: f64,
    pub consistency_index: f64,
    pub consistency_ratio: f64,
    pub iterations: usize,
    /// Set when the consistency ratio exceeds [`CONSISTENCY_LIMIT`].
    pub inconsistent: bool,
}

pub fn derive_weights(m: &PairwiseMatrix) -> Result<WeightReport> {
    let n = m.n();
    let mut v = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        m.mul(&v, &mut next);
        let norm: f64 = next.iter().sum();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Numeric("power iteration diverged".into()));
        }
        next.iter_mut().for_each(|x| *x /= norm);
        let change = v
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs() / b.abs())
            .fold(0.0, f64::max);
        std::mem::swap(&mut v, &mut next);
        if change <= CONVERGENCE_TOL {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numeric(format!(
            "power iteration did not converge within {MAX_ITERATIONS} iterations"
        )));
    }
    // With v summing to one, lambda_max is the sum of A v.
    m.mul(&v, &mut next);
    let lambda_max: f64 = next.iter().sum();
    let consistency_index = if n > 1 {
        ((lambda_max - n as f64) / (n as f64 - 1.0)).max(0.0)
    } else {
        0.0
    };
    let ri = RANDOM_INDEX[n - 1];
    let consistency_ratio = if ri > 0.0 { consistency_index / ri } else { 0.0 };
    Ok(WeightReport {
        weights: v,
        lambda_max,
        consistency_index,
        consistency_ratio,
        iterations,
        inconsistent: consistency_ratio > CONSISTENCY_LIMIT,
    })
}

/// Why a weight vector was rejected.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightDiagnostic {
    /// Indices of weights outside `[0, 1]`.
    pub out_of_range: Vec<usize>,
    pub sum: f64,
    pub tolerance: f64,
}

impl std::fmt::Display for WeightDiagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if !self.out_of_range.is_empty() {
            write!(f, "weights at indices {:?} are outside [0, 1]; ", self.out_of_range)?;
        }
        write!(f, "sum {} (tolerance {} around 1)", self.sum, self.tolerance)
    }
}

pub fn validate_weights(w: &[f64], tolerance: f64) -> std::result::Result<(), WeightDiagnostic> {
    let out_of_range: Vec<usize> = w
        .iter()
        .enumerate()
        .filter(|(_, v)| !(0.0..=1.0).contains(*v))
        .map(|(i, _)| i)
        .collect();
    let sum: f64 = w.iter().sum();
    if out_of_range.is_empty() && (sum - 1.0).abs() <= tolerance {
        Ok(())
    } else {
        Err(WeightDiagnostic {
            out_of_range,
            sum,
            tolerance,
        })
    }
}
