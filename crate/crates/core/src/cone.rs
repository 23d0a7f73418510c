//! Exact feasibility of `ker(N) ∩ ℝ^r_{>0}`.
//!
//! The cone is closed under positive scaling, so a strictly positive kernel
//! vector exists iff `{N w = 0, w ≥ 1}` is feasible. Substituting
//! `w = 1 + y` gives `N y = -N·1, y ≥ 0`, which is decided by a phase-1
//! simplex over the rationals using Bland's rule.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratmat::RatMatrix;
use crate::rational::{primitive_integer, serde_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConeStatus {
    PositiveVectorExists,
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ConeWire", try_from = "ConeWire")]
pub struct ConeResult {
    pub status: ConeStatus,
    /// Primitive integer vector with `N w = 0` and every entry ≥ 1.
    pub witness: Option<Vec<Rational>>,
}

impl ConeResult {
    pub fn exists(&self) -> bool {
        self.status == ConeStatus::PositiveVectorExists
    }
}

#[derive(Serialize, Deserialize)]
struct ConeWire {
    exists: bool,
    #[serde(with = "serde_rational::opt_vec", default, skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<Rational>>,
}

impl From<ConeResult> for ConeWire {
    fn from(c: ConeResult) -> Self {
        ConeWire {
            exists: c.exists(),
            witness: c.witness,
        }
    }
}

impl TryFrom<ConeWire> for ConeResult {
    type Error = String;

    fn try_from(w: ConeWire) -> std::result::Result<Self, String> {
        if w.exists != w.witness.is_some() {
            return Err("cone witness must be present exactly when exists is true".into());
        }
        Ok(ConeResult {
            status: if w.exists {
                ConeStatus::PositiveVectorExists
            } else {
                ConeStatus::Empty
            },
            witness: w.witness,
        })
    }
}

/// Dense simplex tableau for `A x = b, x ≥ 0` with one artificial per row.
struct Phase1 {
    /// Constraint rows; the last entry of each row is the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs of the phase-1 objective; last entry is minus the objective value.
    cost: Vec<Rational>,
    basis: Vec<usize>,
    num_vars: usize,
}

impl Phase1 {
    fn new(a: &RatMatrix, b: &[Rational]) -> Self {
        let (m, n) = a.shape();
        let width = n + m + 1;
        let mut rows = Vec::with_capacity(m);
        for i in 0..m {
            let negate = b[i].is_negative();
            let mut row = vec![Rational::zero(); width];
            for j in 0..n {
                row[j] = if negate { -&a[(i, j)] } else { a[(i, j)].clone() };
            }
            row[n + i] = Rational::one();
            row[width - 1] = if negate { -&b[i] } else { b[i].clone() };
            rows.push(row);
        }
        // Reduced costs with the artificials basic: c_j - 1ᵀA_j.
        let mut cost = vec![Rational::zero(); width];
        for row in &rows {
            for j in 0..n {
                cost[j] -= &row[j];
            }
            cost[width - 1] -= &row[width - 1];
        }
        Phase1 {
            rows,
            cost,
            basis: (n..n + m).collect(),
            num_vars: n,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let width = self.cost.len();
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for j in 0..width {
                if !pivot_row[j].is_zero() {
                    row[j] -= &factor * &pivot_row[j];
                }
            }
        }
        if !self.cost[c].is_zero() {
            let factor = self.cost[c].clone();
            for (cost, p) in self.cost.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *cost -= &factor * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs to optimality; returns the optimal phase-1 objective value.
    fn solve(&mut self) -> Rational {
        let width = self.cost.len();
        let rhs = width - 1;
        // Bland: entering is the lowest-index improving column.
        while let Some(enter) = (0..rhs).find(|&j| self.cost[j].is_negative()) {
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (r, _) = leave.expect("phase-1 objective is bounded below by zero");
            self.pivot(r, enter);
        }
        -self.cost[rhs].clone()
    }

    fn primal(&self) -> Vec<Rational> {
        let rhs = self.cost.len() - 1;
        let mut x = vec![Rational::zero(); self.num_vars];
        for (i, &var) in self.basis.iter().enumerate() {
            if var < self.num_vars {
                x[var] = self.rows[i][rhs].clone();
            }
        }
        x
    }
}

/// Decides whether `ker(n_mat)` meets the open positive orthant.
pub fn positive_kernel_vector(n_mat: &RatMatrix) -> Result<ConeResult> {
    let r = n_mat.cols();
    if r == 0 {
        return Err(Error::InvalidInput("cone check needs at least one column".into()));
    }
    let ones = vec![Rational::one(); r];
    let rhs: Vec<Rational> = n_mat.mul_vec(&ones).into_iter().map(|v| -v).collect();
    let mut lp = Phase1::new(n_mat, &rhs);
    let objective = lp.solve();
    if !objective.is_zero() {
        return Ok(ConeResult {
            status: ConeStatus::Empty,
            witness: None,
        });
    }
    let w: Vec<Rational> = lp.primal().into_iter().map(|y| y + Rational::one()).collect();
    let w = primitive_integer(&w);
    if !n_mat.mul_vec(&w).iter().all(Zero::is_zero) {
        return Err(Error::Internal("cone witness is not in the kernel".into()));
    }
    if w.iter().any(|v| *v < Rational::one()) {
        return Err(Error::Internal("cone witness has an entry below 1".into()));
    }
    Ok(ConeResult {
        status: ConeStatus::PositiveVectorExists,
        witness: Some(w),
    })
}
