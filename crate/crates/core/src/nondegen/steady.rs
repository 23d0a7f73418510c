use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::netmodel::NetworkMatrices;
use crate::ratmat::RatMatrix;
use crate::rational::Rational;

/// Degeneracy data of one concrete point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteadyStateCheck {
    pub kappa: Vec<Rational>,
    pub x: Vec<Rational>,
    /// `N (κ ∘ x^B)`.
    pub residual: Vec<Rational>,
    pub residual_zero: bool,
    /// `N diag(κ ∘ x^B) Bᵀ diag(x⁻¹)`, s×n.
    pub jacobian: RatMatrix,
    /// Rank of `[jacobian; W]`.
    pub stacked_rank: usize,
    pub degenerate: bool,
}

fn exponent(b: &Rational) -> Result<i32> {
    b.to_integer()
        .to_i32()
        .ok_or_else(|| Error::InvalidInput(format!("exponent {b} out of range")))
}

/// `x^B`: entry `i` is `Π_j x_j^{B[j,i]}`.
fn monomials(b: &RatMatrix, x: &[Rational]) -> Result<Vec<Rational>> {
    (0..b.cols())
        .map(|i| {
            let mut v = Rational::from_integer(BigInt::from(1));
            for (j, xj) in x.iter().enumerate() {
                let e = exponent(&b[(j, i)])?;
                if e != 0 {
                    v *= xj.pow(e);
                }
            }
            Ok(v)
        })
        .collect()
}

fn check_inputs(mats: &NetworkMatrices, kappa: &[Rational], x: &[Rational]) -> Result<()> {
    if kappa.len() != mats.r {
        return Err(Error::DimensionMismatch(format!(
            "{} rate constants for {} reactions",
            kappa.len(),
            mats.r
        )));
    }
    if x.len() != mats.n {
        return Err(Error::DimensionMismatch(format!(
            "{} concentrations for {} species",
            x.len(),
            mats.n
        )));
    }
    if let Some(i) = kappa.iter().position(|k| !k.is_positive()) {
        return Err(Error::DomainViolation(format!(
            "rate constant {} must be positive, got {}",
            i + 1,
            kappa[i]
        )));
    }
    if let Some(j) = x.iter().position(Zero::is_zero) {
        return Err(Error::DomainViolation(format!(
            "concentration {} is zero",
            j + 1
        )));
    }
    Ok(())
}

/// Exact value of `N (κ ∘ x^B)`.
pub fn evaluate_f(mats: &NetworkMatrices, kappa: &[Rational], x: &[Rational]) -> Result<Vec<Rational>> {
    check_inputs(mats, kappa, x)?;
    let rates: Vec<Rational> = monomials(&mats.b, x)?
        .into_iter()
        .zip(kappa)
        .map(|(m, k)| m * k)
        .collect();
    Ok(mats.n_mat.mul_vec(&rates))
}

/// Residual, Jacobian and degeneracy at `x` for rate constants `kappa`.
///
/// The degeneracy fields are filled in even when `x` is not a steady state;
/// `residual_zero` tells whether they are meaningful.
pub fn check_steady_state(
    mats: &NetworkMatrices,
    kappa: &[Rational],
    x: &[Rational],
) -> Result<SteadyStateCheck> {
    check_inputs(mats, kappa, x)?;
    let rates: Vec<Rational> = monomials(&mats.b, x)?
        .into_iter()
        .zip(kappa)
        .map(|(m, k)| m * k)
        .collect();
    let residual = mats.n_mat.mul_vec(&rates);
    let residual_zero = residual.iter().all(Zero::is_zero);
    let inv_x: Vec<Rational> = x.iter().map(|v| v.recip()).collect();
    let jacobian = mats
        .n_mat
        .scale_columns(&rates)
        .mul(&mats.b.transpose())
        .scale_columns(&inv_x);
    let stacked_rank = jacobian.vstack(&mats.w_mat).rank();
    Ok(SteadyStateCheck {
        kappa: kappa.to_vec(),
        x: x.to_vec(),
        residual,
        residual_zero,
        jacobian,
        stacked_rank,
        degenerate: stacked_rank < mats.n,
    })
}
