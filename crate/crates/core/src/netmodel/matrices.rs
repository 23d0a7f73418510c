use crate::error::{Error, Result};
use crate::netmodel::ReactionNetwork;
use crate::ratmat::RatMatrix;
use crate::rational::Rational;

/// The matrices defining the steady-state systems of a network.
///
/// `n_mat` has full row rank `s` and the same row space as Γ; `w_mat` has
/// full row rank `d = n - s` and its rows span the conservation laws
/// `ker(Γᵀ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkMatrices {
    /// Stoichiometric matrix (n×r); absent when built from raw parts.
    pub gamma: Option<RatMatrix>,
    /// Exponent matrix (n×r); reactant coefficients for parsed networks.
    pub b: RatMatrix,
    pub n_mat: RatMatrix,
    pub w_mat: RatMatrix,
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub d: usize,
}

impl NetworkMatrices {
    pub fn from_network(net: &ReactionNetwork) -> Self {
        let n = net.num_species();
        let r = net.num_reactions();
        let mut gamma = RatMatrix::zeros(n, r);
        let mut b = RatMatrix::zeros(n, r);
        for (i, reaction) in net.reactions().iter().enumerate() {
            for (s, c) in reaction.reactant.terms() {
                let c = Rational::from_integer(c.into());
                gamma[(s, i)] -= &c;
                b[(s, i)] = c;
            }
            for (s, c) in reaction.product.terms() {
                gamma[(s, i)] += Rational::from_integer(c.into());
            }
        }
        let n_mat = gamma.row_basis();
        let w_mat = gamma.left_kernel_basis();
        let s = n_mat.rows();
        NetworkMatrices {
            gamma: Some(gamma),
            b,
            n_mat,
            w_mat,
            n,
            r,
            s,
            d: n - s,
        }
    }

    /// Raw steady-state data: `n_mat` (s×r, full row rank), `b` (n×r, any
    /// integer exponents) and `w_mat` (d×n with d = n - s, full row rank).
    pub fn from_parts(n_mat: RatMatrix, b: RatMatrix, w_mat: RatMatrix) -> Result<Self> {
        let (s, r) = n_mat.shape();
        let n = b.rows();
        if b.cols() != r {
            return Err(Error::DimensionMismatch(format!(
                "N has {r} columns but B has {}",
                b.cols()
            )));
        }
        if !b.is_integer() {
            return Err(Error::InvalidInput("exponent matrix B must be integer".into()));
        }
        if r == 0 {
            return Err(Error::InvalidInput("at least one reaction is required".into()));
        }
        if s > n {
            return Err(Error::InvalidInput(format!("N has {s} rows but only {n} species")));
        }
        if n_mat.rank() != s {
            return Err(Error::InvalidInput("N must have full row rank".into()));
        }
        let d = n - s;
        if w_mat.shape() != (d, n) {
            return Err(Error::DimensionMismatch(format!(
                "W must be {d}x{n}, got {}x{}",
                w_mat.rows(),
                w_mat.cols()
            )));
        }
        if w_mat.rank() != d {
            return Err(Error::InvalidInput("W must have full row rank".into()));
        }
        Ok(NetworkMatrices {
            gamma: None,
            b,
            n_mat,
            w_mat,
            n,
            r,
            s,
            d,
        })
    }
}
