use num_traits::Zero;

use crate::mpoly::{MPoly, PolyMatrix, VarId};
use crate::netmodel::NetworkMatrices;
use crate::ratmat::RatMatrix;
use crate::rational::Rational;

/// `N diag(G u) Bᵀ` with `u = (u1, …, u_{r-s})` symbolic.
///
/// Entry `(i, j)` is `Σ_k N[i,k] (G u)[k] B[j,k]`, linear in `u`.
pub fn symbolic_jacobian_f(mats: &NetworkMatrices, g: &RatMatrix) -> PolyMatrix {
    assert_eq!(g.rows(), mats.r, "kernel basis must have one row per reaction");
    let gu: Vec<MPoly> = (0..mats.r)
        .map(|k| {
            let mut p = MPoly::zero();
            for l in 0..g.cols() {
                let c = &g[(k, l)];
                if !c.is_zero() {
                    p = &p + &MPoly::var(VarId::u(l)).scale(c);
                }
            }
            p
        })
        .collect();

    let mut out = PolyMatrix::zeros(mats.s, mats.n);
    for i in 0..mats.s {
        for j in 0..mats.n {
            let mut entry = MPoly::zero();
            for (k, w) in gu.iter().enumerate() {
                let coef: Rational = &mats.n_mat[(i, k)] * &mats.b[(j, k)];
                if !coef.is_zero() && !w.is_zero() {
                    entry = &entry + &w.scale(&coef);
                }
            }
            out[(i, j)] = entry;
        }
    }
    out
}

/// `[N diag(G u) Bᵀ diag(h); W]`, the Jacobian of the system restricted to
/// compatibility classes with `h = x⁻¹`.
#[allow(non_snake_case)]
pub fn symbolic_jacobian_F(mats: &NetworkMatrices, g: &RatMatrix) -> PolyMatrix {
    let mut top = symbolic_jacobian_f(mats, g);
    for j in 0..mats.n {
        let h = MPoly::var(VarId::h(j));
        for i in 0..mats.s {
            if !top[(i, j)].is_zero() {
                top[(i, j)] = &top[(i, j)] * &h;
            }
        }
    }
    top.vstack(&PolyMatrix::from_constant(&mats.w_mat))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::netmodel::parse_network;
    use crate::rational::int;

    fn mats(text: &str) -> NetworkMatrices {
        NetworkMatrices::from_network(&parse_network(text).unwrap())
    }

    #[test]
    fn single_row_example() {
        let m = mats("3 X1 + X2 -> 4 X1\n2 X1 + X2 -> 3 X2\nX1 + X2 -> 2 X1");
        // Kernel parametrization w = (u1, u2, 2u2 - u1).
        let g = RatMatrix::from_i64_rows(&[[1, 0], [0, 1], [-1, 2]]);
        let jac = symbolic_jacobian_f(&m, &g);
        assert_eq!(jac.rows(), 1);
        let expected = &(&MPoly::var(VarId::u(0)) - &MPoly::var(VarId::u(1))).scale(&int(2));
        assert_eq!(&jac[(0, 0)], expected);
        assert!(jac[(0, 1)].is_zero());
    }

    #[test]
    fn catalytic_example_is_rank_one() {
        let parsed = mats("X -> Y ; k1\nX -> Z ; k2\nY + Z -> X + Y + Z ; k3\nY + Z -> 0 ; k4");
        // Γ has full row rank, so it serves as N directly.
        let gamma = parsed.gamma.clone().unwrap();
        let m = NetworkMatrices::from_parts(gamma, parsed.b.clone(), RatMatrix::zeros(0, 3)).unwrap();
        let g = m.n_mat.kernel_basis();
        let jac = symbolic_jacobian_f(&m, &g);
        // Rows 2 and 3 coincide, row 1 is -2 times row 2.
        for j in 0..3 {
            assert_eq!(jac[(1, j)], jac[(2, j)]);
            assert_eq!(jac[(0, j)], jac[(1, j)].scale(&int(-2)));
        }
        assert!(!jac.is_zero());

        let jac = symbolic_jacobian_f(&parsed, &parsed.n_mat.kernel_basis());
        let pt = BTreeMap::from([(VarId::u(0), int(3))]);
        assert_eq!(jac.eval(&pt).unwrap().rank(), 1);
    }

    #[test]
    fn zero_exponents_give_zero_matrix() {
        let m = mats("0 -> X\n0 -> 2 Y");
        let g = m.n_mat.kernel_basis();
        assert!(symbolic_jacobian_f(&m, &g).is_zero());
    }

    #[test]
    fn stacked_calcium_matrix_has_full_rank_at_kernel_point() {
        let m = mats("0 <-> X1 ; k1, k2\nX1 + X2 -> 2 X1 ; k3\nX1 + X3 <-> X4 ; k4, k5\nX4 -> X2 + X3 ; k6");
        let w = [1, 1, 1, 2, 1, 1];
        // One-column parametrization G = w so that G·(1) = w.
        let g = RatMatrix::from_i64_rows(&w.map(|v| [v]));
        let big = symbolic_jacobian_F(&m, &g);
        assert_eq!((big.rows(), big.cols()), (4, 4));
        let mut pt = BTreeMap::from([(VarId::u(0), int(1))]);
        for j in 0..4 {
            pt.insert(VarId::h(j), int(1));
        }
        assert_eq!(big.eval(&pt).unwrap().rank(), 4);
    }

    #[test]
    fn full_rank_gamma_has_no_conservation_block() {
        let m = mats("X -> Y\nY -> 0\n0 -> X");
        assert_eq!(m.d, 0);
        let g = m.n_mat.kernel_basis();
        let f = symbolic_jacobian_f(&m, &g);
        let big = symbolic_jacobian_F(&m, &g);
        assert_eq!(big.rows(), f.rows());
        for i in 0..f.rows() {
            for j in 0..f.cols() {
                assert_eq!(big[(i, j)], &f[(i, j)] * &MPoly::var(VarId::h(j)));
            }
        }
    }
}
