use std::collections::BTreeMap;
use std::ops::{Index, IndexMut};

use crate::error::Result;
use crate::mpoly::{MPoly, VarId};
use crate::ratmat::RatMatrix;
use crate::rational::Rational;

/// Matrix size up to which determinants use cofactor expansion.
pub const DEFAULT_SYMBOLIC_THRESHOLD: usize = 6;

/// Dense matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<MPoly>,
}

/// A nonzero minor: the selected rows and columns (ascending, original
/// indices) and its determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub poly: MPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorSearch {
    /// Every k×k minor is the zero polynomial.
    pub all_zero: bool,
    /// First nonzero minor in enumeration order, present iff `!all_zero`.
    pub witness: Option<MinorWitness>,
    /// Determinants actually expanded (after pruning of zero rows and columns).
    pub minors_expanded: usize,
    /// Row/column subsets skipped because they contain no k×k nonzero pattern.
    pub pruned: usize,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            data: vec![MPoly::zero(); rows * cols],
        }
    }

    pub fn from_constant(m: &RatMatrix) -> Self {
        PolyMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data: m.entries().iter().cloned().map(MPoly::constant).collect(),
        }
    }

    /// Panics on ragged input.
    pub fn from_rows(cols: usize, rows: Vec<Vec<MPoly>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged polynomial matrix");
            data.extend(row);
        }
        PolyMatrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[MPoly] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(MPoly::is_zero)
    }

    pub fn variables(&self) -> Vec<VarId> {
        let mut vars: Vec<VarId> = self.data.iter().flat_map(MPoly::variables).collect();
        vars.sort();
        vars.dedup();
        vars
    }

    pub fn eval(&self, point: &BTreeMap<VarId, Rational>) -> Result<RatMatrix> {
        let values = self
            .data
            .iter()
            .map(|p| p.eval(point))
            .collect::<Result<Vec<_>>>()?;
        RatMatrix::from_row_major(self.rows, self.cols, values)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self[(i, j)].clone());
            }
        }
        PolyMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn vstack(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        PolyMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    fn row_nonzeros(&self, i: usize) -> usize {
        (0..self.cols).filter(|&j| !self[(i, j)].is_zero()).count()
    }

    fn col_nonzeros(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| !self[(i, j)].is_zero()).count()
    }

    /// Determinant with the default cofactor/Bareiss switch-over.
    pub fn det(&self) -> MPoly {
        self.det_with_threshold(DEFAULT_SYMBOLIC_THRESHOLD)
    }

    /// Cofactor expansion along the sparsest row for sizes up to `threshold`,
    /// fraction-free Bareiss elimination above it. Panics if not square.
    pub fn det_with_threshold(&self, threshold: usize) -> MPoly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows <= threshold {
            let idx: Vec<usize> = (0..self.rows).collect();
            cofactor_det(self, &idx, &idx)
        } else {
            bareiss_det(self)
        }
    }

    /// Decides whether every k×k minor is the zero polynomial.
    ///
    /// Rows and columns are ordered by ascending nonzero count, zero rows and
    /// columns are dropped, and subsets are enumerated lexicographically (rows
    /// first, then columns); the search stops at the first nonzero minor.
    pub fn all_minors_zero(&self, k: usize, threshold: usize) -> MinorSearch {
        assert!(
            k <= self.rows.min(self.cols),
            "minor size {k} exceeds {}x{}",
            self.rows,
            self.cols
        );
        let mut search = MinorSearch {
            all_zero: true,
            witness: None,
            minors_expanded: 0,
            pruned: 0,
        };
        if k == 0 {
            search.all_zero = false;
            search.witness = Some(MinorWitness {
                rows: vec![],
                cols: vec![],
                poly: MPoly::one(),
            });
            return search;
        }

        let mut row_order: Vec<(usize, usize)> = (0..self.rows)
            .map(|i| (self.row_nonzeros(i), i))
            .filter(|&(c, _)| c > 0)
            .collect();
        row_order.sort();
        let mut col_order: Vec<(usize, usize)> = (0..self.cols)
            .map(|j| (self.col_nonzeros(j), j))
            .filter(|&(c, _)| c > 0)
            .collect();
        col_order.sort();
        let row_order: Vec<usize> = row_order.into_iter().map(|(_, i)| i).collect();
        let col_order: Vec<usize> = col_order.into_iter().map(|(_, j)| j).collect();

        for row_pick in Combinations::new(row_order.len(), k) {
            let rows: Vec<usize> = row_pick.iter().map(|&p| row_order[p]).collect();
            // Columns that carry a nonzero entry in one of the chosen rows.
            let live: Vec<usize> = col_order
                .iter()
                .copied()
                .filter(|&j| rows.iter().any(|&i| !self[(i, j)].is_zero()))
                .collect();
            if live.len() < k {
                search.pruned += 1;
                continue;
            }
            for col_pick in Combinations::new(live.len(), k) {
                let mut sorted_rows = rows.clone();
                sorted_rows.sort_unstable();
                let mut sorted_cols: Vec<usize> = col_pick.iter().map(|&p| live[p]).collect();
                sorted_cols.sort_unstable();
                let sub = self.submatrix(&sorted_rows, &sorted_cols);
                if (0..k).any(|j| sub.col_nonzeros(j) == 0) {
                    search.pruned += 1;
                    continue;
                }
                search.minors_expanded += 1;
                let poly = sub.det_with_threshold(threshold);
                if !poly.is_zero() {
                    search.all_zero = false;
                    search.witness = Some(MinorWitness {
                        rows: sorted_rows,
                        cols: sorted_cols,
                        poly,
                    });
                    return search;
                }
            }
        }
        search
    }
}

impl Index<(usize, usize)> for PolyMatrix {
    type Output = MPoly;

    fn index(&self, (i, j): (usize, usize)) -> &MPoly {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut MPoly {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

fn cofactor_det(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> MPoly {
    match rows.len() {
        0 => return MPoly::one(),
        1 => return m[(rows[0], cols[0])].clone(),
        2 => {
            let a = &m[(rows[0], cols[0])] * &m[(rows[1], cols[1])];
            let b = &m[(rows[0], cols[1])] * &m[(rows[1], cols[0])];
            return &a - &b;
        }
        _ => {}
    }
    let (pos, _) = rows
        .iter()
        .enumerate()
        .map(|(p, &i)| (p, cols.iter().filter(|&&j| !m[(i, j)].is_zero()).count()))
        .min_by_key(|&(p, count)| (count, p))
        .expect("nonempty");
    let pivot_row = rows[pos];
    let rest_rows: Vec<usize> = rows.iter().copied().filter(|&i| i != pivot_row).collect();
    let mut total = MPoly::zero();
    for (q, &j) in cols.iter().enumerate() {
        let entry = &m[(pivot_row, j)];
        if entry.is_zero() {
            continue;
        }
        let rest_cols: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
        let minor = cofactor_det(m, &rest_rows, &rest_cols);
        if minor.is_zero() {
            continue;
        }
        let term = entry * &minor;
        total = if (pos + q) % 2 == 0 {
            &total + &term
        } else {
            &total - &term
        };
    }
    total
}

fn bareiss_det(m: &PolyMatrix) -> MPoly {
    let n = m.rows;
    let mut a: Vec<Vec<MPoly>> = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)].clone()).collect())
        .collect();
    let mut negate = false;
    let mut prev = MPoly::one();
    for k in 0..n.saturating_sub(1) {
        // Prefer the pivot with the fewest terms.
        let pick = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| (a[i][k].num_terms(), i));
        let Some(p) = pick else {
            return MPoly::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step is an exact division");
            }
            a[i][k] = MPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = if n == 0 { MPoly::one() } else { a[n - 1][n - 1].clone() };
    if negate {
        -d
    } else {
        d
    }
}

/// Lexicographic k-subsets of `0..n`.
struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn u(i: usize) -> MPoly {
        MPoly::var(VarId::u(i))
    }

    fn h(i: usize) -> MPoly {
        MPoly::var(VarId::h(i))
    }

    fn c(v: i64) -> MPoly {
        MPoly::constant(int(v))
    }

    /// Leibniz formula over rationals; independent of both determinant routes.
    fn leibniz(m: &RatMatrix) -> Rational {
        let n = m.rows();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = Rational::from_integer(0.into());
        permute(&mut perm, 0, m, &mut total);
        total
    }

    fn permute(perm: &mut Vec<usize>, k: usize, m: &RatMatrix, total: &mut Rational) {
        let n = perm.len();
        if k == n {
            let mut inversions = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if perm[i] > perm[j] {
                        inversions += 1;
                    }
                }
            }
            let mut prod = Rational::from_integer(1.into());
            for (i, &p) in perm.iter().enumerate() {
                prod *= &m[(i, p)];
            }
            if inversions % 2 == 0 {
                *total += prod;
            } else {
                *total -= prod;
            }
            return;
        }
        for i in k..n {
            perm.swap(k, i);
            permute(perm, k + 1, m, total);
            perm.swap(k, i);
        }
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<Vec<usize>> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn determinant_examples() {
        let m = PolyMatrix::from_rows(2, vec![vec![u(0), c(0)], vec![c(0), h(0)]]);
        assert_eq!(m.det(), &u(0) * &h(0));
        assert_eq!(PolyMatrix::zeros(0, 0).det(), MPoly::one());

        let dup = PolyMatrix::from_rows(
            3,
            vec![
                vec![u(0), c(2), h(1)],
                vec![c(1), u(1), c(3)],
                vec![u(0), c(2), h(1)],
            ],
        );
        assert!(dup.det().is_zero());
        assert!(dup.det_with_threshold(0).is_zero());
    }

    #[test]
    fn constant_determinant_matches_leibniz() {
        let m = RatMatrix::from_i64_rows(&[[2, -1, 0, 3], [1, 4, 1, 0], [0, 2, -3, 1], [5, 0, 1, 1]]);
        let expected = leibniz(&m);
        let p = PolyMatrix::from_constant(&m);
        assert_eq!(p.det().constant_value(), Some(expected.clone()));
        assert_eq!(p.det_with_threshold(0).constant_value(), Some(expected));
    }

    #[test]
    fn identity_minors() {
        let id = PolyMatrix::from_constant(&RatMatrix::identity(3));
        let s = id.all_minors_zero(3, DEFAULT_SYMBOLIC_THRESHOLD);
        assert!(!s.all_zero);
        assert_eq!(s.witness.unwrap().poly, MPoly::one());
    }

    #[test]
    fn rank_one_matrix_has_no_nonzero_2x2_minor() {
        // Outer product of (u1, 2, h1) and (1, u2).
        let col = [u(0), c(2), h(0)];
        let row = [c(1), u(1)];
        let rows = col
            .iter()
            .map(|a| row.iter().map(|b| a * b).collect())
            .collect();
        let m = PolyMatrix::from_rows(2, rows);
        let s = m.all_minors_zero(2, DEFAULT_SYMBOLIC_THRESHOLD);
        assert!(s.all_zero);
        assert!(s.witness.is_none());
        assert_eq!(s.minors_expanded, 3);
        let s1 = m.all_minors_zero(1, DEFAULT_SYMBOLIC_THRESHOLD);
        assert!(!s1.all_zero);
    }

    #[test]
    fn witness_is_first_in_enumeration_order() {
        // Row 2 is the sparsest nonzero row, so it is tried first.
        let m = PolyMatrix::from_rows(
            2,
            vec![vec![u(0), u(1)], vec![c(0), c(0)], vec![c(0), h(0)]],
        );
        let s = m.all_minors_zero(1, DEFAULT_SYMBOLIC_THRESHOLD);
        let w = s.witness.unwrap();
        assert_eq!((w.rows, w.cols), (vec![2], vec![1]));
        assert_eq!(w.poly, h(0));
    }

    fn random_poly_matrix(rng: &mut ChaCha8Rng, n: usize) -> PolyMatrix {
        let rows = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let mut p = MPoly::zero();
                        for v in [u(0), u(1), h(0)] {
                            let k: i64 = rng.random_range(-2..3);
                            p = &p + &(&c(k) * &v);
                        }
                        if rng.random_bool(0.3) {
                            MPoly::zero()
                        } else {
                            p
                        }
                    })
                    .collect()
            })
            .collect();
        PolyMatrix::from_rows(n, rows)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn det_agrees_with_evaluation(seed in any::<u64>(), n in 0usize..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_poly_matrix(&mut rng, n);
            let cof = m.det_with_threshold(DEFAULT_SYMBOLIC_THRESHOLD);
            let bar = m.det_with_threshold(0);
            prop_assert_eq!(&cof, &bar);
            for _ in 0..10 {
                let pt = BTreeMap::from([
                    (VarId::u(0), int(rng.random_range(-50..51))),
                    (VarId::u(1), int(rng.random_range(-50..51))),
                    (VarId::h(0), int(rng.random_range(1..51))),
                ]);
                let value = m.eval(&pt).unwrap();
                prop_assert_eq!(cof.eval(&pt).unwrap(), leibniz(&value));
            }
        }
    }
}
