//! Sparse multivariate polynomials over the rationals.
//!
//! Variables come in two families: `u1, u2, …` parametrize the kernel of the
//! reduced stoichiometric matrix and `h1, h2, …` scale the Jacobian columns.
//! Terms are stored in graded lexicographic order with `u1 > u2 > … > h1 > …`,
//! and printed from the largest term down.

mod matrix;

pub use matrix::{MinorSearch, MinorWitness, PolyMatrix, DEFAULT_SYMBOLIC_THRESHOLD};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VarKind {
    U,
    H,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VarId {
    pub kind: VarKind,
    /// 0-based; printed 1-based.
    pub index: usize,
}

impl VarId {
    pub fn u(index: usize) -> Self {
        VarId {
            kind: VarKind::U,
            index,
        }
    }

    pub fn h(index: usize) -> Self {
        VarId {
            kind: VarKind::H,
            index,
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.kind {
            VarKind::U => 'u',
            VarKind::H => 'h',
        };
        write!(f, "{prefix}{}", self.index + 1)
    }
}

/// Power product of variables; exponents are positive and sorted by variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, ea) = self.0[i];
            let (b, eb) = other.0[j];
            match a.cmp(&b) {
                Ordering::Less => {
                    out.push((a, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let d = other.0[j].1;
                j += 1;
                match e.cmp(&d) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - d)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Lexicographic comparison of exponent vectors, earlier variables first.
    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(a, ea)), Some(&(b, eb))) => match a.cmp(&b) {
                    // `self` has variable `a` that `other` lacks.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: VarId) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn variables(&self) -> Vec<VarId> {
        let mut vars: Vec<VarId> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// Exact value at `point`; every variable of `self` must be assigned.
    pub fn eval(&self, point: &BTreeMap<VarId, Rational>) -> Result<Rational> {
        self.eval_with(|v| point.get(&v))
    }

    pub fn eval_with<'a, F>(&self, lookup: F) -> Result<Rational>
    where
        F: Fn(VarId) -> Option<&'a Rational>,
    {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for &(v, e) in &m.0 {
                let x = lookup(v).ok_or(Error::MissingAssignment(v))?;
                value *= x.pow(e as i32);
            }
            total += value;
        }
        Ok(total)
    }

    /// Quotient when `divisor` divides `self` exactly, `None` otherwise.
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        let (lead_m, lead_c) = divisor.leading_term()?;
        let mut remainder = self.clone();
        let mut quotient = MPoly::zero();
        while let Some((m, c)) = remainder.leading_term() {
            let qm = m.div(lead_m)?;
            let qc = c / lead_c;
            let step = MPoly::term(qc, qm);
            remainder = &remainder - &(&step * divisor);
            quotient = &quotient + &step;
        }
        Some(quotient)
    }
}

impl From<Rational> for MPoly {
    fn from(c: Rational) -> Self {
        MPoly::constant(c)
    }
}

impl Add for &MPoly {
    type Output = MPoly;

    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;

    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;

    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;

    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;

            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;

    fn neg(self) -> MPoly {
        -&self
    }
}

/// Canonical rendering, e.g. `2*u1*h3 - 1/2*u2^2`.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let magnitude = c.abs();
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    fn u(i: usize) -> MPoly {
        MPoly::var(VarId::u(i))
    }

    fn h(i: usize) -> MPoly {
        MPoly::var(VarId::h(i))
    }

    fn c(v: i64) -> MPoly {
        MPoly::constant(int(v))
    }

    #[test]
    fn ring_examples() {
        let p = &u(0) + &h(1);
        assert_eq!(&p + &MPoly::zero(), p);
        let lhs = &(&u(0) + &u(1)) * &(&u(0) - &u(1));
        let rhs = &(&u(0) * &u(0)) - &(&u(1) * &u(1));
        assert_eq!(lhs, rhs);
        assert_eq!(&(&c(2) * &u(0)) * &(&c(3) * &h(0)), &c(6) * &(&u(0) * &h(0)));
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn evaluation() {
        let diff = &(&u(0) * &u(0)) - &(&u(1) * &u(1));
        let pt = BTreeMap::from([(VarId::u(0), int(3)), (VarId::u(1), int(3))]);
        assert_eq!(diff.eval(&pt).unwrap(), int(0));

        let p = &c(6) * &(&u(0) * &h(0));
        let pt = BTreeMap::from([(VarId::u(0), frac(1, 2)), (VarId::h(0), frac(1, 3))]);
        assert_eq!(p.eval(&pt).unwrap(), int(1));

        let p = &(&c(2) * &u(0)) - &(&c(2) * &u(1));
        let pt = BTreeMap::from([(VarId::u(0), int(2)), (VarId::u(1), int(5))]);
        assert_eq!(p.eval(&pt).unwrap(), int(-6));
    }

    #[test]
    fn missing_assignment() {
        let p = &u(0) + &h(2);
        let pt = BTreeMap::from([(VarId::u(0), int(1))]);
        match p.eval(&pt) {
            Err(Error::MissingAssignment(v)) => assert_eq!(v, VarId::h(2)),
            other => panic!("unexpected {other:?}"),
        }
        // Constants need no assignment.
        assert_eq!(c(5).eval(&BTreeMap::new()).unwrap(), int(5));
    }

    #[test]
    fn canonical_rendering() {
        let p = &(&c(2) * &(&u(0) * &h(2))) - &MPoly::term(frac(1, 2), Monomial::one().mul(&Monomial(vec![(VarId::u(1), 2)])));
        assert_eq!(p.to_string(), "2*u1*h3 - 1/2*u2^2");
        assert_eq!(MPoly::zero().to_string(), "0");
        assert_eq!((&(-&u(0)) + &c(1)).to_string(), "-u1 + 1");
        let p = &(&c(2) * &u(0)) - &(&c(2) * &u(1));
        assert_eq!(p.to_string(), "2*u1 - 2*u2");
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial(vec![(VarId::u(0), 1), (VarId::h(2), 1)]);
        let b = Monomial(vec![(VarId::u(1), 2)]);
        let lin = Monomial::var(VarId::u(0));
        assert!(a > b);
        assert!(b > lin);
        assert!(Monomial::var(VarId::u(0)) > Monomial::var(VarId::u(1)));
        assert!(Monomial::var(VarId::u(3)) > Monomial::var(VarId::h(0)));
        assert!(lin > Monomial::one());
    }

    #[test]
    fn exact_division() {
        let a = &u(0) + &h(1);
        let b = &(&u(1) * &c(3)) - &c(1);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(prod.div_exact(&a), Some(b));
        assert_eq!(u(0).div_exact(&u(1)), None);
        assert_eq!(a.div_exact(&MPoly::zero()), None);
    }

    fn arb_poly() -> impl Strategy<Value = MPoly> {
        prop::collection::vec((-3i64..4, 0u32..3, 0u32..3, 0u32..2), 0..5).prop_map(|terms| {
            let mut p = MPoly::zero();
            for (coef, e0, e1, e2) in terms {
                let mut m = Vec::new();
                if e0 > 0 {
                    m.push((VarId::u(0), e0));
                }
                if e1 > 0 {
                    m.push((VarId::u(1), e1));
                }
                if e2 > 0 {
                    m.push((VarId::h(0), e2));
                }
                p = &p + &MPoly::term(int(coef), Monomial(m));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert!((&a + &(-&a)).is_zero());
            prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn eval_is_a_homomorphism(a in arb_poly(), b in arb_poly(), x in -5i64..6, y in -5i64..6, z in -5i64..6) {
            let pt = BTreeMap::from([(VarId::u(0), int(x)), (VarId::u(1), int(y)), (VarId::h(0), int(z))]);
            let ea = a.eval(&pt).unwrap();
            let eb = b.eval(&pt).unwrap();
            prop_assert_eq!((&a * &b).eval(&pt).unwrap(), &ea * &eb);
            prop_assert_eq!((&a + &b).eval(&pt).unwrap(), ea + eb);
        }

        #[test]
        fn division_recovers_factor(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
        }
    }
}
