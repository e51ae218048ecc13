//! Positive definite even binary forms `[[a, b], [b, c]]`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::IntegralLattice;
use crate::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryEvenForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl BinaryEvenForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let f = BinaryEvenForm { a: a.into(), b: b.into(), c: c.into() };
        if f.a.is_odd() || f.c.is_odd() {
            return Err(Error::InvalidForm(format!("{f}: a and c must be even")));
        }
        if !f.a.is_positive() || !f.discriminant().is_positive() {
            return Err(Error::InvalidForm(format!("{f}: not positive definite")));
        }
        Ok(f)
    }

    /// `ac - b^2`.
    pub fn discriminant(&self) -> BigInt {
        &self.a * &self.c - &self.b * &self.b
    }

    pub fn is_gl2_reduced(&self) -> bool {
        !self.b.is_negative() && &self.b * 2u32 <= self.a && self.a <= self.c
    }

    pub fn is_sl2_reduced(&self) -> bool {
        let two_b = &self.b * 2u32;
        -&self.a < two_b && two_b <= self.a && self.a <= self.c && (self.a != self.c || !self.b.is_negative())
    }

    /// The form in the basis given by the columns of `[[p, q], [r, s]]`.
    pub fn transform(&self, p: i64, q: i64, r: i64, s: i64) -> BinaryEvenForm {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let (p, q, r, s) = (BigInt::from(p), BigInt::from(q), BigInt::from(r), BigInt::from(s));
        BinaryEvenForm {
            a: a * &p * &p + b * &p * &r * 2u32 + c * &r * &r,
            b: a * &p * &q + b * (&p * &s + &q * &r) + c * &r * &s,
            c: a * &q * &q + b * &q * &s * 2u32 + c * &s * &s,
        }
    }
}

impl fmt::Display for BinaryEvenForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Gauss reduction: the representative with `-a < 2b <= a <= c`, and
/// `b >= 0` when `a = c`.
pub fn reduce_sl2(f: &BinaryEvenForm) -> BinaryEvenForm {
    let (mut a, mut b, mut c) = (f.a.clone(), f.b.clone(), f.c.clone());
    loop {
        // x -> x + k y brings 2b into (-a, a]
        let k = (&a - &b * 2u32).div_floor(&(&a * 2u32));
        if !k.is_zero() {
            c = &c + &b * &k * 2u32 + &a * &k * &k;
            b = &b + &a * &k;
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        if a == c && b.is_negative() {
            b = -b;
        }
        return BinaryEvenForm { a, b, c };
    }
}

/// The representative with `0 <= 2b <= a <= c`.
pub fn reduce_gl2(f: &BinaryEvenForm) -> BinaryEvenForm {
    let mut r = reduce_sl2(f);
    r.b = r.b.abs();
    r
}

/// All reduced even forms with `ac - b^2 = d`, sorted.
pub fn enumerate_even_forms(d: u64) -> Vec<BinaryEvenForm> {
    let mut out = Vec::new();
    let mut b = 0u64;
    while 3 * b * b <= d {
        let mut a = (2 * b).max(2);
        while a * a <= d + b * b {
            let n = d + b * b;
            if n.is_multiple_of(a) {
                let c = n / a;
                if c.is_multiple_of(2) && c >= a {
                    out.push(BinaryEvenForm { a: a.into(), b: b.into(), c: c.into() });
                }
            }
            a += 2;
        }
        b += 1;
    }
    out.sort();
    out
}

/// Number of isomorphism classes over the GL2 class: 2 when
/// `0 < 2b < a < c`, else 1.
pub fn class_fiber_count(f: &BinaryEvenForm) -> u8 {
    let two_b = &f.b * 2u32;
    if two_b.is_positive() && two_b < f.a && f.a < f.c {
        2
    } else {
        1
    }
}

pub fn form_to_lattice(f: &BinaryEvenForm) -> IntegralLattice {
    let g = IntMatrix::from_big_rows(vec![vec![f.a.clone(), f.b.clone()], vec![f.b.clone(), f.c.clone()]], 2);
    IntegralLattice::new(g).expect("even symmetric by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: i64, b: i64, c: i64) -> BinaryEvenForm {
        BinaryEvenForm::new(a, b, c).unwrap()
    }

    /// Smallest `(a, b, c)` over transforms with entries in `[-r, r]` and the
    /// requested determinant signs, restricted to reduced outputs.
    fn brute_reduce(x: &BinaryEvenForm, r: i64, allow_det_minus: bool) -> BinaryEvenForm {
        let mut best: Option<BinaryEvenForm> = None;
        for p in -r..=r {
            for q in -r..=r {
                for s_ in -r..=r {
                    for t in -r..=r {
                        let det = p * t - q * s_;
                        if det != 1 && !(allow_det_minus && det == -1) {
                            continue;
                        }
                        let y = x.transform(p, q, s_, t);
                        let ok = if allow_det_minus { y.is_gl2_reduced() } else { y.is_sl2_reduced() };
                        if ok && best.as_ref().is_none_or(|bst| y < *bst) {
                            best = Some(y);
                        }
                    }
                }
            }
        }
        best.unwrap()
    }

    #[test]
    fn gl2_examples() {
        assert_eq!(reduce_gl2(&f(4, 0, 4)), f(4, 0, 4));
        assert_eq!(reduce_gl2(&f(4, 0, 2)), f(2, 0, 4));
        assert_eq!(reduce_gl2(&f(2, -1, 4)), f(2, 1, 4));
        assert_eq!(reduce_gl2(&f(2, -1, 4)), brute_reduce(&f(2, -1, 4), 3, true));
    }

    #[test]
    fn sl2_examples() {
        assert_eq!(reduce_sl2(&f(2, 1, 4)), f(2, 1, 4));
        // 2b = -a is excluded on the left, so x -> x + y is still needed
        assert!(!f(2, -1, 4).is_sl2_reduced());
        assert_eq!(reduce_sl2(&f(2, -1, 4)), f(2, 1, 4));
        assert_eq!(brute_reduce(&f(2, -1, 4), 3, false), f(2, 1, 4));
        // translation to (4, 1, 2), swap to (2, -1, 4), translation to (2, 1, 4)
        assert_eq!(reduce_sl2(&f(4, 5, 8)), f(2, 1, 4));
        assert_eq!(brute_reduce(&f(4, 5, 8), 3, false), f(2, 1, 4));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_even_forms(4), vec![f(2, 0, 2)]);
        assert_eq!(enumerate_even_forms(16), vec![f(2, 0, 8), f(4, 0, 4)]);
        assert_eq!(enumerate_even_forms(3), vec![f(2, 1, 2)]);
    }

    #[test]
    fn fiber_counts() {
        assert_eq!(class_fiber_count(&f(4, 0, 4)), 1);
        assert_eq!(class_fiber_count(&f(2, 1, 4)), 1);
        assert_eq!(class_fiber_count(&f(14, 4, 20)), 2);
    }

    #[test]
    fn lattice_of_form() {
        let l = form_to_lattice(&f(2, 1, 4));
        assert_eq!(l.gram(), &IntMatrix::from_rows(&[[2, 1], [1, 4]]));
        assert_eq!(l.determinant(), BigInt::from(7));
    }

    #[test]
    fn invalid_forms_rejected() {
        assert!(BinaryEvenForm::new(3, 0, 4).is_err());
        assert!(BinaryEvenForm::new(2, 2, 2).is_err());
        assert!(BinaryEvenForm::new(-2, 0, -2).is_err());
    }
}
