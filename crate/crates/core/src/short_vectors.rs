//! Enumeration of lattice points inside an ellipsoid `x^T A x <= bound`.
//!
//! `A` is positive definite. Completing the square from the first variable
//! gives `q(x) = sum_k D_k (x_k + sum_{i>k} m_ki x_i)^2`, so the last
//! coordinate is constrained alone, the one before it by the last, and so
//! on. Every coefficient is rational; they are cleared into integers once so
//! the inner loop only needs integer square roots.
//!
//! The inner loop runs on `i128` when a crude a-priori bound on every
//! intermediate fits, and on `BigInt` otherwise.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{common_denominator, IntMatrix};

/// The integer data of a completed-square decomposition.
#[derive(Clone, Debug)]
struct Scaled<T> {
    n: usize,
    /// `den[k]`: common denominator of row `k` of the multipliers.
    den: Vec<T>,
    /// `u[k][i] = den[k] * m_ki`, only `i > k` is meaningful.
    u: Vec<Vec<T>>,
    /// `w[k] = q * D_k / den[k]^2`.
    w: Vec<T>,
    /// `q * bound`.
    budget: T,
}

trait Scalar: Clone + Integer + Signed + Roots + std::fmt::Debug {
    fn from_big(x: &BigInt) -> Self;
}

impl Scalar for i128 {
    fn from_big(x: &BigInt) -> Self {
        i128::try_from(x).expect("bound check guarantees the value fits")
    }
}

impl Scalar for BigInt {
    fn from_big(x: &BigInt) -> Self {
        x.clone()
    }
}

/// Completed-square data for a positive definite integer matrix.
#[derive(Clone, Debug)]
pub struct Ellipsoid {
    n: usize,
    den: Vec<BigInt>,
    u: Vec<Vec<BigInt>>,
    w: Vec<BigInt>,
    q: BigInt,
    coord_bound_sq: Vec<BigRational>,
}

impl Ellipsoid {
    /// Fails with `NotNegativeDefinite` when `a` is not positive definite,
    /// i.e. when `-a` (the Gram matrix a caller usually holds) is not
    /// negative definite.
    pub fn new(a: &IntMatrix) -> Result<Self> {
        assert!(a.is_square());
        let n = a.rows();
        let mut work = a.to_rational();
        let mut d = Vec::with_capacity(n);
        let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
        for k in 0..n {
            let dk = work[k][k].clone();
            if !dk.is_positive() {
                return Err(Error::NotNegativeDefinite);
            }
            for i in k + 1..n {
                m[k][i] = &work[k][i] / &dk;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &dk * &m[k][i] * &m[k][j];
                    work[i][j] -= t;
                }
            }
            d.push(dk);
        }
        let den: Vec<BigInt> = (0..n).map(|k| common_denominator(&m[k][k + 1..])).collect();
        let u: Vec<Vec<BigInt>> = (0..n)
            .map(|k| {
                (0..n)
                    .map(|i| {
                        if i > k {
                            (&m[k][i] * BigRational::from_integer(den[k].clone())).to_integer()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let wr: Vec<BigRational> =
            (0..n).map(|k| &d[k] / BigRational::from_integer(&den[k] * &den[k])).collect();
        let q = common_denominator(&wr);
        let w = wr.iter().map(|x| (x * BigRational::from_integer(q.clone())).to_integer()).collect();
        let inv = a.rational_inverse().ok_or(Error::DegenerateLattice)?;
        let coord_bound_sq = (0..n).map(|i| inv[i][i].clone()).collect();
        Ok(Ellipsoid { n, den, u, w, q, coord_bound_sq })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn scaled<T: Scalar>(&self, bound: &BigInt) -> Scaled<T> {
        Scaled {
            n: self.n,
            den: self.den.iter().map(T::from_big).collect(),
            u: self.u.iter().map(|r| r.iter().map(T::from_big).collect()).collect(),
            w: self.w.iter().map(T::from_big).collect(),
            budget: T::from_big(&(&self.q * bound)),
        }
    }

    /// Whether every intermediate for `bound` provably fits in `i128`.
    fn fits_i128(&self, bound: &BigInt) -> bool {
        let limit = BigInt::one() << 120;
        let budget = &self.q * bound;
        if budget >= limit {
            return false;
        }
        // |x_i| <= sqrt(bound * (A^-1)_ii)
        let xmax: Vec<BigInt> = self
            .coord_bound_sq
            .iter()
            .map(|b| (b * BigRational::from_integer(bound.clone())).ceil().to_integer().sqrt() + 1)
            .collect();
        for k in 0..self.n {
            let mut s = &self.den[k] * &xmax[k];
            for i in k + 1..self.n {
                s += self.u[k][i].abs() * &xmax[i];
            }
            if s >= limit || self.w[k] >= limit {
                return false;
            }
        }
        true
    }

    /// Calls `visit` on every integer vector with `x^T A x <= bound`,
    /// including the origin. Stops early when `visit` breaks.
    pub fn for_each_point<F>(&self, bound: &BigInt, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(&[BigInt]) -> ControlFlow<()>,
    {
        if bound.is_negative() {
            return ControlFlow::Continue(());
        }
        if self.fits_i128(bound) {
            let s = self.scaled::<i128>(bound);
            let mut buf = vec![BigInt::zero(); self.n];
            run(&s, &mut |x: &[i128]| {
                for (b, v) in buf.iter_mut().zip(x) {
                    *b = BigInt::from(*v);
                }
                visit(&buf)
            })
        } else {
            let s = self.scaled::<BigInt>(bound);
            run(&s, &mut |x: &[BigInt]| visit(x))
        }
    }

    /// Number of integer vectors with `x^T A x <= bound`, origin included.
    pub fn count_points(&self, bound: &BigInt) -> u64 {
        if bound.is_negative() {
            return 0;
        }
        let mut count = 0u64;
        if self.fits_i128(bound) {
            let s = self.scaled::<i128>(bound);
            let _ = run(&s, &mut |_: &[i128]| {
                count += 1;
                ControlFlow::Continue(())
            });
        } else {
            let s = self.scaled::<BigInt>(bound);
            let _ = run(&s, &mut |_: &[BigInt]| {
                count += 1;
                ControlFlow::Continue(())
            });
        }
        count
    }
}

fn run<T: Scalar, F: FnMut(&[T]) -> ControlFlow<()>>(s: &Scaled<T>, visit: &mut F) -> ControlFlow<()> {
    if s.n == 0 {
        return visit(&[]);
    }
    let mut x = vec![T::zero(); s.n];
    descend(s, s.n - 1, s.budget.clone(), &mut x, visit)
}

fn descend<T: Scalar, F: FnMut(&[T]) -> ControlFlow<()>>(
    s: &Scaled<T>,
    k: usize,
    remaining: T,
    x: &mut [T],
    visit: &mut F,
) -> ControlFlow<()> {
    let mut c = T::zero();
    for i in k + 1..s.n {
        if !x[i].is_zero() {
            c = c + s.u[k][i].clone() * x[i].clone();
        }
    }
    let r = (remaining.clone() / s.w[k].clone()).sqrt();
    let den = &s.den[k];
    // -r <= den * x_k + c <= r
    let lo = -(r.clone() + c.clone()).div_floor(den);
    let hi = (r - c.clone()).div_floor(den);
    let mut xk = lo;
    while xk <= hi {
        let sk = den.clone() * xk.clone() + c.clone();
        let rest = remaining.clone() - s.w[k].clone() * sk.clone() * sk;
        x[k] = xk.clone();
        if k == 0 {
            visit(x)?;
        } else {
            descend(s, k - 1, rest, x, visit)?;
        }
        xk = xk + T::one();
    }
    x[k] = T::zero();
    ControlFlow::Continue(())
}
