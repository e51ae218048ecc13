//! Even integral lattices given by Gram matrices.

use std::fmt;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{common_denominator, hermite_basis, IntMatrix};
use crate::short_vectors::Ellipsoid;

/// A vector of `L (x) Q` written in the basis of some fixed lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector(pub Vec<BigRational>);

impl RationalVector {
    pub fn zero(n: usize) -> Self {
        RationalVector(vec![BigRational::zero(); n])
    }

    pub fn from_integers(v: &[BigInt]) -> Self {
        RationalVector(v.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let k = BigRational::from_integer(k.clone());
        RationalVector(self.0.iter().map(|x| x * &k).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn denominator(&self) -> BigInt {
        common_denominator(&self.0)
    }
}

/// An even lattice `Z^n` with a symmetric integer Gram matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegralLattice {
    gram: IntMatrix,
}

impl IntegralLattice {
    /// Checks symmetry and evenness.
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if (0..gram.rows()).any(|i| gram[(i, i)].is_odd()) {
            return Err(Error::NotEven);
        }
        Ok(IntegralLattice { gram })
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant()
    }

    /// All leading principal minors of `-gram` are positive.
    pub fn is_negative_definite(&self) -> bool {
        self.gram.neg().leading_minors().iter().all(|m| m.is_positive())
    }

    /// `u^T G v` for rational coordinate vectors.
    pub fn pairing(&self, u: &RationalVector, v: &RationalVector) -> BigRational {
        let n = self.rank();
        let mut acc = BigRational::zero();
        for i in 0..n {
            if u.0[i].is_zero() {
                continue;
            }
            let mut row = BigRational::zero();
            for j in 0..n {
                if !v.0[j].is_zero() && !self.gram[(i, j)].is_zero() {
                    row += &v.0[j] * BigRational::from_integer(self.gram[(i, j)].clone());
                }
            }
            acc += &u.0[i] * row;
        }
        acc
    }

    pub fn norm(&self, v: &RationalVector) -> BigRational {
        self.pairing(v, v)
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &IntegralLattice) -> IntegralLattice {
        let (a, b) = (self.rank(), other.rank());
        let mut g = IntMatrix::zeros(a + b, a + b);
        for i in 0..a {
            for j in 0..a {
                g[(i, j)] = self.gram[(i, j)].clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                g[(a + i, a + j)] = other.gram[(i, j)].clone();
            }
        }
        IntegralLattice { gram: g }
    }
}

impl fmt::Debug for IntegralLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegralLattice({:?})", self.gram)
    }
}

/// Rows of `gram^-1`: the basis of `L^dual` dual to the basis of `L`.
pub fn dual_basis(lat: &IntegralLattice) -> Result<Vec<RationalVector>> {
    let inv = lat.gram.rational_inverse().ok_or(Error::DegenerateLattice)?;
    Ok(inv.into_iter().map(RationalVector).collect())
}

/// Number of vectors of norm `-2`.
pub fn count_roots(lat: &IntegralLattice) -> Result<u64> {
    let e = Ellipsoid::new(&lat.gram.neg())?;
    // even and definite: the only point of norm 0 is the origin
    Ok(e.count_points(&BigInt::from(2)) - 1)
}

/// An overlattice together with its basis in the coordinates of the
/// original lattice: basis vector `i` is `basis.row(i) / scale`.
#[derive(Clone, Debug)]
pub struct Overlattice {
    pub lattice: IntegralLattice,
    pub basis: IntMatrix,
    pub scale: BigInt,
}

impl Overlattice {
    /// Image in original coordinates of an integer vector of the overlattice.
    pub fn to_original(&self, x: &[BigInt]) -> RationalVector {
        let n = self.basis.cols();
        let mut out = vec![BigInt::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += xi * &self.basis[(i, j)];
            }
        }
        let s = BigRational::from_integer(self.scale.clone());
        RationalVector(out.into_iter().map(|v| BigRational::from_integer(v) / &s).collect())
    }

    /// Index of the original lattice in the overlattice.
    pub fn index(&self) -> BigInt {
        // det(basis / scale) = 1 / index
        let d = self.basis.determinant().abs();
        let s = num_traits::pow(self.scale.clone(), self.basis.rows());
        s / d
    }

    /// Whether the overlattice has a root that is not in the original lattice.
    pub fn has_new_root(&self) -> Result<bool> {
        let e = Ellipsoid::new(&self.lattice.gram.neg())?;
        let n = self.basis.cols();
        let mut acc = vec![BigInt::zero(); n];
        let flow = e.for_each_point(&BigInt::from(2), |x| {
            for a in acc.iter_mut() {
                a.set_zero();
            }
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for (j, a) in acc.iter_mut().enumerate() {
                    *a += xi * &self.basis[(i, j)];
                }
            }
            if acc.iter().all(|a| a.is_multiple_of(&self.scale)) {
                ControlFlow::Continue(())
            } else {
                ControlFlow::Break(())
            }
        });
        Ok(flow.is_break())
    }
}

/// The lattice generated by `lat` and `generators` (vectors of `L^dual`).
///
/// Errors with `NotIsotropic` when the result is not even and integral.
pub fn overlattice(lat: &IntegralLattice, generators: &[RationalVector]) -> Result<Overlattice> {
    let n = lat.rank();
    let scale = generators.iter().fold(BigInt::one(), |acc, g| acc.lcm(&g.denominator()));
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { scale.clone() } else { BigInt::zero() }).collect())
        .collect();
    for g in generators {
        assert_eq!(g.len(), n, "generator dimension mismatch");
        let s = BigRational::from_integer(scale.clone());
        rows.push(g.0.iter().map(|x| (x * &s).to_integer()).collect());
    }
    let basis = IntMatrix::from_big_rows(hermite_basis(&rows, n), n);
    debug_assert_eq!(basis.rows(), n);
    let raw = basis.mul(&lat.gram).mul(&basis.transpose());
    let s2 = &scale * &scale;
    let mut g = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let (q, r) = raw[(i, j)].div_rem(&s2);
            if !r.is_zero() {
                return Err(Error::NotIsotropic);
            }
            g[(i, j)] = q;
        }
    }
    let lattice = IntegralLattice::new(g).map_err(|_| Error::NotIsotropic)?;
    Ok(Overlattice { lattice, basis, scale })
}

/// Gram matrix of the overlattice generated by `lat` and `generators`.
pub fn overlattice_gram(lat: &IntegralLattice, generators: &[RationalVector]) -> Result<IntegralLattice> {
    overlattice(lat, generators).map(|o| o.lattice)
}

/// Parses the text format: the rank on the first line, then one row per line.
pub fn parse_gram(text: &str) -> Result<IntegralLattice> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let bad = |line: usize, msg: &str| Error::Parse { pos: line, msg: msg.to_string() };
    let r: usize = lines
        .next()
        .ok_or_else(|| bad(1, "missing rank"))?
        .parse()
        .map_err(|_| bad(1, "rank is not a non-negative integer"))?;
    let mut rows = Vec::with_capacity(r);
    for i in 0..r {
        let line = lines.next().ok_or_else(|| bad(i + 2, "missing row"))?;
        let row: Vec<BigInt> = line
            .split_whitespace()
            .map(|t| t.parse::<BigInt>().map_err(|_| bad(i + 2, "bad integer")))
            .collect::<Result<_>>()?;
        if row.len() != r {
            return Err(bad(i + 2, "row length does not match rank"));
        }
        rows.push(row);
    }
    if lines.next().is_some() {
        return Err(bad(r + 2, "trailing data"));
    }
    IntegralLattice::new(IntMatrix::from_big_rows(rows, r))
}
