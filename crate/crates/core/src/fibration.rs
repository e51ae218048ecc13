//! The graph of the zero section and the reducible fibers of an elliptic
//! fibration, and embeddings of ADE configurations into it subject to the
//! (Z1)/(Z2) conditions.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::dynkin::{for_each_embedding, shape_edges, Family, Graph};
use crate::error::{Error, Result};
use crate::matrix::{rational_nullspace, IntMatrix};
use crate::root_type::{dynkin_graph, eu_of, Component, RootType};

/// Vertex index of the zero section.
pub const ZERO_SECTION: usize = 0;

#[derive(Clone, Debug)]
pub struct Fiber {
    pub component: Component,
    /// Global vertex indices; the last one meets the zero section.
    pub vertices: Vec<usize>,
    /// Vertices of multiplicity one, as a bitmask.
    pub mult_one: u64,
}

impl Fiber {
    pub fn mask(&self) -> u64 {
        self.vertices.iter().fold(0, |m, &v| m | 1 << v)
    }
}

#[derive(Clone, Debug)]
pub struct FibrationGraph {
    pub sigma: RootType,
    pub graph: Graph,
    /// Multiplicity in its fiber; 0 for the zero section.
    pub multiplicity: Vec<u32>,
    pub fiber_of: Vec<Option<usize>>,
    pub fibers: Vec<Fiber>,
}

/// Edges of the extended diagram on `0..=n`; vertex `n` is the extra node.
/// A pair listed twice meets with intersection number 2.
pub fn affine_edges(c: Component) -> Vec<(usize, usize)> {
    let n = c.n as usize;
    match c.family {
        Family::A => {
            let mut e: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
            e.push((n, 0));
            e
        }
        Family::D => {
            let mut e = shape_edges(Family::D, n);
            e.push((1, n));
            e
        }
        Family::E => {
            let mut e = shape_edges(Family::E, n);
            e.push(match n {
                6 => (5, 6),
                7 => (0, 7),
                _ => (6, 8),
            });
            e
        }
    }
}

/// Kernel of the affine Cartan matrix, primitive and positive.
pub fn fiber_multiplicities(c: Component) -> Vec<u32> {
    let k = c.n as usize + 1;
    let mut m = IntMatrix::zeros(k, k);
    for i in 0..k {
        m[(i, i)] = BigInt::from(2);
    }
    for (u, v) in affine_edges(c) {
        m[(u, v)] -= BigInt::one();
        m[(v, u)] -= BigInt::one();
    }
    let kernel = rational_nullspace(&m);
    assert_eq!(kernel.len(), 1, "affine Cartan matrix has a one-dimensional kernel");
    let v = &kernel[0];
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * num_rational::BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::from(0), |acc, x| acc.gcd(x));
    let sign = if ints.iter().any(|x| x.is_negative()) { -BigInt::one() } else { BigInt::one() };
    ints.iter().map(|x| (x * &sign / &g).to_u32().unwrap()).collect()
}

pub fn build_gamma_f(sigma_f: &RootType) -> Result<FibrationGraph> {
    if sigma_f.is_empty() {
        return Err(Error::Precondition("the fibration needs at least one reducible fiber".into()));
    }
    let mut graph = Graph::new(1);
    let mut multiplicity = vec![0];
    let mut fiber_of = vec![None];
    let mut fibers = Vec::new();
    for c in sigma_f.components() {
        let k = c.n as usize + 1;
        let base = graph.add_vertices(k);
        let edges = affine_edges(c);
        for &(u, v) in &edges {
            if edges.iter().filter(|&&e| e == (u, v) || e == (v, u)).count() > 1 {
                graph.add_heavy_edge(base + u, base + v);
            } else {
                graph.add_edge(base + u, base + v);
            }
        }
        graph.add_edge(ZERO_SECTION, base + k - 1);
        let mult = fiber_multiplicities(c);
        let vertices: Vec<usize> = (base..base + k).collect();
        let mult_one = vertices.iter().zip(&mult).filter(|(_, &m)| m == 1).fold(0u64, |acc, (&v, _)| acc | 1 << v);
        multiplicity.extend(&mult);
        fiber_of.extend(std::iter::repeat_n(Some(fibers.len()), k));
        fibers.push(Fiber { component: c, vertices, mult_one });
    }
    Ok(FibrationGraph { sigma: sigma_f.clone(), graph, multiplicity, fiber_of, fibers })
}

impl FibrationGraph {
    /// Number of fibers whose multiplicity-one components all lie in `image`.
    pub fn covered_fibers(&self, image: u64) -> usize {
        self.fibers.iter().filter(|f| f.mult_one & !image == 0).count()
    }

    pub fn z1(&self, image: u64) -> bool {
        self.covered_fibers(image) <= 1
    }
}

/// Which alternative of (Z2) a witness satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Z2Clause {
    /// (a) the image avoids the zero section.
    ZeroSectionAvoided,
    /// (b) the image avoids every component of this `A_1` fiber.
    A1FiberAvoided(usize),
    /// (c) `eu(Σ_f) <= 23`.
    EulerBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Z2Kind {
    A,
    B,
    C,
}

#[derive(Clone, Debug)]
pub struct ZWitness {
    pub embedding: Vec<usize>,
    pub clause: Z2Clause,
}

impl ZWitness {
    pub fn image(&self) -> u64 {
        self.embedding.iter().fold(0, |m, &v| m | 1 << v)
    }
}

fn search(src: &Graph, gamma: &FibrationGraph, forbidden: u64) -> Option<Vec<usize>> {
    let mut found = None;
    let _ = for_each_embedding(src, &gamma.graph, forbidden, |img| gamma.z1(img), |f| {
        found = Some(f.to_vec());
        ControlFlow::Break(())
    });
    found
}

/// A (Z1) embedding satisfying the requested alternative of (Z2).
pub fn find_z_embedding_with(delta: &RootType, gamma: &FibrationGraph, eu_f: u32, kind: Z2Kind) -> Option<ZWitness> {
    let src = dynkin_graph(delta);
    match kind {
        Z2Kind::C => {
            if eu_f > 23 {
                return None;
            }
            search(&src, gamma, 0).map(|embedding| ZWitness { embedding, clause: Z2Clause::EulerBound })
        }
        Z2Kind::A => search(&src, gamma, 1 << ZERO_SECTION)
            .map(|embedding| ZWitness { embedding, clause: Z2Clause::ZeroSectionAvoided }),
        Z2Kind::B => gamma.fibers.iter().enumerate().filter(|(_, f)| f.component == Component::a(1)).find_map(|(i, f)| {
            search(&src, gamma, f.mask()).map(|embedding| ZWitness { embedding, clause: Z2Clause::A1FiberAvoided(i) })
        }),
    }
}

/// First embedding of Γ(Δ) into Γ_f with (Z1) and some alternative of (Z2),
/// trying (c), then (a), then (b).
pub fn find_z_embedding(delta: &RootType, sigma_f: &RootType, mw_trivial: bool, eu_f: u32) -> Result<Option<ZWitness>> {
    if !mw_trivial {
        return Err(Error::MwNotTrivial);
    }
    let gamma = build_gamma_f(sigma_f)?;
    Ok([Z2Kind::C, Z2Kind::A, Z2Kind::B].into_iter().find_map(|k| find_z_embedding_with(delta, &gamma, eu_f, k)))
}

/// Whether a witness really satisfies (Z1) and its stated (Z2) clause.
pub fn check_witness(delta: &RootType, gamma: &FibrationGraph, w: &ZWitness) -> bool {
    let src = dynkin_graph(delta);
    if !crate::dynkin::is_induced_embedding(&src, &gamma.graph, &w.embedding) {
        return false;
    }
    let image = w.image();
    gamma.z1(image)
        && match w.clause {
            Z2Clause::ZeroSectionAvoided => image & 1 << ZERO_SECTION == 0,
            Z2Clause::A1FiberAvoided(i) => {
                gamma.fibers.get(i).is_some_and(|f| f.component == Component::a(1) && f.mask() & image == 0)
            }
            Z2Clause::EulerBound => eu_of(&gamma.sigma) <= 23,
        }
}

#[derive(Clone, Debug)]
pub struct RemarkReport {
    pub a19: Option<ZWitness>,
    pub d19: Option<ZWitness>,
    /// Whether any induced embedding of A20 into Γ_f(A10+E8) exists.
    pub a20_embeds: bool,
}

impl RemarkReport {
    pub fn passed(&self) -> bool {
        self.a19.is_some() && self.d19.is_some() && !self.a20_embeds
    }
}

/// A19 into Γ_f(A10+E8) and D19 into Γ_f(D10+E8), both with (Z1) and (Z2).
pub fn verify_remark() -> Result<RemarkReport> {
    let a10e8: RootType = "A10+E8".parse()?;
    let d10e8: RootType = "D10+E8".parse()?;
    let a19 = find_z_embedding(&"A19".parse()?, &a10e8, true, eu_of(&a10e8))?;
    let d19 = find_z_embedding(&"D19".parse()?, &d10e8, true, eu_of(&d10e8))?;
    let gamma = build_gamma_f(&a10e8)?;
    let a20 = crate::dynkin::find_embedding(&dynkin_graph(&"A20".parse()?), &gamma.graph).is_some();
    Ok(RemarkReport { a19, d19, a20_embeds: a20 })
}
