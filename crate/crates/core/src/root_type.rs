//! Formal sums of ADE symbols and the lists built from them.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::dynkin::{self, shape_edges, Family, Graph};
use crate::error::{Error, Result};
use crate::lattice::IntegralLattice;
use crate::matrix::{smith_normal_form, IntMatrix};

/// One irreducible root system `A_n`, `D_n` or `E_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Component {
    pub family: Family,
    pub n: u32,
}

impl Component {
    pub fn new(family: Family, n: u32) -> Result<Self> {
        let ok = match family {
            Family::A => n >= 1,
            Family::D => n >= 4,
            Family::E => (6..=8).contains(&n),
        };
        if ok {
            Ok(Component { family, n })
        } else {
            Err(Error::Precondition(format!("no root system {}{}", family.letter(), n)))
        }
    }

    pub fn a(n: u32) -> Self {
        Component::new(Family::A, n).unwrap()
    }

    pub fn d(n: u32) -> Self {
        Component::new(Family::D, n).unwrap()
    }

    pub fn e(n: u32) -> Self {
        Component::new(Family::E, n).unwrap()
    }

    pub fn rank(self) -> u32 {
        self.n
    }

    pub fn root_count(self) -> u64 {
        let n = self.n as u64;
        match self.family {
            Family::A => n * n + n,
            Family::D => 2 * n * n - 2 * n,
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
        }
    }

    /// Euler number of the corresponding singular fiber.
    pub fn eu(self) -> u32 {
        match self.family {
            Family::A => self.n + 1,
            Family::D | Family::E => self.n + 2,
        }
    }

    /// Negated Cartan matrix.
    pub fn gram(self) -> IntMatrix {
        let n = self.n as usize;
        let mut g = IntMatrix::zeros(n, n);
        for i in 0..n {
            g[(i, i)] = BigInt::from(-2);
        }
        for (u, v) in shape_edges(self.family, n) {
            g[(u, v)] = BigInt::one();
            g[(v, u)] = BigInt::one();
        }
        g
    }

    /// Invariant factors (> 1) of the discriminant group, from the Smith
    /// normal form of the Gram matrix. Cached per component.
    pub fn discriminant_factors(self) -> Vec<u64> {
        static CACHE: OnceLock<Mutex<HashMap<Component, Vec<u64>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(v) = cache.lock().unwrap().get(&self) {
            return v.clone();
        }
        let snf = smith_normal_form(&self.gram());
        let v: Vec<u64> = snf.d.iter().filter(|d| !d.is_one()).map(|d| d.to_u64().unwrap()).collect();
        cache.lock().unwrap().insert(self, v.clone());
        v
    }

    fn label(self) -> u32 {
        (self.family as u32 + 1) << 16 | self.n
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.n)
    }
}

/// A formal sum of ADE components with multiplicities, kept canonical:
/// sorted by family then index, multiplicities positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RootType {
    terms: Vec<(Component, u32)>,
}

impl PartialOrd for RootType {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by canonical string, which is also the ordering of output files.
impl Ord for RootType {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

impl RootType {
    pub fn empty() -> Self {
        RootType::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Component, u32)>) -> Self {
        let mut map: std::collections::BTreeMap<Component, u32> = Default::default();
        for (c, m) in terms {
            if m > 0 {
                *map.entry(c).or_default() += m;
            }
        }
        RootType { terms: map.into_iter().collect() }
    }

    pub fn terms(&self) -> &[(Component, u32)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Components with multiplicity, in canonical order.
    pub fn components(&self) -> impl Iterator<Item = Component> + '_ {
        self.terms.iter().flat_map(|&(c, m)| std::iter::repeat_n(c, m as usize))
    }

    pub fn component_count(&self) -> usize {
        self.terms.iter().map(|t| t.1 as usize).sum()
    }

    pub fn plus(&self, other: &RootType) -> RootType {
        RootType::from_terms(self.terms.iter().chain(&other.terms).copied())
    }

    pub fn with(&self, c: Component) -> RootType {
        RootType::from_terms(self.terms.iter().copied().chain([(c, 1)]))
    }

    /// Multiplicity of `A_1`.
    pub fn a1_count(&self) -> u32 {
        self.terms.iter().find(|t| t.0 == Component::a(1)).map_or(0, |t| t.1)
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if *m > 1 {
                write!(f, "{m}")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for RootType {
    type Err = Error;

    /// `term := [multiplicity] family index`, terms joined by `+`.
    /// Error positions are 0-based byte offsets.
    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
        if bytes.is_empty() {
            return Err(err(0, "empty root type"));
        }
        let mut terms = Vec::new();
        let mut i = 0;
        loop {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mult = if i > start {
                let m: u32 = s[start..i].parse().map_err(|_| err(start, "multiplicity out of range"))?;
                if m == 0 || bytes[start] == b'0' {
                    return Err(err(start, "multiplicity must be a positive integer without leading zeros"));
                }
                m
            } else {
                1
            };
            let family = match bytes.get(i) {
                Some(b'A') => Family::A,
                Some(b'D') => Family::D,
                Some(b'E') => Family::E,
                _ => return Err(err(i, "expected family letter A, D or E")),
            };
            i += 1;
            let istart = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i == istart {
                return Err(err(i, "expected index"));
            }
            if bytes[istart] == b'0' {
                return Err(err(istart, "index has a leading zero"));
            }
            let n: u32 = s[istart..i].parse().map_err(|_| err(istart, "index out of range"))?;
            let c = Component::new(family, n).map_err(|_| err(istart, "index out of range for family"))?;
            terms.push((c, mult));
            match bytes.get(i) {
                None => break,
                Some(b'+') => i += 1,
                Some(_) => return Err(err(i, "expected '+' or end of input")),
            }
        }
        Ok(RootType::from_terms(terms))
    }
}

pub fn rank_of(s: &RootType) -> u32 {
    s.terms.iter().map(|&(c, m)| c.rank() * m).sum()
}

pub fn root_count_formula(s: &RootType) -> u64 {
    s.terms.iter().map(|&(c, m)| c.root_count() * m as u64).sum()
}

pub fn eu_of(s: &RootType) -> u32 {
    s.terms.iter().map(|&(c, m)| c.eu() * m).sum()
}

/// Block diagonal negated Cartan matrices in canonical component order.
pub fn gram_of(s: &RootType) -> IntegralLattice {
    let n = rank_of(s) as usize;
    let mut g = IntMatrix::zeros(n, n);
    let mut base = 0;
    for c in s.components() {
        let block = c.gram();
        let k = c.rank() as usize;
        for i in 0..k {
            for j in 0..k {
                g[(base + i, base + j)] = block[(i, j)].clone();
            }
        }
        base += k;
    }
    IntegralLattice::new(g).expect("Cartan blocks are symmetric and even")
}

/// Invariant factors of `D_{L(s)}` per component, concatenated.
fn discriminant_factors(s: &RootType) -> Vec<u64> {
    s.components().flat_map(Component::discriminant_factors).collect()
}

/// Minimal number of generators of the discriminant group.
pub fn discriminant_length(s: &RootType) -> usize {
    let factors = discriminant_factors(s);
    let mut primes: Vec<u64> = factors.iter().flat_map(|&f| prime_factors(f)).collect();
    primes.sort_unstable();
    primes.dedup();
    primes.iter().map(|&p| factors.iter().filter(|&&f| f % p == 0).count()).max().unwrap_or(0)
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `length(D_{L(s)}) <= 20 - rank(s)`.
pub fn check_n2(s: &RootType) -> bool {
    discriminant_length(s) as i64 <= 20 - rank_of(s) as i64
}

/// All components of rank at most `max_rank`, in canonical order.
fn components_up_to(max_rank: u32) -> Vec<Component> {
    let mut v: Vec<Component> = (1..=max_rank).map(Component::a).collect();
    v.extend((4..=max_rank).map(Component::d));
    v.extend((6..=max_rank.min(8)).map(Component::e));
    v
}

/// Depth-first enumeration of nonempty multisets of `comps` with total rank
/// at most `max_rank`. `accept` decides membership; `extend` decides whether
/// to descend further from the current multiset.
fn enumerate_multisets<A, X>(comps: &[Component], max_rank: u32, accept: A, extend: X) -> Vec<RootType>
where
    A: Fn(&RootType) -> bool + Sync,
    X: Fn(&RootType) -> bool + Sync,
{
    fn rec<A: Fn(&RootType) -> bool, X: Fn(&RootType) -> bool>(
        comps: &[Component],
        from: usize,
        cur: &mut Vec<(Component, u32)>,
        rank: u32,
        max_rank: u32,
        accept: &A,
        extend: &X,
        out: &mut Vec<RootType>,
    ) {
        for i in from..comps.len() {
            let c = comps[i];
            if rank + c.rank() > max_rank {
                continue;
            }
            match cur.last_mut() {
                Some(last) if last.0 == c => last.1 += 1,
                _ => cur.push((c, 1)),
            }
            let s = RootType { terms: cur.clone() };
            if accept(&s) {
                out.push(s.clone());
            }
            if extend(&s) {
                rec(comps, i, cur, rank + c.rank(), max_rank, accept, extend, out);
            }
            let last = cur.last_mut().unwrap();
            last.1 -= 1;
            if last.1 == 0 {
                cur.pop();
            }
        }
    }
    // split on the first component for parallelism; order restored by the sort
    let mut out: Vec<RootType> = (0..comps.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            let c = comps[i];
            if c.rank() <= max_rank {
                let mut cur = vec![(c, 1)];
                let s = RootType { terms: cur.clone() };
                if accept(&s) {
                    out.push(s.clone());
                }
                if extend(&s) {
                    rec(comps, i, &mut cur, c.rank(), max_rank, &accept, &extend, &mut out);
                }
            }
            out
        })
        .collect();
    out.sort();
    out
}

/// Root types of rank exactly `rank` with `eu <= 24`.
pub fn enumerate_rank_eu(rank: u32) -> Vec<RootType> {
    // eu - rank = #A + 2 #(D, E) only grows, so prune on it
    let budget = 24i64 - rank as i64;
    enumerate_multisets(
        &components_up_to(rank),
        rank,
        |s| rank_of(s) == rank && eu_of(s) <= 24,
        |s| (eu_of(s) as i64 - rank_of(s) as i64) <= budget,
    )
}

/// The 712 root types of rank 18 with `eu <= 24`.
pub fn enumerate_list_l() -> Vec<RootType> {
    enumerate_rank_eu(18)
}

/// `(rank-18 types satisfying the length bound, all nonempty types of rank
/// at most 18 satisfying it)`.
pub fn enumerate_n_lists() -> (Vec<RootType>, Vec<RootType>) {
    // the length only grows and the bound only shrinks along the search
    let all = enumerate_multisets(&components_up_to(18), 18, check_n2, check_n2);
    let rank18 = all.iter().filter(|s| rank_of(s) == 18).cloned().collect();
    (rank18, all)
}

/// Γ(Σ): disjoint union of the Dynkin diagrams of the components.
pub fn dynkin_graph(s: &RootType) -> Graph {
    let mut g = Graph::new(0);
    for c in s.components() {
        g.add_shape(c.family, c.n as usize, c.label());
    }
    g
}

pub fn graph_embeds(g1: &Graph, g2: &Graph) -> Option<Vec<usize>> {
    dynkin::find_embedding(g1, g2)
}

#[derive(Clone, Debug)]
pub struct ExtensionReport {
    /// `(Σ, Σ')` with Γ(Σ) embedded in Γ(Σ').
    pub witnesses: Vec<(RootType, RootType)>,
    pub failures: Vec<RootType>,
    pub rank18_count: usize,
    pub all_count: usize,
}

/// Every type of the full list embeds as a Dynkin graph into a rank-18 one.
pub fn verify_extension_lemma() -> ExtensionReport {
    let (rank18, all) = enumerate_n_lists();
    let targets: Vec<Graph> = rank18.iter().map(dynkin_graph).collect();
    let index: HashMap<&RootType, usize> = rank18.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let results: Vec<Option<usize>> = all
        .par_iter()
        .map(|s| {
            if let Some(&i) = index.get(s) {
                return Some(i);
            }
            let g = dynkin_graph(s);
            // try targets that contain every component of s first
            let mut order: Vec<usize> = (0..rank18.len()).collect();
            order.sort_by_key(|&i| std::cmp::Reverse(shared_components(s, &rank18[i])));
            order.into_iter().find(|&i| graph_embeds(&g, &targets[i]).is_some())
        })
        .collect();
    let mut witnesses = Vec::new();
    let mut failures = Vec::new();
    for (s, r) in all.iter().zip(results) {
        match r {
            Some(i) => witnesses.push((s.clone(), rank18[i].clone())),
            None => failures.push(s.clone()),
        }
    }
    ExtensionReport { witnesses, failures, rank18_count: rank18.len(), all_count: all.len() }
}

fn shared_components(a: &RootType, b: &RootType) -> u32 {
    a.terms
        .iter()
        .map(|&(c, m)| b.terms.iter().find(|t| t.0 == c).map_or(0, |t| t.1.min(m)) * c.rank())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rt(s: &str) -> RootType {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        for s in ["6A3", "2A1+4A4", "D10+E8", "A1", "A1+A2+A9+D6"] {
            assert_eq!(rt(s).to_string(), s);
        }
        assert_eq!(rt("A4+2A1+A4+A4+A4").to_string(), "2A1+4A4");
        assert!(matches!("6A3+".parse::<RootType>(), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!("6B3".parse::<RootType>(), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!("D3".parse::<RootType>(), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!("E9".parse::<RootType>(), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!("A0".parse::<RootType>(), Err(Error::Parse { .. })));
        assert!(matches!("0A1".parse::<RootType>(), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!("".parse::<RootType>(), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn formulas() {
        assert_eq!(rank_of(&rt("6A3")), 18);
        assert_eq!(rank_of(&rt("D10+E8")), 18);
        assert_eq!(rank_of(&RootType::empty()), 0);
        assert_eq!(root_count_formula(&rt("A1")), 2);
        assert_eq!(root_count_formula(&rt("D10+E8")), 420);
        assert_eq!(root_count_formula(&rt("6A3")), 72);
        assert_eq!(eu_of(&rt("6A3")), 24);
        assert_eq!(eu_of(&rt("A10+E8")), 21);
        assert_eq!(eu_of(&rt("18A1")), 36);
    }

    #[test]
    fn grams() {
        assert_eq!(gram_of(&rt("A1")).gram(), &IntMatrix::from_rows(&[[-2]]));
        assert_eq!(gram_of(&rt("A2")).gram(), &IntMatrix::from_rows(&[[-2, 1], [1, -2]]));
        assert!(gram_of(&rt("E8")).determinant().is_one());
        assert_eq!(gram_of(&rt("D5")).determinant(), BigInt::from(-4));
    }

    #[test]
    fn component_discriminants() {
        assert_eq!(Component::a(4).discriminant_factors(), vec![5]);
        assert_eq!(Component::d(5).discriminant_factors(), vec![4]);
        assert_eq!(Component::d(6).discriminant_factors(), vec![2, 2]);
        assert_eq!(Component::e(6).discriminant_factors(), vec![3]);
        assert_eq!(Component::e(7).discriminant_factors(), vec![2]);
        assert!(Component::e(8).discriminant_factors().is_empty());
    }

    #[test]
    fn n2_examples() {
        assert!(!check_n2(&rt("6A3")));
        assert!(check_n2(&rt("D10+E8")));
        assert!(check_n2(&rt("A18")));
        assert_eq!(discriminant_length(&rt("2A1+4A4")), 4);
    }

    #[test]
    fn graph_examples() {
        let g = dynkin_graph(&rt("A2"));
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        let a3 = dynkin_graph(&rt("A3"));
        assert!(graph_embeds(&g, &a3).is_some());
        assert!(graph_embeds(&dynkin_graph(&rt("2A1")), &a3).is_some());
        for n in 4..12 {
            assert!(graph_embeds(&dynkin_graph(&rt("D4")), &dynkin_graph(&rt(&format!("A{n}")))).is_none());
        }
    }
}
