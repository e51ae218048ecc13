//! Classification of data triples `(Σ, MW, T)` for rank-18 root types.
//!
//! For each prime the isotropic subgroups `A_p` of the p-part of the
//! discriminant form are listed; a choice of one per prime gives the form
//! `prod A_p^perp / A_p`. A reduced even binary form `T` whose discriminant
//! form is isomorphic to its negative is kept when the overlattice obtained
//! from the `A_p` has no roots beyond those of `L(Σ)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::binary_form::{class_fiber_count, enumerate_even_forms, form_to_lattice, BinaryEvenForm};
use crate::discriminant::{discriminant_form, forms_isomorphic, DiscriminantForm, Element};
use crate::error::{Error, Result};
use crate::lattice::{overlattice, IntegralLattice, Overlattice, RationalVector};
use crate::root_type::{enumerate_list_l, eu_of, gram_of, rank_of, RootType};

/// One classification record.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DataTriple {
    pub sigma: RootType,
    /// Invariant factors, ascending with divisibility; empty when trivial.
    pub mw: Vec<u64>,
    pub t: BinaryEvenForm,
}

impl DataTriple {
    pub fn mw_string(&self) -> String {
        format_mw(&self.mw)
    }

    pub fn fiber_count(&self) -> u8 {
        class_fiber_count(&self.t)
    }

    pub fn mw_order(&self) -> u64 {
        self.mw.iter().product()
    }

    fn key(&self) -> (String, Vec<u64>, BinaryEvenForm) {
        (self.sigma.to_string(), self.mw.clone(), self.t.clone())
    }
}

impl PartialOrd for DataTriple {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sigma string, then MW, then `(a, b, c)`.
impl Ord for DataTriple {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

/// `sigma;mw;a;b;c`
impl fmt::Display for DataTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{};{};{}", self.sigma, self.mw_string(), self.t.a, self.t.b, self.t.c)
    }
}

/// `1` for the trivial group, otherwise dot-joined invariant factors.
pub fn format_mw(mw: &[u64]) -> String {
    if mw.is_empty() {
        "1".to_string()
    } else {
        mw.iter().map(u64::to_string).collect::<Vec<_>>().join(".")
    }
}

/// An isotropic subgroup of one p-part that leaves a quotient of length <= 2.
#[derive(Clone, Debug)]
struct Candidate {
    /// Invariant factors of the subgroup itself.
    factors: Vec<u64>,
    carriers: Vec<RationalVector>,
    quotient: DiscriminantForm,
}

/// An accepted choice with everything the property checks need.
#[derive(Clone, Debug)]
pub struct Accepted {
    pub triple: DataTriple,
    pub lattice: IntegralLattice,
    pub overlattice: Overlattice,
    /// `prod A_p^perp / A_p`.
    pub quotient: DiscriminantForm,
    pub subgroup_order: u64,
}

fn candidates_for_prime(d: &DiscriminantForm, p: u64) -> Result<Vec<Candidate>> {
    let part = d.p_part(p);
    let mut out = Vec::new();
    part.for_each_isotropic(|sub| {
        let perp = part.orthogonal_complement(&sub.generators);
        if part.quotient_length(p, sub.elements(), &perp) > 2 {
            return;
        }
        let top = part.generators_of(&perp);
        let quotient = part.subquotient(&top, &sub.generators);
        let carriers = sub.generators.iter().map(|g| part.carrier_of(g).expect("carriers present")).collect();
        out.push(Candidate { factors: subgroup_factors(&part, &sub.generators, sub.order), carriers, quotient });
    })?;
    Ok(out)
}

/// Invariant factors of a p-subgroup generated by at most two elements.
fn subgroup_factors(d: &DiscriminantForm, gens: &[Element], order: u64) -> Vec<u64> {
    let exponent = gens.iter().map(|g| d.element_order(g)).max().unwrap_or(1);
    match order {
        1 => vec![],
        o if o == exponent => vec![o],
        o => vec![o / exponent, exponent],
    }
}

/// Combines per-prime invariant factors (each of length <= 2) by CRT.
fn combine_factors(parts: &[&[u64]]) -> Vec<u64> {
    let mut small = 1u64;
    let mut large = 1u64;
    for f in parts {
        match f {
            [] => {}
            [x] => large *= x,
            [x, y] => {
                small *= x;
                large *= y;
            }
            _ => unreachable!("at most two generators"),
        }
    }
    [small, large].into_iter().filter(|&x| x > 1).collect()
}

type FormsOf = std::sync::Arc<Vec<(BinaryEvenForm, DiscriminantForm)>>;

/// Reduced even forms of each discriminant with their discriminant forms.
#[derive(Default)]
struct FormCache(Mutex<HashMap<u64, FormsOf>>);

impl FormCache {
    fn get(&self, d: u64) -> Result<FormsOf> {
        if let Some(v) = self.0.lock().unwrap().get(&d) {
            return Ok(v.clone());
        }
        let v: Vec<(BinaryEvenForm, DiscriminantForm)> = enumerate_even_forms(d)
            .into_iter()
            .map(|t| discriminant_form(&form_to_lattice(&t)).map(|df| (t, df)))
            .collect::<Result<_>>()?;
        let v = std::sync::Arc::new(v);
        self.0.lock().unwrap().insert(d, v.clone());
        Ok(v)
    }
}

fn global_forms() -> &'static FormCache {
    static CACHE: std::sync::OnceLock<FormCache> = std::sync::OnceLock::new();
    CACHE.get_or_init(FormCache::default)
}

/// Every accepted `(A, T)` for one root type, before deduplication.
pub fn classify_one_detailed(sigma: &RootType) -> Result<Vec<Accepted>> {
    if rank_of(sigma) != 18 || eu_of(sigma) > 24 {
        return Err(Error::Precondition(format!("{sigma}: need rank 18 and eu <= 24")));
    }
    let lattice = gram_of(sigma);
    let d = discriminant_form(&lattice)?;
    let primes = d.primes();
    let per_prime: Vec<Vec<Candidate>> =
        primes.iter().map(|&p| candidates_for_prime(&d, p)).collect::<Result<_>>()?;
    let forms = global_forms();
    let mut accepted = Vec::new();
    let mut choice = vec![0usize; primes.len()];
    if per_prime.iter().any(Vec::is_empty) {
        return Ok(accepted);
    }
    loop {
        let picked: Vec<&Candidate> = choice.iter().zip(&per_prime).map(|(&i, c)| &c[i]).collect();
        let quotient = picked.iter().fold(DiscriminantForm::trivial(), |acc, c| acc.direct_sum(&c.quotient));
        let disc = quotient.order();
        let mut matches = Vec::new();
        for (t, dt) in forms.get(disc)?.iter() {
            if forms_isomorphic(&quotient, dt, true)? {
                matches.push(t.clone());
            }
        }
        if !matches.is_empty() {
            let carriers: Vec<RationalVector> = picked.iter().flat_map(|c| c.carriers.iter().cloned()).collect();
            let over = overlattice(&lattice, &carriers)?;
            if !over.has_new_root()? {
                let factors: Vec<&[u64]> = picked.iter().map(|c| c.factors.as_slice()).collect();
                let mw = combine_factors(&factors);
                let subgroup_order = mw.iter().product();
                for t in matches {
                    accepted.push(Accepted {
                        triple: DataTriple { sigma: sigma.clone(), mw: mw.clone(), t },
                        lattice: lattice.clone(),
                        overlattice: over.clone(),
                        quotient: quotient.clone(),
                        subgroup_order,
                    });
                }
            }
        }
        // odometer over the per-prime lists
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(accepted);
            }
            choice[k] += 1;
            if choice[k] < per_prime[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Deduplicated data triples of one root type, sorted.
pub fn classify_one(sigma: &RootType) -> Result<Vec<DataTriple>> {
    let set: BTreeSet<DataTriple> = classify_one_detailed(sigma)?.into_iter().map(|a| a.triple).collect();
    Ok(set.into_iter().collect())
}

/// All data triples over the 712 root types, sorted.
pub fn classify_all() -> Result<Vec<DataTriple>> {
    classify_list(&enumerate_list_l())
}

pub fn classify_list(list: &[RootType]) -> Result<Vec<DataTriple>> {
    let parts: Vec<Vec<DataTriple>> = list.par_iter().map(classify_one).collect::<Result<_>>()?;
    let mut all: Vec<DataTriple> = parts.into_iter().flatten().collect();
    all.sort();
    Ok(all)
}

/// The structural invariants every emitted triple must satisfy.
pub fn check_triple(t: &DataTriple) -> std::result::Result<(), String> {
    let det = gram_of(&t.sigma).determinant().magnitude().to_u64().ok_or("determinant too large")?;
    let disc = t.t.discriminant().to_u64().ok_or("bad discriminant")?;
    if rank_of(&t.sigma) != 18 {
        return Err(format!("{t}: rank is not 18"));
    }
    if eu_of(&t.sigma) > 24 {
        return Err(format!("{t}: eu exceeds 24"));
    }
    if t.mw.len() > 2 {
        return Err(format!("{t}: MW needs more than two generators"));
    }
    if t.mw.windows(2).any(|w| w[1] % w[0] != 0) {
        return Err(format!("{t}: MW factors do not divide each other"));
    }
    if !t.t.is_gl2_reduced() {
        return Err(format!("{t}: T is not reduced"));
    }
    if disc * t.mw_order() * t.mw_order() != det {
        return Err(format!("{t}: disc(T) |MW|^2 != |det L|"));
    }
    Ok(())
}
