//! Randomized and exhaustive property checks. Each returns a one-line
//! summary, or a description of the first counterexample.

#![allow(dead_code)]

use std::collections::BTreeSet;

use extremal_k3::binary_form::{enumerate_even_forms, reduce_gl2, reduce_sl2, BinaryEvenForm};
use extremal_k3::discriminant::{discriminant_form, forms_isomorphic};
use extremal_k3::dynkin::Family;
use extremal_k3::lattice::count_roots;
use extremal_k3::matrix::{smith_normal_form, IntMatrix};
use extremal_k3::pipeline::{classify_one_detailed, Accepted};
use extremal_k3::root_type::{enumerate_list_l, gram_of, root_count_formula, Component, RootType};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Outcome = Result<String, String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn single_components(max_n: u32) -> Vec<Component> {
    let mut v: Vec<Component> = (1..=max_n).map(Component::a).collect();
    v.extend((4..=max_n).map(Component::d));
    v.extend((6..=max_n.min(8)).map(Component::e));
    v
}

/// A random root type of rank at most `max_rank`, nonempty.
pub fn random_root_type(r: &mut impl Rng, max_rank: u32) -> RootType {
    let target = r.gen_range(1..=max_rank);
    let mut sigma = RootType::empty();
    let mut rank = 0;
    while rank < target {
        let left = target - rank;
        let c = loop {
            let family = [Family::A, Family::D, Family::E][r.gen_range(0..3)];
            let n = r.gen_range(1..=left.min(10));
            if let Ok(c) = Component::new(family, n) {
                break c;
            }
        };
        rank += c.rank();
        sigma = sigma.with(c);
    }
    sigma
}

/// Short-vector root count against the closed formula.
pub fn root_formula(random_cases: usize) -> Outcome {
    let mut cases: Vec<RootType> = single_components(10).into_iter().map(|c| RootType::empty().with(c)).collect();
    let singles = cases.len();
    let mut r = rng(1);
    cases.extend((0..random_cases).map(|_| random_root_type(&mut r, 12)));
    for s in &cases {
        let counted = count_roots(&gram_of(s)).map_err(|e| format!("{s}: {e}"))?;
        if counted != root_count_formula(s) {
            return Err(format!("{s}: enumerated {counted}, formula {}", root_count_formula(s)));
        }
    }
    Ok(format!("{singles} components and {random_cases} random sums agree"))
}

fn random_matrix(r: &mut impl Rng) -> IntMatrix {
    let (m, n) = (r.gen_range(1..=5), r.gen_range(1..=5));
    let sparse = r.gen_bool(0.3);
    let rows: Vec<Vec<i64>> = (0..m)
        .map(|_| (0..n).map(|_| if sparse && r.gen_bool(0.6) { 0 } else { r.gen_range(-20..=20) }).collect())
        .collect();
    IntMatrix::from_rows(&rows)
}

fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}

pub fn snf_identity(cases: usize) -> Outcome {
    let mut r = rng(2);
    for _ in 0..cases {
        let g = random_matrix(&mut r);
        let s = smith_normal_form(&g);
        let prod = s.u.mul(&g).mul(&s.v);
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                let want = if i == j { s.d[i].clone() } else { BigInt::zero() };
                if prod[(i, j)] != want {
                    return Err(format!("u g v is not diag(d) for {:?}", g.to_rows()));
                }
            }
        }
        if !is_unit(&s.u.determinant()) || !is_unit(&s.v.determinant()) {
            return Err(format!("non-unimodular transform for {:?}", g.to_rows()));
        }
        if s.v.mul(&s.v_inv) != IntMatrix::identity(g.cols()) {
            return Err(format!("v_inv is not the inverse of v for {:?}", g.to_rows()));
        }
        if s.d.iter().any(|x| x.is_negative()) {
            return Err(format!("negative invariant factor for {:?}", g.to_rows()));
        }
        for w in s.d.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            if !divides {
                return Err(format!("{} does not divide {} for {:?}", w[0], w[1], g.to_rows()));
            }
        }
        if g.rows() == g.cols() && s.d.iter().product::<BigInt>() != g.determinant().abs() {
            return Err(format!("product of invariant factors is not |det| for {:?}", g.to_rows()));
        }
    }
    Ok(format!("{cases} random matrices"))
}

/// A random matrix in GL2(Z) as a product of elementary moves.
fn random_unimodular(r: &mut impl Rng) -> [i64; 4] {
    let mut m = [1i64, 0, 0, 1];
    for _ in 0..r.gen_range(1..=6) {
        let e: [i64; 4] = match r.gen_range(0..4) {
            0 => [1, r.gen_range(-3..=3), 0, 1],
            1 => [1, 0, r.gen_range(-3..=3), 1],
            2 => [0, -1, 1, 0],
            _ => [1, 0, 0, -1],
        };
        m = [m[0] * e[0] + m[1] * e[2], m[0] * e[1] + m[1] * e[3], m[2] * e[0] + m[3] * e[2], m[2] * e[1] + m[3] * e[3]];
    }
    m
}

pub fn binary_reduction(cases: usize) -> Outcome {
    let mut r = rng(3);
    for _ in 0..cases {
        let d = r.gen_range(1..=300u64);
        let forms = enumerate_even_forms(d);
        if forms.is_empty() {
            continue;
        }
        let f = &forms[r.gen_range(0..forms.len())];
        let [p, q, s, t] = random_unimodular(&mut r);
        let g = f.transform(p, q, s, t);
        if g.discriminant() != f.discriminant() {
            return Err(format!("{f} -> {g} changed the discriminant"));
        }
        let red = reduce_gl2(&g);
        if &red != f || reduce_gl2(&red) != red || !red.is_gl2_reduced() {
            return Err(format!("{g} reduces to {red}, expected {f}"));
        }
        let sl = reduce_sl2(&g);
        if reduce_sl2(&sl) != sl || !sl.is_sl2_reduced() {
            return Err(format!("{g}: SL2 reduction {sl} is not stable"));
        }
        if p * t - q * s == 1 && sl != reduce_sl2(f) {
            return Err(format!("{g} and {f} are SL2-equivalent but reduce differently"));
        }
    }
    Ok(format!("{cases} random transforms"))
}

/// Every even form of discriminant `d` with small entries, reduced.
fn brute_even_forms(d: u64) -> BTreeSet<BinaryEvenForm> {
    let d = d as i64;
    let mut out = BTreeSet::new();
    for a in (2..=2 * d + 2).step_by(2) {
        for b in -a..=a {
            let n = d + b * b;
            if n % a == 0 && (n / a) % 2 == 0 {
                out.insert(reduce_gl2(&BinaryEvenForm::new(a, b, n / a).unwrap()));
            }
        }
    }
    out
}

pub fn even_forms_complete(max_d: u64) -> Outcome {
    let mut total = 0;
    for d in 1..=max_d {
        let listed = enumerate_even_forms(d);
        let want: Vec<BinaryEvenForm> = brute_even_forms(d).into_iter().collect();
        if listed != want {
            return Err(format!("d = {d}: listed {listed:?}, brute force {want:?}"));
        }
        total += listed.len();
    }
    Ok(format!("d <= {max_d}, {total} forms"))
}

/// Every accepted overlattice over the whole list, in list order.
pub fn all_accepted() -> Result<Vec<Accepted>, String> {
    let list = enumerate_list_l();
    let mut out = Vec::new();
    for s in &list {
        out.extend(classify_one_detailed(s).map_err(|e| format!("{s}: {e}"))?);
    }
    Ok(out)
}

pub fn overlattice_determinants(accepted: &[Accepted]) -> Outcome {
    for a in accepted {
        let lhs = a.overlattice.lattice.determinant().abs() * BigInt::from(a.subgroup_order).pow(2);
        if lhs != a.lattice.determinant().abs() {
            return Err(format!("{}: |det M| |A|^2 = {lhs}, |det L| = {}", a.triple, a.lattice.determinant().abs()));
        }
        if BigInt::from(a.subgroup_order) != a.overlattice.index() {
            return Err(format!("{}: index {} but |A| = {}", a.triple, a.overlattice.index(), a.subgroup_order));
        }
    }
    Ok(format!("{} accepted overlattices", accepted.len()))
}

/// The discriminant form of the overlattice is the subquotient, and the
/// overlattice has exactly the roots of `L(Σ)`.
pub fn round_trip(accepted: &[Accepted], cases: usize) -> Outcome {
    let nontrivial: Vec<&Accepted> = accepted.iter().filter(|a| a.subgroup_order > 1).collect();
    let step = (nontrivial.len() / cases).max(1);
    let picked: Vec<&Accepted> = nontrivial.iter().step_by(step).take(cases).copied().collect();
    if picked.len() < cases {
        return Err(format!("only {} nontrivial cases", picked.len()));
    }
    for a in &picked {
        let dm = discriminant_form(&a.overlattice.lattice).map_err(|e| e.to_string())?;
        if dm.order() != a.quotient.order() || !forms_isomorphic(&dm, &a.quotient, false).map_err(|e| e.to_string())? {
            return Err(format!("{}: D_M is not A^perp / A", a.triple));
        }
        let roots = count_roots(&a.overlattice.lattice).map_err(|e| e.to_string())?;
        if roots != root_count_formula(&a.triple.sigma) {
            return Err(format!("{}: overlattice has {roots} roots", a.triple));
        }
    }
    Ok(format!("{} nontrivial overlattices", picked.len()))
}
