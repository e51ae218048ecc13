mod support {
    pub mod suites;
}

use extremal_k3::binary_form::{enumerate_even_forms, form_to_lattice};
use extremal_k3::discriminant::{discriminant_form, forms_isomorphic, DiscriminantForm};
use extremal_k3::dynkin::{find_embedding, is_induced_embedding};
use extremal_k3::fibration::{build_gamma_f, ZERO_SECTION};
use extremal_k3::lattice::{count_roots, overlattice, IntegralLattice};
use extremal_k3::pipeline::classify_one_detailed;
use extremal_k3::root_type::{check_n2, discriminant_length, dynkin_graph, eu_of, gram_of, rank_of, RootType};
use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;
use support::suites::{random_root_type, rng, single_components};

fn rt(s: &str) -> RootType {
    s.parse().unwrap()
}

fn df(s: &RootType) -> DiscriminantForm {
    discriminant_form(&gram_of(s)).unwrap()
}

#[test]
fn e8_has_240_roots() {
    assert_eq!(count_roots(&gram_of(&rt("E8"))).unwrap(), 240);
}

#[test]
fn d8_with_spinor_class_is_e8() {
    let lat = gram_of(&rt("D8"));
    let d = discriminant_form(&lat).unwrap();
    let spinor: Vec<_> = d
        .enumerate_isotropic()
        .unwrap()
        .into_iter()
        .filter(|p| p.subgroup.order == 2)
        .map(|p| d.carrier_of(&p.subgroup.generators[0]).unwrap())
        .collect();
    // the two half-spin classes; the vector class has norm 1 mod 2
    assert_eq!(spinor.len(), 2);
    for c in &spinor {
        let m = overlattice(&lat, std::slice::from_ref(c)).unwrap();
        assert_eq!(m.lattice.determinant().abs(), BigInt::from(1));
        assert_eq!(count_roots(&m.lattice).unwrap(), 240);
        assert!(m.has_new_root().unwrap());
    }
}

#[test]
fn six_a3_overlattice() {
    let acc = classify_one_detailed(&rt("6A3")).unwrap();
    assert!(!acc.is_empty());
    for a in &acc {
        assert_eq!(a.triple.mw, vec![4, 4]);
        assert_eq!(a.overlattice.lattice.determinant().abs(), BigInt::from(16));
        assert_eq!(count_roots(&a.overlattice.lattice).unwrap(), 72);
    }
}

fn random_lattice(r: &mut impl Rng) -> IntegralLattice {
    let s = random_root_type(r, 8);
    let base = gram_of(&s);
    if r.gen_bool(0.5) {
        return base;
    }
    // even forms exist only for d = 0, 3 mod 4
    let forms = loop {
        let forms = enumerate_even_forms(r.gen_range(1..=40));
        if !forms.is_empty() {
            break forms;
        }
    };
    let t = form_to_lattice(&forms[r.gen_range(0..forms.len())]);
    let t = IntegralLattice::new(t.gram().neg()).unwrap();
    base.direct_sum(&t)
}

#[test]
fn group_order_is_determinant() {
    let mut r = rng(10);
    for _ in 0..100 {
        let lat = random_lattice(&mut r);
        let d = discriminant_form(&lat).unwrap();
        assert_eq!(BigInt::from(d.order()), lat.determinant().abs());
        assert!(d.check_compatibility());
    }
}

#[test]
fn blockwise_length_matches_full_form() {
    let mut r = rng(11);
    for _ in 0..60 {
        let s = random_root_type(&mut r, 14);
        assert_eq!(discriminant_length(&s), df(&s).length(), "{s}");
        assert_eq!(check_n2(&s), df(&s).length() as i64 <= 20 - rank_of(&s) as i64);
    }
}

#[test]
fn isomorphism_is_an_equivalence() {
    let mut forms: Vec<(String, DiscriminantForm)> =
        single_components(9).into_iter().map(|c| RootType::empty().with(c)).map(|s| (s.to_string(), df(&s))).collect();
    for s in ["A1+A2", "A5", "2A2", "A1+A7", "2A3", "A3+D5", "A2+E6", "2E7", "A4+A9", "2A4"] {
        forms.push((s.to_string(), df(&rt(s))));
    }
    for d in [3, 5, 7, 15, 16, 20, 24] {
        for t in enumerate_even_forms(d) {
            forms.push((t.to_string(), discriminant_form(&form_to_lattice(&t)).unwrap()));
        }
    }
    let n = forms.len();
    let iso = |i: usize, j: usize| forms_isomorphic(&forms[i].1, &forms[j].1, false).unwrap();
    let m: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| iso(i, j)).collect()).collect();
    for i in 0..n {
        assert!(m[i][i], "{} not isomorphic to itself", forms[i].0);
        for j in 0..n {
            assert_eq!(m[i][j], m[j][i], "{} vs {}", forms[i].0, forms[j].0);
            if m[i][j] {
                assert_eq!(forms[i].1.order(), forms[j].1.order());
                for k in 0..n {
                    if m[j][k] {
                        assert!(m[i][k], "{} ~ {} ~ {}", forms[i].0, forms[j].0, forms[k].0);
                    }
                }
            }
            let neg = forms_isomorphic(&forms[i].1, &forms[j].1, true).unwrap();
            assert_eq!(neg, forms_isomorphic(&forms[i].1, &forms[j].1.negated(), false).unwrap());
        }
    }
    // A1 and E7 have opposite forms; A2 and E6 too
    assert!(forms_isomorphic(&df(&rt("A2")), &df(&rt("E6")), true).unwrap());
    assert!(!forms_isomorphic(&df(&rt("A2")), &df(&rt("E6")), false).unwrap());
}

#[test]
fn embeddings_compose() {
    let mut r = rng(12);
    let mut composed = 0;
    for _ in 0..200 {
        let g1 = dynkin_graph(&random_root_type(&mut r, 4));
        let g2 = dynkin_graph(&random_root_type(&mut r, 8));
        let g3 = dynkin_graph(&random_root_type(&mut r, 14));
        let (Some(f), Some(g)) = (find_embedding(&g1, &g2), find_embedding(&g2, &g3)) else {
            continue;
        };
        assert!(is_induced_embedding(&g1, &g2, &f));
        assert!(is_induced_embedding(&g2, &g3, &g));
        let h: Vec<usize> = f.iter().map(|&v| g[v]).collect();
        assert!(is_induced_embedding(&g1, &g3, &h));
        assert!(find_embedding(&g1, &g3).is_some());
        composed += 1;
    }
    assert!(composed > 10, "only {composed} composable triples");
}

#[test]
fn fibration_graph_invariants() {
    let mut r = rng(13);
    let mut cases: Vec<RootType> = single_components(18).into_iter().map(|c| RootType::empty().with(c)).collect();
    cases.extend((0..100).map(|_| random_root_type(&mut r, 18)));
    for s in &cases {
        let g = build_gamma_f(s).unwrap();
        let n = g.graph.vertex_count();
        assert_eq!(n as u32, 1 + rank_of(s) + s.component_count() as u32, "{s}");
        assert_eq!(g.graph.degree(ZERO_SECTION) as usize, g.fibers.len());
        assert_eq!(g.fibers.len(), s.component_count());
        for f in &g.fibers {
            // F . C = 0 for every component, F . O = 1
            for &v in &f.vertices {
                let mut dot = 2 * g.multiplicity[v] as i64;
                for &w in &f.vertices {
                    let weight = if w == v {
                        0
                    } else if g.graph.heavy(v, w) {
                        2
                    } else {
                        g.graph.adjacent(v, w) as i64
                    };
                    dot -= weight * g.multiplicity[w] as i64;
                }
                assert_eq!(dot, 0, "{s}: vertex {v}");
            }
            let meets_o: Vec<usize> = f.vertices.iter().copied().filter(|&v| g.graph.adjacent(ZERO_SECTION, v)).collect();
            assert_eq!(meets_o.len(), 1);
            assert_eq!(g.multiplicity[meets_o[0]], 1);
            // simple components correspond to the discriminant group
            let single = RootType::empty().with(f.component);
            let det = gram_of(&single).determinant().abs();
            assert_eq!(BigInt::from(f.mult_one.count_ones()), det, "{single}");
        }
        let eu_sum: u32 = g.fibers.iter().map(|f| f.component.eu()).sum();
        assert_eq!(eu_sum, eu_of(s));
    }
}
