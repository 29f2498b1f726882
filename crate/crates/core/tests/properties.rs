use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use bruhat_cluster::cgl::{a2_presentation, a2_rescaling, nf_mul, CGLPresentation, NFPoly};
use bruhat_cluster::coxeter::{is_xi, xi_enumerate, xi_from_code, CartanData, Perm};
use bruhat_cluster::dbc::{
    adjacent, b_columns, btau_columns, sigma_frame, sigma_frame_product, sigma_seed, solve_b_oracle, BowtiePresentation,
};
use bruhat_cluster::qtorus::{bicharacter, FrameMatrix, TorusElement, VLaurent};
use bruhat_cluster::rational::q;

type DoubleWord = (CartanData, Vec<usize>, Vec<usize>);

fn double_words() -> &'static Vec<DoubleWord> {
    static WORDS: OnceLock<Vec<DoubleWord>> = OnceLock::new();
    WORDS.get_or_init(|| {
        let mut out = Vec::new();
        for (label, max) in [("A2", 6), ("B2", 6), ("G2", 7), ("A3", 7)] {
            let c = CartanData::from_label(label).unwrap();
            let ws: Vec<Vec<usize>> = (0..=max).flat_map(|l| c.reduced_words(l)).collect();
            for w in &ws {
                for u in &ws {
                    let n = w.len() + u.len();
                    if (2..=max).contains(&n) {
                        out.push((c.clone(), w.clone(), u.clone()));
                    }
                }
            }
        }
        out
    })
}

/// A double word together with a member of `Xi` of matching length.
fn word_and_sigma() -> impl Strategy<Value = (BowtiePresentation, Perm)> {
    (0..double_words().len(), any::<u64>()).prop_map(|(i, code)| {
        let (c, w, u) = &double_words()[i];
        let p = BowtiePresentation::build(c, w, u).unwrap();
        let n = p.len();
        let sigma = xi_from_code(n, code % (1u64 << (n - 1)));
        (p, sigma)
    })
}

fn laurent() -> impl Strategy<Value = VLaurent> {
    prop::collection::vec((-4i64..=4, -3i64..=3), 0..3)
        .prop_map(|ts| VLaurent::from_terms(ts.into_iter().map(|(e, c)| (q(e), q(c)))))
}

fn skew_frame(n: usize) -> impl Strategy<Value = FrameMatrix> {
    prop::collection::vec(-3i64..=3, n * (n - 1) / 2).prop_map(move |upper| {
        let mut m = vec![vec![0; n]; n];
        let mut it = upper.into_iter();
        for k in 0..n {
            for j in k + 1..n {
                let x = it.next().unwrap();
                m[k][j] = x;
                m[j][k] = -x;
            }
        }
        FrameMatrix::from_ints(&m).unwrap()
    })
}

fn torus_terms(n: usize) -> impl Strategy<Value = Vec<(Vec<i64>, VLaurent)>> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, n), laurent()), 0..4)
}

fn torus_element(frame: &Arc<FrameMatrix>, terms: &[(Vec<i64>, VLaurent)]) -> TorusElement {
    terms.iter().fold(TorusElement::zero(frame), |acc, (f, c)| {
        acc.add(&TorusElement::term(frame, f.clone(), c.clone()).unwrap()).unwrap()
    })
}

fn rescaled_a2() -> &'static CGLPresentation {
    static P: OnceLock<CGLPresentation> = OnceLock::new();
    P.get_or_init(|| a2_presentation().rescale(&a2_rescaling()).unwrap().0)
}

fn nf_poly(n: usize) -> impl Strategy<Value = NFPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=2, n), laurent()), 1..3)
        .prop_map(move |ts| NFPoly::from_terms(n, ts))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
    }

    #[test]
    fn torus_is_associative(frame in skew_frame(3), a in torus_terms(3), b in torus_terms(3), c in torus_terms(3)) {
        let frame = Arc::new(frame);
        let (a, b, c) = (torus_element(&frame, &a), torus_element(&frame, &b), torus_element(&frame, &c));
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let distributed = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), distributed);
    }

    #[test]
    fn bicharacter_is_antisymmetric(frame in skew_frame(4), f in prop::collection::vec(-3i64..=3, 4), g in prop::collection::vec(-3i64..=3, 4)) {
        let fg = bicharacter(&frame, &f, &g).unwrap();
        let gf = bicharacter(&frame, &g, &f).unwrap();
        prop_assert!((&fg * &gf).is_one());
        prop_assert!(bicharacter(&frame, &f, &f).unwrap().is_one());
        let frame = Arc::new(frame);
        let mf = TorusElement::basis(&frame, f.clone()).unwrap();
        let mg = TorusElement::basis(&frame, g.clone()).unwrap();
        let swapped = mg.mul(&mf).unwrap().scale(&(&fg * &fg));
        prop_assert_eq!(mf.mul(&mg).unwrap(), swapped);
    }

    #[test]
    fn xi_codes_are_distinct_members(n in 1usize..9) {
        let all: Vec<Perm> = xi_enumerate(n).collect();
        prop_assert!(all.iter().all(|s| is_xi(s)));
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), all.len());
    }

    #[test]
    fn frame_routes_agree((p, sigma) in word_and_sigma()) {
        let data = sigma_frame(&p, &sigma).unwrap();
        prop_assert_eq!(sigma_frame_product(&p, &sigma).unwrap(), data.frame);
    }

    #[test]
    fn exchange_columns_match_oracle((p, sigma) in word_and_sigma()) {
        let data = sigma_frame(&p, &sigma).unwrap();
        let cols = btau_columns(&p, &data, &b_columns(&p).unwrap()).unwrap();
        for (col, &l) in cols.iter().zip(&data.ex) {
            prop_assert_eq!(&solve_b_oracle(&p, &data, l).unwrap(), col);
        }
    }

    #[test]
    fn mutation_is_an_involution((p, sigma) in word_and_sigma(), pick in any::<prop::sample::Index>()) {
        let s = sigma_seed(&p, &sigma).unwrap();
        prop_assume!(!s.ex.is_empty());
        let k = s.ex[pick.index(s.ex.len())];
        let m = s.mutate(k).unwrap();
        prop_assert!(m.check_compatible().pass);
        prop_assert_eq!(m.mutate(k).unwrap(), s);
    }

    #[test]
    fn reindexing_composes((p, sigma) in word_and_sigma(), a in any::<u64>(), b in any::<u64>()) {
        let s = sigma_seed(&p, &sigma).unwrap();
        let n = s.size();
        let perm = |seed: u64| -> Perm {
            let mut v: Perm = (0..n).collect();
            let mut x = seed;
            for i in (1..n).rev() {
                v.swap(i, (x % (i as u64 + 1)) as usize);
                x /= i as u64 + 1;
            }
            v
        };
        let (t1, t2) = (perm(a), perm(b));
        let composed: Perm = t2.iter().map(|&j| t1[j]).collect();
        let twice = s.reindex(&t1).unwrap().reindex(&t2).unwrap();
        prop_assert_eq!(&twice, &s.reindex(&composed).unwrap());
        prop_assert!(twice.check_compatible().pass);
        prop_assert!(s.antiiso().check_compatible().pass);
    }

    #[test]
    fn adjacent_seeds_are_linked((p, sigma) in word_and_sigma(), pick in any::<prop::sample::Index>()) {
        let k = pick.index(p.len() - 1);
        prop_assume!(adjacent(&sigma, k).is_some());
        let rep = bruhat_cluster::dbc::linkage_check(&p, &b_columns(&p).unwrap(), &sigma, k).unwrap();
        prop_assert!(rep.pass, "{:?}", rep);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normal_form_product_is_associative(a in nf_poly(4), b in nf_poly(4), c in nf_poly(4)) {
        let p = rescaled_a2();
        let left = nf_mul(p, &nf_mul(p, &a, &b).unwrap(), &c).unwrap();
        let right = nf_mul(p, &a, &nf_mul(p, &b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}
