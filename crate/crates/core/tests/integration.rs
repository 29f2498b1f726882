use std::collections::{BTreeMap, VecDeque};

use bruhat_cluster::coxeter::{xi_enumerate, CartanData, Perm};
use bruhat_cluster::dbc::{adjacent, bfz_seed, bz_seed, sigma_seed, BowtiePresentation, BzVariant, FrameConvention};
use bruhat_cluster::json::{seed_from_str, seed_to_string};
use bruhat_cluster::seed::QuantumSeed;
use bruhat_cluster::verify::{verify_double_word, VerifyOptions};
use bruhat_cluster::Error;

fn cartan(label: &str) -> CartanData {
    CartanData::from_label(label).unwrap()
}

/// Walks `Xi` from the identity using only mutations and reindexings and
/// compares every seed reached with the one built directly.
fn walk_reproduces_seeds(c: &CartanData, w: &[usize], u: &[usize]) {
    let p = BowtiePresentation::build(c, w, u).unwrap();
    let n = p.len();
    let start: Perm = (0..n).collect();
    let mut reached: BTreeMap<Perm, QuantumSeed> = BTreeMap::from([(start.clone(), sigma_seed(&p, &start).unwrap())]);
    let mut queue = VecDeque::from([start]);
    while let Some(sigma) = queue.pop_front() {
        let seed = reached[&sigma].clone();
        for k in 0..n - 1 {
            let Some(next) = adjacent(&sigma, k) else { continue };
            if reached.contains_key(&next) {
                continue;
            }
            let moved = if p.dwd.eta(sigma[k]) == p.dwd.eta(sigma[k + 1]) {
                seed.mutate(k).unwrap()
            } else {
                let mut swap: Perm = (0..n).collect();
                swap.swap(k, k + 1);
                seed.reindex(&swap).unwrap()
            };
            reached.insert(next.clone(), moved);
            queue.push_back(next);
        }
    }
    assert_eq!(reached.len(), 1 << (n - 1));
    for sigma in xi_enumerate(n) {
        assert_eq!(reached[&sigma], sigma_seed(&p, &sigma).unwrap(), "sigma = {sigma:?}");
    }
    assert_eq!(reached[&p.longest()], bfz_seed(&p).unwrap());
}

#[test]
fn walk_over_xi_a2() {
    walk_reproduces_seeds(&cartan("A2"), &[1, 2], &[2, 1]);
    walk_reproduces_seeds(&cartan("A2"), &[1, 2, 1], &[1, 2, 1]);
}

#[test]
fn walk_over_xi_rank_three_and_g2() {
    walk_reproduces_seeds(&cartan("A3"), &[1, 2, 3], &[3, 2, 1]);
    walk_reproduces_seeds(&cartan("C3"), &[2, 3, 2], &[1, 2]);
    walk_reproduces_seeds(&cartan("G2"), &[1, 2, 1, 2], &[2, 1]);
}

#[test]
fn verify_reports_pass_beyond_acceptance_sweep() {
    for (t, w, u) in [
        ("G2", vec![1, 2, 1, 2, 1, 2], vec![2, 1]),
        ("C3", vec![1, 2, 3, 2], vec![3, 2, 1]),
        ("A4", vec![1, 2, 3, 4], vec![4, 3]),
    ] {
        let rep = verify_double_word(&cartan(t), &w, &u, VerifyOptions::default()).unwrap();
        assert!(rep.pass, "{t} {w:?} {u:?}: {:?}", rep.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    }
}

#[test]
fn seeds_survive_json() {
    let c = cartan("B2");
    let p = BowtiePresentation::build(&c, &[1, 2, 1], &[2, 1]).unwrap();
    for sigma in xi_enumerate(p.len()) {
        let s = sigma_seed(&p, &sigma).unwrap();
        assert_eq!(seed_from_str(&seed_to_string(&s)).unwrap(), s);
    }
    let bz = bz_seed(&c, &[1, 2, 1], &[2, 1], BzVariant::Modified, FrameConvention::PlainLabels).unwrap();
    assert_eq!(seed_from_str(&seed_to_string(&bz.seed)).unwrap(), bz.seed);
}

#[test]
fn invalid_inputs_are_rejected() {
    let c = cartan("A2");
    assert!(matches!(BowtiePresentation::build(&c, &[1, 1], &[]), Err(Error::NotReduced { .. })));
    assert!(matches!(BowtiePresentation::build(&c, &[3], &[]), Err(Error::IndexOutOfRange { .. })));
    assert!(CartanData::from_label("E9").is_err());
    let p = BowtiePresentation::build(&c, &[1, 2], &[1]).unwrap();
    assert!(matches!(sigma_seed(&p, &[0, 2, 1]), Err(Error::NotInXi(_))));
    assert!(matches!(sigma_seed(&p, &[0, 0, 1]), Err(Error::NotAPermutation(_))));
    let s = sigma_seed(&p, &[0, 1, 2]).unwrap();
    let frozen = (0..s.size()).find(|k| !s.ex.contains(k)).unwrap();
    assert!(matches!(s.mutate(frozen), Err(Error::NotExchangeable(_))));
}
