//! Named verification sweeps over the seeds attached to a pair of reduced
//! words, with witnesses for every failure.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::coxeter::{gamma_subset, xi_enumerate, CartanData, Perm};
use crate::dbc::{
    adjacent, b_columns, bfz_matrix, bfz_seed, btau_columns, bz_seed, connections_check, linkage_check, sigma_frame,
    sigma_frame_product, sigma_seed_with, solve_b_oracle, BZSeedData, BowtiePresentation, BzVariant, FrameConvention,
    GradingComponent,
};
use crate::error::Result;
use crate::rational::{fmt_q, q, Q};
use crate::seed::QuantumSeed;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

impl Check {
    fn new(name: &str, cases: usize, witnesses: Vec<String>) -> Self {
        Check { name: name.into(), pass: witnesses.is_empty(), cases, witnesses }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub target: String,
    pub sigma_seeds: usize,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl VerifyReport {
    fn finish(target: String, sigma_seeds: usize, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        VerifyReport { target, sigma_seeds, checks, pass }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Every member of `Xi` instead of `Gamma` plus the identity and `w°_N`.
    pub all_xi: bool,
    pub convention: FrameConvention,
    pub component: GradingComponent,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { all_xi: false, convention: FrameConvention::PlainLabels, component: GradingComponent::First }
    }
}

/// Entries where `sum_i psi_ki b_ij` differs from `-2 delta_kj d_k`.
pub fn psi_b_identity(seed: &QuantumSeed) -> Vec<String> {
    let mut out = Vec::new();
    let psi = seed.frame.psi();
    for (c, &j) in seed.ex.iter().enumerate() {
        for k in 0..seed.size() {
            let mut s = Q::zero();
            for (i, &b) in seed.cols[c].iter().enumerate() {
                if b != 0 {
                    s += &psi[k][i] * q(b);
                }
            }
            let expect = if k == j { q(-2 * seed.d[k]) } else { Q::zero() };
            if s != expect {
                out.push(format!("(psi B)_({},{}) = {}, expected {}", k + 1, j + 1, fmt_q(&s), fmt_q(&expect)));
            }
        }
    }
    out
}

/// Columns whose degree sum is nonzero.
pub fn grading_identity(seed: &QuantumSeed) -> Vec<String> {
    seed.ex
        .iter()
        .zip(&seed.cols)
        .filter_map(|(&k, col)| {
            let d = seed.column_degree(col);
            d.iter().any(|&x| x != 0).then(|| format!("column {} has degree {:?}", k + 1, d))
        })
        .collect()
}

/// Mutation involution and compatibility preservation under mutation,
/// reindexing by adjacent transpositions and the antiisomorphism.
pub fn seed_calculus(seed: &QuantumSeed, label: &str) -> Vec<String> {
    let mut out = Vec::new();
    let rep = seed.check_compatible();
    if !rep.pass {
        out.push(format!("{label}: not compatible: {}", rep.summary()));
        return out;
    }
    for &k in &seed.ex {
        match seed.mutate(k).and_then(|m| m.mutate(k)) {
            Ok(back) if back == *seed => {}
            Ok(_) => out.push(format!("{label}: mutating twice at {} is not the identity", k + 1)),
            Err(e) => out.push(format!("{label}: mutation at {}: {e}", k + 1)),
        }
    }
    for i in 0..seed.size().saturating_sub(1) {
        let mut tau: Perm = (0..seed.size()).collect();
        tau.swap(i, i + 1);
        match seed.reindex(&tau) {
            Ok(r) if r.check_compatible().pass && r.reindex(&tau).ok().as_ref() == Some(seed) => {}
            _ => out.push(format!("{label}: reindexing by ({} {}) failed", i + 1, i + 2)),
        }
    }
    if !seed.antiiso().check_compatible().pass {
        out.push(format!("{label}: antiisomorphic seed is not compatible"));
    }
    out
}

/// `reduce(mutate(s, k)) = mutate(reduce(s), k - r)` for every exchangeable `k`.
pub fn reduce_commutes(bz: &BZSeedData, component: GradingComponent, label: &str) -> Vec<String> {
    let r = bz.rank;
    let seed = bz.graded_by(component);
    let mut out = Vec::new();
    let reduced = match seed.graded_reduce(r) {
        Ok(s) => s,
        Err(e) => return vec![format!("{label}: {e}")],
    };
    if !reduced.check_compatible().pass {
        out.push(format!("{label}: reduced seed is not compatible"));
    }
    for &k in &seed.ex {
        let left = seed.mutate(k).and_then(|m| m.graded_reduce(r));
        let right = reduced.mutate(k - r);
        match (left, right) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(_), Ok(_)) => out.push(format!("{label}: reduction and mutation at {} do not commute", k + 1)),
            (Err(e), _) | (_, Err(e)) => out.push(format!("{label}: mutation at {}: {e}", k + 1)),
        }
    }
    out
}

fn sigma_list(pres: &BowtiePresentation, all_xi: bool) -> Vec<Perm> {
    let n = pres.len();
    if all_xi {
        return xi_enumerate(n).collect();
    }
    let mut list: Vec<Perm> = vec![(0..n).collect(), pres.longest()];
    list.extend(gamma_subset(n).into_iter().map(|(_, p)| p));
    list.sort();
    list.dedup();
    list
}

fn fmt_perm(p: &[usize]) -> String {
    let v: Vec<String> = p.iter().map(|x| (x + 1).to_string()).collect();
    format!("[{}]", v.join(","))
}

/// Per-sigma witnesses: compatibility, frame routes, the column formula
/// against the oracle, and linkage with every adjacent member of `Xi`.
struct SigmaOutcome {
    compatible: Vec<String>,
    routes: Vec<String>,
    oracle: Vec<String>,
    linkage: Vec<String>,
    linkage_cases: usize,
    oracle_cases: usize,
    calculus: Vec<String>,
}

fn check_sigma(pres: &BowtiePresentation, btilde: &crate::dbc::Columns, sigma: &[usize]) -> SigmaOutcome {
    let tag = fmt_perm(sigma);
    let mut o = SigmaOutcome {
        compatible: vec![],
        routes: vec![],
        oracle: vec![],
        linkage: vec![],
        linkage_cases: 0,
        oracle_cases: 0,
        calculus: vec![],
    };
    let data = match sigma_frame(pres, sigma) {
        Ok(d) => d,
        Err(e) => {
            o.compatible.push(format!("{tag}: {e}"));
            return o;
        }
    };
    match sigma_frame_product(pres, sigma) {
        Ok(f) if f == data.frame => {}
        _ => o.routes.push(format!("{tag}: the two frame constructions differ")),
    }
    match btau_columns(pres, &data, btilde) {
        Ok(cols) => {
            for (c, &l) in data.ex.iter().enumerate() {
                o.oracle_cases += 1;
                match solve_b_oracle(pres, &data, l) {
                    Ok(x) if x == cols[c] => {}
                    Ok(x) => o.oracle.push(format!("{tag} column {}: formula {:?}, oracle {:?}", l + 1, cols[c], x)),
                    Err(e) => o.oracle.push(format!("{tag} column {}: {e}", l + 1)),
                }
            }
        }
        Err(e) => o.oracle.push(format!("{tag}: {e}")),
    }
    match sigma_seed_with(pres, sigma, btilde) {
        Ok(seed) => {
            let rep = seed.check_compatible();
            if !rep.pass {
                o.compatible.push(format!("{tag}: {}", rep.summary()));
            }
            o.calculus = seed_calculus(&seed, &tag);
        }
        Err(e) => o.compatible.push(format!("{tag}: {e}")),
    }
    for k in 0..pres.len().saturating_sub(1) {
        if adjacent(sigma, k).is_none() {
            continue;
        }
        o.linkage_cases += 1;
        match linkage_check(pres, btilde, sigma, k) {
            Ok(r) if r.pass => {}
            Ok(_) => o.linkage.push(format!("{tag} at ({} {})", k + 1, k + 2)),
            Err(e) => o.linkage.push(format!("{tag} at ({} {}): {e}", k + 1, k + 2)),
        }
    }
    o
}

pub fn verify_double_word(cartan: &CartanData, w: &[usize], u: &[usize], opts: VerifyOptions) -> Result<VerifyReport> {
    let target = format!("{} w={:?} u={:?}", cartan.label(), w, u);
    let pres = BowtiePresentation::build(cartan, w, u)?;
    let mut checks = Vec::new();
    let bfz = bfz_seed(&pres)?;
    checks.push(Check::new("compatibility-identity", bfz.ex.len(), psi_b_identity(&bfz)));
    checks.push(Check::new("grading-identity", bfz.ex.len(), grading_identity(&bfz)));
    let btilde = b_columns(&pres)?;
    let w0 = pres.longest();
    let longest = btau_columns(&pres, &sigma_frame(&pres, &w0)?, &btilde)?;
    let bfz_w = if (bfz.ex.clone(), longest) == bfz_matrix(&pres) {
        vec![]
    } else {
        vec!["column formula at w°_N differs from the BFZ matrix".to_string()]
    };
    checks.push(Check::new("bfz-at-longest", 1, bfz_w));

    let sigmas = sigma_list(&pres, opts.all_xi);
    let outcomes: Vec<SigmaOutcome> = sigmas.par_iter().map(|s| check_sigma(&pres, &btilde, s)).collect();
    let gather = |f: &dyn Fn(&SigmaOutcome) -> &Vec<String>| outcomes.iter().flat_map(|o| f(o).clone()).collect();
    checks.push(Check::new("sigma-seeds-compatible", sigmas.len(), gather(&|o| &o.compatible)));
    checks.push(Check::new("frame-routes-agree", sigmas.len(), gather(&|o| &o.routes)));
    checks.push(Check::new("btau-oracle", outcomes.iter().map(|o| o.oracle_cases).sum(), gather(&|o| &o.oracle)));
    checks.push(Check::new("xi-linkage", outcomes.iter().map(|o| o.linkage_cases).sum(), gather(&|o| &o.linkage)));

    let mut calculus: Vec<String> = gather(&|o| &o.calculus);
    calculus.extend(seed_calculus(&bfz, "bfz"));
    let mut bz_compat = Vec::new();
    let mut commute = Vec::new();
    for (variant, name) in [(BzVariant::Plain, "bz"), (BzVariant::Modified, "mbz")] {
        let bz = bz_seed(cartan, w, u, variant, opts.convention)?;
        let rep = bz.seed.check_compatible();
        if !rep.pass {
            bz_compat.push(format!("{name}: {}", rep.summary()));
        }
        calculus.extend(seed_calculus(&bz.seed, name));
        commute.extend(reduce_commutes(&bz, opts.component, name));
        if let Ok(red) = bz.reduced(opts.component) {
            calculus.extend(seed_calculus(&red, &format!("{name}-reduced")));
        }
    }
    checks.push(Check::new("bz-seeds-compatible", 2, bz_compat));
    checks.push(Check::new("seed-calculus", sigmas.len() + 5, calculus));
    checks.push(Check::new("reduce-commutes-with-mutation", 2, commute));
    let conn = connections_check(cartan, w, u, opts.convention, opts.component)?;
    let mut witnesses = Vec::new();
    if !conn.frames_match {
        witnesses.push(format!("frames differ at {:?}", conn.frame_mismatches));
    }
    if !conn.exchange_match {
        witnesses.push("exchange matrices differ".into());
    }
    checks.push(Check::new("bz-connection", 1, witnesses));
    Ok(VerifyReport::finish(target, sigmas.len(), checks))
}

/// Checks on a single seed supplied from outside.
pub fn verify_seed(seed: &QuantumSeed, label: &str) -> VerifyReport {
    let rep = seed.check_compatible();
    let compat = if rep.pass { vec![] } else { vec![rep.summary()] };
    let checks = vec![
        Check::new("compatible", seed.ex.len(), compat),
        Check::new("compatibility-identity", seed.ex.len(), psi_b_identity(seed)),
        Check::new("seed-calculus", 1, seed_calculus(seed, label)),
    ];
    VerifyReport::finish(label.to_string(), 0, checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qtorus::FrameMatrix;

    #[test]
    fn a2_full_sweep_passes() {
        let c = CartanData::new('A', 2).unwrap();
        let rep = verify_double_word(&c, &[1, 2, 1], &[1, 2, 1], VerifyOptions::default()).unwrap();
        assert!(rep.pass, "{:#?}", rep.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    }

    #[test]
    fn all_xi_counts() {
        let c = CartanData::new('A', 2).unwrap();
        let opts = VerifyOptions { all_xi: true, ..Default::default() };
        let rep = verify_double_word(&c, &[1, 2], &[2, 1, 2], opts).unwrap();
        assert_eq!(rep.sigma_seeds, 16);
        assert!(rep.pass);
    }

    #[test]
    fn perturbed_frame_is_caught() {
        let c = CartanData::new('A', 1).unwrap();
        let pres = BowtiePresentation::build(&c, &[1], &[1]).unwrap();
        let mut s = bfz_seed(&pres).unwrap();
        s.frame = FrameMatrix::from_ints(&[vec![0, 3], vec![-3, 0]]).unwrap();
        let rep = verify_seed(&s, "perturbed");
        assert!(!rep.pass);
        assert!(!psi_b_identity(&s).is_empty());
    }
}
