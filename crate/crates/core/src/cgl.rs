//! Normal forms in explicitly presented CGL extensions.
//!
//! A presentation lists the generators `x_1, ..., x_n`, the scalars
//! `lambda_kj` and straightening tails with `x_k x_j = lambda_kj x_j x_k + T_kj`
//! for `k > j`. Products are brought to the basis `x^f = x_1^m_1 ... x_n^m_n`
//! by rewriting adjacent inversions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coxeter::{Levels, RootVec};
use crate::error::{Error, Result};
use crate::qtorus::{scr, FrameMatrix, VLaurent};
use crate::rational::{fmt_q, q, QMatrix, Q};
use crate::seed::QuantumSeed;

pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

pub type Exponent = Vec<u32>;

/// Element of the algebra in the basis `x^f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NFPoly {
    n: usize,
    terms: BTreeMap<Exponent, VLaurent>,
}

impl NFPoly {
    pub fn zero(n: usize) -> Self {
        NFPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n], VLaurent::one())
    }

    pub fn constant(n: usize, c: VLaurent) -> Self {
        Self::monomial(vec![0; n], c)
    }

    pub fn monomial(f: Exponent, c: VLaurent) -> Self {
        let mut p = Self::zero(f.len());
        p.add_term(f, c);
        p
    }

    /// `x_k`, 0-based.
    pub fn generator(n: usize, k: usize) -> Self {
        let mut f = vec![0; n];
        f[k] = 1;
        Self::monomial(f, VLaurent::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, VLaurent)>>(n: usize, it: I) -> Self {
        let mut p = Self::zero(n);
        for (f, c) in it {
            p.add_term(f, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, VLaurent> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, f: Exponent, c: VLaurent) {
        if c.is_zero() {
            return;
        }
        assert_eq!(f.len(), self.n, "exponent length");
        match self.terms.get_mut(&f) {
            Some(x) => {
                let sum = &*x + &c;
                if sum.is_zero() {
                    self.terms.remove(&f);
                } else {
                    *x = sum;
                }
            }
            None => {
                self.terms.insert(f, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (f, c) in &other.terms {
            out.add_term(f.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&VLaurent::constant(q(-1))))
    }

    pub fn scale(&self, c: &VLaurent) -> Self {
        let mut out = Self::zero(self.n);
        for (f, x) in &self.terms {
            out.add_term(f.clone(), x * c);
        }
        out
    }

    /// Maximal term for the order comparing the last exponent first.
    pub fn leading_term(&self) -> Result<(VLaurent, Exponent)> {
        self.terms
            .iter()
            .max_by(|a, b| a.0.iter().rev().cmp(b.0.iter().rev()))
            .map(|(f, c)| (c.clone(), f.clone()))
            .ok_or(Error::ZeroElement)
    }

    /// Generators occurring with positive exponent, 0-based.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.terms.keys().any(|f| f[i] > 0)).collect()
    }

    /// The common degree of all terms, or `None` if inhomogeneous or zero.
    pub fn homogeneous_degree(&self, degrees: &[RootVec]) -> Option<RootVec> {
        let mut out: Option<RootVec> = None;
        for f in self.terms.keys() {
            let d = exponent_degree(degrees, f);
            match &out {
                None => out = Some(d),
                Some(prev) if *prev != d => return None,
                _ => {}
            }
        }
        out
    }
}

fn exponent_degree(degrees: &[RootVec], f: &[u32]) -> RootVec {
    let rank = degrees.first().map_or(0, Vec::len);
    let mut d = vec![0; rank];
    for (i, &m) in f.iter().enumerate() {
        for (a, x) in d.iter_mut().zip(&degrees[i]) {
            *a += m as i64 * x;
        }
    }
    d
}

impl fmt::Display for NFPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        for (idx, (f, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(out, " + ")?;
            }
            let mono: Vec<String> = f
                .iter()
                .enumerate()
                .filter(|(_, &m)| m > 0)
                .map(|(i, &m)| if m == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, m) })
                .collect();
            if mono.is_empty() {
                write!(out, "({c})")?;
            } else if c.is_one() {
                write!(out, "{}", mono.join("*"))?;
            } else {
                write!(out, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// An iterated skew polynomial presentation.
#[derive(Debug, Clone)]
pub struct CGLPresentation {
    pub n: usize,
    /// `lambda_exp[k][j] = log_v lambda_kj`.
    pub lambda_exp: QMatrix,
    /// `T_kj` for `k > j`, keyed by `(k, j)`; absent tails are zero.
    pub tails: BTreeMap<(usize, usize), NFPoly>,
    pub levels: Levels,
    pub degrees: Vec<RootVec>,
    pub lambda_star: Vec<Q>,
    pub step_budget: usize,
}

struct Rewriter<'a> {
    pres: &'a CGLPresentation,
    cache: HashMap<(Exponent, usize), NFPoly>,
    steps: usize,
}

impl<'a> Rewriter<'a> {
    fn new(pres: &'a CGLPresentation) -> Self {
        Rewriter { pres, cache: HashMap::new(), steps: 0 }
    }

    /// `x^f x_j` in normal form.
    fn mono_gen(&mut self, f: &[u32], j: usize) -> Result<NFPoly> {
        let n = self.pres.n;
        let top = (0..n).rev().find(|&k| f[k] > 0);
        let k = match top {
            Some(k) if k > j => k,
            _ => {
                let mut g = f.to_vec();
                g[j] += 1;
                return Ok(NFPoly::monomial(g, VLaurent::one()));
            }
        };
        let key = (f.to_vec(), j);
        if let Some(hit) = self.cache.get(&key) {
            return Ok(hit.clone());
        }
        self.steps += 1;
        if self.steps > self.pres.step_budget {
            return Err(Error::RewriteBudget(self.pres.step_budget));
        }
        let mut rest = f.to_vec();
        rest[k] -= 1;
        let moved = self.mono_gen(&rest, j)?;
        let mut out = self.poly_gen(&moved, k)?.scale(&VLaurent::vpow(self.pres.lambda_exp[k][j].clone()));
        if let Some(tail) = self.pres.tails.get(&(k, j)) {
            let tail = tail.clone();
            out = out.add(&self.mono_poly(&rest, &tail)?);
        }
        self.cache.insert(key, out.clone());
        Ok(out)
    }

    fn poly_gen(&mut self, p: &NFPoly, j: usize) -> Result<NFPoly> {
        let mut out = NFPoly::zero(self.pres.n);
        for (f, c) in &p.terms {
            for (g, d) in self.mono_gen(f, j)?.terms {
                out.add_term(g, c * &d);
            }
        }
        Ok(out)
    }

    fn mono_mono(&mut self, f: &[u32], g: &[u32]) -> Result<NFPoly> {
        let mut acc = NFPoly::monomial(f.to_vec(), VLaurent::one());
        for (j, &m) in g.iter().enumerate() {
            for _ in 0..m {
                acc = self.poly_gen(&acc, j)?;
            }
        }
        Ok(acc)
    }

    fn mono_poly(&mut self, f: &[u32], p: &NFPoly) -> Result<NFPoly> {
        let mut out = NFPoly::zero(self.pres.n);
        for (g, c) in &p.terms {
            for (h, d) in self.mono_mono(f, g)?.terms {
                out.add_term(h, c * &d);
            }
        }
        Ok(out)
    }

    fn mul(&mut self, a: &NFPoly, b: &NFPoly) -> Result<NFPoly> {
        let mut out = NFPoly::zero(self.pres.n);
        for (f, c) in &a.terms {
            for (g, d) in &self.mono_poly(f, b)?.terms {
                out.add_term(g.clone(), c * d);
            }
        }
        Ok(out)
    }
}

/// Outcome of the consistency audit of a presentation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub tail_support_failures: Vec<(usize, usize)>,
    pub tail_degree_failures: Vec<(usize, usize)>,
    pub triples: usize,
    pub associativity_failures: usize,
    pub pass: bool,
}

impl CGLPresentation {
    pub fn new(
        lambda_exp: QMatrix,
        tails: BTreeMap<(usize, usize), NFPoly>,
        eta: Vec<usize>,
        degrees: Vec<RootVec>,
        lambda_star: Vec<Q>,
    ) -> Result<Self> {
        let n = eta.len();
        FrameMatrix::new(lambda_exp.clone())?;
        for len in [lambda_exp.len(), degrees.len(), lambda_star.len()] {
            if len != n {
                return Err(Error::DimensionMismatch { expected: n, actual: len });
            }
        }
        for (&(k, j), t) in &tails {
            if k <= j || k >= n {
                return Err(Error::Presentation(format!("tail ({}, {}) is not below the diagonal", k + 1, j + 1)));
            }
            if t.nvars() != n {
                return Err(Error::DimensionMismatch { expected: n, actual: t.nvars() });
            }
        }
        Ok(CGLPresentation {
            n,
            lambda_exp,
            tails,
            levels: Levels::new(eta),
            degrees,
            lambda_star,
            step_budget: DEFAULT_STEP_BUDGET,
        })
    }

    pub fn with_step_budget(mut self, budget: usize) -> Self {
        self.step_budget = budget;
        self
    }

    pub fn gen(&self, k: usize) -> NFPoly {
        NFPoly::generator(self.n, k)
    }

    pub fn one(&self) -> NFPoly {
        NFPoly::one(self.n)
    }

    pub fn nu_exp(&self) -> QMatrix {
        self.lambda_exp.iter().map(|r| r.iter().map(|x| x / q(2)).collect()).collect()
    }

    /// Checks tails and associativity on `triples` random monomial triples of
    /// total degree at most 3 each.
    pub fn audit(&self, triples: usize, seed: u64) -> AuditReport {
        let mut tail_support_failures = Vec::new();
        let mut tail_degree_failures = Vec::new();
        for (&(k, j), t) in &self.tails {
            if t.support().iter().any(|&i| i <= j || i >= k) {
                tail_support_failures.push((k + 1, j + 1));
            }
            let expect: RootVec = self.degrees[k].iter().zip(&self.degrees[j]).map(|(a, b)| a + b).collect();
            if !t.is_zero() && t.homogeneous_degree(&self.degrees) != Some(expect) {
                tail_degree_failures.push((k + 1, j + 1));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples: Vec<[Exponent; 3]> =
            (0..triples).map(|_| std::array::from_fn(|_| random_monomial(&mut rng, self.n, 3))).collect();
        let associativity_failures = samples
            .par_iter()
            .filter(|[a, b, c]| {
                let a = NFPoly::monomial(a.clone(), VLaurent::one());
                let b = NFPoly::monomial(b.clone(), VLaurent::one());
                let c = NFPoly::monomial(c.clone(), VLaurent::one());
                let left = nf_mul(self, &a, &b).and_then(|ab| nf_mul(self, &ab, &c));
                let right = nf_mul(self, &b, &c).and_then(|bc| nf_mul(self, &a, &bc));
                !matches!((left, right), (Ok(l), Ok(r)) if l == r)
            })
            .count();
        let pass = tail_support_failures.is_empty() && tail_degree_failures.is_empty() && associativity_failures == 0;
        AuditReport { tail_support_failures, tail_degree_failures, triples, associativity_failures, pass }
    }

    /// Expresses the presentation in the generators `t_j x_j`.
    pub fn rescale(&self, t: &[VLaurent]) -> Result<(CGLPresentation, RescaleReport)> {
        if t.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, actual: t.len() });
        }
        if let Some(j) = t.iter().position(|x| x.as_monomial().is_none()) {
            return Err(Error::Presentation(format!("rescaling factor {} is not a unit", j + 1)));
        }
        let mut out = self.clone();
        for (&(k, j), tail) in out.tails.iter_mut() {
            *tail = rescale_poly(t, tail).scale(&(&t[k] * &t[j]));
        }
        let lev = &self.levels;
        let y_scalars = (0..self.n).map(|k| product(lev.p_chain(k).iter().map(|&i| &t[i]))).collect();
        let mut u_scalars = BTreeMap::new();
        for i in 0..self.n {
            let chain = lev.s_chain(i);
            for m in 1..chain.len() {
                let mut c = &t[chain[0]] * &t[chain[m]];
                for &mid in &chain[1..m] {
                    c = &c * &(&t[mid] * &t[mid]);
                }
                u_scalars.insert((i, m), c);
            }
        }
        Ok((out, RescaleReport { t: t.to_vec(), y_scalars, u_scalars }))
    }
}

fn product<'a>(it: impl Iterator<Item = &'a VLaurent>) -> VLaurent {
    it.fold(VLaurent::one(), |acc, x| &acc * x)
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> Exponent {
    let mut f = vec![0; n];
    if n == 0 {
        return f;
    }
    let deg = rng.gen_range(0..=max_degree);
    for _ in 0..deg {
        f[rng.gen_range(0..n)] += 1;
    }
    f
}

/// Rewrites a polynomial in `x_j` as one in `x'_j = t_j x_j`.
pub fn rescale_poly(t: &[VLaurent], p: &NFPoly) -> NFPoly {
    let mut out = NFPoly::zero(p.n);
    for (f, c) in &p.terms {
        let mut s = c.clone();
        for (j, &m) in f.iter().enumerate() {
            let inv = t[j].inverse_monomial().expect("rescaling factors are units");
            s = &s * &inv.pow(m);
        }
        out.add_term(f.clone(), s);
    }
    out
}

/// Scalars picked up by the prime and normal elements under a rescaling.
#[derive(Debug, Clone, PartialEq)]
pub struct RescaleReport {
    pub t: Vec<VLaurent>,
    /// Factor of `y_k`.
    pub y_scalars: Vec<VLaurent>,
    /// Factor of `u_[i, s^m(i)]`, keyed by `(i, m)`.
    pub u_scalars: BTreeMap<(usize, usize), VLaurent>,
}

impl RescaleReport {
    /// Factor of `y_[i, s^m(i)]`.
    pub fn interval_scalar(&self, levels: &Levels, i: usize, m: usize) -> VLaurent {
        product(levels.s_chain(i)[..=m].iter().map(|&j| &self.t[j]))
    }
}

pub fn nf_mul(pres: &CGLPresentation, a: &NFPoly, b: &NFPoly) -> Result<NFPoly> {
    for p in [a, b] {
        if p.nvars() != pres.n {
            return Err(Error::DimensionMismatch { expected: pres.n, actual: p.nvars() });
        }
    }
    Rewriter::new(pres).mul(a, b)
}

pub fn nf_product(pres: &CGLPresentation, factors: &[&NFPoly]) -> Result<NFPoly> {
    let mut rw = Rewriter::new(pres);
    let mut acc = pres.one();
    for f in factors {
        acc = rw.mul(&acc, f)?;
    }
    Ok(acc)
}

pub fn leading_term(a: &NFPoly) -> Result<(VLaurent, Exponent)> {
    a.leading_term()
}

/// Whether `lt(x_n^m_n ... x_1^m_1) = S_lambda(f) x^f`.
pub fn xcomm_check(pres: &CGLPresentation, f: &[u32]) -> Result<bool> {
    if f.len() != pres.n {
        return Err(Error::DimensionMismatch { expected: pres.n, actual: f.len() });
    }
    let mut rw = Rewriter::new(pres);
    let mut acc = pres.one();
    for k in (0..pres.n).rev() {
        for _ in 0..f[k] {
            acc = rw.poly_gen(&acc, k)?;
        }
    }
    let (c, g) = acc.leading_term()?;
    let fi: Vec<i64> = f.iter().map(|&m| m as i64).collect();
    Ok(g == f && c == scr(&pres.lambda_exp, &fi)?)
}

/// The scalar `c` with `a b = c b a`, if one exists and is a power of `v`.
pub fn quasi_commutation(pres: &CGLPresentation, a: &NFPoly, b: &NFPoly) -> Result<Option<Q>> {
    let ab = nf_mul(pres, a, b)?;
    let ba = nf_mul(pres, b, a)?;
    if ab.is_zero() && ba.is_zero() {
        return Ok(Some(Q::zero()));
    }
    let (Ok((c1, f1)), Ok((c2, f2))) = (ab.leading_term(), ba.leading_term()) else {
        return Ok(None);
    };
    if f1 != f2 {
        return Ok(None);
    }
    let (Some((e1, k1)), Some((e2, k2))) = (c1.as_monomial(), c2.as_monomial()) else {
        return Ok(None);
    };
    if k1 != k2 {
        return Ok(None);
    }
    let e = e1 - e2;
    Ok((ab == ba.scale(&VLaurent::vpow(e.clone()))).then_some(e))
}

fn check_normal(pres: &CGLPresentation, y: &NFPoly, range: std::ops::Range<usize>, what: &str) -> Result<()> {
    for j in range {
        if quasi_commutation(pres, y, &pres.gen(j))?.is_none() {
            return Err(Error::Assertion(format!("{what} does not quasi-commute with x{}", j + 1)));
        }
    }
    Ok(())
}

fn chain_exponent(n: usize, chain: &[usize]) -> Exponent {
    let mut f = vec![0; n];
    for &i in chain {
        f[i] += 1;
    }
    f
}

fn check_prime_shape(pres: &CGLPresentation, y: &NFPoly, chain: &[usize], what: &str) -> Result<()> {
    let expect = chain_exponent(pres.n, chain);
    let (c, f) = y.leading_term()?;
    if !c.is_one() || f != expect {
        return Err(Error::Assertion(format!("{what} has leading term ({c}) x^{f:?}, expected x^{expect:?}")));
    }
    let deg = exponent_degree(&pres.degrees, &expect);
    if y.homogeneous_degree(&pres.degrees) != Some(deg) {
        return Err(Error::Assertion(format!("{what} is not homogeneous of its chain degree")));
    }
    Ok(())
}

/// `y_k = y_p(k) x_k - c_k`, with `y_k = x_k` at the bottom of each level.
pub fn y_elements(pres: &CGLPresentation, c: &BTreeMap<usize, NFPoly>) -> Result<Vec<NFPoly>> {
    let n = pres.n;
    let mut ys: Vec<NFPoly> = Vec::with_capacity(n);
    for k in 0..n {
        let y = match pres.levels.p[k].finite() {
            None => pres.gen(k),
            Some(p) => {
                let ck = c.get(&k).cloned().unwrap_or_else(|| NFPoly::zero(n));
                if ck.support().iter().any(|&i| i >= k) {
                    return Err(Error::Assertion(format!("c_{} is not in R_{}", k + 1, k)));
                }
                nf_mul(pres, &ys[p], &pres.gen(k))?.sub(&ck)
            }
        };
        let what = format!("y_{}", k + 1);
        check_prime_shape(pres, &y, &pres.levels.p_chain(k), &what)?;
        check_normal(pres, &y, 0..k + 1, &what)?;
        ys.push(y);
    }
    Ok(ys)
}

/// Prime elements `y_[i, k]` of interval subalgebras, keyed by `(i, k)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IntervalYs {
    pub map: BTreeMap<(usize, usize), NFPoly>,
}

impl IntervalYs {
    /// Seeds the table with `y_[i, i] = x_i` and `y_[min, k] = y_k`.
    pub fn from_y_elements(pres: &CGLPresentation, ys: &[NFPoly]) -> Self {
        let mut map = BTreeMap::new();
        for (k, y) in ys.iter().enumerate() {
            map.insert((k, k), pres.gen(k));
            map.insert((pres.levels.min_of_level(k), k), y.clone());
        }
        IntervalYs { map }
    }

    /// Adds a caller-supplied `y_[i, s^m(i)]` after checking its leading
    /// term, homogeneity, support and normality in `R_[i, s^m(i)]`.
    pub fn insert(&mut self, pres: &CGLPresentation, i: usize, k: usize, y: NFPoly) -> Result<()> {
        let chain = pres.levels.s_chain(i);
        let m = chain
            .iter()
            .position(|&x| x == k)
            .ok_or_else(|| Error::Assertion(format!("{} is not in the successor chain of {}", k + 1, i + 1)))?;
        let what = format!("y_[{},{}]", i + 1, k + 1);
        check_prime_shape(pres, &y, &chain[..=m], &what)?;
        if y.support().iter().any(|&j| j < i || j > k) {
            return Err(Error::Assertion(format!("{what} leaves its interval")));
        }
        check_normal(pres, &y, i..k + 1, &what)?;
        self.map.insert((i, k), y);
        Ok(())
    }

    fn get(&self, pres: &CGLPresentation, i: usize, k: usize) -> Result<NFPoly> {
        if k < i {
            return Ok(pres.one());
        }
        self.map
            .get(&(i, k))
            .cloned()
            .ok_or_else(|| Error::Assertion(format!("y_[{},{}] was not supplied", i + 1, k + 1)))
    }

    pub fn rescaled(&self, pres: &CGLPresentation, report: &RescaleReport) -> Self {
        let mut map = BTreeMap::new();
        for (&(i, k), y) in &self.map {
            let m = pres.levels.s_chain(i).iter().position(|&x| x == k).expect("interval on a chain");
            map.insert((i, k), rescale_poly(&report.t, y).scale(&report.interval_scalar(&pres.levels, i, m)));
        }
        IntervalYs { map }
    }
}

/// `u_[i, s^m(i)]`, checked to be a nonzero homogeneous normal element of
/// `R_[i+1, s^m(i)-1]`.
pub fn u_element(pres: &CGLPresentation, ys: &IntervalYs, i: usize, m: usize) -> Result<NFPoly> {
    if m == 0 {
        return Err(Error::Assertion("u needs m > 0".into()));
    }
    let chain = pres.levels.s_chain(i);
    if m >= chain.len() {
        return Err(Error::Assertion(format!("s^{m}({}) is infinite", i + 1)));
    }
    let (si, top, prev) = (chain[1], chain[m], chain[m - 1]);
    let mut mid = vec![0i64; pres.n];
    for &j in &chain[1..m] {
        mid[j] += 1;
    }
    let mut ei = vec![0i64; pres.n];
    ei[i] = 1;
    let omega = VLaurent::vpow(FrameMatrix::new(pres.lambda_exp.clone())?.pairing(&ei, &mid)?);
    let first = nf_mul(pres, &ys.get(pres, i, prev)?, &ys.get(pres, si, top)?)?;
    let second = nf_mul(pres, &ys.get(pres, si, prev)?, &ys.get(pres, i, top)?)?;
    let u = first.sub(&second.scale(&omega));
    let what = format!("u_[{},{}]", i + 1, top + 1);
    if u.is_zero() {
        return Err(Error::Assertion(format!("{what} vanishes")));
    }
    if u.support().iter().any(|&j| j <= i || j >= top) {
        return Err(Error::Assertion(format!("{what} is not supported strictly inside the interval")));
    }
    if u.homogeneous_degree(&pres.degrees).is_none() {
        return Err(Error::Assertion(format!("{what} is not homogeneous")));
    }
    check_normal(pres, &u, i + 1..top, &what)?;
    Ok(u)
}

fn scr_nu(pres: &CGLPresentation, f: &[i64]) -> Result<VLaurent> {
    scr(&pres.nu_exp(), f)
}

/// One instance of the leading-coefficient normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct CondCheck {
    pub i: usize,
    pub m: usize,
    pub pi: VLaurent,
    pub f: Exponent,
    pub expected: VLaurent,
    pub pass: bool,
}

/// Compares `pi_[i, s^m(i)]` with `S_nu(e_[s(i), s^m(i)])^-2 S_nu(-e_i + f)`;
/// for `m = 1` the first factor is trivial.
pub fn cond_check(pres: &CGLPresentation, ys: &IntervalYs, i: usize, m: usize) -> Result<CondCheck> {
    let u = u_element(pres, ys, i, m)?;
    let (pi, f) = u.leading_term()?;
    let chain = pres.levels.s_chain(i);
    let mut base: Vec<i64> = f.iter().map(|&x| x as i64).collect();
    base[i] -= 1;
    let mut expected = scr_nu(pres, &base)?;
    if m >= 2 {
        let e = chain_exponent(pres.n, &chain[1..=m]);
        let e: Vec<i64> = e.iter().map(|&x| x as i64).collect();
        let s = scr_nu(pres, &e)?.inverse_monomial().expect("unit");
        expected = &expected * &(&s * &s);
    }
    let pass = pi == expected;
    Ok(CondCheck { i, m, pi, f, expected, pass })
}

/// All normalization checks with `s^m(i)` finite.
pub fn all_cond_checks(pres: &CGLPresentation, ys: &IntervalYs) -> Result<Vec<CondCheck>> {
    let mut out = Vec::new();
    for i in 0..pres.n {
        for m in 1..pres.levels.s_chain(i).len() {
            out.push(cond_check(pres, ys, i, m)?);
        }
    }
    Ok(out)
}

/// `S_nu(f) y` for the normalized prime elements.
pub fn normalized(pres: &CGLPresentation, y: &NFPoly, chain: &[usize]) -> Result<NFPoly> {
    let e: Vec<i64> = chain_exponent(pres.n, chain).iter().map(|&x| x as i64).collect();
    Ok(y.scale(&scr_nu(pres, &e)?))
}

/// Frame of a family of pairwise quasi-commuting elements:
/// `z_k z_j = v^(2 psi_kj) z_j z_k`.
pub fn frame_of(pres: &CGLPresentation, vars: &[NFPoly]) -> Result<FrameMatrix> {
    let n = vars.len();
    let mut psi = crate::rational::zero_matrix(n, n);
    for k in 0..n {
        for j in 0..k {
            let e = quasi_commutation(pres, &vars[k], &vars[j])?
                .ok_or_else(|| Error::Assertion(format!("variables {} and {} do not quasi-commute", k + 1, j + 1)))?;
            psi[k][j] = &e / q(2);
            psi[j][k] = -&e / q(2);
        }
    }
    FrameMatrix::new(psi)
}

/// `M(f)` for `f >= 0` in the torus generated by `vars` with the given frame.
pub fn torus_monomial(pres: &CGLPresentation, frame: &FrameMatrix, vars: &[NFPoly], f: &[i64]) -> Result<NFPoly> {
    if f.iter().any(|&x| x < 0) {
        return Err(Error::Assertion("torus monomial with a negative exponent".into()));
    }
    let mut factors = Vec::new();
    for (k, &m) in f.iter().enumerate() {
        for _ in 0..m {
            factors.push(&vars[k]);
        }
    }
    Ok(nf_product(pres, &factors)?.scale(&scr(frame.psi(), f)?))
}

/// Checks `M(-e_k + [b]_+) + M(-e_k + [-b]_+) = target` after multiplying
/// on the left by `M(e_k)`, which clears every denominator.
pub fn verify_exchange(
    pres: &CGLPresentation,
    frame: &FrameMatrix,
    vars: &[NFPoly],
    k: usize,
    b: &[i64],
    target: &NFPoly,
) -> Result<bool> {
    let n = vars.len();
    let mut ek = vec![0; n];
    ek[k] = 1;
    let lhs = nf_mul(pres, &vars[k], target)?;
    let mut rhs = NFPoly::zero(pres.n);
    for sign in [1, -1] {
        let d: Vec<i64> = (0..n).map(|j| (sign * b[j]).max(0) - ek[j]).collect();
        let sum: Vec<i64> = d.iter().zip(&ek).map(|(x, y)| x + y).collect();
        let omega = VLaurent::vpow(frame.pairing(&ek, &d)?);
        rhs = rhs.add(&torus_monomial(pres, frame, vars, &sum)?.scale(&omega));
    }
    Ok(lhs == rhs)
}

fn vl(terms: &[(i64, i64)]) -> VLaurent {
    VLaurent::from_terms(terms.iter().map(|&(e, c)| (q(e), q(c))))
}

fn poly(n: usize, terms: &[(&[u32], VLaurent)]) -> NFPoly {
    NFPoly::from_terms(n, terms.iter().map(|(f, c)| (f.to_vec(), c.clone())))
}

/// `x_2 x_1 = q^2 x_1 x_2 + (1 - q^2)` with `x_1 = Y^-`, `x_2 = Y^+`.
pub fn sl2_presentation() -> CGLPresentation {
    let lambda = vec![vec![q(0), q(-4)], vec![q(4), q(0)]];
    let mut tails = BTreeMap::new();
    tails.insert((1, 0), NFPoly::constant(2, vl(&[(0, 1), (4, -1)])));
    CGLPresentation::new(lambda, tails, vec![1, 1], vec![vec![-1], vec![1]], vec![q(4), q(4)])
        .expect("valid presentation")
}

/// A fragment of the A2 double cell with `w = (1,2,1)`, `u = (1)`, levels
/// `(1,2,1,1)`, before normalization.
pub fn a2_presentation() -> CGLPresentation {
    let n = 4;
    let lam: [[i64; 4]; 4] = [[0, 2, -2, 2], [-2, 0, 2, -2], [2, -2, 0, -4], [-2, 2, 4, 0]];
    let lambda = lam.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let mut tails = BTreeMap::new();
    tails.insert((2, 0), poly(n, &[(&[0, 1, 0, 0], vl(&[(-2, 1), (2, -1)]))]));
    tails.insert((3, 2), NFPoly::constant(n, vl(&[(0, 1), (4, -1)])));
    let degrees = vec![vec![0, -1], vec![-1, -1], vec![-1, 0], vec![1, 0]];
    CGLPresentation::new(lambda, tails, vec![1, 2, 1, 1], degrees, vec![q(4); 4]).expect("valid presentation")
}

/// The elements `c_k` of the prime recursion for [`a2_presentation`].
pub fn a2_c() -> BTreeMap<usize, NFPoly> {
    let n = 4;
    let mut c = BTreeMap::new();
    c.insert(2, NFPoly::generator(n, 1));
    c.insert(3, NFPoly::generator(n, 0));
    c
}

/// Interval primes of [`a2_presentation`], including `y_[3,4] = x_3 x_4 - 1`.
pub fn a2_interval_ys(pres: &CGLPresentation) -> Result<IntervalYs> {
    let ys = y_elements(pres, &a2_c())?;
    let mut table = IntervalYs::from_y_elements(pres, &ys);
    let y34 = poly(4, &[(&[0, 0, 1, 1], VLaurent::one()), (&[0, 0, 0, 0], vl(&[(0, -1)]))]);
    table.insert(pres, 2, 3, y34)?;
    Ok(table)
}

/// Rescaling of [`a2_presentation`] after which the normalization holds.
pub fn a2_rescaling() -> Vec<VLaurent> {
    vec![VLaurent::one(), VLaurent::vpow(q(-1)), VLaurent::one(), VLaurent::one()]
}

/// Everything computed for the `sl_2` example.
#[derive(Debug, Clone)]
pub struct Sl2Example {
    pub pres: CGLPresentation,
    /// `p = q (Y^- Y^+ - 1)`.
    pub p: NFPoly,
    /// Cluster variables `(Y^-, p)` and `(Y^+, p)`.
    pub vars_id: Vec<NFPoly>,
    pub vars_swap: Vec<NFPoly>,
    pub seed_id: QuantumSeed,
    pub seed_swap: QuantumSeed,
    /// `Y^+ Y^- = q p + 1`.
    pub exchange_relation: bool,
    /// The mutation value at index 1 equals `Y^+`.
    pub mutation_value: bool,
    /// The mutated frame equals the frame computed from `(Y^+, p)`.
    pub mutation_frame: bool,
}

impl Sl2Example {
    pub fn pass(&self) -> bool {
        self.exchange_relation && self.mutation_value && self.mutation_frame
    }
}

pub fn sl2_example() -> Result<Sl2Example> {
    let pres = sl2_presentation();
    let ys = y_elements(&pres, &BTreeMap::from([(1, pres.one())]))?;
    let p = normalized(&pres, &ys[1], &[0, 1])?;
    let (ym, yp) = (pres.gen(0), pres.gen(1));
    let vars_id = vec![ym.clone(), p.clone()];
    let vars_swap = vec![yp.clone(), p.clone()];
    let lhs = nf_mul(&pres, &yp, &ym)?;
    let exchange_relation = lhs == p.scale(&VLaurent::qpow(1)).add(&pres.one());
    let seed_of = |vars: &[NFPoly], cols: Vec<Vec<i64>>| -> Result<QuantumSeed> {
        let frame = frame_of(&pres, vars)?;
        let degrees = vars
            .iter()
            .map(|v| v.homogeneous_degree(&pres.degrees).ok_or(Error::Assertion("inhomogeneous variable".into())))
            .collect::<Result<Vec<_>>>()?;
        QuantumSeed::new(frame, cols, vec![0], vec![], degrees, vec![1, 1])
    };
    let seed_id = seed_of(&vars_id, vec![vec![0, 1]])?;
    let seed_swap = seed_of(&vars_swap, vec![vec![0, -1]])?;
    let mutation_value = verify_exchange(&pres, &seed_id.frame, &vars_id, 0, &seed_id.cols[0], &yp)?;
    let mutation_frame = seed_id.mutate(0)? == seed_swap;
    Ok(Sl2Example {
        pres,
        p,
        vars_id,
        vars_swap,
        seed_id,
        seed_swap,
        exchange_relation,
        mutation_value,
        mutation_frame,
    })
}

/// Coefficients of a polynomial as `[v-exponent, coefficient]` string pairs.
pub fn laurent_pairs(c: &VLaurent) -> Vec<[String; 2]> {
    c.terms().map(|(e, x)| [fmt_q(e), fmt_q(x)]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_relation() {
        let p = sl2_presentation();
        let r = nf_mul(&p, &p.gen(1), &p.gen(0)).unwrap();
        let expect = poly(2, &[(&[1, 1], VLaurent::qpow(2)), (&[0, 0], vl(&[(0, 1), (4, -1)]))]);
        assert_eq!(r, expect);
        let (c, f) = r.leading_term().unwrap();
        assert_eq!((c, f), (VLaurent::qpow(2), vec![1, 1]));
        assert_eq!(nf_mul(&p, &r, &p.one()).unwrap(), r);
    }

    #[test]
    fn leading_term_order() {
        let s = NFPoly::generator(2, 0).add(&NFPoly::generator(2, 1));
        assert_eq!(s.leading_term().unwrap().1, vec![0, 1]);
        let s = poly(3, &[(&[5, 0, 0], VLaurent::one()), (&[0, 0, 1], VLaurent::qpow(1))]);
        assert_eq!(s.leading_term().unwrap(), (VLaurent::qpow(1), vec![0, 0, 1]));
        assert_eq!(NFPoly::zero(2).leading_term(), Err(Error::ZeroElement));
    }

    #[test]
    fn budget_is_enforced() {
        let p = sl2_presentation().with_step_budget(3);
        let x2 = NFPoly::monomial(vec![0, 3], VLaurent::one());
        let x1 = NFPoly::monomial(vec![3, 0], VLaurent::one());
        assert_eq!(nf_mul(&p, &x2, &x1), Err(Error::RewriteBudget(3)));
    }

    #[test]
    fn xcomm_sl2() {
        let p = sl2_presentation();
        for f in [[1, 0], [0, 1], [1, 1], [2, 1], [2, 2]] {
            assert!(xcomm_check(&p, &f).unwrap(), "{f:?}");
        }
    }

    #[test]
    fn sl2_primes() {
        let p = sl2_presentation();
        let ys = y_elements(&p, &BTreeMap::from([(1, p.one())])).unwrap();
        assert_eq!(ys[1], poly(2, &[(&[1, 1], VLaurent::one()), (&[0, 0], vl(&[(0, -1)]))]));
        let ybar = normalized(&p, &ys[1], &[0, 1]).unwrap();
        assert_eq!(ybar, ys[1].scale(&VLaurent::qpow(1)));
        assert!(y_elements(&p, &BTreeMap::from([(1, p.gen(1))])).is_err());
        assert!(y_elements(&p, &BTreeMap::new()).is_err());
        let table = IntervalYs::from_y_elements(&p, &ys);
        let u = u_element(&p, &table, 0, 1).unwrap();
        assert_eq!(u, p.one());
        assert!(cond_check(&p, &table, 0, 1).unwrap().pass);
    }

    #[test]
    fn sl2_bundle() {
        let ex = sl2_example().unwrap();
        assert!(ex.exchange_relation && ex.mutation_value && ex.mutation_frame);
        assert_eq!(ex.seed_id.frame.entry(0, 1), &q(-2));
        assert_eq!(ex.vars_id[1], ex.vars_swap[1]);
    }

    #[test]
    fn rescale_sl2() {
        let p = sl2_presentation();
        let (same, _) = p.rescale(&[VLaurent::one(), VLaurent::one()]).unwrap();
        assert_eq!(same.tails, p.tails);
        let v = VLaurent::vpow(q(1));
        let (r, rep) = p.rescale(&[v.clone(), v.clone()]).unwrap();
        assert_eq!(r.tails[&(1, 0)], p.tails[&(1, 0)].scale(&VLaurent::vpow(q(2))));
        assert_eq!(r.lambda_exp, p.lambda_exp);
        assert_eq!(rep.y_scalars[1], VLaurent::vpow(q(2)));
        assert_eq!(rep.u_scalars[&(0, 1)], VLaurent::vpow(q(2)));
        let bad = &VLaurent::one() + &v;
        assert!(p.rescale(&[bad, v]).is_err());
    }

    #[test]
    fn a2_audit_and_primes() {
        let p = a2_presentation();
        let rep = p.audit(200, 7);
        assert!(rep.pass, "{rep:?}");
        let table = a2_interval_ys(&p).unwrap();
        let y4 = &table.map[&(0, 3)];
        let expect = poly(
            4,
            &[(&[1, 0, 1, 1], VLaurent::one()), (&[0, 1, 0, 1], vl(&[(0, -1)])), (&[1, 0, 0, 0], vl(&[(0, -1)]))],
        );
        assert_eq!(y4, &expect);
    }
}
