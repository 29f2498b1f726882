//! Seed data attached to a pair of reduced words `(w, u)`: the bowtie
//! commutation matrices, the family of seeds indexed by `Xi_{N+M}`, the
//! BFZ matrix, the column formula for every member of the family with a
//! linear-algebra oracle, and the (modified) Berenstein-Zelevinsky seeds.

use num_traits::Zero;
use serde::Serialize;

use crate::coxeter::{
    check_xi, longest_on_prefix, Bound, CartanData, DoubleWordData, Levels, Perm, RootVec, WeightVec,
};
use crate::error::{Error, Result};
use crate::qtorus::{frame_restrict, FrameMatrix};
use crate::rational::{inverse, q, q_vec_to_i64, solve, QMatrix, Solution, Q};
use crate::seed::QuantumSeed;

/// Commutation data of the double-word algebra, exponents in `v = sqrt(q)`.
#[derive(Debug, Clone)]
pub struct BowtiePresentation {
    pub cartan: CartanData,
    pub dwd: DoubleWordData,
    /// `lambda_exp[k][j] = log_v lambda_kj`.
    pub lambda_exp: QMatrix,
    pub nu_exp: QMatrix,
    /// `log_v lambda*_k = 4 d_{eta(k)}`.
    pub lambda_star: Vec<Q>,
    pub degrees: Vec<RootVec>,
}

impl BowtiePresentation {
    pub fn build(cartan: &CartanData, w_word: &[usize], u_word: &[usize]) -> Result<Self> {
        let dwd = DoubleWordData::new(cartan, w_word, u_word)?;
        let n = dwd.n();
        let len = dwd.len();
        let mut lambda_exp = crate::rational::zero_matrix(len, len);
        for k in 0..len {
            for j in 0..k {
                let pairing = cartan.root_pairing(dwd.root_at(k), dwd.root_at(j));
                // log_q lambda_kj for k > j: both blocks carry -<.,.>, the mixed block +<.,.>.
                let log_q = if k < n || j >= n { -pairing } else { pairing };
                lambda_exp[k][j] = q(2 * log_q);
                lambda_exp[j][k] = q(-2 * log_q);
            }
        }
        let nu_exp = lambda_exp.iter().map(|r| r.iter().map(|x| x / q(2)).collect()).collect();
        let lambda_star = (0..len).map(|k| q(4 * cartan.d[dwd.eta(k) - 1])).collect();
        let degrees = dwd.degrees();
        Ok(BowtiePresentation { cartan: cartan.clone(), dwd, lambda_exp, nu_exp, lambda_star, degrees })
    }

    pub fn len(&self) -> usize {
        self.dwd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dwd.is_empty()
    }

    pub fn n(&self) -> usize {
        self.dwd.n()
    }

    pub fn levels(&self) -> &Levels {
        &self.dwd.levels
    }

    pub fn nu_frame(&self) -> FrameMatrix {
        FrameMatrix::new(self.nu_exp.clone()).expect("nu is skew by construction")
    }

    /// `sigma = w°_N`, reversing the first N positions.
    pub fn longest(&self) -> Perm {
        longest_on_prefix(self.n(), self.len())
    }

    fn d_of_level(&self, level: usize) -> i64 {
        self.cartan.d[level - 1]
    }

    /// Levels of the re-presentation `eta ∘ sigma`.
    pub fn sigma_levels(&self, sigma: &[usize]) -> Levels {
        Levels::new(sigma.iter().map(|&s| self.dwd.eta(s)).collect())
    }
}

/// Frame part of the seed attached to `sigma`.
#[derive(Debug, Clone)]
pub struct SigmaSeedData {
    pub sigma: Perm,
    /// `ebar[j] = sum { e_i : i in sigma([1,j]), eta(i) = eta(sigma(j)) }`.
    pub ebar: Vec<Vec<i64>>,
    pub frame: FrameMatrix,
    pub z: Vec<Vec<i64>>,
    pub z_sigma: Vec<Vec<i64>>,
    pub ex: Vec<usize>,
    pub degrees: Vec<RootVec>,
    pub d: Vec<i64>,
}

fn columns_to_matrix(cols: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cols.len();
    (0..n).map(|j| (0..n).map(|k| cols[k][j]).collect()).collect()
}

fn ebar_vectors(pres: &BowtiePresentation, sigma: &[usize]) -> Vec<Vec<i64>> {
    let len = pres.len();
    (0..len)
        .map(|j| {
            let level = pres.dwd.eta(sigma[j]);
            let mut v = vec![0; len];
            for &i in &sigma[..=j] {
                if pres.dwd.eta(i) == level {
                    v[i] = 1;
                }
            }
            v
        })
        .collect()
}

pub fn sigma_frame(pres: &BowtiePresentation, sigma: &[usize]) -> Result<SigmaSeedData> {
    if sigma.len() != pres.len() {
        return Err(Error::DimensionMismatch { expected: pres.len(), actual: sigma.len() });
    }
    check_xi(sigma)?;
    let len = pres.len();
    let ebar = ebar_vectors(pres, sigma);
    let frame = frame_restrict(&pres.nu_frame(), &ebar)?;
    let identity: Perm = (0..len).collect();
    let z = columns_to_matrix(&ebar_vectors(pres, &identity));
    let z_sigma = columns_to_matrix(&ebar);
    let slev = pres.sigma_levels(sigma);
    let ex = slev.exchangeable();
    let degrees = ebar
        .iter()
        .map(|v| {
            let mut out = vec![0; pres.cartan.rank];
            for (i, &c) in v.iter().enumerate() {
                if c != 0 {
                    for (o, x) in out.iter_mut().zip(&pres.degrees[i]) {
                        *o += c * x;
                    }
                }
            }
            out
        })
        .collect();
    let d = sigma.iter().map(|&s| pres.d_of_level(pres.dwd.eta(s))).collect();
    Ok(SigmaSeedData { sigma: sigma.to_vec(), ebar, frame, z, z_sigma, ex, degrees, d })
}

/// The same frame through the permuted matrix `nu_sigma` and the normalised
/// vectors of the re-presentation, multiplied out entry by entry.
pub fn sigma_frame_product(pres: &BowtiePresentation, sigma: &[usize]) -> Result<FrameMatrix> {
    check_xi(sigma)?;
    let len = pres.len();
    let slev = pres.sigma_levels(sigma);
    let chains: Vec<Vec<usize>> = (0..len).map(|k| slev.p_chain(k)).collect();
    let mut psi = crate::rational::zero_matrix(len, len);
    for k in 0..len {
        for j in 0..len {
            let mut acc = Q::zero();
            for &a in &chains[k] {
                for &b in &chains[j] {
                    acc += &pres.nu_exp[sigma[a]][sigma[b]];
                }
            }
            psi[k][j] = acc;
        }
    }
    FrameMatrix::new(psi)
}

/// `(ex, columns)` of an exchange matrix.
pub type Columns = (Vec<usize>, Vec<Vec<i64>>);

/// The BFZ matrix on the columns `ex_{w°_N}`.
pub fn bfz_matrix(pres: &BowtiePresentation) -> Columns {
    let len = pres.len();
    let w0 = pres.longest();
    let lev = pres.sigma_levels(&w0);
    let eps = &pres.dwd.epsilon;
    let ex = lev.exchangeable();
    let key = |b: Bound| b.key();
    let idx = |x: usize| x as i64;
    let c = |j: usize, k: usize| pres.cartan.cartan[lev.eta[j] - 1][lev.eta[k] - 1];
    let cols = ex
        .iter()
        .map(|&k| {
            let sk = lev.s[k];
            (0..len)
                .map(|j| {
                    let sj = lev.s[j];
                    let eps_at = |b: Bound| eps[b.finite().expect("finite by the case condition")];
                    if lev.p[k] == Bound::At(j) {
                        -eps[k]
                    } else if sk == Bound::At(j) {
                        eps[j]
                    } else if (idx(j) < idx(k) && idx(k) < key(sj) && key(sj) < key(sk) && eps[k] == eps_at(sj))
                        || (idx(j) < idx(k) && idx(k) < key(sk) && key(sk) < key(sj) && eps[k] == -eps_at(sk))
                    {
                        -eps[k] * c(j, k)
                    } else if (idx(k) < idx(j) && idx(j) < key(sk) && key(sk) < key(sj) && eps[j] == eps_at(sk))
                        || (idx(k) < idx(j) && idx(j) < key(sj) && key(sj) < key(sk) && eps[j] == -eps_at(sj))
                    {
                        eps[j] * c(j, k)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    (ex, cols)
}

fn int_matrix_q(m: &[Vec<i64>]) -> QMatrix {
    crate::rational::int_to_q_matrix(m)
}

/// `A^-1 B` applied to an integer vector, checked to be integral.
fn change_basis(a_inv: &QMatrix, b: &[Vec<i64>], v: &[i64]) -> Result<Vec<i64>> {
    let bv: Vec<Q> = b.iter().map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (x, y)| acc + q(x * y))).collect();
    let out = crate::rational::mat_vec(a_inv, &bv);
    q_vec_to_i64(&out).ok_or_else(|| Error::NoIntegerSolution("basis change left the integer lattice".into()))
}

fn add_into(acc: &mut [i64], v: &[i64], sign: i64) {
    for (a, x) in acc.iter_mut().zip(v) {
        *a += sign * x;
    }
}

fn column(cols: &Columns, k: usize) -> Result<&Vec<i64>> {
    cols.0.iter().position(|&e| e == k).map(|c| &cols.1[c]).ok_or(Error::NotExchangeable(k + 1))
}

/// The exchange matrix of the identity presentation, recovered from the BFZ
/// matrix through the basis change between `sigma = id` and `sigma = w°_N`.
pub fn b_columns(pres: &BowtiePresentation) -> Result<Columns> {
    let n = pres.n();
    let lev = pres.levels();
    let bbar = bfz_matrix(pres);
    let w0 = pres.longest();
    let z = sigma_frame(pres, &(0..pres.len()).collect::<Vec<_>>())?.z;
    let z_w0 = sigma_frame(pres, &w0)?.z_sigma;
    let z_inv = inverse(&int_matrix_q(&z)).ok_or(Error::DependentVectors)?;
    let ex = lev.exchangeable();
    let mut cols = Vec::with_capacity(ex.len());
    let flip = |x: usize| n - 1 - x;
    for &l in &ex {
        let mut acc = vec![0; pres.len()];
        if l >= n {
            add_into(&mut acc, column(&bbar, l)?, 1);
        } else {
            let s = lev.s[l].finite().expect("exchangeable");
            if s < n {
                add_into(&mut acc, column(&bbar, flip(s))?, -1);
            } else {
                for i in lev.p_chain(l) {
                    add_into(&mut acc, column(&bbar, flip(i))?, 1);
                }
            }
        }
        cols.push(change_basis(&z_inv, &z_w0, &acc)?);
    }
    Ok((ex, cols))
}

/// Columns of the exchange matrix attached to `sigma`, from those of the
/// identity presentation.
pub fn btau_columns(pres: &BowtiePresentation, data: &SigmaSeedData, btilde: &Columns) -> Result<Vec<Vec<i64>>> {
    let lev = pres.levels();
    let sigma = &data.sigma;
    let zs_inv = inverse(&int_matrix_q(&data.z_sigma)).ok_or(Error::DependentVectors)?;
    let mut out = Vec::with_capacity(data.ex.len());
    for &l in &data.ex {
        let level = pres.dwd.eta(sigma[l]);
        let k = (l + 1..pres.len()).find(|&j| pres.dwd.eta(sigma[j]) == level).ok_or(Error::NotExchangeable(l + 1))?;
        let (a, b) = (sigma[l], sigma[k]);
        let mut acc = vec![0; pres.len()];
        let up = lev.s_chain(a);
        if let Some(m) = up.iter().position(|&x| x == b) {
            for &i in &up[..m] {
                add_into(&mut acc, column(btilde, i)?, 1);
            }
        } else {
            let down = lev.p_chain(a);
            let m = down
                .iter()
                .position(|&x| x == b)
                .ok_or_else(|| Error::Assertion(format!("positions {} and {} are not chained", a + 1, b + 1)))?;
            for &i in &down[1..=m] {
                add_into(&mut acc, column(btilde, i)?, -1);
            }
        }
        out.push(change_basis(&zs_inv, &data.z, &acc)?);
    }
    Ok(out)
}

/// Solves the defining linear conditions of the exchange column at `l`:
/// orthogonality to `e_j` for `j != l`, value `2 d` at `l`, and zero degree.
pub fn solve_b_oracle(pres: &BowtiePresentation, data: &SigmaSeedData, l: usize) -> Result<Vec<i64>> {
    solve_b_oracle_with_value(pres, data, l, q(2 * data.d[l]))
}

pub fn solve_b_oracle_with_value(
    pres: &BowtiePresentation,
    data: &SigmaSeedData,
    l: usize,
    value: Q,
) -> Result<Vec<i64>> {
    if !data.ex.contains(&l) {
        return Err(Error::NotExchangeable(l + 1));
    }
    let len = pres.len();
    let psi = data.frame.psi();
    let mut rows: QMatrix = Vec::new();
    let mut rhs = Vec::new();
    for j in 0..len {
        rows.push((0..len).map(|i| psi[i][j].clone()).collect());
        rhs.push(if j == l { value.clone() } else { Q::zero() });
    }
    for a in 0..pres.cartan.rank {
        rows.push((0..len).map(|i| q(data.degrees[i][a])).collect());
        rhs.push(Q::zero());
    }
    match solve(&rows, &rhs) {
        Solution::Unique(x) => q_vec_to_i64(&x).ok_or_else(|| {
            Error::NoIntegerSolution(format!("column {} of sigma {:?} is not integral", l + 1, one_based(&data.sigma)))
        }),
        Solution::Inconsistent => Err(Error::NoIntegerSolution(format!("column {} has no solution", l + 1))),
        Solution::Underdetermined(dim) => {
            Err(Error::NoIntegerSolution(format!("column {} is not determined ({dim} free parameters)", l + 1)))
        }
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

/// The full seed attached to `sigma` (frame, Btau columns, degrees).
pub fn sigma_seed(pres: &BowtiePresentation, sigma: &[usize]) -> Result<QuantumSeed> {
    let btilde = b_columns(pres)?;
    sigma_seed_with(pres, sigma, &btilde)
}

pub fn sigma_seed_with(pres: &BowtiePresentation, sigma: &[usize], btilde: &Columns) -> Result<QuantumSeed> {
    let data = sigma_frame(pres, sigma)?;
    let cols = btau_columns(pres, &data, btilde)?;
    QuantumSeed::new(data.frame, cols, data.ex, Vec::new(), data.degrees, data.d)
}

/// The `sigma = w°_N` seed with the BFZ matrix as exchange matrix.
pub fn bfz_seed(pres: &BowtiePresentation) -> Result<QuantumSeed> {
    let data = sigma_frame(pres, &pres.longest())?;
    let (ex, cols) = bfz_matrix(pres);
    QuantumSeed::new(data.frame, cols, ex, Vec::new(), data.degrees, data.d)
}

/// Outcome of comparing the seeds at `sigma` and `sigma (k, k+1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinkageReport {
    /// 0-based position `k`.
    pub k: usize,
    pub same_level: bool,
    pub pass: bool,
    /// For equal levels: the mutated seed reindexed by the transposition,
    /// compared against the seed at `sigma (k, k+1)`.
    pub transposed_mutation_matches: Option<bool>,
}

/// `sigma (k, k+1)`, or `None` if it leaves `Xi`.
pub fn adjacent(sigma: &[usize], k: usize) -> Option<Perm> {
    if k + 1 >= sigma.len() {
        return None;
    }
    let mut t = sigma.to_vec();
    t.swap(k, k + 1);
    crate::coxeter::is_xi(&t).then_some(t)
}

/// Seeds at adjacent members of `Xi` differ by a reindexing when the swapped
/// positions lie on different levels, and by the mutation at `k` otherwise.
pub fn linkage_check(pres: &BowtiePresentation, btilde: &Columns, sigma: &[usize], k: usize) -> Result<LinkageReport> {
    let next = adjacent(sigma, k).ok_or_else(|| Error::NotInXi(sigma.iter().map(|x| x + 1).collect()))?;
    let here = sigma_seed_with(pres, sigma, btilde)?;
    let there = sigma_seed_with(pres, &next, btilde)?;
    let mut swap: Perm = (0..pres.len()).collect();
    swap.swap(k, k + 1);
    let same_level = pres.dwd.eta(sigma[k]) == pres.dwd.eta(sigma[k + 1]);
    if same_level {
        let mutated = here.mutate(k)?;
        let transposed = mutated.reindex(&swap)? == there;
        Ok(LinkageReport { k, same_level, pass: mutated == there, transposed_mutation_matches: Some(transposed) })
    } else {
        Ok(LinkageReport { k, same_level, pass: here.reindex(&swap)? == there, transposed_mutation_matches: None })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BzVariant {
    Plain,
    Modified,
}

/// Which minor labels feed the frame exponents of a BZ-type seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameConvention {
    /// Both variants share the frame built from the plain labels.
    PlainLabels,
    /// Each variant uses its own labels.
    OwnLabels,
}

/// Which factor of the `P x P` grading is used for reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GradingComponent {
    First,
    Second,
}

#[derive(Debug, Clone)]
pub struct BZSeedData {
    pub variant: BzVariant,
    pub rank: usize,
    /// `(gamma_k, delta_k)` in fundamental-weight coordinates.
    pub labels: Vec<(WeightVec, WeightVec)>,
    pub levels: Levels,
    pub mu: QMatrix,
    /// Degrees are `(-gamma_k, delta_k)` concatenated.
    pub seed: QuantumSeed,
}

fn plain_bz_labels(cartan: &CartanData, w: &[usize], u: &[usize]) -> Result<Vec<(WeightVec, WeightVec)>> {
    let r = cartan.rank;
    let n = w.len();
    let w_inv: Vec<usize> = w.iter().rev().copied().collect();
    let mut out = Vec::with_capacity(r + n + u.len());
    for i in 1..=r {
        let om = cartan.fundamental_weight(i);
        out.push((om.clone(), cartan.act_weight(&w_inv, &om)?));
    }
    for k in 0..n {
        let om = cartan.fundamental_weight(w[k]);
        let tail: Vec<usize> = w[k + 1..].iter().rev().copied().collect();
        out.push((om.clone(), cartan.act_weight(&tail, &om)?));
    }
    for k in 0..u.len() {
        let om = cartan.fundamental_weight(u[k]);
        out.push((cartan.act_weight(&u[..=k], &om)?, om));
    }
    Ok(out)
}

fn mu_matrix(cartan: &CartanData, labels: &[(WeightVec, WeightVec)]) -> QMatrix {
    let n = labels.len();
    let mut mu = crate::rational::zero_matrix(n, n);
    for j in 0..n {
        for k in 0..j {
            let x =
                cartan.weight_pairing(&labels[j].0, &labels[k].0) - cartan.weight_pairing(&labels[j].1, &labels[k].1);
            mu[k][j] = -&x;
            mu[j][k] = x;
        }
    }
    mu
}

pub fn bz_exchange(cartan: &CartanData, levels: &Levels, r: usize, n: usize) -> Columns {
    let len = levels.len();
    let eps: Vec<i64> = (0..len).map(|k| if k < r + n { 1 } else { -1 }).collect();
    let ex: Vec<usize> = (r..len).filter(|&k| levels.s[k].is_finite()).collect();
    let idx = |x: usize| x as i64;
    let key = |b: Bound| b.key();
    let split = (r + n) as i64;
    let c = |j: usize, k: usize| cartan.cartan[levels.eta[j] - 1][levels.eta[k] - 1];
    let cols = ex
        .iter()
        .map(|&k| {
            let sk = levels.s[k];
            (0..len)
                .map(|j| {
                    let sj = levels.s[j];
                    let eps_at = |b: Bound| eps[b.finite().expect("finite by the case condition")];
                    if levels.p[k] == Bound::At(j) {
                        -eps[k]
                    } else if sk == Bound::At(j) {
                        eps[j]
                    } else if (idx(j) < idx(k) && idx(k) < key(sj) && key(sj) < key(sk) && eps[k] == eps_at(sj))
                        || (idx(j) < idx(k) && idx(k) < split && split <= key(sk) && key(sk) < key(sj))
                    {
                        -eps[k] * c(j, k)
                    } else if (idx(k) < idx(j) && idx(j) < key(sk) && key(sk) < key(sj) && eps[j] == eps_at(sk))
                        || (idx(k) < idx(j) && idx(j) < split && split <= key(sj) && key(sj) < key(sk))
                    {
                        eps[j] * c(j, k)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    (ex, cols)
}

pub fn bz_seed(
    cartan: &CartanData,
    w_word: &[usize],
    u_word: &[usize],
    variant: BzVariant,
    convention: FrameConvention,
) -> Result<BZSeedData> {
    cartan.check_reduced(w_word)?;
    cartan.check_reduced(u_word)?;
    let r = cartan.rank;
    let n = w_word.len();
    let plain = plain_bz_labels(cartan, w_word, u_word)?;
    let labels: Vec<(WeightVec, WeightVec)> = match variant {
        BzVariant::Plain => plain.clone(),
        BzVariant::Modified => plain.iter().map(|(g, d)| (d.clone(), g.clone())).collect(),
    };
    let mu = match convention {
        FrameConvention::PlainLabels => mu_matrix(cartan, &plain),
        FrameConvention::OwnLabels => mu_matrix(cartan, &labels),
    };
    let eta: Vec<usize> = (1..=r).chain(w_word.iter().copied()).chain(u_word.iter().copied()).collect();
    let levels = Levels::new(eta);
    let (ex, cols) = bz_exchange(cartan, &levels, r, n);
    let inv: Vec<usize> = (0..levels.len()).filter(|k| !ex.contains(k)).collect();
    let degrees = labels.iter().map(|(g, d)| g.iter().map(|x| -x).chain(d.iter().copied()).collect()).collect();
    let d = levels.eta.iter().map(|&i| cartan.d[i - 1]).collect();
    let seed = QuantumSeed::new(FrameMatrix::new(mu.clone())?, cols, ex, inv, degrees, d)?;
    Ok(BZSeedData { variant, rank: r, labels, levels, mu, seed })
}

impl BZSeedData {
    /// The seed with degrees restricted to one factor of the grading.
    pub fn graded_by(&self, component: GradingComponent) -> QuantumSeed {
        let r = self.rank;
        let mut s = self.seed.clone();
        s.degrees = s
            .degrees
            .iter()
            .map(|d| match component {
                GradingComponent::First => d[..r].to_vec(),
                GradingComponent::Second => d[r..].to_vec(),
            })
            .collect();
        s
    }

    pub fn reduced(&self, component: GradingComponent) -> Result<QuantumSeed> {
        self.graded_by(component).graded_reduce(self.rank)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConnectionsReport {
    pub frames_match: bool,
    pub exchange_match: bool,
    pub ex_match: bool,
    pub frame_mismatches: Vec<(usize, usize)>,
    pub pass: bool,
}

/// Compares the `w°_N` seed with the antiisomorphic image of the reduced
/// modified BZ seed.
pub fn connections_check(
    cartan: &CartanData,
    w_word: &[usize],
    u_word: &[usize],
    convention: FrameConvention,
    component: GradingComponent,
) -> Result<ConnectionsReport> {
    let pres = BowtiePresentation::build(cartan, w_word, u_word)?;
    let left = bfz_seed(&pres)?.canonical();
    let mbz = bz_seed(cartan, w_word, u_word, BzVariant::Modified, convention)?;
    let right = mbz.reduced(component)?.antiiso().canonical();
    let len = pres.len();
    let mut frame_mismatches = Vec::new();
    for k in 0..len {
        for j in 0..len {
            if left.frame.entry(k, j) != right.frame.entry(k, j) {
                frame_mismatches.push((k + 1, j + 1));
            }
        }
    }
    let ex_match = left.ex == right.ex;
    let exchange_match = ex_match && left.cols == right.cols;
    let frames_match = frame_mismatches.is_empty();
    Ok(ConnectionsReport {
        frames_match,
        exchange_match,
        ex_match,
        frame_mismatches,
        pass: frames_match && exchange_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> CartanData {
        CartanData::new('A', 1).unwrap()
    }

    fn a2() -> CartanData {
        CartanData::new('A', 2).unwrap()
    }

    #[test]
    fn bowtie_a1() {
        let p = BowtiePresentation::build(&a1(), &[1], &[1]).unwrap();
        assert_eq!(p.lambda_exp[1][0], q(4));
        assert_eq!(p.nu_exp[1][0], q(2));
        assert_eq!(p.lambda_star, vec![q(4), q(4)]);
        assert_eq!(p.degrees, vec![vec![-1], vec![1]]);
    }

    #[test]
    fn bowtie_a2_signs() {
        let p = BowtiePresentation::build(&a2(), &[1, 2, 1], &[1]).unwrap();
        let expect = [(1, 0, -2), (2, 0, 2), (2, 1, -2), (3, 0, -2), (3, 1, 2), (3, 2, 4)];
        for (k, j, e) in expect {
            assert_eq!(p.lambda_exp[k][j], q(e), "lambda_{}{}", k + 1, j + 1);
        }
        let g2 = CartanData::new('G', 2).unwrap();
        let p = BowtiePresentation::build(&g2, &[1, 2], &[2]).unwrap();
        assert_eq!(p.lambda_star, vec![q(12), q(4), q(12)]);
    }

    #[test]
    fn sigma_frame_a1() {
        let p = BowtiePresentation::build(&a1(), &[1], &[1]).unwrap();
        let d = sigma_frame(&p, &[0, 1]).unwrap();
        assert_eq!(d.frame.entry(1, 0), &q(2));
        assert_eq!(d.ebar, vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(d.z, vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(d.degrees, vec![vec![-1], vec![0]]);
        assert!(sigma_frame(&p, &[0]).is_err());
    }

    #[test]
    fn identity_ebar_is_p_chain() {
        let p = BowtiePresentation::build(&a2(), &[1, 2, 1], &[1, 2]).unwrap();
        let id: Perm = (0..5).collect();
        let d = sigma_frame(&p, &id).unwrap();
        for j in 0..5 {
            let mut v = vec![0; 5];
            for i in p.levels().p_chain(j) {
                v[i] = 1;
            }
            assert_eq!(d.ebar[j], v);
        }
    }

    #[test]
    fn product_and_congruence_routes_agree() {
        let p = BowtiePresentation::build(&a2(), &[1, 2], &[1]).unwrap();
        for sigma in crate::coxeter::xi_enumerate(3) {
            assert_eq!(sigma_frame(&p, &sigma).unwrap().frame, sigma_frame_product(&p, &sigma).unwrap());
        }
        let p = BowtiePresentation::build(&a2(), &[1, 2, 1], &[2]).unwrap();
        for sigma in crate::coxeter::xi_enumerate(4) {
            assert_eq!(sigma_frame(&p, &sigma).unwrap().frame, sigma_frame_product(&p, &sigma).unwrap());
        }
    }

    #[test]
    fn bfz_examples() {
        let p = BowtiePresentation::build(&a1(), &[1], &[1]).unwrap();
        assert_eq!(bfz_matrix(&p), (vec![0], vec![vec![0, 1]]));
        let p = BowtiePresentation::build(&a2(), &[1, 2, 1], &[]).unwrap();
        assert_eq!(bfz_matrix(&p), (vec![0], vec![vec![0, 1, -1]]));
        let p = BowtiePresentation::build(&a2(), &[], &[1, 2, 1]).unwrap();
        assert_eq!(bfz_matrix(&p), (vec![0], vec![vec![0, -1, 1]]));
    }

    #[test]
    fn bfz_skew_symmetrizable_a2() {
        let p = BowtiePresentation::build(&a2(), &[1, 2], &[1, 2]).unwrap();
        let s = bfz_seed(&p).unwrap();
        assert!(s.check_compatible().skew_failures.is_empty());
    }

    #[test]
    fn b_columns_a1() {
        let p = BowtiePresentation::build(&a1(), &[1], &[1]).unwrap();
        assert_eq!(b_columns(&p).unwrap(), (vec![0], vec![vec![0, 1]]));
        let d = sigma_frame(&p, &[0, 1]).unwrap();
        assert_eq!(solve_b_oracle(&p, &d, 0).unwrap(), vec![0, 1]);
        assert!(matches!(solve_b_oracle(&p, &d, 1), Err(Error::NotExchangeable(2))));
        assert!(solve_b_oracle_with_value(&p, &d, 0, q(3)).is_err());
    }

    #[test]
    fn btau_identity_and_longest() {
        let p = BowtiePresentation::build(&a2(), &[1, 2, 1], &[1]).unwrap();
        let bt = b_columns(&p).unwrap();
        let id: Perm = (0..4).collect();
        let d = sigma_frame(&p, &id).unwrap();
        assert_eq!(btau_columns(&p, &d, &bt).unwrap(), bt.1);
        let d = sigma_frame(&p, &p.longest()).unwrap();
        let (ex, cols) = bfz_matrix(&p);
        assert_eq!(d.ex, ex);
        assert_eq!(btau_columns(&p, &d, &bt).unwrap(), cols);
        for &l in &bt.0 {
            let d = sigma_frame(&p, &id).unwrap();
            let pos = bt.0.iter().position(|&e| e == l).unwrap();
            assert_eq!(solve_b_oracle(&p, &d, l).unwrap(), bt.1[pos]);
        }
    }

    #[test]
    fn bz_a1() {
        let s = bz_seed(&a1(), &[1], &[1], BzVariant::Plain, FrameConvention::PlainLabels).unwrap();
        assert_eq!(s.levels.eta, vec![1, 1, 1]);
        assert_eq!(s.seed.ex, vec![1]);
        assert_eq!(s.seed.inv, vec![0, 2]);
        assert_eq!(s.seed.cols, vec![vec![-1, 0, -1]]);
        assert_eq!(s.labels[0], (vec![1], vec![-1]));
        assert!(s.seed.check_compatible().pass, "{}", s.seed.check_compatible().summary());
    }

    #[test]
    fn bz_labels_a2() {
        let s = bz_seed(&a2(), &[1, 2, 1], &[1, 2, 1], BzVariant::Plain, FrameConvention::PlainLabels).unwrap();
        let c = a2();
        for i in 1..=2 {
            let om = c.fundamental_weight(i);
            assert_eq!(s.labels[i - 1], (om.clone(), c.act_weight(&[1, 2, 1], &om).unwrap()));
        }
        assert!(s.mu.iter().flatten().all(|x| x.is_integer()));
        let m = bz_seed(&a2(), &[1, 2, 1], &[1, 2, 1], BzVariant::Modified, FrameConvention::OwnLabels).unwrap();
        for (a, b) in s.labels.iter().zip(&m.labels) {
            assert_eq!((a.1.clone(), a.0.clone()), *b);
        }
        assert_eq!(FrameMatrix::new(m.mu.clone()).unwrap(), FrameMatrix::new(s.mu.clone()).unwrap().negated());
    }

    #[test]
    fn connections_a1() {
        let rep = connections_check(&a1(), &[1], &[1], FrameConvention::PlainLabels, GradingComponent::First).unwrap();
        assert!(rep.pass, "{rep:?}");
    }
}
