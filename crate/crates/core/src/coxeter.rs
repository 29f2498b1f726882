//! Finite root systems, Weyl-group words and the level/chain bookkeeping of
//! double reduced words.
//!
//! Positions inside a double word are 0-based in this module; simple-root
//! labels (word letters, values of `eta`) are 1-based as in the usual
//! Dynkin labelling.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{int_to_q_matrix, inverse, q, QMatrix, Q};

pub type WeightVec = Vec<i64>;
pub type RootVec = Vec<i64>;

/// Finite-type Cartan data in Bourbaki labelling.
#[derive(Debug, Clone, PartialEq)]
pub struct CartanData {
    pub family: char,
    pub rank: usize,
    /// `cartan[i][j] = <alpha_i^vee, alpha_j>`.
    pub cartan: Vec<Vec<i64>>,
    /// Half squared lengths, short roots normalised to `<alpha, alpha> = 2`.
    pub d: Vec<i64>,
    /// `<alpha_i, alpha_j>`.
    pub gram: Vec<Vec<i64>>,
    /// `<varpi_i, varpi_j>`.
    pub pairing_ww: QMatrix,
}

fn gram_matrix(family: char, n: usize) -> Option<Vec<Vec<i64>>> {
    let mut g = vec![vec![0i64; n]; n];
    let link = |g: &mut Vec<Vec<i64>>, a: usize, b: usize, v: i64| {
        g[a - 1][b - 1] = v;
        g[b - 1][a - 1] = v;
    };
    match (family, n) {
        ('A', n) if n >= 1 => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 1..n {
                link(&mut g, i, i + 1, -1);
            }
        }
        ('B', n) if n >= 2 => {
            for i in 0..n - 1 {
                g[i][i] = 4;
            }
            g[n - 1][n - 1] = 2;
            for i in 1..n {
                link(&mut g, i, i + 1, -2);
            }
        }
        ('C', n) if n >= 3 => {
            for i in 0..n - 1 {
                g[i][i] = 2;
            }
            g[n - 1][n - 1] = 4;
            for i in 1..n - 1 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, n - 1, n, -2);
        }
        ('D', n) if n >= 4 => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 1..n - 1 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, n - 2, n, -1);
        }
        ('E', n) if (6..=8).contains(&n) => {
            for i in 0..n {
                g[i][i] = 2;
            }
            link(&mut g, 1, 3, -1);
            link(&mut g, 2, 4, -1);
            for i in 3..n {
                link(&mut g, i, i + 1, -1);
            }
        }
        ('F', 4) => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -2);
            link(&mut g, 3, 4, -1);
        }
        ('G', 2) => {
            g[0][0] = 2;
            g[1][1] = 6;
            link(&mut g, 1, 2, -3);
        }
        _ => return None,
    }
    Some(g)
}

impl CartanData {
    pub fn new(family: char, rank: usize) -> Result<Self> {
        let family = family.to_ascii_uppercase();
        let gram = gram_matrix(family, rank).ok_or(Error::InvalidCartanType { family, rank })?;
        let d: Vec<i64> = (0..rank).map(|i| gram[i][i] / 2).collect();
        let cartan: Vec<Vec<i64>> =
            (0..rank).map(|i| (0..rank).map(|j| 2 * gram[i][j] / gram[i][i]).collect()).collect();
        // <varpi_i, alpha_j> = d_i delta_ij and alpha_j = sum_k c_kj varpi_k, so P C = D.
        let cinv = inverse(&int_to_q_matrix(&cartan)).expect("finite-type Cartan matrix is invertible");
        let pairing_ww = (0..rank).map(|i| cinv[i].iter().map(|x| x * q(d[i])).collect()).collect();
        Ok(CartanData { family, rank, cartan, d, gram, pairing_ww })
    }

    /// Parses labels such as `A2`, `g2`, `E8`.
    pub fn from_label(label: &str) -> Result<Self> {
        let label = label.trim();
        let mut chars = label.chars();
        let family = chars.next().ok_or_else(|| Error::Parse("empty Cartan type".into()))?;
        let rank: usize = chars.as_str().parse().map_err(|_| Error::Parse(format!("bad Cartan type {label:?}")))?;
        Self::new(family, rank)
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank {
            Err(Error::IndexOutOfRange { index: i, rank: self.rank })
        } else {
            Ok(())
        }
    }

    /// Simple reflection on a weight in fundamental-weight coordinates.
    pub fn reflect(&self, i: usize, mu: &[i64]) -> Result<WeightVec> {
        self.check_index(i)?;
        let a = i - 1;
        let m = mu[a];
        Ok((0..self.rank).map(|j| mu[j] - m * self.cartan[j][a]).collect())
    }

    /// Simple reflection on a root in simple-root coordinates.
    pub fn reflect_root(&self, i: usize, beta: &[i64]) -> Result<RootVec> {
        self.check_index(i)?;
        let a = i - 1;
        let pairing: i64 = (0..self.rank).map(|k| beta[k] * self.cartan[a][k]).sum();
        let mut out = beta.to_vec();
        out[a] -= pairing;
        Ok(out)
    }

    /// Applies `s_{word[0]} s_{word[1]} ...` (rightmost letter first).
    pub fn act_weight(&self, word: &[usize], mu: &[i64]) -> Result<WeightVec> {
        let mut v = mu.to_vec();
        for &i in word.iter().rev() {
            v = self.reflect(i, &v)?;
        }
        Ok(v)
    }

    pub fn act_root(&self, word: &[usize], beta: &[i64]) -> Result<RootVec> {
        let mut v = beta.to_vec();
        for &i in word.iter().rev() {
            v = self.reflect_root(i, &v)?;
        }
        Ok(v)
    }

    pub fn simple_root(&self, i: usize) -> RootVec {
        let mut v = vec![0; self.rank];
        v[i - 1] = 1;
        v
    }

    pub fn fundamental_weight(&self, i: usize) -> WeightVec {
        self.simple_root(i)
    }

    /// Simple-root coordinates to fundamental-weight coordinates.
    pub fn root_to_weight(&self, beta: &[i64]) -> WeightVec {
        (0..self.rank).map(|j| (0..self.rank).map(|i| self.cartan[j][i] * beta[i]).sum()).collect()
    }

    /// Fundamental-weight coordinates to simple-root coordinates, when integral.
    pub fn weight_to_root(&self, mu: &[i64]) -> Option<RootVec> {
        let cinv = inverse(&int_to_q_matrix(&self.cartan))?;
        (0..self.rank)
            .map(|i| {
                let x: Q = (0..self.rank).fold(Q::zero(), |acc, j| acc + &cinv[i][j] * q(mu[j]));
                crate::rational::to_i64(&x)
            })
            .collect()
    }

    pub fn root_pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += a[i] * self.gram[i][j] * b[j];
            }
        }
        s
    }

    pub fn weight_pairing(&self, a: &[i64], b: &[i64]) -> Q {
        let mut s = Q::zero();
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if b[j] != 0 {
                    s += &self.pairing_ww[i][j] * q(a[i] * b[j]);
                }
            }
        }
        s
    }

    /// `beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k})`.
    pub fn word_roots(&self, word: &[usize]) -> Result<Vec<RootVec>> {
        let mut out = Vec::with_capacity(word.len());
        for (k, &i) in word.iter().enumerate() {
            self.check_index(i)?;
            out.push(self.act_root(&word[..k], &self.simple_root(i))?);
        }
        Ok(out)
    }

    pub fn is_reduced(&self, word: &[usize]) -> Result<bool> {
        let roots = self.word_roots(word)?;
        let positive = roots.iter().all(|b| b.iter().all(|&x| x >= 0));
        let distinct = (0..roots.len()).all(|a| (a + 1..roots.len()).all(|b| roots[a] != roots[b]));
        Ok(positive && distinct)
    }

    pub fn check_reduced(&self, word: &[usize]) -> Result<()> {
        if self.is_reduced(word)? {
            Ok(())
        } else {
            Err(Error::NotReduced { word: word.to_vec() })
        }
    }

    /// All reduced words of length `len` (exhaustive, for small sweeps).
    pub fn reduced_words(&self, len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &out {
                for i in 1..=self.rank {
                    if w.last() == Some(&i) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(i);
                    if self.is_reduced(&v).unwrap_or(false) {
                        next.push(v);
                    }
                }
            }
            out = next;
        }
        out
    }
}

/// A value of a predecessor or successor function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bound {
    NegInf,
    At(usize),
    PosInf,
}

impl Bound {
    pub fn finite(self) -> Option<usize> {
        match self {
            Bound::At(k) => Some(k),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Bound::At(_))
    }

    /// Ordering key treating the sentinels as genuine extremes.
    pub fn key(self) -> i64 {
        match self {
            Bound::NegInf => i64::MIN,
            Bound::At(k) => k as i64,
            Bound::PosInf => i64::MAX,
        }
    }
}

/// Predecessor and successor functions of a level function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Levels {
    pub eta: Vec<usize>,
    pub p: Vec<Bound>,
    pub s: Vec<Bound>,
}

impl Levels {
    pub fn new(eta: Vec<usize>) -> Self {
        let n = eta.len();
        let mut p = vec![Bound::NegInf; n];
        let mut s = vec![Bound::PosInf; n];
        for k in 0..n {
            if let Some(j) = (0..k).rev().find(|&j| eta[j] == eta[k]) {
                p[k] = Bound::At(j);
                s[j] = Bound::At(k);
            }
        }
        Levels { eta, p, s }
    }

    pub fn len(&self) -> usize {
        self.eta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eta.is_empty()
    }

    pub fn o_minus(&self, k: usize) -> usize {
        self.p_chain(k).len() - 1
    }

    pub fn o_plus(&self, k: usize) -> usize {
        self.s_chain(k).len() - 1
    }

    /// `[k, p(k), p^2(k), ...]`.
    pub fn p_chain(&self, k: usize) -> Vec<usize> {
        let mut out = vec![k];
        let mut cur = k;
        while let Bound::At(j) = self.p[cur] {
            out.push(j);
            cur = j;
        }
        out
    }

    /// `[k, s(k), s^2(k), ...]`.
    pub fn s_chain(&self, k: usize) -> Vec<usize> {
        let mut out = vec![k];
        let mut cur = k;
        while let Bound::At(j) = self.s[cur] {
            out.push(j);
            cur = j;
        }
        out
    }

    /// Positions whose successor is finite.
    pub fn exchangeable(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.s[k].is_finite()).collect()
    }

    pub fn min_of_level(&self, k: usize) -> usize {
        *self.p_chain(k).last().unwrap()
    }

    pub fn distinct_levels(&self) -> usize {
        let mut v = self.eta.clone();
        v.sort_unstable();
        v.dedup();
        v.len()
    }
}

/// Level data of the double word attached to a pair of reduced words.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleWordData {
    pub w_word: Vec<usize>,
    pub u_word: Vec<usize>,
    pub beta: Vec<RootVec>,
    pub beta_prime: Vec<RootVec>,
    pub levels: Levels,
    pub epsilon: Vec<i64>,
    pub support: Vec<usize>,
}

impl DoubleWordData {
    pub fn new(cartan: &CartanData, w_word: &[usize], u_word: &[usize]) -> Result<Self> {
        cartan.check_reduced(w_word)?;
        cartan.check_reduced(u_word)?;
        let n = w_word.len();
        let m = u_word.len();
        let beta = cartan.word_roots(w_word)?;
        let beta_prime = cartan.word_roots(u_word)?;
        let eta: Vec<usize> = (0..n + m).map(|k| if k < n { w_word[n - 1 - k] } else { u_word[k - n] }).collect();
        let epsilon = (0..n + m).map(|k| if k < n { -1 } else { 1 }).collect();
        let mut support = eta.clone();
        support.sort_unstable();
        support.dedup();
        Ok(DoubleWordData {
            w_word: w_word.to_vec(),
            u_word: u_word.to_vec(),
            beta,
            beta_prime,
            levels: Levels::new(eta),
            epsilon,
            support,
        })
    }

    pub fn n(&self) -> usize {
        self.w_word.len()
    }

    pub fn m(&self) -> usize {
        self.u_word.len()
    }

    pub fn len(&self) -> usize {
        self.n() + self.m()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn eta(&self, k: usize) -> usize {
        self.levels.eta[k]
    }

    /// Root attached to position `k`: `beta_{|k|}` or `beta'_{|k|}`.
    pub fn root_at(&self, k: usize) -> &RootVec {
        let n = self.n();
        if k < n {
            &self.beta[n - 1 - k]
        } else {
            &self.beta_prime[k - n]
        }
    }

    /// Degree of the generator at position `k`.
    pub fn degree(&self, k: usize) -> RootVec {
        let r = self.root_at(k);
        if k < self.n() {
            r.iter().map(|x| -x).collect()
        } else {
            r.clone()
        }
    }

    pub fn degrees(&self) -> Vec<RootVec> {
        (0..self.len()).map(|k| self.degree(k)).collect()
    }
}

/// Permutations are stored 0-based: `perm[k] = sigma(k+1) - 1`.
pub type Perm = Vec<usize>;

pub fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &x in perm {
        if x >= perm.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Interval test: `sigma([1,k])` is an interval for every k.
pub fn is_xi(perm: &[usize]) -> bool {
    if !is_permutation(perm) {
        return false;
    }
    let (mut lo, mut hi) = match perm.first() {
        Some(&x) => (x, x),
        None => return true,
    };
    for &x in &perm[1..] {
        if x + 1 == lo {
            lo = x;
        } else if x == hi + 1 {
            hi = x;
        } else {
            return false;
        }
    }
    true
}

pub fn check_xi(perm: &[usize]) -> Result<()> {
    if !is_permutation(perm) {
        Err(Error::NotAPermutation(perm.iter().map(|x| x + 1).collect()))
    } else if !is_xi(perm) {
        Err(Error::NotInXi(perm.iter().map(|x| x + 1).collect()))
    } else {
        Ok(())
    }
}

/// Decodes one element of `Xi_n`; bit `k-2` of `code` chooses min-1 at step k.
pub fn xi_from_code(n: usize, code: u64) -> Perm {
    let mins = (0..n.saturating_sub(1)).filter(|b| code >> b & 1 == 1).count();
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    let first = mins;
    let (mut lo, mut hi) = (first, first);
    out.push(first);
    for b in 0..n - 1 {
        if code >> b & 1 == 1 {
            lo -= 1;
            out.push(lo);
        } else {
            hi += 1;
            out.push(hi);
        }
    }
    out
}

/// All `2^(n-1)` elements of `Xi_n` in binary-choice order.
pub fn xi_enumerate(n: usize) -> impl Iterator<Item = Perm> {
    let count: u64 = if n == 0 { 1 } else { 1 << (n - 1) };
    (0..count).map(move |c| xi_from_code(n, c))
}

/// `sigma_{i,j} = [i+1..j, i, j+1..n, i-1..1]` for `1 <= i <= j <= n`, with labels.
pub fn gamma_subset(n: usize) -> Vec<((usize, usize), Perm)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            let mut v: Vec<usize> = (i + 1..=j).collect();
            v.push(i);
            v.extend(j + 1..=n);
            v.extend((1..i).rev());
            out.push(((i, j), v.into_iter().map(|x| x - 1).collect()));
        }
    }
    out
}

/// The longest element of `S_n` acting on the first `n` of `total` letters.
pub fn longest_on_prefix(n: usize, total: usize) -> Perm {
    (0..total).map(|k| if k < n { n - 1 - k } else { k }).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainDirection {
    Predecessor,
    Successor,
}

/// The chain `eta^{-1} eta sigma(k) ∩ sigma([1,k])`, listed in increasing order.
pub fn sigma_chain(sigma: &[usize], levels: &Levels, k: usize) -> Result<(ChainDirection, usize, Vec<usize>)> {
    check_xi(sigma)?;
    let target = sigma[k];
    let level = levels.eta[target];
    let mut chain: Vec<usize> = sigma[..=k].iter().copied().filter(|&i| levels.eta[i] == level).collect();
    chain.sort_unstable();
    let dir = if sigma[0] <= target { ChainDirection::Predecessor } else { ChainDirection::Successor };
    let expected: Vec<usize> = match dir {
        ChainDirection::Predecessor => {
            let mut c = levels.p_chain(target);
            c.truncate(chain.len());
            c.reverse();
            c
        }
        ChainDirection::Successor => {
            let mut c = levels.s_chain(target);
            c.truncate(chain.len());
            c
        }
    };
    debug_assert_eq!(chain, expected);
    Ok((dir, chain.len() - 1, chain))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn a2() -> CartanData {
        CartanData::new('A', 2).unwrap()
    }

    #[test]
    fn cartan_a2_and_g2() {
        let c = a2();
        assert_eq!(c.cartan, vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(c.d, vec![1, 1]);
        assert_eq!(c.pairing_ww[0][0], qf(2, 3));
        let g = CartanData::new('G', 2).unwrap();
        assert_eq!(g.cartan, vec![vec![2, -3], vec![-1, 2]]);
        assert_eq!(g.d, vec![1, 3]);
    }

    #[test]
    fn invalid_types_rejected() {
        for (f, r) in [('A', 0), ('B', 1), ('C', 2), ('D', 3), ('E', 5), ('E', 9), ('F', 3), ('G', 3), ('X', 2)] {
            assert!(matches!(CartanData::new(f, r), Err(Error::InvalidCartanType { .. })), "{f}{r}");
        }
    }

    #[test]
    fn cartan_axioms_all_types() {
        let types = [
            ('A', 1),
            ('A', 4),
            ('B', 2),
            ('B', 4),
            ('C', 3),
            ('C', 4),
            ('D', 4),
            ('D', 5),
            ('E', 6),
            ('E', 7),
            ('E', 8),
            ('F', 4),
            ('G', 2),
        ];
        for (f, r) in types {
            let c = CartanData::new(f, r).unwrap();
            for i in 0..r {
                assert_eq!(c.cartan[i][i], 2);
                for j in 0..r {
                    if i != j {
                        assert!(c.cartan[i][j] <= 0);
                        assert_eq!(c.cartan[i][j] == 0, c.cartan[j][i] == 0);
                    }
                    assert_eq!(c.d[i] * c.cartan[i][j], c.d[j] * c.cartan[j][i]);
                }
            }
            assert_eq!(*c.d.iter().min().unwrap(), 1);
            // <alpha_i, alpha_j> recovered from the weight pairing.
            for i in 1..=r {
                for j in 1..=r {
                    let ai = c.root_to_weight(&c.simple_root(i));
                    let aj = c.root_to_weight(&c.simple_root(j));
                    assert_eq!(c.weight_pairing(&ai, &aj), q(c.gram[i - 1][j - 1]));
                }
            }
        }
    }

    #[test]
    fn reflections_a2() {
        let c = a2();
        let w1 = vec![1, 0];
        let alpha1 = c.root_to_weight(&[1, 0]);
        let expect: Vec<i64> = w1.iter().zip(&alpha1).map(|(a, b)| a - b).collect();
        assert_eq!(c.reflect(1, &w1).unwrap(), expect);
        assert_eq!(c.reflect(1, &[0, 1]).unwrap(), vec![0, 1]);
        let r = c.act_weight(&[1, 2, 1], &w1).unwrap();
        assert_eq!(c.weight_to_root(&w1.iter().zip(&r).map(|(a, b)| a - b).collect::<Vec<_>>()).unwrap(), vec![1, 1]);
        assert!(matches!(c.reflect(3, &w1), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn word_roots_examples() {
        let c = a2();
        assert_eq!(c.word_roots(&[1, 2, 1]).unwrap(), vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
        assert!(c.is_reduced(&[1, 2, 1]).unwrap());
        let a1 = CartanData::new('A', 1).unwrap();
        assert_eq!(a1.word_roots(&[1, 1]).unwrap(), vec![vec![1], vec![-1]]);
        assert!(!a1.is_reduced(&[1, 1]).unwrap());
        assert_eq!(c.word_roots(&[2]).unwrap(), vec![vec![0, 1]]);
    }

    #[test]
    fn reduced_word_counts() {
        // Number of reduced words of the longest element.
        assert_eq!(a2().reduced_words(3).len(), 2);
        assert_eq!(CartanData::new('B', 2).unwrap().reduced_words(4).len(), 2);
        assert_eq!(CartanData::new('G', 2).unwrap().reduced_words(6).len(), 2);
        assert_eq!(CartanData::new('A', 3).unwrap().reduced_words(6).len(), 16);
        assert!(a2().reduced_words(4).is_empty());
    }

    #[test]
    fn double_word_a1_and_a2() {
        let a1 = CartanData::new('A', 1).unwrap();
        let d = DoubleWordData::new(&a1, &[1], &[1]).unwrap();
        assert_eq!(d.levels.eta, vec![1, 1]);
        assert_eq!(d.levels.p, vec![Bound::NegInf, Bound::At(0)]);
        assert_eq!(d.levels.s, vec![Bound::At(1), Bound::PosInf]);
        assert_eq!(d.degrees(), vec![vec![-1], vec![1]]);
        assert_eq!(d.epsilon, vec![-1, 1]);

        let d = DoubleWordData::new(&a2(), &[1, 2, 1], &[1]).unwrap();
        assert_eq!(d.levels.eta, vec![1, 2, 1, 1]);
        assert_eq!(d.levels.s[2], Bound::At(3));
        assert_eq!(d.levels.p[2], Bound::At(0));
        assert_eq!(d.levels.o_minus(3), 2);
        assert_eq!(d.levels.o_plus(0), 2);
        assert_eq!(d.support, vec![1, 2]);

        let d = DoubleWordData::new(&a2(), &[1, 2], &[]).unwrap();
        assert!(d.levels.p.iter().all(|&b| b == Bound::NegInf));
        assert!(d.levels.s.iter().all(|&b| b == Bound::PosInf));

        assert!(matches!(DoubleWordData::new(&a1, &[1, 1], &[]), Err(Error::NotReduced { .. })));
    }

    #[test]
    fn xi_small_cases() {
        assert_eq!(xi_enumerate(1).collect::<Vec<_>>(), vec![vec![0]]);
        let two: Vec<_> = xi_enumerate(2).collect();
        assert_eq!(two, vec![vec![0, 1], vec![1, 0]]);
        let four: Vec<_> = xi_enumerate(4).collect();
        assert_eq!(four.len(), 8);
        assert!(four.iter().all(|p| is_xi(p)));
        assert!(!is_xi(&[1, 3, 0, 2]));
        assert!(matches!(check_xi(&[0, 0]), Err(Error::NotAPermutation(_))));
    }

    #[test]
    fn gamma_examples() {
        let g = gamma_subset(2);
        assert_eq!(g.len(), 3);
        let mut distinct: Vec<Perm> = g.iter().map(|(_, p)| p.clone()).collect();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct, vec![vec![0, 1], vec![1, 0]]);
        let g5 = gamma_subset(5);
        assert_eq!(g5.len(), 15);
        assert!(g5.iter().all(|(_, p)| is_xi(p)));
        let s15 = &g5.iter().find(|(ij, _)| *ij == (1, 5)).unwrap().1;
        assert_eq!(s15, &vec![1, 2, 3, 4, 0]);
    }

    #[test]
    fn sigma_chain_cases() {
        let a1 = CartanData::new('A', 1).unwrap();
        let d = DoubleWordData::new(&a1, &[1], &[1]).unwrap();
        let (dir, n, chain) = sigma_chain(&[1, 0], &d.levels, 1).unwrap();
        assert_eq!(dir, ChainDirection::Successor);
        assert_eq!(n, 1);
        assert_eq!(chain, vec![0, 1]);
        let d = DoubleWordData::new(&a2(), &[1, 2, 1], &[1]).unwrap();
        for k in 0..4 {
            let (dir, _, chain) = sigma_chain(&[0, 1, 2, 3], &d.levels, k).unwrap();
            assert_eq!(dir, ChainDirection::Predecessor);
            assert_eq!(*chain.last().unwrap(), k);
            let (dir, _, chain) = sigma_chain(&[3, 2, 1, 0], &d.levels, k).unwrap();
            assert!(k == 0 || dir == ChainDirection::Successor);
            assert_eq!(chain[0], 3 - k);
        }
        assert!(sigma_chain(&[1, 3, 0, 2], &d.levels, 0).is_err());
    }
}
