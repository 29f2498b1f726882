//! Quantum seeds at matrix level: compatibility, mutation, re-enumeration,
//! the antiisomorphism transform and graded reduction.

use num_traits::Zero;
use serde::Serialize;

use crate::coxeter::{is_permutation, RootVec};
use crate::error::{Error, Result};
use crate::qtorus::{frame_restrict, FrameMatrix};
use crate::rational::{fmt_q, q, solve, QMatrix, Solution, Q};

/// A frame, an exchange matrix given by its columns, and per-index degrees.
///
/// `cols[c]` is the exchange column of the index `ex[c]`; all indices are
/// 0-based.
#[derive(Debug, Clone)]
pub struct QuantumSeed {
    pub frame: FrameMatrix,
    pub cols: Vec<Vec<i64>>,
    pub ex: Vec<usize>,
    pub inv: Vec<usize>,
    pub degrees: Vec<RootVec>,
    pub d: Vec<i64>,
}

impl PartialEq for QuantumSeed {
    fn eq(&self, other: &Self) -> bool {
        let a = self.canonical();
        let b = other.canonical();
        a.frame == b.frame && a.ex == b.ex && a.cols == b.cols && a.inv == b.inv && a.degrees == b.degrees && a.d == b.d
    }
}

fn pos(x: i64) -> i64 {
    x.max(0)
}

impl QuantumSeed {
    pub fn new(
        frame: FrameMatrix,
        cols: Vec<Vec<i64>>,
        ex: Vec<usize>,
        inv: Vec<usize>,
        degrees: Vec<RootVec>,
        d: Vec<i64>,
    ) -> Result<Self> {
        let n = frame.size();
        if cols.len() != ex.len() {
            return Err(Error::DimensionMismatch { expected: ex.len(), actual: cols.len() });
        }
        for c in &cols {
            if c.len() != n {
                return Err(Error::DimensionMismatch { expected: n, actual: c.len() });
            }
        }
        for len in [degrees.len(), d.len()] {
            if len != n {
                return Err(Error::DimensionMismatch { expected: n, actual: len });
            }
        }
        if let Some(&bad) = ex.iter().chain(&inv).find(|&&k| k >= n) {
            return Err(Error::IndexOutOfRange { index: bad + 1, rank: n });
        }
        let mut seen = ex.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != ex.len() || inv.iter().any(|k| ex.contains(k)) {
            return Err(Error::Assertion("ex must be distinct and disjoint from inv".into()));
        }
        Ok(QuantumSeed { frame, cols, ex, inv, degrees, d })
    }

    pub fn size(&self) -> usize {
        self.frame.size()
    }

    /// Copy with `ex` (and its columns) and `inv` sorted.
    pub fn canonical(&self) -> QuantumSeed {
        let mut order: Vec<usize> = (0..self.ex.len()).collect();
        order.sort_by_key(|&c| self.ex[c]);
        let mut inv = self.inv.clone();
        inv.sort_unstable();
        QuantumSeed {
            frame: self.frame.clone(),
            cols: order.iter().map(|&c| self.cols[c].clone()).collect(),
            ex: order.iter().map(|&c| self.ex[c]).collect(),
            inv,
            degrees: self.degrees.clone(),
            d: self.d.clone(),
        }
    }

    pub fn column_of(&self, k: usize) -> Option<&Vec<i64>> {
        self.ex.iter().position(|&e| e == k).map(|c| &self.cols[c])
    }

    /// Entry `b_ik` of the full matrix (`k` must be exchangeable).
    pub fn b(&self, i: usize, k: usize) -> Option<i64> {
        self.column_of(k).map(|c| c[i])
    }

    /// Rows of the `n x |ex|` exchange matrix.
    pub fn b_rows(&self) -> Vec<Vec<i64>> {
        (0..self.size()).map(|i| self.cols.iter().map(|c| c[i]).collect()).collect()
    }

    /// `(b^k)^T psi`, one exponent per index.
    pub fn column_pairings(&self, col: &[i64]) -> Vec<Q> {
        (0..self.size())
            .map(|j| {
                let mut e = vec![0; self.size()];
                e[j] = 1;
                self.frame.pairing_unchecked(col, &e)
            })
            .collect()
    }

    /// `sum_j b_j deg_j`.
    pub fn column_degree(&self, col: &[i64]) -> Vec<i64> {
        let dim = self.degrees.first().map_or(0, |d| d.len());
        let mut out = vec![0; dim];
        for (j, &b) in col.iter().enumerate() {
            if b != 0 {
                for (o, x) in out.iter_mut().zip(&self.degrees[j]) {
                    *o += b * x;
                }
            }
        }
        out
    }

    pub fn check_compatible(&self) -> CompatibilityReport {
        let mut columns = Vec::new();
        for (c, &k) in self.ex.iter().enumerate() {
            let col = &self.cols[c];
            let pairings = self.column_pairings(col);
            let orthogonality_failures: Vec<(usize, String)> = pairings
                .iter()
                .enumerate()
                .filter(|(j, x)| *j != k && !x.is_zero())
                .map(|(j, x)| (j + 1, fmt_q(x)))
                .collect();
            let value = pairings[k].clone();
            let degree_sum = self.column_degree(col);
            columns.push(ColumnReport {
                index: k + 1,
                orthogonality_failures,
                value_nonzero: !value.is_zero(),
                value: fmt_q(&value),
                degree_sum: degree_sum.clone(),
                degree_balanced: degree_sum.iter().all(|&x| x == 0),
            });
        }
        let mut skew_failures = Vec::new();
        for (a, &k) in self.ex.iter().enumerate() {
            for (b, &j) in self.ex.iter().enumerate() {
                let bkj = self.cols[b][k];
                let bjk = self.cols[a][j];
                if self.d[k] * bkj != -self.d[j] * bjk {
                    skew_failures.push((k + 1, j + 1));
                }
            }
        }
        let pass = skew_failures.is_empty()
            && columns.iter().all(|c| c.orthogonality_failures.is_empty() && c.value_nonzero && c.degree_balanced);
        CompatibilityReport { pass, columns, skew_failures }
    }

    fn require_compatible(&self) -> Result<()> {
        let rep = self.check_compatible();
        if rep.pass {
            Ok(())
        } else {
            Err(Error::Incompatible(rep.summary()))
        }
    }

    fn ex_position(&self, k: usize) -> Result<usize> {
        self.ex.iter().position(|&e| e == k).ok_or(Error::NotExchangeable(k + 1))
    }

    /// Matrix mutation in direction `k`.
    pub fn mutate_exchange(&self, k: usize) -> Result<Vec<Vec<i64>>> {
        let ck = self.ex_position(k)?;
        let colk = &self.cols[ck];
        Ok(self
            .cols
            .iter()
            .enumerate()
            .map(|(c, col)| {
                (0..self.size())
                    .map(|i| {
                        if i == k || c == ck {
                            -col[i]
                        } else {
                            let bik = colk[i];
                            let bkj = col[k];
                            col[i] + pos(bik) * pos(bkj) - pos(-bik) * pos(-bkj)
                        }
                    })
                    .collect()
            })
            .collect())
    }

    /// Basis `g_j = e_j (j != k)`, `g_k = -e_k + sum_i [sign * b_ik]_+ e_i`.
    pub fn mutation_basis(&self, k: usize, sign: i64) -> Result<Vec<Vec<i64>>> {
        let col = &self.cols[self.ex_position(k)?];
        let n = self.size();
        Ok((0..n)
            .map(|j| {
                if j == k {
                    (0..n).map(|i| if i == k { -1 } else { pos(sign * col[i]) }).collect()
                } else {
                    (0..n).map(|i| i64::from(i == j)).collect()
                }
            })
            .collect())
    }

    pub fn mutate(&self, k: usize) -> Result<QuantumSeed> {
        self.require_compatible()?;
        let basis = self.mutation_basis(k, 1)?;
        let frame = frame_restrict(&self.frame, &basis)?;
        let other = frame_restrict(&self.frame, &self.mutation_basis(k, -1)?)?;
        if frame != other {
            return Err(Error::Assertion(format!("frame mutation at {} depends on the sign choice", k + 1)));
        }
        let cols = self.mutate_exchange(k)?;
        let mut degrees = self.degrees.clone();
        degrees[k] = self.column_degree(&basis[k]);
        let out = QuantumSeed { frame, cols, ex: self.ex.clone(), inv: self.inv.clone(), degrees, d: self.d.clone() };
        let rep = out.check_compatible();
        if !rep.pass {
            return Err(Error::Assertion(format!("mutation at {} broke compatibility: {}", k + 1, rep.summary())));
        }
        Ok(out)
    }

    /// Right action of a permutation: index `j` of the result is index `tau[j]` here.
    pub fn reindex(&self, tau: &[usize]) -> Result<QuantumSeed> {
        let n = self.size();
        if tau.len() != n || !is_permutation(tau) {
            return Err(Error::NotAPermutation(tau.iter().map(|x| x + 1).collect()));
        }
        let mut tinv = vec![0; n];
        for (j, &t) in tau.iter().enumerate() {
            tinv[t] = j;
        }
        let psi: QMatrix = (0..n).map(|j| (0..n).map(|k| self.frame.entry(tau[j], tau[k]).clone()).collect()).collect();
        Ok(QuantumSeed {
            frame: FrameMatrix::new(psi)?,
            cols: self.cols.iter().map(|c| tau.iter().map(|&t| c[t]).collect()).collect(),
            ex: self.ex.iter().map(|&e| tinv[e]).collect(),
            inv: self.inv.iter().map(|&e| tinv[e]).collect(),
            degrees: tau.iter().map(|&t| self.degrees[t].clone()).collect(),
            d: tau.iter().map(|&t| self.d[t]).collect(),
        })
    }

    /// `(psi, B) -> (-psi, -B)`.
    pub fn antiiso(&self) -> QuantumSeed {
        QuantumSeed {
            frame: self.frame.negated(),
            cols: self.cols.iter().map(|c| c.iter().map(|x| -x).collect()).collect(),
            ..self.clone()
        }
    }

    /// Graded reduction by the first `n` indices, whose degrees define `phi`.
    pub fn graded_reduce(&self, n: usize) -> Result<QuantumSeed> {
        let total = self.size();
        if n > total {
            return Err(Error::Reduction(format!("cannot reduce by {n} of {total} indices")));
        }
        if let Some(&k) = self.ex.iter().find(|&&k| k < n) {
            return Err(Error::Reduction(format!("index {} is exchangeable", k + 1)));
        }
        if n == 0 {
            return Ok(self.clone());
        }
        let dim = self.degrees[0].len();
        // phi as a dim x n matrix.
        let phi: QMatrix = (0..dim).map(|a| (0..n).map(|i| q(self.degrees[i][a])).collect()).collect();
        let mut basis = Vec::with_capacity(total - n);
        for j in n..total {
            let rhs: Vec<Q> = self.degrees[j].iter().map(|&x| q(x)).collect();
            let x = match solve(&phi, &rhs) {
                Solution::Unique(x) => x,
                Solution::Inconsistent => {
                    return Err(Error::Reduction(format!("degree of index {} is outside the span of phi", j + 1)))
                }
                Solution::Underdetermined(_) => return Err(Error::Reduction("phi is not injective".into())),
            };
            let x = crate::rational::q_vec_to_i64(&x)
                .ok_or_else(|| Error::Reduction(format!("phi^-1 of degree {} is not integral", j + 1)))?;
            let mut g = vec![0; total];
            for (i, xi) in x.iter().enumerate() {
                g[i] = -xi;
            }
            g[j] += 1;
            basis.push(g);
        }
        let frame = frame_restrict(&self.frame, &basis)?;
        Ok(QuantumSeed {
            frame,
            cols: self.cols.iter().map(|c| c[n..].to_vec()).collect(),
            ex: self.ex.iter().map(|k| k - n).collect(),
            inv: self.inv.iter().filter(|&&k| k >= n).map(|k| k - n).collect(),
            degrees: vec![vec![0; dim]; total - n],
            d: self.d[n..].to_vec(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColumnReport {
    pub index: usize,
    /// `(j, exponent)` pairs with `j != k` and nonzero `psi(b^k, e_j)`.
    pub orthogonality_failures: Vec<(usize, String)>,
    pub value: String,
    pub value_nonzero: bool,
    pub degree_sum: Vec<i64>,
    pub degree_balanced: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompatibilityReport {
    pub pass: bool,
    pub columns: Vec<ColumnReport>,
    pub skew_failures: Vec<(usize, usize)>,
}

impl CompatibilityReport {
    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        for c in &self.columns {
            for (j, x) in &c.orthogonality_failures {
                parts.push(format!("psi(b^{}, e_{}) = {}", c.index, j, x));
            }
            if !c.value_nonzero {
                parts.push(format!("psi(b^{}, e_{}) = 0", c.index, c.index));
            }
            if !c.degree_balanced {
                parts.push(format!("column {} has degree {:?}", c.index, c.degree_sum));
            }
        }
        for (k, j) in &self.skew_failures {
            parts.push(format!("not skew-symmetrizable at ({k}, {j})"));
        }
        if parts.is_empty() {
            "compatible".into()
        } else {
            parts.join("; ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Frame `psi_12 = -2`, `b^1 = (0, 1)`, degrees `(-alpha, 0)`.
    fn sl2() -> QuantumSeed {
        QuantumSeed::new(
            FrameMatrix::from_ints(&[vec![0, -2], vec![2, 0]]).unwrap(),
            vec![vec![0, 1]],
            vec![0],
            vec![1],
            vec![vec![-1], vec![0]],
            vec![1, 1],
        )
        .unwrap()
    }

    #[test]
    fn sl2_compatible() {
        let rep = sl2().check_compatible();
        assert!(rep.pass, "{}", rep.summary());
        assert_eq!(rep.columns[0].value, "2");
    }

    #[test]
    fn zero_column_fails() {
        let mut s = sl2();
        s.cols[0] = vec![0, 0];
        let rep = s.check_compatible();
        assert!(!rep.pass);
        assert!(!rep.columns[0].value_nonzero);
    }

    #[test]
    fn perturbed_entry_flags_pair() {
        let s = QuantumSeed::new(
            FrameMatrix::from_ints(&[vec![0, -2, 0], vec![2, 0, 1], vec![0, -1, 0]]).unwrap(),
            vec![vec![0, 1, 0]],
            vec![0],
            vec![1, 2],
            vec![vec![-1], vec![0], vec![0]],
            vec![1, 1, 1],
        )
        .unwrap();
        let rep = s.check_compatible();
        assert!(!rep.pass);
        assert_eq!(rep.columns[0].orthogonality_failures, vec![(3, "1".to_string())]);
    }

    #[test]
    fn matrix_mutation_example() {
        let s = QuantumSeed {
            frame: FrameMatrix::zero(2),
            cols: vec![vec![0, -1], vec![1, 0]],
            ex: vec![0, 1],
            inv: vec![],
            degrees: vec![vec![], vec![]],
            d: vec![1, 1],
        };
        assert_eq!(s.mutate_exchange(0).unwrap(), vec![vec![0, 1], vec![-1, 0]]);
        assert_eq!(s.mutate_exchange(1).unwrap(), vec![vec![0, 1], vec![-1, 0]]);
        assert_eq!(s.mutate_exchange(2), Err(Error::NotExchangeable(3)));
    }

    #[test]
    fn sl2_mutation() {
        let s = sl2();
        let m = s.mutate(0).unwrap();
        assert_eq!(m.frame.entry(0, 1), &q(2));
        assert_eq!(m.degrees, vec![vec![1], vec![0]]);
        assert_eq!(m.cols, vec![vec![0, -1]]);
        assert_eq!(m.mutate(0).unwrap(), s);
        let plus = frame_restrict(&s.frame, &s.mutation_basis(0, 1).unwrap()).unwrap();
        let minus = frame_restrict(&s.frame, &s.mutation_basis(0, -1).unwrap()).unwrap();
        assert_eq!(plus, minus);
    }

    #[test]
    fn reindex_and_antiiso() {
        let s = sl2();
        assert_eq!(s.reindex(&[0, 1]).unwrap(), s);
        let t = s.reindex(&[1, 0]).unwrap();
        assert_eq!(t.frame.entry(0, 1), &q(2));
        assert_eq!(t.degrees, vec![vec![0], vec![-1]]);
        assert_eq!(t.ex, vec![1]);
        assert_eq!(t.cols, vec![vec![1, 0]]);
        assert!(t.check_compatible().pass);
        assert!(s.reindex(&[0, 0]).is_err());

        let a = s.antiiso();
        assert_eq!(a.frame.entry(0, 1), &q(2));
        assert_eq!(a.cols, vec![vec![0, -1]]);
        assert!(a.check_compatible().pass);
        assert_eq!(a.antiiso(), s);
    }

    #[test]
    fn reduce_trivial_and_errors() {
        let s = sl2();
        assert_eq!(s.graded_reduce(0).unwrap(), s);
        assert!(matches!(s.graded_reduce(1), Err(Error::Reduction(_))));
        assert!(matches!(s.graded_reduce(3), Err(Error::Reduction(_))));
    }
}
