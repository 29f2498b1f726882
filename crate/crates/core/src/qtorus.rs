//! Laurent polynomials in `v = sqrt(q)` with rational exponents, toric frame
//! matrices stored as v-exponents, and based quantum tori.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, rank, QMatrix, Q};

/// `sum c_e v^e` with finitely many nonzero terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VLaurent {
    terms: BTreeMap<Q, Q>,
}

impl VLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Q::zero(), Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(Q::zero(), c)
    }

    /// `v^e`.
    pub fn vpow(e: Q) -> Self {
        Self::monomial(e, Q::one())
    }

    /// `q^n = v^(2n)`.
    pub fn qpow(n: i64) -> Self {
        Self::vpow(q(2 * n))
    }

    pub fn monomial(e: Q, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        VLaurent { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Q, Q)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, e: Q, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_monomial().is_some_and(|(e, c)| e.is_zero() && c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Q, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(exponent, coefficient)` when this is a single term.
    pub fn as_monomial(&self) -> Option<(&Q, &Q)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Exponent of a unit `v^e` (coefficient exactly 1).
    pub fn vpow_exponent(&self) -> Option<Q> {
        self.as_monomial().filter(|(_, c)| c.is_one()).map(|(e, _)| e.clone())
    }

    /// Inverse of a single nonzero term.
    pub fn inverse_monomial(&self) -> Option<Self> {
        self.as_monomial().map(|(e, c)| Self::monomial(-e, c.recip()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        VLaurent { terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    /// Multiplies by `v^e`.
    pub fn shift(&self, e: &Q) -> Self {
        VLaurent { terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Replaces `v` by `v^-1`.
    pub fn bar(&self) -> Self {
        VLaurent { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }
}

impl fmt::Display for VLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if e.is_zero() {
                write!(f, "{}", fmt_q(&a))?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", fmt_q(&a))?;
                }
                if e.is_one() {
                    write!(f, "v")?;
                } else {
                    write!(f, "v^({})", fmt_q(e))?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &VLaurent {
    type Output = VLaurent;
    fn add(self, rhs: &VLaurent) -> VLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &VLaurent {
    type Output = VLaurent;
    fn sub(self, rhs: &VLaurent) -> VLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &VLaurent {
    type Output = VLaurent;
    fn neg(self) -> VLaurent {
        VLaurent { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &VLaurent {
    type Output = VLaurent;
    fn mul(self, rhs: &VLaurent) -> VLaurent {
        let mut out = VLaurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for VLaurent {
            type Output = VLaurent;
            fn $m(self, rhs: VLaurent) -> VLaurent {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Skew-symmetric v-exponent matrix: `r_kj = v^psi_kj`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameMatrix {
    psi: QMatrix,
}

impl FrameMatrix {
    pub fn new(psi: QMatrix) -> Result<Self> {
        let n = psi.len();
        for (k, row) in psi.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, actual: row.len() });
            }
            if !row[k].is_zero() {
                return Err(Error::Assertion(format!("frame diagonal entry {} is nonzero", k + 1)));
            }
            for j in 0..k {
                if psi[j][k] != -&row[j] {
                    return Err(Error::Assertion(format!("frame not skew at ({}, {})", k + 1, j + 1)));
                }
            }
        }
        Ok(FrameMatrix { psi })
    }

    pub fn from_ints(psi: &[Vec<i64>]) -> Result<Self> {
        Self::new(crate::rational::int_to_q_matrix(psi))
    }

    pub fn zero(n: usize) -> Self {
        FrameMatrix { psi: crate::rational::zero_matrix(n, n) }
    }

    pub fn size(&self) -> usize {
        self.psi.len()
    }

    pub fn psi(&self) -> &QMatrix {
        &self.psi
    }

    pub fn entry(&self, k: usize, j: usize) -> &Q {
        &self.psi[k][j]
    }

    fn check_len(&self, f: &[i64]) -> Result<()> {
        if f.len() != self.size() {
            Err(Error::DimensionMismatch { expected: self.size(), actual: f.len() })
        } else {
            Ok(())
        }
    }

    /// `f^T psi g`.
    pub fn pairing(&self, f: &[i64], g: &[i64]) -> Result<Q> {
        self.check_len(f)?;
        self.check_len(g)?;
        Ok(self.pairing_unchecked(f, g))
    }

    pub(crate) fn pairing_unchecked(&self, f: &[i64], g: &[i64]) -> Q {
        let mut s = Q::zero();
        for (k, &fk) in f.iter().enumerate() {
            if fk == 0 {
                continue;
            }
            for (j, &gj) in g.iter().enumerate() {
                if gj != 0 && !self.psi[k][j].is_zero() {
                    s += &self.psi[k][j] * q(fk * gj);
                }
            }
        }
        s
    }

    pub fn negated(&self) -> Self {
        FrameMatrix { psi: self.psi.iter().map(|r| r.iter().map(|x| -x).collect()).collect() }
    }

    /// Whether every exponent is an integer.
    pub fn is_integral(&self) -> bool {
        self.psi.iter().flatten().all(|x| x.is_integer())
    }
}

/// `Omega(f, g) = v^(f^T psi g)`.
pub fn bicharacter(frame: &FrameMatrix, f: &[i64], g: &[i64]) -> Result<VLaurent> {
    Ok(VLaurent::vpow(frame.pairing(f, g)?))
}

/// Exponent of the symmetrisation scalar `prod_{j<k} lambda_jk^(-m_j m_k)`.
pub fn scr_exponent(expmatrix: &[Vec<Q>], f: &[i64]) -> Result<Q> {
    if expmatrix.len() != f.len() {
        return Err(Error::DimensionMismatch { expected: expmatrix.len(), actual: f.len() });
    }
    let mut s = Q::zero();
    for k in 0..f.len() {
        for j in 0..k {
            if f[j] != 0 && f[k] != 0 {
                s -= &expmatrix[j][k] * q(f[j] * f[k]);
            }
        }
    }
    Ok(s)
}

pub fn scr(expmatrix: &[Vec<Q>], f: &[i64]) -> Result<VLaurent> {
    Ok(VLaurent::vpow(scr_exponent(expmatrix, f)?))
}

/// Congruence `psi'_kj = g_k^T psi g_j` along independent integer vectors.
pub fn frame_restrict(frame: &FrameMatrix, vectors: &[Vec<i64>]) -> Result<FrameMatrix> {
    for v in vectors {
        frame.check_len(v)?;
    }
    let qv: QMatrix = vectors.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
    if rank(&qv) < vectors.len() {
        return Err(Error::DependentVectors);
    }
    let n = vectors.len();
    let mut psi = crate::rational::zero_matrix(n, n);
    for k in 0..n {
        for j in 0..k {
            let x = frame.pairing_unchecked(&vectors[k], &vectors[j]);
            psi[j][k] = -&x;
            psi[k][j] = x;
        }
    }
    Ok(FrameMatrix { psi })
}

/// Element of the based quantum torus of a frame.
#[derive(Debug, Clone)]
pub struct TorusElement {
    frame: Arc<FrameMatrix>,
    terms: BTreeMap<Vec<i64>, VLaurent>,
}

impl PartialEq for TorusElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.frame, &other.frame) && self.terms == other.terms
    }
}

impl TorusElement {
    pub fn zero(frame: &Arc<FrameMatrix>) -> Self {
        TorusElement { frame: Arc::clone(frame), terms: BTreeMap::new() }
    }

    /// `M(f)`.
    pub fn basis(frame: &Arc<FrameMatrix>, f: Vec<i64>) -> Result<Self> {
        Self::term(frame, f, VLaurent::one())
    }

    pub fn term(frame: &Arc<FrameMatrix>, f: Vec<i64>, c: VLaurent) -> Result<Self> {
        frame.check_len(&f)?;
        let mut out = Self::zero(frame);
        out.add_term(f, c);
        Ok(out)
    }

    pub fn unit(frame: &Arc<FrameMatrix>) -> Self {
        Self::basis(frame, vec![0; frame.size()]).expect("unit has the frame's length")
    }

    fn add_term(&mut self, f: Vec<i64>, c: VLaurent) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(f.clone()).or_default();
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&f);
        }
    }

    pub fn frame(&self) -> &Arc<FrameMatrix> {
        &self.frame
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, VLaurent> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_frame(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.frame, &other.frame) {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_frame(other)?;
        let mut out = self.clone();
        for (f, c) in &other.terms {
            out.add_term(f.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &VLaurent) -> Self {
        let mut out = Self::zero(&self.frame);
        for (f, x) in &self.terms {
            out.add_term(f.clone(), x * c);
        }
        out
    }

    /// Bilinear extension of `M(f) M(g) = Omega(f, g) M(f + g)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_frame(other)?;
        let mut out = Self::zero(&self.frame);
        for (f, a) in &self.terms {
            for (g, b) in &other.terms {
                let e = self.frame.pairing_unchecked(f, g);
                let sum: Vec<i64> = f.iter().zip(g).map(|(x, y)| x + y).collect();
                out.add_term(sum, (a * b).shift(&e));
            }
        }
        Ok(out)
    }
}
