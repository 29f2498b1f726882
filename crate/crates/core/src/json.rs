//! JSON encodings. Indices are 1-based, rationals are strings `"p"` or
//! `"p/q"`, and infinite predecessor/successor values are `null`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cgl::{CGLPresentation, NFPoly};
use crate::coxeter::{Bound, CartanData, DoubleWordData};
use crate::dbc::BZSeedData;
use crate::error::{Error, Result};
use crate::qtorus::{FrameMatrix, VLaurent};
use crate::rational::{fmt_q, parse_q, QMatrix, Q};
use crate::seed::QuantumSeed;

fn q_matrix_strings(m: &[Vec<Q>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(fmt_q).collect()).collect()
}

fn parse_q_matrix(m: &[Vec<String>]) -> Result<QMatrix> {
    m.iter().map(|r| r.iter().map(|x| parse_q(x)).collect()).collect()
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn zero_based(v: &[usize], n: usize) -> Result<Vec<usize>> {
    v.iter()
        .map(|&x| if x == 0 || x > n { Err(Error::IndexOutOfRange { index: x, rank: n }) } else { Ok(x - 1) })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanJson {
    pub family: String,
    pub rank: usize,
}

impl From<&CartanData> for CartanJson {
    fn from(c: &CartanData) -> Self {
        CartanJson { family: c.family.to_string(), rank: c.rank }
    }
}

impl CartanJson {
    pub fn to_cartan(&self) -> Result<CartanData> {
        let mut chars = self.family.chars();
        match (chars.next(), chars.next()) {
            (Some(f), None) => CartanData::new(f, self.rank),
            _ => Err(Error::Parse(format!("bad family {:?}", self.family))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedJson {
    pub psi: Vec<Vec<String>>,
    /// Rows of the `n x |ex|` exchange matrix.
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
    pub ex: Vec<usize>,
    pub inv: Vec<usize>,
    pub degrees: Vec<Vec<i64>>,
    pub d: Vec<i64>,
}

impl From<&QuantumSeed> for SeedJson {
    fn from(s: &QuantumSeed) -> Self {
        SeedJson {
            psi: q_matrix_strings(s.frame.psi()),
            b: s.b_rows(),
            ex: one_based(&s.ex),
            inv: one_based(&s.inv),
            degrees: s.degrees.clone(),
            d: s.d.clone(),
        }
    }
}

impl SeedJson {
    pub fn to_seed(&self) -> Result<QuantumSeed> {
        let n = self.psi.len();
        let frame = FrameMatrix::new(parse_q_matrix(&self.psi)?)?;
        if self.b.len() != n {
            return Err(Error::DimensionMismatch { expected: n, actual: self.b.len() });
        }
        let ex = zero_based(&self.ex, n)?;
        if let Some(row) = self.b.iter().find(|r| r.len() != ex.len()) {
            return Err(Error::DimensionMismatch { expected: ex.len(), actual: row.len() });
        }
        let cols = (0..ex.len()).map(|c| self.b.iter().map(|r| r[c]).collect()).collect();
        QuantumSeed::new(frame, cols, ex, zero_based(&self.inv, n)?, self.degrees.clone(), self.d.clone())
    }
}

pub fn seed_to_string(s: &QuantumSeed) -> String {
    serde_json::to_string_pretty(&SeedJson::from(s)).expect("serializable")
}

pub fn seed_from_str(s: &str) -> Result<QuantumSeed> {
    let j: SeedJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    j.to_seed()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleWordJson {
    pub w: Vec<usize>,
    pub u: Vec<usize>,
    pub eta: Vec<usize>,
    pub p: Vec<Option<usize>>,
    pub s: Vec<Option<usize>>,
    pub epsilon: Vec<i64>,
    pub beta: Vec<Vec<i64>>,
    pub beta_prime: Vec<Vec<i64>>,
}

fn bound_json(b: Bound) -> Option<usize> {
    b.finite().map(|k| k + 1)
}

impl From<&DoubleWordData> for DoubleWordJson {
    fn from(d: &DoubleWordData) -> Self {
        DoubleWordJson {
            w: d.w_word.clone(),
            u: d.u_word.clone(),
            eta: d.levels.eta.clone(),
            p: d.levels.p.iter().map(|&b| bound_json(b)).collect(),
            s: d.levels.s.iter().map(|&b| bound_json(b)).collect(),
            epsilon: d.epsilon.clone(),
            beta: d.beta.clone(),
            beta_prime: d.beta_prime.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelJson {
    pub gamma: Vec<i64>,
    pub delta: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BzJson {
    pub variant: String,
    pub labels: Vec<LabelJson>,
    pub seed: SeedJson,
}

impl From<&BZSeedData> for BzJson {
    fn from(b: &BZSeedData) -> Self {
        BzJson {
            variant: serde_json::to_value(b.variant)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default(),
            labels: b.labels.iter().map(|(g, d)| LabelJson { gamma: g.clone(), delta: d.clone() }).collect(),
            seed: SeedJson::from(&b.seed),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VTermJson {
    pub exp: String,
    pub coef: String,
}

pub fn laurent_json(c: &VLaurent) -> Vec<VTermJson> {
    c.terms().map(|(e, x)| VTermJson { exp: fmt_q(e), coef: fmt_q(x) }).collect()
}

pub fn laurent_from_json(terms: &[VTermJson]) -> Result<VLaurent> {
    let mut out = VLaurent::zero();
    for t in terms {
        out.add_term(parse_q(&t.exp)?, parse_q(&t.coef)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub exponent: Vec<u32>,
    pub coeff: Vec<VTermJson>,
}

pub fn poly_json(p: &NFPoly) -> Vec<PolyTermJson> {
    p.terms().iter().map(|(f, c)| PolyTermJson { exponent: f.clone(), coeff: laurent_json(c) }).collect()
}

pub fn poly_from_json(n: usize, terms: &[PolyTermJson]) -> Result<NFPoly> {
    let mut out = NFPoly::zero(n);
    for t in terms {
        if t.exponent.len() != n {
            return Err(Error::DimensionMismatch { expected: n, actual: t.exponent.len() });
        }
        out.add_term(t.exponent.clone(), laurent_from_json(&t.coeff)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailJson {
    pub k: usize,
    pub j: usize,
    pub poly: Vec<PolyTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub n: usize,
    pub lambda_exp: Vec<Vec<String>>,
    pub tails: Vec<TailJson>,
    pub eta: Vec<usize>,
    pub degrees: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_star: Option<Vec<String>>,
}

impl From<&CGLPresentation> for PresentationJson {
    fn from(p: &CGLPresentation) -> Self {
        PresentationJson {
            n: p.n,
            lambda_exp: q_matrix_strings(&p.lambda_exp),
            tails: p.tails.iter().map(|(&(k, j), t)| TailJson { k: k + 1, j: j + 1, poly: poly_json(t) }).collect(),
            eta: p.levels.eta.clone(),
            degrees: p.degrees.clone(),
            lambda_star: Some(p.lambda_star.iter().map(fmt_q).collect()),
        }
    }
}

impl PresentationJson {
    pub fn to_presentation(&self) -> Result<CGLPresentation> {
        let n = self.n;
        let mut tails = BTreeMap::new();
        for t in &self.tails {
            if t.k == 0 || t.j == 0 || t.k > n || t.j > n {
                return Err(Error::IndexOutOfRange { index: t.k.max(t.j), rank: n });
            }
            tails.insert((t.k - 1, t.j - 1), poly_from_json(n, &t.poly)?);
        }
        let lambda_star = match &self.lambda_star {
            Some(v) => v.iter().map(|x| parse_q(x)).collect::<Result<Vec<_>>>()?,
            None => vec![Q::default(); n],
        };
        CGLPresentation::new(
            parse_q_matrix(&self.lambda_exp)?,
            tails,
            self.eta.clone(),
            self.degrees.clone(),
            lambda_star,
        )
    }
}

pub fn presentation_from_str(s: &str) -> Result<CGLPresentation> {
    let j: PresentationJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    j.to_presentation()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgl::{a2_presentation, sl2_presentation};
    use crate::dbc::{bz_seed, BzVariant, FrameConvention};

    #[test]
    fn seed_round_trip() {
        let c = CartanData::new('A', 2).unwrap();
        let s = bz_seed(&c, &[1, 2, 1], &[2], BzVariant::Plain, FrameConvention::PlainLabels).unwrap().seed;
        let text = seed_to_string(&s);
        assert_eq!(seed_from_str(&text).unwrap(), s);
        assert!(seed_from_str("{}").is_err());
    }

    #[test]
    fn seed_json_shape() {
        let c = CartanData::new('A', 1).unwrap();
        let s = bz_seed(&c, &[1], &[1], BzVariant::Plain, FrameConvention::PlainLabels).unwrap().seed;
        let j = SeedJson::from(&s);
        assert_eq!(j.ex, vec![2]);
        assert_eq!(j.inv, vec![1, 3]);
        assert_eq!(j.b, vec![vec![-1], vec![0], vec![-1]]);
    }

    #[test]
    fn double_word_sentinels() {
        let c = CartanData::new('A', 1).unwrap();
        let d = DoubleWordData::new(&c, &[1], &[1]).unwrap();
        let j = serde_json::to_value(DoubleWordJson::from(&d)).unwrap();
        assert_eq!(j["p"], serde_json::json!([null, 1]));
        assert_eq!(j["s"], serde_json::json!([2, null]));
    }

    #[test]
    fn presentation_round_trip() {
        for p in [sl2_presentation(), a2_presentation()] {
            let text = serde_json::to_string(&PresentationJson::from(&p)).unwrap();
            let back = presentation_from_str(&text).unwrap();
            assert_eq!(back.tails, p.tails);
            assert_eq!(back.lambda_exp, p.lambda_exp);
            assert_eq!(back.levels, p.levels);
        }
    }
}
