//! JSON file formats. Rationals are always `"num/den"` strings.

use std::collections::BTreeMap;

use fgl_core::composition::{CompositionBoundReport, CompositionSpec, XorReductionReport};
use fgl_core::f2poly::{parse_poly, ParseError};
use fgl_core::rational::{parse_ratio, to_ratio_string};
use fgl_core::readfew::{BiasCertificate, CoefficientCertificate};
use fgl_core::spectrum::{Spectrum, TruthTable};
use fgl_core::symmetric::SymmetricProfile;
use fgl_core::{F2Poly, LevelL1Vector, Rational};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad polynomial {text:?}: {source}")]
    Poly { text: String, source: ParseError },
    #[error("bad rational {0:?}")]
    Ratio(String),
    #[error("bad bit string {0:?}")]
    Bits(String),
    #[error("{0}")]
    Invalid(String),
}

pub fn ratio(x: &Rational) -> String {
    to_ratio_string(x)
}

pub fn parse_rational(s: &str) -> Result<Rational, FormatError> {
    parse_ratio(s).ok_or_else(|| FormatError::Ratio(s.to_string()))
}

pub fn poly(text: &str) -> Result<F2Poly, FormatError> {
    parse_poly(text).map_err(|source| FormatError::Poly { text: text.to_string(), source })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub n: u32,
    pub scale: String,
    /// `[mask, coefficient]`, zeros omitted, masks increasing.
    pub coeffs: Vec<(u64, String)>,
}

impl SpectrumJson {
    pub fn from_spectrum(s: &Spectrum) -> Self {
        SpectrumJson {
            n: s.n(),
            scale: s.scale().to_string(),
            coeffs: s.nonzero().map(|(mask, c)| (mask, c.to_string())).collect(),
        }
    }

    pub fn to_spectrum(&self) -> Result<Spectrum, FormatError> {
        let len = 1usize << self.n;
        let mut coeffs = vec![0i64; len];
        for (mask, c) in &self.coeffs {
            let slot = coeffs.get_mut(*mask as usize).ok_or_else(|| FormatError::Invalid(format!("mask {mask} out of range")))?;
            *slot = c.parse().map_err(|_| FormatError::Invalid(format!("bad coefficient {c:?}")))?;
        }
        Spectrum::from_coeffs(self.n, coeffs).map_err(|e| FormatError::Invalid(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelsJson {
    pub n: usize,
    pub bias: String,
    pub alpha: String,
    /// ±1 levels `L_{1,k}(f)`, `k = 0..=n`.
    pub pm_levels: Vec<String>,
    /// {0,1} levels of `p`, entry 0 is `E[p]`.
    pub levels: Vec<String>,
}

impl LevelsJson {
    pub fn new(v: &LevelL1Vector) -> Self {
        LevelsJson {
            n: v.n(),
            bias: ratio(&v.bias),
            alpha: ratio(&v.alpha),
            pm_levels: v.levels.iter().map(ratio).collect(),
            levels: v.zero_one_levels().iter().map(ratio).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileJson {
    pub n: usize,
    pub values: String,
    pub period: usize,
}

impl ProfileJson {
    pub fn new(p: &SymmetricProfile) -> Self {
        ProfileJson { n: p.n(), values: p.bit_string(), period: p.period() }
    }

    pub fn to_profile(&self) -> Result<SymmetricProfile, FormatError> {
        let p = SymmetricProfile::from_bit_string(&self.values).ok_or_else(|| FormatError::Bits(self.values.clone()))?;
        if p.n() != self.n {
            return Err(FormatError::Invalid(format!("profile has {} values, expected {}", self.values.len(), self.n + 1)));
        }
        if p.period() != self.period {
            return Err(FormatError::Invalid(format!("stated period {} but the values have period {}", self.period, p.period())));
        }
        Ok(p)
    }
}

fn opt_ratio(x: &Option<Rational>) -> Value {
    x.as_ref().map_or(Value::Null, |r| Value::String(ratio(r)))
}

pub fn coefficient_certificate_json(c: &CoefficientCertificate) -> Value {
    let dec = &c.decomposition;
    let blocks: Vec<Value> = dec
        .blocks
        .iter()
        .zip(&c.block_factors)
        .map(|(b, f)| {
            json!({
                "center": b.center,
                "t": b.t,
                "p_j": b.p_j.to_string(),
                "q_j": b.q_j.to_string(),
                "s_j": b.s_j.to_string(),
                "factor": ratio(f),
            })
        })
        .collect();
    json!({
        "S": c.s,
        "ell": c.ell(),
        "t_list": c.t_list(),
        "bound": ratio(&c.bound),
        "exact": opt_ratio(&c.exact),
        "pass": c.pass,
        "pieces": {
            "chosen": c.selection.chosen,
            "isolated": c.selection.isolated,
            "decoupled": c.decoupled,
            "blocks": blocks,
            "r": dec.r.to_string(),
            "r_prime": dec.r_prime.to_string(),
            "block_factor": ratio(&c.block_factor),
            "remainder_factor": ratio(&c.remainder_factor),
            "remainder_t": c.remainder_t,
            "chain_bound": ratio(&c.chain_bound),
            "chain_pass": c.chain_pass,
        }
    })
}

pub fn bias_certificate_json(c: &BiasCertificate) -> Value {
    json!({
        "t": c.t,
        "ell": c.ell,
        "read": c.read,
        "stratum_size": c.stratum_size,
        "bound": ratio(&c.bound),
        "exp_bound_display": c.exp_bound,
        "count_bound_holds": c.count_bound_holds,
        "exact": opt_ratio(&c.exact),
        "pass": c.pass,
    })
}

pub fn composition_report_json(r: &CompositionBoundReport) -> Value {
    json!({
        "K": r.k,
        "lhs": ratio(&r.lhs),
        "rhs": ratio(&r.rhs),
        "alpha_h": ratio(&r.alpha_h),
        "simplified_rhs": ratio(&r.simplified_rhs),
        "simplified_applies": r.simplified_applies,
        "hypotheses": {"outer": r.hypotheses.outer, "inners": r.hypotheses.inners},
        "lhs_le_rhs": r.lhs_le_rhs,
        "pass": r.pass,
    })
}

pub fn xor_report_json(r: &XorReductionReport) -> Value {
    json!({
        "k": r.k,
        "l1k": ratio(&r.l1k),
        "alpha": ratio(&r.alpha),
        "t_star_display": r.t_star,
        "t": r.t,
        "l1k_xor": ratio(&r.l1k_xor),
        "b": ratio(&r.b),
        "chain_holds": r.chain_holds,
        "hypothesis_holds": r.hypothesis_holds,
        "ordering": format!("{:?}", r.ordering),
        "trivial": r.trivial,
        "pass": r.pass,
    })
}

/// `{outer: poly-string | truth-table bits, inners: [poly-string, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionSpecFile {
    pub outer: String,
    pub inners: Vec<String>,
}

impl CompositionSpecFile {
    /// A string of only `0`/`1` whose length is `2^m` is read as a truth
    /// table indexed by input mask; anything else as a polynomial in `m`
    /// variables, `m` being the number of inners.
    pub fn to_spec(&self) -> Result<CompositionSpec, FormatError> {
        let m = self.inners.len() as u32;
        let inners = self
            .inners
            .iter()
            .map(|s| poly(s))
            .collect::<Result<Vec<_>, _>>()?;
        let is_bits = !self.outer.is_empty() && self.outer.chars().all(|c| c == '0' || c == '1');
        let spec = if is_bits && self.outer.len() == 1usize << m && m > 0 {
            let bits: Vec<bool> = self.outer.chars().map(|c| c == '1').collect();
            let table = TruthTable::from_fn(m, |x| bits[x as usize]);
            CompositionSpec::from_table(&table, inners)
        } else {
            let outer = fgl_core::parse_poly_in(&self.outer, m)
                .map_err(|source| FormatError::Poly { text: self.outer.clone(), source })?;
            CompositionSpec::new(outer, inners)
        };
        spec.map_err(|e| FormatError::Invalid(e.to_string()))
    }

    pub fn parse(text: &str) -> Result<CompositionSpec, FormatError> {
        serde_json::from_str::<CompositionSpecFile>(text)?.to_spec()
    }
}

pub fn strata_json(p: &F2Poly) -> BTreeMap<usize, Vec<u32>> {
    p.variable_strata().into_iter().map(|(t, vs)| (t, vs.into_iter().collect())).collect()
}
