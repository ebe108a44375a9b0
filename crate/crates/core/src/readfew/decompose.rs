use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Signed;

use super::{ReadFewError, SpreadSelection};
use crate::f2poly::{F2Poly, Monomial, Var};
use crate::rational::{self, Rational};
use crate::spectrum::{check_cap, compact, TruthTable};

/// One block of a [`Decomposition`], centred at a chosen index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub center: Var,
    pub t: usize,
    /// `T_j = N_{=1}(i_j)`.
    pub halo: BTreeSet<Var>,
    /// Monomials containing the centre.
    pub p_j: F2Poly,
    /// Monomials touching the halo but not the centre.
    pub q_j: F2Poly,
    /// `p_j + q_j + x_{i_j} + Σ_{k ∈ S ∩ T_j} x_k`.
    pub s_j: F2Poly,
}

impl Block {
    /// Variables `{i_j} ∪ T_j`.
    pub fn inner_vars(&self) -> BTreeSet<Var> {
        let mut v = self.halo.clone();
        v.insert(self.center);
        v
    }

    /// Variables of `q_j` outside the block.
    pub fn outer_vars(&self) -> BTreeSet<Var> {
        let inner = self.inner_vars();
        self.q_j.occurring_vars().into_iter().filter(|v| !inner.contains(v)).collect()
    }
}

/// `p_S = Σ_j s_j + r'` with variable blocks `{i_j} ∪ T_j` and the rest `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub s: BTreeSet<Var>,
    pub blocks: Vec<Block>,
    /// Monomials touching no block.
    pub r: F2Poly,
    /// `r + Σ_{k ∈ S ∩ R} x_k`.
    pub r_prime: F2Poly,
    pub rest: BTreeSet<Var>,
}

impl Decomposition {
    /// `Σ_j s_j + r'`.
    pub fn reconstruct(&self) -> F2Poly {
        self.blocks.iter().fold(self.r_prime.clone(), |acc, b| acc.xor(&b.s_j))
    }

    /// No `q_j` reaches into `R`, so every block's bias is independent of
    /// `x_R`.
    pub fn decoupled(&self) -> bool {
        self.blocks.iter().all(|b| b.outer_vars().is_empty())
    }

    /// Blocks pairwise variable-disjoint, and `r'` confined to `R`.
    pub fn disjointness_holds(&self) -> bool {
        let mut seen = BTreeSet::new();
        for b in &self.blocks {
            for v in b.inner_vars() {
                if !seen.insert(v) {
                    return false;
                }
            }
            let block_vars = b.s_j.occurring_vars();
            if block_vars.iter().any(|v| !b.inner_vars().contains(v) && !self.rest.contains(v)) {
                return false;
            }
        }
        self.r_prime.occurring_vars().iter().all(|v| self.rest.contains(v))
    }
}

pub fn decompose_around(p: &F2Poly, s: &BTreeSet<Var>, sel: &SpreadSelection) -> Result<Decomposition, ReadFewError> {
    let g = p.dependency_graph();
    let mut claimed: BTreeSet<&Monomial> = BTreeSet::new();
    let mut blocks = Vec::with_capacity(sel.ell());
    let mut block_vars = BTreeSet::new();
    for (&center, &t) in sel.chosen.iter().zip(&sel.strata) {
        let halo = g.neighbors(center).clone();
        let mut p_mons = Vec::new();
        let mut q_mons = Vec::new();
        for m in p.monomials() {
            if m.contains(center) {
                p_mons.push(m.clone());
            } else if m.vars().iter().any(|v| halo.contains(v)) {
                q_mons.push(m.clone());
            } else {
                continue;
            }
            if !claimed.insert(m) {
                return Err(ReadFewError::BlocksOverlap(center));
            }
        }
        let p_j = F2Poly::from_monomials(p.n(), p_mons)?;
        let q_j = F2Poly::from_monomials(p.n(), q_mons)?;
        let mut linear: BTreeSet<Var> = s.iter().copied().filter(|k| halo.contains(k)).collect();
        linear.insert(center);
        let s_j = p_j.xor(&q_j).add_parity(&linear)?;
        block_vars.insert(center);
        block_vars.extend(halo.iter().copied());
        blocks.push(Block { center, t, halo, p_j, q_j, s_j });
    }
    let r = p.filter(|m| !claimed.contains(m));
    let rest: BTreeSet<Var> = (1..=p.n()).filter(|v| !block_vars.contains(v)).collect();
    let s_rest: BTreeSet<Var> = s.iter().copied().filter(|k| rest.contains(k)).collect();
    let r_prime = r.add_parity(&s_rest)?;
    let dec = Decomposition { s: s.clone(), blocks, r, r_prime, rest };
    if dec.reconstruct() != p.add_parity(s)? {
        return Err(ReadFewError::Reconstruction);
    }
    Ok(dec)
}

/// Exact `max_{x_R} |E_{x_{i_j}, x_{T_j}}[(-1)^{s_j}]|` against the bound
/// `Δ 2^{-(t_j - 1)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SjBiasCheck {
    pub j: usize,
    pub max_bias: Rational,
    pub bound: Rational,
    pub holds: bool,
}

pub fn sj_bias_check(dec: &Decomposition, j: usize, delta: usize, cap: u32) -> Result<SjBiasCheck, ReadFewError> {
    let block = dec.blocks.get(j).ok_or(ReadFewError::BlockRange { j, count: dec.blocks.len() })?;
    let (q, occ) = compact(&block.s_j);
    check_cap(q.n(), cap)?;
    let inner = block.inner_vars();
    let outer_bits: u64 = occ
        .iter()
        .enumerate()
        .filter(|(_, v)| !inner.contains(v))
        .fold(0, |m, (i, _)| m | 1 << i);
    let inner_count = q.n() - outer_bits.count_ones();
    let table = TruthTable::from_poly(&q);
    // One signed sum per assignment of the outer (R-side) variables, keyed
    // by the outer bits of x.
    let mut sums: alloc::collections::BTreeMap<u64, i64> = alloc::collections::BTreeMap::new();
    for x in 0..table.len() {
        *sums.entry(x & outer_bits).or_default() += if table.get(x) { -1 } else { 1 };
    }
    let max_abs = sums.values().map(|s| s.abs()).max().unwrap_or(1 << inner_count);
    let max_bias = Rational::new(BigInt::from(max_abs), rational::pow2(inner_count));
    let bound = rational::int(delta as i64) * rational::pow(&rational::frac(1, 2), block.t - 1);
    let holds = max_bias.abs() <= bound;
    Ok(SjBiasCheck { j, max_bias, bound, holds })
}
