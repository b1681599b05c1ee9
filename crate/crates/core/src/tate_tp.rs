//! Closed-form Tate homotopy and relative `TP` of `F_p[x]/(x^k)`.
//!
//! `TP_j(F_p[x]/(x^k), (x))` splits as a product over weights `i ≥ 1`. For odd `j`
//! the weight-`i` factor is `Z/p^e` with `e = v_p(k)` when `k | i` and `e = v_p(i)`
//! otherwise; for even `j` every factor vanishes. The product is infinite, so a
//! report carries the factors for `i ≤ N` plus the rule that generates the rest.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::AbelianGroup;

/// A prime number, validated by trial division.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Self(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Self::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest `e` with `p^e | i`.
pub fn p_adic_valuation(p: Prime, i: u64) -> Result<u32> {
    if i == 0 {
        return Err(Error::ZeroValuation);
    }
    let (p, mut i, mut e) = (p.get(), i, 0);
    while i % p == 0 {
        i /= p;
        e += 1;
    }
    Ok(e)
}

/// `d = ⌊(i-1)/k⌋` and the real dimension `2d` of `λ_d = C(1) ⊕ ... ⊕ C(d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaDim {
    pub d: u64,
    pub real_dim: u64,
}

pub fn lambda_dim(i: u64, k: u32) -> Result<LambdaDim> {
    if k < 2 {
        return Err(Error::TruncationTooSmall(k));
    }
    if i == 0 {
        return Err(Error::ZeroWeight);
    }
    let d = (i - 1) / k as u64;
    Ok(LambdaDim { d, real_dim: 2 * d })
}

/// `π_* Ĥ(C_{p^n}, THH(F_p) ⊗ S^{λ_d})`: free of rank one over `Z/p^n[t, t^{-1}]`
/// on a generator in degree `2d`, with `|t| = -2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TateModule {
    pub p: Prime,
    pub n: u32,
    pub generator_degree: i64,
    pub bott_degree: i64,
}

impl TateModule {
    pub fn new(p: Prime, n: u32, d: u64) -> Self {
        Self {
            p,
            n,
            generator_degree: 2 * d as i64,
            bott_degree: -2,
        }
    }

    /// `Z/p^n` in degrees of the generator's parity, zero elsewhere.
    pub fn homotopy(&self, j: i64) -> AbelianGroup {
        if self.n == 0 || (j - self.generator_degree).rem_euclid(2) != 0 {
            return AbelianGroup::zero();
        }
        AbelianGroup::cyclic(BigUint::from(self.p.get()).pow(self.n))
    }
}

pub fn tate_cpn_homotopy(p: Prime, n: u32, d: u64, j: i64) -> AbelianGroup {
    TateModule::new(p, n, d).homotopy(j)
}

/// Which closed form produced a factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `k | i`: exponent `v_p(k)`.
    MultipleOfK,
    /// `k ∤ i`: exponent `v_p(i)`.
    NotMultipleOfK,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::MultipleOfK => "i ∈ kN",
            Branch::NotMultipleOfK => "i ∉ kN",
        })
    }
}

/// The factor `Z/p^exponent` contributed by weight `source_weight`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicFactor {
    pub p: Prime,
    pub exponent: u32,
    pub source_weight: u64,
    pub branch: Branch,
    pub trivial: bool,
}

impl CyclicFactor {
    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::cyclic(BigUint::from(self.p.get()).pow(self.exponent))
    }
}

fn factor_exponent(p: Prime, k: u32, i: u64) -> Result<(u32, Branch)> {
    if i.is_multiple_of(k as u64) {
        Ok((p_adic_valuation(p, k as u64)?, Branch::MultipleOfK))
    } else {
        Ok((p_adic_valuation(p, i)?, Branch::NotMultipleOfK))
    }
}

/// `π_j Ĥ(T, THH(F_p) ⊗ N^cy(Π_k, i))`: a cyclic factor for odd `j`, `None` (zero) for even `j`.
pub fn weight_piece_tp(p: Prime, k: u32, i: u64, j: i64) -> Result<Option<CyclicFactor>> {
    if k < 2 {
        return Err(Error::TruncationTooSmall(k));
    }
    if i == 0 {
        return Err(Error::ZeroWeight);
    }
    if j.rem_euclid(2) == 0 {
        return Ok(None);
    }
    let (exponent, branch) = factor_exponent(p, k, i)?;
    Ok(Some(CyclicFactor {
        p,
        exponent,
        source_weight: i,
        branch,
        trivial: exponent == 0,
    }))
}

/// Reduced homology of `S^{2d} ∧ (T/C_i)_+`: `Z` in degrees `2d` and `2d + 1`.
/// Only defined for `k ∤ i`.
pub fn expected_reduced_homology(i: u64, k: u32) -> Result<BTreeMap<usize, AbelianGroup>> {
    let d = lambda_dim(i, k)?.d as usize;
    if i.is_multiple_of(k as u64) {
        return Err(Error::WeightMultipleOfK { i, k });
    }
    Ok(BTreeMap::from([
        (2 * d, AbelianGroup::free(1)),
        (2 * d + 1, AbelianGroup::free(1)),
    ]))
}

/// Supremum of factor exponents over all weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sup {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Sup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sup::Finite(r) => write!(f, "{r}"),
            Sup::Infinite => write!(f, "∞"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentSup {
    pub value: Sup,
    /// Weights `1..=scan_limit` were scanned.
    pub scan_limit: u64,
    pub scan_max: u32,
    /// For an infinite supremum, `p^(v_p(k)+1)`: a weight outside `kN` whose exponent
    /// exceeds `v_p(k)`; powers of `p` beyond it keep growing.
    pub witness_weight: Option<u64>,
    pub scan_consistent: bool,
}

/// With `k = p^r · m`, `gcd(m, p) = 1`: the supremum is `r` when `m = 1` and
/// infinite otherwise, checked against the weights `i ≤ 10k`.
pub fn exponent_sup(p: Prime, k: u32) -> Result<ExponentSup> {
    if k < 2 {
        return Err(Error::TruncationTooSmall(k));
    }
    let r = p_adic_valuation(p, k as u64)?;
    let m = k as u64 / p.get().pow(r);
    let scan_limit = 10 * k as u64;
    let mut scan_max = 0;
    for i in 1..=scan_limit {
        scan_max = scan_max.max(factor_exponent(p, k, i)?.0);
    }
    if m == 1 {
        return Ok(ExponentSup {
            value: Sup::Finite(r),
            scan_limit,
            scan_max,
            witness_weight: None,
            scan_consistent: scan_max == r,
        });
    }
    let witness = p.get().checked_pow(r + 1);
    let scan_consistent = match witness {
        Some(w) => {
            let (e, branch) = factor_exponent(p, k, w)?;
            branch == Branch::NotMultipleOfK && e > r
        }
        None => false,
    };
    Ok(ExponentSup {
        value: Sup::Infinite,
        scan_limit,
        scan_max,
        witness_weight: witness,
        scan_consistent,
    })
}

pub const NEGATIVE_CYCLIC_REMARK: &str =
    "The same verdicts hold for topological negative cyclic homology TC^-: it is not nil-invariant, even rationally.";

/// Whether `TP_*(F_p[x]/(x^k)) → TP_*(F_p)` is an isomorphism, integrally and after inverting `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub integral_iso: bool,
    /// A weight whose odd-degree factor is nontrivial.
    pub witness_weight: u64,
    pub witness_exponent: u32,
    pub p_inverted_iso: bool,
    pub exponent_sup: ExponentSup,
    pub remark: String,
}

pub fn nil_invariance_report(p: Prime, k: u32) -> Result<Verdicts> {
    if k < 2 {
        return Err(Error::TruncationTooSmall(k));
    }
    // i = k when p | k; otherwise i = p, which k cannot divide
    let witness_weight = if p_adic_valuation(p, k as u64)? >= 1 {
        k as u64
    } else {
        p.get()
    };
    let (witness_exponent, _) = factor_exponent(p, k, witness_weight)?;
    let exponent_sup = exponent_sup(p, k)?;
    Ok(Verdicts {
        integral_iso: witness_exponent == 0,
        witness_weight,
        witness_exponent,
        p_inverted_iso: matches!(exponent_sup.value, Sup::Finite(_)),
        exponent_sup,
        remark: NEGATIVE_CYCLIC_REMARK.to_string(),
    })
}

/// `TP_j(F_p[x]/(x^k), (x))` truncated to weights `i ≤ N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TpReport {
    pub p: Prime,
    pub k: u32,
    pub degree: i64,
    pub truncation: u64,
    /// One entry per weight `1..=truncation` for odd degrees; empty (the zero group) for even ones.
    pub factors: Vec<CyclicFactor>,
    /// The listed factors are a finite part of an infinite product.
    pub truncated: bool,
    pub verdicts: Verdicts,
}

impl TpReport {
    pub fn exponents(&self) -> Vec<u32> {
        self.factors.iter().map(|f| f.exponent).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty()
    }
}

pub fn relative_tp(p: Prime, k: u32, j: i64, truncation: u64) -> Result<TpReport> {
    if truncation == 0 {
        return Err(Error::ZeroTruncation);
    }
    let verdicts = nil_invariance_report(p, k)?;
    let mut factors = Vec::new();
    for i in 1..=truncation {
        if let Some(f) = weight_piece_tp(p, k, i, j)? {
            factors.push(f);
        }
    }
    Ok(TpReport {
        p,
        k,
        degree: j,
        truncation,
        truncated: !factors.is_empty(),
        factors,
        verdicts,
    })
}
