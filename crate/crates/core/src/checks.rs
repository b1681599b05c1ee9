//! Property suites shared by `verify` and `selftest`.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::cyclic_bar::{self, enumerate_weight_component, generated_cyclic_subset, CyclicBar};
use crate::error::Result;
use crate::homology::{chain_complex, verify_weight_piece};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: u64,
    pub violations: u64,
    pub first_failure: Option<String>,
    pub pass: bool,
}

impl SuiteResult {
    fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            cases: 0,
            violations: 0,
            first_failure: None,
            pass: true,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violations += 1;
            self.pass = false;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }
}

/// Simplicial and cyclic identities on every nondegenerate simplex of weight `i`
/// and degree at most `max_degree`.
pub fn identity_suite(ks: RangeInclusive<u32>, is: RangeInclusive<u64>, max_degree: usize) -> Result<SuiteResult> {
    let mut out = SuiteResult::new("simplicial and cyclic identities");
    for k in ks {
        let bar = CyclicBar::new(k)?;
        for i in is.clone() {
            for s in enumerate_weight_component(k, i, max_degree)?.iter() {
                let bad = bar.identity_violations(s)?;
                out.record(bad.is_empty(), || format!("k={k} i={i}: {}", bad[0]));
            }
        }
    }
    Ok(out)
}

/// Alternating count of nondegenerate simplices vanishes for every `i ≥ 1`.
pub fn euler_suite(ks: RangeInclusive<u32>, is: RangeInclusive<u64>) -> Result<SuiteResult> {
    let mut out = SuiteResult::new("Euler characteristic");
    for k in ks {
        for i in is.clone() {
            let chi = cyclic_bar::euler_characteristic(k, i)?;
            out.record(chi == 0, || format!("k={k} i={i}: χ = {chi}"));
        }
    }
    Ok(out)
}

/// `∂ ∘ ∂ = 0` on the full chain complex of each weight piece.
pub fn boundary_suite(ks: RangeInclusive<u32>, is: RangeInclusive<u64>) -> Result<SuiteResult> {
    let mut out = SuiteResult::new("boundary squares to zero");
    for k in ks {
        for i in is.clone() {
            let c = chain_complex(&enumerate_weight_component(k, i, i as usize)?)?;
            out.record(c.boundary_squares_vanish(), || format!("k={k} i={i}"));
        }
    }
    Ok(out)
}

/// Homology matches `Z` in degrees `2d`, `2d+1` for every `i` not divisible by `k`.
pub fn sphere_smash_suite(ks: RangeInclusive<u32>, is: RangeInclusive<u64>) -> Result<SuiteResult> {
    let mut out = SuiteResult::new("weight-piece homology");
    for k in ks {
        for i in is.clone().filter(|i| i % k as u64 != 0) {
            let check = verify_weight_piece(k, i)?;
            out.record(check.matches, || format!("k={k} i={i}"));
        }
    }
    Ok(out)
}

/// The cyclic subset generated by `x ∧ ... ∧ x` is the whole weight piece.
pub fn generated_subset_suite(ks: RangeInclusive<u32>, is: RangeInclusive<u64>) -> Result<SuiteResult> {
    let mut out = SuiteResult::new("generated cyclic subset");
    for k in ks {
        for i in is.clone() {
            let generated = generated_cyclic_subset(k, i, i as usize)?;
            let full = enumerate_weight_component(k, i, i as usize)?;
            out.record(generated == full, || format!("k={k} i={i}"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        assert!(identity_suite(2..=3, 1..=4, 5).unwrap().pass);
        assert!(euler_suite(2..=5, 1..=12).unwrap().pass);
        assert!(boundary_suite(2..=3, 1..=5).unwrap().pass);
        assert!(generated_subset_suite(2..=3, 1..=4).unwrap().pass);
        let s = sphere_smash_suite(2..=3, 1..=6).unwrap();
        assert!(s.pass);
        assert_eq!(s.cases, 3 + 4);
    }

    #[test]
    fn euler_at_weight_zero_is_one() {
        let s = euler_suite(2..=2, 0..=0).unwrap();
        assert!(!s.pass);
        assert_eq!(s.first_failure.as_deref(), Some("k=2 i=0: χ = 1"));
    }
}
