//! The cyclic bar construction `N^cy_•(Π_k)` as a pointed cyclic set.
//!
//! An `l`-simplex away from the basepoint is a smash `x^(a_0) ∧ ... ∧ x^(a_l)`,
//! stored as its exponent tuple. Faces multiply neighbouring factors (the last
//! face multiplies `x_l` into `x_0`), degeneracies insert the unit, and the
//! cyclic operator rotates the tuple right by one. Any product landing on `0`
//! collapses the whole simplex to the basepoint.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::monoid::{Element, PointedMonoid};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Simplex {
    Basepoint,
    Cell(Vec<u32>),
}

impl Simplex {
    pub fn cell(entries: impl Into<Vec<u32>>) -> Self {
        Simplex::Cell(entries.into())
    }

    pub fn entries(&self) -> Option<&[u32]> {
        match self {
            Simplex::Basepoint => None,
            Simplex::Cell(e) => Some(e),
        }
    }

    /// Simplicial degree `l`; `None` for the basepoint, which lives in every degree.
    pub fn degree(&self) -> Option<usize> {
        self.entries().map(|e| e.len() - 1)
    }

    /// Total exponent; `None` for the basepoint.
    pub fn weight(&self) -> Option<u64> {
        self.entries().map(|e| e.iter().map(|&a| a as u64).sum())
    }

    /// No unit factor in positions `1..=l`. The basepoint counts as degenerate.
    pub fn is_nondegenerate(&self) -> bool {
        match self {
            Simplex::Basepoint => false,
            Simplex::Cell(e) => e[1..].iter().all(|&a| a >= 1),
        }
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Simplex::Basepoint => write!(f, "*"),
            Simplex::Cell(e) => {
                write!(f, "(")?;
                for (j, a) in e.iter().enumerate() {
                    if j > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// The structure maps of `N^cy_•(Π_k)`.
#[derive(Debug, Clone)]
pub struct CyclicBar {
    monoid: PointedMonoid,
}

impl CyclicBar {
    pub fn new(k: u32) -> Result<Self> {
        Ok(Self {
            monoid: PointedMonoid::truncated(k)?,
        })
    }

    pub fn k(&self) -> u32 {
        self.monoid.truncation().expect("built from a truncated monoid")
    }

    pub fn monoid(&self) -> &PointedMonoid {
        &self.monoid
    }

    fn check_entries(&self, e: &[u32]) -> Result<()> {
        let k = self.k();
        match e.iter().find(|&&a| a >= k) {
            Some(&entry) => Err(Error::EntryOutOfRange { entry, k }),
            None => Ok(()),
        }
    }

    fn times(&self, a: u32, b: u32) -> Result<Option<u32>> {
        let k = self.k();
        let lift = |x: u32| self.monoid.power(x).ok_or(Error::EntryOutOfRange { entry: x, k });
        let prod: Element = self.monoid.multiply(lift(a)?, lift(b)?)?;
        Ok(self.monoid.exponent(prod))
    }

    /// `d_idx`. The basepoint is absorbing.
    pub fn face(&self, s: &Simplex, idx: usize) -> Result<Simplex> {
        let Simplex::Cell(e) = s else {
            return Ok(Simplex::Basepoint);
        };
        self.check_entries(e)?;
        let l = e.len() - 1;
        if l == 0 {
            return Err(Error::FaceOfVertex);
        }
        if idx > l {
            return Err(Error::IndexOutOfRange { index: idx, degree: l });
        }
        let mut out = Vec::with_capacity(l);
        if idx < l {
            let Some(merged) = self.times(e[idx], e[idx + 1])? else {
                return Ok(Simplex::Basepoint);
            };
            out.extend_from_slice(&e[..idx]);
            out.push(merged);
            out.extend_from_slice(&e[idx + 2..]);
        } else {
            let Some(merged) = self.times(e[l], e[0])? else {
                return Ok(Simplex::Basepoint);
            };
            out.push(merged);
            out.extend_from_slice(&e[1..l]);
        }
        Ok(Simplex::Cell(out))
    }

    /// `s_idx`: insert the unit after position `idx`.
    pub fn degeneracy(&self, s: &Simplex, idx: usize) -> Result<Simplex> {
        let Simplex::Cell(e) = s else {
            return Ok(Simplex::Basepoint);
        };
        self.check_entries(e)?;
        let l = e.len() - 1;
        if idx > l {
            return Err(Error::IndexOutOfRange { index: idx, degree: l });
        }
        let mut out = e.clone();
        out.insert(idx + 1, 0);
        Ok(Simplex::Cell(out))
    }

    /// `t_l`: rotate right by one.
    pub fn cyclic(&self, s: &Simplex) -> Result<Simplex> {
        let Simplex::Cell(e) = s else {
            return Ok(Simplex::Basepoint);
        };
        self.check_entries(e)?;
        let mut out = e.clone();
        out.rotate_right(1);
        Ok(Simplex::Cell(out))
    }

    fn cyclic_power(&self, s: &Simplex, times: usize) -> Result<Simplex> {
        let mut cur = s.clone();
        for _ in 0..times {
            cur = self.cyclic(&cur)?;
        }
        Ok(cur)
    }

    /// Checks every simplicial and cyclic identity that applies to `s`,
    /// returning a description of each violation.
    pub fn identity_violations(&self, s: &Simplex) -> Result<Vec<String>> {
        let Some(l) = s.degree() else {
            return Ok(Vec::new());
        };
        let mut bad = Vec::new();
        let mut expect = |lhs: Simplex, rhs: Simplex, what: String| {
            if lhs != rhs {
                bad.push(format!("{what} on {s}: {lhs} ≠ {rhs}"));
            }
        };
        let d = |x: &Simplex, a: usize| self.face(x, a);
        let sd = |x: &Simplex, a: usize| self.degeneracy(x, a);
        let t = |x: &Simplex| self.cyclic(x);

        if l >= 2 {
            for b in 1..=l {
                for a in 0..b {
                    expect(
                        d(&d(s, b)?, a)?,
                        d(&d(s, a)?, b - 1)?,
                        format!("d{a} d{b} = d{} d{a}", b - 1),
                    );
                }
            }
        }
        for b in 0..=l {
            for a in 0..=b {
                expect(
                    sd(&sd(s, b)?, a)?,
                    sd(&sd(s, a)?, b + 1)?,
                    format!("s{a} s{b} = s{} s{a}", b + 1),
                );
            }
        }
        for b in 0..=l {
            for a in 0..=l + 1 {
                let lhs = d(&sd(s, b)?, a)?;
                let (rhs, what) = if a < b {
                    (sd(&d(s, a)?, b - 1)?, format!("d{a} s{b} = s{} d{a}", b - 1))
                } else if a == b || a == b + 1 {
                    (s.clone(), format!("d{a} s{b} = id"))
                } else {
                    (sd(&d(s, a - 1)?, b)?, format!("d{a} s{b} = s{b} d{}", a - 1))
                };
                expect(lhs, rhs, what);
            }
        }

        expect(self.cyclic_power(s, l + 1)?, s.clone(), format!("t^{} = id", l + 1));
        if l >= 1 {
            expect(d(&t(s)?, 0)?, d(s, l)?, "d0 t = d_l".into());
            for a in 1..=l {
                expect(d(&t(s)?, a)?, t(&d(s, a - 1)?)?, format!("d{a} t = t d{}", a - 1));
            }
        }
        for a in 1..=l {
            expect(sd(&t(s)?, a)?, t(&sd(s, a - 1)?)?, format!("s{a} t = t s{}", a - 1));
        }
        expect(
            sd(&t(s)?, 0)?,
            self.cyclic_power(&sd(s, l)?, 2)?,
            "s0 t = t^2 s_l".into(),
        );
        Ok(bad)
    }
}

/// Nondegenerate simplices of weight `i`, grouped by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightComponent {
    pub k: u32,
    pub weight: u64,
    pub simplices_by_degree: Vec<Vec<Simplex>>,
}

impl WeightComponent {
    /// Highest degree carrying a nondegenerate simplex.
    pub fn top_degree(&self) -> Option<usize> {
        self.simplices_by_degree.iter().rposition(|v| !v.is_empty())
    }

    pub fn degree(&self, l: usize) -> &[Simplex] {
        self.simplices_by_degree.get(l).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices_by_degree.iter().map(Vec::len).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices_by_degree.iter().flatten()
    }

    /// `Σ (-1)^l #(nondegenerate l-simplices)`.
    pub fn euler_characteristic(&self) -> i64 {
        self.counts()
            .iter()
            .enumerate()
            .map(|(l, &c)| if l % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    fn trim(mut self) -> Self {
        while self.simplices_by_degree.last().is_some_and(Vec::is_empty) {
            self.simplices_by_degree.pop();
        }
        self
    }
}

// Appends, in lexicographic order, every way of writing `total` as `parts`
// entries drawn from `lo..=hi`.
fn compositions(total: u64, parts: usize, lo: u32, hi: u32, prefix: &mut Vec<u32>, out: &mut Vec<Simplex>) {
    if parts == 0 {
        if total == 0 {
            out.push(Simplex::Cell(prefix.clone()));
        }
        return;
    }
    let (lo64, hi64) = (lo as u64, hi as u64);
    if total < lo64 * parts as u64 || total > hi64 * parts as u64 {
        return;
    }
    for a in lo..=hi.min(total as u32) {
        prefix.push(a);
        compositions(total - a as u64, parts - 1, lo, hi, prefix, out);
        prefix.pop();
    }
}

/// All nondegenerate simplices of weight `i`, up to `max_degree`, in lexicographic
/// order within each degree. For `i ≥ 1` nothing lives above degree `i`.
pub fn enumerate_weight_component(k: u32, i: u64, max_degree: usize) -> Result<WeightComponent> {
    if k < 2 {
        return Err(Error::TruncationTooSmall(k));
    }
    let top = if i == 0 { 0 } else { max_degree.min(i as usize) };
    let mut by_degree = Vec::with_capacity(top + 1);
    for l in 0..=top {
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(l + 1);
        for a0 in (0..k).take_while(|&a0| a0 as u64 <= i) {
            prefix.push(a0);
            compositions(i - a0 as u64, l, 1, k - 1, &mut prefix, &mut out);
            prefix.pop();
        }
        by_degree.push(out);
    }
    Ok(WeightComponent {
        k,
        weight: i,
        simplices_by_degree: by_degree,
    }
    .trim())
}

/// Closure of `x ∧ ... ∧ x` (`i` factors) under faces, degeneracies and the cyclic
/// operator, reported through its nondegenerate simplices up to `max_degree`.
pub fn generated_cyclic_subset(k: u32, i: u64, max_degree: usize) -> Result<WeightComponent> {
    if i == 0 {
        return Err(Error::ZeroWeight);
    }
    let bar = CyclicBar::new(k)?;
    // Operator composites factor as degeneracies after cyclic maps after faces,
    // so capping the search at max(max_degree, i - 1) loses nothing below the cap.
    let cap = max_degree.max(i as usize - 1);
    let start = vec![1u32; i as usize];
    let mut seen: HashSet<Vec<u32>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(e) = queue.pop_front() {
        let s = Simplex::Cell(e);
        let l = s.degree().unwrap_or(0);
        let mut next = vec![bar.cyclic(&s)?];
        if l >= 1 {
            for a in 0..=l {
                next.push(bar.face(&s, a)?);
            }
        }
        if l < cap {
            for a in 0..=l {
                next.push(bar.degeneracy(&s, a)?);
            }
        }
        for n in next {
            if let Simplex::Cell(v) = n {
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    let mut by_degree = vec![Vec::new(); max_degree + 1];
    for e in seen {
        let l = e.len() - 1;
        let s = Simplex::Cell(e);
        if l <= max_degree && s.is_nondegenerate() {
            by_degree[l].push(s);
        }
    }
    for v in &mut by_degree {
        v.sort();
    }
    Ok(WeightComponent {
        k,
        weight: i,
        simplices_by_degree: by_degree,
    }
    .trim())
}

/// Number of nondegenerate `l`-simplices of weight `i`, by counting compositions.
pub fn count_nondegenerate(k: u32, i: u64, l: usize) -> Result<u128> {
    if k < 2 {
        return Err(Error::TruncationTooSmall(k));
    }
    let n = i as usize;
    if i == 0 {
        return Ok(u128::from(l == 0));
    }
    // ways[m][s]: compositions of s into m parts from 1..=k-1
    let mut ways = vec![vec![0u128; n + 1]; l + 1];
    ways[0][0] = 1;
    for m in 1..=l {
        for s in 0..=n {
            ways[m][s] = (1..k as usize).filter(|&a| a <= s).map(|a| ways[m - 1][s - a]).sum();
        }
    }
    Ok((0..k as usize).filter(|&a0| a0 <= n).map(|a0| ways[l][n - a0]).sum())
}

/// `Σ_l (-1)^l count_nondegenerate(k, i, l)` over all populated degrees.
pub fn euler_characteristic(k: u32, i: u64) -> Result<i128> {
    let top = i as usize;
    let mut chi = 0i128;
    for l in 0..=top {
        let c = count_nondegenerate(k, i, l)? as i128;
        chi += if l % 2 == 0 { c } else { -c };
    }
    Ok(chi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(e: &[u32]) -> Simplex {
        Simplex::cell(e.to_vec())
    }

    #[test]
    fn weights() {
        assert_eq!(cell(&[1, 1, 1]).weight(), Some(3));
        assert_eq!(Simplex::Basepoint.weight(), None);
        assert_eq!(cell(&[0, 2, 1]).weight(), Some(3));
    }

    #[test]
    fn faces() {
        let b2 = CyclicBar::new(2).unwrap();
        assert_eq!(b2.face(&cell(&[0, 1]), 0).unwrap(), cell(&[1]));
        assert_eq!(b2.face(&cell(&[0, 1, 1]), 1).unwrap(), Simplex::Basepoint);
        let b3 = CyclicBar::new(3).unwrap();
        assert_eq!(b3.face(&cell(&[1, 1]), 1).unwrap(), cell(&[2]));
        // last face multiplies x_l into x_0 and keeps x_1..x_{l-1}
        let b5 = CyclicBar::new(5).unwrap();
        assert_eq!(b5.face(&cell(&[1, 2, 3]), 2).unwrap(), cell(&[4, 2]));
    }

    #[test]
    fn face_errors() {
        let b = CyclicBar::new(3).unwrap();
        assert_eq!(b.face(&cell(&[1]), 0), Err(Error::FaceOfVertex));
        assert_eq!(
            b.face(&cell(&[1, 1]), 2),
            Err(Error::IndexOutOfRange { index: 2, degree: 1 })
        );
        assert_eq!(
            b.face(&cell(&[3, 1]), 0),
            Err(Error::EntryOutOfRange { entry: 3, k: 3 })
        );
        assert_eq!(b.face(&Simplex::Basepoint, 9), Ok(Simplex::Basepoint));
    }

    #[test]
    fn degeneracies_and_rotation() {
        let b = CyclicBar::new(3).unwrap();
        assert_eq!(b.degeneracy(&cell(&[1]), 0).unwrap(), cell(&[1, 0]));
        assert_eq!(b.degeneracy(&cell(&[0, 1]), 1).unwrap(), cell(&[0, 1, 0]));
        assert_eq!(
            b.degeneracy(&cell(&[0, 1]), 2),
            Err(Error::IndexOutOfRange { index: 2, degree: 1 })
        );
        assert_eq!(b.cyclic(&cell(&[0, 1, 2])).unwrap(), cell(&[2, 0, 1]));
        assert_eq!(b.cyclic(&cell(&[1])).unwrap(), cell(&[1]));
        let s = cell(&[0, 1, 2, 1]);
        assert_eq!(b.cyclic_power(&s, 4).unwrap(), s);
    }

    #[test]
    fn degeneracy_preserves_weight() {
        let b = CyclicBar::new(4).unwrap();
        let s = cell(&[2, 1, 3]);
        for idx in 0..=2 {
            assert_eq!(b.degeneracy(&s, idx).unwrap().weight(), s.weight());
        }
    }

    #[test]
    fn small_components() {
        let wc = enumerate_weight_component(2, 1, 5).unwrap();
        assert_eq!(wc.simplices_by_degree, vec![vec![cell(&[1])], vec![cell(&[0, 1])]]);
        let wc = enumerate_weight_component(2, 2, 5).unwrap();
        assert_eq!(
            wc.simplices_by_degree,
            vec![vec![], vec![cell(&[1, 1])], vec![cell(&[0, 1, 1])]]
        );
        let wc = enumerate_weight_component(3, 2, 2).unwrap();
        assert_eq!(
            wc.simplices_by_degree,
            vec![
                vec![cell(&[2])],
                vec![cell(&[0, 2]), cell(&[1, 1])],
                vec![cell(&[0, 1, 1])]
            ]
        );
    }

    #[test]
    fn weight_zero_is_the_unit_vertex() {
        let wc = enumerate_weight_component(3, 0, 4).unwrap();
        assert_eq!(wc.simplices_by_degree, vec![vec![cell(&[0])]]);
        assert_eq!(wc.euler_characteristic(), 1);
        assert_eq!(euler_characteristic(3, 0).unwrap(), 1);
    }

    #[test]
    fn top_degree_is_the_weight() {
        for k in 2..=5 {
            for i in 1..=9u64 {
                let wc = enumerate_weight_component(k, i, 20).unwrap();
                assert_eq!(wc.top_degree(), Some(i as usize));
                let mut top = vec![1u32; i as usize + 1];
                top[0] = 0;
                assert_eq!(wc.degree(i as usize), &[Simplex::Cell(top)]);
            }
        }
    }

    #[test]
    fn truncated_enumeration() {
        let wc = enumerate_weight_component(3, 4, 1).unwrap();
        assert_eq!(wc.top_degree(), Some(1));
        assert_eq!(wc.degree(1), &[cell(&[2, 2])]);
        assert!(wc.degree(0).is_empty());
    }

    #[test]
    fn generated_subsets_match_enumeration() {
        for (k, i) in [(2, 1), (3, 2), (2, 3)] {
            assert_eq!(
                generated_cyclic_subset(k, i, i as usize).unwrap(),
                enumerate_weight_component(k, i, i as usize).unwrap()
            );
        }
    }

    #[test]
    fn counts_match_enumeration() {
        for k in 2..=5 {
            for i in 0..=10u64 {
                let wc = enumerate_weight_component(k, i, 12).unwrap();
                for l in 0..=11 {
                    assert_eq!(
                        count_nondegenerate(k, i, l).unwrap(),
                        wc.degree(l).len() as u128,
                        "k={k} i={i} l={l}"
                    );
                }
            }
        }
    }

    #[test]
    fn identities_on_small_components() {
        for k in 2..=4 {
            let b = CyclicBar::new(k).unwrap();
            for i in 1..=6 {
                for s in enumerate_weight_component(k, i, 8).unwrap().iter() {
                    assert_eq!(b.identity_violations(s).unwrap(), Vec::<String>::new());
                }
            }
        }
    }
}
