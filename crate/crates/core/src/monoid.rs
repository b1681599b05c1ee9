//! Finite pointed commutative monoids.
//!
//! Elements are indices into a multiplication table. Index 0 is always the
//! basepoint `0` and index 1 the unit `1`. The truncated polynomial monoid
//! `Π_k = {0, 1, x, ..., x^(k-1)}` with `x^k = 0` stores `x^a` at index `a + 1`,
//! so an element's weight is its exponent.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub usize);

impl Element {
    pub const BASEPOINT: Element = Element(0);
    pub const UNIT: Element = Element(1);

    pub fn is_basepoint(self) -> bool {
        self == Self::BASEPOINT
    }
}

/// A finite pointed commutative monoid with a weight grading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedMonoid {
    names: Vec<String>,
    table: Vec<Element>,
    weights: Vec<Option<u32>>,
    truncation: Option<u32>,
}

impl PointedMonoid {
    /// The truncated polynomial monoid `Π_k`.
    pub fn truncated(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::TruncationTooSmall(k));
        }
        let n = k as usize + 1;
        let mut names = vec!["0".to_string(), "1".to_string()];
        names.extend((1..k).map(|a| if a == 1 { "x".to_string() } else { format!("x^{a}") }));
        let mut weights = vec![None];
        weights.extend((0..k).map(Some));
        let mut table = vec![Element::BASEPOINT; n * n];
        for a in 0..k {
            for b in 0..k {
                if a + b < k {
                    table[(a as usize + 1) * n + b as usize + 1] = Element(a as usize + b as usize + 1);
                }
            }
        }
        Ok(Self {
            names,
            table,
            weights,
            truncation: Some(k),
        })
    }

    /// Builds a monoid from an explicit table, checking every monoid law exhaustively.
    ///
    /// `table[a * n + b]` is the product of elements `a` and `b`; `weights[0]` must be
    /// `None` (the basepoint) and every other weight must be present.
    pub fn from_table(names: Vec<String>, table: Vec<usize>, weights: Vec<Option<u32>>) -> Result<Self> {
        let n = names.len();
        if n < 2 {
            return Err(Error::InvalidMonoid("need at least a basepoint and a unit".into()));
        }
        if table.len() != n * n || weights.len() != n {
            return Err(Error::InvalidMonoid("table or weight list has the wrong size".into()));
        }
        if let Some(&bad) = table.iter().find(|&&e| e >= n) {
            return Err(Error::UnknownElement(bad));
        }
        let monoid = Self {
            names,
            table: table.into_iter().map(Element).collect(),
            weights,
            truncation: None,
        };
        monoid.check_laws()?;
        Ok(monoid)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.len()).map(Element)
    }

    pub fn name(&self, a: Element) -> Result<&str> {
        self.names
            .get(a.0)
            .map(String::as_str)
            .ok_or(Error::UnknownElement(a.0))
    }

    /// `Some(k)` when this monoid is `Π_k`.
    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub fn multiply(&self, a: Element, b: Element) -> Result<Element> {
        let n = self.len();
        if a.0 >= n {
            return Err(Error::UnknownElement(a.0));
        }
        if b.0 >= n {
            return Err(Error::UnknownElement(b.0));
        }
        Ok(self.table[a.0 * n + b.0])
    }

    /// Weight of an element; `None` for the basepoint.
    pub fn weight(&self, a: Element) -> Result<Option<u32>> {
        self.weights.get(a.0).copied().ok_or(Error::UnknownElement(a.0))
    }

    /// `x^a` in `Π_k`, or `None` when `a ≥ k` or the monoid is not truncated polynomial.
    pub fn power(&self, a: u32) -> Option<Element> {
        match self.truncation {
            Some(k) if a < k => Some(Element(a as usize + 1)),
            _ => None,
        }
    }

    /// Inverse of [`PointedMonoid::power`]: the exponent of a nonbasepoint element of `Π_k`.
    pub fn exponent(&self, a: Element) -> Option<u32> {
        match self.truncation {
            Some(k) if a.0 >= 1 && a.0 <= k as usize => Some(a.0 as u32 - 1),
            _ => None,
        }
    }

    /// Exhaustive check of commutativity, associativity, the absorbing basepoint,
    /// the neutral unit and weight additivity.
    pub fn check_laws(&self) -> Result<()> {
        let n = self.len();
        let mul = |a: usize, b: usize| self.table[a * n + b].0;
        if self.weights[0].is_some() {
            return Err(Error::InvalidMonoid("basepoint must have no weight".into()));
        }
        if self.weights[1] != Some(0) {
            return Err(Error::InvalidMonoid("unit must have weight 0".into()));
        }
        if let Some(a) = (1..n).find(|&a| self.weights[a].is_none()) {
            return Err(Error::InvalidMonoid(format!("element {a} has no weight")));
        }
        for a in 0..n {
            if mul(0, a) != 0 || mul(a, 0) != 0 {
                return Err(Error::InvalidMonoid(format!("basepoint does not absorb {a}")));
            }
            if mul(1, a) != a || mul(a, 1) != a {
                return Err(Error::InvalidMonoid(format!("unit does not fix {a}")));
            }
            for b in 0..n {
                let ab = mul(a, b);
                if ab != mul(b, a) {
                    return Err(Error::InvalidMonoid(format!("{a}·{b} is not commutative")));
                }
                if ab != 0 {
                    if let (Some(wa), Some(wb)) = (self.weights[a], self.weights[b]) {
                        if self.weights[ab] != Some(wa + wb) {
                            return Err(Error::InvalidMonoid(format!("weight not additive on {a}·{b}")));
                        }
                    }
                }
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidMonoid(format!("({a}·{b})·{c} is not associative")));
                    }
                }
            }
        }
        Ok(())
    }
}
