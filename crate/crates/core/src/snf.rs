//! Smith normal form over the integers.
//!
//! Boundary matrices are stored as sparse triplets. Invariant factors are found
//! in two phases: a sparse elimination that peels off unit pivots (each one
//! contributes an invariant factor 1 and splits off a direct summand), then a
//! dense Smith normal form of whatever is left. All arithmetic in both phases is
//! arbitrary precision.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer matrix as `(row, col, value)` triplets with no repeated positions and no zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// Builds from triplets, summing repeated positions and dropping zeros.
    pub fn from_triplets(rows: usize, cols: usize, mut triplets: Vec<(usize, usize, i64)>) -> Self {
        assert!(
            triplets.iter().all(|&(r, c, _)| r < rows && c < cols),
            "triplet out of bounds"
        );
        triplets.sort_unstable_by_key(|&(r, c, _)| (c, r));
        let mut entries: Vec<(usize, usize, i64)> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|e| e.2 != 0);
        Self { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Nonzero entries, sorted by column then row.
    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn max_abs_entry(&self) -> u64 {
        self.entries.iter().map(|e| e.2.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for &(r, c, v) in &self.entries {
            m.set(r, c, BigInt::from(v));
        }
        m
    }

    /// Whether `self * rhs` is the zero matrix, computed exactly.
    pub fn product_is_zero(&self, rhs: &SparseMatrix) -> bool {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut acc = vec![0i128; self.rows];
        let mut touched = Vec::new();
        for j in 0..rhs.cols {
            for &(mid, _, b) in rhs.column(j) {
                for &(r, _, a) in self.column(mid) {
                    touched.push(r);
                    acc[r] += a as i128 * b as i128;
                }
            }
            let nonzero = touched.iter().any(|&r| acc[r] != 0);
            for r in touched.drain(..) {
                acc[r] = 0;
            }
            if nonzero {
                return false;
            }
        }
        true
    }

    fn column(&self, c: usize) -> &[(usize, usize, i64)] {
        let lo = self.entries.partition_point(|e| e.1 < c);
        let hi = self.entries.partition_point(|e| e.1 <= c);
        &self.entries[lo..hi]
    }
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let data = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    // row[dst] -= q * row[src], from column `from` on
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt, from: usize) {
        for c in from..self.cols {
            let s = &self.data[src * self.cols + c];
            if !s.is_zero() {
                let delta = q * s;
                self.data[dst * self.cols + c] -= delta;
            }
        }
    }

    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt, from: usize) {
        for r in from..self.rows {
            let s = &self.data[r * self.cols + src];
            if !s.is_zero() {
                let delta = q * s;
                self.data[r * self.cols + dst] -= delta;
            }
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, from: usize) {
        self.sub_row(dst, src, &BigInt::from(-1), from);
    }
}

/// Diagonal of the Smith normal form: `min(rows, cols)` entries, the positive
/// invariant factors `d_1 | d_2 | ...` first, then zeros.
pub fn smith_normal_form(matrix: &IntMatrix) -> Vec<BigInt> {
    let mut a = matrix.clone();
    let n = a.rows.min(a.cols);
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        let Some((pr, pc)) = min_abs_entry(&a, t..a.rows, t..a.cols) else {
            break;
        };
        a.swap_rows(t, pr);
        a.swap_cols(t, pc);
        loop {
            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for r in t + 1..a.rows {
                if !a.get(r, t).is_zero() {
                    let q = a.get(r, t).div_floor(&pivot);
                    a.sub_row(r, t, &q, t);
                    clean &= a.get(r, t).is_zero();
                }
            }
            for c in t + 1..a.cols {
                if !a.get(t, c).is_zero() {
                    let q = a.get(t, c).div_floor(&pivot);
                    a.sub_col(c, t, &q, t);
                    clean &= a.get(t, c).is_zero();
                }
            }
            if !clean {
                // a remainder smaller than the pivot survives: make it the pivot
                let in_col = min_abs_entry(&a, t + 1..a.rows, t..t + 1).map(|(r, c)| (a.get(r, c).abs(), r, t));
                let in_row = min_abs_entry(&a, t..t + 1, t + 1..a.cols).map(|(r, c)| (a.get(r, c).abs(), t, c));
                let (_, r, c) = [in_col, in_row]
                    .into_iter()
                    .flatten()
                    .min_by(|x, y| x.0.cmp(&y.0))
                    .expect("unclean pivot leaves a remainder");
                a.swap_rows(t, r);
                a.swap_cols(t, c);
                continue;
            }
            let bad_row = (t + 1..a.rows).find(|&r| (t + 1..a.cols).any(|c| !a.get(r, c).is_multiple_of(&pivot)));
            match bad_row {
                Some(r) => a.add_row(t, r, t),
                None => break,
            }
        }
        diag.push(a.get(t, t).abs());
    }
    diag.resize(n, BigInt::zero());
    diag
}

fn min_abs_entry(a: &IntMatrix, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for r in rows {
        for c in cols.clone() {
            let v = a.get(r, c);
            if v.is_zero() {
                continue;
            }
            let m = v.abs();
            if best.as_ref().is_none_or(|b| m < b.2) {
                let unit = m.is_one();
                best = Some((r, c, m));
                if unit {
                    return best.map(|b| (b.0, b.1));
                }
            }
        }
    }
    best.map(|b| (b.0, b.1))
}

/// Nonzero invariant factors of a sparse integer matrix, in divisibility order.
/// Their count is the rank.
pub fn invariant_factors(matrix: &SparseMatrix) -> Vec<BigUint> {
    let mut elim = SparseEliminator::new(matrix);
    let units = elim.peel_unit_pivots();
    let residual = elim.residual();
    let mut factors = vec![BigUint::one(); units];
    factors.extend(
        smith_normal_form(&residual)
            .into_iter()
            .take_while(|d| !d.is_zero())
            .map(|d| d.magnitude().clone()),
    );
    factors
}

pub fn rank(matrix: &SparseMatrix) -> usize {
    invariant_factors(matrix).len()
}

type SparseRow = Vec<(usize, BigInt)>;

struct SparseEliminator {
    rows: Vec<SparseRow>,
    cols: Vec<BTreeSet<usize>>,
}

impl SparseEliminator {
    fn new(m: &SparseMatrix) -> Self {
        let mut rows: Vec<SparseRow> = vec![Vec::new(); m.rows];
        let mut cols = vec![BTreeSet::new(); m.cols];
        for &(r, c, v) in &m.entries {
            rows[r].push((c, BigInt::from(v)));
            cols[c].insert(r);
        }
        for row in &mut rows {
            row.sort_unstable_by_key(|e| e.0);
        }
        Self { rows, cols }
    }

    fn value(&self, r: usize, c: usize) -> Option<&BigInt> {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |e| e.0).ok().map(|idx| &row[idx].1)
    }

    // row[dst] -= q * row[src], maintaining the column index
    fn eliminate(&mut self, dst: usize, src: usize, q: &BigInt) {
        let old = std::mem::take(&mut self.rows[dst]);
        let pivot_row = &self.rows[src];
        let mut merged = Vec::with_capacity(old.len() + pivot_row.len());
        let (mut i, mut j) = (0, 0);
        while i < old.len() || j < pivot_row.len() {
            let take_old = j >= pivot_row.len() || (i < old.len() && old[i].0 < pivot_row[j].0);
            let take_src = i >= old.len() || (j < pivot_row.len() && pivot_row[j].0 < old[i].0);
            if take_old {
                merged.push(old[i].clone());
                i += 1;
            } else if take_src {
                let (c, ref v) = pivot_row[j];
                merged.push((c, -(q * v)));
                self.cols[c].insert(dst);
                j += 1;
            } else {
                let c = old[i].0;
                let v = &old[i].1 - q * &pivot_row[j].1;
                if v.is_zero() {
                    self.cols[c].remove(&dst);
                } else {
                    merged.push((c, v));
                }
                i += 1;
                j += 1;
            }
        }
        self.rows[dst] = merged;
    }

    /// Repeatedly picks a ±1 entry (preferring short rows), clears its column by row
    /// operations and deletes its row and column. Returns the number of pivots.
    fn peel_unit_pivots(&mut self) -> usize {
        let mut pivots = 0;
        loop {
            let mut order: Vec<usize> = (0..self.cols.len()).filter(|&c| !self.cols[c].is_empty()).collect();
            order.sort_by_key(|&c| self.cols[c].len());
            let mut progress = false;
            for c in order {
                let pivot_row = self.cols[c]
                    .iter()
                    .copied()
                    .filter(|&r| self.value(r, c).is_some_and(|v| v.magnitude().is_one()))
                    .min_by_key(|&r| self.rows[r].len());
                let Some(r) = pivot_row else {
                    continue;
                };
                let sign = self.value(r, c).cloned().expect("pivot present");
                let others: Vec<usize> = self.cols[c].iter().copied().filter(|&o| o != r).collect();
                for o in others {
                    // sign is ±1, so value * sign is the exact quotient
                    let q = self.value(o, c).expect("indexed row has entry") * &sign;
                    self.eliminate(o, r, &q);
                }
                for (c2, _) in std::mem::take(&mut self.rows[r]) {
                    self.cols[c2].remove(&r);
                }
                pivots += 1;
                progress = true;
            }
            if !progress {
                return pivots;
            }
        }
    }

    fn residual(&self) -> IntMatrix {
        let live_rows: Vec<usize> = (0..self.rows.len()).filter(|&r| !self.rows[r].is_empty()).collect();
        let live_cols: Vec<usize> = (0..self.cols.len()).filter(|&c| !self.cols[c].is_empty()).collect();
        let mut col_pos = vec![usize::MAX; self.cols.len()];
        for (pos, &c) in live_cols.iter().enumerate() {
            col_pos[c] = pos;
        }
        let mut m = IntMatrix::zeros(live_rows.len(), live_cols.len());
        for (pos, &r) in live_rows.iter().enumerate() {
            for (c, v) in &self.rows[r] {
                m.set(pos, col_pos[*c], v.clone());
            }
        }
        m
    }
}
