#![allow(dead_code)]

use num_bigint::BigUint;
use num_integer::Integer;
use tpnil::cyclic_bar::{CyclicBar, Simplex};

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .filter(|&c| m[0][c] != 0)
            .map(|c| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    if n < r {
        return Vec::new();
    }
    let mut out = subsets(n - 1, r);
    for mut s in subsets(n - 1, r - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `d_1 ⋯ d_r = gcd of all r×r minors`.
pub fn minor_gcd_invariant_factors(m: &[Vec<i64>]) -> Vec<BigUint> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut divisors = vec![1i128];
    for r in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, r) {
            for cs in subsets(cols, r) {
                let minor: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m[i][j] as i128).collect())
                    .collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    divisors
        .windows(2)
        .map(|w| BigUint::from((w[1] / w[0]) as u128))
        .collect()
}

/// Every simplicial and cyclic identity applying to `s`, written out from the
/// defining relations; returns the names of the ones that fail.
pub fn failed_identities(bar: &CyclicBar, s: &Simplex) -> Vec<String> {
    let l = s.degree().expect("nonbasepoint");
    let d = |x: &Simplex, a: usize| bar.face(x, a).unwrap();
    let sg = |x: &Simplex, a: usize| bar.degeneracy(x, a).unwrap();
    let t = |x: &Simplex| bar.cyclic(x).unwrap();
    let mut failed = Vec::new();
    let mut check = |ok: bool, name: String| {
        if !ok {
            failed.push(name);
        }
    };
    for b in 0..=l {
        for a in 0..b {
            if l >= 2 {
                check(d(&d(s, b), a) == d(&d(s, a), b - 1), format!("d{a}d{b}"));
            }
        }
        for a in 0..=b {
            check(sg(&sg(s, b), a) == sg(&sg(s, a), b + 1), format!("s{a}s{b}"));
        }
        for a in 0..=l + 1 {
            let lhs = d(&sg(s, b), a);
            if a == b || a == b + 1 {
                check(lhs == *s, format!("d{a}s{b}=id"));
            } else if l >= 1 && a < b {
                check(lhs == sg(&d(s, a), b - 1), format!("d{a}s{b}"));
            } else if l >= 1 {
                check(lhs == sg(&d(s, a - 1), b), format!("d{a}s{b}"));
            }
        }
    }
    let mut rotated = s.clone();
    for _ in 0..=l {
        rotated = t(&rotated);
    }
    check(rotated == *s, "t^(l+1)".into());
    if l >= 1 {
        check(d(&t(s), 0) == d(s, l), "d0 t".into());
        for a in 1..=l {
            check(d(&t(s), a) == t(&d(s, a - 1)), format!("d{a} t"));
        }
    }
    for a in 1..=l {
        check(sg(&t(s), a) == t(&sg(s, a - 1)), format!("s{a} t"));
    }
    check(sg(&t(s), 0) == t(&t(&sg(s, l))), "s0 t".into());
    failed
}

/// Nondegenerate `l`-simplex count of weight `i` from the generating polynomial
/// `(1 + x + ... + x^(k-1)) (x + ... + x^(k-1))^l`.
pub fn simplex_count_by_polynomial(k: u32, i: usize, l: usize) -> u128 {
    let mut poly = vec![0u128; i + 1];
    for c in poly.iter_mut().take(k as usize) {
        *c = 1;
    }
    for _ in 0..l {
        let mut next = vec![0u128; i + 1];
        for (deg, &c) in poly.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for a in 1..k as usize {
                if deg + a <= i {
                    next[deg + a] += c;
                }
            }
        }
        poly = next;
    }
    poly[i]
}
