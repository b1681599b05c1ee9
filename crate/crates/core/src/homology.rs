//! Reduced normalized integral chains of a weight component and their homology.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclic_bar::{enumerate_weight_component, CyclicBar, Simplex, WeightComponent};
use crate::error::{Error, Result};
use crate::snf::{invariant_factors, SparseMatrix};
use crate::tate_tp::{expected_reduced_homology, lambda_dim};

/// A finitely generated abelian group `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_m` in
/// invariant-factor form: every `d_t ≥ 2` and `d_t | d_{t+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub rank: usize,
    #[serde(with = "decimal_list")]
    pub torsion: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/n`; trivial for `n = 1`, and `Z` for `n = 0`.
    pub fn cyclic(n: BigUint) -> Self {
        if n.is_zero() {
            Self::free(1)
        } else if n.is_one() {
            Self::zero()
        } else {
            Self {
                rank: 0,
                torsion: vec![n],
            }
        }
    }

    /// Checks the invariant-factor conditions; factors equal to 1 are dropped.
    pub fn from_invariant_factors(rank: usize, factors: impl IntoIterator<Item = BigUint>) -> Result<Self> {
        let torsion: Vec<BigUint> = factors.into_iter().filter(|d| !d.is_one()).collect();
        if torsion.iter().any(Zero::is_zero) {
            return Err(Error::InvalidGroup("zero is not a torsion coefficient".into()));
        }
        if torsion.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::InvalidGroup(
                "torsion coefficients must form a divisibility chain".into(),
            ));
        }
        Ok(Self { rank, torsion })
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

mod decimal_list {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|d| d.to_str_radix(10)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|s| {
                BigUint::parse_bytes(s.as_bytes(), 10).ok_or_else(|| D::Error::custom(format!("bad integer {s:?}")))
            })
            .collect()
    }
}

/// Reduced normalized chains: basis in degree `l` is the nondegenerate weight-`i`
/// `l`-simplices; `boundaries[l]` maps degree `l` to degree `l-1`
/// (`boundaries[0]` has zero rows).
#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub k: u32,
    pub weight: u64,
    pub bases: Vec<Vec<Simplex>>,
    pub boundaries: Vec<SparseMatrix>,
}

/// Builds `∂_l(s) = Σ (-1)^a d_a(s)`, where basepoint and degenerate faces vanish.
/// The component must be complete in every degree it lists.
pub fn chain_complex(wc: &WeightComponent) -> Result<ChainComplex> {
    let bar = CyclicBar::new(wc.k)?;
    let bases = wc.simplices_by_degree.clone();
    let index: Vec<HashMap<&Simplex, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(j, s)| (s, j)).collect())
        .collect();
    let mut boundaries = Vec::with_capacity(bases.len());
    boundaries.push(SparseMatrix::zeros(0, bases.first().map_or(0, Vec::len)));
    for l in 1..bases.len() {
        let mut triplets = Vec::new();
        for (col, s) in bases[l].iter().enumerate() {
            for a in 0..=l {
                let f = bar.face(s, a)?;
                if !f.is_nondegenerate() {
                    continue;
                }
                let row = *index[l - 1].get(&f).expect("faces of a complete component stay in it");
                triplets.push((row, col, if a % 2 == 0 { 1 } else { -1 }));
            }
        }
        boundaries.push(SparseMatrix::from_triplets(
            bases[l - 1].len(),
            bases[l].len(),
            triplets,
        ));
    }
    Ok(ChainComplex {
        k: wc.k,
        weight: wc.weight,
        bases,
        boundaries,
    })
}

impl ChainComplex {
    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    /// `∂_{l} ∘ ∂_{l+1} = 0` for every `l`.
    pub fn boundary_squares_vanish(&self) -> bool {
        self.boundaries.windows(2).all(|w| w[0].product_is_zero(&w[1]))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims()
            .iter()
            .enumerate()
            .map(|(l, &n)| if l % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

/// Reduced homology in every degree from 0 to the top of the complex.
pub fn homology_groups(c: &ChainComplex) -> BTreeMap<usize, AbelianGroup> {
    let factors: Vec<Vec<BigUint>> = c.boundaries.iter().map(invariant_factors).collect();
    let rank = |l: usize| factors.get(l).map_or(0, Vec::len);
    let mut out = BTreeMap::new();
    for (l, basis) in c.bases.iter().enumerate() {
        let free = basis.len() - rank(l) - rank(l + 1);
        let torsion = factors.get(l + 1).cloned().unwrap_or_default();
        let group =
            AbelianGroup::from_invariant_factors(free, torsion).expect("Smith normal form gives a divisibility chain");
        out.insert(l, group);
    }
    out
}

/// Everything computed for one weight piece.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightHomology {
    pub k: u32,
    pub weight: u64,
    pub basis_sizes: Vec<usize>,
    pub groups: Vec<DegreeGroup>,
    pub boundary_squared_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeGroup {
    pub degree: usize,
    pub group: AbelianGroup,
}

impl WeightHomology {
    pub fn group(&self, degree: usize) -> AbelianGroup {
        self.groups
            .iter()
            .find(|g| g.degree == degree)
            .map(|g| g.group.clone())
            .unwrap_or_default()
    }

    /// Degrees with nontrivial homology.
    pub fn support(&self) -> Vec<usize> {
        self.groups
            .iter()
            .filter(|g| !g.group.is_trivial())
            .map(|g| g.degree)
            .collect()
    }
}

/// Reduced homology of the full weight-`i` piece of `N^cy(Π_k)`.
pub fn weight_homology(k: u32, i: u64) -> Result<WeightHomology> {
    let wc = enumerate_weight_component(k, i, i as usize)?;
    let c = chain_complex(&wc)?;
    let groups = homology_groups(&c)
        .into_iter()
        .map(|(degree, group)| DegreeGroup { degree, group })
        .collect();
    Ok(WeightHomology {
        k,
        weight: i,
        basis_sizes: c.dims(),
        boundary_squared_zero: c.boundary_squares_vanish(),
        groups,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeComparison {
    pub degree: usize,
    pub computed: AbelianGroup,
    pub expected: AbelianGroup,
    pub matches: bool,
}

/// Computed against predicted homology for a weight `i` not divisible by `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightPieceCheck {
    pub k: u32,
    pub weight: u64,
    pub d: u64,
    pub degrees: Vec<DegreeComparison>,
    pub boundary_squared_zero: bool,
    pub matches: bool,
}

/// Compares the computed reduced homology of the weight-`i` piece with `Z` in
/// degrees `2d` and `2d + 1`, `d = ⌊(i-1)/k⌋`.
pub fn verify_weight_piece(k: u32, i: u64) -> Result<WeightPieceCheck> {
    let expected = expected_reduced_homology(i, k)?;
    let d = lambda_dim(i, k)?.d;
    let computed = weight_homology(k, i)?;
    let top = computed.groups.len().max(expected.keys().max().map_or(0, |m| m + 1));
    let degrees: Vec<DegreeComparison> = (0..top)
        .map(|degree| {
            let computed = computed.group(degree);
            let expected = expected.get(&degree).cloned().unwrap_or_default();
            DegreeComparison {
                degree,
                matches: computed == expected,
                computed,
                expected,
            }
        })
        .collect();
    let matches = degrees.iter().all(|c| c.matches);
    Ok(WeightPieceCheck {
        k,
        weight: i,
        d,
        degrees,
        boundary_squared_zero: computed.boundary_squared_zero,
        matches,
    })
}
