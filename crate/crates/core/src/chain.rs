//! Chain complexes of free abelian groups and their homology in
//! invariant-factor form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::intmat::{invariant_factors, IntMatrix};

/// A finitely generated abelian group in invariant-factor form:
/// Z^betti + Z/t1 + Z/t2 + ... with 1 < t1 | t2 | ...
#[derive(Clone, PartialEq, Eq, Default)]
pub struct AbGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl AbGroup {
    pub fn zero() -> Self {
        AbGroup::default()
    }

    pub fn free(betti: usize) -> Self {
        AbGroup { betti, torsion: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Debug for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".into()),
            n => parts.push(format!("Z^{}", n)),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{}", t));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Chain complex of free Z-modules indexed by integer degrees. `diffs[k]`
/// maps degree k to degree k-1 and has shape ranks(k-1) x ranks(k).
#[derive(Clone, Debug)]
pub struct ChainComplexZ {
    ranks: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, IntMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainError {
    ShapeMismatch { degree: i64 },
    NotAComplex { degree: i64 },
}

impl fmt::Display for ChainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainError::ShapeMismatch { degree } => write!(f, "differential shape mismatch at degree {}", degree),
            ChainError::NotAComplex { degree } => write!(f, "dd != 0 at degree {}", degree),
        }
    }
}

impl std::error::Error for ChainError {}

impl ChainComplexZ {
    /// Builds and checks shapes and dd = 0 exactly.
    pub fn new(ranks: BTreeMap<i64, usize>, diffs: BTreeMap<i64, IntMatrix>) -> Result<Self, ChainError> {
        let rank = |k: i64| ranks.get(&k).copied().unwrap_or(0);
        for (k, d) in &diffs {
            if d.rows() != rank(k - 1) || d.cols() != rank(*k) {
                return Err(ChainError::ShapeMismatch { degree: *k });
            }
        }
        let c = ChainComplexZ { ranks, diffs };
        for (k, d) in &c.diffs {
            if let Some(dnext) = c.diffs.get(&(k + 1)) {
                if !d.mul(dnext).is_zero() {
                    return Err(ChainError::NotAComplex { degree: k + 1 });
                }
            }
        }
        Ok(c)
    }

    pub fn rank(&self, k: i64) -> usize {
        self.ranks.get(&k).copied().unwrap_or(0)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.ranks.iter().filter(|(_, r)| **r > 0).map(|(k, _)| *k)
    }

    pub fn diff(&self, k: i64) -> IntMatrix {
        self.diffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zero(self.rank(k - 1), self.rank(k)))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.degrees().min()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.degrees().max()
    }

    /// H_k = ker d_k / im d_{k+1}; torsion ascending, every factor > 1.
    pub fn homology(&self, k: i64) -> AbGroup {
        let n = self.rank(k);
        if n == 0 {
            return AbGroup::zero();
        }
        let fk = invariant_factors(&self.diff(k));
        let fk1 = invariant_factors(&self.diff(k + 1));
        let rank_k = fk.len();
        let rank_k1 = fk1.len();
        let betti = n - rank_k - rank_k1;
        let torsion: Vec<BigInt> = fk1.into_iter().filter(|t| *t > BigInt::one()).collect();
        AbGroup { betti, torsion }
    }

    /// All homology groups, nonzero degrees only.
    pub fn homology_all(&self) -> BTreeMap<i64, AbGroup> {
        let mut out = BTreeMap::new();
        let (lo, hi) = match (self.min_degree(), self.max_degree()) {
            (Some(a), Some(b)) => (a, b),
            _ => return out,
        };
        // share invariant-factor computations across adjacent degrees
        let mut factors: BTreeMap<i64, Vec<BigInt>> = BTreeMap::new();
        for k in lo..=hi + 1 {
            factors.insert(k, invariant_factors(&self.diff(k)));
        }
        for k in lo..=hi {
            let n = self.rank(k);
            if n == 0 {
                continue;
            }
            let rank_k = factors[&k].len();
            let rank_k1 = factors[&(k + 1)].len();
            let betti = n - rank_k - rank_k1;
            let torsion: Vec<BigInt> = factors[&(k + 1)].iter().filter(|t| **t > BigInt::one()).cloned().collect();
            let h = AbGroup { betti, torsion };
            if !h.is_zero() {
                out.insert(k, h);
            }
        }
        out
    }

    /// The transpose complex: degree k holds the old degree -k, with
    /// transposed differentials. Cohomology H^k of the original equals
    /// homology of the transpose at -k.
    pub fn transpose(&self) -> ChainComplexZ {
        let mut ranks = BTreeMap::new();
        for (k, r) in &self.ranks {
            ranks.insert(-k, *r);
        }
        let mut diffs = BTreeMap::new();
        for (k, d) in &self.diffs {
            // d: C_k -> C_{k-1}; transpose: C_{-(k-1)} -> C_{-k}
            diffs.insert(-(k - 1), d.transpose());
        }
        ChainComplexZ { ranks, diffs }
    }

    /// Cochain-complex cohomology: H^k = ker(d^{k+1,T} .. ) computed via the
    /// transpose complex.
    pub fn cohomology(&self, k: i64) -> AbGroup {
        self.transpose().homology(-k)
    }
}
