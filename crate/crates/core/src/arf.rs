//! Quadratic refinements of symplectic forms over F_2, the Arf invariant,
//! and the quadratic Witt group.
//!
//! A quadratic space stores q on a basis plus the bilinear pairing B; the
//! refinement law q(x+y) = q(x) + q(y) + B(x,y) determines q everywhere, so
//! inconsistent tables cannot be represented.

use std::fmt;

/// F_2 quadratic space of dimension 2g.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSpace {
    dim: usize,
    q_basis: Vec<bool>,
    b: Vec<Vec<bool>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArfError {
    OddDimension,
    NotAlternating,
    LengthMismatch,
    Degenerate,
}

impl fmt::Display for ArfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ArfError::OddDimension => "dimension must be even",
            ArfError::NotAlternating => "B must be symmetric with zero diagonal",
            ArfError::LengthMismatch => "vector length does not match dimension",
            ArfError::Degenerate => "bilinear form is degenerate",
        };
        write!(f, "{}", s)
    }
}

impl std::error::Error for ArfError {}

fn f2_rank(mut m: Vec<Vec<bool>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        if let Some(p) = (rank..rows).find(|&r| m[r][c]) {
            m.swap(rank, p);
            for r in 0..rows {
                if r != rank && m[r][c] {
                    let pivot = m[rank].clone();
                    for (x, y) in m[r].iter_mut().zip(&pivot) {
                        *x ^= *y;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

impl QuadraticSpace {
    pub fn new(q_basis: Vec<bool>, b: Vec<Vec<bool>>) -> Result<Self, ArfError> {
        let dim = q_basis.len();
        if dim % 2 != 0 {
            return Err(ArfError::OddDimension);
        }
        if b.len() != dim || b.iter().any(|row| row.len() != dim) {
            return Err(ArfError::LengthMismatch);
        }
        for i in 0..dim {
            if b[i][i] {
                return Err(ArfError::NotAlternating);
            }
            for j in 0..dim {
                if b[i][j] != b[j][i] {
                    return Err(ArfError::NotAlternating);
                }
            }
        }
        Ok(QuadraticSpace { dim, q_basis, b })
    }

    /// The hyperbolic plane H = <a, b>: q(a) = q(b) = 0, q(a+b) = 1.
    pub fn hyperbolic() -> Self {
        QuadraticSpace::new(vec![false, false], vec![vec![false, true], vec![true, false]]).unwrap()
    }

    /// The plane with q = 1 on every nonzero vector (the nontrivial Witt class).
    pub fn arf_one_plane() -> Self {
        QuadraticSpace::new(vec![true, true], vec![vec![false, true], vec![true, false]]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn genus(&self) -> usize {
        self.dim / 2
    }

    pub fn q_basis(&self) -> &[bool] {
        &self.q_basis
    }

    pub fn pairing(&self, x: &[bool], y: &[bool]) -> bool {
        let mut acc = false;
        for i in 0..self.dim {
            if !x[i] {
                continue;
            }
            for j in 0..self.dim {
                acc ^= y[j] & self.b[i][j];
            }
        }
        acc
    }

    pub fn is_nondegenerate(&self) -> bool {
        f2_rank(self.b.clone()) == self.dim
    }

    /// Direct sum of quadratic spaces.
    pub fn direct_sum(&self, other: &QuadraticSpace) -> QuadraticSpace {
        let dim = self.dim + other.dim;
        let mut q = self.q_basis.clone();
        q.extend_from_slice(&other.q_basis);
        let mut b = vec![vec![false; dim]; dim];
        for i in 0..self.dim {
            b[i][..self.dim].copy_from_slice(&self.b[i]);
        }
        for i in 0..other.dim {
            b[self.dim + i][self.dim..].copy_from_slice(&other.b[i]);
        }
        QuadraticSpace::new(q, b).unwrap()
    }

    /// q(x) by expansion over the support of x using the refinement law.
    pub fn eval_q(&self, x: &[bool]) -> Result<bool, ArfError> {
        if x.len() != self.dim {
            return Err(ArfError::LengthMismatch);
        }
        let support: Vec<usize> = (0..self.dim).filter(|&i| x[i]).collect();
        let mut val = false;
        for &i in &support {
            val ^= self.q_basis[i];
        }
        for a in 0..support.len() {
            for b in a + 1..support.len() {
                val ^= self.b[support[a]][support[b]];
            }
        }
        Ok(val)
    }

    fn all_vectors(&self) -> impl Iterator<Item = Vec<bool>> + '_ {
        (0u64..(1u64 << self.dim)).map(move |bits| (0..self.dim).map(|i| bits >> i & 1 == 1).collect())
    }

    /// Counts of q-values over all 2^(2g) vectors: (count of 0, count of 1).
    pub fn value_histogram(&self) -> (u64, u64) {
        let mut zeros = 0;
        let mut ones = 0;
        for v in self.all_vectors() {
            if self.eval_q(&v).unwrap() {
                ones += 1;
            } else {
                zeros += 1;
            }
        }
        (zeros, ones)
    }

    /// The Arf invariant: the more popular of {0,1} as a value of q. Ties are
    /// impossible for nondegenerate B.
    pub fn arf(&self) -> Result<bool, ArfError> {
        if !self.is_nondegenerate() {
            return Err(ArfError::Degenerate);
        }
        let (zeros, ones) = self.value_histogram();
        debug_assert_ne!(zeros, ones);
        Ok(ones > zeros)
    }

    /// Witt class by splitting off hyperbolic planes: find x != 0 with
    /// q(x) = 0, pair it with some y, pass to the orthogonal complement of
    /// <x, y>, repeat. Returns 0 iff the space fully splits.
    pub fn witt_class(&self) -> Result<bool, ArfError> {
        if !self.is_nondegenerate() {
            return Err(ArfError::Degenerate);
        }
        let mut space = self.clone();
        loop {
            if space.dim == 0 {
                return Ok(false);
            }
            let iso = space
                .all_vectors()
                .skip(1)
                .find(|v| !space.eval_q(v).unwrap());
            let x = match iso {
                Some(x) => x,
                None => {
                    // no isotropic nonzero vector: only the arf-one plane
                    debug_assert_eq!(space.dim, 2);
                    return Ok(true);
                }
            };
            // y with B(x, y) = 1 exists by nondegeneracy
            let y = space
                .all_vectors()
                .find(|v| space.pairing(&x, v))
                .expect("nondegenerate");
            // orthogonal complement of <x, y>: basis via kernel of the 2 x dim
            // pairing matrix restricted to complement; grab dim-2 independent
            // vectors orthogonal to both
            let mut basis: Vec<Vec<bool>> = Vec::new();
            for v in space.all_vectors().skip(1) {
                if space.pairing(&x, &v) || space.pairing(&y, &v) {
                    continue;
                }
                let mut trial = basis.clone();
                trial.push(v.clone());
                if f2_rank(trial) == basis.len() + 1 {
                    basis.push(v);
                }
                if basis.len() == space.dim - 2 {
                    break;
                }
            }
            debug_assert_eq!(basis.len(), space.dim - 2);
            let q_new: Vec<bool> = basis.iter().map(|v| space.eval_q(v).unwrap()).collect();
            let b_new: Vec<Vec<bool>> = basis
                .iter()
                .map(|u| basis.iter().map(|v| space.pairing(u, v)).collect())
                .collect();
            space = QuadraticSpace::new(q_new, b_new)?;
        }
    }

    /// Sign of the Gauss sum sum_x (-1)^{q(x)}: positive iff arf = 0.
    pub fn gauss_sum_positive(&self) -> bool {
        let (zeros, ones) = self.value_histogram();
        zeros > ones
    }
}
