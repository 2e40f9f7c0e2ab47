//! Sparse integer matrices and Smith normal form.
//!
//! The SNF uses exact integer pivoting with an entry-size-minimizing pivot
//! choice; desk-scale matrices, but intermediate-entry blowup is the failure
//! mode to guard against. A sparse elimination pass over machine integers
//! (checked, with unit pivots preferred) handles the large homology matrices;
//! the residual is finished by a dense BigInt SNF.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Sparse integer matrix; absent entries are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows.min(16) {
            let row: Vec<String> = (0..self.cols.min(16)).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(data: &[Vec<i64>]) -> Self {
        let rows = data.len();
        let cols = data.first().map(|r| r.len()).unwrap_or(0);
        let mut m = Self::zero(rows, cols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }
    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.entries.iter()
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &BigInt) {
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut m = Self::zero(self.cols, self.rows);
        for ((r, c), v) in &self.entries {
            m.set(*c, *r, v.clone());
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        // group other's entries by row for sparse access
        let mut by_row: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); other.rows];
        for ((r, c), v) in &other.entries {
            by_row[*r].push((*c, v));
        }
        for ((r, k), a) in &self.entries {
            for (c, b) in &by_row[*k] {
                out.add_to(*r, *c, &(a * *b));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Determinant by fraction-free (Bareiss) elimination; small dense use.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|r| (0..n).map(|c| self.get(r, c)).collect()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    /// Rank over Q by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut a: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); self.rows];
        for ((r, c), v) in &self.entries {
            a[*r].insert(*c, v.clone());
        }
        let mut rank = 0usize;
        let mut used = vec![false; self.rows];
        for col in 0..self.cols {
            // find pivot row with smallest entry at col
            let mut pick: Option<(usize, BigInt)> = None;
            for r in 0..self.rows {
                if used[r] {
                    continue;
                }
                if let Some(v) = a[r].get(&col) {
                    if pick.as_ref().map(|(_, pv)| v.abs() < pv.abs()).unwrap_or(true) {
                        pick = Some((r, v.clone()));
                    }
                }
            }
            let (pr, pv) = match pick {
                Some(x) => x,
                None => continue,
            };
            used[pr] = true;
            rank += 1;
            let prow = a[pr].clone();
            for r in 0..self.rows {
                if used[r] || !a[r].contains_key(&col) {
                    continue;
                }
                let f = a[r][&col].clone();
                // row_r <- pv*row_r - f*prow  (keeps integrality)
                let mut newrow: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (c, v) in &a[r] {
                    let nv = v * &pv;
                    if !nv.is_zero() {
                        newrow.insert(*c, nv);
                    }
                }
                for (c, v) in &prow {
                    let sub = v * &f;
                    let cur = newrow.remove(c).unwrap_or_else(BigInt::zero);
                    let nv = cur - sub;
                    if !nv.is_zero() {
                        newrow.insert(*c, nv);
                    }
                }
                // reduce common content to limit growth
                if !newrow.is_empty() {
                    let mut g = BigInt::zero();
                    for v in newrow.values() {
                        g = num_integer::Integer::gcd(&g, v);
                    }
                    if g > BigInt::one() {
                        for v in newrow.values_mut() {
                            *v = &*v / &g;
                        }
                    }
                }
                a[r] = newrow;
            }
        }
        rank
    }
}

/// Result of a Smith normal form computation: U * M * V = D with U, V
/// unimodular and D diagonal with d1 | d2 | ... >= 0.
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i)).collect()
    }
}

/// Full SNF with transform tracking. Dense working copy; intended for
/// desk-scale matrices.
pub fn snf(m: &IntMatrix) -> SnfDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|r| (0..cols).map(|c| m.get(r, c)).collect()).collect();
    let mut u: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| (0..rows).map(|c| if r == c { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut v: Vec<Vec<BigInt>> = (0..cols)
        .map(|r| (0..cols).map(|c| if r == c { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();

    let n = rows.min(cols);
    for k in 0..n {
        loop {
            // pivot: nonzero entry in the remaining block of least magnitude
            let mut pivot: Option<(usize, usize, BigInt)> = None;
            for r in k..rows {
                for c in k..cols {
                    if a[r][c].is_zero() {
                        continue;
                    }
                    let mag = a[r][c].abs();
                    if pivot.as_ref().map(|(_, _, pm)| mag < *pm).unwrap_or(true) {
                        pivot = Some((r, c, mag));
                    }
                }
            }
            let (pr, pc, _) = match pivot {
                Some(x) => x,
                None => break, // remaining block zero
            };
            if pr != k {
                a.swap(pr, k);
                u.swap(pr, k);
            }
            if pc != k {
                for row in a.iter_mut() {
                    row.swap(pc, k);
                }
                for row in v.iter_mut() {
                    row.swap(pc, k);
                }
            }
            if a[k][k].is_negative() {
                for c in 0..cols {
                    a[k][c] = -a[k][c].clone();
                }
                for c in 0..rows {
                    u[k][c] = -u[k][c].clone();
                }
            }
            let mut dirty = false;
            // clear column k
            for r in k + 1..rows {
                if a[r][k].is_zero() {
                    continue;
                }
                let q = num_integer::Integer::div_floor(&a[r][k], &a[k][k]);
                if !q.is_zero() {
                    for c in 0..cols {
                        let t = &q * &a[k][c];
                        a[r][c] = &a[r][c] - t;
                    }
                    for c in 0..rows {
                        let t = &q * &u[k][c];
                        u[r][c] = &u[r][c] - t;
                    }
                }
                if !a[r][k].is_zero() {
                    dirty = true;
                }
            }
            // clear row k
            for c in k + 1..cols {
                if a[k][c].is_zero() {
                    continue;
                }
                let q = num_integer::Integer::div_floor(&a[k][c], &a[k][k]);
                if !q.is_zero() {
                    for r in 0..rows {
                        let t = &q * &a[r][k];
                        a[r][c] = &a[r][c] - t;
                    }
                    for r in 0..cols {
                        let t = &q * &v[r][k];
                        v[r][c] = &v[r][c] - t;
                    }
                }
                if !a[k][c].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // enforce divisibility a[k][k] | rest
            let mut fixed = true;
            'outer: for r in k + 1..rows {
                for c in k + 1..cols {
                    if (&a[r][c] % &a[k][k]).is_zero() {
                        continue;
                    }
                    // add row r to row k to expose a remainder, then reloop
                    for cc in 0..cols {
                        let t = a[r][cc].clone();
                        a[k][cc] = &a[k][cc] + t;
                    }
                    for cc in 0..rows {
                        let t = u[r][cc].clone();
                        u[k][cc] = &u[k][cc] + t;
                    }
                    fixed = false;
                    break 'outer;
                }
            }
            if fixed {
                break;
            }
        }
    }

    let mut d = IntMatrix::zero(rows, cols);
    for i in 0..n {
        d.set(i, i, a[i][i].clone());
    }
    let mut um = IntMatrix::zero(rows, rows);
    for (r, row) in u.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            if !x.is_zero() {
                um.set(r, c, x.clone());
            }
        }
    }
    // v accumulated as column operations on identity: columns transformed in
    // step; stored row-major above with row swaps interpreted as col swaps.
    let mut vm = IntMatrix::zero(cols, cols);
    for (r, row) in v.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            if !x.is_zero() {
                vm.set(r, c, x.clone());
            }
        }
    }
    SnfDecomposition { u: um, d, v: vm }
}

/// Invariant factors (diagonal of the SNF, without transforms), computed by a
/// sparse elimination pass followed by dense SNF on the residual block.
/// Returned with the positive entries only, divisibility-ordered, including
/// ones; the count equals the rank.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    // Sparse phase over i64 with overflow checks; eliminate +-1 pivots.
    struct Sparse {
        rows: Vec<BTreeMap<usize, i64>>,
        cols: Vec<BTreeMap<usize, i64>>, // col -> set of rows (value mirrored)
    }
    impl Sparse {
        fn set(&mut self, r: usize, c: usize, v: i64) {
            if v == 0 {
                self.rows[r].remove(&c);
                self.cols[c].remove(&r);
            } else {
                self.rows[r].insert(c, v);
                self.cols[c].insert(r, v);
            }
        }
        fn get(&self, r: usize, c: usize) -> i64 {
            *self.rows[r].get(&c).unwrap_or(&0)
        }
    }

    let mut sp = Sparse { rows: vec![BTreeMap::new(); m.rows()], cols: vec![BTreeMap::new(); m.cols()] };
    let mut overflowed = false;
    for ((r, c), v) in m.iter() {
        match i64::try_from(v) {
            Ok(x) => sp.set(*r, *c, x),
            Err(_) => {
                overflowed = true;
                break;
            }
        }
    }

    let mut ones = 0usize;
    if !overflowed {
        'elim: loop {
            // choose a +-1 pivot with minimal fill estimate
            let mut best: Option<(usize, usize, usize)> = None;
            for (r, row) in sp.rows.iter().enumerate() {
                for (c, v) in row {
                    if v.abs() != 1 {
                        continue;
                    }
                    let fill = (row.len() - 1) * (sp.cols[*c].len() - 1);
                    if best.map(|(_, _, bf)| fill < bf).unwrap_or(true) {
                        best = Some((r, *c, fill));
                        if fill == 0 {
                            break;
                        }
                    }
                }
                if matches!(best, Some((_, _, 0))) {
                    break;
                }
            }
            let (pr, pc, _) = match best {
                Some(x) => x,
                None => break 'elim,
            };
            let pv = sp.get(pr, pc); // +-1
            let prow: Vec<(usize, i64)> = sp.rows[pr].iter().map(|(c, v)| (*c, *v)).collect();
            let pcol: Vec<(usize, i64)> = sp.cols[pc].iter().map(|(r, v)| (*r, *v)).collect();
            for (r, rv) in &pcol {
                if *r == pr {
                    continue;
                }
                // row_r <- row_r - (rv/pv) * row_pr
                let f = rv * pv; // pv in {1,-1}: rv/pv = rv*pv
                for (c, v) in &prow {
                    if *c == pc {
                        continue;
                    }
                    let cur = sp.get(*r, *c);
                    let delta = match f.checked_mul(*v) {
                        Some(x) => x,
                        None => {
                            overflowed = true;
                            break 'elim;
                        }
                    };
                    let nv = match cur.checked_sub(delta) {
                        Some(x) => x,
                        None => {
                            overflowed = true;
                            break 'elim;
                        }
                    };
                    sp.set(*r, *c, nv);
                }
                sp.set(*r, pc, 0);
            }
            // clear pivot row and column
            for (c, _) in &prow {
                sp.set(pr, *c, 0);
            }
            ones += 1;
        }
    }

    if overflowed {
        // rare fallback: dense SNF of the whole matrix
        let d = snf(m).diagonal();
        return d.into_iter().filter(|x| !x.is_zero()).collect();
    }

    // residual block: gather remaining nonzero rows/cols into a small dense SNF
    let mut live_rows: Vec<usize> = Vec::new();
    let mut live_cols: Vec<usize> = Vec::new();
    let mut row_ix = BTreeMap::new();
    let mut col_ix = BTreeMap::new();
    for (r, row) in sp.rows.iter().enumerate() {
        if !row.is_empty() {
            row_ix.insert(r, live_rows.len());
            live_rows.push(r);
        }
    }
    for (c, col) in sp.cols.iter().enumerate() {
        if !col.is_empty() {
            col_ix.insert(c, live_cols.len());
            live_cols.push(c);
        }
    }
    let mut rem = IntMatrix::zero(live_rows.len(), live_cols.len());
    for r in &live_rows {
        for (c, v) in &sp.rows[*r] {
            rem.set(row_ix[r], col_ix[c], BigInt::from(*v));
        }
    }
    let mut factors: Vec<BigInt> = vec![BigInt::one(); ones];
    for x in snf(&rem).diagonal() {
        if !x.is_zero() {
            factors.push(x);
        }
    }
    // unit pivots eliminated first are 1s and divide everything; residual
    // factors are already divisibility-ordered by snf
    factors
}

/// Columns spanning the integer kernel of m.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let s = snf(m);
    let rank = s.diagonal().iter().filter(|x| !x.is_zero()).count();
    let cols = m.cols();
    let mut out = IntMatrix::zero(cols, cols - rank);
    for j in rank..cols {
        for r in 0..cols {
            out.set(r, j - rank, s.v.get(r, j));
        }
    }
    out
}

/// Solve A X = B over the integers; None if some column has no solution.
pub fn solve_columns(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(a.rows(), b.rows());
    let s = snf(a);
    let ub = s.u.mul(b);
    let n = a.rows().min(a.cols());
    let diag = s.diagonal();
    let mut y = IntMatrix::zero(a.cols(), b.cols());
    for c in 0..b.cols() {
        for r in 0..a.rows() {
            let v = ub.get(r, c);
            if r < n && !diag[r].is_zero() {
                if !(&v % &diag[r]).is_zero() {
                    return None;
                }
                y.set(r, c, v / &diag[r]);
            } else if !v.is_zero() {
                return None;
            }
        }
    }
    Some(s.v.mul(&y))
}

/// A basis (independent columns) for the lattice spanned by the columns.
pub fn column_basis(m: &IntMatrix) -> IntMatrix {
    // column-style Hermite reduction
    let rows = m.rows();
    let mut cols: Vec<Vec<BigInt>> = (0..m.cols()).map(|c| (0..rows).map(|r| m.get(r, c)).collect()).collect();
    let mut pivot_col = 0usize;
    for r in 0..rows {
        loop {
            // find columns with nonzero entry at row r beyond pivot_col
            let nz: Vec<usize> = (pivot_col..cols.len()).filter(|c| !cols[*c][r].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            if nz.len() == 1 {
                cols.swap(pivot_col, nz[0]);
                pivot_col += 1;
                break;
            }
            // reduce the two smallest against each other
            let mut picked = nz.clone();
            picked.sort_by_key(|c| cols[*c][r].abs());
            let (ca, cb) = (picked[0], picked[1]);
            let q = num_integer::Integer::div_floor(&cols[cb][r], &cols[ca][r]);
            for i in 0..rows {
                let t = &q * &cols[ca][i];
                cols[cb][i] = &cols[cb][i] - t;
            }
        }
    }
    let keep: Vec<Vec<BigInt>> = cols.into_iter().filter(|c| c.iter().any(|x| !x.is_zero())).collect();
    let mut out = IntMatrix::zero(rows, keep.len());
    for (j, col) in keep.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            if !v.is_zero() {
                out.set(i, j, v.clone());
            }
        }
    }
    out
}

/// The lattice {x : f x in L} where L is spanned by the columns of
/// `lattice`; returned as spanning columns.
pub fn preimage_lattice(f: &IntMatrix, lattice: &IntMatrix) -> IntMatrix {
    assert_eq!(f.rows(), lattice.rows());
    // kernel of [f | -lattice], x-part
    let mut aug = IntMatrix::zero(f.rows(), f.cols() + lattice.cols());
    for ((r, c), v) in f.iter() {
        aug.set(*r, *c, v.clone());
    }
    for ((r, c), v) in lattice.iter() {
        aug.set(*r, f.cols() + c, -v.clone());
    }
    let k = kernel_basis(&aug);
    let mut out = IntMatrix::zero(f.cols(), k.cols());
    for ((r, c), v) in k.iter() {
        if *r < f.cols() {
            out.set(*r, *c, v.clone());
        }
    }
    out
}

/// Invariant factors of the quotient N / D for lattices given by spanning
/// columns, D contained in N.
pub fn lattice_quotient(num: &IntMatrix, den: &IntMatrix) -> crate::chain::AbGroup {
    use num_traits::One;
    let basis = column_basis(num);
    if basis.cols() == 0 {
        return crate::chain::AbGroup::zero();
    }
    let x = solve_columns(&basis, den).expect("denominator lattice not contained in numerator");
    let factors = invariant_factors(&x);
    crate::chain::AbGroup {
        betti: basis.cols() - factors.len(),
        torsion: factors.into_iter().filter(|t| *t > BigInt::one()).collect(),
    }
}
