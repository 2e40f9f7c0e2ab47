//! Slice cells and their algebra: dimension, the cell-dimension window,
//! restriction, smash products, norm distributivity over wedges, the
//! refinement census of the norm of the C_2 generator wedge, the slice
//! spectral sequence support region, and the gap check.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::bredon::{bredon_homology, slice_cell_model};
use crate::equivariant::Cyclic;
use crate::mackey::MackeyCoeff;

/// `Ind_K^G S^{m rho_K}` (regular) or `S^-1` smash that (irregular).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SliceCell {
    pub group: Cyclic,
    pub k_order: u32,
    pub m: i64,
    pub regular: bool,
}

impl SliceCell {
    pub fn new(group: Cyclic, k_order: u32, m: i64, regular: bool) -> Result<Self, crate::equivariant::GroupError> {
        group.check_subgroup(k_order)?;
        Ok(SliceCell { group, k_order, m, regular })
    }

    /// m|K| in the regular case, m|K| - 1 in the irregular case.
    pub fn dimension(&self) -> i64 {
        self.m * self.k_order as i64 - if self.regular { 0 } else { 1 }
    }

    pub fn isotropic(&self) -> bool {
        self.k_order > 1
    }

    /// The dimension window for the cells of an n-dimensional slice cell:
    /// `floor(n/|G|) <= k <= n` for n >= 0, mirrored for n < 0.
    pub fn cw_range(&self) -> (i64, i64) {
        let n = self.dimension();
        let g = self.group.order() as i64;
        let fl = n.div_euclid(g);
        if n >= 0 {
            (fl, n)
        } else {
            (n, fl)
        }
    }

    /// Restriction to the subgroup of order h: a wedge of H-slice cells by
    /// the double coset formula.
    pub fn restrict(&self, h_order: u32) -> Result<Wedge, crate::equivariant::GroupError> {
        self.group.check_subgroup(h_order)?;
        let sub = Cyclic::new(h_order)?;
        let g = self.group.order() as u64;
        let meet = h_order.gcd(&self.k_order);
        let join = h_order.lcm(&self.k_order);
        let copies = g / join as u64;
        let c = self.m * (self.k_order / meet) as i64;
        let mut w = Wedge::empty(sub);
        w.add(SliceCell { group: sub, k_order: meet, m: c, regular: self.regular }, copies);
        Ok(w)
    }
}

impl fmt::Display for SliceCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = format!("Ind_{}^{} S^({} rho_{})", self.k_order, self.group.order(), self.m, self.k_order);
        if self.regular {
            write!(f, "{}", base)
        } else {
            write!(f, "S^-1 ^ {}", base)
        }
    }
}

/// Finite multiset of slice cells over a fixed group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wedge {
    pub group: Cyclic,
    pub cells: BTreeMap<(u32, i64, bool), u64>,
}

impl Wedge {
    pub fn empty(group: Cyclic) -> Self {
        Wedge { group, cells: BTreeMap::new() }
    }

    pub fn add(&mut self, cell: SliceCell, count: u64) {
        assert_eq!(cell.group, self.group);
        if count > 0 {
            *self.cells.entry((cell.k_order, cell.m, cell.regular)).or_insert(0) += count;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (SliceCell, u64)> + '_ {
        self.cells.iter().map(|((k, m, r), c)| {
            (SliceCell { group: self.group, k_order: *k, m: *m, regular: *r }, *c)
        })
    }

    /// Number of underlying spheres: [G : K] per cell.
    pub fn underlying_sphere_count(&self) -> u64 {
        self.iter().map(|(cell, c)| c * (self.group.order() / cell.k_order) as u64).sum()
    }

    pub fn total_cells(&self) -> u64 {
        self.cells.values().sum()
    }
}

impl fmt::Display for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cells.is_empty() {
            return write!(f, "*");
        }
        let parts: Vec<String> = self.iter().map(|(cell, c)| if c == 1 { format!("{}", cell) } else { format!("{} x {}", c, cell) }).collect();
        write!(f, "{}", parts.join(" v "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceError {
    Irregular,
    GroupMismatch,
    SizeGuard(String),
}

impl fmt::Display for SliceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SliceError::Irregular => write!(f, "smash products of irregular slice cells are not wedges of slice cells"),
            SliceError::GroupMismatch => write!(f, "cells live over different groups"),
            SliceError::SizeGuard(s) => write!(f, "size guard exceeded: {}", s),
        }
    }
}

impl std::error::Error for SliceError {}

/// Smash product of regular slice cells over an abelian group:
/// `[G : HK]` copies of `Ind_{H cap K}^G S^{c rho}` with
/// `c = a[H : H cap K] + b[K : H cap K]`.
pub fn smash(s1: &SliceCell, s2: &SliceCell) -> Result<Wedge, SliceError> {
    if s1.group != s2.group {
        return Err(SliceError::GroupMismatch);
    }
    if !s1.regular || !s2.regular {
        return Err(SliceError::Irregular);
    }
    let g = s1.group.order();
    let h = s1.k_order;
    let k = s2.k_order;
    let meet = h.gcd(&k);
    let join = h.lcm(&k);
    let copies = (g / join) as u64;
    let c = s1.m * (h / meet) as i64 + s2.m * (k / meet) as i64;
    let mut w = Wedge::empty(s1.group);
    w.add(SliceCell { group: s1.group, k_order: meet, m: c, regular: true }, copies);
    Ok(w)
}

/// Brute-force oracle for the smash formula: decompose G/H x G/K into
/// orbits by enumeration and give each orbit with stabilizer L the cell
/// `Ind_L S^{c rho_L}` with `c = (a|H| + b|K|)/|L|` (dimension bookkeeping).
pub fn smash_brute(s1: &SliceCell, s2: &SliceCell) -> Result<Wedge, SliceError> {
    if s1.group != s2.group {
        return Err(SliceError::GroupMismatch);
    }
    if !s1.regular || !s2.regular {
        return Err(SliceError::Irregular);
    }
    let orbits = crate::equivariant::product_orbits_brute(s1.group, s1.k_order, s2.k_order);
    let total_dim = s1.m * s1.k_order as i64 + s2.m * s2.k_order as i64;
    let mut w = Wedge::empty(s1.group);
    for (l, count) in &orbits.orbits {
        assert_eq!(total_dim.rem_euclid(*l as i64), 0, "dimension must split evenly over rho_L");
        let c = total_dim / *l as i64;
        w.add(SliceCell { group: s1.group, k_order: *l, m: c, regular: true }, *count);
    }
    Ok(w)
}

/// Norm distributivity: cells of N_H^G of the wedge over the index set
/// `degrees` of `S^{i rho_H}`, up to dimension dmax. Functions G/H -> indices
/// modulo the translation action, each orbit contributing
/// `Ind_{Stab}^G S^{|f| rho_Stab}`.
pub fn norm_wedge(group: Cyclic, h_order: u32, degrees: &[i64], dmax: i64) -> Result<Wedge, SliceError> {
    group.check_subgroup(h_order).map_err(|_| SliceError::GroupMismatch)?;
    let r = (group.order() / h_order) as usize;
    if degrees.len() > 8 || r > 8 {
        return Err(SliceError::SizeGuard(format!("index set {} cosets {}", degrees.len(), r)));
    }
    let mut w = Wedge::empty(group);
    let mut tuple = vec![0usize; r];
    enumerate_tuples(&mut tuple, 0, degrees.len(), &mut |f| {
        // keep only lexicographically minimal rotations (orbit reps)
        for s in 1..r {
            let rotated: Vec<usize> = (0..r).map(|i| f[(i + s) % r]).collect();
            if rotated.as_slice() < f {
                return;
            }
        }
        let period = (1..=r).find(|p| r % p == 0 && (0..r).all(|i| f[i] == f[(i + p) % r])).unwrap();
        let stab = group.order() / period as u32;
        let weight: i64 = (0..period).map(|i| degrees[f[i]]).sum();
        let dim = weight * stab as i64;
        if dim <= dmax {
            w.add(SliceCell { group, k_order: stab, m: weight, regular: true }, 1);
        }
    });
    Ok(w)
}

fn enumerate_tuples(tuple: &mut Vec<usize>, pos: usize, alphabet: usize, f: &mut impl FnMut(&[usize])) {
    if pos == tuple.len() {
        f(tuple);
        return;
    }
    for v in 0..alphabet {
        tuple[pos] = v;
        enumerate_tuples(tuple, pos + 1, alphabet, f);
    }
}

/// Independent orbit census: partition all tuples into orbits by repeated
/// rotation, with no lex-minimality shortcut.
pub fn norm_wedge_brute(group: Cyclic, h_order: u32, degrees: &[i64], dmax: i64) -> Result<Wedge, SliceError> {
    group.check_subgroup(h_order).map_err(|_| SliceError::GroupMismatch)?;
    let r = (group.order() / h_order) as usize;
    if degrees.len() > 8 || r > 8 {
        return Err(SliceError::SizeGuard("brute enumeration".into()));
    }
    let mut all: Vec<Vec<usize>> = Vec::new();
    let mut tuple = vec![0usize; r];
    enumerate_tuples(&mut tuple, 0, degrees.len(), &mut |f| all.push(f.to_vec()));
    let mut seen = vec![false; all.len()];
    let index: BTreeMap<Vec<usize>, usize> = all.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let mut w = Wedge::empty(group);
    for i in 0..all.len() {
        if seen[i] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut cur = all[i].clone();
        loop {
            let ix = index[&cur];
            if seen[ix] {
                break;
            }
            seen[ix] = true;
            orbit.push(ix);
            cur = (0..r).map(|t| cur[(t + 1) % r]).collect();
        }
        let orbit_len = orbit.len();
        let stab = group.order() / orbit_len as u32;
        let weight: i64 = all[i].iter().map(|v| degrees[*v]).sum::<i64>() / (r / orbit_len) as i64;
        let dim = weight * stab as i64;
        if dim <= dmax {
            w.add(SliceCell { group, k_order: stab, m: weight, regular: true }, 1);
        }
    }
    Ok(w)
}

// ---------------------------------------------------------------------------
// The refinement census of W-hat(n)
// ---------------------------------------------------------------------------

/// Partitions of every weight <= max, as multiplicity-free part lists
/// (sorted descending); index 0 is the empty partition.
fn partitions_up_to(max: u32) -> Vec<(u32, Vec<u32>)> {
    let mut out: Vec<(u32, Vec<u32>)> = vec![(0, vec![])];
    fn rec(out: &mut Vec<(u32, Vec<u32>)>, current: &mut Vec<u32>, remaining: u32, max_part: u32) {
        for part in (1..=max_part.min(remaining)).rev() {
            current.push(part);
            let w: u32 = current.iter().sum();
            out.push((w, current.clone()));
            rec(out, current, remaining - part, part);
            current.pop();
        }
    }
    let mut cur = Vec::new();
    rec(&mut out, &mut cur, max, max);
    out.sort();
    out
}

/// Number of partitions of w (oracle helper).
pub fn partition_count(w: u32) -> u64 {
    partitions_up_to(w).iter().filter(|(weight, _)| *weight == w).count() as u64
}

/// Cells of the multiplicative refinement wedge for 2n = 2^e, up to
/// dimension dmax: monomial tuples on G/C_2 modulo translation, each orbit
/// giving the regular cell `Ind_{Stab}^G S^{|f| rho_Stab}`. Every emitted cell
/// is isotropic (C_2 is in the kernel of the action on G/C_2).
pub fn refinement_census(e: u32, dmax: i64) -> Result<BTreeMap<i64, Wedge>, SliceError> {
    if dmax > 32 {
        return Err(SliceError::SizeGuard(format!("dmax = {} > 32", dmax)));
    }
    let group = Cyclic::new(1 << e).map_err(|_| SliceError::GroupMismatch)?;
    let n = group.half() as usize;
    let wmax = (dmax / 2).max(0) as u32;
    let parts = partitions_up_to(wmax);
    let weights: Vec<u32> = parts.iter().map(|(w, _)| *w).collect();
    let mut census: BTreeMap<i64, Wedge> = BTreeMap::new();
    let mut tuple = vec![0usize; n];
    // enumerate tuples with total weight bounded, keeping lex-min reps
    fn rec(
        tuple: &mut Vec<usize>,
        pos: usize,
        weights: &[u32],
        budget: u32,
        out: &mut dyn FnMut(&[usize]),
    ) {
        if pos == tuple.len() {
            out(tuple);
            return;
        }
        for v in 0..weights.len() {
            if weights[v] > budget {
                continue;
            }
            tuple[pos] = v;
            rec(tuple, pos + 1, weights, budget - weights[v], out);
        }
    }
    let mut visit = |f: &[usize]| {
        let r = f.len();
        for s in 1..r {
            let rotated: Vec<usize> = (0..r).map(|i| f[(i + s) % r]).collect();
            if rotated.as_slice() < f {
                return;
            }
        }
        let period = (1..=r).find(|p| r % p == 0 && (0..r).all(|i| f[i] == f[(i + p) % r])).unwrap();
        let stab = group.order() / period as u32;
        let weight: i64 = (0..period).map(|i| weights[f[i]] as i64).sum();
        let dim = weight * stab as i64;
        if dim > dmax {
            return;
        }
        let cell = SliceCell { group, k_order: stab, m: weight, regular: true };
        debug_assert!(cell.isotropic());
        census.entry(dim).or_insert_with(|| Wedge::empty(group)).add(cell, 1);
    };
    rec(&mut tuple, 0, &weights, wmax, &mut visit);
    Ok(census)
}

/// Generating-function oracle for the census: the symmetric algebra on one
/// free rank-n summand in every even degree 2j has
/// `[x^d] prod_j (1 - x^j)^{-n}` monomials in degree 2d, which must equal the
/// underlying-sphere count of the census at that dimension.
pub fn census_sphere_count_oracle(e: u32, dmax: i64) -> Vec<u64> {
    let n = 1usize << (e - 1);
    let dm = (dmax / 2).max(0) as usize;
    // partition generating function to the n-th power, one factor at a time
    let mut coeffs = vec![0u64; dm + 1];
    coeffs[0] = 1;
    for _ in 0..n {
        // multiply by prod_j (1 - x^j)^{-1} = partition gf
        let mut next = vec![0u64; dm + 1];
        for (d, c) in coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            for w in 0..=(dm - d) {
                next[d + w] += c * partition_count(w as u32);
            }
        }
        coeffs = next;
    }
    coeffs
}

/// Support of the slice spectral sequence of a pure spectrum: the northeast
/// wedge 0 <= s <= (|G|-1)(t-s) and its mirrored southwest counterpart.
pub fn slice_ss_support(g_order: u32, s: i64, t: i64) -> bool {
    let slope = (g_order - 1) as i64;
    let x = t - s;
    if x >= 0 {
        0 <= s && s <= slope * x
    } else {
        slope * x <= s && s <= 0
    }
}

/// One row of the gap check: a twisted cell and the computed groups.
#[derive(Clone, Debug)]
pub struct GapCell {
    pub t: i64,
    pub twist: i64,
    pub cell: SliceCell,
    pub twisted_m: i64,
    pub vanishes: bool,
}

#[derive(Clone, Debug)]
pub struct GapReport {
    pub all_vanish: bool,
    pub cells_checked: usize,
    pub failures: Vec<GapCell>,
}

/// Gap check: for every slice wedge of the refinement census in dimensions
/// <= tmax and every twist by -k l rho_G, the Bredon homology with constant
/// Z coefficients vanishes in degrees jrange. Twisting the cell
/// `Ind_K^G S^{m rho_K}` by `S^{-kl rho_G}` gives `Ind_K^G S^{(m - kl[G:K]) rho_K}`;
/// the twist loop stops once the whole complex sits below the window (deeper
/// twists only push it further down).
pub fn gap_check(e: u32, l: i64, tmax: i64, jrange: (i64, i64)) -> Result<GapReport, SliceError> {
    let census = refinement_census(e, tmax)?;
    let group = Cyclic::new(1 << e).unwrap();
    let coeff = MackeyCoeff::constant_z(group);
    let (jmin, jmax) = jrange;
    let window = (jmin - 1, jmax + 1);
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for (t, wedge) in &census {
        for (cell, _count) in wedge.iter() {
            let index = (group.order() / cell.k_order) as i64;
            let mut k = 0i64;
            loop {
                let m2 = cell.m - k * l * index;
                let model = slice_cell_model(group, cell.k_order, m2, true, Some(window))
                    .map_err(|err| SliceError::SizeGuard(format!("{}", err)))?;
                let h = bredon_homology(&model, &coeff);
                let vanishes = (jmin..=jmax).all(|j| h.get(&j).map(|g| g.is_zero()).unwrap_or(true));
                checked += 1;
                if !vanishes {
                    failures.push(GapCell { t: *t, twist: k, cell, twisted_m: m2, vanishes });
                }
                // stop once the complex cannot meet the window again
                let top_degree = if m2 >= 0 { m2 * cell.k_order as i64 } else { m2 };
                if k > 0 && top_degree < jmin - 1 {
                    break;
                }
                k += 1;
                if k > 64 {
                    return Err(SliceError::SizeGuard("twist loop did not terminate".into()));
                }
            }
        }
    }
    Ok(GapReport { all_vanish: failures.is_empty(), cells_checked: checked, failures })
}
