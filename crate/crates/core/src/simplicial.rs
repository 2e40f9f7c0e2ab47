//! Independent verification path for Bredon homology of representation
//! spheres: S^V is built as the suspension of an iterated simplicial join of
//! unit spheres (two fixed points per trivial summand, a swapped point pair
//! per sign summand, a polygon per rotation summand), and the equivariant
//! simplicial chain complex is converted to the same permutation-module
//! format as the algebraic chain model.

use std::collections::BTreeMap;

use crate::equivariant::Cyclic;
use crate::eqchain::{EqComplex, GrpMatrix, GrpRing};
use crate::reps::RealRep;

/// A finite G-simplicial complex with simplicial gamma-action.
#[derive(Clone, Debug)]
pub struct EqSimplicial {
    pub group: Cyclic,
    pub nverts: usize,
    pub action: Vec<usize>,
    /// simplices by dimension, each a sorted vertex list
    pub simplices: Vec<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplicialError {
    TooLarge { dim: u32, max: u32 },
    TwistedOrbit,
}

impl std::fmt::Display for SimplicialError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SimplicialError::TooLarge { dim, max } => write!(f, "dim V = {} exceeds the size guard {}", dim, max),
            SimplicialError::TwistedOrbit => write!(f, "a stabilizer acts nontrivially on a simplex"),
        }
    }
}

impl std::error::Error for SimplicialError {}

/// One join factor: vertices with a gamma-permutation and facet list.
struct Piece {
    nverts: usize,
    action: Vec<usize>,
    /// simplices of the piece (vertices and possibly edges), local indices
    simplices: Vec<Vec<u32>>,
}

fn eps_piece() -> Piece {
    Piece { nverts: 2, action: vec![0, 1], simplices: vec![vec![0], vec![1]] }
}

fn sigma_piece(group: Cyclic) -> Piece {
    // two antipodal points swapped when the generator maps to -1
    let action = if group.order() == 1 { vec![0, 1] } else { vec![1, 0] };
    Piece { nverts: 2, action, simplices: vec![vec![0], vec![1]] }
}

fn lambda_piece(group: Cyclic, k: u32) -> Piece {
    let g = group.order();
    let ker = num_integer::Integer::gcd(&g, &k);
    let m = g / ker; // polygon size = rotation order, always >= 3 here
    let shift = (k / ker) % m;
    let mut simplices: Vec<Vec<u32>> = (0..m).map(|i| vec![i]).collect();
    for i in 0..m {
        let mut e = vec![i, (i + 1) % m];
        e.sort_unstable();
        simplices.push(e);
    }
    simplices.sort();
    simplices.dedup();
    Piece { nverts: m as usize, action: (0..m).map(|i| ((i + shift) % m) as usize).collect(), simplices }
}

/// The simplicial model of S^V as the join of the unit-sphere pieces of V
/// and one suspension pair. Guarded to dim V <= max_dim.
pub fn sphere_simplicial(v: &RealRep, max_dim: u32) -> Result<EqSimplicial, SimplicialError> {
    if v.dim() > max_dim {
        return Err(SimplicialError::TooLarge { dim: v.dim(), max: max_dim });
    }
    let mut pieces: Vec<Piece> = Vec::new();
    for _ in 0..v.a {
        pieces.push(eps_piece());
    }
    for _ in 0..v.b {
        pieces.push(sigma_piece(v.group));
    }
    for (i, ck) in v.c.iter().enumerate() {
        for _ in 0..*ck {
            pieces.push(lambda_piece(v.group, (i + 1) as u32));
        }
    }
    // suspension: S^V = S(V + eps) as a join
    pieces.push(eps_piece());

    let mut offsets = Vec::new();
    let mut nverts = 0usize;
    for p in &pieces {
        offsets.push(nverts as u32);
        nverts += p.nverts;
    }
    let mut action = vec![0usize; nverts];
    for (p, off) in pieces.iter().zip(&offsets) {
        for (i, img) in p.action.iter().enumerate() {
            action[*off as usize + i] = *off as usize + img;
        }
    }
    // join: choose at most one simplex per piece, at least one overall
    let mut simplices: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut partial: Vec<Vec<u32>> = vec![vec![]];
    for (p, off) in pieces.iter().zip(&offsets) {
        let mut next = Vec::new();
        for existing in &partial {
            next.push(existing.clone());
            for s in &p.simplices {
                let mut ns = existing.clone();
                ns.extend(s.iter().map(|x| x + off));
                next.push(ns);
            }
        }
        partial = next;
    }
    for s in partial {
        if s.is_empty() {
            continue;
        }
        let d = s.len() - 1;
        while simplices.len() <= d {
            simplices.push(Vec::new());
        }
        simplices[d].push(s);
    }
    for level in &mut simplices {
        level.sort();
        level.dedup();
    }
    Ok(EqSimplicial { group: v.group, nverts, action, simplices })
}

struct OrbitInfo {
    /// per dimension: list of orbit representatives (indices into simplices)
    reps: Vec<Vec<usize>>,
    /// per dimension: for each simplex, (rep position, shift t, sign)
    assign: Vec<Vec<(usize, i64, i64)>>,
    /// per dimension: stabilizer order of each representative
    stab: Vec<Vec<u32>>,
}

impl EqSimplicial {
    fn apply_gamma(&self, s: &[u32]) -> (Vec<u32>, i64) {
        let mut img: Vec<u32> = s.iter().map(|v| self.action[*v as usize] as u32).collect();
        // sign of the sorting permutation: count inversions
        let mut sign = 1i64;
        for i in 0..img.len() {
            for j in i + 1..img.len() {
                if img[i] > img[j] {
                    sign = -sign;
                }
            }
        }
        img.sort_unstable();
        (img, sign)
    }

    fn orbits(&self) -> Result<OrbitInfo, SimplicialError> {
        let g = self.group.order();
        let mut reps = Vec::new();
        let mut assign = Vec::new();
        let mut stab = Vec::new();
        for level in &self.simplices {
            let index: BTreeMap<&[u32], usize> = level.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
            let mut rep_list: Vec<usize> = Vec::new();
            let mut asg: Vec<Option<(usize, i64, i64)>> = vec![None; level.len()];
            let mut st = Vec::new();
            for (i, s) in level.iter().enumerate() {
                if asg[i].is_some() {
                    continue;
                }
                // walk the orbit of s (s is lex-minimal among unassigned by
                // sorted iteration order, making reps deterministic)
                let rep_pos = rep_list.len();
                rep_list.push(i);
                let mut cur = s.clone();
                let mut sign = 1i64;
                let mut t = 0i64;
                loop {
                    let pos = index[cur.as_slice()];
                    if asg[pos].is_none() {
                        asg[pos] = Some((rep_pos, t, sign));
                    }
                    let (next, ds) = self.apply_gamma(&cur);
                    sign *= ds;
                    t += 1;
                    if next == *s {
                        break;
                    }
                    cur = next;
                }
                // orbit length = t; stabilizer order g / t
                let orbit_len = t as u32;
                let stab_order = g / orbit_len;
                // stabilizer must act trivially on the representative
                let mut check = s.clone();
                let mut closure_sign = 1i64;
                for _ in 0..orbit_len {
                    let (next, ds) = self.apply_gamma(&check);
                    closure_sign *= ds;
                    check = next;
                }
                if check != *s || closure_sign != 1 {
                    return Err(SimplicialError::TwistedOrbit);
                }
                if stab_order > 1 {
                    // gamma^{orbit_len} must fix each vertex of s
                    let mut v = s.clone();
                    for _ in 0..orbit_len {
                        v = v.iter().map(|x| self.action[*x as usize] as u32).collect();
                    }
                    let mut sorted = v.clone();
                    sorted.sort_unstable();
                    if sorted != *s || v != *s {
                        return Err(SimplicialError::TwistedOrbit);
                    }
                }
                st.push(stab_order);
            }
            reps.push(rep_list);
            assign.push(asg.into_iter().map(|x| x.unwrap()).collect());
            stab.push(st);
        }
        Ok(OrbitInfo { reps, assign, stab })
    }

    /// The reduced equivariant chain complex: orbit summands per dimension
    /// plus an augmentation cell in degree -1.
    pub fn chain_complex(&self) -> Result<EqComplex, SimplicialError> {
        let g = self.group.order();
        let info = self.orbits()?;
        let mut c = EqComplex::empty(self.group);
        c.summands.insert(-1, vec![g]);
        for (d, st) in info.stab.iter().enumerate() {
            c.summands.insert(d as i64, st.clone());
        }
        // augmentation
        let mut aug = GrpMatrix::default();
        for (pos, _) in info.reps.first().map(|v| v.as_slice()).unwrap_or(&[]).iter().enumerate() {
            aug.add_entry(0, pos, GrpRing::unit(g));
        }
        c.diffs.insert(0, aug);
        // boundaries
        for d in 1..self.simplices.len() {
            let mut mat = GrpMatrix::default();
            for (pos, rep_ix) in info.reps[d].iter().enumerate() {
                let s = &self.simplices[d][*rep_ix];
                for drop in 0..s.len() {
                    let mut face: Vec<u32> = s.clone();
                    face.remove(drop);
                    let face_ix = self.simplices[d - 1].binary_search(&face).expect("face present");
                    let (tpos, t, sgn) = info.assign[d - 1][face_ix];
                    let coeff = if drop % 2 == 0 { 1 } else { -1 } * sgn;
                    // face = sign * gamma^t(rep_face): gamma^t applied to the
                    // rep gives the face with accumulated sign, so the chain
                    // face equals sgn * gamma^t . rep
                    mat.add_entry(tpos, pos, GrpRing::gamma_pow(g, t).scaled_translate(coeff, 0));
                }
            }
            c.diffs.insert(d as i64, mat);
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bredon::{bredon_cohomology, bredon_homology, sphere_model};
    use crate::chain::AbGroup;
    use crate::mackey::MackeyCoeff;

    fn rep(order: u32, a: u32, b: u32, c: Vec<u32>) -> RealRep {
        RealRep::new(Cyclic::new(order).unwrap(), a, b, c).unwrap()
    }

    #[test]
    fn sigma_model_is_circle_with_swap() {
        let v = rep(2, 0, 1, vec![]);
        let s = sphere_simplicial(&v, 6).unwrap();
        let c = s.chain_complex().unwrap();
        c.check().unwrap();
        let u = c.expand_underlying().unwrap();
        assert_eq!(u.homology(1), AbGroup::free(1));
        assert!(u.homology(0).is_zero());
        assert!(u.homology(-1).is_zero());
    }

    #[test]
    fn zero_rep_is_s0() {
        let v = rep(4, 0, 0, vec![0]);
        let s = sphere_simplicial(&v, 6).unwrap();
        let c = s.chain_complex().unwrap();
        let h = bredon_homology(&c, &MackeyCoeff::constant_z(v.group));
        assert_eq!(h.len(), 1);
        assert_eq!(h[&0], AbGroup::free(1));
    }

    #[test]
    fn oracle_matches_chain_model_lambda1_c4() {
        let v = rep(4, 0, 0, vec![1]);
        let s = sphere_simplicial(&v, 6).unwrap().chain_complex().unwrap();
        s.check().unwrap();
        let m = sphere_model(&v).unwrap();
        for coeff in [MackeyCoeff::constant_z(v.group), MackeyCoeff::burnside(v.group)] {
            assert_eq!(bredon_homology(&s, &coeff), bredon_homology(&m, &coeff));
            assert_eq!(bredon_cohomology(&s, &coeff), bredon_cohomology(&m, &coeff));
        }
    }

    #[test]
    fn oracle_matches_chain_model_rho4() {
        let v = RealRep::regular(Cyclic::new(4).unwrap());
        let s = sphere_simplicial(&v, 6).unwrap().chain_complex().unwrap();
        let m = sphere_model(&v).unwrap();
        for coeff in [MackeyCoeff::constant_z(v.group), MackeyCoeff::burnside(v.group)] {
            assert_eq!(bredon_homology(&s, &coeff), bredon_homology(&m, &coeff), "{:?}", coeff.kind);
        }
    }

    #[test]
    fn size_guard() {
        let v = rep(2, 7, 0, vec![]);
        assert!(matches!(sphere_simplicial(&v, 6), Err(SimplicialError::TooLarge { .. })));
    }
}
