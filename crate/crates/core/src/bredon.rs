//! Equivariant cell structures on representation spheres, their reduced
//! chain models, Bredon (co)homology with Mackey coefficients, duality for
//! negative spheres, homology induction, and the Cell Lemma checker.
//!
//! The chain model is a tensor product of atomic complexes, one per
//! irreducible summand; cell counts need not match the cell census (which is
//! exposed separately), but the chain homotopy type is pinned by the
//! invariant suite: underlying sphere, fixed-point spheres, duality, orbit
//! complexes, and the independent simplicial oracle.

use std::collections::BTreeMap;

use crate::chain::AbGroup;
use crate::equivariant::Cyclic;
use crate::eqchain::{EqComplex, EqError, GrpMatrix, GrpRing};
use crate::mackey::MackeyCoeff;
use crate::reps::RealRep;

/// Cell census of the filtration on S^V: per dimension, (isotropy subgroup
/// order, orbit count). Includes the base point as a fixed 0-cell, except
/// for V = 0 where a single fixed 0-cell is reported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellCensus {
    pub entries: BTreeMap<u32, (u32, u32)>,
}

/// Census of the equivariant filtration of S^V. Lambda summands are ordered
/// so the kernels are non-decreasing (rotation orders non-increasing); the
/// isotropy of a lambda-cell is the kernel of its rotation action.
pub fn cell_census(v: &RealRep) -> CellCensus {
    let g = v.group.order();
    let mut entries: BTreeMap<u32, (u32, u32)> = BTreeMap::new();
    let mut add = |dim: u32, iso: u32, count: u32| {
        if count == 0 {
            return;
        }
        let e = entries.entry(dim).or_insert((iso, 0));
        debug_assert_eq!(e.0, iso, "distinct isotropy at one dimension");
        e.1 += count;
    };
    if v.dim() == 0 {
        add(0, g, 1);
        return CellCensus { entries };
    }
    add(0, g, 1); // base point
    add(v.a, g, 1);
    for i in 1..=v.b {
        add(v.a + i, g / 2, 1);
    }
    // lambda cells, rotation orders non-increasing
    let mut kernels: Vec<u32> = Vec::new();
    for (i, ck) in v.c.iter().enumerate() {
        let k = (i + 1) as u32;
        for _ in 0..*ck {
            kernels.push(RealRep::lambda_kernel_order(v.group, k));
        }
    }
    kernels.sort();
    let base = v.a + v.b;
    for (j, ker) in kernels.iter().enumerate() {
        let dim = base + 2 * (j as u32 + 1);
        add(dim - 1, *ker, 1);
        add(dim, *ker, 1);
    }
    CellCensus { entries }
}

/// Reduced atomic complex of S^eps: Z in degree 1.
fn eps_complex(group: Cyclic) -> EqComplex {
    let mut c = EqComplex::empty(group);
    c.summands.insert(1, vec![group.order()]);
    c
}

/// Reduced atomic complex of S^sigma: Z<c> in degree 0, Z[G/C_n]<e> in
/// degree 1, de = c.
fn sigma_complex(group: Cyclic) -> EqComplex {
    let mut c = EqComplex::empty(group);
    c.summands.insert(0, vec![group.order()]);
    c.summands.insert(1, vec![group.half()]);
    let mut m = GrpMatrix::default();
    m.add_entry(0, 0, GrpRing::unit(group.order()));
    c.diffs.insert(1, m);
    c
}

/// Reduced atomic complex of S^{lambda(k)}: Z<c> in degree 0 and
/// Z[G/K]<e>, Z[G/K]<f> in degrees 1, 2 with df = (gamma - 1)e, de = c,
/// where K is the kernel of the rotation.
fn lambda_complex(group: Cyclic, k: u32) -> EqComplex {
    let ker = RealRep::lambda_kernel_order(group, k);
    let g = group.order();
    let mut c = EqComplex::empty(group);
    c.summands.insert(0, vec![g]);
    c.summands.insert(1, vec![ker]);
    c.summands.insert(2, vec![ker]);
    let mut d1 = GrpMatrix::default();
    d1.add_entry(0, 0, GrpRing::unit(g));
    c.diffs.insert(1, d1);
    let mut d2 = GrpMatrix::default();
    d2.add_entry(0, 0, GrpRing::gamma_pow(g, 1).add(&GrpRing::unit(g).neg()));
    c.diffs.insert(2, d2);
    c
}

fn atoms(v: &RealRep) -> Vec<EqComplex> {
    let mut out = Vec::new();
    for _ in 0..v.a {
        out.push(eps_complex(v.group));
    }
    for _ in 0..v.b {
        out.push(sigma_complex(v.group));
    }
    for (i, ck) in v.c.iter().enumerate() {
        for _ in 0..*ck {
            out.push(lambda_complex(v.group, (i + 1) as u32));
        }
    }
    out
}

fn tensor_all(
    group: Cyclic,
    factors: &[EqComplex],
    window: Option<(i64, i64)>,
) -> Result<EqComplex, EqError> {
    // suffix degree ranges for effective windows
    let ranges: Vec<(i64, i64)> = factors.iter().map(|f| f.degree_range().unwrap_or((0, 0))).collect();
    let mut suffix_min = vec![0i64; factors.len() + 1];
    let mut suffix_max = vec![0i64; factors.len() + 1];
    for i in (0..factors.len()).rev() {
        suffix_min[i] = suffix_min[i + 1] + ranges[i].0;
        suffix_max[i] = suffix_max[i + 1] + ranges[i].1;
    }
    let mut acc = EqComplex::point(group);
    for (i, f) in factors.iter().enumerate() {
        let w = window.map(|(lo, hi)| (lo - suffix_max[i + 1], hi - suffix_min[i + 1]));
        acc = acc.tensor(f, w)?;
    }
    Ok(acc)
}

/// Reduced chain model of S^{V - W} smashed with S^shift, where V, W are
/// genuine representations of the same group and shift is 0 or -1. With a
/// window (lo, hi), chain groups outside [lo, hi] are pruned and homology is
/// valid strictly inside.
pub fn chain_model(
    pos: &RealRep,
    neg: Option<&RealRep>,
    shift: i64,
    window: Option<(i64, i64)>,
) -> Result<EqComplex, EqError> {
    let group = pos.group;
    let w_inner = window.map(|(lo, hi)| (lo - shift, hi - shift));
    let pos_atoms = atoms(pos);
    let pos_range: (i64, i64) = pos_atoms
        .iter()
        .map(|f| f.degree_range().unwrap_or((0, 0)))
        .fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let mut factors = pos_atoms;
    if let Some(negv) = neg {
        if negv.group != group {
            return Err(EqError::GroupMismatch);
        }
        if negv.dim() > 0 {
            // P = model of the positive rep W, built against the reflected
            // window, then dualized
            let wp = w_inner.map(|(lo, hi)| (-(hi - pos_range.0), -(lo - pos_range.1)));
            let p = tensor_all(group, &atoms(negv), wp)?;
            factors.push(p.dual());
        }
    }
    let c = tensor_all(group, &factors, w_inner)?;
    Ok(c.shift(shift))
}

/// Convenience: the chain model of a genuine representation sphere.
pub fn sphere_model(v: &RealRep) -> Result<EqComplex, EqError> {
    chain_model(v, None, 0, None)
}

/// Bredon homology groups H^G_*(C; M), all nonzero degrees.
pub fn bredon_homology(c: &EqComplex, coeff: &MackeyCoeff) -> BTreeMap<i64, AbGroup> {
    c.mackey_chain(coeff).expect("coefficient chain complex").homology_all()
}

/// Bredon cohomology groups H_G^*(C; M), keyed by cohomological degree.
pub fn bredon_cohomology(c: &EqComplex, coeff: &MackeyCoeff) -> BTreeMap<i64, AbGroup> {
    let co = c.mackey_cochain(coeff).expect("coefficient cochain complex");
    co.homology_all().into_iter().map(|(k, v)| (-k, v)).collect()
}

/// The chain model of the slice cell Ind_K^G S^{m rho_K} (regular) or its
/// desuspension (irregular), over the subgroup of order k_order.
pub fn slice_cell_model(
    group: Cyclic,
    k_order: u32,
    m: i64,
    regular: bool,
    window: Option<(i64, i64)>,
) -> Result<EqComplex, EqError> {
    group.check_subgroup(k_order).map_err(|_| EqError::GroupMismatch)?;
    let sub = Cyclic::new(k_order).map_err(|_| EqError::GroupMismatch)?;
    let shift = if regular { 0 } else { -1 };
    let rep = RealRep::regular(sub).scale(m.unsigned_abs() as u32);
    let over_k = if m >= 0 {
        chain_model(&rep, None, shift, window)?
    } else {
        chain_model(&RealRep::zero(sub), Some(&rep), shift, window)?
    };
    over_k.induce(group)
}

/// Cell Lemma instance: H^G_j(Ind_K^G S^{m rho_K}; constant Z) = 0 for
/// -3 <= j <= -1. Returns the computed groups so callers can assert
/// vanishing; K must be nontrivial for the lemma to apply.
pub fn cell_lemma_groups(group: Cyclic, k_order: u32, m: i64) -> Result<BTreeMap<i64, AbGroup>, EqError> {
    let c = slice_cell_model(group, k_order, m, true, Some((-4, 0)))?;
    let coeff = MackeyCoeff::constant_z(group);
    let h = bredon_homology(&c, &coeff);
    Ok((-3..=-1).map(|j| (j, h.get(&j).cloned().unwrap_or_else(AbGroup::zero))).collect())
}

/// True iff all of H_{-3}, H_{-2}, H_{-1} vanish for Ind_K^G S^{m rho_K}.
pub fn cell_lemma_check(group: Cyclic, k_order: u32, m: i64) -> Result<bool, EqError> {
    Ok(cell_lemma_groups(group, k_order, m)?.values().all(|h| h.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(order: u32, a: u32, b: u32, c: Vec<u32>) -> RealRep {
        RealRep::new(Cyclic::new(order).unwrap(), a, b, c).unwrap()
    }

    #[test]
    fn census_rho8() {
        // V = rho_8: a=1, b=1, lambda orders 8,8,4 -> kernels 1,1,2
        let v = RealRep::regular(Cyclic::new(8).unwrap());
        let c = cell_census(&v);
        let e: Vec<(u32, (u32, u32))> = c.entries.into_iter().collect();
        assert_eq!(
            e,
            vec![
                (0, (8, 1)),
                (1, (8, 1)),
                (2, (4, 1)),
                (3, (1, 1)),
                (4, (1, 1)),
                (5, (1, 1)),
                (6, (1, 1)),
                (7, (2, 1)),
                (8, (2, 1)),
            ]
        );
    }

    #[test]
    fn census_sigma_and_zero() {
        let v = rep(2, 0, 1, vec![]);
        let c = cell_census(&v);
        // dim 0 fixed (base point + cone point), dim 1 free
        assert_eq!(c.entries[&0], (2, 2));
        assert_eq!(c.entries[&1], (1, 1));
        let z = rep(4, 0, 0, vec![0]);
        let c = cell_census(&z);
        assert_eq!(c.entries.len(), 1);
        assert_eq!(c.entries[&0], (4, 1));
    }

    #[test]
    fn lambda_model_is_a_2_sphere() {
        // V = lambda(1) over C4: underlying reduced homology Z in degree 2
        let v = rep(4, 0, 0, vec![1]);
        let c = sphere_model(&v).unwrap();
        c.check().unwrap();
        let u = c.expand_underlying().unwrap();
        assert_eq!(u.homology(2).betti, 1);
        assert!(u.homology(1).is_zero());
        assert!(u.homology(0).is_zero());
    }

    #[test]
    fn sphere_and_fixed_sphere_invariants_small() {
        // every V with dim <= 4 over C4: underlying sphere of dim V and
        // H-fixed subcomplex a sphere of dim V^H
        let g = Cyclic::new(4).unwrap();
        for a in 0..=2u32 {
            for b in 0..=2u32 {
                for c1 in 0..=1u32 {
                    let v = rep(4, a, b, vec![c1]);
                    if v.dim() > 4 {
                        continue;
                    }
                    let c = sphere_model(&v).unwrap();
                    c.check().unwrap();
                    let u = c.expand_underlying().unwrap();
                    for k in -1..=(v.dim() as i64 + 1) {
                        let h = u.homology(k);
                        if k == v.dim() as i64 {
                            assert_eq!(h, AbGroup::free(1), "{} at {}", v, k);
                        } else {
                            assert!(h.is_zero(), "{} at {}: {}", v, k, h);
                        }
                    }
                    for h in g.divisors() {
                        let f = c.fixed_underlying(h).unwrap();
                        let dfix = v.fixed_dim(h) as i64;
                        for k in -1..=(v.dim() as i64 + 1) {
                            let grp = f.homology(k);
                            if k == dfix {
                                assert_eq!(grp, AbGroup::free(1), "{} fixed C{} at {}", v, h, k);
                            } else {
                                assert!(grp.is_zero(), "{} fixed C{} at {}: {}", v, h, k, grp);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn point_model_constant_z() {
        let g = Cyclic::new(8).unwrap();
        let c = EqComplex::point(g);
        let h = bredon_homology(&c, &MackeyCoeff::constant_z(g));
        assert_eq!(h.len(), 1);
        assert_eq!(h[&0], AbGroup::free(1));
        // Burnside coefficients: M(pt) = A(G) = Z^4
        let hb = bredon_homology(&c, &MackeyCoeff::burnside(g));
        assert_eq!(hb[&0], AbGroup::free(4));
    }

    #[test]
    fn rho2_cohomology_vanishes_in_1_to_3() {
        // cohomology of S^{rho_2} over C2 with constant Z in degrees 1..3 = 0
        let v = rep(2, 1, 1, vec![]);
        let c = sphere_model(&v).unwrap();
        let coh = bredon_cohomology(&c, &MackeyCoeff::constant_z(v.group));
        for k in 1..=3 {
            assert!(coh.get(&k).map(|h| h.is_zero()).unwrap_or(true), "H^{} = {:?}", k, coh.get(&k));
        }
        // and it agrees with the cohomology of the orbit complex
        let oc = c.orbit_complex().unwrap();
        for k in 0..=3i64 {
            let a = coh.get(&k).cloned().unwrap_or_else(AbGroup::zero);
            let b = oc.cohomology(k);
            assert_eq!(a, b, "degree {}", k);
        }
    }

    #[test]
    fn duality_small_reps() {
        // H_j(model(-V)) = H^{-j}(model(V)) with constant Z
        for (order, a, b, c1) in [(2u32, 1, 1, 0), (4, 0, 1, 1), (4, 1, 0, 1)] {
            let g = Cyclic::new(order).unwrap();
            let v = rep(order, a, b, if order == 2 { vec![] } else { vec![c1] });
            let coeff = MackeyCoeff::constant_z(g);
            let plus = sphere_model(&v).unwrap();
            let minus = chain_model(&RealRep::zero(g), Some(&v), 0, None).unwrap();
            minus.check().unwrap();
            let h = bredon_homology(&minus, &coeff);
            let coh = bredon_cohomology(&plus, &coeff);
            for j in -(v.dim() as i64)..=0 {
                let lhs = h.get(&j).cloned().unwrap_or_else(AbGroup::zero);
                let rhs = coh.get(&-j).cloned().unwrap_or_else(AbGroup::zero);
                assert_eq!(lhs, rhs, "{} at {}", v, j);
            }
        }
    }

    #[test]
    fn homology_induction() {
        // H_*^G(Ind_K^G X; Z) = H_*^K(X; Z) for X = S^{rho_2}, K = C2 in C8
        let k = Cyclic::new(2).unwrap();
        let g = Cyclic::new(8).unwrap();
        let v = RealRep::regular(k);
        let x = sphere_model(&v).unwrap();
        let hk = bredon_homology(&x, &MackeyCoeff::constant_z(k));
        let ind = x.induce(g).unwrap();
        let hg = bredon_homology(&ind, &MackeyCoeff::constant_z(g));
        assert_eq!(hk, hg);
    }

    #[test]
    fn cell_lemma_instances() {
        // (C2, C2, m=-1), (C8, C4, m=-2) and the trivial m >= 0 cases
        assert!(cell_lemma_check(Cyclic::new(2).unwrap(), 2, -1).unwrap());
        assert!(cell_lemma_check(Cyclic::new(8).unwrap(), 4, -2).unwrap());
        assert!(cell_lemma_check(Cyclic::new(8).unwrap(), 2, 3).unwrap());
        assert!(cell_lemma_check(Cyclic::new(4).unwrap(), 4, 0).unwrap());
    }

    #[test]
    fn cell_lemma_needs_isotropy() {
        // negative control: the non-isotropic cell Ind_1^G S^{-1} is a free
        // wedge of (-1)-spheres, whose H_{-1} does not vanish
        let groups = cell_lemma_groups(Cyclic::new(2).unwrap(), 1, -1).unwrap();
        assert!(!groups[&-1].is_zero());
        assert!(!cell_lemma_check(Cyclic::new(4).unwrap(), 1, -1).unwrap());
    }

    #[test]
    fn windowed_cell_model_matches_full_build() {
        // mid-size instances where the unwindowed complex is still feasible
        let g = Cyclic::new(8).unwrap();
        let coeff = MackeyCoeff::constant_z(g);
        for (k, m) in [(4u32, -2i64), (2, -3), (8, -1)] {
            let full = slice_cell_model(g, k, m, true, None).unwrap();
            let win = slice_cell_model(g, k, m, true, Some((-4, 0))).unwrap();
            let hf = bredon_homology(&full, &coeff);
            let hw = bredon_homology(&win, &coeff);
            for j in -3..=-1i64 {
                assert_eq!(
                    hf.get(&j).cloned().unwrap_or_else(AbGroup::zero),
                    hw.get(&j).cloned().unwrap_or_else(AbGroup::zero),
                    "K order {} m {} degree {}",
                    k,
                    m,
                    j
                );
            }
        }
    }

    #[test]
    fn windowed_model_matches_full_on_small_negative_sphere() {
        // -rho_2 over C2: compare windowed Bredon homology with the full one
        let g = Cyclic::new(2).unwrap();
        let v = RealRep::regular(g);
        let coeff = MackeyCoeff::constant_z(g);
        let full = chain_model(&RealRep::zero(g), Some(&v), 0, None).unwrap();
        let hfull = bredon_homology(&full, &coeff);
        let win = chain_model(&RealRep::zero(g), Some(&v), 0, Some((-4, 0))).unwrap();
        let hwin = bredon_homology(&win, &coeff);
        for j in -3..=-1i64 {
            assert_eq!(
                hfull.get(&j).cloned().unwrap_or_else(AbGroup::zero),
                hwin.get(&j).cloned().unwrap_or_else(AbGroup::zero)
            );
        }
    }
}
