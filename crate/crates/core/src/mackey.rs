//! Levelwise Mackey-functor data for cyclic 2-groups: the constant functor
//! Z-underline and the Burnside functor, given by an abelian group per
//! subgroup with restriction and transfer matrices. Conjugation is trivial
//! (the groups are abelian and both functors have trivial Weyl actions).

use crate::equivariant::{Cyclic, GroupError, GSet};
use crate::intmat::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MackeyKind {
    /// Z at every level, res = identity, tr = multiplication by the index.
    ConstantZ,
    /// A(C_d), free on the orbit types of C_d-sets; res = restriction of
    /// G-sets, tr = induction.
    Burnside,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MackeyCoeff {
    pub kind: MackeyKind,
    pub group: Cyclic,
}

impl MackeyCoeff {
    pub fn constant_z(group: Cyclic) -> Self {
        MackeyCoeff { kind: MackeyKind::ConstantZ, group }
    }

    pub fn burnside(group: Cyclic) -> Self {
        MackeyCoeff { kind: MackeyKind::Burnside, group }
    }

    /// Rank of the level at the subgroup of order d.
    pub fn level_rank(&self, d: u32) -> usize {
        match self.kind {
            MackeyKind::ConstantZ => 1,
            MackeyKind::Burnside => Cyclic::new(d).expect("power of two").divisors().len(),
        }
    }

    /// Restriction level(d) -> level(g) for g | d.
    pub fn res(&self, d: u32, g: u32) -> Result<IntMatrix, GroupError> {
        Cyclic::new(d)?.check_subgroup(g)?;
        match self.kind {
            MackeyKind::ConstantZ => Ok(IntMatrix::identity(1)),
            MackeyKind::Burnside => {
                let dd = Cyclic::new(d)?;
                let gg = Cyclic::new(g)?;
                let rows = gg.divisors();
                let cols = dd.divisors();
                let mut m = IntMatrix::zero(rows.len(), cols.len());
                for (j, c) in cols.iter().enumerate() {
                    // Res_{C_g}[C_d/C_c] = (d / lcm(g,c)) [C_g / C_{gcd(g,c)}]
                    let copies = (d / g.lcm(c)) as i64;
                    let target = g.gcd(c);
                    let i = rows.iter().position(|x| *x == target).unwrap();
                    m.add_to(i, j, &BigInt::from(copies));
                }
                Ok(m)
            }
        }
    }

    /// Transfer level(g) -> level(d) for g | d. For the constant functor this
    /// is multiplication by the index d/g, the sum-over-fibers formula
    /// applied to constant coefficients.
    pub fn tr(&self, g: u32, d: u32) -> Result<IntMatrix, GroupError> {
        Cyclic::new(d)?.check_subgroup(g)?;
        match self.kind {
            MackeyKind::ConstantZ => {
                let mut m = IntMatrix::zero(1, 1);
                m.set(0, 0, BigInt::from((d / g) as i64));
                Ok(m)
            }
            MackeyKind::Burnside => {
                let dd = Cyclic::new(d)?;
                let gg = Cyclic::new(g)?;
                let rows = dd.divisors();
                let cols = gg.divisors();
                let mut m = IntMatrix::zero(rows.len(), cols.len());
                for (j, c) in cols.iter().enumerate() {
                    // Ind [C_g/C_c] = [C_d/C_c]
                    let i = rows.iter().position(|x| *x == *c).unwrap();
                    m.set(i, j, BigInt::from(1));
                }
                Ok(m)
            }
        }
    }

    /// The value of a Burnside-level basis G-set as a GSet (for marks-based
    /// verification).
    pub fn burnside_basis(&self, d: u32) -> Vec<GSet> {
        Cyclic::new(d).unwrap().divisors().into_iter().map(GSet::orbit).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariant::double_coset_restrict;

    #[test]
    fn constant_z_examples() {
        let g = Cyclic::new(8).unwrap();
        let m = MackeyCoeff::constant_z(g);
        // C1 in C2: transfer is multiplication by 2
        assert_eq!(m.tr(1, 2).unwrap().get(0, 0), BigInt::from(2));
        // identity transfer
        assert_eq!(m.tr(4, 4).unwrap().get(0, 0), BigInt::from(1));
        assert_eq!(m.res(8, 2).unwrap(), IntMatrix::identity(1));
    }

    #[test]
    fn burnside_tr_is_induction() {
        let g = Cyclic::new(8).unwrap();
        let m = MackeyCoeff::burnside(g);
        // A(1) -> A(C2): [pt] -> [C2/C1]
        let t = m.tr(1, 2).unwrap();
        assert_eq!(t.rows(), 2);
        assert_eq!(t.cols(), 1);
        assert_eq!(t.get(0, 0), BigInt::from(1)); // divisor 1 slot
        assert_eq!(t.get(1, 0), BigInt::from(0));
    }

    #[test]
    fn burnside_res_matches_double_coset_restriction() {
        // res^{C_d}_{C_g} of a basis orbit agrees with the G-set computation
        let g8 = Cyclic::new(8).unwrap();
        let m = MackeyCoeff::burnside(g8);
        for d in g8.divisors() {
            let dd = Cyclic::new(d).unwrap();
            for g in dd.divisors() {
                let r = m.res(d, g).unwrap();
                for (j, c) in dd.divisors().iter().enumerate() {
                    // inside the group C_d: H = C_d itself, K = C_g
                    let expect = double_coset_restrict(dd, d, g, &GSet::orbit(*c)).unwrap();
                    let gg = Cyclic::new(g).unwrap();
                    for (i, div) in gg.divisors().iter().enumerate() {
                        let got: i64 = (&r.get(i, j)).try_into().unwrap();
                        assert_eq!(got as u64, expect.orbits.get(div).copied().unwrap_or(0));
                    }
                }
            }
        }
    }

    #[test]
    fn mackey_axiom_all_subgroup_triples() {
        // res^d_g tr^d_h = (d / lcm(g,h)) tr^g_{gcd} res^h_{gcd}
        for order in [2u32, 4, 8] {
            let grp = Cyclic::new(order).unwrap();
            for kind in [MackeyKind::ConstantZ, MackeyKind::Burnside] {
                let m = MackeyCoeff { kind, group: grp };
                for d in grp.divisors() {
                    let dd = Cyclic::new(d).unwrap();
                    for g in dd.divisors() {
                        for h in dd.divisors() {
                            let lhs = m.res(d, g).unwrap().mul(&m.tr(h, d).unwrap());
                            let meet = g.gcd(&h);
                            let copies = (d / g.lcm(&h)) as i64;
                            let one = m.tr(meet, g).unwrap().mul(&m.res(h, meet).unwrap());
                            let mut rhs = IntMatrix::zero(one.rows(), one.cols());
                            for ((r, c), v) in one.iter() {
                                rhs.set(*r, *c, v * BigInt::from(copies));
                            }
                            assert_eq!(lhs, rhs, "kind={:?} d={} g={} h={}", kind, d, g, h);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn transfer_then_restrict_constant() {
        // ConstantZ: res . tr = index when g = h (double coset count x 1)
        let g = Cyclic::new(8).unwrap();
        let m = MackeyCoeff::constant_z(g);
        let rt = m.res(8, 2).unwrap().mul(&m.tr(2, 8).unwrap());
        assert_eq!(rt.get(0, 0), BigInt::from(4));
    }
}
