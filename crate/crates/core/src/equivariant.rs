//! Finite cyclic 2-groups, their G-sets, double cosets, the Burnside ring
//! and table of marks. Subgroups of C_m are identified with divisors of m;
//! the orbit G/C_d is labeled by the subgroup order d.
//!
//! Closed forms are the implementations; brute-force enumeration over group
//! elements is the oracle (see tests).

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

/// The cyclic group C_m. Equivariant machinery requires m a power of two;
/// odd cyclic groups appear only in cyclic cohomology, which has its own
/// carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cyclic {
    order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupError {
    NotPowerOfTwo(u32),
    NotASubgroup { group: u32, sub: u32 },
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::NotPowerOfTwo(m) => write!(f, "{} is not a power of two", m),
            GroupError::NotASubgroup { group, sub } => {
                write!(f, "{} does not divide the group order {}", sub, group)
            }
        }
    }
}

impl std::error::Error for GroupError {}

impl Cyclic {
    pub fn new(order: u32) -> Result<Self, GroupError> {
        if order == 0 || !order.is_power_of_two() {
            return Err(GroupError::NotPowerOfTwo(order));
        }
        Ok(Cyclic { order })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Half the order (the index-two subgroup's order); 2n = order, n = half.
    pub fn half(&self) -> u32 {
        self.order / 2
    }

    pub fn divisors(&self) -> Vec<u32> {
        let mut d = Vec::new();
        let mut x = 1;
        while x <= self.order {
            d.push(x);
            x *= 2;
        }
        d
    }

    pub fn check_subgroup(&self, d: u32) -> Result<(), GroupError> {
        if d == 0 || self.order % d != 0 {
            return Err(GroupError::NotASubgroup { group: self.order, sub: d });
        }
        Ok(())
    }

    /// |(G/C_b)^{C_a}|: the table-of-marks entry.
    pub fn mark(&self, a: u32, b: u32) -> u64 {
        if b % a == 0 {
            (self.order / b) as u64
        } else {
            0
        }
    }
}

/// Finite G-set for cyclic G: multiset of orbits, orbit G/C_d keyed by d.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GSet {
    pub orbits: BTreeMap<u32, u64>,
}

impl GSet {
    pub fn empty() -> Self {
        GSet::default()
    }

    pub fn orbit(d: u32) -> Self {
        let mut s = GSet::empty();
        s.add(d, 1);
        s
    }

    pub fn add(&mut self, d: u32, count: u64) {
        if count == 0 {
            return;
        }
        *self.orbits.entry(d).or_insert(0) += count;
    }

    pub fn size(&self, group: Cyclic) -> u64 {
        self.orbits.iter().map(|(d, c)| (group.order() / d) as u64 * c).sum()
    }

    pub fn union(&self, other: &GSet) -> GSet {
        let mut out = self.clone();
        for (d, c) in &other.orbits {
            out.add(*d, *c);
        }
        out
    }

    /// The mark vector: fixed-point counts |X^{C_a}| for each divisor a.
    pub fn marks(&self, group: Cyclic) -> Vec<u64> {
        group
            .divisors()
            .iter()
            .map(|a| self.orbits.iter().map(|(b, c)| group.mark(*a, *b) * c).sum())
            .collect()
    }
}

impl fmt::Display for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orbits.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .orbits
            .iter()
            .map(|(d, c)| if *c == 1 { format!("[G/C{}]", d) } else { format!("{}[G/C{}]", c, d) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Table of marks: entry (a, b) = |(G/C_b)^{C_a}| over divisors in ascending
/// order. Lower-triangular in divisor order.
pub fn table_of_marks(group: Cyclic) -> Vec<Vec<u64>> {
    let divs = group.divisors();
    divs.iter().map(|a| divs.iter().map(|b| group.mark(*a, *b)).collect()).collect()
}

/// Product of G-sets, decomposed into orbits. For cyclic G:
/// G/C_a x G/C_b = (|G|/lcm(a,b)) copies of G/C_{gcd(a,b)}.
pub fn burnside_product(group: Cyclic, x: &GSet, y: &GSet) -> GSet {
    let g = group.order() as u64;
    let mut out = GSet::empty();
    for (a, ca) in &x.orbits {
        for (b, cb) in &y.orbits {
            let l = (*a as u64).lcm(&(*b as u64));
            out.add(a.gcd(b), ca * cb * (g / l));
        }
    }
    out
}

/// Res_K Ind_H X for X an H-set over cyclic G (abelian specialization of the
/// double coset formula): [G : HK] copies of Ind_{H cap K}^K Res_{H cap K}^H X.
pub fn double_coset_restrict(group: Cyclic, h: u32, k: u32, x: &GSet) -> Result<GSet, GroupError> {
    group.check_subgroup(h)?;
    group.check_subgroup(k)?;
    let hgrp = Cyclic::new(h)?;
    for d in x.orbits.keys() {
        hgrp.check_subgroup(*d)?;
    }
    let g = group.order() as u64;
    let hk = (h as u64).lcm(&(k as u64));
    let copies = g / hk;
    let mut out = GSet::empty();
    for (d, c) in &x.orbits {
        // orbit H/C_d: restrict to H cap K = C_{gcd(h,k)}, then induce to K.
        // Res_{HcapK}(H/C_d) = (h / lcm(gcd(h,k), d)) copies of
        // (H cap K)/C_{gcd(gcd(h,k), d)}; induction relabels to K-orbits.
        let meet = h.gcd(&k);
        let l = (meet as u64).lcm(&(*d as u64));
        let pieces = (h as u64) / l;
        out.add(meet.gcd(d), copies * pieces * c);
    }
    Ok(out)
}

/// Brute-force oracle: enumerate Ind_H^G X as actual points with the
/// G-action, restrict to K, and count orbits by stabilizer. Sizes <= 8.
pub fn restrict_induce_brute(group: Cyclic, h: u32, k: u32, x: &GSet) -> GSet {
    let g = group.order();
    let mut out = GSet::empty();
    for (d, c) in &x.orbits {
        debug_assert_eq!(h % d, 0, "orbit label must divide |H|");
        // Ind_H (H/C_d) = G/C_d: points are cosets t + C_d-multiples in Z/g,
        // i.e. residues mod g/d. K = <g/k * Z>: generator shift s = g / k.
        let points: u32 = g / d;
        let shift = (g / k) % points;
        let mut seen = vec![false; points as usize];
        for p in 0..points {
            if seen[p as usize] {
                continue;
            }
            // orbit of p under repeated shift
            let mut cur = p;
            let mut orbit_len = 0u32;
            loop {
                seen[cur as usize] = true;
                orbit_len += 1;
                cur = (cur + shift) % points;
                if cur == p {
                    break;
                }
            }
            // orbit of size L is K/C_{k/L}
            let stab = k / orbit_len;
            out.add(stab, *c);
        }
    }
    out
}

/// Brute-force orbit decomposition of G/C_a x G/C_b.
pub fn product_orbits_brute(group: Cyclic, a: u32, b: u32) -> GSet {
    let g = group.order();
    let pa = g / a;
    let pb = g / b;
    let mut seen = vec![false; (pa * pb) as usize];
    let mut out = GSet::empty();
    for i in 0..pa {
        for j in 0..pb {
            let ix = (i * pb + j) as usize;
            if seen[ix] {
                continue;
            }
            let mut cur = (i, j);
            let mut len = 0u32;
            loop {
                seen[(cur.0 * pb + cur.1) as usize] = true;
                len += 1;
                cur = ((cur.0 + 1) % pa, (cur.1 + 1) % pb);
                if cur == (i, j) {
                    break;
                }
            }
            out.add(g / len, 1);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_construction() {
        assert!(Cyclic::new(8).is_ok());
        assert!(Cyclic::new(6).is_err());
        assert!(Cyclic::new(0).is_err());
    }

    #[test]
    fn marks_c8() {
        let g = Cyclic::new(8).unwrap();
        // free orbit has 8 points fixed by C_1
        assert_eq!(g.mark(1, 1), 8);
        // fixed points need C_a inside C_b
        assert_eq!(g.mark(4, 2), 0);
        // |(C8/C4)^{C2}| = 2
        assert_eq!(g.mark(2, 4), 2);
    }

    #[test]
    fn table_of_marks_triangular_and_invertible() {
        let g = Cyclic::new(8).unwrap();
        let t = table_of_marks(g);
        for (i, row) in t.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if j < i {
                    assert_eq!(*v, 0);
                }
            }
            // diagonal nonzero -> invertible over Q
            assert_ne!(row[i], 0);
        }
    }

    #[test]
    fn burnside_product_examples() {
        let g = Cyclic::new(8).unwrap();
        // [C8/C2] * [C8/C4] = 2 [C8/C2]
        let p = burnside_product(g, &GSet::orbit(2), &GSet::orbit(4));
        let mut expect = GSet::empty();
        expect.add(2, 2);
        assert_eq!(p, expect);
        // unit: [G/G] * X = X
        let x = {
            let mut x = GSet::empty();
            x.add(1, 2);
            x.add(4, 1);
            x
        };
        assert_eq!(burnside_product(g, &GSet::orbit(8), &x), x);
    }

    #[test]
    fn product_matches_brute_force_and_marks_multiply() {
        for order in [2u32, 4, 8] {
            let g = Cyclic::new(order).unwrap();
            for a in g.divisors() {
                for b in g.divisors() {
                    let closed = burnside_product(g, &GSet::orbit(a), &GSet::orbit(b));
                    let brute = product_orbits_brute(g, a, b);
                    assert_eq!(closed, brute, "G=C{} a={} b={}", order, a, b);
                    // marks multiply pointwise
                    let ma = GSet::orbit(a).marks(g);
                    let mb = GSet::orbit(b).marks(g);
                    let mp = closed.marks(g);
                    for i in 0..ma.len() {
                        assert_eq!(mp[i], ma[i] * mb[i]);
                    }
                }
            }
        }
    }

    #[test]
    fn random_pairs_mark_multiplicativity() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let g = Cyclic::new(8).unwrap();
        for _ in 0..100 {
            let mut x = GSet::empty();
            let mut y = GSet::empty();
            for d in g.divisors() {
                x.add(d, rng.gen_range(0..3));
                y.add(d, rng.gen_range(0..3));
            }
            let p = burnside_product(g, &x, &y);
            let mx = x.marks(g);
            let my = y.marks(g);
            let mp = p.marks(g);
            for i in 0..mx.len() {
                assert_eq!(mp[i], mx[i] * my[i]);
            }
        }
    }

    #[test]
    fn double_coset_examples() {
        let g8 = Cyclic::new(8).unwrap();
        // G=C8, H=K=C2, X = H/H -> 4 copies of K/C2 (HK = C2, index 4)
        let r = double_coset_restrict(g8, 2, 2, &GSet::orbit(2)).unwrap();
        let mut expect = GSet::empty();
        expect.add(2, 4);
        assert_eq!(r, expect);
        // G=C8, H=C4, K=C2, X = H/H -> 2 copies of K/K (HK = C4)
        let r = double_coset_restrict(g8, 4, 2, &GSet::orbit(4)).unwrap();
        let mut expect = GSet::empty();
        expect.add(2, 2);
        assert_eq!(r, expect);
        // H = G degenerates to plain restriction
        let r = double_coset_restrict(g8, 8, 4, &GSet::orbit(8)).unwrap();
        let mut expect = GSet::empty();
        expect.add(4, 1);
        assert_eq!(r, expect);
    }

    #[test]
    fn double_coset_matches_brute_force() {
        for order in [2u32, 4, 8] {
            let g = Cyclic::new(order).unwrap();
            for h in g.divisors() {
                for k in g.divisors() {
                    for d in Cyclic::new(h).unwrap().divisors() {
                        let x = GSet::orbit(d);
                        let closed = double_coset_restrict(g, h, k, &x).unwrap();
                        let brute = restrict_induce_brute(g, h, k, &x);
                        assert_eq!(closed, brute, "G=C{} H=C{} K=C{} X=H/C{}", order, h, k, d);
                    }
                }
            }
        }
    }

    #[test]
    fn non_subgroup_rejected() {
        let g = Cyclic::new(8).unwrap();
        assert!(double_coset_restrict(g, 3, 2, &GSet::orbit(1)).is_err());
        // orbit label must divide H
        assert!(double_coset_restrict(g, 2, 2, &GSet::orbit(4)).is_err());
    }
}
