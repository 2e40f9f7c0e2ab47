//! Real representations of C_{2n} (2n a power of two): the lattice spanned by
//! the trivial representation, the sign representation pulled back from C_2,
//! and the 2-dimensional rotations lambda(k), 1 <= k <= n-1, where a chosen
//! generator acts by zeta_{2n}^k.
//!
//! lambda(n) would coincide with 2 sigma and is excluded from the irreducible
//! list; lambda(0) likewise coincides with 2 epsilon.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::equivariant::{Cyclic, GroupError};
use crate::intmat::IntMatrix;
use crate::ring::{CycloField, Ring};

/// A genuine (nonnegative) real representation of C_{2n}:
/// a*epsilon + b*sigma + sum_k c_k lambda(k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRep {
    pub group: Cyclic,
    pub a: u32,
    pub b: u32,
    pub c: Vec<u32>, // length n-1, entry k-1 is the multiplicity of lambda(k)
}

impl RealRep {
    pub fn new(group: Cyclic, a: u32, b: u32, c: Vec<u32>) -> Result<Self, GroupError> {
        let n = group.half();
        if c.len() != (n.saturating_sub(1)) as usize {
            return Err(GroupError::NotASubgroup { group: group.order(), sub: c.len() as u32 });
        }
        Ok(RealRep { group, a, b, c })
    }

    pub fn zero(group: Cyclic) -> Self {
        let n = group.half();
        RealRep { group, a: 0, b: 0, c: vec![0; n.saturating_sub(1) as usize] }
    }

    /// The regular representation R[C_{2n}] = eps + sigma + sum_k lambda(k).
    pub fn regular(group: Cyclic) -> Self {
        let n = group.half();
        RealRep { group, a: 1, b: if n >= 1 { 1 } else { 0 }, c: vec![1; n.saturating_sub(1) as usize] }
    }

    pub fn dim(&self) -> u32 {
        self.a + self.b + 2 * self.c.iter().sum::<u32>()
    }

    /// Order of the kernel of the lambda(k) action: |{g : zeta^{gk} = 1}|.
    pub fn lambda_kernel_order(group: Cyclic, k: u32) -> u32 {
        group.order().gcd(&k)
    }

    /// dim V^H for the subgroup of order h.
    pub fn fixed_dim(&self, h: u32) -> u32 {
        self.group.check_subgroup(h).expect("subgroup");
        let mut d = self.a;
        if h <= self.group.half() {
            d += self.b; // sigma is pulled back from G/C_n
        }
        for (i, ck) in self.c.iter().enumerate() {
            let k = (i + 1) as u32;
            if Self::lambda_kernel_order(self.group, k) % h == 0 {
                d += 2 * ck;
            }
        }
        d
    }

    /// det(gamma on V) = 1 iff b is even: each lambda is a rotation and
    /// epsilon is trivial, so only sigma contributes a sign.
    pub fn is_orientable(&self) -> bool {
        self.b % 2 == 0
    }

    pub fn add(&self, other: &RealRep) -> RealRep {
        assert_eq!(self.group, other.group);
        RealRep {
            group: self.group,
            a: self.a + other.a,
            b: self.b + other.b,
            c: self.c.iter().zip(&other.c).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn scale(&self, m: u32) -> RealRep {
        RealRep {
            group: self.group,
            a: self.a * m,
            b: self.b * m,
            c: self.c.iter().map(|x| x * m).collect(),
        }
    }

    /// Character value chi_V(gamma^t) as an element of Q(zeta_{2n}).
    pub fn character(&self, field: &CycloField, t: i64) -> Vec<num_rational::BigRational> {
        assert_eq!(1u32 << (field.e() - 1), self.group.half(), "field must match the group order");
        let mut acc = field.from_i64(self.a as i64);
        // sigma(gamma^t) = (-1)^t
        let sgn = if t.rem_euclid(2) == 0 { 1 } else { -1 };
        acc = field.add(&acc, &field.from_i64(self.b as i64 * sgn));
        for (i, ck) in self.c.iter().enumerate() {
            let k = (i + 1) as i64;
            if *ck == 0 {
                continue;
            }
            let z = field.add(&field.zeta_pow(k * t), &field.zeta_pow(-k * t));
            acc = field.add(&acc, &field.mul(&z, &field.from_i64(*ck as i64)));
        }
        acc
    }

    /// Restriction to the subgroup of order h (as a representation of C_h).
    pub fn restrict(&self, h: u32) -> Result<RealRep, GroupError> {
        self.group.check_subgroup(h)?;
        let sub = Cyclic::new(h)?;
        let index = self.group.order() / h;
        let mut out = RealRep::zero(sub);
        out.a = self.a;
        // sigma restricted: generator of C_h is gamma^index
        if index % 2 == 0 {
            out.a += self.b;
        } else {
            out.b += self.b;
        }
        for (i, ck) in self.c.iter().enumerate() {
            if *ck == 0 {
                continue;
            }
            let k = (i + 1) as u32;
            // lambda(k) restricted: gamma^index acts by zeta_{2n}^{k*index} =
            // zeta_h^{k mod h}; fold by conjugation into 0..=h/2
            let r = k % h;
            match r.min(h - r) {
                0 => out.a += 2 * ck,
                f if f == sub.half() => out.b += 2 * ck,
                f => out.c[(f - 1) as usize] += ck,
            }
        }
        Ok(out)
    }

    /// Induction from this representation of C_{2k} up to `group` (of which
    /// C_{2k} must be a subgroup), computed by exact character arithmetic in
    /// Q(zeta_{|G|}).
    pub fn induce(&self, group: Cyclic) -> Result<RealRep, GroupError> {
        group.check_subgroup(self.group.order())?;
        let g = group.order() as i64;
        let h = self.group.order() as i64;
        let index = g / h;
        let e = group.order().trailing_zeros();
        let field = CycloField::new(e.max(1)).unwrap();
        // chi_ind(gamma^t) = index * chi(gamma^{t/index}) when index | t else 0
        let chi: Vec<_> = (0..g)
            .map(|t| {
                if t % index == 0 {
                    let inner = RealRep { group: self.group, a: self.a, b: self.b, c: self.c.clone() }
                        .character_in(&field, t / index, g / h);
                    field.mul(&inner, &field.from_i64(index))
                } else {
                    field.zero()
                }
            })
            .collect();
        RealRep::from_character(group, &field, &chi)
    }

    /// Character of this C_h-representation evaluated at (gamma_H)^s, written
    /// in Q(zeta_{2n}) where gamma_H = gamma^{index}; zeta_h = zeta_{2n}^{index}.
    fn character_in(&self, field: &CycloField, s: i64, index: i64) -> Vec<num_rational::BigRational> {
        let mut acc = field.from_i64(self.a as i64);
        let sgn = if s.rem_euclid(2) == 0 { 1 } else { -1 };
        acc = field.add(&acc, &field.from_i64(self.b as i64 * sgn));
        for (i, ck) in self.c.iter().enumerate() {
            let k = (i + 1) as i64;
            if *ck == 0 {
                continue;
            }
            let z = field.add(&field.zeta_pow(k * s * index), &field.zeta_pow(-k * s * index));
            acc = field.add(&acc, &field.mul(&z, &field.from_i64(*ck as i64)));
        }
        acc
    }

    /// Recover multiplicities from a character table over Q(zeta_{2n}):
    /// m_j = (1/2n) sum_t chi(gamma^t) zeta^{-jt}.
    fn from_character(
        group: Cyclic,
        field: &CycloField,
        chi: &[Vec<num_rational::BigRational>],
    ) -> Result<RealRep, GroupError> {
        let g = group.order() as i64;
        let n = group.half();
        let mult = |j: i64| -> i64 {
            let mut acc = field.zero();
            for (t, c) in chi.iter().enumerate() {
                acc = field.add(&acc, &field.mul(c, &field.zeta_pow(-j * t as i64)));
            }
            let m = field.div_exact_u64(&acc, g as u64).unwrap();
            // must be a rational integer
            assert!(m.iter().skip(1).all(|x| x.is_zero()), "non-integer multiplicity");
            assert!(m[0].is_integer());
            let big = m[0].to_integer();
            i64::try_from(&big).expect("small multiplicity")
        };
        let mut out = RealRep::zero(group);
        out.a = mult(0) as u32;
        if n >= 1 {
            out.b = mult(n as i64) as u32;
        }
        for k in 1..n {
            let mk = mult(k as i64);
            let mneg = mult(-(k as i64));
            assert_eq!(mk, mneg, "complex multiplicities must pair");
            out.c[(k - 1) as usize] = mk as u32;
        }
        Ok(out)
    }
}

impl fmt::Display for RealRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.a > 0 {
            parts.push(if self.a == 1 { "eps".into() } else { format!("{}eps", self.a) });
        }
        if self.b > 0 {
            parts.push(if self.b == 1 { "sigma".into() } else { format!("{}sigma", self.b) });
        }
        for (i, ck) in self.c.iter().enumerate() {
            if *ck > 0 {
                let name = format!("lambda({})", i + 1);
                parts.push(if *ck == 1 { name } else { format!("{}{}", ck, name) });
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepError {
    NotOrthogonal,
    WrongOrder,
    Group(GroupError),
}

impl fmt::Display for RepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepError::NotOrthogonal => write!(f, "matrix is not orthogonal"),
            RepError::WrongOrder => write!(f, "matrix order does not divide the group order"),
            RepError::Group(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for RepError {}

/// Decompose an integer orthogonal matrix M (the image of gamma) into
/// irreducible multiplicities by cyclotomic eigenvalue analysis over Q.
///
/// Over Q, Galois-conjugate rotations lambda(k), lambda(k') with the same
/// kernel are indistinguishable; their common multiplicity is distributed
/// equally (integer matrices always contain conjugates in equal numbers).
pub fn rep_decompose(group: Cyclic, m: &IntMatrix) -> Result<RealRep, RepError> {
    let dim = m.rows();
    if m.cols() != dim {
        return Err(RepError::NotOrthogonal);
    }
    // orthogonality: M^T M = I
    if m.transpose().mul(m) != IntMatrix::identity(dim) {
        return Err(RepError::NotOrthogonal);
    }
    // M^{2n} = I
    let g = group.order();
    let mut p = IntMatrix::identity(dim);
    for _ in 0..g {
        p = p.mul(m);
    }
    if p != IntMatrix::identity(dim) {
        return Err(RepError::WrongOrder);
    }
    // multiplicity of the cyclotomic factor Phi_d: dim ker Phi_d(M) / phi(d)
    let n = group.half();
    let mut out = RealRep::zero(group);
    for d in group.divisors() {
        let phi_d = cyclotomic_poly_pow2(d);
        let mut acc = IntMatrix::zero(dim, dim);
        let mut mp = IntMatrix::identity(dim);
        for c in &phi_d {
            if *c != 0 {
                for r in 0..dim {
                    for cc in 0..dim {
                        let v = mp.get(r, cc) * num_bigint::BigInt::from(*c);
                        acc.add_to(r, cc, &v);
                    }
                }
            }
            mp = mp.mul(m);
        }
        let nullity = dim - acc.rank();
        let phi = if d <= 2 { 1 } else { d / 2 } as usize;
        assert_eq!(nullity % phi, 0, "cyclotomic multiplicity not integral");
        let mult = nullity / phi;
        if mult == 0 {
            continue;
        }
        match d {
            1 => out.a = mult as u32,
            2 => out.b = mult as u32,
            _ => {
                // lambda(k) with zeta^k of order d: k in 1..n with
                // g/gcd(g,k) = d. One full Phi_d block is exactly one
                // conjugate pair per such class, so the block multiplicity
                // is the common multiplicity of every class in the orbit.
                for k in (1..n).filter(|k| g / g.gcd(k) == d) {
                    out.c[(k - 1) as usize] = mult as u32;
                }
            }
        }
    }
    Ok(out)
}

/// Phi_d for d a power of two: z - 1, z + 1, or z^{d/2} + 1.
fn cyclotomic_poly_pow2(d: u32) -> Vec<i64> {
    match d {
        1 => vec![-1, 1],
        2 => vec![1, 1],
        _ => {
            let half = (d / 2) as usize;
            let mut v = vec![0i64; half + 1];
            v[0] = 1;
            v[half] = 1;
            v
        }
    }
}

/// dim V^H computed by character averaging (oracle route):
/// (1/|H|) sum_{h in H} chi(h).
pub fn fixed_dim_by_character(v: &RealRep, h: u32) -> u32 {
    let e = v.group.order().trailing_zeros().max(1);
    let field = CycloField::new(e).unwrap();
    let g = v.group.order();
    let step = (g / h) as i64;
    let mut acc = field.zero();
    for i in 0..h as i64 {
        acc = field.add(&acc, &v.character(&field, i * step));
    }
    let m = field.div_exact_u64(&acc, h as u64).unwrap();
    assert!(m.iter().skip(1).all(|x| x.is_zero()));
    let big = m[0].to_integer();
    u32::try_from(&big).expect("nonnegative small dimension")
}

/// The permutation matrix of gamma acting on the regular representation.
pub fn regular_rep_matrix(group: Cyclic) -> IntMatrix {
    let g = group.order() as usize;
    let mut m = IntMatrix::zero(g, g);
    for i in 0..g {
        m.set((i + 1) % g, i, num_bigint::BigInt::from(1));
    }
    m
}
