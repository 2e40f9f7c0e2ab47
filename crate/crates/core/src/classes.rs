//! RO(G)-graded symbolic degree calculus: virtual representation degrees,
//! named classes with degree and filtration, the norm and geometric
//! fixed-point degree rules, the slice differential bidegree identity, the
//! periodicity divisibility bookkeeping with its final product class and
//! 256-periodicity, the vanishing-line deduction, and the low-degree Adams
//! chart fixtures.

use std::fmt;

use crate::equivariant::Cyclic;
use crate::reps::RealRep;

/// Integer combination of the irreducible real representations of C_{2n}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RODegree {
    pub group: Cyclic,
    pub eps: i64,
    pub sigma: i64,
    pub lambda: Vec<i64>,
}

impl RODegree {
    pub fn zero(group: Cyclic) -> Self {
        let n = group.half();
        RODegree { group, eps: 0, sigma: 0, lambda: vec![0; n.saturating_sub(1) as usize] }
    }

    pub fn integer(group: Cyclic, n: i64) -> Self {
        let mut d = Self::zero(group);
        d.eps = n;
        d
    }

    /// The regular representation rho_{2n}.
    pub fn rho(group: Cyclic) -> Self {
        let n = group.half();
        RODegree { group, eps: 1, sigma: 1, lambda: vec![1; n.saturating_sub(1) as usize] }
    }

    pub fn from_rep(v: &RealRep) -> Self {
        RODegree {
            group: v.group,
            eps: v.a as i64,
            sigma: v.b as i64,
            lambda: v.c.iter().map(|x| *x as i64).collect(),
        }
    }

    pub fn add(&self, other: &RODegree) -> RODegree {
        assert_eq!(self.group, other.group);
        RODegree {
            group: self.group,
            eps: self.eps + other.eps,
            sigma: self.sigma + other.sigma,
            lambda: self.lambda.iter().zip(&other.lambda).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> RODegree {
        RODegree {
            group: self.group,
            eps: -self.eps,
            sigma: -self.sigma,
            lambda: self.lambda.iter().map(|x| -x).collect(),
        }
    }

    pub fn sub(&self, other: &RODegree) -> RODegree {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> RODegree {
        RODegree {
            group: self.group,
            eps: k * self.eps,
            sigma: k * self.sigma,
            lambda: self.lambda.iter().map(|x| k * x).collect(),
        }
    }

    /// Virtual dimension.
    pub fn dim(&self) -> i64 {
        self.eps + self.sigma + 2 * self.lambda.iter().sum::<i64>()
    }

    /// Virtual fixed dimension at the subgroup of order h.
    pub fn fixed_dim(&self, h: u32) -> i64 {
        let mut d = self.eps;
        if h <= self.group.half() {
            d += self.sigma;
        }
        for (i, ck) in self.lambda.iter().enumerate() {
            let k = (i + 1) as u32;
            if RealRep::lambda_kernel_order(self.group, k) % h == 0 {
                d += 2 * ck;
            }
        }
        d
    }

    /// Some(j) iff this equals j * rho.
    pub fn as_rho_multiple(&self) -> Option<i64> {
        let j = self.eps;
        if self == &Self::rho(self.group).scale(j) {
            Some(j)
        } else {
            None
        }
    }

    /// Some(n) iff this is the integer degree n (no nontrivial summands).
    pub fn as_integer(&self) -> Option<i64> {
        if self.sigma == 0 && self.lambda.iter().all(|x| *x == 0) {
            Some(self.eps)
        } else {
            None
        }
    }

    /// Restriction to the subgroup of order h (virtual version of the
    /// representation restriction).
    pub fn restrict(&self, h: u32) -> RODegree {
        self.group.check_subgroup(h).expect("subgroup");
        let sub = Cyclic::new(h).unwrap();
        let index = self.group.order() / h;
        let mut out = RODegree::zero(sub);
        out.eps = self.eps;
        if index % 2 == 0 {
            out.eps += self.sigma;
        } else {
            out.sigma += self.sigma;
        }
        for (i, ck) in self.lambda.iter().enumerate() {
            let k = (i + 1) as u32 % h;
            match k.min(h - k) {
                0 => out.eps += 2 * ck,
                f if f == sub.half() => out.sigma += 2 * ck,
                f => out.lambda[(f - 1) as usize] += ck,
            }
        }
        out
    }
}

impl fmt::Display for RODegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(j) = self.as_rho_multiple() {
            if j != 0 {
                return write!(f, "{}*rho_{}", j, self.group.order());
            }
        }
        let mut parts = Vec::new();
        if self.eps != 0 {
            parts.push(format!("{}", self.eps));
        }
        if self.sigma != 0 {
            parts.push(format!("{}*sigma", self.sigma));
        }
        for (i, ck) in self.lambda.iter().enumerate() {
            if *ck != 0 {
                parts.push(format!("{}*lambda({})", ck, i + 1));
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
pub enum ClassError {
    NotOrientable,
    NotRhoMultiple,
    GroupMismatch,
}

impl fmt::Display for ClassError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassError::NotOrientable => write!(f, "orientation classes require an orientable representation"),
            ClassError::NotRhoMultiple => write!(f, "degree is not a multiple of the regular representation"),
            ClassError::GroupMismatch => write!(f, "classes live over different groups"),
        }
    }
}

impl std::error::Error for ClassError {}

/// A named class with an RO(G)-degree and a slice filtration (None when the
/// filtration is not pinned down by the source material).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedClass {
    pub name: String,
    pub degree: RODegree,
    pub filtration: Option<i64>,
}

impl NamedClass {
    pub fn product(&self, other: &NamedClass) -> Result<NamedClass, ClassError> {
        if self.degree.group != other.degree.group {
            return Err(ClassError::GroupMismatch);
        }
        Ok(NamedClass {
            name: format!("{}*{}", self.name, other.name),
            degree: self.degree.add(&other.degree),
            filtration: match (self.filtration, other.filtration) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            },
        })
    }

    pub fn power(&self, k: u32) -> NamedClass {
        NamedClass {
            name: format!("{}^{}", self.name, k),
            degree: self.degree.scale(k as i64),
            filtration: self.filtration.map(|s| s * k as i64),
        }
    }

    /// Orientation class u_V of an oriented representation: degree
    /// dim V - V, filtration 0.
    pub fn u_class(v: &RealRep) -> Result<NamedClass, ClassError> {
        if !v.is_orientable() {
            return Err(ClassError::NotOrientable);
        }
        let deg = RODegree::integer(v.group, v.dim() as i64).sub(&RODegree::from_rep(v));
        Ok(NamedClass { name: format!("u_{{{}}}", v), degree: deg, filtration: Some(0) })
    }

    /// Euler class a_V: degree -V. Filtration is recorded only for the
    /// sigma class (whose Hurewicz image has filtration 1).
    pub fn a_class(v: &RealRep) -> NamedClass {
        let is_sigma = v.a == 0 && v.b == 1 && v.c.iter().all(|c| *c == 0);
        NamedClass {
            name: format!("a_{{{}}}", v),
            degree: RODegree::from_rep(v).neg(),
            filtration: if is_sigma { Some(1) } else { None },
        }
    }

    /// Whether a_V is forced null: V^G != 0.
    pub fn a_class_forced_null(v: &RealRep) -> bool {
        v.fixed_dim(v.group.order()) != 0
    }

    /// Delta_k over C_{2n}: degree (2^k - 1) rho_{2n}, filtration 0.
    pub fn delta(group: Cyclic, k: u32) -> NamedClass {
        assert!(k <= 58, "Delta exponent out of the supported range");
        NamedClass {
            name: format!("Delta_{}^{{({})}}", k, group.order()),
            degree: RODegree::rho(group).scale((1i64 << k) - 1),
            filtration: Some(0),
        }
    }

    /// g_j over C_{2n}: degree j rho_{2n}, filtration 0.
    pub fn g(group: Cyclic, j: i64) -> NamedClass {
        NamedClass { name: format!("g_{}", j), degree: RODegree::rho(group).scale(j), filtration: Some(0) }
    }

    /// f_j over C_{2n}: bidegree ((2n-1)j, 2nj), so internal degree j and
    /// filtration (2n-1)j.
    pub fn f(group: Cyclic, j: i64) -> NamedClass {
        NamedClass {
            name: format!("f_{}", j),
            degree: RODegree::integer(group, j),
            filtration: Some((group.order() as i64 - 1) * j),
        }
    }
}

/// Norm degree rule: j rho_H maps to j rho_G; only rho-multiples are
/// covered by the rule.
pub fn norm_degree(d: &RODegree, group: Cyclic) -> Result<RODegree, ClassError> {
    group.check_subgroup(d.group.order()).map_err(|_| ClassError::GroupMismatch)?;
    let j = d.as_rho_multiple().ok_or(ClassError::NotRhoMultiple)?;
    Ok(RODegree::rho(group).scale(j))
}

/// Geometric fixed points degree rule: `Phi^H S^{m rho_G} = S^{m [G:H]}`.
pub fn fixed_degree(d: &RODegree, h_order: u32) -> Result<i64, ClassError> {
    d.group.check_subgroup(h_order).map_err(|_| ClassError::GroupMismatch)?;
    let m = d.as_rho_multiple().ok_or(ClassError::NotRhoMultiple)?;
    Ok(m * (d.group.order() / h_order) as i64)
}

/// Degree-level verification of the orientation-class identities:
/// u_{U + V} = u_U u_V, u_{Res V} = Res u_V, and
/// u_{Ind W} = u_{Ind dim W} . N u_W.
pub struct OrientationCheck {
    pub sum_identity: bool,
    pub restriction_identity: bool,
    pub induction_identity: bool,
}

impl OrientationCheck {
    pub fn all_pass(&self) -> bool {
        self.sum_identity && self.restriction_identity && self.induction_identity
    }
}

pub fn orientation_identity_check(
    u: &RealRep,
    v: &RealRep,
    h_order: u32,
    w: &RealRep,
) -> Result<OrientationCheck, ClassError> {
    // u_{U+V} = u_U u_V at the degree level
    let lhs = NamedClass::u_class(&u.add(v))?;
    let rhs = NamedClass::u_class(u)?.product(&NamedClass::u_class(v)?)?;
    let sum_identity = lhs.degree == rhs.degree && lhs.filtration == rhs.filtration;

    // u_{Res V} = Res u_V
    let resv = v.restrict(h_order).map_err(|_| ClassError::GroupMismatch)?;
    let lhs = NamedClass::u_class(&resv)?;
    let rhs_deg = NamedClass::u_class(v)?.degree.restrict(h_order);
    let restriction_identity = lhs.degree == rhs_deg;

    // u_{Ind W} = u_{Ind dim W} . N-bar u_W, with W over C_{h}
    let g = u.group;
    let sub = Cyclic::new(h_order).map_err(|_| ClassError::GroupMismatch)?;
    if w.group != sub {
        return Err(ClassError::GroupMismatch);
    }
    let ind_w = w.induce(g).map_err(|_| ClassError::GroupMismatch)?;
    let lhs = NamedClass::u_class(&ind_w)?;
    let trivial = RealRep::new(sub, w.dim(), 0, vec![0; sub.half().saturating_sub(1) as usize]).unwrap();
    let ind_triv = trivial.induce(g).map_err(|_| ClassError::GroupMismatch)?;
    // N-bar on the u-class degree: Ind applied to the virtual degree
    let uw = NamedClass::u_class(w)?;
    let norm_deg = {
        // Ind of dim W minus Ind of W
        let dplus = RODegree::from_rep(&ind_triv);
        let dminus = RODegree::from_rep(&ind_w);
        dplus.sub(&dminus)
    };
    let rhs_deg = NamedClass::u_class(&ind_triv)?.degree.add(&norm_deg);
    let induction_identity = lhs.degree == rhs_deg && uw.filtration == Some(0);

    Ok(OrientationCheck { sum_identity, restriction_identity, induction_identity })
}

/// Bidegree consistency of the slice differential
/// d_r u_{2 sigma}^{2^{k-1}} = a^{2^k} f_{2^k - 1}, r = 1 + 2n(2^k - 1).
pub struct DifferentialCheck {
    pub r: i64,
    pub filtration_ok: bool,
    pub degree_ok: bool,
}

impl DifferentialCheck {
    pub fn passes(&self) -> bool {
        self.filtration_ok && self.degree_ok
    }
}

pub fn differential_consistency(e: u32, k: u32) -> DifferentialCheck {
    let group = Cyclic::new(1 << e).unwrap();
    let two_n = group.order() as i64;
    let sigma2 = RealRep::new(group, 0, 2, vec![0; group.half().saturating_sub(1) as usize]).unwrap();
    let sigma = RealRep::new(group, 0, 1, vec![0; group.half().saturating_sub(1) as usize]).unwrap();
    let source = NamedClass::u_class(&sigma2).unwrap().power(1 << (k - 1));
    let target = NamedClass::a_class(&sigma)
        .power(1 << k)
        .product(&NamedClass::f(group, (1i64 << k) - 1))
        .unwrap();
    let r = 1 + two_n * ((1i64 << k) - 1);
    let filtration_ok = match (target.filtration, source.filtration) {
        (Some(t), Some(s)) => t - s == r,
        _ => false,
    };
    // d_r lowers the total degree by one
    let degree_ok = target.degree == source.degree.sub(&RODegree::integer(group, 1));
    DifferentialCheck { r, filtration_ok, degree_ok }
}

/// D = N_2^8 Delta_4^{(2)} . N_4^8 Delta_2^{(4)} . Delta_1^{(8)}, which must
/// land in degree 19 rho_8.
pub fn build_d() -> NamedClass {
    let c2 = Cyclic::new(2).unwrap();
    let c4 = Cyclic::new(4).unwrap();
    let c8 = Cyclic::new(8).unwrap();
    let n1 = norm_degree(&NamedClass::delta(c2, 4).degree, c8).unwrap();
    let n2 = norm_degree(&NamedClass::delta(c4, 2).degree, c8).unwrap();
    let d3 = NamedClass::delta(c8, 1).degree;
    NamedClass { name: "D".into(), degree: n1.add(&n2).add(&d3), filtration: Some(0) }
}

/// omega = (Delta_1^{(8)})^{2^{k+1}} v with v of degree 2^{k+1}(8 - rho_8):
/// the rho-parts cancel and the result is the integer 2^{k+4}.
pub fn build_omega(k: u32) -> NamedClass {
    assert!(k <= 50, "omega exponent out of the supported range");
    let c8 = Cyclic::new(8).unwrap();
    let delta_pow = NamedClass::delta(c8, 1).power(1 << (k + 1));
    let v_degree = RODegree::integer(c8, 8).sub(&RODegree::rho(c8)).scale(1i64 << (k + 1));
    let v = NamedClass { name: "v".into(), degree: v_degree, filtration: Some(0) };
    let omega = delta_pow.product(&v).unwrap();
    NamedClass { name: format!("omega(k={})", k), ..omega }
}

/// Outcome of the periodicity bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeriodicityOutcome {
    MinimalK(u32),
    Fail,
}

/// One divisibility certificate row for the Fixed Point Theorem hypothesis.
#[derive(Clone, Debug)]
pub struct DivisibilityRow {
    pub subgroup: u32,
    pub k: u32,
    /// the factor `N_{2m}^8 Delta_k^{(2m)}` of D whose restriction is
    /// divisible by `Delta_k^{(2m)}`
    pub witness: String,
    /// `Res_{2m}^8 deg D - deg Delta_k^{(2m)}` is a nonnegative rho-multiple
    pub degree_ok: bool,
}

pub struct PeriodicityReport {
    pub outcome: PeriodicityOutcome,
    pub divisibility: Vec<DivisibilityRow>,
}

/// Minimal k with k1 <= k, k2 <= k + 2, k3 <= k + 3, together with the
/// divisibility certificate for D over every divisor chain.
pub fn periodicity_requirements(k1: u32, k2: u32, k3: u32) -> PeriodicityReport {
    let outcome = if k1 == 0 || k2 == 0 || k3 == 0 {
        PeriodicityOutcome::Fail
    } else {
        let k = k1.max(k2.saturating_sub(2)).max(k3.saturating_sub(3)).max(1);
        PeriodicityOutcome::MinimalK(k)
    };
    let d = build_d();
    let ks = [(2u32, k1), (4, k2), (8, k3)];
    let divisibility = ks
        .iter()
        .map(|(two_m, k)| {
            let sub = Cyclic::new(*two_m).unwrap();
            let res = d.degree.restrict(*two_m);
            let delta = NamedClass::delta(sub, *k).degree;
            let diff = res.sub(&delta);
            let degree_ok = diff.as_rho_multiple().map(|j| j >= 0).unwrap_or(false);
            DivisibilityRow {
                subgroup: *two_m,
                k: *k,
                witness: format!("N_{}^8 Delta_{}^{{({})}} divides Res via Res o N", two_m, k, two_m),
                degree_ok,
            }
        })
        .collect();
    PeriodicityReport { outcome, divisibility }
}

/// Does the vanishing-line deduction kill dimension 2^j - 2? True iff
/// 2^j - 2 = -2 mod 256, i.e. j >= 8: the gap in degree -2 transported by
/// 256-periodicity through the fixed-point identification.
pub fn skeleton_deduction(j: u32) -> bool {
    if j == 0 {
        return false;
    }
    // 2^j = 0 mod 256
    j >= 8
}

/// The dimensions 2^{jj} - 2 for jj <= 7 not killed by the deduction, i.e.
/// the possibly-nonzero Kervaire dimensions (positive ones).
pub fn surviving_kervaire_dimensions() -> Vec<i64> {
    (2..=7u32).filter(|jj| !skeleton_deduction(*jj)).map(|jj| (1i64 << jj) - 2).collect()
}

// ---------------------------------------------------------------------------
// Adams chart fixtures
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoLineClass {
    /// h_i h_j with j = i for the squares
    pub i: u32,
    pub j: u32,
    pub s: u32,
    pub t: i64,
    pub survives_e3: bool,
}

impl TwoLineClass {
    pub fn name(&self) -> String {
        if self.i == self.j {
            format!("h{}^2", self.i)
        } else {
            format!("h{}h{}", self.i, self.j)
        }
    }
}

#[derive(Clone, Debug)]
pub struct AdamsFixtures {
    /// h_j at (1, 2^j)
    pub one_line: Vec<(u32, i64)>,
    pub two_line: Vec<TwoLineClass>,
    pub hopf_one_dimensions: Vec<i64>,
    /// d2 h_j = h_0 h_{j-1}^2 for j > 3
    pub d2_rules: Vec<String>,
}

/// Low-degree Adams chart data: the 1-line, the 2-line basis
/// {h_i^2} u {h_i h_j : j > i + 1 >= 1} with t <= tmax, the E3 survivor
/// tags (h0h2, h0h3, h2h4, h2h5, h3h6 and the families h_j^2, h_1 h_j), the
/// Hopf-invariant-one dimensions, and the d2 rule instances.
pub fn adams_fixtures(tmax: i64) -> AdamsFixtures {
    let mut one_line = Vec::new();
    let mut j = 0u32;
    while (1i64 << j) <= tmax {
        one_line.push((j, 1i64 << j));
        j += 1;
    }
    let mut two_line = Vec::new();
    for i in 0..63u32 {
        let ti = 1i64 << i;
        if 2 * ti > tmax {
            break;
        }
        for jj in i..63u32 {
            if jj != i && jj < i + 2 {
                continue;
            }
            let t = ti + (1i64 << jj);
            if t > tmax {
                break;
            }
            let survives = i == jj
                || i == 1
                || matches!((i, jj), (0, 2) | (0, 3) | (2, 4) | (2, 5) | (3, 6));
            two_line.push(TwoLineClass { i, j: jj, s: 2, t, survives_e3: survives });
        }
    }
    two_line.sort_by_key(|c| (c.t, c.i));
    let mut d2_rules = Vec::new();
    for (jj, t) in &one_line {
        if *jj > 3 && *t <= tmax {
            d2_rules.push(format!("d2 h{} = h0 h{}^2", jj, jj - 1));
        }
    }
    AdamsFixtures { one_line, two_line, hopf_one_dimensions: vec![0, 1, 3, 7], d2_rules }
}
