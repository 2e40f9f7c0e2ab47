//! Truncated multivariate power series over an exact coefficient ring.
//!
//! A series is a finite association from exponent tuples to nonzero ring
//! elements, with every stored tuple of total degree <= cutoff. All ring
//! operations truncate by total degree.

use std::collections::BTreeMap;
use std::fmt;

use crate::ring::Ring;

/// Exponent tuple ordered by (total degree, lexicographic).
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn total(&self) -> u32 {
        self.0.iter().map(|e| *e as u32).sum()
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total().cmp(&other.total()).then_with(|| self.0.cmp(&other.0))
    }
}

#[derive(Clone, PartialEq)]
pub struct TruncSeries<R: Ring> {
    ring: R,
    vars: Vec<String>,
    cutoff: u32,
    coeffs: BTreeMap<Mono, R::Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesError {
    VarMismatch,
    CutoffMismatch,
    NotUnivariate,
    NonzeroConstantTerm,
    NonUnitLinearCoefficient,
    NotDivisible,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SeriesError::VarMismatch => "variable lists differ",
            SeriesError::CutoffMismatch => "cutoffs differ",
            SeriesError::NotUnivariate => "series is not univariate",
            SeriesError::NonzeroConstantTerm => "substituted series has nonzero constant term",
            SeriesError::NonUnitLinearCoefficient => "linear coefficient is not a unit",
            SeriesError::NotDivisible => "coefficient not divisible",
        };
        write!(f, "{}", s)
    }
}

impl std::error::Error for SeriesError {}

impl<R: Ring> TruncSeries<R> {
    pub fn zero(ring: R, vars: &[&str], cutoff: u32) -> Self {
        TruncSeries {
            ring,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            cutoff,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(ring: R, vars: &[&str], cutoff: u32, c: R::Elem) -> Self {
        let mut s = Self::zero(ring, vars, cutoff);
        s.set(Mono(vec![0; s.vars.len()]), c);
        s
    }

    /// The i-th variable as a series.
    pub fn var(ring: R, vars: &[&str], cutoff: u32, i: usize) -> Self {
        let one = ring.one();
        let mut s = Self::zero(ring, vars, cutoff);
        let mut exp = vec![0u16; s.vars.len()];
        exp[i] = 1;
        s.set(Mono(exp), one);
        s
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn vars(&self) -> &[String] {
        &self.vars
    }
    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }
    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &R::Elem)> {
        self.coeffs.iter()
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: &[u16]) -> R::Elem {
        self.coeffs
            .get(&Mono(exp.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// Insert, dropping zeros and over-cutoff monomials.
    pub fn set(&mut self, m: Mono, c: R::Elem) {
        debug_assert_eq!(m.0.len(), self.vars.len());
        if m.total() > self.cutoff || self.ring.is_zero(&c) {
            self.coeffs.remove(&m);
        } else {
            self.coeffs.insert(m, c);
        }
    }

    pub fn add_to(&mut self, m: Mono, c: R::Elem) {
        if m.total() > self.cutoff {
            return;
        }
        let cur = self.coeffs.get(&m).cloned().unwrap_or_else(|| self.ring.zero());
        let new = self.ring.add(&cur, &c);
        self.set(m, new);
    }

    fn compat(&self, other: &Self) -> Result<(), SeriesError> {
        if self.vars != other.vars {
            return Err(SeriesError::VarMismatch);
        }
        if self.cutoff != other.cutoff {
            return Err(SeriesError::CutoffMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.compat(other).expect("series add");
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_to(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = self.ring.neg(c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Self::zero(self.ring.clone(), &self.var_refs(), self.cutoff);
        for (m, x) in &self.coeffs {
            out.set(m.clone(), self.ring.mul(x, c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.compat(other).expect("series mul");
        let mut out = Self::zero(self.ring.clone(), &self.var_refs(), self.cutoff);
        for (ma, ca) in &self.coeffs {
            let ta = ma.total();
            for (mb, cb) in &other.coeffs {
                if ta + mb.total() > self.cutoff {
                    continue;
                }
                let exp: Vec<u16> = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                out.add_to(Mono(exp), self.ring.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.ring.clone(), &self.var_refs(), self.cutoff, self.ring.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    /// Truncate to a lower cutoff.
    pub fn truncate(&self, cutoff: u32) -> Self {
        let mut out = Self::zero(self.ring.clone(), &self.var_refs(), cutoff);
        for (m, c) in &self.coeffs {
            if m.total() <= cutoff {
                out.set(m.clone(), c.clone());
            }
        }
        out
    }

    /// Apply a map to every coefficient (e.g. a ring morphism), producing a
    /// series over the target ring.
    pub fn map_coeffs<S: Ring>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> TruncSeries<S> {
        let mut out = TruncSeries::zero(ring, &self.var_refs(), self.cutoff);
        for (m, c) in &self.coeffs {
            out.set(m.clone(), f(c));
        }
        out
    }

    /// Rename the variable list (same arity).
    pub fn rename_vars(&self, vars: &[&str]) -> Self {
        assert_eq!(vars.len(), self.vars.len());
        let mut out = Self::zero(self.ring.clone(), vars, self.cutoff);
        for (m, c) in &self.coeffs {
            out.set(m.clone(), c.clone());
        }
        out
    }

    /// Exchange two variables.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.ring.clone(), &self.var_refs(), self.cutoff);
        for (m, c) in &self.coeffs {
            let mut exp = m.0.clone();
            exp.swap(i, j);
            out.set(Mono(exp), c.clone());
        }
        out
    }

    /// Substitute x_i := c * x_i.
    pub fn scale_var(&self, i: usize, c: &R::Elem) -> Self {
        let mut out = Self::zero(self.ring.clone(), &self.var_refs(), self.cutoff);
        let mut pows: Vec<R::Elem> = vec![self.ring.one()];
        let maxe = self.coeffs.keys().map(|m| m.0[i]).max().unwrap_or(0);
        for k in 1..=maxe {
            let prev = pows[(k - 1) as usize].clone();
            pows.push(self.ring.mul(&prev, c));
        }
        for (m, x) in &self.coeffs {
            out.set(m.clone(), self.ring.mul(x, &pows[m.0[i] as usize]));
        }
        out
    }

    /// Set variable i to zero.
    pub fn set_var_zero(&self, i: usize) -> Self {
        let mut out = Self::zero(self.ring.clone(), &self.var_refs(), self.cutoff);
        for (m, c) in &self.coeffs {
            if m.0[i] == 0 {
                out.set(m.clone(), c.clone());
            }
        }
        out
    }

    /// Partial derivative with respect to variable i.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.ring.clone(), &self.var_refs(), self.cutoff);
        for (m, c) in &self.coeffs {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exp = m.0.clone();
            exp[i] = e - 1;
            out.add_to(Mono(exp), self.ring.mul(c, &self.ring.from_i64(e as i64)));
        }
        out
    }

    /// Substitute each variable by the corresponding series (all subs share
    /// vars/cutoff and must have zero constant term).
    ///
    /// For a univariate outer series this is series composition, the
    /// primitive behind conjugation of formal group laws.
    pub fn substitute(&self, subs: &[&TruncSeries<R>]) -> Result<TruncSeries<R>, SeriesError> {
        assert_eq!(subs.len(), self.vars.len());
        let target = subs.first().expect("at least one variable");
        for s in subs {
            target.compat(s)?;
            if !s.ring.is_zero(&s.coeff(&vec![0; s.vars.len()])) {
                return Err(SeriesError::NonzeroConstantTerm);
            }
        }
        // cache powers of each substituted series
        let mut maxes = vec![0u16; self.vars.len()];
        for m in self.coeffs.keys() {
            for (i, e) in m.0.iter().enumerate() {
                maxes[i] = maxes[i].max(*e);
            }
        }
        let one = TruncSeries::constant(
            target.ring.clone(),
            &target.var_refs(),
            target.cutoff,
            target.ring.one(),
        );
        let mut pows: Vec<Vec<TruncSeries<R>>> = Vec::new();
        for (i, s) in subs.iter().enumerate() {
            let mut v = vec![one.clone()];
            for k in 1..=maxes[i] {
                let nxt = v[(k - 1) as usize].mul(s);
                v.push(nxt);
            }
            pows.push(v);
        }
        let mut out = TruncSeries::zero(target.ring.clone(), &target.var_refs(), target.cutoff);
        for (m, c) in &self.coeffs {
            let mut term = one.scale(c);
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    term = term.mul(&pows[i][*e as usize]);
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    pub fn fmt_with(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(m, c)| {
                let mono: Vec<String> = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(i, e)| {
                        if *e == 1 {
                            self.vars[i].clone()
                        } else {
                            format!("{}^{}", self.vars[i], e)
                        }
                    })
                    .collect();
                let cs = self.ring.fmt_elem(c);
                if mono.is_empty() {
                    cs
                } else if cs == "1" {
                    mono.join("*")
                } else {
                    format!("({})*{}", cs, mono.join("*"))
                }
            })
            .collect();
        terms.join(" + ")
    }
}

impl<R: Ring> fmt::Debug for TruncSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries[{}; O({})]", self.fmt_with(), self.cutoff + 1)
    }
}

/// View a univariate series as a series in a larger variable list, placed at
/// variable i.
pub fn inject<R: Ring>(f: &TruncSeries<R>, vars: &[&str], i: usize) -> TruncSeries<R> {
    assert_eq!(f.vars().len(), 1);
    let mut out = TruncSeries::zero(f.ring().clone(), vars, f.cutoff());
    for (m, c) in f.iter() {
        let mut exp = vec![0u16; vars.len()];
        exp[i] = m.0[0];
        out.set(Mono(exp), c.clone());
    }
    out
}

/// f(g) for univariate f; g may be multivariate with zero constant term.
pub fn compose<R: Ring>(f: &TruncSeries<R>, g: &TruncSeries<R>) -> Result<TruncSeries<R>, SeriesError> {
    if f.vars().len() != 1 {
        return Err(SeriesError::NotUnivariate);
    }
    f.substitute(&[g])
}

/// Compositional inverse of a univariate series f = a1 t + ... with a1 a
/// unit: returns r with f(r) = r(f) = t up to the cutoff.
pub fn reverse<R: Ring>(f: &TruncSeries<R>) -> Result<TruncSeries<R>, SeriesError> {
    if f.vars().len() != 1 {
        return Err(SeriesError::NotUnivariate);
    }
    let ring = f.ring().clone();
    if !ring.is_zero(&f.coeff(&[0])) {
        return Err(SeriesError::NonzeroConstantTerm);
    }
    let a1 = f.coeff(&[1]);
    let a1inv = ring.inv(&a1).ok_or(SeriesError::NonUnitLinearCoefficient)?;
    let vars = [f.vars()[0].as_str()];
    let cutoff = f.cutoff();
    // r = a1^{-1} t; then fix degree by degree: if f(r) = t + c t^k + ...,
    // subtract a1^{-1} c t^k from r.
    let t = TruncSeries::var(ring.clone(), &vars, cutoff, 0);
    let mut r = t.scale(&a1inv);
    for k in 2..=cutoff {
        let fr = compose(f, &r)?;
        let c = fr.coeff(&[k as u16]);
        if ring.is_zero(&c) {
            continue;
        }
        let mut corr = TruncSeries::zero(ring.clone(), &vars, cutoff);
        corr.set(Mono(vec![k as u16]), ring.neg(&ring.mul(&a1inv, &c)));
        r = r.add(&corr);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{GfPrime, IntRing, RatRing};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn zvar(cutoff: u32) -> TruncSeries<IntRing> {
        TruncSeries::var(IntRing, &["t"], cutoff, 0)
    }

    #[test]
    fn compose_identity() {
        // f = t composed with any g returns g
        let t = zvar(6);
        let g = t.add(&t.mul(&t).scale(&BigInt::from(3)));
        assert_eq!(compose(&t, &g).unwrap(), g);
    }

    #[test]
    fn compose_hand_expansion() {
        // f = t^2, g = t + t^3, cutoff 4 -> t^2 + 2 t^4
        let t = zvar(4);
        let f = t.mul(&t);
        let g = t.add(&t.pow(3));
        let h = compose(&f, &g).unwrap();
        let mut expect = TruncSeries::zero(IntRing, &["t"], 4);
        expect.set(Mono(vec![2]), BigInt::from(1));
        expect.set(Mono(vec![4]), BigInt::from(2));
        assert_eq!(h, expect);
    }

    #[test]
    fn compose_rejects_constant_term() {
        let t = zvar(4);
        let g = t.add(&TruncSeries::constant(IntRing, &["t"], 4, BigInt::from(1)));
        assert_eq!(compose(&t, &g).unwrap_err(), SeriesError::NonzeroConstantTerm);
    }

    /// Independent Lagrange-inversion oracle over Q:
    /// [t^n] f^{-1} = (1/n) [t^{n-1}] (t/f)^n.
    fn lagrange_reverse(f: &TruncSeries<RatRing>) -> TruncSeries<RatRing> {
        let cutoff = f.cutoff();
        let ring = RatRing;
        // t/f = 1 / (f/t); build f/t as a series with constant term
        let mut foft = TruncSeries::zero(ring, &["t"], cutoff);
        for (m, c) in f.iter() {
            foft.set(Mono(vec![m.0[0] - 1]), c.clone());
        }
        // invert the unit series foft: w with w*foft = 1
        let mut w = TruncSeries::constant(ring, &["t"], cutoff, foft.coeff(&[0]).recip());
        for _ in 0..cutoff + 1 {
            // Newton: w <- w(2 - foft*w)
            let two = TruncSeries::constant(ring, &["t"], cutoff, BigRational::from_integer(2.into()));
            w = w.mul(&two.sub(&foft.mul(&w)));
        }
        let mut out = TruncSeries::zero(ring, &["t"], cutoff);
        for n in 1..=cutoff {
            let wn = w.pow(n);
            let c = wn.coeff(&[(n - 1) as u16]);
            out.set(
                Mono(vec![n as u16]),
                c / BigRational::from_integer(BigInt::from(n)),
            );
        }
        out
    }

    #[test]
    fn reverse_matches_lagrange_oracle() {
        // f = t + t^2 -> t - t^2 + 2t^3 - 5t^4 at cutoff 4
        let t = TruncSeries::<RatRing>::var(RatRing, &["t"], 4, 0);
        let f = t.add(&t.mul(&t));
        let r = reverse(&f).unwrap();
        let oracle = lagrange_reverse(&f);
        assert_eq!(r, oracle);
        let expect: Vec<i64> = vec![1, -1, 2, -5];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(r.coeff(&[(k + 1) as u16]), BigRational::from_integer((*e).into()));
        }
        // round trips
        assert_eq!(compose(&f, &r).unwrap(), t);
        assert_eq!(compose(&r, &f).unwrap(), t);
    }

    #[test]
    fn reverse_identity_and_f2() {
        let t = zvar(5);
        assert_eq!(reverse(&t).unwrap(), t);

        let f2 = GfPrime::new(2).unwrap();
        let t2 = TruncSeries::var(f2, &["t"], 5, 0);
        let f = t2.add(&t2.mul(&t2));
        let r = reverse(&f).unwrap();
        assert_eq!(compose(&f, &r).unwrap(), t2);
        assert_eq!(compose(&r, &f).unwrap(), t2);
    }

    #[test]
    fn reverse_rejects_nonunit() {
        let t = zvar(4);
        let f = t.scale(&BigInt::from(2));
        assert_eq!(reverse(&f).unwrap_err(), SeriesError::NonUnitLinearCoefficient);
    }

    #[test]
    fn compose_associative_up_to_cutoff() {
        let t = zvar(7);
        let f = t.add(&t.pow(2).scale(&BigInt::from(2)));
        let g = t.add(&t.pow(3));
        let h = t.add(&t.pow(2)).add(&t.pow(4).scale(&BigInt::from(-1)));
        let left = compose(&compose(&f, &g).unwrap(), &h).unwrap();
        let right = compose(&f, &compose(&g, &h).unwrap()).unwrap();
        assert_eq!(left, right);
    }
}
