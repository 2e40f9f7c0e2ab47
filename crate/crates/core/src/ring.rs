//! Exact coefficient rings.
//!
//! Rings are context objects (a la `Ring`/`Elem` in computer-algebra crates):
//! the ring value carries the parameters (characteristic, modulus polynomial,
//! 2-adic precision) and all arithmetic goes through it. `IntRing` and
//! `RatRing` delegate to num-bigint / num-rational.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Context-object ring interface. Elements do not know their ring; every
/// operation takes the ring explicitly so parametrized rings (prime fields,
/// cyclotomic quotients) fit the same mould as `BigInt`/`BigRational`.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// Exact multiplicative inverse, `None` when `a` is not a unit.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Exact division by a positive integer, `None` when not uniquely possible.
    fn div_exact_u64(&self, a: &Self::Elem, n: u64) -> Option<Self::Elem>;

    /// Characteristic when finite and prime, used by height computations.
    fn characteristic(&self) -> Option<u64> {
        None
    }

    fn fmt_elem(&self, a: &Self::Elem) -> String;
}

fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// Integers and rationals
// ---------------------------------------------------------------------------

/// The ring of integers, elements are `BigInt`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct IntRing;

impl Ring for IntRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        if a.magnitude() == &BigUint::one() {
            Some(a.clone())
        } else {
            None
        }
    }
    fn div_exact_u64(&self, a: &BigInt, n: u64) -> Option<BigInt> {
        let n = BigInt::from(n);
        if (a % &n).is_zero() {
            Some(a / n)
        } else {
            None
        }
    }
    fn fmt_elem(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

/// The field of rationals, elements are `BigRational`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct RatRing;

impl Ring for RatRing {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn div_exact_u64(&self, a: &BigRational, n: u64) -> Option<BigRational> {
        if n == 0 {
            return None;
        }
        Some(a / BigRational::from_integer(BigInt::from(n)))
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

// ---------------------------------------------------------------------------
// Prime fields
// ---------------------------------------------------------------------------

/// The prime field F_p, elements reduced representatives in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GfPrime {
    p: u64,
}

impl GfPrime {
    pub fn new(p: u64) -> Result<Self, RingError> {
        if !is_prime_u64(p) {
            return Err(RingError::NotPrime(p));
        }
        Ok(GfPrime { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn red(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.red(acc as i128 * a as i128);
            }
            a = self.red(a as i128 * a as i128);
            e >>= 1;
        }
        acc
    }
}

impl Ring for GfPrime {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.red(*a as i128 + *b as i128)
    }
    fn neg(&self, a: &u64) -> u64 {
        self.red(-(*a as i128))
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.red(*a as i128 * *b as i128)
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.red(n as i128)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn div_exact_u64(&self, a: &u64, n: u64) -> Option<u64> {
        let n = n % self.p;
        match self.inv(&n) {
            Some(ninv) => Some(self.mul(a, &ninv)),
            None => None,
        }
    }
    fn characteristic(&self) -> Option<u64> {
        Some(self.p)
    }
    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }
}

// ---------------------------------------------------------------------------
// Finite fields F_{p^n}
// ---------------------------------------------------------------------------

/// `F_{p^n} = F_p[x]/(modulus)`, modulus monic irreducible of degree n.
/// Elements are coefficient vectors of length n (low degree first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfExt {
    base: GfPrime,
    modulus: Arc<Vec<u64>>, // length n+1, monic
}

fn poly_deg(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|c| *c != 0)
}

fn poly_rem(base: &GfPrime, mut a: Vec<u64>, m: &[u64]) -> Vec<u64> {
    let dm = poly_deg(m).expect("zero modulus");
    let lead_inv = base.inv(&m[dm]).expect("modulus lead not invertible");
    while let Some(da) = poly_deg(&a) {
        if da < dm {
            break;
        }
        let c = base.mul(&a[da], &lead_inv);
        for i in 0..=dm {
            let t = base.mul(&c, &m[i]);
            a[da - dm + i] = base.sub(&a[da - dm + i], &t);
        }
    }
    a.truncate(dm);
    a.resize(dm, 0);
    a
}

fn poly_mul(base: &GfPrime, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = base.add(&out[i + j], &base.mul(x, y));
        }
    }
    out
}

impl GfExt {
    /// Validates that `modulus` is monic of degree >= 1 and irreducible over
    /// F_p by trial division against all monic polynomials of degree <= n/2.
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self, RingError> {
        let base = GfPrime::new(p)?;
        let n = match poly_deg(&modulus) {
            Some(n) if n >= 1 => n,
            _ => return Err(RingError::BadModulus("degree must be >= 1".into())),
        };
        if modulus[n] != 1 {
            return Err(RingError::BadModulus("modulus must be monic".into()));
        }
        if modulus.len() != n + 1 {
            return Err(RingError::BadModulus("trailing zero coefficients".into()));
        }
        // trial factorization: no monic divisor of degree 1..=n/2
        let mut trial = vec![0u64; n / 2 + 1];
        fn search(base: &GfPrime, modulus: &[u64], trial: &mut Vec<u64>, deg: usize, pos: usize) -> bool {
            if pos == deg {
                let mut t = trial[..=deg].to_vec();
                t[deg] = 1;
                let r = poly_rem(base, modulus.to_vec(), &t);
                return poly_deg(&r).is_none();
            }
            for c in 0..base.p() {
                trial[pos] = c;
                if search(base, modulus, trial, deg, pos + 1) {
                    return true;
                }
            }
            false
        }
        for deg in 1..=n / 2 {
            if search(&base, &modulus, &mut trial, deg, 0) {
                return Err(RingError::BadModulus("modulus is reducible".into()));
            }
        }
        Ok(GfExt { base, modulus: Arc::new(modulus) })
    }

    pub fn p(&self) -> u64 {
        self.base.p()
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// The class of x, a generator of the field extension.
    pub fn gen(&self) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        if self.degree() == 1 {
            v = poly_rem(&self.base, vec![0, 1], &self.modulus);
        } else {
            v[1] = 1;
        }
        v
    }

    /// Coordinates of `a` as an F_p-vector.
    pub fn coords<'a>(&self, a: &'a [u64]) -> &'a [u64] {
        a
    }
}

impl Ring for GfExt {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }
    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[0] = 1 % self.p();
        v
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|c| *c == 0)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        poly_rem(&self.base, poly_mul(&self.base, a, b), &self.modulus)
    }
    fn from_i64(&self, n: i64) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[0] = self.base.from_i64(n);
        v
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        // a^(q-2) with q = p^n
        let q = (0..self.degree()).fold(1u128, |acc, _| acc * self.p() as u128);
        let mut e = q - 2;
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Some(acc)
    }
    fn div_exact_u64(&self, a: &Vec<u64>, n: u64) -> Option<Vec<u64>> {
        let ninv = self.base.div_exact_u64(&1, n)?;
        Some(a.iter().map(|x| self.base.mul(x, &ninv)).collect())
    }
    fn characteristic(&self) -> Option<u64> {
        Some(self.p())
    }
    fn fmt_elem(&self, a: &Vec<u64>) -> String {
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 if *c == 1 => "x".into(),
                1 => format!("{}*x", c),
                _ if *c == 1 => format!("x^{}", i),
                _ => format!("{}*x^{}", c, i),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

// ---------------------------------------------------------------------------
// Cyclotomic fields Q(zeta_{2^e}) and their 2-adic truncations
// ---------------------------------------------------------------------------

/// `Q(zeta_{2^e}) = Q[z]/(z^m + 1)` with `m = 2^(e-1)`. For e = 1 this is Q with
/// z = -1. Elements are coordinate vectors of length m over Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycloField {
    e: u32,
}

pub type CycElem = Vec<BigRational>;

impl CycloField {
    pub fn new(e: u32) -> Result<Self, RingError> {
        if e == 0 {
            return Err(RingError::BadModulus("e must be >= 1".into()));
        }
        Ok(CycloField { e })
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// m = 2^(e-1), the degree of the extension.
    pub fn dim(&self) -> usize {
        1usize << (self.e - 1)
    }

    /// zeta, the class of z (a primitive 2^e-th root of unity).
    pub fn zeta(&self) -> CycElem {
        self.zeta_pow(1)
    }

    /// zeta^k for any integer k.
    pub fn zeta_pow(&self, k: i64) -> CycElem {
        let m = self.dim() as i64;
        let k = k.rem_euclid(2 * m);
        let mut v = vec![BigRational::zero(); self.dim()];
        if k < m {
            v[k as usize] = BigRational::one();
        } else {
            v[(k - m) as usize] = -BigRational::one();
        }
        v
    }

    /// `pi = zeta - 1`, the uniformizer of `Z_2[zeta]`.
    pub fn pi(&self) -> CycElem {
        self.sub(&self.zeta(), &self.one())
    }

    /// An element lies in `Z_2[zeta]` iff every coordinate has odd denominator.
    pub fn is_integral(&self, a: &CycElem) -> bool {
        a.iter().all(|c| c.denom().is_odd())
    }

    /// Reduction A -> A/(pi) = F_2, defined on integral elements only:
    /// z |-> 1, 2 |-> 0, so the image is the parity of the coordinate sum.
    pub fn reduce_mod_pi(&self, a: &CycElem) -> Option<u64> {
        if !self.is_integral(a) {
            return None;
        }
        let mut parity = 0u64;
        for c in a {
            if c.numer().is_odd() {
                parity ^= 1;
            }
        }
        Some(parity)
    }

    fn reduce_poly(&self, mut raw: Vec<BigRational>) -> CycElem {
        // z^m = -1
        let m = self.dim();
        while raw.len() > m {
            let c = raw.pop().unwrap();
            let k = raw.len() - m;
            raw[k] -= c;
        }
        raw.resize(m, BigRational::zero());
        raw
    }
}

trait OddCheck {
    fn is_odd(&self) -> bool;
}
impl OddCheck for BigInt {
    fn is_odd(&self) -> bool {
        num_integer::Integer::is_odd(self)
    }
}

impl Ring for CycloField {
    type Elem = CycElem;

    fn zero(&self) -> CycElem {
        vec![BigRational::zero(); self.dim()]
    }
    fn one(&self) -> CycElem {
        let mut v = self.zero();
        v[0] = BigRational::one();
        v
    }
    fn is_zero(&self, a: &CycElem) -> bool {
        a.iter().all(|c| c.is_zero())
    }
    fn add(&self, a: &CycElem, b: &CycElem) -> CycElem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn neg(&self, a: &CycElem) -> CycElem {
        a.iter().map(|x| -x).collect()
    }
    fn mul(&self, a: &CycElem, b: &CycElem) -> CycElem {
        let m = self.dim();
        let mut raw = vec![BigRational::zero(); 2 * m];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                raw[i + j] += x * y;
            }
        }
        self.reduce_poly(raw)
    }
    fn from_i64(&self, n: i64) -> CycElem {
        let mut v = self.zero();
        v[0] = BigRational::from_integer(BigInt::from(n));
        v
    }
    fn inv(&self, a: &CycElem) -> Option<CycElem> {
        if self.is_zero(a) {
            return None;
        }
        // extended Euclid in Q[z] against z^m + 1
        let m = self.dim();
        let mut phi = vec![BigRational::zero(); m + 1];
        phi[0] = BigRational::one();
        phi[m] = BigRational::one();
        let trim = |v: &mut Vec<BigRational>| {
            while v.last().map(|c| c.is_zero()).unwrap_or(false) {
                v.pop();
            }
        };
        let mut r0 = phi;
        let mut r1 = a.clone();
        trim(&mut r1);
        let mut s0: Vec<BigRational> = vec![];
        let mut s1 = vec![BigRational::one()];
        while !r1.is_empty() {
            // divide r0 by r1
            let mut rem = r0.clone();
            let mut q = vec![BigRational::zero(); rem.len().saturating_sub(r1.len()) + 1];
            while rem.len() >= r1.len() && !rem.is_empty() {
                let c = rem.last().unwrap() / r1.last().unwrap();
                let shift = rem.len() - r1.len();
                q[shift] = c.clone();
                for (i, y) in r1.iter().enumerate() {
                    let t = &c * y;
                    rem[shift + i] -= t;
                }
                trim(&mut rem);
            }
            // s_new = s0 - q*s1
            let mut qs1 = vec![BigRational::zero(); q.len() + s1.len()];
            for (i, x) in q.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in s1.iter().enumerate() {
                    let t = x * y;
                    qs1[i + j] += t;
                }
            }
            let mut snew = vec![BigRational::zero(); s0.len().max(qs1.len())];
            for (i, x) in s0.iter().enumerate() {
                snew[i] += x;
            }
            for (i, x) in qs1.iter().enumerate() {
                snew[i] -= x;
            }
            trim(&mut snew);
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = snew;
        }
        // r0 = gcd (a nonzero constant since z^m+1 is irreducible and a != 0)
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let mut out = self.zero();
        for (i, x) in s0.iter().enumerate() {
            out[i] = x * &c; // s0 has degree < m
        }
        Some(out)
    }
    fn div_exact_u64(&self, a: &CycElem, n: u64) -> Option<CycElem> {
        if n == 0 {
            return None;
        }
        let n = BigRational::from_integer(BigInt::from(n));
        Some(a.iter().map(|x| x / &n).collect())
    }
    fn fmt_elem(&self, a: &CycElem) -> String {
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 if c.is_one() => "z".into(),
                1 => format!("{}*z", c),
                _ if c.is_one() => format!("z^{}", i),
                _ => format!("{}*z^{}", c, i),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

/// `Z[z]/(z^m + 1, 2^N)`: integer cyclotomic coordinates truncated 2-adically.
/// Equality is congruence mod 2^N. N <= 63.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycloMod2 {
    e: u32,
    nbits: u32,
}

pub type Cyc2Elem = Vec<u64>;

impl CycloMod2 {
    pub fn new(e: u32, nbits: u32) -> Result<Self, RingError> {
        if e == 0 {
            return Err(RingError::BadModulus("e must be >= 1".into()));
        }
        if nbits == 0 || nbits > 63 {
            return Err(RingError::BadModulus("precision must be in 1..=63".into()));
        }
        Ok(CycloMod2 { e, nbits })
    }

    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn nbits(&self) -> u32 {
        self.nbits
    }
    pub fn dim(&self) -> usize {
        1usize << (self.e - 1)
    }
    fn mask(&self) -> u64 {
        (1u64 << self.nbits) - 1
    }

    pub fn zeta(&self) -> Cyc2Elem {
        let mut v = self.zero();
        if self.dim() == 1 {
            v[0] = self.mask(); // z = -1
        } else {
            v[1] = 1;
        }
        v
    }

    /// Reduce an integral element of Q(zeta_{2^e}) mod 2^N.
    pub fn from_cyclo(&self, field: &CycloField, a: &CycElem) -> Option<Cyc2Elem> {
        assert_eq!(field.e(), self.e);
        if !field.is_integral(a) {
            return None;
        }
        let modulus = BigInt::from(1u64) << self.nbits;
        let mut out = self.zero();
        for (i, c) in a.iter().enumerate() {
            // c = num/den with den odd: value = num * den^{-1} mod 2^N
            let num = c.numer().mod_floor_big(&modulus);
            let den = c.denom().mod_floor_big(&modulus);
            let deninv = inv_mod_pow2(den, self.nbits);
            out[i] = (num.wrapping_mul(deninv)) & self.mask();
        }
        Some(out)
    }
}

trait ModFloorBig {
    fn mod_floor_big(&self, m: &BigInt) -> u64;
}
impl ModFloorBig for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> u64 {
        use num_integer::Integer;
        let r = self.mod_floor(m);
        let (_, digits) = r.to_u64_digits();
        *digits.first().unwrap_or(&0)
    }
}

/// Inverse of an odd number mod 2^nbits by Newton iteration.
fn inv_mod_pow2(a: u64, nbits: u32) -> u64 {
    debug_assert!(a & 1 == 1);
    let mask = (1u64 << nbits) - 1;
    let mut x = 1u64;
    for _ in 0..7 {
        x = x.wrapping_mul(2u64.wrapping_sub(a.wrapping_mul(x))) & mask;
    }
    x
}

impl Ring for CycloMod2 {
    type Elem = Cyc2Elem;

    fn zero(&self) -> Cyc2Elem {
        vec![0; self.dim()]
    }
    fn one(&self) -> Cyc2Elem {
        let mut v = self.zero();
        v[0] = 1;
        v
    }
    fn is_zero(&self, a: &Cyc2Elem) -> bool {
        a.iter().all(|c| c & self.mask() == 0)
    }
    fn add(&self, a: &Cyc2Elem, b: &Cyc2Elem) -> Cyc2Elem {
        a.iter().zip(b).map(|(x, y)| x.wrapping_add(*y) & self.mask()).collect()
    }
    fn neg(&self, a: &Cyc2Elem) -> Cyc2Elem {
        a.iter().map(|x| x.wrapping_neg() & self.mask()).collect()
    }
    fn mul(&self, a: &Cyc2Elem, b: &Cyc2Elem) -> Cyc2Elem {
        let m = self.dim();
        let mut raw = vec![0u64; 2 * m];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                raw[i + j] = raw[i + j].wrapping_add(x.wrapping_mul(*y));
            }
        }
        // z^m = -1
        let mut out = self.zero();
        for i in 0..m {
            out[i] = raw[i].wrapping_sub(raw[i + m]) & self.mask();
        }
        out
    }
    fn from_i64(&self, n: i64) -> Cyc2Elem {
        let mut v = self.zero();
        v[0] = (n as u64) & self.mask();
        v
    }
    fn inv(&self, a: &Cyc2Elem) -> Option<Cyc2Elem> {
        // unit iff coordinate sum is odd (image in F_2 under z |-> 1, 2 |-> 0)
        let parity = a.iter().fold(0u64, |acc, x| acc ^ (x & 1));
        if parity == 0 {
            return None;
        }
        // Newton: x <- x(2 - a x); x0 = 1 works mod 2 in F_2[z]/(z+1)^m only
        // when a = 1 mod (2, z-1)^1; iterate enough times for nilpotents too.
        let mut x = self.one();
        for _ in 0..(self.nbits + self.e + 2) {
            let ax = self.mul(a, &x);
            let two_minus = self.sub(&self.from_i64(2), &ax);
            x = self.mul(&x, &two_minus);
        }
        let check = self.mul(a, &x);
        if check == self.one() {
            Some(x)
        } else {
            None
        }
    }
    fn div_exact_u64(&self, a: &Cyc2Elem, n: u64) -> Option<Cyc2Elem> {
        if n % 2 == 1 {
            let ninv = inv_mod_pow2(n & self.mask(), self.nbits);
            return Some(a.iter().map(|x| x.wrapping_mul(ninv) & self.mask()).collect());
        }
        None
    }
    fn fmt_elem(&self, a: &Cyc2Elem) -> String {
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 if *c == 1 => "z".into(),
                1 => format!("{}*z", c),
                _ if *c == 1 => format!("z^{}", i),
                _ => format!("{}*z^{}", c, i),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

// ---------------------------------------------------------------------------
// Runtime descriptor
// ---------------------------------------------------------------------------

/// Runtime description of a coefficient ring, validated at construction.
/// Used at the CLI boundary; computation happens in the typed rings above.
#[derive(Clone, Debug, PartialEq)]
pub enum CoefRing {
    Integers,
    Rationals,
    PrimeField(u64),
    FiniteField { p: u64, modulus: Vec<u64> },
    CyclotomicMod2 { e: u32, nbits: u32 },
}

impl CoefRing {
    pub fn validate(&self) -> Result<(), RingError> {
        match self {
            CoefRing::Integers | CoefRing::Rationals => Ok(()),
            CoefRing::PrimeField(p) => GfPrime::new(*p).map(|_| ()),
            CoefRing::FiniteField { p, modulus } => GfExt::new(*p, modulus.clone()).map(|_| ()),
            CoefRing::CyclotomicMod2 { e, nbits } => CycloMod2::new(*e, *nbits).map(|_| ()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingError {
    NotPrime(u64),
    BadModulus(String),
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::NotPrime(p) => write!(f, "{} is not prime", p),
            RingError::BadModulus(s) => write!(f, "bad modulus: {}", s),
        }
    }
}

impl std::error::Error for RingError {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gfp_rejects_composite() {
        assert!(GfPrime::new(6).is_err());
        assert!(GfPrime::new(1).is_err());
        assert!(GfPrime::new(7).is_ok());
    }

    #[test]
    fn gfext_irreducibility() {
        // x^2 + 1 is irreducible over F_3, reducible over F_5
        assert!(GfExt::new(3, vec![1, 0, 1]).is_ok());
        assert!(GfExt::new(5, vec![1, 0, 1]).is_err());
        // x^2 + x + 1 over F_2
        assert!(GfExt::new(2, vec![1, 1, 1]).is_ok());
        assert!(GfExt::new(2, vec![1, 0, 1]).is_err()); // (x+1)^2
    }

    #[test]
    fn gfext_field_ops() {
        let f9 = GfExt::new(3, vec![1, 0, 1]).unwrap();
        let x = f9.gen();
        // x^2 = -1 = 2
        assert_eq!(f9.mul(&x, &x), f9.from_i64(2));
        for a in 0..3u64 {
            for b in 0..3u64 {
                let v = vec![a, b];
                if f9.is_zero(&v) {
                    continue;
                }
                let vi = f9.inv(&v).unwrap();
                assert_eq!(f9.mul(&v, &vi), f9.one());
            }
        }
    }

    #[test]
    fn cyclo_field_basics() {
        for e in 1..=3u32 {
            let k = CycloField::new(e).unwrap();
            let z = k.zeta();
            // zeta has order exactly 2^e
            let mut p = k.one();
            for _ in 0..(1u32 << e) - 1 {
                p = k.mul(&p, &z);
                assert_ne!(p, k.one());
            }
            p = k.mul(&p, &z);
            assert_eq!(p, k.one());
            // zeta^(2^(e-1)) = -1
            assert_eq!(k.zeta_pow(1 << (e - 1)), k.neg(&k.one()));
            // inverse
            let pi = k.pi();
            let pinv = k.inv(&pi).unwrap();
            assert_eq!(k.mul(&pi, &pinv), k.one());
        }
    }

    #[test]
    fn cyclo_pi_norm_is_two() {
        // pi^m is an associate of 2: v_2(pi) = 1/m. Check pi^m / 2 is a unit
        // in Z_2[zeta], i.e. integral with odd reduction.
        for e in 1..=3u32 {
            let k = CycloField::new(e).unwrap();
            let m = k.dim();
            let mut p = k.one();
            for _ in 0..m {
                p = k.mul(&p, &k.pi());
            }
            let half = k.div_exact_u64(&p, 2).unwrap();
            assert!(k.is_integral(&half));
            assert_eq!(k.reduce_mod_pi(&half), Some(1));
        }
    }

    #[test]
    fn cyclo_mod2_matches_field() {
        let k = CycloField::new(3).unwrap();
        let r = CycloMod2::new(3, 16).unwrap();
        let a = k.mul(&k.zeta_pow(3), &k.from_i64(5));
        let b = k.add(&k.pi(), &k.from_i64(-7));
        let ra = r.from_cyclo(&k, &a).unwrap();
        let rb = r.from_cyclo(&k, &b).unwrap();
        assert_eq!(r.mul(&ra, &rb), r.from_cyclo(&k, &k.mul(&a, &b)).unwrap());
        assert_eq!(r.add(&ra, &rb), r.from_cyclo(&k, &k.add(&a, &b)).unwrap());
        // odd-denominator reduction: 1/3 is integral 2-adically
        let third = k.div_exact_u64(&k.one(), 3).unwrap();
        let rt = r.from_cyclo(&k, &third).unwrap();
        assert_eq!(r.mul(&rt, &r.from_i64(3)), r.one());
    }

    #[test]
    fn cyclo_mod2_units() {
        let r = CycloMod2::new(3, 16).unwrap();
        // zeta is a unit; pi = zeta - 1 is not
        let z = r.zeta();
        let zi = r.inv(&z).unwrap();
        assert_eq!(r.mul(&z, &zi), r.one());
        let pi = r.sub(&r.zeta(), &r.one());
        assert!(r.inv(&pi).is_none());
    }
}
