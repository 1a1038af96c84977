use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{HenselOracle, LocalRing, Ring, Split, ValuationRing};
use crate::error::{Error, Result};

/// The shipped kinds of computable commutative rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingKind {
    Rationals,
    PrimeField { p: u64 },
    /// `F_p[t]/(modulus)`; the modulus is monic irreducible, low-to-high.
    FiniteField { p: u64, modulus: Vec<u64> },
    /// `Z` localized at the prime `p`: fractions with denominator prime to `p`.
    LocalizedIntegers { p: u64 },
    ModularIntegers { m: u64 },
    /// `Z / p^precision`, a fixed-precision model of the p-adic integers.
    TruncatedPadics { p: u64, precision: u32 },
    /// `k[t] / t^precision` over a coefficient field `k`.
    TruncatedSeries { coef: Box<RingSpec>, precision: u32 },
}

/// Capability flags, forced by the ring kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Capabilities {
    pub discrete: bool,
    pub field: bool,
    pub local: bool,
    pub residually_discrete: bool,
    pub henselian_oracle: bool,
    pub has_nilpotents: bool,
}

/// Canonical payload of an element of a [`RingSpec`].
///
/// Every operation returns canonical payloads, so equality is syntactic:
/// reduced fractions for `Q` and `Z_(p)`, residues in `[0, m)` for the
/// modular kinds, fixed-length coefficient vectors for extension fields and
/// truncated series.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Rat(BigRational),
    Int(u64),
    Ext(Vec<u64>),
    Series(Vec<Value>),
}

impl Value {
    pub fn as_int(&self) -> Option<u64> {
        match self {
            Value::Int(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_rat(&self) -> Option<&BigRational> {
        match self {
            Value::Rat(q) => Some(q),
            _ => None,
        }
    }
}

/// A computable ring instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    kind: RingKind,
    /// Modulus of the integer payload for the modular kinds, `p` otherwise.
    modulus: u64,
}

const MAX_MODULUS: u64 = 1 << 62;

impl RingSpec {
    pub fn rationals() -> Self {
        RingSpec {
            kind: RingKind::Rationals,
            modulus: 0,
        }
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(RingSpec {
            kind: RingKind::PrimeField { p },
            modulus: p,
        })
    }

    /// `F_p[t]/(modulus)`. The modulus must be monic and irreducible of degree at least 1.
    pub fn finite_field(p: u64, modulus: Vec<u64>) -> Result<Self> {
        check_prime(p)?;
        let mut modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        fp::trim(&mut modulus);
        if modulus.len() < 2 {
            return Err(Error::InvalidRing("field modulus must have degree >= 1".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidRing("field modulus must be monic".into()));
        }
        if !fp::is_irreducible(&modulus, p) {
            return Err(Error::InvalidRing(format!(
                "modulus {:?} is not irreducible over F_{}",
                modulus, p
            )));
        }
        Ok(RingSpec {
            kind: RingKind::FiniteField { p, modulus },
            modulus: p,
        })
    }

    pub fn localized_integers(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(RingSpec {
            kind: RingKind::LocalizedIntegers { p },
            modulus: p,
        })
    }

    pub fn modular_integers(m: u64) -> Result<Self> {
        if m < 2 || m > MAX_MODULUS {
            return Err(Error::InvalidRing(format!("modulus {} out of range", m)));
        }
        Ok(RingSpec {
            kind: RingKind::ModularIntegers { m },
            modulus: m,
        })
    }

    pub fn truncated_padics(p: u64, precision: u32) -> Result<Self> {
        check_prime(p)?;
        if precision == 0 {
            return Err(Error::InvalidRing("precision must be at least 1".into()));
        }
        let modulus = checked_pow(p, precision)
            .filter(|&m| m <= MAX_MODULUS)
            .ok_or_else(|| Error::InvalidRing(format!("{}^{} is too large", p, precision)))?;
        Ok(RingSpec {
            kind: RingKind::TruncatedPadics { p, precision },
            modulus,
        })
    }

    pub fn truncated_series(coef: RingSpec, precision: u32) -> Result<Self> {
        if !coef.is_field() {
            return Err(Error::InvalidRing("series coefficients must form a field".into()));
        }
        if precision == 0 {
            return Err(Error::InvalidRing("precision must be at least 1".into()));
        }
        let modulus = coef.modulus;
        Ok(RingSpec {
            kind: RingKind::TruncatedSeries {
                coef: Box::new(coef),
                precision,
            },
            modulus,
        })
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    /// Residue characteristic for the p-parameterized kinds and finite fields.
    pub fn prime(&self) -> Option<u64> {
        match &self.kind {
            RingKind::Rationals => None,
            RingKind::PrimeField { p }
            | RingKind::FiniteField { p, .. }
            | RingKind::LocalizedIntegers { p }
            | RingKind::TruncatedPadics { p, .. } => Some(*p),
            RingKind::ModularIntegers { m } => prime_power_base(*m),
            RingKind::TruncatedSeries { coef, .. } => coef.prime(),
        }
    }

    /// Fixed precision of a truncated kind.
    pub fn precision(&self) -> Option<u32> {
        match &self.kind {
            RingKind::TruncatedPadics { precision, .. }
            | RingKind::TruncatedSeries { precision, .. } => Some(*precision),
            _ => None,
        }
    }

    pub fn capabilities(&self) -> Capabilities {
        let field = self.is_field();
        match &self.kind {
            RingKind::Rationals | RingKind::PrimeField { .. } | RingKind::FiniteField { .. } => {
                Capabilities {
                    discrete: true,
                    field,
                    local: true,
                    residually_discrete: true,
                    henselian_oracle: true,
                    has_nilpotents: false,
                }
            }
            RingKind::LocalizedIntegers { .. } => Capabilities {
                discrete: true,
                field,
                local: true,
                residually_discrete: true,
                henselian_oracle: false,
                has_nilpotents: false,
            },
            RingKind::ModularIntegers { m } => {
                let local = prime_power_base(*m).is_some();
                Capabilities {
                    discrete: true,
                    field,
                    local,
                    residually_discrete: local,
                    henselian_oracle: false,
                    has_nilpotents: !is_squarefree(*m),
                }
            }
            RingKind::TruncatedPadics { precision, .. }
            | RingKind::TruncatedSeries { precision, .. } => Capabilities {
                discrete: true,
                field,
                local: true,
                residually_discrete: true,
                henselian_oracle: true,
                has_nilpotents: *precision > 1,
            },
        }
    }

    pub fn is_finite_field(&self) -> bool {
        matches!(
            self.kind,
            RingKind::PrimeField { .. } | RingKind::FiniteField { .. }
        )
    }

    /// Number of elements of a finite field.
    pub fn field_size(&self) -> Option<u64> {
        match &self.kind {
            RingKind::PrimeField { p } => Some(*p),
            RingKind::FiniteField { p, modulus } => checked_pow(*p, (modulus.len() - 1) as u32),
            _ => None,
        }
    }

    /// Degree of a finite field over its prime field.
    pub fn field_degree(&self) -> Option<usize> {
        match &self.kind {
            RingKind::PrimeField { .. } => Some(1),
            RingKind::FiniteField { modulus, .. } => Some(modulus.len() - 1),
            _ => None,
        }
    }

    pub fn field_modulus(&self) -> Option<&[u64]> {
        match &self.kind {
            RingKind::FiniteField { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    /// The `index`-th element of a finite field in canonical order
    /// (base-`p` digits of `index`, constant coefficient first).
    pub fn field_element(&self, index: u64) -> Result<Value> {
        match &self.kind {
            RingKind::PrimeField { p } => Ok(Value::Int(index % p)),
            RingKind::FiniteField { p, modulus } => {
                let d = modulus.len() - 1;
                let mut digits = vec![0u64; d];
                let mut rest = index;
                for digit in digits.iter_mut() {
                    *digit = rest % p;
                    rest /= p;
                }
                Ok(Value::Ext(digits))
            }
            _ => Err(Error::NotFiniteField),
        }
    }

    /// All elements of a finite field, in canonical order.
    pub fn field_elements(&self) -> Result<Vec<Value>> {
        let q = self.field_size().ok_or(Error::NotFiniteField)?;
        (0..q).map(|i| self.field_element(i)).collect()
    }

    /// Canonical index of a finite-field element (inverse of [`Self::field_element`]).
    pub fn field_index(&self, v: &Value) -> Result<u64> {
        match (&self.kind, v) {
            (RingKind::PrimeField { .. }, Value::Int(a)) => Ok(*a),
            (RingKind::FiniteField { p, .. }, Value::Ext(c)) => {
                Ok(c.iter().rev().fold(0u64, |acc, &d| acc * p + d))
            }
            _ => Err(Error::NotFiniteField),
        }
    }

    /// The generator `t` of `F_p[t]/(modulus)`.
    pub fn field_generator(&self) -> Result<Value> {
        match &self.kind {
            RingKind::FiniteField { modulus, .. } => {
                let mut c = vec![0u64; modulus.len() - 1];
                if c.len() == 1 {
                    c[0] = negmod(modulus[0], self.modulus);
                } else {
                    c[1] = 1;
                }
                Ok(Value::Ext(c))
            }
            RingKind::PrimeField { .. } => Ok(Value::Int(0)),
            _ => Err(Error::NotFiniteField),
        }
    }

    /// Build an element of `F_q` from its coefficients in the generator.
    pub fn ext_from_coeffs(&self, coeffs: &[u64]) -> Result<Value> {
        match &self.kind {
            RingKind::FiniteField { p, modulus } => {
                let mut c: Vec<u64> = coeffs.iter().map(|x| x % p).collect();
                let r = fp::rem(&mut c, modulus, *p);
                let mut out = r;
                out.resize(modulus.len() - 1, 0);
                Ok(Value::Ext(out))
            }
            RingKind::PrimeField { p } => {
                let mut c: Vec<u64> = coeffs.iter().map(|x| x % p).collect();
                fp::trim(&mut c);
                if c.len() > 1 {
                    return Err(Error::NotInRing("non-constant prime field element".into()));
                }
                Ok(Value::Int(c.first().copied().unwrap_or(0)))
            }
            _ => Err(Error::NotFiniteField),
        }
    }

    /// Coefficients of a finite-field element over the prime field.
    pub fn ext_coeffs(&self, v: &Value) -> Result<Vec<u64>> {
        match v {
            Value::Int(a) if matches!(self.kind, RingKind::PrimeField { .. }) => Ok(vec![*a]),
            Value::Ext(c) => Ok(c.clone()),
            _ => Err(Error::NotFiniteField),
        }
    }

    /// Map an integer of the prime ring into this ring.
    pub fn from_bigint(&self, n: &BigInt) -> Value {
        match &self.kind {
            RingKind::Rationals | RingKind::LocalizedIntegers { .. } => {
                Value::Rat(BigRational::from_integer(n.clone()))
            }
            RingKind::PrimeField { .. }
            | RingKind::ModularIntegers { .. }
            | RingKind::TruncatedPadics { .. } => Value::Int(reduce_bigint(n, self.modulus)),
            RingKind::FiniteField { modulus, .. } => {
                let mut c = vec![0u64; modulus.len() - 1];
                c[0] = reduce_bigint(n, self.modulus);
                Value::Ext(c)
            }
            RingKind::TruncatedSeries { coef, precision } => {
                let mut c = vec![coef.zero(); *precision as usize];
                c[0] = coef.from_bigint(n);
                Value::Series(c)
            }
        }
    }

    /// Map a rational number into this ring when its denominator is invertible.
    pub fn from_rational(&self, q: &BigRational) -> Result<Value> {
        match &self.kind {
            RingKind::Rationals => Ok(Value::Rat(q.clone())),
            RingKind::LocalizedIntegers { p } => {
                if (q.denom() % BigInt::from(*p)).is_zero() {
                    Err(Error::NotInRing(format!("{} has denominator divisible by {}", q, p)))
                } else {
                    Ok(Value::Rat(q.clone()))
                }
            }
            _ => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                let inv = self
                    .inverse(&den)
                    .ok_or_else(|| Error::NotInRing(format!("denominator of {} is not invertible", q)))?;
                Ok(self.mul(&num, &inv))
            }
        }
    }

    /// Build a truncated series from coefficient values of the coefficient field.
    pub fn series_from_coeffs(&self, coeffs: Vec<Value>) -> Result<Value> {
        match &self.kind {
            RingKind::TruncatedSeries { coef, precision } => {
                let mut c = coeffs;
                if c.len() > *precision as usize {
                    c.truncate(*precision as usize);
                }
                c.resize(*precision as usize, coef.zero());
                Ok(Value::Series(c))
            }
            _ => Err(Error::UnsupportedKind("not a series ring".into())),
        }
    }

    pub fn series_coef_ring(&self) -> Option<&RingSpec> {
        match &self.kind {
            RingKind::TruncatedSeries { coef, .. } => Some(coef),
            _ => None,
        }
    }

    /// Valuation on the kinds that model a completion or a localization
    /// (`Z_(p)`, truncated p-adics, truncated series). Zero of a truncated
    /// ring has valuation equal to its precision; zero of `Z_(p)` has none.
    pub fn oracle_valuation(&self, x: &Value) -> Result<Option<u64>> {
        match &self.kind {
            RingKind::LocalizedIntegers { .. }
            | RingKind::TruncatedPadics { .. }
            | RingKind::TruncatedSeries { .. } => self.valuation(x),
            _ => Err(Error::UnsupportedKind(format!(
                "valuation is not defined on {}",
                self
            ))),
        }
    }

    /// Canonical integer representative of an integer-payload element.
    pub fn int_value(&self, x: &Value) -> Option<u64> {
        x.as_int()
    }

    fn coef_zero_check(&self, c: &[Value], coef: &RingSpec) -> bool {
        c.iter().all(|v| coef.is_zero(v))
    }
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) && p <= MAX_MODULUS {
        Ok(())
    } else {
        Err(Error::InvalidRing(format!("{} is not a prime", p)))
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime `p` if `m = p^k` with `k >= 1`.
fn prime_power_base(m: u64) -> Option<u64> {
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m % d == 0 {
            let mut r = m;
            while r % d == 0 {
                r /= d;
            }
            return if r == 1 { Some(d) } else { None };
        }
        d += 1;
    }
    if m >= 2 {
        Some(m)
    } else {
        None
    }
}

fn max_prime_exponent(mut m: u64) -> u64 {
    let mut best = 1;
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        let mut k = 0;
        while m % d == 0 {
            m /= d;
            k += 1;
        }
        best = best.max(k);
        d += 1;
    }
    best
}

fn is_squarefree(m: u64) -> bool {
    max_prime_exponent(m) <= 1
}

fn reduce_bigint(n: &BigInt, m: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(m));
    r.to_u64().expect("reduced residue fits u64")
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn addmod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

fn negmod(a: u64, m: u64) -> u64 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub(crate) fn invmod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

fn vp_u64(mut a: u64, p: u64) -> u64 {
    let mut v = 0;
    while a % p == 0 {
        a /= p;
        v += 1;
    }
    v
}

fn vp_bigint(n: &BigInt, p: u64) -> u64 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

impl Ring for RingSpec {
    type Elem = Value;

    fn zero(&self) -> Value {
        self.from_int(0)
    }

    fn one(&self) -> Value {
        self.from_int(1)
    }

    fn from_int(&self, n: i64) -> Value {
        self.from_bigint(&BigInt::from(n))
    }

    fn add(&self, a: &Value, b: &Value) -> Value {
        match (&self.kind, a, b) {
            (_, Value::Rat(x), Value::Rat(y)) => Value::Rat(x + y),
            (_, Value::Int(x), Value::Int(y)) => Value::Int(addmod(*x, *y, self.modulus)),
            (_, Value::Ext(x), Value::Ext(y)) => Value::Ext(
                x.iter()
                    .zip(y)
                    .map(|(s, t)| addmod(*s, *t, self.modulus))
                    .collect(),
            ),
            (RingKind::TruncatedSeries { coef, .. }, Value::Series(x), Value::Series(y)) => {
                Value::Series(x.iter().zip(y).map(|(s, t)| coef.add(s, t)).collect())
            }
            _ => panic!("mismatched payloads {:?} and {:?} in {}", a, b, self),
        }
    }

    fn neg(&self, a: &Value) -> Value {
        match (&self.kind, a) {
            (_, Value::Rat(x)) => Value::Rat(-x),
            (_, Value::Int(x)) => Value::Int(negmod(*x, self.modulus)),
            (_, Value::Ext(x)) => Value::Ext(x.iter().map(|s| negmod(*s, self.modulus)).collect()),
            (RingKind::TruncatedSeries { coef, .. }, Value::Series(x)) => {
                Value::Series(x.iter().map(|s| coef.neg(s)).collect())
            }
            _ => panic!("mismatched payload {:?} in {}", a, self),
        }
    }

    fn sub(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Rat(x), Value::Rat(y)) => Value::Rat(x - y),
            (Value::Int(x), Value::Int(y)) => {
                Value::Int(addmod(*x, negmod(*y, self.modulus), self.modulus))
            }
            _ => self.add(a, &self.neg(b)),
        }
    }

    fn mul(&self, a: &Value, b: &Value) -> Value {
        match (&self.kind, a, b) {
            (_, Value::Rat(x), Value::Rat(y)) => Value::Rat(x * y),
            (_, Value::Int(x), Value::Int(y)) => Value::Int(mulmod(*x, *y, self.modulus)),
            (RingKind::FiniteField { p, modulus }, Value::Ext(x), Value::Ext(y)) => {
                let mut prod = fp::mul(x, y, *p);
                let mut r = fp::rem(&mut prod, modulus, *p);
                r.resize(modulus.len() - 1, 0);
                Value::Ext(r)
            }
            (RingKind::TruncatedSeries { coef, precision }, Value::Series(x), Value::Series(y)) => {
                let n = *precision as usize;
                let mut out = vec![coef.zero(); n];
                for (i, xi) in x.iter().enumerate() {
                    if coef.is_zero(xi) {
                        continue;
                    }
                    for (j, yj) in y.iter().enumerate().take(n - i) {
                        out[i + j] = coef.add(&out[i + j], &coef.mul(xi, yj));
                    }
                }
                Value::Series(out)
            }
            _ => panic!("mismatched payloads {:?} and {:?} in {}", a, b, self),
        }
    }

    fn is_zero(&self, a: &Value) -> bool {
        match a {
            Value::Rat(x) => x.is_zero(),
            Value::Int(x) => *x == 0,
            Value::Ext(x) => x.iter().all(|c| *c == 0),
            Value::Series(x) => match &self.kind {
                RingKind::TruncatedSeries { coef, .. } => self.coef_zero_check(x, coef),
                _ => false,
            },
        }
    }

    fn equal(&self, a: &Value, b: &Value) -> bool {
        a == b
    }

    fn inverse(&self, a: &Value) -> Option<Value> {
        match (&self.kind, a) {
            (RingKind::Rationals, Value::Rat(x)) => {
                (!x.is_zero()).then(|| Value::Rat(x.recip()))
            }
            (RingKind::LocalizedIntegers { p }, Value::Rat(x)) => {
                let unit = !x.is_zero() && !(x.numer() % BigInt::from(*p)).is_zero();
                unit.then(|| Value::Rat(x.recip()))
            }
            (_, Value::Int(x)) => invmod(*x, self.modulus).map(Value::Int),
            (RingKind::FiniteField { p, modulus }, Value::Ext(x)) => {
                let mut r = fp::inverse_mod(x, modulus, *p)?;
                r.resize(modulus.len() - 1, 0);
                Some(Value::Ext(r))
            }
            (RingKind::TruncatedSeries { coef, precision }, Value::Series(x)) => {
                let n = *precision as usize;
                let c0 = coef.inverse(&x[0])?;
                let mut out = vec![coef.zero(); n];
                out[0] = c0.clone();
                for k in 1..n {
                    let mut acc = coef.zero();
                    for i in 1..=k {
                        acc = coef.add(&acc, &coef.mul(&x[i], &out[k - i]));
                    }
                    out[k] = coef.neg(&coef.mul(&c0, &acc));
                }
                Some(Value::Series(out))
            }
            _ => None,
        }
    }

    fn is_field(&self) -> bool {
        matches!(
            self.kind,
            RingKind::Rationals | RingKind::PrimeField { .. } | RingKind::FiniteField { .. }
        )
    }

    fn is_domain(&self) -> bool {
        self.is_field() || matches!(self.kind, RingKind::LocalizedIntegers { .. })
    }

    fn div_exact(&self, a: &Value, b: &Value) -> Option<Value> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        match (&self.kind, a, b) {
            (RingKind::LocalizedIntegers { p }, Value::Rat(x), Value::Rat(y)) => {
                if y.is_zero() {
                    return None;
                }
                let q = x / y;
                if (q.denom() % BigInt::from(*p)).is_zero() {
                    None
                } else {
                    Some(Value::Rat(q))
                }
            }
            (RingKind::TruncatedPadics { p, .. }, Value::Int(x), Value::Int(y)) => {
                if *y == 0 {
                    return None;
                }
                let vy = vp_u64(*y, *p);
                if vp_u64(*x, *p) < vy {
                    return None;
                }
                let pv = p.pow(vy as u32);
                let unit = invmod(y / pv, self.modulus)?;
                Some(Value::Int(mulmod(x / pv, unit, self.modulus)))
            }
            (RingKind::ModularIntegers { m }, Value::Int(x), Value::Int(y)) => {
                let g = gcd_u64(*y, *m);
                if x % g != 0 {
                    return None;
                }
                let m2 = m / g;
                if m2 == 1 {
                    return Some(Value::Int(0));
                }
                let inv = invmod((y / g) % m2, m2)?;
                Some(Value::Int(mulmod(x / g, inv, m2)))
            }
            (RingKind::TruncatedSeries { coef, precision }, Value::Series(x), Value::Series(y)) => {
                let n = *precision as usize;
                let vy = y.iter().position(|c| !coef.is_zero(c))?;
                let vx = x.iter().position(|c| !coef.is_zero(c)).unwrap_or(n);
                if vx < vy {
                    return None;
                }
                let mut xs: Vec<Value> = x[vy..].to_vec();
                xs.resize(n, coef.zero());
                let mut ys: Vec<Value> = y[vy..].to_vec();
                ys.resize(n, coef.zero());
                let inv = self.inverse(&Value::Series(ys))?;
                Some(self.mul(&Value::Series(xs), &inv))
            }
            _ => self.inverse(b).map(|inv| self.mul(a, &inv)),
        }
    }

    fn nilpotency_bound(&self) -> Option<u64> {
        match &self.kind {
            RingKind::ModularIntegers { m } => Some(max_prime_exponent(*m)),
            RingKind::TruncatedPadics { precision, .. }
            | RingKind::TruncatedSeries { precision, .. } => Some(*precision as u64),
            _ => Some(1),
        }
    }
}

impl LocalRing for RingSpec {
    fn local_split(&self, a: &Value) -> Result<Split<Value>> {
        if !self.capabilities().local {
            return Err(Error::NotLocal);
        }
        Ok(match self.inverse(a) {
            Some(inv) => Split::Unit(inv),
            None => Split::Radical,
        })
    }

    fn residue_field(&self) -> Result<RingSpec> {
        match &self.kind {
            RingKind::Rationals | RingKind::PrimeField { .. } | RingKind::FiniteField { .. } => {
                Ok(self.clone())
            }
            RingKind::LocalizedIntegers { p } | RingKind::TruncatedPadics { p, .. } => {
                RingSpec::prime_field(*p)
            }
            RingKind::ModularIntegers { m } => match prime_power_base(*m) {
                Some(p) => RingSpec::prime_field(p),
                None => Err(Error::NotResiduallyDiscrete),
            },
            RingKind::TruncatedSeries { coef, .. } => Ok((**coef).clone()),
        }
    }

    fn residue(&self, a: &Value) -> Result<Value> {
        match (&self.kind, a) {
            (RingKind::Rationals | RingKind::PrimeField { .. } | RingKind::FiniteField { .. }, _) => {
                Ok(a.clone())
            }
            (RingKind::LocalizedIntegers { p }, Value::Rat(x)) => {
                let num = reduce_bigint(x.numer(), *p);
                let den = reduce_bigint(x.denom(), *p);
                Ok(Value::Int(mulmod(num, invmod(den, *p).expect("denominator prime to p"), *p)))
            }
            (RingKind::TruncatedPadics { p, .. }, Value::Int(x)) => Ok(Value::Int(x % p)),
            (RingKind::ModularIntegers { m }, Value::Int(x)) => match prime_power_base(*m) {
                Some(p) => Ok(Value::Int(x % p)),
                None => Err(Error::NotResiduallyDiscrete),
            },
            (RingKind::TruncatedSeries { .. }, Value::Series(x)) => Ok(x[0].clone()),
            _ => Err(Error::Internal(format!("bad payload {:?} for {}", a, self))),
        }
    }

    fn lift_residue(&self, r: &Value) -> Result<Value> {
        match (&self.kind, r) {
            (RingKind::Rationals | RingKind::PrimeField { .. } | RingKind::FiniteField { .. }, _) => {
                Ok(r.clone())
            }
            (RingKind::LocalizedIntegers { .. }, Value::Int(c)) => {
                Ok(Value::Rat(BigRational::from_integer(BigInt::from(*c))))
            }
            (RingKind::TruncatedPadics { .. } | RingKind::ModularIntegers { .. }, Value::Int(c)) => {
                Ok(Value::Int(*c))
            }
            (RingKind::TruncatedSeries { coef, precision }, c) => {
                let mut out = vec![coef.zero(); *precision as usize];
                out[0] = c.clone();
                Ok(Value::Series(out))
            }
            _ => Err(Error::NotInRing(format!("{:?} is not a residue of {}", r, self))),
        }
    }
}

impl HenselOracle for RingSpec {
    fn newton_precision(&self) -> Result<u64> {
        if !self.capabilities().henselian_oracle {
            return Err(Error::NotHenselian);
        }
        Ok(match &self.kind {
            RingKind::TruncatedPadics { precision, .. }
            | RingKind::TruncatedSeries { precision, .. } => *precision as u64,
            _ => 1,
        })
    }
}

impl ValuationRing for RingSpec {
    fn valuation(&self, a: &Value) -> Result<Option<u64>> {
        match (&self.kind, a) {
            (RingKind::Rationals | RingKind::PrimeField { .. } | RingKind::FiniteField { .. }, _) => {
                Ok((!self.is_zero(a)).then_some(0))
            }
            (RingKind::LocalizedIntegers { p }, Value::Rat(x)) => {
                Ok((!x.is_zero()).then(|| vp_bigint(x.numer(), *p)))
            }
            (RingKind::TruncatedPadics { p, precision }, Value::Int(x)) => Ok(Some(if *x == 0 {
                *precision as u64
            } else {
                vp_u64(*x, *p)
            })),
            (RingKind::TruncatedSeries { coef, precision }, Value::Series(x)) => Ok(Some(
                x.iter()
                    .position(|c| !coef.is_zero(c))
                    .map_or(*precision as u64, |i| i as u64),
            )),
            _ => Err(Error::UnsupportedKind(format!("no valuation on {}", self))),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RingKind::Rationals => write!(f, "Q"),
            RingKind::PrimeField { p } => write!(f, "Fp:{}", p),
            RingKind::FiniteField { p, modulus } => {
                let coeffs: Vec<String> = modulus.iter().map(|c| c.to_string()).collect();
                write!(f, "Fq:{}:[{}]", p, coeffs.join(","))
            }
            RingKind::LocalizedIntegers { p } => write!(f, "Zloc:{}", p),
            RingKind::ModularIntegers { m } => write!(f, "Zmod:{}", m),
            RingKind::TruncatedPadics { p, precision } => write!(f, "PadicTrunc:{}:{}", p, precision),
            RingKind::TruncatedSeries { coef, precision } => {
                write!(f, "SeriesTrunc:{}:{}", coef, precision)
            }
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    /// Parses `Q`, `Fp:7`, `Fq:2:[1,1,0,1]`, `Zloc:5`, `Zmod:36`,
    /// `PadicTrunc:7:3` and `SeriesTrunc:Fp:5:4`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unrecognized ring spec '{}'", s));
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
        if s == "Q" {
            return Ok(RingSpec::rationals());
        }
        let (head, rest) = s.split_once(':').ok_or_else(bad)?;
        match head {
            "Fp" => RingSpec::prime_field(num(rest)?),
            "Zloc" => RingSpec::localized_integers(num(rest)?),
            "Zmod" => RingSpec::modular_integers(num(rest)?),
            "PadicTrunc" => {
                let (p, n) = rest.split_once(':').ok_or_else(bad)?;
                RingSpec::truncated_padics(num(p)?, num(n)? as u32)
            }
            "Fq" => {
                let (p, m) = rest.split_once(':').ok_or_else(bad)?;
                let modulus: Vec<i64> = serde_json::from_str(m.trim()).map_err(|_| bad())?;
                let p = num(p)?;
                let modulus = modulus
                    .into_iter()
                    .map(|c| c.rem_euclid(p as i64) as u64)
                    .collect();
                RingSpec::finite_field(p, modulus)
            }
            "SeriesTrunc" => {
                let (coef, n) = rest.rsplit_once(':').ok_or_else(bad)?;
                RingSpec::truncated_series(coef.parse()?, num(n)? as u32)
            }
            _ => Err(bad()),
        }
    }
}

/// Dense polynomial helpers over `F_p` on raw `u64` coefficient vectors,
/// used for extension-field arithmetic and modulus validation.
pub(crate) mod fp {
    use super::{addmod, invmod, mulmod, negmod};

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = addmod(out[i + j], mulmod(x, y, p), p);
            }
        }
        trim(&mut out);
        out
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                addmod(x, negmod(y, p), p)
            })
            .collect();
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo `m` (nonzero leading coefficient); `a` is consumed.
    pub fn rem(a: &mut Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
        divrem(a, m, p).1
    }

    pub fn divrem(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        if r.len() < m.len() {
            return (Vec::new(), r);
        }
        let lead_inv = invmod(m[dm], p).expect("nonzero leading coefficient");
        let mut q = vec![0u64; r.len() - dm];
        while r.len() >= m.len() {
            let shift = r.len() - m.len();
            let c = mulmod(*r.last().unwrap(), lead_inv, p);
            q[shift] = c;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = addmod(r[shift + i], negmod(mulmod(c, mi, p), p), p);
            }
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = divrem(&x, &y, p).1;
            x = y;
            y = r;
        }
        if let Some(&lead) = x.last() {
            let inv = invmod(lead, p).unwrap();
            for c in x.iter_mut() {
                *c = mulmod(*c, inv, p);
            }
        }
        x
    }

    /// Inverse of `a` modulo `m` if they are coprime.
    pub fn inverse_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
        let mut r0 = m.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r1);
        r1 = divrem(&r1, m, p).1;
        let mut s0: Vec<u64> = Vec::new();
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s = sub(&s0, &mul(&q, &s1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.len() != 1 {
            return None;
        }
        let inv = invmod(r0[0], p)?;
        let mut out: Vec<u64> = s0.iter().map(|c| mulmod(*c, inv, p)).collect();
        out = divrem(&out, m, p).1;
        Some(out)
    }

    pub fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = divrem(base, m, p).1;
        while e > 0 {
            if e & 1 == 1 {
                acc = divrem(&mul(&acc, &b, p), m, p).1;
            }
            e >>= 1;
            if e > 0 {
                b = divrem(&mul(&b, &b, p), m, p).1;
            }
        }
        acc
    }

    /// Rabin's irreducibility test for a monic polynomial over `F_p`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let d = f.len() - 1;
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        // x^(p^k) mod f for k = 0..=d
        let mut frob = vec![x.clone()];
        for k in 1..=d {
            let prev = frob[k - 1].clone();
            frob.push(powmod(&prev, p, f, p));
        }
        if sub(&frob[d], &x, p) != Vec::<u64>::new() {
            return false;
        }
        let mut primes = Vec::new();
        let mut n = d;
        let mut q = 2;
        while n > 1 {
            if n % q == 0 {
                primes.push(q);
                while n % q == 0 {
                    n /= q;
                }
            }
            q += 1;
        }
        primes.into_iter().all(|r| {
            let g = gcd(&sub(&frob[d / r], &x, p), f, p);
            g.len() == 1
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Value {
        Value::Rat(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn parses_all_spec_strings() {
        for s in [
            "Q",
            "Fp:7",
            "Fq:2:[1,1,0,1]",
            "Zloc:5",
            "Zmod:36",
            "PadicTrunc:7:3",
            "SeriesTrunc:Fp:5:4",
        ] {
            let r: RingSpec = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("Fp:6".parse::<RingSpec>().is_err());
        assert!("Fq:2:[1,0,1]".parse::<RingSpec>().is_err());
        assert!("PadicTrunc:7:0".parse::<RingSpec>().is_err());
        assert!("Zloc".parse::<RingSpec>().is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let zloc: RingSpec = "Zloc:5".parse().unwrap();
        assert_eq!(zloc.add(&rat(3, 2), &rat(1, 2)), rat(2, 1));
        let zmod: RingSpec = "Zmod:36".parse().unwrap();
        assert_eq!(zmod.mul(&Value::Int(27), &Value::Int(27)), Value::Int(729 % 36));
        let padic: RingSpec = "PadicTrunc:7:3".parse().unwrap();
        assert_eq!(padic.add(&Value::Int(342), &Value::Int(1)), Value::Int(0));
    }

    #[test]
    fn local_split_examples() {
        let zloc: RingSpec = "Zloc:5".parse().unwrap();
        assert_eq!(zloc.local_split(&rat(3, 2)).unwrap(), Split::Unit(rat(2, 3)));
        assert_eq!(zloc.local_split(&rat(10, 1)).unwrap(), Split::Radical);
        let f7: RingSpec = "Fp:7".parse().unwrap();
        assert_eq!(f7.local_split(&Value::Int(0)).unwrap(), Split::Radical);
        let zmod: RingSpec = "Zmod:6".parse().unwrap();
        assert_eq!(zmod.local_split(&Value::Int(1)), Err(Error::NotLocal));
    }

    #[test]
    fn residue_examples() {
        let zloc: RingSpec = "Zloc:5".parse().unwrap();
        assert_eq!(zloc.residue(&rat(3, 2)).unwrap(), Value::Int(4));
        assert_eq!(zloc.residue(&rat(1, 1)).unwrap(), Value::Int(1));
        let padic: RingSpec = "PadicTrunc:7:3".parse().unwrap();
        assert_eq!(padic.residue(&Value::Int(301)).unwrap(), Value::Int(0));
        assert_eq!(zloc.residue_field().unwrap().to_string(), "Fp:5");
    }

    #[test]
    fn valuation_examples() {
        let zloc: RingSpec = "Zloc:5".parse().unwrap();
        assert_eq!(zloc.oracle_valuation(&rat(50, 1)).unwrap(), Some(2));
        let padic: RingSpec = "PadicTrunc:7:3".parse().unwrap();
        assert_eq!(padic.oracle_valuation(&Value::Int(0)).unwrap(), Some(3));
        let series: RingSpec = "SeriesTrunc:Fp:5:4".parse().unwrap();
        let t2_t3 = series
            .series_from_coeffs(vec![Value::Int(0), Value::Int(0), Value::Int(1), Value::Int(1)])
            .unwrap();
        assert_eq!(series.oracle_valuation(&t2_t3).unwrap(), Some(2));
        let q = RingSpec::rationals();
        assert!(matches!(q.oracle_valuation(&rat(1, 1)), Err(Error::UnsupportedKind(_))));
    }

    #[test]
    fn capabilities_follow_kind() {
        let caps = |s: &str| s.parse::<RingSpec>().unwrap().capabilities();
        assert!(caps("Zloc:5").local && !caps("Zloc:5").henselian_oracle);
        assert!(caps("PadicTrunc:5:3").henselian_oracle);
        assert!(caps("SeriesTrunc:Fp:5:4").henselian_oracle);
        assert!(caps("Zmod:36").has_nilpotents);
        assert!(!caps("Zmod:30").has_nilpotents);
        assert!(caps("Fq:2:[1,1,0,1]").field);
    }

    #[test]
    fn extension_field_inverse() {
        let f8: RingSpec = "Fq:2:[1,1,0,1]".parse().unwrap();
        for x in f8.field_elements().unwrap().into_iter().skip(1) {
            let inv = f8.inverse(&x).unwrap();
            assert_eq!(f8.mul(&x, &inv), f8.one());
        }
        assert_eq!(f8.field_size(), Some(8));
    }

    #[test]
    fn series_inverse_and_division() {
        let s: RingSpec = "SeriesTrunc:Fp:5:4".parse().unwrap();
        let a = s
            .series_from_coeffs(vec![Value::Int(2), Value::Int(1), Value::Int(0), Value::Int(3)])
            .unwrap();
        let inv = s.inverse(&a).unwrap();
        assert_eq!(s.mul(&a, &inv), s.one());
        let t = s.series_from_coeffs(vec![Value::Int(0), Value::Int(1)]).unwrap();
        let t_a = s.mul(&t, &a);
        let back = s.div_exact(&t_a, &t).unwrap();
        assert_eq!(s.mul(&back, &t), t_a);
    }

    #[test]
    fn padic_exact_division() {
        let r: RingSpec = "PadicTrunc:5:3".parse().unwrap();
        let q = r.div_exact(&Value::Int(50), &Value::Int(10)).unwrap();
        assert_eq!(r.mul(&q, &Value::Int(10)), Value::Int(50));
        assert!(r.div_exact(&Value::Int(5), &Value::Int(25)).is_none());
    }
}
