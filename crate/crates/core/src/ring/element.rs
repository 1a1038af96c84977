use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::Value as Json;

use super::{LocalRing, Ring, RingKind, RingSpec, Split, Value};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// An element bundled with the ring it belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: RingSpec,
    value: Value,
}

impl RingElement {
    /// Wraps a payload, rejecting values that are not canonical for `ring`.
    pub fn new(ring: RingSpec, value: Value) -> Result<Self> {
        check_canonical(&ring, &value)?;
        Ok(RingElement { ring, value })
    }

    pub(crate) fn from_parts(ring: RingSpec, value: Value) -> Self {
        RingElement { ring, value }
    }

    pub fn from_int(ring: &RingSpec, n: i64) -> Self {
        RingElement {
            value: ring.from_int(n),
            ring: ring.clone(),
        }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn into_value(self) -> Value {
        self.value
    }

    /// `x op y`; `y` is ignored for negation.
    pub fn arith(op: ArithOp, x: &RingElement, y: &RingElement) -> Result<RingElement> {
        if op != ArithOp::Neg && x.ring != y.ring {
            return Err(Error::MixedRings);
        }
        let r = &x.ring;
        let value = match op {
            ArithOp::Add => r.add(&x.value, &y.value),
            ArithOp::Sub => r.sub(&x.value, &y.value),
            ArithOp::Mul => r.mul(&x.value, &y.value),
            ArithOp::Neg => r.neg(&x.value),
        };
        Ok(RingElement::from_parts(r.clone(), value))
    }

    pub fn local_split(&self) -> Result<Split<RingElement>> {
        Ok(match self.ring.local_split(&self.value)? {
            Split::Unit(inv) => Split::Unit(RingElement::from_parts(self.ring.clone(), inv)),
            Split::Radical => Split::Radical,
        })
    }

    pub fn residue(&self) -> Result<RingElement> {
        Ok(RingElement::from_parts(
            self.ring.residue_field()?,
            self.ring.residue(&self.value)?,
        ))
    }

    pub fn valuation(&self) -> Result<Option<u64>> {
        self.ring.oracle_valuation(&self.value)
    }

    pub fn parse(ring: &RingSpec, text: &str) -> Result<Self> {
        let value = parse_value(ring, text)?;
        Ok(RingElement::from_parts(ring.clone(), value))
    }

    pub fn to_json(&self) -> Json {
        value_to_json(&self.ring, &self.value)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

fn check_canonical(ring: &RingSpec, value: &Value) -> Result<()> {
    let bad = || Error::NotInRing(format!("{:?} is not a canonical element of {}", value, ring));
    let ok = match (ring.kind(), value) {
        (RingKind::Rationals, Value::Rat(_)) => true,
        (RingKind::LocalizedIntegers { p }, Value::Rat(q)) => {
            (q.denom() % BigInt::from(*p)) != BigInt::from(0)
        }
        (
            RingKind::PrimeField { p: m }
            | RingKind::ModularIntegers { m }
            | RingKind::TruncatedPadics { p: m, .. },
            Value::Int(a),
        ) => {
            let modulus = match ring.kind() {
                RingKind::TruncatedPadics { p, precision } => p.pow(*precision),
                _ => *m,
            };
            *a < modulus
        }
        (RingKind::FiniteField { p, modulus }, Value::Ext(c)) => {
            c.len() == modulus.len() - 1 && c.iter().all(|x| x < p)
        }
        (RingKind::TruncatedSeries { coef, precision }, Value::Series(c)) => {
            c.len() == *precision as usize && c.iter().all(|v| check_canonical(coef, v).is_ok())
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(bad())
    }
}

/// Replaces typographic minus signs so that `[−5,1,1]` parses as JSON.
pub fn normalize_json_text(text: &str) -> String {
    text.replace('\u{2212}', "-")
}

pub fn parse_json(text: &str) -> Result<Json> {
    serde_json::from_str(&normalize_json_text(text))
        .map_err(|e| Error::Parse(format!("invalid JSON '{}': {}", text, e)))
}

pub fn parse_value(ring: &RingSpec, text: &str) -> Result<Value> {
    value_from_json(ring, &parse_json(text)?)
}

fn json_bigint(j: &Json) -> Result<BigInt> {
    match j {
        Json::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(Error::Parse(format!("{} is not an integer", n)))
            }
        }
        Json::String(s) => normalize_json_text(s)
            .trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("'{}' is not an integer", s))),
        _ => Err(Error::Parse(format!("{} is not an integer", j))),
    }
}

fn json_rational(j: &Json) -> Result<BigRational> {
    match j {
        Json::Array(items) if items.len() == 2 => {
            let num = json_bigint(&items[0])?;
            let den = json_bigint(&items[1])?;
            if den == BigInt::from(0) {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(num, den))
        }
        Json::String(s) if s.contains('/') => {
            let (n, d) = s.split_once('/').unwrap();
            json_rational(&Json::Array(vec![
                Json::String(n.to_string()),
                Json::String(d.to_string()),
            ]))
        }
        _ => Ok(BigRational::from_integer(json_bigint(j)?)),
    }
}

/// Decode a JSON element payload: integers, `[num, den]` fractions, or
/// coefficient arrays for extension fields and truncated series.
pub fn value_from_json(ring: &RingSpec, j: &Json) -> Result<Value> {
    match ring.kind() {
        RingKind::FiniteField { p, .. } => match j {
            Json::Array(items) => {
                let coeffs = items
                    .iter()
                    .map(|c| ring_prime_value(*p, &json_rational(c)?))
                    .collect::<Result<Vec<u64>>>()?;
                ring.ext_from_coeffs(&coeffs)
            }
            _ => ring.from_rational(&json_rational(j)?),
        },
        RingKind::TruncatedSeries { coef, .. } => match j {
            Json::Array(items) => {
                let coeffs = items
                    .iter()
                    .map(|c| value_from_json(coef, c))
                    .collect::<Result<Vec<_>>>()?;
                ring.series_from_coeffs(coeffs)
            }
            _ => ring.from_rational(&json_rational(j)?),
        },
        _ => ring.from_rational(&json_rational(j)?),
    }
}

fn ring_prime_value(p: u64, q: &BigRational) -> Result<u64> {
    let f = RingSpec::prime_field(p)?;
    match f.from_rational(q)? {
        Value::Int(v) => Ok(v),
        _ => unreachable!("prime field payloads are integers"),
    }
}

fn bigint_json(n: &BigInt) -> Json {
    match n.to_i64() {
        Some(i) => Json::from(i),
        None => Json::String(n.to_string()),
    }
}

pub fn value_to_json(ring: &RingSpec, v: &Value) -> Json {
    match v {
        Value::Rat(q) => {
            if q.denom().is_one() {
                bigint_json(q.numer())
            } else {
                Json::Array(vec![bigint_json(q.numer()), bigint_json(q.denom())])
            }
        }
        Value::Int(a) => Json::from(*a),
        Value::Ext(c) => Json::Array(c.iter().map(|x| Json::from(*x)).collect()),
        Value::Series(c) => {
            let coef = ring.series_coef_ring().expect("series payload in a series ring");
            Json::Array(c.iter().map(|x| value_to_json(coef, x)).collect())
        }
    }
}
