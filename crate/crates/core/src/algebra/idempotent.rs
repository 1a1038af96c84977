use crate::error::{ensure_internal, Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::PolyRing;
use crate::ring::Ring;

/// An element `e` with `e² = e`, checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Idempotent<E> {
    elem: E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    Meet,
    Join,
    Xor,
    Not,
}

impl<E: Clone> Idempotent<E> {
    pub fn new<R: Ring<Elem = E>>(ring: &R, e: E) -> Result<Self> {
        if !ring.equal(&ring.mul(&e, &e), &e) {
            return Err(Error::NotIdempotent);
        }
        Ok(Idempotent { elem: e })
    }

    pub(crate) fn new_unchecked(e: E) -> Self {
        Idempotent { elem: e }
    }

    pub fn zero<R: Ring<Elem = E>>(ring: &R) -> Self {
        Idempotent { elem: ring.zero() }
    }

    pub fn one<R: Ring<Elem = E>>(ring: &R) -> Self {
        Idempotent { elem: ring.one() }
    }

    pub fn element(&self) -> &E {
        &self.elem
    }

    pub fn into_element(self) -> E {
        self.elem
    }

    /// `u ∧ v = u·v`.
    pub fn meet<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        Idempotent {
            elem: ring.mul(&self.elem, &other.elem),
        }
    }

    /// `u ∨ v = u + v − u·v`.
    pub fn join<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let uv = ring.mul(&self.elem, &other.elem);
        Idempotent {
            elem: ring.sub(&ring.add(&self.elem, &other.elem), &uv),
        }
    }

    /// `u ⊕ v = u + v − 2·u·v`.
    pub fn xor<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let uv = ring.mul(&self.elem, &other.elem);
        Idempotent {
            elem: ring.sub(&ring.add(&self.elem, &other.elem), &ring.add(&uv, &uv)),
        }
    }

    /// `¬u = 1 − u`.
    pub fn not<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        Idempotent {
            elem: ring.sub(&ring.one(), &self.elem),
        }
    }

    /// `u ≤ v` iff `u ∧ v = u`.
    pub fn leq<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> bool {
        ring.equal(&self.meet(ring, other).elem, &self.elem)
    }

    pub fn apply<R: Ring<Elem = E>>(&self, ring: &R, op: BoolOp, other: &Self) -> Self {
        match op {
            BoolOp::Meet => self.meet(ring, other),
            BoolOp::Join => self.join(ring, other),
            BoolOp::Xor => self.xor(ring, other),
            BoolOp::Not => self.not(ring),
        }
    }
}

#[derive(Debug, Clone)]
pub struct NewtonLift<E> {
    pub idempotent: Idempotent<E>,
    pub iterations: usize,
}

/// Whether `x` is nilpotent, by squaring until the exponent reaches the
/// ring's nilpotency bound.
pub(crate) fn is_nilpotent<R: Ring>(ring: &R, x: &R::Elem) -> Result<bool> {
    let bound = ring
        .nilpotency_bound()
        .ok_or_else(|| Error::UnsupportedBase("no nilpotency bound is known".into()))?;
    let mut s = x.clone();
    let mut k = 1u64;
    while k < bound {
        if ring.is_zero(&s) {
            return Ok(true);
        }
        s = ring.mul(&s, &s);
        k = k.saturating_mul(2);
    }
    Ok(ring.is_zero(&s))
}

/// Lifts an idempotent modulo nilpotents by the Newton iteration
/// `x ↦ 3x² − 2x³`; each step squares the defect `x² − x`.
pub fn newton_lift_idempotent<R: Ring>(ring: &R, e: &R::Elem) -> Result<NewtonLift<R::Elem>> {
    let defect = ring.sub(&ring.mul(e, e), e);
    if !is_nilpotent(ring, &defect)? {
        return Err(Error::NotAlmostIdempotent);
    }
    let mut x = e.clone();
    let mut iterations = 0;
    loop {
        let x2 = ring.mul(&x, &x);
        if ring.equal(&x2, &x) {
            break;
        }
        let x3 = ring.mul(&x2, &x);
        x = ring.sub(&ring.scale_int(&x2, 3), &ring.scale_int(&x3, 2));
        iterations += 1;
        ensure_internal!(iterations <= 64, "Newton iteration for an idempotent did not converge");
    }
    ensure_internal!(
        is_nilpotent(ring, &ring.sub(&x, e))?,
        "lifted idempotent differs from the input by a non-nilpotent"
    );
    Ok(NewtonLift {
        idempotent: Idempotent::new_unchecked(x),
        iterations,
    })
}

/// Coefficients `e_0, …, e_m` of `det(Id + (T − 1)·F)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankPolynomial<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> RankPolynomial<E> {
    pub(crate) fn from_coeffs(coeffs: Vec<E>) -> Self {
        RankPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    /// `k` when `P(T) = T^k`.
    pub fn constant_rank<R: Ring<Elem = E>>(&self, ring: &R) -> Option<usize> {
        let k = self.coeffs.iter().position(|c| ring.is_one(c))?;
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i == k || ring.is_zero(c))
            .then_some(k)
    }

    /// `P(T) = 1`, i.e. the idempotent matrix is zero.
    pub fn is_one<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.constant_rank(ring) == Some(0)
    }
}

/// The rank polynomial of an idempotent matrix. Its coefficients form a basic
/// system of orthogonal idempotents of the base ring (verified).
///
/// With `χ_F(λ) = Σ c_k λ^k`, `det(Id + sF) = Σ c_k (−1)^(m+k) s^(m−k)`, so the
/// determinant is obtained from the division-free characteristic polynomial.
pub fn rank_polynomial<R: Ring>(ring: &R, f: &Matrix<R::Elem>) -> Result<RankPolynomial<R::Elem>> {
    if f.rows() != f.cols() {
        return Err(Error::NotIdempotentMatrix);
    }
    if !linalg::mat_equal(ring, &linalg::mat_mul(ring, f, f), f) {
        return Err(Error::NotIdempotentMatrix);
    }
    let m = f.rows();
    let chi = linalg::char_poly(ring, f);
    let pr = PolyRing::new(ring.clone());
    let t_minus_1 = pr.from_ints(&[-1, 1]);
    let mut p = pr.zero();
    for (k, c) in chi.iter().enumerate() {
        let term = pr.scale(&pr.pow(&t_minus_1, (m - k) as u64), c);
        p = if (m + k) % 2 == 0 {
            pr.add(&p, &term)
        } else {
            pr.sub(&p, &term)
        };
    }
    let coeffs: Vec<R::Elem> = (0..=m).map(|i| pr.coeff(&p, i)).collect();
    ensure_internal!(
        ring.is_one(&ring.sum(coeffs.iter())),
        "rank polynomial coefficients do not sum to 1"
    );
    for i in 0..=m {
        ensure_internal!(
            ring.equal(&ring.mul(&coeffs[i], &coeffs[i]), &coeffs[i]),
            "rank polynomial coefficient is not idempotent"
        );
        for j in i + 1..=m {
            ensure_internal!(
                ring.is_zero(&ring.mul(&coeffs[i], &coeffs[j])),
                "rank polynomial coefficients are not orthogonal"
            );
        }
    }
    Ok(RankPolynomial { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{RingSpec, Value};
    use num_rational::BigRational;

    fn zmod(m: u64) -> RingSpec {
        RingSpec::modular_integers(m).unwrap()
    }

    fn idem(r: &RingSpec, v: u64) -> Idempotent<Value> {
        Idempotent::new(r, Value::Int(v)).unwrap()
    }

    #[test]
    fn boolean_examples() {
        let r = zmod(6);
        assert_eq!(idem(&r, 3).meet(&r, &idem(&r, 4)), idem(&r, 0));
        assert_eq!(idem(&r, 3).join(&r, &idem(&r, 4)), idem(&r, 1));
        assert_eq!(idem(&r, 1).not(&r), idem(&r, 0));
        assert!(idem(&r, 3).leq(&r, &idem(&r, 1)));
        assert!(!idem(&r, 3).leq(&r, &idem(&r, 4)));
        assert_eq!(Idempotent::new(&r, Value::Int(2)), Err(Error::NotIdempotent));
    }

    #[test]
    fn newton_examples() {
        let r = zmod(36);
        let lift = newton_lift_idempotent(&r, &Value::Int(3)).unwrap();
        assert_eq!(lift.idempotent.element(), &Value::Int(9));
        for v in [0, 1] {
            let l = newton_lift_idempotent(&r, &Value::Int(v)).unwrap();
            assert_eq!(l.idempotent.element(), &Value::Int(v));
            assert_eq!(l.iterations, 0);
        }
        assert_eq!(
            newton_lift_idempotent(&r, &Value::Int(2)).unwrap_err(),
            Error::NotAlmostIdempotent
        );
    }

    fn qm(rows: &[&[i64]]) -> Matrix<Value> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Value::Rat(BigRational::from_integer(x.into()))).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_polynomial_examples() {
        let q = RingSpec::rationals();
        let p = rank_polynomial(&q, &qm(&[&[1, 0], &[0, 0]])).unwrap();
        assert_eq!(p.coeffs(), &[q.zero(), q.one(), q.zero()]);
        assert_eq!(p.constant_rank(&q), Some(1));
        let p0 = rank_polynomial(&q, &qm(&[&[0, 0], &[0, 0]])).unwrap();
        assert!(p0.is_one(&q));
        let p2 = rank_polynomial(&q, &qm(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(p2.constant_rank(&q), Some(2));
        assert_eq!(
            rank_polynomial(&q, &qm(&[&[1, 1], &[0, 0]])).map(|p| p.constant_rank(&q)),
            Ok(Some(1))
        );
        assert_eq!(
            rank_polynomial(&q, &qm(&[&[2, 0], &[0, 0]])),
            Err(Error::NotIdempotentMatrix)
        );
    }

    #[test]
    fn rank_polynomial_nontrivial_idempotents() {
        // over Z/6 the matrix diag(3, 1) has rank 1 on the 3-part and 2 on the 4-part
        let r = zmod(6);
        let f = Matrix::from_rows(vec![
            vec![Value::Int(3), Value::Int(0)],
            vec![Value::Int(0), Value::Int(1)],
        ]);
        let p = rank_polynomial(&r, &f).unwrap();
        assert_eq!(p.coeffs(), &[Value::Int(0), Value::Int(4), Value::Int(3)]);
    }
}
