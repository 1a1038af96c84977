//! Dense univariate polynomials over any [`Ring`].

mod factor;

pub use factor::{field_factor, field_factor_seeded, field_roots, first_irreducible, is_irreducible};

use num_bigint::BigUint;
use serde_json::Value as Json;

use crate::error::{Error, Result};
use crate::linalg::{determinant, local_solve, Matrix};
use crate::ring::{value_from_json, value_to_json, LocalRing, Ring, RingSpec, Split, Value};

/// Coefficients low-to-high with no trailing zeros; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

/// The polynomial ring `R[X]`.
#[derive(Debug, Clone)]
pub struct PolyRing<R> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn poly(&self, mut coeffs: Vec<R::Elem>) -> Poly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(&self, coeffs: &[i64]) -> Poly<R::Elem> {
        self.poly(coeffs.iter().map(|&c| self.base.from_int(c)).collect())
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.poly(vec![c])
    }

    pub fn x(&self) -> Poly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn monomial(&self, c: R::Elem, k: usize) -> Poly<R::Elem> {
        let mut coeffs = vec![self.base.zero(); k];
        coeffs.push(c);
        self.poly(coeffs)
    }

    /// `X - a`.
    pub fn linear(&self, a: &R::Elem) -> Poly<R::Elem> {
        self.poly(vec![self.base.neg(a), self.base.one()])
    }

    pub fn coeff(&self, f: &Poly<R::Elem>, i: usize) -> R::Elem {
        f.coeffs.get(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn is_monic(&self, f: &Poly<R::Elem>) -> bool {
        f.lead().is_some_and(|c| self.base.is_one(c))
    }

    pub fn eval(&self, f: &Poly<R::Elem>, a: &R::Elem) -> R::Elem {
        f.coeffs
            .iter()
            .rev()
            .fold(self.base.zero(), |acc, c| self.base.add(&self.base.mul(&acc, a), c))
    }

    pub fn derivative(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.poly(
            f.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.base.scale_int(c, i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, f: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        self.poly(f.coeffs.iter().map(|x| self.base.mul(c, x)).collect())
    }

    /// `X^k · f`.
    pub fn mul_xk(&self, f: &Poly<R::Elem>, k: usize) -> Poly<R::Elem> {
        if f.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![self.base.zero(); k];
        coeffs.extend(f.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// `f(g(X))`.
    pub fn compose(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        f.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            self.add(&self.mul(&acc, g), &self.constant(c.clone()))
        })
    }

    /// `f(X + a)`.
    pub fn shift(&self, f: &Poly<R::Elem>, a: &R::Elem) -> Poly<R::Elem> {
        self.compose(f, &self.poly(vec![a.clone(), self.base.one()]))
    }

    /// `X^d · f(1/X)`, without normalizing the leading coefficient.
    pub fn reverse(&self, f: &Poly<R::Elem>, d: usize) -> Result<Poly<R::Elem>> {
        if f.deg() > d {
            return Err(Error::PreconditionViolated(format!(
                "reverse({}) of a polynomial of degree {}",
                d,
                f.deg()
            )));
        }
        let mut coeffs: Vec<R::Elem> = (0..=d).map(|i| self.coeff(f, i)).collect();
        coeffs.reverse();
        Ok(self.poly(coeffs))
    }

    /// Euclidean division by a polynomial whose leading coefficient is a unit.
    pub fn divmod(
        &self,
        f: &Poly<R::Elem>,
        g: &Poly<R::Elem>,
    ) -> Result<(Poly<R::Elem>, Poly<R::Elem>)> {
        let lead = g.lead().ok_or(Error::NotInvertible)?;
        let inv = self.base.inverse(lead).ok_or(Error::NotInvertible)?;
        Ok(self.divmod_with_inverse(f, g, &inv))
    }

    /// Division by a monic polynomial.
    pub fn divmod_monic(
        &self,
        f: &Poly<R::Elem>,
        g: &Poly<R::Elem>,
    ) -> Result<(Poly<R::Elem>, Poly<R::Elem>)> {
        if !self.is_monic(g) {
            return Err(Error::NotMonic);
        }
        Ok(self.divmod_with_inverse(f, g, &self.base.one()))
    }

    fn divmod_with_inverse(
        &self,
        f: &Poly<R::Elem>,
        g: &Poly<R::Elem>,
        lead_inv: &R::Elem,
    ) -> (Poly<R::Elem>, Poly<R::Elem>) {
        let dg = g.deg();
        if f.coeffs.len() < g.coeffs.len() {
            return (Poly::zero(), f.clone());
        }
        let mut r = f.coeffs.clone();
        let mut q = vec![self.base.zero(); r.len() - dg];
        for k in (0..q.len()).rev() {
            let c = self.base.mul(&r[k + dg], lead_inv);
            if self.base.is_zero(&c) {
                continue;
            }
            for (i, gi) in g.coeffs.iter().enumerate() {
                r[k + i] = self.base.sub(&r[k + i], &self.base.mul(&c, gi));
            }
            q[k] = c;
        }
        r.truncate(dg);
        (self.poly(q), self.poly(r))
    }

    pub fn rem(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Result<Poly<R::Elem>> {
        Ok(self.divmod(f, g)?.1)
    }

    /// Scale to a monic polynomial (leading coefficient must be a unit).
    pub fn make_monic(&self, f: &Poly<R::Elem>) -> Result<Poly<R::Elem>> {
        match f.lead() {
            None => Ok(Poly::zero()),
            Some(c) => {
                let inv = self.base.inverse(c).ok_or(Error::NotInvertible)?;
                Ok(self.scale(f, &inv))
            }
        }
    }

    /// Monic gcd over a field.
    pub fn gcd(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Result<Poly<R::Elem>> {
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b)?;
            a = b;
            b = r;
        }
        self.make_monic(&a)
    }

    /// `(d, s, t)` with `d = s·f + t·g` the monic gcd, over a field.
    pub fn ext_gcd(
        &self,
        f: &Poly<R::Elem>,
        g: &Poly<R::Elem>,
    ) -> Result<(Poly<R::Elem>, Poly<R::Elem>, Poly<R::Elem>)> {
        let (mut r0, mut r1) = (f.clone(), g.clone());
        let (mut s0, mut s1) = (self.one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divmod(&r0, &r1)?;
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        match r0.lead() {
            None => Ok((r0, s0, t0)),
            Some(c) => {
                let inv = self.base.inverse(c).ok_or(Error::NotInvertible)?;
                Ok((self.scale(&r0, &inv), self.scale(&s0, &inv), self.scale(&t0, &inv)))
            }
        }
    }

    /// `f^e mod m`.
    pub fn powmod(
        &self,
        f: &Poly<R::Elem>,
        e: &BigUint,
        m: &Poly<R::Elem>,
    ) -> Result<Poly<R::Elem>> {
        let mut acc = self.rem(&self.one(), m)?;
        let base = self.rem(f, m)?;
        for i in (0..e.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m)?;
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &base), m)?;
            }
        }
        Ok(acc)
    }

    /// Apply a coefficient map into another ring.
    pub fn map_into<S: Ring, F>(&self, target: &PolyRing<S>, f: &Poly<R::Elem>, map: F) -> Poly<S::Elem>
    where
        F: Fn(&R::Elem) -> S::Elem,
    {
        target.poly(f.coeffs.iter().map(map).collect())
    }

    pub fn try_map_into<S: Ring, F>(
        &self,
        target: &PolyRing<S>,
        f: &Poly<R::Elem>,
        map: F,
    ) -> Result<Poly<S::Elem>>
    where
        F: Fn(&R::Elem) -> Result<S::Elem>,
    {
        Ok(target.poly(f.coeffs.iter().map(map).collect::<Result<Vec<_>>>()?))
    }

    /// Sylvester matrix of `g` (degree m) and `h` (degree n), size m+n.
    pub fn sylvester(&self, g: &Poly<R::Elem>, h: &Poly<R::Elem>) -> Matrix<R::Elem> {
        let (m, n) = (g.deg(), h.deg());
        let size = m + n;
        let mut s = Matrix::zeros(&self.base, size, size);
        for i in 0..n {
            for (k, c) in g.coeffs.iter().rev().enumerate() {
                s.set(i, i + k, c.clone());
            }
        }
        for i in 0..m {
            for (k, c) in h.coeffs.iter().rev().enumerate() {
                s.set(n + i, i + k, c.clone());
            }
        }
        s
    }

    /// Determinant of the Sylvester matrix; zero if either input is zero.
    pub fn resultant(&self, g: &Poly<R::Elem>, h: &Poly<R::Elem>) -> R::Elem {
        if g.is_zero() || h.is_zero() {
            return self.base.zero();
        }
        determinant(&self.base, &self.sylvester(g, h))
    }
}

impl<R: LocalRing> PolyRing<R> {
    /// Coefficientwise image in the residue field.
    pub fn residue(&self, f: &Poly<R::Elem>) -> Result<Poly<Value>> {
        let k = PolyRing::new(self.base.residue_field()?);
        self.try_map_into(&k, f, |c| self.base.residue(c))
    }

    /// Coefficientwise lift of a residual polynomial along the fixed section.
    pub fn lift_residue(&self, f: &Poly<Value>) -> Result<Poly<R::Elem>> {
        Ok(self.poly(
            f.coeffs
                .iter()
                .map(|c| self.base.lift_residue(c))
                .collect::<Result<Vec<_>>>()?,
        ))
    }

    /// `u·g + v·h = 1` with `deg u < deg h` and `deg v < deg g`, for monic
    /// `g, h` that are coprime modulo the maximal ideal.
    pub fn bezout_coprime(
        &self,
        g: &Poly<R::Elem>,
        h: &Poly<R::Elem>,
    ) -> Result<(Poly<R::Elem>, Poly<R::Elem>)> {
        if !self.is_monic(g) || !self.is_monic(h) {
            return Err(Error::NotMonic);
        }
        if let Split::Radical = self.base.local_split(&self.resultant(g, h))? {
            return Err(Error::NotResiduallyCoprime);
        }
        self.bezout_solve(g, h)?.ok_or(Error::NotResiduallyCoprime)
    }

    /// Solves the Sylvester system for `u·g + v·h = 1` by unit-pivot elimination.
    pub(crate) fn bezout_solve(
        &self,
        g: &Poly<R::Elem>,
        h: &Poly<R::Elem>,
    ) -> Result<Option<(Poly<R::Elem>, Poly<R::Elem>)>> {
        let (m, n) = (g.deg(), h.deg());
        let size = m + n;
        if size == 0 {
            // both are units
            let inv = self.base.inverse(&self.coeff(h, 0));
            return Ok(inv.map(|i| (Poly::zero(), self.constant(i))));
        }
        // columns: coefficients of u (n of them) then of v (m of them)
        let mut a = Matrix::zeros(&self.base, size, size);
        for i in 0..n {
            for (k, c) in g.coeffs.iter().enumerate() {
                a.set(i + k, i, c.clone());
            }
        }
        for j in 0..m {
            for (k, c) in h.coeffs.iter().enumerate() {
                a.set(j + k, n + j, c.clone());
            }
        }
        let mut rhs = vec![self.base.zero(); size];
        rhs[0] = self.base.one();
        let Some(sol) = local_solve(&self.base, &a, &rhs)? else {
            return Ok(None);
        };
        let u = self.poly(sol[..n].to_vec());
        let v = self.poly(sol[n..].to_vec());
        let check = self.add(&self.mul(&u, g), &self.mul(&v, h));
        crate::error::ensure_internal!(self.is_one(&check), "Bezout certificate u·g + v·h != 1");
        Ok(Some((u, v)))
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Poly<R::Elem> {
        Poly::zero()
    }

    fn one(&self) -> Poly<R::Elem> {
        self.constant(self.base.one())
    }

    fn from_int(&self, n: i64) -> Poly<R::Elem> {
        self.constant(self.base.from_int(n))
    }

    fn add(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        self.poly(
            (0..n)
                .map(|i| match (a.coeffs.get(i), b.coeffs.get(i)) {
                    (Some(x), Some(y)) => self.base.add(x, y),
                    (Some(x), None) | (None, Some(x)) => x.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }

    fn neg(&self, a: &Poly<R::Elem>) -> Poly<R::Elem> {
        Poly {
            coeffs: a.coeffs.iter().map(|x| self.base.neg(x)).collect(),
        }
    }

    fn mul(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.base.add(&out[i + j], &self.base.mul(x, y));
            }
        }
        self.poly(out)
    }

    fn is_zero(&self, a: &Poly<R::Elem>) -> bool {
        a.coeffs.iter().all(|c| self.base.is_zero(c))
    }

    fn equal(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> bool {
        a.coeffs.len() == b.coeffs.len()
            && a.coeffs.iter().zip(&b.coeffs).all(|(x, y)| self.base.equal(x, y))
    }

    /// Only constant units are detected.
    fn inverse(&self, a: &Poly<R::Elem>) -> Option<Poly<R::Elem>> {
        if a.coeffs.len() == 1 {
            self.base.inverse(&a.coeffs[0]).map(|c| self.constant(c))
        } else {
            None
        }
    }

    fn is_domain(&self) -> bool {
        self.base.is_domain()
    }
}

pub fn poly_from_json(ring: &RingSpec, j: &Json) -> Result<Poly<Value>> {
    let Json::Array(items) = j else {
        return Err(Error::Parse(format!("polynomial must be a JSON array, got {}", j)));
    };
    let coeffs = items
        .iter()
        .map(|c| value_from_json(ring, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyRing::new(ring.clone()).poly(coeffs))
}

pub fn parse_poly(ring: &RingSpec, text: &str) -> Result<Poly<Value>> {
    poly_from_json(ring, &crate::ring::parse_json(text)?)
}

pub fn poly_to_json(ring: &RingSpec, f: &Poly<Value>) -> Json {
    Json::Array(f.coeffs.iter().map(|c| value_to_json(ring, c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(s: &str) -> PolyRing<RingSpec> {
        PolyRing::new(s.parse().unwrap())
    }

    fn p(r: &PolyRing<RingSpec>, text: &str) -> Poly<Value> {
        parse_poly(r.base(), text).unwrap()
    }

    #[test]
    fn reverse_shift_compose() {
        let r = ring("Zloc:7");
        assert_eq!(r.reverse(&p(&r, "[-1,1,7]"), 2).unwrap(), p(&r, "[7,1,-1]"));
        assert!(r.reverse(&p(&r, "[-1,1,7]"), 1).is_err());
        let f = p(&r, "[3,0,2,5]");
        assert_eq!(r.shift(&f, &r.base().zero()), f);
        let q = ring("Q");
        assert_eq!(q.compose(&p(&q, "[0,0,1]"), &p(&q, "[1,1]")), p(&q, "[1,2,1]"));
    }

    #[test]
    fn divmod_examples() {
        let r = ring("Fp:7");
        let (q, rem) = r.divmod_monic(&p(&r, "[-2,0,1]"), &p(&r, "[-3,1]")).unwrap();
        assert_eq!(q, p(&r, "[3,1]"));
        assert!(rem.is_zero());
        let f = p(&r, "[1,2,3]");
        assert_eq!(r.divmod_monic(&f, &r.one()).unwrap(), (f.clone(), Poly::zero()));
        assert_eq!(r.divmod_monic(&Poly::zero(), &f), Err(Error::NotMonic));
        let g = p(&r, "[1,1]");
        assert_eq!(r.divmod_monic(&Poly::zero(), &g).unwrap(), (Poly::zero(), Poly::zero()));
    }

    #[test]
    fn resultant_examples() {
        let q = ring("Q");
        assert_eq!(q.resultant(&p(&q, "[-1,1]"), &p(&q, "[1,1]")), q.base().from_int(2));
        let f = p(&q, "[3,1,4]");
        assert_eq!(q.resultant(&f, &q.one()), q.base().one());
        let f5 = ring("Fp:5");
        assert!(f5.base().is_zero(&f5.resultant(&p(&f5, "[0,1]"), &p(&f5, "[0,1]"))));
    }

    #[test]
    fn bezout_examples() {
        let r = ring("Zloc:3");
        let (u, v) = r.bezout_coprime(&p(&r, "[-1,1]"), &p(&r, "[1,1]")).unwrap();
        assert_eq!(u, p(&r, "[[-1,2]]"));
        assert_eq!(v, p(&r, "[[1,2]]"));
        let (u, v) = r.bezout_coprime(&p(&r, "[0,1]"), &r.one()).unwrap();
        assert!(u.is_zero());
        assert_eq!(v, r.one());
        let r5 = ring("Zloc:5");
        assert_eq!(
            r5.bezout_coprime(&p(&r5, "[0,1]"), &p(&r5, "[0,1]")),
            Err(Error::NotResiduallyCoprime)
        );
    }

    fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-30i64..30, 0..max_len)
    }

    proptest! {
        #[test]
        fn divmod_round_trip(f in coeffs(8), g in coeffs(5)) {
            let r = ring("Zloc:5");
            let mut g = r.from_ints(&g);
            g = r.add(&g, &r.monomial(r.base().one(), g.deg() + 1));
            let f = r.from_ints(&f);
            let (q, rem) = r.divmod_monic(&f, &g).unwrap();
            prop_assert!(rem.deg() < g.deg() || rem.is_zero());
            prop_assert_eq!(r.add(&r.mul(&q, &g), &rem), f);
        }

        #[test]
        fn resultant_specializes_to_residue(g in coeffs(4), h in coeffs(4)) {
            let r = ring("Zloc:5");
            let mut g = r.from_ints(&g);
            g = r.add(&g, &r.monomial(r.base().one(), g.deg() + 1));
            let mut h = r.from_ints(&h);
            h = r.add(&h, &r.monomial(r.base().one(), h.deg() + 1));
            let res = r.resultant(&g, &h);
            let k = PolyRing::new(r.base().residue_field().unwrap());
            let res_bar = k.resultant(&r.residue(&g).unwrap(), &r.residue(&h).unwrap());
            prop_assert_eq!(r.base().residue(&res).unwrap(), res_bar);
        }

        #[test]
        fn bezout_certificate(g in coeffs(4), h in coeffs(4)) {
            let r = ring("PadicTrunc:3:4");
            let mut g = r.from_ints(&g);
            g = r.add(&g, &r.monomial(r.base().one(), g.deg() + 1));
            let mut h = r.from_ints(&h);
            h = r.add(&h, &r.monomial(r.base().one(), h.deg() + 1));
            match r.bezout_coprime(&g, &h) {
                Ok((u, v)) => {
                    prop_assert!(r.is_one(&r.add(&r.mul(&u, &g), &r.mul(&v, &h))));
                    prop_assert!(u.is_zero() || u.deg() < h.deg());
                    prop_assert!(v.is_zero() || v.deg() < g.deg());
                }
                Err(e) => {
                    prop_assert_eq!(e, Error::NotResiduallyCoprime);
                    let k = PolyRing::new(r.base().residue_field().unwrap());
                    let d = k.gcd(&r.residue(&g).unwrap(), &r.residue(&h).unwrap()).unwrap();
                    prop_assert!(d.deg() >= 1);
                }
            }
        }
    }
}
