//! Hensel lifting over Henselian oracles: simple roots, Galois and arbitrary
//! idempotents, monic and non-monic factorizations, and the decomposition
//! of finite algebras into local factors.

mod factor;
mod idempotent;

pub use factor::{
    lift_monic_factorization, lift_monic_factorization_capped, lift_monic_factorization_via,
    lift_nonmonic_factorization,
    FactorLift, NonmonicRoute, Route,
};
pub use idempotent::{
    decompose_finite_algebra, lift_galois_idempotent, lift_idempotent_finite_algebra,
    lift_idempotent_uda, GaloisLift,
};

use crate::error::{ensure_internal, Error, Result};
use crate::poly::{Poly, PolyRing};
use crate::ring::{HenselOracle, LocalRing, Ring, Split, Value};

/// A root found by Newton iteration and the number of correction steps.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonRoot<E> {
    pub root: E,
    pub iterations: usize,
}

fn check_hensel_shape<R: LocalRing>(ring: &R, f: &Poly<R::Elem>) -> Result<()> {
    let pr = PolyRing::new(ring.clone());
    if !ring.is_unit(&pr.coeff(f, 1))? {
        return Err(Error::PreconditionViolated("linear coefficient is not a unit".into()));
    }
    if !ring.in_radical(&pr.coeff(f, 0))? {
        return Err(Error::PreconditionViolated(
            "constant coefficient is not in the maximal ideal".into(),
        ));
    }
    Ok(())
}

fn ceil_log2(n: u64) -> usize {
    (64 - n.saturating_sub(1).leading_zeros()) as usize
}

/// Newton iteration from 0 for `f` with unit linear and radical constant
/// coefficient; the defect `f(α)` moves from `m^k` to `m^2k` at each step.
pub fn newton_root<H: HenselOracle>(ring: &H, f: &Poly<H::Elem>) -> Result<NewtonRoot<H::Elem>> {
    check_hensel_shape(ring, f)?;
    let pr = PolyRing::new(ring.clone());
    let df = pr.derivative(f);
    let bound = ceil_log2(ring.newton_precision()?) + 1;
    let mut alpha = ring.zero();
    let mut iterations = 0;
    loop {
        let value = pr.eval(f, &alpha);
        if ring.is_zero(&value) {
            break;
        }
        let Split::Unit(inv) = ring.local_split(&pr.eval(&df, &alpha))? else {
            return Err(Error::Internal("derivative left the units during Newton iteration".into()));
        };
        alpha = ring.sub(&alpha, &ring.mul(&value, &inv));
        iterations += 1;
        ensure_internal!(iterations <= bound, "Newton iteration exceeded {} steps", bound);
    }
    ensure_internal!(ring.in_radical(&alpha)?, "Newton root left the maximal ideal");
    Ok(NewtonRoot {
        root: alpha,
        iterations,
    })
}

/// The root in the maximal ideal of a monic `f` with `a₁` a unit and `a₀ ∈ m`.
pub fn hensel_root_monic<H: HenselOracle>(ring: &H, f: &Poly<H::Elem>) -> Result<H::Elem> {
    if !PolyRing::new(ring.clone()).is_monic(f) {
        return Err(Error::PreconditionViolated("polynomial is not monic".into()));
    }
    Ok(newton_root(ring, f)?.root)
}

/// Maps a root `α ∈ m` of the monic transform back to the root
/// `β = c/(α + 1)` of the original polynomial, where `c = −a₀/a₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct Recovery<E> {
    pub c: E,
}

impl<E: Clone> Recovery<E> {
    pub fn recover<R: LocalRing<Elem = E>>(&self, ring: &R, alpha: &E) -> Result<E> {
        let Split::Unit(inv) = ring.local_split(&ring.add(alpha, &ring.one()))? else {
            return Err(Error::PreconditionViolated("α + 1 is not a unit".into()));
        };
        Ok(ring.mul(&self.c, &inv))
    }
}

/// For `f = a_n Xⁿ + ⋯ + a₁X + a₀` with `a₁` a unit and `a₀ ∈ m`, the monic
/// `g(X) = h(X + 1)` where `a₀·h(Y) = Yⁿ·f(c/Y)`, `c = −a₀/a₁`. Expanding,
/// `h(Y) = Yⁿ − Y^{n−1} − Σ_{i≥2} a_i a₁⁻¹ c^{i−1} Y^{n−i}`, so no division by
/// `a₀` is needed.
pub fn transform_nonmonic<R: LocalRing>(
    ring: &R,
    f: &Poly<R::Elem>,
) -> Result<(Poly<R::Elem>, Recovery<R::Elem>)> {
    check_hensel_shape(ring, f)?;
    let pr = PolyRing::new(ring.clone());
    let n = f.deg();
    let a1_inv = ring.inverse(&pr.coeff(f, 1)).ok_or(Error::NotInvertible)?;
    let c = ring.neg(&ring.mul(&pr.coeff(f, 0), &a1_inv));
    let mut h = vec![ring.zero(); n + 1];
    h[n] = ring.one();
    h[n - 1] = ring.sub(&h[n - 1], &ring.one());
    let mut c_pow = c.clone();
    for i in 2..=n {
        let term = ring.mul(&ring.mul(&pr.coeff(f, i), &a1_inv), &c_pow);
        h[n - i] = ring.sub(&h[n - i], &term);
        c_pow = ring.mul(&c_pow, &c);
    }
    let g = pr.shift(&pr.poly(h), &ring.one());
    Ok((g, Recovery { c }))
}

/// The unique root in `m` of a possibly non-monic `f` with unit linear
/// coefficient and radical constant coefficient. Computed through the monic
/// transform and cross-checked against Newton iteration on `f` itself.
pub fn hensel_root_nonmonic<H: HenselOracle>(ring: &H, f: &Poly<H::Elem>) -> Result<H::Elem> {
    let (g, recovery) = transform_nonmonic(ring, f)?;
    let alpha = hensel_root_monic(ring, &g)?;
    let beta = recovery.recover(ring, &alpha)?;
    let pr = PolyRing::new(ring.clone());
    ensure_internal!(ring.is_zero(&pr.eval(f, &beta)), "recovered value is not a root");
    let direct = newton_root(ring, f)?.root;
    ensure_internal!(
        ring.equal(&direct, &beta),
        "monic-transform root and direct Newton root differ"
    );
    Ok(beta)
}

/// The unique root `α` with residue `a` of `f`, for a simple residual root `a`.
pub fn lift_simple_root<H: HenselOracle>(ring: &H, f: &Poly<H::Elem>, a: &Value) -> Result<H::Elem> {
    let pr = PolyRing::new(ring.clone());
    let k = ring.residue_field()?;
    let kr = PolyRing::new(k.clone());
    let f_bar = pr.residue(f)?;
    if !k.is_zero(&kr.eval(&f_bar, a)) {
        return Err(Error::NotARoot);
    }
    if k.is_zero(&kr.eval(&kr.derivative(&f_bar), a)) {
        return Err(Error::NotSimple);
    }
    let gamma = ring.lift_residue(a)?;
    let shifted = pr.shift(f, &gamma);
    let beta = hensel_root_nonmonic(ring, &shifted)?;
    let alpha = ring.add(&gamma, &beta);
    ensure_internal!(ring.is_zero(&pr.eval(f, &alpha)), "lifted root does not annihilate f");
    Ok(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::ring::{parse_value, RingSpec};
    use proptest::prelude::*;

    fn ring(s: &str) -> RingSpec {
        s.parse().unwrap()
    }

    #[test]
    fn monic_examples() {
        let r = ring("PadicTrunc:7:3");
        let f = parse_poly(&r, "[-7,1,1]").unwrap();
        // oracle: the multiples of 7 below 343 that are roots
        let roots: Vec<u64> = (0..343u64).filter(|x| x % 7 == 0 && (x * x + x + 336) % 343 == 0).collect();
        assert_eq!(roots, vec![301]);
        assert_eq!(hensel_root_monic(&r, &f).unwrap(), Value::Int(301));
        assert_eq!(hensel_root_monic(&r, &parse_poly(&r, "[0,1,1]").unwrap()).unwrap(), Value::Int(0));
        assert!(matches!(
            hensel_root_monic(&r, &parse_poly(&r, "[1,3,1]").unwrap()),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn transform_identity() {
        let r = ring("Zloc:5");
        let pr = PolyRing::new(r.clone());
        let f = parse_poly(&r, "[-5,1,5]").unwrap();
        let (g, rec) = transform_nonmonic(&r, &f).unwrap();
        assert!(pr.is_monic(&g) && g.deg() == 2);
        assert!(r.in_radical(&pr.coeff(&g, 0)).unwrap());
        assert!(r.is_unit(&pr.coeff(&g, 1)).unwrap());
        // a₀·g(X) = Σ a_i c^i (X+1)^{n−i}
        let x1 = pr.from_ints(&[1, 1]);
        let mut rhs = pr.zero();
        for i in 0..=2 {
            let term = pr.scale(&pr.pow(&x1, 2 - i as u64), &r.mul(&pr.coeff(&f, i), &r.pow(&rec.c, i as u64)));
            rhs = pr.add(&rhs, &term);
        }
        assert_eq!(pr.scale(&g, &pr.coeff(&f, 0)), rhs);
        let (lin, _) = transform_nonmonic(&r, &pr.x()).unwrap();
        assert_eq!(lin, pr.x());
        assert!(matches!(
            transform_nonmonic(&r, &parse_poly(&r, "[-5,5,1]").unwrap()),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn nonmonic_examples() {
        let r = ring("PadicTrunc:5:3");
        let f = parse_poly(&r, "[-5,1,5]").unwrap();
        assert_eq!((5 * 25 + 5 - 5) % 125, 0);
        assert_eq!(hensel_root_nonmonic(&r, &f).unwrap(), Value::Int(5));
        let pr = PolyRing::new(r.clone());
        assert_eq!(hensel_root_nonmonic(&r, &pr.x()).unwrap(), Value::Int(0));
        let r7 = ring("PadicTrunc:7:3");
        let g = parse_poly(&r7, "[-7,1,1]").unwrap();
        assert_eq!(hensel_root_nonmonic(&r7, &g).unwrap(), hensel_root_monic(&r7, &g).unwrap());
    }

    #[test]
    fn simple_root_examples() {
        let r = ring("PadicTrunc:7:3");
        let f = parse_poly(&r, "[-2,0,1]").unwrap();
        assert_eq!((108u64 * 108) % 343, 2);
        assert_eq!(lift_simple_root(&r, &f, &Value::Int(3)).unwrap(), Value::Int(108));
        let lin = parse_poly(&r, "[-45,1]").unwrap();
        assert_eq!(lift_simple_root(&r, &lin, &Value::Int(3)).unwrap(), Value::Int(45));
        assert_eq!(lift_simple_root(&r, &f, &Value::Int(2)).unwrap_err(), Error::NotARoot);
        let r2 = ring("PadicTrunc:2:3");
        let f2 = parse_poly(&r2, "[-2,0,1]").unwrap();
        assert_eq!(lift_simple_root(&r2, &f2, &Value::Int(0)).unwrap_err(), Error::NotSimple);
    }

    #[test]
    fn series_and_extension_roots() {
        let s = ring("SeriesTrunc:Fp:5:4");
        let f = parse_poly(&s, "[[0,1],1,1]").unwrap();
        let root = hensel_root_monic(&s, &f).unwrap();
        assert!(s.is_zero(&PolyRing::new(s.clone()).eval(&f, &root)));
        let q = RingSpec::rationals();
        let v = parse_value(&q, "0").unwrap();
        assert_eq!(hensel_root_monic(&q, &parse_poly(&q, "[0,3,1]").unwrap()).unwrap(), v);
    }

    proptest! {
        #[test]
        fn unique_root_in_radical(p in prop::sample::select(vec![2u64, 3, 5]), k in 1u32..4,
                                  b in 0u64..1000, c in 0u64..1000, a2 in 0u64..1000) {
            let m = p.pow(k);
            let b = if b % p == 0 { b + 1 } else { b } % m;
            let c = (c * p) % m;
            let r = RingSpec::truncated_padics(p, k).unwrap();
            let pr = PolyRing::new(r.clone());
            let f = pr.poly(vec![Value::Int(c), Value::Int(b), Value::Int(a2 % m)]);
            let beta = hensel_root_nonmonic(&r, &f).unwrap();
            let roots: Vec<u64> = (0..m).step_by(p as usize)
                .filter(|x| (c + b * x + (a2 % m) * ((x * x) % m)) % m == 0).collect();
            prop_assert_eq!(roots, vec![beta.as_int().unwrap()]);
        }
    }
}
