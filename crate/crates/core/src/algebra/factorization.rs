//! The bijection between idempotents of `B = A[X]/(f)` and factorizations
//! `f = g·h` into monic factors that are coprime modulo the maximal ideal.

use super::{FiniteAlgebra, Idempotent};
use crate::error::{ensure_internal, Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{Poly, PolyRing};
use crate::ring::{LocalRing, Ring, ValuationRing};

fn modulus<R: Ring>(b: &FiniteAlgebra<R>) -> Result<&Poly<R::Elem>> {
    b.modulus()
        .ok_or_else(|| Error::PreconditionViolated("algebra has no monogenic presentation".into()))
}

/// `e = u(x)·g(x)` where `u·g + v·h = 1`; then `⟨g(x)⟩ = ⟨e⟩`, witnessed by
/// `e = u(x)·g(x)` and `g(x) = g(x)·e`.
pub fn fact_to_idem<R: LocalRing>(
    b: &FiniteAlgebra<R>,
    g: &Poly<R::Elem>,
    h: &Poly<R::Elem>,
) -> Result<Idempotent<Vec<R::Elem>>> {
    let f = modulus(b)?;
    let pr = PolyRing::new(b.base().clone());
    if !pr.is_monic(g) || !pr.is_monic(h) {
        return Err(Error::NotMonic);
    }
    if !pr.equal(&pr.mul(g, h), f) {
        return Err(Error::NotAFactorization);
    }
    let (u, _v) = pr.bezout_coprime(g, h)?;
    let gx = b.from_poly(g)?;
    let e = b.mul(&b.from_poly(&u)?, &gx);
    let idem = Idempotent::new(b, e)
        .map_err(|_| Error::Internal("u(x)·g(x) is not idempotent".into()))?;
    ensure_internal!(
        b.equal(&b.mul(&gx, idem.element()), &gx),
        "g(x) is not a multiple of e"
    );
    Ok(idem)
}

/// Recovers `(g, h)` from an idempotent: `ḡ = gcd(ē, f̄)`, `h̄ = gcd(1 − ē, f̄)`;
/// with `g₂ = e·g₁(x)` the vectors `x^i·g₂ (i < deg h)` are a basis of `e·B`,
/// and expressing `x^m·g₂` in it gives `h`; symmetrically for `g`.
pub fn idem_to_fact<R: LocalRing>(
    b: &FiniteAlgebra<R>,
    e: &[R::Elem],
) -> Result<(Poly<R::Elem>, Poly<R::Elem>)> {
    let f = modulus(b)?.clone();
    let e = Idempotent::new(b, e.to_vec())?;
    let n = b.rank();
    let pr = PolyRing::new(b.base().clone());
    let k = PolyRing::new(b.base().residue_field()?);
    let f_bar = pr.residue(&f)?;
    let e_bar = pr.residue(&b.to_poly(e.element()))?;
    let g_bar = k.gcd(&e_bar, &f_bar)?;
    let h_bar = k.gcd(&k.sub(&k.one(), &e_bar), &f_bar)?;
    ensure_internal!(
        g_bar.deg() + h_bar.deg() == n,
        "residual gcds have degrees {} + {} != {}",
        g_bar.deg(),
        h_bar.deg(),
        n
    );
    let not_e = b.sub(&b.one(), e.element());
    let g2 = b.mul(e.element(), &b.from_poly(&pr.lift_residue(&g_bar)?)?);
    let h2 = b.mul(&not_e, &b.from_poly(&pr.lift_residue(&h_bar)?)?);
    let h = annihilator(b, &g2, h_bar.deg())?;
    let g = annihilator(b, &h2, g_bar.deg())?;
    ensure_internal!(pr.equal(&pr.mul(&g, &h), &f), "recovered factors do not multiply to f");
    Ok((g, h))
}

/// Monic `p` of degree `m` with `p(x)·v = 0`, from `x^m·v = Σ a_i x^i·v`.
fn annihilator<R: LocalRing>(b: &FiniteAlgebra<R>, v: &[R::Elem], m: usize) -> Result<Poly<R::Elem>> {
    let pr = PolyRing::new(b.base().clone());
    let x = b.generator()?;
    let mut cols = Vec::with_capacity(m);
    let mut cur = v.to_vec();
    for _ in 0..m {
        cols.push(cur.clone());
        cur = b.mul(&cur, &x);
    }
    let coeffs = if m == 0 {
        Vec::new()
    } else {
        let a = Matrix::from_columns(b.rank(), &cols);
        linalg::local_solve(b.base(), &a, &cur)?.ok_or_else(|| {
            Error::Internal("x^i·g₂ do not form a basis of the idempotent's ideal".into())
        })?
    };
    let mut p: Vec<R::Elem> = coeffs.iter().map(|c| b.base().neg(c)).collect();
    p.push(b.base().one());
    let p = pr.poly(p);
    ensure_internal!(b.is_zero(&b.mul(&b.from_poly(&p)?, &v.to_vec())), "annihilator check failed");
    Ok(p)
}

/// Equality of principal ideals `⟨a⟩ = ⟨c⟩` in `B`, by solving `c·y = a`
/// and `a·z = c` over a valuation base.
pub fn ideal_eq<R: ValuationRing>(b: &FiniteAlgebra<R>, a: &[R::Elem], c: &[R::Elem]) -> Result<bool> {
    let base = b.base();
    let a_in_c = linalg::valuation_solve(base, &b.mult_matrix(c), a)?.is_some();
    let c_in_a = linalg::valuation_solve(base, &b.mult_matrix(a), c)?.is_some();
    Ok(a_in_c && c_in_a)
}
