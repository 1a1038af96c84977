use super::idempotent::lift_idempotent_uda;
use crate::algebra::{fact_to_idem, idem_to_fact, FiniteAlgebra, LocalExtension};
use crate::error::{ensure_internal, Error, Result};
use crate::poly::{first_irreducible, Poly, PolyRing};
use crate::ring::{HenselOracle, LocalRing, Ring, RingKind, RingSpec, Split, Value};
use crate::uda::{UdaAlgebra, DEFAULT_DEGREE_CAP, MAX_DEGREE_CAP};

/// How a monic factorization was lifted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Idempotent lifting through the universal decomposition algebra.
    Uda,
    /// Quadratic Newton-style correction with exact Bézout cofactors.
    Quadratic,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Uda => "uda",
            Route::Quadratic => "quadratic",
        }
    }
}

/// Branch taken by the non-monic lift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonmonicRoute {
    /// `f` is monic; delegated to the monic lift.
    Monic,
    /// `f(0)` is a unit: factor the reversed polynomial.
    Reverse,
    /// Shift by a residue `a` with `f̄(a) ≠ 0`, then reverse.
    Shift,
    /// Residue field too small: lift in an unramified extension and descend.
    Extension,
}

impl NonmonicRoute {
    pub fn name(self) -> &'static str {
        match self {
            NonmonicRoute::Monic => "monic",
            NonmonicRoute::Reverse => "reverse",
            NonmonicRoute::Shift => "shift",
            NonmonicRoute::Extension => "extension",
        }
    }
}

/// Lifted factors `f = g·h`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorLift<E> {
    pub g: Poly<E>,
    pub h: Poly<E>,
    pub route: Route,
    /// Whether the other route was also run and agreed.
    pub cross_checked: bool,
}

/// Residual preconditions shared by the monic and non-monic lifts.
fn check_residual_factorization<R: LocalRing>(
    ring: &R,
    f: &Poly<R::Elem>,
    g0: &Poly<R::Elem>,
    h0: &Poly<R::Elem>,
) -> Result<(Poly<Value>, Poly<Value>)> {
    let pr = PolyRing::new(ring.clone());
    let k = PolyRing::new(ring.residue_field()?);
    let (g_bar, h_bar) = (pr.residue(g0)?, pr.residue(h0)?);
    if !k.equal(&pr.residue(f)?, &k.mul(&g_bar, &h_bar)) {
        return Err(Error::NotAFactorizationResidually);
    }
    if k.gcd(&g_bar, &h_bar)?.deg() > 0 || (g_bar.is_zero() && h_bar.is_zero()) {
        return Err(Error::NotResiduallyCoprime);
    }
    Ok((g_bar, h_bar))
}

/// The unique monic `f = g·h` with `ḡ = ḡ₀`, `h̄ = h̄₀`. Up to the UDA degree
/// cap the UDA route is used and the quadratic route must agree with it;
/// above the cap only the quadratic route runs.
pub fn lift_monic_factorization<H: HenselOracle>(
    ring: &H,
    f: &Poly<H::Elem>,
    g0: &Poly<H::Elem>,
    h0: &Poly<H::Elem>,
) -> Result<FactorLift<H::Elem>> {
    lift_monic_factorization_capped(ring, f, g0, h0, DEFAULT_DEGREE_CAP)
}

/// [`lift_monic_factorization`] with an explicit UDA degree cap (at most
/// [`MAX_DEGREE_CAP`]).
pub fn lift_monic_factorization_capped<H: HenselOracle>(
    ring: &H,
    f: &Poly<H::Elem>,
    g0: &Poly<H::Elem>,
    h0: &Poly<H::Elem>,
    cap: usize,
) -> Result<FactorLift<H::Elem>> {
    if f.deg() > cap.min(MAX_DEGREE_CAP) {
        return lift_monic_factorization_via(ring, f, g0, h0, Route::Quadratic);
    }
    let uda = lift_via(ring, f, g0, h0, Route::Uda, cap)?;
    let quad = lift_via(ring, f, g0, h0, Route::Quadratic, cap)?;
    let pr = PolyRing::new(ring.clone());
    ensure_internal!(
        pr.equal(&uda.g, &quad.g) && pr.equal(&uda.h, &quad.h),
        "UDA and quadratic routes disagree"
    );
    Ok(FactorLift {
        cross_checked: true,
        ..uda
    })
}

pub fn lift_monic_factorization_via<H: HenselOracle>(
    ring: &H,
    f: &Poly<H::Elem>,
    g0: &Poly<H::Elem>,
    h0: &Poly<H::Elem>,
    route: Route,
) -> Result<FactorLift<H::Elem>> {
    lift_via(ring, f, g0, h0, route, MAX_DEGREE_CAP)
}

fn lift_via<H: HenselOracle>(
    ring: &H,
    f: &Poly<H::Elem>,
    g0: &Poly<H::Elem>,
    h0: &Poly<H::Elem>,
    route: Route,
    cap: usize,
) -> Result<FactorLift<H::Elem>> {
    let pr = PolyRing::new(ring.clone());
    if !pr.is_monic(f) || !pr.is_monic(g0) || !pr.is_monic(h0) {
        return Err(Error::NotMonic);
    }
    let (g_bar, h_bar) = check_residual_factorization(ring, f, g0, h0)?;
    let (g, h) = match route {
        Route::Uda => lift_via_uda(ring, f, &g_bar, &h_bar, cap)?,
        Route::Quadratic => lift_quadratic(ring, f, g0, h0)?,
    };
    ensure_internal!(pr.equal(&pr.mul(&g, &h), f), "lifted factors do not multiply to f");
    let k = PolyRing::new(ring.residue_field()?);
    ensure_internal!(
        k.equal(&pr.residue(&g)?, &g_bar) && k.equal(&pr.residue(&h)?, &h_bar),
        "lifted factors have the wrong residues"
    );
    Ok(FactorLift {
        g,
        h,
        route,
        cross_checked: false,
    })
}

/// Residual idempotent of `k[X]/(f̄)` for `(ḡ, h̄)`, lifted in `D_A(f)`,
/// descended to `A[X]/(f)` and converted back to factors.
fn lift_via_uda<H: HenselOracle>(
    ring: &H,
    f: &Poly<H::Elem>,
    g_bar: &Poly<Value>,
    h_bar: &Poly<Value>,
    cap: usize,
) -> Result<(Poly<H::Elem>, Poly<H::Elem>)> {
    let pr = PolyRing::new(ring.clone());
    if f.deg() == 0 {
        return Ok((pr.one(), pr.one()));
    }
    let b = FiniteAlgebra::monogenic(ring.clone(), f.clone())?;
    let b_bar = b.residue_algebra()?;
    let e_bar = fact_to_idem(&b_bar, g_bar, h_bar)?;
    let d = UdaAlgebra::with_cap(ring.clone(), f.clone(), cap)?;
    let r = d.embed_monogenic(&b.lift_residue(e_bar.element())?);
    let e_d = lift_idempotent_uda(&d, &r)?;
    let e_b = d.descend_monogenic(e_d.element()).ok_or_else(|| {
        Error::Internal("lifted idempotent does not lie in A[X]/(f)".into())
    })?;
    idem_to_fact(&b, &e_b)
}

/// `g ← g + (v·ε mod g)`, `h ← h + (u·ε mod h)` with `ε = f − g·h` and
/// `u·g + v·h = 1` recomputed exactly at each step; the new defect is
/// `−δg·δh`, so its order in `m` doubles.
fn lift_quadratic<H: HenselOracle>(
    ring: &H,
    f: &Poly<H::Elem>,
    g0: &Poly<H::Elem>,
    h0: &Poly<H::Elem>,
) -> Result<(Poly<H::Elem>, Poly<H::Elem>)> {
    let pr = PolyRing::new(ring.clone());
    let bound = 64 - ring.newton_precision()?.leading_zeros() as usize + 1;
    let (mut g, mut h) = (g0.clone(), h0.clone());
    for _ in 0..=bound {
        let err = pr.sub(f, &pr.mul(&g, &h));
        if err.is_zero() {
            return Ok((g, h));
        }
        let (u, v) = pr.bezout_coprime(&g, &h)?;
        let dg = pr.rem(&pr.mul(&v, &err), &g)?;
        let dh = pr.rem(&pr.mul(&u, &err), &h)?;
        g = pr.add(&g, &dg);
        h = pr.add(&h, &dh);
    }
    Err(Error::Internal("quadratic lifting did not converge".into()))
}

/// `f = g·h` with `g` monic, `ḡ = ḡ₀`, `h̄ = h̄₀`, for `f` not necessarily monic.
pub fn lift_nonmonic_factorization<H: HenselOracle>(
    ring: &H,
    f: &Poly<H::Elem>,
    g0: &Poly<H::Elem>,
    h0: &Poly<H::Elem>,
) -> Result<(Poly<H::Elem>, Poly<H::Elem>, NonmonicRoute)> {
    let pr = PolyRing::new(ring.clone());
    if !pr.is_monic(g0) {
        return Err(Error::NotMonic);
    }
    let (g_bar, h_bar) = check_residual_factorization(ring, f, g0, h0)?;
    if h_bar.is_zero() {
        return Err(Error::PreconditionViolated("f vanishes modulo the maximal ideal".into()));
    }
    if pr.is_monic(f) {
        let h_monic = pr.lift_residue(&h_bar)?;
        let lift = lift_monic_factorization(ring, f, g0, &h_monic)?;
        return Ok((lift.g, lift.h, NonmonicRoute::Monic));
    }
    if let Some((g, h, shifted)) = by_shift(ring, f, &g_bar, &h_bar)? {
        let route = if shifted {
            NonmonicRoute::Shift
        } else {
            NonmonicRoute::Reverse
        };
        return Ok((g, h, route));
    }
    let (g, h) = via_extension(ring, f, &g_bar, &h_bar)?;
    Ok((g, h, NonmonicRoute::Extension))
}

/// Residue-field candidates `0, 1, 2, …` in canonical order, at most `limit`.
fn residue_candidates(k: &RingSpec, limit: u64) -> Result<Vec<Value>> {
    match k.field_size() {
        Some(q) => (0..q.min(limit)).map(|i| k.field_element(i)).collect(),
        None => Ok((0..limit as i64).map(|i| k.from_int(i)).collect()),
    }
}

/// Branches (i) and (ii): shift by the first residue `a` with `f̄(a) ≠ 0`
/// and use the reverse trick. `None` if every residue is a root of `f̄`.
fn by_shift<H: HenselOracle>(
    ring: &H,
    f: &Poly<H::Elem>,
    g_bar: &Poly<Value>,
    h_bar: &Poly<Value>,
) -> Result<Option<(Poly<H::Elem>, Poly<H::Elem>, bool)>> {
    let pr = PolyRing::new(ring.clone());
    let k = PolyRing::new(ring.residue_field()?);
    let f_bar = k.mul(g_bar, h_bar);
    for a in residue_candidates(k.base(), f_bar.deg() as u64 + 1)? {
        if k.base().is_zero(&k.eval(&f_bar, &a)) {
            continue;
        }
        let shifted = !k.base().is_zero(&a);
        let gamma = ring.lift_residue(&a)?;
        let f_a = pr.shift(f, &gamma);
        let g_a_bar = k.shift(g_bar, &a);
        let (g_a, h_a) = by_reversal(ring, &f_a, &g_a_bar)?;
        let neg = ring.neg(&gamma);
        let g = pr.shift(&g_a, &neg);
        let h = pr.shift(&h_a, &neg);
        ensure_internal!(pr.equal(&pr.mul(&g, &h), f), "shifted factors do not multiply to f");
        return Ok(Some((g, h, shifted)));
    }
    Ok(None)
}

/// For `f(0)` a unit: `F = Xⁿf(1/X)/f(0)` is monic; lift `F = G·H` with
/// `Ḡ = rev(ḡ)/ḡ(0)`, then `g = rev(G)/G(0)` and `h = f/g`.
fn by_reversal<H: HenselOracle>(
    ring: &H,
    f: &Poly<H::Elem>,
    g_bar: &Poly<Value>,
) -> Result<(Poly<H::Elem>, Poly<H::Elem>)> {
    let pr = PolyRing::new(ring.clone());
    let k = PolyRing::new(ring.residue_field()?);
    let n = f.deg();
    let d = g_bar.deg();
    let Split::Unit(f0_inv) = ring.local_split(&pr.coeff(f, 0))? else {
        return Err(Error::Internal("reverse trick needs a unit constant term".into()));
    };
    let big_f = pr.scale(&pr.reverse(f, n)?, &f0_inv);
    let g0_inv = k
        .base()
        .inverse(&k.coeff(g_bar, 0))
        .ok_or_else(|| Error::Internal("residual factor vanishes at 0".into()))?;
    let big_g_bar = k.scale(&k.reverse(g_bar, d)?, &g0_inv);
    let (big_h_bar, rem) = k.divmod_monic(&pr.residue(&big_f)?, &big_g_bar)?;
    ensure_internal!(rem.is_zero(), "reversed residual factor does not divide");
    let lift = lift_monic_factorization(
        ring,
        &big_f,
        &pr.lift_residue(&big_g_bar)?,
        &pr.lift_residue(&big_h_bar)?,
    )?;
    let Split::Unit(g_c_inv) = ring.local_split(&pr.coeff(&lift.g, 0))? else {
        return Err(Error::Internal("lifted reversed factor has radical constant term".into()));
    };
    let g = pr.scale(&pr.reverse(&lift.g, d)?, &g_c_inv);
    let (h, rem) = pr.divmod_monic(f, &g)?;
    ensure_internal!(rem.is_zero(), "monic factor does not divide f");
    Ok((g, h))
}

/// Branch (iii): every residue is a root of `f̄`. Adjoin an unramified step of
/// prime degree `d` with `p^d > deg f̄`, lift there and descend.
fn via_extension<H: HenselOracle>(
    ring: &H,
    f: &Poly<H::Elem>,
    g_bar: &Poly<Value>,
    h_bar: &Poly<Value>,
) -> Result<(Poly<H::Elem>, Poly<H::Elem>)> {
    let k = ring.residue_field()?;
    let RingKind::PrimeField { p } = *k.kind() else {
        return Err(Error::UnsupportedKind(
            "extension branch needs a prime residue field".into(),
        ));
    };
    let n = g_bar.deg() + h_bar.deg();
    let d = (2u32..)
        .filter(|&d| (2..d).all(|q| d % q != 0))
        .find(|&d| (p as u128).pow(d) > n as u128)
        .expect("some prime degree suffices") as usize;
    let pr = PolyRing::new(ring.clone());
    let modulus = pr.lift_residue(&first_irreducible(&k, d)?)?;
    let ext = LocalExtension::new(ring.clone(), modulus)?;
    let er = PolyRing::new(ext.clone());
    let embed = |q: &Poly<H::Elem>| er.poly(q.coeffs().iter().map(|c| ext.embed(c)).collect());
    let kq = PolyRing::new(ext.residue_field()?);
    let k_to_ext = |q: &Poly<Value>| -> Result<Poly<Value>> {
        Ok(kq.poly(
            q.coeffs()
                .iter()
                .map(|c| ext.residue(&ext.embed(&ring.lift_residue(c)?)))
                .collect::<Result<Vec<_>>>()?,
        ))
    };
    let (ge, he, _) = by_shift(&ext, &embed(f), &k_to_ext(g_bar)?, &k_to_ext(h_bar)?)?
        .ok_or_else(|| Error::Internal("extension residue field is still too small".into()))?;
    let descend = |q: &Poly<Vec<H::Elem>>| -> Result<Poly<H::Elem>> {
        Ok(pr.poly(
            q.coeffs()
                .iter()
                .map(|c| ext.descend(c).ok_or(Error::InternalDescentFailure))
                .collect::<Result<Vec<_>>>()?,
        ))
    };
    let (g, h) = (descend(&ge)?, descend(&he)?);
    ensure_internal!(pr.equal(&pr.mul(&g, &h), f), "descended factors do not multiply to f");
    Ok((g, h))
}
