use super::factor::lift_monic_factorization;
use super::lift_simple_root;
use crate::algebra::{decompose_local, factor_algebra, FiniteAlgebra, Idempotent};
use crate::error::{ensure_internal, Error, Result};
use crate::poly::PolyRing;
use crate::ring::{HenselOracle, Ring, RingSpec, Value};
use crate::uda::galois::{is_basic_system, orbit};
use crate::uda::{all_permutations, galois_from_idempotent, Permutation, UdaAlgebra};

/// A lifted Galois idempotent with its conjugates; `orbit[0]` is the
/// idempotent and `orbit[i] = representatives[i]·orbit[0]`.
#[derive(Debug, Clone)]
pub struct GaloisLift<E> {
    pub idempotent: Idempotent<Vec<E>>,
    pub orbit: Vec<Vec<E>>,
    pub representatives: Vec<Permutation>,
}

/// Lifts a residual Galois idempotent: `c₁ = Π_{σ∈Stab} σ·r`, conjugates
/// `c_i = τ_i·c₁`, `p(T) = Π (T − c_i) ∈ A[T]` lifts `T^h − T^{h−1}`; with `α`
/// the root of `p` over 1 and `λ = p′(α)⁻¹`, `e_i = λ·Π_{j≠i} (α − c_j)`.
pub fn lift_galois_idempotent<H: HenselOracle>(
    d: &UdaAlgebra<H>,
    r: &[H::Elem],
) -> Result<GaloisLift<H::Elem>> {
    let base = d.base();
    let db = d.residue_algebra()?;
    let r_bar = d.residue(r)?;
    if !db.equal(&db.uda_mul(&r_bar, &r_bar), &r_bar) {
        return Err(Error::NotGaloisResidually);
    }
    let (res_orbit, reps) = orbit(&db, &r_bar)?;
    if !is_basic_system(&db, &res_orbit) {
        return Err(Error::NotGaloisResidually);
    }
    let mut stab = Vec::new();
    for sigma in all_permutations(d.degree()) {
        if db.equal(&db.sn_act(&sigma, &r_bar)?, &r_bar) {
            stab.push(sigma);
        }
    }
    let mut c1 = d.one();
    for sigma in &stab {
        c1 = d.uda_mul(&c1, &d.sn_act(sigma, r)?);
    }
    let conj = reps
        .iter()
        .map(|tau| d.sn_act(tau, &c1))
        .collect::<Result<Vec<_>>>()?;
    let h = conj.len();
    // p(T) = Π (T − c_i), coefficients low to high
    let mut p: Vec<Vec<H::Elem>> = vec![d.one()];
    for c in &conj {
        let mut next = vec![d.zero(); p.len() + 1];
        for (k, a) in p.iter().enumerate() {
            next[k + 1] = d.add(&next[k + 1], a);
            next[k] = d.sub(&next[k], &d.uda_mul(c, a));
        }
        p = next;
    }
    let pr = PolyRing::new(base.clone());
    let p = pr.poly(
        p.iter()
            .map(|a| d.reduce_invariant(a))
            .collect::<Result<Vec<_>>>()?,
    );
    let k = PolyRing::new(base.residue_field()?);
    let mut expected = vec![k.base().zero(); h + 1];
    expected[h] = k.base().one();
    expected[h - 1] = k.base().neg(&k.base().one());
    ensure_internal!(
        k.equal(&pr.residue(&p)?, &k.poly(expected)),
        "p(T) does not reduce to T^h − T^(h−1)"
    );
    let one = k.base().one();
    let alpha = lift_simple_root(base, &p, &one)?;
    let lambda = base
        .inverse(&pr.eval(&pr.derivative(&p), &alpha))
        .ok_or_else(|| Error::Internal("p′(α) is not a unit".into()))?;
    let diffs: Vec<Vec<H::Elem>> = conj.iter().map(|c| d.sub(&d.embed(&alpha), c)).collect();
    let mut orbit_lift = Vec::with_capacity(h);
    for i in 0..h {
        let mut e = d.embed(&lambda);
        for (j, x) in diffs.iter().enumerate() {
            if j != i {
                e = d.uda_mul(&e, x);
            }
        }
        orbit_lift.push(e);
    }
    ensure_internal!(is_basic_system(d, &orbit_lift), "lifted orbit is not a basic system");
    for (e, e_bar) in orbit_lift.iter().zip(&res_orbit) {
        ensure_internal!(&d.residue(e)? == e_bar, "lifted idempotent has the wrong residue");
    }
    Ok(GaloisLift {
        idempotent: Idempotent::new_unchecked(orbit_lift[0].clone()),
        orbit: orbit_lift,
        representatives: reps,
    })
}

/// Lifts an arbitrary residual idempotent of `D` as a sum of lifted
/// conjugates of a Galois idempotent.
pub fn lift_idempotent_uda<H: HenselOracle>(
    d: &UdaAlgebra<H>,
    r: &[H::Elem],
) -> Result<Idempotent<Vec<H::Elem>>> {
    let db = d.residue_algebra()?;
    let r_bar = d.residue(r)?;
    if !db.equal(&db.uda_mul(&r_bar, &r_bar), &r_bar) {
        return Err(Error::NotIdempotentResidually);
    }
    if db.is_zero(&r_bar) {
        return Ok(Idempotent::zero(d));
    }
    if db.is_one(&r_bar) {
        return Ok(Idempotent::one(d));
    }
    let g = galois_from_idempotent(&db, &r_bar)?;
    let lifted = lift_galois_idempotent(d, &d.lift_residue(g.h.element())?)?;
    let mut e = d.zero();
    for &i in &g.subset {
        let target = &g.orbit[i];
        let mut found = false;
        for x in &lifted.orbit {
            if &d.residue(x)? == target {
                e = d.add(&e, x);
                found = true;
                break;
            }
        }
        ensure_internal!(found, "residual conjugate has no lifted counterpart");
    }
    let e = Idempotent::new(d, e).map_err(|_| Error::Internal("sum of lifted conjugates is not idempotent".into()))?;
    ensure_internal!(d.residue(e.element())? == r_bar, "lifted idempotent has the wrong residue");
    Ok(e)
}

/// Lifts `e` with `e² − e ∈ m·B`: factor the characteristic polynomial
/// `F = a·b` with `ā = T^ℓ` and `b̄ = F̄/T^ℓ`, then `u(e)·a(e)` is the lift where
/// `u·a + v·b = 1`.
pub fn lift_idempotent_finite_algebra<H: HenselOracle>(
    b: &FiniteAlgebra<H>,
    e: &[H::Elem],
) -> Result<Idempotent<Vec<H::Elem>>> {
    let e = b.element(e.to_vec())?;
    let defect = b.sub(&b.mul(&e, &e), &e);
    if !b.in_max_ideal_multiple(&defect)? {
        return Err(Error::NotIdempotentResidually);
    }
    if b.in_max_ideal_multiple(&e)? {
        return Ok(Idempotent::zero(b));
    }
    if b.in_max_ideal_multiple(&b.sub(&b.one(), &e))? {
        return Ok(Idempotent::one(b));
    }
    let base = b.base();
    let pr = PolyRing::new(base.clone());
    let k = PolyRing::new(base.residue_field()?);
    let chi = b.char_poly(&e);
    let chi_bar = pr.residue(&chi)?;
    let ell = chi_bar
        .coeffs()
        .iter()
        .position(|c| !k.base().is_zero(c))
        .unwrap_or(0);
    let a_bar = k.monomial(k.base().one(), ell);
    let (b_bar, rem) = k.divmod_monic(&chi_bar, &a_bar)?;
    ensure_internal!(rem.is_zero(), "T^ℓ does not divide the residual characteristic polynomial");
    let lift = lift_monic_factorization(base, &chi, &pr.lift_residue(&a_bar)?, &pr.lift_residue(&b_bar)?)?;
    let (u, _v) = pr.bezout_coprime(&lift.g, &lift.h)?;
    let lifted = b.mul(&b.eval_poly(&u, &e), &b.eval_poly(&lift.g, &e));
    let idem = Idempotent::new(b, lifted)
        .map_err(|_| Error::Internal("u(e)·a(e) is not idempotent".into()))?;
    ensure_internal!(
        b.in_max_ideal_multiple(&b.sub(idem.element(), &e))?,
        "lifted idempotent differs from the input outside m·B"
    );
    Ok(idem)
}

/// Splits `B` into local factors by lifting the residual decomposition.
pub fn decompose_finite_algebra<H: HenselOracle>(
    b: &FiniteAlgebra<H>,
) -> Result<Vec<(Idempotent<Vec<H::Elem>>, FiniteAlgebra<H>)>> {
    let residual: Vec<(Idempotent<Vec<Value>>, FiniteAlgebra<RingSpec>)> =
        decompose_local(&b.residue_algebra()?)?;
    let mut idems = Vec::with_capacity(residual.len());
    for (e_bar, _) in &residual {
        idems.push(lift_idempotent_finite_algebra(b, &b.lift_residue(e_bar.element())?)?);
    }
    for i in 0..idems.len() {
        for j in i + 1..idems.len() {
            ensure_internal!(
                b.is_zero(&b.mul(idems[i].element(), idems[j].element())),
                "lifted idempotents are not orthogonal"
            );
        }
    }
    ensure_internal!(
        b.is_one(&b.sum(idems.iter().map(|e| e.element()))),
        "lifted idempotents do not sum to 1"
    );
    let mut out = Vec::with_capacity(idems.len());
    for (e, (_, res_factor)) in idems.into_iter().zip(&residual) {
        let factor = factor_algebra(b, &e)?;
        ensure_internal!(
            factor.rank() == res_factor.rank(),
            "lifted factor has rank {} but its residue has rank {}",
            factor.rank(),
            res_factor.rank()
        );
        ensure_internal!(
            decompose_local(&factor.residue_algebra()?)?.len() == 1,
            "lifted factor is not residually local"
        );
        out.push((e, factor));
    }
    Ok(out)
}
