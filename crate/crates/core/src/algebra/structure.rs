use super::{FiniteAlgebra, Idempotent};
use crate::error::{ensure_internal, Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{Poly, PolyRing};
use crate::ring::{LocalRing, Ring, RingSpec, Value};

fn require_field<R: Ring>(alg: &FiniteAlgebra<R>) -> Result<()> {
    if alg.base().is_field() {
        Ok(())
    } else {
        Err(Error::UnsupportedBase("operation needs a discrete field as base".into()))
    }
}

/// Minimal polynomial of `x` over a field base.
pub fn min_poly<R: Ring>(alg: &FiniteAlgebra<R>, x: &[R::Elem]) -> Result<Poly<R::Elem>> {
    require_field(alg)?;
    let base = alg.base();
    let n = alg.rank();
    let mut powers = vec![alg.one()];
    for l in 1..=n {
        let next = alg.mul(powers.last().unwrap(), &x.to_vec());
        let a = Matrix::from_columns(n, &powers);
        if let Some(sol) = linalg::field_solve(base, &a, &next) {
            let mut coeffs: Vec<R::Elem> = sol.iter().map(|c| base.neg(c)).collect();
            coeffs.push(base.one());
            return Ok(PolyRing::new(base.clone()).poly(coeffs));
        }
        powers.push(next);
        ensure_internal!(l < n, "no linear dependence among {} powers in rank {}", n + 1, n);
    }
    unreachable!()
}

/// `μ(T) = T^ℓ · u(T)` with `u(0) ≠ 0`.
fn split_min_poly<R: Ring>(
    alg: &FiniteAlgebra<R>,
    x: &[R::Elem],
) -> Result<(usize, Poly<R::Elem>)> {
    let mu = min_poly(alg, x)?;
    let base = alg.base();
    let l = mu.coeffs().iter().position(|c| !base.is_zero(c)).unwrap_or(0);
    let u = PolyRing::new(base.clone()).poly(mu.coeffs()[l..].to_vec());
    Ok((l, u))
}

/// `(k, s)` with `x^k · (1 − x·s(x)) = 0`, from the minimal polynomial.
pub fn zero_dim_witness<R: Ring>(
    alg: &FiniteAlgebra<R>,
    x: &[R::Elem],
) -> Result<(usize, Poly<R::Elem>)> {
    let base = alg.base();
    let pr = PolyRing::new(base.clone());
    let (l, u) = split_min_poly(alg, x)?;
    // u = u0 + T·w  ⇒  u = u0·(1 − T·s) with s = −w/u0
    let u0_inv = base.inverse(&u.coeffs()[0]).ok_or(Error::NotInvertible)?;
    let w = pr.poly(u.coeffs()[1..].to_vec());
    let s = pr.scale(&w, &base.neg(&u0_inv));
    let one_minus_xs = alg.sub(&alg.one(), &alg.mul(&x.to_vec(), &alg.eval_poly(&s, x)));
    let check = alg.mul(&alg.pow(&x.to_vec(), l as u64), &one_minus_xs);
    ensure_internal!(alg.is_zero(&check), "zero-dimensionality witness failed");
    Ok((l, s))
}

/// The idempotent `e ∈ k[x]` such that `x` is invertible on `e·B` and
/// nilpotent on `(1 − e)·B`.
pub fn split_by_element<R: Ring>(
    alg: &FiniteAlgebra<R>,
    x: &[R::Elem],
) -> Result<Idempotent<Vec<R::Elem>>> {
    let base = alg.base();
    let pr = PolyRing::new(base.clone());
    let (l, u) = split_min_poly(alg, x)?;
    let tl = pr.monomial(base.one(), l);
    // a·T^ℓ + b·u = 1
    let (d, a, _b) = pr.ext_gcd(&tl, &u)?;
    ensure_internal!(pr.is_one(&d), "T^l and u are not coprime");
    let e = alg.mul(&alg.eval_poly(&a, x), &alg.pow(&x.to_vec(), l as u64));
    let idem = Idempotent::new(alg, e)?;
    let not_e = alg.sub(&alg.one(), idem.element());
    ensure_internal!(
        alg.invert_element(&alg.add(&x.to_vec(), &not_e)).is_ok(),
        "x + (1 - e) is not invertible"
    );
    ensure_internal!(
        alg.is_nilpotent_with_index(&alg.mul(&x.to_vec(), &not_e), alg.rank() as u64),
        "x·(1 - e) is not nilpotent"
    );
    Ok(idem)
}

/// Selects columns whose residues are independent, spanning the module
/// generated by `vectors` (free of rank = residual rank by Nakayama).
fn residual_basis<R: LocalRing>(base: &R, vectors: &[Vec<R::Elem>]) -> Result<Vec<Vec<R::Elem>>> {
    let k = base.residue_field()?;
    let n = vectors.first().map_or(0, |v| v.len());
    let mut chosen: Vec<Vec<R::Elem>> = Vec::new();
    let mut chosen_res: Vec<Vec<Value>> = Vec::new();
    for v in vectors {
        let res = v.iter().map(|c| base.residue(c)).collect::<Result<Vec<_>>>()?;
        let mut trial = chosen_res.clone();
        trial.push(res);
        if linalg::field_rank(&k, &Matrix::from_columns(n, &trial)) == trial.len() {
            chosen_res = trial;
            chosen.push(v.clone());
        }
    }
    Ok(chosen)
}

/// The factor algebra `e·B` of an idempotent, with a basis chosen among the
/// vectors `e·b_j` and structure constants solved over the base.
pub fn factor_algebra<R: LocalRing>(
    alg: &FiniteAlgebra<R>,
    e: &Idempotent<Vec<R::Elem>>,
) -> Result<FiniteAlgebra<R>> {
    let base = alg.base();
    let n = alg.rank();
    if alg.is_zero(e.element()) {
        return Err(Error::ZeroIdempotent);
    }
    let cols: Vec<Vec<R::Elem>> = (0..n)
        .map(|j| alg.mul(e.element(), &alg.basis_element(j)))
        .collect();
    let basis = residual_basis(base, &cols)?;
    let r = basis.len();
    let a = Matrix::from_columns(n, &basis);
    let coords_of = |v: &Vec<R::Elem>| -> Result<Vec<R::Elem>> {
        linalg::local_solve(base, &a, v)?
            .ok_or_else(|| Error::Internal("element of e·B outside the chosen basis span".into()))
    };
    let mut table = Vec::with_capacity(r);
    for i in 0..r {
        let mut row = Vec::with_capacity(r);
        for j in 0..r {
            row.push(coords_of(&alg.mul(&basis[i], &basis[j]))?);
        }
        table.push(row);
    }
    let one = coords_of(e.element())?;
    FiniteAlgebra::from_table(base.clone(), table, one)
}

/// Decomposition of a finite algebra over a finite field into local factors.
///
/// The subalgebra `E = {z : z^q = z}` consists of the elements that are
/// constant on every local factor, so `dim E` counts the factors and the
/// indicators `1 − (y − c)^(q−1)` for `y ∈ E`, `c ∈ F_q` separate them.
pub fn decompose_local(
    alg: &FiniteAlgebra<RingSpec>,
) -> Result<Vec<(Idempotent<Vec<Value>>, FiniteAlgebra<RingSpec>)>> {
    let base = alg.base();
    let q = base.field_size().ok_or(Error::NotFiniteField)?;
    let n = alg.rank();
    let cols: Vec<Vec<Value>> = (0..n)
        .map(|j| {
            let b = alg.basis_element(j);
            alg.sub(&alg.pow(&b, q), &b)
        })
        .collect();
    let frob_minus_id = Matrix::from_columns(n, &cols);
    let fixed = linalg::field_kernel(base, &frob_minus_id);
    let elements = base.field_elements()?;
    let mut parts = vec![alg.one()];
    for y in &fixed {
        let indicators: Vec<Vec<Value>> = elements
            .iter()
            .map(|c| {
                let shifted = alg.sub(y, &alg.embed(c));
                alg.sub(&alg.one(), &alg.pow(&shifted, q - 1))
            })
            .collect();
        let mut refined = Vec::new();
        for part in &parts {
            for ind in &indicators {
                let piece = alg.mul(part, ind);
                if !alg.is_zero(&piece) {
                    refined.push(piece);
                }
            }
        }
        parts = refined;
    }
    ensure_internal!(
        parts.len() == fixed.len(),
        "found {} local factors but the Frobenius-fixed subalgebra has dimension {}",
        parts.len(),
        fixed.len()
    );
    let mut out = Vec::with_capacity(parts.len());
    for part in parts {
        let e = Idempotent::new(alg, part)?;
        let factor = factor_algebra(alg, &e)?;
        ensure_internal!(is_local_by_basis(&factor), "factor algebra fails the locality check");
        out.push((e, factor));
    }
    let total = out
        .iter()
        .fold(alg.zero(), |acc, (e, _)| alg.add(&acc, e.element()));
    ensure_internal!(alg.is_one(&total), "local idempotents do not sum to 1");
    Ok(out)
}

/// Every basis element is nilpotent or invertible (necessary for locality).
fn is_local_by_basis(alg: &FiniteAlgebra<RingSpec>) -> bool {
    (0..alg.rank()).all(|i| {
        let b = alg.basis_element(i);
        alg.is_nilpotent_with_index(&b, alg.rank() as u64) || alg.invert_element(&b).is_ok()
    })
}
