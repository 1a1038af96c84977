use super::{all_permutations, Permutation, UdaAlgebra};
use crate::algebra::Idempotent;
use crate::error::{ensure_internal, Error, Result};
use crate::ring::{LocalRing, Ring};

/// A Galois idempotent `h` with its distinct conjugates and the conjugates
/// summing to the input idempotent.
#[derive(Debug, Clone)]
pub struct GaloisDecomposition<E> {
    pub h: Idempotent<Vec<E>>,
    /// Distinct conjugates `σ·h`; `orbit[0] = h`.
    pub orbit: Vec<Vec<E>>,
    /// `representatives[i]` maps `h` to `orbit[i]`.
    pub representatives: Vec<Permutation>,
    /// Indices into `orbit` whose sum is the input idempotent.
    pub subset: Vec<usize>,
}

/// Orbit of `a` under the symmetric group: distinct images, each with a
/// permutation producing it.
pub(crate) fn orbit<R: LocalRing>(
    d: &UdaAlgebra<R>,
    a: &[R::Elem],
) -> Result<(Vec<Vec<R::Elem>>, Vec<Permutation>)> {
    let mut images: Vec<Vec<R::Elem>> = Vec::new();
    let mut reps = Vec::new();
    for sigma in all_permutations(d.degree()) {
        let img = d.sn_act(&sigma, a)?;
        if !images.iter().any(|x| d.equal(x, &img)) {
            images.push(img);
            reps.push(sigma);
        }
    }
    Ok((images, reps))
}

/// Whether the elements are orthogonal idempotents summing to 1.
pub(crate) fn is_basic_system<R: LocalRing>(d: &UdaAlgebra<R>, elems: &[Vec<R::Elem>]) -> bool {
    if !d.is_one(&d.sum(elems.iter())) {
        return false;
    }
    for (i, a) in elems.iter().enumerate() {
        if !d.equal(&d.uda_mul(a, a), a) {
            return false;
        }
        for b in &elems[i + 1..] {
            if !d.is_zero(&d.uda_mul(a, b)) {
                return false;
            }
        }
    }
    true
}

/// Refines the orbit of `e` into the atoms of the Boolean algebra it
/// generates; the atom below `e` is a Galois idempotent whose orbit consists
/// of all atoms, and `e` is the sum of the atoms below it.
pub fn galois_from_idempotent<R: LocalRing>(
    d: &UdaAlgebra<R>,
    e: &[R::Elem],
) -> Result<GaloisDecomposition<R::Elem>> {
    if d.idempotent_is_zero(e)? {
        return Err(Error::ZeroIdempotent);
    }
    let (conjugates, _) = orbit(d, e)?;
    let mut atoms = vec![d.one()];
    for c in &conjugates {
        let mut next = Vec::with_capacity(atoms.len() * 2);
        for a in &atoms {
            let inside = d.uda_mul(a, c);
            let outside = d.sub(a, &inside);
            for part in [inside, outside] {
                if !d.is_zero(&part) {
                    next.push(part);
                }
            }
        }
        atoms = next;
    }
    let e_vec = e.to_vec();
    let h = atoms
        .iter()
        .find(|a| d.equal(&d.uda_mul(a, &e_vec), a))
        .cloned()
        .ok_or_else(|| Error::Internal("no atom lies below a nonzero idempotent".into()))?;
    let (orbit, representatives) = orbit(d, &h)?;
    ensure_internal!(
        orbit.len() == atoms.len(),
        "conjugates of the atom do not exhaust the atoms ({} of {})",
        orbit.len(),
        atoms.len()
    );
    ensure_internal!(is_basic_system(d, &orbit), "orbit of h is not a basic system");
    let subset: Vec<usize> = (0..orbit.len())
        .filter(|&i| d.equal(&d.uda_mul(&orbit[i], &e_vec), &orbit[i]))
        .collect();
    ensure_internal!(
        d.equal(&d.sum(subset.iter().map(|&i| &orbit[i])), &e_vec),
        "conjugates below e do not sum to e"
    );
    Ok(GaloisDecomposition {
        h: Idempotent::new_unchecked(h),
        orbit,
        representatives,
        subset,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{el, uda};
    use super::*;

    #[test]
    fn examples() {
        let d = uda("Fp:5", "[2,-3,1]");
        let one = galois_from_idempotent(&d, &d.one()).unwrap();
        assert_eq!(one.h.element(), &d.one());
        assert_eq!(one.orbit, vec![d.one()]);
        let e = el(&d, &["-1", "1"]);
        let g = galois_from_idempotent(&d, &e).unwrap();
        assert_eq!(g.h.element(), &e);
        assert_eq!(g.orbit, vec![e.clone(), el(&d, &["2", "-1"])]);
        assert_eq!(g.subset, vec![0]);
        assert_eq!(galois_from_idempotent(&d, &d.zero()).unwrap_err(), Error::ZeroIdempotent);
    }

    #[test]
    fn split_cubic_has_regular_orbit() {
        // T(T−1)(T−2) over F_5 splits: D ≅ k^6 and Galois idempotents have trivial stabilizer
        let d = uda("Fp:5", "[0,2,-3,1]");
        let x3 = d.variable(3);
        // indicator of x₃ = 0 is 1 − x₃^4
        let e = d.sub(&d.one(), &d.pow(&x3, 4));
        let g = galois_from_idempotent(&d, &e).unwrap();
        assert_eq!(g.orbit.len(), 3);
        assert_eq!(g.subset, vec![0]);
        // indicator of (x₂, x₃) = (1, 0) has trivial stabilizer
        let x2 = d.variable(2);
        let x2m1 = d.sub(&x2, &d.one());
        let e2 = d.mul(&e, &d.sub(&d.one(), &d.pow(&x2m1, 4)));
        let g2 = galois_from_idempotent(&d, &e2).unwrap();
        assert_eq!(g2.orbit.len(), 6);
        assert!(is_basic_system(&d, &g2.orbit));
        let sum = d.add(&e2, &d.sn_act(&Permutation::from_one_based(&[2, 3, 1]).unwrap(), &e2).unwrap());
        assert_eq!(galois_from_idempotent(&d, &sum).unwrap().subset.len(), 2);
    }
}
