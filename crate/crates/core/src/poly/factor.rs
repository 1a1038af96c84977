//! Factorization over finite fields: squarefree decomposition, distinct-degree
//! splitting and Cantor–Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Poly, PolyRing};
use crate::error::{Error, Result};
use crate::ring::{Ring, RingSpec, Value};

const DEFAULT_SEED: u64 = 0x5eed;

/// Root enumeration replaces random splitting for linear factors over fields this small.
const ENUMERATION_LIMIT: u64 = 64;

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// by coefficients.
pub fn field_factor(ring: &RingSpec, f: &Poly<Value>) -> Result<Vec<(Poly<Value>, usize)>> {
    field_factor_seeded(ring, f, DEFAULT_SEED)
}

/// [`field_factor`] with an explicit seed for the randomized splitting.
pub fn field_factor_seeded(
    ring: &RingSpec,
    f: &Poly<Value>,
    seed: u64,
) -> Result<Vec<(Poly<Value>, usize)>> {
    if !ring.is_finite_field() {
        return Err(Error::NotFiniteField);
    }
    if f.is_zero() {
        return Err(Error::PreconditionViolated("cannot factor the zero polynomial".into()));
    }
    let pr = PolyRing::new(ring.clone());
    let f = pr.make_monic(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(Poly<Value>, usize)> = Vec::new();
    for (g, mult) in squarefree(&pr, &f)? {
        for (h, d) in distinct_degree(&pr, &g)? {
            for irr in equal_degree(&pr, &h, d, &mut rng)? {
                match out.iter_mut().find(|(p, _)| *p == irr) {
                    Some(entry) => entry.1 += mult,
                    None => out.push((irr, mult)),
                }
            }
        }
    }
    out.sort_by_cached_key(|(p, _)| sort_key(ring, p));
    Ok(out)
}

fn sort_key(ring: &RingSpec, p: &Poly<Value>) -> (usize, Vec<u64>) {
    let coeffs = p
        .coeffs()
        .iter()
        .rev()
        .map(|c| ring.field_index(c).unwrap_or(0))
        .collect();
    (p.deg(), coeffs)
}

/// Distinct roots of `f` in the field.
pub fn field_roots(ring: &RingSpec, f: &Poly<Value>) -> Result<Vec<Value>> {
    Ok(field_factor(ring, f)?
        .into_iter()
        .filter(|(p, _)| p.deg() == 1)
        .map(|(p, _)| ring.neg(&p.coeffs()[0]))
        .collect())
}

pub fn is_irreducible(ring: &RingSpec, f: &Poly<Value>) -> Result<bool> {
    if f.deg() == 0 {
        return Ok(false);
    }
    let factors = field_factor(ring, f)?;
    Ok(factors.len() == 1 && factors[0].1 == 1)
}

/// The first monic irreducible polynomial of degree `d ≥ 1` over a finite
/// field, ordering candidates by their coefficient lists read from the
/// highest non-leading coefficient down, each compared by field index.
pub fn first_irreducible(ring: &RingSpec, d: usize) -> Result<Poly<Value>> {
    let q = ring.field_size().ok_or(Error::NotFiniteField)?;
    if d == 0 {
        return Err(Error::PreconditionViolated("degree must be at least 1".into()));
    }
    let pr = PolyRing::new(ring.clone());
    let count = (q as u128).checked_pow(d as u32).ok_or_else(|| {
        Error::PreconditionViolated(format!("search space q^{} is too large", d))
    })?;
    for mut i in 0..count {
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(ring.field_element((i % q as u128) as u64)?);
            i /= q as u128;
        }
        coeffs.push(ring.one());
        let f = pr.poly(coeffs);
        if is_irreducible(ring, &f)? {
            return Ok(f);
        }
    }
    Err(Error::Internal(format!("no irreducible polynomial of degree {} found", d)))
}

fn field_size(pr: &PolyRing<RingSpec>) -> u64 {
    pr.base().field_size().expect("finite field")
}

fn characteristic(pr: &PolyRing<RingSpec>) -> u64 {
    pr.base().prime().expect("finite field")
}

/// `a^(1/p)` in `F_q`, i.e. `a^(q/p)`.
fn pth_root(ring: &RingSpec, a: &Value) -> Value {
    let q = ring.field_size().unwrap();
    let p = ring.prime().unwrap();
    ring.pow(a, q / p)
}

/// Yun-style squarefree decomposition in characteristic `p`.
fn squarefree(pr: &PolyRing<RingSpec>, f: &Poly<Value>) -> Result<Vec<(Poly<Value>, usize)>> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return Ok(out);
    }
    let p = characteristic(pr) as usize;
    let df = pr.derivative(f);
    let mut c = pr.gcd(f, &df)?;
    let mut w = pr.divmod(f, &c)?.0;
    let mut i = 1;
    while w.deg() > 0 {
        let y = pr.gcd(&w, &c)?;
        let fac = pr.divmod(&w, &y)?.0;
        if fac.deg() > 0 {
            out.push((fac, i));
        }
        w = y;
        c = pr.divmod(&c, &w)?.0;
        i += 1;
    }
    if c.deg() > 0 {
        let root_coeffs: Vec<Value> = c
            .coeffs()
            .iter()
            .step_by(p)
            .map(|a| pth_root(pr.base(), a))
            .collect();
        let root = pr.poly(root_coeffs);
        for (g, m) in squarefree(pr, &root)? {
            out.push((g, m * p));
        }
    }
    Ok(out)
}

/// Splits a squarefree monic polynomial into products of irreducibles of equal degree.
fn distinct_degree(pr: &PolyRing<RingSpec>, f: &Poly<Value>) -> Result<Vec<(Poly<Value>, usize)>> {
    let q = BigUint::from(field_size(pr));
    let x = pr.x();
    let mut rest = f.clone();
    let mut h = pr.rem(&x, &rest)?;
    let mut out = Vec::new();
    let mut i = 1;
    while rest.deg() >= 2 * i {
        h = pr.powmod(&h, &q, &rest)?;
        let g = pr.gcd(&pr.sub(&h, &x), &rest)?;
        if g.deg() > 0 {
            rest = pr.divmod(&rest, &g)?.0;
            h = pr.rem(&h, &rest)?;
            out.push((g, i));
        }
        i += 1;
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    Ok(out)
}

fn equal_degree(
    pr: &PolyRing<RingSpec>,
    f: &Poly<Value>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Poly<Value>>> {
    if f.deg() == d {
        return Ok(vec![f.clone()]);
    }
    let ring = pr.base();
    let q = field_size(pr);
    if d == 1 && q <= ENUMERATION_LIMIT {
        return ring
            .field_elements()?
            .into_iter()
            .filter(|c| ring.is_zero(&pr.eval(f, c)))
            .map(|c| Ok(pr.linear(&c)))
            .collect();
    }
    let p = characteristic(pr);
    loop {
        let a = random_poly(pr, f.deg(), rng)?;
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(kd-1)) with q = 2^k
            let k = ring.field_degree().unwrap();
            let mut term = pr.rem(&a, f)?;
            let mut acc = term.clone();
            for _ in 1..k * d {
                term = pr.rem(&pr.mul(&term, &term), f)?;
                acc = pr.add(&acc, &term);
            }
            acc
        } else {
            let e = (BigUint::from(q).pow(d as u32) - 1u32) / 2u32;
            pr.sub(&pr.powmod(&a, &e, f)?, &pr.one())
        };
        let g = pr.gcd(&b, f)?;
        if g.deg() > 0 && g.deg() < f.deg() {
            let h = pr.divmod(f, &g)?.0;
            let mut out = equal_degree(pr, &g, d, rng)?;
            out.extend(equal_degree(pr, &h, d, rng)?);
            return Ok(out);
        }
    }
}

fn random_poly(pr: &PolyRing<RingSpec>, n: usize, rng: &mut ChaCha8Rng) -> Result<Poly<Value>> {
    let ring = pr.base();
    let q = field_size(pr);
    let coeffs = (0..n)
        .map(|_| ring.field_element(rng.gen_range(0..q)))
        .collect::<Result<Vec<_>>>()?;
    Ok(pr.poly(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use proptest::prelude::*;

    fn field(s: &str) -> RingSpec {
        s.parse().unwrap()
    }

    #[test]
    fn factor_examples() {
        let f7 = field("Fp:7");
        let fs = field_factor(&f7, &parse_poly(&f7, "[-2,0,1]").unwrap()).unwrap();
        assert_eq!(
            fs,
            vec![
                (parse_poly(&f7, "[-4,1]").unwrap(), 1),
                (parse_poly(&f7, "[-3,1]").unwrap(), 1)
            ]
        );
        let f5 = field("Fp:5");
        let fs = field_factor(&f5, &parse_poly(&f5, "[0,0,1]").unwrap()).unwrap();
        assert_eq!(fs, vec![(parse_poly(&f5, "[0,1]").unwrap(), 2)]);
        let f3 = field("Fp:3");
        let x2_1 = parse_poly(&f3, "[1,0,1]").unwrap();
        assert_eq!(field_factor(&f3, &x2_1).unwrap(), vec![(x2_1, 1)]);
        assert_eq!(
            field_factor(&RingSpec::rationals(), &parse_poly(&RingSpec::rationals(), "[1,1]").unwrap()),
            Err(Error::NotFiniteField)
        );
    }

    #[test]
    fn inseparable_input() {
        let f2 = field("Fp:2");
        // (X^2 + X + 1)^2 (X + 1)^3 over F_2
        let pr = PolyRing::new(f2.clone());
        let a = parse_poly(&f2, "[1,1,1]").unwrap();
        let b = parse_poly(&f2, "[1,1]").unwrap();
        let f = pr.mul(&pr.pow(&a, 2), &pr.pow(&b, 3));
        assert_eq!(field_factor(&f2, &f).unwrap(), vec![(b, 3), (a, 2)]);
    }

    #[test]
    fn extension_field_factoring() {
        let f4 = field("Fq:2:[1,1,1]");
        let pr = PolyRing::new(f4.clone());
        // X^2 + X + 1 splits over F_4
        let f = pr.from_ints(&[1, 1, 1]);
        let roots = field_roots(&f4, &f).unwrap();
        assert_eq!(roots.len(), 2);
        for r in roots {
            assert!(f4.is_zero(&pr.eval(&f, &r)));
        }
        // X^3 - t is irreducible over F_4? check via brute force over F_4
        let t = f4.field_generator().unwrap();
        let g = pr.poly(vec![f4.neg(&t), f4.zero(), f4.zero(), f4.one()]);
        let has_root = f4.field_elements().unwrap().iter().any(|c| f4.is_zero(&pr.eval(&g, c)));
        assert_eq!(is_irreducible(&f4, &g).unwrap(), !has_root);
    }

    fn brute_force_irreducible(ring: &RingSpec, f: &Poly<Value>) -> bool {
        // trial division by every monic polynomial of degree <= deg/2
        let pr = PolyRing::new(ring.clone());
        let q = ring.field_size().unwrap();
        let n = f.deg();
        for d in 1..=n / 2 {
            for idx in 0..q.pow(d as u32) {
                let mut coeffs = Vec::new();
                let mut rest = idx;
                for _ in 0..d {
                    coeffs.push(ring.field_element(rest % q).unwrap());
                    rest /= q;
                }
                coeffs.push(ring.one());
                let g = pr.poly(coeffs);
                if pr.divmod(f, &g).unwrap().1.is_zero() {
                    return false;
                }
            }
        }
        n >= 1
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn factorization_multiplies_back(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]),
                                         coeffs in proptest::collection::vec(0i64..11, 1..8),
                                         seed in 0u64..1000) {
            let ring = RingSpec::prime_field(p).unwrap();
            let pr = PolyRing::new(ring.clone());
            let mut f = pr.from_ints(&coeffs);
            f = pr.add(&f, &pr.monomial(ring.one(), f.deg() + 1));
            let fs = field_factor_seeded(&ring, &f, seed).unwrap();
            let prod = fs.iter().fold(pr.one(), |acc, (g, m)| pr.mul(&acc, &pr.pow(g, *m as u64)));
            prop_assert_eq!(prod, f);
            for (i, (g, _)) in fs.iter().enumerate() {
                prop_assert!(pr.is_monic(g));
                prop_assert!(brute_force_irreducible(&ring, g));
                for (h, _) in &fs[i + 1..] {
                    prop_assert_ne!(g, h);
                }
            }
        }
    }
}
