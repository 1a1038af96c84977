use super::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::poly::{is_irreducible, Poly, PolyRing};
use crate::ring::{HenselOracle, LocalRing, Ring, RingKind, RingSpec, Split, Value};

/// `B = A[X]/(P)` with `P` monic and irreducible modulo the maximal ideal of
/// a local ring `A` whose residue field is a prime field. `B` is local with
/// maximal ideal `m·B` and residue field `F_p[t]/(P̄)`.
#[derive(Debug, Clone)]
pub struct LocalExtension<R: LocalRing> {
    alg: FiniteAlgebra<R>,
    residue: RingSpec,
}

impl<R: LocalRing> LocalExtension<R> {
    pub fn new(base: R, p: Poly<R::Elem>) -> Result<Self> {
        let k = base.residue_field()?;
        let RingKind::PrimeField { p: prime } = *k.kind() else {
            return Err(Error::UnsupportedKind(
                "residue extensions need a prime residue field".into(),
            ));
        };
        let pr = PolyRing::new(base.clone());
        if !pr.is_monic(&p) {
            return Err(Error::NotMonic);
        }
        let p_bar = pr.residue(&p)?;
        if !is_irreducible(&k, &p_bar)? {
            return Err(Error::NotResiduallyIrreducible);
        }
        let modulus = p_bar
            .coeffs()
            .iter()
            .map(|c| c.as_int().expect("prime field payload"))
            .collect();
        let residue = if p.deg() == 1 {
            k.clone()
        } else {
            RingSpec::finite_field(prime, modulus)?
        };
        Ok(LocalExtension {
            alg: FiniteAlgebra::monogenic(base, p)?,
            residue,
        })
    }

    pub fn algebra(&self) -> &FiniteAlgebra<R> {
        &self.alg
    }

    pub fn degree(&self) -> usize {
        self.alg.rank()
    }

    pub fn generator(&self) -> Vec<R::Elem> {
        self.alg.generator().expect("monogenic")
    }

    pub fn embed(&self, c: &R::Elem) -> Vec<R::Elem> {
        self.alg.embed(c)
    }

    /// The base-ring element `c` if `x = c·1`.
    pub fn descend(&self, x: &[R::Elem]) -> Option<R::Elem> {
        let base = self.alg.base();
        x[1..].iter().all(|c| base.is_zero(c)).then(|| x[0].clone())
    }
}

impl<R: LocalRing> Ring for LocalExtension<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        self.alg.zero()
    }

    fn one(&self) -> Self::Elem {
        self.alg.one()
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.alg.from_int(n)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.alg.add(a, b)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.alg.neg(a)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.alg.sub(a, b)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.alg.mul(a, b)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.alg.is_zero(a)
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.alg.equal(a, b)
    }

    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.alg.invert_element(a).ok()
    }

    fn is_domain(&self) -> bool {
        self.alg.base().is_domain()
    }

    fn nilpotency_bound(&self) -> Option<u64> {
        self.alg.base().nilpotency_bound()
    }
}

impl<R: LocalRing> LocalRing for LocalExtension<R> {
    fn local_split(&self, a: &Self::Elem) -> Result<Split<Self::Elem>> {
        if self.residue.is_zero(&self.residue(a)?) {
            return Ok(Split::Radical);
        }
        Ok(Split::Unit(self.alg.invert_element(a)?))
    }

    fn residue_field(&self) -> Result<RingSpec> {
        Ok(self.residue.clone())
    }

    fn residue(&self, a: &Self::Elem) -> Result<Value> {
        let base = self.alg.base();
        let coeffs = a
            .iter()
            .map(|c| Ok(base.residue(c)?.as_int().expect("prime field payload")))
            .collect::<Result<Vec<u64>>>()?;
        self.residue.ext_from_coeffs(&coeffs)
    }

    fn lift_residue(&self, r: &Value) -> Result<Self::Elem> {
        let base = self.alg.base();
        let coeffs = self.residue.ext_coeffs(r)?;
        let mut out = coeffs
            .iter()
            .map(|&c| base.lift_residue(&Value::Int(c)))
            .collect::<Result<Vec<_>>>()?;
        out.resize(self.degree(), base.zero());
        Ok(out)
    }
}

impl<R: HenselOracle> HenselOracle for LocalExtension<R> {
    fn newton_precision(&self) -> Result<u64> {
        self.alg.base().newton_precision()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn unramified_quadratic_over_padics() {
        let r: RingSpec = "PadicTrunc:5:3".parse().unwrap();
        let ext = LocalExtension::new(r.clone(), parse_poly(&r, "[-2,0,1]").unwrap()).unwrap();
        assert_eq!(ext.residue_field().unwrap().field_size(), Some(25));
        let t = ext.generator();
        let Split::Unit(inv) = ext.local_split(&t).unwrap() else {
            panic!("generator should be a unit");
        };
        assert!(ext.is_one(&ext.mul(&t, &inv)));
        let five = ext.from_int(5);
        assert_eq!(ext.local_split(&five).unwrap(), Split::Radical);
        let u = ext.lift_residue(&ext.residue(&t).unwrap()).unwrap();
        assert!(ext.equal(&u, &t));
        assert_eq!(ext.newton_precision().unwrap(), 3);
    }

    #[test]
    fn rejects_residually_reducible() {
        let r: RingSpec = "PadicTrunc:5:3".parse().unwrap();
        assert_eq!(
            LocalExtension::new(r.clone(), parse_poly(&r, "[-1,0,1]").unwrap()).unwrap_err(),
            Error::NotResiduallyIrreducible
        );
    }
}
