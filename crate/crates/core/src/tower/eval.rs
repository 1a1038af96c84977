use super::{StepKind, TowerElement, TowerRing};
use crate::error::{ensure_internal, Error, Result};
use crate::hensel::{hensel_root_monic, lift_simple_root};
use crate::poly::{field_roots, PolyRing};
use crate::ring::{HenselOracle, Ring, RingSpec, Split, Value};

type BaseMap<E> = Box<dyn Fn(&Value) -> Result<E> + Send + Sync>;

/// The unique local morphism from a tower into a Henselian oracle extending
/// a given map on the base. Hensel-root generators go to the target's Hensel
/// roots; residue-extension generators go to the lift of a chosen residual
/// root.
pub struct TowerMap<H: HenselOracle> {
    tower: TowerRing,
    target: H,
    base_map: BaseMap<H::Elem>,
    generators: Vec<H::Elem>,
    /// Image of every basis monomial.
    monomials: Vec<H::Elem>,
}

impl TowerMap<RingSpec> {
    /// Into a truncated p-adic ring, mapping `Z_(p)` by reduction.
    pub fn into_spec(tower: &TowerRing, target: &RingSpec) -> Result<Self> {
        let t = target.clone();
        TowerMap::new(tower, target, move |v: &Value| {
            let q = v
                .as_rat()
                .ok_or_else(|| Error::Internal("Z_(p) payloads are rationals".into()))?;
            t.from_rational(q)
        })
    }
}

impl<H: HenselOracle + 'static> TowerMap<H> {
    pub fn new<F>(tower: &TowerRing, target: &H, base_map: F) -> Result<Self>
    where
        F: Fn(&Value) -> Result<H::Elem> + Send + Sync + 'static,
    {
        Self::build(tower, target, Box::new(base_map), &[])
    }

    /// As [`TowerMap::new`], with the residual roots used at the
    /// residue-extension steps given in order.
    pub fn with_residual_roots<F>(
        tower: &TowerRing,
        target: &H,
        base_map: F,
        roots: &[Value],
    ) -> Result<Self>
    where
        F: Fn(&Value) -> Result<H::Elem> + Send + Sync + 'static,
    {
        Self::build(tower, target, Box::new(base_map), roots)
    }

    fn build(tower: &TowerRing, target: &H, base_map: BaseMap<H::Elem>, roots: &[Value]) -> Result<Self> {
        let k = target.residue_field()?;
        if k.prime() != Some(tower.prime()) {
            return Err(Error::PreconditionViolated(format!(
                "target residue field {} has the wrong characteristic",
                k
            )));
        }
        let pr = PolyRing::new(target.clone());
        let mut map = TowerMap {
            tower: tower.clone(),
            target: target.clone(),
            base_map,
            generators: Vec::new(),
            monomials: vec![target.one()],
        };
        let mut roots = roots.iter();
        for step in &tower.steps {
            let mut coeffs = step
                .relation
                .iter()
                .map(|c| map.eval_vec(c))
                .collect::<Result<Vec<_>>>()?;
            coeffs.push(target.one());
            let g = pr.poly(coeffs);
            let xi = match step.kind {
                StepKind::HenselRoot => hensel_root_monic(target, &g)?,
                StepKind::ResidueExtension => {
                    let candidates = field_roots(&k, &pr.residue(&g)?)?;
                    let root = match roots.next() {
                        Some(r) if candidates.contains(r) => r.clone(),
                        Some(_) => return Err(Error::NoCompatibleRoot),
                        None => candidates.into_iter().next().ok_or(Error::NoCompatibleRoot)?,
                    };
                    lift_simple_root(target, &g, &root)?
                }
            };
            ensure_internal!(target.is_zero(&pr.eval(&g, &xi)), "generator image is not a root");
            let d = step.relation.len();
            if d > 1 {
                let mut next = Vec::with_capacity(map.monomials.len() * d);
                let mut power = target.one();
                for _ in 0..d {
                    next.extend(map.monomials.iter().map(|m| target.mul(m, &power)));
                    power = target.mul(&power, &xi);
                }
                map.monomials = next;
            }
            map.generators.push(xi);
        }
        Ok(map)
    }

    fn eval_vec(&self, v: &[Value]) -> Result<H::Elem> {
        let mut acc = self.target.zero();
        for (c, m) in v.iter().zip(&self.monomials) {
            if !self.tower.base.is_zero(c) {
                acc = self.target.add(&acc, &self.target.mul(&(self.base_map)(c)?, m));
            }
        }
        Ok(acc)
    }

    pub fn target(&self) -> &H {
        &self.target
    }

    /// Image of the stored generator of step `j`.
    pub fn generator_image(&self, j: usize) -> &H::Elem {
        &self.generators[j]
    }

    pub fn apply(&self, t: &TowerElement) -> Result<H::Elem> {
        self.tower.check(t)?;
        let num = self.eval_vec(&t.num)?;
        let Split::Unit(inv) = self.target.local_split(&self.eval_vec(&t.den)?)? else {
            return Err(Error::Internal("denominator does not map to a unit".into()));
        };
        Ok(self.target.mul(&num, &inv))
    }
}
