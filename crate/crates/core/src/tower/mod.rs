//! Finite pieces of the Henselization of `Z_(p)`: towers of one-step
//! extensions, each adjoining either the root in the maximal ideal of a
//! Hensel polynomial or a root of a residually irreducible polynomial.
//!
//! After `k` steps the ring is `P = A[y₁, …, y_k]/(f₁, …, f_k)` localized at
//! the elements with nonzero residue, where `A = Z_(p)` and each `f_j` is
//! monic over the previous module. `P` is free over `A` of rank `∏ deg f_j`
//! with a mixed-radix monomial basis whose last step varies slowest.
//! Elements are fractions `num/den` of coordinate vectors in that basis.

mod eval;
mod session;

pub use eval::TowerMap;
pub use session::{StepRecord, TowerRecord};

use std::sync::Arc;

use serde_json::Value as Json;

use crate::error::{ensure_internal, Error, Result};
use crate::linalg::{field_solve, valuation_kernel, Matrix};
use crate::poly::{field_roots, first_irreducible, is_irreducible, Poly, PolyRing};
use crate::ring::{
    value_from_json, value_to_json, LocalRing, Ring, RingKind, RingSpec, Split, Value,
};

/// Largest admissible rank of a tower over its base.
pub const TOWER_RANK_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    HenselRoot,
    ResidueExtension,
}

#[derive(Debug)]
struct Step {
    kind: StepKind,
    /// The polynomial as supplied, over the previous ring.
    source: Poly<TowerElement>,
    /// Non-leading coefficients of the monic relation `sⁿ·f(Y/s)` satisfied
    /// by the stored generator `y = s·x`, as vectors of the previous module.
    relation: Vec<Vec<Value>>,
    scale: Vec<Value>,
}

/// A Henselization tower over `Z_(p)`.
#[derive(Debug, Clone)]
pub struct TowerRing {
    base: RingSpec,
    p: u64,
    steps: Vec<Arc<Step>>,
    /// `ranks[j]` is the rank after `j` steps.
    ranks: Vec<usize>,
    residue_field: RingSpec,
    /// Residue of every basis monomial.
    basis_residues: Vec<Value>,
}

/// A fraction `num/den` of module vectors; `den` has nonzero residue.
/// Derived equality is syntactic, [`TowerRing::tower_eq`] decides equality
/// in the ring.
#[derive(Debug, Clone, PartialEq)]
pub struct TowerElement {
    num: Vec<Value>,
    den: Vec<Value>,
}

impl TowerElement {
    pub fn num(&self) -> &[Value] {
        &self.num
    }

    pub fn den(&self) -> &[Value] {
        &self.den
    }
}

/// Result of adjoining a Hensel root: `x·y = −a₀` with `y` a unit
/// witnesses `x ∈ m`.
#[derive(Debug, Clone)]
pub struct AdjoinedRoot {
    pub ring: TowerRing,
    pub root: TowerElement,
    pub cofactor: TowerElement,
}

impl TowerRing {
    pub fn new(base: RingSpec) -> Result<Self> {
        let RingKind::LocalizedIntegers { p } = *base.kind() else {
            return Err(Error::UnsupportedBase(format!(
                "towers are built over Zloc:p, not {}",
                base
            )));
        };
        let k = RingSpec::prime_field(p)?;
        Ok(TowerRing {
            basis_residues: vec![k.one()],
            residue_field: k,
            base,
            p,
            steps: Vec::new(),
            ranks: vec![1],
        })
    }

    pub fn base(&self) -> &RingSpec {
        &self.base
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        *self.ranks.last().expect("ranks start at 1")
    }

    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    pub fn step_kind(&self, j: usize) -> StepKind {
        self.steps[j].kind
    }

    pub fn step_degree(&self, j: usize) -> usize {
        self.steps[j].relation.len()
    }

    /// The polynomial adjoined at step `j`, over the ring after `j` steps.
    pub fn step_polynomial(&self, j: usize) -> &Poly<TowerElement> {
        &self.steps[j].source
    }

    pub fn same_tower(&self, other: &TowerRing) -> bool {
        self.base == other.base
            && self.steps.len() == other.steps.len()
            && self.steps.iter().zip(&other.steps).all(|(a, b)| Arc::ptr_eq(a, b))
    }

    fn zero_vec(&self, n: usize) -> Vec<Value> {
        vec![self.base.zero(); n]
    }

    fn one_vec(&self) -> Vec<Value> {
        let mut v = self.zero_vec(self.rank());
        v[0] = self.base.one();
        v
    }

    fn is_zero_vec(&self, v: &[Value]) -> bool {
        v.iter().all(|c| self.base.is_zero(c))
    }

    fn is_constant_vec(&self, v: &[Value]) -> bool {
        self.is_zero_vec(&v[1..])
    }

    fn add_vec(&self, a: &[Value], b: &[Value]) -> Vec<Value> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn sub_vec(&self, a: &[Value], b: &[Value]) -> Vec<Value> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }

    fn scale_vec(&self, c: &Value, a: &[Value]) -> Vec<Value> {
        a.iter().map(|x| self.base.mul(c, x)).collect()
    }

    /// Product in the module after `level` steps.
    fn mul_level(&self, level: usize, a: &[Value], b: &[Value]) -> Vec<Value> {
        if level == 0 {
            return vec![self.base.mul(&a[0], &b[0])];
        }
        let r = self.ranks[level - 1];
        let step = &self.steps[level - 1];
        let d = step.relation.len();
        if self.is_zero_vec(a) || self.is_zero_vec(b) {
            return self.zero_vec(r * d);
        }
        let mut prod = vec![self.zero_vec(r); 2 * d - 1];
        for i in 0..d {
            let ai = &a[i * r..(i + 1) * r];
            if self.is_zero_vec(ai) {
                continue;
            }
            for k in 0..d {
                let bk = &b[k * r..(k + 1) * r];
                if self.is_zero_vec(bk) {
                    continue;
                }
                let m = self.mul_level(level - 1, ai, bk);
                prod[i + k] = self.add_vec(&prod[i + k], &m);
            }
        }
        for e in (d..2 * d - 1).rev() {
            let c = std::mem::take(&mut prod[e]);
            if self.is_zero_vec(&c) {
                continue;
            }
            for (i, rel) in step.relation.iter().enumerate() {
                let m = self.mul_level(level - 1, &c, rel);
                prod[e - d + i] = self.sub_vec(&prod[e - d + i], &m);
            }
        }
        prod.truncate(d);
        prod.concat()
    }

    fn mul_vec(&self, a: &[Value], b: &[Value]) -> Vec<Value> {
        self.mul_level(self.depth(), a, b)
    }

    fn pad(&self, v: &[Value]) -> Vec<Value> {
        let mut out = v.to_vec();
        out.resize(self.rank(), self.base.zero());
        out
    }

    fn normalize(&self, num: Vec<Value>, den: Vec<Value>) -> TowerElement {
        if self.is_constant_vec(&den) && !self.base.is_one(&den[0]) {
            let inv = self
                .base
                .inverse(&den[0])
                .expect("constant denominators are units of the base");
            return TowerElement {
                num: self.scale_vec(&inv, &num),
                den: self.one_vec(),
            };
        }
        TowerElement { num, den }
    }

    fn check(&self, t: &TowerElement) -> Result<()> {
        if t.num.len() != self.rank() || t.den.len() != self.rank() {
            return Err(Error::MixedRings);
        }
        Ok(())
    }

    /// The fraction `num/den`; `den` must have nonzero residue.
    pub fn fraction(&self, num: Vec<Value>, den: Vec<Value>) -> Result<TowerElement> {
        if num.len() != self.rank() || den.len() != self.rank() {
            return Err(Error::NotInRing(format!(
                "coordinate vectors must have length {}",
                self.rank()
            )));
        }
        if self.k_is_zero(&self.residue_vec(&den)?) {
            return Err(Error::PreconditionViolated(
                "denominator has zero residue".into(),
            ));
        }
        Ok(self.normalize(num, den))
    }

    pub fn constant(&self, c: &Value) -> TowerElement {
        let mut num = self.zero_vec(self.rank());
        num[0] = c.clone();
        TowerElement {
            num,
            den: self.one_vec(),
        }
    }

    /// The image of an element of a prefix of this tower.
    pub fn embed(&self, t: &TowerElement) -> Result<TowerElement> {
        if !self.ranks.contains(&t.num.len()) || t.num.len() != t.den.len() {
            return Err(Error::MixedRings);
        }
        Ok(TowerElement {
            num: self.pad(&t.num),
            den: self.pad(&t.den),
        })
    }

    /// Maps a polynomial over the base ring into the tower.
    pub fn base_poly(&self, f: &Poly<Value>) -> Poly<TowerElement> {
        PolyRing::new(self.clone()).poly(f.coeffs().iter().map(|c| self.constant(c)).collect())
    }

    /// The stored generator `y_j = s_j·x_j` of step `j`, in this ring.
    pub fn generator(&self, j: usize) -> TowerElement {
        let step = &self.steps[j];
        let r = self.ranks[j];
        let v = if step.relation.len() == 1 {
            step.relation[0].iter().map(|c| self.base.neg(c)).collect()
        } else {
            let mut v = vec![self.base.zero(); r * step.relation.len()];
            v[r] = self.base.one();
            v
        };
        TowerElement {
            num: self.pad(&v),
            den: self.one_vec(),
        }
    }

    /// The element adjoined at step `j`: the generator divided by its scale.
    pub fn adjoined(&self, j: usize) -> TowerElement {
        let y = self.generator(j);
        let s = self.pad(&self.steps[j].scale);
        self.normalize(y.num, s)
    }

    fn k_is_zero(&self, v: &Value) -> bool {
        self.residue_field.is_zero(v)
    }

    fn residue_vec(&self, v: &[Value]) -> Result<Value> {
        let k = &self.residue_field;
        let mut acc = k.zero();
        for (c, b) in v.iter().zip(&self.basis_residues) {
            if self.base.is_zero(c) || k.is_zero(b) {
                continue;
            }
            let Value::Int(r) = self.base.residue(c)? else {
                return Err(Error::Internal("Z_(p) residues are integers".into()));
            };
            acc = k.add(&acc, &k.mul(&k.from_int(r as i64), b));
        }
        Ok(acc)
    }

    /// Whether some `v` with nonzero residue satisfies `v·w = 0` in the
    /// module, i.e. whether `w` vanishes after localization. The annihilator
    /// of `w` is an ideal whose `A`-basis comes from the kernel of the
    /// multiplication matrix; it leaves the maximal ideal iff a basis vector
    /// does.
    fn vanishes(&self, w: &[Value]) -> Result<bool> {
        if self.is_zero_vec(w) {
            return Ok(true);
        }
        let n = self.rank();
        let columns: Vec<Vec<Value>> = (0..n)
            .map(|i| {
                let mut e = self.zero_vec(n);
                e[i] = self.base.one();
                self.mul_vec(w, &e)
            })
            .collect();
        let m = Matrix::from_columns(n, &columns);
        for v in valuation_kernel(&self.base, &m)? {
            if !self.k_is_zero(&self.residue_vec(&v)?) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Decides `s = t` in the tower.
    pub fn tower_eq(&self, s: &TowerElement, t: &TowerElement) -> Result<bool> {
        self.check(s)?;
        self.check(t)?;
        if s == t {
            return Ok(true);
        }
        let w = self.sub_vec(&self.mul_vec(&s.num, &t.den), &self.mul_vec(&t.num, &s.den));
        self.vanishes(&w)
    }

    /// Residue in the (absolute) residue field of the tower.
    pub fn tower_residue(&self, t: &TowerElement) -> Result<Value> {
        self.check(t)?;
        let k = &self.residue_field;
        let den = k
            .inverse(&self.residue_vec(&t.den)?)
            .ok_or_else(|| Error::Internal("denominator with zero residue".into()))?;
        Ok(k.mul(&self.residue_vec(&t.num)?, &den))
    }

    /// Clears denominators of a monic `f` over this ring. Returns `s` and the
    /// non-leading coefficients of the monic `sⁿ·f(Y/s)` over the module.
    fn scaled_relation(&self, f: &Poly<TowerElement>) -> Result<(Vec<Value>, Vec<Vec<Value>>)> {
        let n = f.degree().filter(|&n| n >= 1).ok_or_else(|| {
            Error::PreconditionViolated("polynomial must have degree at least 1".into())
        })?;
        let coeffs = f.coeffs();
        for c in coeffs {
            self.check(c)?;
        }
        if !self.tower_eq(&coeffs[n], &self.one())? {
            return Err(Error::NotMonic);
        }
        let mut dens: Vec<&Vec<Value>> = Vec::new();
        for c in &coeffs[..n] {
            if !self.is_constant_vec(&c.den) && !dens.contains(&&c.den) {
                dens.push(&c.den);
            }
        }
        let s = dens
            .iter()
            .fold(self.one_vec(), |acc, d| self.mul_vec(&acc, d));
        let mut rel = Vec::with_capacity(n);
        let mut s_pow = self.one_vec();
        for c in coeffs[..n].iter().rev() {
            let mut r = c.num.clone();
            for d in &dens {
                if **d != c.den {
                    r = self.mul_vec(&r, d);
                }
            }
            rel.push(self.mul_vec(&s_pow, &r));
            s_pow = self.mul_vec(&s_pow, &s);
        }
        rel.reverse();
        Ok((s, rel))
    }

    fn extend(&self, step: Step, basis_residues: Vec<Value>, residue_field: RingSpec) -> Result<TowerRing> {
        let rank = self.rank() * step.relation.len();
        if rank > TOWER_RANK_CAP {
            return Err(Error::DegreeCapExceeded {
                degree: rank,
                cap: TOWER_RANK_CAP,
            });
        }
        let mut steps = self.steps.clone();
        steps.push(Arc::new(step));
        let mut ranks = self.ranks.clone();
        ranks.push(rank);
        Ok(TowerRing {
            base: self.base.clone(),
            p: self.p,
            steps,
            ranks,
            residue_field,
            basis_residues,
        })
    }

    /// Adjoins the root in the maximal ideal of a monic `f` with unit linear
    /// and radical constant coefficient.
    pub fn adjoin_hensel_root(&self, f: &Poly<TowerElement>) -> Result<AdjoinedRoot> {
        let (s, relation) = self.scaled_relation(f)?;
        let n = relation.len();
        let coeff = |i: usize| f.coeffs()[i].clone();
        if !self.is_unit(&coeff(1))? {
            return Err(Error::PreconditionViolated("linear coefficient is not a unit".into()));
        }
        if !self.in_radical(&coeff(0))? {
            return Err(Error::PreconditionViolated(
                "constant coefficient is not in the maximal ideal".into(),
            ));
        }
        let k = &self.residue_field;
        let mut basis_residues = self.basis_residues.clone();
        basis_residues.resize(self.rank() * n, k.zero());
        let ring = self.extend(
            Step {
                kind: StepKind::HenselRoot,
                source: f.clone(),
                relation,
                scale: s,
            },
            basis_residues,
            self.residue_field.clone(),
        )?;
        let x = ring.adjoined(ring.depth() - 1);
        let mut y = ring.one();
        for i in (1..n).rev() {
            y = ring.add(&ring.mul(&y, &x), &ring.embed(&coeff(i))?);
        }
        ensure_internal!(
            ring.tower_eq(&ring.mul(&x, &y), &ring.neg(&ring.embed(&coeff(0))?))?,
            "adjoined root does not satisfy x·y = −a₀"
        );
        Ok(AdjoinedRoot {
            ring,
            root: x,
            cofactor: y,
        })
    }

    /// Adjoins a root `u` of a monic `F` that is irreducible modulo the
    /// maximal ideal; the residue field grows by the degree of `F`.
    pub fn adjoin_residue_extension(&self, f: &Poly<TowerElement>) -> Result<(TowerRing, TowerElement)> {
        let (s, relation) = self.scaled_relation(f)?;
        let d = relation.len();
        let k = &self.residue_field;
        let kr = PolyRing::new(k.clone());
        let mut bar = relation
            .iter()
            .map(|c| self.residue_vec(c))
            .collect::<Result<Vec<_>>>()?;
        bar.push(k.one());
        let f_bar = kr.poly(bar);
        if !is_irreducible(k, &f_bar)? {
            return Err(Error::NotResiduallyIrreducible);
        }
        let (field, basis_residues) = if d == 1 {
            (k.clone(), self.basis_residues.clone())
        } else {
            let fp = RingSpec::prime_field(self.p)?;
            let degree = k.field_degree().ok_or(Error::NotFiniteField)? * d;
            let modulus = first_irreducible(&fp, degree)?
                .coeffs()
                .iter()
                .map(|c| c.as_int().expect("prime field payload"))
                .collect();
            let field = RingSpec::finite_field(self.p, modulus)?;
            let embed = field_embedding(k, &field)?;
            let old: Vec<Value> = self.basis_residues.iter().map(&embed).collect();
            let fr = PolyRing::new(field.clone());
            let lifted = fr.poly(f_bar.coeffs().iter().map(&embed).collect());
            let root = field_roots(&field, &lifted)?
                .into_iter()
                .next()
                .ok_or_else(|| Error::Internal("irreducible factor has no root in its splitting field".into()))?;
            let mut basis = Vec::with_capacity(old.len() * d);
            let mut power = field.one();
            for _ in 0..d {
                basis.extend(old.iter().map(|b| field.mul(b, &power)));
                power = field.mul(&power, &root);
            }
            (field, basis)
        };
        let ring = self.extend(
            Step {
                kind: StepKind::ResidueExtension,
                source: f.clone(),
                relation,
                scale: s,
            },
            basis_residues,
            field,
        )?;
        let u = ring.adjoined(ring.depth() - 1);
        let fr = PolyRing::new(ring.clone());
        let lifted = fr.poly(
            f.coeffs()
                .iter()
                .map(|c| ring.embed(c))
                .collect::<Result<Vec<_>>>()?,
        );
        ensure_internal!(ring.is_zero(&fr.eval(&lifted, &u)), "adjoined element is not a root");
        Ok((ring, u))
    }

    /// Parses a tower element: `{"num": [...], "den": [...]}` with
    /// coordinates over a prefix of this tower, or a base-ring value.
    pub fn element_from_json(&self, j: &Json) -> Result<TowerElement> {
        match j {
            Json::Object(map) => {
                let coords = |key: &str| -> Result<Option<Vec<Value>>> {
                    match map.get(key) {
                        None => Ok(None),
                        Some(Json::Array(items)) => items
                            .iter()
                            .map(|c| value_from_json(&self.base, c))
                            .collect::<Result<Vec<_>>>()
                            .map(Some),
                        Some(other) => Err(Error::Parse(format!("{} must be an array, got {}", key, other))),
                    }
                };
                let num = coords("num")?.ok_or_else(|| Error::Parse("missing num".into()))?;
                let den = coords("den")?.unwrap_or_else(|| vec![self.base.one()]);
                if num.len() > self.rank() || den.len() > self.rank() {
                    return Err(Error::NotInRing(format!(
                        "at most {} coordinates expected",
                        self.rank()
                    )));
                }
                if let Some(key) = map.keys().find(|k| *k != "num" && *k != "den") {
                    return Err(Error::Parse(format!("unexpected key {}", key)));
                }
                self.fraction(self.pad(&num), self.pad(&den))
            }
            _ => Ok(self.constant(&value_from_json(&self.base, j)?)),
        }
    }

    pub fn element_to_json(&self, t: &TowerElement) -> Json {
        element_json(&self.base, t)
    }

    /// Parses a polynomial as a JSON array of coefficients, lowest degree first.
    pub fn poly_from_json(&self, j: &Json) -> Result<Poly<TowerElement>> {
        let Json::Array(items) = j else {
            return Err(Error::Parse(format!("polynomial must be a JSON array, got {}", j)));
        };
        let coeffs = items
            .iter()
            .map(|c| self.element_from_json(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyRing::new(self.clone()).poly(coeffs))
    }
}

/// `{"num": [...]}`, with `"den"` only when the denominator is not 1.
fn element_json(base: &RingSpec, t: &TowerElement) -> Json {
    let coords = |v: &[Value]| Json::Array(v.iter().map(|c| value_to_json(base, c)).collect());
    let mut map = serde_json::Map::new();
    map.insert("num".into(), coords(&t.num));
    let den_is_one = base.is_one(&t.den[0]) && t.den[1..].iter().all(|c| base.is_zero(c));
    if !den_is_one {
        map.insert("den".into(), coords(&t.den));
    }
    Json::Object(map)
}

/// An embedding of finite fields `small → large`, sending the generator of
/// `small` to the first root of its modulus in `large`.
fn field_embedding(small: &RingSpec, large: &RingSpec) -> Result<impl Fn(&Value) -> Value> {
    let large = large.clone();
    let image = match small.field_modulus() {
        None => None,
        Some(m) => {
            let lr = PolyRing::new(large.clone());
            let m = lr.poly(m.iter().map(|&c| large.from_int(c as i64)).collect());
            Some(
                field_roots(&large, &m)?
                    .into_iter()
                    .next()
                    .ok_or_else(|| Error::Internal("field does not embed".into()))?,
            )
        }
    };
    let small = small.clone();
    Ok(move |v: &Value| {
        let coeffs = small.ext_coeffs(v).expect("finite field payload");
        let t = image.clone().unwrap_or_else(|| large.zero());
        let mut acc = large.zero();
        for &c in coeffs.iter().rev() {
            acc = large.add(&large.mul(&acc, &t), &large.from_int(c as i64));
        }
        acc
    })
}

/// The field of `q` elements: `F_p` for prime `q`, otherwise `F_p[t]/(m)` with
/// `m` the first irreducible of the right degree.
pub fn canonical_field(q: u64) -> Result<RingSpec> {
    let (p, e) = prime_power(q)
        .ok_or_else(|| Error::PreconditionViolated(format!("{} is not a prime power", q)))?;
    let fp = RingSpec::prime_field(p)?;
    if e == 1 {
        return Ok(fp);
    }
    let modulus = first_irreducible(&fp, e)?
        .coeffs()
        .iter()
        .map(|c| c.as_int().expect("prime field payload"))
        .collect();
    RingSpec::finite_field(p, modulus)
}

fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// A monic irreducible of degree `d` over the field of `q` elements, first
/// in the search order of [`first_irreducible`].
pub fn separable_closure_step(q: u64, d: usize) -> Result<Poly<Value>> {
    first_irreducible(&canonical_field(q)?, d)
}

impl Ring for TowerRing {
    type Elem = TowerElement;

    fn zero(&self) -> TowerElement {
        TowerElement {
            num: self.zero_vec(self.rank()),
            den: self.one_vec(),
        }
    }

    fn one(&self) -> TowerElement {
        TowerElement {
            num: self.one_vec(),
            den: self.one_vec(),
        }
    }

    fn from_int(&self, n: i64) -> TowerElement {
        self.constant(&self.base.from_int(n))
    }

    fn add(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        if a.den == b.den {
            return TowerElement {
                num: self.add_vec(&a.num, &b.num),
                den: a.den.clone(),
            };
        }
        let num = self.add_vec(&self.mul_vec(&a.num, &b.den), &self.mul_vec(&b.num, &a.den));
        self.normalize(num, self.mul_vec(&a.den, &b.den))
    }

    fn neg(&self, a: &TowerElement) -> TowerElement {
        TowerElement {
            num: a.num.iter().map(|c| self.base.neg(c)).collect(),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        self.normalize(self.mul_vec(&a.num, &b.num), self.mul_vec(&a.den, &b.den))
    }

    fn is_zero(&self, a: &TowerElement) -> bool {
        self.vanishes(&a.num).expect("kernels over Z_(p) are computable")
    }

    fn equal(&self, a: &TowerElement, b: &TowerElement) -> bool {
        self.tower_eq(a, b).expect("kernels over Z_(p) are computable")
    }

    fn inverse(&self, a: &TowerElement) -> Option<TowerElement> {
        match self.local_split(a) {
            Ok(Split::Unit(inv)) => Some(inv),
            _ => None,
        }
    }
}

impl LocalRing for TowerRing {
    /// Unit iff the numerator has nonzero residue; the inverse is `den/num`.
    fn local_split(&self, a: &TowerElement) -> Result<Split<TowerElement>> {
        self.check(a)?;
        if self.k_is_zero(&self.residue_vec(&a.num)?) {
            return Ok(Split::Radical);
        }
        Ok(Split::Unit(self.normalize(a.den.clone(), a.num.clone())))
    }

    fn residue_field(&self) -> Result<RingSpec> {
        Ok(self.residue_field.clone())
    }

    fn residue(&self, a: &TowerElement) -> Result<Value> {
        self.tower_residue(a)
    }

    /// Solves for `F_p`-coordinates against the residues of the basis monomials.
    fn lift_residue(&self, r: &Value) -> Result<TowerElement> {
        let fp = RingSpec::prime_field(self.p)?;
        let k = &self.residue_field;
        let target: Vec<Value> = k.ext_coeffs(r)?.into_iter().map(Value::Int).collect();
        let columns = self
            .basis_residues
            .iter()
            .map(|b| Ok(k.ext_coeffs(b)?.into_iter().map(Value::Int).collect()))
            .collect::<Result<Vec<Vec<Value>>>>()?;
        let m = Matrix::from_columns(target.len(), &columns);
        let sol = field_solve(&fp, &m, &target)
            .ok_or_else(|| Error::NotInRing(format!("{:?} is not a residue of the tower", r)))?;
        let num = sol
            .iter()
            .map(|c| self.base.lift_residue(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(TowerElement {
            num,
            den: self.one_vec(),
        })
    }
}

#[cfg(test)]
mod tests;
