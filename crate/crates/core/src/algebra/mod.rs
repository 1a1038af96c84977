//! Finite algebras over a base ring: free modules of finite rank with a
//! commutative multiplication, given either by a monic polynomial
//! (`A[X]/(f)`) or by structure constants.

mod extension;
mod factorization;
mod idempotent;
mod structure;

pub use extension::LocalExtension;
pub use factorization::{fact_to_idem, idem_to_fact, ideal_eq};
pub use idempotent::{
    newton_lift_idempotent, rank_polynomial, BoolOp, Idempotent, NewtonLift, RankPolynomial,
};
pub use structure::{decompose_local, factor_algebra, min_poly, split_by_element, zero_dim_witness};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{Poly, PolyRing};
use crate::ring::{ArithOp, LocalRing, Ring, RingSpec, Value};

#[derive(Debug)]
enum Presentation<E> {
    /// `A[X]/(f)` with basis `1, x, ..., x^(n-1)`.
    Monogenic(Poly<E>),
    /// `table[i][j]` holds the coordinates of `e_i · e_j`.
    Table(Vec<Vec<Vec<E>>>),
}

#[derive(Debug)]
struct AlgebraData<R: Ring> {
    base: R,
    rank: usize,
    presentation: Presentation<R::Elem>,
    one: Vec<R::Elem>,
}

/// A finite free algebra over `R`; elements are coordinate vectors.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra<R: Ring> {
    data: Arc<AlgebraData<R>>,
}

/// Structure constants are checked on every basis triple up to this rank.
const FULL_CHECK_RANK: usize = 8;

impl<R: Ring> FiniteAlgebra<R> {
    /// `A[X]/(f)` for monic `f` of degree at least 1.
    pub fn monogenic(base: R, f: Poly<R::Elem>) -> Result<Self> {
        let pr = PolyRing::new(base.clone());
        if !pr.is_monic(&f) {
            return Err(Error::NotMonic);
        }
        let rank = f.deg();
        if rank == 0 {
            return Err(Error::PreconditionViolated("modulus must have degree >= 1".into()));
        }
        let mut one = vec![base.zero(); rank];
        one[0] = base.one();
        Ok(FiniteAlgebra {
            data: Arc::new(AlgebraData {
                base,
                rank,
                presentation: Presentation::Monogenic(f),
                one,
            }),
        })
    }

    /// Algebra from structure constants; `table[i][j]` are the coordinates of
    /// `e_i · e_j`. Commutativity, associativity and the unit are verified on
    /// basis triples (all of them up to rank 8, a deterministic sample above).
    pub fn from_table(base: R, table: Vec<Vec<Vec<R::Elem>>>, one: Vec<R::Elem>) -> Result<Self> {
        let rank = one.len();
        if rank == 0
            || table.len() != rank
            || table
                .iter()
                .any(|row| row.len() != rank || row.iter().any(|c| c.len() != rank))
        {
            return Err(Error::PreconditionViolated("structure constants have wrong shape".into()));
        }
        let alg = FiniteAlgebra {
            data: Arc::new(AlgebraData {
                base,
                rank,
                presentation: Presentation::Table(table),
                one,
            }),
        };
        alg.check_axioms()?;
        Ok(alg)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.rank();
        let basis: Vec<_> = (0..n).map(|i| self.basis_element(i)).collect();
        let bad = |what: &str| Err(Error::PreconditionViolated(format!("multiplication is not {}", what)));
        let triples: Vec<(usize, usize, usize)> = if n <= FULL_CHECK_RANK {
            (0..n)
                .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
                .collect()
        } else {
            (0..512).map(|t| ((t * 7) % n, (t * 13 + 1) % n, (t * 29 + 2) % n)).collect()
        };
        for i in 0..n {
            if !self.equal(&self.mul(&self.one(), &basis[i]), &basis[i]) {
                return bad("unital");
            }
            for j in 0..n {
                if !self.equal(&self.mul(&basis[i], &basis[j]), &self.mul(&basis[j], &basis[i])) {
                    return bad("commutative");
                }
            }
        }
        for (i, j, k) in triples {
            let left = self.mul(&self.mul(&basis[i], &basis[j]), &basis[k]);
            let right = self.mul(&basis[i], &self.mul(&basis[j], &basis[k]));
            if !self.equal(&left, &right) {
                return bad("associative");
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &R {
        &self.data.base
    }

    pub fn rank(&self) -> usize {
        self.data.rank
    }

    /// The defining polynomial of a monogenic algebra.
    pub fn modulus(&self) -> Option<&Poly<R::Elem>> {
        match &self.data.presentation {
            Presentation::Monogenic(f) => Some(f),
            Presentation::Table(_) => None,
        }
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
    }

    pub fn basis_element(&self, i: usize) -> Vec<R::Elem> {
        let mut v = vec![self.base().zero(); self.rank()];
        v[i] = self.base().one();
        v
    }

    /// `c · 1`.
    pub fn embed(&self, c: &R::Elem) -> Vec<R::Elem> {
        self.data.one.iter().map(|x| self.base().mul(c, x)).collect()
    }

    pub fn scale(&self, c: &R::Elem, a: &[R::Elem]) -> Vec<R::Elem> {
        a.iter().map(|x| self.base().mul(c, x)).collect()
    }

    /// Checks the length of a coordinate vector.
    pub fn element(&self, coords: Vec<R::Elem>) -> Result<Vec<R::Elem>> {
        if coords.len() != self.rank() {
            return Err(Error::NotInRing(format!(
                "expected {} coordinates, got {}",
                self.rank(),
                coords.len()
            )));
        }
        Ok(coords)
    }

    /// The class of `X` in a monogenic algebra.
    pub fn generator(&self) -> Result<Vec<R::Elem>> {
        let f = self.modulus().ok_or_else(|| {
            Error::PreconditionViolated("algebra has no monogenic presentation".into())
        })?;
        Ok(self.reduce_poly(&PolyRing::new(self.base().clone()).x(), f))
    }

    /// Image of a polynomial in a monogenic algebra.
    pub fn from_poly(&self, p: &Poly<R::Elem>) -> Result<Vec<R::Elem>> {
        let f = self.modulus().ok_or_else(|| {
            Error::PreconditionViolated("algebra has no monogenic presentation".into())
        })?;
        Ok(self.reduce_poly(p, f))
    }

    fn reduce_poly(&self, p: &Poly<R::Elem>, f: &Poly<R::Elem>) -> Vec<R::Elem> {
        let pr = PolyRing::new(self.base().clone());
        let r = pr.divmod_monic(p, f).expect("monogenic modulus is monic").1;
        let mut coords = r.into_coeffs();
        coords.resize(self.rank(), self.base().zero());
        coords
    }

    /// Coordinates of a monogenic-algebra element read as a polynomial of degree < n.
    pub fn to_poly(&self, a: &[R::Elem]) -> Poly<R::Elem> {
        PolyRing::new(self.base().clone()).poly(a.to_vec())
    }

    /// `p(a)` by Horner's rule in the algebra.
    pub fn eval_poly(&self, p: &Poly<R::Elem>, a: &[R::Elem]) -> Vec<R::Elem> {
        p.coeffs().iter().rev().fold(self.zero(), |acc, c| {
            self.add(&self.mul(&acc, &a.to_vec()), &self.embed(c))
        })
    }

    /// Matrix of multiplication by `x`; column `j` holds `x · e_j`.
    pub fn mult_matrix(&self, x: &[R::Elem]) -> Matrix<R::Elem> {
        let n = self.rank();
        match &self.data.presentation {
            Presentation::Monogenic(f) => {
                let mut cols = Vec::with_capacity(n);
                let mut v = x.to_vec();
                for j in 0..n {
                    if j > 0 {
                        v = self.mul_by_x(&v, f);
                    }
                    cols.push(v.clone());
                }
                Matrix::from_columns(n, &cols)
            }
            Presentation::Table(_) => {
                let cols: Vec<Vec<R::Elem>> =
                    (0..n).map(|j| self.mul(&x.to_vec(), &self.basis_element(j))).collect();
                Matrix::from_columns(n, &cols)
            }
        }
    }

    fn mul_by_x(&self, v: &[R::Elem], f: &Poly<R::Elem>) -> Vec<R::Elem> {
        let base = self.base();
        let n = self.rank();
        let top = v[n - 1].clone();
        let mut out = Vec::with_capacity(n);
        out.push(base.neg(&base.mul(&top, &f.coeffs()[0])));
        for i in 1..n {
            out.push(base.sub(&v[i - 1], &base.mul(&top, &f.coeffs()[i])));
        }
        out
    }

    /// Characteristic polynomial of multiplication by `x`.
    pub fn char_poly(&self, x: &[R::Elem]) -> Poly<R::Elem> {
        let coeffs = linalg::char_poly(self.base(), &self.mult_matrix(x));
        PolyRing::new(self.base().clone()).poly(coeffs)
    }

    /// Inverse through the characteristic polynomial: if `χ(T) = T·q(T) + c₀`
    /// with `c₀` a unit then `x · (−c₀⁻¹ q(x)) = 1`.
    pub fn invert_element(&self, x: &[R::Elem]) -> Result<Vec<R::Elem>> {
        let chi = self.char_poly(x);
        let c0 = chi.coeffs()[0].clone();
        let inv_c0 = self.base().inverse(&c0).ok_or(Error::NotInvertible)?;
        let pr = PolyRing::new(self.base().clone());
        let q = pr.poly(chi.coeffs()[1..].to_vec());
        let y = self.scale(&self.base().neg(&inv_c0), &self.eval_poly(&q, x));
        crate::error::ensure_internal!(
            self.is_one(&self.mul(&x.to_vec(), &y)),
            "characteristic-polynomial inverse failed"
        );
        Ok(y)
    }

    /// `x^k` with `k` given; convenient for nilpotency checks.
    pub fn is_nilpotent_with_index(&self, x: &[R::Elem], k: u64) -> bool {
        self.is_zero(&self.pow(&x.to_vec(), k))
    }
}

impl<R: LocalRing> FiniteAlgebra<R> {
    /// Multiplication matrix reduced to the residue field.
    pub fn residual_mult_matrix(
        &self,
        x: &[R::Elem],
    ) -> Result<Matrix<Value>> {
        self.mult_matrix(x).try_map(|c| self.base().residue(c))
    }

    /// Membership in the Jacobson radical `J_B = √(m·B)`: the residual
    /// multiplication matrix is nilpotent.
    pub fn radical_member(&self, x: &[R::Elem]) -> Result<bool> {
        let k = self.base().residue_field()?;
        let m = self.residual_mult_matrix(x)?;
        Ok(linalg::mat_is_zero(&k, &linalg::mat_pow(&k, &m, self.rank() as u64)))
    }

    /// `B ⊗ k` over the residue field, with the same basis.
    pub fn residue_algebra(&self) -> Result<FiniteAlgebra<RingSpec>> {
        let base = self.base();
        let k = base.residue_field()?;
        match &self.data.presentation {
            Presentation::Monogenic(f) => {
                FiniteAlgebra::monogenic(k, PolyRing::new(base.clone()).residue(f)?)
            }
            Presentation::Table(table) => {
                let table = table
                    .iter()
                    .map(|row| row.iter().map(|c| self.residue(c)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                FiniteAlgebra::from_table(k, table, self.residue(&self.data.one)?)
            }
        }
    }

    /// Coordinatewise lift along the residue section.
    pub fn lift_residue(&self, x: &[Value]) -> Result<Vec<R::Elem>> {
        x.iter().map(|c| self.base().lift_residue(c)).collect()
    }

    /// Coordinatewise residue.
    pub fn residue(&self, x: &[R::Elem]) -> Result<Vec<Value>> {
        x.iter().map(|c| self.base().residue(c)).collect()
    }

    /// Whether every coordinate lies in the maximal ideal (membership in `m·B`).
    pub fn in_max_ideal_multiple(&self, x: &[R::Elem]) -> Result<bool> {
        for c in x {
            if self.base().is_unit(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl<R: Ring> Ring for FiniteAlgebra<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Vec<R::Elem> {
        vec![self.base().zero(); self.rank()]
    }

    fn one(&self) -> Vec<R::Elem> {
        self.data.one.clone()
    }

    fn from_int(&self, n: i64) -> Vec<R::Elem> {
        self.embed(&self.base().from_int(n))
    }

    fn add(&self, a: &Vec<R::Elem>, b: &Vec<R::Elem>) -> Vec<R::Elem> {
        a.iter().zip(b).map(|(x, y)| self.base().add(x, y)).collect()
    }

    fn neg(&self, a: &Vec<R::Elem>) -> Vec<R::Elem> {
        a.iter().map(|x| self.base().neg(x)).collect()
    }

    fn sub(&self, a: &Vec<R::Elem>, b: &Vec<R::Elem>) -> Vec<R::Elem> {
        a.iter().zip(b).map(|(x, y)| self.base().sub(x, y)).collect()
    }

    fn mul(&self, a: &Vec<R::Elem>, b: &Vec<R::Elem>) -> Vec<R::Elem> {
        let base = self.base();
        let n = self.rank();
        match &self.data.presentation {
            Presentation::Monogenic(f) => {
                let mut prod = vec![base.zero(); 2 * n - 1];
                for (i, x) in a.iter().enumerate() {
                    if base.is_zero(x) {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        prod[i + j] = base.add(&prod[i + j], &base.mul(x, y));
                    }
                }
                for k in (n..2 * n - 1).rev() {
                    let c = prod[k].clone();
                    if base.is_zero(&c) {
                        continue;
                    }
                    for i in 0..n {
                        let idx = k - n + i;
                        prod[idx] = base.sub(&prod[idx], &base.mul(&c, &f.coeffs()[i]));
                    }
                }
                prod.truncate(n);
                prod
            }
            Presentation::Table(table) => {
                let mut out = vec![base.zero(); n];
                for (i, x) in a.iter().enumerate() {
                    if base.is_zero(x) {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if base.is_zero(y) {
                            continue;
                        }
                        let xy = base.mul(x, y);
                        for (k, c) in table[i][j].iter().enumerate() {
                            if !base.is_zero(c) {
                                out[k] = base.add(&out[k], &base.mul(&xy, c));
                            }
                        }
                    }
                }
                out
            }
        }
    }

    fn is_zero(&self, a: &Vec<R::Elem>) -> bool {
        a.iter().all(|x| self.base().is_zero(x))
    }

    fn equal(&self, a: &Vec<R::Elem>, b: &Vec<R::Elem>) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| self.base().equal(x, y))
    }

    fn inverse(&self, a: &Vec<R::Elem>) -> Option<Vec<R::Elem>> {
        self.invert_element(a).ok()
    }

    /// A nilpotent `x` has nilpotent residual multiplication matrix, so
    /// `x^n ∈ m·B` and `x^(n·N) = 0` when `m^N = 0` in the base.
    fn nilpotency_bound(&self) -> Option<u64> {
        self.base()
            .nilpotency_bound()
            .map(|b| b.saturating_mul(self.rank() as u64))
    }
}

/// An element together with the algebra it lives in, for APIs that must
/// reject operands from different algebras.
#[derive(Debug, Clone)]
pub struct AlgElement<R: Ring> {
    pub algebra: FiniteAlgebra<R>,
    pub coords: Vec<R::Elem>,
}

impl<R: Ring> AlgElement<R> {
    pub fn new(algebra: &FiniteAlgebra<R>, coords: Vec<R::Elem>) -> Result<Self> {
        let coords = algebra.element(coords)?;
        Ok(AlgElement {
            algebra: algebra.clone(),
            coords,
        })
    }

    pub fn arith(op: ArithOp, x: &Self, y: &Self) -> Result<Self> {
        if op != ArithOp::Neg && !x.algebra.same_algebra(&y.algebra) {
            return Err(Error::MixedAlgebras);
        }
        let a = &x.algebra;
        let coords = match op {
            ArithOp::Add => a.add(&x.coords, &y.coords),
            ArithOp::Sub => a.sub(&x.coords, &y.coords),
            ArithOp::Mul => a.mul(&x.coords, &y.coords),
            ArithOp::Neg => a.neg(&x.coords),
        };
        Ok(AlgElement {
            algebra: a.clone(),
            coords,
        })
    }
}
