//! The universal decomposition algebra `D_A(f) = A[x₁, …, x_n]/⟨S_k − (−1)^k a_k⟩`
//! of a monic `f = Tⁿ + a₁T^{n−1} + ⋯ + a_n`, its arithmetic, the action of the
//! symmetric group and Galois idempotents.
//!
//! Normal forms come from the splitting chain: `x_n` is a root of `g₁ = f`,
//! `x_{n−1}` a root of `g₂ = g₁/(T − x_n)`, and so on down to `x₂`; finally
//! `x₁ = −a₁ − x₂ − ⋯ − x_n`. The basis is `x₁^{m₁}⋯x_n^{m_n}` with
//! `m_j ≤ j − 1`, stored in mixed radix with the exponent of `x_n` varying
//! fastest.

pub(crate) mod galois;
mod perm;

pub use galois::{galois_from_idempotent, GaloisDecomposition};
pub use perm::{all_permutations, Permutation};

use std::sync::Arc;

use crate::algebra::{rank_polynomial, RankPolynomial};
use crate::error::{ensure_internal, Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{Poly, PolyRing};
use crate::ring::{ArithOp, LocalRing, Ring, Value};

pub const DEFAULT_DEGREE_CAP: usize = 5;
pub const MAX_DEGREE_CAP: usize = 6;

/// Multiplication by the variable adjoined at one level of the chain.
///
/// A vector splits into blocks of `inner · degree` coordinates; inside a
/// block it is a polynomial of degree `< degree` in the level variable `y`
/// with coefficients in the previous stage (`inner` coordinates each).
#[derive(Debug)]
struct Level<E> {
    degree: usize,
    inner: usize,
    /// `overflow[i·degree + k]` holds `−γ_k · b_i` where `y^degree = −Σ γ_k y^k`.
    overflow: Vec<Vec<E>>,
}

#[derive(Debug)]
struct UdaData<R: Ring> {
    base: R,
    f: Poly<R::Elem>,
    n: usize,
    rank: usize,
    levels: Vec<Level<R::Elem>>,
}

#[derive(Debug, Clone)]
pub struct UdaAlgebra<R: LocalRing> {
    data: Arc<UdaData<R>>,
}

impl<R: LocalRing> UdaAlgebra<R> {
    /// Builds `D_A(f)` with the default degree cap.
    pub fn new(base: R, f: Poly<R::Elem>) -> Result<Self> {
        Self::with_cap(base, f, DEFAULT_DEGREE_CAP)
    }

    pub fn with_cap(base: R, f: Poly<R::Elem>, cap: usize) -> Result<Self> {
        let pr = PolyRing::new(base.clone());
        if !pr.is_monic(&f) {
            return Err(Error::NotMonic);
        }
        let n = f.deg();
        if n == 0 {
            return Err(Error::PreconditionViolated("polynomial must have degree >= 1".into()));
        }
        let cap = cap.min(MAX_DEGREE_CAP);
        if n > cap {
            return Err(Error::DegreeCapExceeded { degree: n, cap });
        }
        let mut data = UdaData {
            base: base.clone(),
            f: f.clone(),
            n,
            rank: 1,
            levels: Vec::with_capacity(n - 1),
        };
        // coefficients of the current chain polynomial, each in the current stage
        let mut chain: Vec<Vec<R::Elem>> = f.coeffs().iter().map(|c| vec![c.clone()]).collect();
        for _ in 0..n - 1 {
            let d = chain.len() - 1;
            let inner = data.rank;
            let mut overflow = vec![Vec::new(); inner * d];
            for (k, gamma) in chain[..d].iter().enumerate() {
                let mut prods: Vec<Vec<R::Elem>> = Vec::with_capacity(inner);
                for i in 0..inner {
                    let p = if i == 0 {
                        gamma.clone()
                    } else {
                        let l = data.lowest_level(i);
                        data.mul_level(l, &prods[i - data.levels[l].inner])
                    };
                    prods.push(p);
                }
                for (i, p) in prods.into_iter().enumerate() {
                    overflow[i * d + k] = p.iter().map(|c| base.neg(c)).collect();
                }
            }
            data.levels.push(Level {
                degree: d,
                inner,
                overflow,
            });
            data.rank = inner * d;
            let level = data.levels.len() - 1;
            // synthetic division by (T − y) in the new stage
            let lift = |v: &[R::Elem]| {
                let mut w = v.to_vec();
                w.resize(data.rank, base.zero());
                w
            };
            let mut quotient = vec![Vec::new(); d];
            quotient[d - 1] = lift(&chain[d]);
            for k in (1..d).rev() {
                let yq = data.mul_level(level, &quotient[k]);
                quotient[k - 1] = data.add_vec(&lift(&chain[k]), &yq);
            }
            let rem = data.add_vec(&lift(&chain[0]), &data.mul_level(level, &quotient[0]));
            ensure_internal!(
                rem.iter().all(|c| base.is_zero(c)),
                "adjoined variable is not a root of its chain polynomial"
            );
            chain = quotient;
        }
        let uda = UdaAlgebra {
            data: Arc::new(data),
        };
        uda.check_construction(&chain)?;
        Ok(uda)
    }

    /// `Π (T − x_i) = f`, `x₁` agrees with the last chain root, and the
    /// variable multiplications commute (all basis vectors for `n ≤ 3`, a
    /// sample above).
    fn check_construction(&self, last: &[Vec<R::Elem>]) -> Result<()> {
        let n = self.degree();
        let base = self.base();
        let x1 = self.variable(1);
        let mut expected = last[0].clone();
        expected.resize(self.rank(), base.zero());
        ensure_internal!(
            self.equal(&x1, &self.neg(&expected)),
            "x₁ disagrees with the root of the last chain polynomial"
        );
        let mut prod: Vec<Vec<R::Elem>> = vec![self.one()];
        for i in 1..=n {
            let mut next = vec![self.zero(); prod.len() + 1];
            for (k, c) in prod.iter().enumerate() {
                next[k + 1] = self.add(&next[k + 1], c);
                next[k] = self.sub(&next[k], &self.mul_var(i, c));
            }
            prod = next;
        }
        for (k, c) in prod.iter().enumerate() {
            ensure_internal!(
                self.equal(c, &self.embed(&self.data.f.coeffs()[k])),
                "elementary symmetric relation fails for coefficient {}",
                k
            );
        }
        let samples: Vec<usize> = if n <= 3 {
            (0..self.rank()).collect()
        } else {
            (0..6).map(|t| (t * 37 + 5) % self.rank()).collect()
        };
        for &s in &samples {
            let b = self.basis_element(s);
            for i in 1..=n {
                for j in i + 1..=n {
                    let ij = self.mul_var(i, &self.mul_var(j, &b));
                    let ji = self.mul_var(j, &self.mul_var(i, &b));
                    ensure_internal!(self.equal(&ij, &ji), "x{} and x{} do not commute", i, j);
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &R {
        &self.data.base
    }

    pub fn polynomial(&self) -> &Poly<R::Elem> {
        &self.data.f
    }

    /// `n = deg f`.
    pub fn degree(&self) -> usize {
        self.data.n
    }

    /// `n!`.
    pub fn rank(&self) -> usize {
        self.data.rank
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
    }

    pub fn basis_element(&self, i: usize) -> Vec<R::Elem> {
        let mut v = self.zero();
        v[i] = self.base().one();
        v
    }

    /// Exponents `(m₁, …, m_n)` of the `i`-th basis monomial.
    pub fn basis_label(&self, mut i: usize) -> Vec<usize> {
        let n = self.degree();
        let mut exps = vec![0; n];
        for (l, level) in self.data.levels.iter().enumerate() {
            exps[n - 1 - l] = i % level.degree;
            i /= level.degree;
        }
        exps
    }

    pub fn basis_labels(&self) -> Vec<Vec<usize>> {
        (0..self.rank()).map(|i| self.basis_label(i)).collect()
    }

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

    /// `c · 1`.
    pub fn embed(&self, c: &R::Elem) -> Vec<R::Elem> {
        let mut v = self.zero();
        v[0] = c.clone();
        v
    }

    /// The variable `x_i`, `1 ≤ i ≤ n`.
    pub fn variable(&self, i: usize) -> Vec<R::Elem> {
        self.mul_var(i, &self.one())
    }

    /// Image of `A[X]/(f)` under `X ↦ x_n`: coordinates `i < n` are `x_n^i`.
    pub fn embed_monogenic(&self, coords: &[R::Elem]) -> Vec<R::Elem> {
        let mut v = coords.to_vec();
        v.resize(self.rank(), self.base().zero());
        v
    }

    /// Inverse of [`Self::embed_monogenic`] on its image.
    pub fn descend_monogenic(&self, a: &[R::Elem]) -> Option<Vec<R::Elem>> {
        let n = self.degree();
        a[n..]
            .iter()
            .all(|c| self.base().is_zero(c))
            .then(|| a[..n].to_vec())
    }

    /// `x_i · a`.
    pub fn mul_var(&self, i: usize, a: &[R::Elem]) -> Vec<R::Elem> {
        let n = self.degree();
        assert!((1..=n).contains(&i), "variable index out of range");
        if i >= 2 {
            return self.data.mul_level(n - i, a);
        }
        let base = self.base();
        let a1 = &self.data.f.coeffs()[n - 1];
        let mut out: Vec<R::Elem> = a.iter().map(|c| base.neg(&base.mul(a1, c))).collect();
        for j in 2..=n {
            out = self.data.sub_vec(&out, &self.data.mul_level(n - j, a));
        }
        out
    }

    /// Visits `start · m` for every basis monomial `m` not skipped, where
    /// the monomials are built by multiplying with `var(level)`.
    fn walk(
        &self,
        start: Vec<R::Elem>,
        var: &dyn Fn(usize) -> usize,
        skip: &dyn Fn(usize, usize) -> bool,
        visit: &mut dyn FnMut(usize, &[R::Elem]),
    ) {
        self.walk_level(self.data.levels.len(), 0, start, var, skip, visit);
    }

    fn walk_level(
        &self,
        levels_left: usize,
        offset: usize,
        w: Vec<R::Elem>,
        var: &dyn Fn(usize) -> usize,
        skip: &dyn Fn(usize, usize) -> bool,
        visit: &mut dyn FnMut(usize, &[R::Elem]),
    ) {
        if levels_left == 0 {
            visit(offset, &w);
            return;
        }
        let l = levels_left - 1;
        let level = &self.data.levels[l];
        let stride = level.inner;
        let last = (0..level.degree)
            .rev()
            .find(|&m| !skip(offset + m * stride, stride));
        let Some(last) = last else {
            return;
        };
        let mut cur = w;
        for m in 0..=last {
            if m > 0 {
                cur = self.mul_var(var(l), &cur);
            }
            let sub = offset + m * stride;
            if !skip(sub, stride) {
                self.walk_level(l, sub, cur.clone(), var, skip, visit);
            }
        }
    }

    fn level_var(&self, l: usize) -> usize {
        self.degree() - l
    }

    /// Product by applying variable multiplications to `a` along the
    /// monomials of `b`.
    pub fn uda_mul(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        let base = self.base();
        let mut out = self.zero();
        self.walk(
            a.to_vec(),
            &|l| self.level_var(l),
            &|off, len| b[off..off + len].iter().all(|c| base.is_zero(c)),
            &mut |idx, w| {
                if !base.is_zero(&b[idx]) {
                    for (o, c) in out.iter_mut().zip(w) {
                        *o = base.add(o, &base.mul(&b[idx], c));
                    }
                }
            },
        );
        out
    }

    /// `σ · a`, substituting `x_i ↦ x_{σ(i)}`.
    pub fn sn_act(&self, sigma: &Permutation, a: &[R::Elem]) -> Result<Vec<R::Elem>> {
        if sigma.len() != self.degree() {
            return Err(Error::PreconditionViolated(format!(
                "permutation of {} points acting on degree {}",
                sigma.len(),
                self.degree()
            )));
        }
        let base = self.base();
        let mut out = self.zero();
        self.walk(
            self.one(),
            &|l| sigma.apply(self.level_var(l) - 1) + 1,
            &|off, len| a[off..off + len].iter().all(|c| base.is_zero(c)),
            &mut |idx, w| {
                if !base.is_zero(&a[idx]) {
                    for (o, c) in out.iter_mut().zip(w) {
                        *o = base.add(o, &base.mul(&a[idx], c));
                    }
                }
            },
        );
        Ok(out)
    }

    /// Matrix of multiplication by `a`.
    pub fn mult_matrix(&self, a: &[R::Elem]) -> Matrix<R::Elem> {
        let mut cols = vec![Vec::new(); self.rank()];
        self.walk(
            a.to_vec(),
            &|l| self.level_var(l),
            &|_, _| false,
            &mut |idx, w| cols[idx] = w.to_vec(),
        );
        Matrix::from_columns(self.rank(), &cols)
    }

    /// The constant `c` with `a = c·1`, for `a` fixed by the symmetric group
    /// and known to be the image of a symmetric polynomial.
    pub fn reduce_invariant(&self, a: &[R::Elem]) -> Result<R::Elem> {
        let n = self.degree();
        for i in 0..n.saturating_sub(1) {
            let t = Permutation::transposition(n, i, i + 1);
            if !self.equal(&self.sn_act(&t, a)?, &a.to_vec()) {
                return Err(Error::NotInvariant);
            }
        }
        if a[1..].iter().any(|c| !self.base().is_zero(c)) {
            return Err(Error::NotInBaseImage);
        }
        Ok(a[0].clone())
    }

    /// Rank polynomial of the multiplication matrix of an idempotent. Up to
    /// rank 24 it is computed from the characteristic polynomial; above, the
    /// base is local so its coefficients are 0 or 1 and `P = T^r` with `r`
    /// the rank of the residual matrix.
    pub fn idempotent_rank_polynomial(&self, e: &[R::Elem]) -> Result<RankPolynomial<R::Elem>> {
        if !self.equal(&self.uda_mul(e, e), &e.to_vec()) {
            return Err(Error::NotIdempotent);
        }
        let m = self.mult_matrix(e);
        if self.rank() <= 24 {
            return rank_polynomial(self.base(), &m);
        }
        let k = self.base().residue_field()?;
        let r = linalg::field_rank(&k, &m.try_map(|c| self.base().residue(c))?);
        let base = self.base();
        let coeffs = (0..=self.rank())
            .map(|i| if i == r { base.one() } else { base.zero() })
            .collect();
        Ok(RankPolynomial::from_coeffs(coeffs))
    }

    pub fn idempotent_is_zero(&self, e: &[R::Elem]) -> Result<bool> {
        Ok(self.idempotent_rank_polynomial(e)?.is_one(self.base()))
    }

    pub fn residue(&self, a: &[R::Elem]) -> Result<Vec<Value>> {
        a.iter().map(|c| self.base().residue(c)).collect()
    }

    pub fn lift_residue(&self, a: &[Value]) -> Result<Vec<R::Elem>> {
        a.iter().map(|c| self.base().lift_residue(c)).collect()
    }

    /// `D_k(f̄)` over the residue field; its coordinates match [`Self::residue`].
    pub fn residue_algebra(&self) -> Result<UdaAlgebra<crate::ring::RingSpec>> {
        let pr = PolyRing::new(self.base().clone());
        let f_bar = pr.residue(&self.data.f)?;
        UdaAlgebra::with_cap(self.base().residue_field()?, f_bar, MAX_DEGREE_CAP)
    }
}

impl<R: Ring> UdaData<R> {
    /// Lowest level whose digit in the index `i > 0` is nonzero.
    fn lowest_level(&self, mut i: usize) -> usize {
        for (l, level) in self.levels.iter().enumerate() {
            if i % level.degree != 0 {
                return l;
            }
            i /= level.degree;
        }
        unreachable!("index exceeds the stage rank")
    }

    fn mul_level(&self, l: usize, v: &[R::Elem]) -> Vec<R::Elem> {
        let base = &self.base;
        let level = &self.levels[l];
        let (d, inner) = (level.degree, level.inner);
        let block = inner * d;
        let mut out = vec![base.zero(); v.len()];
        for s in (0..v.len()).step_by(block) {
            out[s + inner..s + block].clone_from_slice(&v[s..s + block - inner]);
            let top = &v[s + block - inner..s + block];
            for (i, t) in top.iter().enumerate() {
                if base.is_zero(t) {
                    continue;
                }
                for k in 0..d {
                    let o = &level.overflow[i * d + k];
                    for (j, c) in o.iter().enumerate() {
                        if !base.is_zero(c) {
                            let idx = s + k * inner + j;
                            out[idx] = base.add(&out[idx], &base.mul(t, c));
                        }
                    }
                }
            }
        }
        out
    }

    fn add_vec(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn sub_vec(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
}

impl<R: LocalRing> Ring for UdaAlgebra<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base().zero(); self.rank()]
    }

    fn one(&self) -> Self::Elem {
        self.embed(&self.base().one())
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.embed(&self.base().from_int(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.data.add_vec(a, b)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|c| self.base().neg(c)).collect()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.data.sub_vec(a, b)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.uda_mul(a, b)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.base().is_zero(c))
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| self.base().equal(x, y))
    }

    /// Solves `a·y = 1` with unit pivots; fails exactly when `a` is not a
    /// unit modulo the maximal ideal.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        linalg::local_solve(self.base(), &self.mult_matrix(a), &self.one())
            .ok()
            .flatten()
    }

    fn nilpotency_bound(&self) -> Option<u64> {
        self.base()
            .nilpotency_bound()
            .map(|b| b.saturating_mul(self.rank() as u64))
    }
}

/// An element tagged with its algebra, for operations that must reject
/// operands from different algebras.
#[derive(Debug, Clone)]
pub struct UdaElement<R: LocalRing> {
    pub algebra: UdaAlgebra<R>,
    pub coords: Vec<R::Elem>,
}

impl<R: LocalRing> UdaElement<R> {
    pub fn new(algebra: &UdaAlgebra<R>, coords: Vec<R::Elem>) -> Result<Self> {
        Ok(UdaElement {
            algebra: algebra.clone(),
            coords: algebra.element(coords)?,
        })
    }

    pub fn arith(op: ArithOp, x: &Self, y: &Self) -> Result<Self> {
        if op != ArithOp::Neg && !x.algebra.same_algebra(&y.algebra) {
            return Err(Error::MixedAlgebras);
        }
        let d = &x.algebra;
        let coords = match op {
            ArithOp::Add => d.add(&x.coords, &y.coords),
            ArithOp::Sub => d.sub(&x.coords, &y.coords),
            ArithOp::Mul => d.uda_mul(&x.coords, &y.coords),
            ArithOp::Neg => d.neg(&x.coords),
        };
        Ok(UdaElement {
            algebra: d.clone(),
            coords,
        })
    }
}
