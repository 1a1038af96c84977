//! Dense matrices over a [`Ring`] and the eliminations the rest of the crate
//! needs: division-free characteristic polynomials, determinants, solving
//! over fields, over local rings by unit pivots, and over valuation rings by
//! valuation-pivoted (Smith-style) elimination.

use crate::error::{Error, Result};
use crate::ring::{LocalRing, Ring, ValuationRing};

#[derive(Debug, Clone)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data: Vec<E> = rows.into_iter().flatten().collect();
        Matrix::from_vec(r, c, data)
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<E>]) -> Self {
        let cols = columns.len();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for col in columns {
                data.push(col[i].clone());
            }
        }
        Matrix::from_vec(rows, cols, data)
    }

    pub fn zeros<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Matrix::from_vec(rows, cols, vec![ring.zero(); rows * cols])
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix::from_vec(self.cols, self.rows, data)
    }

    pub fn map<F, T: Clone>(&self, f: F) -> Matrix<T>
    where
        F: Fn(&E) -> T,
    {
        Matrix::from_vec(self.rows, self.cols, self.data.iter().map(f).collect())
    }

    pub fn try_map<F, T: Clone>(&self, f: F) -> Result<Matrix<T>>
    where
        F: Fn(&E) -> Result<T>,
    {
        let data = self.data.iter().map(f).collect::<Result<Vec<T>>>()?;
        Ok(Matrix::from_vec(self.rows, self.cols, data))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

pub fn mat_mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch in matrix product");
    let mut out = Matrix::zeros(ring, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if ring.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let v = ring.add(out.get(i, j), &ring.mul(aik, b.get(k, j)));
                out.set(i, j, v);
            }
        }
    }
    out
}

pub fn mat_vec<R: Ring>(ring: &R, a: &Matrix<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
    assert_eq!(a.cols, v.len(), "dimension mismatch in matrix-vector product");
    (0..a.rows)
        .map(|i| {
            a.row(i)
                .iter()
                .zip(v)
                .fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)))
        })
        .collect()
}

pub fn mat_add<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let data = a.data.iter().zip(&b.data).map(|(x, y)| ring.add(x, y)).collect();
    Matrix::from_vec(a.rows, a.cols, data)
}

pub fn mat_sub<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let data = a.data.iter().zip(&b.data).map(|(x, y)| ring.sub(x, y)).collect();
    Matrix::from_vec(a.rows, a.cols, data)
}

pub fn mat_scale<R: Ring>(ring: &R, c: &R::Elem, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    a.map(|x| ring.mul(c, x))
}

pub fn mat_is_zero<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> bool {
    a.data.iter().all(|x| ring.is_zero(x))
}

pub fn mat_equal<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> bool {
    a.rows == b.rows
        && a.cols == b.cols
        && a.data.iter().zip(&b.data).all(|(x, y)| ring.equal(x, y))
}

pub fn trace<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> R::Elem {
    (0..a.rows.min(a.cols)).fold(ring.zero(), |acc, i| ring.add(&acc, a.get(i, i)))
}

/// `a^e` by repeated squaring.
pub fn mat_pow<R: Ring>(ring: &R, a: &Matrix<R::Elem>, mut e: u64) -> Matrix<R::Elem> {
    let mut acc = Matrix::identity(ring, a.rows);
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(ring, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(ring, &base, &base);
        }
    }
    acc
}

/// Characteristic polynomial `det(T·I − M)`, coefficients low-to-high, by
/// Berkowitz's division-free algorithm (valid over any commutative ring).
pub fn char_poly<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Vec<R::Elem> {
    assert_eq!(m.rows, m.cols, "characteristic polynomial of a non-square matrix");
    let n = m.rows;
    // high-to-low coefficients of the characteristic polynomial of the leading block
    let mut vect = vec![ring.one()];
    for r in 0..n {
        let arr = m.get(r, r);
        let row: Vec<R::Elem> = (0..r).map(|j| m.get(r, j).clone()).collect();
        let mut col: Vec<R::Elem> = (0..r).map(|i| m.get(i, r).clone()).collect();
        let mut t = Vec::with_capacity(r + 2);
        t.push(ring.one());
        t.push(ring.neg(arr));
        for _ in 0..r {
            let rc = row
                .iter()
                .zip(&col)
                .fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)));
            t.push(ring.neg(&rc));
            // col <- A_r · col
            col = (0..r)
                .map(|i| {
                    (0..r).fold(ring.zero(), |acc, j| {
                        ring.add(&acc, &ring.mul(m.get(i, j), &col[j]))
                    })
                })
                .collect();
        }
        let mut next = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut acc = ring.zero();
            for (j, v) in vect.iter().enumerate() {
                if i >= j {
                    acc = ring.add(&acc, &ring.mul(&t[i - j], v));
                }
            }
            next.push(acc);
        }
        vect = next;
    }
    vect.reverse();
    vect
}

/// Determinant: Gaussian elimination over fields, fraction-free Bareiss
/// elimination over domains, Berkowitz elsewhere.
pub fn determinant<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> R::Elem {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return ring.one();
    }
    if ring.is_field() {
        det_gauss(ring, m)
    } else if ring.is_domain() {
        det_bareiss(ring, m)
    } else {
        let cp = char_poly(ring, m);
        let c0 = cp[0].clone();
        if n % 2 == 0 {
            c0
        } else {
            ring.neg(&c0)
        }
    }
}

fn det_gauss<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> R::Elem {
    let n = m.rows;
    let mut a = m.clone();
    let mut det = ring.one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !ring.is_zero(a.get(i, k))) else {
            return ring.zero();
        };
        if piv != k {
            a.swap_rows(piv, k);
            det = ring.neg(&det);
        }
        let pivot = a.get(k, k).clone();
        det = ring.mul(&det, &pivot);
        let inv = ring.inverse(&pivot).expect("nonzero field element is invertible");
        for i in k + 1..n {
            let factor = ring.mul(a.get(i, k), &inv);
            if ring.is_zero(&factor) {
                continue;
            }
            for j in k..n {
                let v = ring.sub(a.get(i, j), &ring.mul(&factor, a.get(k, j)));
                a.set(i, j, v);
            }
        }
    }
    det
}

fn det_bareiss<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> R::Elem {
    let n = m.rows;
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = ring.one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !ring.is_zero(a.get(i, k))) else {
            return ring.zero();
        };
        if piv != k {
            a.swap_rows(piv, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ring.sub(
                    &ring.mul(a.get(i, j), a.get(k, k)),
                    &ring.mul(a.get(i, k), a.get(k, j)),
                );
                let q = ring
                    .div_exact(&num, &prev)
                    .expect("Bareiss quotients are exact in a domain");
                a.set(i, j, q);
            }
            a.set(i, k, ring.zero());
        }
        prev = a.get(k, k).clone();
    }
    let det = a.get(n - 1, n - 1).clone();
    if sign {
        ring.neg(&det)
    } else {
        det
    }
}

/// Reduced row echelon form over a field. Returns the pivot columns.
fn rref<R: Ring>(ring: &R, a: &mut Matrix<R::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(piv) = (r..a.rows).find(|&i| !ring.is_zero(a.get(i, c))) else {
            continue;
        };
        a.swap_rows(piv, r);
        let inv = ring.inverse(a.get(r, c)).expect("field pivot is invertible");
        for j in c..a.cols {
            let v = ring.mul(a.get(r, j), &inv);
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r || ring.is_zero(a.get(i, c)) {
                continue;
            }
            let factor = a.get(i, c).clone();
            for j in c..a.cols {
                let v = ring.sub(a.get(i, j), &ring.mul(&factor, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn field_rank<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> usize {
    let mut m = a.clone();
    rref(ring, &mut m).len()
}

/// Basis of the right kernel `{v : a·v = 0}` over a field.
pub fn field_kernel<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Vec<Vec<R::Elem>> {
    let mut m = a.clone();
    let pivots = rref(ring, &mut m);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![ring.zero(); a.cols];
            v[f] = ring.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = ring.neg(m.get(r, f));
            }
            v
        })
        .collect()
}

/// Some solution of `a·x = b` over a field, if one exists.
pub fn field_solve<R: Ring>(
    ring: &R,
    a: &Matrix<R::Elem>,
    b: &[R::Elem],
) -> Option<Vec<R::Elem>> {
    let mut aug = Matrix::zeros(ring, a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, a.cols, b[i].clone());
    }
    let pivots = rref(ring, &mut aug);
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![ring.zero(); a.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(r, a.cols).clone();
    }
    Some(x)
}

/// Solves `a·x = b` over a local ring when the columns of `a` are
/// independent modulo the maximal ideal: every elimination step finds a unit
/// pivot. Returns `None` if some column has no unit pivot or the system is
/// inconsistent.
pub fn local_solve<R: LocalRing>(
    ring: &R,
    a: &Matrix<R::Elem>,
    b: &[R::Elem],
) -> Result<Option<Vec<R::Elem>>> {
    let (rows, cols) = (a.rows, a.cols);
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    for c in 0..cols {
        let mut pivot = None;
        for i in c..rows {
            if let crate::ring::Split::Unit(inv) = ring.local_split(m.get(i, c))? {
                pivot = Some((i, inv));
                break;
            }
        }
        let Some((p, inv)) = pivot else {
            return Ok(None);
        };
        m.swap_rows(p, c);
        rhs.swap(p, c);
        for j in c..cols {
            let v = ring.mul(m.get(c, j), &inv);
            m.set(c, j, v);
        }
        rhs[c] = ring.mul(&rhs[c], &inv);
        for i in 0..rows {
            if i == c || ring.is_zero(m.get(i, c)) {
                continue;
            }
            let factor = m.get(i, c).clone();
            for j in c..cols {
                let v = ring.sub(m.get(i, j), &ring.mul(&factor, m.get(c, j)));
                m.set(i, j, v);
            }
            rhs[i] = ring.sub(&rhs[i], &ring.mul(&factor, &rhs[c]));
        }
    }
    if rhs[cols..].iter().any(|x| !ring.is_zero(x)) {
        return Ok(None);
    }
    rhs.truncate(cols);
    Ok(Some(rhs))
}

/// Diagonalization `R·A·C = D` by valuation-pivoted row and column operations.
struct Smith<E> {
    diag: Matrix<E>,
    rank: usize,
    /// Accumulated column operations `C`.
    col_ops: Matrix<E>,
    /// Right-hand sides after the row operations `R`.
    rhs: Vec<Vec<E>>,
}

fn smith<R: ValuationRing>(
    ring: &R,
    a: &Matrix<R::Elem>,
    rhs: Vec<Vec<R::Elem>>,
) -> Result<Smith<R::Elem>> {
    let (rows, cols) = (a.rows, a.cols);
    let mut m = a.clone();
    let mut c_ops = Matrix::identity(ring, cols);
    let mut rhs = rhs;
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let mut best: Option<(u64, usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                let x = m.get(i, j);
                if ring.is_zero(x) {
                    continue;
                }
                let v = ring.valuation(x)?.unwrap_or(u64::MAX);
                if best.map_or(true, |(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else {
            break;
        };
        m.swap_rows(pi, k);
        for b in rhs.iter_mut() {
            b.swap(pi, k);
        }
        m.swap_cols(pj, k);
        c_ops.swap_cols(pj, k);
        let pivot = m.get(k, k).clone();
        for i in k + 1..rows {
            if ring.is_zero(m.get(i, k)) {
                continue;
            }
            let factor = ring.div_exact(m.get(i, k), &pivot).ok_or_else(|| {
                Error::Internal("minimal-valuation pivot does not divide its column".into())
            })?;
            for j in k..cols {
                let v = ring.sub(m.get(i, j), &ring.mul(&factor, m.get(k, j)));
                m.set(i, j, v);
            }
            for b in rhs.iter_mut() {
                b[i] = ring.sub(&b[i], &ring.mul(&factor, &b[k]));
            }
        }
        for j in k + 1..cols {
            if ring.is_zero(m.get(k, j)) {
                continue;
            }
            let factor = ring.div_exact(m.get(k, j), &pivot).ok_or_else(|| {
                Error::Internal("minimal-valuation pivot does not divide its row".into())
            })?;
            for i in 0..rows {
                let v = ring.sub(m.get(i, j), &ring.mul(&factor, m.get(i, k)));
                m.set(i, j, v);
            }
            for i in 0..cols {
                let v = ring.sub(c_ops.get(i, j), &ring.mul(&factor, c_ops.get(i, k)));
                c_ops.set(i, j, v);
            }
        }
        rank += 1;
    }
    Ok(Smith {
        diag: m,
        rank,
        col_ops: c_ops,
        rhs,
    })
}

/// Basis of the right kernel of `a` over a discrete valuation domain.
pub fn valuation_kernel<R: ValuationRing>(
    ring: &R,
    a: &Matrix<R::Elem>,
) -> Result<Vec<Vec<R::Elem>>> {
    if !ring.is_domain() {
        return Err(Error::UnsupportedBase(
            "kernel bases are only free over valuation domains".into(),
        ));
    }
    let s = smith(ring, a, Vec::new())?;
    Ok((s.rank..a.cols).map(|j| s.col_ops.column(j)).collect())
}

/// Some solution of `a·x = b` over a valuation ring, if one exists.
pub fn valuation_solve<R: ValuationRing>(
    ring: &R,
    a: &Matrix<R::Elem>,
    b: &[R::Elem],
) -> Result<Option<Vec<R::Elem>>> {
    let s = smith(ring, a, vec![b.to_vec()])?;
    let rb = &s.rhs[0];
    let mut z = vec![ring.zero(); a.cols];
    for k in 0..s.rank {
        match ring.div_exact(&rb[k], s.diag.get(k, k)) {
            Some(q) => z[k] = q,
            None => return Ok(None),
        }
    }
    if rb[s.rank..].iter().any(|x| !ring.is_zero(x)) {
        return Ok(None);
    }
    let x = mat_vec(ring, &s.col_ops, &z);
    if mat_vec(ring, a, &x)
        .iter()
        .zip(b)
        .all(|(l, r)| ring.equal(l, r))
    {
        Ok(Some(x))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{RingSpec, Value};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q() -> RingSpec {
        RingSpec::rationals()
    }

    fn rat(n: i64) -> Value {
        Value::Rat(BigRational::from_integer(n.into()))
    }

    fn qmat(rows: &[&[i64]]) -> Matrix<Value> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    /// Cofactor expansion, the textbook oracle.
    fn det_cofactor<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> R::Elem {
        let n = m.rows();
        if n == 0 {
            return ring.one();
        }
        let mut acc = ring.zero();
        for j in 0..n {
            let minor: Vec<Vec<R::Elem>> = (1..n)
                .map(|i| (0..n).filter(|&c| c != j).map(|c| m.get(i, c).clone()).collect())
                .collect();
            let minor = if n == 1 {
                Matrix::from_vec(0, 0, vec![])
            } else {
                Matrix::from_rows(minor)
            };
            let term = ring.mul(m.get(0, j), &det_cofactor(ring, &minor));
            acc = if j % 2 == 0 {
                ring.add(&acc, &term)
            } else {
                ring.sub(&acc, &term)
            };
        }
        acc
    }

    #[test]
    fn char_poly_2x2() {
        let m = qmat(&[&[0, 2], &[1, 0]]);
        assert_eq!(char_poly(&q(), &m), vec![rat(-2), rat(0), rat(1)]);
    }

    #[test]
    fn kernel_over_zloc() {
        let r: RingSpec = "Zloc:5".parse().unwrap();
        let m = qmat(&[&[5, 10], &[1, 2]]);
        let ker = valuation_kernel(&r, &m).unwrap();
        assert_eq!(ker.len(), 1);
        assert!(mat_vec(&r, &m, &ker[0]).iter().all(|x| r.is_zero(x)));
    }

    #[test]
    fn local_solve_unit_pivots() {
        let r: RingSpec = "PadicTrunc:3:3".parse().unwrap();
        let m = Matrix::from_rows(vec![
            vec![Value::Int(3), Value::Int(1)],
            vec![Value::Int(1), Value::Int(9)],
        ]);
        let b = vec![Value::Int(4), Value::Int(10)];
        let x = local_solve(&r, &m, &b).unwrap().unwrap();
        assert_eq!(mat_vec(&r, &m, &x), b);
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-6i64..7, n * n)
    }

    proptest! {
        #[test]
        fn determinant_agrees_with_cofactor_expansion(n in 1usize..5, seed in small_matrix(4)) {
            let data: Vec<Value> = seed.iter().take(n * n).map(|&x| rat(x)).collect();
            let m = Matrix::from_vec(n, n, data);
            let expected = det_cofactor(&q(), &m);
            prop_assert_eq!(determinant(&q(), &m), expected.clone());
            let cp = char_poly(&q(), &m);
            let c0 = if n % 2 == 0 { cp[0].clone() } else { q().neg(&cp[0]) };
            prop_assert_eq!(c0, expected);
            let zloc: RingSpec = "Zloc:3".parse().unwrap();
            prop_assert_eq!(determinant(&zloc, &m), det_cofactor(&zloc, &m));
        }

        #[test]
        fn determinant_over_zmod(n in 1usize..5, seed in small_matrix(4)) {
            let r: RingSpec = "Zmod:12".parse().unwrap();
            let data: Vec<Value> = seed.iter().take(n * n).map(|&x| r.from_int(x)).collect();
            let m = Matrix::from_vec(n, n, data);
            prop_assert_eq!(determinant(&r, &m), det_cofactor(&r, &m));
        }

        #[test]
        fn valuation_solve_round_trip(seed in small_matrix(3), xs in proptest::collection::vec(-20i64..20, 3)) {
            let r: RingSpec = "Zloc:3".parse().unwrap();
            let data: Vec<Value> = seed.iter().map(|&x| rat(x)).collect();
            let m = Matrix::from_vec(3, 3, data);
            let x: Vec<Value> = xs.iter().map(|&v| rat(v)).collect();
            let b = mat_vec(&r, &m, &x);
            let sol = valuation_solve(&r, &m, &b).unwrap().expect("consistent system");
            prop_assert_eq!(mat_vec(&r, &m, &sol), b);
            for v in valuation_kernel(&r, &m).unwrap() {
                prop_assert!(mat_vec(&r, &m, &v).iter().all(|c| r.is_zero(c)));
            }
        }
    }
}
