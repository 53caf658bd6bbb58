//! Dense matrices and exact linear algebra.
//!
//! The generic container serves every scalar; the heavy exact routines
//! live on the concrete instantiations:
//!
//! * `Matrix<Int>`: fraction-free (Bareiss) determinant and rank, with
//!   entry growth bounded by minors of the input;
//! * `Matrix<Rat>`: exact characteristic polynomial via Hessenberg
//!   reduction modulo a deterministic set of 62-bit primes followed by
//!   CRT reconstruction. Characteristic polynomial coefficients are
//!   integer polynomials in the entries, so they commute with reduction
//!   mod p: every prime is usable and the result is exact, not
//!   probabilistic. Rank and nullity clear denominators row by row and
//!   reuse the integer path.

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::scalar::Scalar;
use crate::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch {
                    context: "matrix row",
                    expected: ncols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_sum(&self, i: usize) -> S {
        let mut acc = S::zero();
        for v in self.row(i) {
            acc += v.clone();
        }
        acc
    }

    pub fn map<T: Scalar>(&self, f: impl FnMut(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Principal submatrix on the positions where `keep` is true.
    pub fn principal_submatrix(&self, keep: &[bool]) -> Self {
        assert!(self.is_square() && keep.len() == self.rows);
        let idx: Vec<usize> = (0..self.rows).filter(|&i| keep[i]).collect();
        Self::from_fn(idx.len(), idx.len(), |i, j| {
            self[(idx[i], idx[j])].clone()
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a.clone() * other[(k, j)].clone();
                    out[(i, j)] += t;
                }
            }
        }
        out
    }
}

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

// ---------------------------------------------------------------------------
// Integer path: Bareiss determinant and fraction-free rank.
// ---------------------------------------------------------------------------

impl Matrix<Int> {
    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn bareiss_det(&self) -> Int {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m: Vec<Vec<Int>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = 1i8;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    m[i][j] = q;
                }
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    /// Rank by fraction-free elimination with full pivoting; the pivot is
    /// the smallest nonzero entry in absolute value, which keeps
    /// intermediate growth down on sparse structured inputs.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Int>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let nr = self.rows;
        let nc = self.cols;
        let mut prev = Int::one();
        let mut r = 0usize;
        while r < nr.min(nc) {
            let mut pivot: Option<(usize, usize)> = None;
            for i in r..nr {
                for j in r..nc {
                    if m[i][j].is_zero() {
                        continue;
                    }
                    match pivot {
                        None => pivot = Some((i, j)),
                        Some((pi, pj)) => {
                            if m[i][j].abs() < m[pi][pj].abs() {
                                pivot = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            m.swap(r, pi);
            if pj != r {
                for row in m.iter_mut() {
                    row.swap(r, pj);
                }
            }
            for i in r + 1..nr {
                for j in r + 1..nc {
                    let num = &m[i][j] * &m[r][r] - &m[i][r] * &m[r][j];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    m[i][j] = q;
                }
                m[i][r] = Int::zero();
            }
            prev = m[r][r].clone();
            r += 1;
        }
        r
    }
}

// ---------------------------------------------------------------------------
// Rational path: charpoly, rank, nullity.
// ---------------------------------------------------------------------------

impl Matrix<Rat> {
    /// Clear denominators row by row (rank is invariant under row scaling).
    fn to_row_scaled_int(&self) -> Matrix<Int> {
        let mut out = Matrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            let mut den = Int::one();
            for v in self.row(i) {
                den = den.lcm(v.denom());
            }
            for j in 0..self.cols {
                let v = &self[(i, j)];
                out[(i, j)] = v.numer() * (&den / v.denom());
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.to_row_scaled_int().rank()
    }

    /// Kernel dimension over the rationals.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Monic characteristic polynomial `det(xI - M)`, exact.
    pub fn charpoly(&self) -> UniPoly<Rat> {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return UniPoly::one();
        }
        // Scale the whole matrix to integers by the lcm of denominators.
        let mut den = Int::one();
        for v in &self.data {
            den = den.lcm(v.denom());
        }
        let scaled: Vec<Int> = self
            .data
            .iter()
            .map(|v| v.numer() * (&den / v.denom()))
            .collect();

        let bound_bits = charpoly_coeff_bound_bits(n, &scaled);
        let primes = modp::primes_for_bits(bound_bits + 2);
        let residues: Vec<Vec<u64>> = primes
            .par_iter()
            .map(|&p| {
                let reduced: Vec<u64> = scaled.iter().map(|v| modp::reduce(v, p)).collect();
                modp::hessenberg_charpoly(reduced, n, p)
            })
            .collect();

        // CRT per coefficient, lifted to the symmetric range.
        let modulus = primes.iter().fold(Int::one(), |acc, &p| acc * Int::from(p));
        let half = &modulus / 2;
        let mut coeffs = Vec::with_capacity(n + 1);
        for idx in 0..=n {
            let images: Vec<u64> = residues.iter().map(|r| r[idx]).collect();
            let mut value = modp::crt(&images, &primes);
            if value > half {
                value -= &modulus;
            }
            // det(xI - M) = den^{-n} det((den x) I - den M)
            coeffs.push(Rat::new(value, den.pow((n - idx) as u32)));
        }
        UniPoly::new(coeffs)
    }
}

/// Upper bound (in bits) on |coefficients| of det(xI - N) for an integer
/// matrix N given as a flat slice: max_i C(n,i) * beta^i <= 2^n * beta^n
/// with beta the largest row 2-norm (Hadamard on principal minors).
fn charpoly_coeff_bound_bits(n: usize, scaled: &[Int]) -> u64 {
    let mut max_row_norm_sq = Int::one();
    for i in 0..n {
        let mut s = Int::zero();
        for j in 0..n {
            let v = &scaled[i * n + j];
            s += v * v;
        }
        if s > max_row_norm_sq {
            max_row_norm_sq = s;
        }
    }
    let beta_bits = max_row_norm_sq.bits() / 2 + 1;
    n as u64 * (beta_bits + 1) + 2
}

/// Word-size prime-field arithmetic and the per-prime charpoly kernel.
pub(crate) mod modp {
    use crate::Int;
    use num_integer::Integer;
    use num_traits::{Signed, ToPrimitive};

    pub fn mul(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        base %= p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base, p);
            }
            base = mul(base, base, p);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    pub fn reduce(v: &Int, p: u64) -> u64 {
        let m = v.mod_floor(&Int::from(p));
        m.to_u64().expect("mod_floor fits in u64")
    }

    /// Deterministic Miller-Rabin for u64.
    pub fn is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            if n == q {
                return true;
            }
            if n.is_multiple_of(q) {
                return false;
            }
        }
        let mut d = n - 1;
        let mut s = 0;
        while d.is_multiple_of(2) {
            d /= 2;
            s += 1;
        }
        'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            let mut x = pow(a, d, n);
            if x == 1 || x == n - 1 {
                continue;
            }
            for _ in 0..s - 1 {
                x = mul(x, x, n);
                if x == n - 1 {
                    continue 'witness;
                }
            }
            return false;
        }
        true
    }

    /// Deterministic descending sequence of primes just below 2^62 with
    /// combined bit length at least `bits`.
    pub fn primes_for_bits(bits: u64) -> Vec<u64> {
        let mut primes = Vec::new();
        let mut have = 0u64;
        let mut candidate = (1u64 << 62) - 1;
        while have < bits {
            while !is_prime(candidate) {
                candidate -= 2;
            }
            primes.push(candidate);
            have += 61; // each prime contributes at least 61 bits
            candidate -= 2;
        }
        primes
    }

    /// Garner-style incremental CRT; result in [0, prod primes).
    pub fn crt(images: &[u64], primes: &[u64]) -> Int {
        let mut value = Int::from(images[0]);
        let mut modulus = Int::from(primes[0]);
        for (&img, &p) in images.iter().zip(primes).skip(1) {
            let pi = Int::from(p);
            let m_mod_p = super::modp::reduce(&modulus, p);
            let v_mod_p = super::modp::reduce(&value, p);
            let delta = (img + p - v_mod_p) % p;
            let t = mul(delta, inv(m_mod_p, p), p);
            value += &modulus * Int::from(t);
            modulus *= pi;
        }
        debug_assert!(!value.is_negative());
        value
    }

    /// Characteristic polynomial of an n x n matrix over Z_p via
    /// Hessenberg reduction and the leading-minor recurrence. Returns the
    /// monic coefficient vector, constant term first.
    pub fn hessenberg_charpoly(mut a: Vec<u64>, n: usize, p: u64) -> Vec<u64> {
        let at = |a: &Vec<u64>, i: usize, j: usize| a[i * n + j];
        // reduce to upper Hessenberg form by similarity transforms
        for j in 0..n.saturating_sub(2) {
            let pivot = (j + 1..n).find(|&i| at(&a, i, j) != 0);
            let Some(pivot) = pivot else { continue };
            if pivot != j + 1 {
                for c in 0..n {
                    a.swap(pivot * n + c, (j + 1) * n + c);
                }
                for r in 0..n {
                    a.swap(r * n + pivot, r * n + j + 1);
                }
            }
            let inv_piv = inv(at(&a, j + 1, j), p);
            for r in j + 2..n {
                let v = at(&a, r, j);
                if v == 0 {
                    continue;
                }
                let f = mul(v, inv_piv, p);
                // row r -= f * row (j+1)
                for c in j..n {
                    let sub = mul(f, at(&a, j + 1, c), p);
                    let idx = r * n + c;
                    a[idx] = (a[idx] + p - sub) % p;
                }
                // col (j+1) += f * col r
                for i in 0..n {
                    let add = mul(f, at(&a, i, r), p);
                    let idx = i * n + j + 1;
                    a[idx] = (a[idx] + add) % p;
                }
            }
        }
        // p_m(x) = (x - h_mm) p_{m-1}(x)
        //          - sum_{i<m} h_im * (prod_{r=i+1..=m} h_{r,r-1}) * p_{i-1}(x)
        let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
        polys.push(vec![1]);
        for m in 1..=n {
            let prev = &polys[m - 1];
            let mut pm = vec![0u64; m + 1];
            let h_mm = at(&a, m - 1, m - 1);
            for (t, &c) in prev.iter().enumerate() {
                pm[t + 1] = (pm[t + 1] + c) % p;
                let sub = mul(h_mm, c, p);
                pm[t] = (pm[t] + p - sub) % p;
            }
            let mut prod = 1u64;
            for i in (1..m).rev() {
                prod = mul(prod, at(&a, i, i - 1), p);
                if prod == 0 {
                    break;
                }
                let h_im = at(&a, i - 1, m - 1);
                if h_im == 0 {
                    continue;
                }
                let c = mul(h_im, prod, p);
                for (t, &pc) in polys[i - 1].iter().enumerate() {
                    let sub = mul(c, pc, p);
                    pm[t] = (pm[t] + p - sub) % p;
                }
            }
            polys.push(pm);
        }
        polys.pop().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::small;

    fn ri(v: i64) -> Rat {
        Rat::from_integer(Int::from(v))
    }

    fn rat_mat(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| ri(v)).collect()).collect())
            .unwrap()
    }

    fn int_mat(rows: &[&[i64]]) -> Matrix<Int> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Int::from(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn charpoly_swap_matrix() {
        // [[0,1],[1,0]] -> x^2 - 1
        let m = rat_mat(&[&[0, 1], &[1, 0]]);
        let p = m.charpoly();
        assert_eq!(p.coeffs(), &[ri(-1), ri(0), ri(1)]);
    }

    #[test]
    fn charpoly_identity() {
        // (x-1)^3 = x^3 - 3x^2 + 3x - 1
        let m: Matrix<Rat> = Matrix::identity(3);
        let p = m.charpoly();
        assert_eq!(p.coeffs(), &[ri(-1), ri(3), ri(-3), ri(1)]);
    }

    #[test]
    fn charpoly_empty_matrix_is_one() {
        let m: Matrix<Rat> = Matrix::zeros(0, 0);
        assert_eq!(m.charpoly(), UniPoly::one());
    }

    #[test]
    fn charpoly_rational_entries() {
        // [[1/2, 0], [0, 1/3]] -> (x - 1/2)(x - 1/3)
        let m = Matrix::from_rows(vec![
            vec![Rat::new(Int::from(1), Int::from(2)), ri(0)],
            vec![ri(0), Rat::new(Int::from(1), Int::from(3))],
        ])
        .unwrap();
        let p = m.charpoly();
        assert_eq!(
            p.coeffs(),
            &[
                Rat::new(Int::from(1), Int::from(6)),
                Rat::new(Int::from(-5), Int::from(6)),
                ri(1)
            ]
        );
    }

    /// Independent oracle for charpoly: evaluate det(tI - M) at dim+1
    /// integer points with Bareiss, then Lagrange-interpolate.
    fn charpoly_eval_interp(m: &Matrix<Rat>) -> UniPoly<Rat> {
        let n = m.rows();
        let mut points = Vec::new();
        for t in 0..=n as i64 {
            let shifted = Matrix::from_fn(n, n, |i, j| {
                let mut v = -m[(i, j)].clone();
                if i == j {
                    v += ri(t);
                }
                v
            });
            // clear denominators globally for the Bareiss determinant
            let mut den = Int::one();
            for i in 0..n {
                for j in 0..n {
                    den = den.lcm(shifted[(i, j)].denom());
                }
            }
            let int = shifted.map(|v| v.numer() * (&den / v.denom()));
            let det = Rat::new(int.bareiss_det(), den.pow(n as u32));
            points.push((ri(t), det));
        }
        // Lagrange interpolation
        let mut acc = UniPoly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut term = UniPoly::constant(yi.clone());
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let denom = xi.clone() - xj.clone();
                term = term.mul(&UniPoly::new(vec![-xj.clone() / denom.clone(), ri(1) / denom]));
            }
            acc = acc.add(&term);
        }
        acc
    }

    #[test]
    fn charpoly_matches_eval_interp_oracle() {
        // fixed pseudo-random 4x4 integer matrix
        let m = rat_mat(&[
            &[3, -7, 2, 5],
            &[0, 4, -1, 6],
            &[-2, 8, 9, -3],
            &[1, -5, 7, 2],
        ]);
        assert_eq!(m.charpoly(), charpoly_eval_interp(&m));
    }

    #[test]
    fn charpoly_constant_term_is_signed_det() {
        let m = rat_mat(&[&[2, 1, 0], &[1, -3, 4], &[0, 5, 6]]);
        let p = m.charpoly();
        let det = m.map(|v| v.numer().clone()).bareiss_det();
        // det(xI - M) at x=0 equals (-1)^n det(M)
        assert_eq!(p.coeff(0), ri(-1) * Rat::from_integer(det));
    }

    #[test]
    fn bareiss_det_values() {
        assert_eq!(int_mat(&[&[2, 0], &[0, 3]]).bareiss_det(), Int::from(6));
        assert_eq!(int_mat(&[&[1, 2], &[2, 4]]).bareiss_det(), Int::from(0));
        assert_eq!(
            int_mat(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]).bareiss_det(),
            Int::from(-1)
        );
    }

    #[test]
    fn rank_and_nullity() {
        assert_eq!(rat_mat(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]).nullity(), 3);
        let id: Matrix<Rat> = Matrix::identity(4);
        assert_eq!(id.nullity(), 0);
        assert_eq!(rat_mat(&[&[1, 1], &[1, 1]]).nullity(), 1);
        assert_eq!(rat_mat(&[&[1, 1, 1, 0, 0], &[0, 0, 1, 1, 1]]).rank(), 2);
    }

    #[test]
    fn modp_primes_and_inverse() {
        let ps = modp::primes_for_bits(150);
        assert!(ps.len() >= 3);
        for &p in &ps {
            assert!(modp::is_prime(p));
            assert_eq!(modp::mul(modp::inv(12345, p), 12345, p), 1);
        }
    }

    #[test]
    fn small_scalar_helper() {
        assert_eq!(small::<Rat>(7), ri(7));
    }
}
