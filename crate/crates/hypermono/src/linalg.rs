//! Small dense linear-algebra helpers on top of nalgebra.
//!
//! Subspaces are passed around as matrices whose columns form an
//! orthonormal basis. An empty subspace is a matrix with zero columns.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Mat = DMatrix<f64>;
pub type Vec64 = DVector<f64>;
pub type CMat = DMatrix<Complex64>;

/// Singular values at or below `REL_TOL * sigma_max` count as zero.
pub const REL_TOL: f64 = 1e-9;

/// Thin SVD m = u·diag(σ)·v_t with σ nonincreasing.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: Mat,
    pub singular_values: Vec64,
    pub v_t: Mat,
}

impl Svd {
    pub fn recompose(&self) -> Mat {
        &self.u * Mat::from_diagonal(&self.singular_values) * &self.v_t
    }

    /// Least-squares solution, singular values at or below `tol` dropped.
    pub fn solve(&self, b: &Vec64, tol: f64) -> Vec64 {
        let mut c = self.u.transpose() * b;
        for (ci, s) in c.iter_mut().zip(self.singular_values.iter()) {
            *ci = if *s > tol { *ci / s } else { 0.0 };
        }
        self.v_t.transpose() * c
    }
}

/// One-sided Jacobi SVD. nalgebra's bidiagonal SVD returns wrong factors for a few percent
/// of rank-deficient inputs, which the subspace routines here produce all the time.
pub fn svd(m: &Mat) -> Result<Svd> {
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::numerical("non-finite matrix entry"));
    }
    if m.nrows() < m.ncols() {
        let t = jacobi_svd(&m.transpose())?;
        return Ok(Svd { u: t.v_t.transpose(), singular_values: t.singular_values, v_t: t.u.transpose() });
    }
    jacobi_svd(m)
}

fn jacobi_svd(a: &Mat) -> Result<Svd> {
    let (rows, n) = a.shape();
    let mut u = a.clone();
    let mut v = Mat::identity(n, n);
    let mut converged = n < 2;
    // columns below this are zero to working precision
    let floor = (f64::EPSILON * a.norm()).powi(2);
    let tol = rows as f64 * f64::EPSILON;
    for _ in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = u.column(p).norm_squared();
                let beta = u.column(q).norm_squared();
                let gamma = u.column(p).dot(&u.column(q));
                if alpha <= floor || beta <= floor || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for k in 0..rows {
                    let (x, y) = (u[(k, p)], u[(k, q)]);
                    u[(k, p)] = c * x - s * y;
                    u[(k, q)] = s * x + c * y;
                }
                for k in 0..n {
                    let (x, y) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * x - s * y;
                    v[(k, q)] = s * x + c * y;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::numerical("Jacobi SVD did not converge"));
    }
    let sv: Vec<f64> = (0..n).map(|j| u.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sv[j].total_cmp(&sv[i]));
    let top = sv.iter().cloned().fold(0.0, f64::max);
    let mut uo = Mat::zeros(rows, n);
    let mut filled = Vec::new();
    for (j, &i) in order.iter().enumerate() {
        if sv[i] > f64::EPSILON * top * n as f64 && sv[i] > 0.0 {
            uo.set_column(j, &(u.column(i) / sv[i]));
            filled.push(j);
        }
    }
    // complete u by the unit vectors with the largest residual against the columns so far
    for j in 0..n {
        if filled.contains(&j) {
            continue;
        }
        let best = (0..rows)
            .map(|e| {
                let mut x = Vec64::zeros(rows);
                x[e] = 1.0;
                for &k in &filled {
                    let col = uo.column(k).into_owned();
                    x -= &col * col.dot(&x);
                }
                x
            })
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .expect("at least one row");
        uo.set_column(j, &(&best / best.norm()));
        filled.push(j);
    }
    let singular_values = Vec64::from_iterator(n, order.iter().map(|&i| sv[i]));
    let v_t = Mat::from_fn(n, n, |r, c| v[(c, order[r])]);
    Ok(Svd { u: uo, singular_values, v_t })
}

pub(crate) fn svd_parts(m: Mat) -> Svd {
    svd(&m).expect("finite matrix")
}

fn singular_values(m: &Mat) -> Vec64 {
    svd_parts(m.clone()).singular_values
}

/// Numerical rank with a relative threshold.
pub fn rank(m: &Mat, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = singular_values(m);
    let top = sv.max();
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * top).count()
}

/// Rank with an absolute threshold, for matrices whose scale is known.
pub fn rank_abs(m: &Mat, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    singular_values(m).iter().filter(|&&s| s > tol).count()
}

/// Orthonormal basis of the null space of `m`, threshold relative to the largest singular value.
pub fn null_space(m: &Mat, tol: f64) -> Mat {
    let n = m.ncols();
    if n == 0 {
        return Mat::zeros(0, 0);
    }
    // pad so that SVD returns the full right factor
    let rows = m.nrows().max(n);
    let mut a = Mat::zeros(rows, n);
    a.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let s = svd_parts(a);
    let vt = s.v_t;
    let top = s.singular_values.max();
    let cols: Vec<usize> = (0..n)
        .filter(|&i| top == 0.0 || s.singular_values[i] <= tol * top)
        .collect();
    let mut out = Mat::zeros(n, cols.len());
    for (j, &i) in cols.iter().enumerate() {
        out.set_column(j, &vt.row(i).transpose());
    }
    out
}

/// Null space with an absolute singular-value threshold.
pub fn kernel_abs(m: &Mat, abs_tol: f64) -> Mat {
    let n = m.ncols();
    let rows = m.nrows().max(n);
    let mut a = Mat::zeros(rows, n);
    a.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let s = svd_parts(a);
    let vt = s.v_t;
    let cols: Vec<usize> = (0..n).filter(|&i| s.singular_values[i] <= abs_tol).collect();
    let mut out = Mat::zeros(n, cols.len());
    for (j, &i) in cols.iter().enumerate() {
        out.set_column(j, &vt.row(i).transpose());
    }
    out
}

/// Orthonormal basis of the column space.
pub fn orth(m: &Mat, tol: f64) -> Mat {
    let n = m.nrows();
    if m.ncols() == 0 || n == 0 {
        return Mat::zeros(n, 0);
    }
    let s = svd_parts(m.clone());
    let u = s.u;
    let top = s.singular_values.max();
    if top == 0.0 {
        return Mat::zeros(n, 0);
    }
    let cols: Vec<usize> = (0..s.singular_values.len())
        .filter(|&i| s.singular_values[i] > tol * top)
        .collect();
    let mut out = Mat::zeros(n, cols.len());
    for (j, &i) in cols.iter().enumerate() {
        out.set_column(j, &u.column(i));
    }
    out
}

pub fn hstack(a: &Mat, b: &Mat) -> Mat {
    assert_eq!(a.nrows(), b.nrows());
    let mut out = Mat::zeros(a.nrows(), a.ncols() + b.ncols());
    out.view_mut((0, 0), (a.nrows(), a.ncols())).copy_from(a);
    out.view_mut((0, a.ncols()), (b.nrows(), b.ncols())).copy_from(b);
    out
}

pub fn vstack(a: &Mat, b: &Mat) -> Mat {
    assert_eq!(a.ncols(), b.ncols());
    let mut out = Mat::zeros(a.nrows() + b.nrows(), a.ncols());
    out.view_mut((0, 0), (a.nrows(), a.ncols())).copy_from(a);
    out.view_mut((a.nrows(), 0), (b.nrows(), b.ncols())).copy_from(b);
    out
}

pub fn subspace_sum(a: &Mat, b: &Mat, tol: f64) -> Mat {
    orth(&hstack(a, b), tol)
}

/// Intersection of two subspaces given by orthonormal bases.
pub fn intersect(a: &Mat, b: &Mat, tol: f64) -> Mat {
    let n = a.nrows();
    if a.ncols() == 0 || b.ncols() == 0 {
        return Mat::zeros(n, 0);
    }
    let stacked = hstack(a, &(-b));
    let ns = null_space(&stacked, tol);
    if ns.ncols() == 0 {
        return Mat::zeros(n, 0);
    }
    let coeffs = ns.rows(0, a.ncols()).into_owned();
    orth(&(a * coeffs), tol)
}

/// Orthogonal complement of `sub` inside `sup` (both orthonormal bases, `sub` contained in `sup`).
/// Directions whose projection has length at most `tol` are dropped.
pub fn complement_in(sub: &Mat, sup: &Mat, tol: f64) -> Mat {
    let n = sup.nrows();
    if sub.ncols() == 0 {
        return sup.clone();
    }
    if sup.ncols() == 0 {
        return Mat::zeros(n, 0);
    }
    let proj = (Mat::identity(n, n) - sub * sub.transpose()) * sup;
    let s = svd_parts(proj);
    let cols: Vec<usize> = (0..s.singular_values.len()).filter(|&i| s.singular_values[i] > tol).collect();
    Mat::from_fn(n, cols.len(), |r, c| s.u[(r, cols[c])])
}

/// Orthogonal complement of a subspace in the ambient space.
pub fn orth_complement(sub: &Mat, tol: f64) -> Mat {
    let n = sub.nrows();
    complement_in(sub, &Mat::identity(n, n), tol)
}

/// Is `v` in span(basis) up to relative tolerance?
pub fn in_span(basis: &Mat, v: &Vec64, tol: f64) -> bool {
    let nv = v.norm();
    if nv == 0.0 {
        return true;
    }
    if basis.ncols() == 0 {
        return false;
    }
    let r = v - basis * (basis.transpose() * v);
    r.norm() <= tol * nv
}

/// `basis_a` contained in span(`basis_b`).
pub fn contained(a: &Mat, b: &Mat, tol: f64) -> bool {
    (0..a.ncols()).all(|j| in_span(b, &a.column(j).into_owned(), tol))
}

pub fn frob(m: &Mat) -> f64 {
    m.norm()
}

/// Integer power of a square matrix by repeated squaring.
pub fn mat_pow(m: &Mat, k: u64) -> Mat {
    let n = m.nrows();
    let mut result = Mat::identity(n, n);
    let mut base = m.clone();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result = &result * &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    result
}

/// exp(N) for nilpotent N, summed until the powers vanish.
pub fn exp_nilpotent(nil: &Mat) -> Mat {
    let n = nil.nrows();
    let mut out = Mat::identity(n, n);
    let mut term = Mat::identity(n, n);
    for k in 1..=n {
        term = &term * nil / k as f64;
        out += &term;
    }
    out
}

/// Principal logarithm of a unipotent matrix via the finite series of log(1 + X).
pub fn log_unipotent(t: &Mat) -> Mat {
    let n = t.nrows();
    let x = t - Mat::identity(n, n);
    let mut out = Mat::zeros(n, n);
    let mut pow = Mat::identity(n, n);
    for k in 1..=n {
        pow = &pow * &x;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        out += &pow * (sign / k as f64);
    }
    out
}

/// Is `m` nilpotent to tolerance: ‖m^n‖ ≤ tol·max(1, ‖m‖)^n.
pub fn is_nilpotent(m: &Mat, tol: f64) -> bool {
    let n = m.nrows();
    let scale = m.norm().max(1.0).powi(n as i32);
    mat_pow(m, n as u64).norm() <= tol * scale
}

/// Largest index d with N^d ≠ 0 (relative tolerance).
pub fn nilpotency_order(nil: &Mat, tol: f64) -> usize {
    let n = nil.nrows();
    let scale = nil.norm().max(1.0);
    let mut p = Mat::identity(n, n);
    let mut d = 0;
    for k in 1..=n {
        p = &p * nil;
        if p.norm() <= tol * scale.powi(k as i32) {
            break;
        }
        d = k;
    }
    d
}

/// Normalize a projective representative: unit norm, first entry with |x| > 1e-12 positive.
pub fn normalize_projective(v: &Vec64) -> Vec64 {
    let nv = v.norm();
    if nv == 0.0 {
        return v.clone();
    }
    let mut out = v / nv;
    if let Some(first) = out.iter().find(|x| x.abs() > 1e-12) {
        if *first < 0.0 {
            out = -out;
        }
    }
    out
}

/// Chordal distance between projective points given by representatives.
pub fn projective_distance(a: &Vec64, b: &Vec64) -> f64 {
    let a = a / a.norm();
    let b = b / b.norm();
    let c = a.dot(&b).abs().min(1.0);
    (1.0 - c * c).max(0.0).sqrt()
}

pub fn to_complex(m: &Mat) -> CMat {
    m.map(|x| Complex64::new(x, 0.0))
}

pub fn rank_complex(m: &CMat, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    // the real form [[A, −B], [B, A]] of A + iB repeats each singular value twice
    let (r, c) = m.shape();
    let real = Mat::from_fn(2 * r, 2 * c, |i, j| {
        let z = m[(i % r, j % c)];
        match (i < r, j < c) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    rank(&real, tol) / 2
}

pub fn from_rows(rows: &[Vec<f64>]) -> Mat {
    let r = rows.len();
    let c = if r == 0 { 0 } else { rows[0].len() };
    Mat::from_fn(r, c, |i, j| rows[i][j])
}

pub fn to_rows(m: &Mat) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

/// Counts of positive and negative eigenvalues of a symmetric matrix, zero threshold relative.
pub fn signature(sym: &Mat, tol: f64) -> (usize, usize) {
    let e = sym.clone().try_symmetric_eigen(f64::EPSILON, 0).expect("symmetric eigensolver without an iteration cap");
    let top = e.eigenvalues.amax();
    let pos = e.eigenvalues.iter().filter(|&&x| x > tol * top).count();
    let neg = e.eigenvalues.iter().filter(|&&x| x < -tol * top).count();
    (pos, neg)
}

/// Characteristic polynomial coefficients (c_1..c_n of t^n + c_1 t^{n-1} + ...) by Faddeev-LeVerrier.
pub fn char_poly(m: &Mat) -> Vec<f64> {
    let n = m.nrows();
    let mut coeffs = Vec::with_capacity(n);
    let mut mk = Mat::zeros(n, n);
    let id = Mat::identity(n, n);
    let mut c_prev = 1.0;
    for k in 1..=n {
        mk = m * (&mk + &id * c_prev);
        let c = -mk.trace() / k as f64;
        coeffs.push(c);
        c_prev = c;
    }
    coeffs
}
