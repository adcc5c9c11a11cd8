//! The Sp4 ↔ SO(2,3) dictionary: reduced exterior square, the quadric of
//! Lagrangians, photons and electrons.
//!
//! V has basis (e1, e2, f1, f2) with ⟨e_i, f_i⟩ = 1. W is the 5-dim
//! primitive part of Λ²V with coordinates
//! (a, b, c, d, e) = (e1∧e2, e1∧f2, e1∧f1 − e2∧f2, f1∧e2, f1∧f2).

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, Mat, Vec64};
use crate::monodromy::{standard_j, symplectic_basis, MonodromyRep};

pub struct QuadSpaceW;

impl QuadSpaceW {
    pub const LABELS: [&'static str; 5] = ["e1^e2", "e1^f2", "e1^f1-e2^f2", "f1^e2", "f1^f2"];

    /// Gram matrix of Q(w,w) = −a·e + b·d − c².
    pub fn gram() -> Mat {
        let mut g = Mat::zeros(5, 5);
        g[(0, 4)] = -0.5;
        g[(4, 0)] = -0.5;
        g[(1, 3)] = 0.5;
        g[(3, 1)] = 0.5;
        g[(2, 2)] = -1.0;
        g
    }

    pub fn q(w: &Vec64) -> f64 {
        -w[0] * w[4] + w[1] * w[3] - w[2] * w[2]
    }

    /// (positive, negative) counts.
    pub fn signature() -> (usize, usize) {
        linalg::signature(&Self::gram(), 1e-10)
    }
}

/// Index pairs (i<j) of the basis of Λ²V.
const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Columns express a..e in the basis e_i∧e_j (i<j).
fn w_embedding() -> Mat {
    let mut e = Mat::zeros(6, 5);
    e[(0, 0)] = 1.0; // e1∧e2
    e[(2, 1)] = 1.0; // e1∧f2
    e[(1, 2)] = 1.0; // e1∧f1
    e[(4, 2)] = -1.0; // −e2∧f2
    e[(3, 3)] = -1.0; // f1∧e2 = −e2∧f1
    e[(5, 4)] = 1.0; // f1∧f2
    e
}

/// W coordinates to coordinates in the basis e_i∧e_j (i<j) of Λ²V.
pub fn w_to_exterior(w: &Vec64) -> Vec64 {
    w_embedding() * w
}

/// Λ²g on the 6-dim space, entries are 2×2 minors.
pub fn exterior_square_full(g: &Mat) -> Mat {
    let mut m = Mat::zeros(6, 6);
    for (r, &(k, l)) in PAIRS.iter().enumerate() {
        for (c, &(i, j)) in PAIRS.iter().enumerate() {
            m[(r, c)] = g[(k, i)] * g[(l, j)] - g[(k, j)] * g[(l, i)];
        }
    }
    m
}

pub fn omega(x: &Vec64, y: &Vec64) -> f64 {
    (x.transpose() * standard_j(4) * y)[(0, 0)]
}

fn check_symplectic(g: &Mat) -> Result<()> {
    if g.shape() != (4, 4) {
        return Err(Error::invalid("expected a 4x4 matrix"));
    }
    let j = standard_j(4);
    let err = (g.transpose() * &j * g - &j).norm();
    if err > 1e-8 * g.norm_squared().max(1.0) {
        return Err(Error::invalid(format!("matrix is not symplectic (defect {err:.3e})")));
    }
    Ok(())
}

/// Action of Λ²g on W in the (a,b,c,d,e) basis.
pub fn reduced_exterior_square(g: &Mat) -> Result<Mat> {
    check_symplectic(g)?;
    Ok(reduced_exterior_square_unchecked(g))
}

pub fn reduced_exterior_square_unchecked(g: &Mat) -> Mat {
    let e = w_embedding();
    let et = e.transpose();
    let left = (&et * &e).try_inverse().expect("embedding has full rank") * et;
    left * exterior_square_full(g) * e
}

/// u∧v in W coordinates (assumes ω(u,v) = 0), not normalized.
pub fn wedge_w(u: &Vec64, v: &Vec64) -> Vec64 {
    let p = |i: usize, j: usize| u[i] * v[j] - u[j] * v[i];
    // c: coefficient of e1∧f1, which equals −(coefficient of e2∧f2) on W
    let c = 0.5 * (p(0, 2) - p(1, 3));
    DVector::from_vec(vec![p(0, 1), p(0, 3), c, -p(1, 2), p(2, 3)])
}

#[derive(Clone, Debug)]
pub struct LagrangianPlane {
    pub u: Vec64,
    pub v: Vec64,
    pluecker: Vec64,
}

impl LagrangianPlane {
    pub fn new(u: Vec64, v: Vec64) -> Result<Self> {
        if u.len() != 4 || v.len() != 4 {
            return Err(Error::invalid("Lagrangian spanning vectors must have length 4"));
        }
        let s = u.norm() * v.norm();
        if s == 0.0 {
            return Err(Error::invalid("zero spanning vector"));
        }
        if omega(&u, &v).abs() > 1e-9 * s {
            return Err(Error::invalid("span is not Lagrangian"));
        }
        let w = wedge_w(&u, &v);
        if w.norm() <= 1e-12 * s {
            return Err(Error::invalid("spanning vectors are dependent"));
        }
        Ok(LagrangianPlane { pluecker: linalg::normalize_projective(&w), u, v })
    }

    pub fn from_basis(m: &Mat) -> Result<Self> {
        LagrangianPlane::new(m.column(0).into_owned(), m.column(1).into_owned())
    }

    pub fn basis(&self) -> Mat {
        linalg::hstack(&Mat::from_column_slice(4, 1, self.u.as_slice()), &Mat::from_column_slice(4, 1, self.v.as_slice()))
    }

    pub fn transform(&self, g: &Mat) -> Result<Self> {
        LagrangianPlane::new(g * &self.u, g * &self.v)
    }

    pub fn contains(&self, x: &Vec64) -> bool {
        linalg::in_span(&linalg::orth(&self.basis(), 1e-12), x, 1e-9)
    }
}

/// Normalized Plücker vector: Q-isotropic, unit norm, first nonzero coordinate positive.
pub fn pluecker(l: &LagrangianPlane) -> Vec64 {
    l.pluecker.clone()
}

/// Orthonormal basis of the complement of l inside l⊥.
fn perp_mod_line(l: &Vec64) -> Mat {
    let lt = Mat::from_row_slice(1, 4, (l.transpose() * standard_j(4)).as_slice());
    let lperp = linalg::null_space(&lt, 1e-12);
    let lhat = Mat::from_column_slice(4, 1, (l / l.norm()).as_slice());
    linalg::complement_in(&lhat, &lperp, 1e-10)
}

/// The isotropic 2-plane l∧l⊥ ⊂ W, as a 5×2 orthonormal basis.
pub fn photon(l: &Vec64) -> Result<Mat> {
    if l.len() != 4 || l.norm() == 0.0 {
        return Err(Error::invalid("photon needs a nonzero 4-vector"));
    }
    let rest = perp_mod_line(l);
    let w1 = wedge_w(l, &rest.column(0).into_owned());
    let w2 = wedge_w(l, &rest.column(1).into_owned());
    let m = linalg::hstack(&Mat::from_column_slice(5, 1, w1.as_slice()), &Mat::from_column_slice(5, 1, w2.as_slice()));
    Ok(linalg::orth(&m, 1e-12))
}

/// A point of the photon of `l`: the Lagrangian span(l, m) for m ∈ l⊥ given by angle `theta`.
pub fn photon_lagrangian(l: &Vec64, theta: f64) -> Result<LagrangianPlane> {
    let rest = perp_mod_line(l);
    let m = rest.column(0) * theta.cos() + rest.column(1) * theta.sin();
    LagrangianPlane::new(l.clone(), m.into_owned())
}

fn omega_c(x: &DVector<Complex64>, y: &DVector<Complex64>) -> Complex64 {
    let j = linalg::to_complex(&standard_j(4));
    (x.transpose() * j * y)[(0, 0)]
}

/// Matrix of H(x) = i·ω(x, x̄) on the span of the columns of F: H(Fa) = a*·M·a.
fn hermitian_on(f: &CMat) -> CMat {
    let j = linalg::to_complex(&standard_j(4));
    f.adjoint() * j * f * Complex64::new(0.0, -1.0)
}

#[derive(Clone, Debug)]
pub struct ComplexLagrangian {
    /// 4×2 complex basis.
    pub f: CMat,
    /// Coordinates (in the basis above) of H-eigenvectors for positive and negative eigenvalues,
    /// scaled so that H(u₊) = 1, H(u₋) = −1.
    u_plus: DVector<Complex64>,
    u_minus: DVector<Complex64>,
}

impl ComplexLagrangian {
    /// Checks the Lagrangian condition and that H has signature (1,1) on F.
    pub fn new(f: CMat) -> Result<Self> {
        if f.shape() != (4, 2) {
            return Err(Error::invalid("complex Lagrangian needs a 4x2 basis"));
        }
        let x = f.column(0).into_owned();
        let y = f.column(1).into_owned();
        let s = x.norm() * y.norm();
        if omega_c(&x, &y).norm() > 1e-9 * s {
            return Err(Error::invalid("complex plane is not Lagrangian"));
        }
        if linalg::rank_complex(&f, 1e-10) < 2 {
            return Err(Error::invalid("complex plane basis is degenerate"));
        }
        let h = hermitian_on(&f);
        let eig = h.clone().try_symmetric_eigen(f64::EPSILON, 0).expect("symmetric eigensolver without an iteration cap");
        let ev = eig.eigenvalues;
        let top = ev.amax();
        let (pos, neg): (Vec<usize>, Vec<usize>) = (
            (0..2).filter(|&i| ev[i] > 1e-10 * top).collect(),
            (0..2).filter(|&i| ev[i] < -1e-10 * top).collect(),
        );
        if pos.len() != 1 || neg.len() != 1 {
            return Err(Error::invalid(format!(
                "hermitian form on F2 has signature ({}, {}), need (1, 1)",
                pos.len(),
                neg.len()
            )));
        }
        let up = eig.eigenvectors.column(pos[0]).into_owned() / Complex64::new(ev[pos[0]].sqrt(), 0.0);
        let um = eig.eigenvectors.column(neg[0]).into_owned() / Complex64::new((-ev[neg[0]]).sqrt(), 0.0);
        Ok(ComplexLagrangian { f, u_plus: up, u_minus: um })
    }

    /// The null vector α(θ) = u₊ + e^{iθ}u₋ ∈ F.
    pub fn null_vector(&self, theta: f64) -> DVector<Complex64> {
        let coords = &self.u_plus + &self.u_minus * Complex64::from_polar(1.0, theta);
        &self.f * coords
    }

    pub fn hermitian(&self, x: &DVector<Complex64>) -> f64 {
        let i = Complex64::new(0.0, 1.0);
        (i * omega_c(x, &x.map(|z| z.conj()))).re
    }
}

/// Does L_C meet F² nontrivially? Rank test on the stacked 4×4 complex matrix.
pub fn electron_membership(f2: &ComplexLagrangian, l: &LagrangianPlane) -> bool {
    let lc = linalg::to_complex(&linalg::orth(&l.basis(), 1e-12));
    let mut m = CMat::zeros(4, 4);
    m.view_mut((0, 0), (4, 2)).copy_from(&lc);
    let fo = orth_complex(&f2.f);
    m.view_mut((0, 2), (4, 2)).copy_from(&fo);
    linalg::rank_complex(&m, 1e-8) <= 3
}

fn orth_complex(f: &CMat) -> CMat {
    let qr = f.clone().qr();
    qr.q()
}

/// m sample points of the electron circle, each as the real Lagrangian span(Re α, Im α).
pub fn electron_circle(f2: &ComplexLagrangian, m: usize) -> Result<Vec<LagrangianPlane>> {
    (0..m)
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / m as f64;
            let a = f2.null_vector(theta);
            LagrangianPlane::new(a.map(|z| z.re), a.map(|z| z.im))
        })
        .collect()
}

/// Conjugate a symplectic rep into the standard form: returns the rep in the
/// new basis and the change-of-basis matrix P (columns e1, e2, f1, f2).
pub fn standardize(rep: &MonodromyRep) -> Result<(MonodromyRep, Mat)> {
    let form = match &rep.form {
        Some(f) => f.clone(),
        None => crate::monodromy::invariant_bilinear_form(rep)?,
    };
    if form.kind != crate::monodromy::FormKind::Antisymmetric || rep.n != 4 {
        return Err(Error::invalid("standardize needs a rank-4 rep with a symplectic form"));
    }
    let p = symplectic_basis(&form.j)?;
    let pinv = p.clone().try_inverse().ok_or_else(|| Error::numerical("singular symplectic basis"))?;
    let mut out = rep.map(|g| &pinv * g * &p)?;
    out.form = Some(crate::monodromy::InvariantForm { j: standard_j(4), kind: crate::monodromy::FormKind::Antisymmetric });
    Ok((out, p))
}

/// A random symplectic matrix as a product of random elementary symplectic factors.
pub fn random_symplectic<R: rand::Rng>(rng: &mut R, scale: f64) -> Mat {
    let mut g = Mat::identity(4, 4);
    for _ in 0..3 {
        let mut s = DMatrix::<f64>::zeros(2, 2);
        let a = rng.random_range(-scale..scale);
        let b = rng.random_range(-scale..scale);
        let c = rng.random_range(-scale..scale);
        s[(0, 0)] = a;
        s[(0, 1)] = b;
        s[(1, 0)] = b;
        s[(1, 1)] = c;
        // upper unipotent [[I, S],[0, I]]
        let mut up = Mat::identity(4, 4);
        up.view_mut((0, 2), (2, 2)).copy_from(&s);
        // lower unipotent [[I, 0],[T, I]]
        let mut lo = Mat::identity(4, 4);
        let t0 = rng.random_range(-scale..scale);
        let t1 = rng.random_range(-scale..scale);
        let t2 = rng.random_range(-scale..scale);
        lo[(2, 0)] = t0;
        lo[(2, 1)] = t1;
        lo[(3, 0)] = t1;
        lo[(3, 1)] = t2;
        // block diagonal diag(A, A^{-T})
        let mut a2 = DMatrix::<f64>::from_fn(2, 2, |_, _| rng.random_range(-1.0..1.0));
        a2[(0, 0)] += 2.0;
        a2[(1, 1)] += 2.0;
        let ainv_t = a2.clone().try_inverse().expect("diagonally dominant").transpose();
        let mut d = Mat::zeros(4, 4);
        d.view_mut((0, 0), (2, 2)).copy_from(&a2);
        d.view_mut((2, 2), (2, 2)).copy_from(&ainv_t);
        g = g * up * lo * d;
    }
    g
}
