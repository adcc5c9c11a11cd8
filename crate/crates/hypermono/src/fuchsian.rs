//! Triangle-group uniformization of the base orbifold, hyperbolic distances and
//! geodesic sampling with reduction to a fundamental domain.
//!
//! Points of the hyperbolic plane are handled in the hyperboloid model
//! {x : x₁² + x₂² − x₃² = −1, x₃ > 0}; the point x corresponds to the positive
//! symmetric matrix [[x₃+x₁, x₂], [x₂, x₃−x₁]] and M ∈ GL₂ acts by P ↦ M·P·Mᵀ.
//! The basepoint (0,0,1) is τ = i.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix2, Matrix3, Vector3};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperparams::{Exponent, HypergeomParams};
use crate::linalg::Mat;
use crate::monodromy::{Gen, MonodromyRep, Syllable, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Order {
    Finite(u32),
    Cusp,
}

impl Order {
    pub fn reciprocal(&self) -> f64 {
        match self {
            Order::Finite(e) => 1.0 / *e as f64,
            Order::Cusp => 0.0,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(e) => write!(f, "{e}"),
            Order::Cusp => write!(f, "inf"),
        }
    }
}

impl FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" | "oo" => Ok(Order::Cusp),
            t => {
                let e: u32 = t.parse().map_err(|_| Error::invalid(format!("bad orbifold order '{t}'")))?;
                if e < 2 {
                    return Err(Error::invalid("orbifold orders must be at least 2"));
                }
                Ok(Order::Finite(e))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrbifoldSignature {
    pub e0: Order,
    pub e1: Order,
    pub einf: Order,
}

impl OrbifoldSignature {
    pub fn new(e0: Order, e1: Order, einf: Order) -> Self {
        OrbifoldSignature { e0, e1, einf }
    }

    /// χ = −1 + Σ 1/e.
    pub fn chi(&self) -> f64 {
        -1.0 + self.e0.reciprocal() + self.e1.reciprocal() + self.einf.reciprocal()
    }

    pub fn orders(&self) -> [Order; 3] {
        [self.e0, self.e1, self.einf]
    }
}

impl fmt::Display for OrbifoldSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.e0, self.e1, self.einf)
    }
}

impl FromStr for OrbifoldSignature {
    type Err = Error;

    /// "2,3,inf"
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::invalid("signature needs three orders"));
        }
        Ok(OrbifoldSignature::new(parts[0].parse()?, parts[1].parse()?, parts[2].parse()?))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum OrderConvention {
    /// Order of the local monodromy in GL.
    #[default]
    Gl,
    /// Order in PGL, i.e. up to scalars.
    Projective,
}

impl FromStr for OrderConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gl" => Ok(OrderConvention::Gl),
            "projective" => Ok(OrderConvention::Projective),
            _ => Err(Error::invalid(format!("orbifold order must be 'gl' or 'projective', got '{s}'"))),
        }
    }
}

fn exact_all(v: &[Exponent]) -> Result<Vec<Rational64>> {
    v.iter()
        .map(|e| e.exact().ok_or_else(|| Error::invalid("orbifold signature needs rational exponents")))
        .collect()
}

fn lcm_denominators(v: impl Iterator<Item = Rational64>) -> i64 {
    v.fold(1i64, |acc, r| acc.lcm(r.denom()))
}

/// Local order from the exponents of a cyclic (regular) local monodromy:
/// a repeated exponent means a nontrivial Jordan block.
fn local_order(exps: &[Rational64], conv: OrderConvention) -> Order {
    for (i, a) in exps.iter().enumerate() {
        if exps[i + 1..].contains(a) {
            return Order::Cusp;
        }
    }
    let e = match conv {
        OrderConvention::Gl => lcm_denominators(exps.iter().copied()),
        OrderConvention::Projective => lcm_denominators(exps.iter().map(|a| a - exps[0])),
    };
    Order::Finite(e as u32)
}

pub fn orbifold_signature(p: &HypergeomParams, conv: OrderConvention) -> Result<OrbifoldSignature> {
    if p.rank() < 2 {
        return Err(Error::invalid("orbifold signature needs rank at least 2"));
    }
    let a = exact_all(p.alpha())?;
    let b = exact_all(p.beta())?;
    let e0 = local_order(&b, conv);
    let einf = local_order(&a, conv);
    // h1 is a pseudo-reflection with special eigenvalue exp(2πi(Σα − Σβ))
    let delta = a.iter().sum::<Rational64>() - b.iter().sum::<Rational64>();
    let frac = delta - delta.floor();
    let e1 = if frac == Rational64::from_integer(0) { Order::Cusp } else { Order::Finite(*frac.denom() as u32) };
    let sig = OrbifoldSignature::new(e0, e1, einf);
    for o in sig.orders() {
        if o == Order::Finite(1) {
            return Err(Error::invalid("local monodromy is trivial"));
        }
    }
    Ok(sig)
}

type V3 = Vector3<f64>;
type M3 = Matrix3<f64>;

fn eta() -> M3 {
    M3::from_diagonal(&V3::new(1.0, 1.0, -1.0))
}

/// Lorentzian inner product x₁y₁ + x₂y₂ − x₃y₃.
pub fn minkowski(x: &V3, y: &V3) -> f64 {
    x[0] * y[0] + x[1] * y[1] - x[2] * y[2]
}

fn sym_of(x: &V3) -> Matrix2<f64> {
    Matrix2::new(x[2] + x[0], x[1], x[1], x[2] - x[0])
}

fn point_of(p: &Matrix2<f64>) -> V3 {
    V3::new(0.5 * (p[(0, 0)] - p[(1, 1)]), 0.5 * (p[(0, 1)] + p[(1, 0)]), 0.5 * (p[(0, 0)] + p[(1, 1)]))
}

/// The 3×3 Lorentz matrix of P ↦ M·P·Mᵀ for M with det ±1.
pub fn lorentz_of(m: &Mat) -> M3 {
    let m2 = Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let mut out = M3::zeros();
    for j in 0..3 {
        let mut e = V3::zeros();
        e[j] = 1.0;
        let img = point_of(&(m2 * sym_of(&e) * m2.transpose()));
        out.set_column(j, &img);
    }
    out
}

pub fn hyperboloid_to_half_plane(x: &V3) -> Complex64 {
    let p = sym_of(x);
    // P = (1/y)[[|τ|², Re τ], [Re τ, 1]]
    let y = 1.0 / p[(1, 1)];
    Complex64::new(p[(0, 1)] * y, y)
}

pub fn half_plane_to_hyperboloid(tau: Complex64) -> V3 {
    let y = tau.im;
    point_of(&Matrix2::new(tau.norm_sqr() / y, tau.re / y, tau.re / y, 1.0 / y))
}

/// Disk to upper half-plane, τ = (1/i)(z+1)/(z−1).
pub fn disk_to_half_plane(z: Complex64) -> Complex64 {
    (z + 1.0) / (z - 1.0) / Complex64::i()
}

/// Upper half-plane to disk, z = (τ−i)/(τ+i).
pub fn half_plane_to_disk(tau: Complex64) -> Complex64 {
    (tau - Complex64::i()) / (tau + Complex64::i())
}

/// cosh d = 1 + |τ₁−τ₂|²/(2 Im τ₁ Im τ₂).
pub fn hyp_distance(t1: Complex64, t2: Complex64) -> Result<f64> {
    if !(t1.im > 0.0 && t2.im > 0.0) {
        return Err(Error::invalid("points must lie in the upper half-plane"));
    }
    let c = 1.0 + (t1 - t2).norm_sqr() / (2.0 * t1.im * t2.im);
    Ok(c.max(1.0).acosh())
}

/// dist(i, γ·i) = arccosh(‖γ‖²_F / 2) for γ ∈ SL₂(ℝ).
pub fn displacement(g: &Mat) -> f64 {
    (0.5 * g.norm_squared()).max(1.0).acosh()
}

/// The anti-Möbius reflection in the geodesic {x : ⟨x, n⟩ = 0}, det −1.
fn reflection_2x2(n: &V3) -> Mat {
    let a = 0.5 * (n[0] - n[2]);
    let b = 0.5 * (n[0] + n[2]);
    if a.abs() < 1e-14 {
        // vertical line Re τ = b / n₂
        let c = b / n[1];
        return Mat::from_row_slice(2, 2, &[-1.0, 2.0 * c, 0.0, 1.0]);
    }
    let c = -n[1] / (2.0 * a);
    let rho = 1.0 / (2.0 * a.abs());
    Mat::from_row_slice(2, 2, &[c, rho * rho - c * c, 1.0, -c]) / rho
}

#[derive(Clone, Copy, Debug)]
struct Side {
    normal: V3,
    emit: Syllable,
}

/// The uniformizing triangle group of an orbifold signature.
#[derive(Clone, Debug)]
pub struct FuchsianModel {
    pub sig: OrbifoldSignature,
    /// γ0, γ1, γ∞ ∈ SL₂(ℝ) with γ0·γ1·γ∞ = id.
    pub gamma: [Mat; 3],
    /// Normals of the triangle sides opposite v0, v1, v∞; the triangle is {⟨x, n⟩ ≤ 0}.
    pub normals: [V3; 3],
    lorentz: [M3; 2],
    lorentz_inv: [M3; 2],
    sides: [Side; 4],
}

/// Triangle group with angles π/e at the three vertices; the fundamental domain is the
/// triangle together with its mirror image across the side v0v1.
pub fn triangle_group(sig: &OrbifoldSignature) -> Result<FuchsianModel> {
    if sig.chi() >= -1e-12 {
        return Err(Error::invalid(format!("signature {sig} is not hyperbolic (chi = {})", sig.chi())));
    }
    let c = |o: Order| match o {
        Order::Finite(e) => (PI / e as f64).cos(),
        Order::Cusp => 1.0,
    };
    // Gram matrix of side normals: sides i, j meet at the remaining vertex
    let g = M3::new(1.0, -c(sig.einf), -c(sig.e1), -c(sig.einf), 1.0, -c(sig.e0), -c(sig.e1), -c(sig.e0), 1.0);
    let eig = g.try_symmetric_eigen(f64::EPSILON, 0).expect("symmetric eigensolver without an iteration cap");
    let mut order: Vec<usize> = (0..3).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].partial_cmp(&eig.eigenvalues[i]).expect("finite eigenvalues"));
    if eig.eigenvalues[order[2]] >= 0.0 || eig.eigenvalues[order[1]] <= 0.0 {
        return Err(Error::numerical("triangle Gram matrix is not of signature (2,1)"));
    }
    let mut nmat = M3::zeros();
    for (row, &k) in order.iter().enumerate() {
        let s = eig.eigenvalues[k].abs().sqrt();
        for col in 0..3 {
            nmat[(row, col)] = s * eig.eigenvectors[(col, k)];
        }
    }
    let mut normals = [nmat.column(0).into_owned(), nmat.column(1).into_owned(), nmat.column(2).into_owned()];
    // incenter: ⟨x, n_i⟩ = −1 for all i
    let a = nmat.transpose() * eta();
    let mut x = a.try_inverse().ok_or_else(|| Error::numerical("degenerate triangle"))? * V3::new(-1.0, -1.0, -1.0);
    let q = minkowski(&x, &x);
    if q >= 0.0 {
        return Err(Error::numerical("triangle has no interior point"));
    }
    x /= (-q).sqrt();
    if x[2] < 0.0 {
        x = -x;
        for n in normals.iter_mut() {
            *n = -*n;
        }
    }
    // boost the incenter to (0,0,1)
    let us = nalgebra::Vector2::new(x[0], x[1]);
    let mut boost = M3::identity();
    let top = nalgebra::Matrix2::identity() + us * us.transpose() / (1.0 + x[2]);
    boost.fixed_view_mut::<2, 2>(0, 0).copy_from(&top);
    boost.fixed_view_mut::<2, 1>(0, 2).copy_from(&us);
    boost.fixed_view_mut::<1, 2>(2, 0).copy_from(&us.transpose());
    boost[(2, 2)] = x[2];
    let unboost = eta() * boost.transpose() * eta();
    for n in normals.iter_mut() {
        *n = unboost * *n;
    }

    let refl: Vec<Mat> = normals.iter().map(reflection_2x2).collect();
    let r0 = &refl[1] * &refl[2];
    let r1 = &refl[2] * &refl[0];
    let rinf = (&r0 * &r1).try_inverse().ok_or_else(|| Error::numerical("singular generator"))?;
    let l0 = lorentz_of(&r0);
    let l1 = lorentz_of(&r1);
    let l0i = eta() * l0.transpose() * eta();
    let l1i = eta() * l1.transpose() * eta();
    let rinf3 = lorentz_of(&refl[2]);
    let sides = [
        Side { normal: normals[1], emit: Syllable { gen: Gen::Zero, exp: 1 } },
        Side { normal: rinf3 * normals[1], emit: Syllable { gen: Gen::Zero, exp: -1 } },
        Side { normal: rinf3 * normals[0], emit: Syllable { gen: Gen::One, exp: 1 } },
        Side { normal: normals[0], emit: Syllable { gen: Gen::One, exp: -1 } },
    ];
    Ok(FuchsianModel { sig: *sig, gamma: [r0, r1, rinf], normals, lorentz: [l0, l1], lorentz_inv: [l0i, l1i], sides })
}

impl FuchsianModel {
    /// The representation h0 ↦ γ0, h1 ↦ γ1 (so h∞ ↦ γ0γ1 = γ∞⁻¹).
    pub fn rep(&self) -> MonodromyRep {
        MonodromyRep::from_generators(self.gamma[0].clone(), &self.gamma[0] * &self.gamma[1])
            .expect("SL2 generators are invertible")
    }

    /// Its composition with Sym^k in an orthonormal basis.
    pub fn symmetric_power_rep(&self, k: usize) -> MonodromyRep {
        self.rep().map(|m| symmetric_power(m, k)).expect("symmetric powers are invertible")
    }

    pub fn basepoint() -> V3 {
        V3::new(0.0, 0.0, 1.0)
    }

    /// Is x in the fundamental domain, up to `tol`?
    pub fn in_domain(&self, x: &V3, tol: f64) -> bool {
        let scale = x.norm();
        self.sides.iter().all(|s| minkowski(x, &s.normal) <= tol * scale)
    }

    /// dist(i, γ·i) for γ the image of a word under h0 ↦ γ0, h1 ↦ γ1, h∞ ↦ γ0γ1.
    pub fn word_distance(&self, w: &Word) -> f64 {
        displacement(&self.rep().eval(w).expect("SL2 generators are invertible"))
    }

    fn side_action(&self, emit: Syllable) -> (M3, Mat) {
        let (k, g) = match emit.gen {
            Gen::Zero => (0, &self.gamma[0]),
            _ => (1, &self.gamma[1]),
        };
        if emit.exp > 0 {
            (self.lorentz_inv[k], g.clone())
        } else {
            (self.lorentz[k], g.clone().try_inverse().expect("SL2 is invertible"))
        }
    }
}

/// Sym^k of a 2×2 matrix in the orthonormal basis √C(k,j)·x^{k−j}y^j.
pub fn symmetric_power(m: &Mat, k: usize) -> Mat {
    let binom = |n: usize, r: usize| -> f64 { (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64) };
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let mut out = Mat::zeros(k + 1, k + 1);
    for j in 0..=k {
        // (a x + c y)^{k−j} (b x + d y)^j, coefficient of x^{k−i} y^i
        for p in 0..=(k - j) {
            for q in 0..=j {
                let i = p + q;
                let coef = binom(k - j, p) * a.powi((k - j - p) as i32) * c.powi(p as i32) * binom(j, q) * b.powi((j - q) as i32) * d.powi(q as i32);
                out[(i, j)] += coef * (binom(k, j) / binom(k, i)).sqrt();
            }
        }
    }
    out
}

/// Sym^k image of the point [p : q] of the projective line.
pub fn veronese(p: f64, q: f64, k: usize) -> Vec<f64> {
    let binom = |n: usize, r: usize| -> f64 { (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64) };
    (0..=k).map(|j| binom(k, j).sqrt() * p.powi((k - j) as i32) * q.powi(j as i32)).collect()
}

/// One side crossing: the flow time at which it happens and the emitted generator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Crossing {
    pub time: f64,
    pub gen: Gen,
    pub exp: i32,
}

#[derive(Clone, Debug)]
pub struct GeodesicTrajectory {
    pub seed: u64,
    pub total_time: f64,
    pub crossings: Vec<Crossing>,
    /// Product of the emitted γ's; overflows for very long trajectories.
    pub deck: Mat,
    /// Endpoint and unit tangent, reduced into the fundamental domain.
    pub end_point: V3,
    pub end_tangent: V3,
}

impl GeodesicTrajectory {
    pub fn word(&self) -> Word {
        self.crossings.iter().fold(Word::identity(), |w, c| w.mul(&Word::letter(c.gen, c.exp)))
    }
}

fn renormalize(x: &mut V3, v: &mut V3) {
    *x /= (-minkowski(x, x)).sqrt();
    let c = minkowski(v, x);
    *v += *x * c;
    *v /= minkowski(v, v).sqrt();
}

/// Flows the unit-speed geodesic g_t (hyperbolic distance 2t at time t) and calls `on_cross`
/// at every side crossing. Returns the reduced endpoint and tangent.
pub fn flow_geodesic(model: &FuchsianModel, x0: V3, v0: V3, total_time: f64, mut on_cross: impl FnMut(Crossing)) -> (V3, V3) {
    let mut x = x0;
    let mut v = v0;
    let mut t = 0.0;
    loop {
        let remaining = 2.0 * (total_time - t);
        let mut best: Option<(f64, usize)> = None;
        for (i, side) in model.sides.iter().enumerate() {
            let a = minkowski(&x, &side.normal).min(0.0);
            let b = minkowski(&v, &side.normal);
            if b + a > 0.0 {
                let s = 0.5 * ((b - a) / (b + a)).ln();
                if best.is_none_or(|(bs, _)| s < bs) {
                    best = Some((s, i));
                }
            }
        }
        match best {
            Some((s, i)) if s <= remaining => {
                let (ch, sh) = (s.cosh(), s.sinh());
                let nx = x * ch + v * sh;
                let nv = x * sh + v * ch;
                t += 0.5 * s;
                // collinear sides (angle π at a vertex) are told apart by the middle side
                let on_primed = minkowski(&nx, &model.normals[2]) > 0.0;
                let side = pick_side(model, i < 2, on_primed);
                let (lor, _) = model.side_action(side.emit);
                x = lor * nx;
                v = lor * nv;
                renormalize(&mut x, &mut v);
                on_cross(Crossing { time: t, gen: side.emit.gen, exp: side.emit.exp });
            }
            _ => {
                let (ch, sh) = (remaining.cosh(), remaining.sinh());
                let nx = x * ch + v * sh;
                let nv = x * sh + v * ch;
                x = nx;
                v = nv;
                renormalize(&mut x, &mut v);
                return (x, v);
            }
        }
    }
}

fn pick_side(model: &FuchsianModel, first_family: bool, on_primed: bool) -> Side {
    // sides are stored as s1, s1', s0', s0
    match (first_family, on_primed) {
        (true, false) => model.sides[0],
        (true, true) => model.sides[1],
        (false, true) => model.sides[2],
        (false, false) => model.sides[3],
    }
}

/// Seeded geodesic from the basepoint in a uniformly random direction.
pub fn geodesic_sample(model: &FuchsianModel, seed: u64, total_time: f64) -> Result<GeodesicTrajectory> {
    if !(total_time >= 0.0) || !total_time.is_finite() {
        return Err(Error::invalid("flow time must be finite and nonnegative"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let theta: f64 = rng.random_range(0.0..2.0 * PI);
    let mut crossings = Vec::new();
    let (end_point, end_tangent) = flow_geodesic(
        model,
        FuchsianModel::basepoint(),
        V3::new(theta.cos(), theta.sin(), 0.0),
        total_time,
        |c| crossings.push(c),
    );
    let mut deck = Mat::identity(2, 2);
    for c in &crossings {
        let g = if c.gen == Gen::Zero { &model.gamma[0] } else { &model.gamma[1] };
        deck = if c.exp > 0 { deck * g } else { deck * g.clone().try_inverse().expect("SL2 is invertible") };
    }
    Ok(GeodesicTrajectory { seed, total_time, crossings, deck, end_point, end_tangent })
}
