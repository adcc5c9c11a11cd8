//! Word balls, limit curves, log-Anosov certificates, Lyapunov exponents,
//! rational limit points and minimality scans.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuchsian::{self, FuchsianModel, Order};
use crate::lie::{self, LimitDatum};
use crate::linalg::{self, Mat, Vec64};
use crate::monodromy::{matrix_order, standard_j, Gen, MonodromyRep, Syllable, Word};
use crate::symplectic::{self, LagrangianPlane};

/// Alphabet of the ball: h0^{±1}, h∞^{±1}.
pub const BALL_GENERATORS: [Gen; 2] = [Gen::Zero, Gen::Inf];

#[derive(Clone, Debug)]
struct Node {
    parent: usize,
    letter: Syllable,
    head: Syllable,
    len: usize,
}

/// All reduced words of length ≤ L with their matrices, deduplicated up to sign.
#[derive(Clone, Debug)]
pub struct WordBall {
    pub labels: Vec<Gen>,
    pub max_len: usize,
    pub matrices: Vec<Mat>,
    nodes: Vec<Node>,
}

impl WordBall {
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn word(&self, i: usize) -> Word {
        let mut w = Word::identity();
        let mut k = i;
        while k != 0 {
            let n = &self.nodes[k];
            w = w.mul(&Word::letter(n.letter.gen, n.letter.exp));
            k = n.parent;
        }
        w
    }

    pub fn word_len(&self, i: usize) -> usize {
        self.nodes[i].len
    }

    /// Number of elements with word length exactly `l`.
    pub fn sphere_size(&self, l: usize) -> usize {
        self.nodes.iter().filter(|n| n.len == l).count()
    }
}

fn exponent_range(order: Option<u32>) -> (i32, i32) {
    match order {
        // (−e/2, e/2]
        Some(e) => (-((e as i32 - 1) / 2), e as i32 / 2),
        None => (i32::MIN, i32::MAX),
    }
}

fn dedup_key(m: &Mat) -> Vec<i64> {
    let sign = m.iter().find(|x| x.abs() > 1e-7).map_or(1.0, |x| x.signum());
    m.iter()
        .map(|x| {
            let r = (sign * x * 1e7).round();
            if r == 0.0 {
                0
            } else {
                r as i64
            }
        })
        .collect()
}

/// Elliptic exponents are truncated to (−e/2, e/2] with e the projective order of the generator.
pub fn enumerate_ball(rep: &MonodromyRep, l: usize) -> WordBall {
    enumerate_ball_with(rep, l, &[]).0
}

/// Ball of `rep` carrying along the images of the same words under `companions`.
pub fn enumerate_ball_with(rep: &MonodromyRep, l: usize, companions: &[&MonodromyRep]) -> (WordBall, Vec<Vec<Mat>>) {
    let n = rep.n;
    let mut letters: Vec<(Syllable, Mat, Vec<Mat>, (i32, i32))> = Vec::new();
    for g in BALL_GENERATORS {
        let range = exponent_range(matrix_order(rep.gen(g), true));
        for e in [1, -1] {
            let m = rep.power(g, e).expect("generators are invertible");
            let comp = companions.iter().map(|c| c.power(g, e).expect("generators are invertible")).collect();
            letters.push((Syllable { gen: g, exp: e }, m, comp, range));
        }
    }
    let id = Mat::identity(n, n);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(dedup_key(&id));
    let mut matrices = vec![id];
    let mut comp_out: Vec<Vec<Mat>> = vec![companions.iter().map(|c| Mat::identity(c.n, c.n)).collect()];
    let root = Syllable { gen: Gen::One, exp: 0 };
    let mut nodes = vec![Node { parent: 0, letter: root, head: root, len: 0 }];
    let mut frontier: Vec<usize> = vec![0];
    for len in 1..=l {
        let mut next = Vec::new();
        for &i in &frontier {
            let head = nodes[i].head;
            for (letter, m, comp, (lo, hi)) in &letters {
                let new_head = if head.gen == letter.gen && head.exp != 0 {
                    if head.exp.signum() != letter.exp {
                        continue;
                    }
                    Syllable { gen: letter.gen, exp: head.exp + letter.exp }
                } else {
                    *letter
                };
                if new_head.exp < *lo || new_head.exp > *hi {
                    continue;
                }
                let prod = m * &matrices[i];
                if !seen.insert(dedup_key(&prod)) {
                    continue;
                }
                let c: Vec<Mat> = comp.iter().zip(&comp_out[i]).map(|(a, b)| a * b).collect();
                matrices.push(prod);
                comp_out.push(c);
                nodes.push(Node { parent: i, letter: *letter, head: new_head, len });
                next.push(nodes.len() - 1);
            }
        }
        frontier = next;
    }
    (WordBall { labels: BALL_GENERATORS.to_vec(), max_len: l, matrices, nodes }, comp_out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleKind {
    Attracting,
    Cusp,
}

#[derive(Clone, Debug)]
pub struct LimitSample {
    pub point: Vec64,
    pub word: Word,
    pub gap: f64,
    pub kind: SampleKind,
}

/// ker(u − id) ∩ im(u − id) when it is a line, for ±u unipotent and ≠ id.
pub fn cusp_line(u: &Mat) -> Option<Vec64> {
    let u = &unsigned(u);
    let n = u.nrows();
    let nil = u - Mat::identity(n, n);
    let scale = u.norm().max(1.0);
    if nil.norm() <= 1e-9 * scale || !lie::is_unipotent(u, 1e-9) {
        return None;
    }
    let ker = linalg::null_space(&nil, 1e-9);
    let im = linalg::orth(&nil, 1e-9);
    let both = linalg::intersect(&ker, &im, 1e-9);
    (both.ncols() == 1).then(|| linalg::normalize_projective(&both.column(0).into_owned()))
}

/// Attracting points of ball elements with α₁-gap ≥ `gap_min`, plus cusp points of unipotent
/// elements whose fixed-and-image space is a line.
pub fn limit_curve_samples(rep: &MonodromyRep, l: usize, gap_min: f64) -> Result<Vec<LimitSample>> {
    if !(gap_min > 0.0) {
        return Err(Error::invalid("gap_min must be positive"));
    }
    let ball = enumerate_ball(rep, l);
    samples_from_ball(&ball, gap_min)
}

fn samples_from_ball(ball: &WordBall, gap_min: f64) -> Result<Vec<LimitSample>> {
    let per: Vec<Result<Option<LimitSample>>> = (0..ball.len())
        .into_par_iter()
        .map(|i| {
            let m = &ball.matrices[i];
            let c = lie::kak(m)?;
            let gap = c.mu[0] - c.mu[1];
            if let Some(line) = cusp_line(m) {
                return Ok(Some(LimitSample { point: line, word: ball.word(i), gap, kind: SampleKind::Cusp }));
            }
            if gap >= gap_min {
                let p = linalg::normalize_projective(&c.k_minus.column(0).into_owned());
                return Ok(Some(LimitSample { point: p, word: ball.word(i), gap, kind: SampleKind::Attracting }));
            }
            Ok(None)
        })
        .collect();
    let mut out = Vec::new();
    for s in per {
        if let Some(s) = s? {
            out.push(s);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ScatterPoint {
    pub dist: f64,
    pub gap: f64,
    pub word: String,
}

/// The rep's generators must have the orders the orbifold prescribes.
fn check_alphabet(rep: &MonodromyRep, model: &FuchsianModel) -> Result<()> {
    for (g, o) in [(Gen::Zero, model.sig.e0), (Gen::One, model.sig.e1), (Gen::Inf, model.sig.einf)] {
        let ro = matrix_order(rep.gen(g), true);
        let ok = match o {
            Order::Cusp => ro.is_none(),
            Order::Finite(e) => ro.is_some_and(|r| e % r == 0),
        };
        if !ok {
            return Err(Error::invalid(format!(
                "generator {} has projective order {}, orbifold expects {o}",
                g.name(),
                ro.map_or("inf".to_string(), |r| r.to_string())
            )));
        }
    }
    Ok(())
}

/// ±m with nonnegative trace, so that −(unipotent) passes a unipotency check.
fn unsigned(m: &Mat) -> Mat {
    if m.trace() < 0.0 {
        -m
    } else {
        m.clone()
    }
}

/// (dist(i, γ·i), α₁-gap of ρ(γ)) over the ball.
pub fn certificate_scatter(rep: &MonodromyRep, model: &FuchsianModel, l: usize) -> Result<Vec<ScatterPoint>> {
    check_alphabet(rep, model)?;
    let fm = model.rep();
    let (ball, comp) = enumerate_ball_with(rep, l, &[&fm]);
    let pts: Vec<Result<ScatterPoint>> = (0..ball.len())
        .into_par_iter()
        .map(|i| {
            Ok(ScatterPoint {
                dist: fuchsian::displacement(&comp[i][0]),
                gap: lie::alpha1_gap(&ball.matrices[i])?,
                word: ball.word(i).to_string(),
            })
        })
        .collect();
    pts.into_iter().collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct AnosovCertificate {
    pub epsilon: f64,
    pub c: f64,
    pub scatter: Vec<ScatterPoint>,
}

/// Lower convex hull of (x, y) points, left to right.
fn lower_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut p = points.to_vec();
    p.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut h: Vec<(f64, f64)> = Vec::new();
    for q in p {
        while h.len() >= 2 {
            let (a, b) = (h[h.len() - 2], h[h.len() - 1]);
            if (b.0 - a.0) * (q.1 - a.1) - (b.1 - a.1) * (q.0 - a.0) <= 0.0 {
                h.pop();
            } else {
                break;
            }
        }
        if h.last().is_some_and(|l| l.0 == q.0) {
            continue;
        }
        h.push(q);
    }
    h
}

/// Support line gap ≥ ε·dist − c of the scatter, taken on the convex-minorant edge over
/// half the largest displacement.
pub fn support_line(scatter: &[ScatterPoint]) -> (f64, f64) {
    let pts: Vec<(f64, f64)> = scatter.iter().map(|p| (p.dist, p.gap)).collect();
    let h = lower_hull(&pts);
    if h.len() < 2 {
        return (0.0, h.first().map_or(0.0, |p| -p.1));
    }
    let mid = 0.5 * h[h.len() - 1].0;
    let k = h.windows(2).position(|w| w[1].0 >= mid).unwrap_or(h.len() - 2);
    let (a, b) = (h[k], h[k + 1]);
    let eps = (b.1 - a.1) / (b.0 - a.0);
    (eps, eps * a.0 - a.1)
}

pub fn anosov_certificate(rep: &MonodromyRep, model: &FuchsianModel, l: usize) -> Result<AnosovCertificate> {
    let scatter = certificate_scatter(rep, model, l)?;
    let (epsilon, c) = support_line(&scatter);
    Ok(AnosovCertificate { epsilon, c, scatter })
}

#[derive(Clone, Debug, Serialize)]
pub struct LyapunovResult {
    /// Full spectrum, nonincreasing, averaged over trajectories.
    pub spectrum: Vec<f64>,
    pub stderr: Vec<f64>,
    /// Per-trajectory spectra in seed order.
    pub per_trajectory: Vec<Vec<f64>>,
    pub trajectory_time: f64,
    pub discarded: usize,
}

impl LyapunovResult {
    /// The nonnegative half of a symplectic spectrum, (λ₁, λ₂) in rank 4.
    pub fn positive_pair(&self) -> Vec<f64> {
        self.spectrum[..self.spectrum.len() / 2].to_vec()
    }
}

const RUN_CHUNK: i32 = 16;

/// Benettin exponents of ρ along one seeded trajectory; None if the frame blew up.
fn trajectory_exponents(rep: &MonodromyRep, model: &FuchsianModel, seed: u64, time: f64) -> Result<Option<Vec<f64>>> {
    trajectory_exponents_with(rep, model, seed, time, |_, _| {})
}

fn trajectory_exponents_with(
    rep: &MonodromyRep,
    model: &FuchsianModel,
    seed: u64,
    time: f64,
    mut on_step: impl FnMut(f64, &[f64]),
) -> Result<Option<Vec<f64>>> {
    let traj = fuchsian::geodesic_sample(model, seed, time)?;
    let n = rep.n;
    let mut q = Mat::identity(n, n);
    let mut sums = vec![0.0; n];
    let step = |g: &Mat, q: &mut Mat, sums: &mut [f64]| -> bool {
        let qr = (g.transpose() * &*q).qr();
        let r = qr.r();
        *q = qr.q();
        for k in 0..n {
            let d = r[(k, k)];
            if !d.is_finite() || d == 0.0 {
                return false;
            }
            sums[k] += d.abs().ln();
            if d < 0.0 {
                q.column_mut(k).neg_mut();
            }
        }
        true
    };
    let mut i = 0;
    let cr = &traj.crossings;
    while i < cr.len() {
        // a run of one letter is applied in powers of at most RUN_CHUNK, so that a cusp
        // excursion never hands QR a matrix of condition beyond ~RUN_CHUNK^(2n)
        let mut j = i;
        while j < cr.len() && cr[j].gen == cr[i].gen && cr[j].exp == cr[i].exp {
            j += 1;
        }
        let count = (j - i) as i32;
        let (full, rest) = (count / RUN_CHUNK, count % RUN_CHUNK);
        if full > 0 {
            let g = rep.power(cr[i].gen, cr[i].exp * RUN_CHUNK)?;
            for _ in 0..full {
                if !step(&g, &mut q, &mut sums) {
                    return Ok(None);
                }
            }
        }
        if rest > 0 && !step(&rep.power(cr[i].gen, cr[i].exp * rest)?, &mut q, &mut sums) {
            return Ok(None);
        }
        on_step(cr[j - 1].time, &sums);
        i = j;
    }
    let mut out: Vec<f64> = sums.iter().map(|s| s / time).collect();
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(Some(out))
}

/// Monte Carlo Lyapunov spectrum of the cocycle ρ over the geodesic flow: `total_time` is
/// split evenly over `n_traj` trajectories whose seeds come from `seed`.
pub fn lyapunov_mc(rep: &MonodromyRep, model: &FuchsianModel, total_time: f64, n_traj: usize, seed: u64) -> Result<LyapunovResult> {
    if !(total_time > 0.0) || !total_time.is_finite() || n_traj == 0 {
        return Err(Error::invalid("total time and trajectory count must be positive"));
    }
    check_alphabet(rep, model)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..n_traj).map(|_| rng.next_u64()).collect();
    let time = total_time / n_traj as f64;
    let runs: Vec<Result<Option<Vec<f64>>>> =
        seeds.par_iter().map(|&s| trajectory_exponents(rep, model, s, time)).collect();
    let mut per = Vec::new();
    let mut discarded = 0;
    for r in runs {
        match r? {
            Some(v) => per.push(v),
            None => discarded += 1,
        }
    }
    if per.is_empty() {
        return Err(Error::numerical("every trajectory overflowed"));
    }
    let n = rep.n;
    let m = per.len() as f64;
    let spectrum: Vec<f64> = (0..n).map(|k| per.iter().map(|v| v[k]).sum::<f64>() / m).collect();
    let stderr: Vec<f64> = (0..n)
        .map(|k| {
            if per.len() < 2 {
                return f64::NAN;
            }
            let var = per.iter().map(|v| (v[k] - spectrum[k]).powi(2)).sum::<f64>() / (m - 1.0);
            (var / m).sqrt()
        })
        .collect();
    Ok(LyapunovResult { spectrum, stderr, per_trajectory: per, trajectory_time: time, discarded })
}

/// Running estimates (t, sorted sums/t) along the first trajectory of `lyapunov_mc` with the same
/// arguments, recorded at the first crossing after each of `points` evenly spaced times.
pub fn lyapunov_series(
    rep: &MonodromyRep,
    model: &FuchsianModel,
    total_time: f64,
    n_traj: usize,
    seed: u64,
    points: usize,
) -> Result<Vec<(f64, Vec<f64>)>> {
    if !(total_time > 0.0) || !total_time.is_finite() || n_traj == 0 || points == 0 {
        return Err(Error::invalid("total time, trajectory count and point count must be positive"));
    }
    check_alphabet(rep, model)?;
    let first = ChaCha8Rng::seed_from_u64(seed).next_u64();
    let time = total_time / n_traj as f64;
    let step = time / points as f64;
    let mut next = step;
    let mut rows = Vec::new();
    trajectory_exponents_with(rep, model, first, time, |t, sums| {
        if t >= next {
            let mut est: Vec<f64> = sums.iter().map(|s| s / t).collect();
            est.sort_by(|a, b| b.total_cmp(a));
            rows.push((t, est));
            while next <= t {
                next += step;
            }
        }
    })?;
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct SumFormulaReport {
    pub lambda_sum: f64,
    pub chi: f64,
    pub rhs_over_chi: Option<f64>,
    pub abs_discrepancy: Option<f64>,
    pub rel_discrepancy: Option<f64>,
    pub status: String,
}

/// Compares λ₁ + λ₂ against (sum of degrees)/χ when the degrees are supplied.
pub fn sum_formula_report(lyap: &LyapunovResult, chi: f64, rhs_degrees: Option<f64>) -> Result<SumFormulaReport> {
    if chi == 0.0 || !chi.is_finite() {
        return Err(Error::invalid("Euler characteristic must be nonzero"));
    }
    let lambda_sum: f64 = lyap.positive_pair().iter().sum();
    let Some(rhs) = rhs_degrees else {
        return Ok(SumFormulaReport {
            lambda_sum,
            chi,
            rhs_over_chi: None,
            abs_discrepancy: None,
            rel_discrepancy: None,
            status: "not evaluated".into(),
        });
    };
    let target = rhs / chi;
    let abs = (lambda_sum - target).abs();
    Ok(SumFormulaReport {
        lambda_sum,
        chi,
        rhs_over_chi: Some(target),
        abs_discrepancy: Some(abs),
        rel_discrepancy: Some(abs / target.abs()),
        status: "evaluated".into(),
    })
}

/// The symplectic transvection x ↦ x + ω(l, x)·l, which fixes l⊥ pointwise.
pub fn transvection(l: &Vec64) -> Mat {
    Mat::identity(4, 4) + l * (l.transpose() * standard_j(4))
}

/// (l⊥ ∩ L′) mod l as a normalized vector of l⊥ orthogonal to l.
pub fn contraction_map(l: &Vec64, lp: &LagrangianPlane) -> Result<Vec64> {
    if l.len() != 4 || l.norm() == 0.0 {
        return Err(Error::invalid("line must be a nonzero 4-vector"));
    }
    let (a, b) = (symplectic::omega(l, &lp.v), -symplectic::omega(l, &lp.u));
    let s = l.norm() * lp.u.norm().max(lp.v.norm());
    if a.abs().max(b.abs()) <= 1e-12 * s || lp.contains(l) {
        return Err(Error::invalid("the line lies in the Lagrangian"));
    }
    let w = &lp.u * a + &lp.v * b;
    let lhat = l / l.norm();
    let w = &w - &lhat * lhat.dot(&w);
    if w.norm() <= 1e-12 * s {
        return Err(Error::invalid("the line lies in the Lagrangian"));
    }
    Ok(linalg::normalize_projective(&w))
}

/// span(l, c_l(L′)), the limit of Tⁿ·L′ along the photon of l.
pub fn contraction_lagrangian(l: &Vec64, lp: &LagrangianPlane) -> Result<LagrangianPlane> {
    LagrangianPlane::new(l.clone(), contraction_map(l, lp)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiberwiseUnipotent {
    pub c_p2: [[BigRational; 2]; 2],
    pub c_p3: [[BigRational; 2]; 2],
    /// c_{p₃}·c_{p₂}.
    pub product: [[BigRational; 2]; 2],
}

fn mul2(a: &[[BigRational; 2]; 2], b: &[[BigRational; 2]; 2]) -> [[BigRational; 2]; 2] {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn fiberwise_unipotent(alpha: &BigRational, beta: &BigRational) -> Result<FiberwiseUnipotent> {
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::invalid("needs alpha * beta != 0"));
    }
    let zero = BigRational::zero();
    let c_p2 = [[-alpha.clone(), beta.recip()], [-beta.clone(), zero.clone()]];
    let c_p3 = [[-alpha.recip(), zero], [beta.clone(), -alpha.clone()]];
    let product = mul2(&c_p3, &c_p2);
    Ok(FiberwiseUnipotent { c_p2, c_p3, product })
}

type QVec = Vec<BigRational>;
type IMat = Vec<Vec<BigInt>>;

fn to_integer_matrix(m: &Mat) -> Result<IMat> {
    let mut out = vec![vec![BigInt::zero(); m.ncols()]; m.nrows()];
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let x = m[(i, j)];
            if (x - x.round()).abs() > 1e-9 || x.abs() > 9.0e15 {
                return Err(Error::invalid("representation is not integral"));
            }
            out[i][j] = BigInt::from(x.round() as i64);
        }
    }
    Ok(out)
}

fn imul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

fn iidentity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn to_q(m: &IMat) -> Vec<QVec> {
    m.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

/// Row echelon form in place; returns the pivot columns.
fn echelon(rows: &mut [QVec]) -> Vec<usize> {
    let (nr, nc) = (rows.len(), rows.first().map_or(0, |r| r.len()));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        let Some(p) = (r..nr).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..nr {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nr {
            break;
        }
    }
    pivots
}

fn qrank(rows: &[QVec]) -> usize {
    echelon(&mut rows.to_vec()).len()
}

/// Basis of {x : A x = 0}.
fn qkernel(a: &[QVec]) -> Vec<QVec> {
    let nc = a.first().map_or(0, |r| r.len());
    let mut rows = a.to_vec();
    let pivots = echelon(&mut rows);
    let free: Vec<usize> = (0..nc).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); nc];
            x[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -rows[r][f].clone();
            }
            x
        })
        .collect()
}

fn qapply(m: &[QVec], v: &[BigRational]) -> QVec {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn transpose(cols: &[QVec], n: usize) -> Vec<QVec> {
    (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

fn integral_inverse(m: &IMat) -> Result<IMat> {
    let n = m.len();
    let q = to_q(m);
    let mut aug: Vec<QVec> = q
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    let piv = echelon(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return Err(Error::invalid("generator is singular"));
    }
    let mut out = iidentity(n);
    for i in 0..n {
        for j in 0..n {
            let x = &aug[i][n + j];
            if !x.is_integer() {
                return Err(Error::invalid("generator inverse is not integral"));
            }
            out[i][j] = x.to_integer();
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum RationalTarget {
    Vector(QVec),
    /// Spanned by two rational vectors.
    Lagrangian(QVec, QVec),
}

#[derive(Clone, Debug, PartialEq)]
pub enum LimitClass {
    CuspWitness(Word),
    NoWitnessWithin(usize),
}

/// Is `target` fixed by u in the sense of the cusp dichotomy: a vector in ker(u−id)∩im(u−id),
/// or a Lagrangian containing a nonzero such vector.
fn witnesses(u: &IMat, target: &RationalTarget) -> bool {
    let n = u.len();
    let mut nil = to_q(u);
    for (i, row) in nil.iter_mut().enumerate() {
        row[i] -= BigRational::one();
    }
    if nil.iter().all(|r| r.iter().all(|x| x.is_zero())) {
        return false;
    }
    let mut p = nil.clone();
    for _ in 1..n {
        let cols = transpose(&p, n);
        p = transpose(&cols.iter().map(|c| qapply(&nil, c)).collect::<Vec<_>>(), n);
    }
    if !p.iter().all(|r| r.iter().all(|x| x.is_zero())) {
        return false;
    }
    let image_cols = transpose(&nil, n);
    let rank_im = qrank(&image_cols);
    let in_image = |vs: &[QVec]| {
        let mut all = image_cols.clone();
        all.extend(vs.iter().cloned());
        rank_im + qrank(vs) - qrank(&all)
    };
    match target {
        RationalTarget::Vector(v) => qapply(&nil, v).iter().all(|x| x.is_zero()) && in_image(&[v.clone()]) == 1,
        RationalTarget::Lagrangian(a, b) => {
            // (s, t) with (u − id)(s a + t b) = 0
            let na = qapply(&nil, a);
            let nb = qapply(&nil, b);
            let sys: Vec<QVec> = (0..n).map(|i| vec![na[i].clone(), nb[i].clone()]).collect();
            let fixed: Vec<QVec> = qkernel(&sys)
                .iter()
                .map(|st| a.iter().zip(b).map(|(x, y)| &st[0] * x + &st[1] * y).collect())
                .collect();
            !fixed.is_empty() && in_image(&fixed) > 0
        }
    }
}

/// Breadth-first search for a unipotent witness over words in h0, h1, h∞ of length ≤ L.
pub fn rational_limit_classify(rep: &MonodromyRep, target: &RationalTarget, l: usize) -> Result<LimitClass> {
    let n = rep.n;
    match target {
        RationalTarget::Vector(v) if v.len() != n || v.iter().all(|x| x.is_zero()) => {
            return Err(Error::invalid("target must be a nonzero vector of the right size"))
        }
        RationalTarget::Lagrangian(a, b) if a.len() != n || b.len() != n || qrank(&[a.clone(), b.clone()]) != 2 => {
            return Err(Error::invalid("target plane needs two independent vectors of the right size"))
        }
        _ => {}
    }
    let mut letters: Vec<(Syllable, IMat, (i32, i32))> = Vec::new();
    for g in [Gen::Zero, Gen::One, Gen::Inf] {
        let m = to_integer_matrix(rep.gen(g))?;
        let range = exponent_range(matrix_order(rep.gen(g), true));
        let inv = integral_inverse(&m)?;
        letters.push((Syllable { gen: g, exp: 1 }, m, range));
        letters.push((Syllable { gen: g, exp: -1 }, inv, range));
    }
    let root = Syllable { gen: Gen::One, exp: 0 };
    let mut seen: HashSet<IMat> = HashSet::new();
    seen.insert(iidentity(n));
    let mut frontier: Vec<(IMat, Word, Syllable)> = vec![(iidentity(n), Word::identity(), root)];
    for _ in 1..=l {
        let mut next = Vec::new();
        for (m, w, head) in &frontier {
            for (letter, g, (lo, hi)) in &letters {
                let new_head = if head.gen == letter.gen && head.exp != 0 {
                    if head.exp.signum() != letter.exp {
                        continue;
                    }
                    Syllable { gen: letter.gen, exp: head.exp + letter.exp }
                } else {
                    *letter
                };
                if new_head.exp < *lo || new_head.exp > *hi {
                    continue;
                }
                let prod = imul(g, m);
                if !seen.insert(prod.clone()) {
                    continue;
                }
                let word = Word::letter(letter.gen, letter.exp).mul(w);
                if witnesses(&prod, target) {
                    return Ok(LimitClass::CuspWitness(word));
                }
                next.push((prod, word, new_head));
            }
        }
        frontier = next;
    }
    Ok(LimitClass::NoWitnessWithin(l))
}

/// Does the integral matrix of `word` witness `target`?
pub fn verify_witness(rep: &MonodromyRep, word: &Word, target: &RationalTarget) -> Result<bool> {
    let m = rep.eval(word)?;
    Ok(witnesses(&to_integer_matrix(&m)?, target))
}

/// Rational vector from an integral float vector.
pub fn rational_vector(v: &Vec64) -> Result<QVec> {
    v.iter()
        .map(|&x| {
            if (x - x.round()).abs() > 1e-9 || x.abs() > 9.0e15 {
                Err(Error::invalid("vector is not integral"))
            } else {
                Ok(BigRational::from_integer(BigInt::from(x.round() as i64)))
            }
        })
        .collect()
}

/// Limit data from a ball: unipotent elements give their exact cusp datum, elements with
/// α₁-gap ≥ `gap_min` their own (k₊, [μ]).
pub fn ball_limit_data(rep: &MonodromyRep, l: usize, gap_min: f64) -> Result<Vec<LimitDatum>> {
    if rep.n != 4 {
        return Err(Error::invalid("limit data are defined for rank 4"));
    }
    let ball = enumerate_ball(rep, l);
    let per: Vec<Result<Option<LimitDatum>>> = ball.matrices[1..]
        .par_iter()
        .map(|m| {
            if lie::is_unipotent(&unsigned(m), 1e-9) {
                return LimitDatum::from_unipotent(&unsigned(m)).map(Some);
            }
            if lie::alpha1_gap(m)? >= gap_min {
                return LimitDatum::from_element(m).map(Some);
            }
            Ok(None)
        })
        .collect();
    let mut data = Vec::new();
    for d in per {
        if let Some(d) = d? {
            data.push(d);
        }
    }
    Ok(lie::dedup_limit_data(data, 1e-3))
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalityOptions {
    /// Ball radius used for the limit-set samples.
    pub sample_len: usize,
    pub gap_min: f64,
    /// Points per photon.
    pub photon_steps: usize,
}

impl Default for MinimalityOptions {
    fn default() -> Self {
        MinimalityOptions { sample_len: 6, gap_min: 2.0, photon_steps: 8 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalityReport {
    pub coverage: f64,
    pub orbit_size: usize,
    pub samples: usize,
    pub radius: f64,
}

struct Grid {
    h: f64,
    cells: HashMap<Vec<i64>, Vec<usize>>,
    points: Vec<Vec64>,
}

impl Grid {
    fn new(points: Vec<Vec64>, h: f64) -> Self {
        let mut cells: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            for s in [1.0, -1.0] {
                cells.entry(Self::cell(&(p * s), h)).or_default().push(i);
            }
        }
        Grid { h, cells, points }
    }

    fn cell(p: &Vec64, h: f64) -> Vec<i64> {
        p.iter().map(|x| (x / h).floor() as i64).collect()
    }

    fn any_within(&self, q: &Vec64, radius: f64) -> bool {
        let base = Self::cell(q, self.h);
        let dim = base.len();
        let mut offs = vec![-1i64; dim];
        loop {
            let key: Vec<i64> = base.iter().zip(&offs).map(|(b, o)| b + o).collect();
            if let Some(ids) = self.cells.get(&key) {
                if ids.iter().any(|&i| linalg::projective_distance(&self.points[i], q) <= radius) {
                    return true;
                }
            }
            let mut k = 0;
            while k < dim && offs[k] == 1 {
                offs[k] = -1;
                k += 1;
            }
            if k == dim {
                return false;
            }
            offs[k] += 1;
        }
    }
}

/// Fraction of photon samples of the Lagrangian limit set within chordal `radius` of the
/// orbit of a cusp Lagrangian under the ball of radius `depth`.
pub fn minimality_scan(rep: &MonodromyRep, depth: usize, radius: f64, opts: &MinimalityOptions) -> Result<MinimalityReport> {
    if !(radius > 0.0 && radius < 1.0) || opts.photon_steps == 0 {
        return Err(Error::invalid("radius must lie in (0, 1) and photons need at least one point"));
    }
    let (srep, _) = symplectic::standardize(rep)?;
    let prox = lie::is_log_proximal(&srep.h1)?;
    let Some(line) = prox.line.filter(|_| prox.proximal) else {
        return Err(Error::invalid("h1 is not log-proximal"));
    };
    let cusp = symplectic::photon_lagrangian(&line, 0.0)?;
    let p0 = symplectic::pluecker(&cusp);
    let ball = enumerate_ball(&srep, depth);
    let orbit: Vec<Vec64> = ball
        .matrices
        .par_iter()
        .map(|g| linalg::normalize_projective(&(symplectic::reduced_exterior_square_unchecked(g) * &p0)))
        .collect();
    let samples = limit_curve_samples(&srep, opts.sample_len, opts.gap_min)?;
    let mut targets = Vec::new();
    for s in &samples {
        for j in 0..opts.photon_steps {
            let theta = std::f64::consts::PI * j as f64 / opts.photon_steps as f64;
            targets.push(symplectic::pluecker(&symplectic::photon_lagrangian(&s.point, theta)?));
        }
    }
    if targets.is_empty() {
        return Err(Error::invalid("no limit-set samples; lower gap_min or raise sample_len"));
    }
    let orbit_size = orbit.len();
    let grid = Grid::new(orbit, 1.01 * radius);
    let hits = targets.par_iter().filter(|t| grid.any_within(t, radius)).count();
    Ok(MinimalityReport { coverage: hits as f64 / targets.len() as f64, orbit_size, samples: targets.len(), radius })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuchsian::{orbifold_signature, triangle_group, veronese, OrderConvention};
    use crate::hyperparams::HypergeomParams;

    fn quintic() -> MonodromyRep {
        MonodromyRep::from_params(&HypergeomParams::mirror_quintic()).unwrap()
    }

    fn unit(i: usize) -> Vec64 {
        let mut v = Vec64::zeros(4);
        v[i] = 1.0;
        v
    }

    fn q(v: &[i64]) -> QVec {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    fn r(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    fn modular() -> FuchsianModel {
        triangle_group(&"2,3,inf".parse().unwrap()).unwrap()
    }

    #[test]
    fn ball_sizes() {
        let rep = quintic();
        let b0 = enumerate_ball(&rep, 0);
        assert_eq!(b0.len(), 1);
        assert!((&b0.matrices[0] - Mat::identity(4, 4)).norm() == 0.0);
        let b1 = enumerate_ball(&rep, 1);
        assert_eq!(b1.len(), 5);
        assert_eq!(b1.sphere_size(1), 4);
        let mut last = 0;
        for l in 0..6 {
            let b = enumerate_ball(&rep, l);
            assert!(b.len() > last);
            last = b.len();
            for i in 0..b.len() {
                assert!((rep.eval(&b.word(i)).unwrap() - &b.matrices[i]).norm() < 1e-9 * b.matrices[i].norm());
            }
        }
        // h∞ has order 5: h∞^2 and h∞^-2 appear, h∞^3 does not
        let words: Vec<String> = (0..enumerate_ball(&rep, 3).len()).map(|i| enumerate_ball(&rep, 3).word(i).to_string()).collect();
        assert!(words.iter().any(|w| w == "hinf^2"));
        assert!(words.iter().any(|w| w == "hinf^-2"));
        assert!(!words.iter().any(|w| w.contains("hinf^3") || w.contains("hinf^-3")));
    }

    #[test]
    fn elliptic_powers_are_truncated() {
        let f = modular();
        // h0 has projective order 2, so only h0 itself occurs; h∞ is parabolic
        let b = enumerate_ball(&f.rep(), 6);
        for i in 1..b.len() {
            let w = b.word(i).to_string();
            assert!(!w.contains("h0^"), "{w}");
        }
        assert_eq!(b.sphere_size(1), 3);
        assert!((0..b.len()).any(|i| b.word(i).to_string() == "hinf^3"));
    }

    #[test]
    fn cusp_sample_of_h1() {
        let rep = quintic();
        let c = cusp_line(&rep.h1).unwrap();
        assert!((&rep.h1 * &c - &c).norm() < 1e-12);
        assert!(cusp_line(&Mat::identity(4, 4)).is_none());
        assert!(cusp_line(&rep.hinf).is_none());
        let samples = limit_curve_samples(&rep, 4, 2.0).unwrap();
        assert!(samples.iter().any(|s| s.kind == SampleKind::Cusp));
        for s in &samples {
            assert!((s.point.norm() - 1.0).abs() < 1e-12);
            if s.kind == SampleKind::Attracting {
                assert!(s.gap >= 2.0);
            }
        }
        assert!(limit_curve_samples(&rep, 2, 0.0).is_err());
    }

    #[test]
    fn rotations_give_no_samples() {
        let (c, s) = (0.3f64.cos(), 0.3f64.sin());
        let rot = Mat::from_row_slice(2, 2, &[c, -s, s, c]);
        let m = fuchsian::symmetric_power(&rot, 3);
        let ball = WordBall {
            labels: vec![Gen::Zero],
            max_len: 1,
            matrices: vec![Mat::identity(4, 4), m],
            nodes: vec![
                Node { parent: 0, letter: Syllable { gen: Gen::One, exp: 0 }, head: Syllable { gen: Gen::One, exp: 0 }, len: 0 },
                Node { parent: 0, letter: Syllable { gen: Gen::Zero, exp: 1 }, head: Syllable { gen: Gen::Zero, exp: 1 }, len: 1 },
            ],
        };
        assert!(samples_from_ball(&ball, 1e-6).unwrap().is_empty());
    }

    #[test]
    fn veronese_samples() {
        let f = modular();
        let s3 = f.symmetric_power_rep(3);
        let (ball, comp) = enumerate_ball_with(&s3, 16, &[&f.rep()]);
        let mut checked = 0;
        for i in 0..ball.len() {
            let c = lie::kak(&ball.matrices[i]).unwrap();
            if c.mu[0] - c.mu[1] < 8.0 {
                continue;
            }
            let top = lie::kak(&comp[i][0]).unwrap().k_minus.column(0).into_owned();
            let v = Vec64::from_vec(veronese(top[0], top[1], 3));
            assert!(linalg::projective_distance(&v, &c.k_minus.column(0).into_owned()) < 1e-6);
            checked += 1;
        }
        assert!(checked > 0);
    }

    #[test]
    fn attracting_point_of_square() {
        let rep = quintic();
        let (s, _) = symplectic::standardize(&rep).unwrap();
        let g = s.eval(&"h0 hinf h0 hinf^-1".parse().unwrap()).unwrap();
        let top = |m: &Mat| lie::kak(m).unwrap().k_minus.column(0).into_owned();
        let g8 = linalg::mat_pow(&g, 8);
        assert!(lie::alpha1_gap(&g8).unwrap() > 10.0);
        assert!(linalg::projective_distance(&top(&g8), &top(&(&g8 * &g8))) < 1e-8);
    }

    #[test]
    fn refinement_keeps_samples() {
        let rep = quintic();
        let (s, _) = symplectic::standardize(&rep).unwrap();
        let a = limit_curve_samples(&s, 4, 2.0).unwrap();
        let b = limit_curve_samples(&s, 6, 2.0).unwrap();
        for x in &a {
            let d = b.iter().map(|y| linalg::projective_distance(&x.point, &y.point)).fold(f64::INFINITY, f64::min);
            assert!(d <= 10.0 * (-x.gap).exp());
        }
    }

    #[test]
    fn support_line_of_synthetic_scatter() {
        let pts: Vec<ScatterPoint> = (0..40)
            .map(|k| {
                let x = k as f64 * 0.5;
                ScatterPoint { dist: x, gap: 0.5 * x - 1.0 + (k % 3) as f64, word: String::new() }
            })
            .collect();
        let (eps, c) = support_line(&pts);
        assert!((eps - 0.5).abs() < 1e-12);
        assert!((c - 1.0).abs() < 1e-12);
        assert_eq!(support_line(&[]), (0.0, 0.0));
    }

    #[test]
    fn certificates() {
        let f = modular();
        let sym = anosov_certificate(&f.symmetric_power_rep(3), &f, 10).unwrap();
        assert!(sym.epsilon > 0.9 && sym.epsilon < 1.1, "{}", sym.epsilon);
        let p = HypergeomParams::mirror_quintic();
        let model = triangle_group(&orbifold_signature(&p, OrderConvention::Projective).unwrap()).unwrap();
        let quint = anosov_certificate(&quintic(), &model, 10).unwrap();
        assert!(quint.epsilon >= 0.05, "{}", quint.epsilon);
        assert!(anosov_certificate(&quintic(), &f, 2).is_err());
    }

    #[test]
    fn lyapunov_of_fuchsian_and_sym3() {
        let f = modular();
        let one = lyapunov_mc(&f.rep(), &f, 2.0e4, 16, 3).unwrap();
        assert!((one.spectrum[0] - 1.0).abs() < 0.03, "{:?}", one.spectrum);
        let three = lyapunov_mc(&f.symmetric_power_rep(3), &f, 2.0e4, 16, 3).unwrap();
        let pair = three.positive_pair();
        let (l1, l2) = (pair[0], pair[1]);
        assert!((l1 - 3.0).abs() < 0.08 && (l2 - 1.0).abs() < 0.08, "{l1} {l2}");
        assert!((three.spectrum[0] + three.spectrum[3]).abs() < 1e-6);
        let again = lyapunov_mc(&f.symmetric_power_rep(3), &f, 2.0e4, 16, 3).unwrap();
        assert_eq!(three.spectrum, again.spectrum);

        let rep = sum_formula_report(&three, -1.0 / 6.0, Some(-4.0 / 6.0)).unwrap();
        assert!(rep.abs_discrepancy.unwrap() < 0.1);
        assert_eq!(sum_formula_report(&three, 1.0, None).unwrap().status, "not evaluated");
        assert!(sum_formula_report(&three, 0.0, Some(1.0)).is_err());
        assert!(lyapunov_mc(&f.rep(), &f, 0.0, 4, 1).is_err());
    }

    #[test]
    fn contraction_examples() {
        let (e1, e2, f1, f2) = (unit(0), unit(1), unit(2), unit(3));
        let c = contraction_map(&e1, &LagrangianPlane::new(f1.clone(), f2.clone()).unwrap()).unwrap();
        assert!(linalg::projective_distance(&c, &f2) < 1e-15);
        assert!(contraction_map(&e1, &LagrangianPlane::new(e1.clone(), e2.clone()).unwrap()).is_err());
    }

    #[test]
    fn unipotent_iterates_contract_at_rate_one_over_n() {
        let l = Vec64::from_vec(vec![1.0, 2.0, -1.0, 0.5]);
        let lp = symplectic::photon_lagrangian(&Vec64::from_vec(vec![0.3, -1.0, 0.2, 0.7]), 0.9).unwrap();
        let limit = symplectic::pluecker(&contraction_lagrangian(&l, &lp).unwrap());
        let t = transvection(&l);
        let mut scaled = Vec::new();
        for n in [10u64, 100, 1000] {
            let tn = linalg::mat_pow(&t, n);
            let img = LagrangianPlane::new(&tn * &lp.u, &tn * &lp.v).unwrap();
            scaled.push(n as f64 * linalg::projective_distance(&symplectic::pluecker(&img), &limit));
        }
        assert!(scaled.iter().all(|s| *s > 1e-3 && *s < 1e3), "{scaled:?}");
        assert!((scaled[2] / scaled[1] - 1.0).abs() < 0.1);
    }

    #[test]
    fn fiberwise_products() {
        let one = BigRational::one();
        let p = fiberwise_unipotent(&one, &one).unwrap().product;
        assert_eq!(p, [[one.clone(), -one.clone()], [BigRational::zero(), one.clone()]]);
        let p = fiberwise_unipotent(&r(2, 1), &r(3, 1)).unwrap().product;
        assert_eq!(p[0][1], r(-1, 6));
        assert!(fiberwise_unipotent(&BigRational::zero(), &one).is_err());
    }

    #[test]
    fn rational_witnesses() {
        let rep = quintic();
        let c = cusp_line(&rep.h1).unwrap();
        let k = c.iter().cloned().filter(|x| x.abs() > 1e-9).fold(f64::INFINITY, |a, b| if b.abs() < a.abs() { b } else { a });
        let c = (c / k).map(|x| x.round());
        let v = RationalTarget::Vector(rational_vector(&c).unwrap());
        assert_eq!(rational_limit_classify(&rep, &v, 1).unwrap(), LimitClass::CuspWitness("h1".parse().unwrap()));
        let moved = RationalTarget::Vector(rational_vector(&(&rep.h0 * &c)).unwrap());
        assert!(verify_witness(&rep, &"h0 h1 h0^-1".parse().unwrap(), &moved).unwrap());
        match rational_limit_classify(&rep, &moved, 3).unwrap() {
            LimitClass::CuspWitness(w) => assert!(verify_witness(&rep, &w, &moved).unwrap()),
            other => panic!("{other:?}"),
        }
        let generic = RationalTarget::Vector(q(&[3, -7, 2, 5]));
        assert_eq!(rational_limit_classify(&rep, &generic, 4).unwrap(), LimitClass::NoWitnessWithin(4));
        assert!(rational_limit_classify(&rep, &RationalTarget::Vector(q(&[0, 0, 0, 0])), 2).is_err());
    }

    #[test]
    fn rational_lagrangian_witness() {
        let rep = quintic();
        let mut nil = to_q(&to_integer_matrix(&rep.h1).unwrap());
        for (i, row) in nil.iter_mut().enumerate() {
            row[i] -= BigRational::one();
        }
        // ker(h1 − id) is the ω-orthogonal of the cusp vector, so any two independent vectors in it
        // containing the cusp vector span a Lagrangian
        let ker = qkernel(&nil);
        assert_eq!(ker.len(), 3);
        let image: Vec<QVec> = transpose(&nil, 4).into_iter().filter(|c| c.iter().any(|x| !x.is_zero())).collect();
        let c = image[0].clone();
        let other = ker.iter().find(|k| qrank(&[c.clone(), (*k).clone()]) == 2).unwrap().clone();
        let plane = RationalTarget::Lagrangian(c, other);
        assert_eq!(rational_limit_classify(&rep, &plane, 1).unwrap(), LimitClass::CuspWitness("h1".parse().unwrap()));
    }

    #[test]
    fn mum_lagrangian_is_not_stable() {
        let (s, _) = symplectic::standardize(&quintic()).unwrap();
        let nil = linalg::log_unipotent(&s.h0);
        let w = lie::weight_filtration(&nil).unwrap().w(-1);
        let mum = symplectic::pluecker(&LagrangianPlane::from_basis(&w).unwrap());
        let data = ball_limit_data(&s, 4, 2.0).unwrap();
        assert_eq!(lie::stable_point_test(&mum, &data, lie::Sp4Rep::Quadric).unwrap(), lie::Stability::Unstable);
        let generic = symplectic::pluecker(&symplectic::photon_lagrangian(&Vec64::from_vec(vec![0.3, -0.2, 0.7, 0.1]), 0.4).unwrap());
        assert_eq!(lie::stable_point_test(&generic, &data, lie::Sp4Rep::Quadric).unwrap(), lie::Stability::Stable);
    }

    #[test]
    fn minimality_grows_with_depth() {
        let rep = quintic();
        let opts = MinimalityOptions::default();
        let r0 = minimality_scan(&rep, 0, 0.05, &opts).unwrap();
        assert_eq!(r0.orbit_size, 1);
        let mut last = r0.coverage;
        for d in [2, 4, 6] {
            let r = minimality_scan(&rep, d, 0.05, &opts).unwrap();
            assert!(r.coverage >= last);
            last = r.coverage;
        }
        assert!(last > 0.3);
        assert!(minimality_scan(&rep, 2, 0.0, &opts).is_err());
    }
}
