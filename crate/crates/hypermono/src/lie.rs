//! Cartan projections, weight filtrations of nilpotents, sl2-triples,
//! log-proximality, strictly adapted norms and the stability test.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat, Vec64};
use crate::symplectic;

#[derive(Clone, Debug)]
pub struct CartanData {
    pub k_minus: Mat,
    /// Log singular values, nonincreasing.
    pub mu: Vec<f64>,
    pub k_plus: Mat,
}

impl CartanData {
    pub fn reconstruct(&self) -> Mat {
        let d = Mat::from_diagonal(&DVector::from_iterator(self.mu.len(), self.mu.iter().map(|m| m.exp())));
        &self.k_minus * d * &self.k_plus
    }
}

/// g = k₋·exp(diag μ)·k₊ by SVD. Each column of k₋ has its first significant entry positive.
pub fn kak(g: &Mat) -> Result<CartanData> {
    if !g.is_square() {
        return Err(Error::invalid("kak needs a square matrix"));
    }
    let s = linalg::svd(g)?;
    let sv = &s.singular_values;
    let top = sv.max();
    if top == 0.0 || !(sv.min() > 0.0) {
        return Err(Error::invalid("matrix is singular"));
    }
    let mut u = s.u;
    let mut vt = s.v_t;
    for j in 0..u.ncols() {
        let col = u.column(j).into_owned();
        if let Some(first) = col.iter().find(|x| x.abs() > 1e-12) {
            if *first < 0.0 {
                u.column_mut(j).neg_mut();
                vt.row_mut(j).neg_mut();
            }
        }
    }
    Ok(CartanData { k_minus: u, mu: sv.iter().map(|x| x.ln()).collect(), k_plus: vt })
}

/// μ₁ − μ₂.
pub fn alpha1_gap(g: &Mat) -> Result<f64> {
    let c = kak(g)?;
    if c.mu.len() < 2 {
        return Ok(0.0);
    }
    Ok(c.mu[0] - c.mu[1])
}

/// Weight filtration W_{−d} ⊂ … ⊂ W_d of a nilpotent endomorphism.
#[derive(Clone, Debug)]
pub struct WeightFiltration {
    pub d: usize,
    n: usize,
    /// Orthonormal bases of W_{−d}, …, W_d.
    spaces: Vec<Mat>,
}

impl WeightFiltration {
    pub fn w(&self, i: i64) -> Mat {
        let d = self.d as i64;
        if i < -d {
            Mat::zeros(self.n, 0)
        } else if i >= d {
            Mat::identity(self.n, self.n)
        } else {
            self.spaces[(i + d) as usize].clone()
        }
    }

    /// (level, dim W_level) for every level from −d to d.
    pub fn dims(&self) -> Vec<(i64, usize)> {
        let d = self.d as i64;
        (-d..=d).map(|i| (i, self.w(i).ncols())).collect()
    }

    /// Dimension of W_i / W_{i−1}.
    pub fn graded_dim(&self, i: i64) -> usize {
        self.w(i).ncols() - self.w(i - 1).ncols()
    }
}

fn kernel_power(nil: &Mat, j: usize, scale: f64) -> Mat {
    let n = nil.nrows();
    if j == 0 {
        return Mat::zeros(n, 0);
    }
    let p = linalg::mat_pow(nil, j as u64);
    linalg::kernel_abs(&p, 1e-9 * scale.powi(j as i32))
}

/// Jordan chains (top, N·top, …) of a nilpotent matrix, longest first.
fn jordan_chains(nil: &Mat) -> Result<Vec<Vec<Vec64>>> {
    let n = nil.nrows();
    let scale = nil.norm().max(1e-300);
    let mut kers: Vec<Mat> = (0..=n + 1).map(|j| kernel_power(nil, j, scale)).collect();
    for k in kers.iter_mut().skip(n) {
        *k = Mat::identity(n, n);
    }
    let mut chains = Vec::new();
    for m in (1..=n).rev() {
        let image = nil * &kers[m + 1];
        let below = linalg::orth(&linalg::hstack(&kers[m - 1], &image), 1e-10);
        let tops = linalg::complement_in(&below, &kers[m], 1e-6);
        for t in tops.column_iter() {
            let mut chain = vec![t.into_owned()];
            for _ in 1..m {
                let next = nil * chain.last().expect("nonempty chain");
                chain.push(next);
            }
            chains.push(chain);
        }
    }
    let total: usize = chains.iter().map(|c| c.len()).sum();
    if total != n {
        return Err(Error::numerical(format!("Jordan chains span {total} of {n} dimensions")));
    }
    Ok(chains)
}

fn commutator_op(a: &Mat) -> Mat {
    // vec(AX − XA) = (I⊗A − Aᵀ⊗I) vec(X)
    let n = a.nrows();
    let id = Mat::identity(n, n);
    id.kronecker(a) - a.transpose().kronecker(&id)
}

fn vec_of(m: &Mat) -> Vec64 {
    Vec64::from_column_slice(m.as_slice())
}

fn unvec(v: &Vec64, n: usize) -> Mat {
    Mat::from_column_slice(n, n, v.as_slice())
}

fn lstsq(a: &Mat, b: &Vec64) -> Result<Vec64> {
    let s = linalg::svd(a)?;
    Ok(s.solve(b, 1e-12 * s.singular_values.max()))
}

/// Residual of the sl2 relations [Y,N] = −2N, [Y,N⁺] = 2N⁺, [N⁺,N] = Y, each relative.
pub fn sl2_residual(y: &Mat, nil: &Mat, nplus: &Mat) -> f64 {
    let r1 = (y * nil - nil * y + nil * 2.0).norm() / nil.norm();
    let r2 = (y * nplus - nplus * y - nplus * 2.0).norm() / nplus.norm();
    let r3 = (nplus * nil - nil * nplus - y).norm() / y.norm();
    r1.max(r2).max(r3)
}

/// An sl2-triple (Y, N⁺) through N with [Y,N] = −2N, [Y,N⁺] = 2N⁺, [N⁺,N] = Y.
pub fn jacobson_morozov(nil: &Mat) -> Result<(Mat, Mat)> {
    let n = nil.nrows();
    if !nil.is_square() {
        return Err(Error::invalid("nilpotent must be square"));
    }
    if nil.norm() == 0.0 || linalg::nilpotency_order(nil, 1e-12) == 0 {
        return Err(Error::invalid("N is zero"));
    }
    if !linalg::is_nilpotent(nil, 1e-9) {
        return Err(Error::invalid("matrix is not nilpotent"));
    }
    let chains = jordan_chains(nil)?;
    let mut p = Mat::zeros(n, n);
    let mut weights = vec![0.0; n];
    let mut raise = Mat::zeros(n, n);
    let mut col = 0;
    for chain in &chains {
        let m = chain.len();
        for (j, v) in chain.iter().enumerate() {
            p.set_column(col + j, v);
            weights[col + j] = (m as f64 - 1.0) - 2.0 * j as f64;
            if j > 0 {
                raise[(col + j - 1, col + j)] = (j * (m - j)) as f64;
            }
        }
        col += m;
    }
    let pinv = p.clone().try_inverse().ok_or_else(|| Error::numerical("singular Jordan basis"))?;
    let mut y = &p * Mat::from_diagonal(&DVector::from_vec(weights)) * &pinv;
    let mut x = &p * raise * &pinv;

    // alternating least squares on the two bilinear blocks
    let id = Mat::identity(n * n, n * n);
    let ad_n = commutator_op(nil);
    for _ in 0..20 {
        if sl2_residual(&y, nil, &x) < 1e-13 {
            break;
        }
        // Y given N⁺: [Y,N] = −2N, [Y,N⁺] = 2N⁺, Y = [N⁺,N]
        let ad_x = commutator_op(&x);
        let a = linalg::vstack(&linalg::vstack(&(-&ad_n), &(-&ad_x)), &id);
        let b = {
            let mut b = Vec64::zeros(3 * n * n);
            b.rows_mut(0, n * n).copy_from(&(vec_of(nil) * -2.0));
            b.rows_mut(n * n, n * n).copy_from(&(vec_of(&x) * 2.0));
            b.rows_mut(2 * n * n, n * n).copy_from(&vec_of(&(&x * nil - nil * &x)));
            b
        };
        y = unvec(&lstsq(&a, &b)?, n);
        // N⁺ given Y: [Y,N⁺] = 2N⁺, [N⁺,N] = Y
        let ad_y = commutator_op(&y);
        let a = linalg::vstack(&(ad_y - &id * 2.0), &(-&ad_n));
        let mut b = Vec64::zeros(2 * n * n);
        b.rows_mut(n * n, n * n).copy_from(&vec_of(&y));
        x = unvec(&lstsq(&a, &b)?, n);
    }
    let res = sl2_residual(&y, nil, &x);
    if !(res <= 1e-8) {
        return Err(Error::numerical(format!("sl2 solver did not converge (residual {res:.3e})")));
    }
    Ok((y, x))
}

/// Distinct integer eigenvalues of a semisimple grading element.
fn integer_spectrum(y: &Mat) -> Result<Vec<i64>> {
    let n = y.nrows() as i64;
    let mut out = Vec::new();
    let mut total = 0;
    for k in -n..=n {
        let dim = eigenspace(y, k).ncols();
        if dim > 0 {
            out.push(k);
            total += dim;
        }
    }
    if total != y.nrows() {
        return Err(Error::numerical("grading element is not diagonalizable over the integers"));
    }
    Ok(out)
}

fn eigenspace(y: &Mat, k: i64) -> Mat {
    let n = y.nrows();
    let shifted = y - Mat::identity(n, n) * k as f64;
    linalg::kernel_abs(&shifted, 1e-6 * y.norm().max(1.0))
}

/// W_i = ⊕_{j ≤ i} ker(Y − j) for the grading of a Jacobson–Morozov triple.
pub fn weight_filtration(nil: &Mat) -> Result<WeightFiltration> {
    let n = nil.nrows();
    if !nil.is_square() || !linalg::is_nilpotent(nil, 1e-9) {
        return Err(Error::invalid("weight filtration needs a nilpotent matrix"));
    }
    let d = linalg::nilpotency_order(nil, 1e-12);
    if d == 0 {
        return Ok(WeightFiltration { d: 0, n, spaces: vec![Mat::identity(n, n)] });
    }
    let (y, _) = jacobson_morozov(nil)?;
    let spec = integer_spectrum(&y)?;
    let di = d as i64;
    let mut spaces = Vec::with_capacity(2 * d + 1);
    let mut acc = Mat::zeros(n, 0);
    for i in -di..=di {
        if spec.contains(&i) {
            acc = linalg::orth(&linalg::hstack(&acc, &eigenspace(&y, i)), 1e-10);
        }
        spaces.push(acc.clone());
    }
    if acc.ncols() != n {
        return Err(Error::numerical("grading eigenspaces do not span"));
    }
    Ok(WeightFiltration { d, n, spaces })
}

/// Checks N(W_i) ⊂ W_{i−2}, N^i: Gr_i ≅ Gr_{−i}, N^d ≠ 0 and N^{d+1} = 0.
pub fn filtration_axioms_hold(nil: &Mat, wf: &WeightFiltration) -> bool {
    let d = wf.d as i64;
    let scale = nil.norm().max(1.0);
    let order = linalg::nilpotency_order(nil, 1e-12);
    if order != wf.d {
        return false;
    }
    for i in -d..=d {
        let target = wf.w(i - 2);
        let image = nil * wf.w(i);
        let outside = &image - &target * (target.transpose() * &image);
        if outside.norm() > 1e-8 * scale {
            return false;
        }
    }
    for i in 0..=d {
        if wf.graded_dim(i) != wf.graded_dim(-i) {
            return false;
        }
        // N^i(W_i) + W_{−i−1} must fill W_{−i}
        let ni = linalg::mat_pow(nil, i as u64);
        let span = linalg::hstack(&(ni * wf.w(i)), &wf.w(-i - 1));
        let r = if span.ncols() == 0 { 0 } else { linalg::rank_abs(&span, 1e-8 * scale.powi(i as i32)) };
        if r != wf.w(-i).ncols() {
            return false;
        }
    }
    true
}

/// Kernel/image description of the weight filtration, independent of the sl2 route:
/// W_k = Σ_{j ≥ max(0,−k)} ker N^{j+k+1} ∩ im N^j.
pub fn weight_filtration_by_kernels(nil: &Mat) -> Result<WeightFiltration> {
    let n = nil.nrows();
    if !linalg::is_nilpotent(nil, 1e-9) {
        return Err(Error::invalid("weight filtration needs a nilpotent matrix"));
    }
    let d = linalg::nilpotency_order(nil, 1e-12);
    let scale = nil.norm().max(1e-300);
    let di = d as i64;
    let image = |j: usize| -> Mat {
        if j == 0 {
            Mat::identity(n, n)
        } else {
            linalg::orth(&linalg::mat_pow(nil, j as u64), 1e-9)
        }
    };
    let kernel = |j: usize| -> Mat { if j > d { Mat::identity(n, n) } else { kernel_power(nil, j, scale) } };
    let mut spaces = Vec::new();
    for k in -di..=di {
        let mut acc = Mat::zeros(n, 0);
        for j in (-k).max(0)..=di {
            let kk = (j + k + 1) as usize;
            let piece = linalg::intersect(&kernel(kk), &image(j as usize), 1e-9);
            acc = linalg::orth(&linalg::hstack(&acc, &piece), 1e-9);
        }
        spaces.push(acc);
    }
    Ok(WeightFiltration { d, n, spaces })
}

#[derive(Clone, Debug)]
pub struct LogProximality {
    pub proximal: bool,
    pub d: usize,
    /// W_{−d} when proximal.
    pub line: Option<Vec64>,
    /// W_{d−1} when proximal (orthonormal basis).
    pub hyperplane: Option<Mat>,
}

/// Characteristic polynomial (t − 1)ⁿ to `tol` relative to ‖t‖ᵏ in degree k, and t − id nilpotent.
pub fn is_unipotent(t: &Mat, tol: f64) -> bool {
    let n = t.nrows();
    if !t.is_square() {
        return false;
    }
    let scale = t.norm().max(1.0);
    let mut binom = 1.0;
    for (k, c) in linalg::char_poly(t).iter().enumerate() {
        let k = k + 1;
        binom = binom * (n + 1 - k) as f64 / k as f64;
        let expected = if k % 2 == 1 { -binom } else { binom };
        if (c - expected).abs() > tol * scale.powi(k as i32) {
            return false;
        }
    }
    linalg::is_nilpotent(&(t - Mat::identity(n, n)), tol)
}

/// Log-proximal: the top graded piece of the weight filtration of log T is a line.
pub fn is_log_proximal(t: &Mat) -> Result<LogProximality> {
    if !is_unipotent(t, 1e-9) {
        return Err(Error::invalid("matrix is not unipotent"));
    }
    let nil = linalg::log_unipotent(t);
    let wf = weight_filtration(&nil)?;
    let n = t.nrows();
    let d = wf.d as i64;
    let hyper = wf.w(d - 1);
    let proximal = d > 0 && n - hyper.ncols() == 1 && wf.w(-d).ncols() == 1;
    Ok(LogProximality {
        proximal,
        d: wf.d,
        line: proximal.then(|| linalg::normalize_projective(&wf.w(-d).column(0).into_owned())),
        hyperplane: proximal.then_some(hyper),
    })
}

/// exp(sY) for a diagonalizable Y with integer spectrum, via spectral projectors.
fn exp_grading(y: &Mat, s: f64) -> Result<Mat> {
    let n = y.nrows();
    let spec = integer_spectrum(y)?;
    let mut out = Mat::zeros(n, n);
    for &k in &spec {
        let mut proj = Mat::identity(n, n);
        for &j in spec.iter().filter(|&&j| j != k) {
            proj = proj * (y - Mat::identity(n, n) * j as f64) / (k - j) as f64;
        }
        out += proj * (s * k as f64).exp();
    }
    Ok(out)
}

/// ‖h(τ)⁻¹v‖ with h(τ) = e^{(Re τ)N}·e^{−½ log(Im τ)Y}.
pub fn strictly_adapted_norm(nil: &Mat, y: &Mat, tau: Complex64, v: &Vec64) -> Result<f64> {
    if !(tau.im >= 1.0) {
        return Err(Error::invalid("strictly adapted norm needs Im tau >= 1"));
    }
    let shear = linalg::exp_nilpotent(&(nil * -tau.re));
    let scale = exp_grading(y, 0.5 * tau.im.ln())?;
    Ok((scale * shear * v).norm())
}

/// Envelope (Im τ)^{k/2}·[1 + (|Re τ|/(Im τ)^{1/2})^l] with l = ⌊(k+d)/2⌋.
pub fn adapted_envelope(k: i64, d: i64, tau: Complex64) -> f64 {
    let l = (k + d).div_euclid(2);
    tau.im.powf(k as f64 / 2.0) * (1.0 + (tau.re.abs() / tau.im.sqrt()).powi(l as i32))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightSplit {
    pub negative: Vec<usize>,
    pub zero: Vec<usize>,
    pub positive: Vec<usize>,
}

/// Partition weights (linear functionals on (μ₁, μ₂)) by the sign of their value on μ.
pub fn coarse_weight_split(weights: &[[f64; 2]], mu_dir: [f64; 2]) -> Result<WeightSplit> {
    let mn = (mu_dir[0] * mu_dir[0] + mu_dir[1] * mu_dir[1]).sqrt();
    if mn == 0.0 || !mn.is_finite() {
        return Err(Error::invalid("zero Cartan direction"));
    }
    let mut out = WeightSplit::default();
    for (i, w) in weights.iter().enumerate() {
        let val = w[0] * mu_dir[0] + w[1] * mu_dir[1];
        let wn = (w[0] * w[0] + w[1] * w[1]).sqrt().max(1.0);
        if val.abs() <= 1e-10 * mn * wn {
            out.zero.push(i);
        } else if val > 0.0 {
            out.positive.push(i);
        } else {
            out.negative.push(i);
        }
    }
    Ok(out)
}

/// Weights of the coordinates after applying k₊, in decreasing singular-value order.
pub const STANDARD_WEIGHTS: [[f64; 2]; 4] = [[1.0, 0.0], [0.0, 1.0], [0.0, -1.0], [-1.0, 0.0]];

/// Weights on Λ²V in the basis e_i∧e_j (i<j) built from the standard order.
pub fn exterior_weights() -> [[f64; 2]; 6] {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    pairs.map(|(i, j)| [STANDARD_WEIGHTS[i][0] + STANDARD_WEIGHTS[j][0], STANDARD_WEIGHTS[i][1] + STANDARD_WEIGHTS[j][1]])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sp4Rep {
    /// Vectors of V = ℝ⁴.
    Standard,
    /// Vectors of W in (a,b,c,d,e) coordinates, e.g. Plücker vectors of Lagrangians.
    Quadric,
}

#[derive(Clone, Debug)]
pub struct LimitDatum {
    /// Orthogonal 4×4; its rows are ordered by decreasing weight.
    pub k_plus: Mat,
    /// (μ₁, μ₂) with μ₁ ≥ μ₂ ≥ 0, unit length.
    pub mu_dir: [f64; 2],
}

impl LimitDatum {
    pub fn new(k_plus: Mat, mu_dir: [f64; 2]) -> Result<Self> {
        let n = (mu_dir[0].powi(2) + mu_dir[1].powi(2)).sqrt();
        if k_plus.shape() != (4, 4) {
            return Err(Error::invalid("limit datum needs a 4x4 k_plus"));
        }
        if !(n > 0.0) || mu_dir[0] < mu_dir[1] - 1e-12 || mu_dir[1] < -1e-12 {
            return Err(Error::invalid("Cartan direction outside the closed Weyl chamber"));
        }
        Ok(LimitDatum { k_plus, mu_dir: [mu_dir[0] / n, mu_dir[1] / n] })
    }

    /// (k₊(g), [μ(g)]) from a single element.
    pub fn from_element(g: &Mat) -> Result<Self> {
        let c = kak(g)?;
        if c.mu.len() != 4 {
            return Err(Error::invalid("limit datum needs a 4x4 matrix"));
        }
        let m1 = 0.5 * (c.mu[0] - c.mu[3]);
        let m2 = 0.5 * (c.mu[1] - c.mu[2]).max(0.0);
        LimitDatum::new(c.k_plus, [m1, m2])
    }

    /// The limit of (k₊(uᵏ), [μ(uᵏ)]) as k → ∞ for a unipotent u: rows run through an
    /// orthonormal basis adapted to the weight filtration, top weight first.
    pub fn from_unipotent(u: &Mat) -> Result<Self> {
        if u.shape() != (4, 4) || !is_unipotent(u, 1e-9) {
            return Err(Error::invalid("expected a 4x4 unipotent matrix"));
        }
        let nil = linalg::log_unipotent(u);
        let wf = weight_filtration_by_kernels(&nil)?;
        if wf.d == 0 {
            return Err(Error::invalid("identity has no limit datum"));
        }
        let d = wf.d as i64;
        let mut rows: Vec<Vec64> = Vec::new();
        let mut weights: Vec<f64> = Vec::new();
        for i in (-d..=d).rev() {
            let piece = linalg::complement_in(&wf.w(i - 1), &wf.w(i), 1e-9);
            for c in piece.column_iter() {
                rows.push(c.into_owned());
                weights.push(i as f64);
            }
        }
        let k = Mat::from_fn(4, 4, |r, c| rows[r][c]);
        LimitDatum::new(k, [0.5 * (weights[0] - weights[3]), 0.5 * (weights[1] - weights[2])])
    }

    fn same_as(&self, other: &LimitDatum, tol: f64) -> bool {
        let ang = (self.mu_dir[0] * other.mu_dir[0] + self.mu_dir[1] * other.mu_dir[1]).clamp(-1.0, 1.0).acos();
        ang < tol && (&self.k_plus - &other.k_plus).norm() < tol
    }
}

/// Drop data whose ray and k₊ agree with an earlier datum to within `tol`.
pub fn dedup_limit_data(data: Vec<LimitDatum>, tol: f64) -> Vec<LimitDatum> {
    // candidates share a cell of (ray angle, first row of k₊) up to one step in each direction
    let key = |d: &LimitDatum| -> Vec<i64> {
        let mut k = vec![(d.mu_dir[1].atan2(d.mu_dir[0]) / tol).floor() as i64];
        k.extend((0..4).map(|j| (d.k_plus[(0, j)] / tol).floor() as i64));
        k
    };
    let mut cells: std::collections::HashMap<Vec<i64>, Vec<usize>> = std::collections::HashMap::new();
    let mut out: Vec<LimitDatum> = Vec::new();
    for d in data {
        let base = key(&d);
        let mut dup = false;
        'search: for code in 0..3usize.pow(base.len() as u32) {
            let mut c = code;
            let probe: Vec<i64> = base
                .iter()
                .map(|b| {
                    let o = (c % 3) as i64 - 1;
                    c /= 3;
                    b + o
                })
                .collect();
            if let Some(ids) = cells.get(&probe) {
                if ids.iter().any(|&i| out[i].same_as(&d, tol)) {
                    dup = true;
                    break 'search;
                }
            }
        }
        if !dup {
            cells.entry(base).or_default().push(out.len());
            out.push(d);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stability {
    Stable,
    SemistableOnly,
    Unstable,
}

/// Stability of [v] against limit data, thresholded at 1e−8.
pub fn stable_point_test(v: &Vec64, data: &[LimitDatum], rep: Sp4Rep) -> Result<Stability> {
    if data.is_empty() {
        return Err(Error::invalid("no limit data"));
    }
    let (x, weights): (Vec64, Vec<[f64; 2]>) = match rep {
        Sp4Rep::Standard => {
            if v.len() != 4 {
                return Err(Error::invalid("expected a 4-vector"));
            }
            (v.clone(), STANDARD_WEIGHTS.to_vec())
        }
        Sp4Rep::Quadric => {
            if v.len() != 5 {
                return Err(Error::invalid("expected a 5-vector in W"));
            }
            (symplectic::w_to_exterior(v), exterior_weights().to_vec())
        }
    };
    let nv = x.norm();
    if nv == 0.0 {
        return Err(Error::invalid("zero vector"));
    }
    let x = x / nv;
    let mut verdict = Stability::Stable;
    for datum in data {
        let k = match rep {
            Sp4Rep::Standard => datum.k_plus.clone(),
            Sp4Rep::Quadric => symplectic::exterior_square_full(&datum.k_plus),
        };
        let y = k * &x;
        let split = coarse_weight_split(&weights, datum.mu_dir)?;
        let part = |idx: &[usize]| idx.iter().map(|&i| y[i] * y[i]).sum::<f64>().sqrt();
        if part(&split.positive) > 1e-8 {
            continue;
        }
        if part(&split.zero) > 1e-8 {
            verdict = Stability::SemistableOnly;
        } else {
            return Ok(Stability::Unstable);
        }
    }
    Ok(verdict)
}
