//! Levelt and reflection matrices, the relation h0·h1 = h∞ and the invariant form.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperparams::{Exponent, HypergeomParams};
use crate::linalg::{self, CMat, Mat};

/// Imaginary parts below this are dropped for self-dual parameters.
const IMAG_TOL: f64 = 1e-12;
/// Coefficients within this distance of an integer are snapped to it.
const SNAP_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct CharPolyCoeffs {
    /// (A_1, ..., A_n) of ∏(t − e^{2πiα_j}) = t^n + A_1 t^{n−1} + ... + A_n.
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
    pub real_a: bool,
    pub real_b: bool,
}

impl CharPolyCoeffs {
    pub fn a_real(&self) -> Vec<f64> {
        self.a.iter().map(|z| z.re).collect()
    }

    pub fn b_real(&self) -> Vec<f64> {
        self.b.iter().map(|z| z.re).collect()
    }
}

fn expand_roots(exps: &[Exponent]) -> Vec<Complex64> {
    // coefficients of the monic polynomial, highest degree first
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for e in exps {
        let root = Complex64::from_polar(1.0, 2.0 * PI * e.value());
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (i, ci) in c.iter().enumerate() {
            next[i] += ci;
            next[i + 1] -= ci * root;
        }
        c = next;
    }
    c.remove(0);
    c
}

fn clean(coeffs: &mut [Complex64], self_dual: bool) -> bool {
    for z in coeffs.iter_mut() {
        if self_dual && z.im.abs() < IMAG_TOL {
            z.im = 0.0;
        }
        let r = z.re.round();
        if (z.re - r).abs() < SNAP_TOL {
            z.re = r;
        }
        let i = z.im.round();
        if (z.im - i).abs() < SNAP_TOL {
            z.im = i;
        }
    }
    coeffs.iter().all(|z| z.im == 0.0)
}

pub fn char_polys(p: &HypergeomParams) -> CharPolyCoeffs {
    let sd_a = crate::hyperparams::is_self_dual(p.alpha());
    let sd_b = crate::hyperparams::is_self_dual(p.beta());
    let mut a = expand_roots(p.alpha());
    let mut b = expand_roots(p.beta());
    let real_a = clean(&mut a, sd_a);
    let real_b = clean(&mut b, sd_b);
    CharPolyCoeffs { a, b, real_a, real_b }
}

/// Companion matrix with subdiagonal ones and last column −(c_n, ..., c_1).
fn companion(c: &[Complex64]) -> CMat {
    let n = c.len();
    let mut m = CMat::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[n - 1 - i];
    }
    m
}

/// (h∞, h0): h∞ has last column (−A_n, ..., −A_1)ᵀ, h0 has last column (−B̄_n, ..., −B̄_1)ᵀ.
pub fn levelt_matrices(c: &CharPolyCoeffs) -> (CMat, CMat) {
    let bbar: Vec<Complex64> = c.b.iter().map(|z| z.conj()).collect();
    (companion(&c.a), companion(&bbar))
}

fn reflection(c: &[f64]) -> Mat {
    let n = c.len();
    let mut r = Mat::zeros(n, n);
    for i in 0..n - 1 {
        r[(i, n - 2 - i)] = 1.0;
        r[(i, n - 1)] = -c[i];
    }
    r[(n - 1, n - 1)] = -c[n - 1];
    r
}

pub fn anti_identity(n: usize) -> Mat {
    Mat::from_fn(n, n, |i, j| if i + j == n - 1 { 1.0 } else { 0.0 })
}

/// (R_A, R_B, R_C) with R_C·R_A = h∞ and R_C·R_B = h0.
pub fn reflection_matrices(c: &CharPolyCoeffs) -> Result<(Mat, Mat, Mat)> {
    if !(c.real_a && c.real_b) {
        return Err(Error::invalid("reflection matrices need real characteristic polynomials"));
    }
    let n = c.a.len();
    Ok((reflection(&c.a_real()), reflection(&c.b_real()), anti_identity(n)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FormKind {
    Antisymmetric,
    Symmetric,
    Neither,
}

#[derive(Clone, Debug)]
pub struct InvariantForm {
    pub j: Mat,
    pub kind: FormKind,
}

/// A real representation of the free group on two letters, presented by
/// h0, h∞ and the derived h1 = h0⁻¹·h∞.
#[derive(Clone, Debug)]
pub struct MonodromyRep {
    pub n: usize,
    pub h0: Mat,
    pub h1: Mat,
    pub hinf: Mat,
    /// (R_A, R_B, R_C) when built from self-dual parameters.
    pub reflections: Option<(Mat, Mat, Mat)>,
    pub form: Option<InvariantForm>,
}

impl MonodromyRep {
    pub fn from_generators(h0: Mat, hinf: Mat) -> Result<Self> {
        let n = h0.nrows();
        if h0.ncols() != n || hinf.shape() != (n, n) {
            return Err(Error::invalid("generators must be square of equal size"));
        }
        let inv = h0.clone().try_inverse().ok_or_else(|| Error::invalid("h0 is singular"))?;
        let h1 = inv * &hinf;
        Ok(MonodromyRep { n, h0, h1, hinf, reflections: None, form: None })
    }

    /// Levelt matrices for self-dual parameters, with reflections and the invariant form.
    pub fn from_params(p: &HypergeomParams) -> Result<Self> {
        if !p.self_dual() {
            return Err(Error::invalid("real monodromy needs self-dual parameters"));
        }
        let c = char_polys(p);
        let (hinf, h0) = levelt_matrices(&c);
        let re = |m: &CMat| m.map(|z| z.re);
        let mut rep = MonodromyRep::from_generators(re(&h0), re(&hinf))?;
        rep.reflections = Some(reflection_matrices(&c)?);
        rep.form = invariant_bilinear_form(&rep).ok();
        Ok(rep)
    }

    /// Generator matrix by label.
    pub fn gen(&self, g: Gen) -> &Mat {
        match g {
            Gen::Zero => &self.h0,
            Gen::One => &self.h1,
            Gen::Inf => &self.hinf,
        }
    }

    /// Smallest e ≤ 1000 with h^e = id, if any.
    pub fn gl_order(&self, g: Gen) -> Option<u32> {
        matrix_order(self.gen(g), false)
    }

    /// Is every entry within 1e-9 of an integer?
    pub fn is_integral(&self) -> bool {
        [&self.h0, &self.hinf].iter().all(|m| m.iter().all(|x| (x - x.round()).abs() < 1e-9))
    }

    /// ρ(g^k), negative k through the inverse.
    pub fn power(&self, g: Gen, k: i32) -> Result<Mat> {
        let m = if k < 0 {
            self.gen(g).clone().try_inverse().ok_or_else(|| Error::numerical("singular generator"))?
        } else {
            self.gen(g).clone()
        };
        Ok(linalg::mat_pow(&m, k.unsigned_abs() as u64))
    }

    pub fn eval(&self, w: &Word) -> Result<Mat> {
        let mut out = Mat::identity(self.n, self.n);
        for s in &w.0 {
            out *= self.power(s.gen, s.exp)?;
        }
        Ok(out)
    }

    pub fn map(&self, f: impl Fn(&Mat) -> Mat) -> Result<Self> {
        MonodromyRep::from_generators(f(&self.h0), f(&self.hinf))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
pub enum Gen {
    Zero,
    One,
    Inf,
}

impl Gen {
    pub fn name(&self) -> &'static str {
        match self {
            Gen::Zero => "h0",
            Gen::One => "h1",
            Gen::Inf => "hinf",
        }
    }
}

impl std::str::FromStr for Gen {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h0" => Ok(Gen::Zero),
            "h1" => Ok(Gen::One),
            "hinf" => Ok(Gen::Inf),
            _ => Err(Error::invalid(format!("unknown generator '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub gen: Gen,
    pub exp: i32,
}

/// A word in the generators, as a list of syllables g^k read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Syllable>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(gen: Gen, exp: i32) -> Self {
        Word(vec![Syllable { gen, exp }])
    }

    /// Number of letters, Σ|k|.
    pub fn len(&self) -> usize {
        self.0.iter().map(|s| s.exp.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenate, merging and cancelling adjacent syllables of the same generator.
    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for s in &other.0 {
            match out.last_mut() {
                Some(last) if last.gen == s.gen => {
                    last.exp += s.exp;
                    if last.exp == 0 {
                        out.pop();
                    }
                }
                _ => out.push(*s),
            }
        }
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|s| Syllable { gen: s.gen, exp: -s.exp }).collect())
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|s| if s.exp == 1 { s.gen.name().to_string() } else { format!("{}^{}", s.gen.name(), s.exp) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl std::str::FromStr for Word {
    type Err = Error;

    /// Parses "h0 hinf^-2 h1"; "id" or "" is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let mut w = Word::identity();
        for tok in s.split_whitespace().filter(|t| *t != "id") {
            let (g, e) = match tok.split_once('^') {
                Some((g, e)) => (g, e.parse::<i32>().map_err(|_| Error::invalid(format!("bad exponent in '{tok}'")))?),
                None => (tok, 1),
            };
            w = w.mul(&Word::letter(g.parse()?, e));
        }
        Ok(w)
    }
}

/// Order of m in GL (or up to sign when `projective`), searched up to 1000.
pub fn matrix_order(m: &Mat, projective: bool) -> Option<u32> {
    let n = m.nrows();
    let id = Mat::identity(n, n);
    let mut p = id.clone();
    for e in 1..=1000u32 {
        p = &p * m;
        let scale = p.norm().max(1.0);
        if (&p - &id).norm() <= 1e-9 * scale || (projective && (&p + &id).norm() <= 1e-9 * scale) {
            return Some(e);
        }
        if p.norm() > 1e6 * (n as f64) {
            return None;
        }
    }
    None
}

#[derive(Clone, Debug)]
pub struct H1Report {
    pub h1: Mat,
    pub rank_h1_minus_id: usize,
    pub square_zero: bool,
}

pub fn monodromy_at_one(rep: &MonodromyRep) -> Result<H1Report> {
    let n = rep.n;
    let inv = rep.h0.clone().try_inverse().ok_or_else(|| Error::invalid("h0 is singular"))?;
    let h1 = inv * &rep.hinf;
    let x = &h1 - Mat::identity(n, n);
    let scale = h1.norm().max(1.0);
    let rank = linalg::rank_abs(&x, 1e-9 * scale);
    let square_zero = (&x * &x).norm() <= 1e-9 * scale * scale;
    Ok(H1Report { h1, rank_h1_minus_id: rank, square_zero })
}

/// Solve hᵀJh = J for h ∈ {h0, h∞}; unique up to scale for irreducible reps.
pub fn invariant_bilinear_form(rep: &MonodromyRep) -> Result<InvariantForm> {
    let n = rep.n;
    let id = Mat::identity(n * n, n * n);
    let eqs: Vec<Mat> = [&rep.h0, &rep.hinf]
        .iter()
        .map(|h| h.transpose().kronecker(&h.transpose()) - &id)
        .collect();
    let system = linalg::vstack(&eqs[0], &eqs[1]);
    let ns = linalg::null_space(&system, 1e-9);
    if ns.ncols() != 1 {
        return Err(Error::invalid(format!(
            "invariant form not unique: solution space has dimension {}",
            ns.ncols()
        )));
    }
    let mut j = Mat::from_column_slice(n, n, ns.column(0).as_slice());
    let big = j.amax();
    j /= big;
    let first = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .map(|(r, c)| j[(r, c)])
        .find(|x| x.abs() > 1e-12)
        .unwrap_or(1.0);
    if first < 0.0 {
        j = -j;
    }
    let kind = if (&j + j.transpose()).amax() < 1e-9 {
        FormKind::Antisymmetric
    } else if (&j - j.transpose()).amax() < 1e-9 {
        FormKind::Symmetric
    } else {
        FormKind::Neither
    };
    Ok(InvariantForm { j, kind })
}

/// Standard symplectic form in the basis (e1, e2, f1, f2).
pub fn standard_j(n: usize) -> Mat {
    let h = n / 2;
    let mut j = Mat::zeros(n, n);
    for i in 0..h {
        j[(i, i + h)] = 1.0;
        j[(i + h, i)] = -1.0;
    }
    j
}

/// Symplectic Gram–Schmidt: columns (e1, ..., f1, ...) of the returned matrix P satisfy PᵀJP = J_std.
pub fn symplectic_basis(j: &Mat) -> Result<Mat> {
    let n = j.nrows();
    if j.ncols() != n || n % 2 != 0 {
        return Err(Error::invalid("form must be square of even size"));
    }
    let scale = j.amax();
    if scale == 0.0 || (j + j.transpose()).amax() > 1e-12 * scale {
        return Err(Error::invalid("form is not antisymmetric"));
    }
    let pair = |x: &linalg::Vec64, y: &linalg::Vec64| (x.transpose() * j * y)[(0, 0)];
    let mut pool: Vec<linalg::Vec64> = (0..n).map(|i| Mat::identity(n, n).column(i).into_owned()).collect();
    let h = n / 2;
    let mut es = Vec::with_capacity(h);
    let mut fs = Vec::with_capacity(h);
    for _ in 0..h {
        // e: first vector of largest norm; f: partner with largest pairing
        let (ie, _) = pool
            .iter()
            .enumerate()
            .fold((0, -1.0f64), |best, (i, v)| if v.norm() > best.1 + 1e-12 { (i, v.norm()) } else { best });
        let e = pool.remove(ie);
        let (jf, pf) = pool
            .iter()
            .enumerate()
            .map(|(i, v)| (i, pair(&e, v)))
            .fold((0, 0.0f64), |best, (i, p)| if p.abs() > best.1.abs() + 1e-12 { (i, p) } else { best });
        if pf.abs() <= 1e-12 * scale {
            return Err(Error::invalid("form is degenerate"));
        }
        let f = pool.remove(jf) / pf;
        pool = pool.into_iter().map(|v| &v - &e * pair(&v, &f) + &f * pair(&v, &e)).collect();
        es.push(e);
        fs.push(f);
    }
    let mut p = Mat::zeros(n, n);
    for i in 0..h {
        p.set_column(i, &es[i]);
        p.set_column(i + h, &fs[i]);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quintic() -> MonodromyRep {
        MonodromyRep::from_params(&HypergeomParams::mirror_quintic()).unwrap()
    }

    #[test]
    fn quintic_coefficients() {
        let c = char_polys(&HypergeomParams::mirror_quintic());
        assert_eq!(c.a_real(), vec![1.0, 1.0, 1.0, 1.0]);
        assert_eq!(c.b_real(), vec![-4.0, 6.0, -4.0, 1.0]);
        let p = HypergeomParams::parse("1/2", "0").unwrap();
        assert_eq!(char_polys(&p).a_real(), vec![1.0]);
    }

    #[test]
    fn quintic_levelt_columns() {
        let rep = quintic();
        let col: Vec<f64> = rep.hinf.column(3).iter().copied().collect();
        assert_eq!(col, vec![-1.0, -1.0, -1.0, -1.0]);
        let col: Vec<f64> = rep.h0.column(3).iter().copied().collect();
        assert_eq!(col, vec![-1.0, 4.0, -6.0, 4.0]);
    }

    #[test]
    fn quintic_h1_is_transvection() {
        let r = monodromy_at_one(&quintic()).unwrap();
        assert_eq!(r.rank_h1_minus_id, 1);
        assert!(r.square_zero);
    }

    #[test]
    fn rank_one_case() {
        let p = HypergeomParams::parse("1/2", "0").unwrap();
        let rep = MonodromyRep::from_params(&p).unwrap();
        // h0 = [−1]·conj... = [1], h∞ = [−1]
        assert_eq!(rep.h1[(0, 0)], -1.0);
    }

    #[test]
    fn reflections_quintic() {
        let rep = quintic();
        let (ra, rb, rc) = rep.reflections.clone().unwrap();
        let n = 4;
        let id = Mat::identity(n, n);
        for r in [&ra, &rb, &rc] {
            assert_eq!(r * r, id);
        }
        assert_eq!(&rc * &ra, rep.hinf);
        assert_eq!(&rc * &rb, rep.h0);
        let v = linalg::Vec64::from_vec(vec![1.0, 1.0, 1.0, 2.0]);
        assert_eq!(&ra * &v, -v);
    }

    #[test]
    fn quintic_form() {
        let rep = quintic();
        let f = rep.form.clone().unwrap();
        assert_eq!(f.kind, FormKind::Antisymmetric);
        assert!(f.j.determinant().abs() > 1e-6);
        for h in [&rep.h0, &rep.hinf, &rep.h1] {
            assert!((h.transpose() * &f.j * h - &f.j).norm() < 1e-9);
        }
        let id = Mat::identity(4, 4);
        let trivial = MonodromyRep::from_generators(id.clone(), id).unwrap();
        assert!(invariant_bilinear_form(&trivial).is_err());
    }

    #[test]
    fn symplectic_basis_examples() {
        let j = standard_j(4);
        assert_eq!(symplectic_basis(&j).unwrap(), Mat::identity(4, 4));
        let p = symplectic_basis(&(&j * 2.0)).unwrap();
        let mut expect = Mat::identity(4, 4);
        expect[(2, 2)] = 0.5;
        expect[(3, 3)] = 0.5;
        assert_eq!(p, expect);
        assert!(symplectic_basis(&Mat::zeros(4, 4)).is_err());
    }
}
