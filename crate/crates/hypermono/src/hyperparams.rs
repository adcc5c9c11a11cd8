//! Exponent data of hypergeometric local systems, Hodge numbers and the
//! good/maximal classification.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used when comparing real (non-rational) exponents.
const REAL_TOL: f64 = 1e-12;
/// Tolerance used when deciding that a real number is an integer.
const INT_TOL: f64 = 1e-9;

/// A local exponent in [0,1). Exact when it came from a fraction or a decimal string.
#[derive(Clone, Copy, Debug)]
pub enum Exponent {
    Exact(Rational64),
    Real(f64),
}

impl Exponent {
    pub fn frac(p: i64, q: i64) -> Self {
        Exponent::Exact(Rational64::new(p, q))
    }

    pub fn real(x: f64) -> Self {
        Exponent::Real(x)
    }

    pub fn zero() -> Self {
        Exponent::Exact(Rational64::zero())
    }

    pub fn half() -> Self {
        Exponent::frac(1, 2)
    }

    pub fn value(&self) -> f64 {
        match self {
            Exponent::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Exponent::Real(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<Rational64> {
        match self {
            Exponent::Exact(r) => Some(*r),
            Exponent::Real(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Exponent::Exact(_))
    }

    /// Parse "p/q", an integer or a decimal such as "0.45" (kept exact).
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::invalid("empty exponent"));
        }
        let bad = || Error::invalid(format!("cannot parse exponent '{t}'"));
        let r = if let Some((p, q)) = t.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(Error::invalid(format!("zero denominator in '{t}'")));
            }
            Rational64::new(p, q)
        } else if let Some((ip, fp)) = t.split_once('.') {
            let neg = ip.starts_with('-');
            let ip_digits = ip.trim_start_matches(['-', '+']);
            if !fp.chars().all(|c| c.is_ascii_digit()) || fp.len() > 15 {
                return Err(bad());
            }
            let whole: i64 = if ip_digits.is_empty() { 0 } else { ip_digits.parse().map_err(|_| bad())? };
            let den = 10i64.pow(fp.len() as u32);
            let num: i64 = if fp.is_empty() { 0 } else { fp.parse().map_err(|_| bad())? };
            let r = Rational64::new(whole * den + num, den);
            if neg {
                -r
            } else {
                r
            }
        } else {
            Rational64::from_integer(t.parse().map_err(|_| bad())?)
        };
        let e = Exponent::Exact(r);
        e.check_range()?;
        Ok(e)
    }

    fn check_range(&self) -> Result<()> {
        let ok = match self {
            Exponent::Exact(r) => !r.is_negative() && *r < Rational64::one(),
            Exponent::Real(x) => x.is_finite() && *x >= 0.0 && *x < 1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!("exponent {self} not in [0,1)")))
        }
    }

    /// x ↦ (1 − x) mod 1.
    pub fn dual(&self) -> Self {
        match self {
            Exponent::Exact(r) => {
                if r.is_zero() {
                    *self
                } else {
                    Exponent::Exact(Rational64::one() - r)
                }
            }
            Exponent::Real(x) => {
                if x.abs() < REAL_TOL {
                    Exponent::Real(0.0)
                } else {
                    Exponent::Real(1.0 - x)
                }
            }
        }
    }

    pub fn cmp_to(&self, other: &Exponent) -> Ordering {
        match (self, other) {
            (Exponent::Exact(a), Exponent::Exact(b)) => a.cmp(b),
            _ => {
                let (a, b) = (self.value(), other.value());
                if (a - b).abs() <= REAL_TOL {
                    Ordering::Equal
                } else if a < b {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    pub fn same(&self, other: &Exponent) -> bool {
        self.cmp_to(other) == Ordering::Equal
    }

    pub fn le(&self, other: &Exponent) -> bool {
        self.cmp_to(other) != Ordering::Greater
    }

    pub fn is_zero(&self) -> bool {
        self.same(&Exponent::zero())
    }

    pub fn is_half(&self) -> bool {
        self.same(&Exponent::half())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Exact(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Exponent::Real(x) => write!(f, "{x:.17e}"),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Exponent::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Sum of two exponents equals one (exactly, or to tolerance for reals).
fn sums_to_one(a: &Exponent, b: &Exponent) -> bool {
    match (a, b) {
        (Exponent::Exact(x), Exponent::Exact(y)) => *x + *y == Rational64::one(),
        _ => (a.value() + b.value() - 1.0).abs() <= REAL_TOL,
    }
}

/// Exact-or-approximate integer test on a quantity that may be rational.
#[derive(Clone, Copy, Debug)]
enum Num {
    Q(Rational64),
    R(f64),
}

impl Num {
    fn of(e: &Exponent) -> Num {
        match e {
            Exponent::Exact(r) => Num::Q(*r),
            Exponent::Real(x) => Num::R(*x),
        }
    }

    fn to_integer(self) -> Option<i64> {
        match self {
            Num::Q(r) => r.is_integer().then(|| r.to_integer()),
            Num::R(x) => {
                let k = x.round();
                ((x - k).abs() <= INT_TOL && k.abs() < 1e15).then_some(k as i64)
            }
        }
    }

    fn map(self, fq: impl Fn(Rational64) -> Option<Rational64>, fr: impl Fn(f64) -> f64) -> Option<Num> {
        match self {
            Num::Q(r) => fq(r).map(Num::Q),
            Num::R(x) => {
                let y = fr(x);
                y.is_finite().then_some(Num::R(y))
            }
        }
    }
}

/// `1 / (1 - 2x)`, the level N read off from an exponent (N-1)/2N.
fn level_from_middle(x: &Exponent) -> Option<i64> {
    Num::of(x)
        .map(
            |r| {
                let d = Rational64::one() - r * 2;
                (!d.is_zero()).then(|| d.recip())
            },
            |v| 1.0 / (1.0 - 2.0 * v),
        )?
        .to_integer()
}

/// `n·(1 - 2x)`.
fn scaled_gap(n: i64, x: &Exponent) -> Option<i64> {
    Num::of(x)
        .map(|r| Some((Rational64::one() - r * 2) * n), |v| n as f64 * (1.0 - 2.0 * v))?
        .to_integer()
}

fn sorted(v: &[Exponent]) -> Vec<Exponent> {
    let mut out = v.to_vec();
    out.sort_by(|a, b| a.cmp_to(b));
    out
}

/// Is the multiset invariant under x ↦ (1 − x) mod 1?
pub fn is_self_dual(v: &[Exponent]) -> bool {
    let a = sorted(v);
    let b = sorted(&v.iter().map(|x| x.dual()).collect::<Vec<_>>());
    a.iter().zip(b.iter()).all(|(x, y)| x.same(y))
}

#[derive(Clone, Debug, Serialize)]
pub struct HypergeomParams {
    alpha: Vec<Exponent>,
    beta: Vec<Exponent>,
}

impl HypergeomParams {
    pub fn new(alpha: Vec<Exponent>, beta: Vec<Exponent>) -> Result<Self> {
        if alpha.is_empty() || alpha.len() != beta.len() {
            return Err(Error::invalid(format!(
                "alpha and beta must be nonempty of equal length (got {} and {})",
                alpha.len(),
                beta.len()
            )));
        }
        for e in alpha.iter().chain(beta.iter()) {
            e.check_range()?;
        }
        check_irreducible(&alpha, &beta)?;
        Ok(HypergeomParams { alpha: sorted(&alpha), beta: sorted(&beta) })
    }

    /// Comma separated lists, e.g. `("1/5,2/5,3/5,4/5", "0,0,0,0")`.
    pub fn parse(alpha: &str, beta: &str) -> Result<Self> {
        let p = |s: &str| s.split(',').map(Exponent::parse).collect::<Result<Vec<_>>>();
        HypergeomParams::new(p(alpha)?, p(beta)?)
    }

    pub fn from_fracs(alpha: &[(i64, i64)], beta: &[(i64, i64)]) -> Result<Self> {
        let f = |v: &[(i64, i64)]| v.iter().map(|&(p, q)| Exponent::frac(p, q)).collect();
        HypergeomParams::new(f(alpha), f(beta))
    }

    /// α = (1/5, 2/5, 3/5, 4/5), β = (0, 0, 0, 0).
    pub fn mirror_quintic() -> Self {
        HypergeomParams::from_fracs(&[(1, 5), (2, 5), (3, 5), (4, 5)], &[(0, 1); 4]).expect("valid")
    }

    pub fn rank(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[Exponent] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Exponent] {
        &self.beta
    }

    pub fn self_dual(&self) -> bool {
        is_self_dual(&self.alpha) && is_self_dual(&self.beta)
    }

    pub fn is_rational(&self) -> bool {
        self.alpha.iter().chain(self.beta.iter()).all(|e| e.is_exact())
    }

    pub fn swapped(&self) -> Self {
        HypergeomParams { alpha: self.beta.clone(), beta: self.alpha.clone() }
    }

    /// Replace every exponent x by (1 − x) mod 1.
    pub fn dualized(&self) -> Self {
        let d = |v: &[Exponent]| sorted(&v.iter().map(|x| x.dual()).collect::<Vec<_>>());
        HypergeomParams { alpha: d(&self.alpha), beta: d(&self.beta) }
    }
}

impl fmt::Display for HypergeomParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[Exponent]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "alpha=({}) beta=({})", j(&self.alpha), j(&self.beta))
    }
}

fn check_irreducible(alpha: &[Exponent], beta: &[Exponent]) -> Result<()> {
    for a in alpha {
        for b in beta {
            if a.same(b) {
                return Err(Error::invalid(format!("reducible parameters: alpha and beta share {a}")));
            }
        }
    }
    Ok(())
}

/// Hodge numbers from the exponent interlacing: ρ(k) = #{j : α_j ≤ β_k} − k, h^p = #ρ⁻¹(p).
/// Reported as a contiguous vector starting at the lowest occupied level.
pub fn hodge_numbers_of(alpha: &[Exponent], beta: &[Exponent]) -> Result<Vec<usize>> {
    if alpha.len() != beta.len() || alpha.is_empty() {
        return Err(Error::invalid("alpha and beta must be nonempty of equal length"));
    }
    check_irreducible(alpha, beta)?;
    let a = sorted(alpha);
    let b = sorted(beta);
    let rho: Vec<i64> = b
        .iter()
        .enumerate()
        .map(|(k, bk)| a.iter().filter(|aj| aj.le(bk)).count() as i64 - (k as i64 + 1))
        .collect();
    let lo = *rho.iter().min().expect("nonempty");
    let hi = *rho.iter().max().expect("nonempty");
    let mut h = vec![0usize; (hi - lo + 1) as usize];
    for r in rho {
        h[(r - lo) as usize] += 1;
    }
    Ok(h)
}

pub fn hodge_numbers(p: &HypergeomParams) -> Vec<usize> {
    hodge_numbers_of(&p.alpha, &p.beta).expect("params are irreducible by construction")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum DegenerationTag {
    #[serde(rename = "MUM")]
    Mum,
    Rank1Line,
    Rank1Lagrangian,
    EllipticGood { n: i64, k: i64 },
    EllipticBad,
    Unclassified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegenerationClass {
    pub tag: DegenerationTag,
    pub assumption_a_ok: bool,
}

impl DegenerationClass {
    fn of(tag: DegenerationTag) -> Self {
        let ok = matches!(
            tag,
            DegenerationTag::Mum | DegenerationTag::Rank1Line | DegenerationTag::EllipticGood { .. }
        );
        DegenerationClass { tag, assumption_a_ok: ok }
    }
}

/// Local case table for four self-dual exponents at one singular point.
pub fn classify_local_degeneration(exp: &[Exponent]) -> Result<DegenerationClass> {
    use DegenerationTag::*;
    if exp.len() != 4 {
        return Err(Error::invalid(format!("expected 4 exponents, got {}", exp.len())));
    }
    if !is_self_dual(exp) {
        return Err(Error::invalid("exponents are not invariant under x -> 1-x mod 1"));
    }
    let x = sorted(exp);
    let z = |i: usize| x[i].is_zero();
    let h = |i: usize| x[i].is_half();
    let lt_half = |e: &Exponent| e.cmp_to(&Exponent::half()) == Ordering::Less;
    let pos = |e: &Exponent| !e.is_zero();

    if (0..4).all(z) || (0..4).all(h) {
        return Ok(DegenerationClass::of(Mum));
    }
    if z(0) && z(1) && h(2) && h(3) {
        return Ok(DegenerationClass::of(Rank1Lagrangian));
    }
    if z(0) && z(1) && pos(&x[2]) && lt_half(&x[2]) && sums_to_one(&x[2], &x[3]) {
        return Ok(DegenerationClass::of(Rank1Line));
    }
    if h(1) && h(2) && pos(&x[0]) && lt_half(&x[0]) && sums_to_one(&x[0], &x[3]) {
        return Ok(DegenerationClass::of(Rank1Line));
    }
    if x[0].same(&x[1]) && x[2].same(&x[3]) && pos(&x[0]) && lt_half(&x[0]) && sums_to_one(&x[0], &x[2]) {
        return Ok(DegenerationClass::of(Rank1Lagrangian));
    }
    let strictly = (0..3).all(|i| x[i].cmp_to(&x[i + 1]) == Ordering::Less);
    if pos(&x[0]) && strictly && sums_to_one(&x[0], &x[3]) && sums_to_one(&x[1], &x[2]) {
        if let Some(n) = level_from_middle(&x[1]) {
            if let Some(m) = scaled_gap(n, &x[0]) {
                if m % 2 == 1 && m >= 3 && n > m {
                    return Ok(DegenerationClass::of(EllipticGood { n, k: (m - 1) / 2 }));
                }
            }
        }
        return Ok(DegenerationClass::of(EllipticBad));
    }
    Ok(DegenerationClass::of(Unclassified))
}

#[derive(Clone, Debug, Serialize)]
pub struct AssumptionACertificate {
    pub holds: bool,
    pub alpha_class: DegenerationClass,
    pub beta_class: DegenerationClass,
    pub hodge_numbers: Vec<usize>,
    /// Clauses that failed, empty when `holds`.
    pub failed: Vec<String>,
}

pub fn satisfies_assumption_a(p: &HypergeomParams) -> Result<AssumptionACertificate> {
    if p.rank() != 4 {
        return Err(Error::invalid(format!("assumption A needs rank 4, got {}", p.rank())));
    }
    let alpha_class = classify_local_degeneration(&p.alpha)?;
    let beta_class = classify_local_degeneration(&p.beta)?;
    let hodge = hodge_numbers(p);
    let mut failed = Vec::new();
    if !alpha_class.assumption_a_ok {
        failed.push(format!("local exponents at infinity: {:?}", alpha_class.tag));
    }
    if !beta_class.assumption_a_ok {
        failed.push(format!("local exponents at zero: {:?}", beta_class.tag));
    }
    if hodge != [1, 1, 1, 1] {
        failed.push(format!("hodge numbers {hodge:?} != (1,1,1,1)"));
    }
    Ok(AssumptionACertificate {
        holds: failed.is_empty(),
        alpha_class,
        beta_class,
        hodge_numbers: hodge,
        failed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum AlphaPatternB {
    /// (μ, ½, ½, ½, 1−μ)
    Mu,
    /// ((N−k)/2N, (N−1)/2N, ½, (N+1)/2N, (N+k)/2N)
    Level { n: i64, k: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum BetaPatternB {
    /// (0, 0, 0, M/(2M+1), (M+1)/(2M+1))
    Triple { m: i64 },
    /// (0, k/M, (k+1)/M, (M−k−1)/M, (M−k)/M)
    Spread { m: i64, k: i64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct AssumptionBCertificate {
    pub holds: bool,
    pub alpha_pattern: Option<AlphaPatternB>,
    pub beta_pattern: Option<BetaPatternB>,
    pub alpha_min: Option<Exponent>,
    pub beta_med: Option<Exponent>,
}

fn match_alpha_b(x: &[Exponent]) -> Result<Option<(AlphaPatternB, Exponent)>> {
    // k_N = N reduces mod 1 to (0, 0, (N−1)/2N, ½, (N+1)/2N)
    if x[0].is_zero() && x[1].is_zero() && x[3].is_half() && sums_to_one(&x[2], &x[4]) {
        if let Some(n) = level_from_middle(&x[2]) {
            return Err(Error::invalid(format!("alpha pattern needs 1<k_N<N, got k_N = N = {n}")));
        }
    }
    if x[1].is_half() && x[2].is_half() && x[3].is_half() && sums_to_one(&x[0], &x[4]) && !x[0].is_zero() {
        return Ok(Some((AlphaPatternB::Mu, x[0])));
    }
    if x[2].is_half() && sums_to_one(&x[1], &x[3]) && sums_to_one(&x[0], &x[4]) && !x[1].is_half() {
        if let Some(n) = level_from_middle(&x[1]) {
            if let Some(k) = scaled_gap(n, &x[0]) {
                if !(1 < k && k < n) {
                    return Err(Error::invalid(format!("alpha pattern needs 1<k_N<N, got N={n}, k_N={k}")));
                }
                return Ok(Some((AlphaPatternB::Level { n, k }, x[0])));
            }
        }
    }
    Ok(None)
}

fn match_beta_b(x: &[Exponent]) -> Result<Option<(BetaPatternB, Exponent)>> {
    if x[0].is_zero() && x[1].is_zero() && x[2].is_zero() && sums_to_one(&x[3], &x[4]) {
        // M/(2M+1) = b  ⇔  M = b/(1−2b)
        let m = Num::of(&x[3])
            .map(
                |r| {
                    let d = Rational64::one() - r * 2;
                    (!d.is_zero()).then(|| r / d)
                },
                |v| v / (1.0 - 2.0 * v),
            )
            .and_then(|v| v.to_integer());
        if let Some(m) = m {
            if m >= 1 {
                return Ok(Some((BetaPatternB::Triple { m }, x[3])));
            }
        }
    }
    if x[0].is_zero() && sums_to_one(&x[1], &x[4]) && sums_to_one(&x[2], &x[3]) && !x[1].is_zero() {
        let m = match (x[1], x[2]) {
            (Exponent::Exact(a), Exponent::Exact(b)) if b > a => Num::Q((b - a).recip()).to_integer(),
            _ if x[2].value() > x[1].value() => Num::R(1.0 / (x[2].value() - x[1].value())).to_integer(),
            _ => None,
        };
        if let Some(m) = m {
            let k = match x[1] {
                Exponent::Exact(a) => Num::Q(a * m).to_integer(),
                Exponent::Real(a) => Num::R(a * m as f64).to_integer(),
            };
            if let Some(k) = k {
                if k >= 1 {
                    if 2 * (k + 1) >= m {
                        return Err(Error::invalid(format!("beta pattern needs 2(k_M+1)<M, got M={m}, k_M={k}")));
                    }
                    return Ok(Some((BetaPatternB::Spread { m, k }, x[2])));
                }
            }
        }
    }
    Ok(None)
}

pub fn satisfies_assumption_b(p: &HypergeomParams) -> Result<AssumptionBCertificate> {
    if p.rank() != 5 {
        return Err(Error::invalid(format!("assumption B needs rank 5, got {}", p.rank())));
    }
    if !p.self_dual() {
        return Err(Error::invalid("assumption B needs self-dual parameters"));
    }
    let a = match_alpha_b(&p.alpha)?;
    let b = match_beta_b(&p.beta)?;
    let holds = match (&a, &b) {
        (Some((_, amin)), Some((_, bmed))) => amin.cmp_to(bmed) == Ordering::Greater,
        _ => false,
    };
    Ok(AssumptionBCertificate {
        holds,
        alpha_pattern: a.map(|x| x.0),
        beta_pattern: b.map(|x| x.0),
        alpha_min: a.map(|x| x.1),
        beta_med: b.map(|x| x.1),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GoodFamily {
    pub params: HypergeomParams,
    pub hodge_numbers: Vec<usize>,
}

fn frac_list(v: &[Rational64]) -> Vec<Exponent> {
    v.iter().map(|r| Exponent::Exact(*r)).collect()
}

fn q(p: i64, d: i64) -> Rational64 {
    Rational64::new(p, d)
}

/// Candidate exponent multisets of rank 4 that pass the local test.
fn local_candidates_rank4(max_n: i64, max_k: i64, mu_grid: &[Exponent]) -> Vec<Vec<Exponent>> {
    let mut out = vec![frac_list(&[q(0, 1); 4]), frac_list(&[q(1, 2); 4])];
    for mu in mu_grid {
        let half = Exponent::half();
        if mu.is_zero() || mu.cmp_to(&half) != Ordering::Less {
            continue;
        }
        out.push(vec![Exponent::zero(), Exponent::zero(), *mu, mu.dual()]);
        out.push(vec![*mu, half, half, mu.dual()]);
    }
    for n in 4..=max_n {
        for k in 1..=max_k {
            let m = 2 * k + 1;
            if n > m {
                out.push(frac_list(&[q(n - m, 2 * n), q(n - 1, 2 * n), q(n + 1, 2 * n), q(n + m, 2 * n)]));
            }
        }
    }
    out.into_iter().map(|v| sorted(&v)).collect()
}

fn candidates_rank5(max_n: i64, max_k: i64, mu_grid: &[Exponent]) -> (Vec<Vec<Exponent>>, Vec<Vec<Exponent>>) {
    let half = Exponent::half();
    let mut alphas = Vec::new();
    for mu in mu_grid {
        if mu.is_zero() || mu.cmp_to(&half) == Ordering::Greater {
            continue;
        }
        alphas.push(vec![*mu, half, half, half, mu.dual()]);
    }
    for n in 3..=max_n {
        for k in 2..n.min(max_k + 1) {
            alphas.push(frac_list(&[q(n - k, 2 * n), q(n - 1, 2 * n), q(1, 2), q(n + 1, 2 * n), q(n + k, 2 * n)]));
        }
    }
    let mut betas = Vec::new();
    for m in 1..=max_n {
        betas.push(frac_list(&[q(0, 1), q(0, 1), q(0, 1), q(m, 2 * m + 1), q(m + 1, 2 * m + 1)]));
    }
    for m in 1..=max_n {
        for k in 1..=max_k {
            if 2 * (k + 1) < m {
                betas.push(frac_list(&[q(0, 1), q(k, m), q(k + 1, m), q(m - k - 1, m), q(m - k, m)]));
            }
        }
    }
    (alphas.into_iter().map(|v| sorted(&v)).collect(), betas.into_iter().map(|v| sorted(&v)).collect())
}

/// All table patterns within the bounds that pass the assumption A (rank 4) or B (rank 5) test.
pub fn enumerate_good_families(max_n: i64, max_k: i64, mu_grid: &[Exponent], rank: usize) -> Result<Vec<GoodFamily>> {
    let mut out = Vec::new();
    match rank {
        4 => {
            let cands = local_candidates_rank4(max_n, max_k, mu_grid);
            for a in &cands {
                for b in &cands {
                    let Ok(p) = HypergeomParams::new(a.clone(), b.clone()) else { continue };
                    if satisfies_assumption_a(&p)?.holds {
                        out.push(GoodFamily { hodge_numbers: hodge_numbers(&p), params: p });
                    }
                }
            }
        }
        5 => {
            let (alphas, betas) = candidates_rank5(max_n, max_k, mu_grid);
            for a in &alphas {
                for b in &betas {
                    let Ok(p) = HypergeomParams::new(a.clone(), b.clone()) else { continue };
                    if satisfies_assumption_b(&p)?.holds {
                        out.push(GoodFamily { hodge_numbers: hodge_numbers(&p), params: p });
                    }
                }
            }
        }
        _ => return Err(Error::invalid(format!("tables exist for rank 4 and 5 only, got {rank}"))),
    }
    Ok(out)
}
