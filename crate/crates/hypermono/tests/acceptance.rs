use hypermono::dynamics::{self, LimitClass, RationalTarget, SampleKind};
use hypermono::fuchsian::{self, FuchsianModel, OrderConvention};
use hypermono::hyperparams::{self, HypergeomParams};
use hypermono::lie::{self, LimitDatum, Sp4Rep, Stability};
use hypermono::linalg::{self, Mat, Vec64};
use hypermono::monodromy::{self, FormKind, MonodromyRep};
use hypermono::symplectic::{self, LagrangianPlane, QuadSpaceW};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: f64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit, format!("took {:.2} s, limit {limit} s", elapsed.as_secs_f64()))
}

fn p(alpha: &str, beta: &str) -> HypergeomParams {
    HypergeomParams::parse(alpha, beta).unwrap()
}

fn good_sets() -> Vec<HypergeomParams> {
    vec![
        p("1/4,1/2,1/2,3/4", "0,0,0,0"),
        p("1/2,1/2,1/2,1/2", "0,0,0,0"),
        p("1/3,1/2,1/2,2/3", "0,0,1/5,4/5"),
        p("1/4,1/2,1/2,3/4", "0,0,1/8,7/8"),
        p("1/5,2/5,3/5,4/5", "0,0,0,0"),
        p("1/5,2/5,3/5,4/5", "1/2,1/2,1/2,1/2"),
        p("1/5,2/5,3/5,4/5", "0,0,1/20,19/20"),
        p("1/5,2/5,3/5,4/5", "9/20,1/2,1/2,11/20"),
        p("1/5,2/5,3/5,4/5", "13/32,15/32,17/32,19/32"),
        p("2/7,3/7,4/7,5/7", "0,0,0,0"),
        p("1/7,3/7,4/7,6/7", "1/2,1/2,1/2,1/2"),
    ]
}

fn rel(a: &Mat, b: &Mat) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn modular() -> FuchsianModel {
    fuchsian::triangle_group(&"2,3,inf".parse().unwrap()).unwrap()
}

/// Rep in a symplectic basis together with the orbifold model of its local orders.
fn hypergeometric(params: &HypergeomParams) -> (MonodromyRep, FuchsianModel) {
    let rep = MonodromyRep::from_params(params).unwrap();
    let (rep, _) = symplectic::standardize(&rep).unwrap();
    let sig = fuchsian::orbifold_signature(params, OrderConvention::Gl).unwrap();
    (rep, fuchsian::triangle_group(&sig).unwrap())
}

fn quintic() -> MonodromyRep {
    hypergeometric(&HypergeomParams::mirror_quintic()).0
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let cases = [
        (p("1/5,2/5,3/5,4/5", "0,0,0,0"), true),
        (p("1/4,1/2,1/2,3/4", "0,0,0,0"), true),
        (p("1/2,1/2,1/2,1/2", "0,0,0,0"), true),
        (p("1/5,2/5,3/5,4/5", "1/10,1/2,1/2,9/10"), false),
    ];
    for (params, want) in &cases {
        let got = hyperparams::satisfies_assumption_a(params).map_err(|e| e.to_string())?.holds;
        ensure(got == *want, format!("{params}: got {got}"))?;
    }
    within(start.elapsed(), 1.0)?;
    Ok(format!("4 verdicts in {:.3} s", start.elapsed().as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let id = Mat::identity(4, 4);
    let mut worst_coeff: f64 = 0.0;
    for params in good_sets().iter().take(10) {
        let rep = MonodromyRep::from_params(params).map_err(|e| e.to_string())?;
        let (ra, rb, rc) = rep.reflections.clone().ok_or("no reflections")?;
        for r in [&ra, &rb, &rc] {
            ensure(rel(&(r * r), &id) < 1e-9, format!("{params}: R² ≠ id"))?;
        }
        ensure(rel(&(&rc * &rb), &rep.h0) < 1e-9, format!("{params}: R_C R_B ≠ h0"))?;
        ensure(rel(&(&rc * &ra), &rep.hinf) < 1e-9, format!("{params}: R_C R_A ≠ h∞"))?;
        let c = monodromy::char_polys(params);
        for coeffs in [&c.a, &c.b] {
            let full: Vec<Complex64> = std::iter::once(Complex64::one()).chain(coeffs.iter().cloned()).collect();
            let n = full.len() - 1;
            for l in 0..=n {
                let err = (full[l] - full[n] * full[n - l].conj()).norm();
                worst_coeff = worst_coeff.max(err);
                ensure(err <= 1e-12, format!("{params}: A_{l} identity off by {err:e}"))?;
            }
        }
    }
    within(start.elapsed(), 1.0)?;
    Ok(format!("10 sets, worst coefficient residual {worst_coeff:.1e}"))
}

fn criterion_3() -> Outcome {
    for params in good_sets() {
        let rep = MonodromyRep::from_params(&params).map_err(|e| e.to_string())?;
        let h1 = monodromy::monodromy_at_one(&rep).map_err(|e| e.to_string())?;
        ensure(h1.rank_h1_minus_id == 1, format!("{params}: rank(h1 − id) = {}", h1.rank_h1_minus_id))?;
        ensure(h1.square_zero, format!("{params}: (h1 − id)² ≠ 0"))?;
        let form = monodromy::invariant_bilinear_form(&rep).map_err(|e| format!("{params}: {e}"))?;
        ensure(form.kind == FormKind::Antisymmetric, format!("{params}: form is {:?}", form.kind))?;
        ensure(linalg::rank(&form.j, 1e-9) == 4, format!("{params}: degenerate form"))?;
        for g in [&rep.h0, &rep.h1, &rep.hinf] {
            let err = (g.transpose() * &form.j * g - &form.j).norm() / form.j.norm();
            ensure(err < 1e-9, format!("{params}: form not preserved ({err:e})"))?;
        }
    }
    Ok(format!("{} sets", good_sets().len()))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let gram = QuadSpaceW::gram();
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let g = symplectic::random_symplectic(&mut rng, 1.0);
        let h = symplectic::random_symplectic(&mut rng, 1.0);
        let wg = symplectic::reduced_exterior_square(&g).map_err(|e| e.to_string())?;
        let wh = symplectic::reduced_exterior_square(&h).map_err(|e| e.to_string())?;
        let wgh = symplectic::reduced_exterior_square(&(&g * &h)).map_err(|e| e.to_string())?;
        let hom = rel(&wgh, &(&wg * &wh));
        let inv = (wg.transpose() * &gram * &wg - &gram).norm() / wg.norm_squared();
        worst = worst.max(hom).max(inv);
    }
    ensure(worst < 1e-9, format!("worst residual {worst:e}"))?;
    let sig = linalg::signature(&gram, 1e-12);
    ensure(sig == (2, 3), format!("signature {sig:?}"))?;
    Ok(format!("100 pairs, worst residual {worst:.1e}, signature (2,3)"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let rational = |rng: &mut ChaCha8Rng| loop {
        let num: i64 = rng.random_range(-40..=40);
        let den: i64 = rng.random_range(1..=40);
        if num != 0 {
            return BigRational::new(BigInt::from(num), BigInt::from(den));
        }
    };
    for _ in 0..20 {
        let a = rational(&mut rng);
        let b = rational(&mut rng);
        let got = dynamics::fiberwise_unipotent(&a, &b).map_err(|e| e.to_string())?.product;
        let want = [
            [BigRational::one(), -(&a * &b).recip()],
            [BigRational::zero(), BigRational::one()],
        ];
        ensure(got == want, format!("α = {a}, β = {b}: {got:?}"))?;
    }
    within(start.elapsed(), 1.0)?;
    Ok("20 exact products".into())
}

fn jordan(blocks: &[usize]) -> Mat {
    let n: usize = blocks.iter().sum();
    let mut m = Mat::zeros(n, n);
    let mut start = 0;
    for &b in blocks {
        for i in 1..b {
            m[(start + i - 1, start + i)] = 1.0;
        }
        start += b;
    }
    m
}

fn criterion_6() -> Outcome {
    let j = monodromy::standard_j(4);
    let e = |i: usize| Vec64::from_fn(4, |k, _| if k == i { 1.0 } else { 0.0 });
    let rank_one = |c: &Vec64| c * (c.transpose() * &j);
    let mut cases: Vec<(String, Mat)> = vec![
        ("zero".into(), Mat::zeros(4, 4)),
        ("rank-1 sp4".into(), rank_one(&(e(0) + e(1) * 2.0))),
        ("two Jordan blocks".into(), rank_one(&e(0)) + rank_one(&e(1))),
        ("Sym3 principal".into(), linalg::log_unipotent(&fuchsian::symmetric_power(&linalg::from_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]), 3))),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let types: [&[usize]; 5] = [&[4], &[3, 1], &[2, 2], &[2, 1, 1], &[3, 2]];
    for i in 0..20 {
        let blocks = types[rng.random_range(0..types.len())];
        let n: usize = blocks.iter().sum();
        let mut q = Mat::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
        for k in 0..n {
            q[(k, k)] += 3.0;
        }
        let qi = q.clone().try_inverse().ok_or("singular conjugator")?;
        cases.push((format!("random #{i} {blocks:?}"), &q * jordan(blocks) * qi));
    }
    let mut worst: f64 = 0.0;
    for (name, nil) in &cases {
        let wf = lie::weight_filtration(nil).map_err(|e| format!("{name}: {e}"))?;
        ensure(lie::filtration_axioms_hold(nil, &wf), format!("{name}: axioms fail"))?;
        if nil.norm() > 0.0 {
            let (y, nplus) = lie::jacobson_morozov(nil).map_err(|e| format!("{name}: {e}"))?;
            let r = lie::sl2_residual(&y, nil, &nplus);
            worst = worst.max(r);
            ensure(r < 1e-8, format!("{name}: sl2 residual {r:e}"))?;
        }
    }
    Ok(format!("{} nilpotents, worst sl2 residual {worst:.1e}", cases.len()))
}

fn criterion_7() -> Outcome {
    let u = linalg::from_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]);
    let t = fuchsian::symmetric_power(&u, 3);
    let nil = linalg::log_unipotent(&t);
    let d = 3;
    let k = 10_000u64;
    let tk = linalg::mat_pow(&t, k);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut ratios = Vec::new();
    for _ in 0..20 {
        let v = Vec64::from_fn(4, |_, _| rng.random_range(-1.0..1.0));
        let vd = linalg::mat_pow(&nil, d as u64) * &v;
        ratios.push((&tk * &v).norm() * 6.0 / ((k as f64).powi(d) * vd.norm()));
    }
    let (lo, hi) = ratios.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    ensure(lo >= 0.9 && hi <= 1.1, format!("growth ratios in [{lo}, {hi}]"))?;

    let (y, _) = lie::jacobson_morozov(&nil).map_err(|e| e.to_string())?;
    let ims: Vec<f64> = (0..=12).map(|i| 10f64.powf(i as f64 / 4.0)).collect();
    let res: Vec<f64> = [0.0, 0.5, 1.0, 3.0, 10.0, 31.6, 100.0, 316.0, 1000.0].iter().flat_map(|&x| [x, -x]).collect();
    let mut printed: f64 = 1.0;
    let mut corrected: f64 = 1.0;
    for w in [-3i64, -1, 1, 3] {
        let space = linalg::null_space(&(&y - Mat::identity(4, 4) * w as f64), 1e-8);
        ensure(space.ncols() == 1, format!("weight {w} space has dimension {}", space.ncols()))?;
        let v: Vec64 = space.column(0).into_owned();
        let l = (w + d as i64).div_euclid(2);
        for &im in &ims {
            for &re in &res {
                let tau = Complex64::new(re, im);
                let norm = lie::strictly_adapted_norm(&nil, &y, tau, &v).map_err(|e| e.to_string())?;
                let r = norm / lie::adapted_envelope(w, d as i64, tau);
                printed = printed.max(r).max(1.0 / r);
                let alt = im.powf(w as f64 / 2.0) * (1.0 + (re.abs() / im).powi(l as i32));
                let r = norm / alt;
                corrected = corrected.max(r).max(1.0 / r);
            }
        }
    }
    let detail = format!(
        "growth ratios in [{lo:.5}, {hi:.5}]; envelope constant {printed:.3e} (limit 10); (Im τ)^(k/2)[1+(|Re τ|/Im τ)^l] constant {corrected:.3}"
    );
    ensure(printed <= 10.0, detail.clone())?;
    Ok(detail)
}

fn symmetric_within(res: &dynamics::LyapunovResult, k: f64) -> Result<(), String> {
    let n = res.spectrum.len();
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let se = (res.stderr[i].powi(2) + res.stderr[j].powi(2)).sqrt();
        let s = res.spectrum[i] + res.spectrum[j];
        ensure(s.abs() <= k * se, format!("λ{} + λ{} = {s:.2e}, {k} stderr = {:.2e}", i + 1, j + 1, k * se))?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let total = 1.0e5;
    let f = modular();
    let fuchs = dynamics::lyapunov_mc(&f.rep(), &f, total, 16, 8).map_err(|e| e.to_string())?;
    let l1 = fuchs.spectrum[0];
    ensure((l1 - 1.0).abs() <= 0.02, format!("Fuchsian λ1 = {l1}"))?;
    let s3 = dynamics::lyapunov_mc(&f.symmetric_power_rep(3), &f, total, 16, 8).map_err(|e| e.to_string())?;
    let (a, b) = (s3.spectrum[0], s3.spectrum[1]);
    ensure((a - 3.0).abs() <= 0.05 && (b - 1.0).abs() <= 0.05, format!("Sym3 (λ1, λ2) = ({a}, {b})"))?;
    symmetric_within(&s3, 2.0)?;
    let (q, qm) = hypergeometric(&HypergeomParams::mirror_quintic());
    let quintic = dynamics::lyapunov_mc(&q, &qm, total, 16, 8).map_err(|e| e.to_string())?;
    symmetric_within(&quintic, 2.0)?;
    Ok(format!(
        "Fuchsian λ1 = {l1:.4}; Sym3 ({a:.4}, {b:.4}); mirror quintic λ = {:.4?}",
        quintic.spectrum
    ))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let f = modular();
    let s3 = dynamics::anosov_certificate(&f.symmetric_power_rep(3), &f, 12).map_err(|e| e.to_string())?;
    ensure((0.9..=1.1).contains(&s3.epsilon), format!("Sym3 slope {}", s3.epsilon))?;
    let (q, qm) = hypergeometric(&HypergeomParams::mirror_quintic());
    let quintic = dynamics::anosov_certificate(&q, &qm, 12).map_err(|e| e.to_string())?;
    ensure(quintic.epsilon >= 0.05, format!("mirror quintic ε̂ = {}", quintic.epsilon))?;
    let control = p("0,0,1/2,1/2", "1/5,2/5,3/5,4/5");
    let tag = hyperparams::classify_local_degeneration(control.alpha()).map_err(|e| e.to_string())?;
    let (c, cm) = hypergeometric(&control);
    let degenerate = dynamics::anosov_certificate(&c, &cm, 12).map_err(|e| e.to_string())?;
    ensure(degenerate.epsilon <= 0.01, format!("control ε̂ = {}", degenerate.epsilon))?;
    within(start.elapsed(), 600.0)?;
    Ok(format!(
        "Sym3 {:.3}, mirror quintic {:.3}, control ({:?}) {:.3}, {:.1} s",
        s3.epsilon,
        quintic.epsilon,
        tag.tag,
        degenerate.epsilon,
        start.elapsed().as_secs_f64()
    ))
}

fn nearest(x: &Vec64, pts: &[Vec64]) -> f64 {
    pts.iter().map(|y| linalg::projective_distance(x, y)).fold(f64::INFINITY, f64::min)
}

fn criterion_10() -> Outcome {
    let f = modular();
    let base = f.rep();
    let s3 = f.symmetric_power_rep(3);
    let samples = dynamics::limit_curve_samples(&s3, 20, 10.0).map_err(|e| e.to_string())?;
    ensure(!samples.is_empty(), "no Sym3 samples with gap ≥ 10")?;
    let mut worst: f64 = 0.0;
    for s in &samples {
        let g = base.eval(&s.word).map_err(|e| e.to_string())?;
        let fixed = match s.kind {
            SampleKind::Cusp => dynamics::cusp_line(&g).ok_or("no cusp line in SL2")?,
            _ => lie::kak(&g).map_err(|e| e.to_string())?.k_minus.column(0).into_owned(),
        };
        let v = Vec64::from_vec(fuchsian::veronese(fixed[0], fixed[1], 3));
        worst = worst.max(linalg::projective_distance(&v, &s.point));
    }
    ensure(worst <= 1e-6, format!("Veronese distance {worst:e}"))?;

    let q = quintic();
    for (rep, name, l) in [(&s3, "Sym3", 10), (&q, "mirror quintic", 4)] {
        let a = dynamics::limit_curve_samples(rep, l, 2.0).map_err(|e| e.to_string())?;
        let b: Vec<Vec64> = dynamics::limit_curve_samples(rep, l + 2, 2.0).map_err(|e| e.to_string())?.into_iter().map(|s| s.point).collect();
        for x in &a {
            let dist = nearest(&x.point, &b);
            ensure(dist <= 10.0 * (-x.gap).exp(), format!("{name}: sample at gap {} moved {dist:e}", x.gap))?;
        }
    }

    let nil = linalg::log_unipotent(&q.h0);
    let w = lie::weight_filtration(&nil).map_err(|e| e.to_string())?.w(-1);
    let mum = symplectic::pluecker(&LagrangianPlane::from_basis(&w).map_err(|e| e.to_string())?);
    let data: Vec<LimitDatum> = dynamics::ball_limit_data(&q, 4, 2.0).map_err(|e| e.to_string())?;
    let verdict = lie::stable_point_test(&mum, &data, Sp4Rep::Quadric).map_err(|e| e.to_string())?;
    ensure(verdict != Stability::Stable, "MUM Lagrangian tests stable")?;
    Ok(format!("{} Veronese samples, worst {worst:.1e}; refinement ok; MUM Lagrangian {verdict:?}", samples.len()))
}

fn criterion_11() -> Outcome {
    let rep = MonodromyRep::from_params(&HypergeomParams::mirror_quintic()).map_err(|e| e.to_string())?;
    let c = dynamics::cusp_line(&rep.h1).ok_or("h1 has no cusp line")?;
    let small = c.iter().filter(|x| x.abs() > 1e-9).fold(f64::INFINITY, |a, &b| if b.abs() < a.abs() { b } else { a });
    let c = (c / small).map(|x| x.round());
    let h0_inv = rep.h0.clone().try_inverse().ok_or("h0 is singular")?;
    let targets = [("c", c.clone()), ("h0·c", &rep.h0 * &c), ("h0⁻¹·c", h0_inv * &c)];
    let mut found = Vec::new();
    for (name, v) in &targets {
        let target = RationalTarget::Vector(dynamics::rational_vector(v).map_err(|e| e.to_string())?);
        match dynamics::rational_limit_classify(&rep, &target, 3).map_err(|e| e.to_string())? {
            LimitClass::CuspWitness(w) => {
                ensure(dynamics::verify_witness(&rep, &w, &target).map_err(|e| e.to_string())?, format!("{name}: witness {w} fails"))?;
                found.push(format!("{name} ← {w}"));
            }
            other => return Err(format!("{name}: {other:?}")),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let random = Vec64::from_fn(4, |_, _| rng.random_range(-9..=9) as f64);
    let target = RationalTarget::Vector(dynamics::rational_vector(&random).map_err(|e| e.to_string())?);
    let verdict = dynamics::rational_limit_classify(&rep, &target, 6).map_err(|e| e.to_string())?;
    ensure(verdict == LimitClass::NoWitnessWithin(6), format!("random vector {random:?}: {verdict:?}"))?;
    Ok(format!("{}; random vector: {verdict:?}", found.join(", ")))
}

fn run_cli(args: &[&str], out: &Path) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_hypermono"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(status.status.success(), format!("{args:?}: {}", String::from_utf8_lossy(&status.stderr)))
}

fn criterion_12() -> Outcome {
    let commands: &[&[&str]] = &[
        &["classify", "--params", "mirror-quintic"],
        &["monodromy", "--params", "mirror-quintic"],
        &["certify", "--params", "mirror-quintic", "--L", "8"],
        &["limitset", "--params", "mirror-quintic", "--L", "8", "--no-timestamp"],
        &["lyapunov", "--params", "mirror-quintic", "--T", "20000", "--ntraj", "8", "--seed", "12"],
        &["lyapunov", "--triangle", "2,3,inf", "--sym", "3", "--T", "20000", "--seed", "3"],
        &["minimality", "--params", "mirror-quintic", "--depth", "6"],
    ];
    let mut files = 0;
    for args in commands {
        let a = tempfile::tempdir().map_err(|e| e.to_string())?;
        let b = tempfile::tempdir().map_err(|e| e.to_string())?;
        run_cli(args, a.path())?;
        run_cli(args, b.path())?;
        for entry in std::fs::read_dir(a.path()).map_err(|e| e.to_string())? {
            let name = entry.map_err(|e| e.to_string())?.file_name();
            let x = std::fs::read(a.path().join(&name)).map_err(|e| e.to_string())?;
            let y = std::fs::read(b.path().join(&name)).map_err(|e| format!("{name:?}: {e}"))?;
            ensure(x == y, format!("{args:?}: {name:?} differs"))?;
            files += 1;
        }
    }
    Ok(format!("{} commands, {files} files identical", commands.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("table reproduction", criterion_1),
        ("reflection algebra", criterion_2),
        ("structure checks", criterion_3),
        ("exterior square dictionary", criterion_4),
        ("fiberwise unipotent", criterion_5),
        ("weight filtrations", criterion_6),
        ("unipotent growth", criterion_7),
        ("Lyapunov exponents", criterion_8),
        ("Anosov certification", criterion_9),
        ("limit-set consistency", criterion_10),
        ("rational limit points", criterion_11),
        ("determinism", criterion_12),
    ];
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if only.is_some_and(|o| o != i + 1) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.1} s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1} s): {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
