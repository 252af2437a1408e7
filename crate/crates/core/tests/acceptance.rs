//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines come out in order.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mixrec::claims::certify::{sample_params, SamplePlan};
use mixrec::claims::{certify, degree_bound, pieces, residual, ClaimId, ClaimInstance, Pipeline, VerdictStatus};
use mixrec::compare::FamilyId;
use mixrec::families::{classical_jacobi, jacobi_gf_f4, jacobi_sum, jacobi_uv, legendre_gf, legendre_ka};
use mixrec::report::{fit_claim, run_suite, SuiteConfig};
use mixrec::scalar::{int, poch};
use mixrec::{BatemanHalfPower, Convention, LegendreDenominator, Poly, Rational};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, elapsed: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn bateman(h: BatemanHalfPower) -> Convention {
    Convention { bateman_halfpower: h, ..Convention::default() }
}

fn legendre(d: LegendreDenominator) -> Convention {
    Convention { legendre_denominator: d, ..Convention::default() }
}

fn pochhammer_relations() -> Check {
    let start = Instant::now();
    let one = int(1);
    let mut checked = 0usize;
    for p in sample_params(2024, 25) {
        let a1 = &one + &p.alpha;
        let ab1 = &a1 + &p.beta;
        let b1 = &one + &p.beta;
        for k in 0..=20usize {
            ensure(poch(&a1, k + 1) == &a1 * &poch(&(&a1 + &one), k), || format!("alpha relation, k={k}"))?;
            ensure(poch(&b1, k + 1) == &b1 * &poch(&(&b1 + &one), k), || format!("beta relation, k={k}"))?;
            for n in 0..=20usize {
                let grown = &ab1 + &int(n as i64);
                ensure(poch(&ab1, n + 1) == &poch(&ab1, n) * &grown, || format!("(1+a+b)_(n+1), n={n}"))?;
                if n >= 1 {
                    let lhs = poch(&ab1, n + k + 1);
                    let rhs = &(&ab1 * &(&ab1 + &one)) * &poch(&(&ab1 + &int(2)), n - 1 + k);
                    ensure(lhs == rhs, || format!("(1+a+b)_(n+k+1), n={n} k={k}"))?;
                }
                checked += 1;
            }
        }
    }
    within(Duration::from_secs(1), start.elapsed())?;
    Ok(format!("{checked} index pairs over 25 parameter samples"))
}

fn classical_legendre(n_max: usize) -> Vec<Poly> {
    let mut out = vec![Poly::one(), Poly::z()];
    for n in 1..n_max {
        let next = &(&Poly::z() * &out[n]).scale(&int(2 * n as i64 + 1)) - &out[n - 1].scale(&int(n as i64));
        out.push(next.scale(&(int(1) / int(n as i64 + 1))));
    }
    out.truncate(n_max + 1);
    out
}

fn classical_reductions() -> Check {
    for (i, p) in sample_params(7, 25).iter().enumerate() {
        for n in 0..=10 {
            let two_var = jacobi_sum(n, p).map_err(|e| e.to_string())?.subst_w1();
            let one_var = classical_jacobi(n, p).map_err(|e| e.to_string())?;
            ensure(two_var == one_var, || format!("jacobi sample {i}, n={n}: {}", two_var.canonical()))?;
        }
    }
    for (n, expected) in classical_legendre(10).into_iter().enumerate() {
        let ka = legendre_ka::<Rational>(n, LegendreDenominator::Corrected).map_err(|e| e.to_string())?.subst_w1();
        ensure(ka == expected, || format!("legendre n={n}: {} vs {}", ka.canonical(), expected.canonical()))?;
    }
    Ok("jacobi over 25 samples, legendre n<=10".into())
}

fn jacobi_grid() -> Check {
    let start = Instant::now();
    let mut evaluations = 0usize;
    for claim in [ClaimId::Thm21, ClaimId::Cor22, ClaimId::Cor23] {
        for &pipeline in claim.pipelines() {
            let out = certify(claim, Convention::default(), pipeline, 10, 12, &SamplePlan::grid(42))
                .map_err(|e| e.to_string())?;
            ensure(out.holds(), || format!("{} {} fails: {:?}", claim.id(), pipeline.tag(), out.first_failure()))?;
            ensure(out.verdicts.len() == 10, || format!("{}: {} verdicts", claim.id(), out.verdicts.len()))?;
            for axis in &out.certificate.axes {
                ensure(axis.per_axis > degree_bound(axis.n), || format!("{}: axis at n={} too small", claim.id(), axis.n))?;
            }
            evaluations += out.certificate.evaluations;
        }
    }
    within(Duration::from_secs(10), start.elapsed())?;
    Ok(format!("{evaluations} exact evaluations, per-axis size D(n)+1"))
}

fn bateman_claims() -> Check {
    let start = Instant::now();
    let claims = [ClaimId::Thm31, ClaimId::Cor32, ClaimId::Cor33];
    let plan = SamplePlan::Random { seed: 42, count: 10 };
    for claim in claims {
        let pipeline = claim.pipelines()[0];
        let out = certify(claim, bateman(BatemanHalfPower::B), pipeline, 10, 12, &plan).map_err(|e| e.to_string())?;
        ensure(out.holds(), || format!("{} under B: {:?}", claim.id(), out.first_failure()))?;
        ensure(out.verdicts.len() == 13, || format!("{}: {} verdicts", claim.id(), out.verdicts.len()))?;
    }
    let cfg = SuiteConfig::default();
    let mut forms = Vec::new();
    for claim in claims {
        let pipeline = claim.pipelines()[0];
        let a = fit_claim(claim, bateman(BatemanHalfPower::A), pipeline, &cfg).map_err(|e| e.to_string())?;
        ensure(a.is_exact(), || format!("{} under A: {}", claim.id(), a.status.tag()))?;
        ensure(a.out_of_sample == Some(true), || format!("{} under A does not predict fresh samples", claim.id()))?;
        // stated coefficients, halved, must reproduce every fitted value
        let (train, _) = mixrec::report::fit_instances(claim, bateman(BatemanHalfPower::A), pipeline, &cfg);
        for (inst, fitted) in train.iter().zip(&a.coefficients) {
            let stated = pieces(inst).map_err(|e| e.to_string())?.stated;
            let halved: Vec<String> = stated.iter().map(|c| (c / &int(2)).to_string()).collect();
            ensure(fitted.values == halved, || format!("{}: {:?} vs halved {:?}", claim.id(), fitted.values, halved))?;
        }
        forms.push(format!("{} [{}]", claim.id(), a.rendered_forms().join(", ")));
    }
    within(Duration::from_secs(20), start.elapsed())?;
    Ok(format!("B holds; A fits {}", forms.join("; ")))
}

fn legendre_theorem() -> Check {
    let conv = legendre(LegendreDenominator::PaperLiteral);
    let out = certify(ClaimId::Thm41, conv, Pipeline::Direct, 10, 12, &SamplePlan::grid(42)).map_err(|e| e.to_string())?;
    let v2 = out.verdicts.iter().find(|v| v.n == 2).ok_or("no verdict at n=2")?;
    ensure(v2.status == VerdictStatus::Fails, || "n=2 does not fail".into())?;
    ensure(v2.residual_canonical.as_deref() == Some("1*z^-1"), || format!("n=2 residual {:?}", v2.residual_canonical))?;
    // same residual straight from the claim definition
    let direct = residual(&ClaimInstance::new(ClaimId::Thm41, 2, mixrec::Params::new(int(0), int(0)), conv, 12))
        .map_err(|e| e.to_string())?;
    ensure(direct.canonical() == "1*z^-1", || format!("direct residual {}", direct.canonical()))?;

    let fit = fit_claim(ClaimId::Thm41, conv, Pipeline::Direct, &SuiteConfig::default()).map_err(|e| e.to_string())?;
    ensure(fit.is_exact(), || format!("fit status {}", fit.status.tag()))?;
    let values = &fit.coefficients.first().ok_or("no coefficients")?.values;
    ensure(values == &["1", "1", "-1"], || format!("fitted {values:?}"))?;
    ensure(fit.out_of_sample == Some(true), || "fit does not reproduce n=11..15".into())?;
    let first = out.first_failure().map(|v| v.n).unwrap_or(0);
    Ok(format!("n=2 residual 1*z^-1 (first failing n={first}); (a,b,c)=(1,1,-1) exact over n<=10"))
}

fn generating_functions() -> Check {
    let gf = legendre_gf::<Rational>(12).map_err(|e| e.to_string())?;
    for n in 0..=12 {
        let ka = legendre_ka(n, LegendreDenominator::Corrected).map_err(|e| e.to_string())?;
        let c = gf.coeff(n as i64).map_err(|e| e.to_string())?;
        ensure(*c == ka, || format!("legendre n={n}: {} vs {}", c.canonical(), ka.canonical()))?;
    }
    let paper = legendre_ka::<Rational>(3, LegendreDenominator::PaperLiteral).map_err(|e| e.to_string())?;
    ensure(*gf.coeff(3).map_err(|e| e.to_string())? != paper, || "paper-literal matches at n=3".into())?;
    for p in sample_params(11, 5) {
        let f4 = jacobi_gf_f4(&p, 8).map_err(|e| e.to_string())?;
        for n in 0..=8 {
            let uv = jacobi_uv(n, &p).map_err(|e| e.to_string())?;
            ensure(*f4.coeff(n as i64).map_err(|e| e.to_string())? == uv, || format!("f4 n={n} at {:?}", p.alpha))?;
        }
    }
    Ok("legendre n<=12, f4 vs uv n<=8 on 5 samples".into())
}

fn divergence_witness() -> Check {
    let origin = mixrec::Params::new(int(0), int(0));
    let d = &jacobi_sum(1, &origin).map_err(|e| e.to_string())? - &jacobi_uv(1, &origin).map_err(|e| e.to_string())?;
    let expected = &Poly::one() - &Poly::s();
    ensure(d == expected, || format!("difference {}", d.canonical()))?;
    let out = Command::new(env!("CARGO_BIN_EXE_mixrec"))
        .args(["gf-compare", "--family", "jacobi", "--reps", "sum,uv", "--order", "4", "--format", "csv"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("gf-compare exited {:?}", out.status.code()))?;
    let golden = include_str!("golden/gf_jacobi_sum_uv.csv");
    let got = String::from_utf8_lossy(&out.stdout);
    ensure(got == golden, || format!("output differs from golden file:\n{got}"))?;
    ensure(golden.lines().any(|l| l == "jacobi,1,sum,uv,unequal,-1*s + 1"), || "golden lacks n=1 witness".into())?;
    Ok("sum - uv at n=1 is 1 - s, golden file matches".into())
}

fn float_agreement() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let points: Vec<(Rational, Rational)> = (0..100)
        .map(|_| {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            // dyadic, so z, w = s^2 and sqrt(w) are exact doubles
            let z = Rational::new(sign * rng.gen_range(103..=921), 1024);
            let s = Rational::new(rng.gen_range(324..=971), 1024);
            (z, s)
        })
        .collect();
    let mut families = Vec::new();
    for f in FamilyId::ALL {
        match f {
            FamilyId::LegendreKa => {
                families.extend(LegendreDenominator::ALL.map(|d| (f, legendre(d))));
            }
            FamilyId::Bateman => families.extend(BatemanHalfPower::ALL.map(|h| (f, bateman(h)))),
            _ => families.push((f, Convention::default())),
        }
    }
    let mut worst = 0.0f64;
    let mut count = 0usize;
    for p in sample_params(5, 3) {
        for (family, conv) in &families {
            for n in 0..=10 {
                let poly = family.build(n, &p, conv).map_err(|e| e.to_string())?;
                for (z, s) in &points {
                    let exact = poly.eval_at(z, s).map_err(|e| e.to_string())?.to_f64_nearest();
                    let w = (s * s).to_f64_nearest();
                    let float = poly
                        .eval_complex(Complex64::new(z.to_f64_nearest(), 0.0), Complex64::new(w, 0.0))
                        .map_err(|e| e.to_string())?;
                    let err = if exact.is_zero() { float.norm() } else { (float - exact).norm() / exact.abs() };
                    ensure(err <= 1e-12, || format!("{family} n={n} at z={z}, s={s}: relative error {err:e}"))?;
                    worst = worst.max(err);
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} evaluations, worst relative error {worst:.1e}"))
}

fn cli_report() -> Result<(Option<i32>, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_mixrec"))
        .args(["verify", "--all", "--format", "json"])
        .env("MIXREC_THREADS", "1")
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code(), out.stdout))
}

fn determinism() -> Check {
    let (code_a, a) = cli_report()?;
    let (code_b, b) = cli_report()?;
    ensure(code_a == Some(2) && code_b == Some(2), || format!("exit codes {code_a:?}, {code_b:?}"))?;
    ensure(!a.is_empty() && a == b, || "reports differ".into())?;
    Ok(format!("two reports of {} bytes are identical", a.len()))
}

fn full_suite() -> Check {
    std::env::set_var("MIXREC_THREADS", "1");
    let start = Instant::now();
    let report = run_suite(&SuiteConfig::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    within(Duration::from_secs(60), elapsed)?;
    ensure(report.summary.len() == ClaimId::ALL.len(), || "summary incomplete".into())?;
    Ok(format!("{} entries, single thread", report.claims.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("pochhammer conjugate relations", pochhammer_relations),
        ("classical reductions", classical_reductions),
        ("jacobi claims certify on a grid", jacobi_grid),
        ("bateman claims under B, halved fit under A", bateman_claims),
        ("legendre theorem witness and fitted correction", legendre_theorem),
        ("generating-function cross-checks", generating_functions),
        ("representation-divergence witness", divergence_witness),
        ("float vs exact evaluation", float_agreement),
        ("verify --all is byte-deterministic", determinism),
        ("default suite under 60 s single-threaded", full_suite),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
