//! End-to-end acceptance run: one PASS/FAIL line per criterion, each with
//! its verdict, elapsed time and runtime budget.  Exits nonzero on any FAIL.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use eisenstein_cli::suites::run_suite;
use eisenstein_cli::{CommandRequest, Suite, SuiteReport};
use eisenstein_core::lie::residue_at_torsion;
use eisenstein_core::numeric::{hurwitz_zeta, li_at_root_of_unity, BigReal};
use eisenstein_core::Rational;
use serde_json::Value;

type Outcome = Result<String, String>;
/// Name, runtime budget in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

const CRVZ_TERMS: i64 = 70;
/// Ten orders below the 40-digit target, so rounding in the comparison
/// itself never decides the verdict.
const FORTY_DIGITS: f64 = 1e-40;
const REGULATOR_TOLERANCE: f64 = 1e-35;
const NEGATIVE_CONTROL_FLOOR: f64 = 1e-3;
const PRECISION_BITS: u32 = 200;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn suite(s: Suite, n: u32, k: usize, d: usize) -> Result<SuiteReport, String> {
    let req = CommandRequest {
        d,
        precision_bits: PRECISION_BITS,
        ..CommandRequest::new(s).with(n, k)
    };
    req.validate().map_err(|e| e.to_string())?;
    run_suite(s, &req).map_err(|e| format!("{} N={n} k={k}: {e}", s.name()))
}

/// Fails with the first failing case of a report, if any.
fn all_pass(r: &SuiteReport) -> Result<usize, String> {
    match r.cases.iter().find(|c| !c.passed) {
        Some(c) => Err(format!(
            "{}/{} failed at {}",
            r.suite,
            c.name,
            Value::Object(c.params.clone())
        )),
        None => Ok(r.cases.len()),
    }
}

/// False for NaN, so an unparsable number never passes.
fn below(x: f64, bound: f64) -> bool {
    x < bound
}

fn num(v: &Value) -> f64 {
    v.as_str().and_then(|s| s.parse().ok()).unwrap_or(f64::NAN)
}

fn binomial(n: i64, k: i64) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * q(n - i, i + 1))
}

/// Bernoulli numbers from `sum_{j<=m} C(m+1, j) B_j = 0`.
fn bernoulli_numbers(upto: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for m in 1..=upto as i64 {
        let s: Rational = (0..m).map(|j| binomial(m + 1, j) * &b[j as usize]).sum();
        b.push(-s / Rational::from(m + 1));
    }
    b
}

fn bernoulli_poly(b: &[Rational], n: usize, x: &Rational) -> Rational {
    (0..=n as i64)
        .map(|j| binomial(n as i64, j) * &b[j as usize] * x.pow((n as i64 - j) as i32))
        .sum()
}

/// Cohen, Rodriguez Villegas and Zagier acceleration of `sum (-1)^k a_k`.
fn crvz(a: impl Fn(i64) -> Rational, n: i64) -> Rational {
    let (mut t0, mut t1) = (Rational::one(), Rational::from(3));
    for _ in 1..n {
        let t2 = &t1 * Rational::from(6) - &t0;
        t0 = t1;
        t1 = t2;
    }
    let d = t1;
    let mut b = -Rational::one();
    let mut c = -d.clone();
    let mut s = Rational::zero();
    for k in 0..n {
        c = &b - &c;
        s += &c * a(k);
        b = b * Rational::from(2 * (k + n) * (k - n)) / Rational::from((2 * k + 1) * (k + 1));
    }
    s / d
}

fn eta2() -> Rational {
    crvz(|k| q(1, (k + 1) * (k + 1)), CRVZ_TERMS)
}

/// `pi = 4 (atan(1/2) + atan(1/3))`.
fn pi_oracle() -> Rational {
    let atan = |x: i64| crvz(|k| q(1, 2 * k + 1) * q(1, x).pow(2 * k as i32 + 1), 90);
    (atan(2) + atan(3)) * Rational::from(4)
}

fn gap(x: &BigReal, r: &Rational) -> f64 {
    (x - &BigReal::from_rational(r, x.bits())).to_f64().abs()
}

fn bernoulli() -> Outcome {
    let r = suite(Suite::Bernoulli, 8, 1, 8)?;
    let grid = r.case("distribution_relation").count();
    let series = r.case("residue_series").count();
    // 13 weights, 6 moduli, 4 points; N' <= 8 gives 36 residues.
    if grid != 13 * 6 * 4 || series != 36 {
        return Err(format!("grid {grid} cases, series {series} cases"));
    }
    all_pass(&r)?;
    Ok(format!("{grid} distribution cases, {series} series cases"))
}

fn horospherical() -> Outcome {
    let mut cases = 0;
    for n in 3..=5 {
        for k in 0..=4 {
            let r = suite(Suite::Horospherical, n, k, 8)?;
            cases += all_pass(&r)?;
            let trials = r.case("invariants").count();
            if trials != 50 {
                return Err(format!("N={n} k={k}: {trials} random divisors"));
            }
            let s = &r
                .case("surjectivity")
                .next()
                .ok_or("no surjectivity case")?
                .detail;
            if s["degree_zero_divisor_rank"] != s["target_dimension"] {
                return Err(format!("N={n} k={k}: rank {s}"));
            }
            if n == 3 && s["target_dimension"] != 4 {
                return Err(format!(
                    "N=3 k={k}: target dimension {}",
                    s["target_dimension"]
                ));
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn psi_u() -> Outcome {
    let mut count = 0;
    for n in 3..=7 {
        for k in 1..=4 {
            let r = suite(Suite::PsiU, n, k, 8)?;
            all_pass(&r)?;
            for c in &r.cases {
                if c.detail["residue_zero_at_infinity"] != true {
                    return Err(format!("N={n} k={k} {}", Value::Object(c.params.clone())));
                }
                count += 1;
            }
            if r.cases.len() != n as usize - 1 {
                return Err(format!("N={n} k={k}: {} values of u", r.cases.len()));
            }
        }
    }
    Ok(format!("{count} divisors with residue zero at infinity"))
}

fn lie() -> Outcome {
    let at6 = suite(Suite::LieVerify, 3, 1, 6)?;
    let c39: Vec<_> = at6.case("c39").collect();
    if c39.len() != 20 || c39.iter().any(|c| !c.passed) {
        return Err(format!(
            "c39: {} of {} hold",
            c39.iter().filter(|c| c.passed).count(),
            c39.len()
        ));
    }
    let bch = at6.case("bch_degree3").next().ok_or("no bch case")?;
    if !bch.passed || bch.detail["[X,[X,Y]]"] != "1/12" || bch.detail["[Y,[X,Y]]"] != "-1/12" {
        return Err(format!("bch: {}", bch.detail));
    }
    let mut c310 = 0;
    for n in 3..=5 {
        let r = suite(Suite::LieVerify, n, 1, 8)?;
        for c in r.case("c310") {
            if !c.passed {
                return Err(format!("c310 at {}", Value::Object(c.params.clone())));
            }
            c310 += 1;
        }
        if r.case("c310").filter(|c| c.params["identity"] == 7).count() != n as usize {
            return Err(format!("N={n}: not every a covered"));
        }
    }
    Ok(format!(
        "20 c39 pairs, {c310} c310 identities, BCH 1/12 and -1/12"
    ))
}

fn residue() -> Outcome {
    let b = bernoulli_numbers(7);
    let mut count = 0;
    for k in 0..=5usize {
        let fact: i64 = (1..=k as i64).product();
        for n in 2..=7u32 {
            let values: Vec<(u32, Value)> = if n >= 3 {
                let r = suite(Suite::Residue, n, k, 8)?;
                all_pass(&r)?;
                r.cases
                    .iter()
                    .map(|c| {
                        (
                            c.params["a"].as_u64().unwrap() as u32,
                            c.detail["value"].clone(),
                        )
                    })
                    .collect()
            } else {
                (0..n)
                    .map(|a| {
                        let rep = residue_at_torsion(k, a, n, k + 3).map_err(|e| e.to_string())?;
                        Ok((a, serde_json::to_value(&rep.lie_value).unwrap()))
                    })
                    .collect::<Result<_, String>>()?
            };
            if values.len() != n as usize {
                return Err(format!("N={n} k={k}: {} residues", values.len()));
            }
            for (a, v) in values {
                let expect = -q(n as i64, (k as i64 + 2) * fact)
                    * bernoulli_poly(&b, k + 2, &q(a as i64, n as i64));
                let got: Rational = serde_json::from_value(v).map_err(|e| e.to_string())?;
                if got != expect {
                    return Err(format!("k={k} N={n} a={a}: {got} vs {expect}"));
                }
                count += 1;
            }
        }
    }
    let spot = |k, a, n| {
        residue_at_torsion(k, a, n, k + 3)
            .map(|r| r.lie_value)
            .map_err(|e| e.to_string())
    };
    if spot(1, 1, 3)? != q(-1, 27) || spot(0, 1, 3)? != q(1, 12) {
        return Err("spot values".into());
    }
    Ok(format!("{count} residues, spot values -1/27 and 1/12"))
}

fn consistency() -> Outcome {
    let mut checks = 0;
    for n in 3..=4 {
        for k in 0..=3 {
            let r = suite(Suite::Consistency, n, k, 8)?;
            all_pass(&r)?;
            checks += r
                .cases
                .iter()
                .map(|c| c.detail["representatives_checked"].as_u64().unwrap_or(0))
                .sum::<u64>();
            let trials: std::collections::BTreeSet<_> = r
                .cases
                .iter()
                .map(|c| c.params["trial"].to_string())
                .collect();
            if trials.len() != 20 {
                return Err(format!("N={n} k={k}: {} divisors", trials.len()));
            }
        }
    }
    Ok(format!("{checks} (divisor, representative) pairs"))
}

fn regulator() -> Outcome {
    let eta = eta2();
    let pi = pi_oracle();
    let pi2 = &pi * &pi;
    let li = li_at_root_of_unity(2, 1, 2, PRECISION_BITS).map_err(|e| e.to_string())?;
    let zh = hurwitz_zeta(2, &q(1, 2), PRECISION_BITS).map_err(|e| e.to_string())?;
    let gaps = [
        gap(&li.value.re, &-eta.clone()),
        gap(&li.value.re, &(-&pi2 / Rational::from(12))),
        li.value.im.to_f64().abs(),
        gap(&zh.value.re, &(eta * Rational::from(6))),
        gap(&zh.value.re, &(&pi2 / Rational::from(2))),
    ];
    if let Some(g) = gaps.iter().find(|g| !below(**g, FORTY_DIGITS)) {
        return Err(format!("special value off by {g:e}"));
    }
    let mut worst = 0f64;
    let mut count = 0;
    for n in [3, 5] {
        for k in 1..=2 {
            let r = suite(Suite::Regulator, n, k, 8)?;
            for c in &r.cases {
                let diff = num(&c.detail["difference"]);
                if !below(diff, REGULATOR_TOLERANCE) {
                    return Err(format!(
                        "cor144 {}: {diff:e}",
                        Value::Object(c.params.clone())
                    ));
                }
                worst = worst.max(diff);
                count += 1;
            }
            let expect = (n as usize - 1) * (n as usize - 1);
            if r.cases.len() != expect {
                return Err(format!(
                    "N={n} k={k}: {} of {expect} (u, embedding) pairs",
                    r.cases.len()
                ));
            }
        }
    }
    Ok(format!(
        "special values within {FORTY_DIGITS:e}; {count} regulator checks, worst {worst:e}"
    ))
}

fn kernel_relations() -> Outcome {
    let mut worst = 0f64;
    let mut count = 0;
    for n in 3..=5 {
        for k in 1..=3 {
            let r = suite(Suite::KernelRelations, n, k, 8)?;
            for c in r.case("relation") {
                let res = num(&c.detail["residual"]);
                if !below(res, REGULATOR_TOLERANCE) {
                    return Err(format!(
                        "relation {}: {res:e}",
                        Value::Object(c.params.clone())
                    ));
                }
                worst = worst.max(res);
                count += 1;
            }
            for c in r.case("negative_control") {
                let res = num(&c.detail["residual"]);
                if !below(NEGATIVE_CONTROL_FLOOR, res) {
                    return Err(format!(
                        "negative control {}: {res:e}",
                        Value::Object(c.params.clone())
                    ));
                }
            }
            if r.case("negative_control").count() == 0 || r.case("relation").count() == 0 {
                return Err(format!("N={n} k={k}: missing cases"));
            }
        }
    }
    Ok(format!(
        "{count} residuals, worst {worst:e}; negative controls above {NEGATIVE_CONTROL_FLOOR:e}"
    ))
}

fn cli_all() -> Outcome {
    let once = || {
        Command::new(env!("CARGO_BIN_EXE_eisenstein"))
            .arg("all")
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (once()?, once()?);
    if a.status.code() != Some(0) || b.status.code() != Some(0) {
        return Err(format!(
            "exit {:?} and {:?}",
            a.status.code(),
            b.status.code()
        ));
    }
    if a.stdout != b.stdout {
        return Err("reports differ between runs".into());
    }
    Ok(format!("exit 0 twice, {} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("bernoulli", 5, bernoulli),
        ("horospherical", 30, horospherical),
        ("psi-u residue zero", 30, psi_u),
        ("lie identities", 120, lie),
        ("residue closed form", 120, residue),
        ("consistency", 30, consistency),
        ("numeric regulator", 120, regulator),
        ("kernel relations", 180, kernel_relations),
        ("cli all", 120, cli_all),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(budget);
        let (mark, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over budget; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if mark == "FAIL" {
            failed += 1;
        }
        println!(
            "{mark} {} {name} [{:.2}s of {budget}s] {detail}",
            i + 1,
            took.as_secs_f64()
        );
    }
    println!("{} of 9 criteria pass", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
