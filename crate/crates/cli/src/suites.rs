//! One function per verification suite.  Each returns its cases in the
//! canonical order of its parameter loops.

use eisenstein_core::exact::{
    bernoulli_number, bernoulli_polynomial, distribution_relation_check, residue_generating_series,
};
use eisenstein_core::lie::{
    bch, hall_basis, residue_at_torsion, u_tilde_invariance_check, verify_c310, verify_c39,
    C310Identity, LieElement,
};
use eisenstein_core::modular::{
    dir_l_coefficients, group_tables, hodge_coefficients, horospherical, horospherical_value,
    is_in_isom_minus_infinity, kernel_basis, nonzero_points, psi_u, residue_consistency_check,
    surjectivity_report, Divisor, ModMatrix,
};
use eisenstein_core::numeric::{
    embeddings, kernel_relation_residual, verify_cor144, NumericReport,
};
use eisenstein_core::{Rational, Result as CoreResult};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::io::load_divisor;
use crate::report::{Case, SuiteReport};
use crate::request::{CommandRequest, Suite};

/// Random divisors drawn per horospherical and consistency run.
pub const RANDOM_DIVISORS: usize = 50;
pub const CONSISTENCY_DIVISORS: usize = 20;
pub const RANDOM_GROUP_ELEMENTS: usize = 20;
pub const LIE_PAIRS: usize = 20;
/// Threshold the perturbed kernel element must exceed.
pub const NEGATIVE_CONTROL_FLOOR: f64 = 1e-3;

/// `10^-(digits - 5)` where `digits` is the decimal precision requested.
pub fn numeric_tolerance(precision_bits: u32) -> f64 {
    let digits = (precision_bits as f64 * std::f64::consts::LOG10_2).floor() as i32;
    10f64.powi(-(digits - 5))
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// A stream per suite so that adding cases to one suite leaves the others alone.
fn rng_for(req: &CommandRequest, suite: Suite) -> ChaCha8Rng {
    let tag = suite as u64 + 1;
    ChaCha8Rng::seed_from_u64(req.seed ^ (tag << 56) ^ ((req.n as u64) << 32) ^ req.k as u64)
}

fn random_divisor(rng: &mut ChaCha8Rng, n: u32) -> CoreResult<Divisor> {
    let points = nonzero_points(n);
    let size = rng.gen_range(1..=6);
    let terms: Vec<_> = (0..size)
        .map(|_| {
            let t = points[rng.gen_range(0..points.len())];
            (t, q(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
        })
        .collect();
    Divisor::from_terms(n, terms)
}

fn input_divisor(req: &CommandRequest) -> CliResult<Option<Divisor>> {
    let Some(path) = &req.input else {
        return Ok(None);
    };
    let psi = load_divisor(path)?;
    if psi.modulus() != req.n {
        return Err(CliError::Usage(format!(
            "{} has N = {} but the run uses N = {}; pass -N {}",
            path.display(),
            psi.modulus(),
            req.n,
            psi.modulus()
        )));
    }
    Ok(Some(psi))
}

pub fn run_suite(suite: Suite, req: &CommandRequest) -> CliResult<SuiteReport> {
    let cases = match suite {
        Suite::Bernoulli => bernoulli(req)?,
        Suite::Horospherical => horospherical_suite(req)?,
        Suite::Kernel => kernel(req)?,
        Suite::PsiU => psi_u_suite(req)?,
        Suite::LieVerify => lie_verify(req)?,
        Suite::Residue => residue(req)?,
        Suite::Regulator => regulator(req)?,
        Suite::KernelRelations => kernel_relations(req)?,
        Suite::Consistency => consistency(req)?,
        Suite::All => return Err(CliError::Usage("`all` is not a single suite".into())),
    };
    Ok(SuiteReport::new(suite.name(), cases))
}

fn bernoulli(req: &CommandRequest) -> CliResult<Vec<Case>> {
    let mut cases = Vec::new();
    let k = req.k;
    let p = bernoulli_polynomial(k);
    let kq = Rational::from(k as i64);
    let derivative_ok = k == 0 || p.derivative() == bernoulli_polynomial(k - 1).scale(&kq);
    let jump = p.eval(&Rational::one()) - p.eval(&Rational::zero());
    let jump_ok = jump
        == if k == 1 {
            Rational::one()
        } else {
            Rational::zero()
        };
    cases.push(Case::new(
        "polynomial",
        json!({ "k": k }),
        derivative_ok && jump_ok,
        json!({
            "coefficients": p.coeffs(),
            "bernoulli_number": bernoulli_number(k),
            "derivative_relation": derivative_ok,
            "unit_increment": jump,
        }),
    ));
    let xs = [q(0, 1), q(1, 2), q(1, 3), q(2, 5)];
    for k in 0..=12 {
        for m in 1..=6u32 {
            for x in &xs {
                let c = distribution_relation_check(k, m, x)?;
                cases.push(Case::new(
                    "distribution_relation",
                    json!({ "k": k, "m": m, "x": x }),
                    c.holds,
                    json!({ "lhs": c.lhs, "rhs": c.rhs }),
                ));
            }
        }
    }
    let order = 20;
    for n in 1..=8u32.max(req.n) {
        for a in 0..n {
            let (lhs, rhs) = residue_generating_series(a, n, order)?;
            cases.push(Case::new(
                "residue_series",
                json!({ "N": n, "a": a, "order": order }),
                lhs == rhs,
                json!({ "constant_term": lhs.coeff(0), "linear_term": lhs.coeff(1) }),
            ));
        }
    }
    Ok(cases)
}

struct Invariants {
    literal_form: bool,
    p_invariance: bool,
    parity: bool,
    equivariance: bool,
}

impl Invariants {
    fn all(&self) -> bool {
        self.literal_form && self.p_invariance && self.parity && self.equivariance
    }

    fn to_json(&self) -> Value {
        json!({
            "literal_form": self.literal_form,
            "p_invariance": self.p_invariance,
            "parity": self.parity,
            "equivariance": self.equivariance,
        })
    }
}

/// Checks the image of `psi` against the literal definition at `u g`,
/// `-g` and, for each `h`, against the image of the translate `h . psi`.
fn check_invariants(k: usize, psi: &Divisor, hs: &[ModMatrix]) -> CoreResult<Invariants> {
    let n = psi.modulus();
    let tables = group_tables(n)?;
    let f = horospherical(k, psi)?;
    let sign = if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    let mut inv = Invariants {
        literal_form: true,
        p_invariance: true,
        parity: true,
        equivariance: true,
    };
    for g in &tables.cosets {
        let value = f.eval(g)?;
        inv.literal_form &= horospherical_value(k, psi, g)? == value;
        for u in &tables.parabolic {
            inv.p_invariance &= horospherical_value(k, psi, &u.mul(g)?)? == value;
        }
        inv.parity &= horospherical_value(k, psi, &g.neg())? == &sign * &value;
    }
    for h in hs {
        let moved = horospherical(k, &psi.translate(h)?)?;
        for g in &tables.cosets {
            inv.equivariance &= moved.eval(g)? == horospherical_value(k, psi, &g.mul(h)?)?;
        }
    }
    Ok(inv)
}

fn horospherical_suite(req: &CommandRequest) -> CliResult<Vec<Case>> {
    let (n, k) = (req.n, req.k);
    let mut rng = rng_for(req, Suite::Horospherical);
    let tables = group_tables(n)?;
    let draw_hs = |rng: &mut ChaCha8Rng| -> Vec<ModMatrix> {
        (0..RANDOM_GROUP_ELEMENTS)
            .map(|_| tables.elements[rng.gen_range(0..tables.elements.len())])
            .collect()
    };
    let mut cases = Vec::new();
    let psi = match input_divisor(req)? {
        Some(psi) => psi,
        None => Divisor::delta(n, 1, 0, Rational::one())?,
    };
    let hs = draw_hs(&mut rng);
    let inv = check_invariants(k, &psi, &hs)?;
    let f = horospherical(k, &psi)?;
    cases.push(Case::new(
        "image",
        json!({ "N": n, "k": k }),
        inv.all(),
        json!({
            "divisor": psi,
            "degree": psi.degree(),
            "values": f,
            "residue_zero_at_infinity": is_in_isom_minus_infinity(&f),
            "invariants": inv.to_json(),
        }),
    ));
    for trial in 0..RANDOM_DIVISORS {
        let psi = random_divisor(&mut rng, n)?;
        let hs = draw_hs(&mut rng);
        let inv = check_invariants(k, &psi, &hs)?;
        cases.push(Case::new(
            "invariants",
            json!({ "N": n, "k": k, "trial": trial }),
            inv.all(),
            inv.to_json(),
        ));
    }
    let s = surjectivity_report(k, n)?;
    cases.push(Case::new(
        "surjectivity",
        json!({ "N": n, "k": k }),
        s.surjective,
        json!(s),
    ));
    Ok(cases)
}

fn kernel(req: &CommandRequest) -> CliResult<Vec<Case>> {
    let (n, k) = (req.n, req.k);
    let mut cases = Vec::new();
    for (name, degree_zero) in [
        ("kernel_element", false),
        ("degree_zero_kernel_element", true),
    ] {
        for (i, psi) in kernel_basis(k, n, degree_zero)?.iter().enumerate() {
            let vanishes = horospherical(k, psi)?.is_zero();
            cases.push(Case::new(
                name,
                json!({ "N": n, "k": k, "index": i }),
                vanishes && (!degree_zero || psi.is_degree_zero()),
                json!({ "divisor": psi, "degree": psi.degree() }),
            ));
        }
    }
    let s = surjectivity_report(k, n)?;
    cases.push(Case::new(
        "surjectivity",
        json!({ "N": n, "k": k }),
        s.surjective,
        json!(s),
    ));
    Ok(cases)
}

fn residues(req: &CommandRequest) -> Vec<i64> {
    match req.u {
        Some(u) => vec![u.rem_euclid(req.n as i64)],
        None => (1..req.n as i64).collect(),
    }
}

fn psi_u_suite(req: &CommandRequest) -> CliResult<Vec<Case>> {
    let (n, k) = (req.n, req.k);
    let mut cases = Vec::new();
    for u in residues(req) {
        let psi = psi_u(k, u, n)?;
        let image = horospherical(k, &psi)?;
        let residue_zero = is_in_isom_minus_infinity(&image);
        let hodge = hodge_coefficients(k, &psi)?;
        let dir = dir_l_coefficients(k, &psi)?;
        let collapses =
            hodge.combination.terms().collect::<Vec<_>>() == vec![(u as u32, &Rational::one())];
        cases.push(Case::new(
            "psi_u",
            json!({ "N": n, "k": k, "u": u }),
            residue_zero && collapses,
            json!({
                "divisor": psi,
                "degree": psi.degree(),
                "residue_zero_at_infinity": residue_zero,
                "dir_l": dir,
                "dir_l_text": dir.combination.to_string(),
                "hodge": hodge,
                "hodge_text": hodge.combination.to_string(),
            }),
        ));
    }
    Ok(cases)
}

fn random_lie(
    rng: &mut ChaCha8Rng,
    d: usize,
    max_degree: usize,
    drop_e2: bool,
) -> CoreResult<LieElement> {
    let mut terms = Vec::new();
    for h in hall_basis(d)?
        .into_iter()
        .filter(|h| h.degree() <= max_degree)
    {
        if drop_e2 && h.to_string() == "e2" {
            continue;
        }
        if rng.gen_bool(0.5) {
            terms.push((h, Rational::from(rng.gen_range(-3..=3))));
        }
    }
    LieElement::from_terms(d, terms)
}

fn lie_verify(req: &CommandRequest) -> CliResult<Vec<Case>> {
    let (n, d) = (req.n, req.d);
    let mut cases = Vec::new();

    // Degree-3 BCH coefficients, against log(exp X exp Y) formed directly in
    // the associative algebra.
    let x = LieElement::generator(d, 1)?;
    let y = LieElement::generator(d, 2)?;
    let z = bch(&x, &y)?;
    let direct = x.exp_assoc().mul(&y.exp_assoc()).log()?;
    let assoc_ok = z.to_assoc() == direct && LieElement::from_assoc(&direct)? == z;
    let xy = x.bracket(&y)?;
    let xxy = x.bracket(&xy)?;
    let yxy = y.bracket(&xy)?;
    let cubic = z.component(3);
    let expect = &xxy.scale(&q(1, 12)) - &yxy.scale(&q(1, 12));
    let coeff_on = |target: &LieElement| -> Rational {
        let (h, c) = target.terms().next().expect("nonzero bracket");
        cubic.coeff(&h) / c
    };
    cases.push(Case::new(
        "bch_degree3",
        json!({ "D": d }),
        assoc_ok && cubic == expect,
        json!({
            "matches_associative_oracle": assoc_ok,
            "[X,[X,Y]]": coeff_on(&xxy),
            "[Y,[X,Y]]": coeff_on(&yxy),
            "bch": z.truncate(3)?,
        }),
    ));

    let mut rng = rng_for(req, Suite::LieVerify);
    for trial in 0..LIE_PAIRS {
        let u = random_lie(&mut rng, d, 3, false)?;
        let v = random_lie(&mut rng, d, 3, true)?;
        let c = verify_c39(&u, &v)?;
        cases.push(Case::new(
            "c39",
            json!({ "D": d, "trial": trial }),
            c.equal,
            json!({ "U": u, "V": v, "lhs": c.lhs, "rhs": c.rhs }),
        ));
    }

    for id in [C310Identity::BoundaryLoop, C310Identity::MonodromyAtOrigin] {
        let c = verify_c310(id, 0, n, d)?;
        cases.push(Case::new(
            "c310",
            json!({ "identity": id.number(), "N": n, "D": d }),
            c.equal,
            json!({ "lhs": c.lhs, "rhs": c.rhs }),
        ));
    }
    let a_range: Vec<u32> = match req.a {
        Some(a) => vec![a],
        None => (0..n).collect(),
    };
    for &a in &a_range {
        let c = verify_c310(C310Identity::MonodromyAtTorsion, a, n, d)?;
        cases.push(Case::new(
            "c310",
            json!({ "identity": 7, "N": n, "a": a, "D": d }),
            c.equal,
            json!({ "lhs": c.lhs, "rhs": c.rhs }),
        ));
    }
    for &a in &a_range {
        let b = if a == 0 { 1 } else { 0 };
        let ok = u_tilde_invariance_check(a, b, n, d)?;
        cases.push(Case::new(
            "u_tilde_invariance",
            json!({ "N": n, "a": a, "b": b, "D": d }),
            ok,
            Value::Null,
        ));
    }
    Ok(cases)
}

fn residue(req: &CommandRequest) -> CliResult<Vec<Case>> {
    let (n, k) = (req.n, req.k);
    let d = req.d.max(k + 3);
    let a_range: Vec<u32> = match req.a {
        Some(a) => vec![a],
        None => (0..n).collect(),
    };
    let mut cases = Vec::new();
    for a in a_range {
        let r = residue_at_torsion(k, a, n, d)?;
        cases.push(Case::new(
            "residue",
            json!({ "N": n, "k": k, "a": a, "D": d }),
            r.equal && r.coefficients_match,
            json!({ "value": r.lie_value, "report": r }),
        ));
    }
    Ok(cases)
}

fn regulator(req: &CommandRequest) -> CliResult<Vec<Case>> {
    let (n, k, bits) = (req.n, req.k, req.precision_bits);
    let tol = numeric_tolerance(bits);
    let mut cases = Vec::new();
    for u in residues(req) {
        for sigma in embeddings(n) {
            let c = verify_cor144(k, u, n, sigma, bits)?;
            cases.push(Case::new(
                "cor144",
                json!({ "N": n, "k": k, "u": u, "j": sigma.j }),
                c.passes(tol),
                json!({
                    "lhs": NumericReport::new(k, sigma, &c.lhs),
                    "rhs": NumericReport::new(k, sigma, &c.rhs),
                    "difference": format!("{:.3e}", c.difference),
                    "error_budget": format!("{:.3e}", c.error_bound),
                    "tolerance": format!("{tol:.0e}"),
                }),
            ));
        }
    }
    Ok(cases)
}

fn kernel_relations(req: &CommandRequest) -> CliResult<Vec<Case>> {
    let (n, k, bits) = (req.n, req.k, req.precision_bits);
    let tol = numeric_tolerance(bits);
    let mut cases = Vec::new();
    let basis = kernel_basis(k, n, false)?;
    for (i, psi) in basis.iter().enumerate() {
        for sigma in embeddings(n) {
            let r = kernel_relation_residual(k, psi, sigma, bits)?;
            cases.push(Case::new(
                "relation",
                json!({ "N": n, "k": k, "index": i, "j": sigma.j }),
                r.in_kernel && r.magnitude + r.value.error_bound < tol,
                json!({
                    "divisor": psi,
                    "residual": format!("{:.3e}", r.magnitude),
                    "error_budget": format!("{:.3e}", r.value.error_bound),
                    "tolerance": format!("{tol:.0e}"),
                }),
            ));
        }
    }
    if let Some(first) = basis.first() {
        let bumped = first.add(&Divisor::delta(n, 1, 0, Rational::one())?)?;
        let sigma = embeddings(n)[0];
        let r = kernel_relation_residual(k, &bumped, sigma, bits)?;
        cases.push(Case::new(
            "negative_control",
            json!({ "N": n, "k": k, "j": sigma.j }),
            !r.in_kernel && r.magnitude > NEGATIVE_CONTROL_FLOOR,
            json!({
                "divisor": bumped,
                "residual": format!("{:.3e}", r.magnitude),
                "floor": format!("{NEGATIVE_CONTROL_FLOOR:.0e}"),
            }),
        ));
    }
    if let Some(psi) = input_divisor(req)? {
        for sigma in embeddings(n) {
            let r = kernel_relation_residual(k, &psi, sigma, bits)?;
            let small = r.magnitude + r.value.error_bound < tol;
            // Only divisors in the kernel are expected to give a relation.
            cases.push(Case::new(
                "input_divisor",
                json!({ "N": n, "k": k, "j": sigma.j }),
                !r.in_kernel || small,
                json!({ "in_kernel": r.in_kernel, "residual": format!("{:.3e}", r.magnitude) }),
            ));
        }
    }
    Ok(cases)
}

fn consistency(req: &CommandRequest) -> CliResult<Vec<Case>> {
    let (n, k) = (req.n, req.k);
    let mut rng = rng_for(req, Suite::Consistency);
    let reps = group_tables(n)?.cosets.clone();
    let mut divisors: Vec<(Value, Divisor)> = Vec::new();
    if let Some(psi) = input_divisor(req)? {
        divisors.push((json!("input"), psi));
    }
    for trial in 0..CONSISTENCY_DIVISORS {
        divisors.push((json!(trial), random_divisor(&mut rng, n)?));
    }
    let mut cases = Vec::new();
    for (trial, psi) in divisors {
        let mut mismatches = Vec::new();
        for g in &reps {
            let c = residue_consistency_check(k, &psi, g)?;
            if !c.equal {
                mismatches.push(json!({ "g": g, "lhs": c.lhs, "rhs": c.rhs }));
            }
        }
        cases.push(Case::new(
            "consistency",
            json!({ "N": n, "k": k, "trial": trial }),
            mismatches.is_empty(),
            json!({ "representatives_checked": reps.len(), "mismatches": mismatches }),
        ));
    }
    Ok(cases)
}
