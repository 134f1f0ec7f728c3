use eisenstein_core::exact::bernoulli_polynomial;
use eisenstein_core::modular::{
    act, coset_representatives, dir_l_coefficients, group_tables, hodge_coefficients,
    horospherical, horospherical_value, is_in_isom_minus_infinity, kernel_basis, nonzero_points,
    phi_infinity, psi_u, residue_consistency_check, surjectivity_report, Divisor, ModMatrix,
    TorsionPoint,
};
use eisenstein_core::{Error, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Mat = [i64; 4];

fn mat_mul(x: Mat, y: Mat, n: i64) -> Mat {
    let [a, b, c, d] = x;
    let [e, f, g, h] = y;
    [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h].map(|v| v.rem_euclid(n))
}

fn mat_inverse(x: Mat, n: i64) -> Mat {
    let [a, b, c, d] = x;
    let det = (a * d - b * c).rem_euclid(n);
    let inv = (1..n)
        .find(|i| (i * det) % n == 1)
        .expect("unit determinant");
    [d * inv, -b * inv, -c * inv, a * inv].map(|v| v.rem_euclid(n))
}

fn to_mat(g: &ModMatrix) -> Mat {
    let [[a, b], [c, d]] = g.rows();
    [a as i64, b as i64, c as i64, d as i64]
}

fn gl2(n: i64) -> Vec<Mat> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let det = (a * d - b * c).rem_euclid(n);
                    if (1..n).any(|i| (i * det) % n == 1) {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// `N^k/(k!(k+2)) sum_t psi(g^-1 t) B_{k+2}(t2/N)` straight from the
/// definition, with all group arithmetic done locally.
fn rho_oracle(k: usize, psi: &Divisor, g: Mat) -> Rational {
    let n = psi.modulus() as i64;
    let [a, b, c, d] = mat_inverse(g, n);
    let bern = bernoulli_polynomial(k + 2);
    let mut acc = Rational::zero();
    for t1 in 0..n {
        for t2 in 0..n {
            let s1 = (a * t1 + b * t2).rem_euclid(n);
            let s2 = (c * t1 + d * t2).rem_euclid(n);
            let v = psi.value(s1, s2);
            if !v.is_zero() {
                acc += v * bern.eval(&Rational::new(t2, n));
            }
        }
    }
    let fact: i64 = (1..=k as i64).product();
    acc * Rational::from(n).pow(k as i32) / Rational::from(fact * (k as i64 + 2))
}

fn random_divisor(rng: &mut ChaCha8Rng, n: u32) -> Divisor {
    let points = nonzero_points(n);
    let size = rng.gen_range(1..=6);
    let terms = (0..size).map(|_| {
        let t = points[rng.gen_range(0..points.len())];
        let c = Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=4));
        (t, c)
    });
    Divisor::from_terms(n, terms).unwrap()
}

#[test]
fn coset_counts_match_enumeration() {
    for n in 3..=7 {
        let all = gl2(n);
        let parabolic = all.iter().filter(|m| m[2] == 0 && m[3] == 1).count();
        let reps = coset_representatives(n as u32).unwrap();
        assert_eq!(reps.len() * parabolic, all.len(), "N={n}");
        assert!(reps.contains(&ModMatrix::identity(n as u32).unwrap()));
    }
    assert_eq!(coset_representatives(3).unwrap().len(), 8);
    let t = group_tables(3).unwrap();
    assert_eq!(t.elements.len(), 48);
    let id_coset: Vec<Mat> = t
        .elements
        .iter()
        .filter(|g| t.coset_index(g) == t.identity_coset())
        .map(to_mat)
        .collect();
    let mut expect = Vec::new();
    for alpha in 1..=2 {
        for beta in 0..=2 {
            expect.push([alpha, beta, 0, 1]);
        }
    }
    assert_eq!(id_coset, expect);
    assert_eq!(
        coset_representatives(2).unwrap_err(),
        Error::ModulusTooSmall(2)
    );
}

#[test]
fn action_examples() {
    let rot = ModMatrix::new(3, [[0, -1], [1, 0]]).unwrap();
    assert_eq!(
        act(&rot, &TorsionPoint::new(3, 1, 0)).unwrap(),
        TorsionPoint::new(3, 0, 1)
    );
    let neg = ModMatrix::minus_identity(3).unwrap();
    assert_eq!(
        act(&neg, &TorsionPoint::new(3, 1, 2)).unwrap(),
        TorsionPoint::new(3, 2, 1)
    );
    assert!(act(&neg, &TorsionPoint::new(4, 1, 2)).is_err());
    assert!(ModMatrix::new(4, [[2, 0], [0, 1]]).is_err());
}

#[test]
fn horospherical_examples() {
    let psi = Divisor::delta(3, 1, 0, Rational::one()).unwrap();
    let f = horospherical(1, &psi).unwrap();
    assert_eq!(
        f.eval(&ModMatrix::identity(3).unwrap()).unwrap(),
        Rational::zero()
    );
    let rot = ModMatrix::new(3, [[0, -1], [1, 0]]).unwrap();
    assert_eq!(f.eval(&rot).unwrap(), Rational::new(1, 27));
    assert_eq!(
        horospherical_value(1, &psi, &rot).unwrap(),
        Rational::new(1, 27)
    );
}

/// P-invariance, parity and equivariance against the literal definition.
#[test]
fn isom_invariants_on_random_divisors() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x15_0e);
    for n in 3..=5u32 {
        let tables = group_tables(n).unwrap();
        let elements: Vec<Mat> = tables.elements.iter().map(to_mat).collect();
        let parabolic: Vec<Mat> = tables.parabolic.iter().map(to_mat).collect();
        let minus = [n as i64 - 1, 0, 0, n as i64 - 1];
        for k in 0..=4usize {
            let sign = if k % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            for trial in 0..50 {
                let psi = random_divisor(&mut rng, n);
                let f = horospherical(k, &psi).unwrap();
                for g in &tables.cosets {
                    let gm = to_mat(g);
                    let value = f.eval(g).unwrap();
                    assert_eq!(
                        rho_oracle(k, &psi, gm),
                        value,
                        "N={n} k={k} trial={trial} g={g:?}"
                    );
                    for u in &parabolic {
                        assert_eq!(rho_oracle(k, &psi, mat_mul(*u, gm, n as i64)), value);
                    }
                    assert_eq!(
                        rho_oracle(k, &psi, mat_mul(minus, gm, n as i64)),
                        &sign * &value
                    );
                }
                if trial < 2 {
                    for _ in 0..20 {
                        let hm = elements[rng.gen_range(0..elements.len())];
                        let h = ModMatrix::new(n, [[hm[0], hm[1]], [hm[2], hm[3]]]).unwrap();
                        let moved = horospherical(k, &psi.translate(&h).unwrap()).unwrap();
                        for g in &tables.cosets {
                            let gh = mat_mul(to_mat(g), hm, n as i64);
                            assert_eq!(moved.eval(g).unwrap(), rho_oracle(k, &psi, gh));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn psi_u_has_residue_zero() {
    for n in 3..=7u32 {
        for k in 1..=4 {
            for u in 1..n as i64 {
                let f = horospherical(k, &psi_u(k, u, n).unwrap()).unwrap();
                assert!(is_in_isom_minus_infinity(&f), "N={n} k={k} u={u}");
            }
        }
    }
    let psi = psi_u(1, 1, 3).unwrap();
    assert_eq!(psi.value(1, 0), Rational::one());
    assert_eq!(psi.value(1, 1), Rational::new(9, 8));
    assert_eq!(psi_u(1, 3, 3).unwrap_err(), Error::ZeroResidue(3, 3));
    assert!(!is_in_isom_minus_infinity(&phi_infinity(2, 3).unwrap()));
}

#[test]
fn consistency_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0_22);
    for n in 3..=4u32 {
        for k in 0..=3usize {
            for _ in 0..20 {
                let psi = random_divisor(&mut rng, n);
                for g in coset_representatives(n).unwrap() {
                    let c = residue_consistency_check(k, &psi, &g).unwrap();
                    assert!(c.equal, "N={n} k={k} g={g:?}: {} != {}", c.lhs, c.rhs);
                }
            }
        }
    }
    let psi = Divisor::delta(3, 1, 0, Rational::one()).unwrap();
    let scaled = psi.scale(&Rational::new(7, 5));
    let g = ModMatrix::new(3, [[0, -1], [1, 0]]).unwrap();
    let a = residue_consistency_check(1, &psi, &g).unwrap();
    let b = residue_consistency_check(1, &scaled, &g).unwrap();
    assert!(a.equal && b.equal);
    assert_eq!(b.lhs, a.lhs * Rational::new(7, 5));
}

#[test]
fn surjectivity_ranks() {
    for n in 3..=5 {
        for k in 0..=4 {
            let r = surjectivity_report(k, n).unwrap();
            assert!(r.surjective, "{r:?}");
            assert_eq!(r.degree_zero_divisor_rank, r.target_dimension);
            assert!(r.full_rank <= r.target_dimension);
        }
    }
    assert_eq!(surjectivity_report(1, 3).unwrap().target_dimension, 4);
    assert_eq!(surjectivity_report(0, 3).unwrap().target_dimension, 4);
}

#[test]
fn kernel_elements_vanish() {
    for n in 3..=5 {
        for k in 0..=3 {
            let points = nonzero_points(n).len();
            let full = surjectivity_report(k, n).unwrap().full_rank;
            let basis = kernel_basis(k, n, false).unwrap();
            assert_eq!(basis.len(), points - full, "N={n} k={k}");
            for psi in &basis {
                assert!(horospherical(k, psi).unwrap().is_zero());
            }
            for psi in kernel_basis(k, n, true).unwrap() {
                assert!(psi.is_degree_zero());
                assert!(horospherical(k, &psi).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn regulator_formulas_for_psi_u() {
    for n in 3..=6u32 {
        for k in 1..=3usize {
            for u in 1..n {
                let psi = psi_u(k, u as i64, n).unwrap();
                let h = hodge_coefficients(k, &psi).unwrap();
                assert!(h.residue_zero);
                assert_eq!(
                    h.combination.terms().collect::<Vec<_>>(),
                    vec![(u, &Rational::one())]
                );
                let d = dir_l_coefficients(k, &psi).unwrap();
                let fact: i64 = (1..=k as i64).product();
                let expect = Rational::one()
                    / (Rational::from(n as i64).pow(k as i32) * Rational::from(fact));
                assert_eq!(d.combination.coeff(u), expect);
            }
        }
    }
    let json =
        serde_json::to_value(hodge_coefficients(1, &psi_u(1, 1, 3).unwrap()).unwrap()).unwrap();
    assert_eq!(json["combination"]["terms"][0]["coeff"], "1/1");
    assert!(hodge_coefficients(0, &psi_u(1, 1, 3).unwrap()).is_err());
}

#[test]
fn divisor_json_round_trip() {
    let psi = psi_u(1, 1, 3).unwrap();
    let s = serde_json::to_string(&psi).unwrap();
    let back: Divisor = serde_json::from_str(&s).unwrap();
    assert_eq!(back, psi);
    let halved: Divisor =
        serde_json::from_str(r#"{"N":3,"support":[{"t1":1,"t2":2,"coeff":"2/4"}]}"#).unwrap();
    assert_eq!(halved.value(1, 2), Rational::new(1, 2));
    let f = horospherical(1, &psi).unwrap();
    let v = serde_json::to_value(&f).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 8);
    let m: ModMatrix = serde_json::from_value(v[0]["representative"].clone()).unwrap();
    assert_eq!(m, coset_representatives(3).unwrap()[0]);
}
