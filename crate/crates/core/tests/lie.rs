use eisenstein_core::lie::{
    bch, bracket, hall_basis, log_of_word, monodromy_t, mu_dual, parse_bracket, pr_project,
    residue_at_torsion, to_polbar, u_tilde_invariance_check, verify_c310, verify_c39, C310Identity,
    GroupWord, HallWord, LieElement, Loop, SymTensor,
};
use eisenstein_core::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn mobius(n: usize) -> i64 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Necklace count `(1/n) sum_{d | n} mu(d) 2^(n/d)`.
fn witt(n: usize) -> usize {
    let s: i64 = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| mobius(d) * (1i64 << (n / d)))
        .sum();
    (s / n as i64) as usize
}

fn gens(d: usize) -> (LieElement, LieElement) {
    (
        LieElement::generator(d, 1).unwrap(),
        LieElement::generator(d, 2).unwrap(),
    )
}

fn random_element(rng: &mut ChaCha8Rng, d: usize, max_degree: usize) -> LieElement {
    let basis = hall_basis(d).unwrap();
    let mut terms = Vec::new();
    for h in basis.into_iter().filter(|h| h.degree() <= max_degree) {
        if rng.gen_bool(0.5) {
            terms.push((h, Rational::from(rng.gen_range(-3..=3))));
        }
    }
    LieElement::from_terms(d, terms).unwrap()
}

fn br(x: &LieElement, y: &LieElement) -> LieElement {
    bracket(x, y).unwrap()
}

#[test]
fn hall_dimensions_are_witt_numbers() {
    assert_eq!(
        (1..=8).map(witt).collect::<Vec<_>>(),
        [2, 1, 2, 3, 6, 9, 18, 30]
    );
    for d in 1..=10 {
        let basis = hall_basis(d).unwrap();
        for m in 1..=d {
            assert_eq!(
                basis.iter().filter(|h| h.degree() == m).count(),
                witt(m),
                "degree {m}"
            );
        }
    }
    assert_eq!(hall_basis(8).unwrap().len(), 71);
    let names: Vec<String> = hall_basis(2)
        .unwrap()
        .iter()
        .map(HallWord::to_string)
        .collect();
    assert_eq!(names, ["e1", "e2", "[e1,e2]"]);
    for h in hall_basis(6).unwrap() {
        assert_eq!(parse_bracket(&h.to_string()), Some(h));
    }
}

#[test]
fn bracket_matches_associative_commutator() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let x = random_element(&mut rng, 6, 3);
        let y = random_element(&mut rng, 6, 3);
        let z = random_element(&mut rng, 6, 2);
        let xa = x.to_assoc();
        let ya = y.to_assoc();
        let commutator = xa.mul(&ya).add(&ya.mul(&xa).scale(&-Rational::one()));
        assert_eq!(br(&x, &y).to_assoc(), commutator);
        assert!(br(&x, &x).is_zero());
        assert_eq!(br(&x, &y), -&br(&y, &x));
        let jacobi = &(&br(&x, &br(&y, &z)) + &br(&y, &br(&z, &x))) + &br(&z, &br(&x, &y));
        assert!(jacobi.is_zero());
    }
    let (e1, e2) = gens(4);
    let u0 = br(&e1, &e2);
    assert_eq!(
        u0.terms()
            .map(|(h, c)| (h.to_string(), c.clone()))
            .collect::<Vec<_>>(),
        [("[e1,e2]".to_string(), q(1, 1))]
    );
    let jacobi = &(&br(&e1, &br(&e2, &u0)) + &br(&e2, &br(&u0, &e1))) + &br(&u0, &br(&e1, &e2));
    assert!(jacobi.is_zero());
}

/// `X + Y + [X,Y]/2 + [X,[X,Y]]/12 - [Y,[X,Y]]/12 - [Y,[X,[X,Y]]]/24`,
/// exact through degree 4 for any `X`, `Y` without constant term.
fn dynkin_degree4(x: &LieElement, y: &LieElement) -> LieElement {
    let xy = br(x, y);
    let mut out = x + y;
    out = &out + &xy.scale(&q(1, 2));
    out = &out + &br(x, &xy).scale(&q(1, 12));
    out = &out - &br(y, &xy).scale(&q(1, 12));
    &out - &br(y, &br(x, &xy)).scale(&q(1, 24))
}

#[test]
fn bch_against_dynkin_expansion() {
    let (e1, e2) = gens(4);
    let z = bch(&e1, &e2).unwrap();
    assert_eq!(z, dynkin_degree4(&e1, &e2));
    assert_eq!(z.component(1), &e1 + &e2);
    assert_eq!(z.component(2), br(&e1, &e2).scale(&q(1, 2)));
    let c3 = z.component(3);
    let xxy = br(&e1, &br(&e1, &e2));
    let yxy = br(&e2, &br(&e1, &e2));
    assert_eq!(c3, &xxy.scale(&q(1, 12)) - &yxy.scale(&q(1, 12)));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let x = random_element(&mut rng, 4, 4);
        let y = random_element(&mut rng, 4, 4);
        assert_eq!(bch(&x, &y).unwrap(), dynkin_degree4(&x, &y));
    }
}

#[test]
fn bch_group_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let zero = LieElement::zero(6).unwrap();
    for _ in 0..20 {
        let x = random_element(&mut rng, 6, 2);
        let y = random_element(&mut rng, 6, 2);
        let z = random_element(&mut rng, 6, 2);
        let left = bch(&bch(&x, &y).unwrap(), &z).unwrap();
        let right = bch(&x, &bch(&y, &z).unwrap()).unwrap();
        assert_eq!(left, right);
        assert!(bch(&x, &-&x).unwrap().is_zero());
        assert_eq!(bch(&x, &zero).unwrap(), x);
        assert_eq!(bch(&zero, &x).unwrap(), x);
    }
}

fn random_word(rng: &mut ChaCha8Rng) -> GroupWord {
    (0..rng.gen_range(1..=4)).fold(GroupWord::identity(), |w, _| {
        let l = if rng.gen_bool(0.5) {
            Loop::Gamma1
        } else {
            Loop::Gamma2
        };
        let e = [-2, -1, 1, 2][rng.gen_range(0..4)];
        w.times(l, e)
    })
}

#[test]
fn log_of_word_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..20 {
        let w = random_word(&mut rng);
        let v = random_word(&mut rng);
        let lhs = log_of_word(&w.mul(&v), 6).unwrap();
        let rhs = bch(&log_of_word(&w, 6).unwrap(), &log_of_word(&v, 6).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "{w} * {v}");
        assert!(log_of_word(&w.mul(&w.inverse()), 6).unwrap().is_zero());
    }
    let (e1, e2) = gens(2);
    assert_eq!(log_of_word(&GroupWord::phi0(), 2).unwrap(), br(&e1, &e2));
}

#[test]
fn monodromy_on_first_homology() {
    for n in 1..=7 {
        let t = monodromy_t(&GroupWord::gamma2(), n);
        let x = log_of_word(&t, 4).unwrap().component(1);
        let (e1, e2) = gens(4);
        assert_eq!(x, &e2 + &e1.scale(&Rational::from(n)));
        assert_eq!(monodromy_t(&GroupWord::gamma1(), n), GroupWord::gamma1());
    }
}

#[test]
fn c39_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(39);
    let (_, e2) = gens(6);
    let e2_word = e2.terms().next().unwrap().0;
    for _ in 0..20 {
        let u = random_element(&mut rng, 6, 3);
        let mut v = random_element(&mut rng, 6, 3);
        v = &v - &e2.scale(&v.coeff(&e2_word));
        let check = verify_c39(&u, &v).unwrap();
        assert!(check.equal, "U={u:?} V={v:?}");
    }
    let (e1, e2) = gens(6);
    assert!(verify_c39(&e1, &e2).is_err());
}

#[test]
fn c310_identities_at_degree_eight() {
    for id in [C310Identity::BoundaryLoop, C310Identity::MonodromyAtOrigin] {
        for n in 3..=5 {
            assert!(
                verify_c310(id, 0, n, 8).unwrap().equal,
                "({}) N={n}",
                id.number()
            );
        }
    }
    for n in 3..=5 {
        for a in 0..n {
            let c = verify_c310(C310Identity::MonodromyAtTorsion, a, n, 8).unwrap();
            assert!(c.equal, "(7) a={a} N={n}");
        }
    }
    assert_eq!(
        C310Identity::try_from(6).unwrap(),
        C310Identity::MonodromyAtOrigin
    );
    assert!(C310Identity::try_from(5).is_err());
    assert!(verify_c310(C310Identity::BoundaryLoop, 0, 3, 2).is_err());
}

#[test]
fn u_tilde_translation_invariance() {
    for (a, b, n) in [(1, 0, 3), (0, 1, 3), (2, 3, 4), (1, 1, 5)] {
        assert!(u_tilde_invariance_check(a, b, n, 6).unwrap());
    }
}

#[test]
fn residue_matches_closed_form() {
    for k in 0..=5 {
        for n in 2..=7 {
            for a in 0..n {
                let r = residue_at_torsion(k, a, n, k + 3).unwrap();
                assert!(
                    r.equal,
                    "k={k} N={n} a={a}: {} vs {}",
                    r.lie_value, r.closed_form
                );
                assert!(r.coefficients_match);
            }
        }
    }
    assert_eq!(residue_at_torsion(1, 1, 3, 4).unwrap().lie_value, q(-1, 27));
    assert_eq!(residue_at_torsion(0, 1, 3, 3).unwrap().lie_value, q(1, 12));
    assert_eq!(residue_at_torsion(1, 0, 3, 4).unwrap().lie_value, q(0, 1));
    assert!(residue_at_torsion(2, 1, 3, 4).is_err());
}

#[test]
fn pr_is_a_section_of_mu_dual() {
    for m in 0..=10 {
        for i in 0..=m {
            let x = SymTensor::monomial(m, i, Rational::one());
            let (a, b) = mu_dual(&x);
            let back = pr_project(1, &a).unwrap().add(&pr_project(2, &b).unwrap());
            assert_eq!(back, x, "m={m} i={i}");
        }
    }
}

#[test]
fn polbar_kills_ad_e1_of_log() {
    let (e1, e2) = gens(6);
    let u0 = br(&e1, &e2);
    let killed = br(&e1, &br(&e2, &u0));
    assert!(to_polbar(&killed).unwrap().is_zero());
    assert!(!to_polbar(&br(&e2, &u0)).unwrap().is_zero());
}

#[test]
fn lie_element_json() {
    let (e1, e2) = gens(3);
    let x = &e1 + &br(&e1, &e2).scale(&q(-1, 2));
    let v = serde_json::to_value(&x).unwrap();
    assert_eq!(v["D"], 3);
    assert_eq!(v["terms"][0]["hall"], "e1");
    assert_eq!(v["terms"][1]["hall"], "[e1,e2]");
    assert_eq!(v["terms"][1]["coeff"], "-1/2");
}
