use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use witt_core::index::binom_u;
use witt_core::suites::{run_suite, RunConfig};
use witt_core::ubar::{u_product, UElem};
use witt_core::{binom, tau, Dims, MultiIndex, OddSet, Scalar, SuperPoly, WittElem, WittTerm};

fn big(s: &Scalar) -> BigRational {
    BigRational::new(s.numer(), s.denom())
}

proptest! {
    #[test]
    fn scalar_field_ops_match_big_rationals(a in -2000i64..2000, b in 1i64..500, c in -2000i64..2000, d in 1i64..500) {
        let (x, y) = (Scalar::new(a, b), Scalar::new(c, d));
        let (bx, by) = (
            BigRational::new(BigInt::from(a), BigInt::from(b)),
            BigRational::new(BigInt::from(c), BigInt::from(d)),
        );
        prop_assert_eq!(big(&(&x + &y)), &bx + &by);
        prop_assert_eq!(big(&(&x * &y)), &bx * &by);
        prop_assert_eq!(big(&(&x - &y)), &bx - &by);
        if c != 0 {
            prop_assert_eq!(big(&(&x * &y.recip())), &bx / &by);
        }
    }

    #[test]
    fn scalar_products_overflow_into_big_integers(a in i64::MAX / 4..i64::MAX, b in 2i64..1_000_000) {
        let x = Scalar::from_int(a);
        let y = &x * &Scalar::from_int(b);
        prop_assert_eq!(big(&y), BigRational::from_integer(BigInt::from(a) * BigInt::from(b)));
    }
}

#[test]
fn tau_swaps_with_parity_product() {
    for n in 0..=6usize {
        let sets = OddSet::all(n);
        for &i in &sets {
            for &j in &sets {
                if !i.is_disjoint(j) {
                    assert!(tau(i, j).is_err());
                    continue;
                }
                let s = tau(i, j).unwrap() + tau(j, i).unwrap();
                assert_eq!(s % 2, (i.len() * j.len()) % 2, "I={i} J={j}");
            }
        }
    }
}

#[test]
fn tau_signs_are_associative() {
    let n = 5usize;
    for code in 0..4usize.pow(n as u32) {
        let (mut i, mut j, mut k) = (OddSet::EMPTY, OddSet::EMPTY, OddSet::EMPTY);
        let mut c = code;
        for p in 0..n {
            match c % 4 {
                1 => i = i.insert(p),
                2 => j = j.insert(p),
                3 => k = k.insert(p),
                _ => {}
            }
            c /= 4;
        }
        let l = tau(i.union(j), k).unwrap() + tau(i, j).unwrap();
        let r = tau(i, j.union(k)).unwrap() + tau(j, k).unwrap();
        assert_eq!(l % 2, r % 2, "I={i} J={j} K={k}");
    }
}

#[test]
fn alternating_binomial_sums_vanish() {
    for m in 1..=3 {
        for gamma in MultiIndex::all_up_to(m, 4) {
            if gamma.is_zero() {
                continue;
            }
            let mut sum = Scalar::zero();
            for beta in gamma.below() {
                sum = &sum + &(&Scalar::sign(beta.total()) * &binom(&gamma, &beta).unwrap());
            }
            assert!(sum.is_zero(), "gamma={gamma}");
        }
    }
    // one-variable binomials against Pascal's rule
    for n in 1..12u32 {
        for k in 1..n {
            assert_eq!(binom_u(n, k), &binom_u(n - 1, k - 1) + &binom_u(n - 1, k));
        }
    }
}

fn dims_upto_2() -> Vec<Dims> {
    let mut out = Vec::new();
    for m in 0..=2 {
        for n in 0..=2 {
            if let Ok(d) = Dims::new(m, n) {
                out.push(d);
            }
        }
    }
    out
}

#[test]
fn witt_bracket_matches_operator_commutator() {
    // all monomials with |β| ≤ 6 for m ≤ 1 and ≤ 4 otherwise
    for dims in dims_upto_2() {
        let top = if dims.m <= 1 { 6 } else { 4 };
        let monos = witt_core::Monomial::all(dims.m, dims.n, top);
        let terms = WittTerm::all(dims, 2);
        let step = (terms.len() / 12).max(1);
        for x in terms.iter().step_by(step) {
            for y in terms.iter().step_by(step) {
                let (ex, ey) = (
                    WittElem::from_term(x.clone()),
                    WittElem::from_term(y.clone()),
                );
                let br = ex.bracket(&ey);
                for a in &monos {
                    let a = SuperPoly::monomial(a.clone());
                    let mut rhs = ex.act(&ey.act(&a));
                    rhs.add_scaled(
                        &ey.act(&ex.act(&a)),
                        &-Scalar::sign(x.parity() * y.parity()),
                    );
                    assert_eq!(br.act(&a), rhs, "x={x} y={y} a={a}");
                }
            }
        }
    }
}

#[test]
fn witt_terms_act_as_superderivations() {
    for dims in dims_upto_2() {
        let monos = witt_core::Monomial::all(dims.m, dims.n, 2);
        for x in WittTerm::all(dims, 3) {
            let ex = WittElem::from_term(x.clone());
            for a in &monos {
                let pa = SuperPoly::monomial(a.clone());
                let xa = ex.act(&pa);
                for b in &monos {
                    let pb = SuperPoly::monomial(b.clone());
                    let lhs = ex.act(&pa.mul(&pb));
                    let mut rhs = xa.mul(&pb);
                    rhs.add_scaled(
                        &pa.mul(&ex.act(&pb)),
                        &Scalar::sign(x.parity() * a.parity()),
                    );
                    assert_eq!(lhs, rhs, "x={x} a={a} b={b}");
                }
            }
        }
    }
}

#[test]
fn brackets_add_weights() {
    for dims in dims_upto_2() {
        let terms = WittTerm::all(dims, 2);
        for x in &terms {
            for y in &terms {
                let br = x.bracket(y);
                if br.is_zero() {
                    continue;
                }
                let w = x.weight(dims).add(&y.weight(dims));
                assert_eq!(br.weight_of(dims).unwrap(), w, "x={x} y={y}");
            }
        }
    }
}

#[test]
fn no_even_variables_gives_n_times_two_to_the_n() {
    for n in 1..=4 {
        let dims = Dims::new(0, n).unwrap();
        assert_eq!(WittTerm::all(dims, 5).len(), n * (1 << n));
    }
}

fn random_word(dims: Dims, seed: u64) -> UElem {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let terms = WittTerm::all(dims, 1);
    let monos = witt_core::Monomial::all(dims.m, dims.n, 1);
    let mut w = UElem::from_mono(monos.choose(&mut rng).unwrap().clone());
    for _ in 0..rng.gen_range(0..=3) {
        w = u_product(&w, &UElem::letter(terms.choose(&mut rng).unwrap().clone()));
    }
    w
}

#[test]
fn enveloping_product_is_associative() {
    let dims = [(1, 1), (2, 0), (0, 2), (2, 1), (1, 2), (2, 2)];
    for s in 0..500u64 {
        let (m, n) = dims[s as usize % dims.len()];
        let d = Dims::new(m, n).unwrap();
        let (a, b, c) = (
            random_word(d, 3 * s),
            random_word(d, 3 * s + 1),
            random_word(d, 3 * s + 2),
        );
        assert_eq!(
            u_product(&u_product(&a, &b), &c),
            u_product(&a, &u_product(&b, &c)),
            "sample {s}"
        );
    }
}

#[test]
fn omega_recurrence_up_to_r_three() {
    for (m, n) in [(1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)] {
        let mut cfg = RunConfig::new(m, n);
        cfg.rmax = 3;
        let r = run_suite("omega-recurrence", &cfg).unwrap();
        assert!(r.passed, "{:?}", r.counterexample);
    }
}
