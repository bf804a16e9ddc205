use witt_core::gl::{gl_jacobi_holds, GlUnit};
use witt_core::glrep::{build_glm_simple, build_gln_bounded, outer_product, GlnKind};
use witt_core::kac::{is_cyclic_everywhere, kac_module, simple_top};
use witt_core::suites::{parse_v1, parse_v2};
use witt_core::{Dims, Weight, WeightParam};

/// `∏_{i<j} (λ_i - λ_j + j - i)/(j - i)`.
fn weyl_dimension(lambda: &[i64]) -> i64 {
    let k = lambda.len();
    let (mut num, mut den) = (1i64, 1i64);
    for i in 0..k {
        for j in i + 1..k {
            num *= lambda[i] - lambda[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    num / den
}

fn dominant(k: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (lo..=hi).rev() {
        for mut rest in dominant(k - 1, lo, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[test]
fn simple_gl_modules_have_weyl_dimension() {
    for k in 1..=3 {
        for lambda in dominant(k, -1, if k == 3 { 2 } else { 3 }) {
            let v = build_glm_simple(&lambda).unwrap();
            assert_eq!(v.dim() as i64, weyl_dimension(&lambda), "lambda={lambda:?}");
            assert!(v.verify_representation(&GlUnit::all(Dims::new(k, 0).unwrap())));
            assert!(v.respects_weights());
        }
    }
}

#[test]
fn known_weight_multiplicities() {
    // gl_2: every weight of L(a, b) is simple
    let v = build_glm_simple(&[3, 0]).unwrap();
    assert!(v.weight_spaces().values().all(|s| s.len() == 1));
    // adjoint of gl_3: zero weight has multiplicity 2
    let v = build_glm_simple(&[1, 0, -1]).unwrap();
    assert_eq!(v.weight_spaces()[&Weight::from_ints(&[0, 0, 0])].len(), 2);
    assert_eq!(v.max_weight_dim(), 2);
}

#[test]
fn non_dominant_weights_are_rejected() {
    assert!(build_glm_simple(&[0, 1]).is_err());
    assert!(build_gln_bounded(&GlnKind::Laurent {
        gamma: vec![WeightParam::from_int(1), WeightParam::from_int(0)],
        radius: 1,
    })
    .is_err());
}

#[test]
fn matrix_units_satisfy_super_jacobi() {
    for m in 0..=5usize {
        for n in 0..=5 - m {
            let Ok(d) = Dims::new(m, n) else { continue };
            let units = GlUnit::all(d);
            for &x in &units {
                for &y in &units {
                    for &z in &units {
                        assert!(gl_jacobi_holds(x, y, z), "({m},{n}) {x} {y} {z}");
                    }
                }
            }
        }
    }
}

/// `(λ + ρ, ε_i - δ_j) = λ_i + μ_j + m - i - j + 1` (1-based `i`, `j`).
fn typical(l1: &[i64], l2: &[i64]) -> bool {
    let m = l1.len() as i64;
    l1.iter().enumerate().all(|(i, a)| {
        l2.iter()
            .enumerate()
            .all(|(j, b)| a + b + m - (i as i64 + 1) - (j as i64 + 1) + 1 != 0)
    })
}

fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

#[test]
fn kac_modules_are_simple_exactly_when_typical() {
    for (m, n, lo, hi) in [(1, 1, -2, 2), (2, 1, -1, 2), (1, 2, -1, 2)] {
        for l1 in dominant(m, lo, hi) {
            for l2 in dominant(n, lo, hi) {
                let v = outer_product(
                    &parse_v1(m, Some(&join(&l1))).unwrap(),
                    &parse_v2(n, Some(&join(&l2))).unwrap(),
                )
                .unwrap();
                let k = kac_module(&v).unwrap();
                let d = Dims::new(m, n).unwrap();
                assert_eq!(k.dim(), (1 << (m * n)) * v.dim());
                assert!(k.total.verify_representation(&GlUnit::all(d)));
                assert!(k.lambda_degree_single_valued());
                let top = simple_top(&k);
                assert_eq!(top.dim() == k.dim(), typical(&l1, &l2), "({l1:?}|{l2:?})");
                assert_eq!(top.certified, Some(true));
                assert!(top.quotient.verify_representation(&GlUnit::all(d)));
            }
        }
    }
}

#[test]
fn simple_tops_are_cyclic_from_every_vector() {
    for (l1, l2) in [("1,0", "0"), ("2,0", "0"), ("0", "1,0"), ("1,0", "0,0")] {
        let m = l1.split(',').count();
        let n = l2.split(',').count();
        let v = outer_product(
            &parse_v1(m, Some(l1)).unwrap(),
            &parse_v2(n, Some(l2)).unwrap(),
        )
        .unwrap();
        let top = simple_top(&kac_module(&v).unwrap());
        assert!(is_cyclic_everywhere(&top.quotient), "({l1}|{l2})");
    }
}

#[test]
fn laurent_modules_are_bounded_representations() {
    for gamma in [vec!["1/2", "-1/3"], vec!["a", "1/3", "-2/5"]] {
        let gamma: Vec<WeightParam> = gamma.iter().map(|s| s.parse().unwrap()).collect();
        let n = gamma.len();
        let v = build_gln_bounded(&GlnKind::Laurent { gamma, radius: 2 }).unwrap();
        assert_eq!(v.max_weight_dim(), 1);
        assert!(v.is_truncated());
        assert!(v.verify_representation(&GlUnit::all(Dims::new(0, n).unwrap())));
    }
}
