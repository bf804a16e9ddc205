use std::collections::{BTreeMap, BTreeSet, VecDeque};

use witt_core::glrep::{build_glm_simple, outer_product, trivial_gl0};
use witt_core::linalg::{add_entry, SVec};
use witt_core::module::WeightModule;
use witt_core::suites::{certified_from_config, RunConfig};
use witt_core::tensor::{basis_vec, build_tensor_module, FVec};
use witt_core::ubar::KmnGen;
use witt_core::weyl::{weyl_support, PKey, WeylModule, WeylSpec};
use witt_core::{Coeff, DerivSymbol, Dims, Monomial, Scalar, Weight, WittTerm};

fn catalog() -> Vec<(WeylModule, &'static str)> {
    [
        ("P", 1usize),
        ("LmodP", 1),
        ("L(1/2)", 0),
        ("L(a)", 2),
        ("P,LmodP", 1),
        ("L(1/3),P", 2),
        ("", 3),
    ]
    .into_iter()
    .map(|(s, n)| {
        (
            WeylModule::new(WeylSpec::parse(s, n).unwrap(), 3).unwrap(),
            s,
        )
    })
    .collect()
}

fn gens(dims: Dims) -> Vec<KmnGen> {
    let mut g: Vec<KmnGen> = (0..dims.m).map(KmnGen::T).collect();
    g.extend((0..dims.n).map(KmnGen::Xi));
    g.extend(DerivSymbol::all(dims.m, dims.n).into_iter().map(KmnGen::D));
    g
}

fn gen_parity(g: KmnGen) -> u32 {
    match g {
        KmnGen::T(_) => 0,
        KmnGen::Xi(_) => 1,
        KmnGen::D(d) => d.parity(),
    }
}

fn apply(p: &WeylModule, word: &[KmnGen], key: &PKey) -> SVec<PKey> {
    p.act_gens(word, key)
        .into_iter()
        .map(|(c, k)| (k, c))
        .collect()
}

#[test]
fn weyl_relations_hold_on_catalog_modules() {
    for (p, name) in catalog() {
        let g = gens(p.dims);
        for key in p.basis() {
            for &a in &g {
                for &b in &g {
                    let mut lhs = apply(&p, &[a, b], &key);
                    let s = Scalar::sign(gen_parity(a) * gen_parity(b));
                    for (k, c) in apply(&p, &[b, a], &key) {
                        add_entry(&mut lhs, k, &c * &Coeff::from(-s.clone()));
                    }
                    let expected = match (a, b) {
                        (KmnGen::D(DerivSymbol::T(i)), KmnGen::T(k)) if i == k => 1,
                        (KmnGen::T(k), KmnGen::D(DerivSymbol::T(i))) if i == k => -1,
                        (KmnGen::D(DerivSymbol::Xi(i)), KmnGen::Xi(k)) if i == k => 1,
                        (KmnGen::Xi(k), KmnGen::D(DerivSymbol::Xi(i))) if i == k => 1,
                        _ => 0,
                    };
                    let mut want = SVec::new();
                    add_entry(&mut want, key.clone(), Coeff::from_int(expected));
                    assert_eq!(lhs, want, "{name}: [{a:?}, {b:?}] on {key}");
                }
            }
        }
    }
}

#[test]
fn window_bases_have_simple_weights_inside_the_support() {
    for (p, name) in catalog() {
        let support = weyl_support(&p.spec);
        let mut seen = BTreeSet::new();
        for key in p.basis() {
            let w = p.weight(&key);
            assert!(support.contains(&w), "{name}: {w} outside {support}");
            assert!(seen.insert(w), "{name}: repeated weight");
            assert_eq!(p.key_of_weight(&p.weight(&key)), Some(key));
        }
    }
}

#[test]
fn window_bases_are_strictly_cyclic() {
    for (p, name) in catalog() {
        let basis: BTreeSet<PKey> = p.basis().into_iter().collect();
        let g = gens(p.dims);
        for start in &basis {
            let mut seen = BTreeSet::from([start.clone()]);
            let mut queue = VecDeque::from([start.clone()]);
            while let Some(k) = queue.pop_front() {
                for &x in &g {
                    if let Some((_, next)) = p.weyl_action(x, &k) {
                        if basis.contains(&next) && seen.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
            }
            assert_eq!(seen.len(), basis.len(), "{name} from {start}");
        }
    }
}

fn module_of(m: usize, n: usize, lambda: &[i64]) -> WeightModule {
    let v1 = if m == 0 {
        trivial_gl0()
    } else {
        build_glm_simple(lambda).unwrap()
    };
    let v2 = if n == 0 {
        trivial_gl0()
    } else {
        witt_core::suites::parse_v2(n, None).unwrap()
    };
    outer_product(&v1, &v2).unwrap()
}

#[test]
fn cartan_elements_act_by_the_weight() {
    let mut cfg = RunConfig::new(2, 1);
    cfg.p_spec = Some("L(a),P".into());
    cfg.v1 = Some("1,0".into());
    cfg.window = 2;
    let (f, _) = certified_from_config(&cfg).unwrap();
    let dims = f.dims;
    for k in f.basis() {
        let v = basis_vec(k.clone());
        let w = f.weight(&k);
        for i in 0..dims.m + dims.n {
            let h = if i < dims.m {
                WittTerm::new(Monomial::t(dims.m, i), DerivSymbol::T(i))
            } else {
                WittTerm::new(
                    Monomial::xi(dims.m, i - dims.m),
                    DerivSymbol::Xi(i - dims.m),
                )
            };
            let (hv, _) = f.act_witt(&h, &v);
            let mut want = FVec::new();
            add_entry(&mut want, k.clone(), w.0[i].to_coeff());
            assert_eq!(hv, want, "h={h} v={k:?}");
        }
    }
}

#[test]
fn euler_operator_on_the_natural_module() {
    // t₁∂/∂t₁ · (t₁ ⊗ v) = t₁ ⊗ v + t₁ ⊗ E₁₁v
    let p = WeylModule::new(WeylSpec::parse("P", 0).unwrap(), 4).unwrap();
    let f = build_tensor_module(p, module_of(1, 0, &[1])).unwrap();
    let key = (
        PKey {
            k: [1].into_iter().collect(),
            eps: Default::default(),
        },
        0,
    );
    let (y, _) = f.act_witt(
        &WittTerm::new(Monomial::t(1, 0), DerivSymbol::T(0)),
        &basis_vec(key.clone()),
    );
    let mut want = FVec::new();
    add_entry(&mut want, key, Coeff::from_int(2));
    assert_eq!(y, want);
}

#[test]
fn support_lies_in_one_coset() {
    let mut cfg = RunConfig::new(1, 2);
    cfg.p_spec = Some("L(1/2)".into());
    cfg.v2 = Some("laurent:1/3,-1/3@2".into());
    cfg.window = 2;
    let (f, _) = certified_from_config(&cfg).unwrap();
    let basis = f.basis();
    let w0 = f.weight(&basis[0]);
    for k in &basis {
        assert!(f.weight(k).integer_offset(&w0).is_some(), "{k:?}");
    }
}

#[test]
fn enlarging_the_window_keeps_interior_dimensions() {
    for (m, n, spec, v1) in [
        (1, 1, "P", "0"),
        (2, 1, "P,P", "1,0"),
        (1, 1, "L(1/2)", "1"),
    ] {
        let table = |window: u32| -> BTreeMap<Weight, usize> {
            let mut cfg = RunConfig::new(m, n);
            cfg.p_spec = Some(spec.into());
            cfg.v1 = Some(v1.into());
            cfg.window = window;
            let (f, _) = certified_from_config(&cfg).unwrap();
            f.weight_dim_table()
                .into_iter()
                .map(|r| (r.weight, r.dim))
                .collect()
        };
        let (small, large) = (table(3), table(5));
        // weights whose even offsets are at most 1 stay away from both edges
        let center = small.keys().next().unwrap().clone();
        for (w, d) in &small {
            let off = w.integer_offset(&center).unwrap();
            if off[..m].iter().all(|o| o.abs() <= 1) {
                assert_eq!(large.get(w), Some(d), "{spec}: {w}");
            }
        }
    }
}

#[test]
fn w_module_axiom_on_several_modules() {
    for (m, n, spec, v1, v2) in [
        (1, 1, "L(1/2)", "1", "0"),
        (2, 1, "P,LmodP", "1,0", "0"),
        (1, 2, "P", "0", "laurent:1/3,1/5@2"),
    ] {
        let mut cfg = RunConfig::new(m, n);
        cfg.p_spec = Some(spec.into());
        cfg.v1 = Some(v1.into());
        cfg.v2 = Some(v2.into());
        cfg.window = 3;
        let (f, _) = certified_from_config(&cfg).unwrap();
        let r = f.verify_aw_axioms(200, 5, 2);
        assert!(r.passed, "{spec}: {r:?}");
    }
}

#[test]
fn bound_holds_for_laurent_v2() {
    let mut cfg = RunConfig::new(2, 2);
    cfg.p_spec = Some("P,P".into());
    cfg.v1 = Some("1,0".into());
    cfg.v2 = Some("laurent:1/2,1/3@1".into());
    cfg.window = 2;
    let (_, cert) = certified_from_config(&cfg).unwrap();
    assert_eq!(cert.bound, 32);
    assert!(cert.max_module_weight_dim <= cert.bound);
    assert!(cert.observed_max <= cert.f_bound);
    assert_eq!(cert.verdict, witt_core::tensor::Verdict::Bounded);
}
