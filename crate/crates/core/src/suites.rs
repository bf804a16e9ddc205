//! Named verification suites with deterministic reports.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cover::{
    b_dim, build_cover, hat_relation_holds, interior_basis, omega_annihilation_search, omega_grid,
    verify_b_spanning, OmegaSampling,
};
use crate::error::{Error, Result};
use crate::gl::{gl_jacobi_holds, pi3_transport_holds, GlUnit};
use crate::glrep::{build_glm_simple, build_gln_bounded, outer_product, trivial_gl0, GlnKind};
use crate::index::{Dims, MultiIndex, OddSet};
use crate::kac::{kac_module, radical_oracle_agrees, simple_top};
use crate::module::WeightModule;
use crate::omega::{verify_omega_recurrence, verify_omega_reduction, ReductionParams};
use crate::param::WeightParam;
use crate::pi::{pi_cartan_matches, verify_pi_homomorphism, PiGen, PiVariant};
use crate::scalar::Scalar;
use crate::superpoly::{DerivSymbol, Monomial, SuperPoly};
use crate::tensor::{build_tensor_module, BoundednessCertificate, TensorModule};
use crate::ubar::{decompose_in_a_basis, reconstruct_from_a_basis, verify_t_central, Probe, UElem};
use crate::weyl::{WeylModule, WeylSpec};
use crate::witt::{WittElem, WittTerm};

pub const SUITES: [&str; 12] = [
    "jacobi",
    "lemma-compute",
    "a-basis",
    "pi-hom",
    "glmn-jacobi",
    "pi3-transport",
    "kac-rep",
    "aw-axioms",
    "omega-recurrence",
    "omega-reduction",
    "annihilation",
    "cover",
];

/// Suites that enumerate every instance in range.
const EXHAUSTIVE: [&str; 8] = [
    "lemma-compute",
    "a-basis",
    "pi-hom",
    "glmn-jacobi",
    "pi3-transport",
    "kac-rep",
    "omega-recurrence",
    "omega-reduction",
];

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub m: usize,
    pub n: usize,
    pub deg: u32,
    pub window: u32,
    pub rmax: u32,
    pub seed: u64,
    pub samples: usize,
    /// Even factors of `P`, e.g. `P` or `L(1/2),LmodP`.
    pub p_spec: Option<String>,
    /// Highest weight of the `gl_m`-module, e.g. `1,0`.
    pub v1: Option<String>,
    /// `1,0` for a finite-dimensional `gl_n`-module or
    /// `laurent:1/2,-1/3@3` for `x^γ ℂ[x^{±1}]` with radius 3.
    pub v2: Option<String>,
    pub variant: PiVariant,
}

impl RunConfig {
    pub fn new(m: usize, n: usize) -> Self {
        RunConfig {
            m,
            n,
            deg: 2,
            window: 6,
            rmax: 6,
            seed: 0,
            samples: 500,
            p_spec: None,
            v1: None,
            v2: None,
            variant: PiVariant::Exact,
        }
    }

    pub fn dims(&self) -> Result<Dims> {
        if self.n > 16 {
            return Err(Error::InvalidDims {
                m: self.m,
                n: self.n,
            });
        }
        Dims::new(self.m, self.n)
    }

    fn check_caps(&self, suite: &str) -> Result<Dims> {
        let dims = self.dims()?;
        if EXHAUSTIVE.contains(&suite) && (self.m > 4 || self.n > 4) {
            return Err(Error::InvalidDims {
                m: self.m,
                n: self.n,
            });
        }
        Ok(dims)
    }

    fn parameters(&self, suite: &str) -> BTreeMap<String, String> {
        let mut p = BTreeMap::new();
        p.insert("m".into(), self.m.to_string());
        p.insert("n".into(), self.n.to_string());
        p.insert("deg".into(), self.deg.to_string());
        p.insert("seed".into(), self.seed.to_string());
        if matches!(suite, "aw-axioms" | "annihilation" | "cover") {
            p.insert("window".into(), self.window.to_string());
            p.insert("rmax".into(), self.rmax.to_string());
            p.insert("samples".into(), self.samples.to_string());
            p.insert("p_spec".into(), self.p_spec_or_default());
            p.insert("v1".into(), self.v1.clone().unwrap_or_default());
            p.insert("v2".into(), self.v2.clone().unwrap_or_default());
        }
        p
    }

    fn p_spec_or_default(&self) -> String {
        self.p_spec
            .clone()
            .unwrap_or_else(|| vec!["P"; self.m].join(","))
    }

    fn rerun(&self, suite: &str) -> String {
        let mut s = format!(
            "fpm verify {suite} --m {} --n {} --deg {} --seed {}",
            self.m, self.n, self.deg, self.seed
        );
        if matches!(suite, "aw-axioms" | "annihilation" | "cover") {
            s.push_str(&format!(
                " --window {} --rmax {} --p-spec '{}'",
                self.window,
                self.rmax,
                self.p_spec_or_default()
            ));
            if let Some(v) = &self.v1 {
                s.push_str(&format!(" --v1 '{v}'"));
            }
            if let Some(v) = &self.v2 {
                s.push_str(&format!(" --v2 '{v}'"));
            }
        }
        if self.variant == PiVariant::DropSign {
            s.push_str(" --mutate-pi");
        }
        s
    }
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| Error::Parse(crate::error::ParseError::ModuleSpec(t.to_string())))
        })
        .collect()
}

/// `V₁` from a highest weight string (trivial when absent).
pub fn parse_v1(m: usize, s: Option<&str>) -> Result<WeightModule> {
    if m == 0 {
        return Ok(trivial_gl0());
    }
    let lambda = match s {
        Some(s) => parse_ints(s)?,
        None => vec![0; m],
    };
    if lambda.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            got: lambda.len(),
        });
    }
    build_glm_simple(&lambda)
}

/// `V₂` from `a,b,…` or `laurent:γ₁,…,γₙ@radius` (trivial when absent).
pub fn parse_v2(n: usize, s: Option<&str>) -> Result<WeightModule> {
    if n == 0 {
        return Ok(trivial_gl0());
    }
    let kind = match s {
        None => GlnKind::Finite(vec![0; n]),
        Some(s) => match s.strip_prefix("laurent:") {
            Some(rest) => {
                let (g, r) = rest.split_once('@').unwrap_or((rest, "2"));
                let gamma = g
                    .split(',')
                    .map(|t| t.trim().parse::<WeightParam>())
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                let radius = r.trim().parse::<u32>().map_err(|_| {
                    Error::Parse(crate::error::ParseError::ModuleSpec(r.to_string()))
                })?;
                GlnKind::Laurent { gamma, radius }
            }
            None => GlnKind::Finite(parse_ints(s)?),
        },
    };
    let len = match &kind {
        GlnKind::Finite(l) => l.len(),
        GlnKind::Laurent { gamma, .. } => gamma.len(),
    };
    if len != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: len,
        });
    }
    build_gln_bounded(&kind)
}

/// `F(P, L(V₁ ⊗ V₂))` from a run configuration.
pub fn tensor_from_config(cfg: &RunConfig) -> Result<TensorModule> {
    Ok(certified_from_config(cfg)?.0)
}

/// The tensor module together with its boundedness certificate, using
/// `N = max dim (V₂)_ν` and `dim V₁`.
pub fn certified_from_config(cfg: &RunConfig) -> Result<(TensorModule, BoundednessCertificate)> {
    let dims = cfg.dims()?;
    let spec = WeylSpec::parse(&cfg.p_spec_or_default(), dims.n)?;
    let p = WeylModule::new(spec, cfg.window)?;
    let v1 = parse_v1(dims.m, cfg.v1.as_deref())?;
    let v2 = parse_v2(dims.n, cfg.v2.as_deref())?;
    let v = outer_product(&v1, &v2)?;
    let v = if dims.m == 0 || dims.n == 0 {
        v
    } else {
        simple_top(&kac_module(&v)?).quotient
    };
    let f = build_tensor_module(p, v)?.with_variant(cfg.variant);
    let cert = f.certify_bounded(v2.max_weight_dim(), v1.dim());
    Ok((f, cert))
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub identity: String,
    pub input: String,
    pub degree: u32,
    pub index_size: u32,
    pub rerun: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityTally {
    pub identity: String,
    pub checked: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub parameters: BTreeMap<String, String>,
    pub identities: Vec<IdentityTally>,
    pub checked: usize,
    pub failed: usize,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

type Check<'a> = Box<dyn Fn() -> bool + Send + Sync + 'a>;

struct Case<'a> {
    identity: &'static str,
    degree: u32,
    index_size: u32,
    input: String,
    check: Check<'a>,
}

impl<'a> Case<'a> {
    fn new(
        identity: &'static str,
        degree: u32,
        index_size: u32,
        input: String,
        check: impl Fn() -> bool + Send + Sync + 'a,
    ) -> Self {
        Case {
            identity,
            degree,
            index_size,
            input,
            check: Box::new(check),
        }
    }
}

fn run_cases(suite: &str, cfg: &RunConfig, cases: Vec<Case<'_>>) -> Report {
    let results: Vec<bool> = cases.par_iter().map(|c| (c.check)()).collect();
    let mut tallies: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    let mut worst: Option<&Case<'_>> = None;
    for (c, ok) in cases.iter().zip(&results) {
        let t = tallies.entry(c.identity).or_default();
        t.0 += 1;
        if !ok {
            t.1 += 1;
            let smaller = worst.is_none_or(|w| (c.degree, c.index_size) < (w.degree, w.index_size));
            if smaller {
                worst = Some(c);
            }
        }
    }
    let failed = results.iter().filter(|ok| !**ok).count();
    Report {
        suite: suite.to_string(),
        parameters: cfg.parameters(suite),
        identities: tallies
            .into_iter()
            .map(|(k, (c, f))| IdentityTally {
                identity: k.to_string(),
                checked: c,
                failed: f,
            })
            .collect(),
        checked: results.len(),
        failed,
        passed: failed == 0 && !results.is_empty(),
        counterexample: worst.map(|c| Counterexample {
            identity: c.identity.to_string(),
            input: c.input.clone(),
            degree: c.degree,
            index_size: c.index_size,
            rerun: cfg.rerun(suite),
        }),
        details: None,
        elapsed_ms: None,
    }
}

fn term_size(x: &WittTerm) -> (u32, u32) {
    (x.mono.alpha.total(), x.mono.odd.len())
}

fn witt_cases(dims: Dims, cfg: &RunConfig) -> Vec<Case<'static>> {
    let terms = WittTerm::all(dims, cfg.deg);
    let mut cases = Vec::new();
    for x in &terms {
        for y in &terms {
            let (dx, ix) = term_size(x);
            let (dy, iy) = term_size(y);
            let (x, y) = (x.clone(), y.clone());
            cases.push(Case::new(
                "skew-symmetry",
                dx + dy,
                ix + iy,
                format!("x={x} y={y}"),
                move || {
                    let s = Scalar::sign(x.parity() * y.parity());
                    let mut sum = x.bracket(&y);
                    sum.add_scaled(&y.bracket(&x), &s);
                    sum.is_zero()
                },
            ));
        }
    }
    let total = terms.len().pow(3);
    let triples: Vec<(usize, usize, usize)> = if total <= cfg.samples.max(10_000) {
        let k = terms.len();
        (0..total)
            .map(|i| (i / (k * k), (i / k) % k, i % k))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let idx: Vec<usize> = (0..terms.len()).collect();
        let mut v: Vec<_> = (0..cfg.samples.max(10_000))
            .map(|_| {
                (
                    *idx.choose(&mut rng).expect("terms"),
                    *idx.choose(&mut rng).expect("terms"),
                    *idx.choose(&mut rng).expect("terms"),
                )
            })
            .collect();
        v.sort_unstable();
        v
    };
    for (a, b, c) in triples {
        let (x, y, z) = (terms[a].clone(), terms[b].clone(), terms[c].clone());
        let deg = term_size(&x).0 + term_size(&y).0 + term_size(&z).0;
        let idx = term_size(&x).1 + term_size(&y).1 + term_size(&z).1;
        cases.push(Case::new(
            "jacobi",
            deg,
            idx,
            format!("x={x} y={y} z={z}"),
            move || {
                let (ex, ey, ez) = (
                    WittElem::from_term(x.clone()),
                    WittElem::from_term(y.clone()),
                    WittElem::from_term(z.clone()),
                );
                let lhs = ex.bracket(&ey.bracket(&ez));
                let mut rhs = ex.bracket(&ey).bracket(&ez);
                rhs.add_scaled(
                    &ey.bracket(&ex.bracket(&ez)),
                    &Scalar::sign(x.parity() * y.parity()),
                );
                lhs == rhs
            },
        ));
    }
    // [x,y](a) = x(y(a)) - (-1)^{|x||y|} y(x(a)) on monomials of degree ≤ 2
    let monos = Monomial::all(dims.m, dims.n, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    for _ in 0..cfg.samples.max(1000) {
        let x = terms.choose(&mut rng).expect("terms").clone();
        let y = terms.choose(&mut rng).expect("terms").clone();
        let a = monos.choose(&mut rng).expect("monomials").clone();
        let deg = term_size(&x).0 + term_size(&y).0;
        let idx = term_size(&x).1 + term_size(&y).1;
        cases.push(Case::new(
            "commutator-action",
            deg,
            idx,
            format!("x={x} y={y} a={a}"),
            move || {
                let a = SuperPoly::monomial(a.clone());
                let (ex, ey) = (
                    WittElem::from_term(x.clone()),
                    WittElem::from_term(y.clone()),
                );
                let lhs = ex.bracket(&ey).act(&a);
                let mut rhs = ex.act(&ey.act(&a));
                rhs.add_scaled(
                    &ey.act(&ex.act(&a)),
                    &-Scalar::sign(x.parity() * y.parity()),
                );
                lhs == rhs
            },
        ));
    }
    cases
}

fn x_params(dims: Dims, deg: u32) -> Vec<(MultiIndex, OddSet, DerivSymbol)> {
    let mut out = Vec::new();
    for alpha in MultiIndex::all_up_to(dims.m, deg) {
        for odd in OddSet::all(dims.n) {
            if alpha.total() + odd.len() == 0 {
                continue;
            }
            for d in DerivSymbol::all(dims.m, dims.n) {
                out.push((alpha.clone(), odd, d));
            }
        }
    }
    out
}

fn lemma_compute_cases(dims: Dims, cfg: &RunConfig) -> Vec<Case<'static>> {
    let mut probes: Vec<(u32, String, Probe)> = Monomial::all(dims.m, dims.n, cfg.deg)
        .into_iter()
        .map(|a| {
            (
                a.alpha.total(),
                a.to_string(),
                Probe::Poly(SuperPoly::monomial(a)),
            )
        })
        .collect();
    probes.extend(
        DerivSymbol::all(dims.m, dims.n)
            .into_iter()
            .map(|d| (0, d.to_string(), Probe::Deriv(d))),
    );
    let mut cases = Vec::new();
    for (alpha, odd, d) in x_params(dims, cfg.deg) {
        for (pd, pname, probe) in &probes {
            let (alpha, probe) = (alpha.clone(), probe.clone());
            cases.push(Case::new(
                if matches!(probe, Probe::Poly(_)) {
                    "x-commutes-with-a"
                } else {
                    "x-commutes-with-delta"
                },
                alpha.total() + pd,
                odd.len(),
                format!("alpha={alpha} I={odd} d={d} probe={pname}"),
                move || verify_t_central(&alpha, odd, d, &probe),
            ));
        }
    }
    cases
}

fn a_basis_cases(dims: Dims, cfg: &RunConfig) -> Vec<Case<'static>> {
    let prefixes = Monomial::all(dims.m, dims.n, 1);
    let mut cases = Vec::new();
    for x in WittTerm::all(dims, cfg.deg) {
        for a in &prefixes {
            let (d, i) = term_size(&x);
            let (x, a) = (x.clone(), a.clone());
            let input = format!("a={a} x={x}");
            cases.push(Case::new(
                "round-trip",
                d + a.alpha.total(),
                i + a.odd.len(),
                input,
                move || {
                    let w = UElem::prefixed_letter(a.clone(), x.clone());
                    match decompose_in_a_basis(&w) {
                        Ok(c) => reconstruct_from_a_basis(&c) == w,
                        Err(_) => false,
                    }
                },
            ));
        }
    }
    // a·X_{α,I,∂} decomposes back to the single coefficient a
    for (alpha, odd, d) in x_params(dims, cfg.deg) {
        for a in &prefixes {
            let a = a.clone();
            let input = format!("a={a} X=({alpha},{odd},{d})");
            let key = (alpha.clone(), odd, d);
            cases.push(Case::new(
                "free-basis",
                alpha.total() + a.alpha.total(),
                odd.len(),
                input,
                move || {
                    let c: BTreeMap<_, _> = [(key.clone(), SuperPoly::monomial(a.clone()))]
                        .into_iter()
                        .collect();
                    decompose_in_a_basis(&reconstruct_from_a_basis(&c)).is_ok_and(|back| back == c)
                },
            ));
        }
    }
    cases
}

fn pi_size(x: &PiGen) -> (u32, u32) {
    match x {
        PiGen::Witt(w) => term_size(w),
        PiGen::Poly(a) => (a.alpha.total(), a.odd.len()),
    }
}

fn pi_hom_cases(dims: Dims, cfg: &RunConfig) -> Vec<Case<'static>> {
    let gens = PiGen::all(dims, cfg.deg);
    let mut cases = Vec::new();
    // both sides are super skew-symmetric, so unordered pairs suffice
    for (i, x) in gens.iter().enumerate() {
        for y in &gens[i..] {
            if matches!((x, y), (PiGen::Poly(_), PiGen::Poly(_))) {
                continue;
            }
            let (dx, ix) = pi_size(x);
            let (dy, iy) = pi_size(y);
            let (x, y) = (x.clone(), y.clone());
            let variant = cfg.variant;
            cases.push(Case::new(
                "homomorphism",
                dx + dy,
                ix + iy,
                format!("x={x} y={y}"),
                move || verify_pi_homomorphism(dims, &x, &y, variant),
            ));
        }
    }
    cases.push(Case::new(
        "cartan-display",
        1,
        1,
        "d_i, delta_j".into(),
        move || pi_cartan_matches(dims),
    ));
    cases
}

fn gl_cases(dims: Dims, transport: bool) -> Vec<Case<'static>> {
    let units = GlUnit::all(dims);
    let mut cases = Vec::new();
    for &x in &units {
        for &y in &units {
            if transport {
                cases.push(Case::new(
                    "pi3-transport",
                    0,
                    2,
                    format!("x={x} y={y}"),
                    move || pi3_transport_holds(x, y, dims.n),
                ));
                continue;
            }
            for &z in &units {
                cases.push(Case::new(
                    "gl-jacobi",
                    0,
                    3,
                    format!("x={x} y={y} z={z}"),
                    move || gl_jacobi_holds(x, y, z),
                ));
            }
        }
    }
    cases
}

/// Dominant weights with entries in `lo..=hi`.
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

fn kac_cases(dims: Dims, cfg: &RunConfig) -> Result<Vec<Case<'static>>> {
    let hi = cfg.deg.min(2) as i64;
    let mut cases = Vec::new();
    for l1 in dominant(dims.m, 0, hi) {
        for l2 in dominant(dims.n, 0, hi) {
            let v1 = parse_v1(dims.m, Some(&join(&l1)))?;
            let v2 = parse_v2(dims.n, Some(&join(&l2)))?;
            let v = outer_product(&v1, &v2)?;
            if v.dim() * (1 << (dims.m * dims.n)) > 600 {
                continue;
            }
            let label = format!("V1=({}) V2=({})", join(&l1), join(&l2));
            let idx = (l1.iter().sum::<i64>() + l2.iter().sum::<i64>()) as u32;
            let seed = cfg.seed;
            cases.push(Case::new("kac-module", 0, idx, label, move || {
                let Ok(k) = kac_module(&v) else { return false };
                let units = GlUnit::all(dims);
                if k.dim() != (1 << (dims.m * dims.n)) * v.dim()
                    || !k.total.verify_representation(&units)
                {
                    return false;
                }
                let top = simple_top(&k);
                if !top.quotient.verify_representation(&units) {
                    return false;
                }
                if top.certified == Some(false) {
                    return false;
                }
                k.dim() > 60 || radical_oracle_agrees(&k, &top, seed)
            }));
        }
    }
    Ok(cases)
}

fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn omega_cases(dims: Dims, cfg: &RunConfig, reduction: bool) -> Result<Vec<Case<'static>>> {
    if dims.m == 0 {
        return Err(Error::NoEvenVariables);
    }
    let boxes = MultiIndex::all_in_box(dims.m, 2);
    let sets = OddSet::all(dims.n);
    let ds = DerivSymbol::all(dims.m, dims.n);
    let mut cases = Vec::new();
    for r in 0..=cfg.rmax {
        if reduction {
            for alpha in &boxes {
                for beta in &boxes {
                    for gamma in &boxes {
                        for &odd_i in &sets {
                            for &odd_j in &sets {
                                for j in 0..dims.m {
                                    for &d in &ds {
                                        let p = ReductionParams {
                                            alpha: alpha.clone(),
                                            beta: beta.clone(),
                                            gamma: gamma.clone(),
                                            odd_i,
                                            odd_j,
                                            r,
                                            j,
                                            d,
                                        };
                                        let deg = alpha.total() + beta.total() + gamma.total() + r;
                                        let input = format!(
                                            "alpha={alpha} beta={beta} gamma={gamma} I={odd_i} J={odd_j} r={r} j={} d={d}",
                                            j + 1
                                        );
                                        cases.push(Case::new(
                                            "reduction",
                                            deg,
                                            odd_i.len() + odd_j.len(),
                                            input,
                                            move || verify_omega_reduction(&p).unwrap_or(false),
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        } else {
            for p in omega_grid(dims.m, dims.n, 2) {
                let deg = p.alpha.total() + p.beta.total() + r;
                let idx = p.odd_i.len() + p.odd_j.len();
                let input = format!(
                    "alpha={} beta={} I={} J={} r={r} j={} d={} d'={}",
                    p.alpha,
                    p.beta,
                    p.odd_i,
                    p.odd_j,
                    p.j + 1,
                    p.d,
                    p.d2
                );
                cases.push(Case::new("recurrence", deg, idx, input, move || {
                    verify_omega_recurrence(&p.alpha, &p.beta, p.odd_i, p.odd_j, r, p.j, p.d, p.d2)
                        .unwrap_or(false)
                }));
            }
        }
    }
    Ok(cases)
}

fn single(
    suite: &str,
    cfg: &RunConfig,
    identity: &str,
    ok: bool,
    input: String,
    details: serde_json::Value,
) -> Report {
    Report {
        suite: suite.to_string(),
        parameters: cfg.parameters(suite),
        identities: vec![IdentityTally {
            identity: identity.to_string(),
            checked: 1,
            failed: usize::from(!ok),
        }],
        checked: 1,
        failed: usize::from(!ok),
        passed: ok,
        counterexample: (!ok).then(|| Counterexample {
            identity: identity.to_string(),
            input,
            degree: cfg.deg,
            index_size: 0,
            rerun: cfg.rerun(suite),
        }),
        details: Some(details),
        elapsed_ms: None,
    }
}

fn omega_sampling(cfg: &RunConfig) -> OmegaSampling {
    OmegaSampling {
        seed: cfg.seed,
        ..Default::default()
    }
}

/// Result of the cover suite, also used for the `cover` command.
#[derive(Clone, Debug, Serialize)]
pub struct CoverSummary {
    pub minimal_r: Option<u32>,
    pub cover_dims: Vec<crate::cover::CoverRow>,
    pub b_spanning: bool,
    pub hat_relation: bool,
    pub hat_instances: usize,
    pub b_dim: usize,
    pub max_v_weight_dim: usize,
    pub within_bound: bool,
    pub edge_flags: Vec<String>,
}

pub fn cover_summary(f: &TensorModule, cfg: &RunConfig) -> Result<CoverSummary> {
    let ann = omega_annihilation_search(f, cfg.rmax, &omega_sampling(cfg))?;
    let deg = cfg.window + 1;
    let c = build_cover(f, deg)?;
    let (b_spanning, hat_relation, hat_instances, bd) = match ann.minimal_r {
        Some(r) => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut params = omega_grid(f.dims.m, f.dims.n, 2);
            params.shuffle(&mut rng);
            params.truncate(200);
            let vs: Vec<_> = interior_basis(f).into_iter().take(4).collect();
            let inst: Vec<_> = params
                .iter()
                .flat_map(|p| vs.iter().map(move |v| (p, v)))
                .collect();
            let hat = inst.par_iter().all(|(p, v)| hat_relation_holds(f, p, r, v));
            (
                verify_b_spanning(&c, r),
                hat,
                inst.len(),
                b_dim(f.dims.m, f.dims.n, r),
            )
        }
        None => (false, false, 0, 0),
    };
    let rows = c.rows();
    let max_v = f.m.max_weight_dim();
    let within_bound = bd > 0
        && c.blocks
            .values()
            .filter(|b| b.reliable)
            .all(|b| b.cover_dim <= bd * max_v);
    let edge_flags = rows
        .iter()
        .filter(|r| !r.reliable)
        .map(|r| r.weight.clone())
        .collect();
    Ok(CoverSummary {
        minimal_r: ann.minimal_r,
        cover_dims: rows,
        b_spanning,
        hat_relation,
        hat_instances,
        b_dim: bd,
        max_v_weight_dim: max_v,
        within_bound,
        edge_flags,
    })
}

/// Runs a named suite.
pub fn run_suite(suite: &str, cfg: &RunConfig) -> Result<Report> {
    if !SUITES.contains(&suite) {
        return Err(Error::UnknownSuite(suite.to_string()));
    }
    let dims = cfg.check_caps(suite)?;
    let start = Instant::now();
    let mut report = match suite {
        "jacobi" => run_cases(suite, cfg, witt_cases(dims, cfg)),
        "lemma-compute" => run_cases(suite, cfg, lemma_compute_cases(dims, cfg)),
        "a-basis" => run_cases(suite, cfg, a_basis_cases(dims, cfg)),
        "pi-hom" => run_cases(suite, cfg, pi_hom_cases(dims, cfg)),
        "glmn-jacobi" => run_cases(suite, cfg, gl_cases(dims, false)),
        "pi3-transport" => run_cases(suite, cfg, gl_cases(dims, true)),
        "kac-rep" => run_cases(suite, cfg, kac_cases(dims, cfg)?),
        "omega-recurrence" => run_cases(suite, cfg, omega_cases(dims, cfg, false)?),
        "omega-reduction" => run_cases(suite, cfg, omega_cases(dims, cfg, true)?),
        "aw-axioms" => {
            let f = tensor_from_config(cfg)?;
            let r = f.verify_aw_axioms(cfg.samples, cfg.seed, cfg.deg);
            single(
                suite,
                cfg,
                "aw-axioms",
                r.passed,
                r.first_failure.clone().unwrap_or_default(),
                serde_json::to_value(&r).expect("serializable"),
            )
        }
        "annihilation" => {
            let f = tensor_from_config(cfg)?;
            let r = omega_annihilation_search(&f, cfg.rmax, &omega_sampling(cfg))?;
            let ok = r.minimal_r.is_some()
                && r.monotone
                && (r.minimal_r == Some(0) || r.witness.is_some());
            single(
                suite,
                cfg,
                "finite-annihilation",
                ok,
                format!("no r ≤ {} annihilates the samples", cfg.rmax),
                serde_json::to_value(&r).expect("serializable"),
            )
        }
        _ => {
            let f = tensor_from_config(cfg)?;
            let s = cover_summary(&f, cfg)?;
            let ok = s.b_spanning && s.hat_relation && s.within_bound;
            single(
                suite,
                cfg,
                "cover",
                ok,
                format!(
                    "b_spanning={} hat_relation={} within_bound={}",
                    s.b_spanning, s.hat_relation, s.within_bound
                ),
                serde_json::to_value(&s).expect("serializable"),
            )
        }
    };
    report.elapsed_ms = Some(start.elapsed().as_millis());
    Ok(report)
}
