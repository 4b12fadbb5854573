//! Bundled example families, sweeps over module pairs, and audits.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::groebner::FreeMap;
use crate::job::{FieldSpec, JobFile};
use crate::mf::{knorrer_split, mf_cokernel, MatrixFactorization};
use crate::poly::{CoefficientField, Monomial, Polynomial};
use crate::quotient::{HypersurfaceRing, RModulePresentation};
use crate::theta::{jacobian_check, theta, vanishing_predicted, SingularityReport, ThetaOptions, ThetaReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    ANCurve,
    ANSurface,
    ANThreefold,
    Quadric3fold,
    Custom,
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::ANCurve => "a_n_curve",
            FamilyKind::ANSurface => "a_n_surface",
            FamilyKind::ANThreefold => "a_n_threefold",
            FamilyKind::Quadric3fold => "quadric_3fold",
            FamilyKind::Custom => "custom",
        }
    }

    fn takes_n(&self) -> bool {
        matches!(self, FamilyKind::ANCurve | FamilyKind::ANSurface | FamilyKind::ANThreefold)
    }
}

/// One entry of an experiment configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub family: FamilyKind,
    /// Parameters for the `A_n` families.
    #[serde(default)]
    pub n: Vec<usize>,
    #[serde(default)]
    pub field: FieldSpec,
    /// Also pair the residue field with every module.
    #[serde(default)]
    pub residue_field: bool,
    /// Explicit pairs of roster labels; all ordered pairs of factorization
    /// cokernels when empty.
    #[serde(default)]
    pub pairs: Vec<[String; 2]>,
    /// Ring and modules of a custom family.
    #[serde(default)]
    pub job: Option<JobFile>,
    #[serde(default)]
    pub name: Option<String>,
    /// Treat every θ of the family as required to vanish.
    #[serde(default)]
    pub assert_vanishing: bool,
}

impl FamilySpec {
    pub fn bundled(family: FamilyKind, n: &[usize]) -> Self {
        FamilySpec {
            family,
            n: n.to_vec(),
            field: FieldSpec::default(),
            residue_field: false,
            pairs: Vec::new(),
            job: None,
            name: None,
            assert_vanishing: false,
        }
    }
}

/// A ring with its roster of modules and the pairs to evaluate.
#[derive(Clone, Debug)]
pub struct Family {
    pub name: String,
    pub n: Option<usize>,
    pub ring: Arc<HypersurfaceRing>,
    pub factorizations: Vec<(String, MatrixFactorization)>,
    pub modules: Vec<RModulePresentation>,
    pub pairs: Vec<(usize, usize)>,
    pub singularity: SingularityReport,
    pub predicted_vanishing: bool,
}

impl Family {
    pub fn module(&self, label: &str) -> Option<&RModulePresentation> {
        self.modules.iter().find(|m| m.label() == Some(label))
    }

    fn index(&self, label: &str) -> Result<usize> {
        self.modules
            .iter()
            .position(|m| m.label() == Some(label))
            .ok_or_else(|| Error::InvalidParameter(format!("no module `{label}` in family {}", self.name)))
    }
}

fn x_pow(e: usize) -> String {
    match e {
        0 => "1".to_string(),
        1 => "x".to_string(),
        _ => format!("x^{e}"),
    }
}

fn curve_factorizations(ring: &Arc<HypersurfaceRing>, n: usize) -> Result<Vec<(String, MatrixFactorization)>> {
    let mut out = Vec::new();
    for j in 1..=n {
        let (a, b) = (x_pow(j), x_pow(n + 1 - j));
        let mf = MatrixFactorization::parse(
            ring,
            &[vec!["y".to_string(), a.clone()], vec![b.clone(), "y".to_string()]],
            &[vec!["-y".to_string(), a], vec![b, "-y".to_string()]],
        )?;
        out.push((format!("A{j}"), mf));
    }
    if n % 2 == 1 {
        let k = x_pow(n.div_ceil(2));
        let mf = MatrixFactorization::parse(ring, &[vec![format!("{k} - y")]], &[vec![format!("{k} + y")]])?;
        out.push(("L".to_string(), mf));
    }
    Ok(out)
}

fn bundled_ring(kind: FamilyKind, n: usize, field: CoefficientField) -> Result<Arc<HypersurfaceRing>> {
    match kind {
        FamilyKind::ANCurve => HypersurfaceRing::parse(field, &["x", "y"], &format!("x^{} - y^2", n + 1)),
        FamilyKind::ANSurface => HypersurfaceRing::parse(field, &["x", "y", "z"], &format!("x^{} - y*z", n + 1)),
        FamilyKind::ANThreefold => {
            HypersurfaceRing::parse(field, &["x", "y", "z", "w"], &format!("x^{} - y^2 + z*w", n + 1))
        }
        FamilyKind::Quadric3fold => HypersurfaceRing::parse(field, &["x", "y", "z", "w"], "x*y - z*w"),
        FamilyKind::Custom => unreachable!(),
    }
}

/// Matrix factorizations of a bundled family.
pub fn bundled_factorizations(kind: FamilyKind, n: usize, field: CoefficientField) -> Result<Vec<(String, MatrixFactorization)>> {
    if kind.takes_n() && n == 0 {
        return Err(Error::InvalidParameter(format!("{} needs n >= 1", kind.name())));
    }
    match kind {
        FamilyKind::ANCurve => curve_factorizations(&bundled_ring(kind, n, field)?, n),
        FamilyKind::ANSurface => {
            let ring = bundled_ring(kind, n, field)?;
            (1..=n)
                .map(|j| {
                    let (a, b) = (x_pow(j), x_pow(n + 1 - j));
                    let mf = MatrixFactorization::parse(
                        &ring,
                        &[vec![a.clone(), "y".to_string()], vec!["z".to_string(), b.clone()]],
                        &[vec![b, "-y".to_string()], vec!["-z".to_string(), a]],
                    )?;
                    Ok((format!("A{j}"), mf))
                })
                .collect()
        }
        FamilyKind::ANThreefold => {
            let curve = bundled_ring(FamilyKind::ANCurve, n, field)?;
            let target = bundled_ring(kind, n, field)?;
            curve_factorizations(&curve, n)?
                .into_iter()
                .map(|(label, mf)| {
                    let k = knorrer_split(&mf, "z", "w")?;
                    // same ring up to the printed form of f
                    let k = MatrixFactorization::new(k.a(), k.b(), &target)?;
                    Ok((label, k))
                })
                .collect()
        }
        FamilyKind::Quadric3fold => {
            let ring = bundled_ring(kind, n, field)?;
            let mf = MatrixFactorization::parse(&ring, &[vec!["x", "z"], vec!["w", "y"]], &[vec!["y", "-z"], vec!["-w", "x"]])?;
            Ok(vec![("A".to_string(), mf.clone()), ("At".to_string(), mf.transpose())])
        }
        FamilyKind::Custom => Err(Error::InvalidParameter("custom families have no bundled factorizations".into())),
    }
}

fn assemble(
    spec: &FamilySpec,
    name: String,
    n: Option<usize>,
    ring: Arc<HypersurfaceRing>,
    factorizations: Vec<(String, MatrixFactorization)>,
    mut modules: Vec<RModulePresentation>,
    mut pairs: Vec<(usize, usize)>,
) -> Result<Family> {
    let singularity = jacobian_check(ring.f());
    let predicted = vanishing_predicted(&singularity).predicted || spec.assert_vanishing;
    let mut family = Family {
        name,
        n,
        ring: ring.clone(),
        factorizations,
        modules: Vec::new(),
        pairs: Vec::new(),
        singularity,
        predicted_vanishing: predicted,
    };
    if !spec.pairs.is_empty() {
        family.modules = modules.clone();
        pairs = spec
            .pairs
            .iter()
            .map(|[a, b]| Ok((family.index(a)?, family.index(b)?)))
            .collect::<Result<_>>()?;
    }
    if spec.residue_field {
        let k = modules.len();
        modules.push(RModulePresentation::residue_field(&ring));
        for j in 0..=k {
            pairs.push((k, j));
        }
    }
    family.modules = modules;
    family.pairs = pairs;
    Ok(family)
}

/// Builds one family instance (one value of `n` for the `A_n` families).
pub fn build_family(spec: &FamilySpec, n: Option<usize>) -> Result<Family> {
    if spec.family == FamilyKind::Custom {
        let job = spec
            .job
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter("custom family without `job`".into()))?;
        let loaded = job.load()?;
        let names: Vec<&String> = loaded.modules.keys().collect();
        let modules: Vec<RModulePresentation> = loaded.modules.values().cloned().collect();
        let pos = |s: &String| names.iter().position(|x| *x == s).expect("validated by load");
        let pairs = loaded.pairs.iter().map(|(a, b)| (pos(a), pos(b))).collect();
        let factorizations = loaded.factorizations.into_iter().collect();
        let name = spec.name.clone().unwrap_or_else(|| "custom".into());
        return assemble(spec, name, None, loaded.ring, factorizations, modules, pairs);
    }
    let n_val = if spec.family.takes_n() {
        Some(n.ok_or_else(|| Error::InvalidParameter(format!("{} needs n", spec.family.name())))?)
    } else {
        None
    };
    let field = spec.field.0;
    let factorizations = bundled_factorizations(spec.family, n_val.unwrap_or(0), field)?;
    let ring = factorizations[0].1.ring().clone();
    let modules: Vec<RModulePresentation> = factorizations
        .iter()
        .map(|(label, mf)| mf_cokernel(mf).with_label(label.clone()))
        .collect();
    let k = modules.len();
    let pairs = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    let name = spec.name.clone().unwrap_or_else(|| spec.family.name().to_string());
    let family = assemble(spec, name, n_val, ring, factorizations, modules, pairs)?;
    if !family.singularity.isolated {
        return Err(Error::InvalidParameter(format!(
            "{} is not an isolated singularity over {field}",
            family.ring
        )));
    }
    Ok(family)
}

/// Every family instance described by a spec.
pub fn expand_spec(spec: &FamilySpec) -> Result<Vec<Family>> {
    if spec.family.takes_n() {
        if spec.n.is_empty() {
            return Err(Error::InvalidParameter(format!("{} needs a list `n`", spec.family.name())));
        }
        spec.n.iter().map(|&n| build_family(spec, Some(n))).collect()
    } else {
        Ok(vec![build_family(spec, None)?])
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub options: ThetaOptions,
    /// Seed for the random audits.
    #[serde(default)]
    pub seed: u64,
    /// Random bi-additivity and symmetry instances per family instance.
    #[serde(default)]
    pub random_audits: usize,
    pub families: Vec<FamilySpec>,
}

impl ExperimentConfig {
    /// Every bundled family with the residue field added to each roster.
    pub fn bundled() -> Self {
        let spec = |kind, n: &[usize]| FamilySpec {
            residue_field: true,
            ..FamilySpec::bundled(kind, n)
        };
        ExperimentConfig {
            families: vec![
                spec(FamilyKind::ANCurve, &[1, 2, 3, 4]),
                spec(FamilyKind::ANSurface, &[1, 2, 3, 4]),
                spec(FamilyKind::ANThreefold, &[1, 2]),
                spec(FamilyKind::Quadric3fold, &[]),
            ],
            ..Default::default()
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("experiment config: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub family: String,
    pub n: Option<usize>,
    pub field: String,
    pub pair: String,
    pub theta: Option<i64>,
    pub len_even: Option<u64>,
    pub len_odd: Option<u64>,
    pub stab_index: Option<usize>,
    pub predicted_vanishing: bool,
    pub millis: u128,
    /// Why θ is missing, when it is.
    pub error: Option<String>,
    #[serde(skip)]
    pub hypothesis_failure: bool,
}

pub const CSV_HEADER: [&str; 10] = [
    "family",
    "n",
    "field",
    "pair",
    "theta",
    "len_even",
    "len_odd",
    "stab_index",
    "predicted_vanishing",
    "millis",
];

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

impl SweepRecord {
    fn csv_fields(&self) -> [String; 10] {
        [
            self.family.clone(),
            opt(&self.n),
            self.field.clone(),
            self.pair.clone(),
            opt(&self.theta),
            opt(&self.len_even),
            opt(&self.len_odd),
            opt(&self.stab_index),
            self.predicted_vanishing.to_string(),
            self.millis.to_string(),
        ]
    }
}

/// The sweep records as CSV.
pub fn to_csv(records: &[SweepRecord]) -> String {
    write_csv(records, true)
}

fn write_csv(records: &[SweepRecord], with_timing: bool) -> String {
    let width = if with_timing { 10 } else { 9 };
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&CSV_HEADER[..width]).expect("in-memory write");
    for r in records {
        w.write_record(&r.csv_fields()[..width]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// SHA-256 of the CSV without the timing column, in hex.
pub fn determinism_hash(records: &[SweepRecord]) -> String {
    hex::encode(Sha256::digest(write_csv(records, false).as_bytes()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditKind {
    Biadditivity,
    Symmetry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub family: String,
    pub n: Option<usize>,
    pub kind: AuditKind,
    /// `[M1, M2, N]` for bi-additivity, `[M, N]` for symmetry.
    pub modules: Vec<String>,
    /// `[θ(M1⊕M2, N), θ(M1, N), θ(M2, N)]` or `[θ(M, N), θ(N, M)]`.
    pub values: Vec<i64>,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct Sweep {
    pub records: Vec<SweepRecord>,
    pub audits: Vec<AuditRecord>,
    pub hash: String,
}

impl Sweep {
    pub fn csv(&self) -> String {
        to_csv(&self.records)
    }

    pub fn hypothesis_failures(&self) -> usize {
        self.records.iter().filter(|r| r.hypothesis_failure).count()
    }
}

fn label(m: &RModulePresentation) -> String {
    m.label().unwrap_or("?").to_string()
}

fn evaluate(family: &Family, (i, j): (usize, usize), opts: ThetaOptions) -> Result<SweepRecord> {
    let (m, n) = (&family.modules[i], &family.modules[j]);
    let start = Instant::now();
    let outcome = theta(m, n, opts);
    let millis = start.elapsed().as_millis();
    let mut rec = SweepRecord {
        family: family.name.clone(),
        n: family.n,
        field: family.ring.ambient().field().to_string(),
        pair: format!("{}|{}", label(m), label(n)),
        theta: None,
        len_even: None,
        len_odd: None,
        stab_index: None,
        predicted_vanishing: family.predicted_vanishing,
        millis,
        error: None,
        hypothesis_failure: false,
    };
    match outcome {
        Ok(ThetaReport {
            theta,
            len_even,
            len_odd,
            stab_index,
            ..
        }) => {
            rec.theta = Some(theta);
            rec.len_even = Some(len_even);
            rec.len_odd = Some(len_odd);
            rec.stab_index = Some(stab_index);
        }
        Err(e) if e.is_hypothesis_failure() => {
            rec.error = Some(e.to_string());
            rec.hypothesis_failure = true;
        }
        Err(e) => return Err(e),
    }
    Ok(rec)
}

/// Fails on the first record whose θ should vanish but does not.
pub fn check_conformance(records: &[SweepRecord]) -> Result<()> {
    for r in records {
        if r.predicted_vanishing && r.theta.is_some_and(|t| t != 0) {
            return Err(Error::ConformanceViolation(format!(
                "θ = {} for {} in {}{}",
                r.theta.unwrap_or_default(),
                r.pair,
                r.family,
                r.n.map(|n| format!(" (n = {n})")).unwrap_or_default()
            )));
        }
    }
    Ok(())
}

/// Evaluates θ on every configured pair (in parallel, reported in config
/// order), then runs the random audits.
pub fn run_sweep(config: &ExperimentConfig) -> Result<Sweep> {
    let families: Vec<Family> = config
        .families
        .iter()
        .map(expand_spec)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let jobs: Vec<(&Family, (usize, usize))> = families
        .iter()
        .flat_map(|f| f.pairs.iter().map(move |&p| (f, p)))
        .collect();
    let records = jobs
        .par_iter()
        .map(|(f, p)| evaluate(f, *p, config.options))
        .collect::<Result<Vec<_>>>()?;
    check_conformance(&records)?;
    let audits = if config.random_audits > 0 {
        families
            .par_iter()
            .enumerate()
            .map(|(k, f)| audit_family(f, config.random_audits, config.seed.wrapping_add(k as u64), config.options))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect()
    } else {
        Vec::new()
    };
    let hash = determinism_hash(&records);
    Ok(Sweep { records, audits, hash })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiadditivityAudit {
    pub sum: i64,
    pub first: i64,
    pub second: i64,
    pub passed: bool,
}

/// Checks `θ(M1 ⊕ M2, N) = θ(M1, N) + θ(M2, N)`.
pub fn biadditivity_audit(
    m1: &RModulePresentation,
    m2: &RModulePresentation,
    n: &RModulePresentation,
    opts: ThetaOptions,
) -> Result<BiadditivityAudit> {
    let sum = theta(&m1.direct_sum(m2)?, n, opts)?.theta;
    let first = theta(m1, n, opts)?.theta;
    let second = theta(m2, n, opts)?.theta;
    Ok(BiadditivityAudit {
        sum,
        first,
        second,
        passed: sum == first + second,
    })
}

/// A random proper monomial ideal quotient `R/(m_1, ..., m_k)`.
fn random_monomial_module(ring: &Arc<HypersurfaceRing>, rng: &mut ChaCha8Rng) -> RModulePresentation {
    let q = ring.ambient();
    let nv = q.nvars();
    let count = rng.gen_range(1..=nv.min(3));
    let mut gens: Vec<Polynomial> = Vec::new();
    while gens.len() < count {
        let degree = rng.gen_range(1..=2);
        let mut e = vec![0u32; nv];
        for _ in 0..degree {
            e[rng.gen_range(0..nv)] += 1;
        }
        let p = Polynomial::term(q, Monomial::from_exponents(e), q.field().one());
        if !gens.contains(&p) {
            gens.push(p);
        }
    }
    gens.sort_by(|a, b| b.terms()[0].0.cmp(&a.terms()[0].0));
    let name = format!(
        "R/({})",
        gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
    );
    let row = FreeMap::new(q, 1, gens.len(), gens).expect("1 x k");
    RModulePresentation::new(ring, &row).expect("same ring").with_label(name)
}

/// The pool random audit instances are drawn from: the family's modules,
/// cokernels of transposed factorizations, `R`, `R/m` and a few monomial
/// quotients.
pub fn module_pool(family: &Family, rng: &mut ChaCha8Rng) -> Vec<RModulePresentation> {
    let mut pool: Vec<RModulePresentation> = family.modules.clone();
    for (label, mf) in &family.factorizations {
        pool.push(mf_cokernel(&mf.transpose()).with_label(format!("{label}'")));
    }
    pool.push(RModulePresentation::free(&family.ring, 1).with_label("R"));
    if !pool.iter().any(|m| m.label() == Some("R/m")) {
        pool.push(RModulePresentation::residue_field(&family.ring));
    }
    for _ in 0..3 {
        let m = random_monomial_module(&family.ring, rng);
        if !pool.iter().any(|p| p.label() == m.label()) {
            pool.push(m);
        }
    }
    pool
}

/// Seeded random bi-additivity and symmetry instances over one family.
pub fn audit_family(family: &Family, count: usize, seed: u64, opts: ThetaOptions) -> Result<Vec<AuditRecord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = module_pool(family, &mut rng);
    let mut triples = Vec::with_capacity(count);
    for _ in 0..count {
        let pick = |rng: &mut ChaCha8Rng| pool.choose(rng).expect("pool is nonempty").clone();
        triples.push((pick(&mut rng), pick(&mut rng), pick(&mut rng)));
    }
    let mut cache: HashMap<(String, String), i64> = HashMap::new();
    let mut theta_of = |m: &RModulePresentation, n: &RModulePresentation| -> Result<i64> {
        let key = (label(m), label(n));
        if let Some(&t) = cache.get(&key) {
            return Ok(t);
        }
        let t = theta(m, n, opts)?.theta;
        cache.insert(key, t);
        Ok(t)
    };
    let mut out = Vec::with_capacity(2 * count);
    for (m1, m2, n) in &triples {
        let sum = theta(&m1.direct_sum(m2)?, n, opts)?.theta;
        let first = theta_of(m1, n)?;
        let second = theta_of(m2, n)?;
        out.push(AuditRecord {
            family: family.name.clone(),
            n: family.n,
            kind: AuditKind::Biadditivity,
            modules: vec![label(m1), label(m2), label(n)],
            values: vec![sum, first, second],
            passed: sum == first + second,
        });
        let back = theta_of(n, m1)?;
        out.push(AuditRecord {
            family: family.name.clone(),
            n: family.n,
            kind: AuditKind::Symmetry,
            modules: vec![label(m1), label(n)],
            values: vec![first, back],
            passed: first == back,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::job::ModuleSpec;
    use std::collections::BTreeMap;

    fn node_spec(assert_vanishing: bool) -> FamilySpec {
        let mut modules = BTreeMap::new();
        modules.insert("R/x".to_string(), ModuleSpec::Presentation(vec![vec!["x".into()]]));
        modules.insert("R/y".to_string(), ModuleSpec::Presentation(vec![vec!["y".into()]]));
        FamilySpec {
            job: Some(JobFile {
                field: FieldSpec::default(),
                variables: vec!["x".into(), "y".into()],
                f: "x*y".into(),
                modules,
                pairs: vec![["R/x".into(), "R/y".into()]],
                options: ThetaOptions::default(),
            }),
            name: Some("node".into()),
            assert_vanishing,
            ..FamilySpec::bundled(FamilyKind::Custom, &[])
        }
    }

    #[test]
    fn families_build() {
        let s = build_family(&FamilySpec::bundled(FamilyKind::ANSurface, &[]), Some(1)).unwrap();
        assert_eq!(s.ring.f().to_string(), "x^2 - y*z");
        assert_eq!(s.factorizations.len(), 1);
        assert!(s.predicted_vanishing);
        let c = build_family(&FamilySpec::bundled(FamilyKind::ANCurve, &[]), Some(1)).unwrap();
        assert_eq!(c.ring.f().to_string(), "x^2 - y^2");
        let l = &c.factorizations.iter().find(|(l, _)| l == "L").unwrap().1;
        assert_eq!(l.a().to_strings(), vec![vec!["x - y"]]);
        assert_eq!(l.b().to_strings(), vec![vec!["x + y"]]);
        let q = build_family(&FamilySpec::bundled(FamilyKind::Quadric3fold, &[]), None).unwrap();
        assert_eq!(q.modules.len(), 2);
        assert!(!q.predicted_vanishing);
        let t = build_family(&FamilySpec::bundled(FamilyKind::ANThreefold, &[]), Some(2)).unwrap();
        assert_eq!(t.factorizations[0].1.size(), 4);
        assert!(build_family(&FamilySpec::bundled(FamilyKind::ANSurface, &[]), Some(0)).is_err());
    }

    #[test]
    fn node_sweep_and_conformance() {
        let config = ExperimentConfig {
            families: vec![node_spec(false)],
            ..Default::default()
        };
        let sweep = run_sweep(&config).unwrap();
        assert_eq!(sweep.records.len(), 1);
        assert_eq!(sweep.records[0].theta, Some(1));
        assert_eq!(sweep.records[0].pair, "R/x|R/y");
        let csv = sweep.csv();
        assert!(csv.starts_with("family,n,field,pair,theta,len_even,len_odd,stab_index,predicted_vanishing,millis\n"));
        assert!(csv.contains("node,,rational,R/x|R/y,1,1,0,0,false,"));
        let strict = ExperimentConfig {
            families: vec![node_spec(true)],
            ..Default::default()
        };
        assert!(matches!(run_sweep(&strict), Err(Error::ConformanceViolation(_))));
    }

    #[test]
    fn node_biadditivity() {
        let ring = HypersurfaceRing::parse(CoefficientField::Rationals, &["x", "y"], "x*y").unwrap();
        let rx = RModulePresentation::cyclic(&ring, &["x"]).unwrap();
        let ry = RModulePresentation::cyclic(&ring, &["y"]).unwrap();
        let o = ThetaOptions::default();
        let a = biadditivity_audit(&rx, &rx, &ry, o).unwrap();
        assert_eq!((a.sum, a.first, a.second, a.passed), (2, 1, 1, true));
        let b = biadditivity_audit(&rx, &ry, &rx, o).unwrap();
        assert_eq!((b.sum, b.first, b.second, b.passed), (0, -1, 1, true));
        let zero = RModulePresentation::zero(&ring);
        let c = biadditivity_audit(&rx, &zero, &ry, o).unwrap();
        assert_eq!((c.sum, c.second), (1, 0));
    }

    #[test]
    fn hash_ignores_timing() {
        let config = ExperimentConfig {
            families: vec![node_spec(false)],
            ..Default::default()
        };
        let mut a = run_sweep(&config).unwrap();
        let b = run_sweep(&config).unwrap();
        a.records[0].millis += 1000;
        assert_eq!(determinism_hash(&a.records), b.hash);
    }
}
