//! The acceptance suite: ten numbered checks with their measured values.
//!
//! Each check is deterministic given [`AcceptanceConfig::seed`] and does not
//! depend on the worker count.

use rand::Rng as _;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chains::{apply_q_up, quadratic_form, signed_boundary};
use crate::complex::{canonical_form, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::extremal::{
    asymptotic_check, binomial, max_facets_search, max_spectral_search, perron_profile, reference_complex,
    telescoping_identity, ProfileClass, SearchOptions,
};
use crate::families::{delta_sphere, random_pure2, rhombic, simplex_skeleton, tent_plus_common_edge, tented};
use crate::homology::{betti_profile, check_basic_hole_properties, hodge_betti, is_basic_hole};
use crate::rng;
use crate::spectra::{second_order_identity_check, spectral_radius, transfer_to_down, SpectralOptions};

pub const CRITERIA: [u8; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10];
pub const HODGE_SAMPLES: usize = 200;
pub const OPERATOR_SAMPLES: usize = 50;
pub const HODGE_ZERO_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct AcceptanceConfig {
    pub seed: u64,
    pub tol: f64,
    pub workers: usize,
}

impl Default for AcceptanceConfig {
    fn default() -> Self {
        let search = SearchOptions::default();
        AcceptanceConfig { seed: search.seed, tol: search.tol, workers: search.workers }
    }
}

impl AcceptanceConfig {
    fn spectral(&self) -> SpectralOptions {
        SpectralOptions::default().with_tol(self.tol).with_seed(self.seed)
    }

    fn search(&self, full_skeleton: bool) -> SearchOptions {
        SearchOptions { full_skeleton, workers: self.workers, tol: self.tol, seed: self.seed }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub summary: String,
    pub measured: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AcceptanceReport {
    pub schema: u32,
    pub seed: u64,
    pub tol: f64,
    pub criteria: Vec<CriterionResult>,
}

impl AcceptanceReport {
    pub fn all_passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }
}

pub fn criterion_name(id: u8) -> &'static str {
    match id {
        1 => "tented spectral formula",
        2 => "facet maximum",
        3 => "universal spectral bound",
        4 => "hole-free spectral maximizer",
        5 => "asymptotic law",
        6 => "hodge cross-check",
        7 => "operator identities",
        8 => "euler identity",
        9 => "basic holes",
        10 => "perron profile",
        _ => "unknown",
    }
}

pub fn run_criterion(id: u8, cfg: &AcceptanceConfig) -> Result<CriterionResult> {
    let (passed, summary, measured) = match id {
        1 => tented_formula(cfg)?,
        2 => facet_maximum(cfg)?,
        3 => universal_spectral_bound(cfg)?,
        4 => hole_free_maximizer(cfg)?,
        5 => asymptotic_law(cfg)?,
        6 => hodge_cross_check(cfg)?,
        7 => operator_identities(cfg)?,
        8 => euler_identity(cfg)?,
        9 => basic_holes()?,
        10 => perron_profile_check(cfg)?,
        _ => return Err(Error::BadParams(format!("no criterion {id}"))),
    };
    Ok(CriterionResult { id, name: criterion_name(id).into(), passed, summary, measured })
}

/// Runs one criterion; a computation error is recorded as a failure.
pub fn evaluate(id: u8, cfg: &AcceptanceConfig) -> CriterionResult {
    run_criterion(id, cfg).unwrap_or_else(|e| CriterionResult {
        id,
        name: criterion_name(id).into(),
        passed: false,
        summary: format!("error {}: {e}", e.code()),
        measured: Value::Null,
    })
}

pub fn run_all(cfg: &AcceptanceConfig) -> AcceptanceReport {
    report(cfg, CRITERIA.iter().map(|&id| evaluate(id, cfg)).collect())
}

pub fn report(cfg: &AcceptanceConfig, criteria: Vec<CriterionResult>) -> AcceptanceReport {
    AcceptanceReport { schema: 1, seed: cfg.seed, tol: cfg.tol, criteria }
}

impl CriterionResult {
    /// `PASS  3 name: summary`
    pub fn line(&self) -> String {
        format!("{} {:>2} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.name, self.summary)
    }
}

type Outcome = Result<(bool, String, Value)>;

fn tented_formula(cfg: &AcceptanceConfig) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut values = Vec::new();
    for n in 4..=20 {
        let q = spectral_radius(&tented(n, 2)?, 1, &cfg.spectral())?.value;
        worst = worst.max((q - (2 * n - 3) as f64).abs());
        values.push(json!({ "n": n, "q1": q }));
    }
    Ok((worst <= 1e-8, format!("max |q1 - (2n-3)| = {worst:.2e} over n = 4..20"), json!({ "max_abs_error": worst, "values": values })))
}

fn facet_maximum(cfg: &AcceptanceConfig) -> Outcome {
    let mut ok = true;
    let mut rows = Vec::new();
    for n in [5, 6] {
        for t in 0..=2 {
            let r = max_facets_search(n, t, &cfg.search(true))?;
            let expected = binomial(n as u64 - 1, 2) as usize + t;
            ok &= r.max_facets == expected && r.reference_is_witness && r.contract_holds();
            rows.push(json!({
                "n": n, "t": t, "max_facets": r.max_facets, "expected": expected,
                "reference_is_witness": r.reference_is_witness, "witnesses": r.facet_witnesses.len(),
                "enumerated": r.enumerated_count,
            }));
        }
    }
    Ok((ok, "max facets = C(n-1,2)+t with T_n^{2,t} a witness for n in {5,6}, t in {0,1,2}".into(), json!(rows)))
}

fn universal_spectral_bound(cfg: &AcceptanceConfig) -> Outcome {
    let mut violations = 0;
    let mut checked = 0;
    let mut rows = Vec::new();
    for full in [true, false] {
        for n in 4..=6 {
            for t in 0..=2.min(n - 3) {
                let r = max_spectral_search(n, t, &cfg.search(full))?;
                violations += r.bound_violations.len();
                checked += r.enumerated_count;
                rows.push(json!({
                    "n": n, "t": t, "full_skeleton": full, "enumerated": r.enumerated_count,
                    "max_q1": r.max_q1, "bound": 2 * n - 3 + t + 1, "violations": r.bound_violations.len(),
                    "reference_is_witness": r.reference_is_witness,
                }));
            }
        }
    }
    Ok((
        violations == 0 && checked > 0,
        format!("{checked} complexes checked, {violations} violations of q1 <= 2n-2+t"),
        json!({ "checked": checked, "violations": violations, "runs": rows }),
    ))
}

fn hole_free_maximizer(cfg: &AcceptanceConfig) -> Outcome {
    let mut ok = true;
    let mut rows = Vec::new();
    for n in [5, 6] {
        let r = max_spectral_search(n, 0, &cfg.search(true))?;
        let reference = canonical_form(&reference_complex(n, 0)?)?;
        let unique = r.spectral_witnesses == vec![reference];
        ok &= unique;
        rows.push(json!({ "n": n, "max_q1": r.max_q1, "witnesses": r.spectral_witnesses.len(), "unique_tented": unique }));
    }
    Ok((ok, "unique spectral maximizer at t = 0 is T_n^2 for n in {5,6}".into(), json!(rows)))
}

fn asymptotic_law(cfg: &AcceptanceConfig) -> Outcome {
    let mut ok = true;
    let mut tables = Vec::new();
    let mut parts = Vec::new();
    for t in [1, 2] {
        let table = asymptotic_check(t, &[60, 120, 240], None, &cfg.spectral())?;
        ok &= table.contract_holds();
        parts.push(format!(
            "t={t}: g = {}",
            table.rows.iter().map(|r| format!("{:.4}", r.g)).collect::<Vec<_>>().join(", ")
        ));
        tables.push(serde_json::to_value(&table).expect("serializable"));
    }
    Ok((ok, parts.join("; "), json!(tables)))
}

/// `(n, seed)` of the i-th seeded random complex, with `n` cycling through `4..=8`.
fn sample(cfg: &AcceptanceConfig, i: usize) -> (usize, u64) {
    (4 + i % 5, cfg.seed.wrapping_add(i as u64))
}

fn hodge_cross_check(cfg: &AcceptanceConfig) -> Outcome {
    let mut mismatches = Vec::new();
    for i in 0..HODGE_SAMPLES {
        let (n, seed) = sample(cfg, i);
        let k = random_pure2(n, None, seed)?;
        let betti = betti_profile(&k).betti;
        for (dim, &b) in betti.iter().enumerate() {
            match hodge_betti(&k, dim, HODGE_ZERO_TOL) {
                Ok(h) if h == b => {}
                Ok(h) => mismatches.push(json!({ "sample": i, "dim": dim, "exact": b, "hodge": h })),
                Err(e) => mismatches.push(json!({ "sample": i, "dim": dim, "error": e.code() })),
            }
        }
    }
    Ok((
        mismatches.is_empty(),
        format!("{HODGE_SAMPLES} random complexes, {} mismatches", mismatches.len()),
        json!({ "samples": HODGE_SAMPLES, "mismatches": mismatches }),
    ))
}

fn operator_identities(cfg: &AcceptanceConfig) -> Outcome {
    let (mut qf_err, mut transfer_res, mut second_ratio) = (0.0f64, 0.0f64, 0.0f64);
    let mut chain_nonzeros = 0;
    for i in 0..OPERATOR_SAMPLES {
        let (n, seed) = sample(cfg, 1000 + i);
        let k = random_pure2(n, None, seed)?;
        let m = k.face_count(1);
        let mut r = rng::stream(seed, 1);
        let f: Vec<f64> = (0..m).map(|_| r.random_range(-1.0..1.0)).collect();
        let g: Vec<f64> = (0..m).map(|_| r.random_range(-1.0..1.0)).collect();
        let qf = apply_q_up(&k, 1, &f)?;
        let direct: f64 = qf.iter().zip(&g).map(|(a, b)| a * b).sum();
        let form = quadratic_form(&k, 1, &f, &g)?;
        qf_err = qf_err.max((form - direct).abs() / direct.abs().max(f64::MIN_POSITIVE));

        let res = spectral_radius(&k, 1, &cfg.spectral())?;
        transfer_res = transfer_res.max(transfer_to_down(&k, 1, &res)?.residual);
        let second = second_order_identity_check(&k, 1, &res)?;
        second_ratio = second_ratio.max(second / (res.value * res.value));

        chain_nonzeros += signed_boundary(&k, 1)?.compose(&signed_boundary(&k, 2)?)?.len();
    }
    let ok = qf_err <= 1e-10 && transfer_res <= 1e-7 && second_ratio <= 1e-6 && chain_nonzeros == 0;
    Ok((
        ok,
        format!(
            "form rel err {qf_err:.1e}, transfer residual {transfer_res:.1e}, second-order err/q^2 {second_ratio:.1e}, d1 d2 nonzeros {chain_nonzeros}"
        ),
        json!({
            "samples": OPERATOR_SAMPLES,
            "quadratic_form_rel_error": qf_err,
            "transfer_residual": transfer_res,
            "second_order_error_over_q2": second_ratio,
            "boundary_composition_nonzeros": chain_nonzeros,
        }),
    ))
}

/// Named complexes, seeded random complexes and a few non-pure ones.
pub fn corpus(seed: u64) -> Result<Vec<(String, SimplicialComplex)>> {
    let mut out = Vec::new();
    for r in 1..=4 {
        out.push((format!("delta_sphere({r})"), delta_sphere(r)?));
        out.push((format!("rhombic({r})"), rhombic(r)?));
    }
    for n in 3..=9 {
        for r in 1..n.min(5) {
            out.push((format!("simplex_skeleton({n},{r})"), simplex_skeleton(n, r)?));
        }
    }
    for n in 4..=30 {
        out.push((format!("tented({n},2)"), tented(n, 2)?));
        let mut ts = vec![1, 2, n - 3];
        ts.retain(|&t| t <= n - 3);
        ts.dedup();
        for t in ts {
            out.push((format!("tent_plus_common_edge({n},{t})"), tent_plus_common_edge(n, t)?));
        }
    }
    for i in 0..100u64 {
        let n = 3 + (i % 10) as usize;
        out.push((format!("random_pure2({n},{})", seed + i), random_pure2(n, None, seed.wrapping_add(i))?));
    }
    let face = |v: &[u32]| Face::new(v.iter().copied()).expect("distinct");
    let mixed = [
        (5, vec![face(&[0, 1, 2]), face(&[2, 3])]),
        (6, vec![face(&[0, 1, 2, 3]), face(&[3, 4]), face(&[1, 4])]),
        (7, vec![face(&[0, 1]), face(&[1, 2]), face(&[2, 0]), face(&[3, 4, 5])]),
    ];
    for (n, facets) in mixed {
        let name = format!("mixed({n},{})", facets.len());
        out.push((name, SimplicialComplex::from_facets(n, facets, false)?));
    }
    Ok(out)
}

fn euler_identity(cfg: &AcceptanceConfig) -> Outcome {
    let corpus = corpus(cfg.seed)?;
    let failures: Vec<String> = corpus
        .iter()
        .filter(|(_, k)| {
            let p = betti_profile(k);
            p.euler != p.euler_from_betti()
        })
        .map(|(name, _)| name.clone())
        .collect();
    let mut identity_failures = Vec::new();
    for n in 2..=30u64 {
        for r in 1..n {
            if telescoping_identity(n, r) != 1 {
                identity_failures.push(json!({ "n": n, "r": r }));
            }
        }
    }
    Ok((
        failures.is_empty() && identity_failures.is_empty(),
        format!(
            "{} complexes, {} euler failures; telescoping identity failures: {}",
            corpus.len(),
            failures.len(),
            identity_failures.len()
        ),
        json!({ "complexes": corpus.len(), "euler_failures": failures, "telescoping_failures": identity_failures }),
    ))
}

fn basic_holes() -> Outcome {
    let mut ok = true;
    let mut rows = Vec::new();
    for (name, k) in [("delta_sphere(2)", delta_sphere(2)?), ("rhombic(2)", rhombic(2)?)] {
        let basic = is_basic_hole(&k)?;
        let report = check_basic_hole_properties(&k)?;
        ok &= basic && report.all_pass();
        rows.push(json!({ "complex": name, "basic_hole": basic, "properties": report }));
    }
    Ok((ok, "both minimal spheres are basic holes with all three properties".into(), json!(rows)))
}

fn perron_profile_check(cfg: &AcceptanceConfig) -> Outcome {
    let p100 = perron_profile(&tent_plus_common_edge(100, 1)?, &cfg.spectral())?;
    let mu = p100.max_deviation(ProfileClass::MuFace);
    let apex = p100.max_deviation(ProfileClass::ApexEdge);
    let mut ok = mu <= 0.2 && apex <= 0.02;
    let mut trend = Vec::new();
    for t in [1, 2] {
        let d20 = perron_profile(&tent_plus_common_edge(20, t)?, &cfg.spectral())?.max_deviation_overall();
        let d200 = perron_profile(&tent_plus_common_edge(200, t)?, &cfg.spectral())?.max_deviation_overall();
        ok &= d200 < d20;
        trend.push(json!({ "t": t, "n20": d20, "n200": d200 }));
    }
    Ok((
        ok,
        format!("T_100^(2,1): M_u dev {mu:.2e}, apex-edge dev {apex:.2e}; deviation shrinks from n=20 to n=200"),
        json!({
            "n100_t1": {
                "mu_face": mu,
                "apex_edge": apex,
                "non_apex_edge": p100.max_deviation(ProfileClass::NonApexEdge),
            },
            "trend": trend,
        }),
    ))
}
