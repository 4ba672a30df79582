//! The acceptance battery: one exhaustive check per criterion.
//!
//! Every criterion returns a [`CriterionReport`] whose `passed` flag is the
//! conjunction of its exact checks and, where a runtime budget applies, of
//! finishing within it. Elapsed time is kept out of the serialized report so
//! repeated runs give identical JSON.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use bodies::{
    ambient_maps, check_composition, check_d_squared, check_factorizations, check_multiplicativity, compare_colimit,
    towers_by_ambient, Variant,
};
use mellin::{finite_part, pole_scan, verify_qm_identity, RadialProfile};
use msystem::{build_m_complex, lowest_degree, shuffle_factorization};
use posets::IntervalIndex;
use resolution::build_r_complex;
use serde::Serialize;
use serde_json::{json, Value};
use setcore::{enumerate_partitions, surjections, SetMap};
use symmetrize::{check_total_differential, OperatorOptions, Signs};

use crate::CliError;

/// Euler's constant, the oracle for `U₂` of the exponential profile at `N = 4`.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Outcome of one criterion.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    /// Criterion number, 1 to 10.
    pub id: u8,
    /// Short name.
    pub title: &'static str,
    /// Whether every check passed within the runtime budget.
    pub passed: bool,
    /// Runtime budget in seconds, if the criterion has one.
    pub budget_seconds: Option<u64>,
    /// Whether the run finished within the budget.
    pub within_budget: bool,
    /// Counts of what was examined.
    pub detail: Value,
    /// The first failure, if any.
    pub witness: Option<String>,
    /// Wall-clock time of the run.
    #[serde(skip)]
    pub elapsed: Duration,
}

struct Outcome {
    detail: Value,
    witness: Option<String>,
}

impl Outcome {
    fn new(detail: Value, witness: Option<String>) -> Self {
        Outcome { detail, witness }
    }
}

type Check = fn() -> Result<Outcome, CliError>;

/// Number, title, budget and check of every criterion.
const CRITERIA: [(u8, &str, Option<u64>, Check); 10] = [
    (1, "m-complex homology of [n] -> pt", Some(10), m_complex_homology),
    (2, "multiplicativity of the lowest rank", None, multiplicativity),
    (3, "shuffle factorization is a chain map", None, shuffle_chain_map),
    (4, "resolution shadow is acyclic", Some(60), resolution_acyclic),
    (5, "zebra and segments posets", None, zebra_posets),
    (6, "suitable x super-surjective factorization", None, factorization),
    (7, "bodies: d^2 = 0, associativity, Leibniz", None, bodies_composition),
    (8, "symm colimit formula and multiplicativity", None, symm_colimit),
    (9, "symmetrization Maurer-Cartan equation", Some(300), maurer_cartan),
    (10, "Mellin finite parts and poles", Some(30), mellin_checks),
];

/// Numbers of all criteria.
pub fn criterion_ids() -> Vec<u8> {
    CRITERIA.iter().map(|c| c.0).collect()
}

/// Runs one criterion. Errors inside a check count as a failure with the
/// error as witness.
pub fn run_criterion(id: u8) -> Result<CriterionReport, CliError> {
    let &(id, title, budget, check) = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .ok_or_else(|| CliError::Usage(format!("no criterion {id}; criteria are 1 to {}", CRITERIA.len())))?;
    let start = Instant::now();
    let outcome = check().unwrap_or_else(|e| Outcome::new(Value::Null, Some(format!("error: {e}"))));
    let elapsed = start.elapsed();
    let within_budget = budget.is_none_or(|b| elapsed < Duration::from_secs(b));
    Ok(CriterionReport {
        id,
        title,
        passed: outcome.witness.is_none() && within_budget,
        budget_seconds: budget,
        within_budget,
        detail: outcome.detail,
        witness: outcome.witness,
        elapsed,
    })
}

/// Runs the given criteria in order.
pub fn run_suite(ids: &[u8]) -> Result<Vec<CriterionReport>, CliError> {
    ids.iter().map(|&id| run_criterion(id)).collect()
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Every surjection from an `n`-set, `1 ≤ n ≤ max`.
fn all_surjections(max: usize) -> Vec<SetMap> {
    let mut out = Vec::new();
    for n in 1..=max {
        for k in 1..=n {
            for images in surjections(n, k) {
                out.push(SetMap::from_images(k, images).expect("surjection images lie in the target"));
            }
        }
    }
    out
}

fn lie_rank(p: &SetMap) -> usize {
    (0..p.target().size()).map(|t| factorial(p.fiber(t).len() - 1)).product()
}

fn m_complex_homology() -> Result<Outcome, CliError> {
    let mut ranks = BTreeMap::new();
    let mut witness = None;
    for n in 2..=5 {
        let p = SetMap::to_point(n);
        let betti = build_m_complex(&p)?.complex.betti()?.nonzero();
        let expected = BTreeMap::from([(-(n as i64 - 1), factorial(n - 1))]);
        if betti != expected && witness.is_none() {
            witness = Some(format!("[{n}] -> pt: betti {betti:?}, expected {expected:?}"));
        }
        ranks.insert(n.to_string(), betti.values().sum::<usize>());
    }
    Ok(Outcome::new(json!({ "ranks": ranks }), witness))
}

fn multiplicativity() -> Result<Outcome, CliError> {
    let maps = all_surjections(5);
    let mut witness = None;
    for p in &maps {
        let m = build_m_complex(p)?;
        let betti = m.complex.betti()?.nonzero();
        let expected = BTreeMap::from([(lowest_degree(p), lie_rank(p))]);
        if (betti != expected || !m.complex.check_d_squared().holds) && witness.is_none() {
            witness = Some(format!("{:?}: betti {betti:?}, expected {expected:?}", p.images()));
        }
    }
    Ok(Outcome::new(json!({ "surjections": maps.len() }), witness))
}

fn shuffle_chain_map() -> Result<Outcome, CliError> {
    let pieces: Vec<SetMap> = all_surjections(5).into_iter().filter(|p| !p.is_injective()).collect();
    let mut families: Vec<Vec<SetMap>> = pieces.iter().map(|p| vec![p.clone()]).collect();
    for a in &pieces {
        for b in &pieces {
            if a.source().size() + b.source().size() <= 5 {
                families.push(vec![a.clone(), b.clone()]);
            }
        }
    }
    let mut witness = None;
    for family in &families {
        let report = shuffle_factorization(family)?.check()?;
        if !report.holds && witness.is_none() {
            let images: Vec<&[usize]> = family.iter().map(|p| p.images()).collect();
            witness = Some(format!("family {images:?}: {:?}", report.witness));
        }
    }
    Ok(Outcome::new(json!({ "families": families.len() }), witness))
}

fn resolution_acyclic() -> Result<Outcome, CliError> {
    let mut pairs = 0;
    let mut witness = None;
    for n in 1..=5 {
        let partitions = enumerate_partitions(n)?;
        for f in &partitions {
            for e in partitions.iter().filter(|e| f.geq(e)) {
                let r = build_r_complex(f, e)?;
                let betti = r.complex.betti()?.nonzero();
                let expected = if f == e { BTreeMap::from([(0, 1)]) } else { BTreeMap::new() };
                if (betti != expected || !r.complex.check_d_squared().holds) && witness.is_none() {
                    witness = Some(format!("[{e}, {f}]: betti {betti:?}"));
                }
                pairs += 1;
            }
        }
    }
    Ok(Outcome::new(json!({ "intervals": pairs }), witness))
}

fn zebra_posets() -> Result<Outcome, CliError> {
    let mut intervals = 0;
    let mut elements = 0;
    let mut witness = None;
    for n in 1..=4 {
        let partitions = enumerate_partitions(n)?;
        for f in &partitions {
            for e in partitions.iter().filter(|e| f.geq(e)) {
                let report = IntervalIndex::new(f, e)?.verify()?;
                if !report.all_hold() && witness.is_none() {
                    witness = Some(format!("[{e}, {f}]: {report:?}"));
                }
                intervals += 1;
                elements += report.zebra_elements;
            }
        }
    }
    Ok(Outcome::new(json!({ "intervals": intervals, "zebra_elements": elements }), witness))
}

fn factorization() -> Result<Outcome, CliError> {
    let report = check_factorizations(5)?;
    let witness = report.witness.as_ref().map(|(i, p)| format!("i = {i:?}, p = {p:?}"));
    Ok(Outcome::new(json!({ "squares": report.squares, "candidates": report.candidates }), witness))
}

fn bodies_composition() -> Result<Outcome, CliError> {
    let squares = check_d_squared(3, 3, 4, Variant::Presymm)?;
    let composition = check_composition(3, 3, 4, Variant::Presymm)?;
    let witness = squares.witness.as_ref().or(composition.witness.as_ref()).map(|w| format!("{w:?}"));
    Ok(Outcome::new(
        json!({
            "towers": squares.towers,
            "hom_complexes": squares.instances,
            "composable_tuples": composition.elements,
        }),
        witness,
    ))
}

fn symm_colimit() -> Result<Outcome, CliError> {
    let mut pairs = 0;
    let mut witness = None;
    for group in towers_by_ambient(3, 3, 4)? {
        for x in &group {
            for y in &group {
                let c = compare_colimit(x, y)?;
                if !c.holds() && witness.is_none() {
                    witness = Some(format!("{x} -> {y}: {c:?}"));
                }
                pairs += 1;
            }
        }
    }
    let union = check_multiplicativity(&ambient_maps(3, 2), 6, 3)?;
    if witness.is_none() {
        witness = union.witness.clone();
    }
    Ok(Outcome::new(
        json!({
            "pairs": pairs,
            "union_groupoid_checks": union.groupoid_checks,
            "union_hom_checks": union.hom_checks,
        }),
        witness,
    ))
}

fn maurer_cartan() -> Result<Outcome, CliError> {
    let reports = check_total_differential(4, 2, OperatorOptions::default(), Signs::STANDARD)?;
    let witness = reports.iter().find(|r| !r.holds()).map(|r| format!("{:?}: {:?}", r.ambient, r.residues.first()));
    Ok(Outcome::new(
        json!({
            "maps": reports.len(),
            "objects": reports.iter().map(|r| r.objects).sum::<usize>(),
            "summands": reports.iter().map(|r| r.summands).sum::<usize>(),
        }),
        witness,
    ))
}

fn mellin_checks() -> Result<Outcome, CliError> {
    let mut witness = None;
    let mut worst: f64 = 0.0;
    let mut poles = 0;
    for h in [RadialProfile::bump(), RadialProfile::exponential()] {
        for n in [4u32, 6] {
            for m in 0..=3 {
                let report = verify_qm_identity(&h, m, n)?;
                worst = worst.max(report.residual);
                if (report.residual >= 1e-6 || report.finite_part.flagged) && witness.is_none() {
                    witness = Some(format!("{h} N={n} M={m}: residual {:e}", report.residual));
                }
            }
            let lo = -(n as f64) / 2.0 - 2.25;
            for pole in pole_scan(&h, n, lo, 0.0)? {
                poles += 1;
                if (!pole.admissible || pole.order > 1) && witness.is_none() {
                    witness = Some(format!("{h} N={n}: pole {pole:?}"));
                }
            }
        }
    }
    let u2 = finite_part(&RadialProfile::exponential(), 2, 4)?;
    if (u2.value + EULER_GAMMA).abs() >= 1e-6 && witness.is_none() {
        witness = Some(format!("U_2 of the exponential profile at N = 4 is {}, expected -gamma", u2.value));
    }
    Ok(Outcome::new(
        json!({ "worst_residual": format!("{worst:.3e}"), "u2_exponential_n4": format!("{:.9}", u2.value), "poles": poles }),
        witness,
    ))
}
