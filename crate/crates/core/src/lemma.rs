//! Exhaustive check of the equivalence between
//!
//! 1. `−n` and `1−n` are critical for `L(s, χ × σ)`,
//! 2. `1 − |μ_n| ≤ n + d ≤ |μ_n| − 1`,
//! 3. exactly one `w ∈ W^P` of length `dim(N_P)/2` makes `w⁻¹ · (d × μ)`
//!    dominant for `D_{n+1}`,
//!
//! over sweeps of `(n, μ, d)`. Condition 3 is computed from root data and
//! Kostant representatives only; conditions 1 and 2 never touch the Weyl
//! group.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::critical::{is_critical_twisted, ratio_argument_map, SoWeight, TwistData};
use crate::error::{Error, Result};
use crate::parabolic::Parabolic;
use crate::rootdata::{RootSystem, Weight};
use crate::weyl::WeylElement;

/// Margin added on both sides of the condition-(2) window by [`DWindow::Auto`].
pub const AUTO_WINDOW_MARGIN: i64 = 3;

/// Disagreements kept verbatim in an [`ExplorationReport`].
const EXPLORATION_SAMPLE: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LemmaInstance {
    #[serde(flatten)]
    weight: SoWeight,
    d: i64,
}

impl LemmaInstance {
    pub fn new(mu: Weight, d: i64) -> Result<Self> {
        Ok(LemmaInstance {
            weight: SoWeight::new(mu)?,
            d,
        })
    }

    /// Odd `n` allowed; the lemma makes no claim there.
    pub fn exploratory(mu: Weight, d: i64) -> Result<Self> {
        Ok(LemmaInstance {
            weight: SoWeight::any_parity(mu)?,
            d,
        })
    }

    pub fn from_weight(weight: SoWeight, d: i64) -> Self {
        LemmaInstance { weight, d }
    }

    pub fn n(&self) -> usize {
        self.weight.n()
    }

    pub fn mu(&self) -> &Weight {
        self.weight.mu()
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// The `D_{n+1}` weight `(d, μ_1, …, μ_n)`.
    pub fn induced_weight(&self) -> Weight {
        Weight::prepend(self.d, self.mu())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub instance: LemmaInstance,
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
    pub witnesses: Vec<WeylElement>,
    /// `cond1 = cond2 = cond3`.
    pub equivalent: bool,
    /// Set when the three conditions disagree or more than one witness turns up.
    pub violation: bool,
}

impl LemmaReport {
    fn new(instance: LemmaInstance, cond1: bool, cond2: bool, witnesses: Vec<WeylElement>) -> Self {
        let cond3 = witnesses.len() == 1;
        let equivalent = cond1 == cond2 && cond2 == cond3;
        let violation = !equivalent || witnesses.len() > 1;
        LemmaReport {
            instance,
            cond1,
            cond2,
            cond3,
            witnesses,
            equivalent,
            violation,
        }
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} mu={} d={}: (1)={} (2)={} (3)={} witnesses=[",
            self.instance.n(),
            self.instance.mu(),
            self.instance.d(),
            self.cond1,
            self.cond2,
            self.cond3
        )?;
        for (i, w) in self.witnesses.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "]")?;
        if self.violation {
            write!(f, " VIOLATION")?;
        }
        Ok(())
    }
}

pub fn check_condition_1(inst: &LemmaInstance) -> bool {
    let n = inst.n() as i64;
    let twist = TwistData::new(inst.d());
    is_critical_twisted(-n, &twist, &inst.weight)
        && is_critical_twisted(1 - n, &twist, &inst.weight)
}

#[allow(clippy::int_plus_one)]
pub fn check_condition_2(inst: &LemmaInstance) -> bool {
    let n = inst.n() as i64;
    let m = inst.mu()[inst.n() - 1].abs();
    1 - m <= n + inst.d() && n + inst.d() <= m - 1
}

/// Returns whether exactly one witness exists, together with all witnesses.
pub fn check_condition_3(inst: &LemmaInstance) -> Result<(bool, Vec<WeylElement>)> {
    let witnesses = Condition3Checker::new(inst.n())?.witnesses(inst)?;
    Ok((witnesses.len() == 1, witnesses))
}

pub fn check_instance(inst: &LemmaInstance) -> Result<LemmaReport> {
    Condition3Checker::new(inst.n())?.report(inst.clone())
}

/// Ambient `D_{n+1}` data and the inverses of the length-`n` Kostant
/// representatives, prepared once per `n`.
pub struct Condition3Checker {
    n: usize,
    ambient: RootSystem,
    candidates: Vec<(WeylElement, WeylElement)>,
}

impl Condition3Checker {
    pub fn new(n: usize) -> Result<Self> {
        let parabolic = Parabolic::first_maximal(n)?;
        let half = parabolic.nilradical_dimension() / 2;
        let candidates = parabolic
            .kostant_reps_direct()?
            .of_length(half)
            .map(|w| (w.clone(), w.inverse()))
            .collect();
        Ok(Condition3Checker {
            n,
            ambient: parabolic.ambient().clone(),
            candidates,
        })
    }

    pub fn witnesses(&self, inst: &LemmaInstance) -> Result<Vec<WeylElement>> {
        if inst.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: inst.n(),
            });
        }
        let lambda = inst.induced_weight();
        let mut out = Vec::new();
        for (w, w_inv) in &self.candidates {
            let moved = self.ambient.dot_action(w_inv, &lambda)?;
            if self.ambient.is_dominant(&moved)? {
                out.push(w.clone());
            }
        }
        Ok(out)
    }

    pub fn report(&self, inst: LemmaInstance) -> Result<LemmaReport> {
        let witnesses = self.witnesses(&inst)?;
        let cond1 = check_condition_1(&inst);
        let cond2 = check_condition_2(&inst);
        Ok(LemmaReport::new(inst, cond1, cond2, witnesses))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DWindow {
    /// `[−n−|μ_n|−3, −n+|μ_n|+3]` per instance.
    Auto,
    /// Fixed inclusive window; must strictly contain `[−n−|μ_n|, −n+|μ_n|]`
    /// for every swept weight.
    Fixed { lo: i64, hi: i64 },
}

impl DWindow {
    pub fn auto_bounds(n: usize, last_abs: i64) -> (i64, i64) {
        let n = n as i64;
        (
            -n - last_abs - AUTO_WINDOW_MARGIN,
            -n + last_abs + AUTO_WINDOW_MARGIN,
        )
    }

    fn bounds(&self, n: usize, last_abs: i64) -> Result<(i64, i64)> {
        match *self {
            DWindow::Auto => Ok(Self::auto_bounds(n, last_abs)),
            DWindow::Fixed { lo, hi } => {
                let centre = -(n as i64);
                if lo < centre - last_abs && hi > centre + last_abs {
                    Ok((lo, hi))
                } else {
                    Err(Error::InvalidDWindow {
                        lo,
                        hi,
                        reason: format!(
                            "must strictly contain [{}, {}] for n={n}, |mu_n|={last_abs}",
                            centre - last_abs,
                            centre + last_abs
                        ),
                    })
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub ns: Vec<usize>,
    /// Upper bound on `μ_1`; every dominant integral `μ` with
    /// `μ_1 ≤ mu_max` is swept.
    pub mu_max: i64,
    pub d_window: DWindow,
    /// Maximum number of instances before the sweep aborts with a checkpoint.
    pub budget: Option<usize>,
    /// Accept odd `n`; their outcomes go into the exploration section.
    pub explore_odd: bool,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

impl SweepConfig {
    pub fn new(ns: Vec<usize>, mu_max: i64) -> Self {
        SweepConfig {
            ns,
            mu_max,
            d_window: DWindow::Auto,
            budget: None,
            explore_odd: false,
            jobs: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub instances: usize,
    pub agreements: usize,
    pub counterexamples: Vec<LemmaReport>,
    pub ratio_coverage_ok: bool,
    pub uniqueness_ok: bool,
    pub runtime_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exploration: Option<ExplorationReport>,
}

impl SweepReport {
    /// No counterexample, no duplicate witness and full ratio coverage.
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty() && self.uniqueness_ok && self.ratio_coverage_ok
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} counterexamples / {} instances",
            self.counterexamples.len(),
            self.instances
        )?;
        writeln!(f, "agreements: {}", self.agreements)?;
        writeln!(f, "uniqueness: {}", ok(self.uniqueness_ok))?;
        writeln!(f, "ratio coverage: {}", ok(self.ratio_coverage_ok))?;
        writeln!(f, "runtime: {} ms", self.runtime_ms)?;
        for c in &self.counterexamples {
            writeln!(f, "  {c}")?;
        }
        if let Some(x) = &self.exploration {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

/// Outcome for odd `n`: reported, never asserted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExplorationReport {
    pub ns: Vec<usize>,
    pub instances: usize,
    pub agreements: usize,
    pub disagreements: usize,
    pub max_witnesses: usize,
    pub ratio_coverage_ok: bool,
    pub sample: Vec<LemmaReport>,
}

impl fmt::Display for ExplorationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "exploration (odd n {:?}, not asserted): {} disagreements / {} instances, max witnesses {}, ratio coverage {}",
            self.ns,
            self.disagreements,
            self.instances,
            self.max_witnesses,
            ok(self.ratio_coverage_ok)
        )?;
        for c in &self.sample {
            writeln!(f, "  {c}")?;
        }
        Ok(())
    }
}

/// All `μ = (μ_1 ≥ ⋯ ≥ μ_{n−1} ≥ |μ_n|)` with `μ_1 ≤ mu_max`, in
/// lexicographic order.
pub fn dominant_weights(n: usize, mu_max: i64) -> Vec<Weight> {
    fn extend(prefix: &mut Vec<i64>, n: usize, bound: i64, out: &mut Vec<Weight>) {
        if prefix.len() == n - 1 {
            for last in -bound..=bound {
                prefix.push(last);
                out.push(Weight::new(prefix.clone()));
                prefix.pop();
            }
            return;
        }
        for x in 0..=bound {
            prefix.push(x);
            extend(prefix, n, x, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 2 && mu_max >= 0 {
        extend(&mut Vec::with_capacity(n), n, mu_max, &mut out);
    }
    out
}

struct Group {
    weight: SoWeight,
    lo: i64,
    hi: i64,
}

impl Group {
    fn size(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }
}

#[derive(Default)]
struct GroupOutcome {
    instances: usize,
    agreements: usize,
    max_witnesses: usize,
    violations: Vec<LemmaReport>,
    coverage_ok: bool,
}

fn run_group(group: &Group, checker: &Condition3Checker) -> Result<GroupOutcome> {
    let mut out = GroupOutcome {
        coverage_ok: true,
        ..Default::default()
    };
    let mut firsts = Vec::new();
    for d in group.lo..=group.hi {
        let report = checker.report(LemmaInstance::from_weight(group.weight.clone(), d))?;
        out.instances += 1;
        out.max_witnesses = out.max_witnesses.max(report.witnesses.len());

        let pair = ratio_argument_map(&TwistData::new(d), &group.weight);
        if pair.is_some() != report.cond1 {
            out.coverage_ok = false;
        }
        if let Some((a, b)) = pair {
            if b != a + 1 {
                out.coverage_ok = false;
            }
            firsts.push(a);
        }

        if report.violation {
            out.violations.push(report);
        } else {
            out.agreements += 1;
        }
    }
    firsts.sort_unstable();
    let m = group.weight.last_abs();
    let expected: Vec<i64> = (1 - m..m).collect();
    if firsts != expected {
        out.coverage_ok = false;
    }
    Ok(out)
}

/// Runs conditions (1)–(3) on every instance of the sweep.
///
/// Fails with [`Error::BudgetExceeded`] if the sweep is larger than
/// `config.budget`; the error carries a report for the weights that fit.
pub fn verify_equivalence(config: &SweepConfig) -> Result<SweepReport> {
    let start = Instant::now();
    for &n in &config.ns {
        if n < 2 || (n % 2 != 0 && !config.explore_odd) {
            return Err(Error::OddN { n });
        }
    }

    let mut groups = Vec::new();
    for &n in &config.ns {
        for mu in dominant_weights(n, config.mu_max) {
            let weight = SoWeight::any_parity(mu)?;
            let (lo, hi) = config.d_window.bounds(n, weight.last_abs())?;
            groups.push(Group { weight, lo, hi });
        }
    }

    let required: usize = groups.iter().map(Group::size).sum();
    let mut over_budget = None;
    if let Some(budget) = config.budget {
        if required > budget {
            let mut taken = 0;
            let keep = groups
                .iter()
                .take_while(|g| {
                    taken += g.size();
                    taken <= budget
                })
                .count();
            groups.truncate(keep);
            over_budget = Some(budget);
        }
    }

    let checkers: BTreeMap<usize, Condition3Checker> = config
        .ns
        .iter()
        .map(|&n| Ok((n, Condition3Checker::new(n)?)))
        .collect::<Result<_>>()?;

    let evaluate = || -> Result<Vec<GroupOutcome>> {
        groups
            .par_iter()
            .map(|g| run_group(g, &checkers[&g.weight.n()]))
            .collect()
    };
    let outcomes = match config.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::ThreadPool(e.to_string()))?
            .install(evaluate)?,
        None => evaluate()?,
    };

    let mut report = SweepReport {
        ratio_coverage_ok: true,
        uniqueness_ok: true,
        ..Default::default()
    };
    let mut exploration: Option<ExplorationReport> = None;
    for (group, outcome) in groups.iter().zip(outcomes) {
        if group.weight.n() % 2 == 0 {
            report.instances += outcome.instances;
            report.agreements += outcome.agreements;
            report.uniqueness_ok &= outcome.max_witnesses <= 1;
            report.ratio_coverage_ok &= outcome.coverage_ok;
            report.counterexamples.extend(outcome.violations);
        } else {
            let x = exploration.get_or_insert_with(|| ExplorationReport {
                ns: config.ns.iter().copied().filter(|n| n % 2 != 0).collect(),
                ratio_coverage_ok: true,
                ..Default::default()
            });
            x.instances += outcome.instances;
            x.agreements += outcome.agreements;
            x.disagreements += outcome.violations.len();
            x.max_witnesses = x.max_witnesses.max(outcome.max_witnesses);
            x.ratio_coverage_ok &= outcome.coverage_ok;
            let room = EXPLORATION_SAMPLE.saturating_sub(x.sample.len());
            x.sample.extend(outcome.violations.into_iter().take(room));
        }
    }
    report.exploration = exploration;
    report.runtime_ms = start.elapsed().as_millis() as u64;

    match over_budget {
        Some(budget) => Err(Error::BudgetExceeded {
            budget,
            required,
            checkpoint: Box::new(report),
        }),
        None => Ok(report),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(mu: &[i64], d: i64) -> LemmaInstance {
        LemmaInstance::new(Weight::new(mu.to_vec()), d).unwrap()
    }

    #[test]
    fn condition_1_examples() {
        assert!(check_condition_1(&inst(&[3, 2], -2)));
        assert!(!check_condition_1(&inst(&[3, 2], 5)));
        for d in -10..=10 {
            assert!(!check_condition_1(&inst(&[3, 0], d)));
        }
    }

    #[test]
    fn condition_2_examples() {
        assert!(check_condition_2(&inst(&[3, 2], -2)));
        assert!(!check_condition_2(&inst(&[3, 2], 0)));
        for d in -10..=10 {
            assert!(!check_condition_2(&inst(&[4, 0], d)));
        }
    }

    #[test]
    fn condition_3_examples() {
        let (ok, w) = check_condition_3(&inst(&[3, 2], -2)).unwrap();
        assert!(ok);
        assert_eq!(w.len(), 1);
        let (ok, w) = check_condition_3(&inst(&[3, 2], 0)).unwrap();
        assert!(!ok);
        assert!(w.is_empty());
        for d in -10..=10 {
            let (ok, w) = check_condition_3(&inst(&[1, 0], d)).unwrap();
            assert!(!ok && w.is_empty());
        }
    }

    #[test]
    fn condition_3_witness_is_a_length_n_rep() {
        let p = Parabolic::first_maximal(2).unwrap();
        let rs = RootSystem::new(3).unwrap();
        let i = inst(&[3, 2], -3);
        let (_, w) = check_condition_3(&i).unwrap();
        assert_eq!(w.len(), 1);
        assert!(p.is_kostant_rep(&w[0]).unwrap());
        assert_eq!(w[0].length(), 2);
        let moved = rs.dot_action(&w[0].inverse(), &i.induced_weight()).unwrap();
        assert!(moved.satisfies_type_d_chain());
    }

    #[test]
    fn single_instance_all_true() {
        let r = check_instance(&inst(&[3, 2], -3)).unwrap();
        assert!(r.cond1 && r.cond2 && r.cond3 && r.equivalent && !r.violation);
        let w = SoWeight::new(Weight::new(vec![3, 2])).unwrap();
        assert_eq!(ratio_argument_map(&TwistData::new(-3), &w), Some((1, 2)));
    }

    #[test]
    fn n4_single_d_window() {
        let true_ds: Vec<i64> = (-12..=4)
            .filter(|&d| {
                let r = check_instance(&inst(&[2, 1, 1, 1], d)).unwrap();
                assert!(r.equivalent);
                r.cond3
            })
            .collect();
        assert_eq!(true_ds, vec![-4]);
    }

    #[test]
    fn dominant_weight_enumeration() {
        // n = 2: μ_1 ∈ [0,4], μ_2 ∈ [−μ_1, μ_1] → Σ (2μ_1+1) = 25
        let ws = dominant_weights(2, 4);
        assert_eq!(ws.len(), 25);
        assert!(ws.windows(2).all(|p| p[0] < p[1]));
        assert!(ws.iter().all(Weight::satisfies_type_d_chain));
        // brute-force count for n = 4
        let brute = itertools::Itertools::multi_cartesian_product((0..4).map(|_| -3..=3i64))
            .filter(|c| Weight::new(c.clone()).satisfies_type_d_chain())
            .count();
        assert_eq!(dominant_weights(4, 3).len(), brute);
    }

    #[test]
    fn small_sweep_is_clean() {
        let mut cfg = SweepConfig::new(vec![2], 4);
        cfg.d_window = DWindow::Fixed { lo: -10, hi: 6 };
        let report = verify_equivalence(&cfg).unwrap();
        assert_eq!(report.instances, 25 * 17);
        assert_eq!(report.agreements, report.instances);
        assert!(report.is_clean());
        assert!(report.exploration.is_none());
    }

    #[test]
    fn fixed_window_must_cover() {
        let mut cfg = SweepConfig::new(vec![2], 4);
        cfg.d_window = DWindow::Fixed { lo: -6, hi: 6 };
        assert!(matches!(
            verify_equivalence(&cfg),
            Err(Error::InvalidDWindow { .. })
        ));
    }

    #[test]
    fn odd_n_needs_opt_in() {
        let cfg = SweepConfig::new(vec![3], 2);
        assert!(matches!(
            verify_equivalence(&cfg),
            Err(Error::OddN { n: 3 })
        ));
        let mut cfg = SweepConfig::new(vec![2, 3], 2);
        cfg.explore_odd = true;
        let report = verify_equivalence(&cfg).unwrap();
        let x = report.exploration.unwrap();
        assert_eq!(x.ns, vec![3]);
        assert!(x.instances > 0);
        assert!(report.counterexamples.is_empty());
    }

    #[test]
    fn budget_returns_checkpoint() {
        let mut cfg = SweepConfig::new(vec![2], 4);
        cfg.budget = Some(50);
        match verify_equivalence(&cfg) {
            Err(Error::BudgetExceeded {
                budget,
                required,
                checkpoint,
            }) => {
                assert_eq!(budget, 50);
                assert!(required > 50);
                assert!(checkpoint.instances <= 50 && checkpoint.instances > 0);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn report_json_shape() {
        let report = verify_equivalence(&SweepConfig::new(vec![2], 1)).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        for key in [
            "instances",
            "agreements",
            "counterexamples",
            "ratio_coverage_ok",
            "uniqueness_ok",
            "runtime_ms",
        ] {
            assert!(json.get(key).is_some(), "{key}");
        }
        let lr = serde_json::to_value(check_instance(&inst(&[3, 2], -3)).unwrap()).unwrap();
        assert_eq!(
            lr["instance"],
            serde_json::json!({"n": 2, "mu": [3, 2], "d": -3})
        );
        assert_eq!(lr["witnesses"].as_array().unwrap().len(), 1);
    }
}
