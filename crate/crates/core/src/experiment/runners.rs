use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use super::stats::{wilson, Z95};
use super::{
    Aggregate, CheckOutcome, ExperimentConfig, ExperimentKind, ExperimentResult, MeasureOutcome, NecessityTally,
    TrialRecord,
};
use crate::error::{Error, Result};
use crate::hypergraph::{verify_certificate, Hypergraph};
use crate::random::{
    coupon_cover_estimate, gnrp_sample, kout_sample, limit_probability, process_sample, split_seed, threshold_p,
};
use crate::solvers::{
    degree1_triple_obstruction, find_hamiltonian_berge, find_weak_hamiltonian, kout2_pipeline,
    one_out_weak_pipeline, SolveResult, SolveStatus,
};
use crate::sparsifier::{implication_check, sparsify, PropertyMode};
use crate::Variant;

/// Runs every trial of `config` on `workers` threads (the rayon default
/// when `None`) and aggregates the records.
pub fn run_experiment(config: &ExperimentConfig, workers: Option<usize>) -> Result<ExperimentResult> {
    config.validate()?;
    let start = Instant::now();
    let points = config.points();
    let jobs: Vec<(usize, Option<f64>, u64)> = points
        .iter()
        .enumerate()
        .flat_map(|(j, &point)| (0..config.trials).map(move |i| (j, point, i)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| Error::ConfigInvalid(format!("worker pool: {e}")))?;
    let done: Vec<(TrialRecord, NecessityTally)> = pool.install(|| {
        jobs.par_iter()
            .map(|&(j, point, i)| {
                let seed = split_seed(config.seed, j as u64 * config.trials + i);
                run_trial(config, point, i, seed)
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut necessity = NecessityTally::default();
    let mut trials = Vec::with_capacity(done.len());
    for (record, tally) in done {
        necessity.absorb(&tally);
        trials.push(record);
    }
    let aggregates = aggregate(&points, &trials);
    let mut extras = BTreeMap::new();
    if matches!(config.experiment, ExperimentKind::KoutWeak | ExperimentKind::CouponCover) {
        let estimate = coupon_cover_estimate(config.n, config.r, config.trials as usize, config.seed)?;
        extras.insert("couponCoverEstimate".to_string(), estimate);
    }
    let mut result = ExperimentResult {
        config: config.clone(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        trials,
        aggregates,
        necessity,
        extras,
        checks: Vec::new(),
        wall_time_ms: 0,
    };
    result.checks = checks(&result);
    result.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(result)
}

#[derive(Default)]
struct Trial {
    outcomes: Vec<MeasureOutcome>,
    tally: NecessityTally,
}

impl Trial {
    fn solved(&mut self, measure: &str, h: &Hypergraph, result: &SolveResult) {
        self.audit(h, result);
        self.outcomes.push(MeasureOutcome {
            measure: measure.to_string(),
            outcome: result.status,
            nodes: result.stats.nodes,
        });
    }

    fn event(&mut self, measure: &str, happened: bool) {
        self.outcomes.push(MeasureOutcome {
            measure: measure.to_string(),
            outcome: if happened {
                SolveStatus::Found
            } else {
                SolveStatus::ProvedAbsent
            },
            nodes: 0,
        });
    }

    /// Re-verifies a returned certificate and checks it against the degree
    /// conditions every Hamiltonian Berge cycle must meet.
    fn audit(&mut self, h: &Hypergraph, result: &SolveResult) {
        let Some(cert) = &result.certificate else {
            return;
        };
        if result.status != SolveStatus::Found {
            return;
        }
        let t = &mut self.tally;
        t.certificates_checked += 1;
        if !verify_certificate(h, cert).is_hamiltonian() {
            t.invalid_certificates += 1;
            return;
        }
        let min_degree = h.min_degree();
        if !cert.weak && min_degree < 2 {
            t.ordinary_below_two += 1;
        }
        if cert.weak {
            if min_degree < 1 {
                t.weak_below_one += 1;
            }
            if h.r() == 3 && matches!(degree1_triple_obstruction(h), Ok(Some(_))) {
                t.weak_with_triple += 1;
            }
        }
    }
}

fn solve(h: &Hypergraph, variant: Variant, config: &ExperimentConfig) -> Result<SolveResult> {
    match variant {
        Variant::Weak => find_weak_hamiltonian(h, &config.budget),
        Variant::Ordinary => find_hamiltonian_berge(h, &config.budget),
    }
}

fn run_trial(config: &ExperimentConfig, point: Option<f64>, trial: u64, seed: u64) -> Result<(TrialRecord, NecessityTally)> {
    let (n, r) = (config.n, config.r);
    let mut t = Trial::default();
    let mut record = TrialRecord {
        point,
        trial,
        seed,
        edges: 0,
        t1: None,
        t2: None,
        outcomes: Vec::new(),
    };
    match config.experiment {
        ExperimentKind::Stopping => {
            let trace = process_sample(n, r, seed, None)?;
            let t1 = trace.stopping_time(1)?;
            let t2 = trace.stopping_time(2)?;
            let h1 = trace.prefix(t1)?;
            let h2 = trace.prefix(t2)?;
            t.solved("weakT1", &h1, &find_weak_hamiltonian(&h1, &config.budget)?);
            t.solved("ordinaryT2", &h2, &find_hamiltonian_berge(&h2, &config.budget)?);
            if config.negative_control {
                let before = trace.prefix(t2 - 1)?;
                t.solved("ordinaryT2Minus1", &before, &find_hamiltonian_berge(&before, &config.budget)?);
            }
            record.edges = h2.m();
            record.t1 = Some(t1);
            record.t2 = Some(t2);
        }
        ExperimentKind::Threshold => {
            let variant = config.variant.expect("validated");
            let p = threshold_p(n, r, point.expect("threshold point"), variant)?;
            let h = gnrp_sample(n, r, p, seed)?;
            t.solved(variant_name(variant), &h, &solve(&h, variant, config)?);
            record.edges = h.m();
        }
        ExperimentKind::KoutBerge => {
            let sample = kout_sample(n, r, 2, config.replacement, seed)?;
            let h = sample.hypergraph();
            t.solved("hamiltonian", h, &kout2_pipeline(&sample, &config.budget, seed)?);
            t.event("distinctEdgesNk", sample.distinct_edges() == 2 * n);
            record.edges = h.m();
        }
        ExperimentKind::KoutWeak => {
            let sample = kout_sample(n, r, 1, config.replacement, seed)?;
            let h = sample.hypergraph();
            if r == 3 {
                t.event("tripleObstruction", degree1_triple_obstruction(h)?.is_some());
                t.solved("weak", h, &find_weak_hamiltonian(h, &config.budget)?);
            } else {
                t.solved("weak", h, &one_out_weak_pipeline(&sample, &config.budget)?);
            }
            t.event("distinctEdgesNk", sample.distinct_edges() == n);
            record.edges = h.m();
        }
        ExperimentKind::CouponCover => {
            t.event("covered", coupon_cover_estimate(n, r, 1, seed)? == 1.0);
        }
        ExperimentKind::ImplicationAudit => {
            let trace = process_sample(n, r, seed, None)?;
            let t2 = trace.stopping_time(2)?;
            let h = trace.prefix(t2)?;
            let sparse = sparsify(&h, config.epsilon, split_seed(seed, 1))?;
            let weak = config.variant == Some(Variant::Weak);
            let report = implication_check(&h, &sparse.gamma0, config.epsilon, PropertyMode::Exact, weak)?;
            t.event("hypotheses", report.hypotheses_hold);
            t.event("conclusion", report.conclusion_holds);
            t.event("critical", report.critical);
            record.edges = sparse.gamma0.m();
            record.t2 = Some(t2);
        }
    }
    record.outcomes = t.outcomes;
    Ok((record, t.tally))
}

fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Weak => "weak",
        Variant::Ordinary => "ordinary",
    }
}

fn aggregate(points: &[Option<f64>], trials: &[TrialRecord]) -> Vec<Aggregate> {
    let mut out = Vec::new();
    for &point in points {
        let here: Vec<&TrialRecord> = trials.iter().filter(|t| t.point == point).collect();
        let Some(first) = here.first() else { continue };
        for m in &first.outcomes {
            let count = |s: SolveStatus| here.iter().filter(|t| t.outcome(&m.measure) == Some(s)).count() as u64;
            let found = count(SolveStatus::Found);
            let absent = count(SolveStatus::ProvedAbsent);
            let inconclusive = count(SolveStatus::Inconclusive);
            let conclusive = found + absent;
            out.push(Aggregate {
                point,
                measure: m.measure.clone(),
                found,
                proved_absent: absent,
                inconclusive,
                frequency: if conclusive == 0 { 0.0 } else { found as f64 / conclusive as f64 },
                interval: wilson(found, conclusive, Z95),
                inconclusive_rate: inconclusive as f64 / here.len() as f64,
                limit: point.map(limit_probability),
            });
        }
    }
    out
}

fn checks(result: &ExperimentResult) -> Vec<CheckOutcome> {
    let c = &result.config;
    let a = c.acceptance;
    let mut out = vec![CheckOutcome {
        name: "degree necessity".into(),
        passed: result.necessity.violations() == 0,
        detail: format!(
            "{} violations over {} certificates",
            result.necessity.violations(),
            result.necessity.certificates_checked
        ),
    }];
    let at_least = |out: &mut Vec<CheckOutcome>, measure: &str, bound: f64| {
        if let Some(g) = result.aggregate(None, measure) {
            out.push(CheckOutcome {
                name: format!("{measure} frequency"),
                passed: g.frequency >= bound,
                detail: format!("{:.4} (need >= {bound})", g.frequency),
            });
        }
    };
    let settled = |out: &mut Vec<CheckOutcome>, point: Option<f64>, measure: &str| {
        if let Some(g) = result.aggregate(point, measure) {
            let at = point.map_or(String::new(), |p| format!(" at c = {p}"));
            out.push(CheckOutcome {
                name: format!("{measure} inconclusive rate{at}"),
                passed: g.inconclusive_rate <= a.max_inconclusive_rate,
                detail: format!("{:.4} (need <= {})", g.inconclusive_rate, a.max_inconclusive_rate),
            });
        }
    };
    match c.experiment {
        ExperimentKind::Stopping => {
            for m in ["weakT1", "ordinaryT2"] {
                at_least(&mut out, m, a.min_frequency);
                settled(&mut out, None, m);
            }
            if let Some(g) = result.aggregate(None, "ordinaryT2Minus1") {
                out.push(CheckOutcome {
                    name: "ordinaryT2Minus1 never Hamiltonian".into(),
                    passed: g.found == 0,
                    detail: format!("{} found", g.found),
                });
            }
        }
        ExperimentKind::Threshold => {
            let measure = variant_name(c.variant.expect("validated"));
            let mut curve: Vec<(f64, f64)> = c
                .c_grid
                .iter()
                .filter_map(|&x| result.aggregate(Some(x), measure).map(|g| (x, g.frequency)))
                .collect();
            curve.sort_by(|p, q| p.0.total_cmp(&q.0));
            let monotone = curve.windows(2).all(|w| w[0].1 <= w[1].1);
            out.push(CheckOutcome {
                name: "frequency nondecreasing in c".into(),
                passed: monotone,
                detail: format!("{curve:?}"),
            });
            if let (Some(lo), Some(hi)) = (curve.first(), curve.last()) {
                out.push(CheckOutcome {
                    name: "spread across the grid".into(),
                    passed: hi.1 - lo.1 >= a.min_spread,
                    detail: format!("{:.4} (need >= {})", hi.1 - lo.1, a.min_spread),
                });
            }
            for &x in &c.c_grid {
                settled(&mut out, Some(x), measure);
            }
        }
        ExperimentKind::KoutBerge => {
            at_least(&mut out, "hamiltonian", a.min_frequency);
            settled(&mut out, None, "hamiltonian");
            at_least(&mut out, "distinctEdgesNk", a.min_distinct_frequency);
        }
        ExperimentKind::KoutWeak => {
            if c.r == 3 {
                at_least(&mut out, "tripleObstruction", a.min_frequency);
            } else {
                at_least(&mut out, "weak", a.min_frequency);
                settled(&mut out, None, "weak");
            }
        }
        ExperimentKind::CouponCover => {}
        ExperimentKind::ImplicationAudit => {
            if let Some(g) = result.aggregate(None, "critical") {
                out.push(CheckOutcome {
                    name: "no critical implication failures".into(),
                    passed: g.found == 0,
                    detail: format!(
                        "{} critical, hypotheses held in {}",
                        g.found,
                        result.aggregate(None, "hypotheses").map_or(0, |h| h.found)
                    ),
                });
            }
        }
    }
    out
}
