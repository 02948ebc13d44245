use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::Virasoro;
use crate::coeff::Rational;
use crate::order::{max_term, support_and_max, MultiIndex};
use crate::rep::{
    reaches_generator, Bounds, CharacterParams, Conditions, InducedModule, ReachBudget, RepError, Space,
};

use super::random::{random_borel, random_element, random_multi_index, random_normalized, sample_params, trial_rng};
use super::{q, BatteryConfig, CheckReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProbeError {
    #[error("parameters violate {}; force the probe to run anyway", .0.violated().join(", "))]
    ConditionsViolated(Conditions),
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeConfig {
    pub trials: usize,
    pub seed: u64,
    /// Shape of the random elements.
    pub bounds: Bounds,
    pub max_terms: usize,
    /// Run the generation search on the first `reach_trials` trials.
    pub reach: Option<ReachBudget>,
    pub reach_trials: usize,
    pub force: bool,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            trials: 100,
            seed: 0,
            bounds: Bounds::new(6, 4, 4),
            max_terms: 8,
            reach: None,
            reach_trials: 0,
            force: false,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ProbeSummary {
    pub space: String,
    pub params: String,
    pub trials: usize,
    /// Trials whose maximal term is nonzero.
    pub descents_checked: usize,
    pub descent_failures: Vec<Value>,
    pub reach_attempted: usize,
    pub reach_succeeded: usize,
}

impl ProbeSummary {
    pub fn passed(&self) -> bool {
        self.descent_failures.is_empty()
    }
}

struct Trial {
    descended: Option<bool>,
    failure: Option<Value>,
    reached: Option<bool>,
}

/// `i - eps_p + eps_{p-1}` for `p > 1`, `i - eps_1` for `p = 1`.
fn descent_target(i: &MultiIndex) -> MultiIndex {
    let p = i.min_support().expect("nonzero");
    let j = i.minus_eps(p).expect("in support");
    if p > 1 {
        j.plus_eps(p - 1)
    } else {
        j
    }
}

fn run_trial(
    m: &InducedModule<Rational>,
    cfg: &ProbeConfig,
    trial: usize,
) -> Result<Trial, RepError> {
    let mut rng = trial_rng(cfg.seed, trial as u64);
    let x = match m.space() {
        Space::Ind => random_normalized(&mut rng, &cfg.bounds, cfg.max_terms),
        s => random_element(&mut rng, s, &cfg.bounds, cfg.max_terms),
    };
    let top = max_term(&x).expect("nonzero");
    let mut out = Trial {
        descended: None,
        failure: None,
        reached: None,
    };
    if !top.is_zero() {
        let ys = [m.act(&m.hat_shifted(2), &x)?, m.act(&m.hat_shifted(3), &x)?];
        let j = descent_target(&top);
        let mut witness = None;
        let mut j_hit = false;
        for (y, k) in ys.iter().zip([2, 3]) {
            if let Ok((supp, t)) = support_and_max(y) {
                j_hit |= supp.contains(&j);
                if witness.is_none() && t.compare(&top) == Ordering::Less {
                    witness = Some(k);
                }
            }
        }
        let ok = witness.is_some() && j_hit;
        out.descended = Some(ok);
        if !ok {
            out.failure = Some(json!({
                "trial": trial,
                "x": q(&x),
                "top": q(&top),
                "j": q(&j),
                "y2": q(&ys[0]),
                "y3": q(&ys[1]),
            }));
        }
    }
    if let Some(budget) = &cfg.reach {
        if trial < cfg.reach_trials {
            out.reached = Some(reaches_generator(m, &x, budget)?);
        }
    }
    Ok(out)
}

/// Randomized check of the descent step behind simplicity: for each trial
/// element `x` with nonzero maximal term `t`, one of `(a_k - m_k) x`,
/// `k = 2, 3`, is nonzero with maximal term strictly below `t`, and the
/// predicted index below `t` occurs in its support.
pub fn probe_simplicity(
    space: Space,
    params: &CharacterParams<Rational>,
    algebra: Virasoro,
    cfg: &ProbeConfig,
) -> Result<ProbeSummary, ProbeError> {
    let cond = params.conditions();
    if !cond.all() && !cfg.force {
        return Err(ProbeError::ConditionsViolated(cond));
    }
    let results: Vec<Result<Trial, RepError>> = (0..cfg.trials)
        .into_par_iter()
        .map_init(
            || InducedModule::with_algebra(space, params.clone(), algebra),
            |m, trial| run_trial(m, cfg, trial),
        )
        .collect();
    let mut s = ProbeSummary {
        space: space.to_string(),
        params: params.to_assignment().to_string(),
        trials: cfg.trials,
        ..Default::default()
    };
    for r in results {
        let t = r?;
        if t.descended.is_some() {
            s.descents_checked += 1;
        }
        if let Some(f) = t.failure {
            s.descent_failures.push(f);
        }
        if let Some(reached) = t.reached {
            s.reach_attempted += 1;
            s.reach_succeeded += reached as usize;
        }
    }
    Ok(s)
}

/// Number of random parameter points the battery probe visits.
pub const PROBE_POINTS: usize = 5;

/// Valid parameter points drawn from `seed`, with the configured
/// perturbation applied.
fn sample_points(cfg: &BatteryConfig) -> Vec<CharacterParams<Rational>> {
    let mut rng = trial_rng(cfg.seed ^ 0x5eed, 0);
    (0..PROBE_POINTS)
        .map(|_| {
            let p = sample_params(&mut rng).0;
            match &cfg.perturbation {
                Some((k, d)) => p.perturbed(*k, d.clone()),
                None => p,
            }
        })
        .collect()
}

pub(crate) fn check_probe(cfg: &BatteryConfig) -> CheckReport {
    let points = sample_points(cfg);
    let ind = |i: usize| ProbeConfig {
        trials: cfg.trials,
        seed: cfg.seed.wrapping_add(i as u64),
        reach: Some(ReachBudget {
            bounds: Bounds::new(3, 3, 3),
            max_dim: 200,
        }),
        reach_trials: 2,
        ..Default::default()
    };
    let w = ProbeConfig {
        trials: 20,
        seed: cfg.seed,
        bounds: Bounds::new(0, 3, 3),
        max_terms: 6,
        reach: Some(ReachBudget {
            bounds: Bounds::new(0, 8, 8),
            max_dim: 200,
        }),
        reach_trials: 20,
        ..Default::default()
    };
    let run = || -> Result<(Vec<ProbeSummary>, ProbeSummary), ProbeError> {
        let ind = points
            .iter()
            .enumerate()
            .map(|(i, p)| probe_simplicity(Space::Ind, p, cfg.algebra, &ind(i)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((ind, probe_simplicity(Space::W, &points[0], cfg.algebra, &w)?))
    };
    match run() {
        Ok((a, b)) => {
            let first = a.iter().chain([&b]).find_map(|s| s.descent_failures.first().cloned());
            let mut details = json!({ "ind": a, "w": b });
            if let Some(c) = first {
                details["counterexample"] = c;
            }
            CheckReport::new("probe", a.iter().all(ProbeSummary::passed) && b.passed(), details)
        }
        Err(e) => CheckReport::error("probe", e),
    }
}

/// The recursive definition of the order, transcribed literally.
fn reference_compare(a: &MultiIndex, b: &MultiIndex) -> Ordering {
    if a.weight() != b.weight() {
        return a.weight().cmp(&b.weight());
    }
    if a.degree() != b.degree() {
        return a.degree().cmp(&b.degree());
    }
    match (a.min_support(), b.min_support()) {
        (None, None) => Ordering::Equal,
        (Some(p), Some(r)) if p != r => r.cmp(&p),
        (Some(p), Some(_)) => reference_compare(&a.minus_eps(p).unwrap(), &b.minus_eps(p).unwrap()),
        _ => unreachable!("equal degrees"),
    }
}

fn order_violation(a: &MultiIndex, b: &MultiIndex, c: &MultiIndex) -> Option<Value> {
    let ab = a.compare(b);
    let fail = |what: &str| Some(json!({"law": what, "a": q(a), "b": q(b), "c": q(c)}));
    if ab != reference_compare(a, b) {
        return fail("agrees with the recursive definition");
    }
    if ab != b.compare(a).reverse() {
        return fail("antisymmetry");
    }
    if (ab == Ordering::Equal) != (a == b) {
        return fail("trichotomy");
    }
    if ab == Ordering::Less && b.compare(c) == Ordering::Less && a.compare(c) != Ordering::Less {
        return fail("transitivity");
    }
    None
}

pub fn check_order(cfg: &BatteryConfig) -> CheckReport {
    let small = MultiIndex::up_to_weight(6);
    let mut triples = 0usize;
    for a in &small {
        for b in &small {
            for c in &small {
                triples += 1;
                if let Some(v) = order_violation(a, b, c) {
                    return CheckReport::new("order", false, json!({ "counterexample": v }));
                }
            }
        }
    }
    let zero = MultiIndex::zero();
    for i in MultiIndex::up_to_weight(8) {
        if !i.is_zero() && zero.compare(&i) != Ordering::Less {
            return CheckReport::new("order", false, json!({ "counterexample": {"law": "zero is the minimum", "a": q(&i)} }));
        }
    }
    let mut rng = trial_rng(cfg.seed, 0x0D);
    let large = MultiIndex::up_to_weight(12);
    for _ in 0..5000 {
        let (a, b, c) = if rng.gen_bool(0.5) {
            (
                random_multi_index(&mut rng, 12),
                random_multi_index(&mut rng, 12),
                random_multi_index(&mut rng, 12),
            )
        } else {
            let pick = |rng: &mut _| large.choose(rng).unwrap().clone();
            (pick(&mut rng), pick(&mut rng), pick(&mut rng))
        };
        if let Some(v) = order_violation(&a, &b, &c) {
            return CheckReport::new("order", false, json!({ "counterexample": v }));
        }
    }
    CheckReport::new(
        "order",
        true,
        json!({"exhaustive_weight": 6, "exhaustive_triples": triples, "minimum_weight": 8, "random_weight": 12, "random_triples": 5000}),
    )
}

/// `t(u x) <= t(x)` for random `u` in `U(b)` and random `x` in `Ind`.
pub fn check_descent(cfg: &BatteryConfig) -> CheckReport {
    let mut rng = trial_rng(cfg.seed, 0xDE);
    let (mut p, _) = sample_params(&mut rng);
    if let Some((k, d)) = &cfg.perturbation {
        p = p.perturbed(*k, d.clone());
    }
    let bounds = Bounds::new(6, 3, 3);
    let outcomes: Vec<Result<Option<Value>, RepError>> = (0..500usize)
        .into_par_iter()
        .map_init(
            || InducedModule::with_algebra(Space::Ind, p.clone(), cfg.algebra),
            |m, trial| {
                let mut rng = trial_rng(cfg.seed ^ 0xDE5C, trial as u64);
                let u = random_borel(&mut rng, 4, 3);
                let x = random_element(&mut rng, Space::Ind, &bounds, 6);
                let ux = m.act(&u, &x)?;
                if ux.is_zero() {
                    return Ok(None);
                }
                let (tu, tx) = (max_term(&ux).unwrap(), max_term(&x).unwrap());
                Ok((tu.compare(&tx) == Ordering::Greater)
                    .then(|| json!({"trial": trial, "u": q(&u), "x": q(&x), "t_ux": q(&tu), "t_x": q(&tx)})))
            },
        )
        .collect();
    let mut nonzero = 0;
    for o in outcomes {
        match o {
            Ok(Some(v)) => return CheckReport::new("descent", false, json!({ "counterexample": v })),
            Ok(None) => nonzero += 1,
            Err(e) => return CheckReport::error("descent", e),
        }
    }
    CheckReport::new(
        "descent",
        true,
        json!({"pairs": 500, "checked": nonzero, "params": q(&p.to_assignment())}),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    #[test]
    fn reference_order_examples() {
        let mi = |e: &[u32]| MultiIndex::new(e.to_vec());
        assert_eq!(reference_compare(&mi(&[1, 1, 1]), &mi(&[2, 0, 0, 1])), Ordering::Less);
        assert_eq!(mi(&[1, 1, 1]).compare(&mi(&[2, 0, 0, 1])), Ordering::Less);
    }

    #[test]
    fn probe_refuses_bad_parameters() {
        let p = CharacterParams::new(rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 1), rat(0, 1)).unwrap();
        let cfg = ProbeConfig {
            trials: 2,
            ..Default::default()
        };
        assert!(matches!(
            probe_simplicity(Space::Ind, &p, Virasoro::STANDARD, &cfg),
            Err(ProbeError::ConditionsViolated(_))
        ));
        let forced = ProbeConfig { force: true, ..cfg };
        assert!(probe_simplicity(Space::Ind, &p, Virasoro::STANDARD, &forced).is_ok());
    }

    #[test]
    fn epsilon_two_case() {
        let p = CharacterParams::new(rat(1, 1), rat(1, 1), rat(1, 1), rat(3, 1), rat(0, 1)).unwrap();
        let m = InducedModule::new(Space::Ind, p);
        let x = m.basis(crate::rep::BasisKey::new(MultiIndex::eps(2), 0, 0));
        let y2 = m.act(&m.hat_shifted(2), &x).unwrap();
        let (supp, _) = support_and_max(&y2).unwrap();
        assert!(supp.contains(&MultiIndex::eps(1)));
    }
}
