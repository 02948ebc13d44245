use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::coeff::{CoeffError, Field, ParamAssignment, Poly, RatFunc, Rational};
use crate::order::MultiIndex;
use crate::rep::{
    check_reducible_restriction, eigen_matrix, kernel, reaches_generator, solve_affine, solve_system, BasisKey,
    Bounds, CharacterParams, InducedModule, ModElt, ReachBudget, RepError, Space,
};

use super::algebraic::battery_params;
use super::random::{degenerate_params, sample_params};
use super::{q, BatteryConfig, CheckReport};

fn n<F: Field>(k: i64) -> F {
    F::from_i64(k)
}

fn w_elt<F: Field>(terms: Vec<((u32, u32), F)>) -> ModElt<F> {
    let mut x = ModElt::zero(Space::W);
    for ((j, k), c) in terms {
        x.add_term(BasisKey::w(j, k), c);
    }
    x
}

fn inv<F: Field>(x: F) -> Result<F, RepError> {
    x.checked_inv().map_err(|_| RepError::Coeff(CoeffError::VanishingDenominator))
}

/// `y_2 = (z l_0 v - l_1 v) / (m3 - 2 z m2)`, solving `(a_2 - m2) y = v`.
pub fn y2<F: Field>(p: &CharacterParams<F>) -> Result<ModElt<F>, RepError> {
    let d = inv(p.m3.clone() - &(n::<F>(2) * &p.z * &p.m2))?;
    Ok(w_elt(vec![((1, 0), p.z.clone()), ((0, 1), -F::one())]).scale(&d))
}

/// `y_3 = z (z l_0 v - l_1 v) / (2 m4 - 3 z m3)`, solving `(a_3 - m3) y = z v`.
pub fn y3<F: Field>(p: &CharacterParams<F>) -> Result<ModElt<F>, RepError> {
    let d = inv(n::<F>(2) * &p.m4 - &(n::<F>(3) * &p.z * &p.m3))?;
    Ok(w_elt(vec![((1, 0), p.z.clone()), ((0, 1), -F::one())]).scale(&(d * &p.z)))
}

/// The two explicit quadratic elements of `W_m` solving the equations
/// with right-hand sides [`stated_p1_contribution`] at `i_1 = t`.
pub fn lem97_elements<F: Field>(p: &CharacterParams<F>, t: &F) -> Result<(ModElt<F>, ModElt<F>), RepError> {
    let (z, m2, m3, m4) = (&p.z, &p.m2, &p.m3, &p.m4);
    let zp = |e: u32| z.pow(e);
    let d1 = n::<F>(2) * &zp(2) * m2 - &(z.clone() * m3);
    let d1i = inv(d1)?;
    let l0_1 = -((n::<F>(2) * &zp(5) * &(F::one() + t) * m2) - &(zp(4) * &(n::<F>(4) + t) * m3)
        + &(n::<F>(2) * &zp(2) * m2 * m3)
        + &(n::<F>(2) * &zp(3) * m4)
        - &(z.clone() * m3 * m3))
        * &d1i;
    let l1_1 = (n::<F>(2) * &zp(4) * t * m2 + &(n::<F>(4) * &zp(2) * m2 * m2)
        - &(zp(3) * &(n::<F>(3) + t) * m3)
        - &(n::<F>(2) * z * m2 * m3)
        + &(n::<F>(2) * &zp(2) * m4))
        * &d1i;
    let x1 = w_elt(vec![
        ((2, 0), -zp(3)),
        ((1, 0), l0_1),
        ((1, 1), n::<F>(2) * &zp(2)),
        ((0, 1), l1_1),
        ((0, 2), -z.clone()),
    ])
    .scale(&(t.clone() * &d1i));

    let d2i = inv(n::<F>(3) * z * m3 - &(n::<F>(2) * m4))?;
    let zi = inv(z.clone())?;
    let l0_2 = n::<F>(4) * z * m2 - &(n::<F>(2) * m4 * &zi) - &(t.clone() * &zp(3));
    let l1_2 = t.clone() * &zp(2) - &zp(2) - &(n::<F>(4) * m2) + &(n::<F>(3) * m3 * &zi);
    let x2 = w_elt(vec![
        ((2, 0), -zp(3)),
        ((1, 0), l0_2),
        ((1, 1), n::<F>(2) * &zp(2)),
        ((0, 1), l1_2),
        ((0, 2), -z.clone()),
    ])
    .scale(&(t.clone() * &d2i));
    Ok((x1, x2))
}

/// `i_1 (-3 l_1 + 2 z l_0 + s z (i_1 - 1)) v` for `k = 2` and
/// `i_1 (-4 m2 - 4 z l_1 + 2 z^2 l_0 + s z^2 (i_1 - 1)) v` for `k = 3`.
fn p1_form<F: Field>(p: &CharacterParams<F>, k: i64, i1: &F, sign: i64) -> ModElt<F> {
    let z = &p.z;
    let shift = i1.clone() - &F::one();
    let x = match k {
        2 => w_elt(vec![
            ((0, 1), n(-3)),
            ((1, 0), n::<F>(2) * z),
            ((0, 0), n::<F>(sign) * z * &shift),
        ]),
        3 => w_elt(vec![
            ((0, 1), n::<F>(-4) * z),
            ((1, 0), n::<F>(2) * z * z),
            ((0, 0), n::<F>(-4) * &p.m2 + &(n::<F>(sign) * z * z * &shift)),
        ]),
        _ => panic!("only k = 2, 3"),
    };
    x.scale(i1)
}

/// The `l^{i - eps_1}` component of `(a_k - m_k) l^i v` as printed in the
/// descent argument (also the right-hand sides of the quadratic lemma).
pub fn stated_p1_contribution<F: Field>(p: &CharacterParams<F>, k: i64, i1: &F) -> ModElt<F> {
    p1_form(p, k, i1, 1)
}

/// The `l^{i - eps_1}` component of `(a_k - m_k) l^i v` for this bracket:
/// the `(i_1 - 1)` term enters with the opposite sign.
pub fn p1_contribution<F: Field>(p: &CharacterParams<F>, k: i64, i1: &F) -> ModElt<F> {
    p1_form(p, k, i1, -1)
}

fn elt_json<F: Field>(x: &ModElt<F>) -> Value {
    q(x)
}

pub fn check_lem95(cfg: &BatteryConfig) -> CheckReport {
    let run = || -> Result<(bool, Value), RepError> {
        let sp = battery_params(cfg);
        let m = InducedModule::with_algebra(Space::W, sp.clone(), cfg.algebra);
        let v = m.generator();
        let (s2, s3) = (y2(&sp)?, y3(&sp)?);
        let r2 = m.act(&m.hat_shifted(2), &s2)?;
        let r3 = m.act(&m.hat_shifted(3), &s3)?;
        let y2_ok = r2 == v;
        let y3_ok = r3 == v.scale(&sp.z);
        // l_0 coefficients of y_2, y_3; the solution sets coincide iff they agree
        let gap = s2.coeff(&BasisKey::w(1, 0)) - &s3.coeff(&BasisKey::w(1, 0));
        let locus = condition4();
        let gap_on_locus = gap.numer().exact_div(&locus).is_some_and(|q| !q.is_zero());

        let bounds = Bounds::new(0, 6, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x95);
        let mut rejected = 0;
        let mut samples = Vec::new();
        let mut sampled_ok = true;
        for _ in 0..20 {
            let (p, r) = sample_params(&mut rng);
            rejected += r;
            let mut p = p;
            if let Some((k, d)) = &cfg.perturbation {
                p = p.perturbed(*k, d.clone());
            }
            let m = InducedModule::with_algebra(Space::W, p.clone(), cfg.algebra);
            let v = m.generator();
            let k2 = kernel(&m, &m.hat_shifted(2), &bounds)?;
            let k3 = kernel(&m, &m.hat_shifted(3), &bounds)?;
            let a2 = solve_affine(&m, &m.hat_shifted(2), &v, &bounds)?;
            let zv = v.scale(&p.z);
            let a3 = solve_affine(&m, &m.hat_shifted(3), &zv, &bounds)?;
            let both = solve_system(&m, &[(m.hat_shifted(2), v.clone()), (m.hat_shifted(3), zv)], &bounds)?;
            let matches_closed = |a: &Option<crate::rep::AffineSolution<Rational>>, y: &ModElt<Rational>| {
                a.as_ref().is_some_and(|s| {
                    let d = &s.particular - y;
                    d.terms().all(|(k, _)| *k == BasisKey::generator()) && s.kernel.len() == 1
                })
            };
            let ok = k2.len() == 1
                && k3.len() == 1
                && k2[0].len() == 1
                && k3[0].len() == 1
                && matches_closed(&a2, &y2(&p)?)
                && matches_closed(&a3, &y3(&p)?)
                && both.is_none();
            sampled_ok &= ok;
            samples.push(json!({
                "params": q(&p.to_assignment()),
                "kernel_dims": [k2.len(), k3.len()],
                "system_solvable": both.is_some(),
                "ok": ok,
            }));
        }
        let passed = y2_ok && y3_ok && gap_on_locus && sampled_ok;
        Ok((
            passed,
            json!({
                "y2": elt_json(&s2),
                "y3": elt_json(&s3),
                "y2_identity": y2_ok,
                "y3_identity": y3_ok,
                "l0_coefficient_gap": q(&gap),
                "gap_vanishes_only_on": "z^2*m2 + m4 - 2*z*m3",
                "gap_factor_ok": gap_on_locus,
                "truncation": { "J": 6, "N": 6 },
                "rejected_samples": rejected,
                "samples": samples,
            }),
        ))
    };
    match run() {
        Ok((passed, details)) => CheckReport::new("lem95", passed, details),
        Err(e) => CheckReport::error("lem95", e),
    }
}

/// `z^2 m2 + m4 - 2 z m3` in the parameter ring.
fn condition4() -> Poly {
    let p = CharacterParams::symbolic();
    let c = &(&(&p.z * &p.z) * &p.m2 + &p.m4) - &(&RatFunc::from_i64(2) * &(&p.z * &p.m3));
    c.numer().clone()
}

pub fn check_lem97(cfg: &BatteryConfig) -> CheckReport {
    let run = || -> Result<(bool, Value), RepError> {
        let p = battery_params(cfg);
        let t = RatFunc::param("t");
        let m = InducedModule::with_algebra(Space::W, p.clone(), cfg.algebra);
        let (x1, x2) = lem97_elements(&p, &t)?;
        let r1 = m.act(&m.hat_shifted(2), &x1)?;
        let r2 = m.act(&m.hat_shifted(3), &x2)?;
        let first = r1 == stated_p1_contribution(&p, 2, &t);
        let second = r2 == stated_p1_contribution(&p, 3, &t);
        let z3t = -(p.z.pow(3) * &t);
        let c1 = x1.coeff(&BasisKey::w(2, 0));
        let c2 = x2.coeff(&BasisKey::w(2, 0));
        let stated1 = z3t.checked_div(&(RatFunc::from_i64(2) * &p.z * &p.z * &p.m2 - &(p.z.clone() * &p.m3)))?;
        let stated2 = z3t.checked_div(&(RatFunc::from_i64(3) * &p.z * &p.m3 - &(RatFunc::from_i64(2) * &p.m4)))?;
        let coeffs_as_stated = c1 == stated1 && c2 == stated2;
        let gap = c1.clone() - &c2;
        let locus = condition4();
        let quotient = gap.numer().exact_div(&locus);
        let locus_ok = !gap.is_zero() && quotient.as_ref().is_some_and(|q| !q.is_zero());
        // away from v, the two solutions differ
        let mut diff = &x1 - &x2;
        diff.add_term(BasisKey::generator(), -diff.coeff(&BasisKey::generator()));
        let distinct = !diff.is_zero();
        Ok((
            first && second && coeffs_as_stated && locus_ok && distinct,
            json!({
                "first_element": elt_json(&x1),
                "second_element": elt_json(&x2),
                "first_solves": first,
                "second_solves": second,
                "l0^2_coefficients": [q(&c1), q(&c2)],
                "coefficients_as_stated": coeffs_as_stated,
                "coefficient_gap": q(&gap),
                "gap_numerator_over_locus": quotient.map(|q| q.to_string()),
                "locus": q(&locus),
                "differ_modulo_v": distinct,
            }),
        ))
    };
    match run() {
        Ok((passed, details)) => CheckReport::new("lem97", passed, details),
        Err(e) => CheckReport::error("lem97", e),
    }
}

pub fn check_eigen(cfg: &BatteryConfig) -> CheckReport {
    let p = battery_params(cfg);
    let mut failures = Vec::new();
    let mut distinct = true;
    for k in 2..=6i64 {
        let t = match eigen_matrix(&p, k, 10) {
            Ok(t) => t,
            Err(e) => return CheckReport::error("eigen", e),
        };
        let expected: Vec<RatFunc> = (0..=10)
            .map(|nn| p.value(k) + &(RatFunc::from_i64(nn * (1 - k)) * &p.z.pow(k as u32)))
            .collect();
        if !t.is_upper_triangular() {
            failures.push(json!({"k": k, "reason": "not upper triangular"}));
        }
        for (nn, (got, want)) in t.diagonal().iter().zip(&expected).enumerate() {
            if got != want {
                failures.push(json!({"k": k, "n": nn, "found": q(got), "expected": q(want)}));
            }
        }
        let d = t.diagonal();
        for a in 0..d.len() {
            for b in (a + 1)..d.len() {
                distinct &= d[a] != d[b];
            }
        }
    }
    CheckReport::new(
        "eigen",
        failures.is_empty() && distinct,
        json!({"k": [2, 6], "N": 10, "pairwise_distinct": distinct, "failures": failures}),
    )
}

pub fn check_restriction(cfg: &BatteryConfig) -> CheckReport {
    let r = check_reducible_restriction(12);
    let run = || -> Result<(bool, Value), RepError> {
        let budget = ReachBudget {
            bounds: Bounds::new(0, 0, 8),
            max_dim: 64,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x3);
        let mut degenerate = Vec::new();
        let mut generic = Vec::new();
        for _ in 0..5 {
            let p = degenerate_params(&mut rng);
            let m = InducedModule::with_algebra(Space::V, p.clone(), cfg.algebra);
            let shift = p.m3.clone() / (p.z.clone() * &p.z);
            let x = &m.basis(BasisKey::w(0, 1)) + &m.generator().scale(&shift);
            degenerate.push((p.to_assignment(), reaches_generator(&m, &x, &budget)?));
            let (p, _) = sample_params(&mut rng);
            let m = InducedModule::with_algebra(Space::V, p.clone(), cfg.algebra);
            generic.push((p.to_assignment(), reaches_generator(&m, &m.basis(BasisKey::w(0, 1)), &budget)?));
        }
        let ok = degenerate.iter().all(|(_, r)| !r) && generic.iter().all(|(_, r)| *r);
        let fmt = |v: &[(ParamAssignment, bool)]| {
            v.iter()
                .map(|(a, r)| json!({"params": q(a), "reaches_v": r}))
                .collect::<Vec<_>>()
        };
        Ok((ok, json!({"invariant_element": fmt(&degenerate), "l1_v": fmt(&generic)})))
    };
    match run() {
        Ok((ok, reach)) => CheckReport::new(
            "restriction",
            r.passed() && ok,
            json!({
                "kmax": r.kmax,
                "mismatches": r.mismatches.iter().map(|(k, d)| json!({"k": k, "difference": q(d)})).collect::<Vec<_>>(),
                "not_a_character": r.not_a_character,
                "reachability": reach,
            }),
        ),
        Err(e) => CheckReport::error("restriction", e),
    }
}

/// Outcome of comparing the components of `(a_k - m_k) l^i v` with the
/// closed forms.
pub struct ContributionTable {
    pub cases: usize,
    /// Cases where the computed component differs from the closed form
    /// valid for this bracket.
    pub failures: Vec<Value>,
    /// Cases where it differs from the printed form.
    pub stated_mismatches: Vec<Value>,
}

/// Compares `(a_k - m_k) l^i v` with the contribution formulas for every
/// nonzero `i` of weight at most `max_weight` and `k` in `{2, 3}`.
pub fn contribution_table(cfg: &BatteryConfig, max_weight: u64) -> Result<ContributionTable, RepError> {
    let p = battery_params(cfg);
    let m = InducedModule::with_algebra(Space::Ind, p.clone(), cfg.algebra);
    let mut out = ContributionTable {
        cases: 0,
        failures: Vec::new(),
        stated_mismatches: Vec::new(),
    };
    for i in MultiIndex::up_to_weight(max_weight) {
        let Some(pmin) = i.min_support() else { continue };
        for k in [2i64, 3] {
            out.cases += 1;
            let y = m.act(&m.hat_shifted(k), &m.basis(BasisKey::new(i.clone(), 0, 0)))?;
            let (j, actual, stated) = if pmin > 1 {
                let j = i.minus_eps(pmin).expect("in support").plus_eps(pmin - 1);
                let c = RatFunc::from_i64((i.get(pmin) as i64) * (pmin as i64 + 1)) * &p.z.pow((k - 1) as u32);
                let v = w_elt(vec![((0, 0), RatFunc::one())]);
                (j, v.scale(&c), v.scale(&-c))
            } else {
                let i1 = RatFunc::from_i64(i.get(1) as i64);
                (
                    i.minus_eps(1).expect("in support"),
                    p1_contribution(&p, k, &i1),
                    stated_p1_contribution(&p, k, &i1),
                )
            };
            let found = y.component(&j);
            let case = |expected: &ModElt<RatFunc>| {
                json!({"i": q(&i), "k": k, "j": q(&j), "found": q(&found), "expected": q(expected)})
            };
            if found != actual {
                out.failures.push(case(&actual));
            }
            if found != stated {
                out.stated_mismatches.push(case(&stated));
            }
        }
    }
    Ok(out)
}

/// The contribution identities, plus the obstruction they feed: at sampled
/// points the simultaneous system with the computed right-hand sides has
/// no solution within `J = N = 6`.
pub fn check_contribution(cfg: &BatteryConfig) -> CheckReport {
    let run = || -> Result<(bool, Value), RepError> {
        let table = contribution_table(cfg, 6)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xC0);
        let bounds = Bounds::new(0, 6, 6);
        let mut solvable = Vec::new();
        for _ in 0..3 {
            let (p, _) = sample_params(&mut rng);
            let m = InducedModule::with_algebra(Space::W, p.clone(), cfg.algebra);
            for t in 1..=4 {
                let i1 = Rational::from_i64(t);
                let eqs = [
                    (m.hat_shifted(2), -&p1_contribution(&p, 2, &i1)),
                    (m.hat_shifted(3), -&p1_contribution(&p, 3, &i1)),
                ];
                if solve_system(&m, &eqs, &bounds)?.is_some() {
                    solvable.push(json!({"params": q(&p.to_assignment()), "t": t}));
                }
            }
        }
        let passed = table.failures.is_empty() && solvable.is_empty();
        Ok((
            passed,
            json!({
                "max_weight": 6,
                "cases": table.cases,
                "failures": table.failures,
                "printed_form_mismatches": table.stated_mismatches.len(),
                "first_printed_form_mismatch": table.stated_mismatches.first(),
                "p1_system_solvable": solvable,
            }),
        ))
    };
    match run() {
        Ok((passed, details)) => CheckReport::new("contribution", passed, details),
        Err(e) => CheckReport::error("contribution", e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn y2_y3_solve_their_equations() {
        let r = check_lem95(&BatteryConfig::default());
        assert!(r.passed(), "{}", r.details);
    }

    #[test]
    fn lem97_elements_verify() {
        let r = check_lem97(&BatteryConfig::default());
        assert!(r.passed(), "{}", r.details);
    }

    #[test]
    fn vanishing_denominator_is_an_error() {
        let p = CharacterParams::new(
            Rational::from_i64(1),
            Rational::from_i64(1),
            Rational::from_i64(2),
            Rational::from_i64(4),
            Rational::from_i64(0),
        )
        .unwrap();
        assert!(y2(&p).is_err());
        assert!(y3(&p).is_ok());
        let q = CharacterParams::new(
            Rational::from_i64(1),
            Rational::from_i64(2),
            Rational::from_i64(2),
            Rational::from_i64(3),
            Rational::from_i64(0),
        )
        .unwrap();
        assert!(y2(&q).is_ok());
        assert!(y3(&q).is_err());
    }
}
