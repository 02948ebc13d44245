use serde_json::json;

use crate::algebra::LieElt;
use crate::coeff::{rat, RatFunc, Rational};
use crate::rep::CharacterParams;
use crate::subalg::{check_closure, classify_codim_one, GroebnerLimits};

use super::{q, BatteryConfig, CheckReport};

const TABLE: i64 = 12;

/// Structure constants against `(j - i)` and `delta_{i,-j} (i^3 - i)/12`.
pub fn check_bracket_table(cfg: &BatteryConfig) -> CheckReport {
    let mut checked = 0;
    for i in -TABLE..=TABLE {
        for j in -TABLE..=TABLE {
            checked += 1;
            let (lin, cen) = cfg.algebra.mode_bracket::<Rational>(i, j);
            let want_cen = if i == -j { rat(i * i * i - i, 12) } else { rat(0, 1) };
            let (rlin, rcen) = cfg.algebra.mode_bracket::<Rational>(j, i);
            if lin != rat(j - i, 1) || cen != want_cen || rlin != -lin.clone() || rcen != -cen.clone() {
                return CheckReport::new(
                    "bracket",
                    false,
                    json!({
                        "counterexample": {
                            "i": i, "j": j,
                            "expected": { "mode": q(&(j - i)), "central": q(&want_cen) },
                            "found": { "mode": q(&lin), "central": q(&cen) },
                        }
                    }),
                );
            }
        }
    }
    CheckReport::new("bracket", true, json!({ "modes": [-TABLE, TABLE], "pairs": checked }))
}

/// Jacobi identity on every triple of generators with modes in `[-6, 6]`.
pub fn check_jacobi(cfg: &BatteryConfig) -> CheckReport {
    let b = |x: &LieElt<Rational>, y: &LieElt<Rational>| cfg.algebra.bracket(x, y);
    let mut checked = 0;
    for i in -6..=6 {
        for j in -6..=6 {
            for k in -6..=6 {
                checked += 1;
                let (x, y, z) = (LieElt::l(i), LieElt::l(j), LieElt::l(k));
                let s = &(&b(&x, &b(&y, &z)) + &b(&y, &b(&z, &x))) + &b(&z, &b(&x, &y));
                if !s.is_zero() {
                    return CheckReport::new(
                        "jacobi",
                        false,
                        json!({ "counterexample": { "modes": [i, j, k], "sum": s.to_string() } }),
                    );
                }
            }
        }
    }
    CheckReport::new("jacobi", true, json!({ "modes": [-6, 6], "triples": checked }))
}

pub fn check_closure_battery(_cfg: &BatteryConfig) -> CheckReport {
    match check_closure(&RatFunc::param("z"), TABLE) {
        Ok(c) => CheckReport::new(
            "closure",
            c.passed(),
            json!({
                "kmax": c.kmax,
                "pairs": c.pairs_checked,
                "failures": c.failures.iter().map(|(i, j, d)| json!({"i": i, "j": j, "defect": q(d)})).collect::<Vec<_>>(),
            }),
        ),
        Err(e) => CheckReport::error("closure", e),
    }
}

pub(crate) fn battery_params(cfg: &BatteryConfig) -> CharacterParams<RatFunc> {
    let p = CharacterParams::symbolic();
    match &cfg.perturbation {
        Some((k, d)) => p.perturbed(*k, RatFunc::constant(d.clone())),
        None => p,
    }
}

pub fn check_character(cfg: &BatteryConfig) -> CheckReport {
    let c = battery_params(cfg).verify(TABLE);
    CheckReport::new(
        "character",
        c.passed(),
        json!({
            "kmax": c.kmax,
            "pairs": c.pairs_checked,
            "failures": c.failures.iter().map(|(i, j, r)| json!({"i": i, "j": j, "residual": q(r)})).collect::<Vec<_>>(),
        }),
    )
}

pub fn check_classification(_cfg: &BatteryConfig) -> CheckReport {
    match classify_codim_one(9, &GroebnerLimits::default()) {
        Ok(c) => CheckReport::new(
            "classify",
            c.passed(),
            json!({
                "kmax": c.kmax,
                "saturated_basis": c.saturated_basis.iter().map(q).collect::<Vec<_>>(),
                "unsaturated_basis": c.unsaturated_basis.iter().map(q).collect::<Vec<_>>(),
                "a3_minus_a2^2_reduces": c.a3_reduces,
                "a4_minus_a2^3_reduces": c.a4_reduces,
                "a3^6_minus_a3^5*a2^2_in_unsaturated": c.power_relation_reduces,
                "converse": c.converse,
            }),
        ),
        Err(e) => CheckReport::error("classify", e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Virasoro;

    #[test]
    fn flipped_central_sign_is_caught() {
        let cfg = BatteryConfig {
            algebra: Virasoro::with_central_sign(-1),
            ..Default::default()
        };
        let r = check_bracket_table(&cfg);
        assert!(!r.passed());
        assert!(r.details["counterexample"].is_object());
        assert!(check_jacobi(&cfg).passed());
    }

    #[test]
    fn perturbed_character_is_caught() {
        let cfg = BatteryConfig {
            perturbation: Some((5, rat(1, 1))),
            ..Default::default()
        };
        assert!(!check_character(&cfg).passed());
        assert!(check_character(&BatteryConfig::default()).passed());
        let _ = RatFunc::one();
    }
}
