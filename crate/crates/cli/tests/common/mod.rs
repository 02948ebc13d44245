#![allow(dead_code)]

use proptest::prelude::*;
use virasoro_core::algebra::{PbwWord, UeaElt};
use virasoro_core::coeff::{rat, RatFunc, PARAMETERS};
use virasoro_core::rep::{Bounds, ModElt, Space};
use vir_cli::{Context, Value};

fn monomial() -> impl Strategy<Value = RatFunc> {
    (-9i64..=9, 1i64..=9, proptest::collection::vec((0usize..PARAMETERS.len(), 1u32..=2), 0..=2)).prop_map(
        |(n, d, vars)| {
            let mut m = RatFunc::constant(rat(n, d));
            for (v, e) in vars {
                m = m * &RatFunc::param(PARAMETERS[v]).pow_u(e);
            }
            m
        },
    )
}

fn poly() -> impl Strategy<Value = RatFunc> {
    proptest::collection::vec(monomial(), 1..=3).prop_map(|ms| ms.into_iter().fold(RatFunc::zero(), |a, b| a + &b))
}

/// Small rational functions in the parameters; about half are polynomials.
pub fn scalar() -> impl Strategy<Value = RatFunc> {
    (poly(), proptest::option::of(poly())).prop_map(|(n, d)| match d {
        Some(d) if !d.is_zero() => n.checked_div(&d).unwrap(),
        _ => n,
    })
}

pub fn word() -> impl Strategy<Value = PbwWord> {
    (proptest::collection::vec(-4i64..=4, 0..=3), 0u32..=2).prop_map(|(mut f, c)| {
        f.sort_unstable();
        PbwWord::new(f, c)
    })
}

pub fn uea() -> impl Strategy<Value = UeaElt<RatFunc>> {
    proptest::collection::vec((word(), scalar()), 0..=4).prop_map(|terms| {
        let mut u = UeaElt::zero();
        for (w, a) in terms {
            u.add_term(w, a);
        }
        u
    })
}

pub fn space() -> impl Strategy<Value = Space> {
    prop_oneof![Just(Space::V), Just(Space::W), Just(Space::Ind)]
}

pub fn module_elt(space: Space) -> impl Strategy<Value = ModElt<RatFunc>> {
    let keys = Bounds::new(4, 2, 3).basis(space);
    proptest::collection::vec((proptest::sample::select(keys), scalar()), 0..=4).prop_map(move |terms| {
        let mut x = ModElt::zero(space);
        for (k, a) in terms {
            x.add_term(k, a);
        }
        x
    })
}

/// Any renderable element together with the module its `v` belongs to.
pub fn element() -> impl Strategy<Value = (Option<Space>, Value)> {
    prop_oneof![
        scalar().prop_map(|a| (None, Value::Scalar(a))),
        uea().prop_map(|u| (None, Value::Uea(u))),
        space().prop_flat_map(|s| module_elt(s).prop_map(move |x| (Some(s), Value::Module(x)))),
    ]
}

/// Brings a parsed value to the same variant as `like`.
pub fn coerce(v: Value, like: &Value) -> Value {
    match (v, like) {
        (Value::Scalar(a), Value::Uea(_)) => Value::Uea(UeaElt::scalar(a)),
        (Value::Uea(u), Value::Scalar(_)) if u.is_zero() => Value::Scalar(RatFunc::zero()),
        (Value::Scalar(a), Value::Module(x)) if a.is_zero() => Value::Module(ModElt::zero(x.space())),
        (v, _) => v,
    }
}

/// Renders as text, parses back, and compares.
pub fn round_trips(space: Option<Space>, x: &Value) -> Result<(), String> {
    let text = vir_cli::render::value_text(x);
    let ctx = match space {
        Some(s) => Context::new(Default::default()).with_module(s).map_err(|e| e.to_string())?,
        None => Context::new(Default::default()),
    };
    let back = ctx.parse_value(&text).map_err(|e| format!("`{text}` does not parse: {e}"))?;
    let back = coerce(back, x);
    if &back == x {
        Ok(())
    } else {
        Err(format!("`{text}` parsed to `{}`", vir_cli::render::value_text(&back)))
    }
}
