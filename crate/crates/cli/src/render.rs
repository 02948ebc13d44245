//! Text and JSON forms of elements. Text re-parses to an equal element;
//! JSON lists explicit basis keys with exact coefficients as strings.

use serde::Serialize;
use virasoro_core::algebra::{LieElt, UeaElt};
use virasoro_core::coeff::Field;
use virasoro_core::rep::ModElt;

use crate::eval::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Serialize)]
struct ModTerm {
    i: Vec<u32>,
    j: u32,
    k: u32,
    coeff: String,
}

#[derive(Serialize)]
struct WordTerm {
    word: Vec<i64>,
    c: u32,
    coeff: String,
}

#[derive(Serialize)]
struct Terms<T> {
    terms: Vec<T>,
}

pub fn module_json<F: Field>(x: &ModElt<F>) -> serde_json::Value {
    let terms = x
        .terms()
        .map(|(key, a)| ModTerm {
            i: key.neg.entries().to_vec(),
            j: key.j,
            k: key.k,
            coeff: a.to_string(),
        })
        .collect();
    serde_json::to_value(Terms { terms }).expect("serialisable")
}

pub fn uea_json<F: Field>(u: &UeaElt<F>) -> serde_json::Value {
    let terms = u
        .terms()
        .map(|(w, a)| WordTerm {
            word: w.factors().to_vec(),
            c: w.cpow(),
            coeff: a.to_string(),
        })
        .collect();
    serde_json::to_value(Terms { terms }).expect("serialisable")
}

pub fn lie_json<F: Field>(x: &LieElt<F>) -> serde_json::Value {
    uea_json(&UeaElt::from_lie(x))
}

pub fn value_json(v: &Value) -> serde_json::Value {
    match v {
        Value::Scalar(a) => uea_json(&UeaElt::scalar(a.clone())),
        Value::Uea(u) => uea_json(u),
        Value::Module(x) => module_json(x),
    }
}

pub fn value_text(v: &Value) -> String {
    match v {
        Value::Scalar(a) => a.to_string(),
        Value::Uea(u) => u.to_string(),
        Value::Module(x) => x.to_string(),
    }
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Text => value_text(v),
        Format::Json => value_json(v).to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::Context;
    use virasoro_core::coeff::ParamAssignment;
    use virasoro_core::rep::Space;

    #[test]
    fn generator_json_schema() {
        let c = Context::new(ParamAssignment::new()).with_module(Space::Ind).unwrap();
        let v = c.parse_value("v").unwrap();
        assert_eq!(render(&v, Format::Json), r#"{"terms":[{"i":[],"j":0,"k":0,"coeff":"1"}]}"#);
        let x = c.parse_value("l(-2)*l(-1)^2*l(1)*v").unwrap();
        assert_eq!(render(&x, Format::Json), r#"{"terms":[{"i":[2,1],"j":0,"k":1,"coeff":"1"}]}"#);
    }

    #[test]
    fn canonical_text() {
        let c = Context::new(ParamAssignment::new());
        let u = c.parse_value("l(-1)*l(1) - 2*l(0)").unwrap();
        assert_eq!(render(&u, Format::Text), "l(-1)*l(1) - 2*l(0)");
        assert_eq!(
            render(&u, Format::Json),
            r#"{"terms":[{"word":[-1,1],"c":0,"coeff":"1"},{"word":[0],"c":0,"coeff":"-2"}]}"#
        );
    }
}
