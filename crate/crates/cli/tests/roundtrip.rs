mod common;

use proptest::prelude::*;
use vir_cli::render::{render, value_json, Format};
use vir_cli::Value;

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn text_reparses_to_the_same_element((space, x) in common::element()) {
        common::round_trips(space, &x).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn json_is_deterministic((_space, x) in common::element()) {
        prop_assert_eq!(render(&x, Format::Json), render(&x.clone(), Format::Json));
        let terms = value_json(&x)["terms"].as_array().unwrap().len();
        let expected = match &x {
            Value::Scalar(a) => usize::from(!a.is_zero()),
            Value::Uea(u) => u.len(),
            Value::Module(m) => m.len(),
        };
        prop_assert_eq!(terms, expected);
    }
}
