use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, LazyLock};

use num_traits::Zero;

use super::{CoeffError, PolyRing, Rational};

/// The symbolic parameters, in lex priority order.
pub const PARAMETERS: [&str; 6] = ["z", "m2", "m3", "m4", "theta", "t"];

static PARAM_RING: LazyLock<Arc<PolyRing>> = LazyLock::new(|| PolyRing::new(&PARAMETERS));

/// The ring `Q[z, m2, m3, m4, theta, t]` shared by every symbolic scalar.
pub fn param_ring() -> &'static Arc<PolyRing> {
    &PARAM_RING
}

/// Values for some or all of the parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamAssignment {
    values: BTreeMap<String, Rational>,
}

impl ParamAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: &str, value: Rational) -> &mut Self {
        self.values.insert(name.to_string(), value);
        self
    }

    pub fn with(mut self, name: &str, value: Rational) -> Self {
        self.set(name, value);
        self
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.values.get(name)
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.values.iter()
    }

    /// Rejects `z = 0`.
    pub fn validate(&self) -> Result<(), CoeffError> {
        match self.values.get("z") {
            Some(z) if z.is_zero() => Err(CoeffError::ZeroZ),
            _ => Ok(()),
        }
    }

    /// Errors unless every name in `names` is assigned.
    pub fn require(&self, names: &[&str]) -> Result<(), CoeffError> {
        for n in names {
            if !self.values.contains_key(*n) {
                return Err(CoeffError::Unassigned(n.to_string()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for ParamAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl<S: AsRef<str>> FromIterator<(S, Rational)> for ParamAssignment {
    fn from_iter<I: IntoIterator<Item = (S, Rational)>>(iter: I) -> Self {
        ParamAssignment {
            values: iter
                .into_iter()
                .map(|(k, v)| (k.as_ref().to_string(), v))
                .collect(),
        }
    }
}
