//! Evaluation of parsed expressions into scalars, enveloping-algebra
//! elements or module elements.

use thiserror::Error;
use virasoro_core::algebra::{LieElt, UeaElt, Virasoro};
use virasoro_core::coeff::{Field, ParamAssignment, RatFunc, Rational, PARAMETERS};
use virasoro_core::rep::{CharacterParams, InducedModule, ModElt, RepError, Space};

use crate::parse::{parse, Expr, ExprKind, ParseError, Pos};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{message} at column {}", .pos + 1)]
    At { pos: Pos, message: String },
    #[error(transparent)]
    Rep(#[from] RepError),
}

impl EvalError {
    fn at(pos: Pos, message: impl Into<String>) -> Self {
        EvalError::At {
            pos,
            message: message.into(),
        }
    }

    pub fn pos(&self) -> Option<Pos> {
        match self {
            EvalError::Parse(e) => Some(e.pos),
            EvalError::At { pos, .. } => Some(*pos),
            EvalError::Rep(_) => None,
        }
    }
}

/// Result of evaluating an expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Scalar(RatFunc),
    Uea(UeaElt<RatFunc>),
    Module(ModElt<RatFunc>),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Uea(_) => "algebra element",
            Value::Module(_) => "module element",
        }
    }

    fn into_uea(self) -> Option<UeaElt<RatFunc>> {
        match self {
            Value::Scalar(a) => Some(UeaElt::scalar(a)),
            Value::Uea(u) => Some(u),
            Value::Module(_) => None,
        }
    }
}

/// Parameter values, the acting algebra and optionally a module for `v`.
pub struct Context {
    assignment: ParamAssignment,
    algebra: Virasoro,
    module: Option<InducedModule<RatFunc>>,
}

impl Context {
    pub fn new(assignment: ParamAssignment) -> Self {
        Context {
            assignment,
            algebra: Virasoro::STANDARD,
            module: None,
        }
    }

    /// Enables `v`, the generator of `space` with the assigned parameters
    /// and symbols for the rest.
    pub fn with_module(mut self, space: Space) -> Result<Self, RepError> {
        let params = CharacterParams::partially_assigned(&self.assignment)?;
        self.module = Some(InducedModule::with_algebra(space, params, self.algebra));
        Ok(self)
    }

    pub fn module(&self) -> Option<&InducedModule<RatFunc>> {
        self.module.as_ref()
    }

    pub fn parse_value(&self, src: &str) -> Result<Value, EvalError> {
        self.eval(&parse(src)?)
    }

    pub fn parse_uea(&self, src: &str) -> Result<UeaElt<RatFunc>, EvalError> {
        let e = parse(src)?;
        let pos = e.pos;
        let v = self.eval(&e)?;
        let kind = v.kind();
        v.into_uea()
            .ok_or_else(|| EvalError::at(pos, format!("expected an algebra element, found a {kind}")))
    }

    pub fn parse_module(&self, src: &str) -> Result<ModElt<RatFunc>, EvalError> {
        let e = parse(src)?;
        match self.eval(&e)? {
            Value::Module(x) => Ok(x),
            Value::Scalar(a) if a.is_zero() => Ok(ModElt::zero(self.space(e.pos)?)),
            Value::Uea(u) if u.is_zero() => Ok(ModElt::zero(self.space(e.pos)?)),
            other => Err(EvalError::at(
                e.pos,
                format!("expected a module element (ending in `v`), found a {}", other.kind()),
            )),
        }
    }

    pub fn parse_lie(&self, src: &str) -> Result<LieElt<RatFunc>, EvalError> {
        let u = self.parse_uea(src)?;
        to_lie(&u).ok_or_else(|| EvalError::at(0, format!("`{src}` is not in the Lie algebra")))
    }

    fn space(&self, pos: Pos) -> Result<Space, EvalError> {
        self.module
            .as_ref()
            .map(|m| m.space())
            .ok_or_else(|| EvalError::at(pos, "`v` requires a module"))
    }

    fn scalar(&self, name: &str, pos: Pos) -> Result<RatFunc, EvalError> {
        if !PARAMETERS.contains(&name) {
            return Err(EvalError::at(
                pos,
                format!("unknown name `{name}` (parameters are {})", PARAMETERS.join(", ")),
            ));
        }
        Ok(match self.assignment.get(name) {
            Some(q) => RatFunc::constant(q.clone()),
            None => RatFunc::param(name),
        })
    }

    pub fn eval(&self, e: &Expr) -> Result<Value, EvalError> {
        use ExprKind::*;
        Ok(match &e.kind {
            Int(n) => Value::Scalar(RatFunc::constant(Rational::from_integer(n.clone()))),
            Param(name) => Value::Scalar(self.scalar(name, e.pos)?),
            Mode(i) => Value::Uea(UeaElt::generator(*i)),
            Central => Value::Uea(UeaElt::word(&[], 1)),
            Generator => {
                let m = self.module.as_ref().ok_or_else(|| EvalError::at(e.pos, "`v` requires a module"))?;
                Value::Module(m.generator())
            }
            Neg(a) => match self.eval(a)? {
                Value::Scalar(x) => Value::Scalar(-x),
                Value::Uea(u) => Value::Uea(u.scale(&-RatFunc::one())),
                Value::Module(x) => Value::Module(-&x),
            },
            Add(a, b) => self.combine(self.eval(a)?, self.eval(b)?, false, e.pos)?,
            Sub(a, b) => self.combine(self.eval(a)?, self.eval(b)?, true, e.pos)?,
            Mul(a, b) => self.multiply(self.eval(a)?, self.eval(b)?, e.pos)?,
            Div(a, b) => {
                let d = match self.eval(b)? {
                    Value::Scalar(d) => d,
                    other => return Err(EvalError::at(b.pos, format!("cannot divide by a {}", other.kind()))),
                };
                let inv = d.inv().map_err(|_| EvalError::at(b.pos, "division by zero"))?;
                self.multiply(self.eval(a)?, Value::Scalar(inv), e.pos)?
            }
            Pow(a, n) => match self.eval(a)? {
                Value::Scalar(x) => Value::Scalar(x.pow_u(*n)),
                Value::Uea(u) => {
                    let mut acc = UeaElt::one();
                    for _ in 0..*n {
                        acc = self.algebra.uea_mul(&acc, &u);
                    }
                    Value::Uea(acc)
                }
                Value::Module(_) => return Err(EvalError::at(e.pos, "`v` cannot be raised to a power")),
            },
        })
    }

    fn combine(&self, a: Value, b: Value, subtract: bool, pos: Pos) -> Result<Value, EvalError> {
        let b = if subtract {
            match b {
                Value::Scalar(x) => Value::Scalar(-x),
                Value::Uea(u) => Value::Uea(u.scale(&-RatFunc::one())),
                Value::Module(x) => Value::Module(-&x),
            }
        } else {
            b
        };
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x + &y),
            (Value::Module(x), Value::Module(y)) => Value::Module(&x + &y),
            (Value::Module(x), other) | (other, Value::Module(x)) => {
                let u = other.into_uea().expect("not a module element");
                if !u.is_zero() {
                    return Err(EvalError::at(pos, "cannot add a module element and an algebra element"));
                }
                Value::Module(x)
            }
            (a, b) => Value::Uea(a.into_uea().unwrap() + b.into_uea().unwrap()),
        })
    }

    fn multiply(&self, a: Value, b: Value, pos: Pos) -> Result<Value, EvalError> {
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x * &y),
            (Value::Scalar(x), Value::Uea(u)) | (Value::Uea(u), Value::Scalar(x)) => Value::Uea(u.scale(&x)),
            (Value::Uea(u), Value::Uea(w)) => Value::Uea(self.algebra.uea_mul(&u, &w)),
            (Value::Scalar(x), Value::Module(y)) => Value::Module(y.scale(&x)),
            (Value::Uea(u), Value::Module(y)) => {
                let m = self.module.as_ref().expect("module elements need a module");
                Value::Module(m.act(&u, &y)?)
            }
            (Value::Module(_), _) => {
                return Err(EvalError::at(pos, "`v` must be the rightmost factor of a product"))
            }
        })
    }
}

/// The Lie element equal to `u`, if every word has length at most one.
pub fn to_lie<F: Field>(u: &UeaElt<F>) -> Option<LieElt<F>> {
    let mut out = LieElt::zero();
    for (w, a) in u.terms() {
        match (w.factors(), w.cpow()) {
            ([i], 0) => out.add_mode(*i, a.clone()),
            ([], 1) => out.add_central(a.clone()),
            _ => return None,
        }
    }
    Some(out)
}

/// Converts symbolic coefficients to numbers; fails on any remaining
/// parameter.
pub fn numeric(a: &RatFunc) -> Result<Rational, String> {
    a.constant_value()
        .ok_or_else(|| format!("coefficient `{a}` is symbolic; assign every parameter it uses"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use virasoro_core::coeff::rat;

    fn ctx(space: Option<Space>) -> Context {
        let c = Context::new(ParamAssignment::new());
        match space {
            Some(s) => c.with_module(s).unwrap(),
            None => c,
        }
    }

    #[test]
    fn commutator_normal_orders() {
        let c = ctx(None);
        let u = c.parse_uea("l(2)*l(-2) - l(-2)*l(2)").unwrap();
        assert_eq!(u.to_string(), "-4*l(0) + 1/2*c");
        let lie = to_lie(&u).unwrap();
        assert_eq!(lie.central(), &RatFunc::constant(rat(1, 2)));
    }

    #[test]
    fn parameters_are_substituted() {
        let at = ParamAssignment::new().with("z", rat(2, 1));
        let c = Context::new(at);
        let Value::Scalar(x) = c.parse_value("z^2 - m2/z").unwrap() else {
            panic!()
        };
        assert_eq!(x.to_string(), "4 - 1/2*m2");
        assert!(c.parse_value("q + 1").is_err());
    }

    #[test]
    fn module_elements_need_v_last_and_a_module() {
        assert!(ctx(None).parse_value("l(1)*v").is_err());
        let c = ctx(Some(Space::W));
        let x = c.parse_module("z*l(0)*v - l(1)*v").unwrap();
        assert_eq!(x.len(), 2);
        assert!(c.parse_module("l(-1)*v").is_err());
        assert!(c.parse_value("v + l(1)").is_err());
        assert!(c.parse_module("l(1)").is_err());
    }

    #[test]
    fn division_by_zero_is_reported() {
        let e = ctx(None).parse_value("1/(z - z)").unwrap_err();
        assert_eq!(e.pos(), Some(2));
    }
}
