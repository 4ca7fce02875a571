use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::frontend::{BinaryOp, Expr, ScalarType, UnaryOp};

use super::RuntimeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Int(i64),
    Bool(bool),
}

impl Value {
    pub fn ty(self) -> ScalarType {
        match self {
            Value::Int(_) => ScalarType::Integer,
            Value::Bool(_) => ScalarType::Boolean,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Bool(true) => f.write_str("TRUE"),
            Value::Bool(false) => f.write_str("FALSE"),
        }
    }
}

impl FromStr for Value {
    type Err = String;

    /// Parses an input literal: a signed decimal integer or `true`/`false`
    /// in any case.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "true" => Ok(Value::Bool(true)),
            "false" => Ok(Value::Bool(false)),
            _ => s
                .parse::<i64>()
                .map(Value::Int)
                .map_err(|_| format!("'{s}' is neither an integer nor a boolean")),
        }
    }
}

pub type Environment = HashMap<String, Value>;

fn mismatch(op: &str, found: ScalarType, expected: ScalarType) -> RuntimeError {
    RuntimeError::TypeMismatch {
        context: format!("operand of '{op}'"),
        expected,
        found,
    }
}

fn int(v: Value, op: &str) -> Result<i64, RuntimeError> {
    match v {
        Value::Int(i) => Ok(i),
        other => Err(mismatch(op, other.ty(), ScalarType::Integer)),
    }
}

fn boolean(v: Value, op: &str) -> Result<bool, RuntimeError> {
    match v {
        Value::Bool(b) => Ok(b),
        other => Err(mismatch(op, other.ty(), ScalarType::Boolean)),
    }
}

/// Evaluates an expression. Both operands of every binary operator are
/// evaluated; integer arithmetic is checked and `div`/`mod` truncate toward
/// zero.
pub fn evaluate_expression(expr: &Expr, env: &Environment) -> Result<Value, RuntimeError> {
    match expr {
        Expr::Int(v) => Ok(Value::Int(*v)),
        Expr::Bool(b) => Ok(Value::Bool(*b)),
        Expr::Var(name) => env
            .get(name)
            .copied()
            .ok_or_else(|| RuntimeError::Unbound(name.clone())),
        Expr::Unary(UnaryOp::Neg, e) => {
            let v = int(evaluate_expression(e, env)?, "-")?;
            v.checked_neg()
                .map(Value::Int)
                .ok_or(RuntimeError::Overflow)
        }
        Expr::Unary(UnaryOp::Not, e) => {
            Ok(Value::Bool(!boolean(evaluate_expression(e, env)?, "not")?))
        }
        Expr::Binary(op, l, r) => {
            let lhs = evaluate_expression(l, env)?;
            let rhs = evaluate_expression(r, env)?;
            binary(*op, lhs, rhs)
        }
    }
}

fn binary(op: BinaryOp, lhs: Value, rhs: Value) -> Result<Value, RuntimeError> {
    let sym = op.symbol();
    if op.is_relational() {
        let ord = match (lhs, rhs) {
            (Value::Int(a), Value::Int(b)) => a.cmp(&b),
            (Value::Bool(a), Value::Bool(b)) => a.cmp(&b),
            (a, b) => return Err(mismatch(sym, b.ty(), a.ty())),
        };
        let result = match op {
            BinaryOp::Eq => ord.is_eq(),
            BinaryOp::NotEq => ord.is_ne(),
            BinaryOp::Less => ord.is_lt(),
            BinaryOp::LessEq => ord.is_le(),
            BinaryOp::Greater => ord.is_gt(),
            BinaryOp::GreaterEq => ord.is_ge(),
            _ => unreachable!(),
        };
        return Ok(Value::Bool(result));
    }
    match op {
        BinaryOp::And => Ok(Value::Bool(boolean(lhs, sym)? & boolean(rhs, sym)?)),
        BinaryOp::Or => Ok(Value::Bool(boolean(lhs, sym)? | boolean(rhs, sym)?)),
        _ => {
            let (a, b) = (int(lhs, sym)?, int(rhs, sym)?);
            let v = match op {
                BinaryOp::Add => a.checked_add(b),
                BinaryOp::Sub => a.checked_sub(b),
                BinaryOp::Mul => a.checked_mul(b),
                BinaryOp::Div | BinaryOp::Mod if b == 0 => {
                    return Err(RuntimeError::DivisionByZero)
                }
                BinaryOp::Div => a.checked_div(b),
                BinaryOp::Mod => a.checked_rem(b),
                _ => unreachable!(),
            };
            v.map(Value::Int).ok_or(RuntimeError::Overflow)
        }
    }
}
