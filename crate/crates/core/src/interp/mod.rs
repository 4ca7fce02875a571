//! Tree-walking interpreter that records construct points of interest.

mod value;

use thiserror::Error;

use crate::frontend::{
    Construct, ConstructNode, Expr, ForDirection, Program, ScalarType, Stmt, WriteArg,
};
use crate::trace::{Branch, EventKind, Termination, Trace, TraceEvent};

pub use value::{evaluate_expression, Environment, Value};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RuntimeError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("integer overflow")]
    Overflow,
    #[error("type mismatch in {context}: expected {expected}, found {found}")]
    TypeMismatch {
        context: String,
        expected: ScalarType,
        found: ScalarType,
    },
    #[error("variable '{0}' used before it was assigned")]
    Unbound(String),
    #[error("Readln({0}): input exhausted")]
    InputExhausted(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExecLimits {
    pub max_events: usize,
    pub max_steps: u64,
}

impl Default for ExecLimits {
    fn default() -> Self {
        ExecLimits {
            max_events: 10_000,
            max_steps: 100_000,
        }
    }
}

impl ExecLimits {
    pub fn new(max_events: usize, max_steps: u64) -> Result<Self, String> {
        if max_events == 0 || max_steps == 0 {
            return Err("execution limits must be positive".into());
        }
        Ok(ExecLimits {
            max_events,
            max_steps,
        })
    }
}

/// Result of running a program: the (possibly partial) trace, plus the
/// runtime error that stopped it, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Execution {
    pub trace: Trace,
    pub error: Option<RuntimeError>,
}

enum Stop {
    Error(RuntimeError),
    Limit,
}

impl From<RuntimeError> for Stop {
    fn from(e: RuntimeError) -> Self {
        Stop::Error(e)
    }
}

type Flow = Result<(), Stop>;

/// Runs `program`, feeding `input` to successive `Readln` calls.
///
/// Runtime errors and limit hits end execution early; the trace up to that
/// point is kept and its status records why it stopped.
pub fn execute_program(program: &Program, input: &[Value], limits: ExecLimits) -> Execution {
    let mut interp = Interpreter {
        program,
        env: Environment::new(),
        input: input.iter(),
        events: Vec::new(),
        stdout: String::new(),
        steps: 0,
        limits,
    };
    let outcome = program.body.iter().try_for_each(|s| interp.exec(s));
    let (status, error) = match outcome {
        Ok(()) => (Termination::Completed, None),
        Err(Stop::Limit) => (Termination::LimitExceeded, None),
        Err(Stop::Error(e)) => (Termination::RuntimeError, Some(e)),
    };
    Execution {
        trace: Trace {
            events: interp.events,
            stdout: interp.stdout,
            status,
        },
        error,
    }
}

struct Interpreter<'p, 'i> {
    program: &'p Program,
    env: Environment,
    input: std::slice::Iter<'i, Value>,
    events: Vec<TraceEvent>,
    stdout: String,
    steps: u64,
    limits: ExecLimits,
}

impl Interpreter<'_, '_> {
    fn emit(&mut self, c: &Construct, event: EventKind) -> Flow {
        if self.events.len() >= self.limits.max_events {
            return Err(Stop::Limit);
        }
        self.events.push(TraceEvent {
            seq: self.events.len() as u64,
            construct: c.id,
            kind: c.kind(),
            depth: c.depth,
            event,
        });
        Ok(())
    }

    fn eval(&self, e: &Expr) -> Result<Value, RuntimeError> {
        evaluate_expression(e, &self.env)
    }

    fn eval_bool(&self, e: &Expr, context: &str) -> Result<bool, RuntimeError> {
        match self.eval(e)? {
            Value::Bool(b) => Ok(b),
            other => Err(RuntimeError::TypeMismatch {
                context: context.into(),
                expected: ScalarType::Boolean,
                found: other.ty(),
            }),
        }
    }

    fn eval_int(&self, e: &Expr, context: &str) -> Result<i64, RuntimeError> {
        match self.eval(e)? {
            Value::Int(i) => Ok(i),
            other => Err(RuntimeError::TypeMismatch {
                context: context.into(),
                expected: ScalarType::Integer,
                found: other.ty(),
            }),
        }
    }

    fn assign(&mut self, target: &str, value: Value) -> Result<(), RuntimeError> {
        let declared = self
            .program
            .var_type(target)
            .ok_or_else(|| RuntimeError::Unbound(target.to_string()))?;
        if declared != value.ty() {
            return Err(RuntimeError::TypeMismatch {
                context: format!("assignment to '{target}'"),
                expected: declared,
                found: value.ty(),
            });
        }
        self.env.insert(target.to_string(), value);
        Ok(())
    }

    fn exec(&mut self, stmt: &Stmt) -> Flow {
        self.steps += 1;
        if self.steps > self.limits.max_steps {
            return Err(Stop::Limit);
        }
        match stmt {
            Stmt::Empty => Ok(()),
            Stmt::Assign { target, value } => {
                let v = self.eval(value)?;
                self.assign(target, v)?;
                Ok(())
            }
            Stmt::Write { newline, args } => {
                for arg in args {
                    match arg {
                        WriteArg::Text(t) => self.stdout.push_str(t),
                        WriteArg::Expr(e) => {
                            let v = self.eval(e)?;
                            self.stdout.push_str(&v.to_string());
                        }
                    }
                }
                if *newline {
                    self.stdout.push('\n');
                }
                Ok(())
            }
            Stmt::Readln { target } => {
                let v = *self
                    .input
                    .next()
                    .ok_or_else(|| RuntimeError::InputExhausted(target.clone()))?;
                self.assign(target, v)?;
                Ok(())
            }
            Stmt::Block(stmts) => stmts.iter().try_for_each(|s| self.exec(s)),
            Stmt::Construct(c) => self.construct(c),
        }
    }

    fn construct(&mut self, c: &Construct) -> Flow {
        self.emit(c, EventKind::Enter)?;
        match &c.node {
            ConstructNode::If {
                cond,
                then_branch,
                else_branch,
            } => {
                let result = self.eval_bool(cond, "IF condition")?;
                self.emit(c, EventKind::Condition { result })?;
                if result {
                    self.emit(c, EventKind::BranchTaken(Branch::Then))?;
                    self.exec(then_branch)?;
                } else if let Some(e) = else_branch {
                    self.emit(c, EventKind::BranchTaken(Branch::Else))?;
                    self.exec(e)?;
                }
            }
            ConstructNode::Case {
                selector,
                arms,
                else_branch,
            } => {
                let v = self.eval_int(selector, "CASE selector")?;
                let mut matched = false;
                for (i, arm) in arms.iter().enumerate() {
                    let hit = arm.matches(v);
                    self.emit(
                        c,
                        EventKind::CaseScan {
                            label: i as u32 + 1,
                            matched: hit,
                        },
                    )?;
                    if hit {
                        matched = true;
                        self.exec(&arm.body)?;
                        break;
                    }
                }
                if !matched {
                    match else_branch {
                        Some(stmts) => {
                            self.emit(c, EventKind::CaseElseTaken)?;
                            stmts.iter().try_for_each(|s| self.exec(s))?;
                        }
                        None => self.emit(c, EventKind::CaseNoMatch)?,
                    }
                }
            }
            ConstructNode::While { cond, body } => {
                let mut iteration = 0;
                loop {
                    let result = self.eval_bool(cond, "WHILE condition")?;
                    self.emit(c, EventKind::Condition { result })?;
                    if !result {
                        break;
                    }
                    iteration += 1;
                    self.emit(c, EventKind::IterationTick { iteration })?;
                    self.exec(body)?;
                }
            }
            ConstructNode::Repeat { body, until } => {
                let mut iteration = 0;
                loop {
                    iteration += 1;
                    self.emit(c, EventKind::IterationTick { iteration })?;
                    body.iter().try_for_each(|s| self.exec(s))?;
                    let result = self.eval_bool(until, "UNTIL condition")?;
                    self.emit(c, EventKind::Condition { result })?;
                    if result {
                        break;
                    }
                }
            }
            ConstructNode::For {
                var,
                start,
                end,
                direction,
                body,
            } => {
                let first = self.eval_int(start, "FOR start")?;
                let last = self.eval_int(end, "FOR end")?;
                let in_range = |v: i64| match direction {
                    ForDirection::To => v <= last,
                    ForDirection::Downto => v >= last,
                };
                let mut current = first;
                let mut iteration = 0;
                while in_range(current) {
                    self.assign(var, Value::Int(current))?;
                    iteration += 1;
                    self.emit(c, EventKind::IterationTick { iteration })?;
                    self.exec(body)?;
                    if current == last {
                        break;
                    }
                    current = match direction {
                        ForDirection::To => current + 1,
                        ForDirection::Downto => current - 1,
                    };
                }
            }
        }
        self.emit(c, EventKind::Exit)
    }
}
