//! Execution traces: the points of interest emitted by the interpreter and
//! consumed by the leitmotif engine.

mod codec;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::frontend::{ConstructId, ConstructKind};

pub use codec::{deserialize_trace, serialize_trace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Then,
    Else,
}

impl Branch {
    pub fn wire_name(self) -> &'static str {
        match self {
            Branch::Then => "then",
            Branch::Else => "else",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EventKind {
    Enter,
    Exit,
    Condition {
        result: bool,
    },
    /// Start of a loop-body repetition, 1-based.
    IterationTick {
        iteration: u64,
    },
    /// One CASE arm inspected, 1-based in declaration order.
    CaseScan {
        label: u32,
        matched: bool,
    },
    CaseElseTaken,
    CaseNoMatch,
    BranchTaken(Branch),
}

impl EventKind {
    pub fn wire_name(self) -> &'static str {
        match self {
            EventKind::Enter => "enter",
            EventKind::Exit => "exit",
            EventKind::Condition { .. } => "condition",
            EventKind::IterationTick { .. } => "iteration",
            EventKind::CaseScan { .. } => "case_scan",
            EventKind::CaseElseTaken => "case_else",
            EventKind::CaseNoMatch => "case_no_match",
            EventKind::BranchTaken(_) => "branch",
        }
    }

    /// Whether this event can legally belong to a construct of `kind`.
    pub fn allowed_for(self, kind: ConstructKind) -> bool {
        use ConstructKind as K;
        match self {
            EventKind::Enter | EventKind::Exit => true,
            EventKind::Condition { .. } => matches!(kind, K::If | K::IfElse | K::While | K::Repeat),
            EventKind::IterationTick { .. } => kind.is_loop(),
            EventKind::CaseScan { .. } | EventKind::CaseNoMatch => kind.is_case(),
            EventKind::CaseElseTaken => kind == K::CaseElse,
            EventKind::BranchTaken(Branch::Then) => kind.is_if(),
            EventKind::BranchTaken(Branch::Else) => kind == K::IfElse,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TraceEvent {
    pub seq: u64,
    pub construct: ConstructId,
    pub kind: ConstructKind,
    pub depth: u32,
    pub event: EventKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Termination {
    Completed,
    LimitExceeded,
    RuntimeError,
}

impl Termination {
    pub fn wire_name(self) -> &'static str {
        match self {
            Termination::Completed => "completed",
            Termination::LimitExceeded => "limit",
            Termination::RuntimeError => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub events: Vec<TraceEvent>,
    pub stdout: String,
    pub status: Termination,
}

impl Trace {
    pub fn empty() -> Self {
        Trace {
            events: Vec::new(),
            stdout: String::new(),
            status: Termination::Completed,
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TraceError {
    #[error("line {line}: {message}")]
    Schema { line: usize, message: String },
    #[error("invalid trace at event {seq}: {message}")]
    Invalid { seq: u64, message: String },
}

fn invalid(seq: u64, message: impl Into<String>) -> TraceError {
    TraceError::Invalid {
        seq,
        message: message.into(),
    }
}

/// Structural validity: dense `seq`, per-construct kind/depth consistency,
/// event variants legal for their construct kind, and Enter/Exit forming a
/// properly nested sequence in which every other event belongs to the
/// innermost open construct.
///
/// A completed trace must close every construct. Traces cut short by an
/// error or a limit may leave constructs open, but never close one out of
/// order.
pub fn validate_trace(trace: &Trace) -> Result<(), TraceError> {
    let mut open: Vec<ConstructId> = Vec::new();
    let mut identity: HashMap<ConstructId, (ConstructKind, u32)> = HashMap::new();

    for (i, ev) in trace.events.iter().enumerate() {
        if ev.seq != i as u64 {
            return Err(invalid(ev.seq, format!("expected seq {i}")));
        }
        match identity.get(&ev.construct) {
            Some(&(kind, depth)) if (kind, depth) != (ev.kind, ev.depth) => {
                return Err(invalid(
                    ev.seq,
                    format!(
                        "construct {} changes identity from {kind}@{depth} to {}@{}",
                        ev.construct, ev.kind, ev.depth
                    ),
                ));
            }
            Some(_) => {}
            None => {
                identity.insert(ev.construct, (ev.kind, ev.depth));
            }
        }
        if !ev.event.allowed_for(ev.kind) {
            return Err(invalid(
                ev.seq,
                format!("{} event not allowed for {}", ev.event.wire_name(), ev.kind),
            ));
        }
        match ev.event {
            EventKind::Enter => {
                if open.contains(&ev.construct) {
                    return Err(invalid(
                        ev.seq,
                        format!("construct {} entered twice", ev.construct),
                    ));
                }
                open.push(ev.construct);
            }
            EventKind::Exit => {
                if open.pop() != Some(ev.construct) {
                    return Err(invalid(
                        ev.seq,
                        format!(
                            "exit of construct {} does not match the innermost entry",
                            ev.construct
                        ),
                    ));
                }
            }
            _ => {
                if open.last() != Some(&ev.construct) {
                    return Err(invalid(
                        ev.seq,
                        format!(
                            "event for construct {} outside its activation",
                            ev.construct
                        ),
                    ));
                }
            }
        }
    }

    if trace.status == Termination::Completed {
        if let Some(id) = open.last() {
            return Err(invalid(
                trace.events.len() as u64,
                format!("completed trace leaves construct {id} open"),
            ));
        }
    }
    Ok(())
}

/// One construct activation: its Enter event, everything in between, and its
/// Exit if the trace reached it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Activation {
    pub enter: TraceEvent,
    pub body: Vec<Item>,
    pub exit: Option<TraceEvent>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Event(TraceEvent),
    Child(Activation),
}

impl Activation {
    pub fn kind(&self) -> ConstructKind {
        self.enter.kind
    }

    pub fn depth(&self) -> u32 {
        self.enter.depth
    }

    fn flatten_into(&self, out: &mut Vec<TraceEvent>) {
        out.push(self.enter);
        flatten_items(&self.body, out);
        if let Some(exit) = self.exit {
            out.push(exit);
        }
    }
}

pub(crate) fn flatten_items(items: &[Item], out: &mut Vec<TraceEvent>) {
    for item in items {
        match item {
            Item::Event(ev) => out.push(*ev),
            Item::Child(act) => act.flatten_into(out),
        }
    }
}

/// Flattens activations back into an event list with `seq` renumbered densely.
pub fn flatten_activations(roots: &[Activation]) -> Vec<TraceEvent> {
    let mut out = Vec::new();
    for act in roots {
        act.flatten_into(&mut out);
    }
    for (i, ev) in out.iter_mut().enumerate() {
        ev.seq = i as u64;
    }
    out
}

/// Groups a validated trace into its activation forest.
pub fn activations(trace: &Trace) -> Result<Vec<Activation>, TraceError> {
    validate_trace(trace)?;
    let mut roots = Vec::new();
    let mut stack: Vec<Activation> = Vec::new();
    for ev in &trace.events {
        match ev.event {
            EventKind::Enter => stack.push(Activation {
                enter: *ev,
                body: Vec::new(),
                exit: None,
            }),
            EventKind::Exit => {
                let mut act = stack.pop().expect("validated");
                act.exit = Some(*ev);
                match stack.last_mut() {
                    Some(parent) => parent.body.push(Item::Child(act)),
                    None => roots.push(act),
                }
            }
            _ => stack
                .last_mut()
                .expect("validated")
                .body
                .push(Item::Event(*ev)),
        }
    }
    while let Some(act) = stack.pop() {
        match stack.last_mut() {
            Some(parent) => parent.body.push(Item::Child(act)),
            None => roots.push(act),
        }
    }
    Ok(roots)
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "#{} {}[{}]@{} ",
            self.seq, self.kind, self.construct, self.depth
        )?;
        match self.event {
            EventKind::Condition { result } => write!(f, "condition {result}"),
            EventKind::IterationTick { iteration } => write!(f, "iteration {iteration}"),
            EventKind::CaseScan { label, matched } => write!(f, "case_scan {label} {matched}"),
            EventKind::BranchTaken(b) => write!(f, "branch {}", b.wire_name()),
            other => f.write_str(other.wire_name()),
        }
    }
}
