//! JSON-lines trace format.
//!
//! ```text
//! {"seq":0,"id":0,"kind":"WHILE","depth":0,"ev":"enter"}
//! {"seq":1,"id":0,"kind":"WHILE","depth":0,"ev":"condition","result":false}
//! {"seq":2,"id":0,"kind":"WHILE","depth":0,"ev":"exit"}
//! {"status":"completed","stdout":""}
//! ```
//!
//! Lines are written by hand so the field order and spacing never drift.

use std::fmt::Write as _;

use serde_json::{Map, Value};

use super::{validate_trace, Branch, EventKind, Termination, Trace, TraceError, TraceEvent};
use crate::frontend::{ConstructId, ConstructKind};

pub fn serialize_trace(trace: &Trace) -> String {
    let mut out = String::new();
    for ev in &trace.events {
        let _ = write!(
            out,
            "{{\"seq\":{},\"id\":{},\"kind\":\"{}\",\"depth\":{},\"ev\":\"{}\"",
            ev.seq,
            ev.construct.0,
            ev.kind.wire_name(),
            ev.depth,
            ev.event.wire_name()
        );
        match ev.event {
            EventKind::Condition { result } => {
                let _ = write!(out, ",\"result\":{result}");
            }
            EventKind::IterationTick { iteration } => {
                let _ = write!(out, ",\"iter\":{iteration}");
            }
            EventKind::CaseScan { label, matched } => {
                let _ = write!(out, ",\"label\":{label},\"matched\":{matched}");
            }
            EventKind::BranchTaken(b) => {
                let _ = write!(out, ",\"branch\":\"{}\"", b.wire_name());
            }
            EventKind::Enter
            | EventKind::Exit
            | EventKind::CaseElseTaken
            | EventKind::CaseNoMatch => {}
        }
        out.push_str("}\n");
    }
    let stdout = serde_json::to_string(&trace.stdout).expect("strings always serialize");
    let _ = writeln!(
        out,
        "{{\"status\":\"{}\",\"stdout\":{stdout}}}",
        trace.status.wire_name()
    );
    out
}

pub fn deserialize_trace(text: &str) -> Result<Trace, TraceError> {
    let mut events = Vec::new();
    let mut footer: Option<(Termination, String)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let schema = |message: String| TraceError::Schema { line, message };
        if footer.is_some() {
            return Err(schema("content after the status line".into()));
        }
        let value: Value =
            serde_json::from_str(raw).map_err(|e| schema(format!("malformed JSON: {e}")))?;
        let Value::Object(obj) = value else {
            return Err(schema("expected a JSON object".into()));
        };
        if obj.contains_key("status") {
            footer = Some(parse_footer(&obj).map_err(schema)?);
        } else {
            events.push(parse_event(&obj).map_err(schema)?);
        }
    }

    let Some((status, stdout)) = footer else {
        return Err(TraceError::Schema {
            line: text.lines().count() + 1,
            message: "missing status line".into(),
        });
    };
    let trace = Trace {
        events,
        stdout,
        status,
    };
    validate_trace(&trace)?;
    Ok(trace)
}

fn check_keys(obj: &Map<String, Value>, expected: &[&str]) -> Result<(), String> {
    for key in obj.keys() {
        if !expected.contains(&key.as_str()) {
            return Err(format!("unexpected field '{key}'"));
        }
    }
    for key in expected {
        if !obj.contains_key(*key) {
            return Err(format!("missing field '{key}'"));
        }
    }
    Ok(())
}

fn get_u64(obj: &Map<String, Value>, key: &str) -> Result<u64, String> {
    obj.get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| format!("field '{key}' must be a non-negative integer"))
}

fn get_u32(obj: &Map<String, Value>, key: &str) -> Result<u32, String> {
    let v = get_u64(obj, key)?;
    u32::try_from(v).map_err(|_| format!("field '{key}' out of range"))
}

fn get_bool(obj: &Map<String, Value>, key: &str) -> Result<bool, String> {
    obj.get(key)
        .and_then(Value::as_bool)
        .ok_or_else(|| format!("field '{key}' must be a boolean"))
}

fn get_str<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a str, String> {
    obj.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| format!("field '{key}' must be a string"))
}

fn parse_footer(obj: &Map<String, Value>) -> Result<(Termination, String), String> {
    check_keys(obj, &["status", "stdout"])?;
    let status = match get_str(obj, "status")? {
        "completed" => Termination::Completed,
        "limit" => Termination::LimitExceeded,
        "error" => Termination::RuntimeError,
        other => return Err(format!("unknown status '{other}'")),
    };
    Ok((status, get_str(obj, "stdout")?.to_string()))
}

fn parse_event(obj: &Map<String, Value>) -> Result<TraceEvent, String> {
    const BASE: [&str; 5] = ["seq", "id", "kind", "depth", "ev"];
    let ev = get_str(obj, "ev")?;
    let extra: &[&str] = match ev {
        "enter" | "exit" | "case_else" | "case_no_match" => &[],
        "condition" => &["result"],
        "iteration" => &["iter"],
        "case_scan" => &["label", "matched"],
        "branch" => &["branch"],
        other => return Err(format!("unknown event variant '{other}'")),
    };
    let expected: Vec<&str> = BASE.iter().chain(extra).copied().collect();
    check_keys(obj, &expected)?;

    let event = match ev {
        "enter" => EventKind::Enter,
        "exit" => EventKind::Exit,
        "case_else" => EventKind::CaseElseTaken,
        "case_no_match" => EventKind::CaseNoMatch,
        "condition" => EventKind::Condition {
            result: get_bool(obj, "result")?,
        },
        "iteration" => {
            let iteration = get_u64(obj, "iter")?;
            if iteration == 0 {
                return Err("field 'iter' is 1-based".into());
            }
            EventKind::IterationTick { iteration }
        }
        "case_scan" => {
            let label = get_u32(obj, "label")?;
            if label == 0 {
                return Err("field 'label' is 1-based".into());
            }
            EventKind::CaseScan {
                label,
                matched: get_bool(obj, "matched")?,
            }
        }
        "branch" => EventKind::BranchTaken(match get_str(obj, "branch")? {
            "then" => Branch::Then,
            "else" => Branch::Else,
            other => return Err(format!("unknown branch '{other}'")),
        }),
        _ => unreachable!(),
    };

    let kind_name = get_str(obj, "kind")?;
    let kind = ConstructKind::from_wire_name(kind_name)
        .ok_or_else(|| format!("unknown construct kind '{kind_name}'"))?;
    Ok(TraceEvent {
        seq: get_u64(obj, "seq")?,
        construct: ConstructId(get_u32(obj, "id")?),
        kind,
        depth: get_u32(obj, "depth")?,
        event,
    })
}
