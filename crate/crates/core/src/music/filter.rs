//! Selective auralization: drop constructs by class, kind or depth, and cap
//! how many iterations of each loop are heard.

use crate::config::Filters;
use crate::frontend::ConstructKind;
use crate::trace::{
    activations, flatten_activations, Activation, EventKind, Item, Trace, TraceError,
};

/// Returns a trace holding only the audible part of `trace`.
///
/// Events of disabled constructs are removed while their enabled
/// descendants stay in place. Constructs deeper than `max_depth` disappear
/// with everything inside them. With `max_iterations = N`, iterations past
/// the N-th are removed together with the nested activity they contain; the
/// loop's terminating condition is kept. `seq` is renumbered densely.
pub fn apply_filters(trace: &Trace, filters: &Filters) -> Result<Trace, TraceError> {
    if filters.is_identity() {
        crate::trace::validate_trace(trace)?;
        return Ok(trace.clone());
    }
    let roots = activations(trace)?;
    let mut kept = Vec::new();
    for act in roots {
        for item in filter_activation(act, filters) {
            match item {
                Item::Child(a) => kept.push(a),
                Item::Event(_) => unreachable!("top level holds only activations"),
            }
        }
    }
    Ok(Trace {
        events: flatten_activations(&kept),
        stdout: trace.stdout.clone(),
        status: trace.status,
    })
}

fn filter_activation(mut act: Activation, filters: &Filters) -> Vec<Item> {
    if filters.max_depth.is_some_and(|max| act.depth() > max) {
        return Vec::new();
    }
    if let Some(limit) = filters.max_iterations {
        if act.kind().is_loop() {
            act.body = limit_iterations(act.kind(), act.body, limit);
        }
    }
    let enabled = filters.enables(act.kind());
    let mut body = Vec::with_capacity(act.body.len());
    for item in act.body {
        match item {
            Item::Child(child) => body.extend(filter_activation(child, filters)),
            Item::Event(ev) if enabled => body.push(Item::Event(ev)),
            Item::Event(_) => {}
        }
    }
    if enabled {
        vec![Item::Child(Activation { body, ..act })]
    } else {
        body
    }
}

fn is_tick(item: &Item) -> bool {
    matches!(item, Item::Event(ev) if matches!(ev.event, EventKind::IterationTick { .. }))
}

fn is_condition(item: &Item) -> bool {
    matches!(item, Item::Event(ev) if matches!(ev.event, EventKind::Condition { .. }))
}

fn limit_iterations(kind: ConstructKind, mut body: Vec<Item>, limit: u64) -> Vec<Item> {
    let ticks: Vec<usize> = body
        .iter()
        .enumerate()
        .filter(|(_, item)| is_tick(item))
        .map(|(i, _)| i)
        .collect();
    let Ok(limit) = usize::try_from(limit) else {
        return body;
    };
    if ticks.len() <= limit {
        return body;
    }
    // A WHILE iteration starts with the condition test that admitted it.
    let first_dropped = ticks[limit];
    let cut = if kind == ConstructKind::While
        && first_dropped > 0
        && is_condition(&body[first_dropped - 1])
    {
        first_dropped - 1
    } else {
        first_dropped
    };
    let last_tick = *ticks.last().expect("more ticks than the limit");
    let terminal = body
        .last()
        .filter(|item| is_condition(item))
        .is_some_and(|_| body.len() - 1 > last_tick);
    let tail = if terminal { body.pop() } else { None };
    body.truncate(cut);
    body.extend(tail);
    body
}
