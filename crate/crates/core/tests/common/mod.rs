#![allow(dead_code)]

pub mod corpus;
pub mod gen;
pub mod smf;

use auralize_core::config::MusicConfig;
use auralize_core::frontend::parse_source;
use auralize_core::interp::{execute_program, ExecLimits, Value};
use auralize_core::pipeline::{auralize_source, Auralization};
use auralize_core::trace::Trace;

pub fn trace_of(src: &str, input: &[Value]) -> Trace {
    execute_program(
        &parse_source(src).expect("parses"),
        input,
        ExecLimits::default(),
    )
    .trace
}

pub fn auralize(src: &str, input: &[Value]) -> Auralization {
    auralize_with(src, input, &MusicConfig::default())
}

pub fn auralize_with(src: &str, input: &[Value], config: &MusicConfig) -> Auralization {
    auralize_source(src, input, config).expect("auralizes")
}

pub const NULL_WHILE: &str = "PROGRAM nullwhile;\nBEGIN\n  WHILE false DO ;\nEND.\n";

pub const TWO_IFS: &str = "PROGRAM twoifs;
VAR a : integer;
BEGIN
  Readln(a);
  IF a > 3 THEN
    Writeln ('a > 3') ;
  IF a > 3 THEN
    Writeln ('a > 3')
  ELSE
    Writeln ('a <> 3') ;
END.
";

pub const RANGE_CASE: &str = "PROGRAM rangecase;
VAR x : integer;
BEGIN
  Readln(x);
  CASE x OF
    1..4 : Writeln ('Between 1 and 4') ;
    5..7 : Writeln ('Between 5 and 7') ;
    ELSE  Writeln ('No match') ;
  END ;
END.
";
