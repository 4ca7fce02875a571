//! Hand-traced programs. Every expected event list and output below was
//! worked out by hand from the event grammar, not captured from a run.

#![allow(dead_code)]

use auralize_core::frontend::ConstructKind;
use auralize_core::interp::Value;
use auralize_core::trace::{Branch, EventKind, Termination, Trace};

pub struct Oracle {
    pub name: &'static str,
    pub source: &'static str,
    pub input: Vec<Value>,
    pub stdout: &'static str,
    pub status: Termination,
    /// "id KIND depth event [args]"
    pub events: &'static [&'static str],
}

fn kind_name(k: ConstructKind) -> &'static str {
    match k {
        ConstructKind::If => "IF",
        ConstructKind::IfElse => "IF_ELSE",
        ConstructKind::Case => "CASE",
        ConstructKind::CaseElse => "CASE_ELSE",
        ConstructKind::While => "WHILE",
        ConstructKind::Repeat => "REPEAT",
        ConstructKind::ForTo => "FOR_TO",
        ConstructKind::ForDownto => "FOR_DOWNTO",
    }
}

pub fn describe(t: &Trace) -> Vec<String> {
    t.events
        .iter()
        .map(|e| {
            let ev = match e.event {
                EventKind::Enter => "enter".to_string(),
                EventKind::Exit => "exit".to_string(),
                EventKind::Condition { result } => format!("cond {result}"),
                EventKind::IterationTick { iteration } => format!("iter {iteration}"),
                EventKind::CaseScan { label, matched } => format!("scan {label} {matched}"),
                EventKind::CaseElseTaken => "else".to_string(),
                EventKind::CaseNoMatch => "nomatch".to_string(),
                EventKind::BranchTaken(Branch::Then) => "then".to_string(),
                EventKind::BranchTaken(Branch::Else) => "elsebranch".to_string(),
            };
            format!("{} {} {} {}", e.construct.0, kind_name(e.kind), e.depth, ev)
        })
        .collect()
}

pub fn corpus() -> Vec<Oracle> {
    use Termination::*;
    vec![
        Oracle {
            name: "null while",
            source: super::NULL_WHILE,
            input: vec![],
            stdout: "",
            status: Completed,
            events: &["0 WHILE 0 enter", "0 WHILE 0 cond false", "0 WHILE 0 exit"],
        },
        Oracle {
            name: "two ifs, a = 5",
            source: super::TWO_IFS,
            input: vec![Value::Int(5)],
            stdout: "a > 3\na > 3\n",
            status: Completed,
            events: &[
                "0 IF 0 enter",
                "0 IF 0 cond true",
                "0 IF 0 then",
                "0 IF 0 exit",
                "1 IF_ELSE 0 enter",
                "1 IF_ELSE 0 cond true",
                "1 IF_ELSE 0 then",
                "1 IF_ELSE 0 exit",
            ],
        },
        Oracle {
            name: "two ifs, a = 2",
            source: super::TWO_IFS,
            input: vec![Value::Int(2)],
            stdout: "a <> 3\n",
            status: Completed,
            events: &[
                "0 IF 0 enter",
                "0 IF 0 cond false",
                "0 IF 0 exit",
                "1 IF_ELSE 0 enter",
                "1 IF_ELSE 0 cond false",
                "1 IF_ELSE 0 elsebranch",
                "1 IF_ELSE 0 exit",
            ],
        },
        Oracle {
            name: "range case, x = 6",
            source: super::RANGE_CASE,
            input: vec![Value::Int(6)],
            stdout: "Between 5 and 7\n",
            status: Completed,
            events: &[
                "0 CASE_ELSE 0 enter",
                "0 CASE_ELSE 0 scan 1 false",
                "0 CASE_ELSE 0 scan 2 true",
                "0 CASE_ELSE 0 exit",
            ],
        },
        Oracle {
            name: "range case, x = 3",
            source: super::RANGE_CASE,
            input: vec![Value::Int(3)],
            stdout: "Between 1 and 4\n",
            status: Completed,
            events: &[
                "0 CASE_ELSE 0 enter",
                "0 CASE_ELSE 0 scan 1 true",
                "0 CASE_ELSE 0 exit",
            ],
        },
        Oracle {
            name: "range case, x = 9",
            source: super::RANGE_CASE,
            input: vec![Value::Int(9)],
            stdout: "No match\n",
            status: Completed,
            events: &[
                "0 CASE_ELSE 0 enter",
                "0 CASE_ELSE 0 scan 1 false",
                "0 CASE_ELSE 0 scan 2 false",
                "0 CASE_ELSE 0 else",
                "0 CASE_ELSE 0 exit",
            ],
        },
        Oracle {
            name: "case without else, no match",
            source: "PROGRAM o7;
VAR k : integer;
BEGIN
  k := 0;
  CASE k OF
    1 : Writeln('one');
    2, 3 : Writeln('few')
  END;
  Writeln('done')
END.",
            input: vec![],
            stdout: "done\n",
            status: Completed,
            events: &[
                "0 CASE 0 enter",
                "0 CASE 0 scan 1 false",
                "0 CASE 0 scan 2 false",
                "0 CASE 0 nomatch",
                "0 CASE 0 exit",
            ],
        },
        Oracle {
            name: "for to sum",
            source: "PROGRAM o8;
VAR i, s : integer;
BEGIN
  s := 0;
  FOR i := 1 TO 3 DO s := s + i;
  Writeln(s)
END.",
            input: vec![],
            stdout: "6\n",
            status: Completed,
            events: &[
                "0 FOR_TO 0 enter",
                "0 FOR_TO 0 iter 1",
                "0 FOR_TO 0 iter 2",
                "0 FOR_TO 0 iter 3",
                "0 FOR_TO 0 exit",
            ],
        },
        Oracle {
            name: "for downto, empty range",
            source: "PROGRAM o9;
VAR i : integer;
BEGIN
  FOR i := 1 DOWNTO 2 DO Writeln(i);
  Writeln('x')
END.",
            input: vec![],
            stdout: "x\n",
            status: Completed,
            events: &["0 FOR_DOWNTO 0 enter", "0 FOR_DOWNTO 0 exit"],
        },
        Oracle {
            name: "repeat with nested if",
            source: "PROGRAM o10;
VAR n : integer;
BEGIN
  n := 0;
  REPEAT
    n := n + 1;
    IF n mod 2 = 0 THEN Writeln(n)
  UNTIL n >= 3
END.",
            input: vec![],
            stdout: "2\n",
            status: Completed,
            events: &[
                "0 REPEAT 0 enter",
                "0 REPEAT 0 iter 1",
                "1 IF 1 enter",
                "1 IF 1 cond false",
                "1 IF 1 exit",
                "0 REPEAT 0 cond false",
                "0 REPEAT 0 iter 2",
                "1 IF 1 enter",
                "1 IF 1 cond true",
                "1 IF 1 then",
                "1 IF 1 exit",
                "0 REPEAT 0 cond false",
                "0 REPEAT 0 iter 3",
                "1 IF 1 enter",
                "1 IF 1 cond false",
                "1 IF 1 exit",
                "0 REPEAT 0 cond true",
                "0 REPEAT 0 exit",
            ],
        },
        Oracle {
            name: "while nested in for downto",
            source: "PROGRAM o11;
VAR i, j : integer;
BEGIN
  FOR i := 2 DOWNTO 1 DO
  BEGIN
    j := 0;
    WHILE j < i DO j := j + 1;
    Write(j, ' ')
  END;
  Writeln
END.",
            input: vec![],
            stdout: "2 1 \n",
            status: Completed,
            events: &[
                "0 FOR_DOWNTO 0 enter",
                "0 FOR_DOWNTO 0 iter 1",
                "1 WHILE 1 enter",
                "1 WHILE 1 cond true",
                "1 WHILE 1 iter 1",
                "1 WHILE 1 cond true",
                "1 WHILE 1 iter 2",
                "1 WHILE 1 cond false",
                "1 WHILE 1 exit",
                "0 FOR_DOWNTO 0 iter 2",
                "1 WHILE 1 enter",
                "1 WHILE 1 cond true",
                "1 WHILE 1 iter 1",
                "1 WHILE 1 cond false",
                "1 WHILE 1 exit",
                "0 FOR_DOWNTO 0 exit",
            ],
        },
        Oracle {
            name: "input driven if-else over case, then branch",
            source: O12,
            input: vec![Value::Int(6), Value::Bool(true)],
            stdout: "even\n",
            status: Completed,
            events: &[
                "0 IF_ELSE 0 enter",
                "0 IF_ELSE 0 cond true",
                "0 IF_ELSE 0 then",
                "1 CASE_ELSE 1 enter",
                "1 CASE_ELSE 1 scan 1 false",
                "1 CASE_ELSE 1 scan 2 true",
                "1 CASE_ELSE 1 exit",
                "0 IF_ELSE 0 exit",
            ],
        },
        Oracle {
            name: "input driven if-else over case, else branch",
            source: O12,
            input: vec![Value::Int(6), Value::Bool(false)],
            stdout: "FALSE\n",
            status: Completed,
            events: &[
                "0 IF_ELSE 0 enter",
                "0 IF_ELSE 0 cond false",
                "0 IF_ELSE 0 elsebranch",
                "0 IF_ELSE 0 exit",
            ],
        },
        Oracle {
            name: "division by zero inside while",
            source: "PROGRAM o13;
VAR i : integer;
BEGIN
  i := 3;
  WHILE i >= 0 DO
  BEGIN
    Writeln(6 div i);
    i := i - 1
  END
END.",
            input: vec![],
            stdout: "2\n3\n6\n",
            status: RuntimeError,
            events: &[
                "0 WHILE 0 enter",
                "0 WHILE 0 cond true",
                "0 WHILE 0 iter 1",
                "0 WHILE 0 cond true",
                "0 WHILE 0 iter 2",
                "0 WHILE 0 cond true",
                "0 WHILE 0 iter 3",
                "0 WHILE 0 cond true",
                "0 WHILE 0 iter 4",
            ],
        },
        Oracle {
            name: "empty program",
            source: "program empty; begin end.",
            input: vec![],
            stdout: "",
            status: Completed,
            events: &[],
        },
    ]
}

const O12: &str = "PROGRAM o12;
VAR v : integer;
    b : boolean;
BEGIN
  Readln(v);
  Readln(b);
  IF b AND (v > 0) THEN
    CASE v OF
      1..3 : Writeln('low');
      4, 6 : Writeln('even')
    ELSE Writeln('other')
    END
  ELSE Writeln(b)
END.";
