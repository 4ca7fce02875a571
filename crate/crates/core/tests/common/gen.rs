//! Seeded generator of well-formed, terminating programs in the Pascal
//! subset. Alongside the source it records the constructs it emitted in
//! pre-order, which serves as the oracle for classification and depth.
//!
//! Integer assignments are reduced `mod 997`, loops run on private counters
//! with small literal bounds, and CASE labels are disjoint by construction,
//! so runs finish well inside the default limits and rarely fail.

#![allow(dead_code)]

use auralize_core::frontend::ConstructKind;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DATA_INTS: [&str; 3] = ["x", "y", "z"];
const DATA_BOOLS: [&str; 2] = ["p", "q"];

#[derive(Clone, Debug)]
pub struct GenProgram {
    pub name: String,
    /// Loop counters declared in addition to the data variables.
    pub counters: Vec<String>,
    /// Top-level statements (initialisation first).
    pub body: Vec<String>,
    /// Constructs in pre-order with their static nesting depth.
    pub constructs: Vec<(ConstructKind, u32)>,
}

impl GenProgram {
    fn render(&self, extra_counters: &[&str], body: &str) -> String {
        let mut ints: Vec<&str> = DATA_INTS.to_vec();
        ints.extend(self.counters.iter().map(String::as_str));
        ints.extend(extra_counters);
        format!(
            "PROGRAM {};\nVAR {} : integer;\n    {} : boolean;\nBEGIN\n{}\nEND.\n",
            self.name,
            ints.join(", "),
            DATA_BOOLS.join(", "),
            body
        )
    }

    pub fn source(&self) -> String {
        self.render(&[], &self.body.join(";\n"))
    }

    /// The same program with everything after the initialisation wrapped in
    /// a single-iteration FOR loop.
    pub fn wrapped_source(&self) -> String {
        let (init, rest) = self.body.split_at(INIT_LINES);
        let body = format!(
            "{};\nFOR wrap := 1 TO 1 DO BEGIN\n{}\nEND",
            init.join(";\n"),
            rest.join(";\n")
        );
        self.render(&["wrap"], &body)
    }

    pub fn has_constructs(&self) -> bool {
        !self.constructs.is_empty()
    }
}

const INIT_LINES: usize = 5;

pub struct Generator {
    rng: ChaCha8Rng,
    counters: Vec<String>,
    constructs: Vec<(ConstructKind, u32)>,
    max_depth: u32,
}

impl Generator {
    pub fn new(seed: u64, max_depth: u32) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            counters: Vec::new(),
            constructs: Vec::new(),
            max_depth,
        }
    }

    pub fn program(mut self) -> GenProgram {
        let mut body = vec![
            format!("x := {}", self.rng.gen_range(-9..=20)),
            format!("y := {}", self.rng.gen_range(-9..=20)),
            format!("z := {}", self.rng.gen_range(-9..=20)),
            format!("p := {}", self.rng.gen_bool(0.5)),
            format!("q := {}", self.rng.gen_bool(0.5)),
        ];
        let n = self.rng.gen_range(1..=4);
        for _ in 0..n {
            body.push(self.statement(0));
        }
        let name = format!("gen{}", self.rng.gen_range(0..1000));
        GenProgram {
            name,
            counters: self.counters,
            body,
            constructs: self.constructs,
        }
    }

    fn counter(&mut self, prefix: &str) -> String {
        let name = format!("{prefix}{}", self.counters.len());
        self.counters.push(name.clone());
        name
    }

    fn int_atom(&mut self) -> String {
        if self.rng.gen_bool(0.5) {
            let v: i64 = self.rng.gen_range(-5..=12);
            if v < 0 {
                format!("({v})")
            } else {
                v.to_string()
            }
        } else {
            DATA_INTS.choose(&mut self.rng).unwrap().to_string()
        }
    }

    fn int_expr(&mut self, depth: u32) -> String {
        if depth == 0 || self.rng.gen_bool(0.35) {
            return self.int_atom();
        }
        match self.rng.gen_range(0..6) {
            0 => format!(
                "({} + {})",
                self.int_expr(depth - 1),
                self.int_expr(depth - 1)
            ),
            1 => format!(
                "({} - {})",
                self.int_expr(depth - 1),
                self.int_expr(depth - 1)
            ),
            2 => format!(
                "({} * {})",
                self.int_expr(depth - 1),
                self.int_expr(depth - 1)
            ),
            3 => format!(
                "({} div {})",
                self.int_expr(depth - 1),
                self.rng.gen_range(1..=5)
            ),
            4 => format!(
                "({} mod {})",
                self.int_expr(depth - 1),
                self.rng.gen_range(1..=7)
            ),
            _ => format!("(-{})", self.int_atom()),
        }
    }

    fn bool_expr(&mut self, depth: u32) -> String {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return match self.rng.gen_range(0..4) {
                0 => DATA_BOOLS.choose(&mut self.rng).unwrap().to_string(),
                1 => ["true", "false"].choose(&mut self.rng).unwrap().to_string(),
                _ => self.relation(),
            };
        }
        match self.rng.gen_range(0..4) {
            0 => format!(
                "({} and {})",
                self.bool_expr(depth - 1),
                self.bool_expr(depth - 1)
            ),
            1 => format!(
                "({} or {})",
                self.bool_expr(depth - 1),
                self.bool_expr(depth - 1)
            ),
            2 => format!("not {}", self.bool_expr(0)),
            _ => self.relation(),
        }
    }

    fn relation(&mut self) -> String {
        let op = ["=", "<>", "<", "<=", ">", ">="]
            .choose(&mut self.rng)
            .unwrap();
        format!("({} {} {})", self.int_expr(1), op, self.int_expr(1))
    }

    fn simple(&mut self) -> String {
        match self.rng.gen_range(0..5) {
            0 | 1 => {
                let v = DATA_INTS.choose(&mut self.rng).unwrap();
                format!("{v} := ({}) mod 997", self.int_expr(2))
            }
            2 => {
                let v = DATA_BOOLS.choose(&mut self.rng).unwrap();
                format!("{v} := {}", self.bool_expr(2))
            }
            3 => format!("Writeln('v', {})", self.int_expr(1)),
            _ => format!("Write({}, ' ')", DATA_BOOLS.choose(&mut self.rng).unwrap()),
        }
    }

    fn block(&mut self, depth: u32) -> String {
        let n = self.rng.gen_range(1..=3);
        let stmts: Vec<String> = (0..n).map(|_| self.statement(depth)).collect();
        format!("BEGIN\n{}\nEND", stmts.join(";\n"))
    }

    /// A statement whose constructs sit at `depth`.
    fn statement(&mut self, depth: u32) -> String {
        let construct_chance = if depth >= self.max_depth {
            0.0
        } else {
            0.6 / f64::from(depth + 1)
        };
        if !self.rng.gen_bool(construct_chance.min(1.0)) {
            return self.simple();
        }
        let kind = *ConstructKind::ALL.choose(&mut self.rng).unwrap();
        self.constructs.push((kind, depth));
        let inner = depth + 1;
        match kind {
            ConstructKind::If => {
                let c = self.bool_expr(2);
                format!("IF {c} THEN {}", self.block(inner))
            }
            ConstructKind::IfElse => {
                let c = self.bool_expr(2);
                let t = self.block(inner);
                format!("IF {c} THEN {t} ELSE {}", self.block(inner))
            }
            ConstructKind::Case | ConstructKind::CaseElse => {
                let sel = if self.rng.gen_bool(0.7) {
                    format!("({} mod 9)", DATA_INTS.choose(&mut self.rng).unwrap())
                } else {
                    self.int_expr(1)
                };
                let mut lo: i64 = self.rng.gen_range(-4..=2);
                let arms_n = self.rng.gen_range(1..=4);
                let mut arms = Vec::new();
                for _ in 0..arms_n {
                    let mut labels = Vec::new();
                    for _ in 0..self.rng.gen_range(1..=2) {
                        let width = self.rng.gen_range(0..=2);
                        labels.push(if width == 0 {
                            lo.to_string()
                        } else {
                            format!("{}..{}", lo, lo + width)
                        });
                        lo += width + self.rng.gen_range(1..=3);
                    }
                    arms.push(format!("{} : {}", labels.join(", "), self.block(inner)));
                }
                let mut text = format!("CASE {sel} OF\n{}", arms.join(";\n"));
                if kind == ConstructKind::CaseElse {
                    text.push_str(&format!("\nELSE {}", self.statement(inner)));
                }
                text.push_str("\nEND");
                text
            }
            ConstructKind::While => {
                let c = self.counter("w");
                let n = self.rng.gen_range(0..=3);
                let extra = if self.rng.gen_bool(0.3) {
                    format!(" and {}", self.bool_expr(1))
                } else {
                    String::new()
                };
                let body = self.block(inner);
                format!(
                    "{c} := 0;\nWHILE ({c} < {n}){extra} DO BEGIN\n{body};\n{c} := {c} + 1\nEND"
                )
            }
            ConstructKind::Repeat => {
                let c = self.counter("r");
                let n = self.rng.gen_range(1..=3);
                let extra = if self.rng.gen_bool(0.3) {
                    format!(" or {}", self.bool_expr(1))
                } else {
                    String::new()
                };
                let body = self.block(inner);
                format!("{c} := 0;\nREPEAT\n{body};\n{c} := {c} + 1\nUNTIL ({c} >= {n}){extra}")
            }
            ConstructKind::ForTo | ConstructKind::ForDownto => {
                let c = self.counter("f");
                let a = self.rng.gen_range(-2..=3);
                let b = if self.rng.gen_bool(0.5) {
                    self.rng.gen_range(-2..=4).to_string()
                } else {
                    format!("({} mod 4)", DATA_INTS.choose(&mut self.rng).unwrap())
                };
                let (dir, from, to) = if kind == ConstructKind::ForTo {
                    ("TO", a.to_string(), b)
                } else {
                    ("DOWNTO", b, a.to_string())
                };
                format!("FOR {c} := {from} {dir} {to} DO {}", self.block(inner))
            }
        }
    }
}

/// Convenience: program number `i` of a fixed family.
pub fn generated(i: u64) -> GenProgram {
    Generator::new(0x5eed_0000 + i, 3).program()
}
