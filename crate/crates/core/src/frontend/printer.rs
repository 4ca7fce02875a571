//! Source printer. Output re-parses to a structurally equal program for any
//! program produced by the parser; binary and unary expressions are fully
//! parenthesized so precedence never has to be reconstructed.

use std::fmt::{self, Write as _};

use super::ast::{
    CaseLabel, Construct, ConstructNode, Expr, ForDirection, Program, Stmt, UnaryOp, WriteArg,
};

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PROGRAM {};", self.name)?;
        if !self.vars.is_empty() {
            writeln!(f, "VAR")?;
            for v in &self.vars {
                writeln!(f, "  {} : {};", v.name, v.ty)?;
            }
        }
        writeln!(f, "BEGIN")?;
        let mut out = String::new();
        write_sequence(&mut out, &self.body, 1);
        f.write_str(&out)?;
        writeln!(f, "END.")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(v) if *v < 0 => write!(f, "(-{})", v.unsigned_abs()),
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Bool(true) => f.write_str("TRUE"),
            Expr::Bool(false) => f.write_str("FALSE"),
            Expr::Var(name) => f.write_str(name),
            Expr::Unary(UnaryOp::Neg, e) => write!(f, "(-{e})"),
            Expr::Unary(UnaryOp::Not, e) => write!(f, "(NOT {e})"),
            Expr::Binary(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
        }
    }
}

fn indent(out: &mut String, level: usize) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn write_sequence(out: &mut String, stmts: &[Stmt], level: usize) {
    for (i, stmt) in stmts.iter().enumerate() {
        indent(out, level);
        write_stmt(out, stmt, level);
        if i + 1 < stmts.len() {
            out.push(';');
        }
        out.push('\n');
    }
}

fn quote(text: &str) -> String {
    format!("'{}'", text.replace('\'', "''"))
}

fn write_stmt(out: &mut String, stmt: &Stmt, level: usize) {
    match stmt {
        Stmt::Empty => {}
        Stmt::Assign { target, value } => {
            let _ = write!(out, "{target} := {value}");
        }
        Stmt::Write { newline, args } => {
            out.push_str(if *newline { "Writeln" } else { "Write" });
            if !args.is_empty() {
                let rendered: Vec<String> = args
                    .iter()
                    .map(|a| match a {
                        WriteArg::Text(t) => quote(t),
                        WriteArg::Expr(e) => e.to_string(),
                    })
                    .collect();
                let _ = write!(out, "({})", rendered.join(", "));
            }
        }
        Stmt::Readln { target } => {
            let _ = write!(out, "Readln({target})");
        }
        Stmt::Block(stmts) => {
            out.push_str("BEGIN\n");
            write_sequence(out, stmts, level + 1);
            indent(out, level);
            out.push_str("END");
        }
        Stmt::Construct(c) => write_construct(out, c, level),
    }
}

fn write_nested(out: &mut String, stmt: &Stmt, level: usize) {
    out.push('\n');
    indent(out, level + 1);
    write_stmt(out, stmt, level + 1);
}

fn write_construct(out: &mut String, c: &Construct, level: usize) {
    match &c.node {
        ConstructNode::If {
            cond,
            then_branch,
            else_branch,
        } => {
            let _ = write!(out, "IF {cond} THEN");
            write_nested(out, then_branch, level);
            if let Some(e) = else_branch {
                out.push('\n');
                indent(out, level);
                out.push_str("ELSE");
                write_nested(out, e, level);
            }
        }
        ConstructNode::Case {
            selector,
            arms,
            else_branch,
        } => {
            let _ = writeln!(out, "CASE {selector} OF");
            for arm in arms {
                indent(out, level + 1);
                let labels: Vec<String> = arm
                    .labels
                    .iter()
                    .map(|l| match l {
                        CaseLabel::Value(v) => v.to_string(),
                        CaseLabel::Range(lo, hi) => format!("{lo}..{hi}"),
                    })
                    .collect();
                let _ = write!(out, "{} : ", labels.join(", "));
                write_stmt(out, &arm.body, level + 1);
                out.push_str(";\n");
            }
            if let Some(stmts) = else_branch {
                indent(out, level + 1);
                out.push_str("ELSE\n");
                write_sequence(out, stmts, level + 2);
            }
            indent(out, level);
            out.push_str("END");
        }
        ConstructNode::While { cond, body } => {
            let _ = write!(out, "WHILE {cond} DO");
            write_nested(out, body, level);
        }
        ConstructNode::Repeat { body, until } => {
            out.push_str("REPEAT\n");
            write_sequence(out, body, level + 1);
            indent(out, level);
            let _ = write!(out, "UNTIL {until}");
        }
        ConstructNode::For {
            var,
            start,
            end,
            direction,
            body,
        } => {
            let dir = match direction {
                ForDirection::To => "TO",
                ForDirection::Downto => "DOWNTO",
            };
            let _ = write!(out, "FOR {var} := {start} {dir} {end} DO");
            write_nested(out, body, level);
        }
    }
}
