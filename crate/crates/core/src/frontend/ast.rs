use std::fmt;
use std::str::FromStr;

/// Top level of the construct taxonomy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstructClass {
    Selection,
    Iteration,
}

impl ConstructClass {
    pub const ALL: [ConstructClass; 2] = [ConstructClass::Selection, ConstructClass::Iteration];

    pub fn name(self) -> &'static str {
        match self {
            ConstructClass::Selection => "selection",
            ConstructClass::Iteration => "iteration",
        }
    }
}

impl fmt::Display for ConstructClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "selection" => Ok(ConstructClass::Selection),
            "iteration" => Ok(ConstructClass::Iteration),
            other => Err(format!("unknown construct class '{other}'")),
        }
    }
}

/// The eight auralized constructs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstructKind {
    If,
    IfElse,
    Case,
    CaseElse,
    While,
    Repeat,
    ForTo,
    ForDownto,
}

impl ConstructKind {
    pub const ALL: [ConstructKind; 8] = [
        ConstructKind::If,
        ConstructKind::IfElse,
        ConstructKind::Case,
        ConstructKind::CaseElse,
        ConstructKind::While,
        ConstructKind::Repeat,
        ConstructKind::ForTo,
        ConstructKind::ForDownto,
    ];

    pub fn class(self) -> ConstructClass {
        classify_construct(self)
    }

    /// Name used in the trace file format.
    pub fn wire_name(self) -> &'static str {
        match self {
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

    pub fn from_wire_name(name: &str) -> Option<ConstructKind> {
        ConstructKind::ALL
            .into_iter()
            .find(|k| k.wire_name() == name)
    }

    pub fn is_loop(self) -> bool {
        self.class() == ConstructClass::Iteration
    }

    pub fn is_for(self) -> bool {
        matches!(self, ConstructKind::ForTo | ConstructKind::ForDownto)
    }

    pub fn is_case(self) -> bool {
        matches!(self, ConstructKind::Case | ConstructKind::CaseElse)
    }

    pub fn is_if(self) -> bool {
        matches!(self, ConstructKind::If | ConstructKind::IfElse)
    }
}

impl fmt::Display for ConstructKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.wire_name())
    }
}

impl FromStr for ConstructKind {
    type Err = String;

    /// Accepts the wire names case-insensitively, with `-` or `_` separators
    /// (`if_else`, `IF-ELSE`, `for_downto`, ...).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        ConstructKind::from_wire_name(&norm).ok_or_else(|| format!("unknown construct kind '{s}'"))
    }
}

pub fn classify_construct(kind: ConstructKind) -> ConstructClass {
    match kind {
        ConstructKind::If
        | ConstructKind::IfElse
        | ConstructKind::Case
        | ConstructKind::CaseElse => ConstructClass::Selection,
        ConstructKind::While
        | ConstructKind::Repeat
        | ConstructKind::ForTo
        | ConstructKind::ForDownto => ConstructClass::Iteration,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstructId(pub u32);

impl fmt::Display for ConstructId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarType {
    Integer,
    Boolean,
}

impl fmt::Display for ScalarType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalarType::Integer => "integer",
            ScalarType::Boolean => "boolean",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarDecl {
    /// Lower-cased; identifiers are case-insensitive.
    pub name: String,
    pub ty: ScalarType,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub name: String,
    pub vars: Vec<VarDecl>,
    pub body: Vec<Stmt>,
}

impl Program {
    pub fn var_type(&self, name: &str) -> Option<ScalarType> {
        self.vars.iter().find(|v| v.name == name).map(|v| v.ty)
    }

    /// All construct nodes in source pre-order.
    pub fn constructs(&self) -> Vec<&Construct> {
        let mut out = Vec::new();
        for stmt in &self.body {
            stmt.collect_constructs(&mut out);
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Not,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    And,
    Or,
    Eq,
    NotEq,
    Less,
    LessEq,
    Greater,
    GreaterEq,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "div",
            BinaryOp::Mod => "mod",
            BinaryOp::And => "and",
            BinaryOp::Or => "or",
            BinaryOp::Eq => "=",
            BinaryOp::NotEq => "<>",
            BinaryOp::Less => "<",
            BinaryOp::LessEq => "<=",
            BinaryOp::Greater => ">",
            BinaryOp::GreaterEq => ">=",
        }
    }

    pub fn is_relational(self) -> bool {
        matches!(
            self,
            BinaryOp::Eq
                | BinaryOp::NotEq
                | BinaryOp::Less
                | BinaryOp::LessEq
                | BinaryOp::Greater
                | BinaryOp::GreaterEq
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Bool(bool),
    Var(String),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn binary(op: BinaryOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn unary(op: UnaryOp, operand: Expr) -> Expr {
        Expr::Unary(op, Box::new(operand))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WriteArg {
    Text(String),
    Expr(Expr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Empty,
    Assign { target: String, value: Expr },
    Write { newline: bool, args: Vec<WriteArg> },
    Readln { target: String },
    Block(Vec<Stmt>),
    Construct(Construct),
}

impl Stmt {
    fn collect_constructs<'a>(&'a self, out: &mut Vec<&'a Construct>) {
        match self {
            Stmt::Block(stmts) => stmts.iter().for_each(|s| s.collect_constructs(out)),
            Stmt::Construct(c) => {
                out.push(c);
                c.for_each_child_stmt(|s| s.collect_constructs(out));
            }
            _ => {}
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseLabel {
    Value(i64),
    Range(i64, i64),
}

impl CaseLabel {
    pub fn contains(self, v: i64) -> bool {
        match self {
            CaseLabel::Value(x) => x == v,
            CaseLabel::Range(lo, hi) => (lo..=hi).contains(&v),
        }
    }

    pub fn bounds(self) -> (i64, i64) {
        match self {
            CaseLabel::Value(x) => (x, x),
            CaseLabel::Range(lo, hi) => (lo, hi),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseArm {
    pub labels: Vec<CaseLabel>,
    pub body: Stmt,
}

impl CaseArm {
    pub fn matches(&self, v: i64) -> bool {
        self.labels.iter().any(|l| l.contains(v))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForDirection {
    To,
    Downto,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructNode {
    If {
        cond: Expr,
        then_branch: Box<Stmt>,
        else_branch: Option<Box<Stmt>>,
    },
    Case {
        selector: Expr,
        arms: Vec<CaseArm>,
        else_branch: Option<Vec<Stmt>>,
    },
    While {
        cond: Expr,
        body: Box<Stmt>,
    },
    Repeat {
        body: Vec<Stmt>,
        until: Expr,
    },
    For {
        var: String,
        start: Expr,
        end: Expr,
        direction: ForDirection,
        body: Box<Stmt>,
    },
}

/// A construct node with its identity and static nesting depth.
///
/// The kind is derived from the node shape, so an `If` node with an else
/// branch is always [`ConstructKind::IfElse`] and likewise for `Case`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construct {
    pub id: ConstructId,
    pub depth: u32,
    pub node: ConstructNode,
}

impl Construct {
    pub fn kind(&self) -> ConstructKind {
        match &self.node {
            ConstructNode::If {
                else_branch: None, ..
            } => ConstructKind::If,
            ConstructNode::If {
                else_branch: Some(_),
                ..
            } => ConstructKind::IfElse,
            ConstructNode::Case {
                else_branch: None, ..
            } => ConstructKind::Case,
            ConstructNode::Case {
                else_branch: Some(_),
                ..
            } => ConstructKind::CaseElse,
            ConstructNode::While { .. } => ConstructKind::While,
            ConstructNode::Repeat { .. } => ConstructKind::Repeat,
            ConstructNode::For {
                direction: ForDirection::To,
                ..
            } => ConstructKind::ForTo,
            ConstructNode::For {
                direction: ForDirection::Downto,
                ..
            } => ConstructKind::ForDownto,
        }
    }

    pub fn class(&self) -> ConstructClass {
        self.kind().class()
    }

    pub fn for_each_child_stmt<'a>(&'a self, mut f: impl FnMut(&'a Stmt)) {
        match &self.node {
            ConstructNode::If {
                then_branch,
                else_branch,
                ..
            } => {
                f(then_branch);
                if let Some(e) = else_branch {
                    f(e);
                }
            }
            ConstructNode::Case {
                arms, else_branch, ..
            } => {
                arms.iter().for_each(|a| f(&a.body));
                if let Some(stmts) = else_branch {
                    stmts.iter().for_each(f);
                }
            }
            ConstructNode::While { body, .. } | ConstructNode::For { body, .. } => f(body),
            ConstructNode::Repeat { body, .. } => body.iter().for_each(f),
        }
    }

    pub fn for_each_child_stmt_mut(&mut self, mut f: impl FnMut(&mut Stmt)) {
        match &mut self.node {
            ConstructNode::If {
                then_branch,
                else_branch,
                ..
            } => {
                f(then_branch);
                if let Some(e) = else_branch {
                    f(e);
                }
            }
            ConstructNode::Case {
                arms, else_branch, ..
            } => {
                arms.iter_mut().for_each(|a| f(&mut a.body));
                if let Some(stmts) = else_branch {
                    stmts.iter_mut().for_each(f);
                }
            }
            ConstructNode::While { body, .. } | ConstructNode::For { body, .. } => f(body),
            ConstructNode::Repeat { body, .. } => body.iter_mut().for_each(f),
        }
    }
}

/// Recomputes every construct's depth as the number of enclosing constructs.
/// Blocks do not count. Idempotent.
pub fn annotate_nesting(mut program: Program) -> Program {
    fn walk(stmt: &mut Stmt, depth: u32) {
        match stmt {
            Stmt::Block(stmts) => stmts.iter_mut().for_each(|s| walk(s, depth)),
            Stmt::Construct(c) => {
                c.depth = depth;
                c.for_each_child_stmt_mut(|s| walk(s, depth + 1));
            }
            _ => {}
        }
    }
    program.body.iter_mut().for_each(|s| walk(s, 0));
    program
}
