use std::collections::HashMap;

use super::ast::{
    BinaryOp, CaseArm, CaseLabel, Construct, ConstructId, ConstructNode, Expr, ForDirection,
    Program, ScalarType, Stmt, UnaryOp, VarDecl, WriteArg,
};
use super::error::{FrontendError, Position};
use super::lexer::{Keyword, Operator, Punct, Token, TokenKind};

type PResult<T> = Result<T, FrontendError>;

/// Parses a token stream produced by [`tokenize`](super::tokenize) into a
/// program. Construct ids are assigned in source pre-order and depths are
/// filled in as the parser descends.
pub fn parse_program(tokens: &[Token]) -> PResult<Program> {
    if tokens.last().map(|t| &t.kind) != Some(&TokenKind::EndOfInput) {
        return Err(FrontendError::Syntax {
            pos: tokens.last().map(|t| t.pos).unwrap_or_default(),
            expected: "token stream terminated by end of input".into(),
            found: "unterminated stream".into(),
        });
    }
    let mut parser = Parser {
        tokens,
        idx: 0,
        next_id: 0,
        depth: 0,
        vars: HashMap::new(),
    };
    parser.program()
}

struct Parser<'t> {
    tokens: &'t [Token],
    idx: usize,
    next_id: u32,
    depth: u32,
    vars: HashMap<String, ScalarType>,
}

impl<'t> Parser<'t> {
    fn peek(&self) -> &'t Token {
        &self.tokens[self.idx]
    }

    fn peek_kind(&self) -> &'t TokenKind {
        &self.peek().kind
    }

    fn advance(&mut self) -> &'t Token {
        let tok = &self.tokens[self.idx];
        if self.idx + 1 < self.tokens.len() {
            self.idx += 1;
        }
        tok
    }

    fn error<T>(&self, expected: impl Into<String>) -> PResult<T> {
        let tok = self.peek();
        let found = match &tok.kind {
            TokenKind::EndOfInput => "end of input".to_string(),
            kind => format!("{kind} '{}'", tok.lexeme),
        };
        Err(FrontendError::Syntax {
            pos: tok.pos,
            expected: expected.into(),
            found,
        })
    }

    fn at_keyword(&self, kw: Keyword) -> bool {
        *self.peek_kind() == TokenKind::Keyword(kw)
    }

    fn at_punct(&self, p: Punct) -> bool {
        *self.peek_kind() == TokenKind::Punct(p)
    }

    fn at_op(&self, op: Operator) -> bool {
        *self.peek_kind() == TokenKind::Operator(op)
    }

    fn eat_keyword(&mut self, kw: Keyword) -> bool {
        let hit = self.at_keyword(kw);
        if hit {
            self.advance();
        }
        hit
    }

    fn eat_punct(&mut self, p: Punct) -> bool {
        let hit = self.at_punct(p);
        if hit {
            self.advance();
        }
        hit
    }

    fn expect_keyword(&mut self, kw: Keyword) -> PResult<&'t Token> {
        if self.at_keyword(kw) {
            Ok(self.advance())
        } else {
            self.error(kw.as_str())
        }
    }

    fn expect_punct(&mut self, p: Punct) -> PResult<&'t Token> {
        if self.at_punct(p) {
            Ok(self.advance())
        } else {
            self.error(format!("'{}'", p.as_str()))
        }
    }

    fn expect_op(&mut self, op: Operator) -> PResult<&'t Token> {
        if self.at_op(op) {
            Ok(self.advance())
        } else {
            self.error(format!("'{}'", op.as_str()))
        }
    }

    fn expect_ident(&mut self) -> PResult<(String, Position)> {
        if *self.peek_kind() == TokenKind::Identifier {
            let tok = self.advance();
            Ok((tok.lexeme.to_ascii_lowercase(), tok.pos))
        } else {
            self.error("identifier")
        }
    }

    fn lookup(&self, name: &str, pos: Position) -> PResult<ScalarType> {
        self.vars
            .get(name)
            .copied()
            .ok_or_else(|| FrontendError::Semantic {
                pos,
                message: format!("use of undeclared variable '{name}'"),
            })
    }

    fn program(&mut self) -> PResult<Program> {
        self.expect_keyword(Keyword::Program)?;
        let (name, _) = self.expect_ident()?;
        if self.eat_punct(Punct::LParen) {
            self.expect_ident()?;
            while self.eat_punct(Punct::Comma) {
                self.expect_ident()?;
            }
            self.expect_punct(Punct::RParen)?;
        }
        self.expect_punct(Punct::Semicolon)?;

        let mut vars = Vec::new();
        if self.eat_keyword(Keyword::Var) {
            loop {
                let mut names = vec![self.expect_ident()?];
                while self.eat_punct(Punct::Comma) {
                    names.push(self.expect_ident()?);
                }
                self.expect_punct(Punct::Colon)?;
                let ty = if self.eat_keyword(Keyword::Integer) {
                    ScalarType::Integer
                } else if self.eat_keyword(Keyword::Boolean) {
                    ScalarType::Boolean
                } else {
                    return self.error("type INTEGER or BOOLEAN");
                };
                self.expect_punct(Punct::Semicolon)?;
                for (name, pos) in names {
                    if self.vars.insert(name.clone(), ty).is_some() {
                        return Err(FrontendError::Semantic {
                            pos,
                            message: format!("variable '{name}' declared twice"),
                        });
                    }
                    vars.push(VarDecl { name, ty });
                }
                if *self.peek_kind() != TokenKind::Identifier {
                    break;
                }
            }
        }

        self.expect_keyword(Keyword::Begin)?;
        let body = self.statement_sequence()?;
        self.expect_keyword(Keyword::End)?;
        self.expect_punct(Punct::Dot)?;
        if *self.peek_kind() != TokenKind::EndOfInput {
            return self.error("end of input after final '.'");
        }
        Ok(Program { name, vars, body })
    }

    /// `stmt { ';' stmt }`, with empty statements dropped.
    fn statement_sequence(&mut self) -> PResult<Vec<Stmt>> {
        let mut stmts = Vec::new();
        loop {
            let stmt = self.statement()?;
            if stmt != Stmt::Empty {
                stmts.push(stmt);
            }
            if !self.eat_punct(Punct::Semicolon) {
                return Ok(stmts);
            }
        }
    }

    fn statement(&mut self) -> PResult<Stmt> {
        match self.peek_kind() {
            TokenKind::Identifier => self.simple_statement(),
            TokenKind::Keyword(Keyword::Begin) => {
                self.advance();
                let stmts = self.statement_sequence()?;
                self.expect_keyword(Keyword::End)?;
                Ok(Stmt::Block(stmts))
            }
            TokenKind::Keyword(kw) if kw.opens_construct() => {
                let kw = *kw;
                self.construct(kw).map(Stmt::Construct)
            }
            _ => Ok(Stmt::Empty),
        }
    }

    fn simple_statement(&mut self) -> PResult<Stmt> {
        let (name, pos) = self.expect_ident()?;
        if self.at_op(Operator::Assign) {
            self.lookup(&name, pos)?;
            self.advance();
            let value = self.expression()?;
            return Ok(Stmt::Assign {
                target: name,
                value,
            });
        }
        match name.as_str() {
            "write" | "writeln" => {
                let mut args = Vec::new();
                if self.eat_punct(Punct::LParen) {
                    if !self.at_punct(Punct::RParen) {
                        args.push(self.write_arg()?);
                        while self.eat_punct(Punct::Comma) {
                            args.push(self.write_arg()?);
                        }
                    }
                    self.expect_punct(Punct::RParen)?;
                }
                Ok(Stmt::Write {
                    newline: name == "writeln",
                    args,
                })
            }
            "readln" => {
                self.expect_punct(Punct::LParen)?;
                let (target, pos) = self.expect_ident()?;
                self.lookup(&target, pos)?;
                self.expect_punct(Punct::RParen)?;
                Ok(Stmt::Readln { target })
            }
            _ => self.error("':='"),
        }
    }

    fn write_arg(&mut self) -> PResult<WriteArg> {
        if let TokenKind::Str(text) = self.peek_kind() {
            self.advance();
            return Ok(WriteArg::Text(text.clone()));
        }
        self.expression().map(WriteArg::Expr)
    }

    fn construct(&mut self, kw: Keyword) -> PResult<Construct> {
        let id = ConstructId(self.next_id);
        self.next_id += 1;
        let depth = self.depth;
        self.advance();
        self.depth += 1;
        let node = match kw {
            Keyword::If => self.if_node(),
            Keyword::Case => self.case_node(),
            Keyword::While => self.while_node(),
            Keyword::Repeat => self.repeat_node(),
            Keyword::For => self.for_node(),
            _ => unreachable!("not a construct keyword: {kw:?}"),
        }?;
        self.depth -= 1;
        Ok(Construct { id, depth, node })
    }

    fn if_node(&mut self) -> PResult<ConstructNode> {
        let cond = self.expression()?;
        self.expect_keyword(Keyword::Then)?;
        let then_branch = Box::new(self.statement()?);
        let else_branch = if self.eat_keyword(Keyword::Else) {
            Some(Box::new(self.statement()?))
        } else {
            None
        };
        Ok(ConstructNode::If {
            cond,
            then_branch,
            else_branch,
        })
    }

    fn case_node(&mut self) -> PResult<ConstructNode> {
        let selector = self.expression()?;
        self.expect_keyword(Keyword::Of)?;
        let mut arms = Vec::new();
        let mut seen: Vec<(i64, i64, Position)> = Vec::new();
        while !self.at_keyword(Keyword::Else) && !self.at_keyword(Keyword::End) {
            let mut labels = Vec::new();
            loop {
                let pos = self.peek().pos;
                let label = self.case_label()?;
                let (lo, hi) = label.bounds();
                if lo > hi {
                    return Err(FrontendError::Semantic {
                        pos,
                        message: format!("empty CASE label range {lo}..{hi}"),
                    });
                }
                if let Some((plo, phi, _)) =
                    seen.iter().find(|(plo, phi, _)| lo <= *phi && *plo <= hi)
                {
                    return Err(FrontendError::Semantic {
                        pos,
                        message: format!(
                            "CASE label {lo}..{hi} overlaps earlier label {plo}..{phi}"
                        ),
                    });
                }
                seen.push((lo, hi, pos));
                labels.push(label);
                if !self.eat_punct(Punct::Comma) {
                    break;
                }
            }
            self.expect_punct(Punct::Colon)?;
            let body = self.statement()?;
            arms.push(CaseArm { labels, body });
            if !self.eat_punct(Punct::Semicolon) {
                break;
            }
        }
        if arms.is_empty() {
            return self.error("CASE label");
        }
        let else_branch = if self.eat_keyword(Keyword::Else) {
            Some(self.statement_sequence()?)
        } else {
            None
        };
        self.expect_keyword(Keyword::End)?;
        Ok(ConstructNode::Case {
            selector,
            arms,
            else_branch,
        })
    }

    fn case_label(&mut self) -> PResult<CaseLabel> {
        let lo = self.signed_constant()?;
        if self.at_op(Operator::Range) {
            self.advance();
            let hi = self.signed_constant()?;
            Ok(CaseLabel::Range(lo, hi))
        } else {
            Ok(CaseLabel::Value(lo))
        }
    }

    fn signed_constant(&mut self) -> PResult<i64> {
        let negative = if self.at_op(Operator::Minus) {
            self.advance();
            true
        } else {
            if self.at_op(Operator::Plus) {
                self.advance();
            }
            false
        };
        match self.peek_kind() {
            TokenKind::Integer(v) => {
                let v = *v;
                self.advance();
                Ok(if negative { -v } else { v })
            }
            _ => self.error("integer constant"),
        }
    }

    fn while_node(&mut self) -> PResult<ConstructNode> {
        let cond = self.expression()?;
        self.expect_keyword(Keyword::Do)?;
        let body = Box::new(self.statement()?);
        Ok(ConstructNode::While { cond, body })
    }

    fn repeat_node(&mut self) -> PResult<ConstructNode> {
        let body = self.statement_sequence()?;
        self.expect_keyword(Keyword::Until)?;
        let until = self.expression()?;
        Ok(ConstructNode::Repeat { body, until })
    }

    fn for_node(&mut self) -> PResult<ConstructNode> {
        let (var, pos) = self.expect_ident()?;
        if self.lookup(&var, pos)? != ScalarType::Integer {
            return Err(FrontendError::Semantic {
                pos,
                message: format!("FOR control variable '{var}' must be an integer"),
            });
        }
        self.expect_op(Operator::Assign)?;
        let start = self.expression()?;
        let direction = if self.eat_keyword(Keyword::To) {
            ForDirection::To
        } else if self.eat_keyword(Keyword::Downto) {
            ForDirection::Downto
        } else {
            return self.error("TO or DOWNTO");
        };
        let end = self.expression()?;
        self.expect_keyword(Keyword::Do)?;
        let body = Box::new(self.statement()?);
        Ok(ConstructNode::For {
            var,
            start,
            end,
            direction,
            body,
        })
    }

    fn expression(&mut self) -> PResult<Expr> {
        let lhs = self.simple_expression()?;
        let op = match self.peek_kind() {
            TokenKind::Operator(Operator::Eq) => BinaryOp::Eq,
            TokenKind::Operator(Operator::NotEq) => BinaryOp::NotEq,
            TokenKind::Operator(Operator::Less) => BinaryOp::Less,
            TokenKind::Operator(Operator::LessEq) => BinaryOp::LessEq,
            TokenKind::Operator(Operator::Greater) => BinaryOp::Greater,
            TokenKind::Operator(Operator::GreaterEq) => BinaryOp::GreaterEq,
            _ => return Ok(lhs),
        };
        self.advance();
        let rhs = self.simple_expression()?;
        Ok(Expr::binary(op, lhs, rhs))
    }

    fn simple_expression(&mut self) -> PResult<Expr> {
        let negate = match self.peek_kind() {
            TokenKind::Operator(Operator::Minus) => {
                self.advance();
                true
            }
            TokenKind::Operator(Operator::Plus) => {
                self.advance();
                false
            }
            _ => false,
        };
        let mut lhs = self.term()?;
        if negate {
            lhs = Expr::unary(UnaryOp::Neg, lhs);
        }
        loop {
            let op = match self.peek_kind() {
                TokenKind::Operator(Operator::Plus) => BinaryOp::Add,
                TokenKind::Operator(Operator::Minus) => BinaryOp::Sub,
                TokenKind::Keyword(Keyword::Or) => BinaryOp::Or,
                _ => return Ok(lhs),
            };
            self.advance();
            let rhs = self.term()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek_kind() {
                TokenKind::Operator(Operator::Star) => BinaryOp::Mul,
                TokenKind::Keyword(Keyword::Div) => BinaryOp::Div,
                TokenKind::Keyword(Keyword::Mod) => BinaryOp::Mod,
                TokenKind::Keyword(Keyword::And) => BinaryOp::And,
                _ => return Ok(lhs),
            };
            self.advance();
            let rhs = self.factor()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn factor(&mut self) -> PResult<Expr> {
        match self.peek_kind() {
            TokenKind::Integer(v) => {
                let v = *v;
                self.advance();
                Ok(Expr::Int(v))
            }
            TokenKind::Keyword(Keyword::True) => {
                self.advance();
                Ok(Expr::Bool(true))
            }
            TokenKind::Keyword(Keyword::False) => {
                self.advance();
                Ok(Expr::Bool(false))
            }
            TokenKind::Keyword(Keyword::Not) => {
                self.advance();
                Ok(Expr::unary(UnaryOp::Not, self.factor()?))
            }
            TokenKind::Identifier => {
                let (name, pos) = self.expect_ident()?;
                self.lookup(&name, pos)?;
                Ok(Expr::Var(name))
            }
            TokenKind::Punct(Punct::LParen) => {
                self.advance();
                let inner = self.expression()?;
                self.expect_punct(Punct::RParen)?;
                Ok(inner)
            }
            _ => self.error("expression"),
        }
    }
}
