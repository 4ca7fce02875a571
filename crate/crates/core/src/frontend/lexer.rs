use std::fmt;

use super::error::{FrontendError, Position};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Keyword {
    Program,
    Var,
    Begin,
    End,
    If,
    Then,
    Else,
    Case,
    Of,
    While,
    Do,
    Repeat,
    Until,
    For,
    To,
    Downto,
    Div,
    Mod,
    And,
    Or,
    Not,
    Integer,
    Boolean,
    True,
    False,
}

impl Keyword {
    fn lookup(word: &str) -> Option<Keyword> {
        let kw = match word.to_ascii_lowercase().as_str() {
            "program" => Keyword::Program,
            "var" => Keyword::Var,
            "begin" => Keyword::Begin,
            "end" => Keyword::End,
            "if" => Keyword::If,
            "then" => Keyword::Then,
            "else" => Keyword::Else,
            "case" => Keyword::Case,
            "of" => Keyword::Of,
            "while" => Keyword::While,
            "do" => Keyword::Do,
            "repeat" => Keyword::Repeat,
            "until" => Keyword::Until,
            "for" => Keyword::For,
            "to" => Keyword::To,
            "downto" => Keyword::Downto,
            "div" => Keyword::Div,
            "mod" => Keyword::Mod,
            "and" => Keyword::And,
            "or" => Keyword::Or,
            "not" => Keyword::Not,
            "integer" => Keyword::Integer,
            "boolean" => Keyword::Boolean,
            "true" => Keyword::True,
            "false" => Keyword::False,
            _ => return None,
        };
        Some(kw)
    }

    /// Keywords that open one of the eight auralized constructs.
    pub fn opens_construct(self) -> bool {
        matches!(
            self,
            Keyword::If | Keyword::Case | Keyword::While | Keyword::Repeat | Keyword::For
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Keyword::Program => "PROGRAM",
            Keyword::Var => "VAR",
            Keyword::Begin => "BEGIN",
            Keyword::End => "END",
            Keyword::If => "IF",
            Keyword::Then => "THEN",
            Keyword::Else => "ELSE",
            Keyword::Case => "CASE",
            Keyword::Of => "OF",
            Keyword::While => "WHILE",
            Keyword::Do => "DO",
            Keyword::Repeat => "REPEAT",
            Keyword::Until => "UNTIL",
            Keyword::For => "FOR",
            Keyword::To => "TO",
            Keyword::Downto => "DOWNTO",
            Keyword::Div => "DIV",
            Keyword::Mod => "MOD",
            Keyword::And => "AND",
            Keyword::Or => "OR",
            Keyword::Not => "NOT",
            Keyword::Integer => "INTEGER",
            Keyword::Boolean => "BOOLEAN",
            Keyword::True => "TRUE",
            Keyword::False => "FALSE",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operator {
    Plus,
    Minus,
    Star,
    Eq,
    NotEq,
    Less,
    LessEq,
    Greater,
    GreaterEq,
    Assign,
    Range,
}

impl Operator {
    pub fn as_str(self) -> &'static str {
        match self {
            Operator::Plus => "+",
            Operator::Minus => "-",
            Operator::Star => "*",
            Operator::Eq => "=",
            Operator::NotEq => "<>",
            Operator::Less => "<",
            Operator::LessEq => "<=",
            Operator::Greater => ">",
            Operator::GreaterEq => ">=",
            Operator::Assign => ":=",
            Operator::Range => "..",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Punct {
    Semicolon,
    Colon,
    Comma,
    Dot,
    LParen,
    RParen,
}

impl Punct {
    pub fn as_str(self) -> &'static str {
        match self {
            Punct::Semicolon => ";",
            Punct::Colon => ":",
            Punct::Comma => ",",
            Punct::Dot => ".",
            Punct::LParen => "(",
            Punct::RParen => ")",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Keyword(Keyword),
    Identifier,
    Integer(i64),
    /// Decoded contents, with doubled quotes collapsed.
    Str(String),
    Operator(Operator),
    Punct(Punct),
    EndOfInput,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Keyword(k) => write!(f, "keyword {}", k.as_str()),
            TokenKind::Identifier => f.write_str("identifier"),
            TokenKind::Integer(_) => f.write_str("integer literal"),
            TokenKind::Str(_) => f.write_str("string literal"),
            TokenKind::Operator(op) => write!(f, "'{}'", op.as_str()),
            TokenKind::Punct(p) => write!(f, "'{}'", p.as_str()),
            TokenKind::EndOfInput => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// Source spelling, untouched.
    pub lexeme: String,
    pub pos: Position,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
    line: u32,
    column: u32,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            chars: src.char_indices().peekable(),
            src,
            line: 1,
            column: 1,
        }
    }

    fn pos(&self) -> Position {
        Position::new(self.line, self.column)
    }

    fn offset(&mut self) -> usize {
        self.chars.peek().map_or(self.src.len(), |&(i, _)| i)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next().map(|(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }
}

/// Splits Pascal source into tokens, skipping whitespace and `{ }` / `(* *)`
/// comments. The result always ends with an [`TokenKind::EndOfInput`] token.
pub fn tokenize(source: &str) -> Result<Vec<Token>, FrontendError> {
    let mut cur = Cursor::new(source);
    let mut tokens = Vec::new();

    loop {
        skip_trivia(&mut cur)?;
        let pos = cur.pos();
        let start = cur.offset();
        let Some(c) = cur.peek() else {
            tokens.push(Token {
                kind: TokenKind::EndOfInput,
                lexeme: String::new(),
                pos,
            });
            return Ok(tokens);
        };

        let kind = if c.is_ascii_alphabetic() || c == '_' {
            while matches!(cur.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                cur.bump();
            }
            let word = &source[start..cur.offset()];
            Keyword::lookup(word).map_or(TokenKind::Identifier, TokenKind::Keyword)
        } else if c.is_ascii_digit() {
            while matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
                cur.bump();
            }
            let digits = &source[start..cur.offset()];
            let value = digits.parse::<i64>().map_err(|_| FrontendError::Lexical {
                pos,
                message: format!("integer literal {digits} is out of range"),
            })?;
            TokenKind::Integer(value)
        } else if c == '\'' {
            TokenKind::Str(lex_string(&mut cur, pos)?)
        } else {
            cur.bump();
            let next = cur.peek();
            let two = |cur: &mut Cursor<'_>, kind| {
                cur.bump();
                kind
            };
            match (c, next) {
                (':', Some('=')) => two(&mut cur, TokenKind::Operator(Operator::Assign)),
                ('<', Some('>')) => two(&mut cur, TokenKind::Operator(Operator::NotEq)),
                ('<', Some('=')) => two(&mut cur, TokenKind::Operator(Operator::LessEq)),
                ('>', Some('=')) => two(&mut cur, TokenKind::Operator(Operator::GreaterEq)),
                ('.', Some('.')) => two(&mut cur, TokenKind::Operator(Operator::Range)),
                ('+', _) => TokenKind::Operator(Operator::Plus),
                ('-', _) => TokenKind::Operator(Operator::Minus),
                ('*', _) => TokenKind::Operator(Operator::Star),
                ('=', _) => TokenKind::Operator(Operator::Eq),
                ('<', _) => TokenKind::Operator(Operator::Less),
                ('>', _) => TokenKind::Operator(Operator::Greater),
                (';', _) => TokenKind::Punct(Punct::Semicolon),
                (':', _) => TokenKind::Punct(Punct::Colon),
                (',', _) => TokenKind::Punct(Punct::Comma),
                ('.', _) => TokenKind::Punct(Punct::Dot),
                ('(', _) => TokenKind::Punct(Punct::LParen),
                (')', _) => TokenKind::Punct(Punct::RParen),
                _ => {
                    return Err(FrontendError::Lexical {
                        pos,
                        message: format!("illegal character {c:?}"),
                    })
                }
            }
        };

        tokens.push(Token {
            kind,
            lexeme: source[start..cur.offset()].to_string(),
            pos,
        });
    }
}

fn skip_trivia(cur: &mut Cursor<'_>) -> Result<(), FrontendError> {
    loop {
        match cur.peek() {
            Some(c) if c.is_whitespace() => {
                cur.bump();
            }
            Some('{') => {
                let pos = cur.pos();
                cur.bump();
                loop {
                    match cur.bump() {
                        Some('}') => break,
                        Some(_) => {}
                        None => return Err(unterminated_comment(pos)),
                    }
                }
            }
            Some('(') if cur.peek2() == Some('*') => {
                let pos = cur.pos();
                cur.bump();
                cur.bump();
                loop {
                    match cur.bump() {
                        Some('*') if cur.peek() == Some(')') => {
                            cur.bump();
                            break;
                        }
                        Some(_) => {}
                        None => return Err(unterminated_comment(pos)),
                    }
                }
            }
            _ => return Ok(()),
        }
    }
}

fn unterminated_comment(pos: Position) -> FrontendError {
    FrontendError::Lexical {
        pos,
        message: "unterminated comment".into(),
    }
}

fn lex_string(cur: &mut Cursor<'_>, pos: Position) -> Result<String, FrontendError> {
    cur.bump();
    let mut text = String::new();
    loop {
        match cur.bump() {
            Some('\'') if cur.peek() == Some('\'') => {
                cur.bump();
                text.push('\'');
            }
            Some('\'') => return Ok(text),
            Some('\n') | None => {
                return Err(FrontendError::Lexical {
                    pos,
                    message: "unterminated string literal".into(),
                })
            }
            Some(c) => text.push(c),
        }
    }
}
