//! Recursive-descent parser for the LTL text grammar.
//!
//! Precedence, tightest first: unary (`!`, `X`, `F`, `G`), then `U`/`W`/`R`
//! (right associative), `&&`, `||`, `->` (right associative), `<->`.

use super::{Alphabet, BinaryOp, Formula, LtlError, UnaryOp};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    True,
    False,
    Unary(UnaryOp),
    Binary(BinaryOp),
    LParen,
    RParen,
}

fn describe(token: Option<&Token>) -> String {
    match token {
        None => "end of input".to_string(),
        Some(Token::Ident(name)) => format!("identifier `{name}`"),
        Some(Token::True) => "`true`".to_string(),
        Some(Token::False) => "`false`".to_string(),
        Some(Token::Unary(op)) => format!("`{}`", op.symbol()),
        Some(Token::Binary(op)) => format!("`{}`", op.symbol()),
        Some(Token::LParen) => "`(`".to_string(),
        Some(Token::RParen) => "`)`".to_string(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, LtlError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let token = match c {
            b'(' => {
                i += 1;
                Token::LParen
            }
            b')' => {
                i += 1;
                Token::RParen
            }
            b'!' => {
                i += 1;
                Token::Unary(UnaryOp::Not)
            }
            b'&' if bytes.get(i + 1) == Some(&b'&') => {
                i += 2;
                Token::Binary(BinaryOp::And)
            }
            b'|' if bytes.get(i + 1) == Some(&b'|') => {
                i += 2;
                Token::Binary(BinaryOp::Or)
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Token::Binary(BinaryOp::Implies)
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 3;
                Token::Binary(BinaryOp::Iff)
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                match &text[start..i] {
                    "true" => Token::True,
                    "false" => Token::False,
                    "X" => Token::Unary(UnaryOp::Next),
                    "F" => Token::Unary(UnaryOp::Finally),
                    "G" => Token::Unary(UnaryOp::Globally),
                    "U" => Token::Binary(BinaryOp::Until),
                    "W" => Token::Binary(BinaryOp::WeakUntil),
                    "R" => Token::Binary(BinaryOp::Release),
                    name => Token::Ident(name.to_string()),
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(LtlError::Syntax {
                    position: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((start, token));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn error<T>(&self, expected: &str) -> Result<T, LtlError> {
        Err(LtlError::Syntax {
            position: self.offset(),
            message: format!("expected {expected}, found {}", describe(self.peek())),
        })
    }

    fn eat_binary(&mut self, ops: &[BinaryOp]) -> Option<BinaryOp> {
        match self.peek() {
            Some(Token::Binary(op)) if ops.contains(op) => {
                let op = *op;
                self.pos += 1;
                Some(op)
            }
            _ => None,
        }
    }

    fn iff(&mut self) -> Result<Formula, LtlError> {
        let mut lhs = self.implies()?;
        while let Some(op) = self.eat_binary(&[BinaryOp::Iff]) {
            let rhs = self.implies()?;
            lhs = Formula::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula, LtlError> {
        let lhs = self.or()?;
        if let Some(op) = self.eat_binary(&[BinaryOp::Implies]) {
            let rhs = self.implies()?;
            return Ok(Formula::binary(op, lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, LtlError> {
        let mut lhs = self.and()?;
        while let Some(op) = self.eat_binary(&[BinaryOp::Or]) {
            let rhs = self.and()?;
            lhs = Formula::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, LtlError> {
        let mut lhs = self.temporal()?;
        while let Some(op) = self.eat_binary(&[BinaryOp::And]) {
            let rhs = self.temporal()?;
            lhs = Formula::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn temporal(&mut self) -> Result<Formula, LtlError> {
        let lhs = self.unary()?;
        if let Some(op) =
            self.eat_binary(&[BinaryOp::Until, BinaryOp::WeakUntil, BinaryOp::Release])
        {
            let rhs = self.temporal()?;
            return Ok(Formula::binary(op, lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, LtlError> {
        match self.peek().cloned() {
            Some(Token::Unary(op)) => {
                self.pos += 1;
                Ok(Formula::unary(op, self.unary()?))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(Formula::Atom(name))
            }
            Some(Token::True) => {
                self.pos += 1;
                Ok(Formula::tt())
            }
            Some(Token::False) => {
                self.pos += 1;
                Ok(Formula::ff())
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.iff()?;
                if self.peek() != Some(&Token::RParen) {
                    return self.error("`)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => self.error("a formula"),
        }
    }
}

/// Parse without checking atoms against an alphabet.
pub fn parse_formula(text: &str) -> Result<Formula, LtlError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, end: text.len() };
    let f = parser.iff()?;
    if parser.pos != parser.tokens.len() {
        return parser.error("end of input");
    }
    Ok(f)
}

/// Parse and require every atom to belong to `alphabet`.
pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Formula, LtlError> {
    let f = parse_formula(text)?;
    if let Some(unknown) = f.atoms().into_iter().find(|a| alphabet.index_of(a).is_none()) {
        return Err(LtlError::UnknownAtom(unknown.to_string()));
    }
    Ok(f)
}
