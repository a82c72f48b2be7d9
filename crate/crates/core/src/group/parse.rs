//! Recursive-descent parser for group expressions.
//!
//! ```text
//! expr    := product ('*' product)*
//! product := primary (('x' | '×') primary)*
//! primary := atom | '(' expr ')'
//! atom    := 'Z' ('^' int)? | 'F(' int ')' | 'BS(1,' int ')' | 'Klein' | 'B(' int ')'
//!          | 'Thompson' | 'T(' int ')' | 'L(' int ')' | 'Zmod(' int ')'
//! ```

use super::{AtomKind, GroupError, GroupExpr};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Word(String),
    Int(u64),
    LParen,
    RParen,
    Comma,
    Caret,
    Times,
    Star,
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, GroupError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let single = match c {
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            ',' => Some(Token::Comma),
            '^' => Some(Token::Caret),
            '*' => Some(Token::Star),
            '×' => Some(Token::Times),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            out.push((pos, tok));
        } else if c.is_ascii_digit() {
            let mut value: u64 = 0;
            while let Some(&(_, d)) = chars.peek().filter(|(_, d)| d.is_ascii_digit()) {
                value = value
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(d as u64 - '0' as u64))
                    .ok_or_else(|| GroupError::OutOfRange { position: pos, message: "integer too large".into() })?;
                chars.next();
            }
            out.push((pos, Token::Int(value)));
        } else if c.is_ascii_alphabetic() {
            let mut word = String::new();
            while let Some(&(_, d)) = chars.peek().filter(|(_, d)| d.is_ascii_alphanumeric()) {
                word.push(d);
                chars.next();
            }
            out.push((pos, if word == "x" { Token::Times } else { Token::Word(word) }));
        } else {
            return Err(GroupError::Syntax { position: pos, message: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn position(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|t| &t.1)
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, GroupError> {
        Err(GroupError::Syntax { position: self.position(), message: message.into() })
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<(), GroupError> {
        if self.peek() == Some(&want) {
            self.at += 1;
            Ok(())
        } else {
            self.syntax(format!("expected {what}"))
        }
    }

    fn int(&mut self) -> Result<(usize, u32), GroupError> {
        let pos = self.position();
        match self.peek() {
            Some(&Token::Int(v)) => {
                self.at += 1;
                let v = u32::try_from(v)
                    .map_err(|_| GroupError::OutOfRange { position: pos, message: "integer too large".into() })?;
                Ok((pos, v))
            }
            _ => self.syntax("expected integer"),
        }
    }

    fn paren_int(&mut self) -> Result<(usize, u32), GroupError> {
        self.expect(Token::LParen, "'('")?;
        let v = self.int()?;
        self.expect(Token::RParen, "')'")?;
        Ok(v)
    }

    fn expr(&mut self) -> Result<GroupExpr, GroupError> {
        let mut factors = vec![self.product()?];
        while self.peek() == Some(&Token::Star) {
            self.at += 1;
            let pos = self.position();
            let g = self.product()?;
            if g.is_trivial() {
                return Err(GroupError::Syntax { position: pos, message: format!("free product factor {g} is trivial") });
            }
            factors.push(g);
        }
        if factors.len() > 1 {
            if factors[0].is_trivial() {
                return Err(GroupError::Syntax { position: 0, message: format!("free product factor {} is trivial", factors[0]) });
            }
            GroupExpr::free(factors)
        } else {
            Ok(factors.pop().expect("one factor"))
        }
    }

    fn product(&mut self) -> Result<GroupExpr, GroupError> {
        let mut factors = vec![self.primary()?];
        while self.peek() == Some(&Token::Times) {
            self.at += 1;
            factors.push(self.primary()?);
        }
        Ok(GroupExpr::product_of(factors))
    }

    fn primary(&mut self) -> Result<GroupExpr, GroupError> {
        let pos = self.position();
        match self.peek().cloned() {
            Some(Token::LParen) => {
                self.at += 1;
                let g = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(g)
            }
            Some(Token::Word(word)) => {
                self.at += 1;
                let kind = self.atom(&word, pos)?;
                GroupExpr::atom(kind).map_err(|e| match e {
                    GroupError::OutOfRange { message, .. } => GroupError::OutOfRange { position: pos, message },
                    other => other,
                })
            }
            _ => self.syntax("expected a group"),
        }
    }

    fn atom(&mut self, word: &str, pos: usize) -> Result<AtomKind, GroupError> {
        let range = |message: String| Err(GroupError::OutOfRange { position: pos, message });
        Ok(match word {
            "Z" => {
                if self.peek() == Some(&Token::Caret) {
                    self.at += 1;
                    AtomKind::FreeAbelian(self.int()?.1)
                } else {
                    AtomKind::FreeAbelian(1)
                }
            }
            "F" => match self.paren_int()?.1 {
                1 => AtomKind::FreeAbelian(1),
                n => AtomKind::Free(n),
            },
            "BS" => {
                self.expect(Token::LParen, "'('")?;
                let (_, m) = self.int()?;
                self.expect(Token::Comma, "','")?;
                let (_, n) = self.int()?;
                self.expect(Token::RParen, "')'")?;
                if m != 1 {
                    return range(format!("BS({m},{n}) is unsupported; only BS(1,n) is in the catalog"));
                }
                AtomKind::BaumslagSolitar(n)
            }
            "Klein" => AtomKind::KleinBottle,
            "B" => match self.paren_int()?.1 {
                2 => AtomKind::FreeAbelian(1),
                n => AtomKind::Braid(n),
            },
            "Thompson" => AtomKind::ThompsonF,
            "T" => match self.paren_int()?.1 {
                2 => AtomKind::ThompsonF,
                n => AtomKind::GeneralizedThompson(n),
            },
            "L" => AtomKind::Lamplighter(self.paren_int()?.1),
            "Zmod" => AtomKind::FiniteCyclic(self.paren_int()?.1),
            other => {
                return Err(GroupError::Syntax { position: pos, message: format!("unknown group {other:?}") });
            }
        })
    }
}

/// Parses the textual group-expression grammar.
pub fn parse_group_expr(text: &str) -> Result<GroupExpr, GroupError> {
    let mut p = Parser { tokens: lex(text)?, at: 0, end: text.len() };
    let g = p.expr()?;
    if p.at != p.tokens.len() {
        return p.syntax("unexpected trailing input");
    }
    Ok(g)
}
