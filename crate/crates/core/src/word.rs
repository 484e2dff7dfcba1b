//! Words over named generators: `x^9`, `z^3 n^-1`, `[x,y]`, `(x y)^2`.
//!
//! Letters are separated by whitespace; `[a,b,c]` is left-normed.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    Letter(String),
    Product(Vec<Word>),
    Power(Box<Word>, i64),
    Commutator(Vec<Word>),
}

impl Word {
    pub fn parse(src: &str) -> Result<Word> {
        let mut p = Parser {
            chars: src.chars().collect(),
            pos: 0,
        };
        let w = p.product()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(Error::Parse(format!(
                "unexpected '{}' in word {src:?}",
                p.chars[p.pos]
            )));
        }
        Ok(w)
    }

    /// Evaluates the word with the supplied group operations.
    pub fn eval<E: Copy>(
        &self,
        lookup: &dyn Fn(&str) -> Option<E>,
        identity: E,
        mul: &dyn Fn(E, E) -> E,
        inv: &dyn Fn(E) -> E,
    ) -> Result<E> {
        Ok(match self {
            Word::Letter(name) => {
                lookup(name).ok_or_else(|| Error::Parse(format!("unknown letter {name}")))?
            }
            Word::Product(ws) => {
                let mut acc = identity;
                for w in ws {
                    acc = mul(acc, w.eval(lookup, identity, mul, inv)?);
                }
                acc
            }
            Word::Power(base, e) => {
                let mut b = base.eval(lookup, identity, mul, inv)?;
                if *e < 0 {
                    b = inv(b);
                }
                let mut acc = identity;
                for _ in 0..e.unsigned_abs() {
                    acc = mul(acc, b);
                }
                acc
            }
            Word::Commutator(ws) => {
                let mut acc = ws[0].eval(lookup, identity, mul, inv)?;
                for w in &ws[1..] {
                    let b = w.eval(lookup, identity, mul, inv)?;
                    acc = mul(mul(inv(acc), inv(b)), mul(acc, b));
                }
                acc
            }
        })
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn product(&mut self) -> Result<Word> {
        let mut terms = Vec::new();
        while let Some(c) = self.peek() {
            if c == ']' || c == ')' || c == ',' {
                break;
            }
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Word::Product(terms)
        })
    }

    fn term(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        if self.chars.get(self.pos) == Some(&'^') {
            self.pos += 1;
            let start = self.pos;
            if self.chars.get(self.pos) == Some(&'-') {
                self.pos += 1;
            }
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let s: String = self.chars[start..self.pos].iter().collect();
            let e = s
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad exponent {s:?}")))?;
            return Ok(Word::Power(Box::new(atom), e));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let mut parts = vec![self.product()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    parts.push(self.product()?);
                }
                self.expect(']')?;
                if parts.len() < 2 {
                    return Err(Error::Parse("commutator needs two entries".into()));
                }
                Ok(Word::Commutator(parts))
            }
            Some('(') => {
                self.pos += 1;
                let w = self.product()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('1') => {
                self.pos += 1;
                Ok(Word::Product(vec![]))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric()
                        || self.chars[self.pos] == '_'
                        || self.chars[self.pos] == '\'')
                {
                    self.pos += 1;
                }
                Ok(Word::Letter(self.chars[start..self.pos].iter().collect()))
            }
            Some(c) => Err(Error::Parse(format!("unexpected '{c}'"))),
            None => Err(Error::Parse("unexpected end of word".into())),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected '{c}'")))
        }
    }
}

/// A relation `lhs = rhs`; a bare word means `word = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub text: String,
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    pub fn parse(src: &str) -> Result<Relation> {
        let (l, r) = match src.split_once('=') {
            Some((l, r)) => (l, r),
            None => (src, "1"),
        };
        Ok(Relation {
            text: src.trim().to_string(),
            lhs: Word::parse(l)?,
            rhs: Word::parse(r)?,
        })
    }
}
