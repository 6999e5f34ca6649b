//! Connected-sum expressions.
//!
//! ```text
//! expr := term ('#' term)*
//! term := [INT '*'] node
//! node := NAME | NAME '(' INT (',' INT)* ')' | 'rev' '(' node ')'
//! ```

use std::fmt;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Name(String),
    Call { name: String, args: Vec<u32> },
    Rev(Box<Node>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub multiplier: u32,
    pub node: Node,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExpressionAst {
    pub terms: Vec<Term>,
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Name(n) => f.write_str(n),
            Node::Call { name, args } => {
                let args: Vec<String> = args.iter().map(u32::to_string).collect();
                write!(f, "{name}({})", args.join(","))
            }
            Node::Rev(inner) => write!(f, "rev({inner})"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplier != 1 {
            write!(f, "{}*", self.multiplier)?;
        }
        write!(f, "{}", self.node)
    }
}

/// Canonical rendering; `parse(&ast.to_string())` gives back `ast`.
impl fmt::Display for ExpressionAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" # ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, CliError> {
        Err(CliError::Parse { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), CliError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected `{}`", c as char))
        }
    }

    fn int(&mut self) -> Result<u32, CliError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().or_else(|_| {
            self.pos = start;
            self.error(format!("integer `{text}` is too large"))
        })
    }

    fn name(&mut self) -> Result<String, CliError> {
        self.skip_ws();
        let start = self.pos;
        if !matches!(self.src.get(self.pos), Some(c) if c.is_ascii_alphabetic()) {
            return self.error("expected a block name");
        }
        while matches!(self.src.get(self.pos), Some(c) if c.is_ascii_alphanumeric() || *c == b'_') {
            self.pos += 1;
        }
        Ok(String::from_utf8(self.src[start..self.pos].to_vec()).expect("ascii name"))
    }

    fn node(&mut self) -> Result<Node, CliError> {
        let name = self.name()?;
        if self.peek() != Some(b'(') {
            return Ok(Node::Name(name));
        }
        self.pos += 1;
        if name == "rev" {
            let inner = self.node()?;
            self.expect(b')')?;
            return Ok(Node::Rev(Box::new(inner)));
        }
        let mut args = vec![self.int()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            args.push(self.int()?);
        }
        self.expect(b')')?;
        Ok(Node::Call { name, args })
    }

    fn term(&mut self) -> Result<Term, CliError> {
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let at = self.pos;
            let multiplier = self.int()?;
            if multiplier == 0 {
                self.pos = at;
                return self.error("multiplier must be positive");
            }
            self.expect(b'*')?;
            Ok(Term { multiplier, node: self.node()? })
        } else {
            Ok(Term { multiplier: 1, node: self.node()? })
        }
    }
}

pub fn parse(input: &str) -> Result<ExpressionAst, CliError> {
    let mut p = Parser { src: input.as_bytes(), pos: 0 };
    let mut terms = vec![p.term()?];
    while p.peek() == Some(b'#') {
        p.pos += 1;
        terms.push(p.term()?);
    }
    if p.peek().is_some() {
        return p.error("unexpected input");
    }
    Ok(ExpressionAst { terms })
}

/// Splits on `sep` outside parentheses.
pub fn split_top_level(input: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in input.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(input[start..i].trim());
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(input[start..].trim());
    out
}
