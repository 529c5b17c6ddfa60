//! Line-oriented input language for rings, modules, and commands.
//!
//! Grammar (statements end with `;`):
//!   ring  NAME = Fp[var:weight, ...]/(g1, ...);
//!   module NAME = coker RING [[e11, e12], [e21, e22]];
//!   module NAME = quotient RING (g1, ...);
//!   module NAME = free RING rank;
//!   module NAME = syzygy NAME | dual NAME | sum NAME NAME ...;
//!   compute OP arg ...;
//!   verify SUITE --flag value ...;
//!
//! Polynomial entries use infix notation (`x^2*y - 3*x`). Parsing keeps the
//! entries as text; elaboration validates them against the declared ring.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Ring {
        name: String,
        p: u32,
        vars: Vec<(String, u32)>,
        rels: Vec<String>,
    },
    Module {
        name: String,
        expr: ModExpr,
    },
    Compute {
        op: String,
        args: Vec<Arg>,
    },
    Verify {
        suite: String,
        flags: Vec<(String, Option<String>)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModExpr {
    Coker { ring: String, rows: Vec<Vec<String>> },
    Quotient { ring: String, gens: Vec<String> },
    Free { ring: String, rank: usize },
    Syzygy(String),
    Dual(String),
    Sum(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Int(i64),
    Name(String),
}

#[derive(Clone, Debug)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}: {}", self.line, self.col, self.message)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: self.line,
            col: self.col,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_whitespace() => {
                    self.bump();
                }
                Some(b'#') => {
                    while let Some(c) = self.peek() {
                        if c == b'\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(x) if x == c => {
                self.bump();
                Ok(())
            }
            Some(x) => self.err(format!("expected `{}`, found `{}`", c as char, x as char)),
            None => self.err(format!("expected `{}`, found end of input", c as char)),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let mut s = String::new();
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {}
            _ => return self.err("expected identifier"),
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'_' {
                s.push(c as char);
                self.bump();
            } else {
                break;
            }
        }
        Ok(s)
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let mut s = String::new();
        if self.peek() == Some(b'-') {
            s.push('-');
            self.bump();
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c as char);
                self.bump();
            } else {
                break;
            }
        }
        if s.is_empty() || s == "-" {
            return self.err("expected integer");
        }
        s.parse().or_else(|_| self.err("integer out of range"))
    }

    /// Raw text until a top-level `,` or any of `stops`; parentheses nest.
    fn raw_until(&mut self, stops: &[u8]) -> Result<String, ParseError> {
        self.skip_ws();
        let mut s = String::new();
        let mut depth = 0usize;
        loop {
            match self.peek() {
                None => return self.err("unterminated expression"),
                Some(b'(') => {
                    depth += 1;
                    s.push('(');
                    self.bump();
                }
                Some(b')') if depth > 0 => {
                    depth -= 1;
                    s.push(')');
                    self.bump();
                }
                Some(c) if depth == 0 && (c == b',' || stops.contains(&c)) => break,
                Some(b')') => return self.err("unbalanced `)`"),
                Some(c) => {
                    s.push(c as char);
                    self.bump();
                }
            }
        }
        let t = s.trim().to_string();
        if t.is_empty() {
            return self.err("empty expression");
        }
        Ok(t)
    }

    fn comma_list_until(&mut self, close: u8) -> Result<Vec<String>, ParseError> {
        let mut out = Vec::new();
        self.skip_ws();
        if self.peek() == Some(close) {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(self.raw_until(&[close])?);
            self.skip_ws();
            match self.peek() {
                Some(b',') => {
                    self.bump();
                }
                Some(c) if c == close => {
                    self.bump();
                    break;
                }
                _ => return self.err(format!("expected `,` or `{}`", close as char)),
            }
        }
        Ok(out)
    }

    fn ring_stmt(&mut self) -> Result<Stmt, ParseError> {
        let name = self.ident()?;
        self.expect(b'=')?;
        self.skip_ws();
        match self.peek() {
            Some(b'F') => {
                self.bump();
            }
            _ => return self.err("expected field spec `Fp[...]`"),
        }
        let p = self.integer()?;
        if p < 2 {
            return self.err("field characteristic must be a prime >= 2");
        }
        self.expect(b'[')?;
        let mut vars = Vec::new();
        loop {
            let v = self.ident()?;
            self.skip_ws();
            let w = if self.peek() == Some(b':') {
                self.bump();
                let w = self.integer()?;
                if w < 1 {
                    return self.err("weights must be positive");
                }
                w as u32
            } else {
                1
            };
            vars.push((v, w));
            self.skip_ws();
            match self.peek() {
                Some(b',') => {
                    self.bump();
                }
                Some(b']') => {
                    self.bump();
                    break;
                }
                _ => return self.err("expected `,` or `]` in variable list"),
            }
        }
        self.skip_ws();
        let rels = if self.peek() == Some(b'/') {
            self.bump();
            self.expect(b'(')?;
            self.comma_list_until(b')')?
        } else {
            Vec::new()
        };
        self.expect(b';')?;
        Ok(Stmt::Ring {
            name,
            p: p as u32,
            vars,
            rels,
        })
    }

    fn matrix(&mut self) -> Result<Vec<Vec<String>>, ParseError> {
        self.expect(b'[')?;
        let mut rows = Vec::new();
        loop {
            self.expect(b'[')?;
            rows.push(self.comma_list_until(b']')?);
            self.skip_ws();
            match self.peek() {
                Some(b',') => {
                    self.bump();
                }
                Some(b']') => {
                    self.bump();
                    break;
                }
                _ => return self.err("expected `,` or `]` after matrix row"),
            }
        }
        Ok(rows)
    }

    fn module_stmt(&mut self) -> Result<Stmt, ParseError> {
        let name = self.ident()?;
        self.expect(b'=')?;
        let kw = self.ident()?;
        let expr = match kw.as_str() {
            "coker" => {
                let ring = self.ident()?;
                let rows = self.matrix()?;
                ModExpr::Coker { ring, rows }
            }
            "quotient" => {
                let ring = self.ident()?;
                self.expect(b'(')?;
                let gens = self.comma_list_until(b')')?;
                ModExpr::Quotient { ring, gens }
            }
            "free" => {
                let ring = self.ident()?;
                let rank = self.integer()?;
                if rank < 0 {
                    return self.err("rank must be nonnegative");
                }
                ModExpr::Free {
                    ring,
                    rank: rank as usize,
                }
            }
            "syzygy" => ModExpr::Syzygy(self.ident()?),
            "dual" => ModExpr::Dual(self.ident()?),
            "sum" => {
                let mut parts = vec![self.ident()?];
                loop {
                    self.skip_ws();
                    if self.peek() == Some(b';') {
                        break;
                    }
                    parts.push(self.ident()?);
                }
                ModExpr::Sum(parts)
            }
            other => return self.err(format!("unknown module constructor `{}`", other)),
        };
        self.expect(b';')?;
        Ok(Stmt::Module { name, expr })
    }

    fn compute_stmt(&mut self) -> Result<Stmt, ParseError> {
        let op = self.ident()?;
        let mut args = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b';') => {
                    self.bump();
                    break;
                }
                Some(c) if c.is_ascii_digit() || c == b'-' => args.push(Arg::Int(self.integer()?)),
                Some(_) => args.push(Arg::Name(self.ident()?)),
                None => return self.err("expected `;`"),
            }
        }
        Ok(Stmt::Compute { op, args })
    }

    fn verify_stmt(&mut self) -> Result<Stmt, ParseError> {
        let suite = self.ident()?;
        let mut flags = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b';') => {
                    self.bump();
                    break;
                }
                Some(b'-') => {
                    self.bump();
                    if self.peek() == Some(b'-') {
                        self.bump();
                    }
                    let key = self.flag_name()?;
                    self.skip_ws();
                    let value = match self.peek() {
                        Some(c) if c.is_ascii_digit() => Some(self.integer()?.to_string()),
                        _ => None,
                    };
                    flags.push((key, value));
                }
                _ => return self.err("expected `--flag` or `;`"),
            }
        }
        Ok(Stmt::Verify { suite, flags })
    }

    fn flag_name(&mut self) -> Result<String, ParseError> {
        let mut s = self.ident()?;
        while self.peek() == Some(b'-') {
            self.bump();
            s.push('-');
            s.push_str(&self.ident()?);
        }
        Ok(s)
    }

    fn script(&mut self) -> Result<Script, ParseError> {
        let mut stmts = Vec::new();
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
            let kw = self.ident()?;
            let stmt = match kw.as_str() {
                "ring" => self.ring_stmt()?,
                "module" => self.module_stmt()?,
                "compute" => self.compute_stmt()?,
                "verify" => self.verify_stmt()?,
                other => return self.err(format!("unknown statement `{}`", other)),
            };
            stmts.push(stmt);
        }
        Ok(Script { stmts })
    }
}

pub fn parse(text: &str) -> Result<Script, ParseError> {
    Parser::new(text).script()
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for stmt in &self.stmts {
            writeln!(f, "{}", stmt)?;
        }
        Ok(())
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Ring { name, p, vars, rels } => {
                let vs: Vec<String> = vars.iter().map(|(v, w)| format!("{}:{}", v, w)).collect();
                write!(f, "ring {} = F{}[{}]", name, p, vs.join(", "))?;
                if !rels.is_empty() {
                    write!(f, "/({})", rels.join(", "))?;
                }
                write!(f, ";")
            }
            Stmt::Module { name, expr } => write!(f, "module {} = {};", name, expr),
            Stmt::Compute { op, args } => {
                write!(f, "compute {}", op)?;
                for a in args {
                    match a {
                        Arg::Int(i) => write!(f, " {}", i)?,
                        Arg::Name(n) => write!(f, " {}", n)?,
                    }
                }
                write!(f, ";")
            }
            Stmt::Verify { suite, flags } => {
                write!(f, "verify {}", suite)?;
                for (k, v) in flags {
                    match v {
                        Some(v) => write!(f, " --{} {}", k, v)?,
                        None => write!(f, " --{}", k)?,
                    }
                }
                write!(f, ";")
            }
        }
    }
}

impl fmt::Display for ModExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModExpr::Coker { ring, rows } => {
                let rs: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect();
                write!(f, "coker {} [{}]", ring, rs.join(", "))
            }
            ModExpr::Quotient { ring, gens } => write!(f, "quotient {} ({})", ring, gens.join(", ")),
            ModExpr::Free { ring, rank } => write!(f, "free {} {}", ring, rank),
            ModExpr::Syzygy(m) => write!(f, "syzygy {}", m),
            ModExpr::Dual(m) => write!(f, "dual {}", m),
            ModExpr::Sum(parts) => write!(f, "sum {}", parts.join(" ")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spec_example() {
        let s = parse("ring R = F5[x:1, y:1]/(x*y); module M = coker R [[x]]; compute ext 1 M M;")
            .unwrap();
        assert_eq!(s.stmts.len(), 3);
        match &s.stmts[2] {
            Stmt::Compute { op, args } => {
                assert_eq!(op, "ext");
                assert_eq!(
                    args,
                    &vec![
                        Arg::Int(1),
                        Arg::Name("M".into()),
                        Arg::Name("M".into())
                    ]
                );
            }
            _ => panic!("expected compute"),
        }
    }

    #[test]
    fn parses_verify_flags() {
        let s = parse("verify fitting --exhaustive --max-dim 3;").unwrap();
        match &s.stmts[0] {
            Stmt::Verify { suite, flags } => {
                assert_eq!(suite, "fitting");
                assert_eq!(
                    flags,
                    &vec![
                        ("exhaustive".to_string(), None),
                        ("max-dim".to_string(), Some("3".to_string()))
                    ]
                );
            }
            _ => panic!("expected verify"),
        }
    }

    #[test]
    fn roundtrip_through_pretty_printer() {
        let text = "ring R = F5[x:2, y:3]/(y^2 - x^3);\n\
                    module M = coker R [[x, y], [0, x^2]];\n\
                    module S = quotient R (x);\n\
                    module D = dual M;\n\
                    module Z = syzygy M;\n\
                    module W = sum M S;\n\
                    compute ext 1 M S;\n\
                    verify minsyz --samples 10 --seed 42;";
        let a = parse(text).unwrap();
        let b = parse(&a.to_string()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn error_carries_position() {
        let e = parse("ring R = F5[x:1];\nmodule M = coker R [[x)]];").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.col > 1);
    }

    #[test]
    fn comments_are_skipped() {
        let s = parse("# header\nring R = F2[x]; # trailing\ncompute depth_ring R;").unwrap();
        assert_eq!(s.stmts.len(), 2);
    }
}
