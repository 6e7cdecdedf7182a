//! Lexer, parser and printer for the expression language.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '·' | '/') unary)*
//! unary   := '-' unary | tensor
//! tensor  := power ('⊗' power)*
//! power   := atom ('^' '-'? INT)?
//! atom    := INT | 'q' | 'v' | element | NAME '(' args ')' | '(' expr ')'
//! element := ('u' | 'm' | 'e' | 'p' | 'P') '[' parts (';' parts)? ']'
//! ```
//!
//! Only `u` literals take a second partition, which is the degree-1 part.

use std::fmt;

use jordan_hall::symfunc::SymBasis;
use jordan_hall::Partition;
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {msg}{}", hint.as_ref().map(|h| format!(" (hint: {h})")).unwrap_or_default())]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
    pub hint: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Delta,
    Pair,
    Straighten,
    Natural,
    Psi,
    PsiInv,
    Theta,
    Hl,
    P,
    E,
    M,
    T,
}

impl Func {
    const ALL: [(&'static str, Func); 12] = [
        ("delta", Func::Delta),
        ("pair", Func::Pair),
        ("straighten", Func::Straighten),
        ("natural", Func::Natural),
        ("psi", Func::Psi),
        ("psi_inv", Func::PsiInv),
        ("theta", Func::Theta),
        ("hl", Func::Hl),
        ("p", Func::P),
        ("e", Func::E),
        ("m", Func::M),
        ("T", Func::T),
    ];

    pub fn name(self) -> &'static str {
        Func::ALL.iter().find(|(_, f)| *f == self).unwrap().0
    }

    fn from_name(s: &str) -> Option<Func> {
        Func::ALL.iter().find(|(n, _)| *n == s).map(|(_, f)| *f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Tensor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Q,
    V,
    /// `u[h0;h1]`.
    Root(Partition, Partition),
    Sym(SymBasis, Partition),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Call(Func, Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Semi,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Tensor,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Name(s) => format!("'{s}'"),
            Tok::End => "end of input".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBrack => "'['".into(),
            Tok::RBrack => "']'".into(),
            Tok::Comma => "','".into(),
            Tok::Semi => "';'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Tensor => "'⊗'".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l, cc) = (line, col);
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' | '·' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '⊗' => Some(Tok::Tensor),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line: l, col: cc });
            i += 1;
            col += 1;
        } else if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            i += 1;
            col += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned {
                tok: Tok::Int(s.parse().expect("digits")),
                line: l,
                col: cc,
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned {
                tok: Tok::Name(s),
                line: l,
                col: cc,
            });
        } else {
            return Err(ParseError {
                line: l,
                col: cc,
                msg: format!("unexpected character '{c}'"),
                hint: None,
            });
        }
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

/// Nesting limit, so hostile input cannot exhaust the stack.
const MAX_DEPTH: usize = 200;

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, msg: impl Into<String>, hint: Option<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError {
            line: t.line,
            col: t.col,
            msg: msg.into(),
            hint,
        }
    }

    fn expect(&mut self, want: Tok) -> Result<Spanned, ParseError> {
        if *self.peek() == want {
            Ok(self.bump())
        } else {
            Err(self.error_here(
                format!("expected {}, found {}", want.describe(), self.peek().describe()),
                None,
            ))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.depth >= MAX_DEPTH {
            return Err(self.error_here(format!("expression nested deeper than {MAX_DEPTH}"), None));
        }
        self.depth += 1;
        let out = if *self.peek() == Tok::Minus {
            self.bump();
            self.unary().map(|e| Expr::Neg(Box::new(e)))
        } else {
            self.tensor()
        };
        self.depth -= 1;
        out
    }

    fn tensor(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.power()?;
        while *self.peek() == Tok::Tensor {
            self.bump();
            let rhs = self.power()?;
            lhs = Expr::Bin(BinOp::Tensor, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let Tok::Int(n) = self.peek().clone() else {
            return Err(self.error_here(
                format!("expected an integer exponent, found {}", self.peek().describe()),
                None,
            ));
        };
        let e: i64 = i64::try_from(&n).map_err(|_| self.error_here("exponent too large", None))?;
        self.bump();
        Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Name(name) => self.named(&name),
            other => Err(self.error_here(format!("expected a value, found {}", other.describe()), None)),
        }
    }

    fn named(&mut self, name: &str) -> Result<Expr, ParseError> {
        let next = self.peek_at(1).clone();
        if next == Tok::LBrack {
            let basis = match name {
                "u" => None,
                _ => match SymBasis::from_symbol(name) {
                    Some(b) => Some(b),
                    None => {
                        return Err(self.error_here(
                            format!("'{name}' is not a basis; literals are u[..], m[..], e[..], p[..] or P[..]"),
                            None,
                        ))
                    }
                },
            };
            self.bump();
            self.bump();
            let h0 = self.parts(name)?;
            let h1 = if *self.peek() == Tok::Semi {
                if basis.is_some() {
                    return Err(self.error_here(
                        "only u[..] literals take a degree-1 part",
                        Some(format!("write {name}[..] with a single partition")),
                    ));
                }
                self.bump();
                self.parts(name)?
            } else {
                Partition::empty()
            };
            self.expect(Tok::RBrack)?;
            return Ok(match basis {
                None => Expr::Root(h0, h1),
                Some(b) => Expr::Sym(b, h0),
            });
        }
        if next == Tok::LParen {
            let Some(f) = Func::from_name(name) else {
                let known: Vec<_> = Func::ALL.iter().map(|(n, _)| *n).collect();
                return Err(self.error_here(
                    format!("unknown function '{name}'"),
                    Some(format!("known functions: {}", known.join(", "))),
                ));
            };
            self.bump();
            self.bump();
            let mut args = Vec::new();
            if *self.peek() != Tok::RParen {
                args.push(self.expr()?);
                while *self.peek() == Tok::Comma {
                    self.bump();
                    args.push(self.expr()?);
                }
            }
            self.expect(Tok::RParen)?;
            return Ok(Expr::Call(f, args));
        }
        let e = match name {
            "q" => Expr::Q,
            "v" => Expr::V,
            _ => {
                let hint = if Func::from_name(name).is_some() {
                    Some(format!("call it as {name}(..)"))
                } else {
                    None
                };
                return Err(self.error_here(format!("unknown name '{name}'"), hint));
            }
        };
        self.bump();
        Ok(e)
    }

    /// A comma list of positive parts, possibly empty, weakly decreasing.
    fn parts(&mut self, prefix: &str) -> Result<Partition, ParseError> {
        let mut parts: Vec<(usize, Spanned)> = Vec::new();
        if let Tok::Int(_) = self.peek() {
            loop {
                let t = self.bump();
                let Tok::Int(n) = &t.tok else { unreachable!() };
                let Ok(n) = usize::try_from(n) else {
                    return Err(ParseError {
                        line: t.line,
                        col: t.col,
                        msg: "part too large".into(),
                        hint: None,
                    });
                };
                parts.push((n, t));
                if *self.peek() != Tok::Comma {
                    break;
                }
                self.bump();
                if !matches!(self.peek(), Tok::Int(_)) {
                    return Err(self.error_here(format!("expected a part, found {}", self.peek().describe()), None));
                }
            }
        }
        if let Some((_, t)) = parts.iter().find(|(n, _)| *n == 0) {
            return Err(ParseError {
                line: t.line,
                col: t.col,
                msg: "parts must be positive".into(),
                hint: Some("drop zero parts".into()),
            });
        }
        if let Some(w) = parts.windows(2).find(|w| w[0].0 < w[1].0) {
            let mut sorted: Vec<usize> = parts.iter().map(|(n, _)| *n).collect();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            let fixed = sorted.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",");
            return Err(ParseError {
                line: w[1].1.line,
                col: w[1].1.col,
                msg: "parts must be weakly decreasing".into(),
                hint: Some(format!("write {prefix}[{fixed}]")),
            });
        }
        Ok(Partition::new(parts.into_iter().map(|(n, _)| n).collect()).expect("validated"))
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        depth: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error_here(format!("unexpected {}", p.peek().describe()), None));
    }
    Ok(e)
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
        Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
        Expr::Neg(_) => 3,
        Expr::Bin(BinOp::Tensor, ..) => 4,
        Expr::Pow(..) => 5,
        _ => 6,
    }
}

fn write_sub(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Q => f.write_str("q"),
            Expr::V => f.write_str("v"),
            Expr::Root(a, b) if b.is_empty() => write!(f, "u[{}]", a.render_parts()),
            Expr::Root(a, b) => write!(f, "u[{};{}]", a.render_parts(), b.render_parts()),
            Expr::Sym(b, l) => write!(f, "{}[{}]", b.symbol(), l.render_parts()),
            Expr::Neg(e) => {
                f.write_str("-")?;
                write_sub(f, e, 3)
            }
            Expr::Bin(op, a, b) => {
                let (sym, p) = match op {
                    BinOp::Add => (" + ", 1),
                    BinOp::Sub => (" - ", 1),
                    BinOp::Mul => ("*", 2),
                    BinOp::Div => ("/", 2),
                    BinOp::Tensor => ("⊗", 4),
                };
                write_sub(f, a, p)?;
                f.write_str(sym)?;
                // Left-associative: the right operand needs strictly higher precedence.
                write_sub(f, b, p + 1)
            }
            Expr::Pow(b, e) => {
                write_sub(f, b, 6)?;
                write!(f, "^{e}")
            }
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}
