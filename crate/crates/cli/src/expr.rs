//! Expression language for slice regular polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-'? atom ('^' uint)?
//! atom   := 'q' | decimal | 'i' | 'j' | 'k' | '(' expr ')'
//! ```
//!
//! Every `*` is the `*`-product and juxtaposition is rejected.

use std::fmt;

use slicereg::starpower::{star_power, MAX_DEGREE};
use slicereg::{Quaternion, SlicePoly};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Var,
    /// Non-negative literal; signs are carried by [`Expr::Neg`].
    Num(f64),
    Unit(Unit),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    I,
    J,
    K,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    /// Byte offset into the source.
    pub offset: usize,
    pub expected: Vec<&'static str>,
    /// The offending token, `None` at end of input.
    pub found: Option<String>,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let found = self.found.as_deref().unwrap_or("end of input");
        write!(
            f,
            "at byte {}: expected {}, found {found}",
            self.offset,
            self.expected.join(" or ")
        )
    }
}

impl std::error::Error for SyntaxError {}

const ATOM: [&str; 6] = ["'('", "'q'", "'i'", "'j'", "'k'", "number"];
const FACTOR: [&str; 7] = ["'-'", "'('", "'q'", "'i'", "'j'", "'k'", "number"];

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Q,
    Num(&'a str),
    Unit(Unit),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Bad(char),
    End,
}

impl Tok<'_> {
    fn describe(&self) -> Option<String> {
        Some(match self {
            Tok::Q => "'q'".into(),
            Tok::Num(s) => format!("number {s}"),
            Tok::Unit(u) => format!("'{}'", u.symbol()),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Bad(c) => format!("{c:?}"),
            Tok::End => return None,
        })
    }
}

impl Unit {
    fn symbol(self) -> char {
        match self {
            Unit::I => 'i',
            Unit::J => 'j',
            Unit::K => 'k',
        }
    }

    pub fn quaternion(self) -> Quaternion {
        match self {
            Unit::I => Quaternion::I,
            Unit::J => Quaternion::J,
            Unit::K => Quaternion::K,
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    /// Operators that could have extended the last complete factor.
    follow: Vec<&'static str>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Next token and its byte span, without consuming it.
    fn peek(&mut self) -> (Tok<'a>, usize, usize) {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let Some(&b) = bytes.get(start) else {
            return (Tok::End, start, start);
        };
        let one = |t| (t, start, start + 1);
        match b {
            b'q' => one(Tok::Q),
            b'i' => one(Tok::Unit(Unit::I)),
            b'j' => one(Tok::Unit(Unit::J)),
            b'k' => one(Tok::Unit(Unit::K)),
            b'+' => one(Tok::Plus),
            b'-' => one(Tok::Minus),
            b'*' => one(Tok::Star),
            b'^' => one(Tok::Caret),
            b'(' => one(Tok::LParen),
            b')' => one(Tok::RParen),
            b'0'..=b'9' | b'.' => {
                let end = number_end(bytes, start);
                if end == start {
                    one(Tok::Bad('.'))
                } else {
                    (Tok::Num(&self.src[start..end]), start, end)
                }
            }
            _ => {
                let c = self.src[start..].chars().next().expect("non-empty");
                (Tok::Bad(c), start, start + c.len_utf8())
            }
        }
    }

    fn fail<T>(&mut self, expected: Vec<&'static str>) -> Result<T, SyntaxError> {
        let (tok, start, _) = self.peek();
        Err(SyntaxError {
            offset: start,
            expected,
            found: tok.describe(),
        })
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            let (tok, _, end) = self.peek();
            let op: fn(Box<Expr>, Box<Expr>) -> Expr = match tok {
                Tok::Plus => Expr::Add,
                Tok::Minus => Expr::Sub,
                _ => return Ok(lhs),
            };
            self.pos = end;
            lhs = op(Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.factor()?;
        while let (Tok::Star, _, end) = self.peek() {
            self.pos = end;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, SyntaxError> {
        let neg = match self.peek() {
            (Tok::Minus, _, end) => {
                self.pos = end;
                true
            }
            _ => false,
        };
        let mut e = self.atom(neg)?;
        self.follow = vec!["'*'", "'+'", "'-'"];
        if let (Tok::Caret, _, end) = self.peek() {
            self.pos = end;
            e = Expr::Pow(Box::new(e), self.exponent()?);
        } else {
            self.follow.insert(0, "'^'");
        }
        Ok(if neg { Expr::Neg(Box::new(e)) } else { e })
    }

    fn exponent(&mut self) -> Result<u32, SyntaxError> {
        const WANT: &str = "unsigned integer at most 120";
        let (tok, _, end) = self.peek();
        let n = match tok {
            Tok::Num(s) if s.bytes().all(|b| b.is_ascii_digit()) => s.parse::<u32>().ok(),
            _ => None,
        };
        match n {
            Some(n) if n <= MAX_DEGREE => {
                self.pos = end;
                Ok(n)
            }
            _ => self.fail(vec![WANT]),
        }
    }

    fn atom(&mut self, after_minus: bool) -> Result<Expr, SyntaxError> {
        let (tok, _, end) = self.peek();
        let e = match tok {
            Tok::Q => Expr::Var,
            Tok::Unit(u) => Expr::Unit(u),
            Tok::Num(s) => match s.parse::<f64>() {
                Ok(x) if x.is_finite() => Expr::Num(x),
                _ => return self.fail(vec!["finite number"]),
            },
            Tok::LParen => {
                self.pos = end;
                let inner = self.expr()?;
                if !matches!(self.peek().0, Tok::RParen) {
                    let mut want = self.follow.clone();
                    want.push("')'");
                    return self.fail(want);
                }
                let (_, _, end) = self.peek();
                self.pos = end;
                return Ok(inner);
            }
            _ => return self.fail(if after_minus { ATOM.to_vec() } else { FACTOR.to_vec() }),
        };
        self.pos = end;
        Ok(e)
    }
}

/// End of a decimal literal `d+ ('.' d*)? | '.' d+`, with optional exponent.
fn number_end(b: &[u8], start: usize) -> usize {
    let digits = |mut i: usize| {
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        i
    };
    let mut i = digits(start);
    let int_digits = i - start;
    if i < b.len() && b[i] == b'.' {
        let j = digits(i + 1);
        if int_digits == 0 && j == i + 1 {
            return start;
        }
        i = j;
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        let mut j = i + 1;
        if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
            j += 1;
        }
        let k = digits(j);
        if k > j {
            i = k;
        }
    }
    i
}

pub fn parse(src: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser {
        src,
        pos: 0,
        follow: Vec::new(),
    };
    let e = p.expr()?;
    match p.peek().0 {
        Tok::End => Ok(e),
        _ => {
            let mut want = p.follow.clone();
            want.push("end of input");
            p.fail(want)
        }
    }
}

pub fn eval(e: &Expr) -> SlicePoly {
    match e {
        Expr::Var => SlicePoly::var(),
        Expr::Num(x) => SlicePoly::constant(Quaternion::real(*x)),
        Expr::Unit(u) => SlicePoly::constant(u.quaternion()),
        Expr::Neg(a) => -eval(a),
        Expr::Add(a, b) => &eval(a) + &eval(b),
        Expr::Sub(a, b) => &eval(a) - &eval(b),
        Expr::Mul(a, b) => eval(a).star_mul(&eval(b)),
        Expr::Pow(a, n) => star_power(&eval(a), *n),
    }
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(x) if x.is_sign_negative() => 3,
            _ => 5,
        }
    }
}

struct At<'a>(&'a Expr, u8);

impl fmt::Display for At<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.prec() >= self.1 {
            write!(f, "{}", self.0)
        } else {
            write!(f, "({})", self.0)
        }
    }
}

/// Prints source that parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var => write!(f, "q"),
            Expr::Num(x) if x.is_sign_negative() => write!(f, "-{}", -x),
            Expr::Num(x) => write!(f, "{x}"),
            Expr::Unit(u) => write!(f, "{}", u.symbol()),
            Expr::Neg(a) => write!(f, "-{}", At(a, 4)),
            Expr::Add(a, b) => write!(f, "{} + {}", At(a, 1), At(b, 2)),
            Expr::Sub(a, b) => write!(f, "{} - {}", At(a, 1), At(b, 2)),
            Expr::Mul(a, b) => write!(f, "{}*{}", At(a, 2), At(b, 3)),
            Expr::Pow(a, n) => write!(f, "{}^{n}", At(a, 5)),
        }
    }
}
