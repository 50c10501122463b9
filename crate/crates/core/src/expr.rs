//! Expressions in one variable `x` for user supplied superpotentials.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?          // right-associative
//! primary := number | 'x' | func '(' expr ')' | '(' expr ')'
//! func    := tanh | cosh | sinh | sech | exp | sqrt | abs
//! ```
//!
//! Unary minus binds looser than `^`, so `-x^2` is `-(x^2)`.

use std::fmt;

use thiserror::Error;

use crate::numerics::{Grid, SampledFunction};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at offset {offset}: expected {expected}")]
    Syntax { offset: usize, expected: String },

    #[error("unknown identifier '{name}' at offset {offset}")]
    UnknownIdentifier { offset: usize, name: String },

    #[error("non-finite value from '{expr}'")]
    NonFinite { expr: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }

    fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            BinOp::Add => a + b,
            BinOp::Sub => a - b,
            BinOp::Mul => a * b,
            BinOp::Div => a / b,
            BinOp::Pow => a.powf(b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Tanh,
    Cosh,
    Sinh,
    Sech,
    Exp,
    Sqrt,
    Abs,
}

impl Func {
    pub const ALL: [Func; 7] = [
        Func::Tanh,
        Func::Cosh,
        Func::Sinh,
        Func::Sech,
        Func::Exp,
        Func::Sqrt,
        Func::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Tanh => "tanh",
            Func::Cosh => "cosh",
            Func::Sinh => "sinh",
            Func::Sech => "sech",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    fn apply(self, v: f64) -> f64 {
        match self {
            Func::Tanh => v.tanh(),
            Func::Cosh => v.cosh(),
            Func::Sinh => v.sinh(),
            Func::Sech => 1.0 / v.cosh(),
            Func::Exp => v.exp(),
            Func::Sqrt => v.sqrt(),
            Func::Abs => v.abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprAst {
    Number(f64),
    X,
    Neg(Box<ExprAst>),
    Binary(BinOp, Box<ExprAst>, Box<ExprAst>),
    Call(Func, Box<ExprAst>),
}

/// Canonical, fully parenthesized form. Reparsing it yields the same AST.
impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprAst::Number(v) => write!(f, "{v:?}"),
            ExprAst::X => f.write_str("x"),
            ExprAst::Neg(a) => write!(f, "(-{a})"),
            ExprAst::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            ExprAst::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

impl std::str::FromStr for ExprAst {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, ExprError> {
        parse(s)
    }
}

impl ExprAst {
    pub fn eval(&self, x: f64) -> Result<f64, ExprError> {
        let v = match self {
            ExprAst::Number(v) => *v,
            ExprAst::X => x,
            ExprAst::Neg(a) => -a.eval(x)?,
            ExprAst::Binary(op, a, b) => op.apply(a.eval(x)?, b.eval(x)?),
            ExprAst::Call(func, a) => func.apply(a.eval(x)?),
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(ExprError::NonFinite {
                expr: self.to_string(),
            })
        }
    }

    pub fn sample(&self, grid: Grid) -> crate::Result<SampledFunction> {
        let values = grid
            .points()
            .enumerate()
            .map(|(index, x)| {
                self.eval(x)
                    .map_err(|source| crate::Error::Sample { index, x, source })
            })
            .collect::<crate::Result<Vec<_>>>()?;
        SampledFunction::new(grid, values)
    }
}

pub fn eval(ast: &ExprAst, x: f64) -> Result<f64, ExprError> {
    ast.eval(x)
}

pub fn sample(ast: &ExprAst, grid: Grid) -> crate::Result<SampledFunction> {
    ast.sample(grid)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    Open,
    Close,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Op(c) => format!("'{c}'"),
            Tok::Open => "'('".into(),
            Tok::Close => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn syntax(offset: usize, expected: impl Into<String>) -> ExprError {
    ExprError::Syntax {
        offset,
        expected: expected.into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                out.push((Tok::Op(c as char), i));
                i += 1;
            }
            b'(' => {
                out.push((Tok::Open, i));
                i += 1;
            }
            b')' => {
                out.push((Tok::Close, i));
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &src[start..i];
                let v: f64 = text
                    .parse()
                    .map_err(|_| syntax(start, "a well-formed number"))?;
                if !v.is_finite() {
                    return Err(syntax(start, "a finite number"));
                }
                out.push((Tok::Num(v), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
            }
            _ => return Err(syntax(i, "an operator, number, identifier or parenthesis")),
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<ExprAst, ExprError> {
        let mut lhs = self.term()?;
        while let Tok::Op(c @ ('+' | '-')) = *self.peek() {
            self.bump();
            let rhs = self.term()?;
            let op = if c == '+' { BinOp::Add } else { BinOp::Sub };
            lhs = ExprAst::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<ExprAst, ExprError> {
        let mut lhs = self.unary()?;
        while let Tok::Op(c @ ('*' | '/')) = *self.peek() {
            self.bump();
            let rhs = self.unary()?;
            let op = if c == '*' { BinOp::Mul } else { BinOp::Div };
            lhs = ExprAst::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<ExprAst, ExprError> {
        if *self.peek() == Tok::Op('-') {
            self.bump();
            return Ok(ExprAst::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<ExprAst, ExprError> {
        let base = self.primary()?;
        if *self.peek() == Tok::Op('^') {
            self.bump();
            let exponent = self.unary()?;
            return Ok(ExprAst::Binary(
                BinOp::Pow,
                Box::new(base),
                Box::new(exponent),
            ));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<ExprAst, ExprError> {
        let (tok, offset) = self.bump();
        match tok {
            Tok::Num(v) => Ok(ExprAst::Number(v)),
            Tok::Open => {
                let inner = self.expr()?;
                self.expect_close()?;
                Ok(inner)
            }
            Tok::Ident(name) if name == "x" => Ok(ExprAst::X),
            Tok::Ident(name) => {
                let func =
                    Func::from_name(&name).ok_or(ExprError::UnknownIdentifier { offset, name })?;
                if *self.peek() != Tok::Open {
                    return Err(syntax(self.offset(), format!("'(' after {}", func.name())));
                }
                self.bump();
                let arg = self.expr()?;
                self.expect_close()?;
                Ok(ExprAst::Call(func, Box::new(arg)))
            }
            other => Err(syntax(
                offset,
                format!("expression, found {}", other.describe()),
            )),
        }
    }

    fn expect_close(&mut self) -> Result<(), ExprError> {
        if *self.peek() == Tok::Close {
            self.bump();
            Ok(())
        } else {
            Err(syntax(
                self.offset(),
                format!("')', found {}", self.peek().describe()),
            ))
        }
    }
}

pub fn parse(src: &str) -> Result<ExprAst, ExprError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
    };
    let ast = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(
            p.offset(),
            format!("operator or end of input, found {}", p.peek().describe()),
        ));
    }
    Ok(ast)
}
