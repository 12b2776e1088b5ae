//! Syntax trees for expressions and model files.

use std::fmt;

use num_bigint::BigInt;

use crate::algebra::Grade;
use crate::frontend::lexer::Pos;

/// A lexical, syntactic or resolution error at a source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn at(pos: Pos, message: impl Into<String>) -> Self {
        ParseError { line: pos.line, col: pos.col, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Int(BigInt),
    Rational(BigInt, BigInt),
    /// The imaginary unit `i`.
    Imag,
    /// The deformation parameter `L`.
    Lambda,
    Ident(String),
    /// `O(L^n)`: the value is known through order `n − 1`.
    BigO(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    /// `a /\ b = a # b − b # a`.
    Wedge(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    /// `[a, b] = a*b − b*a`.
    Bracket(Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

impl Expr {
    pub fn new(kind: ExprKind, pos: Pos) -> Self {
        Expr { kind, pos }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorDecl {
    pub name: String,
    pub grade: Grade,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BracketDecl {
    pub left: String,
    pub right: String,
    pub value: Expr,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoproductDecl {
    pub generator: String,
    pub value: Expr,
    pub pos: Pos,
}

/// A model file: `algebra "name" { … }`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelFileAst {
    pub name: String,
    pub generators: Vec<GeneratorDecl>,
    pub brackets: Vec<BracketDecl>,
    pub coproducts: Vec<CoproductDecl>,
    pub twist: Option<Expr>,
}
