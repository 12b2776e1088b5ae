//! Recursive-descent parser for expressions and model files, and the
//! evaluator from expression trees to exact elements.
//!
//! Precedence, loosest first: binary `+ -`, unary `-`, `#` and `/\`,
//! `*`, `^`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::{AlgebraElement, Grade, LiePresentation};
use crate::frontend::ast::{BracketDecl, CoproductDecl, Expr, ExprKind, GeneratorDecl, ModelFileAst, ParseError};
use crate::frontend::lexer::{tokenize, Pos, Tok, Token};
use crate::hopf::{CoproductMap, TwistSeries};
use crate::scalar::GaussianRational;
use crate::series::{series_exp, AlgebraSeries, DeformationSeries, TensorSeries};
use crate::tensor::{tensor_multiply, TensorElement};

const RESERVED: [&str; 4] = ["i", "L", "O", "exp"];

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: tokenize(text)?, at: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, ParseError> {
        Err(ParseError::at(self.pos(), format!("expected {wanted}, found {}", self.peek().describe())))
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<Pos, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump().pos)
        } else {
            self.unexpected(wanted)
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => Ok((s, self.bump().pos)),
            _ => self.unexpected("identifier"),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Pos, ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => Ok(self.bump().pos),
            _ => self.unexpected(&format!("`{kw}`")),
        }
    }

    fn small_int(&mut self) -> Result<u32, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                n.to_u32().ok_or_else(|| ParseError::at(pos, "exponent too large"))
            }
            _ => self.unexpected("integer exponent"),
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let pos = self.pos();
            let kind = match self.peek() {
                Tok::Plus => ExprKind::Add as fn(Box<Expr>, Box<Expr>) -> ExprKind,
                Tok::Minus => ExprKind::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::new(kind(Box::new(lhs), Box::new(rhs)), pos);
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            let pos = self.bump().pos;
            let inner = self.unary()?;
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), pos));
        }
        self.tensor()
    }

    fn tensor(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            let pos = self.pos();
            let kind = match self.peek() {
                Tok::Hash => ExprKind::Tensor as fn(Box<Expr>, Box<Expr>) -> ExprKind,
                Tok::Wedge => ExprKind::Wedge,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.product()?;
            lhs = Expr::new(kind(Box::new(lhs), Box::new(rhs)), pos);
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.power()?;
        while *self.peek() == Tok::Star {
            let pos = self.bump().pos;
            let rhs = self.power()?;
            lhs = Expr::new(ExprKind::Mul(Box::new(lhs), Box::new(rhs)), pos);
        }
        Ok(lhs)
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if *self.peek() == Tok::Caret {
            let pos = self.bump().pos;
            let n = self.small_int()?;
            return Ok(Expr::new(ExprKind::Pow(Box::new(base), n), pos));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let dpos = self.pos();
                    let d = match self.peek().clone() {
                        Tok::Int(d) => d,
                        _ => return self.unexpected("denominator"),
                    };
                    self.bump();
                    if d.is_zero() {
                        return Err(ParseError::at(dpos, "zero denominator"));
                    }
                    return Ok(Expr::new(ExprKind::Rational(n, d), pos));
                }
                Ok(Expr::new(ExprKind::Int(n), pos))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::LBracket => {
                self.bump();
                let a = self.sum()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.sum()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(Expr::new(ExprKind::Bracket(Box::new(a), Box::new(b)), pos))
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() == Tok::LParen && name == "O" {
                    self.bump();
                    self.keyword("L")?;
                    let n = if *self.peek() == Tok::Caret {
                        self.bump();
                        self.small_int()? as usize
                    } else {
                        1
                    };
                    self.expect(Tok::RParen, "`)`")?;
                    if n == 0 {
                        return Err(ParseError::at(pos, "O(L^0) leaves nothing known"));
                    }
                    return Ok(Expr::new(ExprKind::BigO(n), pos));
                }
                if *self.peek() == Tok::LParen {
                    self.bump();
                    let mut args = vec![self.sum()?];
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        args.push(self.sum()?);
                    }
                    self.expect(Tok::RParen, "`)`")?;
                    return Ok(Expr::new(ExprKind::Call(name, args), pos));
                }
                let kind = match name.as_str() {
                    "i" => ExprKind::Imag,
                    "L" => ExprKind::Lambda,
                    _ => ExprKind::Ident(name),
                };
                Ok(Expr::new(kind, pos))
            }
            _ => self.unexpected("expression"),
        }
    }

    fn model(&mut self) -> Result<ModelFileAst, ParseError> {
        self.keyword("algebra")?;
        let name = match self.peek().clone() {
            Tok::Str(s) => {
                self.bump();
                s
            }
            _ => return self.unexpected("quoted algebra name"),
        };
        self.expect(Tok::LBrace, "`{`")?;
        let mut ast =
            ModelFileAst { name, generators: Vec::new(), brackets: Vec::new(), coproducts: Vec::new(), twist: None };
        while *self.peek() != Tok::RBrace {
            let (kw, pos) = self.ident()?;
            match kw.as_str() {
                "generator" => {
                    let mut names = vec![self.ident()?];
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        names.push(self.ident()?);
                    }
                    self.expect(Tok::Colon, "`:`")?;
                    let (g, gpos) = self.ident()?;
                    let grade = Grade::from_keyword(&g).ok_or_else(|| {
                        ParseError::at(gpos, format!("unknown grade `{g}` (momentum, rotation or boost)"))
                    })?;
                    for (name, pos) in names {
                        ast.generators.push(GeneratorDecl { name, grade, pos });
                    }
                }
                "bracket" => {
                    self.expect(Tok::LBracket, "`[`")?;
                    let (left, _) = self.ident()?;
                    self.expect(Tok::Comma, "`,`")?;
                    let (right, _) = self.ident()?;
                    self.expect(Tok::RBracket, "`]`")?;
                    self.expect(Tok::Eq, "`=`")?;
                    let value = self.sum()?;
                    ast.brackets.push(BracketDecl { left, right, value, pos });
                }
                "coproduct" => {
                    let (generator, _) = self.ident()?;
                    self.expect(Tok::Eq, "`=`")?;
                    let value = self.sum()?;
                    ast.coproducts.push(CoproductDecl { generator, value, pos });
                }
                "twist" => {
                    self.expect(Tok::Eq, "`=`")?;
                    if ast.twist.is_some() {
                        return Err(ParseError::at(pos, "twist declared twice"));
                    }
                    ast.twist = Some(self.sum()?);
                }
                other => {
                    return Err(ParseError::at(
                        pos,
                        format!("unknown declaration `{other}` (generator, bracket, coproduct or twist)"),
                    ))
                }
            }
            self.expect(Tok::Semi, "`;`")?;
        }
        self.bump();
        self.expect(Tok::Eof, "end of input")?;
        Ok(ast)
    }
}

/// Parses an expression into its syntax tree.
pub fn parse_expression_ast(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.sum()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(e)
}

/// Parses a model file into its syntax tree, without resolving names.
pub fn parse_model(text: &str) -> Result<ModelFileAst, ParseError> {
    Parser::new(text)?.model()
}

/// A series in `L` with tensor coefficients; `legs == 0` is a scalar.
/// `truncation == None` means exact.
#[derive(Clone, Debug)]
struct Value {
    legs: usize,
    orders: BTreeMap<usize, TensorElement>,
    truncation: Option<usize>,
}

fn min_opt(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

struct Evaluator<'a> {
    pres: &'a Arc<LiePresentation>,
}

impl Evaluator<'_> {
    fn scalar(&self, c: GaussianRational) -> Value {
        let mut orders = BTreeMap::new();
        if !c.is_zero() {
            orders.insert(0, TensorElement::monomial(self.pres, vec![], c));
        }
        Value { legs: 0, orders, truncation: None }
    }

    fn promote(&self, v: Value, legs: usize, pos: Pos) -> Result<Value, ParseError> {
        if v.legs == legs {
            return Ok(v);
        }
        if v.legs != 0 {
            return Err(ParseError::at(pos, format!("cannot combine {}-leg and {legs}-leg values", v.legs)));
        }
        let unit = TensorElement::unit(self.pres, legs);
        let orders = v.orders.into_iter().map(|(n, c)| (n, unit.scale(&c.coefficient(&[])))).collect();
        Ok(Value { legs, orders, truncation: v.truncation })
    }

    fn valuation(v: &Value) -> Option<usize> {
        v.orders.keys().next().copied().or(v.truncation.map(|t| t + 1))
    }

    fn clip(mut v: Value) -> Value {
        if let Some(t) = v.truncation {
            v.orders.retain(|&n, c| n <= t && !c.is_zero());
        } else {
            v.orders.retain(|_, c| !c.is_zero());
        }
        v
    }

    fn add(&self, a: Value, b: Value, pos: Pos) -> Result<Value, ParseError> {
        let legs = a.legs.max(b.legs);
        let a = self.promote(a, legs, pos)?;
        let b = self.promote(b, legs, pos)?;
        let mut orders = a.orders;
        for (n, c) in b.orders {
            let sum = match orders.remove(&n) {
                Some(x) => &x + &c,
                None => c,
            };
            orders.insert(n, sum);
        }
        Ok(Self::clip(Value { legs, orders, truncation: min_opt(a.truncation, b.truncation) }))
    }

    fn neg(&self, v: Value) -> Value {
        let orders = v.orders.into_iter().map(|(n, c)| (n, -&c)).collect();
        Value { orders, ..v }
    }

    /// Cauchy product with the truncation of a product of truncated series.
    fn convolve(
        a: &Value,
        b: &Value,
        legs: usize,
        zero: TensorElement,
        op: impl Fn(&TensorElement, &TensorElement) -> TensorElement,
    ) -> Value {
        let trunc_a = a.truncation.map(|t| Self::valuation(b).map_or(usize::MAX, |v| t + v));
        let trunc_b = b.truncation.map(|t| Self::valuation(a).map_or(usize::MAX, |v| t + v));
        let truncation = min_opt(trunc_a, trunc_b).filter(|&t| t != usize::MAX);
        let mut orders: BTreeMap<usize, TensorElement> = BTreeMap::new();
        for (i, x) in &a.orders {
            for (j, y) in &b.orders {
                if truncation.is_some_and(|t| i + j > t) {
                    continue;
                }
                let acc = orders.entry(i + j).or_insert_with(|| zero.clone());
                *acc = &*acc + &op(x, y);
            }
        }
        Self::clip(Value { legs, orders, truncation })
    }

    fn mul(&self, a: Value, b: Value, pos: Pos) -> Result<Value, ParseError> {
        let legs = a.legs.max(b.legs);
        let a = self.promote(a, legs, pos)?;
        let b = self.promote(b, legs, pos)?;
        let zero = TensorElement::zero(self.pres, legs);
        Ok(Self::convolve(&a, &b, legs, zero, |x, y| tensor_multiply(x, y).expect("same legs")))
    }

    fn outer(&self, a: Value, b: Value, pos: Pos) -> Result<Value, ParseError> {
        let (la, lb) = (a.legs.max(1), b.legs.max(1));
        let a = self.promote(a, la, pos)?;
        let b = self.promote(b, lb, pos)?;
        let legs = a.legs + b.legs;
        let zero = TensorElement::zero(self.pres, legs);
        Ok(Self::convolve(&a, &b, legs, zero, |x, y| x.outer(y)))
    }

    fn pow(&self, base: Value, n: u32, pos: Pos) -> Result<Value, ParseError> {
        let mut acc = self.scalar(GaussianRational::one());
        for _ in 0..n {
            acc = self.mul(acc, base.clone(), pos)?;
        }
        Ok(acc)
    }

    fn exp(&self, v: Value, pos: Pos) -> Result<Value, ParseError> {
        let Some(n) = v.truncation else {
            return Err(ParseError::at(pos, "exp needs a truncated argument; add O(L^n)"));
        };
        if v.orders.contains_key(&0) {
            return Err(ParseError::at(pos, "exp needs an argument without order-zero part"));
        }
        let legs = v.legs;
        let series = to_series(self.pres, &v, n);
        let e = series_exp(&series).map_err(|err| ParseError::at(pos, err.to_string()))?;
        Ok(from_series(&e, legs))
    }

    fn eval(&self, e: &Expr) -> Result<Value, ParseError> {
        let pos = e.pos;
        Ok(match &e.kind {
            ExprKind::Int(n) => self.scalar(GaussianRational::real(BigRational::from_integer(n.clone()))),
            ExprKind::Rational(n, d) => self.scalar(GaussianRational::real(BigRational::new(n.clone(), d.clone()))),
            ExprKind::Imag => self.scalar(GaussianRational::i()),
            ExprKind::Lambda => {
                let mut v = self.scalar(GaussianRational::zero());
                v.orders.insert(1, TensorElement::unit(self.pres, 0));
                v
            }
            ExprKind::Ident(name) => {
                let g = self
                    .pres
                    .index_of(name)
                    .ok_or_else(|| ParseError::at(pos, format!("unresolved identifier `{name}`")))?;
                let t = TensorElement::from_algebra(&AlgebraElement::generator(self.pres, g));
                Value { legs: 1, orders: BTreeMap::from([(0, t)]), truncation: None }
            }
            ExprKind::BigO(n) => Value { legs: 0, orders: BTreeMap::new(), truncation: Some(n - 1) },
            ExprKind::Neg(x) => self.neg(self.eval(x)?),
            ExprKind::Add(a, b) => self.add(self.eval(a)?, self.eval(b)?, pos)?,
            ExprKind::Sub(a, b) => self.add(self.eval(a)?, self.neg(self.eval(b)?), pos)?,
            ExprKind::Mul(a, b) => self.mul(self.eval(a)?, self.eval(b)?, pos)?,
            ExprKind::Tensor(a, b) => self.outer(self.eval(a)?, self.eval(b)?, pos)?,
            ExprKind::Wedge(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                let ab = self.outer(x.clone(), y.clone(), pos)?;
                let ba = self.outer(y, x, pos)?;
                self.add(ab, self.neg(ba), pos)?
            }
            ExprKind::Pow(x, n) => self.pow(self.eval(x)?, *n, pos)?,
            ExprKind::Bracket(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                let xy = self.mul(x.clone(), y.clone(), pos)?;
                let yx = self.mul(y, x, pos)?;
                self.add(xy, self.neg(yx), pos)?
            }
            ExprKind::Call(name, args) => match (name.as_str(), args.as_slice()) {
                ("exp", [arg]) => self.exp(self.eval(arg)?, pos)?,
                _ => {
                    return Err(ParseError::at(
                        pos,
                        format!("unknown function `{name}` with {} argument(s)", args.len()),
                    ))
                }
            },
        })
    }
}

fn to_series(pres: &Arc<LiePresentation>, v: &Value, n: usize) -> TensorSeries {
    let coeffs = (0..=n).map(|k| v.orders.get(&k).cloned().unwrap_or_else(|| TensorElement::zero(pres, v.legs)));
    DeformationSeries::new(coeffs.collect())
}

fn from_series(s: &TensorSeries, legs: usize) -> Value {
    let orders = s.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(n, c)| (n, c.clone())).collect();
    Value { legs, orders, truncation: Some(s.truncation()) }
}

/// The value of a parsed expression, in its natural type.
#[derive(Clone, Debug, PartialEq)]
pub enum ParsedValue {
    Algebra(AlgebraElement),
    Tensor(TensorElement),
    AlgebraSeries(AlgebraSeries),
    TensorSeries(TensorSeries),
}

impl ParsedValue {
    /// The value as a tensor series through order `n`, lifting exact
    /// values. Fails if the value is known to a lower order.
    pub fn tensor_series(&self, n: usize) -> Option<TensorSeries> {
        let s = match self {
            ParsedValue::Algebra(a) => DeformationSeries::constant(TensorElement::from_algebra(a), n),
            ParsedValue::Tensor(t) => DeformationSeries::constant(t.clone(), n),
            ParsedValue::AlgebraSeries(s) => s.as_tensor(),
            ParsedValue::TensorSeries(s) => s.clone(),
        };
        crate::series::series_truncate(&s, n).ok()
    }

    pub fn legs(&self) -> usize {
        match self {
            ParsedValue::Algebra(_) | ParsedValue::AlgebraSeries(_) => 1,
            ParsedValue::Tensor(t) => t.legs(),
            ParsedValue::TensorSeries(s) => s.lead().legs(),
        }
    }
}

impl std::fmt::Display for ParsedValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParsedValue::Algebra(a) => write!(f, "{a}"),
            ParsedValue::Tensor(t) => write!(f, "{t}"),
            ParsedValue::AlgebraSeries(s) => write!(f, "{s}"),
            ParsedValue::TensorSeries(s) => write!(f, "{s}"),
        }
    }
}

fn finish(pres: &Arc<LiePresentation>, v: Value) -> ParsedValue {
    let exact_constant = v.truncation.is_none() && v.orders.keys().all(|&n| n == 0);
    let v = if v.legs == 0 {
        Evaluator { pres }.promote(v, 1, Pos { line: 1, col: 1 }).expect("scalar promotes")
    } else {
        v
    };
    let algebra = |t: &TensorElement| t.to_algebra().expect("one leg");
    if exact_constant {
        let t = v.orders.get(&0).cloned().unwrap_or_else(|| TensorElement::zero(pres, v.legs));
        return if v.legs == 1 { ParsedValue::Algebra(algebra(&t)) } else { ParsedValue::Tensor(t) };
    }
    let n = v.truncation.unwrap_or_else(|| *v.orders.keys().last().expect("nonconstant"));
    let s = to_series(pres, &v, n);
    if v.legs == 1 {
        ParsedValue::AlgebraSeries(s.map(algebra))
    } else {
        ParsedValue::TensorSeries(s)
    }
}

/// Parses and evaluates an expression over `pres`.
///
/// Values without `L` are elements; values with `L` or an `O(L^n)` marker
/// are series, known through `n − 1` when the marker is present and
/// through the highest order written otherwise. Scalars become multiples
/// of the unit of `U(g)`.
pub fn parse_expression(text: &str, pres: &Arc<LiePresentation>) -> Result<ParsedValue, ParseError> {
    let e = parse_expression_ast(text)?;
    let v = Evaluator { pres }.eval(&e)?;
    Ok(finish(pres, v))
}

/// Like [`parse_expression`], with scalars lifted to multiples of
/// `1⊗…⊗1` on `legs` legs.
pub fn parse_expression_with_legs(
    text: &str,
    pres: &Arc<LiePresentation>,
    legs: usize,
) -> Result<ParsedValue, ParseError> {
    let e = parse_expression_ast(text)?;
    let ev = Evaluator { pres };
    let v = ev.eval(&e)?;
    let v = ev.promote(v, legs, e.pos)?;
    Ok(finish(pres, v))
}

fn eval_twist(e: &Expr, pres: &Arc<LiePresentation>, truncation: usize) -> Result<TwistSeries, ParseError> {
    let ev = Evaluator { pres };
    let err = |m: String| ParseError::at(e.pos, m);
    if let ExprKind::Call(name, args) = &e.kind {
        if name == "exp" && args.len() == 1 {
            let mut v = ev.promote(ev.eval(&args[0])?, 2, e.pos)?;
            v.truncation = Some(v.truncation.unwrap_or(truncation).min(truncation));
            let n = v.truncation.expect("set");
            return TwistSeries::exponential(to_series(pres, &Evaluator::clip(v), n)).map_err(|x| err(x.to_string()));
        }
    }
    let mut v = ev.promote(ev.eval(e)?, 2, e.pos)?;
    v.truncation = Some(v.truncation.unwrap_or(truncation).min(truncation));
    let n = v.truncation.expect("set");
    TwistSeries::from_series(to_series(pres, &Evaluator::clip(v), n)).map_err(|x| err(x.to_string()))
}

/// Parses a twist, `exp(f)` or an explicit series, through order
/// `truncation` at most.
pub fn parse_twist(text: &str, pres: &Arc<LiePresentation>, truncation: usize) -> Result<TwistSeries, ParseError> {
    eval_twist(&parse_expression_ast(text)?, pres, truncation)
}

/// A model file resolved against its own generators.
#[derive(Clone, Debug)]
pub struct ModelFile {
    pub ast: ModelFileAst,
    pub presentation: Arc<LiePresentation>,
    pub truncation: usize,
    /// Declared images, primitive for the generators not declared.
    pub coproducts: CoproductMap,
    pub twist: Option<TwistSeries>,
}

fn presentation_from(ast: &ModelFileAst) -> Result<Arc<LiePresentation>, ParseError> {
    let mut names = BTreeMap::new();
    for g in &ast.generators {
        if RESERVED.contains(&g.name.as_str()) {
            return Err(ParseError::at(g.pos, format!("`{}` is reserved", g.name)));
        }
        if names.insert(g.name.clone(), names.len()).is_some() {
            return Err(ParseError::at(g.pos, format!("duplicate generator `{}`", g.name)));
        }
    }
    let gens: Vec<(String, Grade)> = ast.generators.iter().map(|g| (g.name.clone(), g.grade)).collect();
    let bare = Arc::new(
        LiePresentation::new(ast.name.clone(), gens.clone(), vec![])
            .map_err(|e| ParseError::at(Pos { line: 1, col: 1 }, e.to_string()))?,
    );
    let mut seen = BTreeSet::new();
    let mut table = Vec::new();
    for b in &ast.brackets {
        let resolve = |n: &str| {
            names.get(n).copied().ok_or_else(|| ParseError::at(b.pos, format!("unresolved identifier `{n}`")))
        };
        let (l, r) = (resolve(&b.left)?, resolve(&b.right)?);
        if l == r {
            return Err(ParseError::at(b.pos, format!("bracket [{0}, {0}] is zero by antisymmetry", b.left)));
        }
        if !seen.insert((l.min(r), l.max(r))) {
            return Err(ParseError::at(b.pos, format!("duplicate bracket [{}, {}]", b.left, b.right)));
        }
        let value = match finish(&bare, Evaluator { pres: &bare }.eval(&b.value)?) {
            ParsedValue::Algebra(a) => a,
            _ => return Err(ParseError::at(b.value.pos, "bracket values must be exact algebra elements")),
        };
        let mut lin = Vec::new();
        for (m, c) in value.terms() {
            match m.factors() {
                [g] => lin.push((*g, c.clone())),
                _ => {
                    return Err(ParseError::at(
                        b.value.pos,
                        format!("bracket values must be linear in generators, found `{}`", m.display(&bare)),
                    ))
                }
            }
        }
        table.push(((l, r), lin));
    }
    let pres = LiePresentation::new(ast.name.clone(), gens, table)
        .map_err(|e| ParseError::at(Pos { line: 1, col: 1 }, e.to_string()))?;
    Ok(Arc::new(pres))
}

/// Resolves a model syntax tree: builds the presentation, evaluates the
/// coproducts and the twist.
///
/// The model truncation is the lowest order through which some declared
/// coproduct or twist is known; exact declarations do not lower it. With
/// only exact declarations it is the highest order written.
pub fn build_model(ast: &ModelFileAst) -> Result<ModelFile, ParseError> {
    let pres = presentation_from(ast)?;
    let ev = Evaluator { pres: &pres };
    let mut values: BTreeMap<usize, (Value, Pos)> = BTreeMap::new();
    let mut bound: Option<usize> = None;
    let mut highest = 0;
    for c in &ast.coproducts {
        let g = pres
            .index_of(&c.generator)
            .ok_or_else(|| ParseError::at(c.pos, format!("unresolved identifier `{}`", c.generator)))?;
        let v = ev.promote(ev.eval(&c.value)?, 2, c.value.pos)?;
        bound = min_opt(bound, v.truncation);
        highest = highest.max(v.orders.keys().last().copied().unwrap_or(0));
        if values.insert(g, (v, c.pos)).is_some() {
            return Err(ParseError::at(c.pos, format!("duplicate coproduct for `{}`", c.generator)));
        }
    }
    if let Some(t) = &ast.twist {
        let inner = match &t.kind {
            ExprKind::Call(name, args) if name == "exp" && args.len() == 1 => &args[0],
            _ => t,
        };
        let v = ev.eval(inner)?;
        bound = min_opt(bound, v.truncation);
        highest = highest.max(v.orders.keys().last().copied().unwrap_or(0));
    }
    let truncation = bound.unwrap_or(highest);
    let mut images = Vec::with_capacity(pres.len());
    for g in 0..pres.len() {
        images.push(match values.remove(&g) {
            Some((v, _)) => to_series(&pres, &Evaluator::clip(Value { truncation: Some(truncation), ..v }), truncation),
            None => CoproductMap::primitive(&pres, truncation).image(g).clone(),
        });
    }
    let coproducts =
        CoproductMap::new(pres.clone(), images).map_err(|e| ParseError::at(Pos { line: 1, col: 1 }, e.to_string()))?;
    let twist = ast.twist.as_ref().map(|t| eval_twist(t, &pres, truncation)).transpose()?;
    Ok(ModelFile { ast: ast.clone(), presentation: pres, truncation, coproducts, twist })
}

/// [`parse_model`] followed by [`build_model`].
pub fn load_model(text: &str) -> Result<ModelFile, ParseError> {
    build_model(&parse_model(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PbwMonomial;
    use crate::models::{d2_presentation, model_d2};

    #[test]
    fn bracket_entry_coefficient_is_i() {
        let text = "algebra \"t\" { generator P0, P1 : momentum; generator N : boost; bracket [N, P1] = i*P0; }";
        let m = load_model(text).unwrap();
        let pres = &m.presentation;
        let (n, p1, p0) = (pres.index_of("N").unwrap(), pres.index_of("P1").unwrap(), pres.index_of("P0").unwrap());
        let b = pres.bracket(n, p1);
        assert_eq!(b.get(&PbwMonomial::generator(p0)), Some(&GaussianRational::i()));
    }

    #[test]
    fn first_order_twist_literal() {
        let pres = d2_presentation();
        let v = parse_expression("-i * (P1 # N)", &pres).unwrap();
        let p1 = AlgebraElement::named(&pres, "P1");
        let n = AlgebraElement::named(&pres, "N");
        assert_eq!(v, ParsedValue::Tensor(TensorElement::pure(&[&p1, &n]).scale(&-GaussianRational::i())));
    }

    #[test]
    fn series_through_order_one() {
        let pres = d2_presentation();
        let ParsedValue::TensorSeries(s) = parse_expression("P0 # 1 + 1 # P0 + L*(P1 # P1)", &pres).unwrap() else {
            panic!("series expected")
        };
        assert_eq!(s.truncation(), 1);
        let m = model_d2(1);
        assert_eq!(&s, m.target_coproducts.image(0));
    }

    #[test]
    fn precedence() {
        let pres = d2_presentation();
        let a = parse_expression("-P0*P1^2 # N + 1", &pres).unwrap();
        let b = parse_expression("(-((P0*(P1^2)) # N)) + 1 # 1", &pres).unwrap();
        assert_eq!(a, b);
        let w = parse_expression("P1 /\\ N", &pres).unwrap();
        assert_eq!(w, parse_expression("P1 # N - N # P1", &pres).unwrap());
        let c = parse_expression("[N, P1]", &pres).unwrap();
        assert_eq!(c, parse_expression("i*P0", &pres).unwrap());
    }

    #[test]
    fn truncation_marker() {
        let pres = d2_presentation();
        let ParsedValue::AlgebraSeries(s) = parse_expression("1 + L*P0 + L^3*P1 + O(L^3)", &pres).unwrap() else {
            panic!()
        };
        assert_eq!(s.truncation(), 2);
        assert!(s.coeff(2).unwrap().is_zero());
        let ParsedValue::AlgebraSeries(e) = parse_expression("exp(L*P0 + O(L^3))", &pres).unwrap() else { panic!() };
        assert_eq!(
            e.coeff(2).unwrap(),
            &(&AlgebraElement::named(&pres, "P0") * &AlgebraElement::named(&pres, "P0"))
                .scale(&GaussianRational::rational(1, 2))
        );
    }

    #[test]
    fn errors_carry_positions() {
        let pres = d2_presentation();
        let e = parse_expression("P0 + Q", &pres).unwrap_err();
        assert_eq!((e.line, e.col), (1, 6));
        assert!(e.message.contains("unresolved"));
        let e = parse_expression("P0 +", &pres).unwrap_err();
        assert!(e.message.contains("expected expression"));
        let e = parse_expression("P0 # N + P1", &pres).unwrap_err();
        assert!(e.message.contains("leg"));
        let dup = "algebra \"t\" {\n generator A, B : momentum;\n bracket [A, B] = A;\n bracket [B, A] = B;\n}";
        let e = load_model(dup).unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("duplicate bracket"));
        let e = load_model("algebra \"t\" { generator A : momentum; coproduct B = A # 1; }").unwrap_err();
        assert!(e.message.contains("unresolved"));
    }
}
