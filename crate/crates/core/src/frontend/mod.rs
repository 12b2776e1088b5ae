//! Text surface: expression and model-file parsing, printing, reports and
//! the command dispatcher.

pub mod ast;
pub mod cli;
pub mod lexer;
pub mod parser;
pub mod print;
pub mod report;

pub use ast::{Expr, ExprKind, ModelFileAst, ParseError};
pub use parser::{
    build_model, load_model, parse_expression, parse_expression_ast, parse_expression_with_legs, parse_model,
    parse_twist, ModelFile, ParsedValue,
};
