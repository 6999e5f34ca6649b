//! Parser, resolver and report rendering behind the `yamacalc` command.

pub mod ast;
pub mod output;

use std::path::Path;

use thiserror::Error;
use yamacalc_core::theorems::{evaluate_expression, EvaluationOptions, InvariantReport};
use yamacalc_core::{Catalog, ManifoldBlock, SumExpression, Summand};

pub use ast::{parse, ExpressionAst, Node, Term};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unknown block `{0}`")]
    UnknownBlock(String),

    #[error("arity error in `{name}`: {message}")]
    Arity { name: String, message: String },

    #[error("invalid witness: {0}")]
    Witness(String),

    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },

    #[error(transparent)]
    Core(#[from] yamacalc_core::Error),
}

/// The built-in catalog, with the blocks of `path` merged in when given.
pub fn load_catalog(path: Option<&Path>) -> Result<Catalog, CliError> {
    let mut cat = Catalog::builtin();
    if let Some(path) = path {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
        cat.merge(Catalog::parse_text(&text)?)?;
    }
    Ok(cat)
}

const CONSTRUCTOR_ARITY: usize = 1;

/// The block a node denotes and whether it is reversed.
pub fn resolve_node(node: &Node, catalog: &Catalog) -> Result<(ManifoldBlock, bool), CliError> {
    match node {
        Node::Name(name) => match catalog.get(name) {
            Some(b) => Ok((b.clone(), false)),
            None => Err(CliError::UnknownBlock(name.clone())),
        },
        Node::Call { name, args } => {
            if !Catalog::is_constructor(name) {
                if catalog.get(name).is_some() {
                    return Err(CliError::Arity {
                        name: name.clone(),
                        message: "catalog blocks take no arguments".into(),
                    });
                }
                return Err(CliError::UnknownBlock(format!("{name}(...)")));
            }
            if args.len() != CONSTRUCTOR_ARITY {
                return Err(CliError::Arity {
                    name: name.clone(),
                    message: format!("expected {CONSTRUCTOR_ARITY} argument, got {}", args.len()),
                });
            }
            Ok((catalog.construct(name, args)?, false))
        }
        Node::Rev(inner) => {
            let (b, rev) = resolve_node(inner, catalog)?;
            Ok((b, !rev))
        }
    }
}

pub fn resolve(ast: &ExpressionAst, catalog: &Catalog) -> Result<SumExpression, CliError> {
    let mut summands = Vec::with_capacity(ast.terms.len());
    for t in &ast.terms {
        let (block, reversed) = resolve_node(&t.node, catalog)?;
        summands.push(Summand::new(block, reversed, t.multiplier));
    }
    Ok(SumExpression::new(summands)?)
}

/// Four comma-separated block names or constructor calls.
pub fn resolve_witness(text: &str, catalog: &Catalog) -> Result<[ManifoldBlock; 4], CliError> {
    let parts = ast::split_top_level(text, ',');
    if parts.len() != 4 {
        return Err(CliError::Witness(format!("expected 4 blocks, got {}", parts.len())));
    }
    let mut blocks = Vec::with_capacity(4);
    for p in parts {
        let ast = parse(p)?;
        match ast.terms.as_slice() {
            [Term { multiplier: 1, node }] if !matches!(node, Node::Rev(_)) => {
                blocks.push(resolve_node(node, catalog)?.0);
            }
            _ => return Err(CliError::Witness(format!("`{p}` is not a single unreversed block"))),
        }
    }
    Ok(blocks.try_into().expect("four blocks"))
}

#[derive(Clone, Debug, Default)]
pub struct EvalOptions {
    pub witness: Option<String>,
    pub m: Option<usize>,
    pub auto_witness: bool,
}

pub fn evaluate(input: &str, catalog: &Catalog, options: &EvalOptions) -> Result<InvariantReport, CliError> {
    let expr = resolve(&parse(input)?, catalog)?;
    let witness = options.witness.as_deref().map(|w| resolve_witness(w, catalog)).transpose()?;
    let opts = EvaluationOptions { witness, m: options.m, auto_witness: options.auto_witness };
    Ok(evaluate_expression(&expr, catalog, &opts)?)
}

/// Process exit status for a report: 0 when something was concluded, 2 when no rule applied.
pub fn exit_status(report: &InvariantReport) -> i32 {
    if report.is_conclusive() {
        0
    } else {
        2
    }
}
