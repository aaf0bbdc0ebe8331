//! Line-oriented manifest language and command runner behind the CLI.
//!
//! A manifest is a list of named declarations: categories (tabulated with
//! full composition tables, freely presented with rewrite rules, fixtures,
//! or tensors of earlier declarations), pseudo double functors between
//! declared categories, and named checks. Parsing is deterministic and
//! line-oriented with `;` comments; every declaration carries a source
//! span. `print_manifest` is a pretty-printer with `parse(print(m)) == m`.
//!
//! Square expressions use infix `|` (horizontal, looser) and `/` (vertical,
//! tighter), generator names, and the identity tokens `1h(A)`, `1v(A)`,
//! `Idv(f.g)`, `Idh(u.w)`.

use crate::category::{DoubleCategory, NormalForm, TabData, TabHCell, TabSquare, TabVCell};
use crate::cell::{HCellId, HPath, ObjId, SquareId, VCellId, VPath};
use crate::dbltrans::{
    check_double, check_modification, hcomp_double, identity_double, identity_modification,
    vcomp_double, DoublePsNatTrans,
};
use crate::error::{DblError, Eq3};
use crate::expr::SquareExpr;
use crate::fixtures;
use crate::free::{Free, FreeHCell, FreeNf, FreeSquareGen, FreeVCell, HPathRule, SquareRule, VPathRule};
use crate::functor::{check_functor_axioms, compose_functors, identity_functor, DoublePseudoFunctor, Inv};
use crate::graytensor;
use crate::report::{Report, Verdict};
use crate::transform::{HorizontalPsNatTrans, VerticalPsNatTrans};
use crate::tricat::{
    associator, interchange, invert_modification, unitors, verify_associator_naturality,
    verify_pentagon, verify_unit_coherence,
};
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Errors surfaced by the manifest pipeline. All of them map to exit code 2
/// (bad input) in the CLI; genuine check failures are reported through
/// [`Report`] lines instead.
#[derive(Clone, Debug)]
pub enum DslError {
    /// The text does not match the grammar.
    Parse { line: u32, col: u32, expected: String },
    /// A name is used before (or without) being declared.
    Resolution { line: u32, name: String },
    /// Well-formed text denoting ill-typed data: mismatched boundaries,
    /// wrong arities, partial tables, duplicate names.
    Type { line: u32, detail: String },
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            DslError::Parse { line, col, expected } => {
                write!(f, "parse error at {}:{}: expected {}", line, col, expected)
            }
            DslError::Resolution { line, name } => {
                write!(f, "resolution error at line {}: unknown name `{}`", line, name)
            }
            DslError::Type { line, detail } => write!(f, "type error at line {}: {}", line, detail),
        }
    }
}

impl std::error::Error for DslError {}

/// Position of a declaration header in the source text (1-based).
#[derive(Clone, Copy, Debug, Default)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

// ---------------------------------------------------------------------------
// AST
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Default)]
pub struct Manifest {
    pub decls: Vec<Decl>,
}

impl PartialEq for Manifest {
    fn eq(&self, other: &Self) -> bool {
        self.decls == other.decls
    }
}

/// One declaration with its source span. Equality ignores the span, so the
/// parse/print round trip is the identity on manifests.
#[derive(Clone, Debug)]
pub struct Decl {
    pub span: Span,
    pub kind: DeclKind,
}

impl PartialEq for Decl {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DeclKind {
    Category { name: String, body: CategoryBody },
    Functor { name: String, src: String, tgt: String, body: FunctorBody },
    Check { name: String, target: CheckTarget },
}

#[derive(Clone, Debug, PartialEq)]
pub enum CategoryBody {
    Fixture(FixtureRef),
    Tensor { left: String, right: String },
    Free(FreeBody),
    Tabulated(TabBody),
}

/// Built-in example categories addressable from a manifest.
#[derive(Clone, Debug, PartialEq)]
pub enum FixtureRef {
    Terminal,
    QuintetArrow,
    Parity,
    ThinIdempotent,
    Involution,
    InvolutionParity,
    FreeArrow,
    Grid { rows: usize, cols: usize },
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct FreeBody {
    pub objects: Vec<String>,
    /// (name, source object, target object)
    pub hcells: Vec<(String, String, String)>,
    pub vcells: Vec<(String, String, String)>,
    pub squares: Vec<FreeSqDecl>,
    /// (lhs path, rhs path); the rhs may be empty.
    pub hrules: Vec<(Vec<String>, Vec<String>)>,
    pub vrules: Vec<(Vec<String>, Vec<String>)>,
    pub sqrules: Vec<(String, Expr, Expr)>,
}

/// A square generator: nonempty top/bottom 1h-paths, possibly empty
/// left/right 1v-paths (their endpoints are inferred from the top path).
#[derive(Clone, Debug, PartialEq)]
pub struct FreeSqDecl {
    pub name: String,
    pub top: Vec<String>,
    pub bottom: Vec<String>,
    pub left: Vec<String>,
    pub right: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct TabBody {
    pub objects: Vec<String>,
    pub hcells: Vec<(String, String, String)>,
    pub vcells: Vec<(String, String, String)>,
    /// (name, top, bottom, left, right), all single cells.
    pub squares: Vec<(String, String, String, String, String)>,
    /// Identity 1h-cell per object, in object order.
    pub hid: Vec<String>,
    pub vid: Vec<String>,
    /// Horizontal identity square per 1v-cell, in declaration order.
    pub sqidh: Vec<String>,
    /// Vertical identity square per 1h-cell, in declaration order.
    pub sqidv: Vec<String>,
    pub hcomp: Vec<(String, String, String)>,
    pub vcomp: Vec<(String, String, String)>,
    pub sqh: Vec<(String, String, String)>,
    pub sqv: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct FunctorBody {
    pub obj: Vec<(String, String)>,
    /// (source 1h-cell, image path in the target); empty path = identity.
    pub hcell: Vec<(String, Vec<String>)>,
    pub vcell: Vec<(String, Vec<String>)>,
    pub square: Vec<(String, Expr)>,
    /// (f, g, forward, backward) comparison for the composite f.g.
    pub cmph: Vec<(String, String, Expr, Expr)>,
    pub cmpv: Vec<(String, String, Expr, Expr)>,
    /// (object, forward, backward) unit comparison.
    pub unith: Vec<(String, Expr, Expr)>,
    pub unitv: Vec<(String, Expr, Expr)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CheckTarget {
    /// Validate the composition laws of a category declaration.
    Laws(String),
    /// Run the full pseudo double functor axiom sweep.
    Functor(String),
}

/// Unresolved square expression; names refer to cells of one category.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Gen(String),
    /// `1h(A)`: horizontal identity square at an object.
    UnitH(String),
    /// `1v(A)`: vertical identity square at an object.
    UnitV(String),
    /// `Idv(f.g)`: vertical identity square on a 1h-path.
    IdOnH(Vec<String>),
    /// `Idh(u.w)`: horizontal identity square on a 1v-path.
    IdOnV(Vec<String>),
    HComp(Box<Expr>, Box<Expr>),
    VComp(Box<Expr>, Box<Expr>),
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
struct Tok {
    text: String,
    line: u32,
    col: u32,
}

const PUNCT: &[char] = &['{', '}', '(', ')', '|', '/', '=', '.'];

/// Tokenize one line; `;` starts a comment. Punctuation characters are
/// single-character tokens, every other maximal run of non-space characters
/// is an identifier.
fn lex_line(text: &str, line_no: u32) -> Vec<Tok> {
    let mut toks = Vec::new();
    let mut cur = String::new();
    let mut cur_col = 0u32;
    let mut col = 0u32;
    for ch in text.chars() {
        col += 1;
        if ch == ';' {
            break;
        }
        if ch.is_whitespace() || PUNCT.contains(&ch) {
            if !cur.is_empty() {
                toks.push(Tok { text: std::mem::take(&mut cur), line: line_no, col: cur_col });
            }
            if PUNCT.contains(&ch) {
                toks.push(Tok { text: ch.to_string(), line: line_no, col });
            }
        } else {
            if cur.is_empty() {
                cur_col = col;
            }
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        toks.push(Tok { text: cur, line: line_no, col: cur_col });
    }
    toks
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct LineStream {
    lines: Vec<Vec<Tok>>,
    pos: usize,
}

impl LineStream {
    fn next_line(&mut self) -> Option<&[Tok]> {
        while self.pos < self.lines.len() && self.lines[self.pos].is_empty() {
            self.pos += 1;
        }
        if self.pos < self.lines.len() {
            self.pos += 1;
            Some(&self.lines[self.pos - 1])
        } else {
            None
        }
    }
}

struct Cursor<'a> {
    toks: &'a [Tok],
    i: usize,
    line: u32,
}

impl<'a> Cursor<'a> {
    fn new(toks: &'a [Tok]) -> Self {
        let line = toks.first().map(|t| t.line).unwrap_or(0);
        Cursor { toks, i: 0, line }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i)
    }

    fn err(&self, expected: &str) -> DslError {
        let (line, col) = match self.peek() {
            Some(t) => (t.line, t.col),
            None => (self.line, self.toks.last().map(|t| t.col + t.text.len() as u32).unwrap_or(1)),
        };
        DslError::Parse { line, col, expected: expected.to_string() }
    }

    fn ident(&mut self, expected: &str) -> Result<String, DslError> {
        match self.peek() {
            Some(t) if !PUNCT.contains(&t.text.chars().next().unwrap_or(' ')) => {
                let s = t.text.clone();
                self.i += 1;
                Ok(s)
            }
            _ => Err(self.err(expected)),
        }
    }

    fn punct(&mut self, p: &str) -> Result<(), DslError> {
        match self.peek() {
            Some(t) if t.text == p => {
                self.i += 1;
                Ok(())
            }
            _ => Err(self.err(&format!("`{}`", p))),
        }
    }

    fn at_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Some(t) if t.text == p)
    }

    fn end(&mut self) -> Result<(), DslError> {
        if self.peek().is_some() {
            Err(self.err("end of line"))
        } else {
            Ok(())
        }
    }

    /// A dot-separated path of identifiers; `-` denotes the empty path.
    fn path(&mut self) -> Result<Vec<String>, DslError> {
        let first = self.ident("a cell name or `-`")?;
        if first == "-" {
            return Ok(Vec::new());
        }
        let mut cells = vec![first];
        while self.at_punct(".") {
            self.punct(".")?;
            cells.push(self.ident("a cell name")?);
        }
        Ok(cells)
    }

    fn usize_lit(&mut self, what: &str) -> Result<usize, DslError> {
        let before = self.i;
        let s = self.ident(what)?;
        s.parse().map_err(|_| {
            self.i = before;
            self.err(what)
        })
    }

    // Expression grammar: expr := term { "|" term }, term := atom { "/" atom }.
    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut e = self.term()?;
        while self.at_punct("|") {
            self.punct("|")?;
            let rhs = self.term()?;
            e = Expr::HComp(Box::new(e), Box::new(rhs));
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut e = self.atom()?;
        while self.at_punct("/") {
            self.punct("/")?;
            let rhs = self.atom()?;
            e = Expr::VComp(Box::new(e), Box::new(rhs));
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr, DslError> {
        if self.at_punct("(") {
            self.punct("(")?;
            let e = self.expr()?;
            self.punct(")")?;
            return Ok(e);
        }
        let name = self.ident("a square expression")?;
        match name.as_str() {
            "1h" | "1v" => {
                self.punct("(")?;
                let o = self.ident("an object name")?;
                self.punct(")")?;
                Ok(if name == "1h" { Expr::UnitH(o) } else { Expr::UnitV(o) })
            }
            "Idv" | "Idh" => {
                self.punct("(")?;
                let p = self.path()?;
                self.punct(")")?;
                if p.is_empty() {
                    return Err(self.err("a nonempty path (use 1h/1v for objects)"));
                }
                Ok(if name == "Idv" { Expr::IdOnH(p) } else { Expr::IdOnV(p) })
            }
            _ => Ok(Expr::Gen(name)),
        }
    }
}

/// Parse a manifest from source text.
pub fn parse(text: &str) -> Result<Manifest, DslError> {
    let lines: Vec<Vec<Tok>> =
        text.lines().enumerate().map(|(i, l)| lex_line(l, i as u32 + 1)).collect();
    let mut ls = LineStream { lines, pos: 0 };
    let mut decls = Vec::new();
    while let Some(toks) = ls.next_line() {
        let toks = toks.to_vec();
        let mut c = Cursor::new(&toks);
        let head = c.ident("`category`, `functor` or `check`")?;
        let span = Span { line: toks[0].line, col: toks[0].col };
        match head.as_str() {
            "category" => {
                let name = c.ident("a category name")?;
                let form = c.ident("`tabulated`, `free`, `tensor` or `fixture`")?;
                let body = match form.as_str() {
                    "fixture" => {
                        let b = CategoryBody::Fixture(parse_fixture(&mut c)?);
                        c.end()?;
                        b
                    }
                    "tensor" => {
                        let left = c.ident("a category name")?;
                        let right = c.ident("a category name")?;
                        c.end()?;
                        CategoryBody::Tensor { left, right }
                    }
                    "free" => {
                        c.punct("{")?;
                        c.end()?;
                        CategoryBody::Free(parse_free_body(&mut ls)?)
                    }
                    "tabulated" => {
                        c.punct("{")?;
                        c.end()?;
                        CategoryBody::Tabulated(parse_tab_body(&mut ls)?)
                    }
                    _ => return Err(c.err("`tabulated`, `free`, `tensor` or `fixture`")),
                };
                decls.push(Decl { span, kind: DeclKind::Category { name, body } });
            }
            "functor" => {
                let name = c.ident("a functor name")?;
                let src = c.ident("a source category name")?;
                let tgt = c.ident("a target category name")?;
                c.punct("{")?;
                c.end()?;
                let body = parse_functor_body(&mut ls)?;
                decls.push(Decl { span, kind: DeclKind::Functor { name, src, tgt, body } });
            }
            "check" => {
                let name = c.ident("a check name")?;
                let op = c.ident("`laws` or `functor`")?;
                let target = match op.as_str() {
                    "laws" => CheckTarget::Laws(c.ident("a category name")?),
                    "functor" => CheckTarget::Functor(c.ident("a functor name")?),
                    _ => return Err(c.err("`laws` or `functor`")),
                };
                c.end()?;
                decls.push(Decl { span, kind: DeclKind::Check { name, target } });
            }
            _ => {
                let c0 = Cursor::new(&toks);
                return Err(c0.err("`category`, `functor` or `check`"));
            }
        }
    }
    Ok(Manifest { decls })
}

fn parse_fixture(c: &mut Cursor) -> Result<FixtureRef, DslError> {
    let name = c.ident("a fixture name")?;
    Ok(match name.as_str() {
        "terminal" => FixtureRef::Terminal,
        "quintet-arrow" => FixtureRef::QuintetArrow,
        "parity" => FixtureRef::Parity,
        "thin-idempotent" => FixtureRef::ThinIdempotent,
        "involution" => FixtureRef::Involution,
        "involution-parity" => FixtureRef::InvolutionParity,
        "free-arrow" => FixtureRef::FreeArrow,
        "grid" => {
            let rows = c.usize_lit("a row count")?;
            let cols = c.usize_lit("a column count")?;
            FixtureRef::Grid { rows, cols }
        }
        _ => {
            return Err(c.err(
                "one of terminal, quintet-arrow, parity, thin-idempotent, involution, \
                 involution-parity, free-arrow, grid",
            ))
        }
    })
}

fn body_lines<F>(ls: &mut LineStream, mut on_line: F) -> Result<(), DslError>
where
    F: FnMut(&mut Cursor) -> Result<(), DslError>,
{
    loop {
        let toks = match ls.next_line() {
            Some(t) => t.to_vec(),
            None => {
                return Err(DslError::Parse {
                    line: ls.lines.last().map(|_| ls.lines.len() as u32).unwrap_or(1),
                    col: 1,
                    expected: "`}` closing the block".to_string(),
                })
            }
        };
        let mut c = Cursor::new(&toks);
        if c.at_punct("}") {
            c.punct("}")?;
            c.end()?;
            return Ok(());
        }
        on_line(&mut c)?;
    }
}

fn parse_free_body(ls: &mut LineStream) -> Result<FreeBody, DslError> {
    let mut b = FreeBody::default();
    body_lines(ls, |c| {
        let kw = c.ident("a free-category body keyword")?;
        match kw.as_str() {
            "objects" => {
                while c.peek().is_some() {
                    b.objects.push(c.ident("an object name")?);
                }
            }
            "hcell" | "vcell" => {
                let name = c.ident("a cell name")?;
                let src = c.ident("a source object")?;
                let tgt = c.ident("a target object")?;
                c.end()?;
                if kw == "hcell" {
                    b.hcells.push((name, src, tgt));
                } else {
                    b.vcells.push((name, src, tgt));
                }
            }
            "square" => {
                let name = c.ident("a square name")?;
                let top = c.path()?;
                let bottom = c.path()?;
                let left = c.path()?;
                let right = c.path()?;
                c.end()?;
                b.squares.push(FreeSqDecl { name, top, bottom, left, right });
            }
            "hrule" | "vrule" => {
                let lhs = c.path()?;
                let rhs = c.path()?;
                c.end()?;
                if kw == "hrule" {
                    b.hrules.push((lhs, rhs));
                } else {
                    b.vrules.push((lhs, rhs));
                }
            }
            "sqrule" => {
                let name = c.ident("a rule name")?;
                let lhs = c.expr()?;
                c.punct("=")?;
                let rhs = c.expr()?;
                c.end()?;
                b.sqrules.push((name, lhs, rhs));
            }
            _ => {
                return Err(c.err(
                    "one of objects, hcell, vcell, square, hrule, vrule, sqrule, or `}`",
                ))
            }
        }
        Ok(())
    })?;
    Ok(b)
}

fn parse_tab_body(ls: &mut LineStream) -> Result<TabBody, DslError> {
    let mut b = TabBody::default();
    body_lines(ls, |c| {
        let kw = c.ident("a tabulated-category body keyword")?;
        match kw.as_str() {
            "objects" => {
                while c.peek().is_some() {
                    b.objects.push(c.ident("an object name")?);
                }
            }
            "hcell" | "vcell" => {
                let name = c.ident("a cell name")?;
                let src = c.ident("a source object")?;
                let tgt = c.ident("a target object")?;
                c.end()?;
                if kw == "hcell" {
                    b.hcells.push((name, src, tgt));
                } else {
                    b.vcells.push((name, src, tgt));
                }
            }
            "square" => {
                let name = c.ident("a square name")?;
                let top = c.ident("a top 1h-cell")?;
                let bottom = c.ident("a bottom 1h-cell")?;
                let left = c.ident("a left 1v-cell")?;
                let right = c.ident("a right 1v-cell")?;
                c.end()?;
                b.squares.push((name, top, bottom, left, right));
            }
            "hid" | "vid" | "sqidh" | "sqidv" => {
                let mut names = Vec::new();
                while c.peek().is_some() {
                    names.push(c.ident("a cell name")?);
                }
                match kw.as_str() {
                    "hid" => b.hid = names,
                    "vid" => b.vid = names,
                    "sqidh" => b.sqidh = names,
                    _ => b.sqidv = names,
                }
            }
            "hcomp" | "vcomp" | "sqh" | "sqv" => {
                let x = c.ident("a cell name")?;
                let y = c.ident("a cell name")?;
                let z = c.ident("a cell name")?;
                c.end()?;
                let entry = (x, y, z);
                match kw.as_str() {
                    "hcomp" => b.hcomp.push(entry),
                    "vcomp" => b.vcomp.push(entry),
                    "sqh" => b.sqh.push(entry),
                    _ => b.sqv.push(entry),
                }
            }
            _ => {
                return Err(c.err(
                    "one of objects, hcell, vcell, square, hid, vid, sqidh, sqidv, hcomp, \
                     vcomp, sqh, sqv, or `}`",
                ))
            }
        }
        Ok(())
    })?;
    Ok(b)
}

fn parse_functor_body(ls: &mut LineStream) -> Result<FunctorBody, DslError> {
    let mut b = FunctorBody::default();
    body_lines(ls, |c| {
        let kw = c.ident("a functor body keyword")?;
        match kw.as_str() {
            "obj" => {
                let a = c.ident("a source object")?;
                let x = c.ident("a target object")?;
                c.end()?;
                b.obj.push((a, x));
            }
            "hcell" | "vcell" => {
                let a = c.ident("a source cell")?;
                let p = c.path()?;
                c.end()?;
                if kw == "hcell" {
                    b.hcell.push((a, p));
                } else {
                    b.vcell.push((a, p));
                }
            }
            "square" => {
                let a = c.ident("a source square")?;
                let e = c.expr()?;
                c.end()?;
                b.square.push((a, e));
            }
            "cmph" | "cmpv" => {
                let f = c.ident("a source cell")?;
                let g = c.ident("a source cell")?;
                let fwd = c.expr()?;
                let bwd = c.expr()?;
                c.end()?;
                if kw == "cmph" {
                    b.cmph.push((f, g, fwd, bwd));
                } else {
                    b.cmpv.push((f, g, fwd, bwd));
                }
            }
            "unith" | "unitv" => {
                let a = c.ident("a source object")?;
                let fwd = c.expr()?;
                let bwd = c.expr()?;
                c.end()?;
                if kw == "unith" {
                    b.unith.push((a, fwd, bwd));
                } else {
                    b.unitv.push((a, fwd, bwd));
                }
            }
            _ => {
                return Err(c.err(
                    "one of obj, hcell, vcell, square, cmph, cmpv, unith, unitv, or `}`",
                ))
            }
        }
        Ok(())
    })?;
    Ok(b)
}

/// Parse a single square expression, as passed on the command line.
pub fn parse_expr(text: &str) -> Result<Expr, DslError> {
    let toks = lex_line(text, 1);
    let mut c = Cursor::new(&toks);
    let e = c.expr()?;
    c.end()?;
    Ok(e)
}

// ---------------------------------------------------------------------------
// Pretty-printer
// ---------------------------------------------------------------------------

fn print_path(p: &[String]) -> String {
    if p.is_empty() {
        "-".to_string()
    } else {
        p.join(".")
    }
}

fn expr_prec(e: &Expr) -> u8 {
    match e {
        Expr::HComp(..) => 1,
        Expr::VComp(..) => 2,
        _ => 3,
    }
}

fn print_expr_prec(e: &Expr, parent: u8, right: bool, out: &mut String) {
    let prec = expr_prec(e);
    let parens = prec < parent || (prec == parent && right && prec < 3);
    if parens {
        out.push('(');
    }
    match e {
        Expr::Gen(n) => out.push_str(n),
        Expr::UnitH(o) => {
            out.push_str("1h(");
            out.push_str(o);
            out.push(')');
        }
        Expr::UnitV(o) => {
            out.push_str("1v(");
            out.push_str(o);
            out.push(')');
        }
        Expr::IdOnH(p) => {
            out.push_str("Idv(");
            out.push_str(&p.join("."));
            out.push(')');
        }
        Expr::IdOnV(p) => {
            out.push_str("Idh(");
            out.push_str(&p.join("."));
            out.push(')');
        }
        Expr::HComp(a, b) => {
            print_expr_prec(a, 1, false, out);
            out.push_str(" | ");
            print_expr_prec(b, 1, true, out);
        }
        Expr::VComp(a, b) => {
            print_expr_prec(a, 2, false, out);
            out.push_str(" / ");
            print_expr_prec(b, 2, true, out);
        }
    }
    if parens {
        out.push(')');
    }
}

/// Render an expression in the concrete syntax accepted by [`parse_expr`].
pub fn print_expr(e: &Expr) -> String {
    let mut s = String::new();
    print_expr_prec(e, 0, false, &mut s);
    s
}

/// Canonical text form; `parse(print_manifest(m))` equals `m`.
pub fn print_manifest(m: &Manifest) -> String {
    let mut s = String::new();
    for d in &m.decls {
        match &d.kind {
            DeclKind::Category { name, body } => match body {
                CategoryBody::Fixture(f) => {
                    let fx = match f {
                        FixtureRef::Terminal => "terminal".to_string(),
                        FixtureRef::QuintetArrow => "quintet-arrow".to_string(),
                        FixtureRef::Parity => "parity".to_string(),
                        FixtureRef::ThinIdempotent => "thin-idempotent".to_string(),
                        FixtureRef::Involution => "involution".to_string(),
                        FixtureRef::InvolutionParity => "involution-parity".to_string(),
                        FixtureRef::FreeArrow => "free-arrow".to_string(),
                        FixtureRef::Grid { rows, cols } => format!("grid {} {}", rows, cols),
                    };
                    s.push_str(&format!("category {} fixture {}\n", name, fx));
                }
                CategoryBody::Tensor { left, right } => {
                    s.push_str(&format!("category {} tensor {} {}\n", name, left, right));
                }
                CategoryBody::Free(b) => {
                    s.push_str(&format!("category {} free {{\n", name));
                    if !b.objects.is_empty() {
                        s.push_str(&format!("  objects {}\n", b.objects.join(" ")));
                    }
                    for (n, a, z) in &b.hcells {
                        s.push_str(&format!("  hcell {} {} {}\n", n, a, z));
                    }
                    for (n, a, z) in &b.vcells {
                        s.push_str(&format!("  vcell {} {} {}\n", n, a, z));
                    }
                    for q in &b.squares {
                        s.push_str(&format!(
                            "  square {} {} {} {} {}\n",
                            q.name,
                            print_path(&q.top),
                            print_path(&q.bottom),
                            print_path(&q.left),
                            print_path(&q.right)
                        ));
                    }
                    for (l, r) in &b.hrules {
                        s.push_str(&format!("  hrule {} {}\n", print_path(l), print_path(r)));
                    }
                    for (l, r) in &b.vrules {
                        s.push_str(&format!("  vrule {} {}\n", print_path(l), print_path(r)));
                    }
                    for (n, l, r) in &b.sqrules {
                        s.push_str(&format!("  sqrule {} {} = {}\n", n, print_expr(l), print_expr(r)));
                    }
                    s.push_str("}\n");
                }
                CategoryBody::Tabulated(b) => {
                    s.push_str(&format!("category {} tabulated {{\n", name));
                    if !b.objects.is_empty() {
                        s.push_str(&format!("  objects {}\n", b.objects.join(" ")));
                    }
                    for (n, a, z) in &b.hcells {
                        s.push_str(&format!("  hcell {} {} {}\n", n, a, z));
                    }
                    for (n, a, z) in &b.vcells {
                        s.push_str(&format!("  vcell {} {} {}\n", n, a, z));
                    }
                    if !b.hid.is_empty() {
                        s.push_str(&format!("  hid {}\n", b.hid.join(" ")));
                    }
                    if !b.vid.is_empty() {
                        s.push_str(&format!("  vid {}\n", b.vid.join(" ")));
                    }
                    for (n, t, bo, l, r) in &b.squares {
                        s.push_str(&format!("  square {} {} {} {} {}\n", n, t, bo, l, r));
                    }
                    if !b.sqidh.is_empty() {
                        s.push_str(&format!("  sqidh {}\n", b.sqidh.join(" ")));
                    }
                    if !b.sqidv.is_empty() {
                        s.push_str(&format!("  sqidv {}\n", b.sqidv.join(" ")));
                    }
                    for (x, y, z) in &b.hcomp {
                        s.push_str(&format!("  hcomp {} {} {}\n", x, y, z));
                    }
                    for (x, y, z) in &b.vcomp {
                        s.push_str(&format!("  vcomp {} {} {}\n", x, y, z));
                    }
                    for (x, y, z) in &b.sqh {
                        s.push_str(&format!("  sqh {} {} {}\n", x, y, z));
                    }
                    for (x, y, z) in &b.sqv {
                        s.push_str(&format!("  sqv {} {} {}\n", x, y, z));
                    }
                    s.push_str("}\n");
                }
            },
            DeclKind::Functor { name, src, tgt, body } => {
                s.push_str(&format!("functor {} {} {} {{\n", name, src, tgt));
                for (a, x) in &body.obj {
                    s.push_str(&format!("  obj {} {}\n", a, x));
                }
                for (a, p) in &body.hcell {
                    s.push_str(&format!("  hcell {} {}\n", a, print_path(p)));
                }
                for (a, p) in &body.vcell {
                    s.push_str(&format!("  vcell {} {}\n", a, print_path(p)));
                }
                for (a, e) in &body.square {
                    s.push_str(&format!("  square {} {}\n", a, print_expr(e)));
                }
                for (f, g, fw, bw) in &body.cmph {
                    s.push_str(&format!("  cmph {} {} {} {}\n", f, g, print_expr(fw), print_expr(bw)));
                }
                for (f, g, fw, bw) in &body.cmpv {
                    s.push_str(&format!("  cmpv {} {} {} {}\n", f, g, print_expr(fw), print_expr(bw)));
                }
                for (a, fw, bw) in &body.unith {
                    s.push_str(&format!("  unith {} {} {}\n", a, print_expr(fw), print_expr(bw)));
                }
                for (a, fw, bw) in &body.unitv {
                    s.push_str(&format!("  unitv {} {} {}\n", a, print_expr(fw), print_expr(bw)));
                }
                s.push_str("}\n");
            }
            DeclKind::Check { name, target } => match target {
                CheckTarget::Laws(c) => s.push_str(&format!("check {} laws {}\n", name, c)),
                CheckTarget::Functor(f) => s.push_str(&format!("check {} functor {}\n", name, f)),
            },
        }
    }
    s
}

// ---------------------------------------------------------------------------
// Name tables and expression resolution
// ---------------------------------------------------------------------------

/// Name-to-id lookup for one category's cells.
#[derive(Clone, Debug, Default)]
pub struct Names {
    pub obj: HashMap<String, ObjId>,
    pub hcell: HashMap<String, (HCellId, ObjId, ObjId)>,
    pub vcell: HashMap<String, (VCellId, ObjId, ObjId)>,
    pub square: HashMap<String, SquareId>,
}

impl Names {
    fn insert_obj(&mut self, name: &str, id: ObjId, line: u32) -> Result<(), DslError> {
        if self.obj.insert(name.to_string(), id).is_some() {
            return Err(dup(name, "object", line));
        }
        Ok(())
    }

    pub fn from_category(cat: &DoubleCategory) -> Names {
        let mut n = Names::default();
        for i in 0..cat.object_count() as u32 {
            n.obj.insert(cat.object_name(ObjId(i)).to_string(), ObjId(i));
        }
        for i in 0..cat.hcell_count() as u32 {
            let f = HCellId(i);
            n.hcell.insert(cat.hcell_name(f).to_string(), (f, cat.h_src(f), cat.h_tgt(f)));
        }
        for i in 0..cat.vcell_count() as u32 {
            let u = VCellId(i);
            n.vcell.insert(cat.vcell_name(u).to_string(), (u, cat.v_src(u), cat.v_tgt(u)));
        }
        for i in 0..cat.square_count() as u32 {
            n.square.insert(cat.square_name(SquareId(i)).to_string(), SquareId(i));
        }
        n
    }
}

fn dup(name: &str, kind: &str, line: u32) -> DslError {
    DslError::Type { line, detail: format!("duplicate {} name `{}`", kind, name) }
}

fn unknown(name: &str, line: u32) -> DslError {
    DslError::Resolution { line, name: name.to_string() }
}

fn lookup_obj(t: &Names, name: &str, line: u32) -> Result<ObjId, DslError> {
    t.obj.get(name).copied().ok_or_else(|| unknown(name, line))
}

fn lookup_h(t: &Names, name: &str, line: u32) -> Result<(HCellId, ObjId, ObjId), DslError> {
    t.hcell.get(name).copied().ok_or_else(|| unknown(name, line))
}

fn lookup_v(t: &Names, name: &str, line: u32) -> Result<(VCellId, ObjId, ObjId), DslError> {
    t.vcell.get(name).copied().ok_or_else(|| unknown(name, line))
}

/// Build a 1h-path from cell names, checking that the cells chain.
fn hpath_from(t: &Names, names: &[String], line: u32) -> Result<HPath, DslError> {
    let (first, s0, mut at) = lookup_h(t, &names[0], line)?;
    let mut cells = vec![first];
    for n in &names[1..] {
        let (f, src, tgt) = lookup_h(t, n, line)?;
        if src != at {
            return Err(DslError::Type {
                line,
                detail: format!("1h-path does not chain at `{}`", n),
            });
        }
        cells.push(f);
        at = tgt;
    }
    Ok(HPath { start: s0, cells })
}

fn vpath_from(t: &Names, names: &[String], line: u32) -> Result<VPath, DslError> {
    let (first, s0, mut at) = lookup_v(t, &names[0], line)?;
    let mut cells = vec![first];
    for n in &names[1..] {
        let (u, src, tgt) = lookup_v(t, n, line)?;
        if src != at {
            return Err(DslError::Type {
                line,
                detail: format!("1v-path does not chain at `{}`", n),
            });
        }
        cells.push(u);
        at = tgt;
    }
    Ok(VPath { start: s0, cells })
}

/// Resolve an expression against a category's name table.
pub fn resolve_expr(e: &Expr, t: &Names, line: u32) -> Result<SquareExpr, DslError> {
    Ok(match e {
        Expr::Gen(n) => SquareExpr::Gen(
            t.square.get(n).copied().ok_or_else(|| unknown(n, line))?,
        ),
        Expr::UnitH(o) => SquareExpr::HId(VPath::id(lookup_obj(t, o, line)?)),
        Expr::UnitV(o) => SquareExpr::VId(HPath::id(lookup_obj(t, o, line)?)),
        Expr::IdOnH(p) => SquareExpr::VId(hpath_from(t, p, line)?),
        Expr::IdOnV(p) => SquareExpr::HId(vpath_from(t, p, line)?),
        Expr::HComp(a, b) => {
            resolve_expr(a, t, line)?.beside(resolve_expr(b, t, line)?)
        }
        Expr::VComp(a, b) => {
            resolve_expr(a, t, line)?.above(resolve_expr(b, t, line)?)
        }
    })
}

/// Render a resolved expression back into concrete syntax using a
/// category's cell names.
pub fn unresolve_expr(e: &SquareExpr, cat: &DoubleCategory) -> Expr {
    match e {
        SquareExpr::Gen(s) => Expr::Gen(sanitize(cat.square_name(*s))),
        SquareExpr::HId(p) => {
            if p.is_id() {
                Expr::UnitH(sanitize(cat.object_name(p.start)))
            } else {
                Expr::IdOnV(p.cells.iter().map(|&u| sanitize(cat.vcell_name(u))).collect())
            }
        }
        SquareExpr::VId(p) => {
            if p.is_id() {
                Expr::UnitV(sanitize(cat.object_name(p.start)))
            } else {
                Expr::IdOnH(p.cells.iter().map(|&f| sanitize(cat.hcell_name(f))).collect())
            }
        }
        SquareExpr::HComp(a, b) => {
            Expr::HComp(Box::new(unresolve_expr(a, cat)), Box::new(unresolve_expr(b, cat)))
        }
        SquareExpr::VComp(a, b) => {
            Expr::VComp(Box::new(unresolve_expr(a, cat)), Box::new(unresolve_expr(b, cat)))
        }
    }
}

/// Replace characters reserved by the grammar so generated names lex as
/// single identifiers.
fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_whitespace() || PUNCT.contains(&c) || c == ';' { '_' } else { c })
        .collect()
}

// ---------------------------------------------------------------------------
// Resolution
// ---------------------------------------------------------------------------

/// A resolved category together with its name table.
pub struct CatEntry {
    pub cat: Rc<DoubleCategory>,
    pub names: Names,
}

enum CatSlot {
    Ready(CatEntry),
    /// Construction reached law validation and failed; reported as a check
    /// failure rather than an input error.
    LawBroken { detail: String },
}

pub struct Env {
    cats: Vec<(String, CatSlot)>,
    functors: Vec<(String, Rc<DoublePseudoFunctor>)>,
    checks: Vec<(String, CheckTarget, Span)>,
}

impl Env {
    pub fn category(&self, name: &str) -> Option<&CatEntry> {
        self.cats.iter().find(|(n, _)| n == name).and_then(|(_, s)| match s {
            CatSlot::Ready(e) => Some(e),
            CatSlot::LawBroken { .. } => None,
        })
    }

    pub fn functor(&self, name: &str) -> Option<&Rc<DoublePseudoFunctor>> {
        self.functors.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    /// Names of all declared categories, in declaration order.
    pub fn category_names(&self) -> Vec<&str> {
        self.cats.iter().map(|(n, _)| n.as_str()).collect()
    }
}

/// Options shared by resolution and the command runner.
#[derive(Clone, Debug, Default)]
pub struct RunOpts {
    /// Rewrite-step budget for free categories (`--max-rewrite`).
    pub max_rewrite: Option<usize>,
    /// Path-length bound for enumerations (`--max-len`).
    pub max_len: Option<usize>,
    /// Category to interpret command-line expressions in (`--in`).
    pub in_cat: Option<String>,
}

/// Build every declaration of a manifest.
pub fn resolve(man: &Manifest, opts: &RunOpts) -> Result<Env, DslError> {
    let mut env = Env { cats: Vec::new(), functors: Vec::new(), checks: Vec::new() };
    let mut taken: HashMap<String, ()> = HashMap::new();
    for d in &man.decls {
        let line = d.span.line;
        let name = match &d.kind {
            DeclKind::Category { name, .. }
            | DeclKind::Functor { name, .. }
            | DeclKind::Check { name, .. } => name.clone(),
        };
        if taken.insert(name.clone(), ()).is_some() {
            return Err(dup(&name, "declaration", line));
        }
        match &d.kind {
            DeclKind::Category { name, body } => {
                let slot = build_category(body, &env, opts, line)?;
                env.cats.push((name.clone(), slot));
            }
            DeclKind::Functor { name, src, tgt, body } => {
                let f = build_functor(src, tgt, body, &env, line)?;
                env.functors.push((name.clone(), Rc::new(f)));
            }
            DeclKind::Check { name, target } => {
                let referenced = match target {
                    CheckTarget::Laws(c) => {
                        env.cats.iter().any(|(n, _)| n == c).then_some(()).ok_or_else(|| unknown(c, line))
                    }
                    CheckTarget::Functor(f) => env
                        .functors
                        .iter()
                        .any(|(n, _)| n == f)
                        .then_some(())
                        .ok_or_else(|| unknown(f, line)),
                };
                referenced?;
                env.checks.push((name.clone(), target.clone(), d.span));
            }
        }
    }
    Ok(env)
}

fn wrap_build(res: Result<DoubleCategory, DblError>, line: u32) -> Result<CatSlot, DslError> {
    match res {
        Ok(cat) => {
            let names = Names::from_category(&cat);
            Ok(CatSlot::Ready(CatEntry { cat: Rc::new(cat), names }))
        }
        Err(DblError::LawViolation { law, witness }) => {
            Ok(CatSlot::LawBroken { detail: format!("{} (witness: {})", law, witness) })
        }
        Err(e) => Err(DslError::Type { line, detail: e.to_string() }),
    }
}

fn build_category(
    body: &CategoryBody,
    env: &Env,
    opts: &RunOpts,
    line: u32,
) -> Result<CatSlot, DslError> {
    match body {
        CategoryBody::Fixture(f) => {
            let res = match f {
                FixtureRef::Terminal => fixtures::terminal(),
                FixtureRef::QuintetArrow => fixtures::quintet(&fixtures::walking_arrow()),
                FixtureRef::Parity => fixtures::parity(),
                FixtureRef::ThinIdempotent => fixtures::thin_idempotent(),
                FixtureRef::Involution => fixtures::involution(),
                FixtureRef::InvolutionParity => fixtures::involution_parity(),
                FixtureRef::FreeArrow => {
                    fixtures::free_on_one_hcell().and_then(DoubleCategory::mk_free)
                }
                FixtureRef::Grid { rows, cols } => fixtures::grid(*rows, *cols).map(|g| g.cat),
            };
            wrap_build(res, line)
        }
        CategoryBody::Tensor { left, right } => {
            let l = env
                .category(left)
                .ok_or_else(|| unknown(left, line))?
                .cat
                .clone();
            let r = env
                .category(right)
                .ok_or_else(|| unknown(right, line))?
                .cat
                .clone();
            match graytensor::tensor(l, r) {
                Ok(t) => wrap_build(Ok(Rc::try_unwrap(t.cat).unwrap_or_else(|rc| (*rc).clone_shallow())), line),
                Err(e) => Err(DslError::Type { line, detail: e.to_string() }),
            }
        }
        CategoryBody::Free(b) => build_free(b, opts, line),
        CategoryBody::Tabulated(b) => build_tab(b, line),
    }
}

fn build_free(b: &FreeBody, opts: &RunOpts, line: u32) -> Result<CatSlot, DslError> {
    // Name table built from the declaration itself, so square rules can be
    // resolved before the category exists.
    let mut t = Names::default();
    for (i, o) in b.objects.iter().enumerate() {
        t.insert_obj(o, ObjId(i as u32), line)?;
    }
    let mut hcells = Vec::new();
    for (i, (n, a, z)) in b.hcells.iter().enumerate() {
        let src = lookup_obj(&t, a, line)?;
        let tgt = lookup_obj(&t, z, line)?;
        if t.hcell.insert(n.clone(), (HCellId(i as u32), src, tgt)).is_some() {
            return Err(dup(n, "1h-cell", line));
        }
        hcells.push(FreeHCell { name: n.clone(), src, tgt });
    }
    let mut vcells = Vec::new();
    for (i, (n, a, z)) in b.vcells.iter().enumerate() {
        let src = lookup_obj(&t, a, line)?;
        let tgt = lookup_obj(&t, z, line)?;
        if t.vcell.insert(n.clone(), (VCellId(i as u32), src, tgt)).is_some() {
            return Err(dup(n, "1v-cell", line));
        }
        vcells.push(FreeVCell { name: n.clone(), src, tgt });
    }
    let mut squares = Vec::new();
    for (i, q) in b.squares.iter().enumerate() {
        if q.top.is_empty() || q.bottom.is_empty() {
            return Err(DslError::Type {
                line,
                detail: format!("square `{}` needs nonempty top and bottom paths", q.name),
            });
        }
        let top = hpath_from(&t, &q.top, line)?;
        let bottom = hpath_from(&t, &q.bottom, line)?;
        let top_end = end_of_h(&top, &hcells);
        let left = if q.left.is_empty() {
            VPath::id(top.start)
        } else {
            vpath_from(&t, &q.left, line)?
        };
        let right = if q.right.is_empty() {
            VPath::id(top_end)
        } else {
            vpath_from(&t, &q.right, line)?
        };
        if t.square.insert(q.name.clone(), SquareId(i as u32)).is_some() {
            return Err(dup(&q.name, "square", line));
        }
        squares.push(FreeSquareGen { name: q.name.clone(), top, bottom, left, right });
    }
    let mut h_rules = Vec::new();
    for (l, r) in &b.hrules {
        if l.is_empty() {
            return Err(DslError::Type { line, detail: "hrule needs a nonempty left side".into() });
        }
        let lhs = hpath_from(&t, l, line)?;
        let rhs = if r.is_empty() { HPath::id(lhs.start) } else { hpath_from(&t, r, line)? };
        h_rules.push(HPathRule { lhs: lhs.cells, rhs: rhs.cells });
    }
    let mut v_rules = Vec::new();
    for (l, r) in &b.vrules {
        if l.is_empty() {
            return Err(DslError::Type { line, detail: "vrule needs a nonempty left side".into() });
        }
        let lhs = vpath_from(&t, l, line)?;
        let rhs = if r.is_empty() { VPath::id(lhs.start) } else { vpath_from(&t, r, line)? };
        v_rules.push(VPathRule { lhs: lhs.cells, rhs: rhs.cells });
    }
    let mut sq_rules = Vec::new();
    for (n, l, r) in &b.sqrules {
        sq_rules.push(SquareRule {
            name: n.clone(),
            lhs: resolve_expr(l, &t, line)?,
            rhs: resolve_expr(r, &t, line)?,
        });
    }
    let res = Free::new(b.objects.clone(), hcells, vcells, squares, h_rules, v_rules, sq_rules)
        .map(|mut f| {
            if let Some(bound) = opts.max_rewrite {
                f.rewrite_bound = bound;
            }
            DoubleCategory::Free(f)
        });
    wrap_build(res, line)
}

fn end_of_h(p: &HPath, hcells: &[FreeHCell]) -> ObjId {
    p.cells.last().map(|f| hcells[f.0 as usize].tgt).unwrap_or(p.start)
}

fn build_tab(b: &TabBody, line: u32) -> Result<CatSlot, DslError> {
    let mut t = Names::default();
    for (i, o) in b.objects.iter().enumerate() {
        t.insert_obj(o, ObjId(i as u32), line)?;
    }
    let mut hcells = Vec::new();
    for (i, (n, a, z)) in b.hcells.iter().enumerate() {
        let src = lookup_obj(&t, a, line)?;
        let tgt = lookup_obj(&t, z, line)?;
        if t.hcell.insert(n.clone(), (HCellId(i as u32), src, tgt)).is_some() {
            return Err(dup(n, "1h-cell", line));
        }
        hcells.push(TabHCell { name: n.clone(), src, tgt });
    }
    let mut vcells = Vec::new();
    for (i, (n, a, z)) in b.vcells.iter().enumerate() {
        let src = lookup_obj(&t, a, line)?;
        let tgt = lookup_obj(&t, z, line)?;
        if t.vcell.insert(n.clone(), (VCellId(i as u32), src, tgt)).is_some() {
            return Err(dup(n, "1v-cell", line));
        }
        vcells.push(TabVCell { name: n.clone(), src, tgt });
    }
    let mut squares = Vec::new();
    for (i, (n, top, bottom, left, right)) in b.squares.iter().enumerate() {
        let (top, ts, te) = lookup_h(&t, top, line)?;
        let (bottom, bs, be) = lookup_h(&t, bottom, line)?;
        let (left, ls, le) = lookup_v(&t, left, line)?;
        let (right, rs, re) = lookup_v(&t, right, line)?;
        if ts != ls || te != rs || bs != le || be != re {
            return Err(DslError::Type {
                line,
                detail: format!("square `{}` has mismatched corner objects", n),
            });
        }
        if t.square.insert(n.clone(), SquareId(i as u32)).is_some() {
            return Err(dup(n, "square", line));
        }
        squares.push(TabSquare { name: n.clone(), top, bottom, left, right });
    }
    let want = |got: usize, want: usize, what: &str| -> Result<(), DslError> {
        if got != want {
            Err(DslError::Type {
                line,
                detail: format!("{} lists {} names, expected {}", what, got, want),
            })
        } else {
            Ok(())
        }
    };
    want(b.hid.len(), b.objects.len(), "hid")?;
    want(b.vid.len(), b.objects.len(), "vid")?;
    want(b.sqidh.len(), b.vcells.len(), "sqidh")?;
    want(b.sqidv.len(), b.hcells.len(), "sqidv")?;
    let sq_of = |n: &String| -> Result<SquareId, DslError> {
        t.square.get(n).copied().ok_or_else(|| unknown(n, line))
    };
    let data = TabData {
        objects: b.objects.clone(),
        hcells,
        vcells,
        squares,
        h_id: b.hid.iter().map(|n| lookup_h(&t, n, line).map(|x| x.0)).collect::<Result<_, _>>()?,
        v_id: b.vid.iter().map(|n| lookup_v(&t, n, line).map(|x| x.0)).collect::<Result<_, _>>()?,
        h_comp: b
            .hcomp
            .iter()
            .map(|(x, y, z)| {
                Ok(((lookup_h(&t, x, line)?.0, lookup_h(&t, y, line)?.0), lookup_h(&t, z, line)?.0))
            })
            .collect::<Result<_, DslError>>()?,
        v_comp: b
            .vcomp
            .iter()
            .map(|(x, y, z)| {
                Ok(((lookup_v(&t, x, line)?.0, lookup_v(&t, y, line)?.0), lookup_v(&t, z, line)?.0))
            })
            .collect::<Result<_, DslError>>()?,
        sq_h: b
            .sqh
            .iter()
            .map(|(x, y, z)| Ok(((sq_of(x)?, sq_of(y)?), sq_of(z)?)))
            .collect::<Result<_, DslError>>()?,
        sq_v: b
            .sqv
            .iter()
            .map(|(x, y, z)| Ok(((sq_of(x)?, sq_of(y)?), sq_of(z)?)))
            .collect::<Result<_, DslError>>()?,
        sq_idh: b.sqidh.iter().map(sq_of).collect::<Result<_, _>>()?,
        sq_idv: b.sqidv.iter().map(sq_of).collect::<Result<_, _>>()?,
    };
    wrap_build(DoubleCategory::mk_tabulated(data), line)
}

fn build_functor(
    src: &str,
    tgt: &str,
    b: &FunctorBody,
    env: &Env,
    line: u32,
) -> Result<DoublePseudoFunctor, DslError> {
    let s = env.category(src).ok_or_else(|| unknown(src, line))?;
    let g = env.category(tgt).ok_or_else(|| unknown(tgt, line))?;
    let nobj = s.cat.object_count();
    let mut obj_map: Vec<Option<ObjId>> = vec![None; nobj];
    for (a, x) in &b.obj {
        let ai = lookup_obj(&s.names, a, line)?;
        obj_map[ai.0 as usize] = Some(lookup_obj(&g.names, x, line)?);
    }
    let obj_map: Vec<ObjId> = obj_map
        .into_iter()
        .enumerate()
        .map(|(i, o)| {
            o.ok_or_else(|| DslError::Type {
                line,
                detail: format!("object `{}` has no image", s.cat.object_name(ObjId(i as u32))),
            })
        })
        .collect::<Result<_, _>>()?;
    let mut h_map: Vec<Option<HPath>> = vec![None; s.cat.hcell_count()];
    for (a, p) in &b.hcell {
        let (f, fsrc, _) = lookup_h(&s.names, a, line)?;
        let img = if p.is_empty() {
            HPath::id(obj_map[fsrc.0 as usize])
        } else {
            hpath_from(&g.names, p, line)?
        };
        h_map[f.0 as usize] = Some(img);
    }
    let h_map: Vec<HPath> = h_map
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            p.ok_or_else(|| DslError::Type {
                line,
                detail: format!("1h-cell `{}` has no image", s.cat.hcell_name(HCellId(i as u32))),
            })
        })
        .collect::<Result<_, _>>()?;
    let mut v_map: Vec<Option<VPath>> = vec![None; s.cat.vcell_count()];
    for (a, p) in &b.vcell {
        let (u, usrc, _) = lookup_v(&s.names, a, line)?;
        let img = if p.is_empty() {
            VPath::id(obj_map[usrc.0 as usize])
        } else {
            vpath_from(&g.names, p, line)?
        };
        v_map[u.0 as usize] = Some(img);
    }
    let v_map: Vec<VPath> = v_map
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            p.ok_or_else(|| DslError::Type {
                line,
                detail: format!("1v-cell `{}` has no image", s.cat.vcell_name(VCellId(i as u32))),
            })
        })
        .collect::<Result<_, _>>()?;
    let mut sq_map: Vec<Option<SquareExpr>> = vec![None; s.cat.square_count()];
    for (a, e) in &b.square {
        let si = *s.names.square.get(a).ok_or_else(|| unknown(a, line))?;
        sq_map[si.0 as usize] = Some(resolve_expr(e, &g.names, line)?);
    }
    let sq_map: Vec<SquareExpr> = sq_map
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            e.ok_or_else(|| DslError::Type {
                line,
                detail: format!("square `{}` has no image", s.cat.square_name(SquareId(i as u32))),
            })
        })
        .collect::<Result<_, _>>()?;
    let mut cmp_h = HashMap::new();
    for (f, gname, fw, bw) in &b.cmph {
        let fi = lookup_h(&s.names, f, line)?.0;
        let gi = lookup_h(&s.names, gname, line)?.0;
        cmp_h.insert(
            (fi, gi),
            Inv { fwd: resolve_expr(fw, &g.names, line)?, bwd: resolve_expr(bw, &g.names, line)? },
        );
    }
    let mut cmp_v = HashMap::new();
    for (u, wname, fw, bw) in &b.cmpv {
        let ui = lookup_v(&s.names, u, line)?.0;
        let wi = lookup_v(&s.names, wname, line)?.0;
        cmp_v.insert(
            (ui, wi),
            Inv { fwd: resolve_expr(fw, &g.names, line)?, bwd: resolve_expr(bw, &g.names, line)? },
        );
    }
    let mut unit_h = HashMap::new();
    for (a, fw, bw) in &b.unith {
        let ai = lookup_obj(&s.names, a, line)?;
        unit_h.insert(
            ai,
            Inv { fwd: resolve_expr(fw, &g.names, line)?, bwd: resolve_expr(bw, &g.names, line)? },
        );
    }
    let mut unit_v = HashMap::new();
    for (a, fw, bw) in &b.unitv {
        let ai = lookup_obj(&s.names, a, line)?;
        unit_v.insert(
            ai,
            Inv { fwd: resolve_expr(fw, &g.names, line)?, bwd: resolve_expr(bw, &g.names, line)? },
        );
    }
    Ok(DoublePseudoFunctor {
        src: s.cat.clone(),
        tgt: g.cat.clone(),
        obj_map,
        h_map,
        v_map,
        sq_map,
        cmp_h,
        unit_h,
        cmp_v,
        unit_v,
    })
}

impl DoubleCategory {
    /// Cheap structural clone used when a tensor result is shared.
    fn clone_shallow(&self) -> DoubleCategory {
        match self {
            DoubleCategory::Tab(t) => DoubleCategory::Tab(t.clone()),
            DoubleCategory::Free(f) => DoubleCategory::Free(f.clone()),
        }
    }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum Command {
    /// Run all validations registered for one declaration.
    Check { name: String },
    Normalize { expr: String },
    Eq { e1: String, e2: String },
    Tensor { a: String, b: String, emit: bool },
    Compose { kind: String, names: Vec<String> },
    VerifyTricat { instance: String },
    Render { expr: String, format: RenderFormat },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Dot,
}

/// Command result: printable output plus the process exit code.
///
/// Exit codes: 0 all checks passed, 1 at least one check failed, 2 the
/// input was rejected (parse/resolution/type error), 3 at least one
/// equality was inconclusive and nothing failed outright.
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

fn input_error(msg: impl fmt::Display) -> Outcome {
    Outcome { output: format!("ERROR: {}\n", msg), code: 2 }
}

fn report_lines(rep: &Report, out: &mut String) {
    for e in &rep.entries {
        match e.verdict {
            Verdict::Pass => out.push_str(&format!("PASS {} {}\n", e.check, e.witness)),
            Verdict::Fail => {
                out.push_str(&format!("FAIL {} {}: {}\n", e.check, e.witness, e.detail))
            }
            Verdict::Unknown => {
                out.push_str(&format!("UNKNOWN {} {}: {}\n", e.check, e.witness, e.detail))
            }
        }
    }
}

fn report_code(rep: &Report) -> i32 {
    if !rep.ok() {
        1
    } else if rep.has_unknown() {
        3
    } else {
        0
    }
}

/// Execute one command against a manifest.
pub fn run(man: &Manifest, cmd: &Command, opts: &RunOpts) -> Outcome {
    let env = match resolve(man, opts) {
        Ok(e) => e,
        Err(e) => return input_error(e),
    };
    match cmd {
        Command::Check { name } => cmd_check(&env, name),
        Command::Normalize { expr } => cmd_normalize(&env, opts, expr),
        Command::Eq { e1, e2 } => cmd_eq(&env, opts, e1, e2),
        Command::Tensor { a, b, emit } => cmd_tensor(&env, opts, a, b, *emit),
        Command::Compose { kind, names } => cmd_compose(&env, kind, names),
        Command::VerifyTricat { instance } => cmd_verify_tricat(instance),
        Command::Render { expr, format } => cmd_render(&env, opts, expr, *format),
    }
}

fn law_lines(env: &Env, name: &str, out: &mut String) -> Option<i32> {
    let slot = env.cats.iter().find(|(n, _)| n == name)?;
    match &slot.1 {
        CatSlot::Ready(e) => {
            match &*e.cat {
                DoubleCategory::Tab(_) => {
                    out.push_str(&format!(
                        "PASS laws {}: composition tables validated (associativity, units, \
                         interchange, identity squares)\n",
                        name
                    ));
                }
                DoubleCategory::Free(f) => {
                    out.push_str(&format!(
                        "PASS laws {}: presentation validated; confluence certificate: {}\n",
                        name,
                        if f.confluent { "yes" } else { "no (equalities may be inconclusive)" }
                    ));
                }
            }
            Some(0)
        }
        CatSlot::LawBroken { detail } => {
            out.push_str(&format!("FAIL laws {}: {}\n", name, detail));
            Some(1)
        }
    }
}

fn cmd_check(env: &Env, name: &str) -> Outcome {
    let mut out = String::new();
    // A named check declaration takes precedence, then a category or
    // functor of that name with its default validation suite.
    let target = env
        .checks
        .iter()
        .find(|(n, _, _)| n == name)
        .map(|(_, t, _)| t.clone())
        .or_else(|| {
            if env.cats.iter().any(|(n, _)| n == name) {
                Some(CheckTarget::Laws(name.to_string()))
            } else if env.functor(name).is_some() {
                Some(CheckTarget::Functor(name.to_string()))
            } else {
                None
            }
        });
    match target {
        None => input_error(DslError::Resolution { line: 0, name: name.to_string() }),
        Some(CheckTarget::Laws(c)) => match law_lines(env, &c, &mut out) {
            Some(code) => Outcome { output: out, code },
            None => input_error(DslError::Resolution { line: 0, name: c }),
        },
        Some(CheckTarget::Functor(f)) => match env.functor(&f) {
            None => input_error(DslError::Resolution { line: 0, name: f }),
            Some(func) => {
                let rep = check_functor_axioms(func);
                report_lines(&rep, &mut out);
                let code = report_code(&rep);
                if code == 0 {
                    out.push_str(&format!("PASS functor {}: all axioms hold\n", f));
                }
                Outcome { output: out, code }
            }
        },
    }
}

fn sole_category<'a>(env: &'a Env, opts: &RunOpts) -> Result<&'a CatEntry, Outcome> {
    if let Some(name) = &opts.in_cat {
        return env.category(name).ok_or_else(|| {
            input_error(DslError::Resolution { line: 0, name: name.clone() })
        });
    }
    let ready: Vec<&str> = env
        .cats
        .iter()
        .filter(|(_, s)| matches!(s, CatSlot::Ready(_)))
        .map(|(n, _)| n.as_str())
        .collect();
    match ready.as_slice() {
        [one] => Ok(env.category(one).unwrap()),
        [] => Err(input_error("the manifest declares no category")),
        _ => Err(input_error(format!(
            "several categories are declared ({}); pick one with --in",
            ready.join(", ")
        ))),
    }
}

fn parse_in(entry: &CatEntry, text: &str) -> Result<SquareExpr, Outcome> {
    let e = parse_expr(text).map_err(input_error)?;
    resolve_expr(&e, &entry.names, 0).map_err(input_error)
}

fn describe_nf(nf: &NormalForm, cat: &DoubleCategory) -> String {
    match nf {
        NormalForm::Tab(s) => format!("square {}", cat.square_name(*s)),
        NormalForm::Free(FreeNf::HIdent(p)) => {
            if p.is_id() {
                format!("identity square at {}", cat.object_name(p.start))
            } else {
                format!(
                    "horizontal identity on {}",
                    p.cells.iter().map(|&u| cat.vcell_name(u)).collect::<Vec<_>>().join(".")
                )
            }
        }
        NormalForm::Free(FreeNf::VIdent(p)) => format!(
            "vertical identity on {}",
            p.cells.iter().map(|&f| cat.hcell_name(f)).collect::<Vec<_>>().join(".")
        ),
        NormalForm::Free(FreeNf::Diag(d)) => {
            let rows = d.rows.last().copied().unwrap_or(0);
            let mut parts = Vec::new();
            for r in 1..=rows {
                let row: Vec<&str> = d
                    .events
                    .iter()
                    .zip(&d.rows)
                    .filter(|(_, &rr)| rr == r)
                    .map(|(ev, _)| cat.square_name(ev.sq))
                    .collect();
                parts.push(format!("[{}]", row.join(" ")));
            }
            format!("diagram rows {}", parts.join(" "))
        }
    }
}

fn cmd_normalize(env: &Env, opts: &RunOpts, expr: &str) -> Outcome {
    let entry = match sole_category(env, opts) {
        Ok(e) => e,
        Err(o) => return o,
    };
    let e = match parse_in(entry, expr) {
        Ok(e) => e,
        Err(o) => return o,
    };
    match entry.cat.normalize(&e) {
        Ok(nf) => Outcome {
            output: format!("PASS normalize: {}\n", describe_nf(&nf, &entry.cat)),
            code: 0,
        },
        Err(DblError::Inconclusive { reason }) => {
            Outcome { output: format!("UNKNOWN normalize: {}\n", reason), code: 3 }
        }
        Err(e) => input_error(e),
    }
}

fn cmd_eq(env: &Env, opts: &RunOpts, e1: &str, e2: &str) -> Outcome {
    let entry = match sole_category(env, opts) {
        Ok(e) => e,
        Err(o) => return o,
    };
    let (a, b) = match (parse_in(entry, e1), parse_in(entry, e2)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(o), _) | (_, Err(o)) => return o,
    };
    match entry.cat.equal(&a, &b) {
        Ok(Eq3::Equal) => {
            Outcome { output: "PASS eq: the expressions are equal\n".to_string(), code: 0 }
        }
        Ok(Eq3::NotEqual) => {
            Outcome { output: "FAIL eq: the expressions are not equal\n".to_string(), code: 1 }
        }
        Ok(Eq3::Unknown) => Outcome {
            output: "UNKNOWN eq: equality could not be decided within bounds\n".to_string(),
            code: 3,
        },
        Err(e) => input_error(e),
    }
}

fn cmd_tensor(env: &Env, opts: &RunOpts, a: &str, b: &str, emit: bool) -> Outcome {
    let l = match env.category(a) {
        Some(e) => e.cat.clone(),
        None => return input_error(DslError::Resolution { line: 0, name: a.to_string() }),
    };
    let r = match env.category(b) {
        Some(e) => e.cat.clone(),
        None => return input_error(DslError::Resolution { line: 0, name: b.to_string() }),
    };
    let t = match graytensor::tensor(l.clone(), r.clone()) {
        Ok(t) => t,
        Err(e) => return input_error(e),
    };
    let mut out = String::new();
    let cat = &t.cat;
    out.push_str(&format!(
        "tensor {}x{}: objects={} hcells={} vcells={} squares={} interchangers={}\n",
        a,
        b,
        cat.object_count(),
        cat.hcell_count(),
        cat.vcell_count(),
        cat.square_count(),
        t.vflips.len()
    ));
    let mut rep = Report::new();
    // Identity 1-cells of either factor map to identity paths.
    unit_checks(&t, &l, &r, &mut rep);
    // Every defining relation of the presentation holds in the quotient.
    if let Ok(f) = cat.as_free() {
        for rule in &f.sq_rules {
            rep.eq_result("tensor-rule", &rule.name, cat.equal(&rule.lhs, &rule.rhs));
        }
    }
    // Corner-to-corner 1h-composites up to the length bound.
    let max_len = opts.max_len.unwrap_or(2);
    let corner_src = ObjId(0);
    let corner_tgt = ObjId(cat.object_count() as u32 - 1);
    match cat.enumerate_hcells(corner_src, corner_tgt, max_len) {
        Ok(paths) => out.push_str(&format!(
            "tensor-corner-paths {}->{} len<={}: count={}\n",
            cat.object_name(corner_src),
            cat.object_name(corner_tgt),
            max_len,
            paths.len()
        )),
        Err(e) => rep.fail("tensor-corner-paths", "enumeration", e.to_string()),
    }
    report_lines(&rep, &mut out);
    if emit {
        if let Ok(f) = cat.as_free() {
            out.push_str(&emit_free_manifest(&format!("{}x{}", a, b), f));
        }
    }
    Outcome { code: report_code(&rep), output: out }
}

fn unit_checks(
    t: &graytensor::TensorCategory,
    l: &Rc<DoubleCategory>,
    r: &Rc<DoubleCategory>,
    rep: &mut Report,
) {
    for x in 0..l.object_count() as u32 {
        let p = if let Ok(tab) = l.as_tab() {
            HPath::one(ObjId(x), tab.data.h_id[x as usize])
        } else {
            HPath::id(ObjId(x))
        };
        for y in 0..r.object_count() as u32 {
            match t.map_h_left(&p, ObjId(y)) {
                Ok(img) if img.is_id() => rep.pass(
                    "tensor-unit",
                    format!("left identity at {} with {}", l.object_name(ObjId(x)), r.object_name(ObjId(y))),
                ),
                Ok(_) => rep.fail(
                    "tensor-unit",
                    format!("left identity at {}", l.object_name(ObjId(x))),
                    "identity 1h-cell does not collapse".to_string(),
                ),
                Err(e) => rep.fail("tensor-unit", "left", e.to_string()),
            }
        }
    }
    for y in 0..r.object_count() as u32 {
        let p = if let Ok(tab) = r.as_tab() {
            HPath::one(ObjId(y), tab.data.h_id[y as usize])
        } else {
            HPath::id(ObjId(y))
        };
        for x in 0..l.object_count() as u32 {
            match t.map_h_right(ObjId(x), &p) {
                Ok(img) if img.is_id() => rep.pass(
                    "tensor-unit",
                    format!("right identity at {} with {}", r.object_name(ObjId(y)), l.object_name(ObjId(x))),
                ),
                Ok(_) => rep.fail(
                    "tensor-unit",
                    format!("right identity at {}", r.object_name(ObjId(y))),
                    "identity 1h-cell does not collapse".to_string(),
                ),
                Err(e) => rep.fail("tensor-unit", "right", e.to_string()),
            }
        }
    }
}

/// Print a free presentation as a manifest declaration the parser accepts.
pub fn emit_free_manifest(name: &str, f: &Free) -> String {
    let hname = |id: &HCellId| sanitize(&f.hcells[id.0 as usize].name);
    let vname = |id: &VCellId| sanitize(&f.vcells[id.0 as usize].name);
    let oname = |id: ObjId| sanitize(&f.objects[id.0 as usize]);
    let cat = DoubleCategory::Free(f.clone());
    let body = FreeBody {
        objects: f.objects.iter().map(|o| sanitize(o)).collect(),
        hcells: f
            .hcells
            .iter()
            .map(|h| (sanitize(&h.name), oname(h.src), oname(h.tgt)))
            .collect(),
        vcells: f
            .vcells
            .iter()
            .map(|v| (sanitize(&v.name), oname(v.src), oname(v.tgt)))
            .collect(),
        squares: f
            .squares
            .iter()
            .map(|q| FreeSqDecl {
                name: sanitize(&q.name),
                top: q.top.cells.iter().map(hname).collect(),
                bottom: q.bottom.cells.iter().map(hname).collect(),
                left: q.left.cells.iter().map(vname).collect(),
                right: q.right.cells.iter().map(vname).collect(),
            })
            .collect(),
        hrules: f
            .h_rules
            .iter()
            .map(|rule| {
                (rule.lhs.iter().map(hname).collect(), rule.rhs.iter().map(hname).collect())
            })
            .collect(),
        vrules: f
            .v_rules
            .iter()
            .map(|rule| {
                (rule.lhs.iter().map(vname).collect(), rule.rhs.iter().map(vname).collect())
            })
            .collect(),
        sqrules: f
            .sq_rules
            .iter()
            .map(|rule| {
                (
                    sanitize(&rule.name),
                    unresolve_expr(&rule.lhs, &cat),
                    unresolve_expr(&rule.rhs, &cat),
                )
            })
            .collect(),
    };
    let m = Manifest {
        decls: vec![Decl {
            span: Span::default(),
            kind: DeclKind::Category { name: sanitize(name), body: CategoryBody::Free(body) },
        }],
    };
    print_manifest(&m)
}

/// Print a fully tabled category as a manifest declaration.
pub fn emit_tab_manifest(name: &str, t: &crate::category::Tabulated) -> String {
    let d = &t.data;
    let hname = |id: HCellId| sanitize(&d.hcells[id.0 as usize].name);
    let vname = |id: VCellId| sanitize(&d.vcells[id.0 as usize].name);
    let sname = |id: SquareId| sanitize(&d.squares[id.0 as usize].name);
    let oname = |id: ObjId| sanitize(&d.objects[id.0 as usize]);
    let sorted3 = |m: &HashMap<(u32, u32), u32>| -> Vec<(u32, u32, u32)> {
        let mut v: Vec<_> = m.iter().map(|(&(a, b), &c)| (a, b, c)).collect();
        v.sort();
        v
    };
    let body = TabBody {
        objects: d.objects.iter().map(|o| sanitize(o)).collect(),
        hcells: d
            .hcells
            .iter()
            .map(|h| (sanitize(&h.name), oname(h.src), oname(h.tgt)))
            .collect(),
        vcells: d
            .vcells
            .iter()
            .map(|v| (sanitize(&v.name), oname(v.src), oname(v.tgt)))
            .collect(),
        squares: d
            .squares
            .iter()
            .map(|q| {
                (sanitize(&q.name), hname(q.top), hname(q.bottom), vname(q.left), vname(q.right))
            })
            .collect(),
        hid: d.h_id.iter().map(|&f| hname(f)).collect(),
        vid: d.v_id.iter().map(|&u| vname(u)).collect(),
        sqidh: d.sq_idh.iter().map(|&s| sname(s)).collect(),
        sqidv: d.sq_idv.iter().map(|&s| sname(s)).collect(),
        hcomp: sorted3(&d.h_comp.iter().map(|(&(a, b), &c)| ((a.0, b.0), c.0)).collect())
            .into_iter()
            .map(|(a, b, c)| (hname(HCellId(a)), hname(HCellId(b)), hname(HCellId(c))))
            .collect(),
        vcomp: sorted3(&d.v_comp.iter().map(|(&(a, b), &c)| ((a.0, b.0), c.0)).collect())
            .into_iter()
            .map(|(a, b, c)| (vname(VCellId(a)), vname(VCellId(b)), vname(VCellId(c))))
            .collect(),
        sqh: sorted3(&d.sq_h.iter().map(|(&(a, b), &c)| ((a.0, b.0), c.0)).collect())
            .into_iter()
            .map(|(a, b, c)| (sname(SquareId(a)), sname(SquareId(b)), sname(SquareId(c))))
            .collect(),
        sqv: sorted3(&d.sq_v.iter().map(|(&(a, b), &c)| ((a.0, b.0), c.0)).collect())
            .into_iter()
            .map(|(a, b, c)| (sname(SquareId(a)), sname(SquareId(b)), sname(SquareId(c))))
            .collect(),
    };
    let m = Manifest {
        decls: vec![Decl {
            span: Span::default(),
            kind: DeclKind::Category { name: sanitize(name), body: CategoryBody::Tabulated(body) },
        }],
    };
    print_manifest(&m)
}

fn cmd_compose(env: &Env, kind: &str, names: &[String]) -> Outcome {
    match kind {
        "functor" => {
            let [f1, f2] = match names {
                [a, b] => [a, b],
                _ => return input_error("compose functor takes exactly two functor names"),
            };
            let inner = match env.functor(f1) {
                Some(f) => f.clone(),
                None => return input_error(DslError::Resolution { line: 0, name: f1.clone() }),
            };
            let outer = match env.functor(f2) {
                Some(f) => f.clone(),
                None => return input_error(DslError::Resolution { line: 0, name: f2.clone() }),
            };
            // `compose functor F G` applies F first, then G.
            let composed = match compose_functors(&outer, &inner) {
                Ok(c) => c,
                Err(e) => return input_error(e),
            };
            let rep = check_functor_axioms(&composed);
            let mut out = String::new();
            report_lines(&rep, &mut out);
            let code = report_code(&rep);
            if code == 0 {
                out.push_str(&format!("PASS compose: {} then {} is a pseudo double functor\n", f1, f2));
            }
            Outcome { output: out, code }
        }
        _ => input_error(format!(
            "unsupported composition kind `{}`; this build composes functors \
             (transformation composition is available through the library API)",
            kind
        )),
    }
}

// ---------------------------------------------------------------------------
// verify-tricat instances
// ---------------------------------------------------------------------------

/// Constant functor from the terminal category into a one-object slice of
/// the target, used by the built-in tricategory instances.
fn constant_functor(
    src: Rc<DoubleCategory>,
    tgt: Rc<DoubleCategory>,
    obj: ObjId,
) -> DoublePseudoFunctor {
    DoublePseudoFunctor {
        src,
        tgt,
        obj_map: vec![obj],
        h_map: vec![HPath::id(obj)],
        v_map: vec![VPath::id(obj)],
        sq_map: vec![SquareExpr::VId(HPath::id(obj))],
        cmp_h: Default::default(),
        unit_h: Default::default(),
        cmp_v: Default::default(),
        unit_v: Default::default(),
    }
}

/// The walking arrow as a 2-cell between the two constant functors into the
/// quintet category of the walking arrow.
fn arrow_two_cell(q: &Rc<DoubleCategory>) -> Result<DoublePsNatTrans, DblError> {
    let src = Rc::new(fixtures::terminal()?);
    let f = Rc::new(constant_functor(src.clone(), q.clone(), ObjId(0)));
    let g = Rc::new(constant_functor(src, q.clone(), ObjId(1)));
    let ah = HPath::one(ObjId(0), HCellId(2));
    let av = VPath::one(ObjId(0), VCellId(2));
    let b = crate::cell::Boundary {
        top: ah.clone(),
        bottom: HPath::id(ObjId(1)),
        left: av.clone(),
        right: VPath::id(ObjId(1)),
    };
    let collapse = q
        .enumerate_squares(&b, 1)?
        .into_iter()
        .next()
        .ok_or_else(|| DblError::invalid("no collapse square in the quintet category"))?;
    let a1 = HorizontalPsNatTrans {
        f: f.clone(),
        g: g.clone(),
        comp: vec![ah.clone()],
        comp_sq: vec![SquareExpr::VId(ah.clone())],
        delta: vec![SquareExpr::VId(ah)],
    };
    let a0 = VerticalPsNatTrans {
        f,
        g,
        comp: vec![av.clone()],
        comp_sq: vec![SquareExpr::HId(av.clone())],
        delta: vec![SquareExpr::HId(av)],
    };
    Ok(DoublePsNatTrans { a0, a1, t: vec![collapse.clone()], r: vec![collapse] })
}

/// A genuinely pseudo endofunctor on the one-object parity category:
/// identity on cells, every comparison the odd square.
fn parity_pseudo_endo(c: &Rc<DoubleCategory>) -> DoublePseudoFunctor {
    let n = || Inv { fwd: SquareExpr::Gen(SquareId(1)), bwd: SquareExpr::Gen(SquareId(1)) };
    DoublePseudoFunctor {
        src: c.clone(),
        tgt: c.clone(),
        obj_map: vec![ObjId(0)],
        h_map: vec![HPath::one(ObjId(0), HCellId(0))],
        v_map: vec![VPath::one(ObjId(0), VCellId(0))],
        sq_map: vec![SquareExpr::Gen(SquareId(0)), SquareExpr::Gen(SquareId(1))],
        cmp_h: HashMap::from([((HCellId(0), HCellId(0)), n())]),
        unit_h: HashMap::from([(ObjId(0), n())]),
        cmp_v: HashMap::from([((VCellId(0), VCellId(0)), n())]),
        unit_v: HashMap::from([(ObjId(0), n())]),
    }
}

fn tricat_instance_report(instance: &str) -> Result<Report, DblError> {
    let mut rep = Report::new();
    let (ga, be, al, tgt): (DoublePsNatTrans, DoublePsNatTrans, DoublePsNatTrans, Rc<DoubleCategory>) =
        match instance {
            "walking-arrow" => {
                let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow())?);
                let al = arrow_two_cell(&q)?;
                let idq = Rc::new(identity_functor(q.clone()));
                let be = identity_double(idq.clone())?;
                let ga = identity_double(idq)?;
                (ga, be, al, q)
            }
            "pseudo-parity" => {
                let f = Rc::new(fixtures::pseudo_parity_functor()?);
                let tgt = f.tgt.clone();
                let e = Rc::new(parity_pseudo_endo(&tgt));
                let al = identity_double(f)?;
                let be = identity_double(e.clone())?;
                let ga = identity_double(e)?;
                (ga, be, al, tgt)
            }
            _ => {
                return Err(DblError::invalid(format!(
                    "unknown tricategory instance `{}`; available: walking-arrow, pseudo-parity",
                    instance
                )))
            }
        };
    rep.merge(check_double(&al));
    // Associator with its inverse.
    let a = associator(&ga, &be, &al)?;
    let lhs = hcomp_double(&hcomp_double(&ga, &be)?, &al)?;
    let rhs = hcomp_double(&ga, &hcomp_double(&be, &al)?)?;
    rep.merge(check_modification(&a, &lhs, &rhs));
    let inv = invert_modification(&a, &tgt)?;
    rep.merge(check_modification(&inv, &rhs, &lhs));
    // Unitors.
    let (ul, ur) = unitors(&al)?;
    let id_out = identity_double(Rc::new(identity_functor(al.a1.f.tgt.clone())))?;
    let id_in = identity_double(Rc::new(identity_functor(al.a1.f.src.clone())))?;
    rep.merge(check_modification(&ul, &hcomp_double(&id_out, &al)?, &al));
    rep.merge(check_modification(&ur, &hcomp_double(&al, &id_in)?, &al));
    // Interchange with its inverse, on identity vertical padding.
    let ga2 = identity_double(al.a1.g.clone())?;
    let de2 = identity_double(be.a1.g.clone())?;
    let x = hcomp_double(&vcomp_double(&be, &de2)?, &vcomp_double(&al, &ga2)?)?;
    let y = vcomp_double(&hcomp_double(&be, &al)?, &hcomp_double(&de2, &ga2)?)?;
    let xi = interchange(&al, &ga2, &be, &de2)?;
    rep.merge(check_modification(&xi, &x, &y));
    let xinv = invert_modification(&xi, &tgt)?;
    rep.merge(check_modification(&xinv, &y, &x));
    // Coherence sweeps.
    rep.merge(verify_pentagon(&ga, &ga, &be, &al));
    rep.merge(verify_unit_coherence(&be, &al));
    rep.merge(verify_associator_naturality(
        &identity_modification(&ga),
        &ga,
        &identity_modification(&be),
        &be,
        &identity_modification(&al),
        &al,
    ));
    Ok(rep)
}

fn cmd_verify_tricat(instance: &str) -> Outcome {
    match tricat_instance_report(instance) {
        Ok(rep) => {
            let mut out = String::new();
            report_lines(&rep, &mut out);
            let code = report_code(&rep);
            if code == 0 {
                out.push_str(&format!("PASS verify-tricat {}: all constraint cells check\n", instance));
            }
            Outcome { output: out, code }
        }
        Err(e) => input_error(e),
    }
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

fn collect_cells(
    e: &SquareExpr,
    cat: &DoubleCategory,
    hs: &mut Vec<HCellId>,
    vs: &mut Vec<VCellId>,
) -> Result<(), DblError> {
    match e {
        SquareExpr::Gen(s) => {
            let b = cat.square_boundary(*s)?;
            hs.extend(b.top.cells.iter().copied());
            hs.extend(b.bottom.cells.iter().copied());
            vs.extend(b.left.cells.iter().copied());
            vs.extend(b.right.cells.iter().copied());
        }
        SquareExpr::HId(p) => vs.extend(p.cells.iter().copied()),
        SquareExpr::VId(p) => hs.extend(p.cells.iter().copied()),
        SquareExpr::HComp(a, b) | SquareExpr::VComp(a, b) => {
            collect_cells(a, cat, hs, vs)?;
            collect_cells(b, cat, hs, vs)?;
        }
    }
    Ok(())
}

fn path_names_h(cat: &DoubleCategory, p: &HPath) -> String {
    if p.is_id() {
        format!("1({})", cat.object_name(p.start))
    } else {
        p.cells.iter().map(|&f| cat.hcell_name(f)).collect::<Vec<_>>().join(".")
    }
}

fn path_names_v(cat: &DoubleCategory, p: &VPath) -> String {
    if p.is_id() {
        format!("1({})", cat.object_name(p.start))
    } else {
        p.cells.iter().map(|&u| cat.vcell_name(u)).collect::<Vec<_>>().join(".")
    }
}

fn cmd_render(env: &Env, opts: &RunOpts, expr: &str, format: RenderFormat) -> Outcome {
    let entry = match sole_category(env, opts) {
        Ok(e) => e,
        Err(o) => return o,
    };
    let cat = &entry.cat;
    let e = match parse_in(entry, expr) {
        Ok(e) => e,
        Err(o) => return o,
    };
    let b = match cat.boundary(&e) {
        Ok(b) => b,
        Err(err) => return input_error(err),
    };
    match format {
        RenderFormat::Ascii => {
            let mut out = String::new();
            out.push_str(&format!("top:    {}\n", path_names_h(cat, &b.top)));
            out.push_str(&format!("left:   {}\n", path_names_v(cat, &b.left)));
            out.push_str(&format!("right:  {}\n", path_names_v(cat, &b.right)));
            out.push_str(&format!("bottom: {}\n", path_names_h(cat, &b.bottom)));
            match cat.normalize(&e) {
                Ok(nf) => out.push_str(&format!("cells:  {}\n", describe_nf(&nf, cat))),
                Err(DblError::Inconclusive { reason }) => {
                    out.push_str(&format!("cells:  not normalized ({})\n", reason))
                }
                Err(err) => return input_error(err),
            }
            Outcome { output: out, code: 0 }
        }
        RenderFormat::Dot => {
            let mut hs = Vec::new();
            let mut vs = Vec::new();
            if let Err(err) = collect_cells(&e, cat, &mut hs, &mut vs) {
                return input_error(err);
            }
            hs.sort();
            hs.dedup();
            vs.sort();
            vs.dedup();
            let mut objs: Vec<ObjId> = Vec::new();
            let push_obj = |o: ObjId, objs: &mut Vec<ObjId>| {
                if !objs.contains(&o) {
                    objs.push(o);
                }
            };
            for &f in &hs {
                push_obj(cat.h_src(f), &mut objs);
                push_obj(cat.h_tgt(f), &mut objs);
            }
            for &u in &vs {
                push_obj(cat.v_src(u), &mut objs);
                push_obj(cat.v_tgt(u), &mut objs);
            }
            push_obj(b.top.start, &mut objs);
            objs.sort();
            let esc = |s: &str| s.replace('\\', "\\\\").replace('"', "\\\"");
            let mut out = String::new();
            out.push_str("digraph pasting {\n");
            out.push_str(&format!(
                "  label=\"{}\";\n",
                esc(&print_expr(&unresolve_expr(&e, cat)))
            ));
            for &o in &objs {
                out.push_str(&format!(
                    "  \"o{}\" [label=\"{}\"];\n",
                    o.0,
                    esc(cat.object_name(o))
                ));
            }
            for &f in &hs {
                out.push_str(&format!(
                    "  \"o{}\" -> \"o{}\" [label=\"{}\"];\n",
                    cat.h_src(f).0,
                    cat.h_tgt(f).0,
                    esc(cat.hcell_name(f))
                ));
            }
            for &u in &vs {
                out.push_str(&format!(
                    "  \"o{}\" -> \"o{}\" [label=\"{}\", style=dashed];\n",
                    cat.v_src(u).0,
                    cat.v_tgt(u).0,
                    esc(cat.vcell_name(u))
                ));
            }
            out.push_str("}\n");
            Outcome { output: out, code: 0 }
        }
    }
}
