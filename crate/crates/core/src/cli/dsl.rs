//! The text format: a sequence of `kind name { ... }` blocks.
//!
//! Statements inside a block end at `;` or a newline; `#` starts a comment.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::error::Error;
use crate::geolog::syntax::{Formula, GeomTheory, Sequent, Slot, SortId, SortKind, Term, VarDecl};
use crate::geolog::{FinCategory, FinModel, Morphism, Site, TheoryExtension, UNDEFINED};
use crate::order::{DistLattice, FinPoset};
use crate::present::{FormalTopology, GrdSystem, PropSequent, PropTheory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{line}:{col}: syntax error: expected {expected}, found {found}")]
    Syntax { line: usize, col: usize, expected: String, found: String },
    #[error("line {line}: {msg}")]
    Resolution { line: usize, msg: String },
    #[error("line {line}: block `{block}` is invalid: {source}")]
    Validation {
        line: usize,
        block: String,
        #[source]
        source: Error,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Sym(&'static str),
    Newline,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 19] =
    ["|-", "<|", "<=", "->", "/\\", "\\/", "==", "{", "}", ";", ":", ",", "(", ")", "[", "]", "=", "|", "."];

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<Token>, DslError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut c = 0;
        while c < chars.len() {
            let ch = chars[c];
            if ch == '#' {
                break;
            }
            if ch.is_whitespace() {
                c += 1;
                continue;
            }
            let (line, col) = (i + 1, c + 1);
            if is_name_char(ch) {
                let start = c;
                while c < chars.len() && is_name_char(chars[c]) {
                    c += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..c].iter().collect()), line, col });
                continue;
            }
            let rest: String = chars[c..].iter().take(2).collect();
            match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
                Some(s) => {
                    out.push(Token { tok: Tok::Sym(s), line, col });
                    c += s.chars().count();
                }
                None => {
                    return Err(DslError::Syntax {
                        line,
                        col,
                        expected: "a name or symbol".into(),
                        found: format!("`{ch}`"),
                    })
                }
            }
        }
        out.push(Token { tok: Tok::Newline, line: i + 1, col: chars.len() + 1 });
    }
    let last = out.last().map_or(1, |t| t.line + 1);
    out.push(Token { tok: Tok::Eof, line: last, col: 1 });
    Ok(out)
}

/// A model table entry list: values, `_` for undefined.
pub type Table = Vec<Option<usize>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockBody {
    Frame { elems: Vec<String>, leq: Vec<(String, String)> },
    FormalTop { elems: Vec<String>, leq: Vec<(String, String)>, covers: Vec<(String, Vec<String>)> },
    Grd { gens: Vec<String>, rels: Vec<(String, Vec<String>)>, disjs: Vec<(String, String, Vec<String>)> },
    Theory { symbols: Vec<String>, axioms: Vec<(Vec<String>, Vec<Vec<String>>)> },
    GeoTheory(GeomTheory),
    Category { objects: Vec<String>, morphisms: Vec<(String, String, String)>, composes: Vec<(String, String, String)> },
    Site { category: String, covers: Vec<(String, Vec<String>)> },
    Extend { base: String, ext: String, maps: Vec<(String, String)> },
    Set { elems: Vec<String> },
    Function { from: String, to: String, map: Vec<(String, String)> },
    Model { theory: String, sizes: Vec<(String, usize)>, funcs: Vec<(String, Table)>, preds: Vec<(String, Vec<bool>)> },
}

impl BlockBody {
    pub fn kind(&self) -> &'static str {
        match self {
            BlockBody::Frame { .. } => "frame",
            BlockBody::FormalTop { .. } => "formaltop",
            BlockBody::Grd { .. } => "grd",
            BlockBody::Theory { .. } => "theory",
            BlockBody::GeoTheory(_) => "geotheory",
            BlockBody::Category { .. } => "category",
            BlockBody::Site { .. } => "site",
            BlockBody::Extend { .. } => "extend",
            BlockBody::Set { .. } => "set",
            BlockBody::Function { .. } => "function",
            BlockBody::Model { .. } => "model",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub name: String,
    pub body: BlockBody,
}

/// Parsed blocks in file order. Equality ignores source positions.
#[derive(Clone, Debug, Default)]
pub struct Document {
    pub blocks: Vec<Block>,
    lines: Vec<usize>,
}

impl PartialEq for Document {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks
    }
}

impl Eq for Document {}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, DslError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of file".into(),
        }
    }

    fn error<T>(&self, expected: &str) -> PResult<T> {
        let t = self.peek();
        Err(DslError::Syntax { line: t.line, col: t.col, expected: expected.into(), found: Self::describe(&t.tok) })
    }

    fn at_sym(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Sym(x) if *x == s)
    }

    fn at_ident(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(x) if x == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.at_sym(s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> PResult<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.error(&format!("`{s}`"))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.error("a name"),
        }
    }

    fn keyword(&mut self, k: &str) -> PResult<()> {
        if self.at_ident(k) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(&format!("`{k}`"))
        }
    }

    fn skip_newlines(&mut self) {
        while matches!(self.peek().tok, Tok::Newline) || self.at_sym(";") {
            self.pos += 1;
        }
    }

    fn end_statement(&mut self) -> PResult<()> {
        if self.eat_sym(";") || matches!(self.peek().tok, Tok::Newline) || self.at_sym("}") {
            Ok(())
        } else {
            self.error("`;` or end of line")
        }
    }

    fn at_statement_end(&self) -> bool {
        self.at_sym(";") || self.at_sym("}") || matches!(self.peek().tok, Tok::Newline | Tok::Eof)
    }

    /// Names up to the end of the statement, commas optional.
    fn names(&mut self) -> PResult<Vec<String>> {
        let mut out = Vec::new();
        while !self.at_statement_end() {
            out.push(self.ident()?);
            self.eat_sym(",");
        }
        Ok(out)
    }

    fn pairs(&mut self, sep: &str) -> PResult<Vec<(String, String)>> {
        let mut out = Vec::new();
        while !self.at_statement_end() {
            let a = self.ident()?;
            self.expect_sym(sep)?;
            let b = self.ident()?;
            out.push((a, b));
            self.eat_sym(",");
        }
        Ok(out)
    }

    fn document(&mut self) -> PResult<(Vec<Block>, Vec<usize>)> {
        let mut blocks = Vec::new();
        let mut lines = Vec::new();
        loop {
            self.skip_newlines();
            if matches!(self.peek().tok, Tok::Eof) {
                break;
            }
            let line = self.peek().line;
            let kind = self.ident()?;
            let name = self.ident()?;
            self.expect_sym("{")?;
            let body = match kind.as_str() {
                "frame" => self.frame_body(false)?,
                "formaltop" => self.frame_body(true)?,
                "grd" => self.grd_body()?,
                "theory" => self.theory_body()?,
                "geotheory" => BlockBody::GeoTheory(self.geotheory_body()?),
                "category" => self.category_body()?,
                "site" => self.site_body()?,
                "extend" => self.extend_body()?,
                "set" => self.set_body()?,
                "function" => self.function_body()?,
                "model" => self.model_body()?,
                _ => {
                    self.pos -= 3;
                    return self.error("a block kind");
                }
            };
            self.expect_sym("}")?;
            blocks.push(Block { name, body });
            lines.push(line);
        }
        Ok((blocks, lines))
    }

    /// Runs `stmt` on each statement until `}`, passing the leading keyword.
    fn statements(&mut self, mut stmt: impl FnMut(&mut Self, &str) -> PResult<()>) -> PResult<()> {
        loop {
            self.skip_newlines();
            if self.at_sym("}") {
                return Ok(());
            }
            let kw = self.ident()?;
            stmt(self, &kw)?;
            self.end_statement()?;
        }
    }

    fn frame_body(&mut self, formal: bool) -> PResult<BlockBody> {
        let (mut elems, mut leq, mut covers) = (Vec::new(), Vec::new(), Vec::new());
        self.statements(|p, kw| match kw {
            "elems" => {
                p.expect_sym(":")?;
                elems.extend(p.names()?);
                Ok(())
            }
            "leq" => {
                p.expect_sym(":")?;
                leq.extend(p.pairs("<=")?);
                Ok(())
            }
            "cover" if formal => {
                let a = p.ident()?;
                p.expect_sym("<|")?;
                covers.push((a, p.names()?));
                Ok(())
            }
            _ => {
                p.pos -= 1;
                p.error(if formal { "`elems`, `leq` or `cover`" } else { "`elems` or `leq`" })
            }
        })?;
        Ok(if formal { BlockBody::FormalTop { elems, leq, covers } } else { BlockBody::Frame { elems, leq } })
    }

    fn grd_body(&mut self) -> PResult<BlockBody> {
        let (mut gens, mut rels, mut disjs) = (Vec::new(), Vec::new(), Vec::new());
        self.statements(|p, kw| match kw {
            "gens" => {
                p.expect_sym(":")?;
                gens.extend(p.names()?);
                Ok(())
            }
            "rel" => {
                let r = p.ident()?;
                p.expect_sym(":")?;
                rels.push((r, p.names()?));
                Ok(())
            }
            "disj" => {
                let d = p.ident()?;
                p.keyword("of")?;
                let r = p.ident()?;
                p.expect_sym(":")?;
                disjs.push((d, r, p.names()?));
                Ok(())
            }
            _ => {
                p.pos -= 1;
                p.error("`gens`, `rel` or `disj`")
            }
        })?;
        Ok(BlockBody::Grd { gens, rels, disjs })
    }

    fn conjunction(&mut self, stop: &[&str]) -> PResult<Vec<String>> {
        if self.at_ident("true") {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        while !self.at_statement_end() && !stop.iter().any(|s| self.at_sym(s)) {
            out.push(self.ident()?);
        }
        if out.is_empty() {
            return self.error("a symbol or `true`");
        }
        Ok(out)
    }

    fn theory_body(&mut self) -> PResult<BlockBody> {
        let (mut symbols, mut axioms) = (Vec::new(), Vec::new());
        self.statements(|p, kw| match kw {
            "symbols" => {
                p.expect_sym(":")?;
                symbols.extend(p.names()?);
                Ok(())
            }
            "axiom" => {
                p.eat_sym(":");
                let ante = p.conjunction(&["|-"])?;
                p.expect_sym("|-")?;
                let mut disj = Vec::new();
                if p.at_ident("false") {
                    p.pos += 1;
                } else {
                    disj.push(p.conjunction(&["|"])?);
                    while p.eat_sym("|") {
                        disj.push(p.conjunction(&["|"])?);
                    }
                }
                axioms.push((ante, disj));
                Ok(())
            }
            _ => {
                p.pos -= 1;
                p.error("`symbols` or `axiom`")
            }
        })?;
        Ok(BlockBody::Theory { symbols, axioms })
    }

    fn category_body(&mut self) -> PResult<BlockBody> {
        let (mut objects, mut morphisms, mut composes) = (Vec::new(), Vec::new(), Vec::new());
        self.statements(|p, kw| match kw {
            "objects" => {
                p.expect_sym(":")?;
                objects.extend(p.names()?);
                Ok(())
            }
            "morphism" => {
                let f = p.ident()?;
                p.expect_sym(":")?;
                let a = p.ident()?;
                p.expect_sym("->")?;
                morphisms.push((f, a, p.ident()?));
                Ok(())
            }
            "compose" => {
                let f = p.ident()?;
                p.expect_sym(";")?;
                let g = p.ident()?;
                p.expect_sym("=")?;
                composes.push((f, g, p.ident()?));
                Ok(())
            }
            _ => {
                p.pos -= 1;
                p.error("`objects`, `morphism` or `compose`")
            }
        })?;
        Ok(BlockBody::Category { objects, morphisms, composes })
    }

    fn site_body(&mut self) -> PResult<BlockBody> {
        let (mut category, mut covers) = (None, Vec::new());
        self.statements(|p, kw| match kw {
            "category" => {
                p.expect_sym(":")?;
                category = Some(p.ident()?);
                Ok(())
            }
            "cover" => {
                let target = p.ident()?;
                p.expect_sym(":")?;
                covers.push((target, p.names()?));
                Ok(())
            }
            _ => {
                p.pos -= 1;
                p.error("`category` or `cover`")
            }
        })?;
        let Some(category) = category else { return self.error("a `category:` line before `}`") };
        Ok(BlockBody::Site { category, covers })
    }

    fn extend_body(&mut self) -> PResult<BlockBody> {
        let (mut base, mut ext, mut maps) = (None, None, Vec::new());
        self.statements(|p, kw| match kw {
            "base" => {
                p.expect_sym(":")?;
                base = Some(p.ident()?);
                Ok(())
            }
            "ext" => {
                p.expect_sym(":")?;
                ext = Some(p.ident()?);
                Ok(())
            }
            "map" => {
                p.eat_sym(":");
                maps.extend(p.pairs("->")?);
                Ok(())
            }
            _ => {
                p.pos -= 1;
                p.error("`base`, `ext` or `map`")
            }
        })?;
        match (base, ext) {
            (Some(base), Some(ext)) => Ok(BlockBody::Extend { base, ext, maps }),
            _ => self.error("both `base:` and `ext:` before `}`"),
        }
    }

    fn set_body(&mut self) -> PResult<BlockBody> {
        let mut elems = Vec::new();
        self.statements(|p, kw| match kw {
            "elems" => {
                p.expect_sym(":")?;
                elems.extend(p.names()?);
                Ok(())
            }
            _ => {
                p.pos -= 1;
                p.error("`elems`")
            }
        })?;
        Ok(BlockBody::Set { elems })
    }

    fn function_body(&mut self) -> PResult<BlockBody> {
        let (mut from, mut to, mut map) = (None, None, Vec::new());
        self.statements(|p, kw| match kw {
            "from" => {
                p.expect_sym(":")?;
                from = Some(p.ident()?);
                Ok(())
            }
            "to" => {
                p.expect_sym(":")?;
                to = Some(p.ident()?);
                Ok(())
            }
            "map" => {
                p.expect_sym(":")?;
                map.extend(p.pairs("->")?);
                Ok(())
            }
            _ => {
                p.pos -= 1;
                p.error("`from`, `to` or `map`")
            }
        })?;
        match (from, to) {
            (Some(from), Some(to)) => Ok(BlockBody::Function { from, to, map }),
            _ => self.error("both `from:` and `to:` before `}`"),
        }
    }

    fn model_body(&mut self) -> PResult<BlockBody> {
        let (mut theory, mut sizes, mut funcs, mut preds) = (None, Vec::new(), Vec::new(), Vec::new());
        self.statements(|p, kw| match kw {
            "theory" => {
                p.expect_sym(":")?;
                theory = Some(p.ident()?);
                Ok(())
            }
            "size" => {
                let s = p.ident()?;
                p.expect_sym("=")?;
                let n = p.number()?;
                sizes.push((s, n));
                Ok(())
            }
            "func" => {
                let f = p.ident()?;
                p.expect_sym("=")?;
                let mut table = Vec::new();
                while !p.at_statement_end() {
                    if p.at_ident("_") {
                        p.pos += 1;
                        table.push(None);
                    } else {
                        table.push(Some(p.number()?));
                    }
                }
                funcs.push((f, table));
                Ok(())
            }
            "pred" => {
                let q = p.ident()?;
                p.expect_sym("=")?;
                let mut ext = Vec::new();
                while !p.at_statement_end() {
                    ext.push(p.number()? != 0);
                }
                preds.push((q, ext));
                Ok(())
            }
            _ => {
                p.pos -= 1;
                p.error("`theory`, `size`, `func` or `pred`")
            }
        })?;
        let Some(theory) = theory else { return self.error("a `theory:` line before `}`") };
        Ok(BlockBody::Model { theory, sizes, funcs, preds })
    }

    fn number(&mut self) -> PResult<usize> {
        match &self.peek().tok {
            Tok::Ident(s) if s.chars().all(|c| c.is_ascii_digit()) => match s.parse() {
                Ok(n) => {
                    self.pos += 1;
                    Ok(n)
                }
                Err(_) => self.error("a number"),
            },
            _ => self.error("a number"),
        }
    }

    fn geotheory_body(&mut self) -> PResult<GeomTheory> {
        let mut t = GeomTheory::new();
        loop {
            self.skip_newlines();
            if self.at_sym("}") {
                return Ok(t);
            }
            let (line, col) = (self.peek().line, self.peek().col);
            let kw = self.ident()?;
            let wrap = |e: Error| DslError::Resolution { line, msg: e.to_string() };
            match kw.as_str() {
                "sort" => {
                    let name = self.ident()?;
                    if self.eat_sym("=") {
                        self.keyword("fin")?;
                        let base = self.sort_ref(&t)?;
                        t.add_fin_sort(&name, base).map_err(wrap)?;
                    } else {
                        t.add_sort(&name).map_err(wrap)?;
                    }
                }
                "func" | "pfunc" => {
                    let name = self.ident()?;
                    self.expect_sym(":")?;
                    let mut args = Vec::new();
                    while !self.at_sym("->") {
                        args.push(self.sort_ref(&t)?);
                    }
                    self.expect_sym("->")?;
                    let ret = self.sort_ref(&t)?;
                    if kw == "func" {
                        t.add_func(&name, &args, ret).map_err(wrap)?;
                    } else {
                        t.add_partial_func(&name, &args, ret).map_err(wrap)?;
                    }
                }
                "pred" => {
                    let name = self.ident()?;
                    self.expect_sym(":")?;
                    let mut args = Vec::new();
                    while !self.at_statement_end() {
                        args.push(self.sort_ref(&t)?);
                    }
                    t.add_pred(&name, &args).map_err(wrap)?;
                }
                "axiom" => {
                    let s = self.sequent(&t)?;
                    t.add_axiom(s).map_err(wrap)?;
                }
                "bounded" => {
                    let label = self.ident()?;
                    if !t.axioms.iter().any(|a| a.label == label) {
                        return Err(DslError::Resolution { line, msg: format!("no axiom labelled `{label}`") });
                    }
                    t.bounded.push(label);
                }
                _ => {
                    return Err(DslError::Syntax {
                        line,
                        col,
                        expected: "`sort`, `func`, `pfunc`, `pred`, `axiom` or `bounded`".into(),
                        found: format!("`{kw}`"),
                    })
                }
            }
            self.end_statement()?;
        }
    }

    fn sort_ref(&mut self, t: &GeomTheory) -> PResult<SortId> {
        let line = self.peek().line;
        let name = self.ident()?;
        t.sort_id(&name).ok_or(DslError::Resolution { line, msg: format!("unknown sort `{name}`") })
    }

    fn sequent(&mut self, t: &GeomTheory) -> PResult<Sequent> {
        let label = self.ident()?;
        self.expect_sym("[")?;
        let mut scope = Scope { vars: Vec::new(), stack: Vec::new() };
        while !self.at_sym("]") {
            let name = self.ident()?;
            self.expect_sym(":")?;
            let sort = self.sort_ref(t)?;
            scope.push(name, sort);
            if !self.eat_sym(",") {
                break;
            }
        }
        self.expect_sym("]")?;
        let context = scope.vars.len();
        let premise = self.formula(t, &mut scope)?;
        self.expect_sym("|-")?;
        let conclusion = self.formula(t, &mut scope)?;
        Ok(Sequent { label, vars: scope.vars, context, premise, conclusion })
    }

    fn formula(&mut self, t: &GeomTheory, scope: &mut Scope) -> PResult<Formula> {
        let first = self.conj(t, scope)?;
        if !self.at_sym("\\/") {
            return Ok(first);
        }
        let mut parts = vec![first];
        while self.eat_sym("\\/") {
            parts.push(self.conj(t, scope)?);
        }
        Ok(Formula::Or(parts))
    }

    fn conj(&mut self, t: &GeomTheory, scope: &mut Scope) -> PResult<Formula> {
        let first = self.unary(t, scope)?;
        if !self.at_sym("/\\") {
            return Ok(first);
        }
        let mut parts = vec![first];
        while self.eat_sym("/\\") {
            parts.push(self.unary(t, scope)?);
        }
        Ok(Formula::And(parts))
    }

    fn unary(&mut self, t: &GeomTheory, scope: &mut Scope) -> PResult<Formula> {
        if self.eat_sym("(") {
            let f = self.formula(t, scope)?;
            self.expect_sym(")")?;
            return Ok(f);
        }
        if self.at_ident("true") {
            self.pos += 1;
            return Ok(Formula::Top);
        }
        if self.at_ident("false") {
            self.pos += 1;
            return Ok(Formula::Bottom);
        }
        if self.at_ident("exists") {
            self.pos += 1;
            let depth = scope.stack.len();
            let mut slots = Vec::new();
            loop {
                let name = self.ident()?;
                self.expect_sym(":")?;
                let sort = self.sort_ref(t)?;
                slots.push(scope.push(name, sort));
                if !self.eat_sym(",") {
                    break;
                }
            }
            self.expect_sym(".")?;
            let body = self.formula(t, scope)?;
            scope.stack.truncate(depth);
            return Ok(Formula::Exists(slots, Box::new(body)));
        }
        if let Tok::Ident(name) = &self.peek().tok {
            if let Some(p) = t.pred_id(name) {
                if scope.lookup(name).is_none() {
                    self.pos += 1;
                    self.expect_sym("(")?;
                    let args = self.term_list(t, scope, ")")?;
                    return Ok(Formula::Pred(p, args));
                }
            }
        }
        let lhs = self.term(t, scope)?;
        if self.eat_sym("=") {
            return Ok(Formula::Eq(lhs, self.term(t, scope)?));
        }
        if self.eat_sym("==") {
            self.expect_sym("{")?;
            let elems = self.term_list(t, scope, "}")?;
            return Ok(Formula::SetEq(lhs, elems));
        }
        if self.at_ident("in") {
            self.pos += 1;
            return Ok(Formula::Member(lhs, self.term(t, scope)?));
        }
        self.error("`=`, `==` or `in`")
    }

    fn term_list(&mut self, t: &GeomTheory, scope: &mut Scope, close: &str) -> PResult<Vec<Term>> {
        let mut out = Vec::new();
        if self.eat_sym(close) {
            return Ok(out);
        }
        loop {
            out.push(self.term(t, scope)?);
            if self.eat_sym(close) {
                return Ok(out);
            }
            self.expect_sym(",")?;
        }
    }

    fn term(&mut self, t: &GeomTheory, scope: &mut Scope) -> PResult<Term> {
        let line = self.peek().line;
        let name = self.ident()?;
        if let Some(slot) = scope.lookup(&name) {
            return Ok(Term::Var(slot));
        }
        let Some(f) = t.func_id(&name) else {
            return Err(DslError::Resolution { line, msg: format!("`{name}` is neither a variable nor a function") });
        };
        let args = if self.eat_sym("(") { self.term_list(t, scope, ")")? } else { Vec::new() };
        Ok(Term::App(f, args))
    }
}

struct Scope {
    vars: Vec<VarDecl>,
    stack: Vec<(String, Slot)>,
}

impl Scope {
    fn push(&mut self, name: String, sort: SortId) -> Slot {
        self.vars.push(VarDecl { name: name.clone(), sort });
        let slot = self.vars.len() - 1;
        self.stack.push((name, slot));
        slot
    }

    fn lookup(&self, name: &str) -> Option<Slot> {
        self.stack.iter().rev().find(|(n, _)| n == name).map(|&(_, s)| s)
    }
}

/// Parses and validates a document.
pub fn parse(text: &str) -> Result<Document, DslError> {
    let toks = lex(text)?;
    let (blocks, lines) = Parser { toks, pos: 0 }.document()?;
    let doc = Document { blocks, lines };
    let mut seen = HashMap::new();
    for (i, b) in doc.blocks.iter().enumerate() {
        if let Some(first) = seen.insert(b.name.as_str(), doc.lines[i]) {
            return Err(DslError::Resolution {
                line: doc.lines[i],
                msg: format!("`{}` already defined on line {first}", b.name),
            });
        }
    }
    for b in &doc.blocks {
        doc.validate(&b.name)?;
    }
    Ok(doc)
}

fn join(items: &[String]) -> String {
    items.join(" ")
}

/// Canonical text; `parse(&print(d)) == d`.
pub fn print(doc: &Document) -> String {
    let mut out = String::new();
    for (i, b) in doc.blocks.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "{} {} {{", b.body.kind(), b.name);
        for line in body_lines(&b.body) {
            let _ = writeln!(out, "  {line}");
        }
        out.push_str("}\n");
    }
    out
}

fn body_lines(body: &BlockBody) -> Vec<String> {
    let pairs = |ps: &[(String, String)], sep: &str| {
        ps.iter().map(|(a, b)| format!("{a}{sep}{b}")).collect::<Vec<_>>().join(" ")
    };
    let mut lines = Vec::new();
    match body {
        BlockBody::Frame { elems, leq } | BlockBody::FormalTop { elems, leq, .. } => {
            lines.push(format!("elems: {}", join(elems)));
            if !leq.is_empty() {
                lines.push(format!("leq: {}", pairs(leq, "<=")));
            }
            if let BlockBody::FormalTop { covers, .. } = body {
                for (a, u) in covers {
                    lines.push(format!("cover {a} <| {}", join(u)));
                }
            }
        }
        BlockBody::Grd { gens, rels, disjs } => {
            lines.push(format!("gens: {}", join(gens)));
            for (r, l) in rels {
                lines.push(format!("rel {r}: {}", join(l)));
            }
            for (d, r, l) in disjs {
                lines.push(format!("disj {d} of {r}: {}", join(l)));
            }
        }
        BlockBody::Theory { symbols, axioms } => {
            lines.push(format!("symbols: {}", join(symbols)));
            for (ante, disj) in axioms {
                let a = if ante.is_empty() { "true".to_owned() } else { join(ante) };
                let c = if disj.is_empty() {
                    "false".to_owned()
                } else {
                    disj.iter()
                        .map(|d| if d.is_empty() { "true".to_owned() } else { join(d) })
                        .collect::<Vec<_>>()
                        .join(" | ")
                };
                lines.push(format!("axiom {a} |- {c}"));
            }
        }
        BlockBody::GeoTheory(t) => lines.extend(t.render_body()),
        BlockBody::Category { objects, morphisms, composes } => {
            lines.push(format!("objects: {}", join(objects)));
            for (f, a, b) in morphisms {
                lines.push(format!("morphism {f}: {a} -> {b}"));
            }
            for (f, g, h) in composes {
                lines.push(format!("compose {f} ; {g} = {h}"));
            }
        }
        BlockBody::Site { category, covers } => {
            lines.push(format!("category: {category}"));
            for (t, fs) in covers {
                lines.push(format!("cover {t}: {}", join(fs)));
            }
        }
        BlockBody::Extend { base, ext, maps } => {
            lines.push(format!("base: {base}"));
            lines.push(format!("ext: {ext}"));
            if !maps.is_empty() {
                lines.push(format!("map {}", pairs(maps, "->")));
            }
        }
        BlockBody::Set { elems } => lines.push(format!("elems: {}", join(elems))),
        BlockBody::Function { from, to, map } => {
            lines.push(format!("from: {from}"));
            lines.push(format!("to: {to}"));
            lines.push(format!("map: {}", pairs(map, "->")));
        }
        BlockBody::Model { theory, sizes, funcs, preds } => {
            lines.push(format!("theory: {theory}"));
            for (s, n) in sizes {
                lines.push(format!("size {s} = {n}"));
            }
            for (f, table) in funcs {
                let vals: Vec<String> = table.iter().map(|v| v.map_or("_".to_owned(), |n| n.to_string())).collect();
                lines.push(format!("func {f} = {}", vals.join(" ")).trim_end().to_owned());
            }
            for (p, ext) in preds {
                let vals: Vec<&str> = ext.iter().map(|&b| if b { "1" } else { "0" }).collect();
                lines.push(format!("pred {p} = {}", vals.join(" ")).trim_end().to_owned());
            }
        }
    }
    lines
}

/// A function block resolved: domain names, codomain names, and the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedFunction {
    pub from_sort: String,
    pub from: Vec<String>,
    pub to_sort: String,
    pub to: Vec<String>,
    pub table: Vec<usize>,
}

impl Document {
    pub fn block(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name == name)
    }

    fn line_of(&self, name: &str) -> usize {
        self.blocks.iter().position(|b| b.name == name).map_or(0, |i| self.lines[i])
    }

    fn get(&self, name: &str, kinds: &[&str]) -> Result<&BlockBody, DslError> {
        match self.block(name) {
            Some(b) if kinds.contains(&b.body.kind()) => Ok(&b.body),
            Some(b) => Err(DslError::Resolution {
                line: self.line_of(name),
                msg: format!("`{name}` is a {}, expected {}", b.body.kind(), kinds.join(" or ")),
            }),
            None => Err(DslError::Resolution { line: 0, msg: format!("no block named `{name}`") }),
        }
    }

    fn invalid(&self, name: &str) -> impl Fn(Error) -> DslError + '_ {
        let line = self.line_of(name);
        let block = name.to_owned();
        move |source| DslError::Validation { line, block: block.clone(), source }
    }

    fn validate(&self, name: &str) -> Result<(), DslError> {
        match self.get(
            name,
            &[
                "frame",
                "formaltop",
                "grd",
                "theory",
                "geotheory",
                "category",
                "site",
                "extend",
                "set",
                "function",
                "model",
            ],
        )? {
            BlockBody::Frame { .. } => self.frame(name).map(drop),
            BlockBody::FormalTop { .. } => self.formal_topology(name).map(drop),
            BlockBody::Grd { .. } => self.grd(name).map(drop),
            BlockBody::Theory { .. } => self.prop_theory(name).map(drop),
            BlockBody::GeoTheory(_) => Ok(()),
            BlockBody::Category { .. } => self.category(name).map(drop),
            BlockBody::Site { .. } => self.site(name).map(drop),
            BlockBody::Extend { .. } => self.extension(name).map(drop),
            BlockBody::Set { .. } => self.set(name).map(drop),
            BlockBody::Function { .. } => self.function(name).map(drop),
            BlockBody::Model { .. } => self.model(name).map(drop),
        }
    }

    fn poset(&self, name: &str, elems: &[String], leq: &[(String, String)]) -> Result<FinPoset, DslError> {
        FinPoset::from_named(elems, leq).map_err(self.invalid(name))
    }

    pub fn frame(&self, name: &str) -> Result<DistLattice, DslError> {
        let BlockBody::Frame { elems, leq } = self.get(name, &["frame"])? else { unreachable!() };
        DistLattice::from_poset(&self.poset(name, elems, leq)?).map_err(self.invalid(name))
    }

    pub fn formal_topology(&self, name: &str) -> Result<FormalTopology, DslError> {
        let BlockBody::FormalTop { elems, leq, covers } = self.get(name, &["formaltop"])? else { unreachable!() };
        let base = self.poset(name, elems, leq)?;
        let idx = |s: &String| base.index_of(s).ok_or_else(|| Error::UnknownElement(s.clone()));
        let covers = covers
            .iter()
            .map(|(a, u)| Ok((idx(a)?, u.iter().map(idx).collect::<crate::Result<Vec<_>>>()?)))
            .collect::<crate::Result<Vec<_>>>()
            .map_err(self.invalid(name))?;
        FormalTopology::new(base, covers).map_err(self.invalid(name))
    }

    pub fn grd(&self, name: &str) -> Result<GrdSystem, DslError> {
        let BlockBody::Grd { gens, rels, disjs } = self.get(name, &["grd"])? else { unreachable!() };
        let find = |list: &[String], s: &String| {
            list.iter().position(|x| x == s).ok_or_else(|| Error::UnknownElement(s.clone()))
        };
        let build = || -> crate::Result<GrdSystem> {
            let r: Vec<String> = rels.iter().map(|(r, _)| r.clone()).collect();
            let lambda =
                rels.iter().map(|(_, l)| l.iter().map(|g| find(gens, g)).collect()).collect::<crate::Result<_>>()?;
            let d = disjs.iter().map(|(d, _, _)| d.clone()).collect();
            let pi = disjs.iter().map(|(_, rr, _)| find(&r, rr)).collect::<crate::Result<_>>()?;
            let rho = disjs
                .iter()
                .map(|(_, _, l)| l.iter().map(|g| find(gens, g)).collect())
                .collect::<crate::Result<_>>()?;
            GrdSystem::new(gens.clone(), r, d, lambda, pi, rho)
        };
        build().map_err(self.invalid(name))
    }

    /// The propositional theory of a `theory` block.
    pub fn prop_theory(&self, name: &str) -> Result<PropTheory, DslError> {
        let BlockBody::Theory { symbols, axioms } = self.get(name, &["theory"])? else { unreachable!() };
        PropTheory::from_named(symbols, axioms).map_err(self.invalid(name))
    }

    /// Any propositional presentation, as a theory.
    pub fn presentation(&self, name: &str) -> Result<PropTheory, DslError> {
        match self.get(name, &["frame", "formaltop", "grd", "theory"])? {
            BlockBody::Frame { .. } => Ok(crate::present::frame_to_theory(&self.frame(name)?)),
            BlockBody::FormalTop { .. } => Ok(crate::present::formal_topology_to_theory(&self.formal_topology(name)?)),
            BlockBody::Grd { .. } => Ok(crate::present::grd_to_theory(&self.grd(name)?)),
            _ => self.prop_theory(name),
        }
    }

    pub fn geotheory(&self, name: &str) -> Result<GeomTheory, DslError> {
        let BlockBody::GeoTheory(t) = self.get(name, &["geotheory"])? else { unreachable!() };
        Ok(t.clone())
    }

    pub fn category(&self, name: &str) -> Result<FinCategory, DslError> {
        let BlockBody::Category { objects, morphisms, composes } = self.get(name, &["category"])? else {
            unreachable!()
        };
        let build = || -> crate::Result<FinCategory> {
            let obj = |s: &String| objects.iter().position(|o| o == s).ok_or_else(|| Error::UnknownElement(s.clone()));
            let mut mors: Vec<Morphism> =
                (0..objects.len()).map(|o| Morphism { name: format!("id_{}", objects[o]), dom: o, cod: o }).collect();
            for (f, a, b) in morphisms {
                mors.push(Morphism { name: f.clone(), dom: obj(a)?, cod: obj(b)? });
            }
            let mor =
                |s: &String| mors.iter().position(|m| &m.name == s).ok_or_else(|| Error::UnknownElement(s.clone()));
            let comps =
                composes.iter().map(|(f, g, h)| Ok((mor(f)?, mor(g)?, mor(h)?))).collect::<crate::Result<Vec<_>>>()?;
            FinCategory::new(objects.clone(), mors.clone(), (0..objects.len()).collect(), &comps)
        };
        build().map_err(self.invalid(name))
    }

    pub fn site(&self, name: &str) -> Result<Site, DslError> {
        let BlockBody::Site { category, covers } = self.get(name, &["site"])? else { unreachable!() };
        let c = self.category(category)?;
        let build = || -> crate::Result<Site> {
            let covers = covers
                .iter()
                .map(|(t, fs)| {
                    let target = c.object_index(t).ok_or_else(|| Error::UnknownElement(t.clone()))?;
                    let ms = fs
                        .iter()
                        .map(|f| c.morphism_index(f).ok_or_else(|| Error::UnknownElement(f.clone())))
                        .collect::<crate::Result<Vec<_>>>()?;
                    Ok((target, ms))
                })
                .collect::<crate::Result<Vec<_>>>()?;
            Site::new(c.clone(), covers)
        };
        build().map_err(self.invalid(name))
    }

    pub fn extension(&self, name: &str) -> Result<TheoryExtension, DslError> {
        let BlockBody::Extend { base, ext, maps } = self.get(name, &["extend"])? else { unreachable!() };
        let (t0, t1) = (self.geotheory(base)?, self.geotheory(ext)?);
        let rename: HashMap<&str, &str> = maps.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let target = |s: &str| rename.get(s).copied().unwrap_or(s).to_owned();
        let build = || -> crate::Result<TheoryExtension> {
            let missing = |what: &str, s: &str| Error::InvalidExtension(format!("{what} {s} has no image"));
            let sorts = t0
                .sorts
                .iter()
                .map(|s| t1.sort_id(&target(&s.name)).ok_or_else(|| missing("sort", &s.name)))
                .collect::<crate::Result<_>>()?;
            let funcs = t0
                .funcs
                .iter()
                .map(|f| t1.func_id(&target(&f.name)).ok_or_else(|| missing("function", &f.name)))
                .collect::<crate::Result<_>>()?;
            let preds = t0
                .preds
                .iter()
                .map(|p| t1.pred_id(&target(&p.name)).ok_or_else(|| missing("predicate", &p.name)))
                .collect::<crate::Result<_>>()?;
            TheoryExtension::new(t0.clone(), t1.clone(), sorts, funcs, preds)
        };
        build().map_err(self.invalid(name))
    }

    pub fn set(&self, name: &str) -> Result<Vec<String>, DslError> {
        let BlockBody::Set { elems } = self.get(name, &["set"])? else { unreachable!() };
        FinPoset::from_relation(elems, &[]).map_err(self.invalid(name))?;
        Ok(elems.clone())
    }

    pub fn function(&self, name: &str) -> Result<ResolvedFunction, DslError> {
        let BlockBody::Function { from, to, map } = self.get(name, &["function"])? else { unreachable!() };
        let (dom, cod) = (self.set(from)?, self.set(to)?);
        let build = || -> crate::Result<Vec<usize>> {
            let mut table = vec![None; dom.len()];
            for (a, b) in map {
                let i = dom.iter().position(|x| x == a).ok_or_else(|| Error::UnknownElement(a.clone()))?;
                let j = cod.iter().position(|x| x == b).ok_or_else(|| Error::UnknownElement(b.clone()))?;
                if table[i].replace(j).is_some() {
                    return Err(Error::DuplicateElement(a.clone()));
                }
            }
            table
                .iter()
                .enumerate()
                .map(|(i, v)| v.ok_or_else(|| Error::PreconditionFailed(format!("no value at {}", dom[i]))))
                .collect()
        };
        let table = build().map_err(self.invalid(name))?;
        Ok(ResolvedFunction { from_sort: from.clone(), from: dom, to_sort: to.clone(), to: cod, table })
    }

    /// The model and the theory it interprets.
    pub fn model(&self, name: &str) -> Result<(GeomTheory, FinModel), DslError> {
        let BlockBody::Model { theory, sizes, funcs, preds } = self.get(name, &["model"])? else { unreachable!() };
        let t = self.geotheory(theory)?;
        let build = || -> crate::Result<FinModel> {
            let mut sz = vec![None; t.sorts.len()];
            for (s, n) in sizes {
                let id = t.sort(s)?;
                if t.sorts[id].kind != SortKind::Primitive {
                    return Err(Error::InvalidModel(format!("size of {s} follows from its base")));
                }
                sz[id] = Some(*n);
            }
            let mut resolved = vec![0; t.sorts.len()];
            for (s, sort) in t.sorts.iter().enumerate() {
                resolved[s] = match sort.kind {
                    SortKind::Primitive => {
                        sz[s].ok_or_else(|| Error::InvalidModel(format!("no size for {}", sort.name)))?
                    }
                    SortKind::Fin(b) => 1usize.checked_shl(sz[b].unwrap_or(0) as u32).unwrap_or(0),
                };
            }
            let mut ftabs = vec![None; t.funcs.len()];
            for (f, table) in funcs {
                ftabs[t.func(f)?] = Some(table.iter().map(|v| v.unwrap_or(UNDEFINED)).collect::<Vec<_>>());
            }
            let mut ptabs = vec![None; t.preds.len()];
            for (p, ext) in preds {
                ptabs[t.pred(p)?] = Some(ext.clone());
            }
            let ftabs = ftabs
                .into_iter()
                .enumerate()
                .map(|(i, v)| v.ok_or_else(|| Error::InvalidModel(format!("no table for {}", t.funcs[i].name))))
                .collect::<crate::Result<Vec<_>>>()?;
            let ptabs = ptabs
                .into_iter()
                .enumerate()
                .map(|(i, v)| v.ok_or_else(|| Error::InvalidModel(format!("no extent for {}", t.preds[i].name))))
                .collect::<crate::Result<Vec<_>>>()?;
            FinModel::new(&t, resolved, ftabs, ptabs)
        };
        let m = build().map_err(self.invalid(name))?;
        Ok((t, m))
    }

    /// First block of one of `kinds`, for commands run without a block name.
    pub fn first_of(&self, kinds: &[&str]) -> Option<&str> {
        self.blocks.iter().find(|b| kinds.contains(&b.body.kind())).map(|b| b.name.as_str())
    }
}

/// Renders a model as a `model` block body against its theory.
pub fn model_block(t: &GeomTheory, theory_name: &str, m: &FinModel) -> BlockBody {
    BlockBody::Model {
        theory: theory_name.to_owned(),
        sizes: t
            .sorts
            .iter()
            .enumerate()
            .filter(|(_, s)| s.kind == SortKind::Primitive)
            .map(|(i, s)| (s.name.clone(), m.sizes[i]))
            .collect(),
        funcs: t
            .funcs
            .iter()
            .enumerate()
            .map(|(i, f)| (f.name.clone(), m.funcs[i].iter().map(|&v| (v != UNDEFINED).then_some(v)).collect()))
            .collect(),
        preds: t.preds.iter().enumerate().map(|(i, p)| (p.name.clone(), m.preds[i].clone())).collect(),
    }
}

/// Text of a single block.
pub fn print_block(name: &str, body: &BlockBody) -> String {
    print(&Document { blocks: vec![Block { name: name.to_owned(), body: body.clone() }], lines: vec![0] })
}

/// A document from blocks, for printing.
pub fn document_of(blocks: Vec<Block>) -> Document {
    let lines = vec![0; blocks.len()];
    Document { blocks, lines }
}

/// Builds a propositional axiom list in the shape of a `theory` block.
pub fn theory_block(t: &PropTheory) -> BlockBody {
    let name = |i: &usize| t.symbols()[*i].clone();
    BlockBody::Theory {
        symbols: t.symbols().to_vec(),
        axioms: t
            .axioms()
            .iter()
            .map(|a: &PropSequent| {
                (
                    a.antecedent.iter().map(name).collect(),
                    a.consequent.iter().map(|d| d.iter().map(name).collect()).collect(),
                )
            })
            .collect(),
    }
}
