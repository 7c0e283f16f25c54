use std::collections::BTreeMap;

use super::ast::*;
use super::lexer::{tokenize, Pos, Tok, Token};
use super::SyntaxError;
use crate::model::{Condition, Situator};

/// Behaviour shared by the atom bodies of the three layers.
pub trait FormulaBody: Sized + Clone + Ord + std::fmt::Display {
    fn parse_body(p: &mut Parser) -> Result<Self, SyntaxError>;

    /// Key under which two atoms of one block conflict (rules 4 and 5).
    fn exclusive_key(&self) -> Option<(super::WffRule, String)>;
}

pub struct Parser {
    tokens: Vec<Token>,
    at: usize,
    end: Pos,
}

impl Parser {
    pub fn new(src: &str) -> Result<Self, SyntaxError> {
        let tokens = tokenize(src)?;
        let lines = src.lines().count().max(1);
        let last = src.lines().last().map_or(0, |l| l.chars().count());
        Ok(Parser {
            tokens,
            at: 0,
            end: Pos {
                line: lines,
                column: last + 1,
            },
        })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.at).map(|t| &t.tok)
    }

    pub fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.tokens.get(self.at + k).map(|t| &t.tok)
    }

    pub fn pos(&self) -> Pos {
        self.tokens.get(self.at).map_or(self.end, |t| t.pos)
    }

    pub fn at_end(&self) -> bool {
        self.at >= self.tokens.len()
    }

    pub fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.at).map(|t| t.tok.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    pub fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError::syntax(self.pos(), message)
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(t) => format!("`{t}`"),
            None => "end of input".to_string(),
        }
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<(), SyntaxError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{tok}`, found {}", self.found())))
        }
    }

    pub fn ident(&mut self) -> Result<String, SyntaxError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => Err(self.error(format!("expected an identifier, found {}", self.found()))),
        }
    }

    pub fn keyword(&mut self, word: &str) -> Result<(), SyntaxError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == word => {
                self.at += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected `{word}`, found {}", self.found()))),
        }
    }

    fn is_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == word)
    }

    /// An object name, or `_` (the pattern placeholder).
    pub fn object(&mut self) -> Result<String, SyntaxError> {
        if self.eat(&Tok::Underscore) {
            return Ok(Pattern::PLACEHOLDER.to_string());
        }
        let pos = self.pos();
        let name = self.ident()?;
        if name.chars().all(|c| c.is_ascii_digit()) {
            return Err(SyntaxError::syntax(
                pos,
                format!("`{name}` is not an object name"),
            ));
        }
        Ok(name)
    }

    pub fn number(&mut self) -> Result<usize, SyntaxError> {
        let pos = self.pos();
        let s = self.ident()?;
        s.parse()
            .map_err(|_| SyntaxError::syntax(pos, format!("expected a number, found `{s}`")))
    }

    fn meta_symbol(&mut self) -> Result<MetaSymbol, SyntaxError> {
        let pos = self.pos();
        if self.eat(&Tok::Tilde) {
            return Ok(MetaSymbol::Wave);
        }
        let s = self.ident()?;
        MetaSymbol::from_text(&s).ok_or_else(|| {
            SyntaxError::syntax(pos, format!("`{s}` is not a metainformation symbol"))
        })
    }

    fn checked_symbol(
        &mut self,
        allowed: fn(MetaSymbol) -> bool,
        what: &str,
    ) -> Result<MetaSymbol, SyntaxError> {
        let pos = self.pos();
        let sym = self.meta_symbol()?;
        if allowed(sym) {
            Ok(sym)
        } else {
            Err(SyntaxError::syntax(pos, format!("`{sym}` is not {what}")))
        }
    }

    fn condition(&mut self) -> Result<Condition, SyntaxError> {
        let pos = self.pos();
        let s = self.ident()?;
        Condition::from_symbol(&s).ok_or_else(|| {
            SyntaxError::syntax(pos, format!("expected a condition `e` or `h`, found `{s}`"))
        })
    }

    fn situator(&mut self) -> Result<Situator, SyntaxError> {
        let s = match self.peek() {
            Some(Tok::Past) => Situator::Past,
            Some(Tok::Present) => Situator::Present,
            Some(Tok::Future) => Situator::Future,
            _ => {
                return Err(self.error(format!(
                    "expected a situator `<|`, `@=` or `|>`, found {}",
                    self.found()
                )))
            }
        };
        self.at += 1;
        Ok(s)
    }

    fn atom<B: FormulaBody>(&mut self) -> Result<Atom<B>, SyntaxError> {
        self.expect(&Tok::LBracket)?;
        let condition = self.condition()?;
        self.expect(&Tok::Bar)?;
        let situator = self.situator()?;
        self.expect(&Tok::Bar)?;
        let body = B::parse_body(self)?;
        self.expect(&Tok::RBracket)?;
        Ok(Atom::new(condition, situator, body))
    }

    fn block<B: FormulaBody>(&mut self) -> Result<Block<B>, SyntaxError> {
        let mut atoms = vec![self.atom()?];
        while self.eat(&Tok::And) {
            atoms.push(self.atom()?);
        }
        Ok(Block::new(atoms))
    }

    fn chain<B: FormulaBody>(&mut self) -> Result<Chain<B>, SyntaxError> {
        let mut chain = Chain::single(self.block()?);
        loop {
            let j = match self.peek() {
                Some(Tok::Next) => Junction::Next,
                Some(Tok::Eventually) => Junction::Eventually,
                _ => return Ok(chain),
            };
            self.at += 1;
            chain.push(j, self.block()?);
        }
    }

    pub fn formula<B: FormulaBody>(&mut self) -> Result<Formula<B>, SyntaxError> {
        let mut chains = vec![self.chain()?];
        while self.eat(&Tok::Split) {
            chains.push(self.chain()?);
        }
        if !self.at_end() {
            return Err(self.error(format!("unexpected {}", self.found())));
        }
        Ok(Formula { chains })
    }

    fn assignment_set(&mut self) -> Result<AssignmentSet, SyntaxError> {
        let mut set = AssignmentSet::new();
        if self.eat(&Tok::Underscore) {
            return Ok(set);
        }
        self.expect(&Tok::LBrace)?;
        if self.eat(&Tok::RBrace) {
            return Ok(set);
        }
        loop {
            self.expect(&Tok::LParen)?;
            let h = self.ident()?;
            self.expect(&Tok::Comma)?;
            self.expect(&Tok::LParen)?;
            let mut tuple = vec![self.ident()?];
            while self.eat(&Tok::Comma) {
                tuple.push(self.ident()?);
            }
            self.expect(&Tok::RParen)?;
            self.expect(&Tok::RParen)?;
            set.insert((h, tuple));
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(&Tok::RBrace)?;
        Ok(set)
    }

    fn object_ref(&mut self) -> Result<ObjectRef, SyntaxError> {
        if self.is_keyword("pat") && matches!(self.peek_at(1), Some(Tok::Ident(_))) {
            self.at += 1;
            return Ok(ObjectRef::Pattern(self.ident()?));
        }
        Ok(ObjectRef::Object(self.object()?))
    }
}

impl FormulaBody for PlBody {
    fn parse_body(p: &mut Parser) -> Result<Self, SyntaxError> {
        let pos = p.pos();
        let kw = p.ident()?;
        match kw.as_str() {
            "obj" => {
                let object = p.object()?;
                p.expect(&Tok::Colon)?;
                let mut sets = vec![p.assignment_set()?];
                while p.eat(&Tok::Semi) {
                    sets.push(p.assignment_set()?);
                }
                Ok(PlBody::Assignment { object, sets })
            }
            "rel" => {
                p.keyword("S")?;
                p.expect(&Tok::LBracket)?;
                let subject = p.object()?;
                p.expect(&Tok::Comma)?;
                let property = p.number()?;
                p.expect(&Tok::RBracket)?;
                let target = p.object()?;
                Ok(PlBody::Relation {
                    subject,
                    property,
                    target,
                })
            }
            "act" => {
                let object = p.object()?;
                p.expect(&Tok::Colon)?;
                p.expect(&Tok::LParen)?;
                let mut actions = vec![p.ident()?];
                while p.eat(&Tok::Comma) {
                    actions.push(p.ident()?);
                }
                p.expect(&Tok::RParen)?;
                Ok(PlBody::Actions { object, actions })
            }
            other => Err(SyntaxError::syntax(
                pos,
                format!("expected `obj`, `rel` or `act`, found `{other}`"),
            )),
        }
    }

    fn exclusive_key(&self) -> Option<(super::WffRule, String)> {
        match self {
            PlBody::Assignment { object, .. } => {
                Some((super::WffRule::DuplicateAssignment, object.clone()))
            }
            PlBody::Actions { object, .. } => {
                Some((super::WffRule::DuplicateActions, object.clone()))
            }
            PlBody::Relation { .. } => None,
        }
    }
}

impl FormulaBody for MetaBody {
    fn parse_body(p: &mut Parser) -> Result<Self, SyntaxError> {
        let pos = p.pos();
        let kw = p.ident()?;
        match kw.as_str() {
            "meta" => {
                let object = p.object()?;
                p.expect(&Tok::Colon)?;
                let state = "a state symbol (0 1 ~ b1 b2)";
                let mut symbols = vec![p.checked_symbol(MetaSymbol::is_state_symbol, state)?];
                while p.eat(&Tok::Semi) {
                    symbols.push(p.checked_symbol(MetaSymbol::is_state_symbol, state)?);
                }
                Ok(MetaBody::State { object, symbols })
            }
            "comp" => {
                let object = p.object()?;
                p.expect(&Tok::LBracket)?;
                let property = p.number()?;
                p.expect(&Tok::Comma)?;
                let dimension = p.number()?;
                p.expect(&Tok::RBracket)?;
                p.expect(&Tok::Colon)?;
                let symbol = p.checked_symbol(
                    MetaSymbol::is_component_symbol,
                    "a component symbol (~ g1 g2 d1 d2)",
                )?;
                Ok(MetaBody::Component {
                    object,
                    property,
                    dimension,
                    symbol,
                })
            }
            "mrel" => {
                let subject = p.object()?;
                let target = p.object()?;
                p.expect(&Tok::Colon)?;
                let symbol = p.checked_symbol(
                    MetaSymbol::is_relational_symbol,
                    "a relational symbol (k1 k2 t1 t2 t3 t4)",
                )?;
                Ok(MetaBody::Relational {
                    subject,
                    target,
                    symbol,
                })
            }
            other => Err(SyntaxError::syntax(
                pos,
                format!("expected `meta`, `comp` or `mrel`, found `{other}`"),
            )),
        }
    }

    fn exclusive_key(&self) -> Option<(super::WffRule, String)> {
        match self {
            MetaBody::State { object, .. } => {
                Some((super::WffRule::DuplicateAssignment, object.clone()))
            }
            MetaBody::Component {
                object,
                property,
                dimension,
                ..
            } => Some((
                super::WffRule::DuplicateAssignment,
                format!("{object}[{property},{dimension}]"),
            )),
            MetaBody::Relational { .. } => None,
        }
    }
}

impl FormulaBody for ClBody {
    fn parse_body(p: &mut Parser) -> Result<Self, SyntaxError> {
        let subject = p.object_ref()?;
        let mut fields = Vec::new();
        while p.eat(&Tok::Bar) {
            let pos = p.pos();
            let text = if p.eat(&Tok::Tilde) {
                "~".to_string()
            } else {
                p.ident()?
            };
            fields.push((pos, text));
        }
        let numeric = |s: &str| s.chars().all(|c| c.is_ascii_digit());
        let symbol = |(pos, s): &(Pos, String), allowed: fn(MetaSymbol) -> bool| {
            MetaSymbol::from_text(s)
                .filter(|m| allowed(*m))
                .ok_or_else(|| SyntaxError::syntax(*pos, format!("`{s}` is not allowed here")))
        };
        match fields.as_slice() {
            [(_, p0), sym] if numeric(p0) => Ok(ClBody::Interval {
                target: subject,
                property: p0.parse().expect("numeric"),
                symbol: symbol(sym, MetaSymbol::is_state_symbol)?,
            }),
            [(_, target), sym] => Ok(ClBody::RelationalInterval {
                subject,
                target: target.clone(),
                symbol: symbol(sym, MetaSymbol::is_relational_symbol)?,
            }),
            [(pp, p0), (qp, q0), sym] => {
                let num = |pos: &Pos, s: &str| {
                    s.parse::<usize>().map_err(|_| {
                        SyntaxError::syntax(*pos, format!("expected a number, found `{s}`"))
                    })
                };
                Ok(ClBody::ComponentInterval {
                    target: subject,
                    property: num(pp, p0)?,
                    dimension: num(qp, q0)?,
                    symbol: symbol(sym, MetaSymbol::is_component_symbol)?,
                })
            }
            _ => Err(p.error("expected `o|p|x`, `o|p|q|x` or `o|o'|x` in an interval atom")),
        }
    }

    fn exclusive_key(&self) -> Option<(super::WffRule, String)> {
        match self {
            ClBody::Interval {
                target, property, ..
            } => Some((
                super::WffRule::DuplicateAssignment,
                format!("{target}|{property}"),
            )),
            ClBody::ComponentInterval {
                target,
                property,
                dimension,
                ..
            } => Some((
                super::WffRule::DuplicateAssignment,
                format!("{target}|{property}|{dimension}"),
            )),
            ClBody::RelationalInterval { .. } => None,
        }
    }
}

fn reject_placeholder<B: FormulaBody>(
    f: &Formula<B>,
    src_has: impl Fn(&B) -> bool,
) -> Result<(), SyntaxError> {
    if f.atoms().any(|a| src_has(&a.body)) {
        return Err(SyntaxError::syntax(
            Pos { line: 1, column: 1 },
            "the placeholder `_` is only allowed inside pattern definitions",
        ));
    }
    Ok(())
}

fn pl_has_placeholder(b: &PlBody) -> bool {
    let ph = Pattern::PLACEHOLDER;
    match b {
        PlBody::Assignment { object, .. } | PlBody::Actions { object, .. } => object == ph,
        PlBody::Relation {
            subject, target, ..
        } => subject == ph || target == ph,
    }
}

pub fn parse_pl(text: &str) -> Result<PlFormula, SyntaxError> {
    let f = Parser::new(text)?.formula()?;
    reject_placeholder(&f, pl_has_placeholder)?;
    Ok(f)
}

pub fn parse_pl_star(text: &str) -> Result<PlStarFormula, SyntaxError> {
    let f: PlStarFormula = Parser::new(text)?.formula()?;
    reject_placeholder(&f, |b| match b {
        MetaBody::State { object, .. } | MetaBody::Component { object, .. } => {
            object == Pattern::PLACEHOLDER
        }
        MetaBody::Relational {
            subject, target, ..
        } => subject == Pattern::PLACEHOLDER || target == Pattern::PLACEHOLDER,
    })?;
    Ok(f)
}

/// Parses a CL file: `%pattern name = body ^ body` header lines followed by
/// the formula.
pub fn parse_cl(text: &str) -> Result<ClFormula, SyntaxError> {
    let mut patterns = BTreeMap::new();
    let mut body = String::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim_start().starts_with('%') {
            let (name, pattern) = parse_pattern_line(line).map_err(|mut e| {
                e.line = i + 1;
                e
            })?;
            if patterns.insert(name.clone(), pattern).is_some() {
                return Err(SyntaxError::syntax(
                    Pos {
                        line: i + 1,
                        column: 1,
                    },
                    format!("pattern `{name}` defined twice"),
                ));
            }
            // keep line numbers of the formula aligned with the file
            body.push('\n');
        } else {
            body.push_str(line);
            body.push('\n');
        }
    }
    let formula: Formula<ClBody> = Parser::new(&body)?.formula()?;
    reject_placeholder(&formula, |b| match b {
        ClBody::Interval { target, .. } | ClBody::ComponentInterval { target, .. } => {
            *target == ObjectRef::Object(Pattern::PLACEHOLDER.to_string())
        }
        ClBody::RelationalInterval {
            subject, target, ..
        } => {
            *subject == ObjectRef::Object(Pattern::PLACEHOLDER.to_string())
                || target == Pattern::PLACEHOLDER
        }
    })?;
    for atom in formula.atoms() {
        let refs = match &atom.body {
            ClBody::Interval { target, .. } | ClBody::ComponentInterval { target, .. } => target,
            ClBody::RelationalInterval { subject, .. } => subject,
        };
        if let ObjectRef::Pattern(name) = refs {
            if !patterns.contains_key(name) {
                return Err(SyntaxError::unknown(
                    Pos { line: 1, column: 1 },
                    format!("pattern `{name}` is not defined"),
                ));
            }
        }
    }
    Ok(ClFormula { patterns, formula })
}

fn parse_pattern_line(line: &str) -> Result<(String, Pattern), SyntaxError> {
    let mut p = Parser::new(line)?;
    p.expect(&Tok::Percent)?;
    p.keyword("pattern")?;
    let name = p.ident()?;
    p.expect(&Tok::Equals)?;
    let mut templates = vec![PlBody::parse_body(&mut p)?];
    while p.eat(&Tok::And) {
        templates.push(PlBody::parse_body(&mut p)?);
    }
    if !p.at_end() {
        return Err(p.error("unexpected input after pattern definition"));
    }
    if let Some(t) = templates
        .iter()
        .find(|t| matches!(t, PlBody::Actions { .. }))
    {
        return Err(SyntaxError::syntax(
            Pos { line: 1, column: 1 },
            format!("pattern templates are assignments or relations, found `{t}`"),
        ));
    }
    if !templates.iter().any(pl_has_placeholder) {
        return Err(SyntaxError::syntax(
            Pos { line: 1, column: 1 },
            "a pattern must mention the placeholder `_`",
        ));
    }
    Ok((name, Pattern { templates }))
}
