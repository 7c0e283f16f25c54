//! Simply typed λ-terms over category atoms, as used by CL register forms
//! such as `(\tp:TS.\o:O.[e|tp|o|0|x])`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::ast::MetaSymbol;
use super::lexer::Tok;
use super::parser::Parser;
use super::SyntaxError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    /// `O`: objects (patterns are accepted where an object is expected).
    Object,
    /// `PO`: named patterns.
    Pattern,
    /// `CR`: conditions of reality.
    Condition,
    /// `TS`: temporal situators.
    Situator,
    /// `MS`: metainformation symbols.
    Symbol,
    /// `IX`: property and dimension indices.
    Index,
    /// `CN`: connectives.
    Connective,
}

impl Category {
    pub const ALL: [Category; 7] = [
        Category::Object,
        Category::Pattern,
        Category::Condition,
        Category::Situator,
        Category::Symbol,
        Category::Index,
        Category::Connective,
    ];

    pub fn text(self) -> &'static str {
        match self {
            Category::Object => "O",
            Category::Pattern => "PO",
            Category::Condition => "CR",
            Category::Situator => "TS",
            Category::Symbol => "MS",
            Category::Index => "IX",
            Category::Connective => "CN",
        }
    }

    pub fn from_text(s: &str) -> Option<Self> {
        Category::ALL.into_iter().find(|c| c.text() == s)
    }

    /// Whether a constant of category `c` may be passed where `self` is expected.
    pub fn accepts(self, c: Category) -> bool {
        self == c || (self == Category::Object && c == Category::Pattern)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.text())
    }
}

/// The categories a constant's spelling places it in.
pub fn categories_of(text: &str) -> BTreeSet<Category> {
    let mut out = BTreeSet::new();
    match text {
        "<|" | "@=" | "|>" => {
            out.insert(Category::Situator);
        }
        "->>" | "~>" | "^" | "//" => {
            out.insert(Category::Connective);
        }
        "~" => {
            out.insert(Category::Symbol);
        }
        _ if text.starts_with("pat ") => {
            out.insert(Category::Pattern);
        }
        _ if !text.is_empty() && text.chars().all(|c| c.is_ascii_digit()) => {
            out.insert(Category::Index);
            if MetaSymbol::from_text(text).is_some() {
                out.insert(Category::Symbol);
            }
        }
        _ => {
            out.insert(Category::Object);
            if text == "e" || text == "h" {
                out.insert(Category::Condition);
            }
            if MetaSymbol::from_text(text).is_some() {
                out.insert(Category::Symbol);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Const(String),
    Lam(String, Category, Box<Term>),
    App(Box<Term>, Box<Term>),
    /// `[t1|t2|...]`: an atom whose slots are terms.
    Template(Vec<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LambdaError {
    #[error("TYPE_MISMATCH: {0}")]
    TypeMismatch(String),
}

impl Term {
    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn lam(x: &str, cat: Category, body: Term) -> Term {
        Term::Lam(x.to_string(), cat, Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::Const(_) => {}
            Term::Lam(x, _, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            Term::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            Term::Template(parts) => parts.iter().for_each(|p| p.collect_free(bound, out)),
        }
    }

    fn all_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Const(_) => {}
            Term::Lam(x, _, b) => {
                out.insert(x.clone());
                b.all_names(out);
            }
            Term::App(f, a) => {
                f.all_names(out);
                a.all_names(out);
            }
            Term::Template(parts) => parts.iter().for_each(|p| p.all_names(out)),
        }
    }

    /// Capture-avoiding `self[x := v]`.
    pub fn substitute(&self, x: &str, v: &Term) -> Term {
        match self {
            Term::Var(y) if y == x => v.clone(),
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::Lam(y, cat, body) => {
                if y == x {
                    return self.clone();
                }
                let fv = v.free_vars();
                if fv.contains(y) && body.free_vars().contains(x) {
                    let mut taken = fv;
                    body.all_names(&mut taken);
                    taken.insert(x.to_string());
                    let fresh = (1..)
                        .map(|i| format!("{y}{i}"))
                        .find(|n| !taken.contains(n))
                        .expect("some suffix is free");
                    let renamed = body.substitute(y, &Term::Var(fresh.clone()));
                    Term::Lam(fresh, *cat, Box::new(renamed.substitute(x, v)))
                } else {
                    Term::Lam(y.clone(), *cat, Box::new(body.substitute(x, v)))
                }
            }
            Term::App(f, a) => Term::app(f.substitute(x, v), a.substitute(x, v)),
            Term::Template(parts) => {
                Term::Template(parts.iter().map(|p| p.substitute(x, v)).collect())
            }
        }
    }

    fn redex_count(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 0,
            Term::Lam(_, _, b) => b.redex_count(),
            Term::App(f, a) => {
                usize::from(matches!(**f, Term::Lam(..))) + f.redex_count() + a.redex_count()
            }
            Term::Template(parts) => parts.iter().map(Term::redex_count).sum(),
        }
    }

    /// Contracts the `n`-th redex in leftmost-outermost order.
    fn contract_nth(&self, n: &mut usize) -> Result<Option<Term>, LambdaError> {
        match self {
            Term::Var(_) | Term::Const(_) => Ok(None),
            Term::Lam(x, c, b) => Ok(b
                .contract_nth(n)?
                .map(|b| Term::Lam(x.clone(), *c, Box::new(b)))),
            Term::App(f, a) => {
                if let Term::Lam(x, _, body) = &**f {
                    if *n == 0 {
                        return Ok(Some(body.substitute(x, a)));
                    }
                    *n -= 1;
                }
                if let Some(f2) = f.contract_nth(n)? {
                    return Ok(Some(Term::App(Box::new(f2), a.clone())));
                }
                Ok(a.contract_nth(n)?
                    .map(|a2| Term::App(f.clone(), Box::new(a2))))
            }
            Term::Template(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if let Some(p2) = p.contract_nth(n)? {
                        let mut parts = parts.clone();
                        parts[i] = p2;
                        return Ok(Some(Term::Template(parts)));
                    }
                }
                Ok(None)
            }
        }
    }

    /// Any application left whose head cannot be reduced.
    fn stuck_application(&self) -> Option<String> {
        match self {
            Term::Var(_) | Term::Const(_) => None,
            Term::Lam(_, _, b) => b.stuck_application(),
            Term::App(f, a) => match **f {
                Term::Lam(..) => None,
                _ => Some(format!(
                    "`{f}` is not a function and cannot be applied to `{a}`"
                )),
            }
            .or_else(|| f.stuck_application())
            .or_else(|| a.stuck_application()),
            Term::Template(parts) => parts.iter().find_map(Term::stuck_application),
        }
    }

    pub fn is_normal(&self) -> bool {
        self.redex_count() == 0
    }

    /// α-equivalence, comparing bound variables by binding depth.
    pub fn alpha_eq(&self, other: &Term) -> bool {
        fn go(a: &Term, b: &Term, ea: &mut Vec<String>, eb: &mut Vec<String>) -> bool {
            match (a, b) {
                (Term::Var(x), Term::Var(y)) => {
                    let ix = ea.iter().rposition(|v| v == x);
                    let iy = eb.iter().rposition(|v| v == y);
                    match (ix, iy) {
                        (Some(i), Some(j)) => ea.len() - i == eb.len() - j,
                        (None, None) => x == y,
                        _ => false,
                    }
                }
                (Term::Const(x), Term::Const(y)) => x == y,
                (Term::Lam(x, cx, bx), Term::Lam(y, cy, by)) => {
                    if cx != cy {
                        return false;
                    }
                    ea.push(x.clone());
                    eb.push(y.clone());
                    let r = go(bx, by, ea, eb);
                    ea.pop();
                    eb.pop();
                    r
                }
                (Term::App(f1, a1), Term::App(f2, a2)) => go(f1, f2, ea, eb) && go(a1, a2, ea, eb),
                (Term::Template(p), Term::Template(q)) => {
                    p.len() == q.len() && p.iter().zip(q).all(|(x, y)| go(x, y, ea, eb))
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new(), &mut Vec::new())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Ty {
    Atom(BTreeSet<Category>),
    /// A free variable, filled by an assignment later.
    Any,
    Fun(Category, Box<Ty>),
    Template,
}

impl Ty {
    fn fits(&self, cat: Category) -> bool {
        match self {
            Ty::Atom(ks) => ks.iter().any(|k| cat.accepts(*k)),
            Ty::Any => true,
            Ty::Fun(..) | Ty::Template => false,
        }
    }
}

fn infer(t: &Term, env: &mut Vec<(String, Category)>) -> Result<Ty, LambdaError> {
    match t {
        Term::Const(c) => Ok(Ty::Atom(categories_of(c))),
        Term::Var(x) => Ok(env
            .iter()
            .rev()
            .find(|(y, _)| y == x)
            .map_or(Ty::Any, |(_, c)| Ty::Atom(BTreeSet::from([*c])))),
        Term::Lam(x, c, b) => {
            env.push((x.clone(), *c));
            let body = infer(b, env);
            env.pop();
            Ok(Ty::Fun(*c, Box::new(body?)))
        }
        Term::App(f, a) => match infer(f, env)? {
            Ty::Fun(cat, result) => {
                if infer(a, env)?.fits(cat) {
                    Ok(*result)
                } else {
                    Err(LambdaError::TypeMismatch(format!(
                        "`{a}` is not of category {cat} expected by `{f}`"
                    )))
                }
            }
            _ => Err(LambdaError::TypeMismatch(format!(
                "`{f}` is not a function and cannot be applied to `{a}`"
            ))),
        },
        Term::Template(parts) => {
            for p in parts {
                if matches!(infer(p, env)?, Ty::Fun(..) | Ty::Template) {
                    return Err(LambdaError::TypeMismatch(format!(
                        "atom slot `{p}` is not an atom"
                    )));
                }
            }
            Ok(Ty::Template)
        }
    }
}

/// Full β-normal form, contracting the leftmost-outermost redex first.
pub fn beta_reduce(term: &Term) -> Result<Term, LambdaError> {
    beta_reduce_with(term, |_| 0)
}

/// β-normal form under a caller-chosen strategy: `choose(k)` picks which of
/// the `k` current redexes to contract next.
pub fn beta_reduce_with(
    term: &Term,
    mut choose: impl FnMut(usize) -> usize,
) -> Result<Term, LambdaError> {
    infer(term, &mut Vec::new())?;
    let mut t = term.clone();
    loop {
        let k = t.redex_count();
        if k == 0 {
            break;
        }
        let mut n = choose(k) % k;
        t = t
            .contract_nth(&mut n)?
            .expect("redex index is within the redex count");
    }
    match t.stuck_application() {
        Some(msg) => Err(LambdaError::TypeMismatch(msg)),
        None => Ok(t),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) | Term::Const(x) => f.write_str(x),
            Term::Lam(x, c, b) => write!(f, "(\\{x}:{c}.{b})"),
            Term::App(..) => {
                let mut spine = Vec::new();
                let mut head = self;
                while let Term::App(g, a) = head {
                    spine.push(a);
                    head = g;
                }
                write!(f, "({head}")?;
                for a in spine.iter().rev() {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
            Term::Template(parts) => {
                f.write_str("[")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("|")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// Parses one term. Identifiers in `vars` (and λ-bound names) are variables;
/// every other leaf is a constant.
pub fn parse_term(text: &str, vars: &BTreeSet<String>) -> Result<Term, SyntaxError> {
    let mut p = Parser::new(text)?;
    let t = term(&mut p, vars, &mut Vec::new())?;
    if !p.at_end() {
        return Err(p.error("unexpected input after term"));
    }
    Ok(t)
}

/// Parses one term at the parser's position.
pub(crate) fn term(
    p: &mut Parser,
    vars: &BTreeSet<String>,
    bound: &mut Vec<String>,
) -> Result<Term, SyntaxError> {
    match p.peek() {
        Some(Tok::LParen) => {
            p.bump();
            let t = sequence(p, vars, bound)?;
            p.expect(&Tok::RParen)?;
            Ok(t)
        }
        Some(Tok::LBracket) => {
            p.bump();
            let mut parts = vec![term(p, vars, bound)?];
            while p.eat(&Tok::Bar) {
                parts.push(term(p, vars, bound)?);
            }
            p.expect(&Tok::RBracket)?;
            Ok(Term::Template(parts))
        }
        _ => leaf(p, vars, bound),
    }
}

/// Juxtaposed terms up to a closing parenthesis, read as left-nested
/// application. A λ extends as far right as possible.
fn sequence(
    p: &mut Parser,
    vars: &BTreeSet<String>,
    bound: &mut Vec<String>,
) -> Result<Term, SyntaxError> {
    let mut items: Vec<Term> = Vec::new();
    loop {
        match p.peek() {
            Some(Tok::RParen) | None => break,
            Some(Tok::Backslash) => {
                p.bump();
                let x = p.ident()?;
                p.expect(&Tok::Colon)?;
                let pos = p.pos();
                let c = p.ident()?;
                let cat = Category::from_text(&c)
                    .ok_or_else(|| SyntaxError::syntax(pos, format!("unknown category `{c}`")))?;
                p.expect(&Tok::Dot)?;
                bound.push(x.clone());
                let body = sequence(p, vars, bound);
                bound.pop();
                items.push(Term::Lam(x, cat, Box::new(body?)));
                break;
            }
            _ => items.push(term(p, vars, bound)?),
        }
    }
    let mut it = items.into_iter();
    let first = it.next().ok_or_else(|| p.error("empty parentheses"))?;
    Ok(it.fold(first, Term::app))
}

fn leaf(p: &mut Parser, vars: &BTreeSet<String>, bound: &[String]) -> Result<Term, SyntaxError> {
    let pos = p.pos();
    let text = match p.bump() {
        Some(Tok::Ident(s)) if s == "pat" && matches!(p.peek(), Some(Tok::Ident(_))) => {
            let name = p.ident()?;
            return Ok(Term::Const(format!("pat {name}")));
        }
        Some(Tok::Ident(s)) => {
            if bound.contains(&s) || vars.contains(&s) {
                return Ok(Term::Var(s));
            }
            s
        }
        Some(
            t @ (Tok::Past
            | Tok::Present
            | Tok::Future
            | Tok::Tilde
            | Tok::Next
            | Tok::Eventually
            | Tok::And
            | Tok::Split),
        ) => t.to_string(),
        Some(t) => {
            return Err(SyntaxError::syntax(
                pos,
                format!("unexpected `{t}` in a term"),
            ))
        }
        None => return Err(SyntaxError::syntax(pos, "unexpected end of term")),
    };
    Ok(Term::Const(text))
}
