use std::fmt;

use super::ast::*;
use super::parser::FormulaBody;

fn write_set(f: &mut fmt::Formatter<'_>, set: &AssignmentSet) -> fmt::Result {
    if set.is_empty() {
        return f.write_str("_");
    }
    f.write_str("{")?;
    for (i, (h, tuple)) in set.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "({h},({}))", tuple.join(","))?;
    }
    f.write_str("}")
}

impl fmt::Display for PlBody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlBody::Assignment { object, sets } => {
                write!(f, "obj {object}: ")?;
                for (i, s) in sets.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write_set(f, s)?;
                }
                Ok(())
            }
            PlBody::Relation {
                subject,
                property,
                target,
            } => write!(f, "rel S[{subject},{property}] {target}"),
            PlBody::Actions { object, actions } => {
                write!(f, "act {object}: ({})", actions.join(","))
            }
        }
    }
}

impl fmt::Display for MetaBody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetaBody::State { object, symbols } => {
                let s: Vec<&str> = symbols.iter().map(|m| m.text()).collect();
                write!(f, "meta {object}: {}", s.join(";"))
            }
            MetaBody::Component {
                object,
                property,
                dimension,
                symbol,
            } => write!(f, "comp {object}[{property},{dimension}]: {symbol}"),
            MetaBody::Relational {
                subject,
                target,
                symbol,
            } => write!(f, "mrel {subject} {target}: {symbol}"),
        }
    }
}

impl fmt::Display for ClBody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClBody::Interval {
                target,
                property,
                symbol,
            } => write!(f, "{target}|{property}|{symbol}"),
            ClBody::ComponentInterval {
                target,
                property,
                dimension,
                symbol,
            } => write!(f, "{target}|{property}|{dimension}|{symbol}"),
            ClBody::RelationalInterval {
                subject,
                target,
                symbol,
            } => write!(f, "{subject}|{target}|{symbol}"),
        }
    }
}

impl<B: fmt::Display> fmt::Display for Atom<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}|{}|{}]", self.condition, self.situator, self.body)
    }
}

impl<B: fmt::Display> fmt::Display for Block<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ^ ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl<B: fmt::Display> fmt::Display for Chain<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.blocks[0])?;
        for (j, b) in self.junctions.iter().zip(&self.blocks[1..]) {
            write!(f, " {j} {b}")?;
        }
        Ok(())
    }
}

impl<B: fmt::Display> fmt::Display for Formula<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.chains.iter().enumerate() {
            if i > 0 {
                f.write_str(" // ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.templates.iter().enumerate() {
            if i > 0 {
                f.write_str(" ^ ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Display for ClFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, p) in &self.patterns {
            writeln!(f, "%pattern {name} = {p}")?;
        }
        write!(f, "{}", self.formula)
    }
}

/// Canonical text of a PL or PL* formula.
pub fn print_formula<B: FormulaBody>(f: &Formula<B>) -> String {
    f.canonical().to_string()
}

/// Canonical text of a CL formula, pattern definitions first.
pub fn print_cl(f: &ClFormula) -> String {
    f.canonical().to_string()
}
