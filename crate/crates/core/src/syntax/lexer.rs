use std::fmt;

use super::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    LBracket,
    RBracket,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Bar,
    /// `<|`
    Past,
    /// `@=`
    Present,
    /// `|>`
    Future,
    /// `^`
    And,
    /// `->>`
    Next,
    /// `~>`
    Eventually,
    /// `//`
    Split,
    /// `->`
    Arrow,
    Tilde,
    Colon,
    /// `:=`
    Assign,
    Semi,
    Comma,
    Dot,
    Backslash,
    Equals,
    Percent,
    Underscore,
    Epsilon,
    Ident(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Bar => "|",
            Tok::Past => "<|",
            Tok::Present => "@=",
            Tok::Future => "|>",
            Tok::And => "^",
            Tok::Next => "->>",
            Tok::Eventually => "~>",
            Tok::Split => "//",
            Tok::Arrow => "->",
            Tok::Tilde => "~",
            Tok::Colon => ":",
            Tok::Assign => ":=",
            Tok::Semi => ";",
            Tok::Comma => ",",
            Tok::Dot => ".",
            Tok::Backslash => "\\",
            Tok::Equals => "=",
            Tok::Percent => "%",
            Tok::Underscore => "_",
            Tok::Epsilon => "ε",
            Tok::Ident(s) => return f.write_str(s),
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

const PUNCT: &[(&str, Tok)] = &[
    ("->>", Tok::Next),
    ("->", Tok::Arrow),
    ("~>", Tok::Eventually),
    ("//", Tok::Split),
    ("<|", Tok::Past),
    ("|>", Tok::Future),
    ("@=", Tok::Present),
    (":=", Tok::Assign),
    ("[", Tok::LBracket),
    ("]", Tok::RBracket),
    ("(", Tok::LParen),
    (")", Tok::RParen),
    ("{", Tok::LBrace),
    ("}", Tok::RBrace),
    ("|", Tok::Bar),
    ("^", Tok::And),
    ("~", Tok::Tilde),
    (":", Tok::Colon),
    (";", Tok::Semi),
    (",", Tok::Comma),
    (".", Tok::Dot),
    ("\\", Tok::Backslash),
    ("=", Tok::Equals),
    ("%", Tok::Percent),
    ("ε", Tok::Epsilon),
];

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits `src` into tokens. `#` starts a comment running to end of line.
pub fn tokenize(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut rest = src;
    while let Some(c) = rest.chars().next() {
        let pos = Pos { line, column: col };
        if c == '\n' {
            line += 1;
            col = 1;
            rest = &rest[1..];
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            rest = &rest[c.len_utf8()..];
            continue;
        }
        if c == '#' {
            let end = rest.find('\n').unwrap_or(rest.len());
            col += rest[..end].chars().count();
            rest = &rest[end..];
            continue;
        }
        if is_ident_char(c) {
            let end = rest
                .find(|ch: char| !is_ident_char(ch))
                .unwrap_or(rest.len());
            let word = &rest[..end];
            let tok = if word == "_" {
                Tok::Underscore
            } else {
                Tok::Ident(word.to_string())
            };
            out.push(Token { tok, pos });
            col += end;
            rest = &rest[end..];
            continue;
        }
        match PUNCT.iter().find(|(p, _)| rest.starts_with(p)) {
            Some((p, tok)) => {
                out.push(Token {
                    tok: tok.clone(),
                    pos,
                });
                col += p.chars().count();
                rest = &rest[p.len()..];
            }
            None => {
                return Err(SyntaxError::syntax(
                    pos,
                    format!("unexpected character `{c}`"),
                ));
            }
        }
    }
    Ok(out)
}
