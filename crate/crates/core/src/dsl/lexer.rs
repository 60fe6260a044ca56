use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Int(i64),
    Ident(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Eq,
    Semi,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Eof => "end of input".to_string(),
            other => format!("{:?}", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Caret => "^",
            Tok::Eq => "=",
            Tok::Semi => ";",
            _ => "",
        }
    }
}

/// Token with its 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Splits `text` into tokens; `#` starts a comment running to end of line.
pub fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            let n = s
                .parse::<i64>()
                .map_err(|_| syntax(l0, c0, format!("integer literal {s} is too large")))?;
            out.push(Spanned {
                tok: Tok::Int(n),
                line: l0,
                column: c0,
            });
            continue;
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_alphanumeric()
                    || chars[i] == '_'
                    || chars[i] == '-' && is_name_hyphen(&chars, start, i))
            {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned {
                tok: Tok::Ident(s),
                line: l0,
                column: c0,
            });
            continue;
        } else {
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                '+' => Tok::Plus,
                '-' | '\u{2212}' => Tok::Minus,
                '*' | '\u{b7}' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '=' => Tok::Eq,
                ';' => Tok::Semi,
                other => return Err(syntax(l0, c0, format!("unexpected character {other:?}"))),
            }
        };
        out.push(Spanned {
            tok,
            line: l0,
            column: c0,
        });
        i += 1;
        col += 1;
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

/// Hyphenated sequence names such as `pell-lucas[n]`: a hyphen inside an
/// identifier only when followed by a letter and the whole word is a
/// recognized long name. Keeps `n-m` a subtraction.
fn is_name_hyphen(chars: &[char], start: usize, i: usize) -> bool {
    let head: String = chars[start..i].iter().collect();
    let rest: String = chars[i + 1..]
        .iter()
        .take_while(|c| c.is_alphanumeric() || **c == '_')
        .collect();
    matches!(
        (head.as_str(), rest.as_str()),
        ("pell", "lucas") | ("jacobsthal", "lucas")
    )
}
