use super::error::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    /// Identifier, possibly dotted (`a.b.C`).
    Ident(String),
    Str(String),
    Int(i64),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Eq,
    Colon,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Str(_) => "string literal".into(),
            Tok::Int(i) => format!("integer `{i}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    macro_rules! bump {
        () => {{
            let c = chars[i];
            i += 1;
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        }};
    }

    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line: tl, column: tc });
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump!();
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    bump!();
                }
            }
            '{' | '}' | '(' | ')' | ',' | '=' | ':' => {
                bump!();
                let tok = match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    '=' => Tok::Eq,
                    _ => Tok::Colon,
                };
                push(&mut out, tok);
            }
            '"' => {
                bump!();
                let mut s = String::new();
                loop {
                    if i >= chars.len() {
                        return Err(ParseError::new(tl, tc, ParseErrorKind::UnterminatedString));
                    }
                    match bump!() {
                        '"' => break,
                        '\n' => {
                            return Err(ParseError::new(tl, tc, ParseErrorKind::UnterminatedString))
                        }
                        '\\' => {
                            let (el, ec) = (line, col);
                            if i >= chars.len() {
                                return Err(ParseError::new(
                                    tl,
                                    tc,
                                    ParseErrorKind::UnterminatedString,
                                ));
                            }
                            match bump!() {
                                '"' => s.push('"'),
                                '\\' => s.push('\\'),
                                'n' => s.push('\n'),
                                't' => s.push('\t'),
                                'r' => s.push('\r'),
                                other => {
                                    return Err(ParseError::new(
                                        el,
                                        ec - 1,
                                        ParseErrorKind::BadEscape(other),
                                    ))
                                }
                            }
                        }
                        other => s.push(other),
                    }
                }
                push(&mut out, Tok::Str(s));
            }
            c if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) => {
                let mut s = String::new();
                s.push(bump!());
                while i < chars.len() && chars[i].is_ascii_digit() {
                    s.push(bump!());
                }
                if i < chars.len() && is_ident_continue(chars[i]) {
                    return Err(ParseError::new(
                        line,
                        col,
                        ParseErrorKind::UnexpectedChar(chars[i]),
                    ));
                }
                let value = s
                    .parse::<i64>()
                    .map_err(|_| ParseError::new(tl, tc, ParseErrorKind::IntegerOverflow(s.clone())))?;
                push(&mut out, Tok::Int(value));
            }
            c if is_ident_start(c) => {
                let mut s = String::new();
                loop {
                    while i < chars.len() && is_ident_continue(chars[i]) {
                        s.push(bump!());
                    }
                    if i < chars.len() && chars[i] == '.' {
                        if chars.get(i + 1).is_some_and(|&n| is_ident_start(n)) {
                            s.push(bump!());
                            continue;
                        }
                        bump!();
                        return Err(ParseError::new(
                            line,
                            col,
                            ParseErrorKind::Syntax {
                                expected: vec!["identifier segment after `.`".into()],
                                found: chars
                                    .get(i)
                                    .map(|c| format!("`{c}`"))
                                    .unwrap_or_else(|| "end of input".into()),
                            },
                        ));
                    }
                    break;
                }
                push(&mut out, Tok::Ident(s));
            }
            other => return Err(ParseError::new(tl, tc, ParseErrorKind::UnexpectedChar(other))),
        }
    }
    out.push(Token { tok: Tok::Eof, line, column: col });
    Ok(out)
}
