use super::ast::*;
use super::error::{ParseError, ParseErrorKind};
use super::lexer::{tokenize, Tok, Token};
use super::validate::{check_program, Site, SiteMap};

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    sites: SiteMap,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, n: usize) -> &Token {
        &self.toks[(self.pos + n).min(self.toks.len() - 1)]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        let t = self.peek();
        (t.line, t.column)
    }

    fn unexpected<T>(&self, expected: &[&str]) -> PResult<T> {
        let t = self.peek();
        Err(ParseError::new(
            t.line,
            t.column,
            ParseErrorKind::Syntax {
                expected: expected.iter().map(|s| s.to_string()).collect(),
                found: t.tok.describe(),
            },
        ))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<Token> {
        if self.peek().tok == tok {
            Ok(self.next())
        } else {
            self.unexpected(&[what])
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<()> {
        if self.is_keyword(kw) {
            self.next();
            Ok(())
        } else {
            self.unexpected(&[&format!("`{kw}`")])
        }
    }

    fn qname(&mut self, what: &str) -> PResult<String> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.next();
                Ok(s)
            }
            _ => self.unexpected(&[what]),
        }
    }

    /// A simple (undotted, non-reserved) identifier.
    fn ident(&mut self, what: &str) -> PResult<String> {
        let (line, column) = self.here();
        let name = self.qname(what)?;
        if name.contains('.') {
            return Err(ParseError::new(line, column, ParseErrorKind::QualifiedName(name)));
        }
        if KEYWORDS.contains(&name.as_str()) {
            return Err(ParseError::new(line, column, ParseErrorKind::ReservedWord(name)));
        }
        Ok(name)
    }

    fn ident_list(&mut self, allow_empty: bool) -> PResult<Vec<String>> {
        self.expect(Tok::LParen, "`(`")?;
        let mut out = Vec::new();
        if self.peek().tok == Tok::RParen {
            if !allow_empty {
                return self.unexpected(&["local"]);
            }
            self.next();
            return Ok(out);
        }
        loop {
            out.push(self.ident("local")?);
            match self.peek().tok {
                Tok::Comma => {
                    self.next();
                }
                Tok::RParen => {
                    self.next();
                    return Ok(out);
                }
                _ => return self.unexpected(&["`,`", "`)`"]),
            }
        }
    }

    fn program(&mut self) -> PResult<SlirProgram> {
        let mut classes = Vec::new();
        while self.peek().tok != Tok::Eof {
            if !self.is_keyword("class") {
                return self.unexpected(&["`class`", "end of input"]);
            }
            classes.push(self.class(classes.len())?);
        }
        Ok(SlirProgram { classes })
    }

    fn class(&mut self, ci: usize) -> PResult<SlirClass> {
        self.expect_keyword("class")?;
        self.sites.insert(Site::Class(ci), self.here());
        let name = self.qname("class name")?;
        self.expect(Tok::LBrace, "`{`")?;
        let mut methods = Vec::new();
        loop {
            if self.peek().tok == Tok::RBrace {
                self.next();
                break;
            }
            if !self.is_keyword("method") {
                return self.unexpected(&["`method`", "`}`"]);
            }
            methods.push(self.method(ci, methods.len())?);
        }
        Ok(SlirClass { name, methods })
    }

    fn method(&mut self, ci: usize, mi: usize) -> PResult<SlirMethod> {
        self.expect_keyword("method")?;
        self.sites.insert(Site::Method(ci, mi), self.here());
        let name = self.ident("method name")?;
        let params_at = self.here();
        let params = self.ident_list(true)?;
        self.sites.insert(Site::Params(ci, mi), params_at);
        self.expect(Tok::LBrace, "`{`")?;
        let mut statements = Vec::new();
        loop {
            if self.peek().tok == Tok::RBrace {
                self.next();
                break;
            }
            let si = statements.len();
            statements.push(self.line(ci, mi, si)?);
        }
        Ok(SlirMethod { name, params, statements })
    }

    fn line(&mut self, ci: usize, mi: usize, si: usize) -> PResult<Stmt> {
        let mut label = None;
        if matches!(self.peek().tok, Tok::Ident(_)) && self.peek_at(1).tok == Tok::Colon {
            self.sites.insert(Site::Label(ci, mi, si), self.here());
            label = Some(self.ident("label")?);
            self.next();
        }
        self.sites.insert(Site::Stmt(ci, mi, si), self.here());
        let kind = self.stmt(ci, mi, si)?;
        Ok(Stmt { label, kind })
    }

    fn stmt(&mut self, ci: usize, mi: usize, si: usize) -> PResult<StmtKind> {
        const STMT_START: &[&str] = &["local", "`call`", "`putfield`", "`if`", "`goto`", "`return`"];
        let Tok::Ident(word) = self.peek().tok.clone() else {
            return self.unexpected(STMT_START);
        };
        match word.as_str() {
            "call" => {
                self.next();
                let callee = self.qname("call signature")?;
                let args = self.ident_list(true)?;
                Ok(StmtKind::Call { callee, args })
            }
            "putfield" => {
                self.next();
                let field = self.qname("field name")?;
                let value = self.ident("local")?;
                Ok(StmtKind::FieldStore { field, value })
            }
            "if" => {
                self.next();
                let cond = self.ident("condition local")?;
                self.expect_keyword("goto")?;
                self.sites.insert(Site::Target(ci, mi, si), self.here());
                let target = self.ident("label")?;
                Ok(StmtKind::If { cond, target })
            }
            "goto" => {
                self.next();
                self.sites.insert(Site::Target(ci, mi, si), self.here());
                let target = self.ident("label")?;
                Ok(StmtKind::Goto { target })
            }
            "return" => {
                let line = self.next().line;
                let value = match &self.peek().tok {
                    Tok::Ident(s)
                        if self.peek().line == line && !KEYWORDS.contains(&s.as_str()) =>
                    {
                        Some(self.ident("local")?)
                    }
                    _ => None,
                };
                Ok(StmtKind::Return { value })
            }
            w if KEYWORDS.contains(&w) => self.unexpected(STMT_START),
            _ => {
                let target = self.ident("local")?;
                self.expect(Tok::Eq, "`=`")?;
                let Tok::Ident(rhs) = self.peek().tok.clone() else {
                    return self.unexpected(&["`const`", "`op`", "`call`", "`getfield`"]);
                };
                match rhs.as_str() {
                    "const" => {
                        self.next();
                        let value = match self.next().tok {
                            Tok::Str(s) => Literal::Str(s),
                            Tok::Int(i) => Literal::Int(i),
                            _ => {
                                self.pos -= 1;
                                return self.unexpected(&["literal"]);
                            }
                        };
                        Ok(StmtKind::ConstAssign { target, value })
                    }
                    "op" => {
                        self.next();
                        let args = self.ident_list(false)?;
                        Ok(StmtKind::OpAssign { target, args })
                    }
                    "call" => {
                        self.next();
                        let callee = self.qname("call signature")?;
                        let args = self.ident_list(true)?;
                        Ok(StmtKind::CallAssign { target, callee, args })
                    }
                    "getfield" => {
                        self.next();
                        let field = self.qname("field name")?;
                        Ok(StmtKind::FieldLoad { target, field })
                    }
                    _ => self.unexpected(&["`const`", "`op`", "`call`", "`getfield`"]),
                }
            }
        }
    }
}

/// Parses and validates a SLIR document.
pub fn parse_slir(text: &str) -> Result<SlirProgram, ParseError> {
    let toks = tokenize(text)?;
    let mut parser = Parser { toks, pos: 0, sites: SiteMap::default() };
    let program = parser.program()?;
    if let Some(violation) = check_program(&program) {
        let (line, column) = parser.sites.locate(&violation.site);
        return Err(ParseError::new(line, column, violation.kind));
    }
    Ok(program)
}
