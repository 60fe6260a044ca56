//! Recursive-descent parser.
//!
//! ```text
//! program  := decl* expr "=" expr
//! decl     := "let" NAME "=" "(" rat "," rat "," rat "," rat ")" ";"?
//! expr     := term (("+" | "-") term)*
//! term     := unary ("*" unary)*
//! unary    := "-" unary | factor
//! factor   := base ("^" "(" expr ")")?
//! base     := INT | VAR | NAME "[" expr "]" | "(" expr ")"
//!           | "(" "-" "1" ")" "^" "(" expr ")"
//!           | "binom" "(" expr "," expr ")"
//!           | "sum" "(" VAR "," expr "," expr "," expr ")"
//! ```
//!
//! Index, exponent, bound and binomial arguments are integer contexts: a
//! sequence term inside one is rejected here rather than at evaluation.

use crate::error::Result;
use crate::scalar::Rational;

use super::ast::{Declaration, Expr, IdentityAst};
use super::lexer::{syntax, tokenize, Spanned, Tok};

const RESERVED: [&str; 3] = ["let", "sum", "binom"];

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    /// Depth of enclosing integer contexts.
    int_ctx: usize,
    /// Sum sites in pre-order, for scope errors.
    sum_sites: Vec<(usize, usize)>,
}

pub fn parse_identity(text: &str) -> Result<IdentityAst> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        int_ctx: 0,
        sum_sites: Vec::new(),
    };
    let mut declarations: Vec<Declaration> = Vec::new();
    while p.peek_ident("let") {
        let (line, column) = p.here();
        let d = p.declaration()?;
        if declarations.iter().any(|x| x.name == d.name) {
            return Err(syntax(line, column, format!("sequence {} declared twice", d.name)));
        }
        declarations.push(d);
    }
    let lhs = p.expr()?;
    p.expect(Tok::Eq, "'=' between the two sides")?;
    let rhs = p.expr()?;
    if p.peek() != &Tok::Eof {
        let t = p.cur();
        return Err(syntax(
            t.line,
            t.column,
            format!("unexpected {} after identity", t.tok.describe()),
        ));
    }
    let mut free = Vec::new();
    lhs.collect_free(&mut Vec::new(), &mut free);
    rhs.collect_free(&mut Vec::new(), &mut free);
    let mut sites = p.sum_sites.iter();
    check_scopes(&lhs, &free, &mut Vec::new(), &mut sites)?;
    check_scopes(&rhs, &free, &mut Vec::new(), &mut sites)?;
    Ok(IdentityAst {
        declarations,
        lhs,
        rhs,
        free_vars: free,
    })
}

/// A summation variable may not reuse a free variable or an enclosing
/// summation variable. `sites` yields sum positions in pre-order.
fn check_scopes<'a>(
    e: &Expr,
    free: &[String],
    bound: &mut Vec<String>,
    sites: &mut impl Iterator<Item = &'a (usize, usize)>,
) -> Result<()> {
    if let Expr::Sum { var, .. } = e {
        let (line, column) = sites.next().copied().unwrap_or((0, 0));
        if free.contains(var) || bound.contains(var) {
            return Err(syntax(
                line,
                column,
                format!("summation variable {var} shadows an outer variable"),
            ));
        }
    }
    for (child, binds) in e.children() {
        if binds {
            if let Expr::Sum { var, .. } = e {
                bound.push(var.clone());
            }
        }
        let r = check_scopes(child, free, bound, sites);
        if binds {
            bound.pop();
        }
        r?;
    }
    Ok(())
}

impl Parser {
    fn cur(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, off: usize) -> &Tok {
        let i = (self.pos + off).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn peek_ident(&self, name: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == name)
    }

    fn here(&self) -> (usize, usize) {
        (self.cur().line, self.cur().column)
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Spanned> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            let t = self.cur();
            Err(syntax(
                t.line,
                t.column,
                format!("expected {what}, found {}", t.tok.describe()),
            ))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize, usize)> {
        let t = self.cur().clone();
        match t.tok {
            Tok::Ident(s) => {
                self.bump();
                Ok((s, t.line, t.column))
            }
            other => Err(syntax(
                t.line,
                t.column,
                format!("expected {what}, found {}", other.describe()),
            )),
        }
    }

    fn declaration(&mut self) -> Result<Declaration> {
        self.bump();
        let (name, line, column) = self.ident("a sequence name")?;
        if RESERVED.contains(&name.as_str()) {
            return Err(syntax(line, column, format!("{name} is reserved")));
        }
        self.expect(Tok::Eq, "'='")?;
        self.expect(Tok::LParen, "'('")?;
        let mut vals = Vec::with_capacity(4);
        for i in 0..4 {
            if i > 0 {
                self.expect(Tok::Comma, "','")?;
            }
            vals.push(self.rational()?);
        }
        self.expect(Tok::RParen, "')'")?;
        if *self.peek() == Tok::Semi {
            self.bump();
        }
        let mut it = vals.into_iter();
        let mut next = || it.next().expect("four values");
        Ok(Declaration {
            name,
            p: next(),
            q: next(),
            g0: next(),
            g1: next(),
        })
    }

    /// `-? INT ("/" INT)?`
    fn rational(&mut self) -> Result<Rational> {
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let (line, column) = self.here();
        let num = self.integer()?;
        let den = if *self.peek() == Tok::Slash {
            self.bump();
            self.integer()?
        } else {
            1
        };
        let v = Rational::new(num, den).map_err(|_| syntax(line, column, "zero denominator"))?;
        Ok(if neg { -v } else { v })
    }

    fn integer(&mut self) -> Result<i64> {
        let t = self.cur().clone();
        match t.tok {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            other => Err(syntax(
                t.line,
                t.column,
                format!("expected an integer, found {}", other.describe()),
            )),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let exp = self.int_paren()?;
        Ok(Expr::Pow {
            base: Box::new(base),
            exp: Box::new(exp),
        })
    }

    /// `"(" expr ")"` in an integer context.
    fn int_paren(&mut self) -> Result<Expr> {
        self.expect(Tok::LParen, "'(' after '^'")?;
        let e = self.int_expr()?;
        self.expect(Tok::RParen, "')'")?;
        Ok(e)
    }

    fn int_expr(&mut self) -> Result<Expr> {
        self.int_ctx += 1;
        let e = self.expr();
        self.int_ctx -= 1;
        e
    }

    fn base(&mut self) -> Result<Expr> {
        let t = self.cur().clone();
        match t.tok {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::LParen => {
                let sign_pow = *self.peek_at(1) == Tok::Minus
                    && *self.peek_at(2) == Tok::Int(1)
                    && *self.peek_at(3) == Tok::RParen
                    && *self.peek_at(4) == Tok::Caret;
                if sign_pow {
                    for _ in 0..5 {
                        self.bump();
                    }
                    self.expect(Tok::LParen, "'(' after (-1)^")?;
                    let e = self.int_expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    return Ok(Expr::SignPow(Box::new(e)));
                }
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                match (name.as_str(), self.peek()) {
                    ("binom", Tok::LParen) => {
                        self.bump();
                        let k = self.int_expr()?;
                        self.expect(Tok::Comma, "',' in binom")?;
                        let j = self.int_expr()?;
                        self.expect(Tok::RParen, "')' closing binom")?;
                        Ok(Expr::Binom(Box::new(k), Box::new(j)))
                    }
                    ("sum", Tok::LParen) => {
                        self.sum_sites.push((t.line, t.column));
                        self.bump();
                        let (var, line, column) = self.ident("a summation variable")?;
                        if RESERVED.contains(&var.as_str()) {
                            return Err(syntax(line, column, format!("{var} is reserved")));
                        }
                        self.expect(Tok::Comma, "',' after summation variable")?;
                        let lo = self.int_expr()?;
                        self.expect(Tok::Comma, "',' after lower bound")?;
                        let hi = self.int_expr()?;
                        self.expect(Tok::Comma, "',' after upper bound")?;
                        let body = self.expr()?;
                        self.expect(Tok::RParen, "')' closing sum")?;
                        Ok(Expr::Sum {
                            var,
                            lo: Box::new(lo),
                            hi: Box::new(hi),
                            body: Box::new(body),
                        })
                    }
                    (_, Tok::LBracket) => {
                        if self.int_ctx > 0 {
                            return Err(syntax(
                                t.line,
                                t.column,
                                format!("sequence term {name}[...] inside an integer index or exponent"),
                            ));
                        }
                        self.bump();
                        let index = self.int_expr()?;
                        self.expect(Tok::RBracket, "']'")?;
                        Ok(Expr::Term {
                            seq: name,
                            index: Box::new(index),
                        })
                    }
                    _ if RESERVED.contains(&name.as_str()) => {
                        Err(syntax(t.line, t.column, format!("{name} is reserved")))
                    }
                    _ => Ok(Expr::Var(name)),
                }
            }
            other => Err(syntax(
                t.line,
                t.column,
                format!("expected an expression, found {}", other.describe()),
            )),
        }
    }
}
