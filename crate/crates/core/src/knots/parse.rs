//! Recursive descent parser for
//!
//! ```text
//! expr := term ('+' term)*
//! term := '-' term | atom
//! atom := 'U' | 'D' | 'T(' int ',' int ')' | 'C(' expr ';' int ',' int ')' | '(' expr ')'
//! ```

use super::{ExprError, KnotExpr};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub fn parse(text: &str) -> Result<KnotExpr, ExprError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let expr = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error("unexpected trailing input"));
    }
    expr.check()?;
    Ok(expr)
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ExprError {
        ExprError::Parse {
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn peek(&mut self) -> Option<u8> {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: u8) -> Result<(), ExprError> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", ch as char)))
        }
    }

    fn expr(&mut self) -> Result<KnotExpr, ExprError> {
        let mut left = self.term()?;
        while self.eat(b'+') {
            let right = self.term()?;
            left = KnotExpr::sum(left, right);
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<KnotExpr, ExprError> {
        if self.eat(b'-') {
            return Ok(KnotExpr::mirror(self.term()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<KnotExpr, ExprError> {
        match self.peek() {
            Some(b'U') => {
                self.pos += 1;
                Ok(KnotExpr::Unknot)
            }
            Some(b'D') => {
                self.pos += 1;
                Ok(KnotExpr::WhiteheadDoubleTrefoil)
            }
            Some(b'T') => {
                self.pos += 1;
                self.expect(b'(')?;
                let p = self.int()?;
                self.expect(b',')?;
                let q = self.int()?;
                self.expect(b')')?;
                Ok(KnotExpr::Torus(p, q))
            }
            Some(b'C') => {
                self.pos += 1;
                self.expect(b'(')?;
                let inner = self.expr()?;
                self.expect(b';')?;
                let p = self.int()?;
                self.expect(b',')?;
                let q = self.int()?;
                self.expect(b')')?;
                Ok(KnotExpr::cable(inner, p, q))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(_) => Err(self.error("expected U, D, T(p,q), C(expr;p,q) or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn int(&mut self) -> Result<i64, ExprError> {
        self.peek();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        text.parse().map_err(|_| {
            self.pos = start;
            self.error("expected an integer")
        })
    }
}
