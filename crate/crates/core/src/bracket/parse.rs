//! Text form of bracket polynomials.
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := factor (["*"] factor)*
//! factor := integer | "[" label+ "]" | "(" expr ")"
//! ```
//!
//! Labels inside a bracket are separated by whitespace or commas.

use num_bigint::BigInt;

use super::BracketPolynomial;
use crate::error::{Error, Result};
use crate::geometry::IncidenceGeometry;

struct Parser<'a> {
    g: &'a IncidenceGeometry,
    text: &'a str,
    pos: usize,
}

fn is_label_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '.'
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::BracketSyntax(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek_raw() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.text[start..self.pos]
    }

    fn expr(&mut self) -> Result<BracketPolynomial> {
        let d = self.g.dimension();
        let negate = self.eat('-');
        let mut acc = self.term()?;
        if negate {
            acc = acc.scale(&BigInt::from(-1));
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?.scale(&BigInt::from(-1)));
            } else {
                break;
            }
        }
        debug_assert_eq!(acc.dimension(), d);
        Ok(acc)
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c == '[' || c == '(' || c.is_ascii_digit())
    }

    fn term(&mut self) -> Result<BracketPolynomial> {
        let mut acc = self.factor()?;
        loop {
            let explicit = self.eat('*');
            if explicit || self.starts_factor() {
                acc = acc.mul(&self.factor()?);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BracketPolynomial> {
        let d = self.g.dimension();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some('[') => {
                self.pos += 1;
                let mut labels = Vec::new();
                loop {
                    self.skip_ws();
                    if self.eat(']') {
                        break;
                    }
                    if !labels.is_empty() {
                        self.eat(',');
                        self.skip_ws();
                    }
                    let label = self.take_while(is_label_char);
                    if label.is_empty() {
                        return Err(self.err("expected a hyperplane label or ']'"));
                    }
                    labels.push(label);
                }
                match super::normalize_bracket(self.g, &labels)? {
                    None => Ok(BracketPolynomial::zero(d)),
                    Some((b, sign)) => Ok(BracketPolynomial::bracket(b).scale(&BigInt::from(sign))),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let n: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(BracketPolynomial::constant(d, n))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses a bracket polynomial whose labels refer to hyperplanes of `g`.
pub fn parse_bracket_polynomial(g: &IncidenceGeometry, text: &str) -> Result<BracketPolynomial> {
    let mut p = Parser { g, text, pos: 0 };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parses_products_sums_and_groups() {
        let g = fixtures::nf7();
        let p = parse_bracket_polynomial(
            &g,
            "[h1 h5][h2 h4][h0 h3]([h2 h3][h0 h5][h1 h4] - [h2 h5][h0 h4][h1 h3])",
        )
        .unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.expand().total_degree(), Some(12));
    }

    #[test]
    fn signs_and_zero_brackets() {
        let g = fixtures::nf7();
        let a = parse_bracket_polynomial(&g, "[h3 h1]").unwrap();
        let b = parse_bracket_polynomial(&g, "-[h1,h3]").unwrap();
        assert_eq!(a, b);
        assert!(parse_bracket_polynomial(&g, "[h2 h2][h0 h1]").unwrap().is_zero());
        let c = parse_bracket_polynomial(&g, "2*[h0 h1] + 3 [h0 h1] - 5[h0 h1]").unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn round_trips_display() {
        let g = fixtures::nf7();
        let p = parse_bracket_polynomial(&g, "[h0 h3]([h1 h2] - 7*[h1 h4]) + 1").unwrap();
        let text = p.display_with(g.hyperplanes()).to_string();
        assert_eq!(parse_bracket_polynomial(&g, &text).unwrap(), p);
    }

    #[test]
    fn syntax_errors() {
        let g = fixtures::nf7();
        for bad in [
            "",
            "[h0 h1",
            "([h0 h1]",
            "[h0 h1] +",
            "[h0 h1] ]",
            "[h0]",
            "[h0 h9]",
            "x",
        ] {
            assert!(parse_bracket_polynomial(&g, bad).is_err(), "{bad:?}");
        }
    }
}
