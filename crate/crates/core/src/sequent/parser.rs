//! Recursive-descent parser for the term and sequent grammar.
//!
//! ```text
//! term    := "0" | "1" | IDENT | "neg" term | term "+" term | term "." term
//!          | term "-" term | "inf(" term "," term ")" | "sup(" term "," term ")"
//!          | "d(" term "," term ")" | COEFF "*" term | term "^" COEFF | "(" term ")"
//! atom    := term ("=" | "<=") term
//! formula := "true" | "false" | atom | formula "&" formula | formula "|" formula
//!          | "exists" IDENT+ "." formula | "OR[" IDENT "<=" NAT "]" formula
//! sequent := "forall" IDENT* ":" formula "|-" formula
//! ```
//!
//! Whitespace is insignificant. Precedence, tightest first: ^, *, neg, ".",
//! then "+" and "-" on one level associating to the left; "&" binds tighter
//! than "|"; "exists" and "OR[..]" extend to the end of their subformula. A
//! COEFF is a numeral, or an index variable bound by an enclosing OR, whose
//! index ranges over 0..=NAT.

use crate::error::{Error, Result};
use crate::sequent::ast::{Coeff, Formula, Sequent, Term};

const RESERVED: &[&str] = &[
    "neg", "inf", "sup", "d", "true", "false", "exists", "OR", "forall",
];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Nat(u64),
    Ident(String),
    Plus,
    Minus,
    Dot,
    Star,
    Caret,
    Amp,
    Pipe,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Equals,
    LeqSign,
    Turnstile,
    Colon,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                toks.push((Tok::Plus, start));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, start));
                i += 1;
            }
            '.' => {
                toks.push((Tok::Dot, start));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, start));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, start));
                i += 1;
            }
            '&' => {
                toks.push((Tok::Amp, start));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, start));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, start));
                i += 1;
            }
            '[' => {
                toks.push((Tok::LBracket, start));
                i += 1;
            }
            ']' => {
                toks.push((Tok::RBracket, start));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, start));
                i += 1;
            }
            '=' => {
                toks.push((Tok::Equals, start));
                i += 1;
            }
            ':' => {
                toks.push((Tok::Colon, start));
                i += 1;
            }
            '|' => {
                if i + 1 < bytes.len() && bytes[i + 1] == b'-' {
                    toks.push((Tok::Turnstile, start));
                    i += 2;
                } else {
                    toks.push((Tok::Pipe, start));
                    i += 1;
                }
            }
            '<' => {
                if i + 1 < bytes.len() && bytes[i + 1] == b'=' {
                    toks.push((Tok::LeqSign, start));
                    i += 2;
                } else {
                    return Err(Error::Parse {
                        pos: start,
                        msg: "expected <=".into(),
                    });
                }
            }
            '0'..='9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let text = &src[i..j];
                let val: u64 = text.parse().map_err(|_| Error::Parse {
                    pos: start,
                    msg: format!("numeral {} is out of range", text),
                })?;
                toks.push((Tok::Nat(val), start));
                i = j;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < bytes.len()
                    && ((bytes[j] as char).is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                toks.push((Tok::Ident(src[i..j].to_string()), start));
                i = j;
            }
            _ => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character {:?}", c),
                });
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    cur: usize,
    end: usize,
    /// Index variables currently bound by OR[..], innermost last.
    idx_scope: Vec<String>,
}

impl Parser {
    fn new(src: &str) -> Result<Parser> {
        let toks = lex(src)?;
        let end = src.len();
        Ok(Parser {
            toks,
            cur: 0,
            end,
            idx_scope: Vec::new(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.cur).map(|(t, _)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.cur + 1).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.cur).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.cur).map(|(t, _)| t.clone());
        if t.is_some() {
            self.cur += 1;
        }
        t
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.peek() == Some(t) {
            self.cur += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected {}", what)))
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(name)) if !RESERVED.contains(&name.as_str()) => {
                let name = name.clone();
                self.cur += 1;
                Ok(name)
            }
            _ => Err(self.err(&format!("expected {}", what))),
        }
    }

    fn coeff(&mut self) -> Result<Coeff> {
        match self.peek() {
            Some(Tok::Nat(k)) => {
                let k = *k;
                self.cur += 1;
                Ok(Coeff::Lit(k))
            }
            Some(Tok::Ident(name)) if self.idx_scope.contains(name) => {
                let name = name.clone();
                self.cur += 1;
                Ok(Coeff::Idx(name))
            }
            _ => Err(self.err("expected a numeral or a bound index variable")),
        }
    }

    // term := sum
    fn term(&mut self) -> Result<Term> {
        let mut acc = self.odot_chain()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.cur += 1;
                    let rhs = self.odot_chain()?;
                    acc = acc.oplus(rhs);
                }
                Some(Tok::Minus) => {
                    self.cur += 1;
                    let rhs = self.odot_chain()?;
                    acc = acc.ominus(rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn odot_chain(&mut self) -> Result<Term> {
        let mut acc = self.neg_level()?;
        while self.peek() == Some(&Tok::Dot) {
            self.cur += 1;
            let rhs = self.neg_level()?;
            acc = acc.odot(rhs);
        }
        Ok(acc)
    }

    fn neg_level(&mut self) -> Result<Term> {
        if let Some(Tok::Ident(name)) = self.peek() {
            if name == "neg" {
                self.cur += 1;
                let body = self.neg_level()?;
                return Ok(body.neg());
            }
        }
        self.scalar_level()
    }

    fn scalar_level(&mut self) -> Result<Term> {
        // COEFF "*" binds tighter than neg; a bare numeral falls through to
        // the atom rule, where only 0 and 1 denote constants.
        let is_scalar_prefix = match (self.peek(), self.peek2()) {
            (Some(Tok::Nat(_)), Some(Tok::Star)) => true,
            (Some(Tok::Ident(name)), Some(Tok::Star)) => self.idx_scope.contains(name),
            _ => false,
        };
        if is_scalar_prefix {
            let k = self.coeff()?;
            self.expect(&Tok::Star, "*")?;
            let body = self.scalar_level()?;
            return Ok(Term::Scalar(k, Box::new(body)));
        }
        self.power_level()
    }

    fn power_level(&mut self) -> Result<Term> {
        let mut acc = self.atom_term()?;
        while self.peek() == Some(&Tok::Caret) {
            self.cur += 1;
            let k = self.coeff()?;
            acc = Term::Power(Box::new(acc), k);
        }
        Ok(acc)
    }

    fn atom_term(&mut self) -> Result<Term> {
        match self.peek().cloned() {
            Some(Tok::Nat(0)) => {
                self.cur += 1;
                Ok(Term::Zero)
            }
            Some(Tok::Nat(1)) => {
                self.cur += 1;
                Ok(Term::One)
            }
            Some(Tok::Nat(_)) => Err(self.err("bare numerals other than 0 and 1 are not terms")),
            Some(Tok::LParen) => {
                self.cur += 1;
                let t = self.term()?;
                self.expect(&Tok::RParen, ")")?;
                Ok(t)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "inf" | "sup" | "d" => {
                    self.cur += 1;
                    self.expect(&Tok::LParen, "(")?;
                    let a = self.term()?;
                    self.expect(&Tok::Comma, ",")?;
                    let b = self.term()?;
                    self.expect(&Tok::RParen, ")")?;
                    Ok(match name.as_str() {
                        "inf" => a.meet(b),
                        "sup" => a.join(b),
                        _ => a.dist(b),
                    })
                }
                _ if RESERVED.contains(&name.as_str()) => {
                    Err(self.err(&format!("{} cannot be used as a variable", name)))
                }
                _ if self.idx_scope.contains(&name) => {
                    Err(self.err(&format!("index variable {} used as a term", name)))
                }
                _ => {
                    self.cur += 1;
                    Ok(Term::Var(name))
                }
            },
            _ => Err(self.err("expected a term")),
        }
    }

    // formula := disjunction
    fn formula(&mut self) -> Result<Formula> {
        let mut parts = vec![self.conjunction()?];
        while self.peek() == Some(&Tok::Pipe) {
            self.cur += 1;
            parts.push(self.conjunction()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::Disj(parts)
        })
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut parts = vec![self.formula_unit()?];
        while self.peek() == Some(&Tok::Amp) {
            self.cur += 1;
            parts.push(self.formula_unit()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::Conj(parts)
        })
    }

    fn formula_unit(&mut self) -> Result<Formula> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) if name == "true" => {
                self.cur += 1;
                Ok(Formula::Truth)
            }
            Some(Tok::Ident(name)) if name == "false" => {
                self.cur += 1;
                Ok(Formula::Falsity)
            }
            Some(Tok::Ident(name)) if name == "exists" => {
                self.cur += 1;
                let mut vars = vec![self.ident("a bound variable")?];
                while matches!(self.peek(), Some(Tok::Ident(n)) if !RESERVED.contains(&n.as_str()))
                {
                    vars.push(self.ident("a bound variable")?);
                }
                self.expect(&Tok::Dot, ". after exists binders")?;
                let body = self.formula()?;
                Ok(Formula::Exists(vars, Box::new(body)))
            }
            Some(Tok::Ident(name)) if name == "OR" => {
                self.cur += 1;
                self.expect(&Tok::LBracket, "[")?;
                let var = self.ident("an index variable")?;
                self.expect(&Tok::LeqSign, "<=")?;
                let bound = match self.bump() {
                    Some(Tok::Nat(b)) => b,
                    _ => return Err(self.err("expected a numeral bound")),
                };
                self.expect(&Tok::RBracket, "]")?;
                self.idx_scope.push(var.clone());
                let body = self.formula();
                self.idx_scope.pop();
                Ok(Formula::IndexedDisj {
                    var,
                    bound,
                    body: Box::new(body?),
                })
            }
            _ => {
                // Try an atom first; on failure reparse a parenthesized
                // formula from the same spot.
                let save = self.cur;
                match self.atom_formula() {
                    Ok(a) => Ok(a),
                    Err(atom_err) => {
                        self.cur = save;
                        if self.peek() == Some(&Tok::LParen) {
                            self.cur += 1;
                            let inner = self.formula()?;
                            self.expect(&Tok::RParen, ")")?;
                            Ok(inner)
                        } else {
                            Err(atom_err)
                        }
                    }
                }
            }
        }
    }

    fn atom_formula(&mut self) -> Result<Formula> {
        let lhs = self.term()?;
        match self.peek() {
            Some(Tok::Equals) => {
                self.cur += 1;
                Ok(Formula::Eq(lhs, self.term()?))
            }
            Some(Tok::LeqSign) => {
                self.cur += 1;
                Ok(Formula::Leq(lhs, self.term()?))
            }
            _ => Err(self.err("expected = or <=")),
        }
    }

    fn sequent(&mut self) -> Result<Sequent> {
        match self.peek() {
            Some(Tok::Ident(name)) if name == "forall" => {
                self.cur += 1;
            }
            _ => return Err(self.err("a sequent starts with forall")),
        }
        let mut context = Vec::new();
        while matches!(self.peek(), Some(Tok::Ident(n)) if !RESERVED.contains(&n.as_str())) {
            context.push(self.ident("a context variable")?);
        }
        self.expect(&Tok::Colon, ":")?;
        let antecedent = self.formula()?;
        self.expect(&Tok::Turnstile, "|-")?;
        let succedent = self.formula()?;
        let seq = Sequent::new(context, antecedent, succedent);
        let free = seq.free_vars();
        for v in &free {
            if !seq.context.contains(v) {
                return Err(self.err(&format!("free variable {} is not in the context", v)));
            }
        }
        Ok(seq)
    }

    fn finish(&self) -> Result<()> {
        if self.cur == self.toks.len() {
            Ok(())
        } else {
            Err(self.err("trailing input"))
        }
    }
}

pub fn parse_term(src: &str) -> Result<Term> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_formula(src: &str) -> Result<Formula> {
    let mut p = Parser::new(src)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_sequent(src: &str) -> Result<Sequent> {
    let mut p = Parser::new(src)?;
    let s = p.sequent()?;
    p.finish()?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequent::ast::{Coeff, Formula, Term};

    #[test]
    fn precedence_tower() {
        let t = parse_term("2*x^3 + neg y . z").unwrap();
        let expect = Term::Scalar(Coeff::Lit(2), Box::new(Term::var("x").power(3)))
            .oplus(Term::var("y").neg().odot(Term::var("z")));
        assert_eq!(t, expect);
    }

    #[test]
    fn plus_minus_associate_left() {
        let t = parse_term("x - y + z").unwrap();
        assert_eq!(t, Term::var("x").ominus(Term::var("y")).oplus(Term::var("z")));
        let u = parse_term("x - (y + z)").unwrap();
        assert_eq!(u, Term::var("x").ominus(Term::var("y").oplus(Term::var("z"))));
    }

    #[test]
    fn function_style_lattice_ops() {
        let t = parse_term("inf(x, sup(y, d(x, 0)))").unwrap();
        assert_eq!(
            t,
            Term::var("x").meet(Term::var("y").join(Term::var("x").dist(Term::Zero)))
        );
    }

    #[test]
    fn sequent_roundtrip_through_printer() {
        let cases = [
            "forall x : true |- (3*x)^2 = 0 | 3*x = 1",
            "forall : 0 = 1 |- false",
            "forall x y : x <= y & (2*x)^2 = 0 |- OR[k <= 4] k*x = 1 | x . y = 0",
            "forall x : true |- exists z . (6*z = neg z & x = 2*z)",
            "forall x : true |- OR[k <= 3] (k*x = 1 | k*(neg x) = 1)",
        ];
        for src in cases {
            let s = parse_sequent(src).unwrap();
            let printed = s.to_string();
            let reparsed = parse_sequent(&printed).unwrap();
            assert_eq!(s, reparsed, "roundtrip failed for {}", src);
        }
    }

    #[test]
    fn index_variable_scoping() {
        assert!(parse_sequent("forall x : true |- OR[k <= 3] k*x = 1").is_ok());
        // Index variable escapes its scope.
        assert!(parse_sequent("forall x : true |- k*x = 1").is_err());
        // Index variable used as a term.
        assert!(parse_sequent("forall x : true |- OR[k <= 3] k = x").is_err());
    }

    #[test]
    fn context_must_cover_free_vars() {
        assert!(parse_sequent("forall x : true |- x + y = 1").is_err());
        assert!(parse_sequent("forall x y : true |- x + y = 1").is_ok());
        assert!(parse_sequent("forall x : true |- exists y . x + y = 1").is_ok());
    }

    #[test]
    fn error_positions_point_at_the_problem() {
        let err = parse_sequent("x |- true").unwrap_err();
        match err {
            crate::error::Error::Parse { pos, .. } => assert_eq!(pos, 0),
            other => panic!("unexpected {:?}", other),
        }
        let err = parse_term("x + + y").unwrap_err();
        match err {
            crate::error::Error::Parse { pos, .. } => assert_eq!(pos, 4),
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn bare_numerals_are_rejected() {
        assert!(parse_term("3").is_err());
        assert!(parse_term("3*x").is_ok());
        assert!(parse_term("0").is_ok());
        assert!(parse_term("x^2").is_ok());
    }

    #[test]
    fn scalar_operand_must_be_power_level() {
        assert!(parse_term("2*neg x").is_err());
        assert!(parse_term("2*(neg x)").is_ok());
        assert!(parse_term("neg 2*x").is_ok());
        assert_eq!(
            parse_term("neg 2*x").unwrap(),
            Term::Scalar(Coeff::Lit(2), Box::new(Term::var("x"))).neg()
        );
    }

    #[test]
    fn parenthesized_formula_vs_term() {
        let f = parse_formula("(x + y) = z").unwrap();
        assert_eq!(
            f,
            Formula::Eq(Term::var("x").oplus(Term::var("y")), Term::var("z"))
        );
        let g = parse_formula("(x = y | u = v) & true").unwrap();
        match g {
            Formula::Conj(ps) => assert!(matches!(ps[0], Formula::Disj(_))),
            other => panic!("unexpected {:?}", other),
        }
    }
}
