use super::{Clause, Equation, OpSym, Term, Var};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tk {
    Ident(String),
    Star,
    Prime,
    Hat,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Eq,
    And,
    Implies,
    End,
}

struct Lexer {
    toks: Vec<(Tk, usize)>,
    pos: usize,
}

fn err(col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        col,
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tk, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            c if c.is_whitespace() => i += 1,
            '*' => (out.push((Tk::Star, col)), i += 1).1,
            '\'' => (out.push((Tk::Prime, col)), i += 1).1,
            '^' => (out.push((Tk::Hat, col)), i += 1).1,
            '[' => (out.push((Tk::LBracket, col)), i += 1).1,
            ']' => (out.push((Tk::RBracket, col)), i += 1).1,
            '(' => (out.push((Tk::LParen, col)), i += 1).1,
            ')' => (out.push((Tk::RParen, col)), i += 1).1,
            '&' => (out.push((Tk::And, col)), i += 1).1,
            '=' if chars.get(i + 1) == Some(&'>') => {
                out.push((Tk::Implies, col));
                i += 2;
            }
            '=' => (out.push((Tk::Eq, col)), i += 1).1,
            c if c.is_alphanumeric() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tk::Ident(chars[start..i].iter().collect()), col));
            }
            other => return Err(err(col, format!("unexpected character `{other}`"))),
        }
    }
    out.push((Tk::End, chars.len() + 1));
    Ok(out)
}

impl Lexer {
    fn peek(&self) -> &Tk {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tk {
        let t = self.toks[self.pos].0.clone();
        if t != Tk::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tk, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(err(self.col(), format!("expected {what}")))
        }
    }

    fn equation(&mut self) -> Result<Equation> {
        let lhs = self.term()?;
        self.expect(Tk::Eq, "`=`")?;
        let rhs = self.term()?;
        Ok(Equation { lhs, rhs })
    }

    fn term(&mut self) -> Result<Term> {
        let mut acc = self.factor()?;
        while *self.peek() == Tk::Star {
            self.bump();
            let rhs = self.factor()?;
            acc = Term::product(acc, rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        loop {
            match self.peek() {
                Tk::Prime => t = Term::Apply(OpSym::Prime, vec![t]),
                Tk::Hat => t = Term::Apply(OpSym::Hat, vec![t]),
                _ => return Ok(t),
            }
            self.bump();
        }
    }

    fn atom(&mut self) -> Result<Term> {
        let col = self.col();
        match self.bump() {
            Tk::Ident(name) => {
                let mut chars = name.chars();
                match (chars.next().and_then(Var::from_char), chars.next()) {
                    (Some(v), None) => Ok(Term::Var(v)),
                    _ => Ok(Term::Const(name)),
                }
            }
            Tk::LParen => {
                let t = self.term()?;
                self.expect(Tk::RParen, "`)`")?;
                Ok(t)
            }
            Tk::LBracket => {
                let a = self.term()?;
                let b = self.term()?;
                let c = self.term()?;
                self.expect(Tk::RBracket, "`]` after three terms")?;
                Ok(Term::Apply(OpSym::Ternary, vec![a, b, c]))
            }
            _ => Err(err(col, "expected a variable, constant, `[` or `(`")),
        }
    }
}

/// Parse clause text; errors carry the 1-based column of the offending token.
pub fn parse_clause(text: &str) -> Result<Clause> {
    let mut lx = Lexer {
        toks: lex(text)?,
        pos: 0,
    };
    let mut eqs = vec![lx.equation()?];
    while *lx.peek() == Tk::And {
        lx.bump();
        eqs.push(lx.equation()?);
    }
    let clause = match lx.peek() {
        Tk::Implies => {
            lx.bump();
            let conclusion = lx.equation()?;
            Clause {
                premises: eqs,
                conclusion,
            }
        }
        Tk::End if eqs.len() == 1 => Clause {
            premises: Vec::new(),
            conclusion: eqs.pop().unwrap(),
        },
        Tk::End => return Err(err(lx.col(), "conjunction without `=>`")),
        _ => return Err(err(lx.col(), "unexpected token")),
    };
    if *lx.peek() != Tk::End {
        return Err(err(lx.col(), "trailing input"));
    }
    Ok(clause)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: char) -> Term {
        Term::Var(Var::from_char(c).unwrap())
    }

    fn t3(a: Term, b: Term, c: Term) -> Term {
        Term::Apply(OpSym::Ternary, vec![a, b, c])
    }

    #[test]
    fn right_modularity() {
        let c = parse_clause("(x*y)*z = (z*y)*x").unwrap();
        assert!(c.is_identity());
        assert_eq!(
            c.conclusion.lhs,
            Term::product(Term::product(v('x'), v('y')), v('z'))
        );
        assert_eq!(
            c.conclusion.rhs,
            Term::product(Term::product(v('z'), v('y')), v('x'))
        );
        // `*` is left-associative, so the parentheses on the left are redundant
        assert_eq!(parse_clause("x*y*z = (z*y)*x").unwrap(), c);
    }

    #[test]
    fn lateral_commutativity() {
        let c = parse_clause("[x y z] = [z y x]").unwrap();
        assert_eq!(c.conclusion.lhs, t3(v('x'), v('y'), v('z')));
        assert_eq!(c.conclusion.rhs, t3(v('z'), v('y'), v('x')));
        assert_eq!(c.symbols(), vec![OpSym::Ternary]);
    }

    #[test]
    fn horn_clause() {
        let c = parse_clause("x*y = u & y*u = x => x = y").unwrap();
        assert_eq!(c.premises.len(), 2);
        assert_eq!(c.premises[1].lhs, Term::product(v('y'), v('u')));
        assert_eq!(
            c.conclusion,
            Equation {
                lhs: v('x'),
                rhs: v('y')
            }
        );
        assert_eq!(c.vars().iter().map(|v| v.name()).collect::<String>(), "xyu");
    }

    #[test]
    fn postfix_binds_tighter_than_product() {
        let c = parse_clause("x'*y = (x*y)^'").unwrap();
        assert_eq!(
            c.conclusion.lhs,
            Term::product(Term::Apply(OpSym::Prime, vec![v('x')]), v('y'))
        );
        assert_eq!(
            c.conclusion.rhs,
            Term::Apply(
                OpSym::Prime,
                vec![Term::Apply(OpSym::Hat, vec![Term::product(v('x'), v('y'))])]
            )
        );
    }

    #[test]
    fn constants_and_nesting() {
        let c = parse_clause("[l [l x l] l] = x").unwrap();
        assert_eq!(c.constants(), vec!["l"]);
        assert_eq!(c.vars().len(), 1);
        let c = parse_clause("[x*y z u] = xy").unwrap();
        assert_eq!(c.conclusion.rhs, Term::Const("xy".into()));
    }

    #[test]
    fn errors_carry_columns() {
        assert_eq!(
            parse_clause("x * = y"),
            Err(Error::Parse {
                line: 1,
                col: 5,
                msg: "expected a variable, constant, `[` or `(`".into()
            })
        );
        assert!(matches!(
            parse_clause("[x y] = x"),
            Err(Error::Parse { col: 5, .. })
        ));
        assert!(matches!(
            parse_clause("x = y & y = x"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_clause("x = y z"),
            Err(Error::Parse { col: 7, .. })
        ));
        assert!(matches!(
            parse_clause("x % y"),
            Err(Error::Parse { col: 3, .. })
        ));
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "(x*y)*z = (z*y)*x",
            "x*(y*z) = y*(x*z)",
            "[[x y z] u v] = [x [u z y] v]",
            "x*x = x & y*y = y => x*y = y*x",
            "(x*y)' = x'*y'",
            "[x x^ y] = [x y' y^]",
        ] {
            let c = parse_clause(text).unwrap();
            assert_eq!(parse_clause(&c.to_string()).unwrap(), c, "{text}");
        }
    }
}
