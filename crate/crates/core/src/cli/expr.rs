//! Polynomial expressions in `H` and `U` with rational coefficients, e.g.
//! `3*H*U - 3*H^2` or `(U - H)^2 + 1/2`.

use std::sync::Arc;

use super::lex::{tokenize, Cursor, SyntaxError, Tok};
use crate::chow::{AmbientRing, RawClass};
use crate::exact::{int, Rational};

pub fn parse_class(text: &str) -> Result<RawClass, SyntaxError> {
    let mut cur = Cursor::new(tokenize(text, "+-*^/()")?, text.chars().count());
    let value = sum(&mut cur)?;
    cur.expect_end()?;
    Ok(value)
}

fn sum(cur: &mut Cursor) -> Result<RawClass, SyntaxError> {
    let mut acc = product(cur)?;
    loop {
        if cur.eat_punct('+') {
            acc = acc.add(&product(cur)?);
        } else if cur.eat_punct('-') {
            acc = acc.add(&product(cur)?.scale(&int(-1)));
        } else {
            return Ok(acc);
        }
    }
}

fn product(cur: &mut Cursor) -> Result<RawClass, SyntaxError> {
    let mut acc = unary(cur)?;
    while cur.eat_punct('*') {
        acc = acc.mul(&unary(cur)?);
    }
    Ok(acc)
}

fn unary(cur: &mut Cursor) -> Result<RawClass, SyntaxError> {
    if cur.eat_punct('-') {
        Ok(unary(cur)?.scale(&int(-1)))
    } else if cur.eat_punct('+') {
        unary(cur)
    } else {
        power(cur)
    }
}

fn power(cur: &mut Cursor) -> Result<RawClass, SyntaxError> {
    let base = atom(cur)?;
    if cur.eat_punct('^') {
        let pos = cur.pos();
        let e = u32::try_from(cur.unsigned()?).map_err(|_| SyntaxError {
            pos,
            message: "exponent too large".into(),
        })?;
        Ok(base.pow(e))
    } else {
        Ok(base)
    }
}

fn atom(cur: &mut Cursor) -> Result<RawClass, SyntaxError> {
    match cur.peek().cloned() {
        Some(Tok::Num(_)) => {
            let numer = Rational::from_integer(cur.unsigned()?.into());
            if cur.eat_punct('/') {
                let pos = cur.pos();
                let denom = cur.unsigned()?;
                if denom == 0 {
                    return Err(SyntaxError {
                        pos,
                        message: "division by zero".into(),
                    });
                }
                Ok(RawClass::constant(numer / Rational::from_integer(denom.into())))
            } else {
                Ok(RawClass::constant(numer))
            }
        }
        Some(Tok::Ident(name)) if name == "H" || name == "U" => {
            cur.next();
            let (i, j) = if name == "H" { (1, 0) } else { (0, 1) };
            Ok(RawClass::monomial(i, j, int(1)))
        }
        Some(Tok::Punct('(')) => {
            cur.next();
            let inner = sum(cur)?;
            cur.expect_punct(')')?;
            Ok(inner)
        }
        Some(t) => cur.error(format!("expected a number, H, U or '(', found {t}")),
        None => cur.error("unexpected end of input"),
    }
}

/// `line:a0,a1,a2,a3` or `plane:c1,c2`.
pub fn parse_ring(text: &str) -> Result<Arc<AmbientRing>, String> {
    let (kind, rest) = text
        .split_once(':')
        .ok_or_else(|| format!("ring {text:?}: expected line:a0,a1,a2,a3 or plane:c1,c2"))?;
    let values: Vec<i64> = rest
        .split(',')
        .map(|v| v.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| format!("ring {text:?}: {e}"))?;
    match (kind.trim(), values.as_slice()) {
        ("line", &[a0, a1, a2, a3]) => Ok(AmbientRing::line_base4([a0, a1, a2, a3])),
        ("plane", &[c1, c2]) => Ok(AmbientRing::plane_base2(c1, c2)),
        ("line", _) => Err(format!("ring {text:?}: line needs 4 twists")),
        ("plane", _) => Err(format!("ring {text:?}: plane needs c1,c2")),
        (other, _) => Err(format!("ring {text:?}: unknown base {other:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn eval(ring: &str, expr: &str) -> (String, Rational) {
        let amb = parse_ring(ring).unwrap();
        let class = amb.reduce(&parse_class(expr).unwrap());
        (class.to_string(), class.degree())
    }

    #[test]
    fn examples() {
        assert_eq!(eval("plane:3,3", "U*U").0, "3*H*U - 3*H^2");
        assert_eq!(eval("plane:1,0", "U^3"), ("H^2*U".to_string(), rat(1, 1)));
        assert_eq!(eval("plane:1,0", "H^3").0, "0");
        assert_eq!(eval("line:0,0,0,0", "U^4").0, "0");
        assert_eq!(eval("line:0,0,1,2", "U^4"), ("3*H*U^3".to_string(), rat(3, 1)));
        assert_eq!(eval("line:0,0,1,2", "H*U^3").1, rat(1, 1));
        assert_eq!(eval("plane:0,0", "1/2*H^2*U - (H - U)^2*0 + 2").1, rat(1, 2));
        assert_eq!(eval("plane:0,0", "-H^2*-U").1, rat(1, 1));
    }

    #[test]
    fn rendering_parses_back() {
        let amb = parse_ring("plane:2,-1").unwrap();
        let class = amb.reduce(&parse_class("(U - 2/3*H + 5)^3").unwrap());
        let again = amb.reduce(&parse_class(&class.to_string()).unwrap());
        assert_eq!(again, class);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_class("H +").unwrap_err().pos, 3);
        assert_eq!(parse_class("H * X").unwrap_err().pos, 4);
        assert_eq!(parse_class("(H").unwrap_err().pos, 2);
        assert_eq!(parse_class("1/0").unwrap_err().pos, 2);
        assert_eq!(parse_class("H U").unwrap_err().pos, 2);
        assert!(parse_ring("line:1,2").is_err());
        assert!(parse_ring("cone:1,2").is_err());
        assert!(parse_ring("plane:a,2").is_err());
        assert!(parse_ring("plane").is_err());
    }
}
