//! Text grammar for polynomials: signed sums of terms, each term a `*`
//! product of rational constants and powers `xI^E` (variables are 1-based).

use super::{Monomial, PolyError, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Int(BigInt),
    Var(usize), // zero-based
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn next(&mut self) -> Result<Tok, PolyError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(Tok::End);
        }
        let c = self.src[self.pos];
        self.pos += 1;
        match c {
            b'+' => Ok(Tok::Plus),
            b'-' => Ok(Tok::Minus),
            b'*' => Ok(Tok::Star),
            b'^' => Ok(Tok::Caret),
            b'/' => Ok(Tok::Slash),
            b'x' | b'X' => {
                let n = self.read_uint()?;
                let i: usize = n
                    .try_into()
                    .map_err(|_| PolyError::Parse("variable index too large".into()))?;
                if i == 0 {
                    return Err(PolyError::Parse("variables are 1-based (x1, x2, ...)".into()));
                }
                Ok(Tok::Var(i - 1))
            }
            b'0'..=b'9' => {
                self.pos -= 1;
                Ok(Tok::Int(self.read_uint()?))
            }
            other => Err(PolyError::Parse(format!(
                "unexpected character {:?} at byte {}",
                other as char,
                self.pos - 1
            ))),
        }
    }

    fn read_uint(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PolyError::Parse(format!("expected digits at byte {start}")));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse()
            .map_err(|_| PolyError::Parse(format!("bad integer {s:?}")))
    }
}

pub fn parse_polynomial(input: &str, nvars: usize) -> Result<Polynomial, PolyError> {
    let mut lx = Lexer::new(input);
    let mut out = Polynomial::zero(nvars);
    let mut tok = lx.next()?;
    if tok == Tok::End {
        return Err(PolyError::Parse("empty polynomial".into()));
    }
    loop {
        // sign prefix of the term
        let mut sign = BigRational::one();
        loop {
            match tok {
                Tok::Plus => {}
                Tok::Minus => sign = -sign,
                _ => break,
            }
            tok = lx.next()?;
        }
        // one term: product of factors
        let mut coeff = sign;
        let mut exps = vec![0u32; nvars];
        loop {
            match tok {
                Tok::Int(n) => {
                    tok = lx.next()?;
                    if tok == Tok::Slash {
                        match lx.next()? {
                            Tok::Int(d) => {
                                if d.is_zero() {
                                    return Err(PolyError::Parse("zero denominator".into()));
                                }
                                coeff *= BigRational::new(n, d);
                                tok = lx.next()?;
                            }
                            _ => return Err(PolyError::Parse("expected denominator after /".into())),
                        }
                    } else {
                        coeff *= BigRational::from_integer(n);
                    }
                }
                Tok::Var(i) => {
                    if i >= nvars {
                        return Err(PolyError::Parse(format!(
                            "variable x{} exceeds declared count {}",
                            i + 1,
                            nvars
                        )));
                    }
                    tok = lx.next()?;
                    let e: u32 = if tok == Tok::Caret {
                        match lx.next()? {
                            Tok::Int(n) => {
                                tok = lx.next()?;
                                n.try_into()
                                    .map_err(|_| PolyError::Parse("exponent too large".into()))?
                            }
                            _ => return Err(PolyError::Parse("expected exponent after ^".into())),
                        }
                    } else {
                        1
                    };
                    exps[i] += e;
                }
                _ => return Err(PolyError::Parse("expected a factor".into())),
            }
            if tok == Tok::Star {
                tok = lx.next()?;
            } else {
                break;
            }
        }
        out.add_term(Monomial(exps), coeff);
        match tok {
            Tok::End => break,
            Tok::Plus | Tok::Minus => {}
            _ => return Err(PolyError::Parse("expected + or - between terms".into())),
        }
    }
    Ok(out)
}
