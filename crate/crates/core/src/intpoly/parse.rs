//! Text formats: canonical `c0,c1,...,cn` and human `x^2 - 3x + 1`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{IntPolynomial, PolyError};

pub(super) fn parse_polynomial(s: &str) -> Result<IntPolynomial, PolyError> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Err(PolyError::Parse("empty input".into()));
    }
    if trimmed.chars().all(|c| c.is_ascii_digit() || c == ',' || c == '-' || c == '+' || c.is_whitespace())
        && (trimmed.contains(',') || !trimmed[1..].contains(['-', '+']))
    {
        parse_coeff_list(trimmed)
    } else {
        parse_human(trimmed)
    }
}

fn parse_coeff_list(s: &str) -> Result<IntPolynomial, PolyError> {
    let coeffs = s
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<BigInt>().map_err(|_| PolyError::Parse(format!("bad coefficient {tok:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntPolynomial::new(coeffs))
}

fn parse_human(s: &str) -> Result<IntPolynomial, PolyError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut var: Option<char> = None;
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut chars = compact.chars().peekable();
    let bad = |msg: &str| PolyError::Parse(format!("{msg} in {s:?}"));

    while chars.peek().is_some() {
        let mut negative = false;
        while let Some(&c) = chars.peek() {
            match c {
                '+' => {}
                '-' => negative = !negative,
                _ => break,
            }
            chars.next();
        }
        let mut digits = String::new();
        while let Some(&c) = chars.peek().filter(|c| c.is_ascii_digit()) {
            digits.push(c);
            chars.next();
        }
        if chars.peek() == Some(&'*') {
            chars.next();
        }
        let mut power = 0usize;
        if let Some(&c) = chars.peek().filter(|c| c.is_ascii_alphabetic()) {
            match var {
                None => var = Some(c),
                Some(v) if v != c => return Err(bad("mixed variables")),
                _ => {}
            }
            chars.next();
            power = 1;
            if chars.peek() == Some(&'^') {
                chars.next();
                let mut exp = String::new();
                while let Some(&d) = chars.peek().filter(|c| c.is_ascii_digit()) {
                    exp.push(d);
                    chars.next();
                }
                power = exp.parse().map_err(|_| bad("bad exponent"))?;
            }
        } else if digits.is_empty() {
            return Err(bad("expected a term"));
        }
        let mut c: BigInt =
            if digits.is_empty() { BigInt::from(1) } else { digits.parse().map_err(|_| bad("bad coefficient"))? };
        if negative {
            c = -c;
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigInt::zero());
        }
        coeffs[power] += c;
        if let Some(&c) = chars.peek() {
            if c != '+' && c != '-' {
                return Err(bad("unexpected character"));
            }
        }
    }
    Ok(IntPolynomial::new(coeffs))
}
