//! Line-oriented text format for operators with exact round-tripping.
//!
//! One term per line:
//!
//! ```text
//! line   := scalar [ monomial ]
//! scalar := rational | "{" poly "}"
//! poly   := term (("+" | "-") term)*
//! term   := [rational] var-factor*      var-factor := (a|b|w|l)["^" int]
//! monomial := op-factor+                op-factor  := (t|u|dt|du)["^" int]
//! ```
//!
//! Rationals are `p` or `p/q` in lowest terms. `#` starts a comment, blank
//! lines are skipped. Emission is canonical: terms appear in the operator's
//! monomial order, polynomial terms in exponent order, and parsing the
//! emitted text reproduces the operator bit for bit. Duplicate monomial
//! lines and mixed coefficient rings are parse errors.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::scalar::{rat_is_nonneg, Param, ParamAssign, ParamPoly, Rat, RingTag, Scalar};
use crate::weyl::{DiffMono, DiffOp, Poly2};
use crate::{Error, Result};

/// Canonical text for a rational: `p` or `p/q`.
pub fn emit_rational(c: &Rat) -> String {
    c.to_string()
}

/// Canonical text for a parameter polynomial, without braces.
pub fn emit_parampoly(p: &ParamPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (exps, coeff)) in p.iter().enumerate() {
        let positive = rat_is_nonneg(coeff);
        if idx == 0 {
            if !positive {
                out.push('-');
            }
        } else if positive {
            out.push_str(" + ");
        } else {
            out.push_str(" - ");
        }
        let mag = coeff.abs();
        let mut factors: Vec<String> = Vec::new();
        for v in Param::ALL {
            let e = exps[v.index()];
            if e == 1 {
                factors.push(v.symbol().to_string());
            } else if e > 1 {
                factors.push(format!("{}^{}", v.symbol(), e));
            }
        }
        if factors.is_empty() {
            out.push_str(&emit_rational(&mag));
        } else {
            if !mag.is_one() {
                out.push_str(&emit_rational(&mag));
                out.push(' ');
            }
            out.push_str(&factors.join(" "));
        }
    }
    out
}

/// Canonical text for a scalar: bare rational, or braced polynomial.
pub fn emit_scalar(s: &Scalar) -> String {
    match s {
        Scalar::Rat(c) => emit_rational(c),
        Scalar::Poly(p) => format!("{{{}}}", emit_parampoly(p)),
    }
}

/// Canonical text for a monomial; empty string for the identity.
pub fn emit_mono(m: &DiffMono) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (name, e) in [
        ("t", m.t_pow),
        ("u", m.u_pow),
        ("dt", m.dt_pow),
        ("du", m.du_pow),
    ] {
        if e == 1 {
            parts.push(name.to_string());
        } else if e > 1 {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join(" ")
}

/// Canonical multi-line text for an operator. The zero operator emits `0`.
pub fn emit_diffop(op: &DiffOp) -> String {
    if op.is_zero() {
        return "0\n".to_string();
    }
    let mut out = String::new();
    for (mono, coeff) in op.iter() {
        out.push_str(&emit_scalar(coeff));
        let m = emit_mono(mono);
        if !m.is_empty() {
            out.push(' ');
            out.push_str(&m);
        }
        out.push('\n');
    }
    out
}

/// Display text for a two-variable polynomial with the given variable names.
pub fn emit_poly2(p: &Poly2, first: &str, second: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    for ((e1, e2), coeff) in p.iter() {
        let mut term = emit_scalar(coeff);
        for (name, e) in [(first, *e1), (second, *e2)] {
            if e == 1 {
                term.push_str(&format!(" {name}"));
            } else if e > 1 {
                term.push_str(&format!(" {name}^{e}"));
            }
        }
        parts.push(term);
    }
    parts.join(" + ")
}

fn tokenize(line: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    for ch in line.chars() {
        if ch == '{' || ch == '}' {
            if !cur.is_empty() {
                tokens.push(std::mem::take(&mut cur));
            }
            tokens.push(ch.to_string());
        } else if ch.is_whitespace() {
            if !cur.is_empty() {
                tokens.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    tokens
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn looks_rational(tok: &str) -> bool {
    let rest = tok.strip_prefix(['-', '+']).unwrap_or(tok);
    rest.chars().next().is_some_and(|c| c.is_ascii_digit())
}

/// Parse `p` or `p/q`. Rejects zero denominators explicitly.
pub fn parse_rational(tok: &str, line: usize) -> Result<Rat> {
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| parse_err(line, format!("bad rational '{tok}'")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| parse_err(line, format!("bad rational '{tok}'")))?;
    if den.is_zero() {
        return Err(parse_err(line, format!("zero denominator in '{tok}'")));
    }
    Ok(Rat::new(num, den))
}

fn parse_exponent(tok: &str, line: usize) -> Result<(String, u32)> {
    match tok.split_once('^') {
        Some((name, e)) => {
            let e: u32 = e
                .parse()
                .map_err(|_| parse_err(line, format!("bad exponent in '{tok}'")))?;
            Ok((name.to_string(), e))
        }
        None => Ok((tok.to_string(), 1)),
    }
}

fn parse_poly_tokens(tokens: &[String], line: usize) -> Result<ParamPoly> {
    // Split into sign-prefixed groups, then read each group as
    // rational-and-variable factors.
    let mut groups: Vec<(Rat, Vec<&String>)> = Vec::new();
    let mut sign = Rat::one();
    let mut cur: Vec<&String> = Vec::new();
    let mut pending_sign = false;
    for tok in tokens {
        if tok == "+" || tok == "-" {
            if !cur.is_empty() {
                groups.push((std::mem::replace(&mut sign, Rat::one()), std::mem::take(&mut cur)));
            }
            if tok == "-" {
                sign = -sign;
            }
            pending_sign = true;
        } else {
            cur.push(tok);
            pending_sign = false;
        }
    }
    if !cur.is_empty() {
        groups.push((sign, cur));
    } else if pending_sign {
        return Err(parse_err(line, "dangling sign in polynomial"));
    }

    let mut poly = ParamPoly::zero();
    for (sign, toks) in groups {
        let mut coeff = sign;
        let mut exps = [0u32; 4];
        for tok in toks {
            if looks_rational(tok) {
                coeff *= parse_rational(tok, line)?;
            } else {
                let (name, e) = parse_exponent(tok, line)?;
                let param = name
                    .chars()
                    .next()
                    .filter(|_| name.len() == 1)
                    .and_then(Param::from_symbol)
                    .ok_or_else(|| parse_err(line, format!("unknown parameter '{name}'")))?;
                exps[param.index()] += e;
            }
        }
        poly = poly.add(&ParamPoly::monomial(exps, coeff));
    }
    Ok(poly)
}

fn parse_mono_tokens(tokens: &[String], line: usize) -> Result<DiffMono> {
    let mut mono = DiffMono::IDENTITY;
    for tok in tokens {
        let (name, e) = parse_exponent(tok, line)?;
        match name.as_str() {
            "t" => mono.t_pow += e,
            "u" => mono.u_pow += e,
            "dt" => mono.dt_pow += e,
            "du" => mono.du_pow += e,
            other => return Err(parse_err(line, format!("unknown factor '{other}'"))),
        }
    }
    Ok(mono)
}

/// Parse operator text. Inverse of [`emit_diffop`] on canonical input.
pub fn parse_diffop(src: &str) -> Result<DiffOp> {
    let mut op = DiffOp::zero();
    let mut ring: Option<RingTag> = None;
    let mut seen: Vec<DiffMono> = Vec::new();

    for (lineno, raw) in src.lines().enumerate() {
        let line = lineno + 1;
        let body = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(body);
        if tokens.is_empty() {
            continue;
        }

        let (scalar, mono_tokens): (Scalar, &[String]) = if tokens[0] == "{" {
            let close = tokens
                .iter()
                .position(|t| t == "}")
                .ok_or_else(|| parse_err(line, "unterminated '{'"))?;
            let poly = parse_poly_tokens(&tokens[1..close], line)?;
            (Scalar::Poly(poly), &tokens[close + 1..])
        } else if looks_rational(&tokens[0]) {
            (Scalar::Rat(parse_rational(&tokens[0], line)?), &tokens[1..])
        } else {
            return Err(parse_err(
                line,
                format!("expected a scalar, found '{}'", tokens[0]),
            ));
        };

        match ring {
            None => ring = Some(scalar.ring()),
            Some(r) if r != scalar.ring() => {
                return Err(parse_err(line, "mixed coefficient rings"));
            }
            _ => {}
        }

        let mono = parse_mono_tokens(mono_tokens, line)?;
        if scalar.is_zero() {
            continue;
        }
        if seen.contains(&mono) {
            return Err(parse_err(
                line,
                format!("duplicate monomial '{}'", emit_mono(&mono)),
            ));
        }
        seen.push(mono);
        op.add_term(mono, &scalar)
            .map_err(|e| parse_err(line, e.to_string()))?;
    }
    Ok(op)
}

/// Parse `name=value` pairs like `a=1/2,b=3,w=1,l=0`; the literal `symbolic`
/// yields the empty assignment.
pub fn parse_assign(src: &str) -> Result<ParamAssign> {
    let src = src.trim();
    if src == "symbolic" || src.is_empty() {
        return Ok(ParamAssign::new());
    }
    let mut assign = ParamAssign::new();
    for (idx, pair) in src.split(',').enumerate() {
        let line = idx + 1;
        let (name, value) = pair
            .trim()
            .split_once('=')
            .ok_or_else(|| parse_err(line, format!("expected name=value, found '{pair}'")))?;
        let name = name.trim();
        let param = name
            .chars()
            .next()
            .filter(|_| name.len() == 1)
            .and_then(Param::from_symbol)
            .ok_or_else(|| parse_err(line, format!("unknown parameter '{name}'")))?;
        let value = parse_rational(value.trim(), line)?;
        assign = assign.with(param, value);
    }
    Ok(assign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    #[test]
    fn rational_roundtrip() {
        for s in ["0", "7", "-3", "5/3", "-12/7"] {
            let r = parse_rational(s, 1).unwrap();
            assert_eq!(emit_rational(&r), s);
        }
        assert!(parse_rational("1/0", 1).is_err());
        assert!(parse_rational("x", 1).is_err());
    }

    #[test]
    fn parampoly_emission_reads_naturally() {
        let a = ParamPoly::var(Param::A);
        let w = ParamPoly::var(Param::W);
        let p = 2 * a.clone() * a.clone() - w.clone() + ParamPoly::constant(rat(1, 2));
        assert_eq!(emit_parampoly(&p), "1/2 - w + 2 a^2");
        assert_eq!(emit_parampoly(&ParamPoly::zero()), "0");
        assert_eq!(emit_parampoly(&-w), "-w");
    }

    #[test]
    fn diffop_roundtrip_is_exact() {
        let src = "\
# a comment
{1/2 - w + 2 a^2} t^2 du
-4 # rational would clash with the braced ring
";
        // Mixed rings must be rejected.
        assert!(matches!(parse_diffop(src), Err(Error::Parse { line: 3, .. })));

        let op = parse_diffop("{2 a} t dt^2\n{-1} du\n{3/4}\n").unwrap();
        let text = emit_diffop(&op);
        assert_eq!(text, "{3/4}\n{-1} du\n{2 a} t dt^2\n");
        assert_eq!(parse_diffop(&text).unwrap(), op);

        let rational = parse_diffop("1/3 t u\n-2 dt\n").unwrap();
        let text = emit_diffop(&rational);
        assert_eq!(text, "-2 dt\n1/3 t u\n");
        assert_eq!(parse_diffop(&text).unwrap(), rational);
    }

    #[test]
    fn zero_and_duplicates() {
        assert!(parse_diffop("0\n").unwrap().is_zero());
        assert!(parse_diffop("").unwrap().is_zero());
        assert_eq!(emit_diffop(&DiffOp::zero()), "0\n");
        assert!(matches!(
            parse_diffop("1 t\n2 t\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn assign_parsing() {
        let a = parse_assign("a=1/2, b=-3, w=1, l=0").unwrap();
        assert_eq!(a.get(Param::A), Some(&rat(1, 2)));
        assert_eq!(a.get(Param::B), Some(&rat_int(-3)));
        assert!(a.is_full());
        assert!(parse_assign("symbolic").unwrap().bound().is_empty());
        assert!(parse_assign("q=1").is_err());
    }
}
