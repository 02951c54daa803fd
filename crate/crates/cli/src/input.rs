//! Command-line values: numbers, named constants and prefixed symbols.

use polysym::symbols::{f_to_e, h_to_rho, rho_to_e};
use polysym::{ESymbol, ESymbol4, FSymbol, HSymbol, RhoVector};

/// Tokens accepted wherever a number is expected.
pub const CONSTANTS: [(&str, &str); 7] = [
    ("phi", "(1+√5)/2"),
    ("phi1", "(√5−1)/2"),
    ("phi2", "(3−√5)/2"),
    ("sqrt2", "√2"),
    ("sqrt3", "√3"),
    ("sqrt5", "√5"),
    ("inf", "infinity"),
];

fn constant(name: &str) -> Option<f64> {
    let r5 = 5f64.sqrt();
    Some(match name {
        "phi" => (1.0 + r5) / 2.0,
        "phi1" => (r5 - 1.0) / 2.0,
        "phi2" => (3.0 - r5) / 2.0,
        "sqrt2" => 2f64.sqrt(),
        "sqrt3" => 3f64.sqrt(),
        "sqrt5" => r5,
        "inf" => f64::INFINITY,
        _ => return None,
    })
}

/// A decimal, a fraction `p/q`, or a named constant, optionally negated.
pub fn number(tok: &str) -> Result<f64, String> {
    let t = tok.trim();
    if let Some(rest) = t.strip_prefix('-') {
        return number(rest).map(|v| -v);
    }
    if let Some(v) = constant(&t.to_ascii_lowercase()) {
        return Ok(v);
    }
    if let Some((p, q)) = t.split_once('/') {
        let (p, q) = (number(p)?, number(q)?);
        if q == 0.0 {
            return Err(format!("zero denominator in '{tok}'"));
        }
        return Ok(p / q);
    }
    t.parse::<f64>().map_err(|_| format!("'{tok}' is not a number or named constant"))
}

/// Comma-separated numbers, brackets optional.
pub fn numbers(text: &str) -> Result<Vec<f64>, String> {
    let body = text.trim().trim_start_matches('[').trim_end_matches(']');
    if body.trim().is_empty() {
        return Err("empty symbol".into());
    }
    body.split(',').map(number).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    F,
    E,
    H,
    Rho,
}

impl Kind {
    pub fn prefix(self) -> &'static str {
        match self {
            Kind::F => "f",
            Kind::E => "e",
            Kind::H => "h",
            Kind::Rho => "rho",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Symbol {
    pub kind: Kind,
    pub values: Vec<f64>,
}

/// `f:`, `e:`, `h:` or `rho:` followed by numbers; bare numbers are an E-symbol.
pub fn symbol(text: &str) -> Result<Symbol, String> {
    let t = text.trim();
    let (kind, body) = match t.split_once(':') {
        Some((p, b)) => {
            let kind = match p.trim().to_ascii_lowercase().as_str() {
                "f" => Kind::F,
                "e" => Kind::E,
                "h" => Kind::H,
                "rho" => Kind::Rho,
                other => return Err(format!("unknown symbol prefix '{other}' (f, e, h, rho)")),
            };
            (kind, b)
        }
        None => (Kind::E, t),
    };
    let values = numbers(body)?;
    let expected: &[usize] = match kind {
        Kind::F => &[2, 3],
        Kind::E => &[2, 3],
        Kind::H => &[3],
        Kind::Rho => &[4],
    };
    if !expected.contains(&values.len()) {
        return Err(format!(
            "{}-symbol needs {} entries, got {}",
            kind.prefix(),
            expected.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" or "),
            values.len()
        ));
    }
    Ok(Symbol { kind, values })
}

/// The E-symbol of any prefixed symbol; conversion failures are computational.
pub fn to_esymbol(s: &Symbol) -> polysym::Result<ESymbol> {
    match s.kind {
        Kind::E => ESymbol::from_coords(&s.values),
        Kind::F => f_to_e(&FSymbol::new(s.values.clone())?),
        Kind::H => {
            let h = HSymbol::new(s.values[0], s.values[1], s.values[2]);
            Ok(ESymbol::E4(rho_to_e(&h_to_rho(&h, 1.0)?)?))
        }
        Kind::Rho => {
            let r = RhoVector::new(s.values[0], s.values[1], s.values[2], s.values[3]);
            Ok(ESymbol::E4(rho_to_e(&r)?))
        }
    }
}

pub fn esymbol4(e: ESymbol) -> Option<ESymbol4> {
    match e {
        ESymbol::E4(x) => Some(x),
        ESymbol::E3(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_and_constants() {
        assert_eq!(number("0.25").unwrap(), 0.25);
        assert_eq!(number("1/3").unwrap(), 1.0 / 3.0);
        assert_eq!(number("phi2").unwrap(), (3.0 - 5f64.sqrt()) / 2.0);
        assert_eq!(number("-phi").unwrap(), -(1.0 + 5f64.sqrt()) / 2.0);
        assert!(number("x").is_err());
        assert!(number("1/0").is_err());
    }

    #[test]
    fn symbol_prefixes() {
        let s = symbol("f:4,3,3").unwrap();
        assert_eq!((s.kind, s.values.clone()), (Kind::F, vec![4.0, 3.0, 3.0]));
        assert_eq!(symbol("[0.5,0.25]").unwrap().kind, Kind::E);
        assert_eq!(symbol("rho:1,0.75,0.5,0.25").unwrap().kind, Kind::Rho);
        assert!(symbol("h:1,2").is_err());
        assert!(symbol("q:1,2").is_err());
    }

    #[test]
    fn every_constant_resolves() {
        for (name, _) in CONSTANTS {
            assert!(constant(name).is_some());
        }
    }
}
