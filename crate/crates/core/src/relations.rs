//! Relation suites of RRP(3), RRP(4) and ARP(4) and their numerical
//! verification on random generic points.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::words::{
    generic_point, identity_residual, parse_word, render, task_rng, Context, Word,
};

const SUITE_DATA: &str = include_str!("../data/relations.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Rrp3,
    Rrp4,
    Arp4,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::Rrp3, Suite::Rrp4, Suite::Arp4];

    pub fn context(self) -> Context {
        match self {
            Suite::Rrp3 => Context::E3,
            Suite::Rrp4 => Context::E4,
            Suite::Arp4 => Context::P4,
        }
    }

    /// Residual threshold: E-coordinates for the relative groups, frame
    /// matrix entries for ARP(4).
    pub fn default_tol(self) -> f64 {
        match self {
            Suite::Rrp3 | Suite::Rrp4 => 1e-9,
            Suite::Arp4 => 1e-8,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Rrp3 => "rrp3",
            Suite::Rrp4 => "rrp4",
            Suite::Arp4 => "arp4",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rrp3" => Ok(Suite::Rrp3),
            "rrp4" => Ok(Suite::Rrp4),
            "arp4" => Ok(Suite::Arp4),
            _ => Err(Error::InvalidArgument(format!(
                "unknown suite '{s}' (rrp3, rrp4, arp4)"
            ))),
        }
    }
}

/// A claimed identity `word = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub suite: Suite,
    /// text as listed, e.g. `(AE)^2(AH)^-2` or `B = AHG`
    pub label: String,
    pub word: Word,
    /// exponent of a single `X^k` relation, 1 otherwise
    pub exponent: u32,
    /// alternative reading checked alongside
    pub alt: Option<(String, Word)>,
}

/// Parse a relation expression: a product of terms `X`, `X^k`, `(X)^k`;
/// `LHS = RHS` becomes `LHS·RHS⁻¹`.
pub fn parse_relation(text: &str, context: Context) -> Result<(Word, u32)> {
    let text = text.trim();
    if let Some((lhs, rhs)) = text.split_once('=') {
        let (l, _) = parse_product(lhs, context, 0)?;
        let (r, _) = parse_product(rhs, context, lhs.len() + 1)?;
        return Ok((l.concat(&r.inverse()), 1));
    }
    parse_product(text, context, 0)
}

fn parse_product(text: &str, context: Context, offset: usize) -> Result<(Word, u32)> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Word::identity(context);
    let mut i = 0;
    let mut terms = 0;
    let mut last_exp = 1;
    let perr = |pos: usize, m: &str| Error::Parse {
        position: offset + pos,
        message: m.to_string(),
    };
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        let (body, start) = if chars[i] == '(' {
            let close = chars[i..]
                .iter()
                .position(|&c| c == ')')
                .ok_or_else(|| perr(i, "unclosed parenthesis"))?
                + i;
            let s: String = chars[i + 1..close].iter().collect();
            let st = i + 1;
            i = close + 1;
            (s, st)
        } else {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            if st == i {
                return Err(perr(i, &format!("unexpected '{}'", chars[i])));
            }
            (chars[st..i].iter().collect(), st)
        };
        let base = parse_word(&body, context).map_err(|e| match e {
            Error::Parse { position, message } => Error::Parse {
                position: offset + start + position,
                message,
            },
            other => other,
        })?;
        let mut exp: i32 = 1;
        if i < chars.len() && chars[i] == '^' {
            let st = i + 1;
            let mut j = st;
            if j < chars.len() && chars[j] == '-' {
                j += 1;
            }
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let s: String = chars[st..j].iter().collect();
            exp = s.parse().map_err(|_| perr(st, "bad exponent"))?;
            i = j;
        }
        out = out.concat(&base.pow(exp));
        terms += 1;
        last_exp = exp;
    }
    let exponent = if terms == 1 && last_exp > 0 { last_exp as u32 } else { 1 };
    Ok((out, exponent))
}

/// All relations of a suite, in listed order.
pub fn suite_relations(suite: Suite) -> Vec<Relation> {
    parse_suite_data(SUITE_DATA)
        .expect("bundled relation data parses")
        .into_iter()
        .filter(|r| r.suite == suite)
        .collect()
}

/// Parse relation lines `suite relation [alt=relation]`.
pub fn parse_suite_data(data: &str) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    for (lineno, line) in data.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (suite_s, rest) = line.split_once(char::is_whitespace).ok_or_else(|| Error::Parse {
            position: lineno + 1,
            message: format!("line {}: missing relation", lineno + 1),
        })?;
        let suite: Suite = suite_s.parse()?;
        let (rel, alt) = match rest.split_once("alt=") {
            Some((r, a)) => (r.trim(), Some(a.trim())),
            None => (rest.trim(), None),
        };
        let (word, exponent) = parse_relation(rel, suite.context())?;
        let alt = match alt {
            Some(a) => Some((a.to_string(), parse_relation(a, suite.context())?.0)),
            None => None,
        };
        out.push(Relation {
            suite,
            label: rel.to_string(),
            word,
            exponent,
            alt,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleStats {
    pub samples: usize,
    /// draws discarded for lying within the singular margin
    pub rejected: usize,
    /// accepted samples whose evaluation still failed
    pub singular: usize,
    pub max_residual: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub relation: String,
    pub word: String,
    pub context: Context,
    pub tolerance: f64,
    #[serde(flatten)]
    pub stats: SampleStats,
    pub alternative: Option<AlternativeReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlternativeReport {
    pub relation: String,
    #[serde(flatten)]
    pub stats: SampleStats,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub samples: usize,
    /// `None` uses the suite default
    pub tol: Option<f64>,
    pub seed: u64,
    pub exec: Execution,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            samples: 100,
            tol: None,
            seed: 1,
            exec: Execution::Parallel,
        }
    }
}

const MAX_DRAWS: usize = 10_000;

/// Residual statistics of `w` against the identity.
pub fn check_identity(w: &Word, samples: usize, tol: f64, seed: u64, stream: u64, exec: Execution) -> SampleStats {
    let results: Vec<(usize, Option<f64>)> = par::map_range(exec, samples, |s| {
        let mut rng = task_rng(seed, stream, s as u64);
        match generic_point(&mut rng, w, MAX_DRAWS) {
            Some((e, rejected)) => (rejected, identity_residual(w, e).ok().filter(|r| r.is_finite())),
            None => (MAX_DRAWS, None),
        }
    });
    let rejected = results.iter().map(|r| r.0).sum();
    let singular = results.iter().filter(|r| r.1.is_none()).count();
    let max_residual = results.iter().filter_map(|r| r.1).fold(0.0f64, f64::max);
    let ok = max_residual < tol && singular * 10 < samples.max(1) && samples > singular;
    SampleStats {
        samples,
        rejected,
        singular,
        max_residual,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
    }
}

pub fn verify_relation(rel: &Relation, index: usize, cfg: &VerifyConfig) -> VerificationReport {
    let tol = cfg.tol.unwrap_or(rel.suite.default_tol());
    let stream = ((rel.suite as u64) << 32) | index as u64;
    let stats = check_identity(&rel.word, cfg.samples, tol, cfg.seed, stream, cfg.exec);
    let alternative = rel.alt.as_ref().map(|(label, w)| AlternativeReport {
        relation: label.clone(),
        stats: check_identity(w, cfg.samples, tol, cfg.seed, stream | (1 << 31), cfg.exec),
    });
    VerificationReport {
        suite: rel.suite,
        relation: rel.label.clone(),
        word: render(&rel.word),
        context: rel.word.context,
        tolerance: tol,
        stats,
        alternative,
    }
}

/// Check every relation of a suite; reports keep the listed order.
pub fn verify_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<VerificationReport> {
    suite_relations(suite)
        .iter()
        .enumerate()
        .map(|(i, r)| verify_relation(r, i, cfg))
        .collect()
}

/// Elements of the kernel NRP(4): trivial on E-symbols, not on frames.
pub const KERNEL_ELEMENTS: [&str; 6] = ["A^6", "AE^2", "AG^4", "AH^2", "BG^2", "AECB"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelCheck {
    pub element: String,
    /// max E-symbol residual (identity in RRP(4))
    pub e_residual: f64,
    /// max deviation of the frame matrix from the identity
    pub frame_deviation: f64,
}

/// E-map residual and frame deviation of each kernel element at a point.
pub fn kernel_spot_checks(e: crate::symbols::ESymbol4) -> Result<Vec<KernelCheck>> {
    KERNEL_ELEMENTS
        .iter()
        .map(|t| {
            let (w, _) = parse_relation(t, Context::E4)?;
            let p = crate::symbols::ESymbol::E4(e);
            let e_residual = identity_residual(&w, p)?;
            let frame_deviation = identity_residual(&w.in_context(Context::P4), p)?;
            Ok(KernelCheck {
                element: t.to_string(),
                e_residual,
                frame_deviation,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_syntax() {
        let (w, k) = parse_relation("AAD^10", Context::E4).unwrap();
        assert_eq!((w.len(), k), (30, 10));
        let (w, _) = parse_relation("(AE)^2(AH)^-2", Context::P4).unwrap();
        assert_eq!(render(&w), "AEAEhaha");
        let (w, k) = parse_relation("B = AHG", Context::E4).unwrap();
        assert_eq!((render(&w).as_str(), k), ("Bgha", 1));
        let (w, _) = parse_relation("C = dBd2", Context::E4).unwrap();
        assert_eq!(render(&w), "CDDbD");
        assert!(parse_relation("(AB", Context::E4).is_err());
        assert!(parse_relation("AZ", Context::E4).is_err());
    }

    #[test]
    fn bundled_suites_parse() {
        assert_eq!(suite_relations(Suite::Rrp3).len(), 12);
        assert_eq!(suite_relations(Suite::Rrp4).len(), 35);
        assert_eq!(suite_relations(Suite::Arp4).len(), 23);
        let aad = suite_relations(Suite::Rrp4)
            .into_iter()
            .find(|r| r.label == "AAD^10")
            .unwrap();
        assert_eq!(aad.alt.unwrap().0, "AAd^10");
    }

    #[test]
    fn rrp3_suite_passes() {
        let cfg = VerifyConfig {
            samples: 40,
            ..Default::default()
        };
        for r in verify_suite(Suite::Rrp3, &cfg) {
            assert_eq!(r.stats.verdict, Verdict::Pass, "{r:?}");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let rel = &suite_relations(Suite::Rrp4)[0];
        let a = verify_relation(rel, 0, &VerifyConfig::default());
        let b = verify_relation(
            rel,
            0,
            &VerifyConfig {
                exec: Execution::Sequential,
                ..Default::default()
            },
        );
        assert_eq!(a, b);
    }

    #[test]
    fn kernel_elements_trivial_on_symbols_only() {
        let checks = kernel_spot_checks(crate::symbols::ESymbol4::new(0.31, 0.22, 0.17)).unwrap();
        for c in &checks {
            assert!(c.e_residual < 1e-10, "{c:?}");
        }
        assert!(checks.iter().any(|c| c.frame_deviation > 1e-3));
    }
}
