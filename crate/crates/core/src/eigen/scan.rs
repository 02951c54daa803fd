//! Systematic word scans: fixed points and spins of all reduced words up to
//! a length, and a census of finite word periods.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::catalog::EigentopeRecord;
use super::solver::{find_fixed_points, SolverConfig};
use super::spin::{spin, SpinConfig};
use crate::generators3::Letter3;
use crate::generators4::Letter4;
use crate::metric::{classify_signature, gram_of, SIGNATURE_TOL};
use crate::par::{self, Execution};
use crate::symbols::{e_to_f, ESymbol};
use crate::words::{fingerprint, fingerprint_points, period, render, Context, FingerprintSet, Letter, PeriodConfig, Word, FINGERPRINT_TOL};

/// Generators and the inverses that are not the generator itself.
pub fn scan_alphabet(context: Context) -> Vec<Letter> {
    let mut out = Vec::new();
    match context {
        Context::E3 => {
            for (i, l) in Letter3::ALL.iter().enumerate() {
                out.push(Letter::new(i as u8, false));
                if l.order() != 2 {
                    out.push(Letter::new(i as u8, true));
                }
            }
        }
        Context::E4 | Context::P4 => {
            for (i, l) in Letter4::ALL.iter().enumerate() {
                out.push(Letter::new(i as u8, false));
                if l.order() != Some(2) {
                    out.push(Letter::new(i as u8, true));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct WordList {
    /// in enumeration order: by length, then alphabet order
    pub words: Vec<Word>,
    /// words dropped as equal to a shorter one
    pub pruned: usize,
    /// pruned word → the shorter word it equals ("1" for the identity)
    pub aliases: Vec<(Word, Word)>,
}

/// Freely reduced words of length 1..=max_len. With `prune`, a word whose
/// fingerprint matches a shorter word (or the identity) is dropped and not
/// extended. In E4 the fingerprint includes the frame matrix.
pub fn enumerate_words(context: Context, max_len: usize, prune: bool, exec: Execution) -> WordList {
    let alphabet = scan_alphabet(context);
    let fp_context = if context == Context::E3 { Context::E3 } else { Context::P4 };
    let points = fingerprint_points(fp_context);
    let mut set = FingerprintSet::new(FINGERPRINT_TOL);
    // owner[i] is the word whose fingerprint is set item i
    let mut owner = Vec::new();
    if let Some(fp) = fingerprint(&Word::identity(fp_context), &points) {
        set.insert(fp);
        owner.push(Word::identity(context));
    }
    let mut words = Vec::new();
    let mut pruned = 0;
    let mut aliases = Vec::new();
    let mut frontier = vec![Word::identity(context)];
    for _ in 0..max_len {
        let cands: Vec<Word> = frontier
            .iter()
            .flat_map(|w| {
                let last = w.letters.last().copied();
                let alphabet = &alphabet;
                alphabet
                    .iter()
                    .filter(move |l| {
                        // involutions appear once in the alphabet and cancel with themselves
                        let inv = if alphabet.contains(&l.inverse()) { l.inverse() } else { **l };
                        Some(inv) != last
                    })
                    .map(move |l| {
                        let mut x = w.clone();
                        x.letters.push(*l);
                        x
                    })
            })
            .collect();
        let mut next = Vec::new();
        if prune {
            let fps = par::map(exec, &cands, |w| fingerprint(&w.in_context(fp_context), &points));
            let mut level = Vec::new();
            for (w, fp) in cands.into_iter().zip(fps) {
                // undefined fingerprints are never merged
                match fp {
                    Some(fp) => match set.find(&fp) {
                        Some(i) => {
                            pruned += 1;
                            aliases.push((w, owner[i].clone()));
                        }
                        None => {
                            level.push((fp, w.clone()));
                            next.push(w);
                        }
                    },
                    None => next.push(w),
                }
            }
            for (fp, w) in level {
                if set.insert(fp).1 {
                    owner.push(w);
                }
            }
        } else {
            next = cands;
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    WordList {
        words,
        pruned,
        aliases,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanFilters {
    /// drop fingerprint-equal words before solving
    pub prune: bool,
    /// emit records for isolated roots only
    pub isolated_only: bool,
    /// distance to 5 counted as an f-component of 5
    pub five_tol: f64,
}

impl Default for ScanFilters {
    fn default() -> Self {
        ScanFilters {
            prune: true,
            isolated_only: false,
            five_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ScanConfig {
    pub context: Context,
    pub max_len: usize,
    pub filters: ScanFilters,
    pub solver: SolverConfig,
    pub spin: SpinConfig,
    pub exec: Execution,
}

impl ScanConfig {
    /// Coarse seed grids: 0.1 in E3, 0.25 in E4.
    pub fn new(context: Context, max_len: usize) -> Self {
        let context = if context == Context::P4 { Context::E4 } else { context };
        let solver = SolverConfig {
            grid_step: if context == Context::E3 { 0.1 } else { 0.25 },
            ..SolverConfig::default()
        };
        ScanConfig {
            context,
            max_len,
            filters: ScanFilters::default(),
            solver,
            spin: SpinConfig::default(),
            exec: Execution::Parallel,
        }
    }

    pub fn with_exec(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self.solver.exec = exec;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub context: Context,
    pub max_len: usize,
    pub words: usize,
    pub pruned: usize,
    /// pruned word → representative, both rendered
    pub aliases: BTreeMap<String, String>,
    pub records: Vec<EigentopeRecord>,
    /// finite spins seen at any root
    pub observed_q: BTreeSet<u32>,
    /// isolated roots with an f-component within `five_tol` of 5
    pub five_hits: Vec<EigentopeRecord>,
}

impl ScanReport {
    pub fn five_found(&self) -> bool {
        !self.five_hits.is_empty()
    }

    /// Records of a scanned word, looking through aliases of pruned words.
    pub fn records_for(&self, word: &str) -> Vec<&EigentopeRecord> {
        let target = self.aliases.get(word).map_or(word, String::as_str);
        self.records.iter().filter(|r| r.word == target).collect()
    }
}

impl fmt::Display for ScanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} scan up to length {}: {} words ({} pruned), {} records",
            self.context,
            self.max_len,
            self.words,
            self.pruned,
            self.records.len()
        )?;
        let qs: Vec<String> = self.observed_q.iter().map(|q| q.to_string()).collect();
        writeln!(f, "observed spin q: {{{}}}", qs.join(", "))?;
        if self.five_found() {
            let ws: Vec<&str> = self.five_hits.iter().map(|r| r.word.as_str()).collect();
            write!(f, "f-component 5 found: {}", ws.join(", "))
        } else {
            write!(f, "f-component 5: not found up to length {}", self.max_len)
        }
    }
}

fn has_five(r: &EigentopeRecord, tol: f64) -> bool {
    r.isolated
        && r
            .f_symbol
            .as_ref()
            .is_some_and(|fs| fs.iter().any(|v| (v - 5.0).abs() < tol))
}

/// Records for every root of one word.
pub fn word_records(w: &Word, cfg: &ScanConfig) -> Vec<EigentopeRecord> {
    let mut solver = cfg.solver;
    // the outer scan already spreads words over threads
    solver.exec = Execution::Sequential;
    let mut out = Vec::new();
    for root in find_fixed_points(w, &solver) {
        if cfg.filters.isolated_only && !root.isolated {
            continue;
        }
        let mut rec = EigentopeRecord {
            word: render(w),
            context: w.context,
            evec: root.evec.coords(),
            q: None,
            lambda_q: None,
            j: None,
            signature: None,
            residual: root.residual,
            ortho_residual: None,
            det_residual: None,
            isolated: root.isolated,
            f_symbol: e_to_f(&root.evec).ok().map(|f| f.entries().to_vec()),
        };
        if let ESymbol::E4(e) = root.evec {
            if let Ok(s) = spin(w, e, &cfg.spin) {
                rec.q = Some(s.q);
                rec.lambda_q = Some(s.lambda_q);
                rec.j = Some(s.j);
                rec.ortho_residual = s.ortho_residual;
                rec.det_residual = Some(s.det_residual);
            }
            if let Ok(g) = gram_of(&e, 1.0) {
                rec.signature = Some(classify_signature(&g, SIGNATURE_TOL).label);
            }
        }
        out.push(rec);
    }
    out
}

/// Fixed points and spins of all scanned words up to `cfg.max_len`.
pub fn scan_words(cfg: &ScanConfig) -> ScanReport {
    let list = enumerate_words(cfg.context, cfg.max_len, cfg.filters.prune, cfg.exec);
    let per_word = par::map(cfg.exec, &list.words, |w| word_records(w, cfg));
    let mut records: Vec<EigentopeRecord> = per_word.into_iter().flatten().collect();
    records.sort_by_key(|a| a.key());
    let observed_q = records.iter().filter_map(|r| r.q).collect();
    let five_hits = records
        .iter()
        .filter(|r| has_five(r, cfg.filters.five_tol))
        .cloned()
        .collect();
    ScanReport {
        context: cfg.context,
        max_len: cfg.max_len,
        words: list.words.len(),
        pruned: list.pruned,
        aliases: list
            .aliases
            .iter()
            .map(|(a, b)| (render(a), render(b)))
            .collect(),
        records,
        observed_q,
        five_hits,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodCensus {
    pub context: Context,
    pub max_len: usize,
    pub words: usize,
    pub pruned: usize,
    /// period → number of words
    pub periods: BTreeMap<u32, usize>,
    /// first word seen with each period
    pub examples: BTreeMap<u32, String>,
    /// words with no period up to max_q
    pub infinite: usize,
}

impl PeriodCensus {
    pub fn observed(&self) -> BTreeSet<u32> {
        self.periods.keys().copied().collect()
    }
}

impl fmt::Display for PeriodCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} periods up to length {}: {} words ({} pruned), {} without finite period",
            self.context, self.max_len, self.words, self.pruned, self.infinite
        )?;
        for (q, n) in &self.periods {
            writeln!(f, "  q={q}: {n} words, e.g. {}", self.examples[q])?;
        }
        Ok(())
    }
}

/// Periods of the E-maps of all scanned words.
pub fn period_census(context: Context, max_len: usize, prune: bool, pcfg: &PeriodConfig) -> PeriodCensus {
    let context = if context == Context::P4 { Context::E4 } else { context };
    let list = enumerate_words(context, max_len, prune, pcfg.exec);
    let inner = PeriodConfig {
        exec: Execution::Sequential,
        ..*pcfg
    };
    let qs = par::map(pcfg.exec, &list.words, |w| period(w, &inner).q);
    let mut periods = BTreeMap::new();
    let mut examples = BTreeMap::new();
    let mut infinite = 0;
    for (w, q) in list.words.iter().zip(qs) {
        match q {
            Some(q) => {
                *periods.entry(q).or_insert(0) += 1;
                examples.entry(q).or_insert_with(|| render(w));
            }
            None => infinite += 1,
        }
    }
    PeriodCensus {
        context,
        max_len,
        words: list.words.len(),
        pruned: list.pruned,
        periods,
        examples,
        infinite,
    }
}
