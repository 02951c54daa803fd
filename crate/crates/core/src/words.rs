//! Words over the generators: parsing, left-to-right composition, frame
//! matrices of compositions, periods, isotropy tests and subgroup enumeration.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix4;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators3::{apply3, denominators3, Generator3, Letter3};
use crate::generators4::{apply4, denominators4, matrix4, Generator4, Letter4};
use crate::metric::{gram_of, GramMatrix};
use crate::par::{self, Execution};
use crate::symbols::{max_abs_diff, rho_to_e, ESymbol, ESymbol3, ESymbol4};

/// What a word acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Context {
    /// RRP(3) on `[ε, δ]`
    E3,
    /// RRP(4) on `[ε, δ, η]`
    E4,
    /// ARP(4) on natural frames
    P4,
}

impl Context {
    pub fn alphabet_size(self) -> u8 {
        match self {
            Context::E3 => 4,
            Context::E4 | Context::P4 => 8,
        }
    }

    /// E-symbol dimension.
    pub fn dim(self) -> usize {
        match self {
            Context::E3 => 2,
            Context::E4 | Context::P4 => 3,
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Context::E3 => "e3",
            Context::E4 => "e4",
            Context::P4 => "p4",
        })
    }
}

impl FromStr for Context {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "e3" => Ok(Context::E3),
            "e4" => Ok(Context::E4),
            "p4" => Ok(Context::P4),
            _ => Err(Error::InvalidArgument(format!("unknown context '{s}' (e3, e4, p4)"))),
        }
    }
}

/// A generator or its inverse; `index` 0 = A.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: u8,
    pub inverted: bool,
}

impl Letter {
    pub fn new(index: u8, inverted: bool) -> Self {
        Letter { index, inverted }
    }

    pub fn inverse(self) -> Self {
        Letter::new(self.index, !self.inverted)
    }

    pub fn as_char(self) -> char {
        let c = (b'A' + self.index) as char;
        if self.inverted {
            c.to_ascii_lowercase()
        } else {
            c
        }
    }

    fn g3(self) -> Generator3 {
        Generator3::new(Letter3::ALL[self.index as usize], self.inverted)
    }

    fn g4(self) -> Generator4 {
        Generator4::new(Letter4::ALL[self.index as usize], self.inverted)
    }
}

/// Sequence of letters applied left to right; empty = identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    pub context: Context,
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn identity(context: Context) -> Self {
        Word {
            context,
            letters: Vec::new(),
        }
    }

    pub fn parse(text: &str, context: Context) -> Result<Self> {
        parse_word(text, context)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn in_context(&self, context: Context) -> Self {
        Word {
            context,
            letters: self.letters.clone(),
        }
    }

    pub fn inverse(&self) -> Self {
        Word {
            context: self.context,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            context: self.context,
            letters,
        }
    }

    /// `w^k`; negative `k` repeats the inverse.
    pub fn pow(&self, k: i32) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word {
            context: self.context,
            letters,
        }
    }

    /// Letters with adjacent inverse pairs cancelled.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word {
            context: self.context,
            letters: out,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

/// Uppercase letter = generator, lowercase = inverse, a trailing count
/// repeats the preceding letter; `""` and `"1"` are the identity.
pub fn parse_word(text: &str, context: Context) -> Result<Word> {
    let text = text.trim();
    if text.is_empty() || text == "1" {
        return Ok(Word::identity(context));
    }
    let n = context.alphabet_size();
    let chars: Vec<char> = text.chars().collect();
    let mut letters: Vec<Letter> = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let count: usize = chars[start..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| Error::Parse {
                    position: start,
                    message: "repeat count too large".into(),
                })?;
            let Some(&prev) = letters.last() else {
                return Err(Error::Parse {
                    position: start,
                    message: "repeat count with no preceding letter".into(),
                });
            };
            if count == 0 {
                return Err(Error::Parse {
                    position: start,
                    message: "repeat count must be at least 1".into(),
                });
            }
            letters.extend(std::iter::repeat_n(prev, count - 1));
            continue;
        }
        let u = c.to_ascii_uppercase();
        if !c.is_ascii_alphabetic() || (u as u8) < b'A' || (u as u8) >= b'A' + n {
            return Err(Error::Parse {
                position: i,
                message: format!(
                    "invalid letter '{c}' for context {context} (expected A..{} or a..{})",
                    (b'A' + n - 1) as char,
                    (b'a' + n - 1) as char
                ),
            });
        }
        letters.push(Letter::new(u as u8 - b'A', c.is_ascii_lowercase()));
        i += 1;
    }
    Ok(Word { context, letters })
}

/// Canonical text of a word: one character per letter, identity as `"1"`.
pub fn render(w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.letters.iter().map(|l| l.as_char()).collect()
}

/// Run-length text such as `ABE2F`.
pub fn render_compact(w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut out = String::new();
    let mut i = 0;
    while i < w.len() {
        let l = w.letters[i];
        let mut j = i;
        while j < w.len() && w.letters[j] == l {
            j += 1;
        }
        out.push(l.as_char());
        if j - i > 1 {
            out.push_str(&(j - i).to_string());
        }
        i = j;
    }
    out
}

fn wrong_dim(context: Context, e: &ESymbol) -> Error {
    Error::InvalidArgument(format!(
        "context {context} needs a {}-component E-symbol, got {}",
        context.dim(),
        e.dim()
    ))
}

/// One letter step on an E-symbol.
pub fn apply_letter(context: Context, l: Letter, e: ESymbol) -> Result<ESymbol> {
    match (context, e) {
        (Context::E3, ESymbol::E3(x)) => apply3(l.g3(), x).map(ESymbol::E3),
        (Context::E4 | Context::P4, ESymbol::E4(x)) => apply4(l.g4(), x).map(ESymbol::E4),
        _ => Err(wrong_dim(context, &e)),
    }
}

/// Smallest |denominator| met by one letter step at `e`.
pub fn letter_min_denominator(context: Context, l: Letter, e: ESymbol) -> Result<f64> {
    match (context, e) {
        (Context::E3, ESymbol::E3(x)) => {
            let g = l.g3();
            let reps = if g.inverted { g.letter.order() - 1 } else { 1 };
            let mut m = f64::INFINITY;
            let mut y = x;
            for _ in 0..reps {
                for (v, _) in denominators3(g.letter, y) {
                    m = m.min(v.abs());
                }
                y = apply3(g.letter.into(), y)?;
            }
            Ok(m)
        }
        (Context::E4 | Context::P4, ESymbol::E4(x)) => {
            Ok(denominators4(l.g4(), x).iter().fold(f64::INFINITY, |m, v| m.min(v.abs())))
        }
        _ => Err(wrong_dim(context, &e)),
    }
}

/// Chained left-to-right application.
pub fn apply_word(w: &Word, e: ESymbol) -> Result<ESymbol> {
    let mut x = e;
    for (i, &l) in w.letters.iter().enumerate() {
        x = apply_letter(w.context, l, x).map_err(|err| err.at_step(i))?;
    }
    Ok(x)
}

/// All intermediate E-symbols, starting with `e`.
pub fn orbit(w: &Word, e: ESymbol) -> Result<Vec<ESymbol>> {
    let mut out = Vec::with_capacity(w.len() + 1);
    out.push(e);
    let mut x = e;
    for (i, &l) in w.letters.iter().enumerate() {
        x = apply_letter(w.context, l, x).map_err(|err| err.at_step(i))?;
        out.push(x);
    }
    Ok(out)
}

/// Smallest |denominator| met anywhere along the orbit of `w` from `e`.
pub fn orbit_min_denominator(w: &Word, e: ESymbol) -> Result<f64> {
    let mut m = f64::INFINITY;
    let mut x = e;
    for (i, &l) in w.letters.iter().enumerate() {
        m = m.min(letter_min_denominator(w.context, l, x)?);
        x = apply_letter(w.context, l, x).map_err(|err| err.at_step(i))?;
    }
    Ok(m)
}

/// `X = W_k(e_{k−1}) ··· W_1(e_0)`; later steps multiply on the left.
pub fn word_matrix(w: &Word, e: ESymbol4) -> Result<Matrix4<f64>> {
    if w.context == Context::E3 {
        return Err(Error::InvalidArgument(
            "frame matrices exist only for 4-dimensional words".into(),
        ));
    }
    let mut x = Matrix4::identity();
    let mut p = e;
    for (i, &l) in w.letters.iter().enumerate() {
        let g = l.g4();
        let m = matrix4(g, p).map_err(|err| err.at_step(i))?;
        p = apply4(g, p).map_err(|err| err.at_step(i))?;
        x = m * x;
    }
    Ok(x)
}

/// Gram cross-check of a word matrix: `X·G(e)·Xᵀ` must be a natural-form
/// metric whose E-symbol is the image of `e`. Returns the larger of the
/// relative natural-form residual and the E-symbol distance.
pub fn word_gram_residual(w: &Word, e: ESymbol4) -> Result<f64> {
    let x = word_matrix(w, e)?;
    let g = gram_of(&e, 1.0)?;
    let img = apply_word(w, ESymbol::E4(e))?;
    let g2 = GramMatrix(x * g.0 * x.transpose());
    let back = rho_to_e(&g2.rho())?;
    Ok((g2.natural_form_residual() / g2.0.amax()).max(max_abs_diff(&back.coords(), &img.coords())))
}

/// Step-matrix determinants along the orbit.
pub fn step_determinants(w: &Word, e: ESymbol4) -> Result<Vec<f64>> {
    let mut p = e;
    let mut out = Vec::with_capacity(w.len());
    for (i, &l) in w.letters.iter().enumerate() {
        let g = l.g4();
        out.push(matrix4(g, p).map_err(|err| err.at_step(i))?.determinant());
        p = apply4(g, p).map_err(|err| err.at_step(i))?;
    }
    Ok(out)
}

/// Below this |denominator| a frame chain is evaluated as a limit.
pub const LIMIT_THRESHOLD: f64 = 1e-7;
/// Offset of the symmetric limit stencil.
pub const LIMIT_STEP: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq)]
pub struct LimitMatrix {
    pub matrix: Matrix4<f64>,
    /// true when the symmetric stencil replaced direct evaluation
    pub limit: bool,
}

// generic unit directions; axis steps can stay on a singular plane
const LIMIT_DIRECTIONS: [[f64; 3]; 3] = [
    [0.801784, 0.534522, 0.267261],
    [-0.267261, 0.801784, 0.534522],
    [0.534522, -0.267261, 0.801784],
];

/// `word_matrix`, replaced at removable singularities by the average over
/// `e ± t·v` for three generic directions `v` (t = [`LIMIT_STEP`]).
pub fn word_matrix_limit(w: &Word, e: ESymbol4) -> Result<LimitMatrix> {
    let near = orbit_min_denominator(w, ESymbol::E4(e)).map_or(true, |m| m < LIMIT_THRESHOLD);
    if !near {
        if let Ok(m) = word_matrix(w, e) {
            return Ok(LimitMatrix {
                matrix: m,
                limit: false,
            });
        }
    }
    let c = e.coords();
    let mut acc = Matrix4::zeros();
    let mut n = 0;
    let mut first_err = None;
    for dir in LIMIT_DIRECTIONS {
        for s in [-1.0, 1.0] {
            let q: Vec<f64> = c.iter().zip(dir).map(|(x, d)| x + s * LIMIT_STEP * d).collect();
            match word_matrix(w, ESymbol4::from_slice(&q)) {
                Ok(m) if m.iter().all(|v| v.is_finite()) => {
                    acc += m;
                    n += 1;
                }
                Ok(_) => {}
                Err(err) => {
                    first_err.get_or_insert(err);
                }
            }
        }
    }
    if n == 0 {
        return Err(first_err.unwrap_or_else(|| Error::SingularTransform {
            map: format!("{w}"),
            factor: "frame chain",
            step: None,
        }));
    }
    Ok(LimitMatrix {
        matrix: acc / n as f64,
        limit: true,
    })
}

/// Box for generic sample points.
pub const SAMPLE_LO: f64 = 0.05;
pub const SAMPLE_HI: f64 = 0.95;
/// Samples closer than this to a step singularity are redrawn.
pub const SINGULAR_MARGIN: f64 = 1e-3;

/// Uniform point of `(0.05, 0.95)^dim`.
pub fn random_point(rng: &mut impl Rng, context: Context) -> ESymbol {
    let mut c = [0.0; 3];
    for v in c.iter_mut().take(context.dim()) {
        *v = rng.random_range(SAMPLE_LO..SAMPLE_HI);
    }
    ESymbol::from_coords(&c[..context.dim()]).expect("finite")
}

/// Draw a point whose orbit under `w` stays [`SINGULAR_MARGIN`] away from
/// every step singularity; returns the point and the number of redraws.
pub fn generic_point(rng: &mut impl Rng, w: &Word, max_tries: usize) -> Option<(ESymbol, usize)> {
    for tries in 0..max_tries {
        let e = random_point(rng, w.context);
        if let Ok(m) = orbit_min_denominator(w, e) {
            if m >= SINGULAR_MARGIN {
                return Some((e, tries));
            }
        }
    }
    None
}

/// Per-task RNG so results do not depend on scheduling.
pub fn task_rng(seed: u64, stream: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.set_word_pos((index as u128) << 20);
    rng
}

/// Residual of `w` against the identity at `e`: E-coordinates in E3/E4,
/// frame-matrix entries in P4.
pub fn identity_residual(w: &Word, e: ESymbol) -> Result<f64> {
    match w.context {
        Context::P4 => {
            let ESymbol::E4(x) = e else {
                return Err(wrong_dim(w.context, &e));
            };
            Ok((word_matrix(w, x)? - Matrix4::identity()).amax())
        }
        _ => Ok(apply_word(w, e)?.distance(&e)),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodReport {
    pub word: String,
    pub context: Context,
    pub q: Option<u32>,
    pub max_q: u32,
    pub samples: usize,
    /// samples whose orbit failed before a period was found
    pub singular: usize,
    /// max residual at the reported q
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct PeriodConfig {
    pub samples: usize,
    pub max_q: u32,
    pub tol: f64,
    pub seed: u64,
    pub exec: Execution,
}

impl Default for PeriodConfig {
    fn default() -> Self {
        PeriodConfig {
            samples: 20,
            max_q: 64,
            tol: 1e-8,
            seed: 0,
            exec: Execution::Parallel,
        }
    }
}

/// Least q ≤ max_q with `w^q` = identity on every sampled generic point.
pub fn period(w: &Word, cfg: &PeriodConfig) -> PeriodReport {
    // residual trace per sample; None entries mark orbit failure
    let traces: Vec<Vec<Option<f64>>> = par::map_range(cfg.exec, cfg.samples, |s| {
        let mut rng = task_rng(cfg.seed, 0x9e37, s as u64);
        let Some((e0, _)) = generic_point(&mut rng, w, 1000) else {
            return vec![None];
        };
        residual_trace(w, e0, cfg.max_q)
    });
    let mut report = PeriodReport {
        word: render(w),
        context: w.context,
        q: None,
        max_q: cfg.max_q,
        samples: cfg.samples,
        singular: 0,
        residual: None,
    };
    for q in 1..=cfg.max_q as usize {
        let mut live = 0;
        let mut dead = 0;
        let mut worst: f64 = 0.0;
        for t in &traces {
            match t.get(q - 1) {
                Some(Some(r)) => {
                    live += 1;
                    worst = worst.max(*r);
                }
                _ => dead += 1,
            }
        }
        if live == 0 {
            report.singular = dead;
            return report;
        }
        if worst < cfg.tol && 2 * live >= cfg.samples {
            report.q = Some(q as u32);
            report.singular = dead;
            report.residual = Some(worst);
            return report;
        }
    }
    report.singular = traces
        .iter()
        .filter(|t| t.iter().any(Option::is_none) || t.len() < cfg.max_q as usize)
        .count();
    report
}

fn residual_trace(w: &Word, e0: ESymbol, max_q: u32) -> Vec<Option<f64>> {
    let mut out = Vec::with_capacity(max_q as usize);
    let mut x = e0;
    let mut m = Matrix4::identity();
    for _ in 0..max_q {
        let step = match (w.context, x) {
            (Context::P4, ESymbol::E4(p)) => word_matrix(w, p).and_then(|wm| {
                let y = apply_word(w, x)?;
                Ok((y, Some(wm)))
            }),
            _ => apply_word(w, x).map(|y| (y, None)),
        };
        match step {
            Ok((y, wm)) if y.coords().iter().all(|v| v.is_finite()) => {
                x = y;
                let r = match wm {
                    Some(wm) => {
                        m = wm * m;
                        (m - Matrix4::identity()).amax()
                    }
                    None => x.distance(&e0),
                };
                out.push(Some(r));
            }
            _ => {
                out.push(None);
                break;
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsotropyResult {
    pub member: bool,
    pub singular: bool,
    pub residual: f64,
}

/// `apply_word(w, e) = e` within `tol`; singular orbits are non-members.
pub fn is_isotropy_member(w: &Word, e: ESymbol, tol: f64) -> IsotropyResult {
    match apply_word(w, e) {
        Ok(y) => {
            let r = y.distance(&e);
            IsotropyResult {
                member: r < tol,
                singular: false,
                residual: r,
            }
        }
        Err(_) => IsotropyResult {
            member: false,
            singular: true,
            residual: f64::INFINITY,
        },
    }
}

/// Number of fixed fingerprint points.
pub const FINGERPRINT_POINTS: usize = 8;
/// Fingerprints closer than this (max-norm) name the same element.
pub const FINGERPRINT_TOL: f64 = 1e-8;

/// Fixed generic evaluation points for a context.
pub fn fingerprint_points(context: Context) -> Vec<ESymbol> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    (0..FINGERPRINT_POINTS)
        .map(|_| {
            let c: Vec<f64> = (0..context.dim()).map(|_| rng.random_range(0.1..0.9)).collect();
            ESymbol::from_coords(&c).expect("finite")
        })
        .collect()
}

/// Images of the fingerprint points (plus frame matrices in P4).
pub fn fingerprint(w: &Word, points: &[ESymbol]) -> Option<Vec<f64>> {
    let mut out = Vec::new();
    for &p in points {
        let y = apply_word(w, p).ok()?;
        out.extend(y.coords());
        if w.context == Context::P4 {
            let ESymbol::E4(x) = p else { return None };
            out.extend(word_matrix(w, x).ok()?.iter());
        }
    }
    out.iter().all(|v| v.is_finite()).then_some(out)
}

/// Approximate set of fingerprints, bucketed on the first coordinate.
#[derive(Debug, Default, Clone)]
pub struct FingerprintSet {
    buckets: HashMap<i64, Vec<usize>>,
    items: Vec<Vec<f64>>,
    tol: f64,
}

impl FingerprintSet {
    pub fn new(tol: f64) -> Self {
        FingerprintSet {
            buckets: HashMap::new(),
            items: Vec::new(),
            tol,
        }
    }

    fn key(&self, fp: &[f64]) -> i64 {
        (fp[0] / (self.tol * 100.0)).floor() as i64
    }

    /// Index of a stored fingerprint within tolerance.
    pub fn find(&self, fp: &[f64]) -> Option<usize> {
        let k = self.key(fp);
        for kk in [k - 1, k, k + 1] {
            if let Some(ids) = self.buckets.get(&kk) {
                for &i in ids {
                    if max_abs_diff(&self.items[i], fp) < self.tol {
                        return Some(i);
                    }
                }
            }
        }
        None
    }

    /// Insert unless present; returns `(index, inserted)`.
    pub fn insert(&mut self, fp: Vec<f64>) -> (usize, bool) {
        if let Some(i) = self.find(&fp) {
            return (i, false);
        }
        let k = self.key(&fp);
        let i = self.items.len();
        self.items.push(fp);
        self.buckets.entry(k).or_default().push(i);
        (i, true)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupEnumeration {
    pub order: usize,
    /// shortest representative of each element, in BFS order
    pub elements: Vec<String>,
    /// false when the cap was reached or some element could not be evaluated
    pub complete: bool,
}

/// Breadth-first closure of the subgroup generated by `gens`.
pub fn enumerate_group(gens: &[Word], cap: usize) -> Result<GroupEnumeration> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidArgument("no generators".into()));
    };
    let context = first.context;
    let points = fingerprint_points(context);
    let mut set = FingerprintSet::new(FINGERPRINT_TOL);
    let id = Word::identity(context);
    set.insert(fingerprint(&id, &points).expect("identity is defined"));
    let mut elements = vec![id.clone()];
    let mut frontier = vec![id];
    let mut complete = true;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for g in gens {
                let cand = w.concat(g);
                let Some(fp) = fingerprint(&cand, &points) else {
                    complete = false;
                    continue;
                };
                if set.insert(fp).1 {
                    if elements.len() >= cap {
                        return Ok(GroupEnumeration {
                            order: elements.len(),
                            elements: elements.iter().map(render).collect(),
                            complete: false,
                        });
                    }
                    elements.push(cand.clone());
                    next.push(cand);
                }
            }
        }
        frontier = next;
    }
    Ok(GroupEnumeration {
        order: elements.len(),
        elements: elements.iter().map(render).collect(),
        complete,
    })
}

/// Convenience: E-symbol from an ESymbol3/ESymbol4 by context.
pub fn esym(context: Context, c: &[f64]) -> Result<ESymbol> {
    let e = ESymbol::from_coords(c)?;
    if e.dim() != context.dim() {
        return Err(wrong_dim(context, &e));
    }
    Ok(e)
}

impl From<[f64; 2]> for ESymbol {
    fn from(c: [f64; 2]) -> Self {
        ESymbol::E3(ESymbol3::new(c[0], c[1]))
    }
}

impl From<[f64; 3]> for ESymbol {
    fn from(c: [f64; 3]) -> Self {
        ESymbol::E4(ESymbol4::new(c[0], c[1], c[2]))
    }
}
